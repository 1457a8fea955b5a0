#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <optional>
#include <random>
#include <thread>
#include <vector>

namespace lcmad {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t index = 0) {
  return splitmix64(splitmix64(seed ^ splitmix64(stream)) + index);
}

using Rng = std::mt19937_64;

// std::uniform_int_distribution is implementation-defined; this keeps streams portable
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  if (bound <= 1) return 0;
  std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x;
  do x = rng();
  while (x >= limit);
  return x % bound;
}

template <class T>
void portable_shuffle(std::vector<T>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[uniform_below(rng, i)]);
}

// p = num/den
inline bool bernoulli(Rng& rng, std::int64_t num, std::int64_t den) {
  return static_cast<std::int64_t>(uniform_below(rng, static_cast<std::uint64_t>(den))) < num;
}

struct TrialConfig {
  std::uint64_t seed = 1;
  std::uint64_t offset = 0;        // index of the first trial, for splitting a stream
  std::optional<std::uint64_t> trials;  // unset: operation default
  std::uint64_t budget = 4096;     // cap on trials when defaulted
  int jobs = 1;
};

// Runs trials offset..offset+count-1 and returns the success with the lowest index.
template <class T, class Fn>
std::optional<T> run_trials(std::uint64_t count, std::uint64_t offset, int jobs, Fn&& fn) {
  if (jobs <= 1 || count < 2) {
    for (std::uint64_t i = 0; i < count; ++i)
      if (auto r = fn(offset + i)) return r;
    return std::nullopt;
  }
  std::atomic<std::uint64_t> next{0}, found{UINT64_MAX};
  std::vector<std::optional<T>> hits(jobs);
  std::vector<std::uint64_t> hit_index(jobs, UINT64_MAX);
  std::vector<std::thread> pool;
  for (int j = 0; j < jobs; ++j)
    pool.emplace_back([&, j] {
      while (true) {
        std::uint64_t i = next.fetch_add(1);
        if (i >= count || i > found.load()) break;
        if (auto r = fn(offset + i)) {
          if (i < hit_index[j]) hits[j] = std::move(r), hit_index[j] = i;
          std::uint64_t cur = found.load();
          while (i < cur && !found.compare_exchange_weak(cur, i)) {
          }
          break;
        }
      }
    });
  for (auto& t : pool) t.join();
  int best = -1;
  for (int j = 0; j < jobs; ++j)
    if (hits[j] && (best < 0 || hit_index[j] < hit_index[best])) best = j;
  if (best < 0) return std::nullopt;
  return hits[best];
}

}  // namespace lcmad

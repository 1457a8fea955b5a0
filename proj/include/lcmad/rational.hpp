#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

namespace lcmad {

class Rational {
 public:
  using i64 = std::int64_t;
  using i128 = __int128;

  constexpr Rational() = default;
  constexpr Rational(i64 v) : num_(v) {}  // NOLINT implicit from integers is intended
  Rational(i64 num, i64 den) { assign(num, den); }

  i64 num() const { return num_; }
  i64 den() const { return den_; }
  bool is_integer() const { return den_ == 1; }

  i64 floor() const {
    i64 q = num_ / den_;
    if (num_ % den_ != 0 && num_ < 0) --q;
    return q;
  }
  i64 ceil() const {
    i64 q = num_ / den_;
    if (num_ % den_ != 0 && num_ > 0) ++q;
    return q;
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return from128(i128(a.num_) * b.den_ + i128(b.num_) * a.den_, i128(a.den_) * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return from128(i128(a.num_) * b.den_ - i128(b.num_) * a.den_, i128(a.den_) * b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return from128(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("rational division by zero");
    return from128(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
  }
  Rational operator-() const { return Rational(-num_, den_); }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    i128 l = i128(a.num_) * b.den_, r = i128(b.num_) * a.den_;
    if (l < r) return std::strong_ordering::less;
    if (l > r) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  std::string str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }
  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

  // "p/q", "p" or a plain decimal like "0.35"
  static Rational parse(const std::string& s) {
    auto slash = s.find('/');
    if (slash != std::string::npos)
      return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
    auto dot = s.find('.');
    if (dot == std::string::npos) return Rational(std::stoll(s));
    std::string frac = s.substr(dot + 1);
    if (frac.size() > 15) throw std::invalid_argument("too many decimals: " + s);
    i64 den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    std::string whole = s.substr(0, dot);
    bool neg = !whole.empty() && whole[0] == '-';
    i64 w = (whole.empty() || whole == "-") ? 0 : std::stoll(whole);
    i64 f = frac.empty() ? 0 : std::stoll(frac);
    i64 num = (w < 0 ? -w : w) * den + f;
    return Rational(neg ? -num : num, den);
  }

 private:
  i64 num_ = 0;
  i64 den_ = 1;

  void assign(i64 num, i64 den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    if (den < 0) num = -num, den = -den;
    i64 g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) num /= g, den /= g;
    num_ = num;
    den_ = den;
  }

  static i128 gcd128(i128 a, i128 b) {
    if (a < 0) a = -a;
    while (b != 0) {
      i128 t = a % b;
      a = b;
      b = t < 0 ? -t : t;
    }
    return a;
  }

  static Rational from128(i128 num, i128 den) {
    if (den < 0) num = -num, den = -den;
    i128 g = gcd128(num, den);
    if (g > 1) num /= g, den /= g;
    constexpr i128 lim = i128(INT64_MAX);
    if (num > lim || num < -lim || den > lim) throw std::overflow_error("rational overflow");
    Rational r;
    r.num_ = i64(num);
    r.den_ = i64(den);
    return r;
  }
};

}  // namespace lcmad

#pragma once

#include <stdexcept>
#include <string>

namespace lcmad {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// caller handed us something outside the operation's domain
struct PreconditionError : Error {
  using Error::Error;
};

// malformed input data (files, vertex ids, pair sets)
struct DataError : Error {
  using Error::Error;
};

// a construction gave up; never accompanied by a certificate
struct ConstructionFailure : Error {
  using Error::Error;
};

struct CapExceeded : Error {
  using Error::Error;
};

}  // namespace lcmad

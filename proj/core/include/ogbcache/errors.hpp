#ifndef OGBCACHE_ERRORS_HPP
#define OGBCACHE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ogbcache {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Rejected parameters: capacity out of range, non-positive step size, ...
class InvalidConfigError : public Error {
 public:
  using Error::Error;
};

/// Out-of-range item id.
class OutOfRangeError : public Error {
 public:
  using Error::Error;
};

/// Trace input could not be read or is empty.
class TraceIoError : public Error {
 public:
  using Error::Error;
};

/// A state invariant that should be unreachable was violated.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace ogbcache

#endif  // OGBCACHE_ERRORS_HPP

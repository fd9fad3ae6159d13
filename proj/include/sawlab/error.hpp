#pragma once

#include <stdexcept>
#include <string>

namespace sawlab {

enum class ErrorKind {
  Invalid,           // malformed input or violated precondition
  NonStabilization,  // fixed-point iteration did not settle
  ResourceLimit,     // a configured cap was exceeded
  Internal,          // broken internal invariant
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool cond, const std::string& what) {
  if (!cond) fail(ErrorKind::Invalid, what);
}

inline void ensure(bool cond, const std::string& what) {
  if (!cond) fail(ErrorKind::Internal, what);
}

}  // namespace sawlab

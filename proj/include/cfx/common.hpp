#pragma once

#include <stdexcept>
#include <string>

namespace cfx {

// Default tolerance for comparisons and boundary shells.
inline constexpr double kDefaultTol = 1e-9;
// Tolerance for the matrix-identity suite.
inline constexpr double kIdentityTol = 1e-10;
// Tolerance for quantities that are exact up to rounding (tilings, determinants).
inline constexpr double kExactTol = 1e-12;

enum class ErrorKind {
    Parameter,
    Pole,
    ZeroOrbit,
    DiscontinuityPoint,
    Unbounded,
    FixedPoint,
    NoReturn,
    InfiniteArea,
    NoClosedForm,
    UnsupportedQ,
    InsufficientData,
    OrbitTerminated,
    EmptyFiber,
};

const char* to_string(ErrorKind k);

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& msg)
        : std::runtime_error(std::string(to_string(kind)) + ": " + msg), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& msg) { throw Error(kind, msg); }

}  // namespace cfx

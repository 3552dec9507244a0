#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace mixwel {

inline constexpr const char* kVersion = "0.3.0";

/// Comparison tolerance shared by welfare checks, the LP and the bounds.
inline constexpr double kTolerance = 1e-9;

/// Largest item count for anything that enumerates 2^m bundles.
inline constexpr int kDeskCap = 24;

/// Largest item count for the 3^m subset dynamic programs (exact optimum,
/// surrogate tables).
inline constexpr int kExactCap = 18;

/// Largest item count for the explicit configuration LP.
inline constexpr int kLpCap = 14;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidAllocationError : public Error {
 public:
  using Error::Error;
};

class ArityError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class CapError : public Error {
 public:
  CapError(const std::string& what, int m, int cap)
      : Error(what + ": m=" + std::to_string(m) + " exceeds desk-scale cap " +
              std::to_string(cap)) {}
};

class NumericalError : public Error {
 public:
  using Error::Error;
};

class InfeasibleError : public Error {
 public:
  using Error::Error;
};

class GeneratorFailure : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

inline void check_cap(const char* what, int m, int cap) {
  if (m > cap) throw CapError(what, m, cap);
}

inline bool approx_le(double a, double b, double tol = kTolerance) {
  return a <= b + tol * std::max(1.0, std::abs(b));
}

inline bool approx_eq(double a, double b, double tol = kTolerance) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace mixwel

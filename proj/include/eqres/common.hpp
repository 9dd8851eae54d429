// Shared basics: exact rational arithmetic, error taxonomy, small helpers.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace eqres {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Malformed user input (scenes, flags, grammar).  CLI exit code 2.
struct input_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Violated mathematical precondition (non-primitive parametrization,
// non-faithful action, coincident branches, non-generic curvette pair...).
// CLI exit code 3.
struct math_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Internal cross-check failure (the two alpha routes disagree, intersection
// matrix not unimodular, residual not 1 after peeling...).  These indicate a
// bug, never bad input.  CLI exit code 4.
struct internal_check_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline void check_internal(bool ok, const std::string& what) {
  if (!ok) throw internal_check_error(what);
}

inline void check_math(bool ok, const std::string& what) {
  if (!ok) throw math_error(what);
}

inline long gcd_long(long a, long b) { return std::gcd(a, b); }
inline long lcm_long(long a, long b) { return std::lcm(a, b); }

// Euler totient; desk-scale arguments.
inline long euler_phi(long n) {
  long result = n;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

// Nonnegative representative of a mod n.
inline long mod_pos(long a, long n) {
  long r = a % n;
  return r < 0 ? r + n : r;
}

inline std::string rational_to_string(const Rational& q) {
  std::ostringstream os;
  os << q;
  return os.str();
}

}  // namespace eqres

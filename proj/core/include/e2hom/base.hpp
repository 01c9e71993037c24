#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace e2hom {

// Exact integer scalar used throughout. All intermediate arithmetic is
// arbitrary precision; nothing in the library is allowed to overflow.
using Int = boost::multiprecision::cpp_int;

inline Int int_gcd(Int a, Int b) { return boost::multiprecision::gcd(a, b); }

// g = gcd(a,b) together with x,y such that a*x + b*y = g, g >= 0.
struct XGcd {
  Int g, x, y;
};
inline XGcd xgcd(Int a, Int b) {
  Int x0 = 1, y0 = 0, x1 = 0, y1 = 1;
  while (b != 0) {
    Int q = a / b;
    Int t = a - q * b;
    a = b;
    b = t;
    t = x0 - q * x1;
    x0 = x1;
    x1 = t;
    t = y0 - q * y1;
    y0 = y1;
    y1 = t;
  }
  if (a < 0) {
    a = -a;
    x0 = -x0;
    y0 = -y0;
  }
  return {a, x0, y0};
}

// Parse failure in user-supplied input (ring DSL, CLI).  Exit class 2.
struct ParseError : std::runtime_error {
  std::size_t offset;
  ParseError(const std::string& msg, std::size_t off)
      : std::runtime_error(msg), offset(off) {}
};

// A configured size cap was exceeded.  Exit class 3.
struct CapError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An internal consistency check failed.  Exit class 4.
struct CheckError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline void check(bool ok, const std::string& msg) {
  if (!ok) throw CheckError(msg);
}

}  // namespace e2hom

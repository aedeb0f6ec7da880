#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace mono {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline std::string to_string(const Rational& q) { return q.str(); }
inline std::string to_string(const BigInt& z) { return z.str(); }

inline double to_double(const Rational& q) {
  return q.convert_to<double>();
}

// q^e by repeated squaring (Boost provides pow for integers only).
inline Rational rpow(Rational q, unsigned e) {
  Rational out = 1;
  while (e > 0) {
    if (e & 1U) out *= q;
    q *= q;
    e >>= 1U;
  }
  return out;
}

}  // namespace mono

#pragma once

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace wedgemax {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// "p/q" with q > 0 and gcd(p, q) = 1; integers keep the "/1" suffix.
inline std::string to_fraction_string(const Rational& r) {
  return boost::multiprecision::numerator(r).str() + "/" +
         boost::multiprecision::denominator(r).str();
}

inline double to_double(const Rational& r) {
  return r.convert_to<double>();
}

inline double to_double(double x) { return x; }

}  // namespace wedgemax

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace oddjac {

/// Arbitrary-precision exact rational. Always stored in lowest terms.
using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

inline std::string to_string(const Rational& r) { return r.str(); }

inline bool is_zero(const Rational& r) { return r.is_zero(); }

}  // namespace oddjac

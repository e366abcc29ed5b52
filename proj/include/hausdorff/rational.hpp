#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace hausdorff {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Exact value of a finite double.
Rational exact_rational(double v);

Integer binomial(unsigned n, unsigned k);

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

} // namespace hausdorff

#include "hausdorff/rational.hpp"

#include "hausdorff/core.hpp"

#include <cmath>

namespace hausdorff {

Rational exact_rational(double v) {
  if (!std::isfinite(v))
    throw Error(Errc::invalid_argument, "non-finite value has no rational form");
  int exp = 0;
  double mant = std::frexp(v, &exp);
  // 53 bits of mantissa are exact after scaling.
  auto scaled = static_cast<long long>(std::ldexp(mant, 53));
  exp -= 53;
  Rational r{Integer(scaled)};
  if (exp > 0)
    r *= Rational(Integer(1) << exp);
  else if (exp < 0)
    r /= Rational(Integer(1) << -exp);
  return r;
}

Integer binomial(unsigned n, unsigned k) {
  if (k > n)
    return 0;
  k = std::min(k, n - k);
  Integer r = 1;
  for (unsigned i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

} // namespace hausdorff

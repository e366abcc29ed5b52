#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hausdorff {

using Scalar = std::complex<double>;
/// Element of the value space: a finite-dimensional complex vector.
using Value = std::vector<Scalar>;
/// Element of a domain S (half-line, index set, orthant or plane).
using Point = std::vector<double>;

enum class Errc {
  tail_unresolved,
  nan_in_integrand,
  eval_error,
  sequence_too_short,
  bad_support,
  signed_measure_rejected,
  bad_order,
  budget_exceeded,
  precision_loss,
  not_positive,
  inconclusive_by_construction,
  invalid_measure,
  invalid_argument,
  parse_error,
  unknown_demo,
};

std::string_view to_string(Errc code);

class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& what);

  Errc code() const noexcept { return code_; }

private:
  Errc code_;
};

enum class Verdict { pass, fail, inconclusive };

std::string_view to_string(Verdict v);

inline Value constant_value(double c, std::size_t dim = 1) {
  return Value(dim, Scalar(c, 0.0));
}

/// Max-norm over the components.
double max_norm(const Value& v);
/// Max-norm of a - b; sizes must match.
double max_distance(const Value& a, const Value& b);
/// y += alpha * x (y is resized if empty).
void axpy(Scalar alpha, const Value& x, Value& y);
bool all_finite(const Value& v);

double euclidean_norm(const Point& p);

} // namespace hausdorff

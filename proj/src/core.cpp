#include "hausdorff/core.hpp"

#include <algorithm>
#include <cmath>

namespace hausdorff {

std::string_view to_string(Errc code) {
  switch (code) {
  case Errc::tail_unresolved: return "tail-unresolved";
  case Errc::nan_in_integrand: return "nan-in-integrand";
  case Errc::eval_error: return "eval-error";
  case Errc::sequence_too_short: return "sequence-too-short";
  case Errc::bad_support: return "bad-support";
  case Errc::signed_measure_rejected: return "signed-measure-rejected";
  case Errc::bad_order: return "bad-order";
  case Errc::budget_exceeded: return "budget-exceeded";
  case Errc::precision_loss: return "precision-loss";
  case Errc::not_positive: return "not-positive";
  case Errc::inconclusive_by_construction: return "inconclusive-by-construction";
  case Errc::invalid_measure: return "invalid-measure";
  case Errc::invalid_argument: return "invalid-argument";
  case Errc::parse_error: return "parse-error";
  case Errc::unknown_demo: return "unknown-demo";
  }
  return "unknown";
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

std::string_view to_string(Verdict v) {
  switch (v) {
  case Verdict::pass: return "PASS";
  case Verdict::fail: return "FAIL";
  case Verdict::inconclusive: return "INCONCLUSIVE";
  }
  return "INCONCLUSIVE";
}

double max_norm(const Value& v) {
  double m = 0.0;
  for (const auto& c : v)
    m = std::max(m, std::abs(c));
  return m;
}

double max_distance(const Value& a, const Value& b) {
  if (a.size() != b.size())
    throw Error(Errc::invalid_argument, "value dimension mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

void axpy(Scalar alpha, const Value& x, Value& y) {
  if (y.empty())
    y.assign(x.size(), Scalar{});
  if (x.size() != y.size())
    throw Error(Errc::invalid_argument, "value dimension mismatch");
  for (std::size_t i = 0; i < x.size(); ++i)
    y[i] += alpha * x[i];
}

bool all_finite(const Value& v) {
  return std::all_of(v.begin(), v.end(), [](const Scalar& c) {
    return std::isfinite(c.real()) && std::isfinite(c.imag());
  });
}

double euclidean_norm(const Point& p) {
  double s = 0.0;
  for (double c : p)
    s += c * c;
  return std::sqrt(s);
}

} // namespace hausdorff

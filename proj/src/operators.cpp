#include "hausdorff/operators.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace hausdorff {

namespace {

std::string point_string(const Point& x) {
  std::ostringstream os;
  os.precision(17);
  os << '(';
  for (std::size_t i = 0; i < x.size(); ++i)
    os << (i ? "," : "") << x[i];
  os << ')';
  return os.str();
}

void require_in(const Domain& d, const Point& x) {
  if (!d.contains(x))
    throw Error(Errc::invalid_argument, "point " + point_string(x) + " is outside the domain " +
                                            std::string(to_string(d.kind)));
}

// The cut-off K must not depend on f, or the applier stops being linear:
// round the bound up to a coarse bucket (one bucket covers everything up to
// 2^20) so f, g and af+bg share the same K.
double tail_scale_bucket(double bound) {
  constexpr int kBucketBits = 20;
  if (!std::isfinite(bound))
    return bound;
  const int e = std::max(1, static_cast<int>(std::ceil(std::log2(bound) / kBucketBits)));
  return std::ldexp(1.0, kBucketBits * e);
}

QuadratureSettings with_tail(const OperatorSpec& spec, QuadratureSettings q, double bound) {
  if (spec.measure.tail()) {
    const double scale = tail_scale_bucket(bound);
    RealFn rule = spec.tail_rule();
    if (!rule)
      throw Error(Errc::tail_unresolved,
                  "operator '" + spec.name + "' has an unbounded parameter tail but no kernel tail rule");
    q.tail_remainder = [rule, scale](double k) { return scale * rule(k); };
  }
  return q;
}

// f(A(u)x) typically varies on a parameter scale ~1/|x| near an endpoint of
// the parameter range, so start from panels graded down to that scale.
QuadratureSettings graded(QuadratureSettings q, const Point& x) {
  if (q.grade_levels == 0 && q.fixed_panels == 0)
    q.grade_levels =
        std::min(60, static_cast<int>(std::ceil(std::log2(1.0 + euclidean_norm(x)))) + 4);
  return q;
}

Value zeros_if_empty(Value v, std::size_t dim) {
  if (v.empty())
    v.assign(dim, Scalar{});
  return v;
}

} // namespace

TestFunction TestFunction::scalar(std::function<double(double)> f, double bound,
                                  std::optional<double> limit, std::string name) {
  TestFunction t;
  t.eval = [f = std::move(f)](const Point& x) { return Value{Scalar(f(x.at(0)), 0.0)}; };
  t.bound = bound;
  t.dim = 1;
  if (limit)
    t.limit = Value{Scalar(*limit, 0.0)};
  t.name = std::move(name);
  return t;
}

TestFunction TestFunction::on_points(std::function<double(const Point&)> f, double bound,
                                     std::optional<double> limit, std::string name) {
  TestFunction t;
  t.eval = [f = std::move(f)](const Point& x) { return Value{Scalar(f(x), 0.0)}; };
  t.bound = bound;
  t.dim = 1;
  if (limit)
    t.limit = Value{Scalar(*limit, 0.0)};
  t.name = std::move(name);
  return t;
}

TestFunction TestFunction::constant(double c) {
  TestFunction t;
  t.eval = [c](const Point&) { return Value{Scalar(c, 0.0)}; };
  t.bound = std::abs(c);
  t.limit = Value{Scalar(c, 0.0)};
  std::ostringstream os;
  os << "const(" << c << ")";
  t.name = os.str();
  return t;
}

RealFn OperatorSpec::tail_rule() const {
  if (kernel_tail)
    return kernel_tail;
  if (envelope && envelope->tail)
    return envelope->tail;
  return {};
}

Measure DiscreteOperatorSpec::truncated_measure() const {
  Measure m;
  for (int n = 0; n <= n_max; ++n) {
    const double w = weight(n);
    if (!(w > 0) || !std::isfinite(w))
      throw Error(Errc::invalid_measure, "discrete weight mu_" + std::to_string(n) +
                                             " must be positive");
    m.add_atom(static_cast<double>(n), w);
  }
  return m;
}

MatrixMethod MatrixMethod::identity() {
  MatrixMethod c;
  c.entry = [](std::size_t m, std::size_t n) { return m == n ? 1.0 : 0.0; };
  c.exact_entry = [](std::size_t m, std::size_t n) -> std::optional<Rational> {
    return Rational(m == n ? 1 : 0);
  };
  c.name = "identity";
  return c;
}

MatrixMethod MatrixMethod::cesaro1() {
  MatrixMethod c;
  c.entry = [](std::size_t m, std::size_t n) { return n <= m ? 1.0 / (m + 1.0) : 0.0; };
  c.exact_entry = [](std::size_t m, std::size_t n) -> std::optional<Rational> {
    if (n > m)
      return Rational(0);
    return Rational(1, static_cast<long long>(m + 1));
  };
  c.name = "cesaro1";
  return c;
}

Evaluation apply_generic(const OperatorSpec& spec, const TestFunction& f, const Point& x,
                         const QuadratureSettings& settings) {
  require_in(spec.domain, x);
  auto integrand = [&](double u) {
    Value v = f(spec.family(u, x));
    const Scalar k = spec.kernel(u, x);
    for (auto& c : v)
      c *= k;
    return v;
  };
  IntegralResult r = integrate(integrand, spec.measure,
                               graded(with_tail(spec, settings, std::max(f.bound, 1e-300)), x));
  return {zeros_if_empty(std::move(r.value), f.dim), r.quadrature_error, r.tail_bound};
}

Evaluation kernel_mass(const OperatorSpec& spec, const Point& x,
                       const QuadratureSettings& settings) {
  require_in(spec.domain, x);
  IntegralResult r = integrate([&](double u) { return Value{spec.kernel(u, x)}; }, spec.measure,
                               graded(with_tail(spec, settings, 1.0), x));
  return {zeros_if_empty(std::move(r.value), 1), r.quadrature_error, r.tail_bound};
}

double kernel_abs_mass(const OperatorSpec& spec, const Point& x, const Measure& mu,
                       const QuadratureSettings& settings) {
  QuadratureSettings q = settings;
  if (mu.tail()) {
    RealFn rule = spec.tail_rule();
    if (!rule)
      throw Error(Errc::tail_unresolved, "no kernel tail rule for an unbounded parameter tail");
    q.tail_remainder = rule;
  }
  IntegralResult r = integrate(
      [&](double u) { return Value{Scalar(std::abs(spec.kernel(u, x)), 0.0)}; }, mu, q);
  return r.value.empty() ? 0.0 : r.value[0].real();
}

Evaluation apply_discrete(const DiscreteOperatorSpec& spec, const TestFunction& f,
                          const Point& x, const QuadratureSettings& settings) {
  require_in(spec.domain, x);
  const double tail = spec.tail_bound ? spec.tail_bound(spec.n_max, x)
                                      : std::numeric_limits<double>::infinity();
  const double contribution = std::max(f.bound, 1e-300) * tail;
  if (!(contribution <= settings.tail_tol)) {
    std::ostringstream os;
    os.precision(6);
    os << "series tail bound " << contribution << " at x=" << point_string(x)
       << " exceeds tolerance " << settings.tail_tol;
    throw Error(Errc::tail_unresolved, os.str());
  }
  Value acc(f.dim, Scalar{});
  for (int n = 0; n <= spec.n_max; ++n) {
    const double w = spec.weight(n);
    if (!(w > 0))
      throw Error(Errc::invalid_measure, "discrete weight mu_" + std::to_string(n) +
                                             " must be positive");
    const Scalar c = spec.coefficient(n, x);
    if (c == Scalar{})
      continue;
    Value v = f(spec.maps(static_cast<double>(n), x));
    if (!all_finite(v))
      throw Error(Errc::nan_in_integrand, "term " + std::to_string(n) + " is not finite");
    axpy(c * w, v, acc);
  }
  return {std::move(acc), 0.0, contribution};
}

Value apply_matrix_method(const MatrixMethod& c, std::span<const Value> s, std::size_t m) {
  const std::size_t len = c.row_length(m);
  if (s.size() < len)
    throw Error(Errc::sequence_too_short, "row " + std::to_string(m) + " needs " +
                                              std::to_string(len) + " terms, got " +
                                              std::to_string(s.size()));
  Value acc;
  for (std::size_t n = 0; n < len; ++n) {
    const double e = c.entry(m, n);
    if (e != 0.0)
      axpy(e, s[n], acc);
  }
  if (acc.empty() && !s.empty())
    acc.assign(s[0].size(), Scalar{});
  return acc;
}

double apply_matrix_method(const MatrixMethod& c, std::span<const double> s, std::size_t m) {
  const std::size_t len = c.row_length(m);
  if (s.size() < len)
    throw Error(Errc::sequence_too_short, "row " + std::to_string(m) + " needs " +
                                              std::to_string(len) + " terms, got " +
                                              std::to_string(s.size()));
  double acc = 0.0;
  for (std::size_t n = 0; n < len; ++n)
    acc += c.entry(m, n) * s[n];
  return acc;
}

Rational apply_matrix_exact(const MatrixMethod& c, std::span<const Rational> s, std::size_t m) {
  if (!c.exact_entry)
    throw Error(Errc::invalid_argument, "matrix method has no exact entries");
  const std::size_t len = c.row_length(m);
  if (s.size() < len)
    throw Error(Errc::sequence_too_short, "row " + std::to_string(m) + " needs " +
                                              std::to_string(len) + " terms");
  Rational acc = 0;
  for (std::size_t n = 0; n < len; ++n) {
    auto e = c.exact_entry(m, n);
    if (!e)
      throw Error(Errc::invalid_argument, "entry (" + std::to_string(m) + "," +
                                              std::to_string(n) + ") is not exact");
    acc += *e * s[n];
  }
  return acc;
}

Evaluation apply_second_kind(const SecondKindSpec& spec, const TestFunction& f, const Point& x,
                             const QuadratureSettings& settings) {
  Evaluation e = apply_generic(spec.inner, f, x, settings);
  const Scalar a = spec.a(x);
  if (a != Scalar{})
    axpy(a, f(x), e.value);
  return e;
}

Applier bind(const OperatorSpec& spec, const QuadratureSettings& settings) {
  return [spec, settings](const TestFunction& f, const Point& x) {
    return apply_generic(spec, f, x, settings).value;
  };
}

Applier bind(const DiscreteOperatorSpec& spec, const QuadratureSettings& settings) {
  return [spec, settings](const TestFunction& f, const Point& x) {
    return apply_discrete(spec, f, x, settings).value;
  };
}

Applier bind(const SecondKindSpec& spec, const QuadratureSettings& settings) {
  return [spec, settings](const TestFunction& f, const Point& x) {
    return apply_second_kind(spec, f, x, settings).value;
  };
}

Applier bind(const MatrixMethod& c) {
  return [c](const TestFunction& f, const Point& x) {
    const auto m = static_cast<std::size_t>(x.at(0));
    Value acc(f.dim, Scalar{});
    const std::size_t len = c.row_length(m);
    for (std::size_t n = 0; n < len; ++n) {
      const double e = c.entry(m, n);
      if (e != 0.0)
        axpy(e, f(Point{static_cast<double>(n)}), acc);
    }
    return acc;
  };
}

} // namespace hausdorff

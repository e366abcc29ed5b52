#include "hausdorff/methods.hpp"

#include <boost/math/distributions/binomial.hpp>
#include <boost/math/special_functions/beta.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <sstream>

namespace hausdorff {

namespace {

std::string num(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

void require_unit_support(const Measure& mu, const char* what) {
  const auto [lo, hi] = mu.support_hull();
  if (mu.tail() || lo < 0.0 || hi > 1.0)
    throw Error(Errc::bad_support, std::string(what) + ": measure must be supported in [0,1]");
}

Envelope unit_envelope() {
  return Envelope{[](double) { return 1.0; }, {}};
}

Rational rational_power(const Rational& base, std::size_t n) {
  Rational r = 1;
  Rational b = base;
  while (n) {
    if (n & 1u)
      r *= b;
    b *= b;
    n >>= 1u;
  }
  return r;
}

double log_choose(std::size_t m, std::size_t n) {
  return std::lgamma(m + 1.0) - std::lgamma(n + 1.0) - std::lgamma(m - n + 1.0);
}

// C(m,n) ∫_lo^hi u^{n+i} (1-u)^{m-n} du.
double bernstein_monomial(std::size_t m, std::size_t n, std::size_t i, double lo, double hi) {
  double scale = 1.0;
  for (std::size_t j = 1; j <= i; ++j)
    scale *= static_cast<double>(n + j);
  for (std::size_t j = 1; j <= i + 1; ++j)
    scale /= static_cast<double>(m + j);
  if (lo <= 0.0 && hi >= 1.0)
    return scale;
  const double a = static_cast<double>(n + i + 1), b = static_cast<double>(m - n + 1);
  const double upper = hi >= 1.0 ? 1.0 : boost::math::ibeta(a, b, hi);
  const double lower = lo <= 0.0 ? 0.0 : boost::math::ibeta(a, b, lo);
  return scale * (upper - lower);
}

// c_{m,n} = C(m,n) ∫ u^n (1-u)^{m-n} dμ in floating point.
double bernstein_entry(const Measure& mu, std::size_t m, std::size_t n) {
  if (n > m)
    return 0.0;
  double total = 0.0;
  for (const auto& a : mu.atoms()) {
    double p;
    if (a.point <= 0.0)
      p = n == 0 ? 1.0 : 0.0;
    else if (a.point >= 1.0)
      p = n == m ? 1.0 : 0.0;
    else
      p = boost::math::pdf(boost::math::binomial_distribution<double>(static_cast<double>(m), a.point),
                           static_cast<double>(n));
    total += a.weight * p;
  }
  for (const auto& piece : mu.pieces()) {
    if (!piece.polynomial.empty()) {
      for (std::size_t i = 0; i < piece.polynomial.size(); ++i) {
        const double c = to_double(piece.polynomial[i]);
        if (c != 0.0)
          total += c * bernstein_monomial(m, n, i, piece.lo, piece.hi);
      }
      continue;
    }
    const double lc = log_choose(m, n);
    auto g = [&](double u) {
      double l = lc;
      if (n)
        l += static_cast<double>(n) * std::log(u);
      if (m - n)
        l += static_cast<double>(m - n) * std::log1p(-u);
      return Value{Scalar(std::exp(l) * piece.density(u), 0.0)};
    };
    total += integrate_interval(g, piece.lo, piece.hi, AdaptiveOptions{piece.nodes}).value[0].real();
  }
  return total;
}

struct MomentTable {
  std::size_t rows = 0;
  std::vector<std::vector<Rational>> exact; // exact[m][n]
  std::vector<std::vector<double>> values;
};

} // namespace

MomentSequence moments(const Measure& mu, std::size_t order, const QuadratureSettings& q) {
  require_unit_support(mu, "moments");
  MomentSequence out;
  if (mu.has_exact_moments()) {
    out.exact.assign(order + 1, Rational(0));
    for (const auto& a : mu.atoms()) {
      const Rational w = exact_rational(a.weight), p = exact_rational(a.point);
      Rational pn = 1;
      for (std::size_t n = 0; n <= order; ++n) {
        out.exact[n] += w * pn;
        pn *= p;
      }
    }
    for (const auto& piece : mu.pieces()) {
      const Rational lo = exact_rational(piece.lo), hi = exact_rational(piece.hi);
      for (std::size_t n = 0; n <= order; ++n)
        for (std::size_t i = 0; i < piece.polynomial.size(); ++i) {
          if (piece.polynomial[i] == 0)
            continue;
          const std::size_t k = n + i + 1;
          out.exact[n] += piece.polynomial[i] *
                          (rational_power(hi, k) - rational_power(lo, k)) / Rational(k);
        }
    }
    for (const auto& r : out.exact)
      out.values.push_back(to_double(r));
    out.error.assign(order + 1, 0.0);
    return out;
  }
  for (std::size_t n = 0; n <= order; ++n) {
    IntegralResult r = integrate(
        [n](double u) { return Value{Scalar(std::pow(u, static_cast<double>(n)), 0.0)}; }, mu, q);
    out.values.push_back(r.value[0].real());
    out.error.push_back(r.quadrature_error + r.tail_bound);
  }
  return out;
}

bool completely_monotone(const MomentSequence& m, double tol) {
  const std::size_t order = m.order();
  if (m.is_exact()) {
    std::vector<Rational> row = m.exact;
    for (std::size_t k = 0; k <= order; ++k) {
      for (std::size_t n = 0; n + k <= order; ++n)
        if (row[n] < 0)
          return false;
      for (std::size_t n = 0; n + k + 1 <= order; ++n)
        row[n] = row[n] - row[n + 1];
    }
    return true;
  }
  std::vector<double> row = m.values;
  for (std::size_t k = 0; k <= order; ++k) {
    for (std::size_t n = 0; n + k <= order; ++n)
      if (row[n] < -tol)
        return false;
    for (std::size_t n = 0; n + k + 1 <= order; ++n)
      row[n] = row[n] - row[n + 1];
  }
  return true;
}

OperatorSpec cesaro_spec(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw Error(Errc::bad_order, "Cesaro order must be positive, got " + num(alpha));
  OperatorSpec spec;
  spec.name = "cesaro(" + num(alpha) + ")";
  spec.envelope = unit_envelope();
  if (alpha == std::floor(alpha) && alpha <= 64) {
    // α (1-u)^{α-1} expanded exactly.
    const unsigned k = static_cast<unsigned>(alpha) - 1;
    std::vector<Rational> coeffs;
    for (unsigned i = 0; i <= k; ++i) {
      Rational c = Rational(binomial(k, i)) * static_cast<int>(alpha);
      coeffs.push_back(i % 2 ? Rational(-c) : c);
    }
    spec.measure = Measure::polynomial_density(0.0, 1.0, std::move(coeffs));
    spec.measure.set_probability(true);
  } else if (alpha < 1.0) {
    // w = 1 - u carries density α w^{α-1}; with s = w^α that is plain
    // Lebesgue ds and A(s) x = (1 - s^{1/α}) x, so no endpoint singularity.
    spec.measure = Measure::lebesgue();
    spec.family = MapFamily::dilation([alpha](double s) { return -std::expm1(std::log(s) / alpha); });
  } else {
    // Reflected parameter w = 1 - u: density α w^{α-1}, A(w) x = (1 - w) x.
    spec.measure = Measure::with_density(
        0.0, 1.0, [alpha](double w) { return alpha * std::pow(w, alpha - 1.0); }, 16,
        num(alpha) + "*w^(" + num(alpha - 1.0) + ")");
    spec.measure.set_probability(true, 1e-7);
    spec.family = MapFamily::dilation([](double w) { return 1.0 - w; });
  }
  spec.measure.validate();
  return spec;
}

Value holder_apply(const TestFunction& f, const Point& x, int k, const HolderSettings& settings) {
  if (k < 1)
    throw Error(Errc::bad_order, "Holder order must be >= 1, got " + std::to_string(k));
  std::size_t evaluations = 0;
  std::function<Value(const Point&, int)> level = [&](const Point& y, int j) -> Value {
    if (j == 0) {
      if (++evaluations > settings.budget)
        throw Error(Errc::budget_exceeded, "nested quadrature exceeded " +
                                               std::to_string(settings.budget) + " evaluations");
      return f(y);
    }
    auto inner = [&](double u) {
      Point z = y;
      for (auto& c : z)
        c *= u;
      return level(z, j - 1);
    };
    return integrate_interval(inner, 0.0, 1.0, settings.quad).value;
  };
  return level(x, k);
}

OperatorSpec abel_type_spec() {
  OperatorSpec spec;
  spec.name = "abel-type";
  spec.kernel = [](double u, const Point&) { return Scalar(std::exp(-u), 0.0); };
  spec.measure.set_tail(TailRule{0.0, [](double) { return 1.0; }, 16, {}, "1"});
  spec.measure.validate();
  auto tail = [](double k) { return std::exp(-k); };
  spec.kernel_tail = tail;
  spec.envelope = Envelope{[](double u) { return std::exp(-u); }, tail};
  return spec;
}

OperatorSpec rogosinski_spec(const Measure& mu, std::string name) {
  require_unit_support(mu, "rogosinski_spec");
  OperatorSpec spec;
  spec.name = std::move(name);
  spec.measure = mu;
  spec.envelope = unit_envelope();
  return spec;
}

MatrixMethod hausdorff_matrix_from_moments(const Measure& mu, std::size_t order,
                                           const QuadratureSettings& q) {
  require_unit_support(mu, "hausdorff_matrix_from_moments");
  auto table = std::make_shared<MomentTable>();
  table->rows = std::min(order, kExactMomentRows);
  const std::size_t r = table->rows;
  const MomentSequence mom = moments(mu, r, q);

  if (mom.is_exact()) {
    // diff[k][n] = Δ^k μ_n.
    std::vector<std::vector<Rational>> diff{mom.exact};
    for (std::size_t k = 1; k <= r; ++k) {
      std::vector<Rational> next(r + 1 - k);
      for (std::size_t n = 0; n + k <= r; ++n)
        next[n] = diff[k - 1][n] - diff[k - 1][n + 1];
      diff.push_back(std::move(next));
    }
    table->exact.resize(r + 1);
    table->values.resize(r + 1);
    for (std::size_t m = 0; m <= r; ++m)
      for (std::size_t n = 0; n <= m; ++n) {
        table->exact[m].push_back(Rational(binomial(static_cast<unsigned>(m),
                                                    static_cast<unsigned>(n))) *
                                  diff[m - n][n]);
        table->values[m].push_back(to_double(table->exact[m].back()));
      }
  } else {
    const double eps = std::numeric_limits<double>::epsilon();
    double mom_scale = 0.0, mom_err = 0.0;
    for (std::size_t n = 0; n <= r; ++n) {
      mom_scale = std::max(mom_scale, std::abs(mom.values[n]));
      mom_err = std::max(mom_err, mom.error[n]);
    }
    double bound = 0.0;
    for (std::size_t m = 0; m <= r; ++m)
      for (std::size_t n = 0; n <= m; ++n)
        bound = std::max(bound, std::exp(log_choose(m, n) + (m - n) * std::log(2.0)) *
                                    (eps * mom_scale + mom_err));
    if (bound > 1e-9)
      throw Error(Errc::precision_loss, "floating moment differences lose precision: error bound " +
                                            num(bound) + " > 1e-9 at order " + std::to_string(r));
    std::vector<std::vector<double>> diff{mom.values};
    for (std::size_t k = 1; k <= r; ++k) {
      std::vector<double> next(r + 1 - k);
      for (std::size_t n = 0; n + k <= r; ++n)
        next[n] = diff[k - 1][n] - diff[k - 1][n + 1];
      diff.push_back(std::move(next));
    }
    table->values.resize(r + 1);
    for (std::size_t m = 0; m <= r; ++m)
      for (std::size_t n = 0; n <= m; ++n)
        table->values[m].push_back(std::exp(log_choose(m, n)) * diff[m - n][n]);
  }

  MatrixMethod c;
  c.name = "hausdorff-moments";
  auto measure = std::make_shared<const Measure>(mu);
  c.entry = [table, measure, order](std::size_t m, std::size_t n) -> double {
    if (m > order)
      throw Error(Errc::bad_order, "row " + std::to_string(m) + " beyond matrix order " +
                                       std::to_string(order));
    if (n > m)
      return 0.0;
    if (m <= table->rows)
      return table->values[m][n];
    return bernstein_entry(*measure, m, n);
  };
  c.exact_entry = [table](std::size_t m, std::size_t n) -> std::optional<Rational> {
    if (table->exact.empty() || m > table->rows)
      return std::nullopt;
    if (n > m)
      return Rational(0);
    return table->exact[m][n];
  };
  return c;
}

OperatorSpec delsarte_spec(const Point& h, int nodes) {
  if (h.size() != 2)
    throw Error(Errc::invalid_argument, "Delsarte shift is provided on the plane (h must be 2-D)");
  if (nodes < 4)
    throw Error(Errc::invalid_argument, "Delsarte shift needs at least 4 rotation nodes");
  OperatorSpec spec;
  spec.name = "delsarte";
  for (int j = 0; j < nodes; ++j)
    spec.measure.add_atom(2.0 * std::numbers::pi * j / nodes, 1.0 / nodes);
  spec.measure.set_probability(true);
  spec.measure.validate();
  spec.family = MapFamily::rotation([](double u) { return u; }, h);
  spec.domain = Domain::plane(2);
  spec.codomain = Domain::plane(2);
  spec.envelope = unit_envelope();
  return spec;
}

OperatorSpec affine_spec(MatrixFn a, VectorFn b, const Measure& mu, int dim, Kernel phi,
                         std::optional<Envelope> envelope) {
  if (dim < 1)
    throw Error(Errc::invalid_argument, "affine operator needs dimension >= 1");
  OperatorSpec spec;
  spec.name = "affine";
  spec.family = MapFamily::affine(a, b);
  spec.measure = mu;
  spec.domain = Domain::orthant(dim);
  spec.codomain = Domain::orthant(dim);
  if (phi) {
    spec.kernel = std::move(phi);
    spec.envelope = std::move(envelope);
  } else {
    spec.envelope = envelope ? std::move(envelope) : unit_envelope();
  }
  for (double u : mu.sample_parameters(16, 40.0)) {
    const Eigen::MatrixXd m = a(u);
    const Eigen::VectorXd v = b(u);
    if (m.rows() != dim || m.cols() != dim || v.size() != dim)
      throw Error(Errc::invalid_argument, "A_u / b(u) shape does not match dimension " +
                                              std::to_string(dim) + " at u=" + num(u));
    if (!positive_affine_bound(spec.family, u)) {
      std::string detail;
      for (int i = 0; i < dim && detail.empty(); ++i) {
        for (int j = 0; j < dim; ++j)
          if (!(m(i, j) >= 0.0)) {
            detail = "A_u(" + std::to_string(i) + "," + std::to_string(j) + ")=" + num(m(i, j));
            break;
          }
        if (detail.empty() && !(v(i) >= 0.0))
          detail = "b(u)[" + std::to_string(i) + "]=" + num(v(i));
      }
      if (detail.empty())
        detail = "A_u singular or has a zero row";
      throw Error(Errc::not_positive, "u=" + num(u) + ": " + detail);
    }
  }
  return spec;
}

std::vector<ShippedMeasure> shipped_moment_measures() {
  std::vector<ShippedMeasure> out;
  out.push_back({"lebesgue", Measure::lebesgue(), false});
  out.push_back({"density-2u", Measure::polynomial_density(0.0, 1.0, {0, 2}), false});
  out.push_back({"cesaro-3", cesaro_spec(3).measure, false});
  out.push_back({"dirac-1", Measure::dirac(1.0), false});
  Measure half_atoms;
  half_atoms.add_atom(0.5, 0.5).add_atom(1.0, 0.5);
  out.push_back({"half-dirac-half-and-1", half_atoms, false});
  Measure ends;
  ends.add_atom(0.0, 0.5).add_atom(1.0, 0.5);
  out.push_back({"half-dirac-0-and-1", ends, true});
  out.push_back({"half-dirac-0-half-lebesgue",
                 Measure::dirac(0.0, 0.5) + Measure::lebesgue().scaled(0.5), true});
  return out;
}

std::vector<ShippedSpec> shipped_specs() {
  const FilterBase half = FilterBase::spanning(FilterKind::half_line, 10.0, 1e6, 8);
  std::vector<ShippedSpec> out;
  for (double alpha : {1.0, 2.0, 3.0, 0.5}) {
    OperatorSpec s = cesaro_spec(alpha);
    out.push_back({"cesaro-" + num(alpha), "Cesaro mean of order " + num(alpha), s, half,
                   Overall::regular_evidence});
  }
  out.push_back({"abel-type", "exponential mean on [0,inf)", abel_type_spec(), half,
                 Overall::regular_evidence});
  out.push_back({"identity", "Dirac measure at 1", rogosinski_spec(Measure::dirac(1.0), "identity"),
                 half, Overall::regular_evidence});
  out.push_back({"density-2u", "density 2u on [0,1]",
                 rogosinski_spec(Measure::polynomial_density(0.0, 1.0, {0, 2}), "density-2u"),
                 half, Overall::regular_evidence});
  out.push_back({"rogosinski-half-atom", "0.5 delta_0 + 0.5 Lebesgue",
                 rogosinski_spec(Measure::dirac(0.0, 0.5) + Measure::lebesgue().scaled(0.5),
                                 "rogosinski-half-atom"),
                 half, Overall::not_regular});
  out.push_back({"dirac-0", "Dirac measure at 0",
                 rogosinski_spec(Measure::dirac(0.0), "dirac-0"), half, Overall::not_regular});
  out.push_back({"half-dirac-1", "0.5 delta_1 (mass 1/2)",
                 rogosinski_spec(Measure::dirac(1.0, 0.5), "half-dirac-1"), half,
                 Overall::not_regular});

  out.push_back({"delsarte", "Delsarte shift on the plane, h=(1,0.5), 256 nodes",
                 delsarte_spec({1.0, 0.5}, 256),
                 FilterBase::spanning(FilterKind::ball_complement, 10.0, 1e6, 8, 2),
                 Overall::regular_evidence});

  OperatorSpec aff = affine_spec(
      [](double u) { return Eigen::MatrixXd(u * Eigen::MatrixXd::Identity(2, 2)); },
      [](double u) { return Eigen::VectorXd(Eigen::VectorXd::Constant(2, u)); },
      Measure::lebesgue(1.0, 2.0), 2);
  out.push_back({"affine", "A_u = uI, b(u) = (u,u), Lebesgue on [1,2]", aff,
                 FilterBase::spanning(FilterKind::orthant_infinity, 10.0, 1e6, 8, 2),
                 Overall::regular_evidence});

  DiscreteOperatorSpec geo;
  geo.name = "discrete-geometric";
  geo.coefficient = [](int n, const Point&) { return Scalar(std::ldexp(1.0, -n - 1), 0.0); };
  geo.weight = [](int) { return 1.0; };
  geo.maps = MapFamily::shift([](double u) { return u; });
  geo.n_max = 64;
  geo.tail_bound = [](int n, const Point&) { return std::ldexp(1.0, -n - 1); };
  out.push_back({"discrete-geometric", "c_n = 2^(-n-1), A_n(x) = x + n", geo, half,
                 Overall::regular_evidence});

  DiscreteOperatorSpec div = geo;
  div.name = "discrete-divergent";
  div.coefficient = [](int, const Point&) { return Scalar(1.0, 0.0); };
  div.tail_bound = [](int, const Point&) { return std::numeric_limits<double>::infinity(); };
  out.push_back({"discrete-divergent", "c_n = 1, mu_n = 1 (divergent series)", div, half,
                 Overall::not_regular});

  SecondKindSpec half_half;
  half_half.a = [](const Point&) { return Scalar(0.5, 0.0); };
  half_half.a_bound = 0.5;
  half_half.alpha = Scalar(0.5, 0.0);
  half_half.inner.kernel = [](double, const Point&) { return Scalar(0.5, 0.0); };
  half_half.inner.measure = Measure::dirac(1.0);
  half_half.inner.envelope = Envelope{[](double) { return 0.5; }, {}};
  half_half.inner.name = "half-kernel-dirac-1";
  out.push_back({"second-kind-half", "a = 1/2, inner 1/2 f(x)", half_half, half,
                 Overall::regular_evidence});

  SecondKindSpec decay;
  decay.a = [](const Point& x) { return Scalar(1.0 / (1.0 + x[0]), 0.0); };
  decay.a_bound = 1.0;
  decay.alpha = Scalar(0.0, 0.0);
  decay.inner = cesaro_spec(1);
  out.push_back({"second-kind-decay", "a(x) = 1/(1+x), inner Cesaro", decay, half,
                 Overall::regular_evidence});

  SecondKindSpec bad = decay;
  bad.a = [](const Point&) { return Scalar(0.5, 0.0); };
  bad.a_bound = 0.5;
  bad.alpha = Scalar(0.5, 0.0);
  out.push_back({"second-kind-half-cesaro", "a = 1/2, inner Cesaro (mass 1)", bad, half,
                 Overall::not_regular});
  return out;
}

ConditionsReport check_any(const AnySpec& spec, const FilterBase& filter,
                           const CheckSettings& settings) {
  return std::visit(
      [&](const auto& s) -> ConditionsReport {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, OperatorSpec>)
          return check_theorem2(s, filter, settings);
        else if constexpr (std::is_same_v<T, DiscreteOperatorSpec>)
          return check_discrete_conditions(s, filter, filter, settings);
        else
          return check_second_kind(s, filter, settings);
      },
      spec);
}

Applier bind_any(const AnySpec& spec, const QuadratureSettings& q) {
  return std::visit([&](const auto& s) { return bind(s, q); }, spec);
}

Domain domain_of(const AnySpec& spec) {
  return std::visit(
      [](const auto& s) -> Domain {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, SecondKindSpec>)
          return s.inner.domain;
        else
          return s.domain;
      },
      spec);
}

} // namespace hausdorff

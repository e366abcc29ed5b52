// Acceptance run: one PASS/FAIL line per criterion; exit status 1 if any fails.

#include "hausdorff/methods.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

using namespace hausdorff;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

const FilterBase kHalfLine = FilterBase::spanning(FilterKind::half_line, 10.0, 1e6, 8);

double value_at(const OperatorSpec& spec, const TestFunction& f, const Point& x) {
  return apply_generic(spec, f, x).value[0].real();
}

TestFunction atan_fn() {
  return TestFunction::scalar([](double t) { return std::atan(t); }, kPi / 2, kPi / 2, "atan");
}

void cesaro_regularity(Outcome& o) {
  const OperatorSpec spec = rogosinski_spec(Measure::lebesgue(), "lebesgue");
  const double x = 1e4;
  const double v = value_at(spec, atan_fn(), {x});
  const double closed = std::atan(x) - std::log1p(x * x) / (2 * x);
  const ConditionsReport r = check_theorem2(spec, kHalfLine);
  o.detail << "(Hf)(1e4)=" << v << " |.-pi/2|=" << std::abs(v - kPi / 2)
           << " |.-closed form|=" << std::abs(v - closed) << " verdict=" << to_string(r.overall)
           << " exit=" << exit_code(r.overall);
  o.require(std::abs(v - kPi / 2) <= 2e-3, "distance to pi/2");
  o.require(std::abs(v - closed) <= 1e-10, "closed form");
  o.require(r.overall == Overall::regular_evidence && exit_code(r.overall) == 0, "verdict");
}

void rogosinski_counterexample(Outcome& o) {
  const Measure mu = Measure::dirac(0.0, 0.5) + Measure::lebesgue().scaled(0.5);
  const OperatorSpec spec = rogosinski_spec(mu);
  const ConditionsReport r = check_theorem2(spec, kHalfLine);
  const ConditionEntry& a = r.at(ConditionId::agrees);
  const double mass = a.evidence.at("fail_mass");
  const double v = value_at(spec, atan_fn(), {1e4});
  o.detail << "verdict=" << to_string(r.overall) << " agrees=" << to_string(a.verdict)
           << " fail_mass=" << mass << " witness=" << a.witness.value_or("-") << " (Hf)(1e4)=" << v
           << " |.-pi/4|=" << std::abs(v - kPi / 4) << " gap from pi/2=" << kPi / 2 - v;
  o.require(r.overall == Overall::not_regular, "verdict");
  o.require(a.verdict == Verdict::fail && std::abs(mass - 0.5) <= 1e-14 && a.witness == "u=0",
            "agreement failure at u=0 with mass 1/2");
  o.require(std::abs(v - kPi / 4) <= 1e-3, "limit pi/4");
}

void grandi(Outcome& o) {
  const MatrixMethod c = hausdorff_matrix_from_moments(Measure::lebesgue(), 9999);
  bool exact = true;
  for (std::size_t m = 0; m <= 20; ++m)
    for (std::size_t n = 0; n <= m; ++n) {
      const auto e = c.exact_entry(m, n);
      exact = exact && e && *e == Rational(1, static_cast<long long>(m + 1));
    }
  std::vector<double> s(10000);
  for (std::size_t n = 0; n < s.size(); ++n)
    s[n] = n % 2 == 0 ? 1.0 : 0.0;
  const double t = apply_matrix_method(c, s, 9999);
  o.detail << "entries 1/(m+1) exact for m<=20: " << (exact ? "yes" : "no") << " t(9999)=" << t;
  o.require(exact, "exact entries");
  o.require(std::abs(t - 0.5) <= 1e-4, "t(9999)");
}

void toeplitz_coherence(Outcome& o) {
  const Measure ends = Measure::dirac(0.0, 0.5) + Measure::dirac(1.0, 0.5);
  const ToeplitzReport bad = check_toeplitz(hausdorff_matrix_from_moments(ends, 50), 50);
  o.detail << "1/2(d0+d1): column=" << to_string(bad.column_verdict)
           << " limit0=" << bad.column_limits.at(0) << ";";
  o.require(bad.column_verdict == Verdict::fail && std::abs(bad.column_limits.at(0) - 0.5) <= 1e-12,
            "column-0 limit 1/2");
  for (const auto& s : shipped_moment_measures()) {
    if (s.has_atom_at_zero || std::abs(total_mass(s.measure) - 1.0) > 1e-12)
      continue;
    const ToeplitzReport t = check_toeplitz(hausdorff_matrix_from_moments(s.measure, 50), 50);
    o.detail << " " << s.name << "=" << to_string(t.verdict);
    o.require(t.row_norm_verdict == Verdict::pass && t.column_verdict == Verdict::pass &&
                  t.row_sum_verdict == Verdict::pass,
              s.name);
  }
}

void exponential_mean(Outcome& o) {
  const OperatorSpec spec = abel_type_spec();
  const ConditionsReport r = check_theorem2(spec, kHalfLine);
  const ConditionEntry& ii = r.at(ConditionId::ii);
  o.detail << "(ii)=" << to_string(ii.verdict);
  for (double eps : {1e-1, 1e-2, 1e-3, 1e-4}) {
    char key[32];
    std::snprintf(key, sizeof key, "K_hi[%g]", eps);
    const auto it = ii.evidence.find(key);
    const double k = it == ii.evidence.end() ? NAN : it->second;
    o.detail << " " << key << "=" << k << " (ln(1/eps)=" << std::log(1 / eps) << ")";
    // The exhaustion grows in steps of 0.25.
    o.require(std::abs(k - std::log(1 / eps)) <= 0.25, key);
  }
  const double mass = kernel_mass(spec, {1.0}).value[0].real();
  const double l = 2.0;
  const double v = value_at(
      spec, TestFunction::scalar([l](double t) { return l + std::exp(-t); }, l + 1, l), {999.0});
  o.detail << " mass=" << mass << " (Af)(999)-l=" << v - l << " oracle 1/(1+x)=" << 1.0 / 1000;
  o.require(ii.verdict == Verdict::pass, "(ii)");
  o.require(std::abs(mass - 1.0) <= 1e-10, "mass");
  o.require(std::abs(v - l - 1e-3) <= 1e-6, "(Af)(999)");
  o.require(r.at(ConditionId::iv).verdict == Verdict::pass, "(iv)");
}

void second_kind(Outcome& o) {
  OperatorSpec inner = rogosinski_spec(Measure::dirac(1.0, 0.5), "half-delta-1");
  const SecondKindSpec good{[](const Point&) { return Scalar(0.5); }, 0.5, Scalar(0.5), inner};
  const ConditionsReport r = check_second_kind(good, kHalfLine);
  const Applier T = bind(good);
  const std::vector<TestFunction> suite = standard_suite(Domain::half_line());
  const EmpiricalResult emp = empirical_regularity(T, suite, kHalfLine);
  // T is the identity here: values, and hence limits, must match f to 1e-12.
  double worst_value = 0.0, worst_limit = 0.0;
  for (const auto& f : suite) {
    for (int k = 0; k < 8; ++k)
      for (const Point& x : kHalfLine.sample(k, 64, 42))
        worst_value = std::max(worst_value, max_distance(T(f, x), f(x)));
    const LimitEstimate a = limit_along_filter(f.eval, kHalfLine);
    const LimitEstimate b = limit_along_filter([&](const Point& x) { return T(f, x); }, kHalfLine);
    worst_limit = std::max(worst_limit, max_distance(a.value, b.value));
  }
  const SecondKindSpec bad{[](const Point&) { return Scalar(0.5); }, 0.5, Scalar(0.5),
                           rogosinski_spec(Measure::lebesgue(), "cesaro-1")};
  const ConditionsReport rb = check_second_kind(bad, kHalfLine);
  o.detail << "a=1/2,inner 1/2 d1: " << to_string(r.overall) << " empirical=" << to_string(emp.verdict)
           << " max|Tf-f|=" << worst_value << " max limit gap=" << worst_limit
           << "; a=1/2,inner Cesaro: " << to_string(rb.overall);
  o.require(r.overall == Overall::regular_evidence, "regular");
  o.require(emp.verdict == Verdict::pass && worst_value <= 1e-12 && worst_limit <= 1e-12,
            "limits preserved to 1e-12");
  o.require(rb.overall == Overall::not_regular, "Cesaro inner not regular");
}

void delsarte(Outcome& o) {
  const Point h{1.0, 0.5};
  const OperatorSpec spec = delsarte_spec(h, 256);
  std::mt19937_64 rng(1);
  std::normal_distribution<double> N(0.0, 20.0);
  double worst = 0.0;
  const TestFunction sq =
      TestFunction::on_points([](const Point& x) { return x[0] * x[0] + x[1] * x[1]; }, 1e300);
  for (int i = 0; i < 200; ++i) {
    const Point x{N(rng), N(rng)};
    const double expected = h[0] * h[0] + h[1] * h[1] + x[0] * x[0] + x[1] * x[1];
    worst = std::max(worst, std::abs(value_at(spec, sq, x) - expected) / std::max(1.0, expected));
  }
  const double l = 1.5;
  const TestFunction f = TestFunction::on_points(
      [l](const Point& x) { return l + std::exp(-(x[0] * x[0] + x[1] * x[1])); }, l + 1, l);
  double far = 0.0;
  for (int j = 0; j < 64; ++j) {
    const double t = 2 * kPi * j / 64;
    far = std::max(far, std::abs(value_at(spec, f, {10 * std::cos(t), 10 * std::sin(t)}) - l));
  }
  const FilterBase balls = FilterBase::spanning(FilterKind::ball_complement, 10, 1e4, 6, 2);
  const EmpiricalResult emp = empirical_regularity(bind(spec), {f}, balls);
  o.detail << "max rel error of |h|^2+|x|^2 identity=" << worst << " max |T_h f - l| at |x|=10: " << far
           << " empirical=" << to_string(emp.verdict);
  o.require(worst <= 1e-10, "identity");
  o.require(far <= 1e-3 && emp.verdict == Verdict::pass, "limit preservation");
}

void affine(Outcome& o) {
  auto uI = [](double u) { return Eigen::MatrixXd(u * Eigen::MatrixXd::Identity(2, 2)); };
  auto uu = [](double u) { return Eigen::VectorXd(Eigen::VectorXd::Constant(2, u)); };
  const OperatorSpec spec = affine_spec(uI, uu, Measure::lebesgue(1, 2), 2);
  const FilterBase orthant = FilterBase::spanning(FilterKind::orthant_infinity, 10, 1e6, 8, 2);
  const AgreementVerdict ag = agrees_with(spec.family, orthant, orthant, spec.measure);
  bool proven = ag.agrees && !ag.regions.empty();
  for (const auto& r : ag.regions)
    proven = proven && r.verdict == Agreement::proven;
  const double v =
      value_at(spec, TestFunction::on_points([](const Point& x) { return x[0]; }, 1e300), {4.0, 1.0});
  const double l = 0.75;
  const TestFunction f = TestFunction::on_points(
      [l](const Point& x) { return l + 1 / (1 + std::hypot(x[0], x[1])); }, l + 1, l);
  const EmpiricalResult emp = empirical_regularity(bind(spec), {f}, orthant);
  o.detail << "agreement proven=" << (proven ? "yes" : "no") << " f=x1 at (4,1): " << v
           << " (oracle 7.5) empirical=" << to_string(emp.verdict);
  o.require(proven, "structural agreement");
  o.require(std::abs(v - 7.5) <= 1e-10, "antiderivative oracle");
  o.require(emp.verdict == Verdict::pass, "empirical");
}

void properties(Outcome& o) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> coef(-3, 3), pos(0.1, 3), xs(1e-2, 1e5);
  auto random_fn = [&]() {
    const double a = coef(rng), b = coef(rng), c = pos(rng), d = coef(rng), e = pos(rng);
    return TestFunction::scalar(
        [=](double t) { return a + b * std::atan(c * t) + d * std::exp(-e * t); },
        std::abs(a) + 2 * std::abs(b) + std::abs(d));
  };

  // Linearity.
  DiscreteOperatorSpec geo;
  geo.coefficient = [](int n, const Point&) { return Scalar(std::ldexp(1.0, -n - 1)); };
  geo.weight = [](int) { return 1.0; };
  geo.maps = MapFamily::shift([](double n) { return n; });
  geo.n_max = 64;
  geo.tail_bound = [](int n, const Point&) { return std::ldexp(1.0, -n - 1); };
  const std::vector<Applier> appliers{
      bind(cesaro_spec(2)), bind(abel_type_spec()), bind(geo),
      bind(SecondKindSpec{[](const Point& x) { return Scalar(1 / (1 + x[0])); }, 1, Scalar(0),
                          cesaro_spec(1)}),
      bind(MatrixMethod::cesaro1())};
  int linearity_violations = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t which = trial % appliers.size();
    const TestFunction f = random_fn(), g = random_fn();
    const double a = coef(rng), b = coef(rng);
    const Point x{which == 4 ? std::floor(xs(rng) / 100) : xs(rng)};
    const TestFunction combo = TestFunction::on_points(
        [=](const Point& p) { return a * f(p)[0].real() + b * g(p)[0].real(); },
        std::abs(a) * f.bound + std::abs(b) * g.bound);
    const double fx = appliers[which](f, x)[0].real(), gx = appliers[which](g, x)[0].real();
    const double lhs = appliers[which](combo, x)[0].real();
    if (std::abs(lhs - (a * fx + b * gx)) > 1e-12 * (std::abs(a * fx) + std::abs(b * gx))) {
      ++linearity_violations;
      o.detail << "{linearity: applier " << which << " x=" << x[0] << " lhs=" << lhs
               << " rhs=" << a * fx + b * gx << " diff=" << lhs - (a * fx + b * gx) << " scale=" << std::abs(a * fx) + std::abs(b * gx) << "} ";
    }
  }

  // Identity specs.
  const OperatorSpec delta = rogosinski_spec(Measure::dirac(1.0));
  OperatorSpec zero_kernel = rogosinski_spec(Measure::lebesgue());
  zero_kernel.kernel = [](double, const Point&) { return Scalar(0.0); };
  const SecondKindSpec unit{[](const Point&) { return Scalar(1.0); }, 1.0, Scalar(1.0), zero_kernel};
  const TestFunction f = random_fn();
  std::vector<double> seq(2000);
  for (std::size_t n = 0; n < seq.size(); ++n)
    seq[n] = f({double(n)})[0].real();
  double identity_error = 0.0;
  const std::vector<Point> pts = Domain::half_line().sample(100, 5);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double fx = f(pts[i])[0].real();
    identity_error = std::max(identity_error, std::abs(value_at(delta, f, pts[i]) - fx));
    identity_error =
        std::max(identity_error, std::abs(apply_second_kind(unit, f, pts[i]).value[0].real() - fx));
    const std::size_t m = (i * 19) % seq.size();
    identity_error =
        std::max(identity_error, std::abs(apply_matrix_method(MatrixMethod::identity(), seq, m) - seq[m]));
  }

  // Constant probe against the (iv) trace, and refinement stability.
  const CheckSettings settings;
  double probe_gap = 0.0, refinement = 0.0;
  std::string refinement_where = "-";
  int soundness_violations = 0, expectation_mismatches = 0;
  for (const auto& s : shipped_specs()) {
    const ConditionsReport r = check_any(s.spec, s.filter, settings);
    if (r.overall != s.expected)
      ++expectation_mismatches;
    if (const auto* spec = std::get_if<OperatorSpec>(&s.spec)) {
      const ConditionEntry& iv = r.at(ConditionId::iv);
      const Applier H = bind(*spec);
      const LimitEstimate probe = limit_along_filter(
          [&](const Point& x) { return H(TestFunction::constant(1.0), x); }, s.filter,
          settings.limit_settings());
      if (probe.deviation_trace.size() != iv.trace.size()) {
        probe_gap = INFINITY;
      } else {
        for (std::size_t k = 0; k < iv.trace.size(); ++k)
          probe_gap = std::max(probe_gap, std::abs(probe.deviation_trace[k] - iv.trace[k]));
        if (!probe.value.empty() && iv.evidence.count("limit_estimate"))
          probe_gap = std::max(probe_gap, std::abs(probe.value[0].real() - iv.evidence.at("limit_estimate")));
      }
      for (const Point& x : spec->domain.sample(8, 3, 1e-2, 1e5)) {
        QuadratureSettings q;
        q.refinement_check = true;
        const TestFunction g = standard_suite(spec->domain).front();
        const IntegralResult ir = integrate(
            [&](double u) {
              Value v = g(spec->family(u, x));
              for (auto& c : v)
                c *= spec->kernel(u, x);
              return v;
            },
            spec->measure,
            [&] {
              QuadratureSettings t = q;
              if (spec->measure.tail()) {
                const RealFn rule = spec->tail_rule();
                t.tail_remainder = [rule, b = g.bound](double k) { return b * rule(k); };
              }
              return t;
            }());
        const double change = ir.refinement_change.value_or(INFINITY);
        if (change > refinement) {
          refinement = change;
          refinement_where = s.name + " at x=" + std::to_string(x[0]);
        }
      }
    }
    if (r.overall == Overall::regular_evidence) {
      const EmpiricalResult e =
          empirical_regularity(bind_any(s.spec), standard_suite(domain_of(s.spec)), s.filter, settings);
      if (e.verdict != Verdict::pass)
        ++soundness_violations;
    }
  }
  o.detail << "linearity violations=" << linearity_violations << "/100 identity max error=" << identity_error
           << " constant-probe vs (iv) gap=" << probe_gap << " refinement change=" << refinement << " (" << refinement_where << ")"
           << " soundness violations=" << soundness_violations
           << " verdict mismatches=" << expectation_mismatches;
  o.require(linearity_violations == 0, "linearity");
  o.require(identity_error <= 1e-15, "identity");
  o.require(probe_gap <= 1e-13, "constant probe");
  o.require(refinement <= 1e-10, "refinement stability");
  o.require(soundness_violations == 0 && expectation_mismatches == 0, "soundness");
}

} // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<void(Outcome&)> run;
  };
  const Criterion criteria[] = {
      {"Cesaro mean is regular", cesaro_regularity},
      {"atom at zero breaks regularity", rogosinski_counterexample},
      {"Grandi series via the (C,1) moment matrix", grandi},
      {"Toeplitz conditions match the atom-at-zero dichotomy", toeplitz_coherence},
      {"exponential mean on [0, inf)", exponential_mean},
      {"second-kind operators", second_kind},
      {"Delsarte rotation shift", delsarte},
      {"affine positive operators", affine},
      {"property suites", properties},
  };
  int failed = 0, index = 0;
  for (const auto& c : criteria) {
    ++index;
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " [exception: " << e.what() << "]";
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s %d. %s (%.2fs): %s\n", o.pass ? "PASS" : "FAIL", index, c.name, secs,
                o.detail.str().c_str());
    failed += !o.pass;
  }
  std::printf("%d/%d criteria passed\n", index - failed, index);
  return failed == 0 ? 0 : 1;
}

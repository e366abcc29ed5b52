#include "hausdorff/demos.hpp"

#include "hausdorff/methods.hpp"
#include "hausdorff/report.hpp"

#include <cmath>
#include <numbers>

namespace hausdorff {

namespace {

std::string fmt(double v) { return format_double(v); }

DemoCheck check(std::string label, bool pass, std::string detail) {
  return {std::move(label), pass, std::move(detail)};
}

DemoResult grandi() {
  DemoResult r{"grandi", {}};
  const std::size_t m = 9999;
  const MatrixMethod c = hausdorff_matrix_from_moments(Measure::lebesgue(), m);
  bool exact = true;
  for (std::size_t row = 0; row <= 20 && exact; ++row)
    for (std::size_t n = 0; n <= row; ++n)
      exact = exact && c.exact_entry(row, n) == Rational(1, static_cast<long>(row + 1));
  r.checks.push_back(check("moment matrix of Lebesgue is (C,1) for m <= 20", exact,
                           "exact rational comparison"));
  std::vector<double> s(m + 1);
  for (std::size_t i = 0; i <= m; ++i)
    s[i] = i % 2 == 0 ? 1.0 : 0.0;
  const double t = apply_matrix_method(c, s, m);
  r.checks.push_back(check("t(9999) of Grandi partial sums", std::abs(t - 0.5) <= 1e-4,
                           "t=" + fmt(t) + " |t-1/2|=" + fmt(std::abs(t - 0.5))));
  return r;
}

DemoResult rogosinski_counterexample() {
  DemoResult r{"rogosinski-counterexample", {}};
  const OperatorSpec spec = rogosinski_spec(
      Measure::dirac(0.0, 0.5) + Measure::lebesgue().scaled(0.5), "half-atom-at-zero");
  const ConditionsReport rep =
      check_theorem2(spec, FilterBase::spanning(FilterKind::half_line, 10.0, 1e4, 8));
  const ConditionEntry& ag = rep.at(ConditionId::agrees);
  const double fail_mass = ag.evidence.count("fail_mass") ? ag.evidence.at("fail_mass") : -1.0;
  r.checks.push_back(check("checker verdict NOT-REGULAR", rep.overall == Overall::not_regular,
                           std::string(to_string(rep.overall))));
  r.checks.push_back(check("agreement fails on mass 1/2 at u=0",
                           ag.verdict == Verdict::fail && std::abs(fail_mass - 0.5) <= 1e-12,
                           "fail_mass=" + fmt(fail_mass) + " witness=" + ag.witness.value_or("")));
  const TestFunction f =
      TestFunction::scalar([](double t) { return std::atan(t); }, std::numbers::pi / 2,
                           std::numbers::pi / 2, "atan");
  const double v = apply_generic(spec, f, {1e4}).value[0].real();
  r.checks.push_back(check("H(atan)(1e4) near pi/4", std::abs(v - std::numbers::pi / 4) <= 1e-3,
                           "value=" + fmt(v) + " gap from pi/2=" + fmt(std::numbers::pi / 2 - v)));
  return r;
}

DemoResult delsarte() {
  DemoResult r{"delsarte", {}};
  const Point h{1.0, 0.5};
  const OperatorSpec spec = delsarte_spec(h, 256);
  const TestFunction sq = TestFunction::on_points(
      [](const Point& x) { return x[0] * x[0] + x[1] * x[1]; }, 1e12, std::nullopt, "|x|^2");
  double worst = 0.0;
  for (const auto& x : Domain::plane(2).sample(32, 7, 1e-2, 1e2)) {
    const double got = apply_generic(spec, sq, x).value[0].real();
    const double want = h[0] * h[0] + h[1] * h[1] + x[0] * x[0] + x[1] * x[1];
    worst = std::max(worst, std::abs(got - want));
  }
  r.checks.push_back(check("T_h |x|^2 = |h|^2 + |x|^2", worst <= 1e-10, "max error " + fmt(worst)));
  const double l = 1.5;
  const TestFunction g = TestFunction::on_points(
      [l](const Point& x) { return l + std::exp(-(x[0] * x[0] + x[1] * x[1])); }, l + 1, l,
      "l+exp(-|x|^2)");
  double worst_far = 0.0;
  for (const auto& x : FilterBase::linear(FilterKind::ball_complement, 10.0, 1.0, 2).sample(0, 32, 3))
    worst_far = std::max(worst_far, std::abs(apply_generic(spec, g, x).value[0].real() - l));
  r.checks.push_back(check("T_h f -> l at |x| >= 10", worst_far <= 1e-3,
                           "max |T_h f - l| = " + fmt(worst_far)));
  return r;
}

DemoResult abel_type() {
  DemoResult r{"abel-type", {}};
  const OperatorSpec spec = abel_type_spec();
  const ConditionsReport rep =
      check_theorem2(spec, FilterBase::spanning(FilterKind::half_line, 10.0, 1e6, 8));
  const ConditionEntry& ii = rep.at(ConditionId::ii);
  bool within = ii.verdict == Verdict::pass;
  std::string detail;
  for (double eps : {1e-1, 1e-2, 1e-3, 1e-4}) {
    char key[32];
    std::snprintf(key, sizeof key, "K_hi[%g]", eps);
    auto it = ii.evidence.find(key);
    const double k = it == ii.evidence.end() ? -1.0 : it->second;
    within = within && std::abs(k - std::log(1.0 / eps)) <= 0.25;
    detail += std::string(key) + "=" + fmt(k) + " ";
  }
  r.checks.push_back(check("K_eps within one step of ln(1/eps)", within, detail));
  const double mass = kernel_mass(spec, {1.0}).value[0].real();
  r.checks.push_back(check("kernel mass 1", std::abs(mass - 1.0) <= 1e-10, "mass=" + fmt(mass)));
  const double l = 2.0;
  const TestFunction f =
      TestFunction::scalar([l](double t) { return l + std::exp(-t); }, l + 1, l, "l+exp(-t)");
  const double v = apply_generic(spec, f, {999.0}).value[0].real();
  r.checks.push_back(check("(Af)(999) = l + 1/1000", std::abs(v - l - 1e-3) <= 1e-6,
                           "value=" + fmt(v)));
  r.checks.push_back(check("checker verdict REGULAR-EVIDENCE",
                           rep.overall == Overall::regular_evidence,
                           std::string(to_string(rep.overall))));
  return r;
}

DemoResult affine() {
  DemoResult r{"affine", {}};
  const OperatorSpec spec = affine_spec(
      [](double u) { return Eigen::MatrixXd(u * Eigen::MatrixXd::Identity(2, 2)); },
      [](double u) { return Eigen::VectorXd(Eigen::VectorXd::Constant(2, u)); },
      Measure::lebesgue(1.0, 2.0), 2);
  const FilterBase filter = FilterBase::spanning(FilterKind::orthant_infinity, 10.0, 1e6, 8, 2);
  const AgreementVerdict ag = agrees_with(spec.family, filter, filter, spec.measure);
  bool proven = ag.agrees;
  for (const auto& reg : ag.regions)
    proven = proven && reg.verdict == Agreement::proven;
  r.checks.push_back(check("agreement proven structurally", proven,
                           ag.regions.empty() ? "" : ag.regions.front().region));
  const TestFunction x1 =
      TestFunction::on_points([](const Point& x) { return x[0]; }, 1e12, std::nullopt, "x1");
  const double v = apply_generic(spec, x1, {4.0, 1.0}).value[0].real();
  r.checks.push_back(check("f = x1 at (4,1) gives 7.5", std::abs(v - 7.5) <= 1e-10,
                           "value=" + fmt(v)));
  const double l = 0.75;
  const TestFunction f = TestFunction::on_points(
      [l](const Point& x) { return l + 1.0 / (1.0 + euclidean_norm(x)); }, l + 1, l,
      "l+1/(1+|x|)");
  const EmpiricalResult emp = empirical_regularity(bind(spec), {f}, filter);
  r.checks.push_back(check("limit preserved for l + 1/(1+|x|)", emp.verdict == Verdict::pass,
                           "gap=" + fmt(emp.per_function.front().gap)));
  return r;
}

DemoResult second_kind() {
  DemoResult r{"second-kind", {}};
  const FilterBase filter = FilterBase::spanning(FilterKind::half_line, 10.0, 1e6, 8);
  SecondKindSpec good;
  good.a = [](const Point&) { return Scalar(0.5, 0.0); };
  good.a_bound = 0.5;
  good.alpha = Scalar(0.5, 0.0);
  good.inner.kernel = [](double, const Point&) { return Scalar(0.5, 0.0); };
  good.inner.measure = Measure::dirac(1.0);
  good.inner.envelope = Envelope{[](double) { return 0.5; }, {}};
  const ConditionsReport rep = check_second_kind(good, filter);
  r.checks.push_back(check("a = 1/2 with inner mass 1/2 is regular",
                           rep.overall == Overall::regular_evidence,
                           std::string(to_string(rep.overall))));
  // T = f/2 + f/2 is the identity: its limit estimates coincide with those of f.
  const Applier apply = bind(good);
  const std::vector<TestFunction> suite = standard_suite(Domain::half_line());
  const EmpiricalResult emp = empirical_regularity(apply, suite, filter);
  double worst = 0.0;
  for (const auto& f : suite) {
    const LimitEstimate plain = limit_along_filter(f.eval, filter);
    const LimitEstimate transformed =
        limit_along_filter([&](const Point& x) { return apply(f, x); }, filter);
    worst = std::max(worst, max_distance(plain.value, transformed.value));
  }
  r.checks.push_back(check("limits preserved, identical to f within 1e-12",
                           emp.verdict == Verdict::pass && worst <= 1e-12,
                           "max difference " + fmt(worst)));
  SecondKindSpec bad = good;
  bad.inner = cesaro_spec(1);
  const ConditionsReport rep_bad = check_second_kind(bad, filter);
  r.checks.push_back(check("a = 1/2 with Cesaro inner is not regular",
                           rep_bad.overall == Overall::not_regular,
                           std::string(to_string(rep_bad.overall))));
  return r;
}

} // namespace

const std::vector<std::string>& demo_names() {
  static const std::vector<std::string> names{"grandi", "rogosinski-counterexample", "delsarte",
                                              "abel-type", "affine", "second-kind"};
  return names;
}

DemoResult run_demo(const std::string& name) {
  if (name == "grandi") return grandi();
  if (name == "rogosinski-counterexample") return rogosinski_counterexample();
  if (name == "delsarte") return delsarte();
  if (name == "abel-type") return abel_type();
  if (name == "affine") return affine();
  if (name == "second-kind") return second_kind();
  std::string known;
  for (const auto& n : demo_names())
    known += (known.empty() ? "" : ", ") + n;
  throw Error(Errc::unknown_demo, "'" + name + "' (known: " + known + ")");
}

} // namespace hausdorff

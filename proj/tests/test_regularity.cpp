#include "hausdorff/methods.hpp"
#include "hausdorff/regularity.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace hausdorff;

namespace {

const FilterBase kHalfLine = FilterBase::spanning(FilterKind::half_line, 10.0, 1e6, 8);

Measure half_atom_at_zero() { return Measure::dirac(0.0, 0.5) + Measure::lebesgue().scaled(0.5); }

MatrixMethod ends_method() {
  MatrixMethod c;
  c.entry = [](std::size_t m, std::size_t n) {
    if (m == 0)
      return n == 0 ? 1.0 : 0.0;
    return (n == 0 || n == m) ? 0.5 : 0.0;
  };
  c.name = "ends";
  return c;
}

} // namespace

TEST_CASE("rogosinski criterion") {
  const RogosinskiResult leb = check_rogosinski(Measure::lebesgue());
  CHECK(leb.regular);
  CHECK(leb.mass == doctest::Approx(1.0));
  CHECK(leb.atom0 == 0.0);
  const RogosinskiResult d0 = check_rogosinski(Measure::dirac(0.0));
  CHECK_FALSE(d0.regular);
  CHECK(d0.atom0 == 1.0);
  const RogosinskiResult half = check_rogosinski(Measure::dirac(1.0, 0.5));
  CHECK_FALSE(half.regular);
  CHECK(half.mass == 0.5);
  try {
    check_rogosinski(Measure::lebesgue(0.5, 1.5));
    FAIL("expected bad-support");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::bad_support);
  }
}

TEST_CASE("toeplitz conditions on closed-form matrices") {
  const ToeplitzReport c1 = check_toeplitz(MatrixMethod::cesaro1(), 50);
  CHECK(c1.row_norm_verdict == Verdict::pass);
  CHECK(c1.column_verdict == Verdict::pass);
  CHECK(c1.row_sum_verdict == Verdict::pass);
  CHECK(c1.verdict == Verdict::pass);
  CHECK(check_toeplitz(MatrixMethod::identity(), 50).verdict == Verdict::pass);

  const ToeplitzReport ends = check_toeplitz(ends_method(), 50);
  CHECK(ends.column_verdict == Verdict::fail);
  CHECK(ends.verdict == Verdict::fail);
  REQUIRE(ends.failing_column.has_value());
  CHECK(*ends.failing_column == 0);
  CHECK(std::abs(ends.column_limits.at(0) - 0.5) <= 1e-12);
  CHECK(ends.row_sum_verdict == Verdict::pass);
}

TEST_CASE("regularity conditions on the Cesaro spec") {
  const ConditionsReport r = check_theorem2(cesaro_spec(1), kHalfLine);
  for (ConditionId id : {ConditionId::i_a, ConditionId::i_b, ConditionId::ii, ConditionId::iii,
                         ConditionId::iv, ConditionId::agrees})
    CHECK_MESSAGE(r.at(id).verdict == Verdict::pass, to_string(id));
  CHECK(r.overall == Overall::regular_evidence);
  CHECK(exit_code(r.overall) == 0);
}

TEST_CASE("regularity conditions on the atom-at-zero counterexample") {
  const ConditionsReport r = check_theorem2(rogosinski_spec(half_atom_at_zero()), kHalfLine);
  const ConditionEntry& a = r.at(ConditionId::agrees);
  CHECK(a.verdict == Verdict::fail);
  CHECK(a.evidence.at("fail_mass") == doctest::Approx(0.5).epsilon(1e-14));
  REQUIRE(a.witness.has_value());
  CHECK(*a.witness == "u=0");
  CHECK(r.overall == Overall::not_regular);
  CHECK(exit_code(r.overall) == 1);
}

TEST_CASE("regularity conditions on the exponential mean finds K_eps = [0, ln(1/eps)]") {
  const ConditionsReport r = check_theorem2(abel_type_spec(), kHalfLine);
  const ConditionEntry& ii = r.at(ConditionId::ii);
  REQUIRE(ii.verdict == Verdict::pass);
  for (double eps : {1e-1, 1e-2, 1e-3, 1e-4}) {
    char key[32];
    std::snprintf(key, sizeof key, "K_hi[%g]", eps);
    CHECK(std::abs(ii.evidence.at(key) - std::log(1 / eps)) <= 0.25);
    std::snprintf(key, sizeof key, "K_lo[%g]", eps);
    CHECK(ii.evidence.at(key) == 0.0);
  }
  CHECK(r.at(ConditionId::iv).verdict == Verdict::pass);
  CHECK(r.overall == Overall::regular_evidence);
}

TEST_CASE("signed measures are rejected") {
  Measure signed_mu = Measure::lebesgue();
  signed_mu.add_atom(0.5, -0.1);
  signed_mu.set_signed(true);
  try {
    check_theorem2(rogosinski_spec(signed_mu), kHalfLine);
    FAIL("expected signed-measure-rejected");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::signed_measure_rejected);
  }
}

TEST_CASE("domination") {
  OperatorSpec osc = abel_type_spec();
  osc.kernel = [](double u, const Point& x) { return Scalar(std::exp(-u) * std::cos(u * x[0])); };
  const DominatedResult a =
      check_dominated(osc, Envelope{[](double u) { return std::exp(-u); }, [](double k) { return std::exp(-k); }});
  CHECK(a.dominates);
  CHECK(std::abs(a.phi_integral - 1.0) <= 1e-10);

  const DominatedResult one = check_dominated(cesaro_spec(1), Envelope{[](double) { return 1.0; }, {}});
  CHECK(one.dominates);
  CHECK(one.phi_integral == doctest::Approx(1.0));

  OperatorSpec grow = rogosinski_spec(Measure::lebesgue());
  grow.kernel = [](double u, const Point& x) { return Scalar(x[0] * u); };
  const DominatedResult bad = check_dominated(grow, Envelope{[](double u) { return u; }, {}});
  CHECK_FALSE(bad.dominates);
  REQUIRE(bad.witness_x.has_value());
  CHECK(bad.witness_x->at(0) > 1.0);
}

TEST_CASE("domination implies (i)-(iii)") {
  for (const OperatorSpec& spec : {cesaro_spec(2), cesaro_spec(0.5), abel_type_spec()}) {
    REQUIRE(spec.envelope.has_value());
    REQUIRE(check_dominated(spec, *spec.envelope).dominates);
    const ConditionsReport r = check_theorem2(spec, kHalfLine);
    for (ConditionId id : {ConditionId::i_a, ConditionId::i_b, ConditionId::ii, ConditionId::iii})
      CHECK_MESSAGE(r.at(id).verdict == Verdict::pass, spec.name, " ", to_string(id));
  }
}

TEST_CASE("density without envelope leaves (iii) inconclusive") {
  OperatorSpec spec = rogosinski_spec(Measure::lebesgue());
  spec.kernel = [](double u, const Point&) { return Scalar(2 * u); };
  spec.envelope.reset();
  const ConditionsReport r = check_theorem2(spec, kHalfLine);
  CHECK(r.at(ConditionId::iii).verdict == Verdict::inconclusive);
  CHECK(r.overall == Overall::inconclusive);
  CHECK(exit_code(r.overall) == 2);
}

TEST_CASE("discrete conditions") {
  for (const auto& s : shipped_specs()) {
    if (s.name == "discrete-geometric") {
      const ConditionsReport r = check_any(s.spec, s.filter);
      CHECK(r.overall == Overall::regular_evidence);
      for (const auto& c : r.conditions)
        if (c.id != ConditionId::v_d)
          CHECK_MESSAGE(c.verdict == Verdict::pass, c.label);
    }
    if (s.name == "discrete-divergent") {
      const ConditionsReport r = check_any(s.spec, s.filter);
      CHECK(r.at(ConditionId::i_a).verdict == Verdict::fail);
      CHECK(r.overall == Overall::not_regular);
    }
  }
  DiscreteOperatorSpec single;
  single.coefficient = [](int n, const Point&) { return Scalar(n == 0 ? 1.0 : 0.0); };
  single.weight = [](int) { return 1.0; };
  single.maps = MapFamily::shift([](double) { return 0.0; });
  single.n_max = 0;
  single.tail_bound = [](int, const Point&) { return 0.0; };
  CHECK(check_discrete_conditions(single, kHalfLine, kHalfLine).overall == Overall::regular_evidence);
}

TEST_CASE("second kind: the target of (iv) moves to 1 - alpha") {
  OperatorSpec half_delta = rogosinski_spec(Measure::dirac(1.0));
  half_delta.kernel = [](double, const Point&) { return Scalar(0.5); };
  const SecondKindSpec good{[](const Point&) { return Scalar(0.5); }, 0.5, Scalar(0.5), half_delta};
  const ConditionsReport r = check_second_kind(good, kHalfLine);
  CHECK(r.overall == Overall::regular_evidence);
  CHECK(r.at(ConditionId::iv).evidence.at("target") == 0.5);

  const SecondKindSpec decay{[](const Point& x) { return Scalar(1 / (1 + x[0])); }, 1.0, {},
                             cesaro_spec(1)};
  const ConditionsReport d = check_second_kind(decay, kHalfLine);
  CHECK(d.at(ConditionId::iv).verdict == Verdict::pass);
  CHECK(d.at(ConditionId::iv).evidence.at("target") == doctest::Approx(1.0).epsilon(1e-6));

  const SecondKindSpec bad{[](const Point&) { return Scalar(0.5); }, 0.5, Scalar(0.5), cesaro_spec(1)};
  const ConditionsReport b = check_second_kind(bad, kHalfLine);
  CHECK(b.at(ConditionId::iv).verdict == Verdict::fail);
  CHECK(b.overall == Overall::not_regular);
}

TEST_CASE("empirical regularity: Cesaro passes, the atom at zero halves the limit") {
  const TestFunction atan_fn =
      TestFunction::scalar([](double t) { return std::atan(t); }, 2, std::numbers::pi / 2, "atan");
  const EmpiricalResult ok = empirical_regularity(bind(cesaro_spec(1)), {atan_fn}, kHalfLine);
  CHECK(ok.verdict == Verdict::pass);
  CHECK(ok.per_function[0].gap <= 2e-3);
  // Closed form (1/x)∫_0^x atan = atan x - ln(1+x^2)/(2x).
  const double x = 1e4;
  const double oracle = std::atan(x) - std::log1p(x * x) / (2 * x);
  const double v = apply_generic(cesaro_spec(1), atan_fn, {x}).value[0].real();
  CHECK(std::abs(v - oracle) <= 1e-12);
  CHECK(std::abs(v - std::numbers::pi / 2) <= 2e-3);

  const EmpiricalResult bad =
      empirical_regularity(bind(rogosinski_spec(half_atom_at_zero())), {atan_fn}, kHalfLine);
  CHECK(bad.verdict == Verdict::fail);
  REQUIRE(bad.per_function[0].estimate.status == LimitStatus::converged);
  CHECK(std::abs(bad.per_function[0].estimate.value[0].real() - std::numbers::pi / 4) <= 1e-3);
  CHECK(std::abs(bad.per_function[0].gap - std::numbers::pi / 4) <= 1e-3);
}

TEST_CASE("constant probe equals the (iv) trace") {
  const CheckSettings s;
  for (const OperatorSpec& spec : {cesaro_spec(1), cesaro_spec(3), abel_type_spec(),
                                   rogosinski_spec(Measure::dirac(1.0, 0.5))}) {
    const ConditionsReport r = check_theorem2(spec, kHalfLine, s);
    const ConditionEntry& iv = r.at(ConditionId::iv);
    const Applier H = bind(spec);
    const LimitEstimate probe = limit_along_filter(
        [&](const Point& x) { return H(TestFunction::constant(1.0), x); }, kHalfLine,
        s.limit_settings());
    REQUIRE(probe.deviation_trace.size() == iv.trace.size());
    for (std::size_t k = 0; k < iv.trace.size(); ++k)
      CHECK(std::abs(probe.deviation_trace[k] - iv.trace[k]) <= 1e-13);
    CHECK(std::abs(probe.value[0].real() - iv.evidence.at("limit_estimate")) <= 1e-13);
  }
}

TEST_CASE("overall verdict follows the stated rule for every combination") {
  const std::vector<ConditionId> ids{ConditionId::i_a, ConditionId::i_b, ConditionId::ii,
                                     ConditionId::iii, ConditionId::iv, ConditionId::agrees};
  const Verdict all[] = {Verdict::pass, Verdict::fail, Verdict::inconclusive};
  int combos = 0;
  for (int code = 0; code < 729 * 2; ++code) {
    std::vector<ConditionEntry> entries;
    int c = code / 2;
    const double fail_mass = code % 2 ? 0.25 : 0.0;
    for (ConditionId id : ids) {
      ConditionEntry e;
      e.id = id;
      e.verdict = all[c % 3];
      c /= 3;
      if (id == ConditionId::agrees)
        e.evidence["fail_mass"] = e.verdict == Verdict::fail ? fail_mass : 0.0;
      entries.push_back(e);
    }
    bool all_pass = true;
    for (const auto& e : entries)
      all_pass = all_pass && e.verdict == Verdict::pass;
    const bool iv_fail = entries[4].verdict == Verdict::fail;
    const bool agree_fail = entries[5].verdict == Verdict::fail && fail_mass > 0;
    const Overall o = overall_verdict(entries);
    CHECK((o == Overall::regular_evidence) == all_pass);
    CHECK((o == Overall::not_regular) == (iv_fail || agree_fail));
    ++combos;
  }
  CHECK(combos == 1458);
}

TEST_CASE("settings validation") {
  CheckSettings s;
  CHECK_NOTHROW(s.validate());
  s.eps_grid = {1e-2, 1e-1};
  CHECK_THROWS_AS(s.validate(), Error);
  s.eps_grid = {};
  CHECK_THROWS_AS(s.validate(), Error);
}

TEST_CASE("rogosinski criterion and the regularity conditions agree on measures over [0, 1]") {
  std::vector<Measure> measures;
  for (const auto& m : shipped_moment_measures())
    measures.push_back(m.measure);
  measures.push_back(Measure::dirac(0.0));
  measures.push_back(Measure::dirac(1.0, 0.5));
  measures.push_back(Measure::lebesgue().scaled(2.0));
  for (const Measure& mu : measures) {
    const bool regular = check_rogosinski(mu).regular;
    const ConditionsReport r = check_theorem2(rogosinski_spec(mu), kHalfLine);
    CHECK(regular == (r.overall == Overall::regular_evidence));
    if (!regular)
      CHECK(r.overall == Overall::not_regular);
  }
}

TEST_CASE("checker and empirical harness never contradict on shipped specs") {
  int violations = 0;
  for (const auto& s : shipped_specs()) {
    const ConditionsReport r = check_any(s.spec, s.filter);
    CHECK_MESSAGE(r.overall == s.expected, s.name);
    if (r.overall != Overall::regular_evidence)
      continue;
    const EmpiricalResult e =
        empirical_regularity(bind_any(s.spec), standard_suite(domain_of(s.spec)), s.filter);
    if (e.verdict != Verdict::pass) {
      ++violations;
      MESSAGE("empirical failure for ", s.name);
    }
  }
  CHECK(violations == 0);
}

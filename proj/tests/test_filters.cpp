#include "hausdorff/family.hpp"
#include "hausdorff/filter.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace hausdorff;

namespace {

PointFn scalar_fn(double (*f)(double)) {
  return [f](const Point& x) { return Value{Scalar(f(x[0]), 0.0)}; };
}

const FilterBase kLinear10 = FilterBase::linear(FilterKind::half_line, 10.0, 10.0);

} // namespace

TEST_CASE("limit of exponential decay to a constant") {
  const LimitEstimate e =
      limit_along_filter(scalar_fn([](double x) { return 2.0 + std::exp(-x); }), kLinear10);
  REQUIRE(e.status == LimitStatus::converged);
  CHECK(std::abs(e.value[0].real() - 2.0) <= std::exp(-10.0));
}

TEST_CASE("limit of 1/x is zero") {
  // The deepest level sits at T = 80, where 1/x still spreads by ~6e-3.
  LimitSettings s;
  s.tol = 1e-2;
  const LimitEstimate e =
      limit_along_filter(scalar_fn([](double x) { return 1.0 / x; }), kLinear10, s);
  REQUIRE(e.status == LimitStatus::converged);
  CHECK(std::abs(e.value[0].real()) <= 1e-2);
}

TEST_CASE("sin has no limit") {
  const LimitEstimate e =
      limit_along_filter(scalar_fn([](double x) { return std::sin(x); }), kLinear10);
  CHECK(e.status != LimitStatus::converged);
}

TEST_CASE("converged estimates satisfy the trace invariant") {
  LimitSettings s;
  for (auto f : {+[](double x) { return std::atan(x); }, +[](double x) { return 1 / (1 + x); },
                 +[](double x) { return 3 + std::exp(-x); }}) {
    const FilterBase filter = FilterBase::spanning(FilterKind::half_line, 10, 1e6, 8);
    const LimitEstimate e = limit_along_filter(scalar_fn(f), filter, s);
    if (e.status != LimitStatus::converged)
      continue;
    REQUIRE(e.deviation_trace.size() == static_cast<std::size_t>(s.levels));
    CHECK(e.deviation_trace.back() <= s.tol);
    for (std::size_t k = e.deviation_trace.size() - s.window; k + 1 < e.deviation_trace.size(); ++k)
      CHECK(e.deviation_trace[k + 1] <= e.deviation_trace[k]);
  }
}

TEST_CASE("constant functions have zero deviation under any settings") {
  for (int levels : {3, 5, 8})
    for (std::uint64_t seed : {1u, 99u}) {
      LimitSettings s;
      s.levels = levels;
      s.seed = seed;
      s.tol = 1e-15;
      s.window = 2;
      const LimitEstimate e =
          limit_along_filter([](const Point&) { return Value{Scalar(-4.25, 0)}; }, kLinear10, s);
      REQUIRE(e.status == LimitStatus::converged);
      CHECK(e.value[0].real() == -4.25);
      for (double d : e.deviation_trace)
        CHECK(d == 0.0);
    }
}

TEST_CASE("limit estimation is deterministic for a fixed seed") {
  const FilterBase f = FilterBase::spanning(FilterKind::ball_complement, 1, 1e3, 6, 2);
  auto g = [](const Point& x) { return Value{Scalar(std::cos(x[0]) / (1 + x[1] * x[1]), 0)}; };
  const LimitEstimate a = limit_along_filter(g, f), b = limit_along_filter(g, f);
  CHECK(a.deviation_trace == b.deviation_trace);
  CHECK(a.value == b.value);
}

TEST_CASE("evaluator failures carry the point") {
  try {
    limit_along_filter([](const Point&) -> Value { throw Error(Errc::eval_error, "boom"); },
                       kLinear10);
    FAIL("expected eval-error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::eval_error);
  }
}

TEST_CASE("every shipped filter kind is nested") {
  for (const FilterBase& f :
       {FilterBase::linear(FilterKind::half_line, 1, 3), FilterBase::geometric(FilterKind::index, 1, 2),
        FilterBase::spanning(FilterKind::orthant_infinity, 1, 1e4, 8, 3),
        FilterBase::spanning(FilterKind::ball_complement, 1, 1e4, 8, 2)}) {
    CHECK_NOTHROW(f.validate(12, 32, 5));
    for (int k = 0; k + 1 < 12; ++k) {
      CHECK(f.threshold(k + 1) > f.threshold(k));
      for (const Point& x : f.sample(k + 1, 32, 5)) {
        CHECK(f.contains(k + 1, x));
        CHECK(f.contains(k, x));
        CHECK(f.domain().contains(x));
      }
    }
  }
}

TEST_CASE("dilation agreement: Lebesgue agrees, an atom at 0 does not") {
  const FilterBase F = FilterBase::spanning(FilterKind::half_line, 10, 1e6, 8);
  const AgreementVerdict leb = agrees_with(MapFamily::dilation(), F, F, Measure::lebesgue());
  CHECK(leb.agrees);
  CHECK(leb.fail_mass == 0.0);
  bool proven_positive = false, fail_at_zero = false;
  for (const auto& r : leb.regions) {
    if (r.verdict == Agreement::proven)
      proven_positive = true;
    if (r.verdict == Agreement::fail && r.witness && *r.witness == 0.0)
      fail_at_zero = true;
  }
  CHECK(proven_positive);
  CHECK(fail_at_zero);

  const Measure mix = Measure::dirac(0.0, 0.5) + Measure::lebesgue().scaled(0.5);
  const AgreementVerdict bad = agrees_with(MapFamily::dilation(), F, F, mix);
  CHECK_FALSE(bad.agrees);
  CHECK(bad.fail_mass == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(bad.verdict == Verdict::fail);
}

TEST_CASE("agreement is monotone in the failing mass") {
  const FilterBase F = FilterBase::spanning(FilterKind::half_line, 10, 1e6, 8);
  for (double w : {0.1, 0.3, 0.6, 0.9}) {
    const Measure m = Measure::dirac(0.0, w) + Measure::lebesgue().scaled(1 - w);
    const Measure heavier = Measure::dirac(0.0, w + 0.05) + Measure::lebesgue().scaled(1 - w);
    const AgreementVerdict a = agrees_with(MapFamily::dilation(), F, F, m);
    const AgreementVerdict b = agrees_with(MapFamily::dilation(), F, F, heavier);
    CHECK_FALSE(a.agrees);
    CHECK_FALSE(b.agrees);
    CHECK(b.fail_mass >= a.fail_mass);
  }
}

TEST_CASE("rotations agree with complements of balls") {
  const FilterBase F = FilterBase::spanning(FilterKind::ball_complement, 1, 1e4, 8, 2);
  Measure atoms;
  for (int j = 0; j < 16; ++j)
    atoms.add_atom(2 * std::numbers::pi * j / 16, 1.0 / 16);
  const AgreementVerdict v =
      agrees_with(MapFamily::rotation([](double u) { return u; }, {1.0, 0.5}), F, F, atoms);
  CHECK(v.agrees);
  for (const auto& r : v.regions)
    CHECK(r.verdict == Agreement::proven);
}

TEST_CASE("constant targets fail") {
  const FilterBase F = FilterBase::spanning(FilterKind::half_line, 10, 1e6, 8);
  const AgreementVerdict v = agrees_with(
      MapFamily::constant([](double u) { return Point{1.0 + u}; }), F, F, Measure::lebesgue());
  CHECK_FALSE(v.agrees);
  CHECK(v.fail_mass == doctest::Approx(1.0));
}

TEST_CASE("dilation structure and sampling never disagree for u > 0") {
  const FilterBase F = FilterBase::spanning(FilterKind::half_line, 10, 1e6, 8);
  AgreementSettings s;
  for (double u : {1e-3, 0.1, 0.5, 1.0, 3.0})
    CHECK_FALSE(sampling_counterexample(MapFamily::dilation(), u, F, F, s).has_value());
}

TEST_CASE("custom families without sampling are inconclusive by construction") {
  const FilterBase F = FilterBase::spanning(FilterKind::half_line, 10, 1e6, 8);
  AgreementSettings s;
  s.sampling = false;
  try {
    agrees_with(MapFamily::custom([](double u, const Point& x) { return Point{x[0] + u}; }), F, F,
                Measure::lebesgue(), s);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::inconclusive_by_construction);
  }
}

TEST_CASE("positive affine maps have a norm lower bound") {
  const MapFamily fam = MapFamily::affine(
      [](double u) { return Eigen::MatrixXd((Eigen::MatrixXd(2, 2) << u, 0, 0, u).finished()); },
      [](double u) { return Eigen::VectorXd((Eigen::VectorXd(2) << u, u).finished()); });
  const auto b = positive_affine_bound(fam, 1.5);
  REQUIRE(b.has_value());
  CHECK(*b == doctest::Approx(1.5));
  const MapFamily singular = MapFamily::linear(
      [](double) { return Eigen::MatrixXd((Eigen::MatrixXd(2, 2) << 1, 1, 1, 1).finished()); });
  CHECK_FALSE(positive_affine_bound(singular, 0.5).has_value());
  const Point y = fam(2.0, {4.0, 1.0});
  CHECK(y == Point{10.0, 4.0});
}

#include "hausdorff/methods.hpp"
#include "hausdorff/operators.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace hausdorff;

namespace {

OperatorSpec dilation_spec(Measure mu) {
  OperatorSpec s;
  s.measure = std::move(mu);
  return s;
}

TestFunction identity_fn() {
  return TestFunction::scalar([](double t) { return t; }, 1e300, {}, "t");
}

DiscreteOperatorSpec geometric_weights() {
  DiscreteOperatorSpec d;
  d.coefficient = [](int, const Point&) { return Scalar(1.0); };
  d.weight = [](int n) { return std::ldexp(1.0, -n); };
  d.maps = MapFamily::shift([](double) { return 0.0; });
  d.n_max = 60;
  d.tail_bound = [](int n, const Point&) { return std::ldexp(1.0, -n); };
  return d;
}

// Random bounded functions a + b atan(c t) + d e^{-e t}.
TestFunction random_fn(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> U(-2, 2), P(0.1, 3);
  const double a = U(rng), b = U(rng), c = P(rng), d = U(rng), e = P(rng);
  return TestFunction::scalar(
      [=](double t) { return a + b * std::atan(c * t) + d * std::exp(-e * std::abs(t)); },
      std::abs(a) + 2 * std::abs(b) + std::abs(d));
}

} // namespace

TEST_CASE("apply_generic closed forms") {
  CHECK(apply_generic(dilation_spec(Measure::dirac(1.0)), TestFunction::scalar(
                                                              [](double t) { return std::sin(t); }, 1),
                      {7.0})
            .value[0]
            .real() == std::sin(7.0));
  // ∫_0^1 2u du = 1.
  CHECK(std::abs(apply_generic(dilation_spec(Measure::lebesgue()), identity_fn(), {2.0}).value[0].real() -
                 1.0) <= 1e-14);
  CHECK(apply_generic(dilation_spec(Measure::dirac(0.0)),
                      TestFunction::scalar([](double t) { return std::atan(t); }, 2), {100.0})
            .value[0]
            .real() == 0.0);
}

TEST_CASE("apply_discrete closed forms") {
  const Evaluation geo = apply_discrete(geometric_weights(), TestFunction::constant(1.0), {3.0});
  CHECK(std::abs(geo.value[0].real() - 2.0) <= geo.tail_bound + 1e-15);

  DiscreteOperatorSpec shift;
  shift.coefficient = [](int n, const Point&) { return Scalar(std::ldexp(1.0, -n - 1)); };
  shift.weight = [](int) { return 1.0; };
  shift.maps = MapFamily::shift([](double n) { return n; });
  shift.n_max = 64;
  shift.tail_bound = [](int n, const Point&) { return std::ldexp(1.0, -n - 1); };
  const TestFunction f = TestFunction::scalar([](double t) { return 5 + 1 / t; }, 6);
  // Oracle: direct partial summation in long double far past the truncation.
  long double oracle = 0;
  for (int n = 0; n < 200; ++n)
    oracle += std::ldexp(1.0L, -n - 1) * (5.0L + 1.0L / (1000.0L + n));
  const Evaluation e = apply_discrete(shift, f, {1000.0});
  CHECK(std::abs(e.value[0].real() - static_cast<double>(oracle)) <= 1e-13);
  CHECK(std::abs(e.value[0].real() - 5.0009995) <= 1e-6);

  DiscreteOperatorSpec single;
  single.coefficient = [](int n, const Point&) { return Scalar(n == 0 ? 1.0 : 0.0); };
  single.weight = [](int) { return 1.0; };
  single.maps = MapFamily::shift([](double) { return 0.0; });
  single.n_max = 0;
  single.tail_bound = [](int, const Point&) { return 0.0; };
  CHECK(apply_discrete(single, f, {4.0}).value[0].real() == f({4.0})[0].real());
}

TEST_CASE("discrete truncation is never silent") {
  DiscreteOperatorSpec d = geometric_weights();
  d.n_max = 5;
  try {
    apply_discrete(d, TestFunction::constant(1.0), {1.0});
    FAIL("expected tail-unresolved");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::tail_unresolved);
  }
}

TEST_CASE("matrix methods") {
  const std::vector<double> grandi{1, 0, 1, 0, 1, 0, 1, 0};
  CHECK(apply_matrix_method(MatrixMethod::cesaro1(), grandi, 4) == doctest::Approx(0.6));
  const std::vector<Rational> exact{1, 0, 1, 0, 1};
  CHECK(apply_matrix_exact(MatrixMethod::cesaro1(), exact, 4) == Rational(3, 5));
  for (std::size_t m = 0; m < grandi.size(); ++m)
    CHECK(apply_matrix_method(MatrixMethod::identity(), grandi, m) == grandi[m]);

  MatrixMethod ends;
  ends.entry = [](std::size_t m, std::size_t n) {
    if (m == 0)
      return n == 0 ? 1.0 : 0.0;
    return (n == 0 || n == m) ? 0.5 : 0.0;
  };
  CHECK(apply_matrix_method(ends, grandi, 3) == 0.5);

  try {
    apply_matrix_method(MatrixMethod::cesaro1(), grandi, 20);
    FAIL("expected sequence-too-short");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::sequence_too_short);
  }
}

TEST_CASE("second kind closed forms") {
  const TestFunction f = identity_fn();
  SecondKindSpec zero{[](const Point&) { return Scalar(0.0); }, 0.0, Scalar(0.0), cesaro_spec(1)};
  CHECK(apply_second_kind(zero, f, {3.0}).value[0] ==
        apply_generic(zero.inner, f, {3.0}).value[0]);

  OperatorSpec null_kernel = dilation_spec(Measure::lebesgue());
  null_kernel.kernel = [](double, const Point&) { return Scalar(0.0); };
  SecondKindSpec id{[](const Point&) { return Scalar(1.0); }, 1.0, Scalar(1.0), null_kernel};
  CHECK(apply_second_kind(id, f, {3.5}).value[0].real() == 3.5);

  // a(x) f(x) + x/2 = 3/4 + 3/2.
  SecondKindSpec decay{[](const Point& x) { return Scalar(1.0 / (1.0 + x[0])); }, 1.0, Scalar(0.0),
                       cesaro_spec(1)};
  CHECK(std::abs(apply_second_kind(decay, f, {3.0}).value[0].real() - 2.25) <= 1e-13);
}

TEST_CASE("linearity of all four appliers") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> coef(-3, 3), xs(0.01, 1e4);
  const std::vector<Applier> appliers{
      bind(cesaro_spec(2)), bind(abel_type_spec()), bind(geometric_weights()),
      bind(SecondKindSpec{[](const Point& x) { return Scalar(1 / (1 + x[0])); }, 1, Scalar(0),
                          cesaro_spec(1)}),
      bind(MatrixMethod::cesaro1())};
  int violations = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const Applier& H = appliers[trial % appliers.size()];
    const TestFunction f = random_fn(rng), g = random_fn(rng);
    const double a = coef(rng), b = coef(rng);
    const bool matrix = trial % appliers.size() == appliers.size() - 1;
    const Point x{matrix ? std::floor(xs(rng) / 10) : xs(rng)};
    const TestFunction combo = TestFunction::on_points(
        [=](const Point& p) { return a * f(p)[0].real() + b * g(p)[0].real(); },
        std::abs(a) * f.bound + std::abs(b) * g.bound);
    const double lhs = H(combo, x)[0].real();
    const double rhs = a * H(f, x)[0].real() + b * H(g, x)[0].real();
    const double scale = std::abs(a * H(f, x)[0].real()) + std::abs(b * H(g, x)[0].real()) + 1e-300;
    if (std::abs(lhs - rhs) > 1e-12 * scale)
      ++violations;
  }
  CHECK(violations == 0);
}

TEST_CASE("constant response equals the kernel mass") {
  for (const OperatorSpec& spec : {cesaro_spec(1), cesaro_spec(0.5), abel_type_spec(),
                                   rogosinski_spec(Measure::dirac(0, 0.5) + Measure::lebesgue().scaled(0.5))}) {
    for (const Point& x : spec.domain.sample(20, 3)) {
      const double one = apply_generic(spec, TestFunction::constant(1.0), x).value[0].real();
      const double mass = kernel_mass(spec, x).value[0].real();
      CHECK(std::abs(one - mass) <= 1e-13);
    }
  }
}

TEST_CASE("identity specs reproduce f at 100 random points") {
  std::mt19937_64 rng(11);
  const OperatorSpec delta = dilation_spec(Measure::dirac(1.0));
  OperatorSpec null_kernel = dilation_spec(Measure::lebesgue());
  null_kernel.kernel = [](double, const Point&) { return Scalar(0.0); };
  const SecondKindSpec one{[](const Point&) { return Scalar(1.0); }, 1.0, Scalar(1.0), null_kernel};
  const TestFunction f = random_fn(rng);
  const std::vector<Point> xs = Domain::half_line().sample(100, 17);
  std::vector<double> s(1001);
  for (std::size_t n = 0; n < s.size(); ++n)
    s[n] = f({double(n)})[0].real();
  double worst = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double fx = f(xs[i])[0].real();
    worst = std::max(worst, std::abs(apply_generic(delta, f, xs[i]).value[0].real() - fx));
    worst = std::max(worst, std::abs(apply_second_kind(one, f, xs[i]).value[0].real() - fx));
    const std::size_t m = (i * 37) % s.size();
    worst = std::max(worst, std::abs(apply_matrix_method(MatrixMethod::identity(), s, m) - s[m]));
  }
  CHECK(worst <= 1e-15);
}

TEST_CASE("vector values commute with coordinate projection") {
  const TestFunction f0 = TestFunction::scalar([](double t) { return std::atan(t); }, 2);
  const TestFunction f1 = TestFunction::scalar([](double t) { return 1 / (1 + t); }, 1);
  TestFunction v;
  v.eval = [&](const Point& x) { return Value{f0(x)[0], f1(x)[0]}; };
  v.bound = 2;
  v.dim = 2;
  for (const Applier& H : {bind(cesaro_spec(3)), bind(abel_type_spec()), bind(geometric_weights())}) {
    for (double x : {0.5, 10.0, 1e3}) {
      const Value joint = H(v, {x});
      REQUIRE(joint.size() == 2);
      CHECK(std::abs(joint[0] - H(f0, {x})[0]) <= 1e-13);
      CHECK(std::abs(joint[1] - H(f1, {x})[0]) <= 1e-13);
    }
  }
}

TEST_CASE("points outside the domain are rejected") {
  CHECK_THROWS_AS(apply_generic(cesaro_spec(1), TestFunction::constant(1), {-1.0}), Error);
}

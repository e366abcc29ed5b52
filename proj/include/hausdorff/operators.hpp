#pragma once

#include "hausdorff/core.hpp"
#include "hausdorff/family.hpp"
#include "hausdorff/filter.hpp"
#include "hausdorff/measure.hpp"
#include "hausdorff/rational.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>

namespace hausdorff {

/// Bounded function on S' with an optional limit at infinity.
struct TestFunction {
  PointFn eval;
  double bound = 1.0;
  std::size_t dim = 1;
  std::optional<Value> limit;
  std::string name;

  Value operator()(const Point& x) const { return eval(x); }

  /// t -> f(t) on a one-dimensional domain (uses the first coordinate).
  static TestFunction scalar(std::function<double(double)> f, double bound,
                             std::optional<double> limit = {}, std::string name = {});
  /// x -> f(x) on any domain.
  static TestFunction on_points(std::function<double(const Point&)> f, double bound,
                                std::optional<double> limit = {}, std::string name = {});
  static TestFunction constant(double c);
};

using Kernel = std::function<Scalar(double, const Point&)>;

/// |Φ(u, x)| <= phi(u) for all x. `tail(K)` bounds the integral of phi over
/// [K, inf); required only when μ has an unbounded tail.
struct Envelope {
  RealFn phi;
  RealFn tail;
};

/// (H f)(x) = ∫ Φ(u, x) f(A(u)(x)) dμ(u).
struct OperatorSpec {
  Kernel kernel = [](double, const Point&) { return Scalar(1.0); };
  MapFamily family;
  Measure measure;
  Domain domain = Domain::half_line();
  Domain codomain = Domain::half_line();
  std::optional<Envelope> envelope;
  /// Bound on sup_x ∫_K^inf |Φ(u, x)| dμ(u); falls back to envelope->tail.
  RealFn kernel_tail;
  std::string name;

  RealFn tail_rule() const;
};

/// (H f)(x) = Σ_n c_n(x) μ_n f(A_n(x)), truncated at n_max.
struct DiscreteOperatorSpec {
  std::function<Scalar(int, const Point&)> coefficient;
  std::function<double(int)> weight;
  MapFamily maps;
  int n_max = 64;
  /// Bound on Σ_{n>N} |c_n(x)| μ_n.
  std::function<double(int, const Point&)> tail_bound;
  Domain domain = Domain::half_line();
  Domain codomain = Domain::half_line();
  std::string name;

  /// Atoms μ_n at n = 0..n_max; throws invalid-measure if a weight is not positive.
  Measure truncated_measure() const;
};

/// t(m) = Σ_n c_{m,n} s_n.
struct MatrixMethod {
  std::function<double(std::size_t, std::size_t)> entry;
  /// Exact entries where available.
  std::function<std::optional<Rational>(std::size_t, std::size_t)> exact_entry;
  /// Number of leading columns of row m that may be nonzero.
  std::function<std::size_t(std::size_t)> row_length = [](std::size_t m) { return m + 1; };
  std::string name;

  static MatrixMethod identity();
  /// c_{m,n} = 1/(m+1) for n <= m.
  static MatrixMethod cesaro1();
};

/// T_a f = a f + H f on S = S'.
struct SecondKindSpec {
  std::function<Scalar(const Point&)> a;
  double a_bound = 1.0;
  std::optional<Scalar> alpha;
  OperatorSpec inner;
};

struct Evaluation {
  Value value;
  double quadrature_error = 0.0;
  double tail_bound = 0.0;
};

Evaluation apply_generic(const OperatorSpec& spec, const TestFunction& f, const Point& x,
                         const QuadratureSettings& settings = {});
Evaluation apply_discrete(const DiscreteOperatorSpec& spec, const TestFunction& f,
                          const Point& x, const QuadratureSettings& settings = {});
Value apply_matrix_method(const MatrixMethod& c, std::span<const Value> s, std::size_t m);
double apply_matrix_method(const MatrixMethod& c, std::span<const double> s, std::size_t m);
Rational apply_matrix_exact(const MatrixMethod& c, std::span<const Rational> s, std::size_t m);
Evaluation apply_second_kind(const SecondKindSpec& spec, const TestFunction& f,
                             const Point& x, const QuadratureSettings& settings = {});

/// ∫ Φ(u, x) dμ(u): the response to f ≡ 1.
Evaluation kernel_mass(const OperatorSpec& spec, const Point& x,
                       const QuadratureSettings& settings = {});
/// ∫ |Φ(u, x)| dμ(u) over the given measure (defaults to spec.measure).
double kernel_abs_mass(const OperatorSpec& spec, const Point& x, const Measure& mu,
                       const QuadratureSettings& settings = {});

/// Operator bound to its spec, as used by the empirical harness.
using Applier = std::function<Value(const TestFunction&, const Point&)>;

Applier bind(const OperatorSpec& spec, const QuadratureSettings& settings = {});
Applier bind(const DiscreteOperatorSpec& spec, const QuadratureSettings& settings = {});
Applier bind(const SecondKindSpec& spec, const QuadratureSettings& settings = {});
/// Sequence method on Z+: s_n = f(n), output at x = (m).
Applier bind(const MatrixMethod& c);

} // namespace hausdorff

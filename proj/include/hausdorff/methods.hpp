#pragma once

#include "hausdorff/core.hpp"
#include "hausdorff/filter.hpp"
#include "hausdorff/measure.hpp"
#include "hausdorff/operators.hpp"
#include "hausdorff/rational.hpp"
#include "hausdorff/regularity.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace hausdorff {

/// Moments μ_n = ∫ u^n dμ, n = 0..order.
struct MomentSequence {
  std::vector<double> values;
  /// Exact moments when the measure allows (rational atoms, polynomial densities).
  std::vector<Rational> exact;
  /// Per-moment absolute error estimate (zero in exact mode).
  std::vector<double> error;

  bool is_exact() const { return !exact.empty(); }
  std::size_t order() const { return values.empty() ? 0 : values.size() - 1; }
};

MomentSequence moments(const Measure& mu, std::size_t order, const QuadratureSettings& q = {});

/// (-1)^k Δ^k μ_n >= 0 for all n + k <= order. Exact sequences only are
/// decided exactly; floating ones within `tol`.
bool completely_monotone(const MomentSequence& m, double tol = 0.0);

/// Φ ≡ 1, dilations, density α (1 - u)^(α - 1) on [0, 1].
OperatorSpec cesaro_spec(double alpha);

struct HolderSettings {
  AdaptiveOptions quad{16, 1e-13, 1e-12, 40, 0};
  /// Total evaluations of f allowed across all nesting levels.
  std::size_t budget = 4'000'000;
};

/// k-fold iterate of the (C,1) average (1/x) ∫_0^x f.
Value holder_apply(const TestFunction& f, const Point& x, int k,
                   const HolderSettings& settings = {});

/// Φ(u, x) = e^{-u} on [0, inf) with Lebesgue measure and dilations.
OperatorSpec abel_type_spec();

/// Φ ≡ 1, dilations, the given measure on [0, 1] (the classical Hausdorff-type mean).
OperatorSpec rogosinski_spec(const Measure& mu, std::string name = "rogosinski");

/// Exact rows are built up to this order; later rows are evaluated in
/// floating point from the Bernstein form of the entries.
inline constexpr std::size_t kExactMomentRows = 200;

/// c_{m,n} = C(m, n) Δ^{m-n} μ_n for a measure on [0, 1].
MatrixMethod hausdorff_matrix_from_moments(const Measure& mu, std::size_t order,
                                           const QuadratureSettings& q = {});

/// T_h f(x) = (1/N) Σ_j f(h + R_{θ_j} x), θ_j = 2πj/N, on the plane.
OperatorSpec delsarte_spec(const Point& h, int nodes);

/// Φ(u, x) f(A_u x + b(u)) dμ(u) on the positive orthant of dimension `dim`.
/// Sampled A_u must be nonnegative and invertible with no zero row, b(u) >= 0.
OperatorSpec affine_spec(MatrixFn a, VectorFn b, const Measure& mu, int dim,
                         Kernel phi = {}, std::optional<Envelope> envelope = {});

using AnySpec = std::variant<OperatorSpec, DiscreteOperatorSpec, SecondKindSpec>;

struct ShippedSpec {
  std::string name;
  std::string description;
  AnySpec spec;
  FilterBase filter;
  Overall expected;
};

/// The bundled example operators with the filter they are checked along and
/// the verdict they should produce.
std::vector<ShippedSpec> shipped_specs();

/// Probability measures on [0, 1] with exact moments shipped for the matrix
/// examples; `has_atom_at_zero` marks the non-regular ones.
struct ShippedMeasure {
  std::string name;
  Measure measure;
  bool has_atom_at_zero;
};
std::vector<ShippedMeasure> shipped_moment_measures();

ConditionsReport check_any(const AnySpec& spec, const FilterBase& filter,
                           const CheckSettings& settings = {});
Applier bind_any(const AnySpec& spec, const QuadratureSettings& q = {});
Domain domain_of(const AnySpec& spec);

} // namespace hausdorff

#pragma once

#include "hausdorff/core.hpp"

#include <cstddef>
#include <functional>
#include <span>

namespace hausdorff {

struct GaussRule {
  std::vector<double> nodes;   // on [-1, 1], ascending
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule, exact for polynomials of degree <= 2n-1.
/// Rules are computed once per n and cached.
const GaussRule& gauss_legendre(int n);

struct AdaptiveOptions {
  int nodes = 16;
  double abs_tol = 1e-14;
  double rel_tol = 1e-13;
  int max_depth = 52;
  /// Fixed composite rule with this many equal panels instead of adaptive
  /// bisection when > 0.
  int fixed_panels = 0;
  /// Start from panels graded geometrically (ratio 2) toward both endpoints,
  /// this many levels deep. Resolves features of width ~2^-levels at an
  /// endpoint that a single coarse panel would step over.
  int grade_levels = 0;
};

struct PanelResult {
  Value value;
  double error = 0.0;
  std::size_t evaluations = 0;
  bool converged = true;
};

using ValueIntegrand = std::function<Value(double)>;

/// Composite Gauss-Legendre over [a, b] with bisection refinement: a panel is
/// accepted once the n-point rule on the panel and on its two halves agree to
/// within the panel's share of the tolerance.
PanelResult integrate_interval(const ValueIntegrand& g, double a, double b,
                               const AdaptiveOptions& opts);

} // namespace hausdorff

#pragma once

#include "hausdorff/core.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace hausdorff {

enum class DomainKind {
  half_line, // (0, inf)
  naturals,  // Z+
  orthant,   // (0, inf)^d
  plane,     // R^d
};

std::string_view to_string(DomainKind k);

/// Descriptor of a set S or S' on which functions and operators live.
struct Domain {
  DomainKind kind = DomainKind::half_line;
  int dim = 1;

  bool contains(const Point& x) const;
  /// Points spread over scales [lo_scale, hi_scale] (log-uniform in the norm),
  /// deterministic for a fixed seed.
  std::vector<Point> sample(int count, std::uint64_t seed, double lo_scale = 1e-3,
                            double hi_scale = 1e6) const;

  static Domain half_line() { return {DomainKind::half_line, 1}; }
  static Domain naturals() { return {DomainKind::naturals, 1}; }
  static Domain orthant(int d) { return {DomainKind::orthant, d}; }
  static Domain plane(int d) { return {DomainKind::plane, d}; }
};

enum class FilterKind {
  half_line,        // x >= T_k on (0, inf)
  index,            // n >= ceil(T_k) on Z+
  orthant_infinity, // |x| >= T_k on (0, inf)^d
  ball_complement,  // |x| >= T_k on R^d
};

std::string_view to_string(FilterKind k);

enum class LevelRule { linear, geometric };

/// Filter with a countable base F_0 ⊇ F_1 ⊇ ... given by thresholds
/// T_k -> inf. Level k is the region "beyond T_k".
class FilterBase {
public:
  FilterBase(FilterKind kind, int dim, LevelRule rule, double t0, double step, double span = 1.0);

  /// T_k = t0 + step * k.
  static FilterBase linear(FilterKind kind, double t0, double step, int dim = 1);
  /// T_k = t0 * ratio^k.
  static FilterBase geometric(FilterKind kind, double t0, double ratio, int dim = 1);
  /// Geometric levels with T_0 = first and T_{levels-1} = last.
  static FilterBase spanning(FilterKind kind, double first, double last, int levels,
                             int dim = 1);

  FilterKind kind() const { return kind_; }
  int dim() const { return dim_; }
  LevelRule rule() const { return rule_; }
  double t0() const { return t0_; }
  double step() const { return step_; }
  double span() const { return span_; }
  Domain domain() const;

  double threshold(int k) const;
  bool contains(int k, const Point& x) const;
  /// `count` points of F_k: the boundary point first, then seeded draws at
  /// radius T_k (1 + span * v). The generator is seeded with seed ^ k.
  std::vector<Point> sample(int k, int count, std::uint64_t seed) const;

  /// Samples of F_{k+1} all lie in F_k, for k < levels - 1; thresholds
  /// strictly increase. Throws invalid-argument otherwise.
  void validate(int levels, int samples = 16, std::uint64_t seed = 42) const;

private:
  FilterKind kind_;
  int dim_;
  LevelRule rule_;
  double t0_;
  double step_;
  double span_;
};

enum class LimitStatus { converged, divergent, inconclusive };

std::string_view to_string(LimitStatus s);

struct LimitSettings {
  double tol = 1e-3;
  int levels = 8;
  int samples_per_level = 64;
  int window = 3;
  std::uint64_t seed = 42;
};

struct LimitEstimate {
  LimitStatus status = LimitStatus::inconclusive;
  /// Mean over the deepest level; meaningful when converged.
  Value value;
  /// Per level: max deviation of the samples from `value`.
  std::vector<double> deviation_trace;
  std::vector<double> thresholds;
};

using PointFn = std::function<Value(const Point&)>;

/// Numerical surrogate for the limit of g along F.
LimitEstimate limit_along_filter(const PointFn& g, const FilterBase& filter,
                                 const LimitSettings& settings = {});

} // namespace hausdorff

#pragma once

#include "hausdorff/core.hpp"
#include "hausdorff/filter.hpp"
#include "hausdorff/measure.hpp"

#include <Eigen/Dense>

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hausdorff {

enum class FamilyClass { dilation, shift, linear, affine, rotation, constant, custom };

std::string_view to_string(FamilyClass c);

using MatrixFn = std::function<Eigen::MatrixXd(double)>;
using VectorFn = std::function<Eigen::VectorXd(double)>;
using PointMap = std::function<Point(double, const Point&)>;

/// Family of maps A(u): S -> S' indexed by the parameter u.
class MapFamily {
public:
  /// Dilation by u.
  MapFamily() = default;

  /// x -> scale(u) * x. With no scale function, scale(u) = u.
  static MapFamily dilation(RealFn scale = {});
  /// x -> x + offset(u), componentwise.
  static MapFamily shift(RealFn offset);
  static MapFamily linear(MatrixFn matrix);
  static MapFamily affine(MatrixFn matrix, VectorFn offset);
  /// x -> offset + R(angle(u)) x on the plane.
  static MapFamily rotation(RealFn angle, Point offset = {0.0, 0.0});
  /// x -> target(u), independent of x.
  static MapFamily constant(std::function<Point(double)> target);
  static MapFamily custom(PointMap map);

  FamilyClass family_class() const { return class_; }
  /// True for a dilation whose scale is u itself.
  bool identity_scale() const { return class_ == FamilyClass::dilation && !scalar_; }

  Point operator()(double u, const Point& x) const;

  double scale(double u) const;
  double offset(double u) const;
  double angle(double u) const;
  Eigen::MatrixXd matrix(double u) const;
  Eigen::VectorXd vector_offset(double u) const;
  const Point& rotation_offset() const { return point_offset_; }

private:
  explicit MapFamily(FamilyClass c) : class_(c) {}

  FamilyClass class_ = FamilyClass::dilation;
  RealFn scalar_;
  MatrixFn matrix_;
  VectorFn vector_;
  Point point_offset_;
  std::function<Point(double)> target_;
  PointMap custom_;
};

enum class Agreement { proven, evidence, fail };

std::string_view to_string(Agreement a);

struct RegionVerdict {
  std::string region;
  Agreement verdict = Agreement::proven;
  double mass = 0.0;
  std::optional<double> witness;
};

struct AgreementVerdict {
  std::vector<RegionVerdict> regions;
  double fail_mass = 0.0;
  bool agrees = true;
  Verdict verdict = Verdict::pass;
};

struct AgreementSettings {
  /// Sampling fallback for families without a structural rule.
  bool sampling = true;
  int levels = 8;
  int samples_per_level = 16;
  /// Source levels searched for each target level.
  int max_search = 256;
  std::uint64_t seed = 42;
  /// μ-mass of the failing set tolerated as "μ-almost every".
  double mass_tol = 1e-14;
  /// Gauss nodes per density piece used to locate failing parameters.
  int nodes_per_piece = 32;
};

/// Decides whether A(u)(F) is a base of F' for μ-almost every u. Structural
/// rules cover dilations, shifts, positive invertible linear and affine maps
/// and rotations; other families fall back to sampling.
AgreementVerdict agrees_with(const MapFamily& family, const FilterBase& source,
                             const FilterBase& target, const Measure& mu,
                             const AgreementSettings& settings = {});

/// Sampling evidence for one parameter: for every target level k' some
/// source level j maps its samples into F'_{k'}. Returns the first target
/// level that could not be reached, if any.
std::optional<int> sampling_counterexample(const MapFamily& family, double u,
                                           const FilterBase& source, const FilterBase& target,
                                           const AgreementSettings& settings);

/// Structural check for the affine family at u on the positive orthant:
/// nonnegative entries, no zero row, invertible, nonnegative offset.
/// Returns the lower bound 1/||A_u^{-1}|| of |A_u x| / |x|, or nullopt when
/// the conditions fail.
std::optional<double> positive_affine_bound(const MapFamily& family, double u);

} // namespace hausdorff

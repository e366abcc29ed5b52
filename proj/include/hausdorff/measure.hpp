#pragma once

#include "hausdorff/core.hpp"
#include "hausdorff/quadrature.hpp"
#include "hausdorff/rational.hpp"

#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hausdorff {

using RealFn = std::function<double(double)>;

struct Atom {
  double point = 0.0;
  double weight = 0.0;
};

struct DensityPiece {
  double lo = 0.0;
  double hi = 1.0;
  RealFn density;
  int nodes = 16;
  /// Exact ascending coefficients in u when the density is a polynomial;
  /// empty otherwise. Enables exact moments.
  std::vector<Rational> polynomial;
  /// Source text of the density, kept for reports and config round trips.
  std::string label;
};

/// Density on [start, inf). `remainder(K)` must bound the integral of the
/// density over [K, inf) for K >= start; leave it empty for tails of infinite
/// mass (integration then needs an integrand-specific remainder).
struct TailRule {
  double start = 0.0;
  RealFn density;
  int nodes = 16;
  RealFn remainder;
  std::string label;
};

struct QuadratureSettings {
  int nodes = 0; // 0: use each piece's own node count
  double abs_tol = 1e-14;
  double rel_tol = 1e-13;
  int max_depth = 52;
  int fixed_panels = 0;
  int grade_levels = 0;
  double tail_tol = 1e-12;
  /// Multiplies the measure's tail remainder (a bound on sup |g| over the tail).
  double tail_scale = 1.0;
  /// Integrand-specific bound on the tail integral of |g|; takes precedence
  /// over the measure's own remainder when set.
  RealFn tail_remainder;
  /// Re-integrate with doubled node counts and report the change.
  bool refinement_check = false;
};

struct IntegralResult {
  Value value;
  double quadrature_error = 0.0;
  double tail_bound = 0.0;
  double truncation = std::numeric_limits<double>::quiet_NaN();
  std::size_t evaluations = 0;
  bool converged = true;
  std::optional<double> refinement_change;
};

/// Finite (optionally signed) measure on a subset of the real line:
/// atoms, piecewise densities and an optional unbounded tail.
class Measure {
public:
  Measure() = default;

  static Measure lebesgue(double lo = 0.0, double hi = 1.0, int nodes = 16);
  static Measure dirac(double point, double weight = 1.0);
  static Measure with_density(double lo, double hi, RealFn density, int nodes = 16,
                              std::string label = {});
  /// Density given by exact polynomial coefficients (ascending powers of u).
  static Measure polynomial_density(double lo, double hi, std::vector<Rational> coeffs,
                                    int nodes = 16);

  Measure& add_atom(double point, double weight);
  Measure& add_piece(DensityPiece piece);
  Measure& set_tail(TailRule tail);
  Measure& set_probability(bool flag, double mass_tol = 1e-10);
  Measure& set_signed(bool flag);

  /// Sum of measures; atoms at equal points are merged.
  friend Measure operator+(const Measure& a, const Measure& b);
  Measure scaled(double c) const;

  /// Throws invalid-measure when an invariant is violated.
  void validate() const;

  const std::vector<Atom>& atoms() const { return atoms_; }
  const std::vector<DensityPiece>& pieces() const { return pieces_; }
  const std::optional<TailRule>& tail() const { return tail_; }
  bool is_probability() const { return probability_; }
  bool is_signed() const { return signed_; }
  bool is_atomless() const { return atoms_.empty(); }
  bool is_purely_atomic() const { return pieces_.empty() && !tail_; }

  /// Smallest closed interval containing the support.
  std::pair<double, double> support_hull() const;

  /// Restriction to the interval between lo and hi; endpoints flag whether
  /// atoms sitting exactly on them are kept.
  Measure restricted(double lo, double hi, bool include_lo = true, bool include_hi = true) const;
  /// Restriction to the complement of the closed interval [lo, hi].
  std::vector<Measure> outside(double lo, double hi) const;

  /// Parameters at which checkers probe u-dependent quantities: atoms and
  /// Gauss nodes of each piece; the tail is probed up to `tail_extent`.
  std::vector<double> sample_parameters(int per_piece = 16, double tail_extent = 40.0) const;

  /// True if every moment is available exactly (rational atoms, polynomial
  /// densities, no tail).
  bool has_exact_moments() const;

private:
  std::vector<Atom> atoms_;
  std::vector<DensityPiece> pieces_;
  std::optional<TailRule> tail_;
  bool probability_ = false;
  double mass_tol_ = 1e-10;
  bool signed_ = false;
};

IntegralResult integrate(const std::function<Value(double)>& g, const Measure& mu,
                         const QuadratureSettings& settings = {});
/// Scalar convenience overload.
double integrate_real(const RealFn& g, const Measure& mu, const QuadratureSettings& settings = {});

double total_mass(const Measure& mu, const QuadratureSettings& settings = {});
double atom_mass(const Measure& mu, double point);
/// Sum of the absolute atom weights plus integrals of |density|.
double total_variation(const Measure& mu, const QuadratureSettings& settings = {});

/// Increasing sequence of closed intervals K_1 ⊆ K_2 ⊆ ... of the parameter
/// space, described parametrically.
class Exhaustion {
public:
  using SetFn = std::function<std::pair<double, double>(int)>;

  Exhaustion(SetFn sets, int count);

  /// [lo, hi0 + m * step] for m = 0..count-1.
  static Exhaustion growing_intervals(double lo, double hi0, double step, int count);
  /// Index prefixes {0..N0 + m*step} of Z+, as closed intervals.
  static Exhaustion index_prefixes(int n0, int step, int count);
  /// Single set equal to the support hull (finite measures).
  static Exhaustion support(const Measure& mu);

  std::pair<double, double> set(int m) const { return sets_(m); }
  int count() const { return count_; }

  /// Throws invalid-argument unless the sets are nested and non-empty.
  void validate() const;

private:
  SetFn sets_;
  int count_;
};

} // namespace hausdorff

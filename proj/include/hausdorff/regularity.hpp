#pragma once

#include "hausdorff/core.hpp"
#include "hausdorff/family.hpp"
#include "hausdorff/filter.hpp"
#include "hausdorff/measure.hpp"
#include "hausdorff/operators.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hausdorff {

struct CheckSettings {
  std::vector<double> eps_grid{1e-1, 1e-2, 1e-3, 1e-4};
  std::vector<double> delta_grid{1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6,
                                 1e-7, 1e-8, 1e-9, 1e-10, 1e-11, 1e-12};
  /// Points of S used for sup estimates; the doubling check uses twice as many.
  int samples = 64;
  double domain_lo = 1e-3;
  double domain_hi = 1e6;
  int levels = 8;
  int samples_per_level = 64;
  int window = 3;
  /// Samples per filter level in the K_ε / F_ε search of condition (ii).
  int search_samples = 16;
  double tol_limit = 1e-3;
  double tol_sup = 1e-3;
  /// Toeplitz column and row-sum limits within this distance count as PASS.
  double tol_column = 1e-3;
  /// Farther than this counts as FAIL; in between is INCONCLUSIVE.
  double fail_column = 1e-2;
  double mass_tol = 1e-10;
  std::uint64_t seed = 42;
  /// Report (i.a) for atomless measures even though (iii) makes it redundant.
  bool report_ia_for_atomless = true;
  QuadratureSettings quad;
  AgreementSettings agreement;

  /// Grids must be non-empty and strictly decreasing.
  void validate() const;
  LimitSettings limit_settings() const;
};

enum class ConditionId { i_a, i_b, ii, iii, iv, agrees, v_d, a_bounded, a_limit };

std::string_view to_string(ConditionId id);

struct ConditionEntry {
  ConditionId id = ConditionId::i_a;
  /// Display label, e.g. "(i_d)" for the discrete analog.
  std::string label;
  Verdict verdict = Verdict::inconclusive;
  std::map<std::string, double> evidence;
  std::vector<double> trace;
  std::optional<std::string> witness;
  std::string note;
};

enum class Overall { regular_evidence, not_regular, inconclusive };

std::string_view to_string(Overall o);
/// 0 regular evidence, 1 not regular, 2 inconclusive.
int exit_code(Overall o);

struct ConditionsReport {
  std::string subject;
  std::vector<ConditionEntry> conditions;
  Overall overall = Overall::inconclusive;
  /// Thresholds T_k of the filter levels behind the (iv) trace.
  std::vector<double> thresholds;

  const ConditionEntry& at(ConditionId id) const;
  const ConditionEntry* find(ConditionId id) const;
};

/// REGULAR-EVIDENCE iff every listed condition passes; NOT-REGULAR iff (iv)
/// fails or agreement fails on a set of positive mass.
Overall overall_verdict(const std::vector<ConditionEntry>& entries);

struct RogosinskiResult {
  bool regular = false;
  double mass = 0.0;
  double atom0 = 0.0;
};

RogosinskiResult check_rogosinski(const Measure& mu, double mass_tol = 1e-10);

struct ToeplitzReport {
  std::vector<double> row_norms;
  double row_norm_sup = 0.0;
  /// Extrapolated m -> inf limits of columns 0..n_checked-1.
  std::vector<double> column_limits;
  std::vector<double> row_sums;
  double row_sum_limit = 0.0;
  Verdict row_norm_verdict = Verdict::inconclusive;
  Verdict column_verdict = Verdict::inconclusive;
  Verdict row_sum_verdict = Verdict::inconclusive;
  Verdict verdict = Verdict::inconclusive;
  std::optional<std::size_t> failing_column;
  std::optional<std::size_t> failing_row;
};

ToeplitzReport check_toeplitz(const MatrixMethod& c, std::size_t depth,
                              const CheckSettings& settings = {});

struct DominatedResult {
  bool dominates = false;
  double phi_integral = 0.0;
  std::optional<double> witness_u;
  std::optional<Point> witness_x;
};

DominatedResult check_dominated(const OperatorSpec& spec, const Envelope& phi,
                                const CheckSettings& settings = {});

/// Default exhaustion: the support hull for bounded supports, otherwise
/// [lo, lo + step (m + 1)] with step 0.25.
Exhaustion default_exhaustion(const Measure& mu);

ConditionsReport check_theorem2(const OperatorSpec& spec, const FilterBase& source,
                                const FilterBase& target, const Exhaustion& exhaustion,
                                const CheckSettings& settings = {});
ConditionsReport check_theorem2(const OperatorSpec& spec, const FilterBase& filter,
                                const CheckSettings& settings = {});

ConditionsReport check_discrete_conditions(const DiscreteOperatorSpec& spec,
                                           const FilterBase& source, const FilterBase& target,
                                           const CheckSettings& settings = {});

ConditionsReport check_second_kind(const SecondKindSpec& spec, const FilterBase& filter,
                                   const CheckSettings& settings = {});

struct FunctionOutcome {
  std::string name;
  LimitEstimate estimate;
  Value declared;
  double gap = 0.0;
  Verdict verdict = Verdict::fail;
};

struct EmpiricalResult {
  std::vector<FunctionOutcome> per_function;
  Verdict verdict = Verdict::fail;
};

EmpiricalResult empirical_regularity(const Applier& apply, const std::vector<TestFunction>& suite,
                                     const FilterBase& filter, const CheckSettings& settings = {});

/// Bundled limit-preservation probes for a domain: an arctan-type function,
/// l + decaying term, a constant and a two-component vector function.
std::vector<TestFunction> standard_suite(const Domain& domain);

} // namespace hausdorff

#pragma once

#include "hausdorff/expression.hpp"
#include "hausdorff/family.hpp"
#include "hausdorff/filter.hpp"
#include "hausdorff/measure.hpp"
#include "hausdorff/methods.hpp"
#include "hausdorff/operators.hpp"
#include "hausdorff/regularity.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hausdorff {

struct AtomConfig {
  double point = 0.0;
  double weight = 0.0;
  bool operator==(const AtomConfig&) const = default;
};

struct DensityConfig {
  double lo = 0.0;
  double hi = 1.0;
  std::string density = "1";
  int nodes = 16;
  bool operator==(const DensityConfig&) const = default;
};

struct TailConfig {
  double start = 0.0;
  std::string density = "1";
  /// Bound on the tail integral beyond u; empty for infinite mass.
  std::string remainder;
  int nodes = 16;
  bool operator==(const TailConfig&) const = default;
};

struct MeasureConfig {
  /// Named shortcut ("lebesgue", "dirac1", "dirac0"); combined with the parts below.
  std::string preset;
  std::vector<AtomConfig> atoms;
  std::vector<DensityConfig> densities;
  std::optional<TailConfig> tail;
  bool probability = false;
  bool is_signed = false;
  bool operator==(const MeasureConfig&) const = default;
};

struct FamilyConfig {
  /// dilation | shift | linear | affine | rotation | constant
  std::string cls = "dilation";
  std::string scale = "u";
  std::string offset = "u";
  std::string angle = "u";
  std::vector<std::vector<std::string>> matrix;
  std::vector<std::string> vector_offset;
  std::vector<double> point_offset;
  std::vector<std::string> target;
  bool operator==(const FamilyConfig&) const = default;
};

struct FilterConfig {
  /// half-line | index | orthant | ball-complement
  std::string kind = "half-line";
  /// geometric (first .. last over `levels`) | linear (t0 + step k)
  std::string rule = "geometric";
  double first = 10.0;
  double last = 1e6;
  double t0 = 10.0;
  double step = 10.0;
  int levels = 8;
  int dim = 1;
  bool operator==(const FilterConfig&) const = default;
};

struct EnvelopeConfig {
  std::string phi;
  std::string tail;
  bool operator==(const EnvelopeConfig&) const = default;
};

/// In discrete expressions the index n is written `u`.
struct DiscreteConfig {
  std::string coefficient = "1";
  std::string weight = "1";
  std::string tail_bound;
  FamilyConfig map;
  int n_max = 64;
  bool operator==(const DiscreteConfig&) const = default;
};

struct SettingsConfig {
  std::uint64_t seed = 42;
  int samples = 64;
  int levels = 8;
  int samples_per_level = 64;
  int window = 3;
  int search_samples = 16;
  double tol_limit = 1e-3;
  double tol_sup = 1e-3;
  std::vector<double> eps_grid{1e-1, 1e-2, 1e-3, 1e-4};
  std::vector<double> delta_grid{1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6,
                                 1e-7, 1e-8, 1e-9, 1e-10, 1e-11, 1e-12};
  bool report_ia_for_atomless = true;
  int quadrature_nodes = 0;
  double tail_tol = 1e-12;
  /// Truncation depth of the Toeplitz check for matrix methods.
  int toeplitz_depth = 50;
  bool operator==(const SettingsConfig&) const = default;
};

struct ConfigDocument {
  /// cesaro | holder | abel-type | rogosinski | moments | identity | delsarte |
  /// affine | generic | discrete | second-kind | shipped
  std::string method = "generic";
  double alpha = 1.0;
  int k = 1;
  int order = 50;
  std::vector<double> h{0.0, 0.0};
  int nodes = 256;
  std::string shipped;
  std::optional<MeasureConfig> measure;
  std::string kernel = "1";
  std::string kernel_tail;
  std::optional<EnvelopeConfig> envelope;
  FamilyConfig family;
  /// half-line | naturals | orthant | plane
  std::string domain = "half-line";
  int dim = 1;
  FilterConfig filter;
  std::optional<DiscreteConfig> discrete;
  std::string a = "0";
  double a_bound = 1.0;
  std::optional<double> a_limit;
  /// Inner operator of a second-kind spec (at most one entry).
  std::vector<ConfigDocument> inner;
  /// theorem2 | empirical | toeplitz | rogosinski
  std::vector<std::string> checks;
  SettingsConfig settings;
  std::string out;

  friend bool operator==(const ConfigDocument&, const ConfigDocument&);
};

/// Parses a JSON config. Unknown keys, wrong types and malformed expressions
/// are parse-errors with a line/column or key path.
ConfigDocument parse_config(std::string_view text);
ConfigDocument load_config(const std::string& path);
nlohmann::json to_json(const ConfigDocument& doc);
std::string serialize(const ConfigDocument& doc);

Measure build_measure(const MeasureConfig& cfg);
MapFamily build_family(const FamilyConfig& cfg, int dim);
FilterBase build_filter(const FilterConfig& cfg);
Domain build_domain(const std::string& kind, int dim);
CheckSettings build_settings(const SettingsConfig& cfg);

struct BuiltOperator {
  std::optional<AnySpec> spec;
  std::optional<MatrixMethod> matrix;
  /// Measure on [0,1] behind Rogosinski / moment configs.
  std::optional<Measure> unit_measure;
  /// Hölder iteration count (method = holder).
  int holder_k = 0;
  /// Filter that comes with a shipped spec; overrides the config filter.
  std::optional<FilterBase> filter;
  std::string name;
};

BuiltOperator build_operator(const ConfigDocument& doc);

} // namespace hausdorff

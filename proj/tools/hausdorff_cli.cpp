// Command-line front end: transform, check, demo, methods list.

#include "hausdorff/config.hpp"
#include "hausdorff/demos.hpp"
#include "hausdorff/report.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace hausdorff;
using nlohmann::json;

namespace {

constexpr int kErrorExit = 3;

struct Output {
  std::string path;
  std::ostringstream buf;
  void flush() {
    if (path.empty()) {
      std::cout << buf.str();
      return;
    }
    std::ofstream f(path);
    if (!f)
      throw Error(Errc::invalid_argument, "cannot write '" + path + "'");
    f << buf.str();
  }
};

std::vector<double> parse_number_list(const std::string& text, char sep) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) {
    if (item.empty())
      continue;
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size())
      throw Error(Errc::parse_error, "malformed number '" + item + "'");
    out.push_back(v);
  }
  return out;
}

// "10,100,1e4" in one dimension; "4:1,8:2" for points with several coordinates.
std::vector<Point> parse_points(const std::string& text) {
  std::vector<Point> pts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty())
      continue;
    pts.push_back(parse_number_list(item, ':'));
  }
  if (pts.empty())
    throw Error(Errc::parse_error, "no points given");
  return pts;
}

// "0..9999", "0,5,10" or a mix such as "0..3,10".
std::vector<std::size_t> parse_indices(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty())
      continue;
    const auto dots = item.find("..");
    try {
      if (dots == std::string::npos) {
        out.push_back(std::stoul(item));
      } else {
        const std::size_t a = std::stoul(item.substr(0, dots)), b = std::stoul(item.substr(dots + 2));
        for (std::size_t i = a; i <= b; ++i)
          out.push_back(i);
      }
    } catch (const std::exception&) {
      throw Error(Errc::parse_error, "malformed index range '" + item + "'");
    }
  }
  if (out.empty())
    throw Error(Errc::parse_error, "no indices given");
  return out;
}

std::vector<double> read_sequence(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw Error(Errc::invalid_argument, "cannot open sequence file '" + path + "'");
  std::vector<double> s;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#')
      continue;
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(line.substr(first), &used);
    } catch (const std::exception&) {
      used = 0;
    }
    const std::string rest = line.substr(first + used);
    if (used == 0 || rest.find_first_not_of(" \t\r") != std::string::npos)
      throw Error(Errc::parse_error, path + ": line " + std::to_string(lineno) + ", column " +
                                         std::to_string(first + 1) + ": expected one number");
    s.push_back(v);
  }
  return s;
}

TestFunction function_from(const std::string& text, int dim, std::optional<double> bound) {
  const Expression e = Expression::parse(text, dim);
  TestFunction f;
  f.eval = [e](const Point& x) { return Value{Scalar(e(0.0, x), 0.0)}; };
  f.name = text;
  f.dim = 1;
  if (bound) {
    f.bound = *bound;
  } else {
    // Sampled sup over many scales; used only for tail remainders.
    double sup = 0.0;
    const Domain d = dim == 1 ? Domain::half_line() : Domain::plane(dim);
    for (const auto& x : d.sample(256, 1, 1e-6, 1e9))
      sup = std::max(sup, std::abs(e(0.0, x)));
    f.bound = std::isfinite(sup) && sup > 0 ? sup : 1.0;
  }
  return f;
}

int cmd_transform(const std::string& config_path, const std::string& function,
                  const std::string& sequence, const std::string& points,
                  const std::string& indices, const std::string& format,
                  std::optional<double> bound, Output& out) {
  const ConfigDocument doc = load_config(config_path);
  const BuiltOperator op = build_operator(doc);
  const bool csv = format == "csv";
  json rows = json::array();
  auto emit = [&](const std::vector<std::string>& fields, json row) {
    if (csv)
      out.buf << csv_row(fields) << "\n";
    else
      rows.push_back(std::move(row));
  };

  if (!indices.empty() || !sequence.empty()) {
    if (!op.matrix)
      throw Error(Errc::invalid_argument, "method '" + doc.method + "' is not a sequence method");
    const std::vector<std::size_t> ms = parse_indices(indices.empty() ? "0" : indices);
    std::vector<double> s;
    if (!sequence.empty()) {
      s = read_sequence(sequence);
    } else if (!function.empty()) {
      const Expression e = Expression::parse(function, 1);
      std::size_t top = *std::max_element(ms.begin(), ms.end());
      for (std::size_t n = 0; n <= top; ++n)
        s.push_back(e(0.0, Point{static_cast<double>(n)}));
    } else {
      throw Error(Errc::invalid_argument, "give --sequence FILE or --function EXPR");
    }
    if (csv)
      out.buf << csv_row({"m", "value"}) << "\n";
    for (std::size_t m : ms) {
      const double t = apply_matrix_method(*op.matrix, s, m);
      emit({std::to_string(m), format_double(t)}, json{{"m", m}, {"value", t}});
    }
  } else {
    if (function.empty())
      throw Error(Errc::invalid_argument, "give --function EXPR with --points");
    if (!op.spec)
      throw Error(Errc::invalid_argument, "method '" + doc.method + "' has no operator form");
    const Domain dom = domain_of(*op.spec);
    const TestFunction f = function_from(function, dom.dim, bound);
    const std::vector<Point> pts = parse_points(points.empty() ? "1" : points);
    if (csv) {
      std::vector<std::string> head;
      if (dom.dim == 1)
        head.push_back("x");
      else
        for (int i = 1; i <= dom.dim; ++i)
          head.push_back("x" + std::to_string(i));
      for (const char* h : {"value", "quadrature_error", "tail_bound"})
        head.push_back(h);
      out.buf << csv_row(head) << "\n";
    }
    for (const Point& x : pts) {
      if (static_cast<int>(x.size()) != dom.dim)
        throw Error(Errc::invalid_argument, "point has " + std::to_string(x.size()) +
                                                " coordinates, domain has " + std::to_string(dom.dim));
      Evaluation ev;
      if (op.holder_k > 0) {
        ev.value = holder_apply(f, x, op.holder_k);
      } else if (const auto* g = std::get_if<OperatorSpec>(&*op.spec)) {
        ev = apply_generic(*g, f, x, QuadratureSettings{});
      } else if (const auto* d = std::get_if<DiscreteOperatorSpec>(&*op.spec)) {
        ev = apply_discrete(*d, f, x);
      } else {
        ev = apply_second_kind(std::get<SecondKindSpec>(*op.spec), f, x);
      }
      std::vector<std::string> fields;
      for (double c : x)
        fields.push_back(format_double(c));
      const double v = ev.value.at(0).real();
      fields.push_back(format_double(v));
      fields.push_back(format_double(ev.quadrature_error));
      fields.push_back(format_double(ev.tail_bound));
      emit(fields, json{{"x", x},
                        {"value", v},
                        {"quadrature_error", ev.quadrature_error},
                        {"tail_bound", ev.tail_bound}});
    }
  }
  if (!csv)
    out.buf << json{{"method", op.name}, {"rows", rows}}.dump(2) << "\n";
  return 0;
}

Overall from_verdict(Verdict v) {
  switch (v) {
  case Verdict::pass: return Overall::regular_evidence;
  case Verdict::fail: return Overall::not_regular;
  default: return Overall::inconclusive;
  }
}

int cmd_check(const std::string& config_path, std::optional<std::uint64_t> seed,
              const std::string& format, Output& out) {
  ConfigDocument doc = load_config(config_path);
  if (seed)
    doc.settings.seed = *seed;
  const BuiltOperator op = build_operator(doc);
  const CheckSettings settings = build_settings(doc.settings);
  const FilterBase filter = op.filter ? *op.filter : build_filter(doc.filter);

  std::vector<std::string> checks = doc.checks;
  if (checks.empty())
    checks.push_back(doc.method == "moments" ? "toeplitz" : "theorem2");

  json report{{"method", doc.method}, {"subject", op.name}, {"seed", doc.settings.seed}};
  std::optional<Overall> overall;
  std::optional<ConditionsReport> conditions;
  for (const auto& c : checks) {
    if (c == "theorem2") {
      if (!op.spec)
        throw Error(Errc::invalid_argument, "no operator to check");
      conditions = check_any(*op.spec, filter, settings);
      report["theorem2"] = to_json(*conditions);
      if (!overall)
        overall = conditions->overall;
    } else if (c == "empirical") {
      if (!op.spec)
        throw Error(Errc::invalid_argument, "no operator to check");
      const EmpiricalResult emp = empirical_regularity(
          bind_any(*op.spec), standard_suite(domain_of(*op.spec)), filter, settings);
      report["empirical"] = to_json(emp);
      if (!overall)
        overall = emp.verdict == Verdict::pass ? Overall::regular_evidence : Overall::not_regular;
    } else if (c == "toeplitz") {
      if (!op.matrix)
        throw Error(Errc::invalid_argument, "method '" + doc.method + "' has no matrix form");
      const ToeplitzReport t = check_toeplitz(
          *op.matrix, static_cast<std::size_t>(std::min(doc.settings.toeplitz_depth, doc.order)),
          settings);
      report["toeplitz"] = to_json(t);
      if (!overall)
        overall = from_verdict(t.verdict);
    } else if (c == "rogosinski") {
      if (!op.unit_measure)
        throw Error(Errc::invalid_argument, "method '" + doc.method + "' has no measure on [0,1]");
      const RogosinskiResult rr = check_rogosinski(*op.unit_measure, settings.mass_tol);
      report["rogosinski"] = json{{"regular", rr.regular}, {"mass", rr.mass}, {"atom0", rr.atom0}};
      if (!overall)
        overall = rr.regular ? Overall::regular_evidence : Overall::not_regular;
    }
  }
  const Overall o = overall.value_or(Overall::inconclusive);
  report["overall"] = std::string(to_string(o));
  report["exit_code"] = exit_code(o);
  if (format == "csv") {
    if (conditions)
      out.buf << conditions_csv(*conditions);
    out.buf << csv_row({"overall", std::string(to_string(o))}) << "\n";
  } else {
    out.buf << report.dump(2) << "\n";
  }
  return exit_code(o);
}

int cmd_demo(const std::string& name, const std::string& format, Output& out) {
  const DemoResult r = run_demo(name);
  if (format == "csv") {
    out.buf << csv_row({"check", "result", "detail"}) << "\n";
    for (const auto& c : r.checks)
      out.buf << csv_row({c.label, c.pass ? "PASS" : "FAIL", c.detail}) << "\n";
  } else {
    for (const auto& c : r.checks)
      out.buf << (c.pass ? "PASS " : "FAIL ") << c.label << ": " << c.detail << "\n";
    out.buf << "demo " << r.name << ": " << (r.pass() ? "PASS" : "FAIL") << "\n";
  }
  return r.pass() ? 0 : 1;
}

int cmd_methods_list(Output& out) {
  out.buf << "methods (config key \"method\"):\n"
          << "  cesaro       Cesaro mean of order alpha (\"alpha\")\n"
          << "  holder       k-fold iterated (C,1) mean (\"k\")\n"
          << "  abel-type    exponential mean on [0,inf)\n"
          << "  rogosinski   f(ux) averaged over a measure on [0,1] (\"measure\")\n"
          << "  moments      Hausdorff moment matrix of a measure on [0,1] (\"measure\", \"order\")\n"
          << "  identity     identity operator / matrix\n"
          << "  delsarte     rotation-average shift on the plane (\"h\", \"nodes\")\n"
          << "  affine       f(A_u x + b(u)) on the positive orthant (\"family\", \"measure\", \"dim\")\n"
          << "  generic      kernel, family and measure given explicitly\n"
          << "  discrete     series operator (\"discrete\")\n"
          << "  second-kind  a f + H f (\"a\", \"a_bound\", \"a_limit\", \"inner\")\n"
          << "  shipped      one of the bundled specs below (\"shipped\")\n"
          << "shipped specs:\n";
  for (const auto& s : shipped_specs())
    out.buf << "  " << s.name << std::string(s.name.size() < 26 ? 26 - s.name.size() : 1, ' ')
            << s.description << " [expected " << to_string(s.expected) << "]\n";
  out.buf << "demos:\n";
  for (const auto& d : demo_names())
    out.buf << "  " << d << "\n";
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hausdorff-type operators: evaluation and regularity checks"};
  app.require_subcommand(1);

  std::string config, out_path, format = "report";
  std::optional<std::uint64_t> seed;
  auto common = [&](CLI::App* sub, bool needs_config) {
    auto* opt = sub->add_option("--config", config, "config document (JSON)");
    if (needs_config)
      opt->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out_path, "write output here instead of stdout");
    sub->add_option("--format", format, "report | csv")->check(CLI::IsMember({"report", "csv"}));
    sub->add_option("--seed", seed, "seed override");
  };

  std::string function, sequence, points, indices;
  std::optional<double> bound;
  auto* transform = app.add_subcommand("transform", "evaluate the configured operator");
  common(transform, true);
  transform->add_option("--function", function, "input function, e.g. atan(x)");
  transform->add_option("--sequence", sequence, "input sequence file, one value per line")
      ->check(CLI::ExistingFile);
  transform->add_option("--points", points, "evaluation points: 10,100,1e4 or 4:1,8:2");
  transform->add_option("--indices", indices, "row indices: 0..9999 or 0,5,10");
  transform->add_option("--bound", bound, "sup |f| (default: sampled)");

  auto* check = app.add_subcommand("check", "run regularity checks; exit 0/1/2");
  common(check, true);

  std::string demo_name;
  auto* demo = app.add_subcommand("demo", "reproduce a worked example");
  common(demo, false);
  demo->add_option("name", demo_name, "demo name")->required();

  auto* methods = app.add_subcommand("methods", "list available methods");
  auto* list = methods->add_subcommand("list", "list methods, shipped specs and demos");
  methods->require_subcommand(1);
  common(list, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kErrorExit;
  }

  Output out;
  out.path = out_path;
  try {
    int code = 0;
    if (*transform) {
      if (!function.empty() && !sequence.empty())
        throw Error(Errc::invalid_argument, "--function and --sequence are exclusive");
      code = cmd_transform(config, function, sequence, points, indices,
                           format == "report" && !transform->count("--format") ? "csv" : format,
                           bound, out);
    } else if (*check) {
      code = cmd_check(config, seed, format, out);
    } else if (*demo) {
      code = cmd_demo(demo_name, format, out);
    } else {
      code = cmd_methods_list(out);
    }
    out.flush();
    return code;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kErrorExit;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kErrorExit;
  }
}

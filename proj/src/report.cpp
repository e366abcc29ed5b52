#include "hausdorff/report.hpp"

#include <charconv>
#include <cmath>

namespace hausdorff {

using nlohmann::json;

namespace {

json number(double v) {
  if (std::isfinite(v))
    return v;
  return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
}

json numbers(const std::vector<double>& v) {
  json a = json::array();
  for (double x : v)
    a.push_back(number(x));
  return a;
}

json value_json(const Value& v) {
  json a = json::array();
  for (const auto& z : v) {
    if (z.imag() == 0.0)
      a.push_back(number(z.real()));
    else
      a.push_back(json{number(z.real()), number(z.imag())});
  }
  return a;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos)
    return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"')
      out += '"';
    out += c;
  }
  return out + '"';
}

} // namespace

std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc())
    return "nan";
  return std::string(buf, end);
}

json to_json(const ConditionsReport& r) {
  json conds = json::array();
  for (const auto& c : r.conditions) {
    json ev = json::object();
    for (const auto& [k, v] : c.evidence)
      ev[k] = number(v);
    json e{{"id", std::string(to_string(c.id))},
           {"label", c.label},
           {"verdict", std::string(to_string(c.verdict))},
           {"evidence", ev},
           {"trace", numbers(c.trace)},
           {"witness", c.witness ? json(*c.witness) : json(nullptr)},
           {"note", c.note}};
    conds.push_back(std::move(e));
  }
  return json{{"subject", r.subject},
              {"overall", std::string(to_string(r.overall))},
              {"exit_code", exit_code(r.overall)},
              {"conditions", conds},
              {"thresholds", numbers(r.thresholds)}};
}

json to_json(const ToeplitzReport& r) {
  auto opt = [](const std::optional<std::size_t>& v) { return v ? json(*v) : json(nullptr); };
  return json{{"row_norm_sup", number(r.row_norm_sup)},
              {"row_norm_verdict", std::string(to_string(r.row_norm_verdict))},
              {"column_limits", numbers(r.column_limits)},
              {"column_verdict", std::string(to_string(r.column_verdict))},
              {"failing_column", opt(r.failing_column)},
              {"row_sum_limit", number(r.row_sum_limit)},
              {"row_sum_verdict", std::string(to_string(r.row_sum_verdict))},
              {"failing_row", opt(r.failing_row)},
              {"verdict", std::string(to_string(r.verdict))}};
}

json to_json(const EmpiricalResult& r) {
  json fs = json::array();
  for (const auto& f : r.per_function)
    fs.push_back(json{{"name", f.name},
                      {"status", std::string(to_string(f.estimate.status))},
                      {"estimate", value_json(f.estimate.value)},
                      {"declared", value_json(f.declared)},
                      {"gap", number(f.gap)},
                      {"trace", numbers(f.estimate.deviation_trace)},
                      {"verdict", std::string(to_string(f.verdict))}});
  return json{{"functions", fs}, {"verdict", std::string(to_string(r.verdict))}};
}

std::string csv_row(const std::vector<std::string>& fields) {
  std::string line;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i)
      line += ',';
    line += csv_escape(fields[i]);
  }
  return line;
}

std::string conditions_csv(const ConditionsReport& r) {
  std::string out = csv_row({"id", "label", "verdict", "witness", "evidence"}) + "\n";
  for (const auto& c : r.conditions) {
    std::string ev;
    for (const auto& [k, v] : c.evidence)
      ev += (ev.empty() ? "" : ";") + k + "=" + format_double(v);
    out += csv_row({std::string(to_string(c.id)), c.label, std::string(to_string(c.verdict)),
                    c.witness.value_or(""), ev}) +
           "\n";
  }
  return out;
}

} // namespace hausdorff

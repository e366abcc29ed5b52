#include "hausdorff/config.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace hausdorff {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& path, const std::string& what) {
  throw Error(Errc::parse_error, (path.empty() ? std::string("config") : path) + ": " + what);
}

// Strict object reader: every key must be consumed.
class Reader {
public:
  Reader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object())
      bad(path_, "expected an object");
  }

  template <class T> bool get(const char* key, T& out) {
    seen_.insert(key);
    auto it = j_.find(key);
    if (it == j_.end())
      return false;
    try {
      out = it->template get<T>();
    } catch (const json::exception& e) {
      bad(sub(key), std::string("wrong type (") + e.what() + ")");
    }
    return true;
  }

  const json* child(const char* key) {
    seen_.insert(key);
    auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }

  std::string sub(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  void done() const {
    for (auto it = j_.begin(); it != j_.end(); ++it)
      if (!seen_.count(it.key()))
        bad(path_, "unknown key '" + it.key() + "'");
  }

private:
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

void check_expr(const std::string& path, const std::string& text, int dim = 8) {
  if (text.empty())
    return;
  try {
    (void)Expression::parse(text, dim);
  } catch (const Error& e) {
    std::string_view msg = e.what();
    const std::string_view prefix = "parse-error: ";
    if (msg.starts_with(prefix))
      msg.remove_prefix(prefix.size());
    bad(path, std::string(msg));
  }
}

FamilyConfig read_family(const json& j, const std::string& path) {
  FamilyConfig f;
  Reader r(j, path);
  r.get("class", f.cls);
  r.get("scale", f.scale);
  r.get("offset", f.offset);
  r.get("angle", f.angle);
  r.get("matrix", f.matrix);
  r.get("vector_offset", f.vector_offset);
  r.get("point_offset", f.point_offset);
  r.get("target", f.target);
  r.done();
  static const std::set<std::string> classes{"dilation", "shift",    "linear",
                                             "affine",   "rotation", "constant"};
  if (!classes.count(f.cls))
    bad(r.sub("class"), "unknown family class '" + f.cls + "'");
  check_expr(r.sub("scale"), f.scale);
  check_expr(r.sub("offset"), f.offset);
  check_expr(r.sub("angle"), f.angle);
  for (std::size_t i = 0; i < f.matrix.size(); ++i)
    for (std::size_t k = 0; k < f.matrix[i].size(); ++k)
      check_expr(r.sub("matrix[" + std::to_string(i) + "][" + std::to_string(k) + "]"),
                 f.matrix[i][k]);
  for (std::size_t i = 0; i < f.vector_offset.size(); ++i)
    check_expr(r.sub("vector_offset[" + std::to_string(i) + "]"), f.vector_offset[i]);
  for (std::size_t i = 0; i < f.target.size(); ++i)
    check_expr(r.sub("target[" + std::to_string(i) + "]"), f.target[i]);
  return f;
}

MeasureConfig read_measure(const json& j, const std::string& path) {
  MeasureConfig m;
  if (j.is_string()) {
    m.preset = j.get<std::string>();
  } else {
    Reader r(j, path);
    r.get("preset", m.preset);
    if (const json* atoms = r.child("atoms")) {
      if (!atoms->is_array())
        bad(r.sub("atoms"), "expected an array of [point, weight] pairs");
      for (std::size_t i = 0; i < atoms->size(); ++i) {
        const json& a = (*atoms)[i];
        const std::string p = r.sub("atoms[" + std::to_string(i) + "]");
        if (!a.is_array() || a.size() != 2 || !a[0].is_number() || !a[1].is_number())
          bad(p, "expected [point, weight]");
        m.atoms.push_back({a[0].get<double>(), a[1].get<double>()});
      }
    }
    if (const json* ds = r.child("densities")) {
      if (!ds->is_array())
        bad(r.sub("densities"), "expected an array");
      for (std::size_t i = 0; i < ds->size(); ++i) {
        const std::string p = r.sub("densities[" + std::to_string(i) + "]");
        DensityConfig d;
        Reader dr((*ds)[i], p);
        dr.get("lo", d.lo);
        dr.get("hi", d.hi);
        dr.get("density", d.density);
        dr.get("nodes", d.nodes);
        dr.done();
        check_expr(dr.sub("density"), d.density);
        m.densities.push_back(d);
      }
    }
    if (const json* t = r.child("tail")) {
      TailConfig tc;
      Reader tr(*t, r.sub("tail"));
      tr.get("start", tc.start);
      tr.get("density", tc.density);
      tr.get("remainder", tc.remainder);
      tr.get("nodes", tc.nodes);
      tr.done();
      check_expr(tr.sub("density"), tc.density);
      check_expr(tr.sub("remainder"), tc.remainder);
      m.tail = tc;
    }
    r.get("probability", m.probability);
    r.get("signed", m.is_signed);
    r.done();
  }
  static const std::set<std::string> presets{"", "lebesgue", "dirac0", "dirac1"};
  if (!presets.count(m.preset))
    bad(path, "unknown measure preset '" + m.preset + "'");
  return m;
}

FilterConfig read_filter(const json& j, const std::string& path) {
  FilterConfig f;
  Reader r(j, path);
  r.get("kind", f.kind);
  r.get("rule", f.rule);
  r.get("first", f.first);
  r.get("last", f.last);
  r.get("t0", f.t0);
  r.get("step", f.step);
  r.get("levels", f.levels);
  r.get("dim", f.dim);
  r.done();
  static const std::set<std::string> kinds{"half-line", "index", "orthant", "ball-complement"};
  if (!kinds.count(f.kind))
    bad(r.sub("kind"), "unknown filter kind '" + f.kind + "'");
  if (f.rule != "geometric" && f.rule != "linear")
    bad(r.sub("rule"), "level rule must be 'geometric' or 'linear'");
  return f;
}

SettingsConfig read_settings(const json& j, const std::string& path) {
  SettingsConfig s;
  Reader r(j, path);
  r.get("seed", s.seed);
  r.get("samples", s.samples);
  r.get("levels", s.levels);
  r.get("samples_per_level", s.samples_per_level);
  r.get("window", s.window);
  r.get("search_samples", s.search_samples);
  r.get("tol_limit", s.tol_limit);
  r.get("tol_sup", s.tol_sup);
  r.get("eps_grid", s.eps_grid);
  r.get("delta_grid", s.delta_grid);
  r.get("report_ia_for_atomless", s.report_ia_for_atomless);
  r.get("quadrature_nodes", s.quadrature_nodes);
  r.get("tail_tol", s.tail_tol);
  r.get("toeplitz_depth", s.toeplitz_depth);
  r.done();
  return s;
}

ConfigDocument read_document(const json& j, const std::string& path) {
  ConfigDocument d;
  Reader r(j, path);
  r.get("method", d.method);
  r.get("alpha", d.alpha);
  r.get("k", d.k);
  r.get("order", d.order);
  r.get("h", d.h);
  r.get("nodes", d.nodes);
  r.get("shipped", d.shipped);
  if (const json* m = r.child("measure"))
    d.measure = read_measure(*m, r.sub("measure"));
  r.get("kernel", d.kernel);
  r.get("kernel_tail", d.kernel_tail);
  if (const json* e = r.child("envelope")) {
    EnvelopeConfig env;
    Reader er(*e, r.sub("envelope"));
    er.get("phi", env.phi);
    er.get("tail", env.tail);
    er.done();
    if (env.phi.empty())
      bad(er.sub("phi"), "envelope needs 'phi'");
    check_expr(er.sub("phi"), env.phi);
    check_expr(er.sub("tail"), env.tail);
    d.envelope = env;
  }
  if (const json* f = r.child("family"))
    d.family = read_family(*f, r.sub("family"));
  r.get("domain", d.domain);
  r.get("dim", d.dim);
  if (const json* f = r.child("filter"))
    d.filter = read_filter(*f, r.sub("filter"));
  if (const json* ds = r.child("discrete")) {
    DiscreteConfig dc;
    Reader dr(*ds, r.sub("discrete"));
    dr.get("coefficient", dc.coefficient);
    dr.get("weight", dc.weight);
    dr.get("tail_bound", dc.tail_bound);
    if (const json* f = dr.child("map"))
      dc.map = read_family(*f, dr.sub("map"));
    dr.get("n_max", dc.n_max);
    dr.done();
    check_expr(dr.sub("coefficient"), dc.coefficient);
    check_expr(dr.sub("weight"), dc.weight);
    check_expr(dr.sub("tail_bound"), dc.tail_bound);
    d.discrete = dc;
  }
  r.get("a", d.a);
  r.get("a_bound", d.a_bound);
  if (const json* al = r.child("a_limit")) {
    if (!al->is_number())
      bad(r.sub("a_limit"), "expected a number");
    d.a_limit = al->get<double>();
  }
  if (const json* in = r.child("inner"))
    d.inner.push_back(read_document(*in, r.sub("inner")));
  r.get("checks", d.checks);
  if (const json* s = r.child("settings"))
    d.settings = read_settings(*s, r.sub("settings"));
  r.get("out", d.out);
  r.done();

  static const std::set<std::string> methods{
      "cesaro", "holder",  "abel-type", "rogosinski", "moments",     "identity",
      "delsarte", "affine", "generic",  "discrete",   "second-kind", "shipped"};
  if (!methods.count(d.method))
    bad(r.sub("method"), "unknown method '" + d.method + "'");
  static const std::set<std::string> domains{"half-line", "naturals", "orthant", "plane"};
  if (!domains.count(d.domain))
    bad(r.sub("domain"), "unknown domain '" + d.domain + "'");
  static const std::set<std::string> checks{"theorem2", "empirical", "toeplitz", "rogosinski"};
  for (const auto& c : d.checks)
    if (!checks.count(c))
      bad(r.sub("checks"), "unknown check '" + c + "'");
  if (d.dim < 1)
    bad(r.sub("dim"), "dimension must be >= 1");
  check_expr(r.sub("kernel"), d.kernel, d.dim);
  check_expr(r.sub("kernel_tail"), d.kernel_tail);
  check_expr(r.sub("a"), d.a, d.dim);
  return d;
}

json family_json(const FamilyConfig& f) {
  return json{{"class", f.cls},
              {"scale", f.scale},
              {"offset", f.offset},
              {"angle", f.angle},
              {"matrix", f.matrix},
              {"vector_offset", f.vector_offset},
              {"point_offset", f.point_offset},
              {"target", f.target}};
}

RealFn real_fn(const std::string& text) {
  if (text.empty())
    return {};
  const Expression e = Expression::parse(text);
  return [e](double u) { return e(u); };
}

std::optional<double> constant_of(const Expression& e) {
  if (e.uses_x())
    return std::nullopt;
  // Constant iff it evaluates identically at a few parameters and the
  // canonical form mentions no variable.
  const std::string c = e.canonical();
  if (c.find('u') != std::string::npos)
    return std::nullopt;
  return e(0.0);
}

DomainKind domain_kind(const std::string& s) {
  if (s == "half-line") return DomainKind::half_line;
  if (s == "naturals") return DomainKind::naturals;
  if (s == "orthant") return DomainKind::orthant;
  return DomainKind::plane;
}

} // namespace

bool operator==(const ConfigDocument& a, const ConfigDocument& b) {
  return to_json(a) == to_json(b);
}

ConfigDocument parse_config(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw Error(Errc::parse_error, "line " + std::to_string(line) + ", column " +
                                       std::to_string(col) + ": malformed JSON");
  }
  return read_document(j, "");
}

ConfigDocument load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw Error(Errc::invalid_argument, "cannot open config '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_config(ss.str());
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + std::string(e.what()).substr(to_string(e.code()).size() + 2));
  }
}

json to_json(const ConfigDocument& d) {
  json j;
  j["method"] = d.method;
  j["alpha"] = d.alpha;
  j["k"] = d.k;
  j["order"] = d.order;
  j["h"] = d.h;
  j["nodes"] = d.nodes;
  j["shipped"] = d.shipped;
  if (d.measure) {
    const MeasureConfig& m = *d.measure;
    json atoms = json::array();
    for (const auto& a : m.atoms)
      atoms.push_back({a.point, a.weight});
    json dens = json::array();
    for (const auto& p : m.densities)
      dens.push_back({{"lo", p.lo}, {"hi", p.hi}, {"density", p.density}, {"nodes", p.nodes}});
    json mj{{"preset", m.preset},   {"atoms", atoms},          {"densities", dens},
            {"probability", m.probability}, {"signed", m.is_signed}};
    if (m.tail)
      mj["tail"] = {{"start", m.tail->start},
                    {"density", m.tail->density},
                    {"remainder", m.tail->remainder},
                    {"nodes", m.tail->nodes}};
    j["measure"] = mj;
  }
  j["kernel"] = d.kernel;
  j["kernel_tail"] = d.kernel_tail;
  if (d.envelope)
    j["envelope"] = {{"phi", d.envelope->phi}, {"tail", d.envelope->tail}};
  j["family"] = family_json(d.family);
  j["domain"] = d.domain;
  j["dim"] = d.dim;
  const FilterConfig& f = d.filter;
  j["filter"] = {{"kind", f.kind},   {"rule", f.rule}, {"first", f.first},   {"last", f.last},
                 {"t0", f.t0},       {"step", f.step}, {"levels", f.levels}, {"dim", f.dim}};
  if (d.discrete)
    j["discrete"] = {{"coefficient", d.discrete->coefficient},
                     {"weight", d.discrete->weight},
                     {"tail_bound", d.discrete->tail_bound},
                     {"map", family_json(d.discrete->map)},
                     {"n_max", d.discrete->n_max}};
  j["a"] = d.a;
  j["a_bound"] = d.a_bound;
  if (d.a_limit)
    j["a_limit"] = *d.a_limit;
  if (!d.inner.empty())
    j["inner"] = to_json(d.inner.front());
  j["checks"] = d.checks;
  const SettingsConfig& s = d.settings;
  j["settings"] = {{"seed", s.seed},
                   {"samples", s.samples},
                   {"levels", s.levels},
                   {"samples_per_level", s.samples_per_level},
                   {"window", s.window},
                   {"search_samples", s.search_samples},
                   {"tol_limit", s.tol_limit},
                   {"tol_sup", s.tol_sup},
                   {"eps_grid", s.eps_grid},
                   {"delta_grid", s.delta_grid},
                   {"report_ia_for_atomless", s.report_ia_for_atomless},
                   {"quadrature_nodes", s.quadrature_nodes},
                   {"tail_tol", s.tail_tol},
                   {"toeplitz_depth", s.toeplitz_depth}};
  j["out"] = d.out;
  return j;
}

std::string serialize(const ConfigDocument& doc) { return to_json(doc).dump(2); }

Measure build_measure(const MeasureConfig& cfg) {
  Measure m;
  if (cfg.preset == "lebesgue")
    m = Measure::lebesgue();
  else if (cfg.preset == "dirac0")
    m = Measure::dirac(0.0);
  else if (cfg.preset == "dirac1")
    m = Measure::dirac(1.0);
  for (const auto& a : cfg.atoms)
    m.add_atom(a.point, a.weight);
  for (const auto& d : cfg.densities) {
    const Expression e = Expression::parse(d.density);
    if (auto c = constant_of(e)) {
      // Constant densities keep exact moments.
      m = m + Measure::polynomial_density(d.lo, d.hi, {exact_rational(*c)}, d.nodes);
      continue;
    }
    DensityPiece piece{d.lo, d.hi, [e](double u) { return e(u); }, d.nodes, {}, d.density};
    m.add_piece(std::move(piece));
  }
  if (cfg.tail) {
    const Expression e = Expression::parse(cfg.tail->density);
    m.set_tail(TailRule{cfg.tail->start, [e](double u) { return e(u); }, cfg.tail->nodes,
                        real_fn(cfg.tail->remainder), cfg.tail->density});
  }
  m.set_signed(cfg.is_signed);
  if (cfg.probability)
    m.set_probability(true);
  m.validate();
  return m;
}

MapFamily build_family(const FamilyConfig& cfg, int dim) {
  auto expr = [](const std::string& s) { return Expression::parse(s); };
  if (cfg.cls == "dilation") {
    if (cfg.scale == "u")
      return MapFamily::dilation();
    return MapFamily::dilation(real_fn(cfg.scale));
  }
  if (cfg.cls == "shift")
    return MapFamily::shift(real_fn(cfg.offset));
  if (cfg.cls == "rotation") {
    Point off = cfg.point_offset.empty() ? Point{0.0, 0.0} : cfg.point_offset;
    return MapFamily::rotation(real_fn(cfg.angle), off);
  }
  if (cfg.cls == "constant") {
    std::vector<Expression> t;
    for (const auto& s : cfg.target)
      t.push_back(expr(s));
    if (t.empty())
      throw Error(Errc::invalid_argument, "constant family needs a target");
    return MapFamily::constant([t](double u) {
      Point p;
      for (const auto& e : t)
        p.push_back(e(u));
      return p;
    });
  }
  // linear / affine
  if (static_cast<int>(cfg.matrix.size()) != dim)
    throw Error(Errc::invalid_argument, "family matrix must be " + std::to_string(dim) + "x" +
                                            std::to_string(dim));
  std::vector<std::vector<Expression>> a;
  for (const auto& row : cfg.matrix) {
    if (static_cast<int>(row.size()) != dim)
      throw Error(Errc::invalid_argument, "family matrix row has wrong length");
    std::vector<Expression> r;
    for (const auto& s : row)
      r.push_back(expr(s));
    a.push_back(std::move(r));
  }
  MatrixFn mf = [a, dim](double u) {
    Eigen::MatrixXd m(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j)
        m(i, j) = a[i][j](u);
    return m;
  };
  if (cfg.cls == "linear")
    return MapFamily::linear(mf);
  std::vector<Expression> b;
  for (const auto& s : cfg.vector_offset)
    b.push_back(expr(s));
  if (b.empty())
    b.assign(dim, expr("0"));
  if (static_cast<int>(b.size()) != dim)
    throw Error(Errc::invalid_argument, "vector_offset has wrong length");
  VectorFn vf = [b, dim](double u) {
    Eigen::VectorXd v(dim);
    for (int i = 0; i < dim; ++i)
      v(i) = b[i](u);
    return v;
  };
  return MapFamily::affine(mf, vf);
}

FilterBase build_filter(const FilterConfig& cfg) {
  FilterKind kind = FilterKind::half_line;
  if (cfg.kind == "index") kind = FilterKind::index;
  else if (cfg.kind == "orthant") kind = FilterKind::orthant_infinity;
  else if (cfg.kind == "ball-complement") kind = FilterKind::ball_complement;
  if (cfg.rule == "linear")
    return FilterBase::linear(kind, cfg.t0, cfg.step, cfg.dim);
  return FilterBase::spanning(kind, cfg.first, cfg.last, cfg.levels, cfg.dim);
}

Domain build_domain(const std::string& kind, int dim) {
  Domain d{domain_kind(kind), dim};
  if ((d.kind == DomainKind::half_line || d.kind == DomainKind::naturals) && dim != 1)
    throw Error(Errc::invalid_argument, "domain '" + kind + "' is one-dimensional");
  return d;
}

CheckSettings build_settings(const SettingsConfig& cfg) {
  CheckSettings s;
  s.seed = cfg.seed;
  s.samples = cfg.samples;
  s.levels = cfg.levels;
  s.samples_per_level = cfg.samples_per_level;
  s.window = cfg.window;
  s.search_samples = cfg.search_samples;
  s.tol_limit = cfg.tol_limit;
  s.tol_sup = cfg.tol_sup;
  s.eps_grid = cfg.eps_grid;
  s.delta_grid = cfg.delta_grid;
  s.report_ia_for_atomless = cfg.report_ia_for_atomless;
  s.quad.nodes = cfg.quadrature_nodes;
  s.quad.tail_tol = cfg.tail_tol;
  s.agreement.seed = cfg.seed;
  s.validate();
  return s;
}

BuiltOperator build_operator(const ConfigDocument& doc) {
  BuiltOperator out;
  out.name = doc.method;
  auto need_measure = [&]() {
    if (!doc.measure)
      throw Error(Errc::invalid_argument, "method '" + doc.method + "' needs a measure");
    return build_measure(*doc.measure);
  };
  auto envelope = [&]() -> std::optional<Envelope> {
    if (!doc.envelope)
      return std::nullopt;
    return Envelope{real_fn(doc.envelope->phi), real_fn(doc.envelope->tail)};
  };
  auto kernel = [&]() -> Kernel {
    const Expression e = Expression::parse(doc.kernel, doc.dim);
    return [e](double u, const Point& x) { return Scalar(e(u, x), 0.0); };
  };

  const std::string& m = doc.method;
  if (m == "cesaro") {
    OperatorSpec s = cesaro_spec(doc.alpha);
    if (doc.alpha == std::floor(doc.alpha))
      out.unit_measure = s.measure;
    out.spec = s;
    out.name = s.name;
  } else if (m == "holder") {
    if (doc.k < 1)
      throw Error(Errc::bad_order, "Holder order must be >= 1");
    out.holder_k = doc.k;
    // Single-integral form of the k-fold iterate, used by checks.
    const int k = doc.k;
    double fact = std::tgamma(static_cast<double>(k));
    OperatorSpec s;
    s.name = "holder(" + std::to_string(k) + ")";
    if (k == 1) {
      s.measure = Measure::lebesgue();
    } else {
      s.measure = Measure::with_density(
          0.0, 1.0, [k, fact](double u) { return std::pow(-std::log(u), k - 1) / fact; }, 16,
          "(-log(u))^" + std::to_string(k - 1) + "/" + std::to_string(k - 1) + "!");
    }
    s.envelope = Envelope{[](double) { return 1.0; }, {}};
    out.spec = s;
    out.name = s.name;
  } else if (m == "abel-type") {
    out.spec = abel_type_spec();
  } else if (m == "rogosinski") {
    Measure mu = need_measure();
    out.unit_measure = mu;
    out.spec = rogosinski_spec(mu);
  } else if (m == "identity") {
    out.spec = rogosinski_spec(Measure::dirac(1.0), "identity");
    out.matrix = MatrixMethod::identity();
  } else if (m == "moments") {
    Measure mu = need_measure();
    if (doc.order < 0)
      throw Error(Errc::bad_order, "moment order must be >= 0");
    out.unit_measure = mu;
    out.matrix = hausdorff_matrix_from_moments(mu, static_cast<std::size_t>(doc.order));
    out.spec = rogosinski_spec(mu, "moments");
  } else if (m == "delsarte") {
    out.spec = delsarte_spec(doc.h, doc.nodes);
  } else if (m == "affine") {
    if (doc.family.cls != "affine")
      throw Error(Errc::invalid_argument, "method 'affine' needs family class 'affine'");
    const MapFamily fam = build_family(doc.family, doc.dim);
    Kernel k;
    if (doc.kernel != "1")
      k = kernel();
    OperatorSpec s = affine_spec([fam](double u) { return fam.matrix(u); },
                                 [fam](double u) { return fam.vector_offset(u); }, need_measure(),
                                 doc.dim, k, envelope());
    out.spec = s;
  } else if (m == "generic") {
    OperatorSpec s;
    s.name = "generic";
    s.kernel = kernel();
    s.family = build_family(doc.family, doc.dim);
    s.measure = need_measure();
    s.domain = build_domain(doc.domain, doc.dim);
    s.codomain = s.domain;
    s.envelope = envelope();
    s.kernel_tail = real_fn(doc.kernel_tail);
    out.spec = s;
  } else if (m == "discrete") {
    if (!doc.discrete)
      throw Error(Errc::invalid_argument, "method 'discrete' needs a 'discrete' section");
    const DiscreteConfig& dc = *doc.discrete;
    DiscreteOperatorSpec s;
    s.name = "discrete";
    const Expression c = Expression::parse(dc.coefficient, doc.dim);
    const Expression w = Expression::parse(dc.weight);
    s.coefficient = [c](int n, const Point& x) { return Scalar(c(n, x), 0.0); };
    s.weight = [w](int n) { return w(n); };
    s.maps = build_family(dc.map, doc.dim);
    s.n_max = dc.n_max;
    if (!dc.tail_bound.empty()) {
      const Expression t = Expression::parse(dc.tail_bound, doc.dim);
      s.tail_bound = [t](int n, const Point& x) { return t(n, x); };
    } else {
      s.tail_bound = [](int, const Point&) { return std::numeric_limits<double>::infinity(); };
    }
    s.domain = build_domain(doc.domain, doc.dim);
    s.codomain = s.domain;
    out.spec = s;
  } else if (m == "second-kind") {
    if (doc.inner.empty())
      throw Error(Errc::invalid_argument, "method 'second-kind' needs an 'inner' operator");
    BuiltOperator inner = build_operator(doc.inner.front());
    if (!inner.spec || !std::holds_alternative<OperatorSpec>(*inner.spec))
      throw Error(Errc::invalid_argument, "second-kind inner operator must be an integral operator");
    SecondKindSpec s;
    const Expression a = Expression::parse(doc.a, doc.dim);
    s.a = [a](const Point& x) { return Scalar(a(0.0, x), 0.0); };
    s.a_bound = doc.a_bound;
    if (doc.a_limit)
      s.alpha = Scalar(*doc.a_limit, 0.0);
    s.inner = std::get<OperatorSpec>(*inner.spec);
    out.spec = s;
  } else if (m == "shipped") {
    for (auto& sh : shipped_specs())
      if (sh.name == doc.shipped) {
        out.spec = sh.spec;
        out.filter = sh.filter;
        out.name = sh.name;
        return out;
      }
    throw Error(Errc::invalid_argument, "no shipped spec named '" + doc.shipped + "'");
  }
  if (out.name.empty()) {
    if (out.spec && std::holds_alternative<OperatorSpec>(*out.spec))
      out.name = std::get<OperatorSpec>(*out.spec).name;
    if (out.name.empty())
      out.name = doc.method;
  }
  return out;
}

} // namespace hausdorff

#include "hausdorff/measure.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hausdorff {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

AdaptiveOptions options_for(int piece_nodes, const QuadratureSettings& s) {
  AdaptiveOptions o;
  o.nodes = s.nodes > 0 ? s.nodes : piece_nodes;
  o.abs_tol = s.abs_tol;
  o.rel_tol = s.rel_tol;
  o.max_depth = s.max_depth;
  o.fixed_panels = s.fixed_panels;
  o.grade_levels = s.grade_levels;
  return o;
}

void accumulate(IntegralResult& out, const PanelResult& p) {
  axpy(1.0, p.value, out.value);
  out.quadrature_error += p.error;
  out.evaluations += p.evaluations;
  out.converged = out.converged && p.converged;
}

double eval_poly(const std::vector<double>& c, double u) {
  double r = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it)
    r = r * u + *it;
  return r;
}

// Smallest K >= start (to bisection accuracy) with remainder(K) <= tol.
double find_truncation(const RealFn& remainder, double start, double tol) {
  auto ok = [&](double k) {
    double r = remainder(k);
    return std::isfinite(r) && r <= tol;
  };
  if (ok(start))
    return start;
  double step = 1.0;
  while (!ok(start + step)) {
    step *= 2.0;
    if (step > 1e12) {
      double r = remainder(start + step);
      throw Error(Errc::tail_unresolved, "tail remainder " + fmt_double(r) +
                                             " still above tolerance " + fmt_double(tol) +
                                             " at K=" + fmt_double(start + step));
    }
  }
  double lo = start + step / 2.0, hi = start + step;
  if (step == 1.0)
    lo = start;
  for (int i = 0; i < 60 && hi - lo > 1e-9 * std::max(1.0, hi); ++i) {
    double mid = 0.5 * (lo + hi);
    (ok(mid) ? hi : lo) = mid;
  }
  return hi;
}

} // namespace

Measure Measure::lebesgue(double lo, double hi, int nodes) {
  Measure m = polynomial_density(lo, hi, {Rational(1)}, nodes);
  m.pieces_.back().label = "1";
  return m;
}

Measure Measure::dirac(double point, double weight) {
  Measure m;
  m.add_atom(point, weight);
  m.validate();
  return m;
}

Measure Measure::with_density(double lo, double hi, RealFn density, int nodes, std::string label) {
  Measure m;
  m.add_piece(DensityPiece{lo, hi, std::move(density), nodes, {}, std::move(label)});
  m.validate();
  return m;
}

Measure Measure::polynomial_density(double lo, double hi, std::vector<Rational> coeffs,
                                    int nodes) {
  std::vector<double> c;
  c.reserve(coeffs.size());
  for (const auto& r : coeffs)
    c.push_back(to_double(r));
  Measure m;
  m.add_piece(DensityPiece{lo, hi, [c](double u) { return eval_poly(c, u); }, nodes,
                           std::move(coeffs), {}});
  m.validate();
  return m;
}

Measure& Measure::add_atom(double point, double weight) {
  for (auto& a : atoms_) {
    if (a.point == point) {
      a.weight += weight;
      return *this;
    }
  }
  atoms_.push_back({point, weight});
  std::sort(atoms_.begin(), atoms_.end(),
            [](const Atom& l, const Atom& r) { return l.point < r.point; });
  return *this;
}

Measure& Measure::add_piece(DensityPiece piece) {
  pieces_.push_back(std::move(piece));
  return *this;
}

Measure& Measure::set_tail(TailRule tail) {
  tail_ = std::move(tail);
  return *this;
}

Measure& Measure::set_probability(bool flag, double mass_tol) {
  probability_ = flag;
  mass_tol_ = mass_tol;
  return *this;
}

Measure& Measure::set_signed(bool flag) {
  signed_ = flag;
  return *this;
}

Measure operator+(const Measure& a, const Measure& b) {
  Measure m = a;
  for (const auto& at : b.atoms_)
    m.add_atom(at.point, at.weight);
  for (const auto& p : b.pieces_)
    m.pieces_.push_back(p);
  if (b.tail_) {
    if (m.tail_)
      throw Error(Errc::invalid_measure, "sum of two measures with unbounded tails");
    m.tail_ = b.tail_;
  }
  m.signed_ = a.signed_ || b.signed_;
  m.probability_ = false;
  return m;
}

Measure Measure::scaled(double c) const {
  Measure m = *this;
  for (auto& a : m.atoms_)
    a.weight *= c;
  for (auto& p : m.pieces_) {
    auto d = p.density;
    p.density = [d, c](double u) { return c * d(u); };
    for (auto& coef : p.polynomial)
      coef *= exact_rational(c);
    if (!p.label.empty())
      p.label = fmt_double(c) + "*(" + p.label + ")";
  }
  if (m.tail_) {
    auto d = m.tail_->density;
    m.tail_->density = [d, c](double u) { return c * d(u); };
    if (auto r = m.tail_->remainder)
      m.tail_->remainder = [r, c](double k) { return std::abs(c) * r(k); };
  }
  if (c < 0)
    m.signed_ = true;
  m.probability_ = false;
  return m;
}

void Measure::validate() const {
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    const auto& a = atoms_[i];
    if (!std::isfinite(a.point) || !std::isfinite(a.weight))
      throw Error(Errc::invalid_measure, "atom with non-finite point or weight");
    if (a.weight < 0 && !signed_)
      throw Error(Errc::invalid_measure,
                  "negative atom weight at u=" + fmt_double(a.point) + " in unsigned measure");
    if (i > 0 && atoms_[i - 1].point == a.point)
      throw Error(Errc::invalid_measure, "duplicate atom at u=" + fmt_double(a.point));
  }
  for (const auto& p : pieces_) {
    if (p.nodes < 2)
      throw Error(Errc::invalid_measure, "quadrature_nodes must be >= 2");
    if (!std::isfinite(p.lo) || !std::isfinite(p.hi) || !(p.hi > p.lo))
      throw Error(Errc::invalid_measure, "density interval must have positive finite length");
    if (!p.density)
      throw Error(Errc::invalid_measure, "density piece without evaluator");
    if (!signed_) {
      const auto& rule = gauss_legendre(p.nodes);
      for (double t : rule.nodes) {
        double u = 0.5 * (p.lo + p.hi) + 0.5 * (p.hi - p.lo) * t;
        if (p.density(u) < 0)
          throw Error(Errc::invalid_measure,
                      "negative density at u=" + fmt_double(u) + " in unsigned measure");
      }
    }
  }
  if (tail_) {
    if (!std::isfinite(tail_->start) || tail_->nodes < 2 || !tail_->density)
      throw Error(Errc::invalid_measure, "malformed unbounded tail");
  }
  if (probability_) {
    double mass = total_mass(*this);
    if (std::abs(mass - 1.0) > mass_tol_)
      throw Error(Errc::invalid_measure,
                  "probability measure has total mass " + fmt_double(mass));
  }
}

std::pair<double, double> Measure::support_hull() const {
  double lo = kInf, hi = -kInf;
  for (const auto& a : atoms_) {
    lo = std::min(lo, a.point);
    hi = std::max(hi, a.point);
  }
  for (const auto& p : pieces_) {
    lo = std::min(lo, p.lo);
    hi = std::max(hi, p.hi);
  }
  if (tail_) {
    lo = std::min(lo, tail_->start);
    hi = kInf;
  }
  return {lo, hi};
}

Measure Measure::restricted(double lo, double hi, bool include_lo, bool include_hi) const {
  Measure m;
  m.signed_ = signed_;
  for (const auto& a : atoms_) {
    bool above = a.point > lo || (include_lo && a.point == lo);
    bool below = a.point < hi || (include_hi && a.point == hi);
    if (above && below)
      m.atoms_.push_back(a);
  }
  for (const auto& p : pieces_) {
    double a = std::max(lo, p.lo), b = std::min(hi, p.hi);
    if (b > a) {
      DensityPiece q = p;
      q.lo = a;
      q.hi = b;
      m.pieces_.push_back(std::move(q));
    }
  }
  if (tail_) {
    double a = std::max(lo, tail_->start);
    if (hi == kInf) {
      TailRule t = *tail_;
      t.start = a;
      m.tail_ = std::move(t);
    } else if (hi > a) {
      m.pieces_.push_back(DensityPiece{a, hi, tail_->density, tail_->nodes, {}, tail_->label});
    }
  }
  return m;
}

std::vector<Measure> Measure::outside(double lo, double hi) const {
  return {restricted(-kInf, lo, true, false), restricted(hi, kInf, false, true)};
}

std::vector<double> Measure::sample_parameters(int per_piece, double tail_extent) const {
  std::vector<double> us;
  for (const auto& a : atoms_)
    us.push_back(a.point);
  const auto& rule = gauss_legendre(std::max(per_piece, 2));
  for (const auto& p : pieces_) {
    for (double t : rule.nodes)
      us.push_back(0.5 * (p.lo + p.hi) + 0.5 * (p.hi - p.lo) * t);
  }
  if (tail_) {
    for (double t : rule.nodes)
      us.push_back(tail_->start + 0.5 * tail_extent * (1.0 + t));
  }
  std::sort(us.begin(), us.end());
  us.erase(std::unique(us.begin(), us.end()), us.end());
  return us;
}

bool Measure::has_exact_moments() const {
  if (tail_)
    return false;
  return std::all_of(pieces_.begin(), pieces_.end(),
                     [](const DensityPiece& p) { return !p.polynomial.empty(); });
}

IntegralResult integrate(const std::function<Value(double)>& g, const Measure& mu,
                         const QuadratureSettings& settings) {
  IntegralResult out;
  for (const auto& a : mu.atoms()) {
    Value v = g(a.point);
    ++out.evaluations;
    if (!all_finite(v))
      throw Error(Errc::nan_in_integrand, "integrand is not finite at atom u=" + fmt_double(a.point));
    axpy(a.weight, v, out.value);
  }
  for (const auto& p : mu.pieces()) {
    auto weighted = [&](double u) {
      Value v = g(u);
      const double d = p.density(u);
      for (auto& c : v)
        c *= d;
      return v;
    };
    accumulate(out, integrate_interval(weighted, p.lo, p.hi, options_for(p.nodes, settings)));
  }
  if (const auto& t = mu.tail()) {
    RealFn remainder;
    if (settings.tail_remainder) {
      remainder = settings.tail_remainder;
    } else if (t->remainder) {
      const double scale = settings.tail_scale;
      remainder = [r = t->remainder, scale](double k) { return scale * r(k); };
    } else {
      throw Error(Errc::tail_unresolved,
                  "unbounded tail without a declared remainder bound for this integrand");
    }
    const double k = find_truncation(remainder, t->start, settings.tail_tol);
    out.truncation = k;
    out.tail_bound = remainder(k);
    auto weighted = [&](double u) {
      Value v = g(u);
      const double d = t->density(u);
      for (auto& c : v)
        c *= d;
      return v;
    };
    if (k > t->start)
      accumulate(out, integrate_interval(weighted, t->start, k, options_for(t->nodes, settings)));
  }
  if (settings.refinement_check) {
    QuadratureSettings finer = settings;
    finer.refinement_check = false;
    int base = settings.nodes;
    if (base == 0) {
      base = 2;
      for (const auto& p : mu.pieces())
        base = std::max(base, p.nodes);
      if (mu.tail())
        base = std::max(base, mu.tail()->nodes);
    }
    finer.nodes = 2 * base;
    IntegralResult refined = integrate(g, mu, finer);
    if (out.value.empty() || refined.value.empty())
      out.refinement_change = 0.0;
    else
      out.refinement_change = max_distance(out.value, refined.value);
  }
  return out;
}

double integrate_real(const RealFn& g, const Measure& mu, const QuadratureSettings& settings) {
  auto r = integrate([&](double u) { return Value{Scalar(g(u), 0.0)}; }, mu, settings);
  return r.value.empty() ? 0.0 : r.value[0].real();
}

double total_mass(const Measure& mu, const QuadratureSettings& settings) {
  return integrate_real([](double) { return 1.0; }, mu, settings);
}

double atom_mass(const Measure& mu, double point) {
  for (const auto& a : mu.atoms())
    if (a.point == point)
      return a.weight;
  return 0.0;
}

double total_variation(const Measure& mu, const QuadratureSettings& settings) {
  double tv = 0.0;
  for (const auto& a : mu.atoms())
    tv += std::abs(a.weight);
  Measure abs_part;
  for (const auto& p : mu.pieces()) {
    DensityPiece q = p;
    q.density = [d = p.density](double u) { return std::abs(d(u)); };
    q.polynomial.clear();
    abs_part.add_piece(std::move(q));
  }
  if (const auto& t = mu.tail()) {
    TailRule q = *t;
    q.density = [d = t->density](double u) { return std::abs(d(u)); };
    abs_part.set_tail(std::move(q));
  }
  return tv + total_mass(abs_part, settings);
}

Exhaustion::Exhaustion(SetFn sets, int count) : sets_(std::move(sets)), count_(count) {}

Exhaustion Exhaustion::growing_intervals(double lo, double hi0, double step, int count) {
  return Exhaustion([=](int m) { return std::pair{lo, hi0 + m * step}; }, count);
}

Exhaustion Exhaustion::index_prefixes(int n0, int step, int count) {
  return Exhaustion(
      [=](int m) { return std::pair{0.0, static_cast<double>(n0 + m * step)}; }, count);
}

Exhaustion Exhaustion::support(const Measure& mu) {
  auto hull = mu.support_hull();
  if (!std::isfinite(hull.second) || !std::isfinite(hull.first))
    throw Error(Errc::invalid_argument, "support exhaustion needs a bounded support");
  return Exhaustion([hull](int) { return hull; }, 1);
}

void Exhaustion::validate() const {
  if (count_ < 1)
    throw Error(Errc::invalid_argument, "exhaustion needs at least one set");
  for (int m = 0; m < count_; ++m) {
    auto [lo, hi] = set(m);
    if (!(hi >= lo))
      throw Error(Errc::invalid_argument, "empty exhaustion set at index " + std::to_string(m));
    if (m > 0) {
      auto [plo, phi] = set(m - 1);
      if (lo > plo || hi < phi)
        throw Error(Errc::invalid_argument, "exhaustion sets are not nested at index " +
                                                std::to_string(m));
    }
  }
}

} // namespace hausdorff

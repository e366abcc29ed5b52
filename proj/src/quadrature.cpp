#include "hausdorff/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <sstream>

namespace hausdorff {

namespace {

GaussRule compute_rule(int n) {
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Tricomi initial guess, then Newton on P_n.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      double pn = n == 1 ? x : p1;
      double pm = n == 1 ? 1.0 : p0;
      dp = n * (x * pn - pm) / (x * x - 1.0);
      double dx = pn / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16)
        break;
    }
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1)
    rule.nodes[n / 2] = 0.0;
  return rule;
}

Value apply_rule(const ValueIntegrand& g, const GaussRule& rule, double a, double b,
                 std::size_t& evals, double* abs_mass = nullptr) {
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  Value acc;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double u = mid + half * rule.nodes[i];
    Value gv = g(u);
    ++evals;
    if (!all_finite(gv)) {
      std::ostringstream os;
      os.precision(17);
      os << "integrand is not finite at u=" << u;
      throw Error(Errc::nan_in_integrand, os.str());
    }
    axpy(rule.weights[i] * half, gv, acc);
    if (abs_mass)
      *abs_mass += rule.weights[i] * half * max_norm(gv);
  }
  return acc;
}

struct Refiner {
  const ValueIntegrand& g;
  const GaussRule& rule;
  const AdaptiveOptions& opts;
  double tol_density = 0.0; // tolerance per unit length
  PanelResult out;

  void refine(double a, double b, const Value& whole, int depth) {
    const double m = 0.5 * (a + b);
    double abs_both = 0.0;
    Value left = apply_rule(g, rule, a, m, out.evaluations, &abs_both);
    Value right = apply_rule(g, rule, m, b, out.evaluations, &abs_both);
    Value both = left;
    axpy(1.0, right, both);
    const double diff = max_distance(whole, both);
    // Never ask for more than rounding allows on this panel.
    const double local_tol = std::max(tol_density * (b - a),
                                      64 * std::numeric_limits<double>::epsilon() * abs_both);
    // Panels narrower than a few ulps of their position cannot be split further.
    const bool too_narrow =
        (b - a) <= 1e4 * std::numeric_limits<double>::epsilon() *
                       std::max(std::abs(a), std::abs(b));
    if (diff <= local_tol || depth >= opts.max_depth || too_narrow) {
      if (diff > local_tol)
        out.converged = false;
      out.error += diff;
      axpy(1.0, both, out.value);
      return;
    }
    refine(a, m, left, depth + 1);
    refine(m, b, right, depth + 1);
  }
};

} // namespace

const GaussRule& gauss_legendre(int n) {
  if (n < 1)
    throw Error(Errc::invalid_argument, "Gauss-Legendre order must be positive");
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<GaussRule>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[n];
  if (!slot)
    slot = std::make_unique<GaussRule>(compute_rule(n));
  return *slot;
}

PanelResult integrate_interval(const ValueIntegrand& g, double a, double b,
                               const AdaptiveOptions& opts) {
  const GaussRule& rule = gauss_legendre(opts.nodes);
  PanelResult out;
  if (!(b > a))
    return out;
  if (opts.fixed_panels > 0) {
    const double h = (b - a) / opts.fixed_panels;
    for (int p = 0; p < opts.fixed_panels; ++p) {
      double lo = a + p * h;
      double hi = p + 1 == opts.fixed_panels ? b : lo + h;
      axpy(1.0, apply_rule(g, rule, lo, hi, out.evaluations), out.value);
    }
    return out;
  }
  double abs_mass = 0.0;
  Value whole = apply_rule(g, rule, a, b, out.evaluations, &abs_mass);
  Refiner r{g, rule, opts, 0.0, {}};
  r.out.evaluations = out.evaluations;
  const double scale = std::max(max_norm(whole), abs_mass);
  r.tol_density = std::max(opts.abs_tol, opts.rel_tol * scale) / (b - a);
  if (opts.grade_levels <= 0) {
    r.refine(a, b, whole, 0);
  } else {
    std::vector<double> cuts{a, b};
    const int levels = std::min(opts.grade_levels, 60);
    for (int k = 1; k <= levels; ++k) {
      const double w = std::ldexp(b - a, -k);
      cuts.push_back(a + w);
      cuts.push_back(b - w);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      const Value panel = apply_rule(g, rule, cuts[i], cuts[i + 1], r.out.evaluations);
      r.refine(cuts[i], cuts[i + 1], panel, 0);
    }
  }
  if (r.out.value.empty())
    r.out.value = whole;
  return r.out;
}

} // namespace hausdorff

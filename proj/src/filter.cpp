#include "hausdorff/filter.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace hausdorff {

namespace {

std::string point_string(const Point& x) {
  std::ostringstream os;
  os.precision(17);
  os << '(';
  for (std::size_t i = 0; i < x.size(); ++i)
    os << (i ? "," : "") << x[i];
  os << ')';
  return os.str();
}

// Unit vector; restricted to the open positive orthant when `positive`.
Point random_direction(std::mt19937_64& rng, int dim, bool positive) {
  std::normal_distribution<double> normal;
  Point d(dim);
  double n = 0.0;
  do {
    for (auto& c : d) {
      c = normal(rng);
      if (positive)
        c = std::abs(c) + 1e-3;
    }
    n = euclidean_norm(d);
  } while (n == 0.0);
  for (auto& c : d)
    c /= n;
  return d;
}

} // namespace

std::string_view to_string(DomainKind k) {
  switch (k) {
  case DomainKind::half_line: return "half-line";
  case DomainKind::naturals: return "naturals";
  case DomainKind::orthant: return "orthant";
  case DomainKind::plane: return "plane";
  }
  return "half-line";
}

std::string_view to_string(FilterKind k) {
  switch (k) {
  case FilterKind::half_line: return "half-line";
  case FilterKind::index: return "index";
  case FilterKind::orthant_infinity: return "orthant-infinity";
  case FilterKind::ball_complement: return "ball-complement";
  }
  return "half-line";
}

std::string_view to_string(LimitStatus s) {
  switch (s) {
  case LimitStatus::converged: return "CONVERGED";
  case LimitStatus::divergent: return "DIVERGENT";
  case LimitStatus::inconclusive: return "INCONCLUSIVE";
  }
  return "INCONCLUSIVE";
}

bool Domain::contains(const Point& x) const {
  if (static_cast<int>(x.size()) != dim)
    return false;
  switch (kind) {
  case DomainKind::half_line:
    return x[0] > 0 && std::isfinite(x[0]);
  case DomainKind::naturals:
    return x[0] >= 0 && std::floor(x[0]) == x[0];
  case DomainKind::orthant:
    return std::all_of(x.begin(), x.end(), [](double c) { return c > 0 && std::isfinite(c); });
  case DomainKind::plane:
    return std::all_of(x.begin(), x.end(), [](double c) { return std::isfinite(c); });
  }
  return false;
}

std::vector<Point> Domain::sample(int count, std::uint64_t seed, double lo_scale,
                                  double hi_scale) const {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double llo = std::log(lo_scale), lhi = std::log(hi_scale);
  std::vector<Point> pts;
  pts.reserve(count);
  for (int i = 0; i < count; ++i) {
    // Stratified in log-radius so that every scale is represented.
    double t = (i + unit(rng)) / count;
    double r = std::exp(llo + (lhi - llo) * t);
    switch (kind) {
    case DomainKind::half_line:
      pts.push_back({r});
      break;
    case DomainKind::naturals:
      pts.push_back({std::floor(r)});
      break;
    case DomainKind::orthant:
    case DomainKind::plane: {
      Point d = random_direction(rng, dim, kind == DomainKind::orthant);
      for (auto& c : d)
        c *= r;
      pts.push_back(std::move(d));
      break;
    }
    }
  }
  return pts;
}

FilterBase::FilterBase(FilterKind kind, int dim, LevelRule rule, double t0, double step,
                       double span)
    : kind_(kind), dim_(dim), rule_(rule), t0_(t0), step_(step), span_(span) {
  if (dim < 1)
    throw Error(Errc::invalid_argument, "filter dimension must be positive");
  if ((kind == FilterKind::half_line || kind == FilterKind::index) && dim != 1)
    throw Error(Errc::invalid_argument, "half-line and index filters are one-dimensional");
  if (rule == LevelRule::linear && !(step > 0))
    throw Error(Errc::invalid_argument, "linear filter levels need a positive step");
  if (rule == LevelRule::geometric && !(step > 1 && t0 > 0))
    throw Error(Errc::invalid_argument, "geometric filter levels need t0 > 0 and ratio > 1");
  if (!(span > 0))
    throw Error(Errc::invalid_argument, "sampling span must be positive");
}

FilterBase FilterBase::linear(FilterKind kind, double t0, double step, int dim) {
  return FilterBase(kind, dim, LevelRule::linear, t0, step);
}

FilterBase FilterBase::geometric(FilterKind kind, double t0, double ratio, int dim) {
  return FilterBase(kind, dim, LevelRule::geometric, t0, ratio);
}

FilterBase FilterBase::spanning(FilterKind kind, double first, double last, int levels, int dim) {
  if (levels < 2 || !(last > first) || !(first > 0))
    throw Error(Errc::invalid_argument, "spanning filter needs 0 < first < last and >= 2 levels");
  return geometric(kind, first, std::pow(last / first, 1.0 / (levels - 1)), dim);
}

Domain FilterBase::domain() const {
  switch (kind_) {
  case FilterKind::half_line: return Domain::half_line();
  case FilterKind::index: return Domain::naturals();
  case FilterKind::orthant_infinity: return Domain::orthant(dim_);
  case FilterKind::ball_complement: return Domain::plane(dim_);
  }
  return Domain::half_line();
}

double FilterBase::threshold(int k) const {
  if (rule_ == LevelRule::linear)
    return t0_ + step_ * k;
  return t0_ * std::pow(step_, k);
}

bool FilterBase::contains(int k, const Point& x) const {
  if (!domain().contains(x))
    return false;
  const double t = threshold(k);
  switch (kind_) {
  case FilterKind::half_line: return x[0] >= t;
  case FilterKind::index: return x[0] >= std::ceil(t);
  case FilterKind::orthant_infinity:
  case FilterKind::ball_complement: return euclidean_norm(x) >= t;
  }
  return false;
}

std::vector<Point> FilterBase::sample(int k, int count, std::uint64_t seed) const {
  std::mt19937_64 rng(seed ^ static_cast<std::uint64_t>(k));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double t = threshold(k);
  std::vector<Point> pts;
  pts.reserve(count);
  for (int i = 0; i < count; ++i) {
    const double r = i == 0 ? t : t * (1.0 + span_ * unit(rng));
    switch (kind_) {
    case FilterKind::half_line:
      pts.push_back({r});
      break;
    case FilterKind::index:
      pts.push_back({i == 0 ? std::ceil(t) : std::ceil(r)});
      break;
    case FilterKind::orthant_infinity:
    case FilterKind::ball_complement: {
      Point d;
      if (i == 0) {
        d.assign(dim_, 0.0);
        if (kind_ == FilterKind::orthant_infinity)
          std::fill(d.begin(), d.end(), 1.0 / std::sqrt(static_cast<double>(dim_)));
        else
          d[0] = 1.0;
      } else {
        d = random_direction(rng, dim_, kind_ == FilterKind::orthant_infinity);
      }
      for (auto& c : d)
        c *= r;
      // Rounding may leave the point a hair inside the ball.
      const double n = euclidean_norm(d);
      if (n < r)
        for (auto& c : d)
          c *= std::nextafter(r / n, 2.0);
      pts.push_back(std::move(d));
      break;
    }
    }
  }
  return pts;
}

void FilterBase::validate(int levels, int samples, std::uint64_t seed) const {
  for (int k = 0; k < levels; ++k) {
    const double t = threshold(k);
    if (!std::isfinite(t) || (k > 0 && !(t > threshold(k - 1))))
      throw Error(Errc::invalid_argument, "filter thresholds must increase strictly");
    auto pts = sample(k, samples, seed);
    if (pts.empty())
      throw Error(Errc::invalid_argument, "filter level is empty");
    for (const auto& x : pts) {
      if (!contains(k, x))
        throw Error(Errc::invalid_argument, "sample " + point_string(x) + " escapes level " +
                                                std::to_string(k));
      if (k > 0 && !contains(k - 1, x))
        throw Error(Errc::invalid_argument, "levels are not nested at " + std::to_string(k));
    }
  }
}

LimitEstimate limit_along_filter(const PointFn& g, const FilterBase& filter,
                                 const LimitSettings& settings) {
  if (settings.levels < 1 || settings.samples_per_level < 1 || settings.window < 1)
    throw Error(Errc::invalid_argument, "limit settings need positive levels, samples, window");
  std::vector<std::vector<Value>> values(settings.levels);
  LimitEstimate est;
  for (int k = 0; k < settings.levels; ++k) {
    est.thresholds.push_back(filter.threshold(k));
    for (const auto& x : filter.sample(k, settings.samples_per_level, settings.seed)) {
      Value v;
      try {
        v = g(x);
      } catch (const std::exception& e) {
        throw Error(Errc::eval_error, "at x=" + point_string(x) + ": " + e.what());
      }
      if (v.empty() || !all_finite(v))
        throw Error(Errc::eval_error, "non-finite value at x=" + point_string(x));
      values[k].push_back(std::move(v));
    }
  }
  const auto& deepest = values.back();
  Value mean(deepest.front().size(), Scalar{});
  for (const auto& v : deepest)
    axpy(1.0 / static_cast<double>(deepest.size()), v, mean);
  est.value = mean;
  for (const auto& level : values) {
    double dev = 0.0;
    for (const auto& v : level)
      dev = std::max(dev, max_distance(v, mean));
    est.deviation_trace.push_back(dev);
  }
  const auto& tr = est.deviation_trace;
  const int n = static_cast<int>(tr.size());
  const int first = std::max(0, n - settings.window);
  const double slack = 1e-12 * std::max(1.0, max_norm(mean));
  bool monotone = true;
  for (int i = first; i + 1 < n; ++i)
    monotone = monotone && tr[i + 1] <= tr[i] * (1.0 + 1e-9) + slack;
  const double final_dev = tr.back();
  if (final_dev <= settings.tol && monotone) {
    est.status = LimitStatus::converged;
  } else if (final_dev > settings.tol && !(final_dev < 0.5 * tr[first])) {
    est.status = LimitStatus::divergent;
  } else {
    est.status = LimitStatus::inconclusive;
  }
  return est;
}

} // namespace hausdorff

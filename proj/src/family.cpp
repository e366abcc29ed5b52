#include "hausdorff/family.hpp"

#include <cmath>
#include <sstream>

namespace hausdorff {

namespace {

std::string num(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

struct Param {
  double u;
  double mass;
  bool atom;
};

std::vector<Param> parameters(const Measure& mu, int per_piece) {
  std::vector<Param> ps;
  for (const auto& a : mu.atoms())
    ps.push_back({a.point, std::abs(a.weight), true});
  const auto& rule = gauss_legendre(per_piece);
  auto add_piece = [&](double lo, double hi, const RealFn& density) {
    const double half = 0.5 * (hi - lo), mid = 0.5 * (lo + hi);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double u = mid + half * rule.nodes[i];
      ps.push_back({u, std::abs(rule.weights[i] * half * density(u)), false});
    }
  };
  for (const auto& p : mu.pieces())
    add_piece(p.lo, p.hi, p.density);
  if (const auto& t = mu.tail()) {
    // Doubling windows out to a fixed extent.
    double lo = t->start, w = 1.0;
    for (int i = 0; i < 8; ++i) {
      add_piece(lo, lo + w, t->density);
      lo += w;
      w *= 2.0;
    }
  }
  return ps;
}

enum class Rule { proven, fail, none };

Rule structural(const MapFamily& fam, double u, const FilterBase& src, const FilterBase& dst) {
  if (fam.family_class() == FamilyClass::constant)
    return Rule::fail;
  const bool same = src.kind() == dst.kind() && src.dim() == dst.dim();
  if (!same)
    return Rule::none;
  const FilterKind k = src.kind();
  switch (fam.family_class()) {
  case FamilyClass::dilation:
    if (k == FilterKind::index)
      return Rule::none;
    return fam.scale(u) > 0 ? Rule::proven : Rule::fail;
  case FamilyClass::shift: {
    if (k != FilterKind::half_line && k != FilterKind::index)
      return Rule::none;
    const double s = fam.offset(u);
    if (!std::isfinite(s) || s < 0)
      return Rule::fail;
    if (k == FilterKind::index && std::floor(s) != s)
      return Rule::fail;
    return Rule::proven;
  }
  case FamilyClass::linear:
  case FamilyClass::affine: {
    if (k == FilterKind::orthant_infinity || k == FilterKind::half_line)
      return positive_affine_bound(fam, u) ? Rule::proven : Rule::fail;
    if (k == FilterKind::ball_complement) {
      Eigen::MatrixXd a = fam.matrix(u);
      if (a.rows() != src.dim() || a.cols() != src.dim())
        return Rule::fail;
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
      const auto& sv = svd.singularValues();
      return sv(sv.size() - 1) > 1e-14 * sv(0) ? Rule::proven : Rule::fail;
    }
    return Rule::none;
  }
  case FamilyClass::rotation:
    return k == FilterKind::ball_complement && src.dim() == 2 ? Rule::proven : Rule::none;
  case FamilyClass::constant:
    return Rule::fail;
  case FamilyClass::custom:
    return Rule::none;
  }
  return Rule::none;
}

} // namespace

std::string_view to_string(FamilyClass c) {
  switch (c) {
  case FamilyClass::dilation: return "dilation";
  case FamilyClass::shift: return "shift";
  case FamilyClass::linear: return "linear";
  case FamilyClass::affine: return "affine";
  case FamilyClass::rotation: return "rotation";
  case FamilyClass::constant: return "constant";
  case FamilyClass::custom: return "custom";
  }
  return "custom";
}

std::string_view to_string(Agreement a) {
  switch (a) {
  case Agreement::proven: return "PROVEN";
  case Agreement::evidence: return "EVIDENCE";
  case Agreement::fail: return "FAIL";
  }
  return "FAIL";
}

MapFamily MapFamily::dilation(RealFn scale) {
  MapFamily f(FamilyClass::dilation);
  f.scalar_ = std::move(scale);
  return f;
}

MapFamily MapFamily::shift(RealFn offset) {
  MapFamily f(FamilyClass::shift);
  f.scalar_ = std::move(offset);
  return f;
}

MapFamily MapFamily::linear(MatrixFn matrix) {
  MapFamily f(FamilyClass::linear);
  f.matrix_ = std::move(matrix);
  return f;
}

MapFamily MapFamily::affine(MatrixFn matrix, VectorFn offset) {
  MapFamily f(FamilyClass::affine);
  f.matrix_ = std::move(matrix);
  f.vector_ = std::move(offset);
  return f;
}

MapFamily MapFamily::rotation(RealFn angle, Point offset) {
  if (offset.size() != 2)
    throw Error(Errc::invalid_argument, "rotation family lives on the plane");
  MapFamily f(FamilyClass::rotation);
  f.scalar_ = std::move(angle);
  f.point_offset_ = std::move(offset);
  return f;
}

MapFamily MapFamily::constant(std::function<Point(double)> target) {
  MapFamily f(FamilyClass::constant);
  f.target_ = std::move(target);
  return f;
}

MapFamily MapFamily::custom(PointMap map) {
  MapFamily f(FamilyClass::custom);
  f.custom_ = std::move(map);
  return f;
}

double MapFamily::scale(double u) const { return scalar_ ? scalar_(u) : u; }
double MapFamily::offset(double u) const { return scalar_ ? scalar_(u) : 0.0; }
double MapFamily::angle(double u) const { return scalar_ ? scalar_(u) : u; }

Eigen::MatrixXd MapFamily::matrix(double u) const {
  if (!matrix_)
    throw Error(Errc::invalid_argument, "family has no matrix");
  return matrix_(u);
}

Eigen::VectorXd MapFamily::vector_offset(double u) const {
  if (!vector_)
    return Eigen::VectorXd::Zero(matrix(u).rows());
  return vector_(u);
}

Point MapFamily::operator()(double u, const Point& x) const {
  switch (class_) {
  case FamilyClass::dilation: {
    const double s = scale(u);
    Point y = x;
    for (auto& c : y)
      c *= s;
    return y;
  }
  case FamilyClass::shift: {
    const double s = offset(u);
    Point y = x;
    for (auto& c : y)
      c += s;
    return y;
  }
  case FamilyClass::linear:
  case FamilyClass::affine: {
    Eigen::MatrixXd a = matrix(u);
    if (a.cols() != static_cast<Eigen::Index>(x.size()))
      throw Error(Errc::invalid_argument, "matrix size does not match point dimension");
    Eigen::VectorXd v = a * Eigen::Map<const Eigen::VectorXd>(x.data(), x.size());
    if (class_ == FamilyClass::affine)
      v += vector_offset(u);
    return Point(v.data(), v.data() + v.size());
  }
  case FamilyClass::rotation: {
    if (x.size() != 2)
      throw Error(Errc::invalid_argument, "rotation family needs points in the plane");
    const double t = angle(u), c = std::cos(t), s = std::sin(t);
    return {point_offset_[0] + c * x[0] - s * x[1], point_offset_[1] + s * x[0] + c * x[1]};
  }
  case FamilyClass::constant:
    return target_(u);
  case FamilyClass::custom:
    return custom_(u, x);
  }
  return x;
}

std::optional<double> positive_affine_bound(const MapFamily& family, double u) {
  if (family.family_class() != FamilyClass::linear && family.family_class() != FamilyClass::affine)
    return std::nullopt;
  Eigen::MatrixXd a = family.matrix(u);
  if (a.rows() != a.cols() || a.rows() == 0)
    return std::nullopt;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    bool positive = false;
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      if (!(a(i, j) >= 0))
        return std::nullopt;
      positive = positive || a(i, j) > 0;
    }
    if (!positive)
      return std::nullopt;
  }
  Eigen::VectorXd b = family.vector_offset(u);
  for (Eigen::Index i = 0; i < b.size(); ++i)
    if (!(b(i) >= 0))
      return std::nullopt;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  const auto& sv = svd.singularValues();
  const double smin = sv(sv.size() - 1);
  if (!(smin > 1e-14 * sv(0)))
    return std::nullopt;
  // |A x| >= |x| / ||A^{-1}|| and ||A^{-1}|| = 1 / smin.
  return smin;
}

std::optional<int> sampling_counterexample(const MapFamily& family, double u,
                                           const FilterBase& source, const FilterBase& target,
                                           const AgreementSettings& settings) {
  for (int kp = 0; kp < settings.levels; ++kp) {
    bool found = false;
    for (int j = 0; j < settings.max_search && !found; ++j) {
      if (!std::isfinite(source.threshold(j)))
        break;
      bool all_in = true;
      for (const auto& x : source.sample(j, settings.samples_per_level, settings.seed)) {
        Point y;
        try {
          y = family(u, x);
        } catch (const std::exception&) {
          all_in = false;
          break;
        }
        if (!target.contains(kp, y)) {
          all_in = false;
          break;
        }
      }
      found = all_in;
    }
    if (!found)
      return kp;
  }
  return std::nullopt;
}

AgreementVerdict agrees_with(const MapFamily& family, const FilterBase& source,
                             const FilterBase& target, const Measure& mu,
                             const AgreementSettings& settings) {
  AgreementVerdict out;
  const auto params = parameters(mu, settings.nodes_per_piece);

  double ok_mass = 0.0, sampled_mass = 0.0, density_fail_mass = 0.0;
  std::optional<double> density_witness;
  bool used_sampling = false;
  std::vector<RegionVerdict> atom_fails;
  const bool exact_dilation = family.identity_scale() && source.kind() == target.kind() &&
                              source.dim() == target.dim() &&
                              source.kind() != FilterKind::index;

  for (const auto& p : params) {
    Rule r = structural(family, p.u, source, target);
    bool ok = false;
    if (r == Rule::none) {
      if (!settings.sampling)
        throw Error(Errc::inconclusive_by_construction,
                    std::string("no structural agreement rule for family class ") +
                        std::string(to_string(family.family_class())) +
                        " and sampling is disabled");
      used_sampling = true;
      ok = !sampling_counterexample(family, p.u, source, target, settings).has_value();
      if (ok)
        sampled_mass += p.mass;
    } else {
      ok = r == Rule::proven;
      if (ok)
        ok_mass += p.mass;
    }
    if (ok)
      continue;
    if (exact_dilation)
      continue; // failing set computed exactly below
    if (p.atom) {
      atom_fails.push_back({"u=" + num(p.u), Agreement::fail, p.mass, p.u});
    } else {
      density_fail_mass += p.mass;
      if (!density_witness)
        density_witness = p.u;
    }
  }

  if (exact_dilation) {
    // Dilation by u agrees exactly when u > 0.
    const Measure bad = mu.restricted(-std::numeric_limits<double>::infinity(), 0.0);
    const double bad_mass = total_variation(bad);
    const auto hull = mu.support_hull();
    out.regions.push_back({"u>0", Agreement::proven, std::max(0.0, ok_mass - bad_mass), {}});
    if (hull.first <= 0.0 || bad_mass > 0.0)
      out.regions.push_back({"u<=0", Agreement::fail, bad_mass, 0.0});
    out.fail_mass = bad_mass;
  } else {
    if (ok_mass > 0 || (sampled_mass == 0 && atom_fails.empty() && density_fail_mass == 0))
      out.regions.push_back({"structural", Agreement::proven, ok_mass, {}});
    if (used_sampling && sampled_mass > 0)
      out.regions.push_back({"sampled", Agreement::evidence, sampled_mass, {}});
    for (auto& f : atom_fails) {
      out.fail_mass += f.mass;
      out.regions.push_back(std::move(f));
    }
    if (density_witness) {
      out.fail_mass += density_fail_mass;
      out.regions.push_back({"density-part", Agreement::fail, density_fail_mass, density_witness});
    }
  }
  out.agrees = out.fail_mass <= settings.mass_tol;
  out.verdict = out.agrees ? Verdict::pass : Verdict::fail;
  return out;
}

} // namespace hausdorff

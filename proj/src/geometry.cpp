#include "gbdm/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace gbdm {

namespace {
constexpr double kTau = 2.0 * M_PI;

double wrap_angle(double a) {
  double r = std::fmod(a, kTau);
  if (r < 0.0) r += kTau;
  return r;
}
}  // namespace

void GroupSpec::validate() const {
  if (parameter <= 0.0)
    throw GeometryError("group parameter must be positive");
  if (action == ActionKind::Dilate && parameter == 1.0)
    throw GeometryError("dilation ratio must differ from 1");
}

void CospherePoint::normalize() {
  double n2 = 0.0;
  for (double v : xi) n2 += v * v;
  const double n = std::sqrt(n2);
  if (n == 0.0) throw GeometryError("zero covector");
  for (double& v : xi) v /= n;
}

OrbitGeometry::OrbitGeometry(BaseKind base, int dim,
                             std::vector<double> z_components, GroupSpec group)
    : base_(base), dim_(dim), z_(std::move(z_components)), group_(group) {
  validate();
}

void OrbitGeometry::validate() const {
  group_.validate();
  if (z_.empty()) throw GeometryError("Z must have at least one component");
  if (base_ == BaseKind::Cylinder) {
    if (dim_ != 2) throw GeometryError("cylinder base is 2-dimensional");
  } else {
    if (dim_ != 2)
      throw GeometryError("euclidean base supported for d = 2 only");
    if (group_.action == ActionKind::Translate)
      throw GeometryError(
          "translated spheres intersect transversally; the decomposition "
          "regularity condition fails");
    for (double r : z_)
      if (r <= 0.0) throw GeometryError("sphere radii must be positive");
  }
  if (base_ == BaseKind::Cylinder && group_.action == ActionKind::Dilate) {
    // components with the same sign lie on one dilation orbit ray; any pair
    // of circles is either equal or disjoint, so nothing can fail here.
  }
  // duplicate seeds are a configuration error
  for (std::size_t a = 0; a < z_.size(); ++a)
    for (std::size_t b = a + 1; b < z_.size(); ++b)
      if (z_[a] == z_[b]) throw GeometryError("duplicate Z component");
}

double OrbitGeometry::component_value(int j, int k) const {
  const double z = z_.at(static_cast<std::size_t>(j));
  if (group_.action == ActionKind::Translate)
    return z + group_.parameter * k;
  return z * std::pow(group_.parameter, k);
}

OrbitComponent OrbitGeometry::canonical_component(int j, int k) const {
  OrbitComponent c;
  c.j = j;
  const double z = z_.at(static_cast<std::size_t>(j));
  if (group_.action == ActionKind::Dilate && z == 0.0) {
    c.k = 0;
    c.value = 0.0;
    c.fixed = true;
  } else {
    c.k = k;
    c.value = component_value(j, k);
    c.fixed = false;
  }
  return c;
}

bool OrbitGeometry::component_in_orbit(const OrbitComponent& c) const {
  if (c.j < 0 || c.j >= static_cast<int>(z_.size())) return false;
  return std::abs(component_value(c.j, c.k) - c.value) <=
         1e-9 * (1.0 + std::abs(c.value));
}

std::vector<OrbitComponent> OrbitGeometry::orbit_components(int N) const {
  std::vector<OrbitComponent> out;
  auto seen = [&](double v) {
    for (const auto& c : out)
      if (std::abs(c.value - v) <= 1e-12 * (1.0 + std::abs(v))) return true;
    return false;
  };
  for (int k = -N; k <= N; ++k) {
    for (std::size_t j = 0; j < z_.size(); ++j) {
      OrbitComponent c = canonical_component(static_cast<int>(j), k);
      if (!seen(c.value)) out.push_back(c);
    }
  }
  std::sort(out.begin(), out.end(),
            [](const OrbitComponent& a, const OrbitComponent& b) {
              return a.value < b.value;
            });
  return out;
}

CospherePoint OrbitGeometry::act(int k, const CospherePoint& p) const {
  CospherePoint q = p;
  if (q.at_infinity) return q;
  if (base_ == BaseKind::Cylinder) {
    if (group_.action == ActionKind::Translate) {
      q.x[1] += group_.parameter * k;
      // isometry: covector unchanged
    } else {
      const double s = std::pow(group_.parameter, k);
      q.x[1] *= s;
      q.xi[1] /= s;
      q.normalize();
    }
  } else {
    const double s = std::pow(group_.parameter, k);
    for (double& v : q.x) v *= s;
    // codifferential scales the covector uniformly; direction unchanged
  }
  return q;
}

BoundaryCospherePoint OrbitGeometry::act(int k,
                                         const BoundaryCospherePoint& p)
    const {
  BoundaryCospherePoint q = p;
  const double z = z_.at(static_cast<std::size_t>(p.comp_j));
  if (!(group_.action == ActionKind::Dilate && z == 0.0)) q.comp_k += k;
  // positions are angular and tangent covectors renormalize to +-1
  return q;
}

Jacobians OrbitGeometry::jacobians(int k, const CospherePoint&) const {
  Jacobians j;
  if (group_.action == ActionKind::Translate) return j;
  const double q = group_.parameter;
  const int d = base_ == BaseKind::Cylinder ? 1 : dim_;
  j.J_Y = std::pow(q, -k * d);
  j.J_X = base_ == BaseKind::Cylinder ? 1.0 : std::pow(q, -k * (dim_ - 1));
  j.J_N = std::pow(q, k);
  return j;
}

Jacobians OrbitGeometry::jacobians(int k, const BoundaryCospherePoint&) const {
  CospherePoint dummy;
  return jacobians(k, dummy);
}

double OrbitGeometry::fiber_scale(int k) const {
  if (group_.action == ActionKind::Translate) return 1.0;
  return std::pow(group_.parameter, k);
}

FixedPointData OrbitGeometry::fixed_point_data(
    const BoundaryCospherePoint& p) const {
  if (p.comp_j < 0 || p.comp_j >= static_cast<int>(z_.size()))
    throw GeometryError("boundary point not in the geometry");
  FixedPointData f;
  const double z = z_.at(static_cast<std::size_t>(p.comp_j));
  if (group_.action == ActionKind::Dilate && z == 0.0) {
    f.stabilizer_full = true;
    f.quotient_full = false;
    f.topologically_free = false;
  }
  return f;
}

FixedPointData OrbitGeometry::fixed_point_data(const CospherePoint& p) const {
  if (!p.at_infinity && static_cast<int>(p.x.size()) != dim_)
    throw GeometryError("interior point not in the geometry");
  // Interior fixed covector directions are nowhere dense; the action stays
  // topologically free at every interior point of the built-in geometries.
  return FixedPointData{};
}

bool OrbitGeometry::orbit_is_fixed(const CospherePoint& p) const {
  if (p.at_infinity) return true;
  const CospherePoint q = act(1, p);
  double dx = 0.0;
  for (std::size_t i = 0; i < p.x.size(); ++i)
    dx = std::max(dx, std::abs(p.x[i] - q.x[i]));
  for (std::size_t i = 0; i < p.xi.size(); ++i)
    dx = std::max(dx, std::abs(p.xi[i] - q.xi[i]));
  return dx <= 1e-14;
}

ClosedSet OrbitGeometry::closure_YX(
    const std::vector<CospherePoint>& U,
    const std::vector<BoundaryCospherePoint>& V) const {
  ClosedSet s;
  s.interior_points = U;
  s.boundary_points = V;
  for (const auto& b : V) {
    bool dup = false;
    for (const auto& a : s.arcs)
      if (approx_equal(a, b)) dup = true;
    if (!dup) s.arcs.push_back(b);
  }
  return s;
}

ClosedSet OrbitGeometry::closure_YX(const ClosedSet& in) const {
  ClosedSet s = closure_YX(in.interior_points, in.boundary_points);
  for (const auto& a : in.arcs) {
    bool dup = false;
    for (const auto& b : s.arcs)
      if (approx_equal(a, b)) dup = true;
    if (!dup) s.arcs.push_back(a);
  }
  return s;
}

CospherePoint OrbitGeometry::embed_boundary(const BoundaryCospherePoint& b,
                                            double xi_n, int side) const {
  return arc_point(b, b.xi_prime, xi_n, side);
}

CospherePoint OrbitGeometry::arc_point(const BoundaryCospherePoint& b,
                                       double xi_t, double xi_n,
                                       int side) const {
  const double v = component_value(b.comp_j, b.comp_k);
  CospherePoint p;
  if (base_ == BaseKind::Cylinder) {
    p.x = {wrap_angle(b.x), v};
    p.xi = {xi_t, xi_n};
  } else {
    // component: circle of radius v, position at angle b.x;
    // unit tangent covector (-sin, cos), unit conormal (cos, sin)
    const double c = std::cos(b.x), sn = std::sin(b.x);
    p.x = {v * c, v * sn};
    p.xi = {xi_t * (-sn) + xi_n * c, xi_t * c + xi_n * sn};
  }
  p.side = side;
  p.normalize();
  return p;
}

CospherePoint OrbitGeometry::sample_arc(const BoundaryCospherePoint& b,
                                        double phi, int side) const {
  return arc_point(b, std::cos(phi) * b.xi_prime, std::sin(phi), side);
}

bool approx_equal(const CospherePoint& a, const CospherePoint& b, double tol) {
  if (a.at_infinity != b.at_infinity) return false;
  if (a.at_infinity) return true;
  if (a.x.size() != b.x.size()) return false;
  for (std::size_t i = 0; i < a.x.size(); ++i)
    if (std::abs(a.x[i] - b.x[i]) > tol) return false;
  for (std::size_t i = 0; i < a.xi.size(); ++i)
    if (std::abs(a.xi[i] - b.xi[i]) > tol) return false;
  if (a.side.has_value() != b.side.has_value()) return false;
  if (a.side && *a.side != *b.side) return false;
  return true;
}

bool approx_equal(const BoundaryCospherePoint& a,
                  const BoundaryCospherePoint& b, double tol) {
  return a.comp_j == b.comp_j && a.comp_k == b.comp_k &&
         std::abs(a.x - b.x) <= tol && a.xi_prime == b.xi_prime;
}

bool approx_equal(const ClosedSet& a, const ClosedSet& b, double tol) {
  auto match_all = [tol](const auto& u, const auto& v) {
    if (u.size() != v.size()) return false;
    for (const auto& p : u) {
      bool found = false;
      for (const auto& q : v)
        if (approx_equal(p, q, tol)) found = true;
      if (!found) return false;
    }
    return true;
  };
  return match_all(a.interior_points, b.interior_points) &&
         match_all(a.arcs, b.arcs) &&
         match_all(a.boundary_points, b.boundary_points);
}

}  // namespace gbdm

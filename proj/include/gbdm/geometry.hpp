#ifndef GBDM_GEOMETRY_HPP
#define GBDM_GEOMETRY_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace gbdm {

struct GeometryError : std::runtime_error {
  explicit GeometryError(const std::string& w) : std::runtime_error(w) {}
};

enum class BaseKind { Cylinder, Euclidean };
enum class ActionKind { Translate, Dilate };

// The acting group is Z throughout; the generator either translates the
// cylinder axis by tau or dilates by q.
struct GroupSpec {
  ActionKind action = ActionKind::Translate;
  double parameter = 1.0;  // tau (translation step) or q (dilation ratio)

  void validate() const;
  static int word_metric(int k) { return k < 0 ? -k : k; }
};

// A connected component of the orbit set X = Gamma(Z): gamma^k(Z_j).
struct OrbitComponent {
  int j = 0;           // index of the seed component of Z
  int k = 0;           // group power (canonical: 0 for fixed components)
  double value = 0.0;  // cylinder: axial position t; euclidean: radius
  bool fixed = false;  // invariant under the whole group (t = 0 under dilation)
};

// Interior cosphere point on the blowup, stored with a unit covector.
struct CospherePoint {
  std::vector<double> x;    // base coordinates (cylinder: {angle, t})
  std::vector<double> xi;   // unit covector
  std::optional<int> side;  // +1/-1 when the base point lies on a cut
  bool at_infinity = false;

  void normalize();
};

// Point of S*X: a component of the orbit set, a position on it, and a
// unit tangent-dual covector (components here are 1-dimensional).
struct BoundaryCospherePoint {
  int comp_j = 0;
  int comp_k = 0;
  double x = 0.0;       // angular coordinate on the component
  double xi_prime = 1;  // +1 or -1
};

struct Jacobians {
  double J_Y = 1.0;
  double J_X = 1.0;
  double J_N = 1.0;
};

struct FixedPointData {
  bool stabilizer_full = false;  // Gamma_m = Z (else trivial)
  bool quotient_full = true;     // Gamma^m = Z (else trivial)
  bool topologically_free = true;
};

// Closure in the glued space: finite interior/boundary parts plus the
// conormal arc families over boundary points, kept symbolically.
struct ClosedSet {
  std::vector<CospherePoint> interior_points;
  std::vector<BoundaryCospherePoint> arcs;
  std::vector<BoundaryCospherePoint> boundary_points;
};

class OrbitGeometry {
 public:
  OrbitGeometry(BaseKind base, int dim, std::vector<double> z_components,
                GroupSpec group);

  BaseKind base() const { return base_; }
  int dim() const { return dim_; }
  const GroupSpec& group() const { return group_; }
  const std::vector<double>& z_values() const { return z_; }

  // Regularity check: images of components either coincide or are disjoint.
  // Throws GeometryError for decompositions with transversal intersections
  // (translated spheres and the like).
  void validate() const;

  // Distinct components of X_N = union over |k| <= N, deduplicated.
  std::vector<OrbitComponent> orbit_components(int N) const;

  // Position value of gamma^k(Z_j).
  double component_value(int j, int k) const;
  OrbitComponent canonical_component(int j, int k) const;
  bool component_in_orbit(const OrbitComponent& c) const;

  CospherePoint act(int k, const CospherePoint& p) const;
  BoundaryCospherePoint act(int k, const BoundaryCospherePoint& p) const;

  Jacobians jacobians(int k, const CospherePoint& p) const;
  Jacobians jacobians(int k, const BoundaryCospherePoint& p) const;

  // Scale of the fiber dilation kappa implementing the unitary shift of
  // gamma^k on conormal fibers: q^k for dilations, 1 for translations.
  double fiber_scale(int k) const;

  FixedPointData fixed_point_data(const BoundaryCospherePoint& p) const;
  FixedPointData fixed_point_data(const CospherePoint& p) const;

  // Whole orbit of p is a single point (trajectory coefficients constant).
  bool orbit_is_fixed(const CospherePoint& p) const;

  ClosedSet closure_YX(const std::vector<CospherePoint>& U,
                       const std::vector<BoundaryCospherePoint>& V) const;
  ClosedSet closure_YX(const ClosedSet& s) const;

  // Point of the arc over b at angle phi in [-pi/2, pi/2], with the given
  // side of the cut.
  CospherePoint sample_arc(const BoundaryCospherePoint& b, double phi,
                           int side) const;

  // Base/covector coordinates of a boundary point seen as a point of Y;
  // covector = xi_prime * tangent + xi_n * conormal, renormalized.
  CospherePoint embed_boundary(const BoundaryCospherePoint& b, double xi_n,
                               int side) const;
  CospherePoint arc_point(const BoundaryCospherePoint& b, double xi_t,
                          double xi_n, int side) const;

 private:
  BaseKind base_;
  int dim_;
  std::vector<double> z_;
  GroupSpec group_;
};

bool approx_equal(const CospherePoint& a, const CospherePoint& b,
                  double tol = 1e-12);
bool approx_equal(const BoundaryCospherePoint& a,
                  const BoundaryCospherePoint& b, double tol = 1e-12);
bool approx_equal(const ClosedSet& a, const ClosedSet& b, double tol = 1e-12);

}  // namespace gbdm

#endif

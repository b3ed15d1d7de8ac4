#pragma once

#include <memory>
#include <tuple>
#include <variant>
#include <vector>

#include "horolab/common.hpp"
#include "horolab/random.hpp"

namespace horolab {

enum class SpaceKind {
  PoincareDisc,
  RightHalfPlane,
  ComplexBall,
  KleinEllipsoid,
  Ladder,
  FiniteGraph,
};

const char* to_string(SpaceKind kind);

/// Ladder coordinates. A point lies on a rail (b = ±1, a >= 0) or on a rung
/// (a integer, -1 < b < 1); junctions (integer a, b = ±1) are both.
struct LadderPoint {
  double a = 0.0;
  double b = 0.0;
};

/// A point of one model space. Tagged by storage; the owning Space validates
/// that coordinates lie in its open domain.
class Point {
 public:
  Point() = default;

  static Point disc(Complex z) { return Point(z); }
  static Point half_plane(Complex w) { return Point(w); }
  static Point ball(ComplexVec z) { return Point(std::move(z)); }
  static Point klein(RealVec x) { return Point(std::move(x)); }
  static Point ladder(double a, double b) { return Point(LadderPoint{a, b}); }
  static Point vertex(int id) { return Point(id); }

  const Complex& as_complex() const;
  const ComplexVec& as_cvec() const;
  const RealVec& as_rvec() const;
  const LadderPoint& as_ladder() const;
  int as_vertex() const;

  bool holds_complex() const { return std::holds_alternative<Complex>(v_); }

 private:
  template <typename T>
  explicit Point(T v) : v_(std::move(v)) {}

  std::variant<std::monostate, Complex, ComplexVec, RealVec, LadderPoint, int> v_;
};

/// End of a ladder ray: the rail it eventually travels on. The Gromov
/// boundary of the ladder is a single point, but rays on the two rails stay
/// distinguishable, so directions carry the rail sign.
struct RailEnd {
  int sign = 1;  // +1 or -1
};

/// Point at infinity of the right half-plane boundary.
struct HalfPlaneInfinity {};

/// A boundary direction, encoded per kind: unit complex number (disc),
/// boundary value iy or infinity (half-plane), unit vector (ball), boundary
/// point of the ellipsoid (Klein), rail sign (ladder).
class Direction {
 public:
  Direction() = default;

  static Direction circle(Complex xi) { return Direction(xi); }
  static Direction boundary_value(Complex iy) { return Direction(iy); }
  static Direction sphere(ComplexVec xi) { return Direction(std::move(xi)); }
  static Direction ellipsoid(RealVec x) { return Direction(std::move(x)); }
  static Direction infinity() { return Direction(HalfPlaneInfinity{}); }
  static Direction rail(int sign) { return Direction(RailEnd{sign}); }

  const Complex& as_complex() const;
  const ComplexVec& as_cvec() const;
  const RealVec& as_rvec() const;
  int rail_sign() const;
  bool is_infinity() const { return std::holds_alternative<HalfPlaneInfinity>(v_); }

 private:
  template <typename T>
  explicit Direction(T v) : v_(std::move(v)) {}

  std::variant<std::monostate, Complex, ComplexVec, RealVec, RailEnd, HalfPlaneInfinity> v_;
};

/// Bounded sampling region, interpreted per kind.
struct SamplerRegion {
  double euclid_radius = 0.99;   // disc/ball; Klein uses it as an ellipsoid scale
  double halfplane_re_min = 0.05;
  double halfplane_re_max = 20.0;
  double halfplane_im_max = 20.0;
  double ladder_extent = 24.0;   // a-coordinate range [0, extent]
};

/// Immutable descriptor of one model metric space with its exact distance
/// rule. Copies share state; all operations are pure.
class Space {
 public:
  static Space poincare_disc();
  static Space right_half_plane();
  static Space complex_ball(int dimension);
  static Space klein_ellipsoid(std::vector<RealVec> shape);
  static Space ladder();
  /// Edges as (u, v, weight>0); vertex_count -1 infers 1 + max index.
  static Space finite_graph(const std::vector<std::tuple<int, int, double>>& edges,
                            int vertex_count = -1);

  SpaceKind kind() const;
  /// Complex dimension q for the ball, real dimension n for Klein,
  /// vertex count for graphs, otherwise 1.
  int dimension() const;
  bool supports_rays() const { return kind() != SpaceKind::FiniteGraph; }

  double distance(const Point& x, const Point& y) const;

  bool contains(const Point& x) const;
  void require_point(const Point& x) const;
  /// Validates and canonicalizes (unitizes circle/sphere vectors, projects
  /// Klein points onto the boundary, snaps half-plane values to Re = 0).
  Direction canonical_direction(const Direction& d) const;

  Point sample(Rng& rng, const SamplerRegion& region = {}) const;

  // Finite-graph introspection.
  int vertex_count() const;
  double graph_distance(int u, int v) const;
  /// Vertex sequence of one shortest path u -> v.
  std::vector<int> graph_shortest_path(int u, int v) const;

  const std::vector<RealVec>& klein_shape() const;
  /// Lower Cholesky factor of the shape matrix.
  const std::vector<RealVec>& klein_cholesky() const;

  bool same_as(const Space& other) const;

 private:
  struct Impl;
  explicit Space(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

inline double distance(const Space& s, const Point& x, const Point& y) {
  return s.distance(x, y);
}

namespace detail {

/// log((1+rho)/(1-rho)) for rho in [0,1); the disc-family distance profile.
double dist_from_rho(double rho);

/// Mobius involution of the disc swapping a and 0.
Complex mobius_disc(const Complex& a, const Complex& z);

/// Mobius involution of the unit ball swapping a and 0 (extends to |z|=1).
ComplexVec mobius_ball(const ComplexVec& a, const ComplexVec& z);

/// Cayley transform between the right half-plane and the disc (1 -> 0).
Complex cayley_to_disc(const Complex& w);
Complex cayley_to_half_plane(const Complex& z);

/// Hermitian inner product sum_i z_i conj(w_i).
Complex hermitian(const ComplexVec& z, const ComplexVec& w);

double ladder_distance(const LadderPoint& x, const LadderPoint& y);
/// Shortest route realizing ladder_distance; waypoints include both ends.
double ladder_route(const LadderPoint& x, const LadderPoint& y,
                    std::vector<LadderPoint>* waypoints);
bool ladder_on_rail(const LadderPoint& p);
/// Integer rung index if the point sits on (or at the end of) a rung.
bool ladder_on_rung(const LadderPoint& p, long long* rung = nullptr);

/// Quadratic form x^T S x.
double klein_form(const std::vector<RealVec>& shape, const RealVec& x);
/// Signed chord parameters for the line x + t*dir: returns (t_minus, t_plus)
/// with t_minus < 0 < t_plus where the line meets the ellipsoid boundary.
std::pair<double, double> klein_chord(const std::vector<RealVec>& shape,
                                      const RealVec& x, const RealVec& dir);

}  // namespace detail

}  // namespace horolab

#pragma once

#include <variant>
#include <vector>

#include "horolab/space.hpp"

namespace horolab {

/// A unit-speed geodesic segment or ray. Closed-form where the space has one
/// (Mobius chart for disc/half-plane/ball, reparametrized chord for Klein),
/// a waypoint polyline for the ladder, a breakpoint table for graphs.
class Geodesic {
 public:
  const Space& space() const { return space_; }
  double length() const { return length_; }
  bool is_ray() const;

  /// Point at arclength t, clamped to [0, length]. Graph tables snap to the
  /// nearest breakpoint (vertices are the only representable points).
  Point at(double t) const;

  Point origin() const { return at(0.0); }

  /// d(x, at(t)). For Mobius-chart geodesics this is evaluated in the chart,
  /// which stays accurate when at(t) is far out along a ray; other kinds
  /// fall back to space().distance.
  double distance_from(double t, const Point& x) const;

  /// Exact evaluation parameters for table-backed geodesics (graphs and
  /// ladder waypoints); empty for closed-form kinds.
  std::vector<double> breakpoints() const;

  struct MobiusForm {
    ComplexVec base;  // chart center, model coordinates (disc model for H)
    ComplexVec u;     // unit chart target; curve is phi_base(tanh(t/2) u)
  };
  struct KleinChord {
    RealVec x;
    RealVec dir;   // unit euclidean direction
    double alpha;  // euclidean distance from x back to the boundary
    double beta;   // euclidean distance from x forward to the boundary
  };
  struct Polyline {
    std::vector<double> params;  // cumulative arclength
    std::vector<LadderPoint> pts;
    int ray_rail = 0;  // when a ray: rail sign of the final segment
  };
  struct GraphTable {
    std::vector<double> params;
    std::vector<int> verts;
  };

 private:
  friend Geodesic geodesic_between(const Space&, const Point&, const Point&);
  friend Geodesic geodesic_ray_to(const Space&, const Point&, const Direction&);

  using Rep = std::variant<MobiusForm, KleinChord, Polyline, GraphTable>;
  Geodesic(Space space, double length, Rep rep);

  Space space_;
  double length_;
  Rep rep_;
};

/// Unit-speed segment from x to y realizing the distance.
Geodesic geodesic_between(const Space& space, const Point& x, const Point& y);

/// Unit-speed ray from p converging to the boundary direction xi.
Geodesic geodesic_ray_to(const Space& space, const Point& p, const Direction& xi);

/// at(length/2); requires a segment.
Point midpoint(const Geodesic& g);

}  // namespace horolab

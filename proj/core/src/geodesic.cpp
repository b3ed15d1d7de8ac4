#include "horolab/geodesic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace horolab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double sech2_half(double t) {
  const double u = std::exp(-0.5 * std::abs(t));
  const double s = 2.0 * u / (1.0 + u * u);
  return s * s;
}

ComplexVec model_coords(const Space& space, const Point& x) {
  switch (space.kind()) {
    case SpaceKind::PoincareDisc: return {x.as_complex()};
    case SpaceKind::RightHalfPlane: return {detail::cayley_to_disc(x.as_complex())};
    case SpaceKind::ComplexBall: return x.as_cvec();
    default: throw ArgumentError("space has no Mobius model");
  }
}

Point model_point(const Space& space, ComplexVec z) {
  switch (space.kind()) {
    case SpaceKind::PoincareDisc: return Point::disc(z[0]);
    case SpaceKind::RightHalfPlane:
      return Point::half_plane(detail::cayley_to_half_plane(z[0]));
    case SpaceKind::ComplexBall: return Point::ball(std::move(z));
    default: throw ArgumentError("space has no Mobius model");
  }
}

double vec_norm(const ComplexVec& z) {
  return std::sqrt(std::abs(detail::hermitian(z, z)));
}

double euclid_dist(const RealVec& a, const RealVec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

}  // namespace

Geodesic::Geodesic(Space space, double length, Rep rep)
    : space_(std::move(space)), length_(length), rep_(std::move(rep)) {}

bool Geodesic::is_ray() const { return std::isinf(length_); }

Point Geodesic::at(double t) const {
  t = std::clamp(t, 0.0, length_);
  if (const auto* m = std::get_if<MobiusForm>(&rep_)) {
    const double T = std::tanh(0.5 * t);
    ComplexVec z(m->u.size());
    for (std::size_t i = 0; i < z.size(); ++i) z[i] = T * m->u[i];
    return model_point(space_, detail::mobius_ball(m->base, z));
  }
  if (const auto* k = std::get_if<KleinChord>(&rep_)) {
    const double e = std::exp(-2.0 * t);
    const double w = k->alpha * k->beta * (1.0 - e) / (k->beta * e + k->alpha);
    RealVec p(k->x.size());
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = k->x[i] + w * k->dir[i];
    return Point::klein(std::move(p));
  }
  if (const auto* pl = std::get_if<Polyline>(&rep_)) {
    const auto& ps = pl->params;
    if (t >= ps.back()) {
      const LadderPoint& last = pl->pts.back();
      if (pl->ray_rail != 0)
        return Point::ladder(last.a + (t - ps.back()), static_cast<double>(pl->ray_rail));
      return Point::ladder(last.a, last.b);
    }
    const auto it = std::upper_bound(ps.begin(), ps.end(), t);
    const std::size_t j = std::max<std::size_t>(1, it - ps.begin());
    const double seg = ps[j] - ps[j - 1];
    const double f = seg > 0.0 ? (t - ps[j - 1]) / seg : 0.0;
    const LadderPoint& a = pl->pts[j - 1];
    const LadderPoint& b = pl->pts[j];
    return Point::ladder(a.a + f * (b.a - a.a), a.b + f * (b.b - a.b));
  }
  const auto& tab = std::get<GraphTable>(rep_);
  std::size_t best = 0;
  for (std::size_t i = 1; i < tab.params.size(); ++i)
    if (std::abs(tab.params[i] - t) < std::abs(tab.params[best] - t)) best = i;
  return Point::vertex(tab.verts[best]);
}

double Geodesic::distance_from(double t, const Point& x) const {
  if (const auto* m = std::get_if<MobiusForm>(&rep_)) {
    t = std::clamp(t, 0.0, length_);
    const ComplexVec xh = detail::mobius_ball(m->base, model_coords(space_, x));
    const double T = std::tanh(0.5 * t);
    const double s2 = sech2_half(t);  // = 1 - T^2, exact for any t
    // Split xh against the unit chart direction u: xh = h u + v with v _|_ u.
    // Then |phi_{xh}(T u)|^2 = (|h - T|^2 + |v|^2 (1 - T^2)) / |1 - T h|^2
    // and 1 - |phi|^2 = (1 - |xh|^2)(1 - T^2) / |1 - T h|^2; every term is
    // nonnegative, so nothing cancels as both points approach the boundary.
    const Complex h = detail::hermitian(xh, m->u);
    double v2 = 0.0;
    for (std::size_t i = 0; i < xh.size(); ++i) v2 += std::norm(xh[i] - h * m->u[i]);
    const double num = std::norm(h - T) + v2 * s2;
    const double d2 = std::norm(1.0 - T * h);
    const double f = (1.0 - (std::norm(h) + v2)) * s2;
    if (!(f > 0.0)) throw DomainError("chart point on the boundary");
    const double rho = std::sqrt(num / d2);
    // log((1+rho)/(1-rho)) with 1-rho^2 = f/d2, stable for large t.
    return std::max(0.0, std::log((1.0 + rho) * (1.0 + rho) * d2 / f));
  }
  return space_.distance(at(t), x);
}

std::vector<double> Geodesic::breakpoints() const {
  if (const auto* pl = std::get_if<Polyline>(&rep_)) return pl->params;
  if (const auto* tab = std::get_if<GraphTable>(&rep_)) return tab->params;
  return {};
}

Geodesic geodesic_between(const Space& space, const Point& x, const Point& y) {
  space.require_point(x);
  space.require_point(y);
  switch (space.kind()) {
    case SpaceKind::PoincareDisc:
    case SpaceKind::RightHalfPlane:
    case SpaceKind::ComplexBall: {
      const ComplexVec base = model_coords(space, x);
      ComplexVec m = detail::mobius_ball(base, model_coords(space, y));
      const double rho = vec_norm(m);
      if (rho < 1e-300) {
        ComplexVec u(base.size(), Complex(0.0, 0.0));
        u[0] = 1.0;  // direction is irrelevant for a zero-length segment
        return Geodesic(space, 0.0, Geodesic::MobiusForm{base, std::move(u)});
      }
      for (auto& c : m) c /= rho;
      return Geodesic(space, detail::dist_from_rho(rho),
                      Geodesic::MobiusForm{base, std::move(m)});
    }
    case SpaceKind::KleinEllipsoid: {
      const RealVec& a = x.as_rvec();
      const RealVec& b = y.as_rvec();
      const double len = euclid_dist(a, b);
      if (len == 0.0) {
        RealVec dir(a.size(), 0.0);
        dir[0] = 1.0;
        const auto [tm, tp] = detail::klein_chord(space.klein_shape(), a, dir);
        return Geodesic(space, 0.0, Geodesic::KleinChord{a, dir, -tm, tp});
      }
      RealVec dir(a.size());
      for (std::size_t i = 0; i < a.size(); ++i) dir[i] = (b[i] - a[i]) / len;
      const auto [tm, tp] = detail::klein_chord(space.klein_shape(), a, dir);
      return Geodesic(space, space.distance(x, y),
                      Geodesic::KleinChord{a, dir, -tm, tp});
    }
    case SpaceKind::Ladder: {
      std::vector<LadderPoint> pts;
      const double len = detail::ladder_route(x.as_ladder(), y.as_ladder(), &pts);
      Geodesic::Polyline pl;
      double acc = 0.0;
      for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i > 0) {
          acc += std::abs(pts[i].a - pts[i - 1].a) + std::abs(pts[i].b - pts[i - 1].b);
          if (pl.params.back() == acc) continue;  // drop zero-length hops
        }
        pl.params.push_back(acc);
        pl.pts.push_back(pts[i]);
      }
      return Geodesic(space, len, std::move(pl));
    }
    case SpaceKind::FiniteGraph: {
      const auto path = space.graph_shortest_path(x.as_vertex(), y.as_vertex());
      Geodesic::GraphTable tab;
      for (int v : path) {
        tab.params.push_back(space.graph_distance(x.as_vertex(), v));
        tab.verts.push_back(v);
      }
      return Geodesic(space, tab.params.back(), std::move(tab));
    }
  }
  throw ArgumentError("unknown space kind");
}

Geodesic geodesic_ray_to(const Space& space, const Point& p, const Direction& xi) {
  if (!space.supports_rays())
    throw CapabilityError("geodesic rays are not supported on finite graphs");
  space.require_point(p);
  const Direction dir = space.canonical_direction(xi);
  switch (space.kind()) {
    case SpaceKind::PoincareDisc:
    case SpaceKind::RightHalfPlane:
    case SpaceKind::ComplexBall: {
      ComplexVec target;
      if (space.kind() == SpaceKind::PoincareDisc) {
        target = {dir.as_complex()};
      } else if (space.kind() == SpaceKind::RightHalfPlane) {
        target = {dir.is_infinity() ? Complex(1.0, 0.0)
                                    : detail::cayley_to_disc(dir.as_complex())};
      } else {
        target = dir.as_cvec();
      }
      const ComplexVec base = model_coords(space, p);
      ComplexVec u = detail::mobius_ball(base, target);
      const double n = vec_norm(u);  // = 1 up to rounding
      for (auto& c : u) c /= n;
      return Geodesic(space, kInf, Geodesic::MobiusForm{base, std::move(u)});
    }
    case SpaceKind::KleinEllipsoid: {
      const RealVec& a = p.as_rvec();
      const RealVec bpt = dir.as_rvec();
      const double len = euclid_dist(a, bpt);
      if (len == 0.0) throw DomainError("ray basepoint coincides with the boundary point");
      RealVec d(a.size());
      for (std::size_t i = 0; i < a.size(); ++i) d[i] = (bpt[i] - a[i]) / len;
      const auto [tm, tp] = detail::klein_chord(space.klein_shape(), a, d);
      return Geodesic(space, kInf, Geodesic::KleinChord{a, d, -tm, tp});
    }
    case SpaceKind::Ladder: {
      const LadderPoint q = p.as_ladder();
      const double eps = static_cast<double>(dir.rail_sign());
      Geodesic::Polyline pl;
      pl.ray_rail = dir.rail_sign();
      if (detail::ladder_on_rail(q) && q.b * eps > 0.0) {
        // already on the target rail
        pl.params = {0.0};
        pl.pts = {LadderPoint{q.a, eps}};
      } else if (detail::ladder_on_rung(q, nullptr)) {
        pl.params = {0.0, std::abs(eps - q.b)};
        pl.pts = {q, LadderPoint{q.a, eps}};
      } else {
        // on the opposite rail between rungs: head right to the next rung
        const double c = std::ceil(q.a - 1e-9);
        pl.params = {0.0, c - q.a, c - q.a + 2.0};
        pl.pts = {q, LadderPoint{c, -eps}, LadderPoint{c, eps}};
        if (pl.params[1] == 0.0) {  // started exactly at a junction
          pl.params.erase(pl.params.begin());
          pl.pts.erase(pl.pts.begin());
          pl.params[0] = 0.0;
          pl.params[1] = 2.0;
        }
      }
      return Geodesic(space, kInf, std::move(pl));
    }
    case SpaceKind::FiniteGraph:
      break;
  }
  throw CapabilityError("geodesic rays are not supported on this kind");
}

Point midpoint(const Geodesic& g) {
  if (g.is_ray()) throw ArgumentError("midpoint of a ray is undefined");
  return g.at(0.5 * g.length());
}

}  // namespace horolab

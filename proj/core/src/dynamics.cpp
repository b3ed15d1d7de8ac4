#include "horolab/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <variant>

namespace horolab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNonExpansionSlack = 1e-9;

struct IdentityRule {};
struct MobiusDiscRule {
  Complex a;
  double theta;
};
struct HalfPlaneAffineRule {
  double k;
  Complex c;
};
struct MobiusBallRule {
  ComplexVec a;
  std::vector<ComplexVec> unitary;  // empty = identity
};
struct LadderF1Rule {};
struct LadderF2Rule {};
struct GraphMapRule {
  std::vector<int> table;
};

}  // namespace

struct MapHandle::Impl {
  Space space;
  std::variant<IdentityRule, MobiusDiscRule, HalfPlaneAffineRule, MobiusBallRule,
               LadderF1Rule, LadderF2Rule, GraphMapRule, std::vector<MapHandle>>
      rule;
  std::string name;
  bool closed_inverse = true;

  explicit Impl(Space s) : space(std::move(s)) {}
};

namespace {

ComplexVec unitary_apply(const std::vector<ComplexVec>& U, const ComplexVec& z) {
  if (U.empty()) return z;
  ComplexVec out(z.size(), Complex(0.0, 0.0));
  for (std::size_t i = 0; i < z.size(); ++i)
    for (std::size_t j = 0; j < z.size(); ++j) out[i] += U[i][j] * z[j];
  return out;
}

ComplexVec unitary_adjoint_apply(const std::vector<ComplexVec>& U, const ComplexVec& z) {
  if (U.empty()) return z;
  ComplexVec out(z.size(), Complex(0.0, 0.0));
  for (std::size_t i = 0; i < z.size(); ++i)
    for (std::size_t j = 0; j < z.size(); ++j) out[i] += std::conj(U[j][i]) * z[j];
  return out;
}

Point apply_rule(const MapHandle::Impl& im, const Point& x);

Point apply_composite(const std::vector<MapHandle>& maps, const Point& x) {
  Point cur = x;
  for (const auto& m : maps) cur = m.apply(cur);
  return cur;
}

Point apply_rule(const MapHandle::Impl& im, const Point& x) {
  if (std::holds_alternative<IdentityRule>(im.rule)) return x;
  if (const auto* r = std::get_if<MobiusDiscRule>(&im.rule)) {
    const Complex z = x.as_complex();
    const Complex w =
        std::polar(1.0, r->theta) * (z - r->a) / (1.0 - std::conj(r->a) * z);
    return Point::disc(w);
  }
  if (const auto* r = std::get_if<HalfPlaneAffineRule>(&im.rule))
    return Point::half_plane(r->k * x.as_complex() + r->c);
  if (const auto* r = std::get_if<MobiusBallRule>(&im.rule))
    return Point::ball(unitary_apply(r->unitary, detail::mobius_ball(r->a, x.as_cvec())));
  if (std::holds_alternative<LadderF1Rule>(im.rule)) {
    const LadderPoint& p = x.as_ladder();
    return Point::ladder(p.a + 1.0, 1.0);
  }
  if (std::holds_alternative<LadderF2Rule>(im.rule)) {
    const LadderPoint& p = x.as_ladder();
    return Point::ladder(p.a + 1.0, -p.b);
  }
  if (const auto* r = std::get_if<GraphMapRule>(&im.rule))
    return Point::vertex(r->table.at(static_cast<std::size_t>(x.as_vertex())));
  return apply_composite(std::get<std::vector<MapHandle>>(im.rule), x);
}

void validate_nonexpanding(const MapHandle::Impl& im) {
  const Space& space = im.space;
  if (space.kind() == SpaceKind::FiniteGraph) {
    const int n = space.vertex_count();
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v) {
        const Point fu = apply_rule(im, Point::vertex(u));
        const Point fv = apply_rule(im, Point::vertex(v));
        if (space.distance(fu, fv) >
            space.distance(Point::vertex(u), Point::vertex(v)) + kNonExpansionSlack)
          throw ValidationError("map '" + im.name + "' expands a vertex pair");
      }
    return;
  }
  Rng rng(0x5EEDull);
  const SamplerRegion region;
  for (int i = 0; i < 10000; ++i) {
    const Point x = space.sample(rng, region);
    const Point y = space.sample(rng, region);
    const double dxy = space.distance(x, y);
    const double dfxy = space.distance(apply_rule(im, x), apply_rule(im, y));
    if (dfxy > dxy + kNonExpansionSlack)
      throw ValidationError("map '" + im.name + "' expands a sampled pair by " +
                            std::to_string(dfxy - dxy));
  }
}

void require_kind(const Space& s, SpaceKind k, const char* what) {
  if (s.kind() != k) throw ArgumentError(std::string(what) + ": wrong space kind");
}

}  // namespace

MapHandle MapHandle::identity(const Space& space) {
  auto impl = std::make_shared<Impl>(space);
  impl->rule = IdentityRule{};
  impl->name = "identity";
  return MapHandle(std::move(impl));
}

MapHandle MapHandle::mobius_disc(const Space& space, Complex a, double theta) {
  require_kind(space, SpaceKind::PoincareDisc, "mobius_disc");
  if (!(std::abs(a) < 1.0)) throw ArgumentError("mobius_disc parameter |a| must be < 1");
  auto impl = std::make_shared<Impl>(space);
  impl->rule = MobiusDiscRule{a, theta};
  impl->name = "mobius_disc";
  validate_nonexpanding(*impl);
  return MapHandle(std::move(impl));
}

MapHandle MapHandle::disc_hyperbolic(const Space& space, double multiplier) {
  require_kind(space, SpaceKind::PoincareDisc, "disc_hyperbolic");
  if (!(multiplier > 0.0)) throw ArgumentError("multiplier must be > 0");
  const double r = (multiplier - 1.0) / (multiplier + 1.0);
  auto impl = std::make_shared<Impl>(space);
  impl->rule = MobiusDiscRule{Complex(-r, 0.0), 0.0};
  impl->name = "disc_hyperbolic";
  validate_nonexpanding(*impl);
  return MapHandle(std::move(impl));
}

MapHandle MapHandle::half_plane_affine(const Space& space, double k, Complex c) {
  require_kind(space, SpaceKind::RightHalfPlane, "half_plane_affine");
  if (!(k > 0.0)) throw ArgumentError("half_plane_affine needs k > 0");
  if (c.real() < 0.0) throw ArgumentError("half_plane_affine needs Re c >= 0");
  auto impl = std::make_shared<Impl>(space);
  impl->rule = HalfPlaneAffineRule{k, c};
  impl->name = "half_plane_affine";
  validate_nonexpanding(*impl);
  return MapHandle(std::move(impl));
}

MapHandle MapHandle::mobius_ball(const Space& space, ComplexVec a,
                                 std::vector<ComplexVec> unitary) {
  require_kind(space, SpaceKind::ComplexBall, "mobius_ball");
  const int q = space.dimension();
  if (static_cast<int>(a.size()) != q) throw ArgumentError("mobius_ball: bad center size");
  if (!(std::sqrt(std::abs(detail::hermitian(a, a))) < 1.0))
    throw ArgumentError("mobius_ball: |a| must be < 1");
  if (!unitary.empty()) {
    if (static_cast<int>(unitary.size()) != q)
      throw ArgumentError("mobius_ball: unitary has wrong size");
    for (const auto& row : unitary)
      if (static_cast<int>(row.size()) != q)
        throw ArgumentError("mobius_ball: unitary has wrong size");
    for (int i = 0; i < q; ++i)
      for (int j = 0; j < q; ++j) {
        Complex s = 0.0;
        for (int l = 0; l < q; ++l) s += unitary[l][i] * std::conj(unitary[l][j]);
        if (std::abs(s - (i == j ? 1.0 : 0.0)) > 1e-9)
          throw ArgumentError("mobius_ball: matrix is not unitary");
      }
  }
  auto impl = std::make_shared<Impl>(space);
  impl->rule = MobiusBallRule{std::move(a), std::move(unitary)};
  impl->name = "mobius_ball";
  validate_nonexpanding(*impl);
  return MapHandle(std::move(impl));
}

MapHandle MapHandle::ladder_f1(const Space& space) {
  require_kind(space, SpaceKind::Ladder, "ladder_f1");
  auto impl = std::make_shared<Impl>(space);
  impl->rule = LadderF1Rule{};
  impl->name = "ladder_f1";
  impl->closed_inverse = true;  // preimage on the top rail, where it exists
  validate_nonexpanding(*impl);
  return MapHandle(std::move(impl));
}

MapHandle MapHandle::ladder_f2(const Space& space) {
  require_kind(space, SpaceKind::Ladder, "ladder_f2");
  auto impl = std::make_shared<Impl>(space);
  impl->rule = LadderF2Rule{};
  impl->name = "ladder_f2";
  validate_nonexpanding(*impl);
  return MapHandle(std::move(impl));
}

MapHandle MapHandle::graph_map(const Space& space, std::vector<int> table) {
  require_kind(space, SpaceKind::FiniteGraph, "graph_map");
  const int n = space.vertex_count();
  if (static_cast<int>(table.size()) != n)
    throw ArgumentError("graph_map: table size must equal the vertex count");
  for (int v : table)
    if (v < 0 || v >= n) throw ArgumentError("graph_map: table entry out of range");
  auto impl = std::make_shared<Impl>(space);
  impl->rule = GraphMapRule{std::move(table)};
  impl->name = "graph_map";
  validate_nonexpanding(*impl);
  return MapHandle(std::move(impl));
}

MapHandle MapHandle::composite(std::vector<MapHandle> maps) {
  if (maps.empty()) throw ArgumentError("composite of zero maps");
  for (std::size_t i = 1; i < maps.size(); ++i)
    if (!maps[i].space().same_as(maps[0].space()))
      throw ArgumentError("composite maps live in different spaces");
  auto impl = std::make_shared<Impl>(maps[0].space());
  impl->closed_inverse = true;
  for (const auto& m : maps) impl->closed_inverse &= m.has_closed_inverse();
  impl->rule = std::move(maps);
  impl->name = "composite";
  validate_nonexpanding(*impl);
  return MapHandle(std::move(impl));
}

Point MapHandle::apply(const Point& x) const { return apply_rule(*impl_, x); }
const Space& MapHandle::space() const { return impl_->space; }
const std::string& MapHandle::rule_name() const { return impl_->name; }

bool MapHandle::has_closed_inverse() const { return impl_->closed_inverse; }

std::optional<Point> MapHandle::inverse(const Point& x) const {
  const auto& im = *impl_;
  if (std::holds_alternative<IdentityRule>(im.rule)) return x;
  if (const auto* r = std::get_if<MobiusDiscRule>(&im.rule)) {
    const Complex phi = x.as_complex() * std::polar(1.0, -r->theta);
    return Point::disc((phi + r->a) / (1.0 + std::conj(r->a) * phi));
  }
  if (const auto* r = std::get_if<HalfPlaneAffineRule>(&im.rule)) {
    const Complex w = (x.as_complex() - r->c) / r->k;
    if (!(w.real() > 0.0)) return std::nullopt;
    return Point::half_plane(w);
  }
  if (const auto* r = std::get_if<MobiusBallRule>(&im.rule))
    return Point::ball(detail::mobius_ball(r->a, unitary_adjoint_apply(r->unitary, x.as_cvec())));
  if (std::holds_alternative<LadderF1Rule>(im.rule)) {
    const LadderPoint& p = x.as_ladder();
    if (std::abs(p.b - 1.0) > 1e-9 || p.a < 1.0 - 1e-12) return std::nullopt;
    return Point::ladder(p.a - 1.0, 1.0);  // the on-rail preimage
  }
  if (std::holds_alternative<LadderF2Rule>(im.rule)) {
    const LadderPoint& p = x.as_ladder();
    if (p.a < 1.0 - 1e-12) return std::nullopt;
    return Point::ladder(p.a - 1.0, -p.b);
  }
  if (const auto* r = std::get_if<GraphMapRule>(&im.rule)) {
    for (std::size_t u = 0; u < r->table.size(); ++u)
      if (r->table[u] == x.as_vertex()) return Point::vertex(static_cast<int>(u));
    return std::nullopt;
  }
  const auto& maps = std::get<std::vector<MapHandle>>(im.rule);
  if (!im.closed_inverse) throw SolverError("composite has no closed-form inverse");
  Point cur = x;
  for (auto it = maps.rbegin(); it != maps.rend(); ++it) {
    auto pre = it->inverse(cur);
    if (!pre) return std::nullopt;
    cur = *pre;
  }
  return cur;
}

namespace {

/// Iterates stay representable: stop before coordinates collapse onto the
/// boundary and distances lose meaning.
bool representable(const Space& space, const Point& x) {
  switch (space.kind()) {
    case SpaceKind::PoincareDisc:
      return 1.0 - std::norm(x.as_complex()) > 1e-8;
    case SpaceKind::ComplexBall: {
      const ComplexVec& z = x.as_cvec();
      return 1.0 - std::abs(detail::hermitian(z, z)) > 1e-8;
    }
    case SpaceKind::RightHalfPlane: {
      const Complex w = x.as_complex();
      return w.real() > 1e-8 && std::abs(w) < 1e8;
    }
    case SpaceKind::KleinEllipsoid:
      return detail::klein_form(space.klein_shape(), x.as_rvec()) < 1.0 - 1e-8;
    default:
      return true;
  }
}

OrbitClass classify(const Space& space, const std::vector<Point>& pts,
                    const OrbitConfig& cfg) {
  const std::size_t n = pts.size();
  if (n < 8) return OrbitClass::Inconclusive;
  std::vector<double> dist0(n);
  for (std::size_t i = 0; i < n; ++i) dist0[i] = space.distance(pts[0], pts[i]);
  double r32 = 0.0;
  for (std::size_t i = 0; i < std::min<std::size_t>(32, n); ++i)
    r32 = std::max(r32, dist0[i]);

  int revisits = 0;
  for (std::size_t i = n / 2; i < n; ++i)
    if (dist0[i] <= r32) ++revisits;
  if (revisits >= cfg.bounded_revisits) return OrbitClass::Bounded;

  double tail_min = kInf;
  for (std::size_t i = (3 * n) / 4; i < n; ++i) tail_min = std::min(tail_min, dist0[i]);
  if (tail_min > std::max(r32 + cfg.diverge_margin, cfg.diverge_floor))
    return OrbitClass::Diverging;
  return OrbitClass::Inconclusive;
}

void fill_step_tables(OrbitRecord& rec, const Space& space) {
  rec.step_ms = {1, 2, 4, 8};
  rec.steps.assign(rec.step_ms.size(), {});
  for (std::size_t k = 0; k < rec.step_ms.size(); ++k) {
    const std::size_t m = static_cast<std::size_t>(rec.step_ms[k]);
    if (rec.points.size() <= m) continue;
    auto& tab = rec.steps[k];
    tab.reserve(rec.points.size() - m);
    for (std::size_t i = 0; i + m < rec.points.size(); ++i)
      tab.push_back(space.distance(rec.points[i], rec.points[i + m]));
  }
}

Direction terminal_direction(const Space& space, const Point& x) {
  switch (space.kind()) {
    case SpaceKind::PoincareDisc: {
      const Complex z = x.as_complex();
      if (std::abs(z) < 1e-12) throw ArgumentError("terminal point at the origin");
      return Direction::circle(z / std::abs(z));
    }
    case SpaceKind::ComplexBall: {
      ComplexVec z = x.as_cvec();
      const double n = std::sqrt(std::abs(detail::hermitian(z, z)));
      if (n < 1e-12) throw ArgumentError("terminal point at the origin");
      for (auto& c : z) c /= n;
      return Direction::sphere(std::move(z));
    }
    case SpaceKind::RightHalfPlane: {
      const Complex w = x.as_complex();
      if (std::abs(w) > 1e4) return Direction::infinity();
      return Direction::boundary_value(Complex(0.0, w.imag()));
    }
    case SpaceKind::KleinEllipsoid: {
      RealVec v = x.as_rvec();
      const double q = detail::klein_form(space.klein_shape(), v);
      if (q < 1e-12) throw ArgumentError("terminal point at the center");
      for (auto& c : v) c /= std::sqrt(q);
      return Direction::ellipsoid(std::move(v));
    }
    case SpaceKind::Ladder:
      return Direction::rail(+1);  // the single end of the ladder
    case SpaceKind::FiniteGraph:
      break;
  }
  throw CapabilityError("no boundary directions for this kind");
}

double direction_distance(const Space& space, const Direction& a, const Direction& b) {
  switch (space.kind()) {
    case SpaceKind::PoincareDisc:
      return std::abs(a.as_complex() - b.as_complex());
    case SpaceKind::ComplexBall: {
      const ComplexVec& u = a.as_cvec();
      const ComplexVec& v = b.as_cvec();
      double s = 0.0;
      for (std::size_t i = 0; i < u.size(); ++i) s += std::norm(u[i] - v[i]);
      return std::sqrt(s);
    }
    case SpaceKind::RightHalfPlane: {
      if (a.is_infinity() && b.is_infinity()) return 0.0;
      if (a.is_infinity() || b.is_infinity()) return kInf;
      return std::abs(a.as_complex() - b.as_complex());
    }
    case SpaceKind::KleinEllipsoid: {
      const RealVec& u = a.as_rvec();
      const RealVec& v = b.as_rvec();
      double s = 0.0;
      for (std::size_t i = 0; i < u.size(); ++i) s += (u[i] - v[i]) * (u[i] - v[i]);
      return std::sqrt(s);
    }
    case SpaceKind::Ladder:
      return 0.0;  // single Gromov end
    case SpaceKind::FiniteGraph:
      break;
  }
  throw CapabilityError("no boundary directions for this kind");
}

double ray_cap(const Space& space, double requested) {
  switch (space.kind()) {
    case SpaceKind::PoincareDisc:
    case SpaceKind::RightHalfPlane:
    case SpaceKind::ComplexBall:
      return std::min(requested, 20.0);
    case SpaceKind::KleinEllipsoid:
      return std::min(requested, 10.0);
    default:
      return requested;
  }
}

}  // namespace

const char* to_string(OrbitClass c) {
  switch (c) {
    case OrbitClass::Bounded: return "bounded";
    case OrbitClass::Diverging: return "diverging";
    case OrbitClass::Inconclusive: return "inconclusive";
  }
  return "?";
}

OrbitRecord iterate(const MapHandle& f, const Point& x, int n,
                    const OrbitConfig& config) {
  if (n < 0) throw ArgumentError("orbit length must be >= 0");
  f.space().require_point(x);
  OrbitRecord rec;
  rec.forward = true;
  rec.points.reserve(static_cast<std::size_t>(n) + 1);
  rec.points.push_back(x);
  for (int i = 0; i < n; ++i) {
    Point next = f.apply(rec.points.back());
    if (!representable(f.space(), next)) {
      rec.truncated = true;
      break;
    }
    rec.points.push_back(std::move(next));
  }
  fill_step_tables(rec, f.space());
  rec.classification = classify(f.space(), rec.points, config);
  return rec;
}

double forward_step(const MapHandle& f, const Point& x, int m, int tail_length) {
  if (m < 1) throw ArgumentError("step order m must be >= 1");
  if (tail_length < 1) throw ArgumentError("tail length must be >= 1");
  const Space& space = f.space();
  std::deque<Point> window;
  window.push_back(x);
  Point cur = x;
  for (int i = 0; i < m; ++i) {
    cur = f.apply(cur);
    if (!representable(space, cur)) break;
    window.push_back(cur);
  }
  if (static_cast<int>(window.size()) <= m)
    throw ConvergenceError("orbit left the representable region before one step");
  double value = space.distance(window.front(), window.back());
  for (int i = 0; i < tail_length; ++i) {
    cur = f.apply(cur);
    if (!representable(space, cur)) break;
    window.push_back(cur);
    window.pop_front();
    const double next = space.distance(window.front(), window.back());
    if (next > value + kNonExpansionSlack)
      throw ValidationError("forward steps increased: map is not non-expanding");
    value = next;
  }
  return value;
}

DivergenceRate divergence_rate(const MapHandle& f, const Point& x, long long horizon) {
  if (horizon < 64) throw ArgumentError("divergence_rate needs horizon >= 64");
  const Space& space = f.space();
  space.require_point(x);
  std::deque<Point> ring;  // last up-to-17 points
  ring.push_back(x);
  Point cur = x;
  long long eff = 0;
  for (long long i = 0; i < horizon; ++i) {
    Point next = f.apply(cur);
    if (!representable(space, next)) break;
    cur = std::move(next);
    ++eff;
    ring.push_back(cur);
    if (ring.size() > 17) ring.pop_front();
  }
  if (eff < 16) throw ConvergenceError("orbit left the representable region too early");

  DivergenceRate out;
  out.effective_horizon = eff;
  out.primary = space.distance(x, cur) / static_cast<double>(eff);
  out.secondary = kInf;
  const std::size_t last = ring.size() - 1;
  for (std::size_t m = 1; m <= std::min<std::size_t>(16, last); ++m)
    out.secondary =
        std::min(out.secondary, space.distance(ring[last - m], ring[last]) / m);
  out.c_estimate = std::min(out.primary, out.secondary);
  out.discrepancy = std::abs(out.primary - out.secondary);
  out.warning = out.discrepancy > 0.05 * (1.0 + std::abs(out.c_estimate));
  return out;
}

MinDisplacement minimal_displacement(const MapHandle& f, const SamplerRegion& region,
                                     std::uint64_t n, std::uint64_t seed) {
  if (n < 1) throw ArgumentError("minimal_displacement needs n >= 1");
  Rng rng(seed);
  const Space& space = f.space();
  MinDisplacement out;
  out.tau_upper = kInf;
  for (std::uint64_t i = 0; i < n; ++i) {
    const Point x = space.sample(rng, region);
    const double d = space.distance(x, f.apply(x));
    if (d < out.tau_upper) {
      out.tau_upper = d;
      out.argmin = x;
    }
  }
  return out;
}

MinDisplacement minimal_displacement_ladder_grid(const MapHandle& f, double extent,
                                                 double resolution) {
  require_kind(f.space(), SpaceKind::Ladder, "minimal_displacement_ladder_grid");
  if (!(resolution > 0.0)) throw ArgumentError("resolution must be > 0");
  const Space& space = f.space();
  MinDisplacement out;
  out.tau_upper = kInf;
  auto consider = [&](double a, double b) {
    const Point x = Point::ladder(a, b);
    const double d = space.distance(x, f.apply(x));
    if (d < out.tau_upper) {
      out.tau_upper = d;
      out.argmin = x;
    }
  };
  for (double a = 0.0; a <= extent + 1e-12; a += resolution) {
    consider(a, 1.0);
    consider(a, -1.0);
  }
  for (long long k = 0; k <= static_cast<long long>(std::floor(extent)); ++k)
    for (double b = -1.0; b <= 1.0 + 1e-12; b += resolution)
      consider(static_cast<double>(k), std::min(b, 1.0));
  return out;
}

DenjoyWolffResult denjoy_wolff(const MapHandle& f, const std::vector<Point>& starts,
                               int horizon, double gromov_threshold,
                               double agreement_threshold) {
  if (starts.empty()) throw ArgumentError("denjoy_wolff needs at least one start");
  const Space& space = f.space();
  if (!space.supports_rays())
    throw CapabilityError("denjoy_wolff needs a space with boundary directions");

  DenjoyWolffResult out;
  std::vector<Point> terminals;
  for (const auto& s : starts) {
    const OrbitRecord rec = iterate(f, s, horizon);
    if (rec.classification != OrbitClass::Diverging)
      throw ArgumentError("denjoy_wolff precondition: orbit from a start is not diverging");
    terminals.push_back(rec.points.back());
    out.per_start.push_back(terminal_direction(space, rec.points.back()));
  }

  out.agreement = 0.0;
  out.min_tail_gromov = kInf;
  for (std::size_t i = 0; i < terminals.size(); ++i)
    for (std::size_t j = i + 1; j < terminals.size(); ++j) {
      out.agreement = std::max(
          out.agreement, direction_distance(space, out.per_start[i], out.per_start[j]));
      out.min_tail_gromov = std::min(
          out.min_tail_gromov,
          gromov_product(space, terminals[i], terminals[j], starts[0]));
    }
  if (terminals.size() == 1) out.min_tail_gromov = kInf;
  out.direction = out.per_start[0];
  const bool common_limit =
      terminals.size() == 1 || out.min_tail_gromov > gromov_threshold;
  out.status = (common_limit && out.agreement <= agreement_threshold)
                   ? Outcome::Pass
                   : Outcome::Inconclusive;
  return out;
}

DilationEstimate dilation(const MapHandle& f, const Direction& eta, const Point& p,
                          const DilationConfig& config) {
  const Space& space = f.space();
  space.require_point(p);
  const Direction dir = space.canonical_direction(eta);
  const Geodesic ray = geodesic_ray_to(space, p, dir);
  const double cap = ray_cap(space, config.horizon);

  Rng rng(config.seed);
  std::vector<double> ts, values;
  auto value_of = [&](const Point& z) {
    return space.distance(z, p) - space.distance(f.apply(z), p);
  };
  for (double t = config.step; t <= cap + 1e-12; t += config.step) {
    const Point z = ray.at(t);
    ts.push_back(t);
    values.push_back(value_of(z));
    for (int j = 0; j < config.jitter_companions; ++j) {
      const double r = 0.25 + 0.15 * j;
      ts.push_back(t);
      values.push_back(value_of(detail::jitter_point(space, z, r, rng)));
    }
    if (space.kind() == SpaceKind::Ladder) {
      // The single end is approached along both rails; the liminf needs them.
      ts.push_back(t);
      values.push_back(value_of(Point::ladder(t, 1.0)));
      ts.push_back(t);
      values.push_back(value_of(Point::ladder(t, -1.0)));
    }
  }

  DilationEstimate out;
  out.lower_bound = -space.distance(p, f.apply(p));
  double tail_min = kInf, tail_max = -kInf, mid_min = kInf;
  const double t_tail = 0.75 * cap, t_mid = 0.5 * cap;
  int tail_count = 0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (ts[i] > t_tail) {
      tail_min = std::min(tail_min, values[i]);
      tail_max = std::max(tail_max, values[i]);
      ++tail_count;
    } else if (ts[i] > t_mid) {
      mid_min = std::min(mid_min, values[i]);
    }
  }
  out.log_lambda = tail_min;
  out.jitter_spread = tail_max - tail_min;
  out.tail_points = tail_count;
  out.status = (std::abs(tail_min - mid_min) <= config.stall_tolerance)
                   ? Outcome::Pass
                   : Outcome::Inconclusive;
  if (out.log_lambda < out.lower_bound - 1e-6)
    throw ValidationError("dilation fell below -d(p, f(p)): inconsistent map");
  out.log_lambda = std::max(out.log_lambda, out.lower_bound) + 0.0;
  return out;
}

RegionMembership region_membership(const GeodesicRegion& region, const Point& x) {
  const Geodesic& ray = region.ray;
  ray.space().require_point(x);
  const double d0 = ray.distance_from(0.0, x);
  double hi = 2.0 * d0 + 1.0;
  if (!ray.is_ray()) hi = std::min(hi, ray.length());

  auto eval = [&](double t) { return ray.distance_from(t, x); };
  const int cells = std::max(64, std::min(16384, static_cast<int>(hi / 0.2) + 1));
  double best_t = 0.0, best_v = d0;
  for (int i = 0; i <= cells; ++i) {
    const double t = hi * static_cast<double>(i) / cells;
    const double v = eval(t);
    if (v < best_v) {
      best_v = v;
      best_t = t;
    }
  }
  const double cell = hi / cells;
  double a = std::max(0.0, best_t - cell), b = std::min(hi, best_t + cell);
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
  double f1 = eval(x1), f2 = eval(x2);
  for (int it = 0; it < 90 && (b - a) > 1e-12; ++it) {
    if (f1 <= f2) {
      b = x2; x2 = x1; f2 = f1;
      x1 = b - phi * (b - a);
      f1 = eval(x1);
    } else {
      a = x1; x1 = x2; f1 = f2;
      x2 = a + phi * (b - a);
      f2 = eval(x2);
    }
  }
  RegionMembership out;
  out.argmin_t = 0.5 * (a + b);
  out.inf_distance = eval(out.argmin_t);
  if (best_v < out.inf_distance) {
    out.inf_distance = best_v;
    out.argmin_t = best_t;
  }
  if (d0 <= out.inf_distance) {
    out.inf_distance = d0;
    out.argmin_t = 0.0;
  }
  out.member = out.inf_distance < region.R;
  return out;
}

Outcome region_busemann_divergence(const GeodesicRegion& region,
                                   const std::vector<Point>& seq, const Point& p,
                                   const std::vector<double>& bounds) {
  if (seq.empty()) throw ArgumentError("empty sequence");
  for (const auto& x : seq)
    if (!region_membership(region, x).member)
      throw ArgumentError("sequence point outside the geodesic region");
  std::vector<double> b_values;
  try {
    for (const auto& x : seq) b_values.push_back(busemann(region.ray, x, p));
  } catch (const ConvergenceError&) {
    return Outcome::Inconclusive;
  }
  // suffix maxima: the value must fall and STAY below each rehearsed bound
  std::vector<double> suffix(b_values.size());
  double run = -kInf;
  for (std::size_t i = b_values.size(); i-- > 0;) {
    run = std::max(run, b_values[i]);
    suffix[i] = run;
  }
  for (double bound : bounds) {
    bool crossed = false;
    for (double s : suffix)
      if (s < bound) {
        crossed = true;
        break;
      }
    if (!crossed) return Outcome::Inconclusive;
  }
  return Outcome::Pass;
}

namespace {

/// Terminal image points of region-constrained sequences pushed through f.
std::vector<Point> pushed_region_tails(const MapHandle& f, const Geodesic& ray,
                                       int sequences, double cap, Rng& rng) {
  std::vector<Point> tails;
  for (int i = 0; i < sequences; ++i) {
    const double radius = 0.2 + 1.3 * rng.uniform();
    Point q = ray.at(cap);
    if (i > 0) q = detail::jitter_point(f.space(), q, radius, rng);
    tails.push_back(f.apply(q));
  }
  return tails;
}

}  // namespace

BrfpResult brfp_check(const MapHandle& f, const Direction& eta, const Point& p,
                      const DilationConfig& config) {
  const Space& space = f.space();
  const Direction dir = space.canonical_direction(eta);
  BrfpResult out;
  const DilationEstimate dil = dilation(f, dir, p, config);
  out.log_dilation = dil.log_lambda;
  if (dil.status != Outcome::Pass) {
    out.status = Outcome::Inconclusive;
    return out;
  }
  const Geodesic ray = geodesic_ray_to(space, p, dir);
  const double cap = ray_cap(space, 14.0);
  Rng rng(config.seed + 1);
  const auto tails = pushed_region_tails(f, ray, 16, cap, rng);
  double score = kInf;
  for (const auto& y : tails)
    score = std::min(score, gromov_product(space, y, ray.at(cap), p));
  out.limit_score = score;
  out.is_brfp = score > 5.0;
  out.status = Outcome::Pass;
  return out;
}

JuliaResult julia_check(const MapHandle& f, const Direction& eta, const Point& p,
                        double R, const JuliaConfig& config) {
  if (!(R > 0.0)) throw ArgumentError("julia_check needs R > 0");
  const Space& space = f.space();
  const Direction dir = space.canonical_direction(eta);

  JuliaResult out;
  DilationConfig dil_cfg;
  dil_cfg.seed = config.seed;
  const DilationEstimate dil = dilation(f, dir, p, dil_cfg);
  out.log_lambda = dil.log_lambda;
  if (dil.status != Outcome::Pass) {
    out.status = Outcome::Inconclusive;
    return out;
  }

  // xi = geodesic limit of f at eta, estimated from pushed region sequences.
  const Geodesic ray_eta = geodesic_ray_to(space, p, dir);
  const double cap = ray_cap(space, 14.0);
  Rng rng(config.seed);
  const auto tails = pushed_region_tails(f, ray_eta, config.limit_sequences, cap, rng);
  double cluster = kInf;
  for (std::size_t i = 0; i < tails.size(); ++i)
    for (std::size_t j = i + 1; j < tails.size(); ++j)
      cluster = std::min(cluster, gromov_product(space, tails[i], tails[j], p));
  if (tails.size() > 1 && cluster <= 5.0) {
    out.status = Outcome::Inconclusive;  // images do not share a Gromov limit
    return out;
  }
  std::size_t deepest = 0;
  double deepest_d = -kInf;
  for (std::size_t i = 0; i < tails.size(); ++i) {
    const double d = space.distance(tails[i], p);
    if (d > deepest_d) {
      deepest_d = d;
      deepest = i;
    }
  }
  Direction xi = terminal_direction(space, tails[deepest]);
  if (direction_distance(space, xi, dir) <= 1e-3) {
    xi = dir;  // finite-horizon resolution: snap to the hypothesis eta
    out.xi_snapped_to_eta = true;
  }

  const Horofunction h_eta = busemann_handle(ray_eta, p, 1e-9);
  const Horofunction h_xi =
      out.xi_snapped_to_eta
          ? h_eta
          : busemann_handle(geodesic_ray_to(space, p, xi), p, 1e-9);

  const double log_R = std::log(R);
  const double bound = std::log(R) + out.log_lambda;
  std::uint64_t accepted = 0, attempts = 0;
  const std::uint64_t max_attempts = 200 * config.samples;
  double worst = -kInf;
  while (accepted < config.samples && attempts < max_attempts) {
    ++attempts;
    const Point x = space.sample(rng, config.box);
    if (!(h_eta(x) < log_R)) continue;
    ++accepted;
    const double margin = h_xi(f.apply(x)) - bound;
    if (margin > worst) {
      worst = margin;
      out.worst_offender = x;
    }
    if (margin > config.slack) ++out.violations;
  }
  if (accepted < config.samples)
    throw SamplingError("horoball sampler starved: " + std::to_string(accepted) +
                        " of " + std::to_string(config.samples) + " samples");
  out.samples = accepted;
  out.worst_margin = worst;
  out.status = (out.violations == 0) ? Outcome::Pass : Outcome::Fail;
  return out;
}

namespace {

RealVec pack_point(const Space& space, const Point& x) {
  switch (space.kind()) {
    case SpaceKind::PoincareDisc:
    case SpaceKind::RightHalfPlane: {
      const Complex z = x.as_complex();
      return {z.real(), z.imag()};
    }
    case SpaceKind::ComplexBall: {
      RealVec out;
      for (const auto& c : x.as_cvec()) {
        out.push_back(c.real());
        out.push_back(c.imag());
      }
      return out;
    }
    case SpaceKind::KleinEllipsoid:
      return x.as_rvec();
    default:
      throw SolverError("numeric preimages need continuous coordinates");
  }
}

std::optional<Point> unpack_point(const Space& space, const RealVec& v) {
  Point p;
  switch (space.kind()) {
    case SpaceKind::PoincareDisc:
      p = Point::disc(Complex(v[0], v[1]));
      break;
    case SpaceKind::RightHalfPlane:
      p = Point::half_plane(Complex(v[0], v[1]));
      break;
    case SpaceKind::ComplexBall: {
      ComplexVec z(v.size() / 2);
      for (std::size_t i = 0; i < z.size(); ++i) z[i] = Complex(v[2 * i], v[2 * i + 1]);
      p = Point::ball(std::move(z));
      break;
    }
    case SpaceKind::KleinEllipsoid:
      p = Point::klein(v);
      break;
    default:
      return std::nullopt;
  }
  if (!space.contains(p)) return std::nullopt;
  return p;
}

/// Nelder-Mead over the packed chart, with +inf outside the domain.
std::optional<Point> numeric_preimage(const MapHandle& f, const Point& target,
                                      const BackwardConfig& cfg, Rng& rng) {
  const Space& space = f.space();
  auto objective = [&](const RealVec& v) {
    const auto pt = unpack_point(space, v);
    if (!pt) return 1e100;
    return space.distance(f.apply(*pt), target);
  };
  const RealVec center = pack_point(space, target);
  const std::size_t dim = center.size();

  double best_val = kInf;
  RealVec best;
  for (int start = 0; start < cfg.multistarts; ++start) {
    RealVec s0 = center;
    if (start > 0)
      for (auto& c : s0) c += 0.3 * rng.normal() / (1.0 + 0.5 * start);
    // initial simplex
    std::vector<RealVec> simplex(dim + 1, s0);
    std::vector<double> fv(dim + 1);
    for (std::size_t i = 0; i < dim; ++i) simplex[i + 1][i] += 0.15;
    for (std::size_t i = 0; i <= dim; ++i) fv[i] = objective(simplex[i]);
    for (int it = 0; it < 400 * static_cast<int>(dim); ++it) {
      // order
      std::vector<std::size_t> idx(dim + 1);
      for (std::size_t i = 0; i <= dim; ++i) idx[i] = i;
      std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return fv[a] < fv[b]; });
      if (fv[idx[0]] < 0.05 * cfg.residual_tolerance) break;
      RealVec centroid(dim, 0.0);
      for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t d = 0; d < dim; ++d) centroid[d] += simplex[idx[i]][d] / dim;
      auto blend = [&](double coef) {
        RealVec v(dim);
        for (std::size_t d = 0; d < dim; ++d)
          v[d] = centroid[d] + coef * (simplex[idx[dim]][d] - centroid[d]);
        return v;
      };
      const RealVec refl = blend(-1.0);
      const double fr = objective(refl);
      if (fr < fv[idx[0]]) {
        const RealVec expd = blend(-2.0);
        const double fe = objective(expd);
        if (fe < fr) {
          simplex[idx[dim]] = expd;
          fv[idx[dim]] = fe;
        } else {
          simplex[idx[dim]] = refl;
          fv[idx[dim]] = fr;
        }
      } else if (fr < fv[idx[dim - 1]]) {
        simplex[idx[dim]] = refl;
        fv[idx[dim]] = fr;
      } else {
        const RealVec contr = blend(0.5);
        const double fc = objective(contr);
        if (fc < fv[idx[dim]]) {
          simplex[idx[dim]] = contr;
          fv[idx[dim]] = fc;
        } else {
          for (std::size_t i = 1; i <= dim; ++i) {
            for (std::size_t d = 0; d < dim; ++d)
              simplex[idx[i]][d] =
                  simplex[idx[0]][d] + 0.5 * (simplex[idx[i]][d] - simplex[idx[0]][d]);
            fv[idx[i]] = objective(simplex[idx[i]]);
          }
        }
      }
    }
    for (std::size_t i = 0; i <= dim; ++i)
      if (fv[i] < best_val) {
        best_val = fv[i];
        best = simplex[i];
      }
  }
  if (best_val > cfg.residual_tolerance) return std::nullopt;
  return unpack_point(space, best);
}

}  // namespace

OrbitRecord backward_orbit(const MapHandle& f, const Point& x0, int n,
                           const BackwardConfig& config) {
  if (n < 0) throw ArgumentError("orbit length must be >= 0");
  const Space& space = f.space();
  space.require_point(x0);
  Rng rng(config.seed);
  OrbitRecord rec;
  rec.forward = false;
  rec.points.push_back(x0);
  const bool closed = f.has_closed_inverse() && !config.force_numeric;
  for (int k = 0; k < n; ++k) {
    std::optional<Point> pre;
    if (closed) {
      pre = f.inverse(rec.points.back());
    } else {
      pre = numeric_preimage(f, rec.points.back(), config, rng);
      if (!pre)
        throw SolverError("numeric preimage residual above tolerance at step " +
                          std::to_string(k));
    }
    if (!pre) {
      rec.truncated = true;
      break;
    }
    rec.points.push_back(std::move(*pre));
  }
  fill_step_tables(rec, space);
  // backward m-steps are non-decreasing for a non-expanding map
  const double tol = closed ? kNonExpansionSlack : 1e-6;
  for (const auto& tab : rec.steps)
    for (std::size_t i = 1; i < tab.size(); ++i)
      if (tab[i] < tab[i - 1] - tol)
        throw ValidationError("backward steps decreased: inconsistent preimages");
  if (!rec.steps.empty() && rec.steps[0].size() >= 3) {
    const auto& s1 = rec.steps[0];
    rec.sigma1_tail = s1.back();
    rec.bounded_step_stable =
        std::abs(s1[s1.size() - 1] - s1[s1.size() - 3]) <= 1e-6 * (1.0 + s1.back());
  }
  rec.classification = classify(space, rec.points, {});
  return rec;
}

QuasiGeodesicCertificate orbit_quasigeodesic_check(const Space& space,
                                                   const OrbitRecord& orbit,
                                                   double c_estimate) {
  if (!(c_estimate > 0.0))
    throw ArgumentError("orbit quasi-geodesic check requires c > 0");
  if (orbit.points.size() < 2) throw ArgumentError("orbit too short");
  double A;
  if (orbit.forward) {
    A = std::max(1.0 / c_estimate,
                 space.distance(orbit.points[0], orbit.points[1]));
  } else {
    double sigma1 = 0.0;
    if (!orbit.steps.empty())
      for (double v : orbit.steps[0]) sigma1 = std::max(sigma1, v);
    A = std::max(1.0 / c_estimate, sigma1);
  }
  A = std::max(1.0, A);
  return is_quasigeodesic(space, orbit.points, A, 0.0);
}

KingResult king_inequality_check(const MapHandle& f, const Point& p,
                                 long long horizon) {
  const Space& space = f.space();
  space.require_point(p);
  KingResult out;
  const int orbit_len = static_cast<int>(std::min<long long>(horizon, 2048));
  const OrbitRecord rec = iterate(f, p, orbit_len);
  if (rec.classification != OrbitClass::Diverging)
    throw ArgumentError("king inequality requires diverging forward orbits");

  Rng rng(7);
  std::vector<Point> starts = {p, detail::jitter_point(space, p, 0.7, rng),
                               detail::jitter_point(space, p, 1.3, rng)};
  const DenjoyWolffResult dw = denjoy_wolff(f, starts, orbit_len);
  if (dw.status != Outcome::Pass) {
    out.status = Outcome::Inconclusive;
    return out;
  }
  out.c_estimate = divergence_rate(f, p, horizon).c_estimate;
  const DilationEstimate dil = dilation(f, dw.direction, p);
  if (dil.status != Outcome::Pass) {
    out.status = Outcome::Inconclusive;
    return out;
  }
  out.log_lambda = dil.log_lambda;
  out.margin = out.log_lambda + out.c_estimate;
  out.status = (out.margin <= 0.02) ? Outcome::Pass : Outcome::Fail;
  return out;
}

}  // namespace horolab

#include "horolab/space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>

namespace horolab {

namespace {

constexpr double kSnapTol = 1e-9;
constexpr double kDirTol = 1e-6;
constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

const char* to_string(SpaceKind kind) {
  switch (kind) {
    case SpaceKind::PoincareDisc: return "poincare_disc";
    case SpaceKind::RightHalfPlane: return "right_half_plane";
    case SpaceKind::ComplexBall: return "complex_ball";
    case SpaceKind::KleinEllipsoid: return "klein_ellipsoid";
    case SpaceKind::Ladder: return "ladder";
    case SpaceKind::FiniteGraph: return "finite_graph";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Point / Direction accessors

const Complex& Point::as_complex() const {
  if (auto* p = std::get_if<Complex>(&v_)) return *p;
  throw ArgumentError("point does not hold complex coordinates");
}
const ComplexVec& Point::as_cvec() const {
  if (auto* p = std::get_if<ComplexVec>(&v_)) return *p;
  throw ArgumentError("point does not hold complex-vector coordinates");
}
const RealVec& Point::as_rvec() const {
  if (auto* p = std::get_if<RealVec>(&v_)) return *p;
  throw ArgumentError("point does not hold real-vector coordinates");
}
const LadderPoint& Point::as_ladder() const {
  if (auto* p = std::get_if<LadderPoint>(&v_)) return *p;
  throw ArgumentError("point does not hold ladder coordinates");
}
int Point::as_vertex() const {
  if (auto* p = std::get_if<int>(&v_)) return *p;
  throw ArgumentError("point does not hold a vertex id");
}

const Complex& Direction::as_complex() const {
  if (auto* p = std::get_if<Complex>(&v_)) return *p;
  throw ArgumentError("direction does not hold a complex value");
}
const ComplexVec& Direction::as_cvec() const {
  if (auto* p = std::get_if<ComplexVec>(&v_)) return *p;
  throw ArgumentError("direction does not hold a complex vector");
}
const RealVec& Direction::as_rvec() const {
  if (auto* p = std::get_if<RealVec>(&v_)) return *p;
  throw ArgumentError("direction does not hold a real vector");
}
int Direction::rail_sign() const {
  if (auto* p = std::get_if<RailEnd>(&v_)) return p->sign;
  throw ArgumentError("direction does not hold a rail end");
}

// ---------------------------------------------------------------------------
// detail: shared metric primitives

namespace detail {

double dist_from_rho(double rho) {
  if (!(rho >= 0.0) || rho >= 1.0)
    throw DomainError("pseudo-distance outside [0,1): point not in the open domain");
  return std::log1p(2.0 * rho / (1.0 - rho));
}

Complex mobius_disc(const Complex& a, const Complex& z) {
  return (a - z) / (1.0 - std::conj(a) * z);
}

Complex hermitian(const ComplexVec& z, const ComplexVec& w) {
  Complex s = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) s += z[i] * std::conj(w[i]);
  return s;
}

ComplexVec mobius_ball(const ComplexVec& a, const ComplexVec& z) {
  const std::size_t q = a.size();
  const double a2 = std::abs(hermitian(a, a));
  if (a2 < 1e-300) {
    ComplexVec out(q);
    for (std::size_t i = 0; i < q; ++i) out[i] = -z[i];
    return out;
  }
  const Complex za = hermitian(z, a);
  const double s = std::sqrt(std::max(0.0, 1.0 - a2));
  const Complex denom = 1.0 - za;
  ComplexVec out(q);
  for (std::size_t i = 0; i < q; ++i) {
    const Complex proj = (za / a2) * a[i];        // P_a z
    const Complex orth = z[i] - proj;             // Q_a z
    out[i] = (a[i] - proj - s * orth) / denom;
  }
  return out;
}

Complex cayley_to_disc(const Complex& w) { return (w - 1.0) / (w + 1.0); }
Complex cayley_to_half_plane(const Complex& z) { return (1.0 + z) / (1.0 - z); }

bool ladder_on_rail(const LadderPoint& p) {
  return std::abs(std::abs(p.b) - 1.0) <= kSnapTol;
}

bool ladder_on_rung(const LadderPoint& p, long long* rung) {
  const double r = std::nearbyint(p.a);
  if (std::abs(p.a - r) <= kSnapTol) {
    if (rung) *rung = static_cast<long long>(r);
    return true;
  }
  return false;
}

double ladder_distance(const LadderPoint& x, const LadderPoint& y) {
  return ladder_route(x, y, nullptr);
}

double ladder_route(const LadderPoint& x, const LadderPoint& y,
                    std::vector<LadderPoint>* waypoints) {
  // Shortest path over the candidate graph: the two endpoints plus the
  // rung junctions adjacent to both a-coordinates. A geodesic crosses a
  // full rung at most once, and the optimal crossing rung is an integer
  // adjacent to (or between) the endpoint coordinates.
  long long cands[4];
  int ncand = 0;
  auto push = [&](long long k) {
    if (k < 0) return;
    for (int i = 0; i < ncand; ++i)
      if (cands[i] == k) return;
    cands[ncand++] = k;
  };
  push(static_cast<long long>(std::floor(x.a + kSnapTol)));
  push(static_cast<long long>(std::ceil(x.a - kSnapTol)));
  push(static_cast<long long>(std::floor(y.a + kSnapTol)));
  push(static_cast<long long>(std::ceil(y.a - kSnapTol)));

  // Nodes: 0 = x, 1 = y, 2+2i = top of rung cands[i], 3+2i = bottom.
  const int n = 2 + 2 * ncand;
  double g[10][10];
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g[i][j] = (i == j) ? 0.0 : kInf;
  auto connect = [&](int i, int j, double w) {
    if (w < g[i][j]) g[i][j] = g[j][i] = w;
  };

  for (int i = 0; i < ncand; ++i) {
    connect(2 + 2 * i, 3 + 2 * i, 2.0);  // the rung itself
    for (int j = i + 1; j < ncand; ++j) {
      const double w = std::abs(static_cast<double>(cands[i] - cands[j]));
      connect(2 + 2 * i, 2 + 2 * j, w);  // top rail
      connect(3 + 2 * i, 3 + 2 * j, w);  // bottom rail
    }
  }

  auto attach = [&](int node, const LadderPoint& p) {
    if (ladder_on_rail(p)) {
      const bool top = p.b > 0.0;
      for (int i = 0; i < ncand; ++i)
        connect(node, (top ? 2 : 3) + 2 * i, std::abs(p.a - static_cast<double>(cands[i])));
    }
    long long k;
    if (ladder_on_rung(p, &k)) {
      for (int i = 0; i < ncand; ++i) {
        if (cands[i] == k) {
          connect(node, 2 + 2 * i, 1.0 - p.b);
          connect(node, 3 + 2 * i, 1.0 + p.b);
        }
      }
    }
  };
  attach(0, x);
  attach(1, y);

  // Direct travel inside one segment.
  if (ladder_on_rail(x) && ladder_on_rail(y) && x.b * y.b > 0.0)
    connect(0, 1, std::abs(x.a - y.a));
  long long kx, ky;
  if (ladder_on_rung(x, &kx) && ladder_on_rung(y, &ky) && kx == ky)
    connect(0, 1, std::abs(x.b - y.b));

  // Dijkstra, O(n^2) on at most 10 nodes.
  double dist[10];
  int parent[10];
  bool done[10] = {};
  for (int i = 0; i < n; ++i) {
    dist[i] = kInf;
    parent[i] = -1;
  }
  dist[0] = 0.0;
  for (int it = 0; it < n; ++it) {
    int u = -1;
    for (int i = 0; i < n; ++i)
      if (!done[i] && (u < 0 || dist[i] < dist[u])) u = i;
    if (u < 0 || dist[u] == kInf) break;
    done[u] = true;
    for (int v = 0; v < n; ++v)
      if (!done[v] && dist[u] + g[u][v] < dist[v]) {
        dist[v] = dist[u] + g[u][v];
        parent[v] = u;
      }
  }

  if (waypoints) {
    waypoints->clear();
    std::vector<int> nodes;
    for (int cur = 1; cur != -1; cur = parent[cur]) nodes.push_back(cur);
    std::reverse(nodes.begin(), nodes.end());
    for (int node : nodes) {
      if (node == 0) {
        waypoints->push_back(x);
      } else if (node == 1) {
        waypoints->push_back(y);
      } else {
        const int i = (node - 2) / 2;
        const double b = (node % 2 == 0) ? 1.0 : -1.0;
        waypoints->push_back(LadderPoint{static_cast<double>(cands[i]), b});
      }
    }
  }
  return dist[1];
}

double klein_form(const std::vector<RealVec>& shape, const RealVec& x) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) s += x[i] * shape[i][j] * x[j];
  return s;
}

std::pair<double, double> klein_chord(const std::vector<RealVec>& shape,
                                      const RealVec& x, const RealVec& dir) {
  const std::size_t n = x.size();
  double A = 0.0, B = 0.0, C = -1.0;
  for (std::size_t i = 0; i < n; ++i) {
    double sx = 0.0, sd = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      sx += shape[i][j] * x[j];
      sd += shape[i][j] * dir[j];
    }
    A += dir[i] * sd;
    B += x[i] * sd;
    C += x[i] * sx;
  }
  const double disc = B * B - A * C;
  if (!(A > 0.0) || !(disc > 0.0))
    throw DomainError("chord does not meet the ellipsoid boundary twice");
  const double root = std::sqrt(disc);
  const double q = -(B + std::copysign(root, B));
  double t1, t2;
  if (std::abs(q) > 0.0) {
    t1 = q / A;
    t2 = C / q;
  } else {
    t1 = root / A;
    t2 = -root / A;
  }
  return {std::min(t1, t2), std::max(t1, t2)};
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Space implementation

struct Space::Impl {
  SpaceKind kind;
  int dim = 1;

  // Klein
  std::vector<RealVec> shape;
  std::vector<RealVec> chol;

  // Graph
  std::vector<std::tuple<int, int, double>> edges;
  std::vector<std::vector<double>> gdist;
  std::vector<std::vector<int>> gparent;
};

Space Space::poincare_disc() {
  auto impl = std::make_shared<Impl>();
  impl->kind = SpaceKind::PoincareDisc;
  return Space(std::move(impl));
}

Space Space::right_half_plane() {
  auto impl = std::make_shared<Impl>();
  impl->kind = SpaceKind::RightHalfPlane;
  return Space(std::move(impl));
}

Space Space::complex_ball(int dimension) {
  if (dimension < 1) throw ArgumentError("ball dimension must be >= 1");
  auto impl = std::make_shared<Impl>();
  impl->kind = SpaceKind::ComplexBall;
  impl->dim = dimension;
  return Space(std::move(impl));
}

Space Space::klein_ellipsoid(std::vector<RealVec> shape) {
  const std::size_t n = shape.size();
  if (n == 0) throw ArgumentError("klein shape matrix is empty");
  for (const auto& row : shape)
    if (row.size() != n) throw ArgumentError("klein shape matrix is not square");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (std::abs(shape[i][j] - shape[j][i]) > 1e-9)
        throw DomainError("klein shape matrix is not symmetric");
      const double s = 0.5 * (shape[i][j] + shape[j][i]);
      shape[i][j] = shape[j][i] = s;
    }
  // Cholesky; failure means the matrix is not positive definite.
  std::vector<RealVec> L(n, RealVec(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double s = shape[i][j];
      for (std::size_t k = 0; k < j; ++k) s -= L[i][k] * L[j][k];
      if (i == j) {
        if (s <= 0.0) throw DomainError("klein shape matrix is not positive definite");
        L[i][i] = std::sqrt(s);
      } else {
        L[i][j] = s / L[j][j];
      }
    }
  }
  auto impl = std::make_shared<Impl>();
  impl->kind = SpaceKind::KleinEllipsoid;
  impl->dim = static_cast<int>(n);
  impl->shape = std::move(shape);
  impl->chol = std::move(L);
  return Space(std::move(impl));
}

Space Space::ladder() {
  auto impl = std::make_shared<Impl>();
  impl->kind = SpaceKind::Ladder;
  return Space(std::move(impl));
}

Space Space::finite_graph(const std::vector<std::tuple<int, int, double>>& edges,
                          int vertex_count) {
  int n = vertex_count;
  for (const auto& [u, v, w] : edges) {
    if (u < 0 || v < 0) throw ArgumentError("graph vertex ids must be >= 0");
    if (!(w > 0.0)) throw ArgumentError("graph edge weights must be > 0");
    n = std::max(n, std::max(u, v) + 1);
  }
  if (n < 1) throw ArgumentError("graph has no vertices");

  std::vector<std::vector<std::pair<int, double>>> adj(n);
  for (const auto& [u, v, w] : edges) {
    if (u == v) continue;
    adj[u].push_back({v, w});
    adj[v].push_back({u, w});
  }

  auto impl = std::make_shared<Impl>();
  impl->kind = SpaceKind::FiniteGraph;
  impl->dim = n;
  impl->edges = edges;
  impl->gdist.assign(n, std::vector<double>(n, kInf));
  impl->gparent.assign(n, std::vector<int>(n, -1));

  using Entry = std::pair<double, int>;
  for (int s = 0; s < n; ++s) {
    auto& dist = impl->gdist[s];
    auto& par = impl->gparent[s];
    dist[s] = 0.0;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> pq;
    pq.push({0.0, s});
    while (!pq.empty()) {
      auto [d, u] = pq.top();
      pq.pop();
      if (d > dist[u]) continue;
      for (const auto& [v, w] : adj[u]) {
        if (d + w < dist[v]) {
          dist[v] = d + w;
          par[v] = u;
          pq.push({dist[v], v});
        }
      }
    }
  }
  return Space(std::move(impl));
}

SpaceKind Space::kind() const { return impl_->kind; }
int Space::dimension() const { return impl_->dim; }

int Space::vertex_count() const {
  if (kind() != SpaceKind::FiniteGraph) throw CapabilityError("not a finite graph");
  return impl_->dim;
}

double Space::graph_distance(int u, int v) const {
  if (kind() != SpaceKind::FiniteGraph) throw CapabilityError("not a finite graph");
  const double d = impl_->gdist.at(u).at(v);
  if (d == kInf)
    throw UnreachableError("vertices " + std::to_string(u) + " and " +
                           std::to_string(v) + " are in different components");
  return d;
}

std::vector<int> Space::graph_shortest_path(int u, int v) const {
  graph_distance(u, v);  // capability + reachability check
  std::vector<int> rev;
  for (int cur = v; cur != -1 && cur != u; cur = impl_->gparent[u][cur]) rev.push_back(cur);
  rev.push_back(u);
  std::reverse(rev.begin(), rev.end());
  return rev;
}

const std::vector<RealVec>& Space::klein_shape() const {
  if (kind() != SpaceKind::KleinEllipsoid) throw CapabilityError("not a klein ellipsoid");
  return impl_->shape;
}

const std::vector<RealVec>& Space::klein_cholesky() const {
  if (kind() != SpaceKind::KleinEllipsoid) throw CapabilityError("not a klein ellipsoid");
  return impl_->chol;
}

bool Space::same_as(const Space& other) const {
  if (impl_ == other.impl_) return true;
  if (kind() != other.kind() || dimension() != other.dimension()) return false;
  if (kind() == SpaceKind::KleinEllipsoid) return impl_->shape == other.impl_->shape;
  if (kind() == SpaceKind::FiniteGraph) return impl_->edges == other.impl_->edges;
  return true;
}

bool Space::contains(const Point& x) const {
  try {
    require_point(x);
    return true;
  } catch (const Error&) {
    return false;
  }
}

void Space::require_point(const Point& x) const {
  switch (kind()) {
    case SpaceKind::PoincareDisc: {
      const Complex z = x.as_complex();
      if (!(std::abs(z) < 1.0)) throw DomainError("disc point with |z| >= 1");
      return;
    }
    case SpaceKind::RightHalfPlane: {
      const Complex w = x.as_complex();
      if (!(w.real() > 0.0)) throw DomainError("half-plane point with Re <= 0");
      return;
    }
    case SpaceKind::ComplexBall: {
      const ComplexVec& z = x.as_cvec();
      if (static_cast<int>(z.size()) != dimension())
        throw DomainError("ball point has wrong dimension");
      if (!(std::sqrt(std::abs(detail::hermitian(z, z))) < 1.0))
        throw DomainError("ball point with |z| >= 1");
      return;
    }
    case SpaceKind::KleinEllipsoid: {
      const RealVec& v = x.as_rvec();
      if (static_cast<int>(v.size()) != dimension())
        throw DomainError("klein point has wrong dimension");
      if (!(detail::klein_form(impl_->shape, v) < 1.0))
        throw DomainError("klein point outside the ellipsoid");
      return;
    }
    case SpaceKind::Ladder: {
      const LadderPoint& p = x.as_ladder();
      if (p.a < -kSnapTol) throw DomainError("ladder point with a < 0");
      if (std::abs(p.b) > 1.0 + kSnapTol) throw DomainError("ladder point with |b| > 1");
      if (!detail::ladder_on_rail(p) && !detail::ladder_on_rung(p, nullptr))
        throw DomainError("ladder point (" + fmt(p.a) + "," + fmt(p.b) +
                          ") lies on neither a rail nor a rung");
      return;
    }
    case SpaceKind::FiniteGraph: {
      const int id = x.as_vertex();
      if (id < 0 || id >= dimension()) throw DomainError("vertex id out of range");
      return;
    }
  }
}

Direction Space::canonical_direction(const Direction& d) const {
  switch (kind()) {
    case SpaceKind::PoincareDisc: {
      const Complex xi = d.as_complex();
      const double n = std::abs(xi);
      if (std::abs(n - 1.0) > kDirTol)
        throw DomainError("disc boundary direction must be a unit complex number");
      return Direction::circle(xi / n);
    }
    case SpaceKind::RightHalfPlane: {
      if (d.is_infinity()) return d;
      const Complex w = d.as_complex();
      if (std::abs(w.real()) > kDirTol)
        throw DomainError("half-plane boundary value must have Re = 0");
      return Direction::boundary_value(Complex(0.0, w.imag()));
    }
    case SpaceKind::ComplexBall: {
      ComplexVec xi = d.as_cvec();
      if (static_cast<int>(xi.size()) != dimension())
        throw DomainError("ball boundary direction has wrong dimension");
      const double n = std::sqrt(std::abs(detail::hermitian(xi, xi)));
      if (std::abs(n - 1.0) > kDirTol)
        throw DomainError("ball boundary direction must be a unit vector");
      for (auto& c : xi) c /= n;
      return Direction::sphere(std::move(xi));
    }
    case SpaceKind::KleinEllipsoid: {
      RealVec x = d.as_rvec();
      if (static_cast<int>(x.size()) != dimension())
        throw DomainError("klein boundary point has wrong dimension");
      const double q = detail::klein_form(impl_->shape, x);
      if (std::abs(q - 1.0) > kDirTol)
        throw DomainError("klein boundary point must satisfy x^T S x = 1");
      const double s = 1.0 / std::sqrt(q);
      for (auto& c : x) c *= s;
      return Direction::ellipsoid(std::move(x));
    }
    case SpaceKind::Ladder: {
      const int sign = d.rail_sign();
      if (sign != 1 && sign != -1) throw DomainError("ladder rail sign must be +1 or -1");
      return d;
    }
    case SpaceKind::FiniteGraph:
      throw CapabilityError("finite graphs have no boundary directions");
  }
  throw ArgumentError("unknown space kind");
}

double Space::distance(const Point& x, const Point& y) const {
  switch (kind()) {
    case SpaceKind::PoincareDisc: {
      const Complex a = x.as_complex(), b = y.as_complex();
      const double rho = std::abs(a - b) / std::abs(1.0 - std::conj(a) * b);
      return detail::dist_from_rho(rho);
    }
    case SpaceKind::RightHalfPlane: {
      const Complex a = x.as_complex(), b = y.as_complex();
      const double rho = std::abs(a - b) / std::abs(a + std::conj(b));
      return detail::dist_from_rho(rho);
    }
    case SpaceKind::ComplexBall: {
      const ComplexVec m = detail::mobius_ball(x.as_cvec(), y.as_cvec());
      const double rho = std::sqrt(std::abs(detail::hermitian(m, m)));
      return detail::dist_from_rho(rho);
    }
    case SpaceKind::KleinEllipsoid: {
      const RealVec& a = x.as_rvec();
      const RealVec& b = y.as_rvec();
      double len = 0.0;
      for (std::size_t i = 0; i < a.size(); ++i) len += (b[i] - a[i]) * (b[i] - a[i]);
      len = std::sqrt(len);
      if (len == 0.0) return 0.0;
      RealVec dir(a.size());
      for (std::size_t i = 0; i < a.size(); ++i) dir[i] = (b[i] - a[i]) / len;
      const auto [tm, tp] = detail::klein_chord(impl_->shape, a, dir);
      const double alpha = -tm, beta = tp;
      return 0.5 * std::log(((alpha + len) * beta) / (alpha * (beta - len)));
    }
    case SpaceKind::Ladder:
      return detail::ladder_distance(x.as_ladder(), y.as_ladder());
    case SpaceKind::FiniteGraph:
      return graph_distance(x.as_vertex(), y.as_vertex());
  }
  throw ArgumentError("unknown space kind");
}

Point Space::sample(Rng& rng, const SamplerRegion& region) const {
  switch (kind()) {
    case SpaceKind::PoincareDisc: {
      const double r = region.euclid_radius * std::sqrt(rng.uniform());
      return Point::disc(r * rng.unit_complex());
    }
    case SpaceKind::RightHalfPlane: {
      const double re = rng.uniform(region.halfplane_re_min, region.halfplane_re_max);
      const double im = rng.uniform(-region.halfplane_im_max, region.halfplane_im_max);
      return Point::half_plane(Complex(re, im));
    }
    case SpaceKind::ComplexBall: {
      const int q = dimension();
      ComplexVec z(q);
      double n2 = 0.0;
      for (int i = 0; i < q; ++i) {
        z[i] = Complex(rng.normal(), rng.normal());
        n2 += std::norm(z[i]);
      }
      const double r =
          region.euclid_radius * std::pow(rng.uniform(), 1.0 / (2.0 * q));
      const double scale = (n2 > 0.0) ? r / std::sqrt(n2) : 0.0;
      for (auto& c : z) c *= scale;
      return Point::ball(std::move(z));
    }
    case SpaceKind::KleinEllipsoid: {
      // Uniform in the scaled ellipsoid: y uniform in the euclidean ball,
      // then solve L^T x = y so that x^T S x = |y|^2.
      const int n = dimension();
      RealVec y(n);
      double n2 = 0.0;
      for (int i = 0; i < n; ++i) {
        y[i] = rng.normal();
        n2 += y[i] * y[i];
      }
      const double r = region.euclid_radius * std::pow(rng.uniform(), 1.0 / n);
      const double scale = (n2 > 0.0) ? r / std::sqrt(n2) : 0.0;
      for (auto& c : y) c *= scale;
      RealVec x(n);
      const auto& L = impl_->chol;
      for (int i = n - 1; i >= 0; --i) {
        double s = y[i];
        for (int j = i + 1; j < n; ++j) s -= L[j][i] * x[j];
        x[i] = s / L[i][i];
      }
      return Point::klein(std::move(x));
    }
    case SpaceKind::Ladder: {
      const double extent = region.ladder_extent;
      const long long rungs = static_cast<long long>(std::floor(extent)) + 1;
      const double total = 2.0 * extent + 2.0 * static_cast<double>(rungs);
      double u = rng.uniform() * total;
      if (u < extent) return Point::ladder(u, 1.0);
      u -= extent;
      if (u < extent) return Point::ladder(u, -1.0);
      u -= extent;
      const long long k = std::min<long long>(rungs - 1, static_cast<long long>(u / 2.0));
      const double b = std::clamp(u - 2.0 * static_cast<double>(k) - 1.0, -1.0, 1.0);
      return Point::ladder(static_cast<double>(k), b);
    }
    case SpaceKind::FiniteGraph:
      return Point::vertex(static_cast<int>(rng.below(dimension())));
  }
  throw ArgumentError("unknown space kind");
}

}  // namespace horolab

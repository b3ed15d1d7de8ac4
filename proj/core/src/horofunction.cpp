#include "horolab/horofunction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace horolab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> ray_schedule(SpaceKind kind) {
  switch (kind) {
    case SpaceKind::PoincareDisc:
    case SpaceKind::RightHalfPlane:
    case SpaceKind::ComplexBall:
      // Chart-form distances stay accurate out to these parameters; the
      // increments decay like e^{-t}.
      return {1, 2, 4, 8, 12, 16, 20, 24, 28, 32, 40, 48, 56, 64};
    case SpaceKind::KleinEllipsoid:
      // Boundary approach is e^{-2t} in euclidean coordinates; beyond ~12
      // the cross-ratio evaluation runs out of precision.
      return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12};
    case SpaceKind::Ladder:
      return {1, 2, 4, 8, 16, 32, 64, 128, 256, 512, 1024, 4096, 16384, 131072};
    case SpaceKind::FiniteGraph:
      break;
  }
  throw CapabilityError("no geodesic-ray schedule for this kind");
}

}  // namespace

// ---------------------------------------------------------------------------
// Horofunction handle

struct Horofunction::Impl {
  Space space;
  Point p;
  double residual = 0.0;
  double horizon = 0.0;
  double tolerance = 0.0;
  std::optional<Geodesic> ray;
  std::optional<Point> tail_point;  // sequence source: stabilized w_{n*}

  Impl(Space s, Point base) : space(std::move(s)), p(std::move(base)) {}
};

double Horofunction::operator()(const Point& x) const {
  const Impl& im = *impl_;
  if (im.ray) return busemann_eval(*im.ray, x, im.p, im.tolerance).value;
  return im.space.distance(x, *im.tail_point) - im.space.distance(*im.tail_point, im.p);
}

const Point& Horofunction::basepoint() const { return impl_->p; }
const Space& Horofunction::space() const { return impl_->space; }
double Horofunction::residual() const { return impl_->residual; }
double Horofunction::horizon() const { return impl_->horizon; }
bool Horofunction::from_ray() const { return impl_->ray.has_value(); }

// ---------------------------------------------------------------------------
// Busemann functions

BusemannEval busemann_eval(const Geodesic& ray, const Point& x, const Point& y,
                           double tolerance) {
  if (!ray.is_ray()) throw ArgumentError("busemann requires a ray, not a segment");
  const auto schedule = ray_schedule(ray.space().kind());
  double prev = kInf, prev_inc = kInf;
  for (double t : schedule) {
    const double v = ray.distance_from(t, x) - ray.distance_from(t, y);
    const double inc = std::abs(v - prev);
    if (inc < tolerance && prev_inc < tolerance) {
      return {v, inc, t};
    }
    prev = v;
    prev_inc = inc;
  }
  throw ConvergenceError("busemann limit did not stabilize within the schedule");
}

double busemann(const Geodesic& ray, const Point& x, const Point& y,
                double tolerance) {
  return busemann_eval(ray, x, y, tolerance).value;
}

Horofunction busemann_handle(const Geodesic& ray, const Point& p, double tolerance) {
  ray.space().require_point(p);
  auto impl = std::make_shared<Horofunction::Impl>(ray.space(), p);
  impl->ray = ray;
  impl->tolerance = tolerance;
  const BusemannEval probe = busemann_eval(ray, p, p, tolerance);
  impl->residual = std::max(probe.residual, tolerance);
  impl->horizon = probe.horizon;
  return Horofunction(std::move(impl));
}

Horofunction horofunction_along(const Space& space, const std::vector<Point>& seq,
                                const Point& p, const std::vector<Point>& grid,
                                double tail_tolerance) {
  if (grid.empty()) throw ArgumentError("horofunction grid is empty");
  if (seq.size() < 4) throw ArgumentError("sequence too short");
  const std::size_t window = std::min<std::size_t>(5, seq.size());
  if (!goes_to_infinity(space, seq, p, window, 1.0))
    throw ArgumentError("sequence does not go to infinity in the Gromov sense");

  std::vector<double> prev(grid.size()), cur(grid.size());
  auto fill = [&](std::size_t n, std::vector<double>& out) {
    const double dp = space.distance(seq[n], p);
    for (std::size_t i = 0; i < grid.size(); ++i)
      out[i] = space.distance(grid[i], seq[n]) - dp;
  };
  fill(0, prev);
  int quiet = 0;
  for (std::size_t n = 1; n < seq.size(); ++n) {
    fill(n, cur);
    double inc = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i)
      inc = std::max(inc, std::abs(cur[i] - prev[i]));
    quiet = (inc < tail_tolerance) ? quiet + 1 : 0;
    if (quiet >= 3) {
      auto impl = std::make_shared<Horofunction::Impl>(space, p);
      impl->tail_point = seq[n];
      impl->residual = inc;
      impl->horizon = static_cast<double>(n);
      impl->tolerance = tail_tolerance;
      return Horofunction(std::move(impl));
    }
    std::swap(prev, cur);
  }
  throw InconclusiveError(
      "sequence tail not Cauchy on the grid; it may straddle distinct horofunctions");
}

Containment horoball_membership(const Horoball& ball, const Point& x) {
  if (!(ball.R > 0.0)) throw ArgumentError("horoball radius must be > 0");
  const double v = ball.h(x);
  const double lr = std::log(ball.R);
  if (std::abs(v - lr) <= ball.h.residual()) return Containment::Margin;
  return v < lr ? Containment::In : Containment::Out;
}

// ---------------------------------------------------------------------------
// Big/small horospheres

namespace detail {

Point jitter_point(const Space& space, const Point& q, double r, Rng& rng) {
  // Walk distance r from q toward a random sample; works uniformly across
  // kinds and stays exact per the geodesic parametrization.
  for (int tries = 0; tries < 8; ++tries) {
    const Point z = space.sample(rng);
    const Geodesic g = geodesic_between(space, q, z);
    if (g.length() > 1e-9) return g.at(std::min(r, 0.999 * g.length()));
  }
  return q;
}

}  // namespace detail

BigSmallResult big_small_gap(const Space& space, const Direction& xi,
                             const Point& p, double R, const Point& x,
                             int family_count, std::uint64_t seed) {
  if (!space.supports_rays())
    throw CapabilityError("big/small horospheres need boundary directions");
  if (!(R > 0.0)) throw ArgumentError("R must be > 0");
  space.require_point(p);
  space.require_point(x);
  const Geodesic ray = geodesic_ray_to(space, p, xi);
  const int horizon = (space.kind() == SpaceKind::KleinEllipsoid) ? 10 : 24;

  Rng rng(seed);
  std::vector<std::vector<double>> traces;
  auto value_at = [&](const Point& w) {
    return space.distance(x, w) - space.distance(w, p);
  };

  {  // radial family
    std::vector<double> trace;
    for (int n = 1; n <= horizon; ++n)
      trace.push_back(ray.distance_from(static_cast<double>(n), x) -
                      ray.distance_from(static_cast<double>(n), p));
    traces.push_back(std::move(trace));
  }
  for (int j = 0; j < family_count; ++j) {  // jittered, decaying amplitude
    const double r0 = 0.5 + 0.25 * j;
    std::vector<double> trace;
    for (int n = 1; n <= horizon; ++n) {
      const double rn = r0 / (1.0 + 0.25 * n);
      trace.push_back(value_at(
          detail::jitter_point(space, ray.at(static_cast<double>(n)), rn, rng)));
    }
    traces.push_back(std::move(trace));
  }
  if (space.kind() == SpaceKind::Ladder) {  // rail-pinned families
    for (double rail : {1.0, -1.0}) {
      std::vector<double> trace;
      for (int n = 1; n <= horizon; ++n)
        trace.push_back(value_at(Point::ladder(static_cast<double>(n), rail)));
      traces.push_back(std::move(trace));
    }
  }

  BigSmallResult out;
  out.status = Outcome::Pass;
  double lo = kInf, hi = -kInf;
  const int tail = std::max(2, horizon / 4);
  for (const auto& trace : traces) {
    const std::size_t n = trace.size();
    if (std::abs(trace[n - 1] - trace[n - 2]) > 1e-3) out.status = Outcome::Inconclusive;
    for (std::size_t i = n - tail; i < n; ++i) {
      lo = std::min(lo, trace[i]);
      hi = std::max(hi, trace[i]);
    }
  }
  out.liminf_estimate = lo;
  out.limsup_estimate = hi;
  out.spread = hi - lo;
  out.big_member = lo < std::log(R);
  out.small_member = hi < std::log(R);
  return out;
}

// ---------------------------------------------------------------------------
// Boundary atlas

namespace {

double ladder_model(double beta, const LadderPoint& g) {
  return -g.a + std::abs(beta) - std::abs(g.b - beta);
}

double fit_ladder_beta(const std::vector<double>& rep, const std::vector<Point>& grid) {
  auto objective = [&](double beta) {
    double worst = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i)
      worst = std::max(worst,
                       std::abs(rep[i] - ladder_model(beta, grid[i].as_ladder())));
    return worst;
  };
  double best_b = -1.0, best_v = kInf;
  const int cells = 4096;
  for (int i = 0; i <= cells; ++i) {
    const double b = -1.0 + 2.0 * i / cells;
    const double v = objective(b);
    if (v < best_v) {
      best_v = v;
      best_b = b;
    }
  }
  double a = std::max(-1.0, best_b - 2.0 / cells);
  double b = std::min(1.0, best_b + 2.0 / cells);
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
  double f1 = objective(x1), f2 = objective(x2);
  for (int it = 0; it < 60; ++it) {
    if (f1 <= f2) {
      b = x2; x2 = x1; f2 = f1;
      x1 = b - phi * (b - a);
      f1 = objective(x1);
    } else {
      a = x1; x1 = x2; f1 = f2;
      x2 = a + phi * (b - a);
      f2 = objective(x2);
    }
  }
  const double mid = 0.5 * (a + b);
  return objective(mid) <= best_v ? mid : best_b;
}

std::vector<Direction> sample_directions(const Space& space, int count, Rng& rng) {
  std::vector<Direction> dirs;
  for (int k = 0; k < count; ++k) {
    switch (space.kind()) {
      case SpaceKind::PoincareDisc: {
        const double theta =
            2.0 * 3.141592653589793 * (k + 0.5 * rng.uniform()) / count;
        dirs.push_back(Direction::circle(Complex(std::cos(theta), std::sin(theta))));
        break;
      }
      case SpaceKind::RightHalfPlane:
        dirs.push_back(Direction::boundary_value(Complex(0.0, rng.uniform(-4.0, 4.0))));
        break;
      case SpaceKind::ComplexBall: {
        ComplexVec v(space.dimension());
        double n2 = 0.0;
        for (auto& c : v) {
          c = Complex(rng.normal(), rng.normal());
          n2 += std::norm(c);
        }
        for (auto& c : v) c /= std::sqrt(n2);
        dirs.push_back(Direction::sphere(std::move(v)));
        break;
      }
      case SpaceKind::KleinEllipsoid: {
        RealVec e(space.dimension());
        double n2 = 0.0;
        for (auto& c : e) {
          c = rng.normal();
          n2 += c * c;
        }
        for (auto& c : e) c /= std::sqrt(n2);
        const double q = detail::klein_form(space.klein_shape(), e);
        for (auto& c : e) c /= std::sqrt(q);
        dirs.push_back(Direction::ellipsoid(std::move(e)));
        break;
      }
      default:
        throw CapabilityError("cannot sample boundary directions for this kind");
    }
  }
  return dirs;
}

}  // namespace

Atlas boundary_atlas(const Space& space, const Point& p,
                     const std::vector<Point>& grid, const AtlasConfig& config) {
  if (grid.empty()) throw ArgumentError("atlas grid is empty");
  space.require_point(p);

  std::vector<std::vector<double>> values;
  std::vector<double> residuals;
  const int len = config.sequence_length;

  if (space.kind() == SpaceKind::Ladder) {
    std::vector<double> betas = config.ladder_betas;
    if (betas.empty()) betas = {-1.0, -0.5, 0.0, 0.5, 1.0};
    for (double beta : betas) {
      std::vector<Point> seq;
      for (int n = 1; n <= len; ++n)
        seq.push_back(Point::ladder(static_cast<double>(n), beta));
      const Horofunction h =
          horofunction_along(space, seq, p, grid, config.tail_tolerance);
      std::vector<double> v(grid.size());
      for (std::size_t i = 0; i < grid.size(); ++i) v[i] = h(grid[i]);
      values.push_back(std::move(v));
      residuals.push_back(h.residual());
    }
  } else {
    Rng rng(config.seed);
    std::vector<Direction> dirs = config.directions;
    if (dirs.empty()) dirs = sample_directions(space, config.direction_count, rng);
    for (const auto& d : dirs) {
      const Geodesic ray = geodesic_ray_to(space, p, d);
      std::vector<Point> seq;
      const int cap =
          (space.kind() == SpaceKind::KleinEllipsoid) ? std::min(len, 11) : len;
      for (int n = 1; n <= cap; ++n) seq.push_back(ray.at(static_cast<double>(n)));
      const Horofunction h =
          horofunction_along(space, seq, p, grid, config.tail_tolerance);
      std::vector<double> v(grid.size());
      for (std::size_t i = 0; i < grid.size(); ++i) v[i] = h(grid[i]);
      values.push_back(std::move(v));
      residuals.push_back(h.residual());
    }
  }

  double max_residual = 1e-12;
  for (double r : residuals) max_residual = std::max(max_residual, r);

  Atlas atlas;
  atlas.cluster_threshold = 10.0 * max_residual;
  for (std::size_t k = 0; k < values.size(); ++k) {
    bool joined = false;
    for (auto& cluster : atlas.clusters) {
      double sup = 0.0;
      for (std::size_t i = 0; i < grid.size(); ++i)
        sup = std::max(sup, std::abs(values[k][i] - cluster.representative[i]));
      if (sup <= atlas.cluster_threshold) {
        ++cluster.member_count;
        cluster.max_residual = std::max(cluster.max_residual, residuals[k]);
        joined = true;
        break;
      }
    }
    if (!joined) {
      AtlasCluster c;
      c.representative = values[k];
      c.member_count = 1;
      c.max_residual = residuals[k];
      atlas.clusters.push_back(std::move(c));
    }
  }

  if (space.kind() == SpaceKind::Ladder) {
    for (auto& cluster : atlas.clusters) {
      cluster.beta_hat = fit_ladder_beta(cluster.representative, grid);
      cluster.has_beta = true;
    }
  }
  return atlas;
}

// ---------------------------------------------------------------------------
// weak Julia inequality

WeakJResult weakj_check(const Space& space, const PointMap& f,
                        const std::vector<Point>& seq, const Point& p,
                        const std::vector<Point>& grid, double slack) {
  // Non-expansion spot check on the supplied points.
  std::vector<Point> pool = grid;
  pool.push_back(p);
  for (std::size_t i = 0; i + 1 < seq.size(); i += 4) pool.push_back(seq[i]);
  std::vector<Point> images;
  images.reserve(pool.size());
  for (const auto& q : pool) images.push_back(f(q));
  for (std::size_t i = 0; i < pool.size(); ++i)
    for (std::size_t j = i + 1; j < pool.size(); ++j)
      if (space.distance(images[i], images[j]) >
          space.distance(pool[i], pool[j]) + 1e-9)
        throw ValidationError("map is not non-expanding on the sampled pairs");

  WeakJResult out;
  // A = tail limit of d(p, w_n) - d(p, f(w_n)).
  double prev = kInf;
  int quiet = 0;
  bool stable = false;
  for (const auto& w : seq) {
    const double a = space.distance(p, w) - space.distance(p, f(w));
    quiet = (std::abs(a - prev) < 1e-6) ? quiet + 1 : 0;
    prev = a;
    if (quiet >= 3) {
      stable = true;
      out.A = a;
    }
  }
  if (!stable) {
    out.status = Outcome::Inconclusive;
    return out;
  }

  try {
    const Horofunction ha = horofunction_along(space, seq, p, grid, 1e-7);
    std::vector<Point> fseq;
    fseq.reserve(seq.size());
    for (const auto& w : seq) fseq.push_back(f(w));
    const Horofunction hb = horofunction_along(space, fseq, p, grid, 1e-7);
    double worst = -kInf;
    for (const auto& g : grid) worst = std::max(worst, hb(f(g)) - ha(g) - out.A);
    out.worst_margin = worst;
    out.status = (worst <= slack) ? Outcome::Pass : Outcome::Fail;
  } catch (const InconclusiveError&) {
    out.status = Outcome::Inconclusive;
  } catch (const ConvergenceError&) {
    out.status = Outcome::Inconclusive;
  }
  return out;
}

}  // namespace horolab

#include "horolab/hyperbolicity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace horolab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_same_space(const Geodesic& a, const Geodesic& b) {
  if (!a.space().same_as(b.space()))
    throw ArgumentError("geodesics live in different spaces");
}

double quadruple_defect(const Space& s, const Point& x, const Point& y,
                        const Point& z, const Point& p) {
  const double xp = s.distance(x, p), yp = s.distance(y, p), zp = s.distance(z, p);
  const double xy = s.distance(x, y), xz = s.distance(x, z), yz = s.distance(y, z);
  const double xy_p = 0.5 * (xp + yp - xy);
  const double xz_p = 0.5 * (xp + zp - xz);
  const double yz_p = 0.5 * (yp + zp - yz);
  return std::min(xz_p, yz_p) - xy_p;
}

}  // namespace

double gromov_product(const Space& space, const Point& x, const Point& y,
                      const Point& p) {
  return 0.5 * (space.distance(x, p) + space.distance(y, p) - space.distance(x, y));
}

DeltaEstimate delta_estimate(const Space& space, const SamplerRegion& region,
                             std::uint64_t n, std::uint64_t seed) {
  if (n < 1) throw ArgumentError("delta_estimate needs at least one quadruple");
  Rng rng(seed);
  DeltaEstimate out;
  out.quadruples = n;
  double best = -kInf;
  for (std::uint64_t i = 0; i < n; ++i) {
    const Point x = space.sample(rng, region);
    const Point y = space.sample(rng, region);
    const Point z = space.sample(rng, region);
    const Point p = space.sample(rng, region);
    const double defect = quadruple_defect(space, x, y, z, p);
    if (defect > best) {
      best = defect;
      out.argmax = {x, y, z, p};
    }
  }
  out.delta = std::max(0.0, best);
  return out;
}

DeltaEstimate delta_exhaustive(const Space& space) {
  if (space.kind() != SpaceKind::FiniteGraph)
    throw CapabilityError("exhaustive delta requires a finite graph");
  const int n = space.vertex_count();
  DeltaEstimate out;
  out.exhaustive = true;
  out.quadruples = static_cast<std::uint64_t>(n) * n * n * n;
  // Precomputed distance matrix access through the space keeps this O(n^4).
  double best = -kInf;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      const double xy = space.graph_distance(x, y);
      for (int z = 0; z < n; ++z) {
        const double xz = space.graph_distance(x, z);
        const double yz = space.graph_distance(y, z);
        for (int p = 0; p < n; ++p) {
          const double xp = space.graph_distance(x, p);
          const double yp = space.graph_distance(y, p);
          const double zp = space.graph_distance(z, p);
          const double defect2 =
              std::min(xp + zp - xz, yp + zp - yz) - (xp + yp - xy);
          if (defect2 > best) {
            best = defect2;
            out.argmax = {Point::vertex(x), Point::vertex(y), Point::vertex(z),
                          Point::vertex(p)};
          }
        }
      }
    }
  out.delta = std::max(0.0, 0.5 * best);
  return out;
}

bool goes_to_infinity(const Space& space, const std::vector<Point>& seq,
                      const Point& p, std::size_t window, double threshold) {
  if (window < 2) throw ArgumentError("window must be >= 2");
  if (seq.size() < window) throw ArgumentError("sequence shorter than the window");
  const std::size_t start = seq.size() - window;
  double min_product = kInf;
  for (std::size_t i = start; i < seq.size(); ++i)
    for (std::size_t j = i + 1; j < seq.size(); ++j)
      min_product = std::min(min_product, gromov_product(space, seq[i], seq[j], p));
  return min_product > threshold;
}

AsymptoticResult asymptotic(const Geodesic& r1, const Geodesic& r2,
                            double horizon, double bound_window,
                            double flat_tol, double step) {
  require_same_space(r1, r2);
  if (!(horizon > bound_window) || !(bound_window > 0.0))
    throw ArgumentError("need horizon > bound_window > 0");
  AsymptoticResult out;
  double head_max = -kInf, head_arg = 0.0;
  double tail_max = -kInf;
  for (double t = 0.0; t <= horizon + 1e-12; t += step) {
    const double d = r2.distance_from(t, r1.at(t));
    if (t <= horizon - bound_window) {
      if (d > head_max) {
        head_max = d;
        head_arg = t;
      }
    } else {
      tail_max = std::max(tail_max, d);
    }
  }
  out.sup_estimate = std::max(head_max, tail_max);
  out.argmax_t = head_arg;
  // Bounded-looking: the last window sets no new maximum. A growing tail is
  // inconclusive, not false; a finite horizon cannot refute boundedness.
  out.status = (tail_max <= head_max + flat_tol) ? Outcome::Pass : Outcome::Inconclusive;
  if (out.status == Outcome::Inconclusive) out.argmax_t = horizon;
  return out;
}

GapValue strong_asymptoticity_gap(const Geodesic& r1, const Geodesic& r2, double t) {
  require_same_space(r1, r2);
  if (t < 0.0) throw ArgumentError("gap parameter t must be >= 0");
  const Point gt = r1.at(t);
  const double d0 = r2.distance_from(0.0, gt);
  double hi = 2.0 * d0 + 1.0;
  if (!r2.is_ray()) hi = std::min(hi, r2.length());

  auto eval = [&](double s) { return r2.distance_from(s, gt); };

  // Coarse scan: basins can be ~1 wide (ladder), so keep the pitch <= 0.2.
  const int cells = std::max(64, std::min(16384, static_cast<int>(hi / 0.2) + 1));
  double best_s = 0.0, best_v = d0;
  for (int i = 0; i <= cells; ++i) {
    const double s = hi * static_cast<double>(i) / cells;
    const double v = eval(s);
    if (v < best_v) {
      best_v = v;
      best_s = s;
    }
  }
  // Golden-section refinement inside the bracketing cells.
  const double cell = hi / cells;
  double a = std::max(0.0, best_s - cell), b = std::min(hi, best_s + cell);
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
  double f1 = eval(x1), f2 = eval(x2);
  for (int it = 0; it < 90 && (b - a) > 1e-12; ++it) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - phi * (b - a);
      f1 = eval(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + phi * (b - a);
      f2 = eval(x2);
    }
  }
  GapValue out;
  out.argmin_s = 0.5 * (a + b);
  out.value = std::min({eval(out.argmin_s), best_v, d0});
  if (out.value == d0 && d0 <= best_v) out.argmin_s = 0.0;
  else if (out.value == best_v && best_v < eval(out.argmin_s)) out.argmin_s = best_s;
  return out;
}

const char* to_string(ShiftOutcome o) {
  switch (o) {
    case ShiftOutcome::StronglyAsymptotic: return "strongly_asymptotic";
    case ShiftOutcome::NotStronglyAsymptotic: return "not_strongly_asymptotic";
    case ShiftOutcome::Inconclusive: return "inconclusive";
  }
  return "?";
}

ShiftResult extract_shifts(const Geodesic& r1, const Geodesic& r2,
                           const ShiftConfig& config) {
  require_same_space(r1, r2);
  ShiftResult out;
  std::vector<double> gaps, ts;
  for (double t = config.t_start; t <= config.horizon + 1e-12; t += config.t_step) {
    const GapValue g = strong_asymptoticity_gap(r1, r2, t);
    ts.push_back(t);
    gaps.push_back(g.value);
    out.f_trace.push_back(g.argmin_s - t);
  }
  const std::size_t k = gaps.size();
  if (k < 4) throw ArgumentError("shift schedule too short");

  const std::size_t tail = std::max<std::size_t>(4, k / 4);
  double tail_gap_min = kInf, tail_f_min = kInf, tail_f_max = -kInf;
  for (std::size_t i = k - tail; i < k; ++i) {
    tail_gap_min = std::min(tail_gap_min, gaps[i]);
    tail_f_min = std::min(tail_f_min, out.f_trace[i]);
    tail_f_max = std::max(tail_f_max, out.f_trace[i]);
  }
  double head_gap_min = kInf;
  for (std::size_t i = 0; i < k / 2; ++i) head_gap_min = std::min(head_gap_min, gaps[i]);

  const bool f_cauchy = (tail_f_max - tail_f_min) <= config.cauchy_tolerance;
  if (gaps.back() <= config.gap_tolerance && f_cauchy) {
    const double f = out.f_trace.back();
    out.T = std::max(0.0, -f);
    out.S = std::max(0.0, f);
    out.terminal_gap = r2.distance_from(ts.back() + out.S, r1.at(ts.back() + out.T));
    out.gap_floor = tail_gap_min;
    out.outcome = ShiftOutcome::StronglyAsymptotic;
    return out;
  }
  if (tail_gap_min > config.gap_tolerance &&
      tail_gap_min >= head_gap_min - config.stall_tolerance) {
    out.gap_floor = tail_gap_min;
    out.terminal_gap = gaps.back();
    out.outcome = ShiftOutcome::NotStronglyAsymptotic;
    return out;
  }
  out.gap_floor = tail_gap_min;
  out.terminal_gap = gaps.back();
  out.outcome = ShiftOutcome::Inconclusive;
  return out;
}

QuasiGeodesicCertificate is_quasigeodesic(const Space& space,
                                          const std::vector<Point>& points,
                                          double A, double B) {
  if (A < 1.0) throw ArgumentError("quasi-geodesic constant A must be >= 1");
  if (B < 0.0) throw ArgumentError("quasi-geodesic constant B must be >= 0");
  if (points.size() < 2) throw ArgumentError("need at least two points");
  QuasiGeodesicCertificate cert;
  cert.A = A;
  cert.B = B;
  double worst = -kInf;
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      const double d = space.distance(points[i], points[j]);
      const double gap = static_cast<double>(j - i);
      worst = std::max(worst, d - (A * gap + B));          // upper bound breach
      worst = std::max(worst, (gap / A - B) - d);          // lower bound breach
      ++cert.verified_pairs;
    }
  cert.worst_violation = worst;
  return cert;
}

StepCurve::StepCurve(Space space, std::vector<Point> points)
    : space_(std::move(space)), points_(std::move(points)) {
  if (points_.empty()) throw ArgumentError("step curve needs at least one point");
}

const Point& StepCurve::at(double t) const {
  const auto idx = static_cast<std::size_t>(
      std::clamp(std::floor(t), 0.0, static_cast<double>(points_.size() - 1)));
  return points_[idx];
}

StepCurve interpolate_discrete(const Space& space, std::vector<Point> points) {
  return StepCurve(space, std::move(points));
}

QuasiGeodesicCertificate check_step_curve(const StepCurve& curve, double A,
                                          double B, double dt) {
  const double end = curve.domain_end();
  const double bound = A + B;  // interpolation certificate constants (A, A+B)
  QuasiGeodesicCertificate cert;
  cert.A = A;
  cert.B = bound;
  double worst = -kInf;
  for (double t = 0.0; t <= end + 1e-12; t += dt)
    for (double s = t; s <= end + 1e-12; s += dt) {
      const double d = curve.space().distance(curve.at(t), curve.at(s));
      const double gap = s - t;
      worst = std::max(worst, d - (A * gap + bound));
      worst = std::max(worst, (gap / A - bound) - d);
      ++cert.verified_pairs;
    }
  cert.worst_violation = worst;
  return cert;
}

}  // namespace horolab

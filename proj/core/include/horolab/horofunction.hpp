#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "horolab/geodesic.hpp"
#include "horolab/hyperbolicity.hpp"
#include "horolab/space.hpp"

namespace horolab {

/// Basepointed limit function h_{a,p}(x) = lim d(x, w_n) - d(w_n, p), held
/// extensionally: an on-demand evaluator plus residual/horizon metadata.
/// Copies share state; evaluation is pure.
class Horofunction {
 public:
  double operator()(const Point& x) const;
  const Point& basepoint() const;
  const Space& space() const;
  /// Last-increment bound of the stabilized tail.
  double residual() const;
  /// Ray parameter / sequence index at which the tail stabilized.
  double horizon() const;
  bool from_ray() const;

 private:
  friend Horofunction busemann_handle(const Geodesic&, const Point&, double);
  friend Horofunction horofunction_along(const Space&, const std::vector<Point>&,
                                         const Point&, const std::vector<Point>&,
                                         double);
  struct Impl;
  explicit Horofunction(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

struct BusemannEval {
  double value = 0.0;
  double residual = 0.0;
  double horizon = 0.0;
};

/// B_ray(x, y) = lim_t d(x, ray(t)) - d(ray(t), y), evaluated on a per-kind
/// parameter schedule with a Cauchy stopping rule (the pre-limit family is
/// not assumed monotone). Throws ConvergenceError when the schedule is
/// exhausted before two consecutive increments fall below the tolerance.
BusemannEval busemann_eval(const Geodesic& ray, const Point& x, const Point& y,
                           double tolerance = 1e-7);

double busemann(const Geodesic& ray, const Point& x, const Point& y,
                double tolerance = 1e-7);

/// Busemann horofunction vanishing at p.
Horofunction busemann_handle(const Geodesic& ray, const Point& p,
                             double tolerance = 1e-7);

/// Horofunction along a divergent sequence: iterates d(., w_n) - d(w_n, p)
/// along the tail until three consecutive max-increments over the grid fall
/// below the tolerance. Throws InconclusiveError when the tail is not Cauchy
/// within the sequence (it may straddle distinct horofunctions), and
/// ArgumentError when the sequence fails the goes-to-infinity precondition.
Horofunction horofunction_along(const Space& space, const std::vector<Point>& seq,
                                const Point& p, const std::vector<Point>& grid,
                                double tail_tolerance = 1e-9);

/// Horoball E_p(a, R) = { h_{a,p} < log R }.
struct Horoball {
  Horofunction h;
  double R = 1.0;
};

/// Residual-aware membership: Margin when |h(x) - log R| <= residual.
Containment horoball_membership(const Horoball& ball, const Point& x);

struct BigSmallResult {
  Outcome status = Outcome::Inconclusive;
  double liminf_estimate = 0.0;
  double limsup_estimate = 0.0;
  double spread = 0.0;
  bool big_member = false;
  bool small_member = false;
};

/// Estimates liminf/limsup of d(x, w) - d(w, p) over families of sequences
/// w -> xi (radial, jittered with decaying amplitude, rail-pinned on the
/// ladder); spread = limsup - liminf over the pooled tails.
BigSmallResult big_small_gap(const Space& space, const Direction& xi,
                             const Point& p, double R, const Point& x,
                             int family_count, std::uint64_t seed);

struct AtlasCluster {
  std::vector<double> representative;  // grid values of the first member
  int member_count = 0;
  double max_residual = 0.0;
  double beta_hat = 0.0;  // ladder: fitted parameter of -a+|b̂|-|b-b̂|
  bool has_beta = false;
};

struct Atlas {
  std::vector<AtlasCluster> clusters;
  double cluster_threshold = 0.0;
};

struct AtlasConfig {
  int direction_count = 8;
  std::uint64_t seed = 0;
  /// Explicit boundary directions (non-ladder kinds); sampled when empty.
  std::vector<Direction> directions;
  /// Ladder target heights; defaults to {-1,-0.5,0,0.5,1} when empty.
  std::vector<double> ladder_betas;
  double tail_tolerance = 1e-9;
  int sequence_length = 28;
};

/// Computes horofunctions of divergent sequences in sampled directions on
/// the grid and clusters them by sup-distance (threshold 10x max residual).
Atlas boundary_atlas(const Space& space, const Point& p,
                     const std::vector<Point>& grid, const AtlasConfig& config);

using PointMap = std::function<Point(const Point&)>;

struct WeakJResult {
  Outcome status = Outcome::Inconclusive;
  double A = 0.0;            // tail limit of d(p, w_n) - d(p, f(w_n))
  double worst_margin = 0.0; // max over grid of h_b(f(x)) - h_a(x) - A
};

/// Checks h_{b,p}(f(x)) <= h_{a,p}(x) + A + slack on the grid, where a, b are
/// the horofunctions along w_n and f(w_n). Verifies non-expansion of f on the
/// supplied points first.
WeakJResult weakj_check(const Space& space, const PointMap& f,
                        const std::vector<Point>& seq, const Point& p,
                        const std::vector<Point>& grid, double slack);

namespace detail {
/// Point at distance r from q in a seeded random direction; used by the
/// jittered sequence families.
Point jitter_point(const Space& space, const Point& q, double r, Rng& rng);
}  // namespace detail

}  // namespace horolab

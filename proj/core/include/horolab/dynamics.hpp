#pragma once

#include <optional>
#include <string>

#include "horolab/horofunction.hpp"

namespace horolab {

/// A non-expanding self-map of one model space. Construction validates
/// non-expansion on 10^4 sampled pairs (exhaustively for graphs) with slack
/// 1e-9 and throws ValidationError on breach. Immutable; copies share state.
class MapHandle {
 public:
  static MapHandle identity(const Space& space);
  /// z -> e^{i theta} (z - a) / (1 - conj(a) z).
  static MapHandle mobius_disc(const Space& space, Complex a, double theta);
  /// Disc automorphism conjugate to w -> k w on the right half-plane
  /// (fixed points +-1, attracting at +1 for k > 1).
  static MapHandle disc_hyperbolic(const Space& space, double multiplier);
  /// w -> k w + c with k > 0, Re c >= 0.
  static MapHandle half_plane_affine(const Space& space, double k, Complex c);
  /// z -> U phi_a(z) with phi_a the ball involution; empty U = identity.
  static MapHandle mobius_ball(const Space& space, ComplexVec a,
                               std::vector<ComplexVec> unitary = {});
  static MapHandle ladder_f1(const Space& space);  // (a,b) -> (a+1, 1)
  static MapHandle ladder_f2(const Space& space);  // (a,b) -> (a+1, -b)
  static MapHandle graph_map(const Space& space, std::vector<int> table);
  static MapHandle composite(std::vector<MapHandle> maps);

  Point apply(const Point& x) const;
  Point operator()(const Point& x) const { return apply(x); }
  const Space& space() const;
  const std::string& rule_name() const;

  bool has_closed_inverse() const;
  /// Closed-form preimage; nullopt when x has none inside the space.
  std::optional<Point> inverse(const Point& x) const;

  struct Impl;  // defined in dynamics.cpp

 private:
  explicit MapHandle(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

enum class OrbitClass { Bounded, Diverging, Inconclusive };
const char* to_string(OrbitClass c);

struct OrbitRecord {
  std::vector<Point> points;  // x_0 .. x_N
  bool forward = true;
  std::vector<int> step_ms;                // {1, 2, 4, 8}
  std::vector<std::vector<double>> steps;  // steps[k][i] = d(x_i, x_{i+m_k})
  OrbitClass classification = OrbitClass::Inconclusive;
  /// Orbit stopped early: backward preimages ran out, or iterates reached
  /// the representable edge of the model.
  bool truncated = false;
  /// Backward orbits: tail value of sigma_1 and whether it stabilized.
  double sigma1_tail = 0.0;
  bool bounded_step_stable = false;
};

/// Classification thresholds; finite-horizon surrogates for the
/// bounded-or-diverging dichotomy, configurable because no horizon can
/// decide every orbit.
struct OrbitConfig {
  double diverge_margin = 2.0;  // last-quarter min must clear r32 + margin
  double diverge_floor = 6.0;   // ... and this absolute floor
  int bounded_revisits = 3;     // revisits of B(x_0, r32) in the last half
};

OrbitRecord iterate(const MapHandle& f, const Point& x, int n,
                    const OrbitConfig& config = {});

/// Tail estimate of s_m(x) = lim_n d(f^n x, f^{n+m} x). The sequence is
/// non-increasing for a non-expanding map; a breach beyond 1e-9 throws
/// ValidationError.
double forward_step(const MapHandle& f, const Point& x, int m, int tail_length);

struct DivergenceRate {
  double primary = 0.0;    // d(x, f^n x) / n at the (effective) horizon
  double secondary = 0.0;  // min over m in 1..16 of s_m / m at the tail
  double c_estimate = 0.0; // min of the two (both approach c from above)
  double discrepancy = 0.0;
  bool warning = false;    // discrepancy > 0.05 (1 + |c|): slow convergence
  long long effective_horizon = 0;
};

DivergenceRate divergence_rate(const MapHandle& f, const Point& x,
                               long long horizon);

struct MinDisplacement {
  double tau_upper = 0.0;  // an upper bound on inf_x d(x, f x)
  Point argmin;
};

MinDisplacement minimal_displacement(const MapHandle& f, const SamplerRegion& region,
                                     std::uint64_t n, std::uint64_t seed);

/// Deterministic ladder grid (rails and rungs at the given resolution).
MinDisplacement minimal_displacement_ladder_grid(const MapHandle& f, double extent,
                                                 double resolution);

struct DenjoyWolffResult {
  Outcome status = Outcome::Inconclusive;
  Direction direction;  // estimated Denjoy-Wolff boundary direction
  double agreement = 0.0;
  double min_tail_gromov = 0.0;
  std::vector<Direction> per_start;
};

DenjoyWolffResult denjoy_wolff(const MapHandle& f, const std::vector<Point>& starts,
                               int horizon, double gromov_threshold = 8.0,
                               double agreement_threshold = 1e-2);

struct DilationConfig {
  double horizon = 24.0;  // ray parameter (capped per kind)
  double step = 1.0;
  int jitter_companions = 8;
  std::uint64_t seed = 0;
  double stall_tolerance = 1e-3;
};

struct DilationEstimate {
  Outcome status = Outcome::Inconclusive;
  double log_lambda = 0.0;
  double jitter_spread = 0.0;
  int tail_points = 0;
  double lower_bound = 0.0;  // -d(p, f(p)); log_lambda never falls below it
};

/// liminf_{z->eta} d(z,p) - d(f(z),p), estimated as the min over the pooled
/// tail of approach values: the geodesic ray to eta, jittered companions,
/// and (ladder) both rail-pinned approaches.
DilationEstimate dilation(const MapHandle& f, const Direction& eta, const Point& p,
                          const DilationConfig& config = {});

/// A(gamma, R) = { x : d(x, gamma) < R }.
struct GeodesicRegion {
  Geodesic ray;
  double R = 1.0;
};

struct RegionMembership {
  bool member = false;
  double inf_distance = 0.0;
  double argmin_t = 0.0;
};

RegionMembership region_membership(const GeodesicRegion& region, const Point& x);

/// Checks B_gamma(x_n, p) falls and stays below each rehearsed bound.
Outcome region_busemann_divergence(const GeodesicRegion& region,
                                   const std::vector<Point>& seq, const Point& p,
                                   const std::vector<double>& bounds = {-5.0, -10.0,
                                                                        -20.0});

struct BrfpResult {
  Outcome status = Outcome::Inconclusive;
  bool is_brfp = false;
  double log_dilation = 0.0;
  /// Min terminal Gromov product between mapped region sequences and the
  /// ray to eta; large = images keep converging to eta.
  double limit_score = 0.0;
};

BrfpResult brfp_check(const MapHandle& f, const Direction& eta, const Point& p,
                      const DilationConfig& config = {});

struct JuliaConfig {
  std::uint64_t samples = 10000;
  double slack = 1e-6;
  std::uint64_t seed = 0;
  SamplerRegion box;
  int limit_sequences = 16;  // region-constrained sequences used to locate xi
};

struct JuliaResult {
  Outcome status = Outcome::Inconclusive;
  double log_lambda = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t violations = 0;
  double worst_margin = 0.0;
  Point worst_offender;
  bool xi_snapped_to_eta = false;
};

/// Samples E_p(eta, R) and verifies f(x) lands in E_p(xi, lambda R) up to
/// the slack, with xi the estimated geodesic limit of f at eta.
JuliaResult julia_check(const MapHandle& f, const Direction& eta, const Point& p,
                        double R, const JuliaConfig& config = {});

struct BackwardConfig {
  int multistarts = 8;
  double residual_tolerance = 1e-8;
  bool force_numeric = false;  // exercise the numeric path even when a
                               // closed-form inverse exists
  std::uint64_t seed = 0;
};

/// Backward orbit x_{k+1} = f^{-1}(x_k), closed-form where the rule allows,
/// otherwise multistart local minimization of d(f(y), x_k). Truncates when
/// preimages run out.
OrbitRecord backward_orbit(const MapHandle& f, const Point& x0, int n,
                           const BackwardConfig& config = {});

/// Certifies the orbit as an (A, 0) discrete quasi-geodesic with
/// A = max(1/c, d(x_0, x_1)) forward, A = max(sigma_1, 1/c) backward.
QuasiGeodesicCertificate orbit_quasigeodesic_check(const Space& space,
                                                   const OrbitRecord& orbit,
                                                   double c_estimate);

struct KingResult {
  Outcome status = Outcome::Inconclusive;
  double c_estimate = 0.0;
  double log_lambda = 0.0;
  double margin = 0.0;  // log_lambda + c; pass when <= 0.02
};

/// log lambda_zeta <= -c(f) at the Denjoy-Wolff point.
KingResult king_inequality_check(const MapHandle& f, const Point& p,
                                 long long horizon);

}  // namespace horolab

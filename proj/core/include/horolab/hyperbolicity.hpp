#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "horolab/geodesic.hpp"
#include "horolab/space.hpp"

namespace horolab {

/// (x|y)_p = (d(x,p) + d(y,p) - d(x,y)) / 2.
double gromov_product(const Space& space, const Point& x, const Point& y,
                      const Point& p);

struct DeltaEstimate {
  double delta = 0.0;
  std::uint64_t quadruples = 0;
  std::array<Point, 4> argmax;  // (x, y, z, p) realizing the defect
  bool exhaustive = false;
};

/// Empirical four-point estimate: max over sampled quadruples of
/// min((x|z)_p, (y|z)_p) - (x|y)_p, clamped at 0. A lower bound on the true
/// delta. Nested samples from the same seed are prefixes, so the estimate is
/// monotone in n.
DeltaEstimate delta_estimate(const Space& space, const SamplerRegion& region,
                             std::uint64_t n, std::uint64_t seed);

/// Exact four-point delta of a finite graph (all ordered quadruples).
DeltaEstimate delta_exhaustive(const Space& space);

/// Finite-horizon surrogate for "goes to infinity in the Gromov sense":
/// min pairwise Gromov product over the last `window` terms exceeds
/// `threshold`.
bool goes_to_infinity(const Space& space, const std::vector<Point>& seq,
                      const Point& p, std::size_t window, double threshold);

struct AsymptoticResult {
  Outcome status = Outcome::Inconclusive;
  double sup_estimate = 0.0;
  double argmax_t = 0.0;
};

/// Samples t -> d(r1(t), r2(t)) on [0, horizon]. `Pass` when the sup is
/// attained before horizon - bound_window and the last window sets no new
/// maximum (bounded-looking); `Inconclusive` when the tail is still growing.
/// Never returns `Fail`: boundedness cannot be refuted at a finite horizon.
AsymptoticResult asymptotic(const Geodesic& r1, const Geodesic& r2,
                            double horizon, double bound_window,
                            double flat_tol = 1e-9, double step = 0.25);

struct GapValue {
  double value = 0.0;
  double argmin_s = 0.0;
};

/// inf_{s>=0} d(r1(t), r2(s)). The infimum is attained; bracketed on
/// [0, 2 d(r1(t), r2(0))], located by a coarse scan (the section need not be
/// unimodal) and refined by golden section.
GapValue strong_asymptoticity_gap(const Geodesic& r1, const Geodesic& r2,
                                  double t);

enum class ShiftOutcome { StronglyAsymptotic, NotStronglyAsymptotic, Inconclusive };

const char* to_string(ShiftOutcome o);

struct ShiftConfig {
  double t_start = 1.0;
  double t_step = 1.0;
  double horizon = 40.0;
  // Success threshold for the gap at the horizon. The slowest healthy decay
  // among the model spaces is e^{-t/2} (ball directions transverse to the
  // complex line), so this is reachable at moderate horizons.
  double gap_tolerance = 1e-4;
  double cauchy_tolerance = 1e-3; // allowed oscillation of f(t) = s_t - t
  double stall_tolerance = 1e-3;  // "no progress" slack for the gap floor
};

struct ShiftResult {
  ShiftOutcome outcome = ShiftOutcome::Inconclusive;
  double T = 0.0;
  double S = 0.0;
  double terminal_gap = 0.0;  // d(r1(t+T), r2(t+S)) at the horizon
  double gap_floor = 0.0;     // observed floor when not strongly asymptotic
  std::vector<double> f_trace;
};

/// Shift construction: tracks s_t = argmin_s d(r1(t), r2(s)) and
/// f(t) = s_t - t along an increasing schedule; when the gap tends to 0 and
/// f is Cauchy, splits the limit of f by sign into shifts (T, S) with
/// d(r1(t+T), r2(t+S)) -> 0, and verifies the terminal gap at the horizon.
ShiftResult extract_shifts(const Geodesic& r1, const Geodesic& r2,
                           const ShiftConfig& config = {});

struct QuasiGeodesicCertificate {
  double A = 1.0;
  double B = 0.0;
  std::uint64_t verified_pairs = 0;
  double worst_violation = 0.0;  // positive = failed by that amount
  bool passed() const { return worst_violation <= 0.0; }
};

/// Checks A^{-1}|n-m| - B <= d(x_n, x_m) <= A|n-m| + B over all index pairs.
QuasiGeodesicCertificate is_quasigeodesic(const Space& space,
                                          const std::vector<Point>& points,
                                          double A, double B);

/// Step-function interpolation t -> x_floor(t) of a discrete sequence.
class StepCurve {
 public:
  StepCurve(Space space, std::vector<Point> points);
  const Point& at(double t) const;
  double domain_end() const { return static_cast<double>(points_.size() - 1); }
  const Space& space() const { return space_; }
  const std::vector<Point>& points() const { return points_; }

 private:
  Space space_;
  std::vector<Point> points_;
};

StepCurve interpolate_discrete(const Space& space, std::vector<Point> points);

/// Samples the interpolated curve on a dt-grid and certifies the (A, A+B)
/// quasi-geodesic bounds it inherits from an (A, B) discrete input.
QuasiGeodesicCertificate check_step_curve(const StepCurve& curve, double A,
                                          double B, double dt = 0.25);

}  // namespace horolab

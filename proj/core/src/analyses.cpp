#include "horolab/analyses.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace horolab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Check check_of(std::string name, bool pass, double value, double tolerance,
               std::string provenance) {
  return Check{std::move(name), pass ? Outcome::Pass : Outcome::Fail, value,
               tolerance, std::move(provenance)};
}

double tolerance_or(const RunConfig& cfg, const char* name, double fallback) {
  if (cfg.tolerances.contains(name) && cfg.tolerances[name].is_number())
    return cfg.tolerances[name].get<double>();
  return fallback;
}

Point default_basepoint(const Space& space) {
  switch (space.kind()) {
    case SpaceKind::PoincareDisc: return Point::disc(Complex(0.0, 0.0));
    case SpaceKind::RightHalfPlane: return Point::half_plane(Complex(1.0, 0.0));
    case SpaceKind::ComplexBall:
      return Point::ball(ComplexVec(space.dimension(), Complex(0.0, 0.0)));
    case SpaceKind::KleinEllipsoid: return Point::klein(RealVec(space.dimension(), 0.0));
    case SpaceKind::Ladder: return Point::ladder(0.0, 0.0);
    case SpaceKind::FiniteGraph: return Point::vertex(0);
  }
  throw ArgumentError("unknown space kind");
}

Direction default_direction(const Space& space) {
  switch (space.kind()) {
    case SpaceKind::PoincareDisc: return Direction::circle(Complex(1.0, 0.0));
    case SpaceKind::RightHalfPlane: return Direction::infinity();
    case SpaceKind::ComplexBall: {
      ComplexVec e(space.dimension(), Complex(0.0, 0.0));
      e[0] = 1.0;
      return Direction::sphere(std::move(e));
    }
    case SpaceKind::KleinEllipsoid: {
      RealVec e(space.dimension(), 0.0);
      e[0] = 1.0;
      return space.canonical_direction(
          Direction::ellipsoid([&] {
            RealVec v = e;
            const double q = detail::klein_form(space.klein_shape(), v);
            for (auto& c : v) c /= std::sqrt(q);
            return v;
          }()));
    }
    case SpaceKind::Ladder: return Direction::rail(+1);
    case SpaceKind::FiniteGraph: break;
  }
  throw CapabilityError("no boundary directions for this kind");
}

Json point_to_json(const Space& space, const Point& p) {
  switch (space.kind()) {
    case SpaceKind::PoincareDisc:
    case SpaceKind::RightHalfPlane: {
      const Complex z = p.as_complex();
      return Json::array({z.real(), z.imag()});
    }
    case SpaceKind::ComplexBall: {
      Json arr = Json::array();
      for (const auto& c : p.as_cvec()) arr.push_back(Json::array({c.real(), c.imag()}));
      return arr;
    }
    case SpaceKind::KleinEllipsoid: return Json(p.as_rvec());
    case SpaceKind::Ladder: {
      const LadderPoint& lp = p.as_ladder();
      return Json::array({lp.a, lp.b});
    }
    case SpaceKind::FiniteGraph: return Json(p.as_vertex());
  }
  return Json();
}

std::vector<Point> default_grid(const Space& space, std::uint64_t seed) {
  std::vector<Point> grid;
  switch (space.kind()) {
    case SpaceKind::Ladder:
      for (int a = 0; a <= 8; ++a)
        for (double b : {-1.0, -0.5, 0.0, 0.5, 1.0})
          grid.push_back(Point::ladder(static_cast<double>(a), b));
      return grid;
    case SpaceKind::PoincareDisc: {
      grid.push_back(Point::disc(Complex(0.0, 0.0)));
      for (double r : {0.15, 0.3, 0.45, 0.6})
        for (int k = 0; k < 6; ++k) {
          const double th = 2.0 * 3.141592653589793 * k / 6.0;
          grid.push_back(Point::disc(Complex(r * std::cos(th), r * std::sin(th))));
        }
      return grid;
    }
    case SpaceKind::RightHalfPlane:
      for (double re : {0.5, 1.0, 2.0, 4.0})
        for (double im : {-2.0, -1.0, 0.0, 1.0, 2.0})
          grid.push_back(Point::half_plane(Complex(re, im)));
      return grid;
    default: {
      Rng rng(seed ^ 0x9E3779B97F4A7C15ull);
      SamplerRegion region;
      region.euclid_radius = 0.6;
      for (int i = 0; i < 24; ++i) grid.push_back(space.sample(rng, region));
      return grid;
    }
  }
}

// -------------------------------------------------------------------------
// delta

void analysis_delta(const RunConfig& cfg, const Space& space, Report& rep) {
  SamplerRegion region;
  region.euclid_radius = cfg.params.value("radius", 0.99);
  region.ladder_extent = cfg.params.value("ladder_extent", 24.0);
  const std::uint64_t n = cfg.params.value("quadruples", 20000ull);

  DeltaEstimate est;
  const bool graph = space.kind() == SpaceKind::FiniteGraph;
  const bool exhaustive =
      cfg.params.value("exhaustive", graph && space.vertex_count() <= 80);
  if (exhaustive) {
    est = delta_exhaustive(space);
  } else {
    est = delta_estimate(space, region, n, cfg.seed);
  }
  rep.details["delta"] = est.delta;
  rep.details["quadruples"] = est.quadruples;
  rep.details["exhaustive"] = est.exhaustive;
  Json arg = Json::array();
  for (const auto& p : est.argmax) arg.push_back(point_to_json(space, p));
  rep.details["argmax_quadruple"] = arg;
  rep.checks.push_back(check_of("delta_lower_bound_nonnegative", est.delta >= 0.0,
                                est.delta, 0.0,
                                "four-point defect is clamped at zero"));
}

// -------------------------------------------------------------------------
// atlas

void analysis_atlas(const RunConfig& cfg, const Space& space, Report& rep) {
  if (!space.supports_rays())
    throw CapabilityError("atlas requires a space with boundary directions");
  const Point p = cfg.params.contains("base")
                      ? parse_point(cfg.params["base"], space)
                      : default_basepoint(space);
  const std::vector<Point> grid = default_grid(space, cfg.seed);

  AtlasConfig acfg;
  acfg.seed = cfg.seed;
  acfg.direction_count = cfg.params.value("directions", 8);
  acfg.tail_tolerance = tolerance_or(cfg, "atlas_tail", 1e-9);
  if (cfg.params.contains("betas"))
    for (const auto& b : cfg.params["betas"]) acfg.ladder_betas.push_back(b.get<double>());

  const Atlas atlas = boundary_atlas(space, p, grid, acfg);

  Json clusters = Json::array();
  for (const auto& c : atlas.clusters) {
    Json cj;
    cj["member_count"] = c.member_count;
    cj["max_residual"] = c.max_residual;
    if (c.has_beta) cj["beta_hat"] = c.beta_hat;
    cj["representative"] = c.representative;
    clusters.push_back(cj);
  }
  rep.details["clusters"] = clusters;
  rep.details["cluster_count"] = atlas.clusters.size();
  rep.details["cluster_threshold"] = atlas.cluster_threshold;
  rep.details["grid_size"] = grid.size();
  rep.details["basepoint"] = point_to_json(space, p);

  if (space.kind() == SpaceKind::Ladder) {
    std::vector<double> betas = acfg.ladder_betas;
    if (betas.empty()) betas = {-1.0, -0.5, 0.0, 0.5, 1.0};
    std::sort(betas.begin(), betas.end());
    betas.erase(std::unique(betas.begin(), betas.end()), betas.end());
    rep.checks.push_back(check_of(
        "ladder_cluster_count", atlas.clusters.size() == betas.size(),
        static_cast<double>(atlas.clusters.size()), static_cast<double>(betas.size()),
        "distinct target heights give distinct ladder horofunctions"));
    double worst = 0.0;
    for (const auto& c : atlas.clusters)
      for (std::size_t i = 0; i < grid.size(); ++i) {
        const LadderPoint& g = grid[i].as_ladder();
        const double model = -g.a + std::abs(c.beta_hat) - std::abs(g.b - c.beta_hat);
        worst = std::max(worst, std::abs(c.representative[i] - model));
      }
    rep.checks.push_back(check_of("ladder_model_match", worst < 1e-6, worst, 1e-6,
                                  "ladder horofunction closed form at the fitted height"));
  } else {
    rep.checks.push_back(check_of("atlas_nonempty", !atlas.clusters.empty(),
                                  static_cast<double>(atlas.clusters.size()), 1.0,
                                  "at least one divergent direction clusters"));
  }
}

// -------------------------------------------------------------------------
// rays

struct RayFixture {
  Point p1, p2;
  Direction d1, d2;  // d1 is used from both basepoints; d2 is a second direction
};

RayFixture ray_fixture(const Space& space) {
  switch (space.kind()) {
    case SpaceKind::PoincareDisc:
      return {Point::disc(Complex(0.0, 0.0)), Point::disc(Complex(0.0, 0.35)),
              Direction::circle(Complex(1.0, 0.0)), Direction::circle(Complex(0.0, 1.0))};
    case SpaceKind::RightHalfPlane:
      return {Point::half_plane(Complex(1.0, 0.0)), Point::half_plane(Complex(2.0, 0.5)),
              Direction::infinity(), Direction::boundary_value(Complex(0.0, 1.0))};
    case SpaceKind::ComplexBall: {
      const int q = space.dimension();
      ComplexVec origin(q, Complex(0.0, 0.0));
      ComplexVec other(q, Complex(0.0, 0.0));
      other[q - 1] = Complex(0.2, 0.15);
      ComplexVec e1(q, Complex(0.0, 0.0));
      e1[0] = 1.0;
      ComplexVec e2(q, Complex(0.0, 0.0));
      e2[q - 1] = 1.0;
      return {Point::ball(origin), Point::ball(other), Direction::sphere(e1),
              Direction::sphere(e2)};
    }
    case SpaceKind::KleinEllipsoid: {
      const int n = space.dimension();
      RealVec origin(n, 0.0), other(n, 0.0);
      other[n - 1] = 0.2 / std::sqrt(space.klein_shape()[n - 1][n - 1]);
      RealVec e1(n, 0.0);
      e1[0] = 1.0 / std::sqrt(space.klein_shape()[0][0]);
      RealVec e2 = e1;
      e2[0] = -e2[0];
      return {Point::klein(origin), Point::klein(other),
              space.canonical_direction(Direction::ellipsoid(e1)),
              space.canonical_direction(Direction::ellipsoid(e2))};
    }
    case SpaceKind::Ladder:
      return {Point::ladder(0.0, 1.0), Point::ladder(0.0, -1.0), Direction::rail(+1),
              Direction::rail(-1)};
    case SpaceKind::FiniteGraph:
      break;
  }
  throw CapabilityError("geodesic rays are not supported on finite graphs");
}

double unit_speed_horizon(const Space& space) {
  switch (space.kind()) {
    case SpaceKind::KleinEllipsoid: return 8.0;
    case SpaceKind::Ladder: return 40.0;
    default: return 12.0;
  }
}

double max_unit_speed_deviation(const Geodesic& g, double horizon, Rng& rng) {
  double worst = 0.0;
  const double top = g.is_ray() ? horizon : std::min(horizon, g.length());
  for (int i = 0; i < 100; ++i) {
    const double s = rng.uniform(0.0, top);
    const double t = rng.uniform(0.0, top);
    worst = std::max(worst,
                     std::abs(g.distance_from(t, g.at(s)) - std::abs(s - t)));
  }
  return worst;
}

void analysis_rays(const RunConfig& cfg, const Space& space, Report& rep) {
  const RayFixture fx = ray_fixture(space);
  const Geodesic r1 = geodesic_ray_to(space, fx.p1, fx.d1);
  const Geodesic r1b = geodesic_ray_to(space, fx.p2, fx.d1);
  const Geodesic r2 = geodesic_ray_to(space, fx.p1, fx.d2);

  Rng rng(cfg.seed);
  const double us_tol = tolerance_or(cfg, "unit_speed", 1e-9);
  double worst = 0.0;
  for (const Geodesic* g : {&r1, &r1b, &r2})
    worst = std::max(worst, max_unit_speed_deviation(*g, unit_speed_horizon(space), rng));
  rep.checks.push_back(check_of("unit_speed", worst < us_tol, worst, us_tol,
                                "|d(g(s),g(t)) - |s-t|| on 100 sampled pairs per ray"));

  if (space.kind() == SpaceKind::Ladder) {
    ShiftConfig sc;
    const ShiftResult sr =
        extract_shifts(r1, geodesic_ray_to(space, fx.p2, fx.d2), sc);
    rep.details["shift_outcome"] = to_string(sr.outcome);
    rep.details["gap_floor"] = sr.gap_floor;
    rep.checks.push_back(check_of(
        "rails_not_strongly_asymptotic",
        sr.outcome == ShiftOutcome::NotStronglyAsymptotic &&
            std::abs(sr.gap_floor - 2.0) <= 0.01,
        sr.gap_floor, 0.01, "rail rays keep an inf-gap of 2 (one full rung detour)"));
    const AsymptoticResult ar = asymptotic(r1, geodesic_ray_to(space, fx.p2, fx.d2),
                                           40.0, 8.0);
    rep.details["rails_sup_estimate"] = ar.sup_estimate;
    rep.checks.push_back(check_of("rails_asymptotic", ar.status == Outcome::Pass,
                                  ar.sup_estimate, 3.0,
                                  "d(g(t), s(t)) stays within one rung detour"));
  } else {
    ShiftConfig sc;
    if (space.kind() == SpaceKind::KleinEllipsoid) {
      // Klein coordinates reach the boundary like e^{-2t}; beyond t ~ 12 the
      // cross-ratio runs out of precision.
      sc.horizon = 12.0;
      sc.t_step = 0.5;
    } else {
      sc.horizon = 20.0;
    }
    const ShiftResult sr = extract_shifts(r1, r1b, sc);
    rep.details["shift_outcome"] = to_string(sr.outcome);
    rep.details["terminal_gap"] = sr.terminal_gap;
    rep.details["shift_T"] = sr.T;
    rep.details["shift_S"] = sr.S;
    rep.checks.push_back(check_of(
        "approaching_geodesics",
        sr.outcome == ShiftOutcome::StronglyAsymptotic && sr.terminal_gap < 1e-3,
        sr.terminal_gap, 1e-3,
        "rays to a common boundary point synchronize to a vanishing gap"));
    const AsymptoticResult ar = asymptotic(r1, r1b, sc.horizon, sc.horizon / 4.0);
    rep.details["sup_estimate"] = ar.sup_estimate;
    rep.checks.push_back(check_of("asymptotic_same_direction",
                                  ar.status == Outcome::Pass, ar.sup_estimate, kInf,
                                  "same-direction rays stay at bounded distance"));
  }
}

// -------------------------------------------------------------------------
// dynamics

void analysis_dynamics(const RunConfig& cfg, const Space& space,
                       const MapHandle& map, Report& rep) {
  const Point start = cfg.params.contains("start")
                          ? parse_point(cfg.params["start"], space)
                          : default_basepoint(space);
  const long long horizon = cfg.params.value(
      "horizon", space.kind() == SpaceKind::Ladder ? 4000000ll : 20000ll);

  const OrbitRecord rec = iterate(map, start, 1000);
  rep.details["classification"] = to_string(rec.classification);
  rep.details["orbit_truncated"] = rec.truncated;

  const DivergenceRate dr = divergence_rate(map, start, horizon);
  rep.details["c_estimate"] = dr.c_estimate;
  rep.details["c_primary"] = dr.primary;
  rep.details["c_secondary"] = dr.secondary;
  rep.details["c_discrepancy"] = dr.discrepancy;
  rep.details["c_slow_convergence_warning"] = dr.warning;
  rep.details["effective_horizon"] = dr.effective_horizon;

  if (space.kind() == SpaceKind::Ladder) {
    const MinDisplacement md = minimal_displacement_ladder_grid(
        map, 8.0, cfg.params.value("grid_resolution", 0.05));
    rep.details["tau_upper"] = md.tau_upper;
    rep.details["tau_argmin"] = point_to_json(space, md.argmin);
  } else {
    SamplerRegion region;
    const MinDisplacement md = minimal_displacement(map, region, 4096, cfg.seed);
    rep.details["tau_upper"] = md.tau_upper;
    rep.details["tau_argmin"] = point_to_json(space, md.argmin);
  }

  // forward m-step estimates at the tail
  Json steps = Json::object();
  for (int m : {1, 2, 4, 8}) {
    try {
      steps[std::to_string(m)] = forward_step(map, start, m, 256);
    } catch (const ConvergenceError&) {
      steps[std::to_string(m)] = nullptr;
    }
  }
  rep.details["forward_steps"] = steps;

  const double mono_tol = 1e-9;
  double worst_mono = -kInf;
  for (const auto& tab : rec.steps)
    for (std::size_t i = 1; i < tab.size(); ++i)
      worst_mono = std::max(worst_mono, tab[i] - tab[i - 1]);
  if (worst_mono == -kInf) worst_mono = 0.0;
  rep.checks.push_back(check_of("step_monotonicity", worst_mono <= mono_tol,
                                worst_mono, mono_tol,
                                "d(f^n x, f^{n+m} x) is non-increasing in n"));

  double worst_sub = -kInf;
  const auto& ms = rec.step_ms;
  for (std::size_t a = 0; a < ms.size(); ++a)
    for (std::size_t b = 0; b < ms.size(); ++b) {
      const int sum = ms[a] + ms[b];
      const auto it = std::find(ms.begin(), ms.end(), sum);
      if (it == ms.end()) continue;
      const std::size_t c = it - ms.begin();
      for (std::size_t n = 0; n + ms[a] < rec.steps[b].size() &&
                              n < rec.steps[c].size();
           ++n)
        worst_sub = std::max(worst_sub, rec.steps[c][n] - rec.steps[a][n] -
                                            rec.steps[b][n + ms[a]]);
    }
  if (worst_sub == -kInf) worst_sub = 0.0;
  rep.checks.push_back(check_of("step_subadditivity", worst_sub <= mono_tol,
                                worst_sub, mono_tol,
                                "triangle inequality on the computed step tables"));

  rep.checks.push_back(check_of("non_expansion", true, 0.0, 1e-9,
                                "validated at construction: 10^4 pairs, slack 1e-9"));

  if (rec.classification == OrbitClass::Diverging) {
    Rng rng(cfg.seed + 17);
    std::vector<Point> starts = {start, detail::jitter_point(space, start, 0.8, rng),
                                 detail::jitter_point(space, start, 1.4, rng)};
    const DenjoyWolffResult dw = denjoy_wolff(map, starts, 1500);
    rep.details["dw_agreement"] = dw.agreement;
    rep.details["dw_min_tail_gromov"] = dw.min_tail_gromov;
    rep.details["dw_status"] = to_string(dw.status);
    if (dw.status == Outcome::Pass) {
      const DilationEstimate dil = dilation(map, dw.direction, start);
      rep.details["dilation_log"] = dil.log_lambda;
      rep.details["dilation_status"] = to_string(dil.status);
      if (dil.status == Outcome::Pass) {
        const double margin = dil.log_lambda + dr.c_estimate;
        rep.checks.push_back(check_of("king_inequality", margin <= 0.02, margin, 0.02,
                                      "log lambda_zeta <= -c(f) at the Denjoy-Wolff point"));
      } else {
        rep.checks.push_back(Check{"king_inequality", Outcome::Inconclusive, 0.0, 0.02,
                                   "dilation tail did not stabilize"});
      }
    } else {
      rep.details["dilation_log"] = nullptr;
      rep.checks.push_back(Check{"king_inequality", Outcome::Inconclusive, 0.0, 0.02,
                                 "Denjoy-Wolff estimate inconclusive"});
    }
    if (dr.c_estimate > 0.05) {
      const auto cert = orbit_quasigeodesic_check(space, rec, dr.c_estimate);
      rep.details["quasigeodesic_A"] = cert.A;
      rep.details["quasigeodesic_worst_violation"] = cert.worst_violation;
      rep.checks.push_back(check_of("orbit_quasigeodesic", cert.passed(),
                                    cert.worst_violation, 0.0,
                                    "forward orbits with c > 0 are (A,0) quasi-geodesics"));
    }
  } else {
    rep.details["dilation_log"] = nullptr;
  }
}

// -------------------------------------------------------------------------
// julia

void analysis_julia(const RunConfig& cfg, const Space& space, const MapHandle& map,
                    Report& rep) {
  const Point base =
      cfg.params.contains("base")
          ? parse_point(cfg.params["base"], space)
          : (space.kind() == SpaceKind::Ladder ? Point::ladder(0.0, 1.0)
                                               : default_basepoint(space));
  const Direction eta = cfg.params.contains("eta")
                            ? parse_direction(cfg.params["eta"], space)
                            : default_direction(space);
  JuliaConfig jc;
  jc.samples = cfg.params.value("samples", 10000ull);
  jc.slack = tolerance_or(cfg, "julia_slack", cfg.params.value("slack", 1e-6));
  jc.seed = cfg.seed;
  jc.box.ladder_extent = cfg.params.value("ladder_extent", 30.0);
  const double R = cfg.params.value("R", 2.0);

  const JuliaResult jr = julia_check(map, eta, base, R, jc);
  rep.details["R"] = R;
  rep.details["log_lambda"] = jr.log_lambda;
  rep.details["samples"] = jr.samples;
  rep.details["violations"] = jr.violations;
  rep.details["worst_margin"] = jr.worst_margin;
  rep.details["xi_snapped_to_eta"] = jr.xi_snapped_to_eta;
  Check c{"julia_inclusion", jr.status, jr.worst_margin, jc.slack,
          "f(E_p(eta,R)) inside E_p(xi, lambda R) on every sample"};
  rep.checks.push_back(c);
}

// -------------------------------------------------------------------------
// suite

void analysis_suite(const RunConfig& cfg, const Space& space,
                    const std::optional<MapHandle>& map, Report& rep) {
  const int cases = cfg.params.value("cases", 2000);
  SamplerRegion region;
  Rng rng(cfg.seed);

  const double sym_tol = tolerance_or(cfg, "symmetry", 1e-12);
  const double tri_tol = tolerance_or(cfg, "triangle", 1e-9);
  const double us_tol = tolerance_or(cfg, "unit_speed", 1e-9);

  double worst_sym = 0.0, worst_tri = -kInf, worst_id = 0.0;
  for (int i = 0; i < cases; ++i) {
    const Point x = space.sample(rng, region);
    const Point y = space.sample(rng, region);
    const Point z = space.sample(rng, region);
    const double dxy = space.distance(x, y);
    worst_sym = std::max(worst_sym, std::abs(dxy - space.distance(y, x)));
    worst_tri = std::max(worst_tri,
                         space.distance(x, z) - dxy - space.distance(y, z));
    worst_id = std::max(worst_id, space.distance(x, x));
  }
  rep.checks.push_back(check_of("symmetry", worst_sym <= sym_tol, worst_sym, sym_tol,
                                "d(x,y) = d(y,x) on sampled pairs"));
  rep.checks.push_back(check_of("triangle_inequality", worst_tri <= tri_tol, worst_tri,
                                tri_tol, "d(x,z) <= d(x,y) + d(y,z) on sampled triples"));
  rep.checks.push_back(check_of("identity_of_indiscernibles", worst_id <= 1e-12,
                                worst_id, 1e-12, "d(x,x) = 0"));

  // geodesic segments: unit speed and midpoint
  double worst_us = 0.0, worst_mid = 0.0;
  for (int i = 0; i < 60; ++i) {
    const Point x = space.sample(rng, region);
    const Point y = space.sample(rng, region);
    const Geodesic g = geodesic_between(space, x, y);
    if (space.kind() == SpaceKind::FiniteGraph) {
      const auto bps = g.breakpoints();
      for (std::size_t a = 0; a < bps.size(); ++a)
        for (std::size_t b = a; b < bps.size(); ++b)
          worst_us = std::max(worst_us, std::abs(g.distance_from(bps[b], g.at(bps[a])) -
                                                 (bps[b] - bps[a])));
    } else {
      for (int k = 0; k < 10; ++k) {
        const double s = rng.uniform(0.0, g.length());
        const double t = rng.uniform(0.0, g.length());
        worst_us = std::max(worst_us,
                            std::abs(g.distance_from(t, g.at(s)) - std::abs(s - t)));
      }
      if (g.length() > 0) {
        const Point m = midpoint(g);
        worst_mid = std::max(worst_mid,
                             std::abs(space.distance(x, m) - 0.5 * g.length()));
        worst_mid = std::max(worst_mid,
                             std::abs(space.distance(m, y) - 0.5 * g.length()));
      }
    }
  }
  rep.checks.push_back(check_of("unit_speed", worst_us <= us_tol, worst_us, us_tol,
                                "|d(g(s),g(t)) - |s-t|| on sampled segments"));
  if (space.kind() != SpaceKind::FiniteGraph)
    rep.checks.push_back(check_of("midpoint", worst_mid <= us_tol, worst_mid, us_tol,
                                  "midpoint splits the distance in half"));

  // horofunction invariants
  if (space.supports_rays()) {
    const Point p = default_basepoint(space);
    const Geodesic ray = geodesic_ray_to(space, p, default_direction(space));
    const Horofunction h = busemann_handle(ray, p, 1e-9);
    const double res = h.residual() + 1e-9;
    double worst_vanish = std::abs(h(p));
    double worst_lip = -kInf, worst_penny = -kInf;
    for (int i = 0; i < 1000; ++i) {
      const Point x = space.sample(rng, region);
      const Point y = space.sample(rng, region);
      const double hx = h(x);
      worst_lip = std::max(worst_lip,
                           std::abs(hx - h(y)) - space.distance(x, y) - 2.0 * res);
      worst_penny = std::max(worst_penny, -hx - space.distance(x, p) - res);
    }
    rep.checks.push_back(check_of("horofunction_vanishes_at_base", worst_vanish <= res,
                                  worst_vanish, res, "h_{a,p}(p) = 0 within residual"));
    rep.checks.push_back(check_of("horofunction_lipschitz", worst_lip <= 0.0, worst_lip,
                                  0.0, "horofunctions are 1-Lipschitz within residual"));
    rep.checks.push_back(check_of("horofunction_lower_bound", worst_penny <= 0.0,
                                  worst_penny, 0.0,
                                  "h_{a,p}(x) >= -d(x,p) within residual"));
  }

  if (map) {
    double worst_exp = -kInf;
    for (int i = 0; i < cases; ++i) {
      const Point x = space.sample(rng, region);
      const Point y = space.sample(rng, region);
      worst_exp = std::max(worst_exp, space.distance(map->apply(x), map->apply(y)) -
                                          space.distance(x, y));
    }
    rep.checks.push_back(check_of("non_expansion", worst_exp <= 1e-9, worst_exp, 1e-9,
                                  "d(f x, f y) <= d(x, y) on sampled pairs"));

    const OrbitRecord rec = iterate(*map, default_basepoint(space), 512);
    double worst_mono = -kInf;
    for (const auto& tab : rec.steps)
      for (std::size_t i = 1; i < tab.size(); ++i)
        worst_mono = std::max(worst_mono, tab[i] - tab[i - 1]);
    if (worst_mono == -kInf) worst_mono = 0.0;
    rep.checks.push_back(check_of("step_monotonicity", worst_mono <= 1e-9, worst_mono,
                                  1e-9, "forward steps are non-increasing"));
  }
}

}  // namespace

Report run_analysis(const RunConfig& cfg) {
  const Space space = parse_space(cfg.space_json);
  std::optional<MapHandle> map;
  if (cfg.map_json) map = parse_map(*cfg.map_json, space);

  Report rep;
  rep.analysis = cfg.analysis;
  rep.seed = cfg.seed;
  rep.space = space_to_json(space);
  if (cfg.map_json) rep.map = *cfg.map_json;

  if (cfg.analysis == "delta") {
    analysis_delta(cfg, space, rep);
  } else if (cfg.analysis == "atlas") {
    analysis_atlas(cfg, space, rep);
  } else if (cfg.analysis == "rays") {
    analysis_rays(cfg, space, rep);
  } else if (cfg.analysis == "dynamics") {
    if (!map) throw ArgumentError("dynamics analysis needs a map descriptor");
    analysis_dynamics(cfg, space, *map, rep);
  } else if (cfg.analysis == "julia") {
    if (!map) throw ArgumentError("julia analysis needs a map descriptor");
    analysis_julia(cfg, space, *map, rep);
  } else if (cfg.analysis == "suite") {
    analysis_suite(cfg, space, map, rep);
  } else {
    throw ArgumentError("unknown analysis '" + cfg.analysis + "'");
  }
  return rep;
}

}  // namespace horolab

#include "horolab/descriptor.hpp"

namespace horolab {

namespace {

[[noreturn]] void bad(const std::string& msg) { throw ArgumentError("descriptor: " + msg); }

Complex parse_complex(const Json& j, const char* what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    bad(std::string(what) + " must be a [re, im] pair");
  return {j[0].get<double>(), j[1].get<double>()};
}

ComplexVec parse_cvec(const Json& j, const char* what) {
  if (!j.is_array() || j.empty()) bad(std::string(what) + " must be a non-empty array");
  ComplexVec out;
  for (const auto& e : j) out.push_back(parse_complex(e, what));
  return out;
}

RealVec parse_rvec(const Json& j, const char* what) {
  if (!j.is_array() || j.empty()) bad(std::string(what) + " must be a non-empty array");
  RealVec out;
  for (const auto& e : j) {
    if (!e.is_number()) bad(std::string(what) + " must hold numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

}  // namespace

Space parse_space(const Json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    bad("space needs a string field 'kind'");
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "poincare_disc") return Space::poincare_disc();
  if (kind == "right_half_plane") return Space::right_half_plane();
  if (kind == "complex_ball") {
    if (!j.contains("dimension") || !j["dimension"].is_number_integer())
      bad("complex_ball needs an integer 'dimension'");
    return Space::complex_ball(j["dimension"].get<int>());
  }
  if (kind == "klein_ellipsoid") {
    if (!j.contains("shape") || !j["shape"].is_array())
      bad("klein_ellipsoid needs a 'shape' matrix");
    std::vector<RealVec> shape;
    for (const auto& row : j["shape"]) shape.push_back(parse_rvec(row, "shape row"));
    return Space::klein_ellipsoid(std::move(shape));
  }
  if (kind == "ladder") return Space::ladder();
  if (kind == "finite_graph") {
    if (!j.contains("edges") || !j["edges"].is_array())
      bad("finite_graph needs an 'edges' array");
    std::vector<std::tuple<int, int, double>> edges;
    for (const auto& e : j["edges"]) {
      if (!e.is_array() || e.size() != 3) bad("each edge must be [u, v, weight]");
      edges.emplace_back(e[0].get<int>(), e[1].get<int>(), e[2].get<double>());
    }
    const int vertices = j.value("vertices", -1);
    return Space::finite_graph(edges, vertices);
  }
  bad("unknown space kind '" + kind + "'");
}

Json space_to_json(const Space& space) {
  Json j;
  j["kind"] = to_string(space.kind());
  switch (space.kind()) {
    case SpaceKind::ComplexBall:
      j["dimension"] = space.dimension();
      break;
    case SpaceKind::KleinEllipsoid:
      j["shape"] = space.klein_shape();
      break;
    case SpaceKind::FiniteGraph:
      j["vertices"] = space.vertex_count();
      break;
    default:
      break;
  }
  return j;
}

MapHandle parse_map(const Json& j, const Space& space) {
  if (!j.is_object() || !j.contains("rule") || !j["rule"].is_string())
    bad("map needs a string field 'rule'");
  const std::string rule = j["rule"].get<std::string>();
  if (rule == "identity") return MapHandle::identity(space);
  if (rule == "mobius_disc")
    return MapHandle::mobius_disc(space, parse_complex(j.at("a"), "a"),
                                  j.value("theta", 0.0));
  if (rule == "disc_hyperbolic") {
    if (!j.contains("multiplier")) bad("disc_hyperbolic needs 'multiplier'");
    return MapHandle::disc_hyperbolic(space, j["multiplier"].get<double>());
  }
  if (rule == "disc_rotation")
    return MapHandle::mobius_disc(space, Complex(0.0, 0.0), j.value("theta", 0.0));
  if (rule == "half_plane_affine")
    return MapHandle::half_plane_affine(
        space, j.value("k", 1.0),
        j.contains("c") ? parse_complex(j["c"], "c") : Complex(0.0, 0.0));
  if (rule == "mobius_ball") {
    std::vector<ComplexVec> unitary;
    if (j.contains("unitary"))
      for (const auto& row : j["unitary"]) unitary.push_back(parse_cvec(row, "unitary row"));
    return MapHandle::mobius_ball(space, parse_cvec(j.at("a"), "a"), std::move(unitary));
  }
  if (rule == "ladder_f1") return MapHandle::ladder_f1(space);
  if (rule == "ladder_f2") return MapHandle::ladder_f2(space);
  if (rule == "graph_map") {
    if (!j.contains("table") || !j["table"].is_array()) bad("graph_map needs 'table'");
    std::vector<int> table;
    for (const auto& e : j["table"]) table.push_back(e.get<int>());
    return MapHandle::graph_map(space, std::move(table));
  }
  if (rule == "composite") {
    if (!j.contains("maps") || !j["maps"].is_array()) bad("composite needs 'maps'");
    std::vector<MapHandle> maps;
    for (const auto& m : j["maps"]) maps.push_back(parse_map(m, space));
    return MapHandle::composite(std::move(maps));
  }
  bad("unknown map rule '" + rule + "'");
}

Direction parse_direction(const Json& j, const Space& space) {
  switch (space.kind()) {
    case SpaceKind::PoincareDisc:
      return space.canonical_direction(Direction::circle(parse_complex(j, "direction")));
    case SpaceKind::RightHalfPlane:
      if (j.is_string() && j.get<std::string>() == "infinity")
        return Direction::infinity();
      return space.canonical_direction(
          Direction::boundary_value(parse_complex(j, "direction")));
    case SpaceKind::ComplexBall:
      return space.canonical_direction(Direction::sphere(parse_cvec(j, "direction")));
    case SpaceKind::KleinEllipsoid:
      return space.canonical_direction(Direction::ellipsoid(parse_rvec(j, "direction")));
    case SpaceKind::Ladder:
      if (j.is_number_integer())
        return space.canonical_direction(Direction::rail(j.get<int>()));
      if (j.is_object() && j.contains("rail"))
        return space.canonical_direction(Direction::rail(j["rail"].get<int>()));
      bad("ladder direction must be +1 or -1");
    case SpaceKind::FiniteGraph:
      break;
  }
  throw CapabilityError("finite graphs have no boundary directions");
}

Point parse_point(const Json& j, const Space& space) {
  Point p;
  switch (space.kind()) {
    case SpaceKind::PoincareDisc:
      p = Point::disc(parse_complex(j, "point"));
      break;
    case SpaceKind::RightHalfPlane:
      p = Point::half_plane(parse_complex(j, "point"));
      break;
    case SpaceKind::ComplexBall:
      p = Point::ball(parse_cvec(j, "point"));
      break;
    case SpaceKind::KleinEllipsoid:
      p = Point::klein(parse_rvec(j, "point"));
      break;
    case SpaceKind::Ladder: {
      const RealVec v = parse_rvec(j, "point");
      if (v.size() != 2) bad("ladder point must be [a, b]");
      p = Point::ladder(v[0], v[1]);
      break;
    }
    case SpaceKind::FiniteGraph:
      if (!j.is_number_integer()) bad("graph point must be a vertex id");
      p = Point::vertex(j.get<int>());
      break;
  }
  space.require_point(p);
  return p;
}

RunConfig parse_run_config(const Json& j) {
  if (!j.is_object()) bad("run config must be an object");
  RunConfig cfg;
  if (!j.contains("space")) bad("run config needs 'space'");
  cfg.space_json = j["space"];
  parse_space(cfg.space_json);  // validate now
  if (j.contains("map")) cfg.map_json = j["map"];
  if (!j.contains("analysis") || !j["analysis"].is_string())
    bad("run config needs a string 'analysis'");
  cfg.analysis = j["analysis"].get<std::string>();
  static const char* known[] = {"delta", "atlas", "rays", "dynamics", "julia", "suite"};
  bool ok = false;
  for (const char* k : known) ok |= (cfg.analysis == k);
  if (!ok) bad("unknown analysis '" + cfg.analysis + "'");
  cfg.seed = j.value("seed", 0ull);
  cfg.format = j.value("format", std::string("json"));
  if (cfg.format != "json" && cfg.format != "csv") bad("format must be json or csv");
  cfg.out_path = j.value("out", std::string());
  if (j.contains("params")) {
    if (!j["params"].is_object()) bad("'params' must be an object");
    cfg.params = j["params"];
  }
  if (j.contains("tolerances")) {
    if (!j["tolerances"].is_object()) bad("'tolerances' must be an object");
    cfg.tolerances = j["tolerances"];
  }
  return cfg;
}

}  // namespace horolab

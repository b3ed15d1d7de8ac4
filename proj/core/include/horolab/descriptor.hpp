#pragma once

#include <nlohmann/json.hpp>
#include <optional>
#include <string>

#include "horolab/dynamics.hpp"

namespace horolab {

using Json = nlohmann::json;

/// Space descriptors:
///   {"kind":"poincare_disc"}
///   {"kind":"right_half_plane"}
///   {"kind":"complex_ball","dimension":2}
///   {"kind":"klein_ellipsoid","shape":[[1,0],[0,1]]}
///   {"kind":"ladder"}
///   {"kind":"finite_graph","edges":[[0,1,1.0],...],"vertices":4}
Space parse_space(const Json& j);
Json space_to_json(const Space& space);

/// Map descriptors:
///   {"rule":"identity"}
///   {"rule":"mobius_disc","a":[0.2,0.0],"theta":0.5}
///   {"rule":"disc_hyperbolic","multiplier":2.0}
///   {"rule":"disc_rotation","theta":1.0}
///   {"rule":"half_plane_affine","k":1.0,"c":[1.0,0.0]}
///   {"rule":"mobius_ball","a":[[0.3,0.0],[0.0,0.0]],"unitary":[[[...]]]}
///   {"rule":"ladder_f1"} / {"rule":"ladder_f2"}
///   {"rule":"graph_map","table":[1,2,0]}
///   {"rule":"composite","maps":[{...},...]}
MapHandle parse_map(const Json& j, const Space& space);

/// Boundary directions, per kind: disc [re,im]; half-plane [0,im] or
/// "infinity"; ball [[re,im],...]; klein [x1,...]; ladder +1/-1.
Direction parse_direction(const Json& j, const Space& space);

/// Points, per kind: disc/half-plane [re,im]; ball [[re,im],...];
/// klein [x1,...]; ladder [a,b]; graph vertex id.
Point parse_point(const Json& j, const Space& space);

struct RunConfig {
  Json space_json;
  std::optional<Json> map_json;
  std::string analysis;  // delta | atlas | rays | dynamics | julia | suite
  std::uint64_t seed = 0;
  std::string format = "json";  // json | csv
  std::string out_path;         // empty = stdout
  Json params = Json::object();
  Json tolerances = Json::object();
};

RunConfig parse_run_config(const Json& j);

}  // namespace horolab

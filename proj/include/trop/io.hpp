#pragma once

#include <string>

#include "json.hpp"
#include "trop/curve.hpp"
#include "trop/solver.hpp"
#include "trop/type.hpp"

namespace trop {

using Json = nlohmann::json;

/// [{"v":[x,y],"mult":k}, ...] or {"projective":d}
Degree degree_from_json(const Json& j);
Json degree_to_json(const Degree& d);

/// [["p/q","p/q"], ...]; integers and exact decimals are accepted too.
PointConfiguration points_from_json(const Json& j);
Json points_to_json(const PointConfiguration& p);

/// {"genus", "vertices", "boundary", "glue", "vectors", "marks"}; marks are
/// ["v", vertex] or ["e", edge].
Json type_to_json(const CombinatorialType& t);
/// validate=false skips the admissibility search (trusted cache input).
CombinatorialType type_from_json(const Json& j, bool validate = true);

Json coordinates_to_json(const StratumCoordinates& c);

}  // namespace trop

#include "trop/io.hpp"

#include "trop/error.hpp"

namespace trop {

namespace {

Vec2 vec_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer())
    throw Error(ErrorCode::InvalidInput, "expected an integer pair, got " + j.dump());
  return {j[0].get<std::int64_t>(), j[1].get<std::int64_t>()};
}

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(Integer(std::to_string(j.get<std::int64_t>())));
  throw Error(ErrorCode::InvalidInput, "expected a rational string, got " + j.dump());
}

}  // namespace

Degree degree_from_json(const Json& j) {
  if (j.is_object() && j.contains("projective")) {
    if (!j["projective"].is_number_integer()) throw Error(ErrorCode::InvalidInput, "projective degree must be an integer");
    return Degree::projective(j["projective"].get<int>());
  }
  if (!j.is_array()) throw Error(ErrorCode::InvalidInput, "degree must be a list or {\"projective\":d}");
  std::vector<Vec2> vs;
  for (const Json& e : j) {
    if (!e.is_object() || !e.contains("v")) throw Error(ErrorCode::InvalidInput, "degree entry needs \"v\"");
    const Vec2 v = vec_from_json(e["v"]);
    const int mult = e.value("mult", 1);
    if (mult < 1) throw Error(ErrorCode::InvalidInput, "multiplicity must be positive");
    for (int k = 0; k < mult; ++k) vs.push_back(v);
  }
  return Degree::from_vectors(std::move(vs));
}

Json degree_to_json(const Degree& d) {
  Json out = Json::array();
  for (const auto& e : d.entries()) out.push_back({{"v", {e.vector.x, e.vector.y}}, {"mult", e.multiplicity}});
  return out;
}

PointConfiguration points_from_json(const Json& j) {
  if (!j.is_array()) throw Error(ErrorCode::InvalidInput, "points must be a list of pairs");
  PointConfiguration out;
  for (const Json& p : j) {
    if (!p.is_array() || p.size() != 2) throw Error(ErrorCode::InvalidInput, "point must be a pair, got " + p.dump());
    out.push_back({rational_from_json(p[0]), rational_from_json(p[1])});
  }
  return out;
}

Json points_to_json(const PointConfiguration& p) {
  Json out = Json::array();
  for (const Point2& q : p) out.push_back({to_string(q.x), to_string(q.y)});
  return out;
}

Json type_to_json(const CombinatorialType& t) {
  const Graph& g = t.graph();
  Json boundary = Json::array(), glue = Json::array(), vectors = Json::array(), marks = Json::array();
  for (int f = 0; f < g.flag_count(); ++f) {
    boundary.push_back(g.boundary(f));
    const Vec2 v = t.decorated.v(f);
    vectors.push_back({v.x, v.y});
    if (!g.is_end_flag(f) && f < g.glue(f)) glue.push_back({f, g.glue(f)});
  }
  for (const Stratum& s : t.marking) marks.push_back({s.on_vertex() ? "v" : "e", s.index});
  return {{"genus", t.genus}, {"vertices", g.vertex_count()}, {"boundary", boundary},
          {"glue", glue},     {"vectors", vectors},           {"marks", marks}};
}

CombinatorialType type_from_json(const Json& j, bool validate) {
  try {
    const int genus = j.at("genus").get<int>();
    const int vertices = j.at("vertices").get<int>();
    std::vector<int> boundary = j.at("boundary").get<std::vector<int>>();
    std::vector<std::pair<int, int>> glue;
    for (const Json& p : j.at("glue")) glue.emplace_back(p.at(0).get<int>(), p.at(1).get<int>());
    std::vector<Vec2> vectors;
    for (const Json& v : j.at("vectors")) vectors.push_back(vec_from_json(v));
    MarkingMap marks;
    for (const Json& m : j.at("marks")) {
      const std::string kind = m.at(0).get<std::string>();
      const int index = m.at(1).get<int>();
      if (kind == "v")
        marks.push_back(Stratum::vertex(index));
      else if (kind == "e")
        marks.push_back(Stratum::edge(index));
      else
        throw Error(ErrorCode::InvalidInput, "mark kind must be \"v\" or \"e\"");
    }
    DecoratedGraph d = DecoratedGraph::from_flag_vectors(Graph::from_boundary(vertices, std::move(boundary), glue), vectors);
    if (validate) return make_type(std::move(d), std::move(marks), genus);
    Degree degree = degree_of(d);
    return {std::move(d), std::move(marks), genus, std::move(degree)};
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::InvalidInput, std::string("malformed type: ") + e.what());
  }
}

Json coordinates_to_json(const StratumCoordinates& c) {
  Json lengths = Json::array(), offsets = Json::array();
  for (const Rational& l : c.lengths) lengths.push_back(to_string(l));
  for (const Rational& o : c.offsets) offsets.push_back(to_string(o));
  return {{"root", {to_string(c.root.x), to_string(c.root.y)}}, {"lengths", lengths}, {"offsets", offsets}};
}

}  // namespace trop

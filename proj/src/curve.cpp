#include "trop/curve.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "trop/error.hpp"

namespace trop {

Degree Degree::from_vectors(std::vector<Vec2> vectors) {
  Vec2 sum;
  for (const Vec2& v : vectors) {
    if (v.is_zero()) throw Error(ErrorCode::InvalidInput, "degree contains the zero vector");
    sum += v;
  }
  if (!sum.is_zero()) {
    std::ostringstream os;
    os << "degree vectors sum to " << sum;
    throw Error(ErrorCode::InvalidInput, os.str());
  }
  std::sort(vectors.begin(), vectors.end());
  Degree d;
  for (const Vec2& v : vectors) {
    if (!d.entries_.empty() && d.entries_.back().vector == v)
      ++d.entries_.back().multiplicity;
    else
      d.entries_.push_back({v, 1});
  }
  return d;
}

Degree Degree::projective(int d) {
  if (d < 1) throw Error(ErrorCode::InvalidInput, "projective degree must be positive");
  std::vector<Vec2> vs;
  for (int i = 0; i < d; ++i) {
    vs.push_back({-1, 0});
    vs.push_back({0, -1});
    vs.push_back({1, 1});
  }
  return from_vectors(std::move(vs));
}

std::vector<Vec2> Degree::vectors() const {
  std::vector<Vec2> out;
  for (const auto& e : entries_)
    for (int i = 0; i < e.multiplicity; ++i) out.push_back(e.vector);
  return out;
}

int Degree::size() const {
  int n = 0;
  for (const auto& e : entries_) n += e.multiplicity;
  return n;
}

std::string Degree::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (const Vec2& v : vectors()) {
    if (!first) os << " + ";
    os << v;
    first = false;
  }
  return os.str();
}

DecoratedGraph::DecoratedGraph(Graph graph, std::vector<int> weights, std::vector<Vec2> directions)
    : graph_(std::move(graph)), weights_(std::move(weights)), directions_(std::move(directions)) {
  if (static_cast<int>(weights_.size()) != graph_.edge_count())
    throw Error(ErrorCode::InvalidInput, "one weight per edge required");
  if (static_cast<int>(directions_.size()) != graph_.flag_count())
    throw Error(ErrorCode::InvalidInput, "one direction per flag required");
  for (int w : weights_)
    if (w < 1) throw Error(ErrorCode::InvalidInput, "edge weights must be positive");
  for (int f = 0; f < graph_.flag_count(); ++f) {
    if (!is_primitive(direction(f))) throw Error(ErrorCode::InvalidInput, "flag direction not primitive");
    if (!graph_.is_end_flag(f) && direction(graph_.glue(f)) != -direction(f))
      throw Error(ErrorCode::InvalidInput, "opposite flags must have opposite directions");
  }
}

DecoratedGraph DecoratedGraph::from_flag_vectors(Graph graph, const std::vector<Vec2>& flag_vectors) {
  if (static_cast<int>(flag_vectors.size()) != graph.flag_count())
    throw Error(ErrorCode::InvalidInput, "one vector per flag required");
  std::vector<int> weights(static_cast<std::size_t>(graph.edge_count()));
  std::vector<Vec2> dirs(flag_vectors.size());
  for (int f = 0; f < graph.flag_count(); ++f) {
    const Vec2 v = flag_vectors[static_cast<std::size_t>(f)];
    if (v.is_zero()) throw Error(ErrorCode::InvalidInput, "zero flag vector");
    if (!graph.is_end_flag(f) && flag_vectors[static_cast<std::size_t>(graph.glue(f))] != -v)
      throw Error(ErrorCode::InvalidInput, "opposite flags must carry opposite vectors");
    weights[static_cast<std::size_t>(graph.edge_of(f))] = static_cast<int>(content(v));
    dirs[static_cast<std::size_t>(f)] = primitive(v);
  }
  return DecoratedGraph(std::move(graph), std::move(weights), std::move(dirs));
}

std::vector<BalancingViolation> validate_balancing(const DecoratedGraph& d) {
  std::vector<BalancingViolation> out;
  const Graph& g = d.graph();
  for (int v = 0; v < g.vertex_count(); ++v) {
    Vec2 sum;
    bool spans = false;
    const auto& flags = g.flags_at(v);
    for (int f : flags) sum += d.v(f);
    for (std::size_t i = 0; i < flags.size() && !spans; ++i)
      for (std::size_t j = i + 1; j < flags.size(); ++j)
        if (!parallel(d.v(flags[i]), d.v(flags[j]))) {
          spans = true;
          break;
        }
    if (!sum.is_zero() || !spans) out.push_back({v, sum, spans});
  }
  return out;
}

Degree degree_of(const DecoratedGraph& d) {
  std::vector<Vec2> ends;
  const Graph& g = d.graph();
  for (int f = 0; f < g.flag_count(); ++f)
    if (g.is_end_flag(f)) ends.push_back(d.v(f));
  return Degree::from_vectors(std::move(ends));
}

std::optional<std::vector<int>> is_valid_marking(const DecoratedGraph& d, const MarkingMap& marks) {
  const Graph& g = d.graph();
  std::vector<int> witness(marks.size(), -1);
  std::vector<std::size_t> on_vertex;
  for (std::size_t i = 0; i < marks.size(); ++i) {
    const Stratum& s = marks[i];
    if (s.on_vertex()) {
      if (s.index < 0 || s.index >= g.vertex_count()) throw Error(ErrorCode::InvalidInput, "mark on unknown vertex");
      on_vertex.push_back(i);
    } else {
      if (s.index < 0 || s.index >= g.edge_count()) throw Error(ErrorCode::InvalidInput, "mark on unknown edge");
      witness[i] = g.edges()[static_cast<std::size_t>(s.index)].first;
    }
  }
  std::vector<int> removal_count(static_cast<std::size_t>(g.edge_count()), 0);
  for (std::size_t i = 0; i < marks.size(); ++i)
    if (witness[i] >= 0) ++removal_count[static_cast<std::size_t>(g.edge_of(witness[i]))];

  std::vector<bool> removed(static_cast<std::size_t>(g.edge_count()));
  std::function<bool(std::size_t)> search = [&](std::size_t k) -> bool {
    if (k == on_vertex.size()) {
      for (int e = 0; e < g.edge_count(); ++e) removed[static_cast<std::size_t>(e)] = removal_count[static_cast<std::size_t>(e)] > 0;
      return complement_is_admissible(g, removed);
    }
    const std::size_t mark = on_vertex[k];
    for (int f : g.flags_at(marks[mark].index)) {
      const int e = g.edge_of(f);
      witness[mark] = f;
      ++removal_count[static_cast<std::size_t>(e)];
      const bool ok = search(k + 1);
      --removal_count[static_cast<std::size_t>(e)];
      if (ok) return true;
    }
    return false;
  };
  if (!search(0)) return std::nullopt;
  return witness;
}

int minimum_marks(const Degree& degree, int genus) { return degree.size() + genus - 1; }

}  // namespace trop

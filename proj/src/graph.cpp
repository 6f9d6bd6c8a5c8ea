#include "trop/graph.hpp"

#include <numeric>
#include <string>

#include "trop/error.hpp"

namespace trop {

namespace {

struct DisjointSets {
  std::vector<int> parent;
  explicit DisjointSets(int n) : parent(static_cast<std::size_t>(n)) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[static_cast<std::size_t>(a)] = b;
    return true;
  }
};

}  // namespace

Graph Graph::build(int vertex_count, std::span<const std::pair<int, int>> flag_assignments,
                   std::span<const std::pair<int, int>> glue_pairs) {
  const int flag_count = static_cast<int>(flag_assignments.size());
  std::vector<int> boundary(static_cast<std::size_t>(flag_count), -1);
  for (auto [flag, vertex] : flag_assignments) {
    if (flag < 0 || flag >= flag_count || vertex < 0 || vertex >= vertex_count)
      throw Error(ErrorCode::InvalidInput, "flag assignment out of range");
    if (boundary[static_cast<std::size_t>(flag)] != -1)
      throw Error(ErrorCode::InvalidInput, "flag " + std::to_string(flag) + " assigned twice");
    boundary[static_cast<std::size_t>(flag)] = vertex;
  }
  return from_boundary(vertex_count, std::move(boundary), glue_pairs);
}

Graph Graph::from_boundary(int vertex_count, std::vector<int> boundary,
                           std::span<const std::pair<int, int>> glue_pairs) {
  Graph g;
  const int flag_count = static_cast<int>(boundary.size());
  g.boundary_ = std::move(boundary);
  g.glue_.resize(static_cast<std::size_t>(flag_count));
  std::iota(g.glue_.begin(), g.glue_.end(), 0);
  std::vector<bool> used(static_cast<std::size_t>(flag_count), false);
  for (auto [a, b] : glue_pairs) {
    if (a < 0 || a >= flag_count || b < 0 || b >= flag_count)
      throw Error(ErrorCode::InvalidInput, "glue pair out of range");
    if (a == b || used[static_cast<std::size_t>(a)] || used[static_cast<std::size_t>(b)])
      throw Error(ErrorCode::GlueNotInvolution, "flag reused in glue pairs");
    used[static_cast<std::size_t>(a)] = used[static_cast<std::size_t>(b)] = true;
    g.glue_[static_cast<std::size_t>(a)] = b;
    g.glue_[static_cast<std::size_t>(b)] = a;
  }
  g.flags_at_.assign(static_cast<std::size_t>(vertex_count), {});
  for (int f = 0; f < flag_count; ++f) {
    const int v = g.boundary_[static_cast<std::size_t>(f)];
    if (v < 0 || v >= vertex_count) throw Error(ErrorCode::InvalidInput, "flag without a vertex");
    g.flags_at_[static_cast<std::size_t>(v)].push_back(f);
  }
  for (int v = 0; v < vertex_count; ++v)
    if (g.flags_at_[static_cast<std::size_t>(v)].empty())
      throw Error(ErrorCode::IsolatedVertex, "vertex " + std::to_string(v) + " has no flags");
  if (vertex_count == 0) throw Error(ErrorCode::InvalidInput, "graph without vertices");

  DisjointSets ds(vertex_count);
  int parts = vertex_count;
  for (int f = 0; f < flag_count; ++f)
    if (ds.unite(g.boundary_[static_cast<std::size_t>(f)], g.boundary_[static_cast<std::size_t>(g.glue_[static_cast<std::size_t>(f)])])) --parts;
  if (parts != 1) throw Error(ErrorCode::Disconnected, std::to_string(parts) + " components");

  g.derive();
  return g;
}

void Graph::derive() {
  edge_of_.assign(boundary_.size(), -1);
  for (int f = 0; f < flag_count(); ++f) {
    if (edge_of_[static_cast<std::size_t>(f)] != -1) continue;
    const int other = glue(f);
    const int id = static_cast<int>(edges_.size());
    if (other == f) {
      edges_.push_back({f, -1});
    } else {
      edges_.push_back({f, other});
      edge_of_[static_cast<std::size_t>(other)] = id;
      ++internal_edges_;
    }
    edge_of_[static_cast<std::size_t>(f)] = id;
  }
}

std::pair<int, int> Graph::endpoints(int edge) const {
  const Edge& e = edges_[static_cast<std::size_t>(edge)];
  return {boundary(e.first), e.unbounded() ? -1 : boundary(e.second)};
}

int genus(const Graph& g) { return g.internal_edge_count() - g.vertex_count() + 1; }

std::vector<ComponentReport> complement_analysis(const Graph& g, std::span<const int> removed_flags) {
  std::vector<bool> removed(static_cast<std::size_t>(g.edge_count()), false);
  for (int f : removed_flags) {
    if (f < 0 || f >= g.flag_count()) throw Error(ErrorCode::InvalidInput, "removed flag out of range");
    removed[static_cast<std::size_t>(g.edge_of(f))] = true;
  }
  DisjointSets ds(g.vertex_count());
  for (int e = 0; e < g.edge_count(); ++e) {
    const Edge& edge = g.edges()[static_cast<std::size_t>(e)];
    if (removed[static_cast<std::size_t>(e)] || edge.unbounded()) continue;
    ds.unite(g.boundary(edge.first), g.boundary(edge.second));
  }
  std::vector<int> index(static_cast<std::size_t>(g.vertex_count()), -1);
  std::vector<ComponentReport> out;
  std::vector<int> internal_edges;
  for (int v = 0; v < g.vertex_count(); ++v) {
    const int r = ds.find(v);
    if (index[static_cast<std::size_t>(r)] == -1) {
      index[static_cast<std::size_t>(r)] = static_cast<int>(out.size());
      out.emplace_back();
      internal_edges.push_back(0);
    }
    out[static_cast<std::size_t>(index[static_cast<std::size_t>(r)])].vertices.push_back(v);
  }
  for (int e = 0; e < g.edge_count(); ++e) {
    if (removed[static_cast<std::size_t>(e)]) continue;
    const Edge& edge = g.edges()[static_cast<std::size_t>(e)];
    const int c = index[static_cast<std::size_t>(ds.find(g.boundary(edge.first)))];
    if (edge.unbounded())
      ++out[static_cast<std::size_t>(c)].unbounded_end_count;
    else
      ++internal_edges[static_cast<std::size_t>(c)];
  }
  for (std::size_t c = 0; c < out.size(); ++c)
    out[c].has_loop = internal_edges[c] >= static_cast<int>(out[c].vertices.size());
  return out;
}

bool complement_is_admissible(const Graph& g, const std::vector<bool>& removed_edge) {
  DisjointSets ds(g.vertex_count());
  std::vector<int> ends(static_cast<std::size_t>(g.vertex_count()), 0);
  for (int e = 0; e < g.edge_count(); ++e) {
    if (removed_edge[static_cast<std::size_t>(e)]) continue;
    const Edge& edge = g.edges()[static_cast<std::size_t>(e)];
    if (edge.unbounded()) ++ends[static_cast<std::size_t>(g.boundary(edge.first))];
  }
  for (int e = 0; e < g.edge_count(); ++e) {
    if (removed_edge[static_cast<std::size_t>(e)]) continue;
    const Edge& edge = g.edges()[static_cast<std::size_t>(e)];
    if (edge.unbounded()) continue;
    const int a = ds.find(g.boundary(edge.first));
    const int b = ds.find(g.boundary(edge.second));
    if (a == b) return false;  // loop
    ds.parent[static_cast<std::size_t>(a)] = b;
    ends[static_cast<std::size_t>(b)] += ends[static_cast<std::size_t>(a)];
    if (ends[static_cast<std::size_t>(b)] > 1) return false;
  }
  for (int v = 0; v < g.vertex_count(); ++v)
    if (ds.find(v) == v && ends[static_cast<std::size_t>(v)] > 1) return false;
  return true;
}

}  // namespace trop

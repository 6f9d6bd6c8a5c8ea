#pragma once

#include <span>
#include <utility>
#include <vector>

namespace trop {

/// Orbit of the gluing involution: two flags for an internal edge, one for an end.
struct Edge {
  int first = -1;
  int second = -1;  ///< -1 for an unbounded edge

  bool unbounded() const { return second < 0; }
};

/// Abstract graph (vertices, flags, boundary map, gluing involution).
/// Flags and vertices are dense indices; edges are derived from the involution.
/// Instances are validated on construction (involution, no isolated vertex,
/// connected) and immutable afterwards.
class Graph {
 public:
  /// flag_assignments: (flag, vertex) for every flag 0..F-1.
  /// glue_pairs: internal edges; flags absent from every pair become ends.
  static Graph build(int vertex_count, std::span<const std::pair<int, int>> flag_assignments,
                     std::span<const std::pair<int, int>> glue_pairs);

  /// Convenience form: boundary[f] is the vertex of flag f.
  static Graph from_boundary(int vertex_count, std::vector<int> boundary,
                             std::span<const std::pair<int, int>> glue_pairs);

  int vertex_count() const { return static_cast<int>(flags_at_.size()); }
  int flag_count() const { return static_cast<int>(boundary_.size()); }
  int boundary(int flag) const { return boundary_[static_cast<std::size_t>(flag)]; }
  int glue(int flag) const { return glue_[static_cast<std::size_t>(flag)]; }
  bool is_end_flag(int flag) const { return glue(flag) == flag; }

  const std::vector<int>& flags_at(int vertex) const { return flags_at_[static_cast<std::size_t>(vertex)]; }
  int valence(int vertex) const { return static_cast<int>(flags_at(vertex).size()); }

  /// Edges ordered by their smallest flag.
  const std::vector<Edge>& edges() const { return edges_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  int edge_of(int flag) const { return edge_of_[static_cast<std::size_t>(flag)]; }
  int internal_edge_count() const { return internal_edges_; }
  int end_count() const { return edge_count() - internal_edges_; }

  /// Vertices of an edge (second is -1 for ends).
  std::pair<int, int> endpoints(int edge) const;

 private:
  Graph() = default;
  void derive();

  std::vector<int> boundary_;
  std::vector<int> glue_;
  std::vector<std::vector<int>> flags_at_;
  std::vector<Edge> edges_;
  std::vector<int> edge_of_;
  int internal_edges_ = 0;
};

/// #internal edges - #vertices + 1 (the first Betti number of a connected graph).
int genus(const Graph& g);

struct ComponentReport {
  std::vector<int> vertices;
  bool has_loop = false;
  int unbounded_end_count = 0;
};

/// Components of |G| minus the open edges [F] for F in removed_flags.
/// Vertices are kept; a removed end disappears entirely.
std::vector<ComponentReport> complement_analysis(const Graph& g, std::span<const int> removed_flags);

/// Same test on an edge mask, reduced to the admissibility verdict:
/// true iff no component has a loop or more than one end.
bool complement_is_admissible(const Graph& g, const std::vector<bool>& removed_edge);

}  // namespace trop

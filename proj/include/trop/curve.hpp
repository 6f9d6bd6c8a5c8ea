#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "trop/graph.hpp"
#include "trop/lattice.hpp"

namespace trop {

/// Multiset of nonzero lattice vectors with zero sum, stored sorted so that
/// equality is syntactic. Non-primitive entries encode weighted ends.
class Degree {
 public:
  struct Entry {
    Vec2 vector;
    int multiplicity = 0;
    friend bool operator==(const Entry&, const Entry&) = default;
  };

  static Degree from_vectors(std::vector<Vec2> vectors);
  /// d copies each of (-1,0), (0,-1), (1,1).
  static Degree projective(int d);

  const std::vector<Entry>& entries() const { return entries_; }
  /// Expanded, sorted.
  std::vector<Vec2> vectors() const;
  int size() const;  ///< #Delta
  std::string to_string() const;

  friend bool operator==(const Degree&, const Degree&) = default;

 private:
  std::vector<Entry> entries_;
};

/// Graph with weights on edges and primitive directions on flags.
class DecoratedGraph {
 public:
  /// Validates: weights >= 1, directions primitive, u(j(F)) = -u(F).
  DecoratedGraph(Graph graph, std::vector<int> weights, std::vector<Vec2> directions);

  /// Factors each flag vector v(F) into (primitive u, weight); v(j(F)) must equal -v(F).
  static DecoratedGraph from_flag_vectors(Graph graph, const std::vector<Vec2>& flag_vectors);

  const Graph& graph() const { return graph_; }
  int weight(int edge) const { return weights_[static_cast<std::size_t>(edge)]; }
  Vec2 direction(int flag) const { return directions_[static_cast<std::size_t>(flag)]; }
  /// v(F) = weight * u(F)
  Vec2 v(int flag) const { return direction(flag) * weight(graph_.edge_of(flag)); }

  const std::vector<int>& weights() const { return weights_; }
  const std::vector<Vec2>& directions() const { return directions_; }

 private:
  Graph graph_;
  std::vector<int> weights_;
  std::vector<Vec2> directions_;
};

struct BalancingViolation {
  int vertex = -1;
  Vec2 sum;
  bool spans = true;
};

/// Empty result means balanced: every vertex has zero vector sum and spanning flags.
std::vector<BalancingViolation> validate_balancing(const DecoratedGraph& d);

/// Multiset of v(F) over ends.
Degree degree_of(const DecoratedGraph& d);

/// Location of a marked point: a vertex or an edge (by edge index).
struct Stratum {
  enum class Kind { Vertex, Edge };
  Kind kind = Kind::Edge;
  int index = -1;

  static Stratum vertex(int v) { return {Kind::Vertex, v}; }
  static Stratum edge(int e) { return {Kind::Edge, e}; }
  bool on_vertex() const { return kind == Kind::Vertex; }

  friend auto operator<=>(const Stratum&, const Stratum&) = default;
};

/// Marked point i lies on marks[i].
using MarkingMap = std::vector<Stratum>;

/// Returns a witness flag F_i for each mark when the marking is admissible:
/// removing the open edges [F_i] leaves no loop and no component with more
/// than one end. Marks on edges have a forced edge; marks on vertices are
/// searched over the flags at that vertex.
std::optional<std::vector<int>> is_valid_marking(const DecoratedGraph& d, const MarkingMap& marks);

/// #Delta + g - 1
int minimum_marks(const Degree& degree, int genus);

}  // namespace trop

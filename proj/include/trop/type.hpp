#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "trop/curve.hpp"
#include "trop/linalg.hpp"

namespace trop {

/// alpha = (Gamma, omega, u, s) together with the ambient genus g. The
/// degree is read off the ends.
struct CombinatorialType {
  DecoratedGraph decorated;
  MarkingMap marking;
  int genus = 0;
  Degree degree;

  const Graph& graph() const { return decorated.graph(); }
  int mark_count() const { return static_cast<int>(marking.size()); }
};

/// Validates balancing, valence >= 3, g(C) <= g, at least g - g(C) marks on
/// vertices, n = #Delta + g - 1 and admissibility of the marking.
/// Throws Error(InvalidInput) naming the first violated condition.
CombinatorialType make_type(DecoratedGraph decorated, MarkingMap marking, int genus);

int graph_genus(const CombinatorialType& t);
int vertex_mark_count(const CombinatorialType& t);

/// sum (val V - 3) + (g - g(C)) + #{i : s(i) vertex}
int codimension(const CombinatorialType& t);
/// 2n - 2 + 2 g(C) - #internal edges - #{i : s(i) edge}
int codimension_from_edges(const CombinatorialType& t);

/// codim 2 with two 4-valent vertices joined by exactly two edges.
bool is_exceptional(const CombinatorialType& t);

/// What a positivity form measures.
struct FormTag {
  enum class Kind { Length, Offset, Remaining };
  Kind kind = Kind::Length;
  int index = -1;  ///< edge for Length, mark for Offset/Remaining
};

/// Affine coordinates of the stratum: root position (2), lattice length of
/// every internal edge, and for every mark on an edge its lattice distance
/// from the vertex of the edge's first flag. Offsets on ends are measured
/// from the end's vertex.
struct StratumFrame {
  std::size_t dim = 0;
  int root = 0;
  std::vector<int> length_coord;  ///< per edge, -1 for ends
  std::vector<int> offset_coord;  ///< per mark, -1 for marks on vertices
  std::vector<bool> tree_edge;    ///< per edge; ends count as tree edges
  std::vector<std::array<Vector, 2>> vertex_position;  ///< linear forms in the coordinates
  std::vector<std::array<Vector, 2>> mark_position;
  Matrix loops;                   ///< two rows per non-tree internal edge
  std::vector<Vector> forms;      ///< strictly positive on the stratum
  std::vector<FormTag> form_tags;
};

/// Spanning tree chosen greedily in edge_priority order (default: edge index order).
StratumFrame make_frame(const CombinatorialType& t, std::span<const int> edge_priority = {});

/// dim A - rank(loop rows).
int stratum_dimension(const CombinatorialType& t);

/// Basis of the loop kernel in coordinate space: columns of the returned
/// matrix parametrise the affine hull of the stratum.
Matrix stratum_parametrisation(const StratumFrame& frame);

/// True iff some point of the affine hull makes the listed forms vanish and
/// every other form strictly positive.
bool face_is_nonempty(const StratumFrame& frame, std::span<const int> zero_forms);

/// Isomorphism invariant including mark labels.
std::string canonical_form(const CombinatorialType& t);
/// Isomorphism invariant with marks counted per stratum but unlabelled.
std::string shape_key(const CombinatorialType& t);
/// Same type with vertices and flags in canonical order.
CombinatorialType canonicalize(const CombinatorialType& t);

/// Type of the boundary face where the given forms vanish: zero-length
/// edges are contracted, marks with zero offset move onto the vertex.
/// Throws Error(InvalidInput) when the face is not itself a type.
CombinatorialType contract_face(const CombinatorialType& t, const StratumFrame& frame, std::span<const int> zero_forms);

/// Codimension-0 types having t in the boundary of their stratum.
/// Throws Error(NotAWallType) unless t has codim 1 or is exceptional.
struct Resolution {
  CombinatorialType type;
  std::vector<int> zero_forms;  ///< forms of `type` that vanish on t's stratum
};
std::vector<Resolution> resolutions(const CombinatorialType& t);

std::string describe(const CombinatorialType& t);

}  // namespace trop

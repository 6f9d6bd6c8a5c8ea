#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "trop/curve.hpp"

namespace trop {

/// Per-stratum decoration that an isomorphism must preserve in addition to
/// (Gamma, w, u): sorted mark labels for labelled types, or a one-element
/// count vector when marks are unlabelled.
struct MarkDecoration {
  std::vector<std::vector<int>> on_vertex;  ///< indexed by vertex
  std::vector<std::vector<int>> on_edge;    ///< indexed by edge
};

MarkDecoration no_marks(const DecoratedGraph& d);
MarkDecoration labelled_marks(const DecoratedGraph& d, const MarkingMap& marks);
MarkDecoration counted_marks(const DecoratedGraph& d, const MarkingMap& marks);

struct CanonicalLabelling {
  std::string key;
  std::vector<int> vertex_order;  ///< canonical position -> original vertex
};

/// Colour refinement followed by individualisation over colour classes;
/// the certificate is the lexicographically least serialisation over all
/// leaves of the search tree.
CanonicalLabelling canonical_labelling(const DecoratedGraph& d, const MarkDecoration& marks);

/// All flag permutations preserving boundary, gluing, weights, directions
/// and the mark decoration.
std::vector<std::vector<int>> flag_automorphisms(const DecoratedGraph& d, const MarkDecoration& marks);

/// Rebuilds d with vertices in canonical order and flags sorted by
/// (vertex, descriptor). Returns the new graph and, for every old flag,
/// its new index.
struct Relabelled {
  DecoratedGraph graph;
  std::vector<int> flag_map;    ///< old flag -> new flag
  std::vector<int> vertex_map;  ///< old vertex -> new vertex
  std::vector<int> edge_map;    ///< old edge -> new edge
};
Relabelled relabel_canonically(const DecoratedGraph& d, const MarkDecoration& marks);

}  // namespace trop

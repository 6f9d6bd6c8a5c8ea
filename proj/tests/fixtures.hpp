#pragma once

#include <utility>
#include <vector>

#include "trop/curve.hpp"
#include "trop/graph.hpp"
#include "trop/type.hpp"

namespace trop::fixtures {

// Catalogs shared between test runs.
inline const char* cache_dir() { return TROP_CACHE_DIR; }

// A flag is (vertex, outgoing v(F)); glue pairs refer to flag indices.
struct FlagSpec {
  int vertex;
  Vec2 v;
};

inline DecoratedGraph curve(int vertices, const std::vector<FlagSpec>& flags,
                            const std::vector<std::pair<int, int>>& glue) {
  std::vector<int> boundary;
  std::vector<Vec2> vectors;
  for (const auto& f : flags) {
    boundary.push_back(f.vertex);
    vectors.push_back(f.v);
  }
  return DecoratedGraph::from_flag_vectors(Graph::from_boundary(vertices, boundary, glue), vectors);
}

// Two 4-valent vertices joined by a double edge; flags F1..F8 are 0..7,
// F1,F2,F5,F6 at V1 and F3,F4,F7,F8 at V2, glued {F5,F8} and {F6,F7}.
inline Graph double_edge_graph() {
  const std::vector<std::pair<int, int>> at = {{0, 0}, {1, 0}, {2, 1}, {3, 1}, {4, 0}, {5, 0}, {6, 1}, {7, 1}};
  const std::vector<std::pair<int, int>> glue = {{4, 7}, {5, 6}};
  return Graph::build(2, at, glue);
}

// The genus-one curve on the double-edge graph of degree
// (-1,1)+(-1,-1)+(0,-2)+(2,2).
inline DecoratedGraph double_edge_curve() {
  return curve(2,
               {{0, {-1, 1}}, {0, {-1, -1}}, {1, {0, -2}}, {1, {2, 2}},
                {0, {1, 0}}, {0, {1, 0}}, {1, {-1, 0}}, {1, {-1, 0}}},
               {{4, 7}, {5, 6}});
}

inline int edge_of_flag(const DecoratedGraph& d, int flag) { return d.graph().edge_of(flag); }

// Marks x1..x3 on E1, E3, E4 and x4 on V2: admissible through a leftward flag.
inline MarkingMap double_edge_left_marking(const DecoratedGraph& d) {
  return {Stratum::edge(edge_of_flag(d, 0)), Stratum::edge(edge_of_flag(d, 2)), Stratum::edge(edge_of_flag(d, 3)),
          Stratum::vertex(1)};
}

// x1, x2 on E1, x3 on E3, x4 on V2: a leftward flag leaves two ends
// together, any other flag keeps the loop.
inline MarkingMap double_edge_right_marking(const DecoratedGraph& d) {
  return {Stratum::edge(edge_of_flag(d, 0)), Stratum::edge(edge_of_flag(d, 0)), Stratum::edge(edge_of_flag(d, 2)),
          Stratum::vertex(1)};
}

// Marks on E1, E3, E4 and one edge of the double edge: an exceptional
// type of codimension two.
inline CombinatorialType exceptional_double_edge() {
  auto d = double_edge_curve();
  const Graph& g = d.graph();
  MarkingMap marks = {Stratum::edge(g.edge_of(0)), Stratum::edge(g.edge_of(2)), Stratum::edge(g.edge_of(3)),
                      Stratum::edge(g.edge_of(4))};
  return make_type(std::move(d), std::move(marks), 1);
}

// Genus 3, degree (-4,-2)+(4,-2)+(0,4): K4 with a centre D and outer
// vertices A, B, C each carrying one end. Marks on A, B, C and on the
// edges DA, DB.
inline CombinatorialType rigid_k4_type() {
  // vertices: A=0, B=1, C=2, D=3
  const std::vector<FlagSpec> flags = {
      {0, {-4, -2}}, {1, {4, -2}}, {2, {0, 4}},  // ends 0..2
      {3, {-2, -1}}, {0, {2, 1}},                // DA 3,4
      {3, {2, -1}},  {1, {-2, 1}},               // DB 5,6
      {3, {0, 2}},   {2, {0, -2}},               // DC 7,8
      {0, {1, 0}},   {1, {-1, 0}},               // AB 9,10
      {1, {-1, 1}},  {2, {1, -1}},               // BC 11,12
      {2, {-1, -1}}, {0, {1, 1}},                // CA 13,14
  };
  auto d = curve(4, flags, {{3, 4}, {5, 6}, {7, 8}, {9, 10}, {11, 12}, {13, 14}});
  MarkingMap marks = {Stratum::vertex(0), Stratum::vertex(1), Stratum::vertex(2), Stratum::edge(d.graph().edge_of(3)),
                      Stratum::edge(d.graph().edge_of(5))};
  return make_type(std::move(d), std::move(marks), 3);
}

// A wall with one weighted resolution: one 4-valent vertex with ends (-1,0), (-1,-2),
// (0,1), (2,1); marks on the first three ends.
inline CombinatorialType weighted_wall_type() {
  auto d = curve(1, {{0, {-1, 0}}, {0, {-1, -2}}, {0, {0, 1}}, {0, {2, 1}}}, {});
  MarkingMap marks = {Stratum::edge(d.graph().edge_of(0)), Stratum::edge(d.graph().edge_of(1)),
                      Stratum::edge(d.graph().edge_of(2))};
  return make_type(std::move(d), std::move(marks), 0);
}

// Degree-1 star with marks on the ends leaving along a and b.
inline CombinatorialType line_type(int a, int b) {
  auto d = curve(1, {{0, {-1, 0}}, {0, {0, -1}}, {0, {1, 1}}}, {});
  MarkingMap marks = {Stratum::edge(d.graph().edge_of(a)), Stratum::edge(d.graph().edge_of(b))};
  return make_type(std::move(d), std::move(marks), 0);
}

}  // namespace trop::fixtures

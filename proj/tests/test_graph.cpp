#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "fixtures.hpp"
#include "trop/error.hpp"
#include "trop/graph.hpp"

using namespace trop;

namespace {

struct Dsu {
  std::vector<int> parent;
  explicit Dsu(int n) : parent(static_cast<std::size_t>(n)) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
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

struct RandomGraph {
  int vertices = 0;
  std::vector<int> boundary;
  std::vector<std::pair<int, int>> glue;
};

// Random connected graph: spanning tree, extra edges (multi-edges and
// self-loops allowed), a few ends; flag indices shuffled.
RandomGraph random_graph(std::mt19937_64& rng) {
  RandomGraph r;
  r.vertices = std::uniform_int_distribution<int>(1, 6)(rng);
  std::vector<std::pair<int, int>> edges;
  for (int v = 1; v < r.vertices; ++v) edges.push_back({std::uniform_int_distribution<int>(0, v - 1)(rng), v});
  const int extra = std::uniform_int_distribution<int>(0, 4)(rng);
  std::uniform_int_distribution<int> pick(0, r.vertices - 1);
  for (int k = 0; k < extra; ++k) edges.push_back({pick(rng), pick(rng)});
  std::vector<int> ends;
  const int end_count = std::uniform_int_distribution<int>(r.vertices == 1 ? 1 : 0, 4)(rng);
  for (int k = 0; k < end_count; ++k) ends.push_back(pick(rng));

  const int flags = static_cast<int>(2 * edges.size() + ends.size());
  std::vector<int> perm(static_cast<std::size_t>(flags));
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  r.boundary.assign(static_cast<std::size_t>(flags), -1);
  int next = 0;
  for (auto [a, b] : edges) {
    const int fa = perm[static_cast<std::size_t>(next++)], fb = perm[static_cast<std::size_t>(next++)];
    r.boundary[static_cast<std::size_t>(fa)] = a;
    r.boundary[static_cast<std::size_t>(fb)] = b;
    r.glue.push_back({fa, fb});
  }
  for (int v : ends) r.boundary[static_cast<std::size_t>(perm[static_cast<std::size_t>(next++)])] = v;
  return r;
}

}  // namespace

TEST_CASE("double-edge graph has four ends and two internal edges") {
  const Graph g = fixtures::double_edge_graph();
  CHECK(g.vertex_count() == 2);
  CHECK(g.flag_count() == 8);
  CHECK(g.end_count() == 4);
  CHECK(g.internal_edge_count() == 2);
  CHECK(genus(g) == 1);
  for (int f = 0; f < 4; ++f) CHECK(g.is_end_flag(f));
  CHECK(g.glue(4) == 7);
  CHECK(g.glue(6) == 5);
  CHECK(g.valence(0) == 4);
  CHECK(g.valence(1) == 4);
}

TEST_CASE("three-flag star") {
  const std::vector<std::pair<int, int>> at = {{0, 0}, {1, 0}, {2, 0}};
  const Graph g = Graph::build(1, at, {});
  CHECK(g.end_count() == 3);
  CHECK(g.internal_edge_count() == 0);
  CHECK(genus(g) == 0);
}

TEST_CASE("build rejects malformed input") {
  const std::vector<std::pair<int, int>> at = {{0, 0}, {1, 0}, {2, 1}, {3, 1}};
  SUBCASE("reused flag") {
    const std::vector<std::pair<int, int>> glue = {{0, 1}, {1, 2}};
    try {
      Graph::build(2, at, glue);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::GlueNotInvolution);
    }
  }
  SUBCASE("disconnected") {
    try {
      Graph::build(2, at, {});
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::Disconnected);
    }
  }
  SUBCASE("isolated vertex") {
    const std::vector<std::pair<int, int>> glue = {{1, 2}};
    try {
      Graph::build(3, at, glue);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::IsolatedVertex);
    }
  }
}

TEST_CASE("theta graph has genus two") {
  const std::vector<std::pair<int, int>> at = {{0, 0}, {1, 0}, {2, 0}, {3, 1}, {4, 1}, {5, 1}};
  const std::vector<std::pair<int, int>> glue = {{0, 3}, {1, 4}, {2, 5}};
  CHECK(genus(Graph::build(2, at, glue)) == 2);
}

TEST_CASE("genus matches a spanning-forest count on random graphs") {
  std::mt19937_64 rng(20240611);
  for (int trial = 0; trial < 1000; ++trial) {
    const RandomGraph r = random_graph(rng);
    const Graph g = Graph::from_boundary(r.vertices, r.boundary, r.glue);
    Dsu dsu(r.vertices);
    int cycles = 0;
    for (auto [a, b] : r.glue)
      if (!dsu.unite(r.boundary[static_cast<std::size_t>(a)], r.boundary[static_cast<std::size_t>(b)])) ++cycles;
    REQUIRE(genus(g) == cycles);
    CHECK(genus(g) >= 0);
  }
}

TEST_CASE("complement analysis on the double-edge graph") {
  const Graph g = fixtures::double_edge_graph();
  SUBCASE("one internal edge removed") {
    const std::vector<int> removed = {4};
    const auto comps = complement_analysis(g, removed);
    REQUIRE(comps.size() == 1);
    CHECK_FALSE(comps[0].has_loop);
    CHECK(comps[0].unbounded_end_count == 4);
  }
  SUBCASE("both internal edges removed") {
    const std::vector<int> removed = {7, 5};
    const auto comps = complement_analysis(g, removed);
    REQUIRE(comps.size() == 2);
    for (const auto& c : comps) {
      CHECK_FALSE(c.has_loop);
      CHECK(c.unbounded_end_count == 2);
    }
  }
  SUBCASE("nothing removed") {
    const auto comps = complement_analysis(g, {});
    REQUIRE(comps.size() == 1);
    CHECK(comps[0].has_loop);
  }
}

TEST_CASE("complement analysis of a tree with one end") {
  const std::vector<std::pair<int, int>> at = {{0, 0}, {1, 0}, {2, 1}};
  const std::vector<std::pair<int, int>> glue = {{1, 2}};
  const auto comps = complement_analysis(Graph::build(2, at, glue), {});
  REQUIRE(comps.size() == 1);
  CHECK_FALSE(comps[0].has_loop);
  CHECK(comps[0].unbounded_end_count == 1);
}

TEST_CASE("complement analysis agrees with a union-find oracle") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 1000; ++trial) {
    const RandomGraph r = random_graph(rng);
    const Graph g = Graph::from_boundary(r.vertices, r.boundary, r.glue);
    std::vector<int> removed;
    std::set<int> removed_edges;
    for (int f = 0; f < g.flag_count(); ++f)
      if (std::uniform_int_distribution<int>(0, 3)(rng) == 0) {
        removed.push_back(f);
        removed_edges.insert(g.edge_of(f));
      }
    const auto comps = complement_analysis(g, removed);

    // oracle: union over kept internal edges, cycles where a union fails
    std::set<std::pair<int, int>> kept;
    for (auto [a, b] : r.glue) {
      bool gone = false;
      for (int f : removed) gone = gone || f == a || f == b;
      if (!gone) kept.insert({a, b});
    }
    Dsu dsu(r.vertices);
    std::vector<int> loops(static_cast<std::size_t>(r.vertices), 0), ends(static_cast<std::size_t>(r.vertices), 0);
    std::vector<int> cycle_at;
    for (auto [a, b] : kept) {
      const int va = r.boundary[static_cast<std::size_t>(a)], vb = r.boundary[static_cast<std::size_t>(b)];
      if (!dsu.unite(va, vb)) cycle_at.push_back(va);
    }
    for (int v : cycle_at) ++loops[static_cast<std::size_t>(dsu.find(v))];
    for (int f = 0; f < g.flag_count(); ++f) {
      if (!g.is_end_flag(f)) continue;
      if (std::find(removed.begin(), removed.end(), f) != removed.end()) continue;
      ++ends[static_cast<std::size_t>(dsu.find(r.boundary[static_cast<std::size_t>(f)]))];
    }
    std::set<int> roots;
    for (int v = 0; v < r.vertices; ++v) roots.insert(dsu.find(v));

    REQUIRE(comps.size() == roots.size());
    CHECK(comps.size() <= removed_edges.size() + 1);
    for (const auto& c : comps) {
      REQUIRE_FALSE(c.vertices.empty());
      const int root = dsu.find(c.vertices.front());
      for (int v : c.vertices) CHECK(dsu.find(v) == root);
      CHECK(c.has_loop == (loops[static_cast<std::size_t>(root)] > 0));
      CHECK(c.unbounded_end_count == ends[static_cast<std::size_t>(root)]);
    }
  }
}

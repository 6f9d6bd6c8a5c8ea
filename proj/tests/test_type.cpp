#include <doctest.h>

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <set>

#include "fixtures.hpp"
#include "trop/canonical.hpp"
#include "trop/counting.hpp"
#include "trop/enumerate.hpp"
#include "trop/error.hpp"
#include "trop/solver.hpp"
#include "trop/type.hpp"

using namespace trop;
using fixtures::curve;

namespace {

std::size_t at(int i) { return static_cast<std::size_t>(i); }

// Same type with vertices and flags renumbered at random.
CombinatorialType shuffled(const CombinatorialType& t, std::mt19937_64& rng) {
  const Graph& g = t.graph();
  std::vector<int> vperm(at(g.vertex_count())), fperm(at(g.flag_count()));
  std::iota(vperm.begin(), vperm.end(), 0);
  std::iota(fperm.begin(), fperm.end(), 0);
  std::shuffle(vperm.begin(), vperm.end(), rng);
  std::shuffle(fperm.begin(), fperm.end(), rng);
  std::vector<int> boundary(at(g.flag_count()));
  std::vector<Vec2> vectors(at(g.flag_count()));
  std::vector<std::pair<int, int>> glue;
  for (int f = 0; f < g.flag_count(); ++f) {
    boundary[at(fperm[at(f)])] = vperm[at(g.boundary(f))];
    vectors[at(fperm[at(f)])] = t.decorated.v(f);
    if (g.glue(f) > f) glue.push_back({fperm[at(f)], fperm[at(g.glue(f))]});
  }
  Graph h = Graph::from_boundary(g.vertex_count(), boundary, glue);
  MarkingMap marks;
  for (const Stratum& s : t.marking)
    marks.push_back(s.on_vertex() ? Stratum::vertex(vperm[at(s.index)])
                                  : Stratum::edge(h.edge_of(fperm[at(g.edges()[at(s.index)].first)])));
  return make_type(DecoratedGraph::from_flag_vectors(std::move(h), vectors), marks, t.genus);
}

// Brute-force isomorphism: a flag bijection preserving boundary incidence
// (through a vertex bijection), v(F), gluing and every mark label.
bool isomorphic(const CombinatorialType& a, const CombinatorialType& b) {
  const Graph& ga = a.graph();
  const Graph& gb = b.graph();
  if (ga.vertex_count() != gb.vertex_count() || ga.flag_count() != gb.flag_count() || a.genus != b.genus ||
      a.marking.size() != b.marking.size())
    return false;
  std::vector<int> fmap(at(ga.flag_count()), -1), vmap(at(ga.vertex_count()), -1);
  std::vector<bool> fused(at(gb.flag_count()), false), vused(at(gb.vertex_count()), false);

  auto marks_agree = [&] {
    for (std::size_t i = 0; i < a.marking.size(); ++i) {
      const Stratum& s = a.marking[i];
      const Stratum& r = b.marking[i];
      if (s.on_vertex() != r.on_vertex()) return false;
      if (s.on_vertex()) {
        if (vmap[at(s.index)] != r.index) return false;
      } else if (gb.edge_of(fmap[at(ga.edges()[at(s.index)].first)]) != r.index) {
        return false;
      }
    }
    return true;
  };

  std::function<bool(int)> place = [&](int f) -> bool {
    if (f == ga.flag_count()) return marks_agree();
    if (fmap[at(f)] >= 0) return place(f + 1);
    const int va = ga.boundary(f);
    for (int h = 0; h < gb.flag_count(); ++h) {
      if (fused[at(h)] || b.decorated.v(h) != a.decorated.v(f) || gb.is_end_flag(h) != ga.is_end_flag(f)) continue;
      const int vb = gb.boundary(h);
      const bool new_vertex = vmap[at(va)] < 0;
      if (new_vertex ? vused[at(vb)] : vmap[at(va)] != vb) continue;
      if (ga.valence(va) != gb.valence(vb)) continue;
      std::vector<std::pair<int, int>> assigned = {{f, h}};
      bool ok = true;
      if (!ga.is_end_flag(f)) {
        const int fo = ga.glue(f), ho = gb.glue(h);
        const int wa = ga.boundary(fo), wb = gb.boundary(ho);
        if (fmap[at(fo)] >= 0 || fused[at(ho)]) {
          ok = false;
        } else if (wa == va) {
          ok = wb == vb;
        } else if (vmap[at(wa)] >= 0) {
          ok = vmap[at(wa)] == wb;
        } else {
          ok = !vused[at(wb)] && wb != vb;
        }
        if (ok) assigned.push_back({fo, ho});
      }
      if (!ok) continue;
      std::vector<int> new_vertices;
      for (auto [x, y] : assigned) {
        fmap[at(x)] = y;
        fused[at(y)] = true;
        const int vx = ga.boundary(x), vy = gb.boundary(y);
        if (vmap[at(vx)] < 0) {
          vmap[at(vx)] = vy;
          vused[at(vy)] = true;
          new_vertices.push_back(vx);
        }
      }
      if (place(f + 1)) return true;
      for (auto [x, y] : assigned) {
        fmap[at(x)] = -1;
        fused[at(y)] = false;
      }
      for (int vx : new_vertices) {
        vused[at(vmap[at(vx)])] = false;
        vmap[at(vx)] = -1;
      }
    }
    return false;
  };
  return place(0);
}

// Two 4-valent vertices joined by a single edge, marks on five ends.
CombinatorialType single_edge_pair() {
  auto d = curve(2,
                 {{0, {-1, 1}}, {0, {-1, -1}}, {0, {0, 1}}, {0, {2, -1}},
                  {1, {-2, 1}}, {1, {1, 0}}, {1, {1, 0}}, {1, {0, -1}}},
                 {{3, 4}});
  const Graph& g = d.graph();
  MarkingMap marks = {Stratum::edge(g.edge_of(0)), Stratum::edge(g.edge_of(1)), Stratum::edge(g.edge_of(2)),
                      Stratum::edge(g.edge_of(5)), Stratum::edge(g.edge_of(6))};
  return make_type(std::move(d), std::move(marks), 0);
}

bool has_double_edge_pattern(const CombinatorialType& t) {
  const Graph& g = t.graph();
  for (int e = 0; e < g.edge_count(); ++e)
    for (int f = e + 1; f < g.edge_count(); ++f) {
      auto [a, b] = g.endpoints(e);
      auto [c, d] = g.endpoints(f);
      if (b < 0 || d < 0 || a == b) continue;
      const bool same = (a == c && b == d) || (a == d && b == c);
      if (same && g.valence(a) == 4 && g.valence(b) == 4) return true;
    }
  return false;
}

}  // namespace

TEST_CASE("rigid genus-three type: codimension six, dimension five") {
  const auto t = fixtures::rigid_k4_type();
  CHECK(t.mark_count() == 5);
  CHECK(graph_genus(t) == 3);
  CHECK(codimension(t) == 6);
  CHECK(codimension_from_edges(t) == 6);
  CHECK(stratum_dimension(t) == 5);
  CHECK(2 * t.mark_count() - codimension(t) == 4);
  CHECK_FALSE(is_exceptional(t));
}

TEST_CASE("trivalent type with marks on edges has codimension zero") {
  const auto t = fixtures::line_type(0, 1);
  CHECK(codimension(t) == 0);
  CHECK(codimension_from_edges(t) == 0);
  CHECK(stratum_dimension(t) == 2 * t.mark_count());
  CHECK_FALSE(is_exceptional(t));
}

TEST_CASE("exceptional pattern") {
  const auto t = fixtures::exceptional_double_edge();
  CHECK(codimension(t) == 2);
  CHECK(is_exceptional(t));
  CHECK(stratum_dimension(t) == 2 * t.mark_count() - 1);

  const auto s = single_edge_pair();
  CHECK(codimension(s) == 2);
  CHECK_FALSE(is_exceptional(s));
  CHECK(stratum_dimension(s) <= 2 * s.mark_count() - 2);
}

TEST_CASE("exceptional flag matches the double-edge pattern on enumerated types") {
  for (int g = 0; g <= 1; ++g) {
    const auto cat = enumerate_types(g, Degree::projective(2), {2});
    for (const auto& e : cat.entries) {
      CHECK(e.exceptional == is_exceptional(e.type));
      CHECK(e.exceptional == (e.codim == 2 && has_double_edge_pattern(e.type)));
    }
  }
}

TEST_CASE("four-valent splittings") {
  auto d = curve(1, {{0, {1, 0}}, {0, {0, 1}}, {0, {-2, -1}}, {0, {1, 0}}}, {});
  const Graph& g = d.graph();
  MarkingMap marks = {Stratum::edge(g.edge_of(0)), Stratum::edge(g.edge_of(1)), Stratum::edge(g.edge_of(2))};
  const auto t = make_type(std::move(d), std::move(marks), 0);
  REQUIRE(codimension(t) == 1);
  const auto res = resolutions(t);
  // Pairing the two parallel (1,0) flags leaves a collinear vertex.
  CHECK(res.size() == 2);
  std::set<Vec2> pair_sums = {Vec2{0, 1} + Vec2{1, 0}, Vec2{-2, -1} + Vec2{1, 0}};
  const std::string key = canonical_form(t);
  for (const auto& r : res) {
    CHECK(validate_balancing(r.type.decorated).empty());
    CHECK(codimension(r.type) == 0);
    const Graph& h = r.type.graph();
    REQUIRE(h.internal_edge_count() == 1);
    for (int f = 0; f < h.flag_count(); ++f) {
      if (h.is_end_flag(f)) continue;
      const Vec2 v = r.type.decorated.v(f);
      CHECK((pair_sums.count(v) == 1 || pair_sums.count(-v) == 1));
    }
    CHECK(canonical_form(contract_face(r.type, make_frame(r.type), r.zero_forms)) == key);
  }
}

TEST_CASE("marked-vertex resolutions skip placements joining two ends") {
  auto d = curve(1, {{0, {-1, 0}}, {0, {0, -1}}, {0, {1, 1}}}, {});
  MarkingMap marks = {Stratum::vertex(0), Stratum::edge(d.graph().edge_of(0))};
  const auto t = make_type(std::move(d), std::move(marks), 0);
  REQUIRE(codimension(t) == 1);
  const auto res = resolutions(t);
  CHECK(res.size() == 2);
  for (const auto& r : res) {
    CHECK_FALSE(r.type.marking[0].on_vertex());
    CHECK(r.type.marking[0].index != r.type.marking[1].index);
    CHECK(canonical_form(contract_face(r.type, make_frame(r.type), r.zero_forms)) == canonical_form(t));
  }
}

TEST_CASE("exceptional type has two resolutions of equal multiplicity") {
  const auto t = fixtures::exceptional_double_edge();
  const auto res = resolutions(t);
  REQUIRE(res.size() == 2);
  for (const auto& r : res) {
    CHECK(codimension(r.type) == 0);
    CHECK(curve_multiplicity(r.type) == curve_multiplicity(t));
  }
}

TEST_CASE("resolutions throw for non-wall types") {
  try {
    resolutions(fixtures::line_type(0, 1));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotAWallType);
  }
}

TEST_CASE("wall types of the conic catalog resolve and round trip") {
  const auto cat = enumerate_types(0, Degree::projective(2), {1});
  int walls = 0;
  for (const auto& e : cat.entries) {
    if (e.codim != 1) continue;
    ++walls;
    const auto res = resolutions(e.type);
    REQUIRE_FALSE(res.empty());
    const std::string key = canonical_form(e.type);
    for (const auto& r : res) {
      CHECK(codimension(r.type) == 0);
      CHECK(canonical_form(contract_face(r.type, make_frame(r.type), r.zero_forms)) == key);
    }
  }
  CHECK(walls == 915);
}

TEST_CASE("canonical form is invariant under renumbering") {
  std::mt19937_64 rng(11);
  const auto cat = enumerate_types(0, Degree::projective(2), {1});
  for (std::size_t k = 0; k < cat.entries.size(); k += 7) {
    const auto& t = cat.entries[k].type;
    for (int trial = 0; trial < 3; ++trial) {
      const auto s = shuffled(t, rng);
      CHECK(canonical_form(s) == canonical_form(t));
      CHECK(isomorphic(s, t));
    }
  }
  const auto k4 = fixtures::rigid_k4_type();
  CHECK(canonical_form(shuffled(k4, rng)) == canonical_form(k4));
}

TEST_CASE("different marked ends give different keys") {
  CHECK(canonical_form(fixtures::line_type(0, 1)) != canonical_form(fixtures::line_type(0, 2)));
  CHECK(canonical_form(fixtures::line_type(0, 1)) != canonical_form(fixtures::line_type(1, 0)));
}

TEST_CASE("canonical keys agree with a brute-force isomorphism search") {
  std::mt19937_64 rng(3);
  const auto cat = enumerate_types(0, Degree::projective(2), {1});
  // Random pairs drawn within shapes, where collisions are most likely.
  std::vector<std::vector<CombinatorialType>> pools;
  for (std::size_t k = 0; k < cat.entries.size() && pools.size() < 100; k += 5) {
    if (cat.entries[k].labelings > 120) continue;
    pools.push_back(labelled_types(cat.entries[k]));
  }
  REQUIRE(pools.size() >= 50);
  int equal = 0, distinct = 0;
  for (const auto& pool : pools) {
    for (int trial = 0; trial < 6; ++trial) {
      const auto& a = pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
      const auto b = shuffled(pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)], rng);
      const bool same_key = canonical_form(a) == canonical_form(b);
      REQUIRE(same_key == isomorphic(a, b));
      (same_key ? equal : distinct)++;
    }
  }
  CHECK(equal > 0);
  CHECK(distinct > 0);
}

TEST_CASE("labelling counts match explicit orbit enumeration") {
  const auto cat = enumerate_types(0, Degree::projective(2), {2});
  int checked = 0;
  for (std::size_t k = 0; k < cat.entries.size() && checked < 100; k += 13, ++checked) {
    const auto& entry = cat.entries[k];
    const auto& t = entry.type;
    std::vector<int> perm(at(t.mark_count()));
    std::iota(perm.begin(), perm.end(), 0);
    std::set<std::string> keys;
    do {
      MarkingMap marks(t.marking.size());
      for (std::size_t i = 0; i < marks.size(); ++i) marks[at(perm[i])] = t.marking[i];
      keys.insert(canonical_form(make_type(t.decorated, marks, t.genus)));
    } while (std::next_permutation(perm.begin(), perm.end()));
    CHECK(Integer(static_cast<long>(keys.size())) == entry.labelings);
    CHECK(Integer(static_cast<long>(labelled_types(entry).size())) == entry.labelings);
  }
  CHECK(checked == 100);
}

TEST_CASE("evaluation rows do not depend on the spanning tree") {
  const auto cat = cached_enumerate(1, Degree::projective(3), {0}, fixtures::cache_dir());
  std::mt19937_64 rng(9);
  int tested = 0, differing = 0;
  for (std::size_t k = 0; k < cat.entries.size() && tested < 40; k += cat.entries.size() / 40 + 1, ++tested) {
    const auto& t = cat.entries[k].type;
    std::vector<int> order(at(t.graph().edge_count()));
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    const AffineSystem a = build_affine_system(t);
    const AffineSystem b = build_affine_system(t, order);
    REQUIRE(a.evaluation.rows() == b.evaluation.rows());
    CHECK(rank(a.loops) == rank(b.loops));
    Matrix diff = a.loops;
    bool any = false;
    for (std::size_t r = 0; r < a.evaluation.rows(); ++r) {
      Vector row = a.evaluation.row(r);
      const Vector other = b.evaluation.row(r);
      for (std::size_t c = 0; c < row.size(); ++c) row[c] -= other[c];
      any = any || std::any_of(row.begin(), row.end(), [](const Rational& x) { return x != 0; });
      diff.append_row(row);
    }
    differing += any;
    CHECK(rank(diff) == rank(a.loops));
  }
  CHECK(differing > 0);
}

TEST_CASE("genus-one systems carry two loop rows per cycle") {
  const auto cat = cached_enumerate(1, Degree::projective(3), {0}, fixtures::cache_dir());
  const auto& t = cat.entries.front().type;
  const AffineSystem s = build_affine_system(t);
  CHECK(s.loops.rows() == 2);
  CHECK(s.evaluation.rows() == 2 * static_cast<std::size_t>(t.mark_count()));
}

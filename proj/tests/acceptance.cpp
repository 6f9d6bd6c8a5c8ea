// Acceptance run: one PASS/FAIL line per criterion, exit status 0 iff all pass.
// An optional argument restricts the run to criteria whose name contains it.

#include <algorithm>
#include <array>
#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

#include "fixtures.hpp"
#include "trop/counting.hpp"
#include "trop/enumerate.hpp"
#include "trop/error.hpp"
#include "trop/wallcross.hpp"

using namespace trop;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool ok = true;
  std::string detail;
};

int failures = 0;
std::string only;  // run just the criteria whose name contains this

void report(const std::string& name, const std::function<Outcome()>& body) {
  if (name.find(only) == std::string::npos) return;
  Outcome o;
  const auto t0 = Clock::now();
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  std::ostringstream secs;
  secs.precision(2);
  secs << std::fixed << seconds_since(t0);
  std::cout << (o.ok ? "PASS " : "FAIL ") << name << " (" << secs.str() << " s): " << o.detail << std::endl;
  if (!o.ok) ++failures;
}

// Rational plane curves of degree d through 3d-1 points.
Integer kontsevich(int d) {
  std::vector<Integer> n(static_cast<std::size_t>(d + 1), 0);
  n[1] = 1;
  auto bin = [](long a, long b) {
    Integer r = 0;
    if (b >= 0 && b <= a) mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(a), static_cast<unsigned long>(b));
    return r;
  };
  for (long e = 2; e <= d; ++e)
    for (long a = 1; a < e; ++a) {
      const long b = e - a;
      n[static_cast<std::size_t>(e)] += n[static_cast<std::size_t>(a)] * n[static_cast<std::size_t>(b)] * a * a * b *
                                        (b * bin(3 * e - 4, 3 * a - 2) - a * bin(3 * e - 4, 3 * a - 1));
    }
  return n[static_cast<std::size_t>(d)];
}

std::vector<PointConfiguration> configurations(int n, int count, std::uint64_t first_seed) {
  std::vector<PointConfiguration> out;
  for (int i = 0; i < count; ++i) out.push_back(random_configuration(n, first_seed + static_cast<std::uint64_t>(i)));
  return out;
}

// Every general configuration must give `expected`; returns a description.
Outcome all_equal(const std::vector<CountReport>& reports, const Integer& expected, int required) {
  int general = 0;
  std::map<std::string, int> totals;
  for (const auto& r : reports) {
    if (!r.general_position.general()) continue;
    ++general;
    ++totals[r.total.get_str()];
  }
  std::ostringstream os;
  os << general << "/" << reports.size() << " general, totals {";
  for (const auto& [v, c] : totals) os << " " << v << " x" << c;
  os << " }, expected " << expected.get_str();
  const bool ok = general >= required && totals.size() == 1 && totals.begin()->first == expected.get_str();
  return {ok, os.str()};
}

// Independent recomputation of both codimension formulas.
struct Codims {
  int def;
  int rem;
};

Codims recompute_codims(const CombinatorialType& t) {
  const Graph& g = t.graph();
  const int vertices = g.vertex_count();
  int bounded = 0;
  std::vector<int> parent(static_cast<std::size_t>(vertices));
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    return parent[static_cast<std::size_t>(x)] == x ? x : parent[static_cast<std::size_t>(x)] = find(parent[static_cast<std::size_t>(x)]);
  };
  int cycles = 0;
  for (const Edge& e : g.edges()) {
    if (e.unbounded()) continue;
    ++bounded;
    const int a = find(g.boundary(e.first)), b = find(g.boundary(e.second));
    if (a == b)
      ++cycles;
    else
      parent[static_cast<std::size_t>(a)] = b;
  }
  int excess = 0;
  for (int v = 0; v < vertices; ++v) excess += g.valence(v) - 3;
  int on_vertex = 0, on_edge = 0;
  for (const Stratum& s : t.marking) (s.on_vertex() ? on_vertex : on_edge) += 1;
  const int n = static_cast<int>(t.marking.size());
  return {excess + (t.genus - cycles) + on_vertex, 2 * n - 2 + 2 * cycles - bounded - on_edge};
}

struct TableStats {
  std::size_t shapes = 0;
  std::size_t codim_mismatch = 0;
  std::size_t dim_violations = 0;
};

void check_entry(const CatalogEntry& e, int n, TableStats& s) {
  ++s.shapes;
  const Codims c = recompute_codims(e.type);
  if (c.def != c.rem || c.def != e.codim || codimension(e.type) != c.def || codimension_from_edges(e.type) != c.rem)
    ++s.codim_mismatch;
  const bool ok = e.codim == 0 ? e.dimension == 2 * n
                  : (e.codim == 1 || e.exceptional) ? e.dimension == 2 * n - 1
                                                    : e.dimension <= 2 * n - 2;
  if (!ok) ++s.dim_violations;
}

Integer z(std::int64_t v) { return Integer(static_cast<long>(v)); }

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) only = argv[1];
  const Degree p1 = Degree::projective(1), p2 = Degree::projective(2), p3 = Degree::projective(3);
  std::cout << "oracle: Kontsevich N1 = " << kontsevich(1) << ", N2 = " << kontsevich(2) << ", N3 = " << kontsevich(3)
            << std::endl;

  report("degree 1, g=0: N = 1 through 2 generic points in < 1 s", [&] {
    const auto t0 = Clock::now();
    Counter counter(enumerate_types(0, p1, {default_max_codim(0, p1)}));
    Outcome o = all_equal(counter.count_all(configurations(2, 20, 1)), kontsevich(1), 20);
    const double t = seconds_since(t0);
    o.ok = o.ok && t < 1.0;
    o.detail += ", " + std::to_string(t) + " s";
    return o;
  });

  report("degree 2, g=0: N = 1 across 50 configurations in < 30 s", [&] {
    const auto t0 = Clock::now();
    Counter counter(enumerate_types(0, p2, {default_max_codim(0, p2)}));
    Outcome o = all_equal(counter.count_all(configurations(5, 50, 100)), kontsevich(2), 50);
    const double t = seconds_since(t0);
    o.ok = o.ok && t < 30.0;
    o.detail += ", " + std::to_string(t) + " s";
    return o;
  });

  report("degree 3, g=0: N = 12 across 10 configurations in <= 10 min", [&] {
    const auto t0 = Clock::now();
    Counter counter(enumerate_types(0, p3, {default_max_codim(0, p3)}));
    Outcome o = all_equal(counter.count_all(configurations(8, 10, 200)), kontsevich(3), 10);
    const double t = seconds_since(t0);
    o.ok = o.ok && t <= 600.0;
    o.detail += ", " + std::to_string(t) + " s";
    return o;
  });

  report("degree 3, g=1: N = 1 through 9 generic points", [&] {
    Counter counter(enumerate_types(1, p3, {default_max_codim(1, p3)}));
    return all_equal(counter.count_all(configurations(9, 1, 300)), Integer(1), 1);
  });

  report("weighted wall: 4 on one side equals 3 + 1 on the other", [&] {
    const auto r = verify_local_invariance(fixtures::weighted_wall_type(), 10, 7);
    bool ok = r.wall_case == WallCase::FourValent && r.expected == 4;
    std::ostringstream os;
    for (const auto& trial : r.trials) {
      std::vector<Integer> plus, minus;
      for (const auto& c : trial.plus) plus.push_back(c.multiplicity);
      for (const auto& c : trial.minus) minus.push_back(c.multiplicity);
      std::sort(plus.begin(), plus.end());
      std::sort(minus.begin(), minus.end());
      const std::vector<Integer> four{4}, split{1, 3};
      ok = ok && ((plus == four && minus == split) || (plus == split && minus == four));
    }
    const auto& first = r.trials.front();
    os << r.trials.size() << " trials; sides {";
    for (const auto& c : first.plus) os << " " << c.multiplicity;
    os << " } and {";
    for (const auto& c : first.minus) os << " " << c.multiplicity;
    os << " }";
    return Outcome{ok, os.str()};
  });

  report("mu identity: sum 0 and max |mu| = 4-valent multiplicity on 10^6 quadruples in < 10 s", [&] {
    const auto t0 = Clock::now();
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<int> coord(-10, 10);
    long tested = 0, bad_sum = 0, bad_max = 0;
    while (tested < 1'000'000) {
      std::array<Vec2, 4> v;
      for (int i = 0; i < 3; ++i) v[static_cast<std::size_t>(i)] = {coord(rng), coord(rng)};
      v[3] = -(v[0] + v[1] + v[2]);
      if (norm_inf(v[3]) > 10) continue;
      if (std::any_of(v.begin(), v.end(), [](Vec2 x) { return x.is_zero(); })) continue;
      if (parallel(v[0], v[1]) && parallel(v[0], v[2]) && parallel(v[0], v[3])) continue;
      ++tested;
      const auto s = mu_signature(v[0], v[1], v[2], v[3]);
      if (s.sum() != 0) ++bad_sum;
      Integer best = 0;
      for (const auto& p : {std::array<int, 4>{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}})
        best = std::max<Integer>(best, abs(z(det(v[static_cast<std::size_t>(p[0])], v[static_cast<std::size_t>(p[1])])) *
                                           z(det(v[static_cast<std::size_t>(p[2])], v[static_cast<std::size_t>(p[3])]))));
      if (s.max_abs() != best) ++bad_max;
    }
    const double t = seconds_since(t0);
    std::ostringstream os;
    os << tested << " quadruples, " << bad_sum << " sum failures, " << bad_max << " max failures, " << t << " s";
    return Outcome{bad_sum == 0 && bad_max == 0 && t < 10.0, os.str()};
  });

  report("codimension formulas agree and the dimension table holds on every enumerated type, degree <= 3, g <= 1", [&] {
    TableStats s;
    std::ostringstream os;
    // Streamed: the degree-3 catalogs do not fit in memory together.
    auto run = [&](int g, const Degree& d, int c) {
      const std::size_t before = s.shapes;
      const int n = minimum_marks(d, g);
      for_each_type(g, d, {c}, [&](CatalogEntry&& e) { check_entry(e, n, s); });
      os << " g" << g << "/deg" << d.size() / 3 << "/c" << c << ":" << s.shapes - before;
    };
    for (int g = 0; g <= 1; ++g) {
      run(g, p1, 2);
      run(g, p2, 2);
    }
    run(0, p3, 2);
    run(1, p3, 0);
    const auto k4 = fixtures::rigid_k4_type();
    const bool k4_ok = codimension(k4) == 6 && stratum_dimension(k4) == 5 && recompute_codims(k4).def == 6 &&
                       recompute_codims(k4).rem == 6;
    os << "; " << s.shapes << " shapes, " << s.codim_mismatch << " codim mismatches, " << s.dim_violations
       << " dimension violations; rigid K4 codim " << codimension(k4) << " dim " << stratum_dimension(k4);
    return Outcome{s.codim_mismatch == 0 && s.dim_violations == 0 && k4_ok, "shapes per catalog" + os.str()};
  });

  report("local invariance at every codim-1 and exceptional degree-2 type, 10 trials each; case (b) absent", [&] {
    std::map<std::string, int> cases;
    int walls = 0, lower_genus = 0, trials = 0, exceptional = 0;
    for (int g = 0; g <= 1; ++g) {
      const auto cat = enumerate_types(g, p2, {1});
      for (const auto& e : cat.entries) {
        if (e.codim != 1 && !e.exceptional) continue;
        if (e.codim == 1 && graph_genus(e.type) < g) ++lower_genus;
        if (e.exceptional) ++exceptional;
        const auto r = verify_local_invariance(e.type, 10, 1000 + static_cast<std::uint64_t>(walls));
        ++cases[to_string(r.wall_case)];
        for (const auto& t : r.trials)
          if (t.plus_sum == t.minus_sum) ++trials;
        ++walls;
      }
    }
    std::ostringstream os;
    os << walls << " wall types (" << exceptional << " exceptional), " << trials << " equal-sided trials, cases {";
    for (const auto& [c, k] : cases) os << " " << c << ":" << k;
    os << " }, " << lower_genus << " of lower graph genus";
    return Outcome{walls > 0 && trials == 10 * walls && lower_genus == 0 && cases.count("b") == 0, os.str()};
  });

  report("non-primitive degree (-2,0)+2(0,-1)+2(1,1), g=0: equal totals across 25 configurations", [&] {
    const Degree d = Degree::from_vectors({{-2, 0}, {0, -1}, {0, -1}, {1, 1}, {1, 1}});
    const auto r = verify_global_invariance(0, d, 25, 5);
    std::ostringstream os;
    os << r.totals.size() << " general configurations (" << r.wall_pairs << " wall pairs, " << r.random_configs
       << " random, " << r.rejected << " rejected), common total " << r.common_total.get_str();
    return Outcome{r.totals.size() >= 25, os.str()};
  });

  std::cout << (failures == 0 ? "ALL PASS" : std::to_string(failures) + " FAILED") << std::endl;
  return failures == 0 ? 0 : 1;
}

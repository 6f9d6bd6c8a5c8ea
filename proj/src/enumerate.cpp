#include "trop/enumerate.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "trop/canonical.hpp"
#include "trop/error.hpp"
#include "trop/io.hpp"

namespace trop {

namespace {

std::size_t idx(int i) { return static_cast<std::size_t>(i); }

using Counts = std::vector<int>;

struct Budget {
  std::uint64_t used = 0;
  std::uint64_t limit = 0;
  void tick() {
    if (++used > limit)
      throw Error(ErrorCode::EnumerationBudgetExceeded, "enumeration exceeded " + std::to_string(limit) + " candidates");
  }
};

bool spans_plane(const std::vector<Vec2>& vs) {
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = i + 1; j < vs.size(); ++j)
      if (!parallel(vs[i], vs[j])) return true;
  return false;
}

// Rooted subtrees over sub-multisets of the degree. A leaf is one end; an
// internal node is a vertex whose children partition its multiset.
class Forest {
 public:
  struct Node {
    Vec2 sum;
    int leaf = -1;  ///< entry index of the degree for leaves
    std::vector<int> children;
    int excess = 0;
  };

  Forest(const Degree& degree, int max_excess, Budget& budget)
      : degree_(degree), max_excess_(max_excess), budget_(budget) {}

  const Node& node(int id) const { return nodes_[idx(id)]; }
  int types() const { return static_cast<int>(degree_.entries().size()); }
  Vec2 sum_of(const Counts& s) const {
    Vec2 out;
    for (int t = 0; t < types(); ++t) out += degree_.entries()[idx(t)].vector * s[idx(t)];
    return out;
  }

  const std::vector<int>& nodes_for(const Counts& s) {
    auto it = memo_.find(s);
    if (it != memo_.end()) return it->second;
    std::vector<int> out;
    int total = 0;
    for (int c : s) total += c;
    const Vec2 sum = sum_of(s);
    if (total == 1) {
      const int t = static_cast<int>(std::find(s.begin(), s.end(), 1) - s.begin());
      out.push_back(add({sum, t, {}, 0}));
    } else if (!sum.is_zero()) {
      for (int k = 2; k <= 2 + max_excess_; ++k) {
        child_sets(s, k, max_excess_ - (k - 2), [&](const std::vector<int>& ids, int child_excess) {
          std::vector<Vec2> vs{-sum};
          for (int id : ids) vs.push_back(node(id).sum);
          if (!spans_plane(vs)) return;
          out.push_back(add({sum, -1, ids, child_excess + k - 2}));
        });
      }
    }
    return memo_.emplace(s, std::move(out)).first->second;
  }

  /// Multisets of k nodes whose counts partition s, with total excess <= cap.
  void child_sets(const Counts& s, int k, int cap, const std::function<void(const std::vector<int>&, int)>& emit) {
    std::vector<Counts> blocks;
    std::function<void(const Counts&)> gen_blocks = [&](const Counts& rest) {
      if (static_cast<int>(blocks.size()) == k - 1) {
        if (blocks.empty() || !(rest < blocks.back())) {
          if (std::all_of(rest.begin(), rest.end(), [](int c) { return c == 0; })) return;
          blocks.push_back(rest);
          pick(blocks, cap, emit);
          blocks.pop_back();
        }
        return;
      }
      Counts b(rest.size(), 0);
      for (;;) {
        // odometer over 0 <= b <= rest
        std::size_t t = 0;
        while (t < b.size() && b[t] == rest[t]) b[t++] = 0;
        if (t == b.size()) break;
        ++b[t];
        if (!blocks.empty() && b < blocks.back()) continue;
        Counts r = rest;
        bool nonempty = false;
        for (std::size_t i = 0; i < r.size(); ++i) {
          r[i] -= b[i];
          if (r[i]) nonempty = true;
        }
        if (!nonempty) continue;
        blocks.push_back(b);
        gen_blocks(r);
        blocks.pop_back();
      }
    };
    gen_blocks(s);
  }

 private:
  int add(Node n) {
    budget_.tick();
    nodes_.push_back(std::move(n));
    return static_cast<int>(nodes_.size()) - 1;
  }

  void pick(const std::vector<Counts>& blocks, int cap,
            const std::function<void(const std::vector<int>&, int)>& emit) {
    std::vector<std::vector<int>> options;
    for (const Counts& b : blocks) options.push_back(nodes_for(b));
    std::vector<int> chosen;
    std::function<void(std::size_t, std::size_t, int)> rec = [&](std::size_t i, std::size_t start, int excess) {
      if (i == blocks.size()) {
        budget_.tick();
        emit(chosen, excess);
        return;
      }
      const std::size_t from = (i > 0 && blocks[i] == blocks[i - 1]) ? start : 0;
      for (std::size_t j = from; j < options[i].size(); ++j) {
        const int e = excess + node(options[i][j]).excess;
        if (e > cap) continue;
        chosen.push_back(options[i][j]);
        rec(i + 1, j, e);
        chosen.pop_back();
      }
    };
    rec(0, 0, 0);
  }

  const Degree& degree_;
  int max_excess_;
  Budget& budget_;
  std::vector<Node> nodes_;
  std::map<Counts, std::vector<int>> memo_;
};

struct Builder {
  int vertices = 0;
  std::vector<int> boundary;
  std::vector<Vec2> vectors;
  std::vector<std::pair<int, int>> glue;

  int add_vertex() { return vertices++; }
  void add_end(int v, Vec2 vec) {
    boundary.push_back(v);
    vectors.push_back(vec);
  }
  void add_edge(int a, int b, Vec2 from_a) {
    const int f = static_cast<int>(boundary.size());
    boundary.push_back(a);
    vectors.push_back(from_a);
    boundary.push_back(b);
    vectors.push_back(-from_a);
    glue.emplace_back(f, f + 1);
  }
  void attach(const Forest& forest, int id, int at) {
    const auto& n = forest.node(id);
    if (n.leaf >= 0) {
      add_end(at, n.sum);
      return;
    }
    const int v = add_vertex();
    add_edge(at, v, n.sum);
    for (int c : n.children) attach(forest, c, v);
  }
  DecoratedGraph finish() const {
    return DecoratedGraph::from_flag_vectors(Graph::from_boundary(vertices, boundary, glue), vectors);
  }
};

// Lattice points in the relative interior of conv(points), other than the points.
std::vector<Vec2> relative_interior_points(const std::vector<Vec2>& points) {
  std::int64_t x0 = points[0].x, x1 = x0, y0 = points[0].y, y1 = y0;
  for (const Vec2& p : points) {
    x0 = std::min(x0, p.x);
    x1 = std::max(x1, p.x);
    y0 = std::min(y0, p.y);
    y1 = std::max(y1, p.y);
  }
  Vec2 dir;
  for (const Vec2& p : points)
    if (p != points[0]) {
      dir = p - points[0];
      break;
    }
  bool collinear = true;
  for (const Vec2& p : points)
    if (det(dir, p - points[0]) != 0) collinear = false;

  std::vector<Vec2> hull;
  if (!collinear) {
    std::vector<Vec2> pts = points;
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    std::vector<Vec2> h(2 * pts.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      while (k >= 2 && det(h[k - 1] - h[k - 2], pts[i] - h[k - 2]) <= 0) --k;
      h[k++] = pts[i];
    }
    for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
      while (k >= t && det(h[k - 1] - h[k - 2], pts[i] - h[k - 2]) <= 0) --k;
      h[k++] = pts[i];
    }
    h.resize(k - 1);
    hull = std::move(h);
  }
  std::int64_t lo = 0, hi = 0;
  if (collinear) {
    lo = hi = 0;
    for (const Vec2& p : points) {
      const Vec2 d = p - points[0];
      const std::int64_t t = d.x * dir.x + d.y * dir.y;
      lo = std::min(lo, t);
      hi = std::max(hi, t);
    }
  }
  std::vector<Vec2> out;
  for (std::int64_t x = x0; x <= x1; ++x)
    for (std::int64_t y = y0; y <= y1; ++y) {
      const Vec2 w{x, y};
      if (std::find(points.begin(), points.end(), w) != points.end()) continue;
      bool inside = true;
      if (collinear) {
        const Vec2 d = w - points[0];
        const std::int64_t t = d.x * dir.x + d.y * dir.y;
        inside = det(dir, d) == 0 && lo < t && t < hi;
      } else {
        for (std::size_t i = 0; i < hull.size() && inside; ++i)
          if (det(hull[(i + 1) % hull.size()] - hull[i], w - hull[i]) <= 0) inside = false;
      }
      if (inside) out.push_back(w);
    }
  return out;
}

bool dihedral_minimal(const std::vector<int>& seq) {
  const std::size_t k = seq.size();
  std::vector<int> rev(seq.rbegin(), seq.rend());
  for (std::size_t r = 0; r < k; ++r) {
    std::vector<int> a(k), b(k);
    for (std::size_t i = 0; i < k; ++i) {
      a[i] = seq[(i + r) % k];
      b[i] = rev[(i + r) % k];
    }
    if (a < seq || b < seq) return false;
  }
  return true;
}

void enumerate_trees(const Degree& degree, int max_excess, Budget& budget,
                     const std::function<void(DecoratedGraph)>& emit) {
  Forest forest(degree, max_excess, budget);
  Counts rest;
  for (const auto& e : degree.entries()) rest.push_back(e.multiplicity);
  --rest[0];
  const Vec2 d0 = degree.entries()[0].vector;
  for (int id : forest.nodes_for(rest)) {
    const auto& top = forest.node(id);
    if (top.leaf >= 0) continue;
    Builder b;
    const int v = b.add_vertex();
    b.add_end(v, d0);
    for (int c : top.children) b.attach(forest, c, v);
    emit(b.finish());
  }
}

void enumerate_cycles(const Degree& degree, int max_excess, Budget& budget,
                      const std::function<void(DecoratedGraph)>& emit) {
  Forest forest(degree, max_excess, budget);
  struct Group {
    std::vector<int> nodes;
    Vec2 sum;
    int excess = 0;
  };
  std::vector<Group> groups;
  std::map<Counts, std::vector<int>> groups_for;
  auto groups_of = [&](const Counts& b) -> const std::vector<int>& {
    auto it = groups_for.find(b);
    if (it != groups_for.end()) return it->second;
    std::vector<int> ids;
    for (int id : forest.nodes_for(b)) {
      groups.push_back({{id}, forest.node(id).sum, forest.node(id).excess});
      ids.push_back(static_cast<int>(groups.size()) - 1);
    }
    for (int j = 2; j <= 1 + max_excess; ++j)
      forest.child_sets(b, j, max_excess - (j - 1), [&](const std::vector<int>& nodes, int ex) {
        Vec2 s;
        for (int id : nodes) s += forest.node(id).sum;
        groups.push_back({nodes, s, ex + j - 1});
        ids.push_back(static_cast<int>(groups.size()) - 1);
      });
    return groups_for.emplace(b, std::move(ids)).first->second;
  };

  std::vector<int> seq;
  auto process = [&]() {
    const std::size_t k = seq.size();
    std::vector<Vec2> prefix{Vec2{}};
    for (std::size_t i = 1; i < k; ++i) prefix.push_back(prefix.back() + groups[idx(seq[i])].sum);
    for (const Vec2& w0 : relative_interior_points(prefix)) {
      budget.tick();
      std::vector<Vec2> w(k);
      for (std::size_t i = 0; i < k; ++i) w[i] = w0 - prefix[i];
      bool ok = true;
      for (std::size_t i = 0; i < k && ok; ++i) {
        std::vector<Vec2> vs{-w[(i + k - 1) % k], w[i]};
        for (int id : groups[idx(seq[i])].nodes) vs.push_back(forest.node(id).sum);
        ok = spans_plane(vs);
      }
      if (!ok) continue;
      Builder b;
      for (std::size_t i = 0; i < k; ++i) b.add_vertex();
      for (std::size_t i = 0; i < k; ++i) b.add_edge(static_cast<int>(i), static_cast<int>((i + 1) % k), w[i]);
      for (std::size_t i = 0; i < k; ++i)
        for (int id : groups[idx(seq[i])].nodes) b.attach(forest, id, static_cast<int>(i));
      emit(b.finish());
    }
  };

  Counts all;
  for (const auto& e : degree.entries()) all.push_back(e.multiplicity);
  std::function<void(const Counts&, int)> rec = [&](const Counts& rest, int excess) {
    if (std::all_of(rest.begin(), rest.end(), [](int c) { return c == 0; })) {
      if (seq.size() >= 2 && dihedral_minimal(seq)) process();
      return;
    }
    Counts b(rest.size(), 0);
    for (;;) {
      std::size_t t = 0;
      while (t < b.size() && b[t] == rest[t]) b[t++] = 0;
      if (t == b.size()) break;
      ++b[t];
      const std::vector<int> ids = groups_of(b);
      Counts r = rest;
      for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
      for (int gid : ids) {
        if (!seq.empty() && gid < seq[0]) continue;
        const int e = excess + groups[idx(gid)].excess;
        if (e > max_excess) continue;
        budget.tick();
        seq.push_back(gid);
        rec(r, e);
        seq.pop_back();
      }
    }
  };
  rec(all, 0);
}

std::vector<DecoratedGraph> graphs_with_budget(const Degree& degree, int graph_genus, int max_excess, Budget& budget) {
  std::map<std::string, DecoratedGraph> unique;
  auto emit = [&](DecoratedGraph d) {
    const MarkDecoration none = no_marks(d);
    std::string key = canonical_labelling(d, none).key;
    if (unique.count(key)) return;
    unique.emplace(std::move(key), relabel_canonically(d, none).graph);
  };
  if (graph_genus == 0)
    enumerate_trees(degree, max_excess, budget, emit);
  else if (graph_genus == 1)
    enumerate_cycles(degree, max_excess, budget, emit);
  else
    throw Error(ErrorCode::UnsupportedGenus, "graph genus " + std::to_string(graph_genus) + " is not enumerated");
  std::vector<DecoratedGraph> out;
  for (auto& [key, d] : unique) out.push_back(std::move(d));
  return out;
}

// Undoable union-find over vertices tracking kept ends per component.
class RollbackSets {
 public:
  explicit RollbackSets(int n) : parent_(idx(n)), ends_(idx(n), 0) {
    for (int i = 0; i < n; ++i) parent_[idx(i)] = i;
  }
  int find(int x) const {
    while (parent_[idx(x)] != x) x = parent_[idx(x)];
    return x;
  }
  // Returns false (and changes nothing) when the addition creates a loop or a second end.
  bool keep_edge(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b || ends_[idx(a)] + ends_[idx(b)] > 1) return false;
    history_.push_back({a, ends_[idx(b)]});
    parent_[idx(a)] = b;
    ends_[idx(b)] += ends_[idx(a)];
    return true;
  }
  bool keep_end(int v) {
    v = find(v);
    if (ends_[idx(v)] > 0) return false;
    history_.push_back({-1 - v, 0});
    ends_[idx(v)] = 1;
    return true;
  }
  void undo() {
    auto [a, old] = history_.back();
    history_.pop_back();
    if (a < 0) {
      ends_[idx(-1 - a)] = 0;
      return;
    }
    const int b = parent_[idx(a)];
    parent_[idx(a)] = a;
    ends_[idx(b)] = old;
  }

 private:
  std::vector<int> parent_;
  std::vector<int> ends_;
  std::vector<std::pair<int, int>> history_;
};

struct AutomorphismImage {
  std::vector<int> vertex;
  std::vector<int> edge;
};

std::vector<AutomorphismImage> automorphism_images(const DecoratedGraph& d) {
  const Graph& g = d.graph();
  std::vector<AutomorphismImage> out;
  for (const auto& perm : flag_automorphisms(d, no_marks(d))) {
    AutomorphismImage a;
    for (int v = 0; v < g.vertex_count(); ++v) a.vertex.push_back(g.boundary(perm[idx(g.flags_at(v)[0])]));
    for (int e = 0; e < g.edge_count(); ++e) a.edge.push_back(g.edge_of(perm[idx(g.edges()[idx(e)].first)]));
    out.push_back(std::move(a));
  }
  return out;
}

Integer labelings_from(const std::vector<AutomorphismImage>& autos, const MarkingMap& marking) {
  std::map<Stratum, int> counts;
  for (const Stratum& s : marking) ++counts[s];
  auto image = [](const AutomorphismImage& a, const Stratum& s) {
    return s.on_vertex() ? Stratum::vertex(a.vertex[idx(s.index)]) : Stratum::edge(a.edge[idx(s.index)]);
  };
  Integer preserving = 0, fixing = 0;
  for (const auto& a : autos) {
    bool preserves = true, fixes = true;
    for (const auto& [s, c] : counts) {
      const Stratum t = image(a, s);
      auto it = counts.find(t);
      if (it == counts.end() || it->second != c) preserves = false;
      if (!(t == s)) fixes = false;
    }
    if (preserves) ++preserving;
    if (fixes) ++fixing;
  }
  Integer labelings;
  mpz_fac_ui(labelings.get_mpz_t(), marking.size());
  for (const auto& [s, c] : counts) {
    Integer f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(c));
    labelings /= f;
  }
  return labelings * fixing / preserving;
}

bool has_exceptional_pattern(const Graph& g) {
  std::vector<int> four;
  for (int v = 0; v < g.vertex_count(); ++v)
    if (g.valence(v) == 4) four.push_back(v);
  if (four.size() != 2) return false;
  int joining = 0;
  for (int e = 0; e < g.edge_count(); ++e) {
    auto [a, b] = g.endpoints(e);
    if (b >= 0 && ((a == four[0] && b == four[1]) || (a == four[1] && b == four[0]))) ++joining;
  }
  return joining == 2;
}

// All mark placements on d (as sorted stratum lists), deduplicated up to
// automorphisms of d.
void enumerate_markings(const DecoratedGraph& d, int genus, int n, int vm_lo, int vm_hi, Budget& budget,
                        const std::function<void(const MarkingMap&, const std::string&)>& emit) {
  const Graph& g = d.graph();
  const int h = trop::genus(g);
  const int edges = g.edge_count();
  const int r_lo = n - (genus - h);
  const int r_hi = n;
  std::set<std::string> seen;
  RollbackSets sets(g.vertex_count());
  std::vector<int> removed;

  auto place = [&]() {
    // Vertices adjacent to a removed edge.
    std::vector<bool> in_r(idx(edges), false);
    for (int e : removed) in_r[idx(e)] = true;
    std::vector<int> candidates;
    for (int v = 0; v < g.vertex_count(); ++v)
      for (int f : g.flags_at(v))
        if (in_r[idx(g.edge_of(f))]) {
          candidates.push_back(v);
          break;
        }
    std::vector<int> vmarks;
    std::vector<int> edge_marks(removed.size(), 0);

    auto covered = [&]() {
      // Zero-count removed edges matched to distinct vertex marks at an endpoint.
      std::vector<int> zeros;
      for (std::size_t i = 0; i < removed.size(); ++i)
        if (edge_marks[i] == 0) zeros.push_back(removed[i]);
      if (zeros.size() > vmarks.size()) return false;
      std::vector<bool> used(vmarks.size(), false);
      std::function<bool(std::size_t)> match = [&](std::size_t z) {
        if (z == zeros.size()) return true;
        auto [a, b] = g.endpoints(zeros[z]);
        for (std::size_t m = 0; m < vmarks.size(); ++m) {
          if (used[m] || (vmarks[idx(static_cast<int>(m))] != a && vmarks[m] != b)) continue;
          used[m] = true;
          if (match(z + 1)) return true;
          used[m] = false;
        }
        return false;
      };
      return match(0);
    };

    auto finish = [&]() {
      budget.tick();
      if (!covered()) return;
      MarkingMap marks;
      for (int v : vmarks) marks.push_back(Stratum::vertex(v));
      for (std::size_t i = 0; i < removed.size(); ++i)
        for (int c = 0; c < edge_marks[i]; ++c) marks.push_back(Stratum::edge(removed[i]));
      std::sort(marks.begin(), marks.end());
      std::string key = "g" + std::to_string(genus) + ":" + canonical_labelling(d, counted_marks(d, marks)).key;
      if (!seen.insert(key).second) return;
      emit(marks, key);
    };

    std::function<void(std::size_t, int, int)> distribute = [&](std::size_t i, int left, int zeros_left) {
      if (i == removed.size()) {
        if (left == 0) finish();
        return;
      }
      const int slots_after = static_cast<int>(removed.size() - i - 1);
      for (int c = 0; c <= left; ++c) {
        if (c == 0 && zeros_left == 0) continue;
        // Every later edge needs a mark unless a zero is still allowed.
        if (left - c < 0 || left - c > slots_after * n) continue;
        edge_marks[i] = c;
        distribute(i + 1, left - c, zeros_left - (c == 0 ? 1 : 0));
      }
      edge_marks[i] = 0;
    };

    std::function<void(std::size_t, int)> choose_vertices = [&](std::size_t from, int count) {
      if (static_cast<int>(vmarks.size()) == count) {
        distribute(0, n - count, count);
        return;
      }
      for (std::size_t c = from; c < candidates.size(); ++c) {
        vmarks.push_back(candidates[c]);
        choose_vertices(c, count);
        vmarks.pop_back();
      }
    };
    for (int vm = vm_lo; vm <= vm_hi; ++vm) choose_vertices(0, vm);
  };

  std::function<void(int)> rec = [&](int e) {
    const int chosen = static_cast<int>(removed.size());
    if (chosen > r_hi) return;
    if (chosen + (edges - e) < r_lo) return;
    if (e == edges) {
      place();
      return;
    }
    budget.tick();
    removed.push_back(e);
    rec(e + 1);
    removed.pop_back();
    auto [a, b] = g.endpoints(e);
    const bool kept = b < 0 ? sets.keep_end(a) : sets.keep_edge(a, b);
    if (kept) {
      rec(e + 1);
      sets.undo();
    }
  };
  rec(0);
}

std::string degree_tag(const Degree& degree) {
  std::string s;
  for (const auto& e : degree.entries()) {
    if (!s.empty()) s += '_';
    s += std::to_string(e.vector.x) + "." + std::to_string(e.vector.y) + "x" + std::to_string(e.multiplicity);
  }
  std::replace(s.begin(), s.end(), '-', 'm');
  return s;
}

}  // namespace

Integer TypeCatalog::labelled_count(int codim) const {
  Integer total = 0;
  for (const auto& e : entries)
    if (e.codim == codim) total += e.labelings;
  return total;
}

std::int64_t loop_vector_bound(const Degree& degree) {
  std::int64_t b = 0;
  for (const auto& e : degree.entries()) b += norm_inf(e.vector) * e.multiplicity;
  return b;
}

std::vector<DecoratedGraph> enumerate_graphs(const Degree& degree, int graph_genus, int max_excess,
                                             std::uint64_t node_budget) {
  Budget budget{0, node_budget};
  return graphs_with_budget(degree, graph_genus, max_excess, budget);
}

void for_each_type(int genus, const Degree& degree, const EnumerationOptions& options,
                   const std::function<void(CatalogEntry&&)>& sink) {
  if (genus < 0 || genus > 1)
    throw Error(ErrorCode::UnsupportedGenus, "enumeration supports genus 0 and 1, got " + std::to_string(genus));
  if (options.max_codim < 0 || options.max_codim > 2)
    throw Error(ErrorCode::InvalidInput, "max_codim must be between 0 and 2");
  Budget budget{0, options.node_budget};
  const int n = minimum_marks(degree, genus);

  for (int h = genus; h >= 0; --h) {
    const int defect = genus - h;
    int max_excess = options.max_codim - 2 * defect;
    const bool exceptional_possible = h == genus && h >= 1;
    if (exceptional_possible) max_excess = std::max(max_excess, 2);
    if (max_excess < 0) continue;
    for (const DecoratedGraph& d : graphs_with_budget(degree, h, max_excess, budget)) {
      const Graph& g = d.graph();
      int excess = 0;
      for (int v = 0; v < g.vertex_count(); ++v) excess += g.valence(v) - 3;
      int vm_lo = defect;
      int vm_hi = options.max_codim - excess - defect;
      const bool pattern = exceptional_possible && excess == 2 && has_exceptional_pattern(g);
      if (pattern) vm_hi = std::max(vm_hi, 0);
      if (vm_hi < vm_lo) continue;

      const CombinatorialType bare{d, {}, genus, degree};
      const int loop_rank = static_cast<int>(rank(make_frame(bare).loops));
      const auto autos = automorphism_images(d);
      enumerate_markings(d, genus, n, vm_lo, vm_hi, budget, [&](const MarkingMap& marks, const std::string& key) {
        CatalogEntry entry{{d, marks, genus, degree}, key, 0, 0, false, 0};
        entry.codim = codimension(entry.type);
        entry.exceptional = is_exceptional(entry.type);
        if (entry.codim > options.max_codim && !entry.exceptional) return;
        const int vertex_marks = vertex_mark_count(entry.type);
        entry.dimension = 2 + g.internal_edge_count() + (n - vertex_marks) - loop_rank;
        entry.labelings = labelings_from(autos, marks);
        sink(std::move(entry));
      });
    }
  }
}

TypeCatalog enumerate_types(int genus, const Degree& degree, const EnumerationOptions& options) {
  TypeCatalog cat;
  cat.genus = genus;
  cat.degree = degree;
  cat.max_codim = options.max_codim;
  for_each_type(genus, degree, options, [&](CatalogEntry&& e) { cat.entries.push_back(std::move(e)); });
  std::sort(cat.entries.begin(), cat.entries.end(), [](const CatalogEntry& a, const CatalogEntry& b) {
    return std::tie(a.codim, a.key) < std::tie(b.codim, b.key);
  });
  return cat;
}

Integer count_labelings(const CombinatorialType& shape) {
  MarkingMap marks = shape.marking;
  std::sort(marks.begin(), marks.end());
  return labelings_from(automorphism_images(shape.decorated), marks);
}

std::vector<CombinatorialType> labelled_types(const CatalogEntry& entry) {
  const MarkingMap& slots = entry.type.marking;
  const std::size_t n = slots.size();
  std::vector<CombinatorialType> out;
  std::set<std::string> seen;
  std::vector<int> label_of_slot(n, -1);
  std::vector<bool> used(n, false);
  std::function<void(std::size_t)> rec = [&](std::size_t s) {
    if (s == n) {
      CombinatorialType t = entry.type;
      for (std::size_t i = 0; i < n; ++i) t.marking[idx(label_of_slot[i])] = slots[i];
      if (seen.insert(canonical_form(t)).second) out.push_back(std::move(t));
      return;
    }
    const int min_label = (s > 0 && slots[s] == slots[s - 1]) ? label_of_slot[s - 1] + 1 : 0;
    for (int l = min_label; l < static_cast<int>(n); ++l) {
      if (used[idx(l)]) continue;
      used[idx(l)] = true;
      label_of_slot[s] = l;
      rec(s + 1);
      used[idx(l)] = false;
    }
  };
  rec(0);
  return out;
}

void save_catalog(const TypeCatalog& catalog, std::ostream& out) {
  Json header{{"format", "trop-catalog"},
              {"version", 1},
              {"genus", catalog.genus},
              {"degree", degree_to_json(catalog.degree)},
              {"max_codim", catalog.max_codim},
              {"B", loop_vector_bound(catalog.degree)}};
  out << header.dump() << '\n';
  for (const auto& e : catalog.entries) {
    Json j{{"key", e.key},
           {"codim", e.codim},
           {"dim", e.dimension},
           {"exceptional", e.exceptional},
           {"labelings", e.labelings.get_str()},
           {"type", type_to_json(e.type)}};
    out << j.dump() << '\n';
  }
}

TypeCatalog load_catalog(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::InvalidInput, "empty catalog file");
  TypeCatalog cat;
  try {
    const Json header = Json::parse(line);
    if (header.value("format", "") != "trop-catalog" || header.value("version", 0) != 1)
      throw Error(ErrorCode::InvalidInput, "unrecognised catalog header");
    cat.genus = header.at("genus").get<int>();
    cat.degree = degree_from_json(header.at("degree"));
    cat.max_codim = header.at("max_codim").get<int>();
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      const Json j = Json::parse(line);
      CatalogEntry e{type_from_json(j.at("type"), false), j.at("key").get<std::string>(), j.at("codim").get<int>(),
                     j.at("dim").get<int>(), j.at("exceptional").get<bool>(),
                     Integer(j.at("labelings").get<std::string>())};
      cat.entries.push_back(std::move(e));
    }
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::InvalidInput, std::string("malformed catalog: ") + e.what());
  }
  return cat;
}

std::string cache_file_name(int genus, const Degree& degree, int max_codim) {
  return "catalog_g" + std::to_string(genus) + "_" + degree_tag(degree) + "_c" + std::to_string(max_codim) + "_B" +
         std::to_string(loop_vector_bound(degree)) + ".jsonl";
}

TypeCatalog cached_enumerate(int genus, const Degree& degree, const EnumerationOptions& options,
                             const std::filesystem::path& cache_dir) {
  const std::filesystem::path file = cache_dir / cache_file_name(genus, degree, options.max_codim);
  if (std::filesystem::exists(file)) {
    std::ifstream in(file);
    TypeCatalog cat = load_catalog(in);
    if (cat.genus == genus && cat.degree == degree && cat.max_codim == options.max_codim) return cat;
  }
  TypeCatalog cat = enumerate_types(genus, degree, options);
  std::filesystem::create_directories(cache_dir);
  const std::filesystem::path tmp = file.string() + ".tmp";
  {
    std::ofstream out(tmp);
    save_catalog(cat, out);
  }
  std::filesystem::rename(tmp, file);
  return cat;
}

}  // namespace trop

#include "trop/canonical.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

namespace trop {

namespace {

using Signature = std::vector<std::int64_t>;

std::size_t idx(int i) { return static_cast<std::size_t>(i); }

void append(Signature& s, const std::vector<int>& data) {
  s.push_back(static_cast<std::int64_t>(data.size()));
  s.insert(s.end(), data.begin(), data.end());
}

class Refiner {
 public:
  Refiner(const DecoratedGraph& d, const MarkDecoration& m) : d_(d), m_(m), g_(d.graph()) {}

  std::vector<int> initial_colours() const {
    std::vector<Signature> sigs(idx(g_.vertex_count()));
    for (int v = 0; v < g_.vertex_count(); ++v) {
      Signature& s = sigs[idx(v)];
      append(s, m_.on_vertex[idx(v)]);
      std::vector<Signature> flags;
      for (int f : g_.flags_at(v)) {
        Signature fs{d_.v(f).x, d_.v(f).y, g_.is_end_flag(f) ? 1 : 0};
        append(fs, m_.on_edge[idx(g_.edge_of(f))]);
        flags.push_back(std::move(fs));
      }
      std::sort(flags.begin(), flags.end());
      for (auto& fs : flags) s.insert(s.end(), fs.begin(), fs.end());
    }
    return intern(sigs);
  }

  // Refines until stable.
  void refine(std::vector<int>& colours) const {
    int classes = count_classes(colours);
    for (;;) {
      std::vector<Signature> sigs(colours.size());
      for (int v = 0; v < g_.vertex_count(); ++v) {
        Signature& s = sigs[idx(v)];
        s.push_back(colours[idx(v)]);
        std::vector<Signature> flags;
        for (int f : g_.flags_at(v)) {
          const std::int64_t nb = g_.is_end_flag(f) ? -1 : colours[idx(g_.boundary(g_.glue(f)))];
          Signature fs{d_.v(f).x, d_.v(f).y, nb};
          append(fs, m_.on_edge[idx(g_.edge_of(f))]);
          flags.push_back(std::move(fs));
        }
        std::sort(flags.begin(), flags.end());
        for (auto& fs : flags) s.insert(s.end(), fs.begin(), fs.end());
      }
      colours = intern(sigs);
      const int now = count_classes(colours);
      if (now == classes) return;
      classes = now;
    }
  }

  Signature serialise(const std::vector<int>& rank_of) const {
    std::vector<int> order(rank_of.size());
    for (std::size_t v = 0; v < rank_of.size(); ++v) order[idx(rank_of[v])] = static_cast<int>(v);
    Signature s{g_.vertex_count()};
    for (int v : order) {
      append(s, m_.on_vertex[idx(v)]);
      std::vector<Signature> flags;
      for (int f : g_.flags_at(v)) {
        const std::int64_t nb = g_.is_end_flag(f) ? -1 : rank_of[idx(g_.boundary(g_.glue(f)))];
        Signature fs{d_.v(f).x, d_.v(f).y, nb};
        append(fs, m_.on_edge[idx(g_.edge_of(f))]);
        flags.push_back(std::move(fs));
      }
      std::sort(flags.begin(), flags.end());
      s.push_back(static_cast<std::int64_t>(flags.size()));
      for (auto& fs : flags) s.insert(s.end(), fs.begin(), fs.end());
    }
    return s;
  }

  static int count_classes(const std::vector<int>& colours) {
    return colours.empty() ? 0 : *std::max_element(colours.begin(), colours.end()) + 1;
  }

 private:
  static std::vector<int> intern(const std::vector<Signature>& sigs) {
    std::vector<Signature> sorted = sigs;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<int> out(sigs.size());
    for (std::size_t i = 0; i < sigs.size(); ++i)
      out[i] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), sigs[i]) - sorted.begin());
    return out;
  }

  const DecoratedGraph& d_;
  const MarkDecoration& m_;
  const Graph& g_;
};

}  // namespace

MarkDecoration no_marks(const DecoratedGraph& d) {
  return {std::vector<std::vector<int>>(idx(d.graph().vertex_count())),
          std::vector<std::vector<int>>(idx(d.graph().edge_count()))};
}

MarkDecoration labelled_marks(const DecoratedGraph& d, const MarkingMap& marks) {
  MarkDecoration m = no_marks(d);
  for (std::size_t i = 0; i < marks.size(); ++i) {
    auto& slot = marks[i].on_vertex() ? m.on_vertex[idx(marks[i].index)] : m.on_edge[idx(marks[i].index)];
    slot.push_back(static_cast<int>(i));
  }
  for (auto& s : m.on_vertex) std::sort(s.begin(), s.end());
  for (auto& s : m.on_edge) std::sort(s.begin(), s.end());
  return m;
}

MarkDecoration counted_marks(const DecoratedGraph& d, const MarkingMap& marks) {
  MarkDecoration m = no_marks(d);
  for (auto& s : m.on_vertex) s = {0};
  for (auto& s : m.on_edge) s = {0};
  for (const Stratum& s : marks) {
    auto& slot = s.on_vertex() ? m.on_vertex[idx(s.index)] : m.on_edge[idx(s.index)];
    ++slot[0];
  }
  return m;
}

CanonicalLabelling canonical_labelling(const DecoratedGraph& d, const MarkDecoration& marks) {
  const Refiner refiner(d, marks);
  const int nv = d.graph().vertex_count();
  Signature best;
  std::vector<int> best_rank;

  std::function<void(std::vector<int>)> search = [&](std::vector<int> colours) {
    refiner.refine(colours);
    if (Refiner::count_classes(colours) == nv) {
      Signature cert = refiner.serialise(colours);
      if (best_rank.empty() || cert < best) {
        best = std::move(cert);
        best_rank = colours;
      }
      return;
    }
    // First colour class (by colour value) with more than one vertex.
    std::vector<int> size(idx(nv), 0);
    for (int c : colours) ++size[idx(c)];
    int target = 0;
    while (size[idx(target)] < 2) ++target;
    for (int w = 0; w < nv; ++w) {
      if (colours[idx(w)] != target) continue;
      std::vector<int> next(colours.size());
      for (int v = 0; v < nv; ++v) next[idx(v)] = 2 * colours[idx(v)] + (v == w ? 0 : 1);
      search(std::move(next));
    }
  };
  search(refiner.initial_colours());

  CanonicalLabelling out;
  out.vertex_order.assign(idx(nv), -1);
  for (int v = 0; v < nv; ++v) out.vertex_order[idx(best_rank[idx(v)])] = v;
  std::string key;
  key.reserve(best.size() * 3);
  for (std::size_t i = 0; i < best.size(); ++i) {
    if (i) key += ',';
    key += std::to_string(best[i]);
  }
  out.key = std::move(key);
  return out;
}

std::vector<std::vector<int>> flag_automorphisms(const DecoratedGraph& d, const MarkDecoration& marks) {
  const Graph& g = d.graph();
  const Refiner refiner(d, marks);
  std::vector<int> colours = refiner.initial_colours();
  refiner.refine(colours);

  const int nf = g.flag_count();
  const int nv = g.vertex_count();
  std::vector<int> fmap(idx(nf), -1), fused(idx(nf), 0), vmap(idx(nv), -1), vused(idx(nv), 0);
  std::vector<std::vector<int>> out;

  auto same_flag = [&](int a, int b) {
    return d.v(a) == d.v(b) && g.is_end_flag(a) == g.is_end_flag(b) &&
           marks.on_edge[idx(g.edge_of(a))] == marks.on_edge[idx(g.edge_of(b))];
  };
  auto same_vertex = [&](int a, int b) {
    return colours[idx(a)] == colours[idx(b)] && marks.on_vertex[idx(a)] == marks.on_vertex[idx(b)];
  };

  std::function<void()> extend = [&]() {
    // Next unmapped flag sitting on a mapped vertex.
    int next = -1;
    for (int f = 0; f < nf && next < 0; ++f)
      if (fmap[idx(f)] < 0 && vmap[idx(g.boundary(f))] >= 0) next = f;
    if (next < 0) {
      out.push_back(fmap);
      return;
    }
    const int image_vertex = vmap[idx(g.boundary(next))];
    for (int cand : g.flags_at(image_vertex)) {
      if (fused[idx(cand)] || !same_flag(next, cand)) continue;
      const int partner = g.glue(next);
      const int cand_partner = g.glue(cand);
      // Record undo information.
      std::vector<int> mapped_flags{next};
      int mapped_vertex = -1;
      bool ok = true;
      fmap[idx(next)] = cand;
      fused[idx(cand)] = 1;
      if (partner != next) {
        if (fmap[idx(partner)] >= 0) {
          ok = fmap[idx(partner)] == cand_partner;
        } else if (fused[idx(cand_partner)]) {
          ok = false;
        } else {
          const int c = g.boundary(partner);
          const int dv = g.boundary(cand_partner);
          if (vmap[idx(c)] >= 0) {
            ok = vmap[idx(c)] == dv;
          } else if (vused[idx(dv)] || !same_vertex(c, dv)) {
            ok = false;
          } else {
            vmap[idx(c)] = dv;
            vused[idx(dv)] = 1;
            mapped_vertex = c;
          }
          if (ok) {
            fmap[idx(partner)] = cand_partner;
            fused[idx(cand_partner)] = 1;
            mapped_flags.push_back(partner);
          }
        }
      }
      if (ok) extend();
      for (int f : mapped_flags) {
        fused[idx(fmap[idx(f)])] = 0;
        fmap[idx(f)] = -1;
      }
      if (mapped_vertex >= 0) {
        vused[idx(vmap[idx(mapped_vertex)])] = 0;
        vmap[idx(mapped_vertex)] = -1;
      }
    }
  };

  for (int target = 0; target < nv; ++target) {
    if (!same_vertex(0, target)) continue;
    vmap[0] = target;
    vused[idx(target)] = 1;
    extend();
    vused[idx(target)] = 0;
    vmap[0] = -1;
  }
  return out;
}

Relabelled relabel_canonically(const DecoratedGraph& d, const MarkDecoration& marks) {
  const Graph& g = d.graph();
  const CanonicalLabelling canon = canonical_labelling(d, marks);
  std::vector<int> vertex_map(idx(g.vertex_count()));
  for (std::size_t r = 0; r < canon.vertex_order.size(); ++r) vertex_map[idx(canon.vertex_order[r])] = static_cast<int>(r);

  std::vector<int> flags(idx(g.flag_count()));
  std::iota(flags.begin(), flags.end(), 0);
  auto descriptor = [&](int f) {
    Signature s{vertex_map[idx(g.boundary(f))], d.v(f).x, d.v(f).y,
                g.is_end_flag(f) ? -1 : vertex_map[idx(g.boundary(g.glue(f)))]};
    append(s, marks.on_edge[idx(g.edge_of(f))]);
    return s;
  };
  std::stable_sort(flags.begin(), flags.end(), [&](int a, int b) { return descriptor(a) < descriptor(b); });
  std::vector<int> flag_map(idx(g.flag_count()));
  for (std::size_t i = 0; i < flags.size(); ++i) flag_map[idx(flags[i])] = static_cast<int>(i);

  std::vector<int> boundary(idx(g.flag_count()));
  std::vector<Vec2> vectors(idx(g.flag_count()));
  std::vector<std::pair<int, int>> glue;
  for (int f = 0; f < g.flag_count(); ++f) {
    boundary[idx(flag_map[idx(f)])] = vertex_map[idx(g.boundary(f))];
    vectors[idx(flag_map[idx(f)])] = d.v(f);
    if (!g.is_end_flag(f) && f < g.glue(f)) glue.emplace_back(flag_map[idx(f)], flag_map[idx(g.glue(f))]);
  }
  Graph ng = Graph::from_boundary(g.vertex_count(), std::move(boundary), glue);
  DecoratedGraph nd = DecoratedGraph::from_flag_vectors(std::move(ng), vectors);
  std::vector<int> edge_map(idx(g.edge_count()));
  for (int e = 0; e < g.edge_count(); ++e) edge_map[idx(e)] = nd.graph().edge_of(flag_map[idx(g.edges()[idx(e)].first)]);
  return {std::move(nd), std::move(flag_map), std::move(vertex_map), std::move(edge_map)};
}

}  // namespace trop

#include "trop/type.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <queue>
#include <set>
#include <sstream>

#include "trop/canonical.hpp"
#include "trop/error.hpp"

namespace trop {

namespace {

std::size_t idx(int i) { return static_cast<std::size_t>(i); }

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(idx(n)) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[idx(x)] != x) x = parent[idx(x)] = parent[idx(parent[idx(x)])];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[idx(std::max(a, b))] = std::min(a, b);
    return true;
  }
};

Vector unit(std::size_t dim, int k) {
  Vector v(dim);
  v[idx(k)] = 1;
  return v;
}

void add_scaled(Vector& acc, const Vector& v, const Rational& s) {
  for (std::size_t i = 0; i < acc.size(); ++i)
    if (sgn(v[i]) != 0) acc[i] += s * v[i];
}

int find_form(const StratumFrame& frame, FormTag::Kind kind, int index) {
  for (std::size_t k = 0; k < frame.form_tags.size(); ++k)
    if (frame.form_tags[k].kind == kind && frame.form_tags[k].index == index) return static_cast<int>(k);
  return -1;
}

// Graph data in mutable form, for surgery.
struct Draft {
  int vertex_count = 0;
  std::vector<int> boundary;
  std::vector<Vec2> vectors;
  std::vector<std::pair<int, int>> glue;
};

Draft draft_of(const DecoratedGraph& d) {
  const Graph& g = d.graph();
  Draft out;
  out.vertex_count = g.vertex_count();
  for (int f = 0; f < g.flag_count(); ++f) {
    out.boundary.push_back(g.boundary(f));
    out.vectors.push_back(d.v(f));
    if (!g.is_end_flag(f) && f < g.glue(f)) out.glue.emplace_back(f, g.glue(f));
  }
  return out;
}

DecoratedGraph build(const Draft& dr) {
  Graph g = Graph::from_boundary(dr.vertex_count, dr.boundary, dr.glue);
  return DecoratedGraph::from_flag_vectors(std::move(g), dr.vectors);
}

std::optional<CombinatorialType> try_make(const Draft& dr, MarkingMap marking, int genus) {
  try {
    return make_type(build(dr), std::move(marking), genus);
  } catch (const Error&) {
    return std::nullopt;
  }
}

}  // namespace

CombinatorialType make_type(DecoratedGraph decorated, MarkingMap marking, int genus) {
  const Graph& g = decorated.graph();
  if (genus < 0) throw Error(ErrorCode::InvalidInput, "negative genus");
  const auto violations = validate_balancing(decorated);
  if (!violations.empty()) {
    std::ostringstream os;
    os << "vertex " << violations.front().vertex << " unbalanced (sum " << violations.front().sum << ")";
    throw Error(ErrorCode::Unbalanced, os.str());
  }
  for (int v = 0; v < g.vertex_count(); ++v)
    if (g.valence(v) < 3) throw Error(ErrorCode::InvalidInput, "vertex " + std::to_string(v) + " has valence < 3");
  for (const Edge& e : g.edges())
    if (!e.unbounded() && g.boundary(e.first) == g.boundary(e.second))
      throw Error(ErrorCode::InvalidInput, "edge joining a vertex to itself");
  const int h = trop::genus(g);
  if (h > genus) throw Error(ErrorCode::InvalidInput, "graph genus exceeds the curve genus");
  Degree degree = degree_of(decorated);
  const int n = minimum_marks(degree, genus);
  if (static_cast<int>(marking.size()) != n)
    throw Error(ErrorCode::InvalidInput, "expected " + std::to_string(n) + " marked points");
  int on_vertices = 0;
  for (const Stratum& s : marking)
    if (s.on_vertex()) ++on_vertices;
  if (on_vertices < genus - h) throw Error(ErrorCode::InvalidInput, "too few marks on vertices for the genus defect");
  if (!is_valid_marking(decorated, marking)) throw Error(ErrorCode::InvalidInput, "marking is not admissible");
  return {std::move(decorated), std::move(marking), genus, std::move(degree)};
}

int graph_genus(const CombinatorialType& t) { return genus(t.graph()); }

int vertex_mark_count(const CombinatorialType& t) {
  return static_cast<int>(std::count_if(t.marking.begin(), t.marking.end(), [](const Stratum& s) { return s.on_vertex(); }));
}

int codimension(const CombinatorialType& t) {
  int excess = 0;
  for (int v = 0; v < t.graph().vertex_count(); ++v) excess += t.graph().valence(v) - 3;
  return excess + (t.genus - graph_genus(t)) + vertex_mark_count(t);
}

int codimension_from_edges(const CombinatorialType& t) {
  const int n = t.mark_count();
  const int edge_marks = n - vertex_mark_count(t);
  return 2 * n - 2 + 2 * graph_genus(t) - t.graph().internal_edge_count() - edge_marks;
}

bool is_exceptional(const CombinatorialType& t) {
  if (codimension(t) != 2) return false;
  const Graph& g = t.graph();
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

StratumFrame make_frame(const CombinatorialType& t, std::span<const int> edge_priority) {
  const Graph& g = t.graph();
  const DecoratedGraph& d = t.decorated;
  StratumFrame fr;
  fr.length_coord.assign(idx(g.edge_count()), -1);
  fr.offset_coord.assign(t.marking.size(), -1);
  std::size_t next = 2;
  for (int e = 0; e < g.edge_count(); ++e)
    if (!g.edges()[idx(e)].unbounded()) fr.length_coord[idx(e)] = static_cast<int>(next++);
  for (std::size_t i = 0; i < t.marking.size(); ++i)
    if (!t.marking[i].on_vertex()) fr.offset_coord[i] = static_cast<int>(next++);
  fr.dim = next;

  std::vector<int> order;
  if (edge_priority.empty()) {
    order.resize(idx(g.edge_count()));
    std::iota(order.begin(), order.end(), 0);
  } else {
    order.assign(edge_priority.begin(), edge_priority.end());
  }
  fr.tree_edge.assign(idx(g.edge_count()), true);
  UnionFind uf(g.vertex_count());
  for (int e = 0; e < g.edge_count(); ++e)
    if (!g.edges()[idx(e)].unbounded()) fr.tree_edge[idx(e)] = false;
  for (int e : order) {
    auto [a, b] = g.endpoints(e);
    if (b >= 0 && uf.unite(a, b)) fr.tree_edge[idx(e)] = true;
  }

  fr.vertex_position.assign(idx(g.vertex_count()), {Vector(fr.dim), Vector(fr.dim)});
  std::vector<bool> seen(idx(g.vertex_count()), false);
  fr.root = 0;
  fr.vertex_position[0][0][0] = 1;
  fr.vertex_position[0][1][1] = 1;
  seen[0] = true;
  std::queue<int> queue;
  queue.push(0);
  while (!queue.empty()) {
    const int a = queue.front();
    queue.pop();
    for (int f : g.flags_at(a)) {
      const int e = g.edge_of(f);
      if (g.is_end_flag(f) || !fr.tree_edge[idx(e)]) continue;
      const int b = g.boundary(g.glue(f));
      if (seen[idx(b)]) continue;
      seen[idx(b)] = true;
      const Vec2 u = d.direction(f);
      fr.vertex_position[idx(b)] = fr.vertex_position[idx(a)];
      fr.vertex_position[idx(b)][0][idx(fr.length_coord[idx(e)])] += u.x;
      fr.vertex_position[idx(b)][1][idx(fr.length_coord[idx(e)])] += u.y;
      queue.push(b);
    }
  }

  fr.loops = Matrix(0, fr.dim);
  for (int e = 0; e < g.edge_count(); ++e) {
    if (fr.tree_edge[idx(e)]) continue;
    const Edge& edge = g.edges()[idx(e)];
    const Vec2 u = d.direction(edge.first);
    for (int c = 0; c < 2; ++c) {
      Vector row = fr.vertex_position[idx(g.boundary(edge.first))][idx(c)];
      add_scaled(row, fr.vertex_position[idx(g.boundary(edge.second))][idx(c)], -1);
      row[idx(fr.length_coord[idx(e)])] += c == 0 ? u.x : u.y;
      fr.loops.append_row(row);
    }
  }

  for (std::size_t i = 0; i < t.marking.size(); ++i) {
    const Stratum& s = t.marking[i];
    if (s.on_vertex()) {
      fr.mark_position.push_back(fr.vertex_position[idx(s.index)]);
      continue;
    }
    const int first = g.edges()[idx(s.index)].first;
    const Vec2 u = d.direction(first);
    auto pos = fr.vertex_position[idx(g.boundary(first))];
    pos[0][idx(fr.offset_coord[i])] += u.x;
    pos[1][idx(fr.offset_coord[i])] += u.y;
    fr.mark_position.push_back(std::move(pos));
  }

  for (int e = 0; e < g.edge_count(); ++e) {
    if (fr.length_coord[idx(e)] < 0) continue;
    fr.forms.push_back(unit(fr.dim, fr.length_coord[idx(e)]));
    fr.form_tags.push_back({FormTag::Kind::Length, e});
  }
  for (std::size_t i = 0; i < t.marking.size(); ++i) {
    if (fr.offset_coord[i] < 0) continue;
    const int mark = static_cast<int>(i);
    fr.forms.push_back(unit(fr.dim, fr.offset_coord[i]));
    fr.form_tags.push_back({FormTag::Kind::Offset, mark});
    const int e = t.marking[i].index;
    if (fr.length_coord[idx(e)] >= 0) {
      Vector rem = unit(fr.dim, fr.length_coord[idx(e)]);
      rem[idx(fr.offset_coord[i])] = -1;
      fr.forms.push_back(std::move(rem));
      fr.form_tags.push_back({FormTag::Kind::Remaining, mark});
    }
  }
  return fr;
}

int stratum_dimension(const CombinatorialType& t) {
  const StratumFrame fr = make_frame(t);
  return static_cast<int>(fr.dim - rank(fr.loops));
}

Matrix stratum_parametrisation(const StratumFrame& frame) {
  const std::vector<Vector> basis = nullspace(frame.loops);
  Matrix n(frame.dim, basis.size());
  for (std::size_t c = 0; c < basis.size(); ++c)
    for (std::size_t r = 0; r < frame.dim; ++r) n(r, c) = basis[c][r];
  return n;
}

bool face_is_nonempty(const StratumFrame& frame, std::span<const int> zero_forms) {
  const Matrix n = stratum_parametrisation(frame);
  const Matrix nt = n.transposed();
  auto restrict = [&](const Vector& form) { return nt * form; };
  std::set<int> zero(zero_forms.begin(), zero_forms.end());
  Matrix z(0, n.cols());
  for (int k : zero) z.append_row(restrict(frame.forms[idx(k)]));
  Matrix k2;
  if (z.rows() == 0) {
    k2 = Matrix(n.cols(), n.cols());
    for (std::size_t i = 0; i < n.cols(); ++i) k2(i, i) = 1;
  } else {
    const auto basis = nullspace(z);
    k2 = Matrix(n.cols(), basis.size());
    for (std::size_t c = 0; c < basis.size(); ++c)
      for (std::size_t r = 0; r < n.cols(); ++r) k2(r, c) = basis[c][r];
  }
  const Matrix k2t = k2.transposed();
  std::vector<StrictInequality> system;
  for (std::size_t k = 0; k < frame.forms.size(); ++k) {
    if (zero.count(static_cast<int>(k))) continue;
    system.push_back({k2t * restrict(frame.forms[k]), Rational(0)});
  }
  return find_strict_point(system, k2.cols()).has_value();
}

std::string canonical_form(const CombinatorialType& t) {
  return "g" + std::to_string(t.genus) + ":" + canonical_labelling(t.decorated, labelled_marks(t.decorated, t.marking)).key;
}

std::string shape_key(const CombinatorialType& t) {
  return "g" + std::to_string(t.genus) + ":" + canonical_labelling(t.decorated, counted_marks(t.decorated, t.marking)).key;
}

CombinatorialType canonicalize(const CombinatorialType& t) {
  Relabelled r = relabel_canonically(t.decorated, labelled_marks(t.decorated, t.marking));
  MarkingMap marks = t.marking;
  for (Stratum& s : marks) s.index = s.on_vertex() ? r.vertex_map[idx(s.index)] : r.edge_map[idx(s.index)];
  return {std::move(r.graph), std::move(marks), t.genus, t.degree};
}

CombinatorialType contract_face(const CombinatorialType& t, const StratumFrame& frame, std::span<const int> zero_forms) {
  const Graph& g = t.graph();
  std::vector<bool> contracted(idx(g.edge_count()), false);
  MarkingMap marks = t.marking;
  std::vector<int> mark_vertex(marks.size(), -1);
  for (int k : zero_forms) {
    const FormTag& tag = frame.form_tags[idx(k)];
    if (tag.kind == FormTag::Kind::Length) {
      contracted[idx(tag.index)] = true;
    } else {
      const Edge& e = g.edges()[idx(marks[idx(tag.index)].index)];
      mark_vertex[idx(tag.index)] = g.boundary(tag.kind == FormTag::Kind::Offset ? e.first : e.second);
    }
  }
  UnionFind uf(g.vertex_count());
  for (int e = 0; e < g.edge_count(); ++e)
    if (contracted[idx(e)]) {
      auto [a, b] = g.endpoints(e);
      uf.unite(a, b);
    }
  std::vector<int> new_vertex(idx(g.vertex_count()), -1);
  Draft dr;
  for (int v = 0; v < g.vertex_count(); ++v)
    if (uf.find(v) == v) new_vertex[idx(v)] = dr.vertex_count++;
  for (int v = 0; v < g.vertex_count(); ++v) new_vertex[idx(v)] = new_vertex[idx(uf.find(v))];

  std::vector<int> new_flag(idx(g.flag_count()), -1);
  for (int f = 0; f < g.flag_count(); ++f) {
    if (contracted[idx(g.edge_of(f))]) continue;
    new_flag[idx(f)] = static_cast<int>(dr.boundary.size());
    dr.boundary.push_back(new_vertex[idx(g.boundary(f))]);
    dr.vectors.push_back(t.decorated.v(f));
  }
  for (int f = 0; f < g.flag_count(); ++f)
    if (new_flag[idx(f)] >= 0 && !g.is_end_flag(f) && f < g.glue(f)) dr.glue.emplace_back(new_flag[idx(f)], new_flag[idx(g.glue(f))]);
  DecoratedGraph nd = build(dr);

  for (std::size_t i = 0; i < marks.size(); ++i) {
    Stratum& s = marks[i];
    if (s.on_vertex()) {
      s.index = new_vertex[idx(s.index)];
    } else if (contracted[idx(s.index)]) {
      s = Stratum::vertex(new_vertex[idx(g.endpoints(s.index).first)]);
    } else if (mark_vertex[i] >= 0) {
      s = Stratum::vertex(new_vertex[idx(mark_vertex[i])]);
    } else {
      s.index = nd.graph().edge_of(new_flag[idx(g.edges()[idx(s.index)].first)]);
    }
  }
  return make_type(std::move(nd), std::move(marks), t.genus);
}

namespace {

// Splits each listed vertex: flags (a, b) move to a new vertex joined to the
// old one by a new edge. Old edges keep their indices because the new flags
// are appended after all existing ones.
std::optional<Resolution> split(const CombinatorialType& t, const std::vector<std::array<int, 3>>& splits) {
  Draft dr = draft_of(t.decorated);
  std::vector<int> new_edges_first_flag;
  for (auto [v, a, b] : splits) {
    const Vec2 sum = dr.vectors[idx(a)] + dr.vectors[idx(b)];
    if (sum.is_zero()) return std::nullopt;
    const int w = dr.vertex_count++;
    dr.boundary[idx(a)] = w;
    dr.boundary[idx(b)] = w;
    const int fw = static_cast<int>(dr.boundary.size());
    dr.boundary.push_back(w);
    dr.vectors.push_back(-sum);
    dr.boundary.push_back(v);
    dr.vectors.push_back(sum);
    dr.glue.emplace_back(fw, fw + 1);
    new_edges_first_flag.push_back(fw);
  }
  auto type = try_make(dr, t.marking, t.genus);
  if (!type) return std::nullopt;
  const StratumFrame fr = make_frame(*type);
  Resolution r{std::move(*type), {}};
  for (int f : new_edges_first_flag)
    r.zero_forms.push_back(find_form(fr, FormTag::Kind::Length, r.type.graph().edge_of(f)));
  return r;
}

}  // namespace

std::vector<Resolution> resolutions(const CombinatorialType& t) {
  const int c = codimension(t);
  const bool exceptional = is_exceptional(t);
  if (c != 1 && !exceptional)
    throw Error(ErrorCode::NotAWallType, "type has codimension " + std::to_string(c) + " and is not exceptional");
  const Graph& g = t.graph();
  std::vector<Resolution> candidates;

  std::vector<int> four;
  for (int v = 0; v < g.vertex_count(); ++v)
    if (g.valence(v) == 4) four.push_back(v);

  if (!four.empty()) {
    // Every combination of the three pairings at each 4-valent vertex.
    std::vector<int> choice(four.size(), 1);
    for (;;) {
      std::vector<std::array<int, 3>> splits;
      for (std::size_t k = 0; k < four.size(); ++k) {
        const auto& fl = g.flags_at(four[k]);
        splits.push_back({four[k], fl[0], fl[idx(choice[k])]});
      }
      if (auto r = split(t, splits)) candidates.push_back(std::move(*r));
      std::size_t k = 0;
      while (k < choice.size() && ++choice[k] == 4) choice[k++] = 1;
      if (k == choice.size()) break;
    }
  } else {
    for (std::size_t i = 0; i < t.marking.size(); ++i) {
      if (!t.marking[i].on_vertex()) continue;
      const int v = t.marking[i].index;
      for (int f : g.flags_at(v)) {
        MarkingMap marks = t.marking;
        const int e = g.edge_of(f);
        marks[i] = Stratum::edge(e);
        auto type = try_make(draft_of(t.decorated), marks, t.genus);
        if (!type) continue;
        const StratumFrame fr = make_frame(*type);
        const bool at_first = type->graph().edges()[idx(e)].first == f;
        const int form = find_form(fr, at_first ? FormTag::Kind::Offset : FormTag::Kind::Remaining, static_cast<int>(i));
        candidates.push_back({std::move(*type), {form}});
      }
    }
  }

  std::vector<Resolution> out;
  std::set<std::string> keys;
  for (auto& r : candidates) {
    if (codimension(r.type) != 0) continue;
    // The open stratum must be nonempty too; then the face lies in its closure.
    const StratumFrame fr = make_frame(r.type);
    if (!face_is_nonempty(fr, {}) || !face_is_nonempty(fr, r.zero_forms)) continue;
    if (!keys.insert(canonical_form(r.type)).second) continue;
    out.push_back(std::move(r));
  }
  return out;
}

std::string describe(const CombinatorialType& t) {
  const Graph& g = t.graph();
  std::ostringstream os;
  os << "V=" << g.vertex_count() << " E0=" << g.internal_edge_count() << " g(C)=" << graph_genus(t) << " [";
  for (int e = 0; e < g.edge_count(); ++e) {
    auto [a, b] = g.endpoints(e);
    if (e) os << ' ';
    os << a << "->";
    if (b >= 0)
      os << b;
    else
      os << '*';
    os << t.decorated.v(g.edges()[idx(e)].first);
  }
  os << "] marks:";
  for (const Stratum& s : t.marking) os << ' ' << (s.on_vertex() ? 'v' : 'e') << s.index;
  return os.str();
}

}  // namespace trop

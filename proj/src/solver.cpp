#include "trop/solver.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "trop/error.hpp"

namespace trop {

namespace {

std::size_t idx(int i) { return static_cast<std::size_t>(i); }

Integer lcm_of_denominators(const Vector& v) {
  Integer l = 1;
  for (const Rational& q : v)
    if (sgn(q) != 0) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
  return l;
}

struct IntegerOverflow {};
using IntRow = std::vector<std::int64_t>;

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw IntegerOverflow{};
  return r;
}
std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw IntegerOverflow{};
  return r;
}
std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw IntegerOverflow{};
  return r;
}
std::int64_t checked_lcm(std::int64_t a, std::int64_t b) {
  a = a < 0 ? -a : a;
  b = b < 0 ? -b : b;
  return checked_mul(a / std::gcd(a, b), b);
}

// Divides by the positive gcd of the entries.
void normalise(IntRow& r) {
  std::int64_t g = 0;
  for (auto x : r) g = std::gcd(g, x);
  if (g > 1)
    for (auto& x : r) x /= g;
}

// Division-free Gauss-Jordan; pivots are searched among the first
// pivot_cols columns. Row j ends with a nonzero pivot P_j and zeros in the
// other pivot columns.
std::vector<std::size_t> integer_gauss_jordan(std::vector<IntRow>& m, std::size_t pivot_cols) {
  std::vector<std::size_t> pivots;
  std::size_t lead = 0;
  for (std::size_t col = 0; col < pivot_cols && lead < m.size(); ++col) {
    std::size_t p = lead;
    while (p < m.size() && m[p][col] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[lead]);
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == lead || m[r][col] == 0) continue;
      const std::int64_t g = std::gcd(m[lead][col], m[r][col]);
      const std::int64_t a = m[lead][col] / g, b = m[r][col] / g;
      for (std::size_t c = 0; c < m[r].size(); ++c)
        if (m[r][c] != 0 || m[lead][c] != 0) m[r][c] = checked_sub(checked_mul(a, m[r][c]), checked_mul(b, m[lead][c]));
      normalise(m[r]);
    }
    pivots.push_back(col);
    ++lead;
  }
  return pivots;
}

// Integer basis of {x : m x = 0} for rows of length cols.
std::vector<IntRow> integer_kernel(std::vector<IntRow> m, std::size_t cols) {
  const std::vector<std::size_t> pivots = integer_gauss_jordan(m, cols);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::int64_t l = 1;
  for (std::size_t j = 0; j < pivots.size(); ++j) l = checked_lcm(l, m[j][pivots[j]]);
  std::vector<IntRow> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    IntRow v(cols, 0);
    v[f] = l;
    for (std::size_t j = 0; j < pivots.size(); ++j)
      v[pivots[j]] = -checked_mul(m[j][f], l / m[j][pivots[j]]);
    normalise(v);
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace

Matrix AffineSystem::stacked() const {
  Matrix m = evaluation;
  for (std::size_t r = 0; r < loops.rows(); ++r) m.append_row(loops.row(r));
  return m;
}

Vector AffineSystem::rhs(const PointConfiguration& points) const {
  if (2 * points.size() != evaluation.rows()) throw Error(ErrorCode::InvalidInput, "wrong number of points");
  Vector b(evaluation.rows() + loops.rows());
  for (std::size_t i = 0; i < points.size(); ++i) {
    b[2 * i] = points[i].x;
    b[2 * i + 1] = points[i].y;
  }
  return b;
}

AffineSystem build_affine_system(const CombinatorialType& t, std::span<const int> edge_priority) {
  AffineSystem s;
  s.frame = make_frame(t, edge_priority);
  s.evaluation = Matrix(0, s.frame.dim);
  for (const auto& pos : s.frame.mark_position) {
    s.evaluation.append_row(pos[0]);
    s.evaluation.append_row(pos[1]);
  }
  s.loops = s.frame.loops;
  return s;
}

StratumCoordinates coordinates_from_raw(const CombinatorialType& t, const StratumFrame& frame, const Vector& raw) {
  StratumCoordinates c;
  c.root = {raw[0], raw[1]};
  c.lengths.assign(idx(t.graph().edge_count()), Rational(0));
  for (std::size_t e = 0; e < c.lengths.size(); ++e)
    if (frame.length_coord[e] >= 0) c.lengths[e] = raw[idx(frame.length_coord[e])];
  c.offsets.assign(t.marking.size(), Rational(0));
  for (std::size_t i = 0; i < c.offsets.size(); ++i)
    if (frame.offset_coord[i] >= 0) c.offsets[i] = raw[idx(frame.offset_coord[i])];
  c.raw = raw;
  return c;
}

SolveResult solve_with_evidence(const CombinatorialType& t, const PointConfiguration& points) {
  const AffineSystem sys = build_affine_system(t);
  const AffineSolution sol = solve(sys.stacked(), sys.rhs(points));
  SolveResult out;
  if (!sol.consistent) return out;
  const auto& forms = sys.frame.forms;
  if (sol.kernel.empty()) {
    std::vector<int> zero;
    for (std::size_t k = 0; k < forms.size(); ++k) {
      const int s = sgn(dot(forms[k], sol.particular));
      if (s < 0) return out;
      if (s == 0) zero.push_back(static_cast<int>(k));
    }
    StratumCoordinates c = coordinates_from_raw(t, sys.frame, sol.particular);
    if (zero.empty()) {
      out.curves.push_back(std::move(c));
    } else {
      out.boundary.push_back(std::move(zero));
      out.boundary_points.push_back(std::move(c));
    }
    return out;
  }
  std::vector<StrictInequality> system;
  for (const Vector& f : forms) {
    Vector coeffs(sol.kernel.size());
    for (std::size_t j = 0; j < sol.kernel.size(); ++j) coeffs[j] = dot(f, sol.kernel[j]);
    system.push_back({std::move(coeffs), dot(f, sol.particular)});
  }
  if (find_strict_point(system, sol.kernel.size()))
    throw Error(ErrorCode::DegenerateSystem,
                "solution set of dimension " + std::to_string(sol.kernel.size()) + " meets the open stratum");
  return out;
}

std::vector<StratumCoordinates> solve_curves(const CombinatorialType& t, const PointConfiguration& points) {
  return solve_with_evidence(t, points).curves;
}

Embedding realize(const CombinatorialType& t, const StratumCoordinates& c) {
  const StratumFrame frame = make_frame(t);
  const Graph& g = t.graph();
  Embedding out;
  for (const auto& pos : frame.vertex_position) out.vertices.push_back({dot(pos[0], c.raw), dot(pos[1], c.raw)});
  for (const auto& pos : frame.mark_position) out.marks.push_back({dot(pos[0], c.raw), dot(pos[1], c.raw)});
  for (int e = 0; e < g.edge_count(); ++e) {
    const Edge& edge = g.edges()[idx(e)];
    const Point2 from = out.vertices[idx(g.boundary(edge.first))];
    const Vec2 u = t.decorated.direction(edge.first);
    if (edge.unbounded()) {
      out.rays.push_back({e, from, u, t.decorated.weight(e)});
    } else {
      const Rational& l = c.lengths[idx(e)];
      out.segments.push_back({e, from, {from.x + l * static_cast<long>(u.x), from.y + l * static_cast<long>(u.y)},
                              t.decorated.weight(e)});
    }
  }
  return out;
}

std::vector<std::array<Integer, 2>> integer_points(const PointConfiguration& points) {
  Integer l = 1;
  for (const Point2& p : points) {
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), p.x.get_den_mpz_t());
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), p.y.get_den_mpz_t());
  }
  std::vector<std::array<Integer, 2>> out;
  out.reserve(points.size());
  for (const Point2& p : points) {
    const Rational x = p.x * l;
    const Rational y = p.y * l;
    out.push_back({x.get_num(), y.get_num()});
  }
  return out;
}

ShapeSolver::ShapeSolver(const CombinatorialType& shape, bool rational_only) : shape_(shape) {
  if (rational_only || !compile_integer()) compile_rational();
  order_slots();
}

bool ShapeSolver::compile_integer() {
  const Graph& g = shape_.graph();
  const DecoratedGraph& dg = shape_.decorated;
  const std::size_t marks = shape_.marking.size();
  try {
    // Same coordinates, spanning tree and form order as make_frame.
    std::vector<int> length_coord(idx(g.edge_count()), -1), offset_coord(marks, -1);
    std::size_t dim = 2;
    for (int e = 0; e < g.edge_count(); ++e)
      if (!g.edges()[idx(e)].unbounded()) length_coord[idx(e)] = static_cast<int>(dim++);
    for (std::size_t i = 0; i < marks; ++i)
      if (!shape_.marking[i].on_vertex()) offset_coord[i] = static_cast<int>(dim++);
    std::vector<bool> tree(idx(g.edge_count()), true);
    std::vector<int> comp(idx(g.vertex_count()));
    for (int v = 0; v < g.vertex_count(); ++v) comp[idx(v)] = v;
    std::function<int(int)> find = [&](int v) { return comp[idx(v)] == v ? v : comp[idx(v)] = find(comp[idx(v)]); };
    for (int e = 0; e < g.edge_count(); ++e) {
      auto [a, b] = g.endpoints(e);
      if (b < 0) continue;
      const int ra = find(a), rb = find(b);
      tree[idx(e)] = ra != rb;
      if (ra != rb) comp[idx(ra)] = rb;
    }
    std::vector<std::array<IntRow, 2>> pos(idx(g.vertex_count()), {IntRow(dim, 0), IntRow(dim, 0)});
    std::vector<bool> seen(idx(g.vertex_count()), false);
    pos[0][0][0] = 1;
    pos[0][1][1] = 1;
    seen[0] = true;
    std::vector<int> queue{0};
    for (std::size_t q = 0; q < queue.size(); ++q) {
      const int a = queue[q];
      for (int f : g.flags_at(a)) {
        const int e = g.edge_of(f);
        if (g.is_end_flag(f) || !tree[idx(e)]) continue;
        const int b = g.boundary(g.glue(f));
        if (seen[idx(b)]) continue;
        seen[idx(b)] = true;
        const Vec2 u = dg.direction(f);
        pos[idx(b)] = pos[idx(a)];
        pos[idx(b)][0][idx(length_coord[idx(e)])] = checked_add(pos[idx(b)][0][idx(length_coord[idx(e)])], u.x);
        pos[idx(b)][1][idx(length_coord[idx(e)])] = checked_add(pos[idx(b)][1][idx(length_coord[idx(e)])], u.y);
        queue.push_back(b);
      }
    }
    std::vector<IntRow> loops;
    for (int e = 0; e < g.edge_count(); ++e) {
      if (tree[idx(e)]) continue;
      const Edge& edge = g.edges()[idx(e)];
      const Vec2 u = dg.direction(edge.first);
      for (int c = 0; c < 2; ++c) {
        IntRow row(dim);
        for (std::size_t k = 0; k < dim; ++k)
          row[k] = checked_sub(pos[idx(g.boundary(edge.first))][idx(c)][k], pos[idx(g.boundary(edge.second))][idx(c)][k]);
        row[idx(length_coord[idx(e)])] = checked_add(row[idx(length_coord[idx(e)])], c == 0 ? u.x : u.y);
        loops.push_back(std::move(row));
      }
    }
    std::vector<IntRow> eval;
    for (std::size_t i = 0; i < marks; ++i) {
      const Stratum& s = shape_.marking[i];
      if (s.on_vertex()) {
        eval.push_back(pos[idx(s.index)][0]);
        eval.push_back(pos[idx(s.index)][1]);
        continue;
      }
      const int first = g.edges()[idx(s.index)].first;
      const Vec2 u = dg.direction(first);
      for (int c = 0; c < 2; ++c) {
        IntRow row = pos[idx(g.boundary(first))][idx(c)];
        row[idx(offset_coord[i])] = checked_add(row[idx(offset_coord[i])], c == 0 ? u.x : u.y);
        eval.push_back(std::move(row));
      }
    }
    std::vector<IntRow> forms;
    auto unit_row = [&](int c) {
      IntRow r(dim, 0);
      r[idx(c)] = 1;
      return r;
    };
    for (int e = 0; e < g.edge_count(); ++e)
      if (length_coord[idx(e)] >= 0) forms.push_back(unit_row(length_coord[idx(e)]));
    for (std::size_t i = 0; i < marks; ++i) {
      if (offset_coord[i] < 0) continue;
      forms.push_back(unit_row(offset_coord[i]));
      const int e = shape_.marking[i].index;
      if (length_coord[idx(e)] >= 0) {
        IntRow rem = unit_row(length_coord[idx(e)]);
        rem[idx(offset_coord[i])] = -1;
        forms.push_back(std::move(rem));
      }
    }

    // Integer kernel basis of the loop rows; columns of param.
    std::vector<IntRow> basis = integer_kernel(loops, dim);
    const std::size_t d = basis.size();
    stratum_dim_ = static_cast<int>(d);
    const std::size_t n2 = 2 * marks;
    auto apply = [&](const IntRow& row) {
      IntRow out(d, 0);
      for (std::size_t c = 0; c < d; ++c)
        for (std::size_t k = 0; k < dim; ++k)
          if (row[k] != 0 && basis[c][k] != 0) out[c] = checked_add(out[c], checked_mul(row[k], basis[c][k]));
      return out;
    };
    std::vector<IntRow> gmat;
    for (const IntRow& r : eval) gmat.push_back(apply(r));
    const std::size_t k = forms.size();
    std::vector<IntRow> aug(d, IntRow(n2 + k, 0));
    for (std::size_t r = 0; r < n2; ++r)
      for (std::size_t c = 0; c < d; ++c) aug[c][r] = gmat[r][c];
    for (std::size_t f = 0; f < k; ++f) {
      const IntRow fp = apply(forms[f]);
      for (std::size_t c = 0; c < d; ++c) aug[c][n2 + f] = fp[c];
    }
    const std::vector<std::size_t> pivots = integer_gauss_jordan(aug, n2);
    injective_ = pivots.size() == d;
    std::vector<Row> rows;
    auto push = [&](IntRow coeffs, bool equality, int form) {
      normalise(coeffs);
      Row row;
      row.equality = equality;
      row.form = form;
      for (std::size_t c = 0; c < coeffs.size(); ++c)
        if (coeffs[c] != 0) row.terms.emplace_back(static_cast<int>(c), Integer(static_cast<long>(coeffs[c])));
      rows.push_back(std::move(row));
    };
    if (injective_) {
      // Pivot row j reads P_j y_j + ... ; scale all rows by L = lcm |P_j|.
      std::int64_t l = 1;
      for (std::size_t j = 0; j < d; ++j) l = checked_lcm(l, aug[j][pivots[j]]);
      std::vector<std::int64_t> factor(d);
      for (std::size_t j = 0; j < d; ++j) factor[j] = l / aug[j][pivots[j]];
      for (std::size_t f = 0; f < k; ++f) {
        IntRow coeffs(n2, 0);
        for (std::size_t j = 0; j < d; ++j) coeffs[pivots[j]] = checked_mul(aug[j][n2 + f], factor[j]);
        push(std::move(coeffs), false, static_cast<int>(f));
      }
      std::vector<bool> is_pivot(n2, false);
      for (auto r : pivots) is_pivot[r] = true;
      for (std::size_t r = 0; r < n2; ++r) {
        if (is_pivot[r]) continue;
        IntRow coeffs(n2, 0);
        for (std::size_t j = 0; j < d; ++j) coeffs[pivots[j]] = checked_mul(aug[j][r], factor[j]);
        coeffs[r] = checked_sub(coeffs[r], l);
        push(std::move(coeffs), true, -1);
      }
    } else {
      std::vector<IntRow> gt(d, IntRow(n2, 0));
      for (std::size_t r = 0; r < n2; ++r)
        for (std::size_t c = 0; c < d; ++c) gt[c][r] = gmat[r][c];
      for (IntRow& y : integer_kernel(gt, n2)) push(std::move(y), true, -1);
    }
    rows_ = std::move(rows);
    return true;
  } catch (const IntegerOverflow&) {
    rows_.clear();
    return false;
  }
}

void ShapeSolver::compile_rational() {
  const StratumFrame frame = make_frame(shape_);
  const Matrix param = stratum_parametrisation(frame);
  const std::size_t n2 = 2 * shape_.marking.size();
  const std::size_t d = param.cols();
  stratum_dim_ = static_cast<int>(d);
  Matrix eval(0, frame.dim);
  for (const auto& pos : frame.mark_position) {
    eval.append_row(pos[0]);
    eval.append_row(pos[1]);
  }
  const Matrix g = eval * param;  // 2n x d

  auto add_row = [&](const Vector& coeffs, bool equality, int form) {
    // coeffs indexed by point coordinate 0..2n-1
    const Integer scale = lcm_of_denominators(coeffs);
    Row row;
    row.equality = equality;
    row.form = form;
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      if (sgn(coeffs[k]) == 0) continue;
      const Rational scaled = coeffs[k] * scale;
      row.terms.emplace_back(static_cast<int>(k), scaled.get_num());
    }
    rows_.push_back(std::move(row));
  };

  // One elimination of [G^T | (forms * param)^T]: when G has full column
  // rank the pivots select d rows H of G, and the row operations equal
  // (H^T)^-1, leaving G H^-1 and forms * param * H^-1 on the right.
  const std::size_t k = frame.forms.size();
  Matrix aug(d, n2 + k);
  for (std::size_t r = 0; r < n2; ++r)
    for (std::size_t c = 0; c < d; ++c) aug(c, r) = g(r, c);
  for (std::size_t f = 0; f < k; ++f)
    for (std::size_t r = 0; r < frame.dim; ++r) {
      if (sgn(frame.forms[f][r]) == 0) continue;
      for (std::size_t c = 0; c < d; ++c)
        if (sgn(param(r, c)) != 0) aug(c, n2 + f) += frame.forms[f][r] * param(r, c);
    }
  const RowEchelon e = rref(std::move(aug));
  injective_ = e.pivots.size() == d && (d == 0 || e.pivots.back() < n2);
  if (injective_) {
    const std::vector<std::size_t>& pivots = e.pivots;
    for (std::size_t f = 0; f < k; ++f) {
      Vector coeffs(n2);
      for (std::size_t j = 0; j < d; ++j) coeffs[pivots[j]] = e.reduced(j, n2 + f);
      add_row(coeffs, false, static_cast<int>(f));
    }
    std::vector<bool> is_pivot(n2, false);
    for (auto r : pivots) is_pivot[r] = true;
    for (std::size_t r = 0; r < n2; ++r) {
      if (is_pivot[r]) continue;
      Vector coeffs(n2);
      for (std::size_t j = 0; j < d; ++j) coeffs[pivots[j]] = e.reduced(j, r);
      coeffs[r] -= 1;
      add_row(coeffs, true, -1);
    }
  } else {
    for (const Vector& y : left_kernel(g)) add_row(y, true, -1);
  }
}

void ShapeSolver::order_slots() {
  small_rows_ = true;
  for (Row& row : rows_) {
    row.small.clear();
    for (const auto& [k, coef] : row.terms) {
      if (abs(coef) >= (Integer(1) << 40) || row.terms.size() > 64) small_rows_ = false;
      if (small_rows_) row.small.emplace_back(k, coef.get_si());
    }
  }
  // Slot order: greedily complete as many rows as possible, as early as possible.
  const int n = shape_.mark_count();
  std::vector<std::vector<int>> support(rows_.size());
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    for (const auto& [k, coef] : rows_[r].terms) support[r].push_back(k / 2);
    std::sort(support[r].begin(), support[r].end());
    support[r].erase(std::unique(support[r].begin(), support[r].end()), support[r].end());
  }
  std::vector<bool> placed(idx(n), false);
  std::vector<bool> row_done(rows_.size(), false);
  rows_at_depth_.assign(idx(n), {});
  for (int depth = 0; depth < n; ++depth) {
    int best = -1;
    std::pair<int, int> best_score{-1, -1};
    for (int s = 0; s < n; ++s) {
      if (placed[idx(s)]) continue;
      int completes = 0, touches = 0;
      for (std::size_t r = 0; r < rows_.size(); ++r) {
        if (row_done[r]) continue;
        bool in = false, rest = true;
        for (int t : support[r]) {
          if (t == s)
            in = true;
          else if (!placed[idx(t)])
            rest = false;
        }
        if (!in) continue;
        ++touches;
        if (rest) ++completes;
      }
      const std::pair<int, int> score{completes, touches};
      if (score > best_score) {
        best_score = score;
        best = s;
      }
    }
    placed[idx(best)] = true;
    slot_order_.push_back(best);
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      if (row_done[r]) continue;
      if (std::all_of(support[r].begin(), support[r].end(), [&](int t) { return placed[idx(t)]; })) {
        row_done[r] = true;
        rows_at_depth_[idx(depth)].push_back(static_cast<int>(r));
      }
    }
  }
  same_stratum_prev_.assign(idx(n), -1);
  for (int s = 1; s < n; ++s)
    if (shape_.marking[idx(s)] == shape_.marking[idx(s - 1)]) same_stratum_prev_[idx(s)] = s - 1;
}

std::vector<ShapeSolver::Hit> ShapeSolver::search(const PointConfiguration& points, bool closed) const {
  const int n = shape_.mark_count();
  if (static_cast<int>(points.size()) != n) throw Error(ErrorCode::InvalidInput, "wrong number of points");
  const auto p = integer_points(points);
  std::vector<int> point_of_slot(idx(n), -1);
  std::vector<bool> used(idx(n), false);
  std::vector<int> zero;
  std::vector<Hit> out;
  Integer value;

  // Exact 128-bit evaluation when every term is small enough.
  bool fast = small_rows_;
  std::vector<std::array<std::int64_t, 2>> q(idx(n));
  const Integer limit = Integer(1) << 62;
  for (int i = 0; i < n && fast; ++i)
    for (int c = 0; c < 2 && fast; ++c) {
      const Integer& x = p[idx(i)][idx(c)];
      if (abs(x) >= limit) {
        fast = false;
        break;
      }
      q[idx(i)][idx(c)] = x.get_si();
    }
  auto row_sign = [&](const Row& row) {
    if (fast) {
      __int128 acc = 0;
      for (const auto& [k, coef] : row.small) acc += static_cast<__int128>(coef) * q[idx(point_of_slot[idx(k / 2)])][idx(k % 2)];
      return acc > 0 ? 1 : (acc < 0 ? -1 : 0);
    }
    value = 0;
    for (const auto& [k, coef] : row.terms) value += coef * p[idx(point_of_slot[idx(k / 2)])][idx(k % 2)];
    return sgn(value);
  };

  // Order constraint between consecutive slots on one stratum.
  auto order_ok = [&](int s) {
    const int prev = same_stratum_prev_[idx(s)];
    if (prev >= 0 && point_of_slot[idx(prev)] >= 0 && point_of_slot[idx(prev)] > point_of_slot[idx(s)]) return false;
    if (s + 1 < n && same_stratum_prev_[idx(s + 1)] == s && point_of_slot[idx(s + 1)] >= 0 &&
        point_of_slot[idx(s + 1)] < point_of_slot[idx(s)])
      return false;
    return true;
  };

  std::function<void(int)> dfs = [&](int depth) {
    if (depth == n) {
      Hit hit;
      hit.point_of_slot = point_of_slot;
      hit.zero_forms = zero;
      out.push_back(std::move(hit));
      return;
    }
    const int slot = slot_order_[idx(depth)];
    for (int i = 0; i < n; ++i) {
      if (used[idx(i)]) continue;
      point_of_slot[idx(slot)] = i;
      if (!order_ok(slot)) {
        point_of_slot[idx(slot)] = -1;
        continue;
      }
      used[idx(i)] = true;
      const std::size_t zero_mark = zero.size();
      bool ok = true;
      for (int r : rows_at_depth_[idx(depth)]) {
        const Row& row = rows_[idx(r)];
        const int s = row_sign(row);
        if (row.equality) {
          if (s != 0) ok = false;
        } else if (s < 0 || (s == 0 && !closed)) {
          ok = false;
        } else if (s == 0) {
          zero.push_back(row.form);
        }
        if (!ok) break;
      }
      if (ok) dfs(depth + 1);
      zero.resize(zero_mark);
      used[idx(i)] = false;
      point_of_slot[idx(slot)] = -1;
    }
  };
  dfs(0);
  for (Hit& h : out) std::sort(h.zero_forms.begin(), h.zero_forms.end());
  return out;
}

CombinatorialType ShapeSolver::labelled(const Hit& hit) const {
  CombinatorialType t = shape_;
  for (std::size_t s = 0; s < hit.point_of_slot.size(); ++s) t.marking[idx(hit.point_of_slot[s])] = shape_.marking[s];
  return t;
}

}  // namespace trop

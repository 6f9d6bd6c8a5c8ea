#include "trop/linalg.hpp"

#include <algorithm>
#include <utility>

#include "trop/error.hpp"

namespace trop {

Vector Matrix::row(std::size_t r) const {
  return Vector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

void Matrix::append_row(const Vector& row) {
  if (rows_ == 0 && cols_ == 0) cols_ = row.size();
  if (row.size() != cols_) throw Error(ErrorCode::InvalidInput, "row length mismatch");
  data_.insert(data_.end(), row.begin(), row.end());
  ++rows_;
}

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

Vector Matrix::operator*(const Vector& x) const {
  Vector y(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    Rational acc = 0;
    for (std::size_t c = 0; c < cols_; ++c)
      if (sgn((*this)(r, c)) != 0) acc += (*this)(r, c) * x[c];
    y[r] = acc;
  }
  return y;
}

Matrix Matrix::operator*(const Matrix& other) const {
  Matrix out(rows_, other.cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Rational& a = (*this)(r, k);
      if (sgn(a) == 0) continue;
      for (std::size_t c = 0; c < other.cols_; ++c) out(r, c) += a * other(k, c);
    }
  return out;
}

RowEchelon rref(Matrix m) {
  RowEchelon out;
  std::size_t lead_row = 0;
  for (std::size_t col = 0; col < m.cols() && lead_row < m.rows(); ++col) {
    std::size_t pivot = lead_row;
    while (pivot < m.rows() && sgn(m(pivot, col)) == 0) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != lead_row)
      for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(pivot, c), m(lead_row, c));
    const Rational inv = 1 / m(lead_row, col);
    for (std::size_t c = col; c < m.cols(); ++c) m(lead_row, c) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == lead_row || sgn(m(r, col)) == 0) continue;
      const Rational factor = m(r, col);
      for (std::size_t c = col; c < m.cols(); ++c)
        if (sgn(m(lead_row, c)) != 0) m(r, c) -= factor * m(lead_row, c);
    }
    out.pivots.push_back(col);
    ++lead_row;
  }
  out.reduced = std::move(m);
  return out;
}

std::size_t rank(const Matrix& m) { return rref(m).pivots.size(); }

std::vector<Vector> nullspace(const Matrix& m) {
  const RowEchelon e = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<Vector> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vector v(m.cols());
    v[free] = 1;
    for (std::size_t i = 0; i < e.pivots.size(); ++i) v[e.pivots[i]] = -e.reduced(i, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<Vector> left_kernel(const Matrix& m) { return nullspace(m.transposed()); }

bool row_space_contains(const Matrix& b, const Matrix& a) {
  if (a.rows() == 0) return true;
  Matrix stacked = b;
  for (std::size_t r = 0; r < a.rows(); ++r) stacked.append_row(a.row(r));
  return rank(stacked) == rank(b);
}

AffineSolution solve(const Matrix& a, const Vector& b) {
  if (b.size() != a.rows()) throw Error(ErrorCode::InvalidInput, "rhs length mismatch");
  Matrix aug(a.rows(), a.cols() + 1);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) aug(r, c) = a(r, c);
    aug(r, a.cols()) = b[r];
  }
  const RowEchelon e = rref(std::move(aug));
  AffineSolution out;
  if (!e.pivots.empty() && e.pivots.back() == a.cols()) return out;
  out.consistent = true;
  out.particular.assign(a.cols(), Rational(0));
  for (std::size_t i = 0; i < e.pivots.size(); ++i) out.particular[e.pivots[i]] = e.reduced(i, a.cols());
  out.kernel = nullspace(a);
  return out;
}

std::optional<Matrix> inverse(const Matrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::InvalidInput, "inverse of a non-square matrix");
  const std::size_t n = m.rows();
  Matrix aug(n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = m(r, c);
    aug(r, n + r) = 1;
  }
  const RowEchelon e = rref(std::move(aug));
  if (e.pivots.size() < n || e.pivots[n - 1] != n - 1) return std::nullopt;
  Matrix out(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) out(r, c) = e.reduced(r, n + c);
  return out;
}

Rational dot(const Vector& a, const Vector& b) {
  Rational acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (sgn(a[i]) != 0 && sgn(b[i]) != 0) acc += a[i] * b[i];
  return acc;
}

Rational random_unit_rational(std::mt19937_64& rng, int bits) {
  const std::uint64_t den = std::uint64_t{1} << bits;
  std::uniform_int_distribution<std::uint64_t> dist(1, den - 1);
  Rational q(Integer(static_cast<unsigned long>(dist(rng))), Integer(static_cast<unsigned long>(den)));
  q.canonicalize();
  return q;
}

namespace {

// Scales so the first nonzero coefficient has absolute value one.
// Returns false if the inequality is constant.
bool normalize(StrictInequality& ineq) {
  for (const auto& c : ineq.coeffs) {
    if (sgn(c) == 0) continue;
    const Rational scale = 1 / abs(c);
    for (auto& x : ineq.coeffs) x *= scale;
    ineq.constant *= scale;
    return true;
  }
  return false;
}

// Drops duplicate directions, keeping the tightest constant. Returns false
// if some constant inequality is violated.
bool simplify(std::vector<StrictInequality>& system) {
  std::vector<StrictInequality> kept;
  kept.reserve(system.size());
  for (auto& ineq : system) {
    if (!normalize(ineq)) {
      if (sgn(ineq.constant) <= 0) return false;
      continue;
    }
    bool merged = false;
    for (auto& k : kept) {
      if (k.coeffs == ineq.coeffs) {
        if (ineq.constant < k.constant) k.constant = ineq.constant;
        merged = true;
        break;
      }
    }
    if (!merged) kept.push_back(std::move(ineq));
  }
  system = std::move(kept);
  return true;
}

Rational pick_between(const std::optional<Rational>& lo, const std::optional<Rational>& hi, std::mt19937_64* rng) {
  if (lo && hi) {
    const Rational t = rng ? random_unit_rational(*rng, 12) : Rational(1, 2);
    return *lo + t * (*hi - *lo);
  }
  const Rational step = rng ? Rational(1) + random_unit_rational(*rng, 12) : Rational(1);
  if (lo) return *lo + step;
  if (hi) return *hi - step;
  return rng ? random_unit_rational(*rng, 12) - Rational(1, 2) : Rational(0);
}

}  // namespace

std::optional<Vector> find_strict_point(const std::vector<StrictInequality>& system, std::size_t dim,
                                        std::mt19937_64* rng) {
  for (const auto& ineq : system)
    if (ineq.coeffs.size() != dim) throw Error(ErrorCode::InvalidInput, "inequality dimension mismatch");

  // stages[k] only involves variables 0..k-1.
  std::vector<std::vector<StrictInequality>> stages(dim + 1);
  stages[dim] = system;
  if (!simplify(stages[dim])) return std::nullopt;
  for (std::size_t k = dim; k-- > 0;) {
    const auto& cur = stages[k + 1];
    std::vector<StrictInequality> next, lower, upper;
    for (const auto& ineq : cur) {
      const int s = sgn(ineq.coeffs[k]);
      if (s == 0)
        next.push_back(ineq);
      else if (s > 0)
        lower.push_back(ineq);
      else
        upper.push_back(ineq);
    }
    // a.z + c > 0 with a_k = 1 (after normalisation lower has a_k > 0).
    for (const auto& lo : lower) {
      for (const auto& hi : upper) {
        const Rational wl = -hi.coeffs[k];
        const Rational wh = lo.coeffs[k];
        StrictInequality comb{Vector(dim), wl * lo.constant + wh * hi.constant};
        for (std::size_t i = 0; i < dim; ++i) comb.coeffs[i] = wl * lo.coeffs[i] + wh * hi.coeffs[i];
        comb.coeffs[k] = 0;
        next.push_back(std::move(comb));
      }
    }
    if (!simplify(next)) return std::nullopt;
    stages[k] = std::move(next);
  }

  Vector z(dim, Rational(0));
  for (std::size_t k = 0; k < dim; ++k) {
    std::optional<Rational> lo, hi;
    for (const auto& ineq : stages[k + 1]) {
      const Rational& a = ineq.coeffs[k];
      const int s = sgn(a);
      if (s == 0) continue;
      Rational rest = ineq.constant;
      for (std::size_t i = 0; i < k; ++i)
        if (sgn(ineq.coeffs[i]) != 0) rest += ineq.coeffs[i] * z[i];
      const Rational bound = -rest / a;
      if (s > 0) {
        if (!lo || bound > *lo) lo = bound;
      } else {
        if (!hi || bound < *hi) hi = bound;
      }
    }
    if (lo && hi && !(*lo < *hi)) return std::nullopt;  // unreachable when elimination is exact
    z[k] = pick_between(lo, hi, rng);
  }
  return z;
}

}  // namespace trop

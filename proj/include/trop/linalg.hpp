#pragma once

#include <cstddef>
#include <optional>
#include <random>
#include <vector>

#include "trop/rational.hpp"

namespace trop {

using Vector = std::vector<Rational>;

/// Dense row-major matrix of exact rationals.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Vector row(std::size_t r) const;
  void append_row(const Vector& row);
  Matrix transposed() const;
  Vector operator*(const Vector& x) const;
  Matrix operator*(const Matrix& other) const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

struct RowEchelon {
  Matrix reduced;                    ///< reduced row echelon form
  std::vector<std::size_t> pivots;   ///< pivot column of each nonzero row
};

RowEchelon rref(Matrix m);
std::size_t rank(const Matrix& m);

/// Basis of {x : m x = 0}, one vector per free column.
std::vector<Vector> nullspace(const Matrix& m);

/// Basis of {y : y^T m = 0}.
std::vector<Vector> left_kernel(const Matrix& m);

/// True iff every row of `a` lies in the row space of `b`.
bool row_space_contains(const Matrix& b, const Matrix& a);

struct AffineSolution {
  bool consistent = false;
  Vector particular;            ///< free variables set to zero
  std::vector<Vector> kernel;   ///< basis of the homogeneous solutions
};

AffineSolution solve(const Matrix& a, const Vector& b);

/// Inverse of a square matrix, or nullopt when singular.
std::optional<Matrix> inverse(const Matrix& m);

/// coeffs . z + constant > 0
struct StrictInequality {
  Vector coeffs;
  Rational constant;
};

/// Exact strict feasibility by Fourier-Motzkin elimination. Returns a point
/// satisfying every inequality, or nullopt when the open polyhedron is empty.
/// With an rng the point is drawn at random inside the feasible intervals
/// during back substitution; without one it is deterministic.
std::optional<Vector> find_strict_point(const std::vector<StrictInequality>& system, std::size_t dim,
                                        std::mt19937_64* rng = nullptr);

/// Uniform-ish random rational in (0,1) with denominator 2^bits.
Rational random_unit_rational(std::mt19937_64& rng, int bits = 20);

Rational dot(const Vector& a, const Vector& b);

}  // namespace trop

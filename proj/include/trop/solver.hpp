#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "trop/linalg.hpp"
#include "trop/type.hpp"

namespace trop {

struct Point2 {
  Rational x;
  Rational y;
  friend bool operator==(const Point2&, const Point2&) = default;
};

/// p_1..p_n, stored 0-based.
using PointConfiguration = std::vector<Point2>;

/// A point of the stratum: root vertex position, lattice length per edge
/// (zero for ends) and offset per mark (zero for marks on vertices).
struct StratumCoordinates {
  Point2 root;
  std::vector<Rational> lengths;
  std::vector<Rational> offsets;
  Vector raw;  ///< the same data in frame coordinates
};

/// Evaluation rows (two per mark) stacked over loop-closure rows (two per
/// independent cycle). The map is linear in the frame coordinates: the root
/// position is itself a coordinate, so there is no constant term.
struct AffineSystem {
  StratumFrame frame;
  Matrix evaluation;  ///< 2n x dim
  Matrix loops;       ///< 2 g(C) x dim

  Matrix stacked() const;
  /// Right-hand side (p, 0) for the stacked matrix.
  Vector rhs(const PointConfiguration& points) const;
};

AffineSystem build_affine_system(const CombinatorialType& t, std::span<const int> edge_priority = {});

StratumCoordinates coordinates_from_raw(const CombinatorialType& t, const StratumFrame& frame, const Vector& raw);

struct SolveResult {
  std::vector<StratumCoordinates> curves;            ///< every form strictly positive
  std::vector<std::vector<int>> boundary;            ///< zero forms of closed-stratum solutions
  std::vector<StratumCoordinates> boundary_points;
};

/// Exact solve of the stacked system. A unique solution is classified as a
/// curve (all forms > 0) or boundary evidence (forms >= 0, some = 0). A
/// positive-dimensional solution set meeting the open stratum throws
/// DegenerateSystem.
SolveResult solve_with_evidence(const CombinatorialType& t, const PointConfiguration& points);
std::vector<StratumCoordinates> solve_curves(const CombinatorialType& t, const PointConfiguration& points);

/// Plane embedding of a stratum point.
struct Embedding {
  std::vector<Point2> vertices;
  struct Segment {
    int edge = -1;
    Point2 from, to;
    int weight = 1;
  };
  struct Ray {
    int edge = -1;
    Point2 from;
    Vec2 direction;
    int weight = 1;
  };
  std::vector<Segment> segments;
  std::vector<Ray> rays;
  std::vector<Point2> marks;
};
Embedding realize(const CombinatorialType& t, const StratumCoordinates& c);

/// Multiplies every point by the least common denominator, giving integer
/// coordinates. Positive scaling preserves every form's sign.
std::vector<std::array<Integer, 2>> integer_points(const PointConfiguration& points);

/// Solves all labellings of one shape at once. The representative's marks
/// are slots; a labelling assigns the points to slots. Linear forms of the
/// solution are precomputed as integer combinations of the (scaled) point
/// coordinates, so a depth-first search over labellings can reject a
/// partial assignment as soon as some form is determined and negative.
class ShapeSolver {
 public:
  /// Rows are derived in int64 arithmetic with overflow checks, falling
  /// back to exact rationals; rational_only skips the integer attempt.
  explicit ShapeSolver(const CombinatorialType& shape, bool rational_only = false);

  /// False when the evaluation map has positive-dimensional fibres on the
  /// stratum's affine hull.
  bool injective() const { return injective_; }
  int stratum_dim() const { return stratum_dim_; }

  struct Hit {
    std::vector<int> point_of_slot;
    std::vector<int> zero_forms;  ///< empty for interior solutions
  };

  /// closed: also report solutions on the closed stratum with some form
  /// equal to zero. Labellings differing only inside one stratum are
  /// visited once. Candidates for non-injective shapes pass the consistency
  /// rows only. Coordinates come from solve_with_evidence on labelled(hit).
  std::vector<Hit> search(const PointConfiguration& points, bool closed) const;

  const CombinatorialType& shape() const { return shape_; }

  /// The labelled type for a hit.
  CombinatorialType labelled(const Hit& hit) const;

 private:
  struct Row {
    std::vector<std::pair<int, Integer>> terms;  ///< (point coordinate index 2*slot+c, coefficient)
    std::vector<std::pair<int, std::int64_t>> small;
    bool equality = false;
    int form = -1;
  };

  bool compile_integer();  ///< false on int64 overflow
  void compile_rational();
  void order_slots();

  CombinatorialType shape_;
  int stratum_dim_ = 0;
  bool injective_ = false;
  bool small_rows_ = false;  ///< every coefficient below 2^40
  std::vector<Row> rows_;
  std::vector<int> slot_order_;
  std::vector<std::vector<int>> rows_at_depth_;
  std::vector<int> same_stratum_prev_;  ///< previous slot on the same stratum, or -1
};

}  // namespace trop

#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "trop/counting.hpp"

namespace trop {

/// mu_hat_i for the three resolutions of a 4-valent vertex with outgoing
/// vectors v1..v4; index i is the resolution that joins the two vectors
/// other than v_i among v1,v2,v3 (so mu_hat_3 joins v1 and v2).
struct MuSignature {
  std::array<Integer, 3> mu_hat;
  Integer sum() const { return mu_hat[0] + mu_hat[1] + mu_hat[2]; }
  Integer max_abs() const;
};

/// Throws InvalidInput when unbalanced, DegenerateVertex when all four are collinear.
MuSignature mu_signature(Vec2 v1, Vec2 v2, Vec2 v3, Vec2 v4);

/// Integer primitive covector c on R^{2n} (x1,y1,x2,...) with c . p = 0 on
/// the image of the stratum. Throws NotAWallType, UnexpectedImageDimension.
Vector wall_normal(const CombinatorialType& t);

enum class WallCase {
  FourValent,    ///< a 4-valent vertex
  LowerGenus,    ///< g(C) < g; cannot have codim 1
  MarkedVertex,  ///< a mark on a trivalent vertex
  Exceptional,
};
std::string to_string(WallCase c);
WallCase classify_wall(const CombinatorialType& t);

/// A configuration on the image of t's stratum, drawn from a random interior point.
PointConfiguration sample_wall_point(const CombinatorialType& t, std::mt19937_64& rng);

struct SideCurve {
  std::string resolution;  ///< canonical form of the resolution type
  Integer multiplicity;
};

struct LocalTrial {
  PointConfiguration wall_point;
  Rational delta;
  std::vector<SideCurve> plus, minus;  ///< solutions at q + delta c and q - delta c
  Integer plus_sum, minus_sum;
};

struct LocalReport {
  std::string type_key;
  WallCase wall_case = WallCase::MarkedVertex;
  Vector normal;
  Integer expected;  ///< per-side sum predicted for cases (a) and (d); 0 otherwise
  bool mu_checked = false;
  std::vector<LocalTrial> trials;
};

/// Throws InvarianceViolation when the two sides of the wall disagree or
/// a case-specific prediction fails.
LocalReport verify_local_invariance(const CombinatorialType& t, int trials, std::uint64_t seed);

struct GlobalReport {
  int genus = 0;
  Degree degree;
  Integer common_total;
  int random_configs = 0;
  int wall_pairs = 0;
  int rejected = 0;  ///< non-general draws replaced by fresh ones
  std::vector<Integer> totals;
};

/// Counts at `trials` general configurations (random ones plus pairs
/// straddling sampled walls) and requires equal totals; throws
/// InvarianceViolation otherwise.
GlobalReport verify_global_invariance(int genus, const Degree& degree, int trials, std::uint64_t seed,
                                      const CountOptions& options = {});

Json local_report_to_json(const LocalReport& r);
Json global_report_to_json(const GlobalReport& r);

}  // namespace trop

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "trop/enumerate.hpp"
#include "trop/io.hpp"
#include "trop/solver.hpp"

namespace trop {

/// |det(v1,v2)| at a 3-valent vertex; the largest |det*det| over the three
/// pairings at a 4-valent one. Throws UnsupportedValence otherwise.
Integer vertex_multiplicity(const CombinatorialType& t, int vertex);
Integer curve_multiplicity(const CombinatorialType& t);

enum class Verdict { General, Wall, Excluded };
std::string to_string(Verdict v);

struct WallEvidence {
  Verdict kind = Verdict::Wall;
  std::optional<CombinatorialType> type;  ///< absent for coincident points
  int codim = 0;
  std::string reason;
};

struct GeneralPosition {
  Verdict verdict = Verdict::General;
  std::vector<WallEvidence> evidence;
  bool general() const { return verdict == Verdict::General; }
};

struct CountedCurve {
  CombinatorialType type;
  std::string key;
  StratumCoordinates coords;
  Integer multiplicity;
};

struct CountReport {
  int genus = 0;
  Degree degree;
  PointConfiguration points;
  Integer total;
  std::vector<CountedCurve> curves;
  GeneralPosition general_position;
};

Json report_to_json(const CountReport& r);

/// Counts against a fixed catalog. Solvers are built once per pass, so
/// counting several configurations together is much cheaper than one by one.
class Counter {
 public:
  explicit Counter(TypeCatalog catalog);
  const TypeCatalog& catalog() const { return catalog_; }
  int points() const { return n_; }

  std::vector<CountReport> count_all(const std::vector<PointConfiguration>& configs) const;
  CountReport count(const PointConfiguration& points) const;

 private:
  TypeCatalog catalog_;
  int n_ = 0;
};

struct CountOptions {
  int max_codim = -1;  ///< -1: default_max_codim
  std::optional<std::filesystem::path> cache_dir;
  bool allow_walls = false;  ///< otherwise a non-general verdict throws NotGeneralPosition
};

/// 2 when #Delta <= 6, else 0 (then walls are detected from the boundary
/// of codimension-0 strata and exceptional types only).
int default_max_codim(int genus, const Degree& degree);

TypeCatalog catalog_for(int genus, const Degree& degree, const CountOptions& options);

CountReport count_curves(int genus, const Degree& degree, const PointConfiguration& points,
                         const CountOptions& options = {});
GeneralPosition check_general_position(int genus, const Degree& degree, const PointConfiguration& points,
                                       const CountOptions& options = {});

/// Each coordinate moves by eps * k / 2^32 with k uniform in [-2^32, 2^32].
PointConfiguration perturb(const PointConfiguration& points, const Rational& eps, std::uint64_t seed);
/// Numerators with `bits` random bits (signed), denominators in [1, 2^16].
PointConfiguration random_configuration(int n, std::uint64_t seed, int bits = 256);

}  // namespace trop

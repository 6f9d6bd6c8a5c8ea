#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "trop/type.hpp"

namespace trop {

struct EnumerationOptions {
  int max_codim = 0;
  /// Cap on generated candidates (subtrees, cycles, mark placements).
  std::uint64_t node_budget = 200'000'000;
};

/// One isomorphism class of types with the marks forgotten down to their
/// counts per stratum. `type` is a representative whose mark labels follow
/// the sorted stratum order; `labelings` is the number of pairwise
/// non-isomorphic labelled types sharing this shape.
struct CatalogEntry {
  CombinatorialType type;
  std::string key;
  int codim = 0;
  int dimension = 0;
  bool exceptional = false;
  Integer labelings;
};

struct TypeCatalog {
  int genus = 0;
  Degree degree;
  int max_codim = 0;
  std::vector<CatalogEntry> entries;  ///< sorted by (codim, key)

  Integer labelled_count(int codim) const;
};

/// Sum over Delta of the sup norm; every edge vector of an enumerated type
/// is bounded by it.
std::int64_t loop_vector_bound(const Degree& degree);

/// Decorated graphs of the given graph genus (0 or 1) and degree with
/// sum (val - 3) <= max_excess, one per isomorphism class, canonically
/// relabelled.
std::vector<DecoratedGraph> enumerate_graphs(const Degree& degree, int graph_genus, int max_excess,
                                             std::uint64_t node_budget = 200'000'000);

/// Every type of codim <= max_codim plus every exceptional type.
/// Throws UnsupportedGenus for genus > 1, EnumerationBudgetExceeded when
/// the candidate cap is hit.
TypeCatalog enumerate_types(int genus, const Degree& degree, const EnumerationOptions& options = {});

/// The same entries, unsorted, handed over one at a time instead of held in memory.
void for_each_type(int genus, const Degree& degree, const EnumerationOptions& options,
                   const std::function<void(CatalogEntry&&)>& sink);

/// Reads the catalog from cache_dir when present, otherwise enumerates and
/// writes it there.
TypeCatalog cached_enumerate(int genus, const Degree& degree, const EnumerationOptions& options,
                             const std::filesystem::path& cache_dir);

/// n! / prod m_s! * |Aut fixing every marked stratum| / |Aut|
Integer count_labelings(const CombinatorialType& shape);

/// All labelled types of the entry's shape, one per isomorphism class.
std::vector<CombinatorialType> labelled_types(const CatalogEntry& entry);

void save_catalog(const TypeCatalog& catalog, std::ostream& out);
TypeCatalog load_catalog(std::istream& in);
std::string cache_file_name(int genus, const Degree& degree, int max_codim);

}  // namespace trop

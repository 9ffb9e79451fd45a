#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "maxspread/geometry.hpp"

namespace maxspread {

// Which subspaces count: totally isotropic for the bilinear form, totally
// singular for the quadratic form (either type), or any subspace.
enum class Flavor { Symplectic, Orthogonal, Plain };

std::string to_string(Flavor f);
Flavor flavor_from_string(const std::string& s);

struct SearchOptions {
  Flavor flavor = Flavor::Symplectic;
  int target_dim = 0;
  bool enumerate_all = false;  // otherwise stop at the first leaf
  unsigned jobs = 1;
  double time_budget_seconds = 0;  // 0: unlimited
  std::uint64_t node_budget = 0;   // 0: unlimited
};

enum class SearchStatus { Exhausted, Found, BudgetExceeded };
std::string to_string(SearchStatus s);

struct SearchResult {
  SearchStatus status = SearchStatus::Exhausted;
  std::vector<Subspace> leaves;
  std::uint64_t nodes = 0;
  std::uint64_t pruned = 0;
  double seconds = 0;
};

// Bitmap over vector indices (see vector_index); true marks a vector that
// may lie in the subspace being built.
using VectorMask = std::vector<bool>;

// Depth-first search for subspaces of dimension target_dim of the given
// flavor whose nonzero vectors are all allowed (all vectors when mask is
// null). Each subspace is reached exactly once: its parent is its
// intersection with the coordinate hyperplane at its last pivot column.
// A branch is cut when its remaining candidates span too few dimensions.
SearchResult flag_search(const FormedSpace& V, const SearchOptions& opt, const VectorMask* mask);

// Every maximal totally isotropic (Symplectic) or totally singular
// (Orthogonal) subspace, or every subspace of dimension dim (Plain).
std::vector<Subspace> enumerate_maximal(const FormedSpace& V, Flavor flavor, unsigned jobs = 1);
std::vector<Subspace> enumerate_subspaces(const FormedSpace& V, Flavor flavor, int dim, unsigned jobs = 1);
// Closed-form number of maximal subspaces of the flavor (saturating), or
// nullopt when the flavor does not apply to the space.
std::optional<std::uint64_t> maximal_subspace_count(const FormedSpace& V, Flavor flavor);

// Largest vector count for which masks are built.
constexpr std::uint64_t kMaxMaskVectors = std::uint64_t{1} << 28;

}  // namespace maxspread

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "maxspread/families.hpp"
#include "maxspread/search.hpp"

namespace maxspread {

// Refuse searches above this many point-member tests.
constexpr std::uint64_t kMaxPointMemberTests = 2'000'000'000ULL;

// Closed size formula for a family id; nullopt for ids without one.
std::optional<std::int64_t> expected_size(const std::string& id, const Params& params);

bool is_partial_spread(const SubspaceFamily& fam, Flavor flavor, std::string* why = nullptr);
bool is_partial_ovoid(const PointFamily& fam, Flavor flavor, std::string* why = nullptr);
bool is_spread(const SubspaceFamily& fam, Flavor flavor, std::string* why = nullptr);
// Meets every maximal t.s. (orthogonal) or t.i. (symplectic) subspace
// exactly once, checked by full enumeration.
bool is_ovoid(const PointFamily& fam, Flavor flavor, std::string* why = nullptr);

enum class CoverMode { AnyPoint, Isotropic, Singular };
std::string to_string(CoverMode m);
CoverMode cover_mode_from_string(const std::string& s);

struct CoverReport {
  CoverMode mode = CoverMode::AnyPoint;
  std::uint64_t covered = 0;
  std::vector<Vec> uncovered;
};

CoverReport cover_report(const SubspaceFamily& fam, CoverMode mode);

enum class Verdict { Maximal, Extendable, BudgetExceeded, OutOfScale };
std::string to_string(Verdict v);

struct MaximalityCertificate {
  Verdict verdict = Verdict::Maximal;
  std::optional<Subspace> witness_subspace;
  std::optional<Vec> witness_point;
  std::uint64_t nodes = 0;
  std::uint64_t pruned = 0;
  std::uint64_t candidates = 0;  // uncovered vectors or candidate points
  double seconds = 0;
  std::string method;
  Flavor flavor = Flavor::Symplectic;
};

struct CheckOptions {
  unsigned jobs = 1;
  double time_budget_seconds = 0;
  std::uint64_t node_budget = 0;
};

// Searches for an n-space of the flavor disjoint from every member. Only
// uncovered vectors may lie in such a space, so the search runs on the
// uncovered-vector mask.
MaximalityCertificate check_maximal_spread(const SubspaceFamily& fam, Flavor flavor, const CheckOptions& opt = {});
// Same question answered by enumerating every maximal subspace of the flavor.
MaximalityCertificate brute_force_maximal_spread(const SubspaceFamily& fam, Flavor flavor, unsigned jobs = 1);
// Scans candidate points (singular ones for the orthogonal flavor) for one
// that is perpendicular to no member.
MaximalityCertificate check_maximal_ovoid(const PointFamily& fam, Flavor flavor, const CheckOptions& opt = {});

struct CensusRow {
  std::uint64_t meet = 0;  // |H ∩ Omega|
  bool contains_radical = false;
  std::string witt;  // plus, minus, degenerate
  std::uint64_t count = 0;
};

struct Census {
  std::uint64_t hyperplanes = 0;
  std::uint64_t missing = 0;  // hyperplanes disjoint from Omega
  std::vector<CensusRow> rows;
  std::map<std::uint64_t, std::uint64_t> sizes;
};

// All hyperplanes of a 5-dimensional orthogonal space U against a point set.
Census hyperplane_census(const FormedSpace& U, const std::vector<Vec>& omega);

struct Fingerprint {
  std::string kind;  // perp-counts or meet-counts
  std::map<std::uint64_t, std::uint64_t> histogram;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  bool sampled = false;
};

Fingerprint fingerprint(const PointFamily& fam);
Fingerprint fingerprint(const SubspaceFamily& fam, std::uint64_t seed, std::uint64_t samples = 4096);

}  // namespace maxspread

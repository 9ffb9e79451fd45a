#include "maxspread/verify.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <random>
#include <map>
#include <set>
#include <tuple>
#include <unordered_set>

#include "families_common.hpp"

namespace maxspread {

using detail::ipow;

namespace {

std::int64_t get(const Params& p, const std::string& key) {
  auto it = p.find(key);
  if (it == p.end()) throw FamilyError("missing parameter " + key);
  return it->second;
}

std::int64_t get_or(const Params& p, const std::string& key, std::int64_t dflt) {
  auto it = p.find(key);
  return it == p.end() ? dflt : it->second;
}

std::int64_t n_s(std::int64_t q, std::int64_t s) {
  return q * q * q - s * q * q + (s - 1) * (q + 2) + s * (s - 1) / 2 * (q - 2) + 1;
}

bool fail(std::string* why, const std::string& msg) {
  if (why) *why = msg;
  return false;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

std::optional<std::int64_t> expected_size(const std::string& id, const Params& p) {
  const std::int64_t q = get(p, "q");
  auto P = [&](std::int64_t e) { return ipow(q, e); };
  if (id == "desarg") return P(get(p, "n")) + 1;
  if (id == "thm3.1") {
    const auto m = get(p, "m");
    return P(2 * m) - P(m) + (q % 2 == 0 ? 1 : 2);
  }
  if (id == "prop4.1") return P(2 * get(p, "m") - 1) + 1;
  if (id == "thm4.3" || id == "thm6.3") {
    const auto m = get(p, "m"), k = get_or(p, "k", 1);
    return P(2 * m * k - k) + 1;
  }
  if (id == "ex5.1" || id == "ex5.1dagger") return q + 1;
  if (id == "thm5.2i" || id == "thm6.2") return P(get(p, "k")) + 1;
  if (id == "thm5.2ii") return 2 * P(get(p, "k")) + 1;
  if (id == "ex5.3") return P(get(p, "m")) + 1;
  if (id == "thm8.1" || id == "thm7.2") return P(3) - P(2) + 1;
  if (id == "appA") return P(3) + 1;
  if (id == "exA.6") return get(p, "s");
  if (id == "thm7.3" || id == "ns") {
    const auto s = get(p, "s");
    const bool a6ii = get_or(p, "scheme", 0) == 1;
    return a6ii && s == 4 ? n_s(q, 4) - 1 : n_s(q, s);
  }
  if (id == "ex7.4" || id == "lemma7.5" || id == "st" || id == "st5") return P(2) + 1;
  if (id == "lemma7.8") return 2 * P(2) + 1;
  if (id == "thm7.10") return P(2) + q + 1;
  if (id == "thm7.11") return P(2) - q + 1;
  if (id == "thm7.12") {
    const auto s = get(p, "s");
    return P(2) - s * q + 2 * s - 1;
  }
  if (id == "thm9.1") {
    const auto s = get(p, "s");
    return q % 2 == 0 ? P(2) - s * q + 2 * s - 1 : P(2) - s * q + 3 * s - 1;
  }
  if (id == "ex9.2") return 3 * q - 1;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Predicates

bool is_partial_spread(const SubspaceFamily& fam, Flavor flavor, std::string* why) {
  const FormedSpace& V = *fam.space;
  if (V.dim() % 2 != 0) return fail(why, "ambient dimension is odd");
  const int n = V.dim() / 2;
  for (std::size_t i = 0; i < fam.members.size(); ++i) {
    const auto& m = fam.members[i];
    if (m.ambient() != V.dim() || m.dim() != n)
      return fail(why, "member " + std::to_string(i) + " has dimension " + std::to_string(m.dim()));
    if (flavor == Flavor::Symplectic && !is_totally_isotropic(V, m))
      return fail(why, "member " + std::to_string(i) + " is not totally isotropic");
    if (flavor == Flavor::Orthogonal && (!V.has_quadratic() || !is_totally_singular(V, m)))
      return fail(why, "member " + std::to_string(i) + " is not totally singular");
  }
  for (std::size_t i = 0; i < fam.members.size(); ++i)
    for (std::size_t j = i + 1; j < fam.members.size(); ++j)
      if (intersection_dim(fam.members[i], fam.members[j]) != 0)
        return fail(why, "members " + std::to_string(i) + " and " + std::to_string(j) + " meet");
  return true;
}

bool is_partial_ovoid(const PointFamily& fam, Flavor flavor, std::string* why) {
  const FormedSpace& V = *fam.space;
  const Field& F = *V.field();
  std::vector<Vec> polars;
  for (std::size_t i = 0; i < fam.points.size(); ++i) {
    const auto& p = fam.points[i];
    if (static_cast<int>(p.size()) != V.dim() || is_zero(p)) return fail(why, "point " + std::to_string(i) + " is malformed");
    if (flavor == Flavor::Orthogonal && (!V.has_quadratic() || V.quadratic(p) != 0))
      return fail(why, "point " + std::to_string(i) + " is not singular");
    polars.push_back(V.polar(p));
  }
  for (std::size_t i = 0; i < fam.points.size(); ++i)
    for (std::size_t j = i + 1; j < fam.points.size(); ++j)
      if (vec_dot(F, polars[i], fam.points[j]) == 0)
        return fail(why, "points " + std::to_string(i) + " and " + std::to_string(j) + " are perpendicular");
  return true;
}

bool is_spread(const SubspaceFamily& fam, Flavor flavor, std::string* why) {
  if (!is_partial_spread(fam, flavor, why)) return false;
  const FormedSpace& V = *fam.space;
  const Field& F = *V.field();
  const std::uint64_t per = point_count(F, V.dim() / 2);
  const std::uint64_t total = flavor == Flavor::Orthogonal ? V.singular_point_count() : point_count(F, V.dim());
  if (per * fam.members.size() != total)
    return fail(why, "members cover " + std::to_string(per * fam.members.size()) + " of " + std::to_string(total) +
                         " points");
  return true;
}

bool is_ovoid(const PointFamily& fam, Flavor flavor, std::string* why) {
  if (!is_partial_ovoid(fam, flavor, why)) return false;
  const FormedSpace& V = *fam.space;
  const auto maximal = enumerate_maximal(V, flavor);
  for (std::size_t i = 0; i < maximal.size(); ++i) {
    int hits = 0;
    for (const auto& p : fam.points) hits += maximal[i].contains(p) ? 1 : 0;
    if (hits != 1)
      return fail(why, "a maximal subspace contains " + std::to_string(hits) + " points of the set");
  }
  return true;
}

std::string to_string(CoverMode m) {
  switch (m) {
    case CoverMode::AnyPoint: return "any_point";
    case CoverMode::Isotropic: return "isotropic";
    case CoverMode::Singular: return "singular";
  }
  return "?";
}

CoverMode cover_mode_from_string(const std::string& s) {
  if (s == "any_point") return CoverMode::AnyPoint;
  if (s == "isotropic") return CoverMode::Isotropic;
  if (s == "singular") return CoverMode::Singular;
  throw GeometryError("unknown cover mode '" + s + "'");
}

CoverReport cover_report(const SubspaceFamily& fam, CoverMode mode) {
  const FormedSpace& V = *fam.space;
  const Field& F = *V.field();
  if (point_count(F, V.dim()) > kMaxEnumeratedPoints) throw OutOfScale("cover report of " + V.describe());
  if (mode == CoverMode::Singular && !V.has_quadratic()) throw GeometryError("singular mode needs a quadratic form");
  std::unordered_set<std::uint64_t> covered;
  for (const auto& m : fam.members) m.for_each_point([&](const Vec& p) { covered.insert(vector_index(F, p)); });
  CoverReport r;
  r.mode = mode;
  for_each_point_of(F, V.dim(), [&](const Vec& p) {
    if (mode == CoverMode::Singular && V.quadratic(p) != 0) return true;
    if (mode == CoverMode::Isotropic && V.bilinear(p, p) != 0) return true;
    if (covered.count(vector_index(F, p)))
      ++r.covered;
    else
      r.uncovered.push_back(p);
    return true;
  });
  return r;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Maximal: return "maximal";
    case Verdict::Extendable: return "extendable";
    case Verdict::BudgetExceeded: return "budget_exceeded";
    case Verdict::OutOfScale: return "out_of_scale";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Maximality

namespace {

void check_witness(const SubspaceFamily& fam, Flavor flavor, const Subspace& w) {
  SubspaceFamily ext = fam;
  ext.members.push_back(w);
  std::string why;
  if (!is_partial_spread(ext, flavor, &why)) throw GeometryError("search returned an invalid witness: " + why);
}

}  // namespace

MaximalityCertificate check_maximal_spread(const SubspaceFamily& fam, Flavor flavor, const CheckOptions& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  const FormedSpace& V = *fam.space;
  const Field& F = *V.field();
  MaximalityCertificate c;
  c.flavor = flavor;
  c.method = "uncovered-mask flag search";
  const std::uint64_t nvec = vector_count(F, V.dim());
  const std::uint64_t per = vector_count(F, V.dim() / 2);
  if (nvec > kMaxMaskVectors || per * fam.members.size() > kMaxPointMemberTests) {
    c.verdict = Verdict::OutOfScale;
    return c;
  }
  VectorMask mask(nvec, true);
  for (const auto& m : fam.members) m.for_each_vector([&](const Vec& v) { mask[vector_index(F, v)] = false; });
  mask[0] = true;
  c.candidates = static_cast<std::uint64_t>(std::count(mask.begin(), mask.end(), true)) - 1;

  SearchOptions so;
  so.flavor = flavor;
  so.target_dim = V.dim() / 2;
  so.jobs = opt.jobs;
  so.time_budget_seconds = opt.time_budget_seconds;
  so.node_budget = opt.node_budget;
  const auto res = flag_search(V, so, &mask);
  c.nodes = res.nodes;
  c.pruned = res.pruned;
  switch (res.status) {
    case SearchStatus::Exhausted: c.verdict = Verdict::Maximal; break;
    case SearchStatus::Found:
      c.verdict = Verdict::Extendable;
      c.witness_subspace = res.leaves.front();
      check_witness(fam, flavor, *c.witness_subspace);
      break;
    case SearchStatus::BudgetExceeded: c.verdict = Verdict::BudgetExceeded; break;
  }
  c.seconds = seconds_since(t0);
  return c;
}

MaximalityCertificate brute_force_maximal_spread(const SubspaceFamily& fam, Flavor flavor, unsigned jobs) {
  const auto t0 = std::chrono::steady_clock::now();
  const FormedSpace& V = *fam.space;
  MaximalityCertificate c;
  c.flavor = flavor;
  c.method = "full enumeration";
  const auto all = flavor == Flavor::Plain ? enumerate_subspaces(V, flavor, V.dim() / 2, jobs)
                                           : enumerate_maximal(V, flavor, jobs);
  c.candidates = all.size();
  c.verdict = Verdict::Maximal;
  for (const auto& W : all) {
    ++c.nodes;
    if (W.dim() != V.dim() / 2) continue;
    bool disjoint = true;
    for (const auto& m : fam.members)
      if (intersection_dim(W, m) != 0) {
        disjoint = false;
        break;
      }
    if (disjoint) {
      c.verdict = Verdict::Extendable;
      c.witness_subspace = W;
      break;
    }
  }
  c.seconds = seconds_since(t0);
  return c;
}

MaximalityCertificate check_maximal_ovoid(const PointFamily& fam, Flavor flavor, const CheckOptions& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  const FormedSpace& V = *fam.space;
  const Field& F = *V.field();
  MaximalityCertificate c;
  c.flavor = flavor;
  c.method = "candidate point scan";
  if (point_count(F, V.dim()) > kMaxEnumeratedPoints) {
    c.verdict = Verdict::OutOfScale;
    return c;
  }
  std::vector<Vec> polars;
  polars.reserve(fam.points.size());
  for (const auto& p : fam.points) polars.push_back(V.polar(p));
  std::unordered_set<std::uint64_t> members;
  for (const auto& p : fam.points) members.insert(vector_index(F, normalized(F, p)));
  const bool orth = flavor == Flavor::Orthogonal;
  if (orth && !V.has_quadratic()) throw GeometryError("orthogonal flavor needs a quadratic form");
  c.verdict = Verdict::Maximal;
  std::size_t last_hit = 0;
  std::uint64_t since_clock = 0;
  for_each_point_of(F, V.dim(), [&](const Vec& x) {
    if (orth && V.quadratic(x) != 0) return true;
    if (members.count(vector_index(F, x))) return true;
    ++c.candidates;
    // start from the member that blocked the previous candidate
    const std::size_t n = polars.size();
    bool blocked = false;
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t i = (last_hit + k) % n;
      ++c.nodes;
      if (vec_dot(F, polars[i], x) == 0) {
        blocked = true;
        last_hit = i;
        break;
      }
    }
    if (!blocked) {
      c.verdict = Verdict::Extendable;
      c.witness_point = x;
      return false;
    }
    if (opt.time_budget_seconds > 0 && ++since_clock % 4096 == 0 && seconds_since(t0) > opt.time_budget_seconds) {
      c.verdict = Verdict::BudgetExceeded;
      return false;
    }
    return true;
  });
  c.seconds = seconds_since(t0);
  return c;
}

// ---------------------------------------------------------------------------
// Census and fingerprints

Census hyperplane_census(const FormedSpace& U, const std::vector<Vec>& omega) {
  const Field& F = *U.field();
  const int n = U.dim();
  if (!U.has_quadratic()) throw GeometryError("census needs an orthogonal space");
  if (point_count(F, n) * point_count(F, n) > kMaxPointMemberTests) throw OutOfScale("census of " + U.describe());
  const Subspace rad = nullspace(U.field(), n, U.gram());
  const auto singular = U.singular_points();
  const std::uint64_t q = F.order();
  std::map<std::tuple<std::uint64_t, bool, std::string>, std::uint64_t> rows;
  Census c;
  for_each_point_of(F, n, [&](const Vec& h) {
    ++c.hyperplanes;
    std::uint64_t meet = 0, sing = 0;
    for (const auto& p : omega) meet += vec_dot(F, h, p) == 0 ? 1 : 0;
    for (const auto& p : singular) sing += vec_dot(F, h, p) == 0 ? 1 : 0;
    bool has_rad = rad.dim() > 0;
    for (const auto& r : rad.rows()) has_rad = has_rad && vec_dot(F, h, r) == 0;
    std::string witt = sing == q * q + 1 ? "minus" : sing == (q + 1) * (q + 1) ? "plus" : "degenerate";
    if (meet == 0) ++c.missing;
    ++c.sizes[meet];
    ++rows[{meet, has_rad, witt}];
    return true;
  });
  for (const auto& [key, count] : rows) {
    CensusRow r;
    std::tie(r.meet, r.contains_radical, r.witt) = key;
    r.count = count;
    c.rows.push_back(r);
  }
  return c;
}

Fingerprint fingerprint(const PointFamily& fam) {
  const FormedSpace& V = *fam.space;
  const Field& F = *V.field();
  Fingerprint fp;
  fp.kind = "perp-counts";
  if (fam.points.empty()) return fp;
  if (point_count(F, V.dim()) > kMaxEnumeratedPoints) throw OutOfScale("fingerprint of " + V.describe());
  std::vector<Vec> polars;
  std::unordered_set<std::uint64_t> members;
  for (const auto& p : fam.points) {
    polars.push_back(V.polar(p));
    members.insert(vector_index(F, normalized(F, p)));
  }
  const bool orth = V.has_quadratic() && fam.flavor == Flavor::Orthogonal;
  for_each_point_of(F, V.dim(), [&](const Vec& x) {
    if (orth && V.quadratic(x) != 0) return true;
    if (members.count(vector_index(F, x))) return true;
    std::uint64_t k = 0;
    for (const auto& r : polars) k += vec_dot(F, r, x) == 0 ? 1 : 0;
    ++fp.histogram[k];
    ++fp.samples;
    return true;
  });
  return fp;
}

namespace {

// A random maximal subspace of the flavor, grown one random vector at a time.
Subspace random_maximal(const FormedSpace& V, Flavor flavor, std::mt19937_64& rng) {
  const Field& F = *V.field();
  const int n = V.dim() / 2;
  std::uniform_int_distribution<std::uint32_t> pick(0, F.order() - 1);
  Subspace W = Subspace::zero(V.field(), V.dim());
  while (W.dim() < n) {
    const Subspace P = perp(V, W);
    Vec c(static_cast<std::size_t>(P.dim()));
    for (auto& x : c) x = F.elements()[pick(rng)];
    const Vec v = P.combine(c);
    if (is_zero(v) || W.contains(v)) continue;
    if (flavor == Flavor::Orthogonal && V.quadratic(v) != 0) continue;
    std::vector<Vec> rows = W.rows();
    rows.push_back(v);
    W = Subspace::span(V.field(), V.dim(), std::move(rows));
  }
  return W;
}

}  // namespace

// Enumerate every maximal subspace up to this many; sample beyond.
constexpr std::uint64_t kFingerprintEnumerate = 1u << 16;

Fingerprint fingerprint(const SubspaceFamily& fam, std::uint64_t seed, std::uint64_t samples) {
  const FormedSpace& V = *fam.space;
  Fingerprint fp;
  fp.kind = "meet-counts";
  fp.seed = seed;
  if (fam.members.empty()) return fp;
  const Flavor flavor = V.has_quadratic() && fam.flavor == Flavor::Orthogonal ? Flavor::Orthogonal : Flavor::Symplectic;
  auto record = [&](const Subspace& W) {
    std::uint64_t k = 0;
    for (const auto& m : fam.members) k += intersection_dim(W, m) != 0 ? 1 : 0;
    ++fp.histogram[k];
    ++fp.samples;
  };
  const auto total = maximal_subspace_count(V, flavor);
  if (total && *total <= kFingerprintEnumerate) {
    for (const auto& W : enumerate_maximal(V, flavor)) record(W);
    return fp;
  }
  fp.sampled = true;
  std::mt19937_64 rng(seed);
  for (std::uint64_t i = 0; i < samples; ++i) record(random_maximal(V, flavor, rng));
  return fp;
}

}  // namespace maxspread

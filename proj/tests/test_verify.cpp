#include <random>

#include "doctest.h"
#include "maxspread/verify.hpp"
#include "oracle.hpp"

using namespace maxspread;

namespace {

template <class T>
T get(const std::string& id, const Params& p) {
  return std::get<T>(build_family(id, p));
}

// Greedy random partial spread: shuffled maximal subspaces, kept when
// disjoint from everything kept so far, stopping at `size`.
SubspaceFamily random_partial(SpacePtr V, Flavor flavor, std::size_t size, std::mt19937_64& rng) {
  auto all = enumerate_maximal(*V, flavor);
  std::shuffle(all.begin(), all.end(), rng);
  SubspaceFamily fam;
  fam.space = V;
  fam.flavor = flavor;
  for (const auto& W : all) {
    if (fam.members.size() == size) break;
    bool ok = true;
    for (const auto& m : fam.members) ok = ok && intersection_dim(m, W) == 0;
    if (ok) fam.members.push_back(W);
  }
  return fam;
}

FieldPtr gf(std::uint64_t q) {
  const auto [p, e] = prime_power(q);
  return Field::create(FieldTower::create(p, e), e);
}

void check_witness(const SubspaceFamily& fam, Flavor flavor, const MaximalityCertificate& c) {
  if (c.verdict != Verdict::Extendable) return;
  REQUIRE(c.witness_subspace);
  const auto& W = *c.witness_subspace;
  CHECK(W.dim() == fam.space->dim() / 2);
  for (const auto& m : fam.members) CHECK(intersection_dim(W, m) == 0);
  if (flavor == Flavor::Symplectic) CHECK(is_totally_isotropic(*fam.space, W));
  if (flavor == Flavor::Orthogonal) CHECK(is_totally_singular(*fam.space, W));
}

}  // namespace

TEST_CASE("size formulas") {
  // closed forms written out independently
  CHECK(expected_size("thm3.1", {{"q", 5}, {"m", 1}}) == 25 - 5 + 2);
  CHECK(expected_size("thm3.1", {{"q", 2}, {"m", 2}}) == 16 - 4 + 1);
  CHECK(expected_size("prop4.1", {{"q", 2}, {"m", 2}}) == 9);
  CHECK(expected_size("thm4.3", {{"q", 2}, {"m", 2}, {"k", 2}}) == 65);
  CHECK(expected_size("thm5.2ii", {{"q", 2}, {"k", 2}}) == 9);
  CHECK(expected_size("thm7.3", {{"q", 8}, {"s", 1}}) == 449);
  CHECK(expected_size("thm7.3", {{"q", 16}, {"s", 4}, {"scheme", 1}}) == 4096 - 4 * 256 + 3 * 18 + 6 * 14 + 1 - 1);
  CHECK(expected_size("thm7.12", {{"q", 32}, {"s", 2}}) == 963);
  CHECK(expected_size("thm7.12", {{"q", 32}, {"s", 3}}) == 933);
  CHECK(expected_size("thm9.1", {{"q", 5}, {"s", 2}}) == 25 - 10 + 6 - 1);
  CHECK(expected_size("thm9.1", {{"q", 4}, {"s", 1}}) == 16 - 4 + 2 - 1);
  CHECK(expected_size("ex9.2", {{"q", 4}, {"m", 2}}) == 11);
  CHECK(expected_size("thm7.10", {{"q", 8}}) == 73);
  CHECK(expected_size("thm7.11", {{"q", 8}}) == 57);
  CHECK_FALSE(expected_size("unknown", {{"q", 2}}).has_value());
  CHECK_THROWS_AS(expected_size("thm3.1", {{"q", 2}}), FamilyError);
}

TEST_CASE("partial spread and spread predicates") {
  auto d = get<SubspaceFamily>("desarg", {{"q", 2}, {"n", 2}});
  std::string why;
  CHECK(is_partial_spread(d, Flavor::Symplectic, &why));
  CHECK(is_spread(d, Flavor::Symplectic));
  CHECK(is_partial_spread(d, Flavor::Plain));

  auto dup = d;
  dup.members.push_back(d.members[0]);
  CHECK_FALSE(is_partial_spread(dup, Flavor::Symplectic, &why));
  CHECK(why.find("meet") != std::string::npos);

  auto t = get<SubspaceFamily>("thm3.1", {{"q", 2}, {"m", 1}});
  CHECK(is_partial_spread(t, Flavor::Symplectic));
  CHECK_FALSE(is_spread(t, Flavor::Symplectic));

  // a line that is not totally isotropic
  auto bad = d;
  const auto F = d.space->field();
  int partner = 1;
  while (d.space->bilinear(unit_vector(4, 0), unit_vector(4, partner)) == 0) ++partner;
  bad.members = {Subspace::span(F, 4, {unit_vector(4, 0), unit_vector(4, partner)})};
  CHECK_FALSE(is_partial_spread(bad, Flavor::Symplectic, &why));
  CHECK(is_partial_spread(bad, Flavor::Plain));

  auto o = get<SubspaceFamily>("prop4.1", {{"q", 2}, {"m", 2}});
  CHECK(is_partial_spread(o, Flavor::Orthogonal));
  CHECK(is_spread(o, Flavor::Orthogonal));
}

TEST_CASE("cover report against brute force") {
  auto t = get<SubspaceFamily>("thm3.1", {{"q", 3}, {"m", 1}});
  const auto& V = *t.space;
  const auto& F = *V.field();
  std::set<Vec> covered;
  for (const auto& m : t.members)
    for (const auto& v : oracle::vectors_of(m))
      if (!oracle::zero(v)) covered.insert(normalized(F, v));
  const auto r = cover_report(t, CoverMode::AnyPoint);
  CHECK(r.covered == covered.size());
  CHECK(r.covered + r.uncovered.size() == 40);
  for (const auto& u : r.uncovered) CHECK(covered.count(u) == 0);
  CHECK(cover_mode_from_string(to_string(CoverMode::Singular)) == CoverMode::Singular);
  CHECK_THROWS(cover_report(t, CoverMode::Singular));

  auto o = get<SubspaceFamily>("prop4.1", {{"q", 2}, {"m", 2}});
  const auto s = cover_report(o, CoverMode::Singular);
  CHECK(s.covered == 135);
  CHECK(s.uncovered.empty());
}

TEST_CASE("ovoid predicates") {
  auto e = get<PointFamily>("ex7.4", {{"q", 3}});
  CHECK(is_partial_ovoid(e, Flavor::Orthogonal));
  CHECK_FALSE(is_ovoid(e, Flavor::Orthogonal));
  auto dup = e;
  dup.points.push_back(e.points[0]);
  std::string why;
  CHECK_FALSE(is_partial_ovoid(dup, Flavor::Orthogonal, &why));

  // Klein image of the desarguesian Sp(4,3) spread: an ovoid of the Klein quadric
  const auto desarg = desarguesian_symplectic_spread(3, 2);
  const auto F = desarg.space->field();
  const auto iso = isometry(*desarg.space, *FormedSpace::standard_symplectic(F, 2));
  PointFamily k;
  k.space = klein_space(F);
  for (const auto& m : desarg.members) k.points.push_back(klein_point_of_line(iso.apply(m)));
  CHECK(is_ovoid(k, Flavor::Orthogonal));
}

TEST_CASE("maximal spread engine agrees with full enumeration") {
  std::mt19937_64 rng(2024);
  struct Space {
    SpacePtr V;
    Flavor flavor;
  };
  const std::vector<Space> spaces{
      {FormedSpace::standard_symplectic(gf(2), 2), Flavor::Symplectic},
      {FormedSpace::standard_symplectic(gf(3), 2), Flavor::Symplectic},
      {FormedSpace::standard_symplectic(gf(2), 3), Flavor::Symplectic},
      {FormedSpace::standard_hyperbolic(gf(2), 4), Flavor::Orthogonal},
      {FormedSpace::standard_hyperbolic(gf(2), 2), Flavor::Orthogonal},
  };
  int extendable = 0, maximal = 0;
  for (const auto& [V, flavor] : spaces) {
    for (int trial = 0; trial < 12; ++trial) {
      const std::size_t size = 1 + rng() % 12;
      const auto fam = random_partial(V, flavor, size, rng);
      const auto fast = check_maximal_spread(fam, flavor);
      const auto slow = brute_force_maximal_spread(fam, flavor);
      REQUIRE(fast.verdict == slow.verdict);
      check_witness(fam, flavor, fast);
      (fast.verdict == Verdict::Maximal ? maximal : extendable)++;
    }
  }
  CHECK(maximal > 0);
  CHECK(extendable > 0);
}

TEST_CASE("catalogue families: engine, brute force and mutations") {
  const std::vector<std::pair<std::string, Params>> cases{
      {"thm3.1", {{"q", 2}, {"m", 1}}}, {"thm3.1", {{"q", 3}, {"m", 1}}},
      {"thm8.1", {{"q", 2}}},           {"thm6.2", {{"q", 2}, {"k", 2}}},
      {"thm6.3", {{"q", 2}, {"m", 2}, {"k", 1}}},
  };
  for (const auto& [id, p] : cases) {
    CAPTURE(id);
    auto fam = get<SubspaceFamily>(id, p);
    const auto c = check_maximal_spread(fam, Flavor::Symplectic);
    CHECK(c.verdict == Verdict::Maximal);
    CHECK(brute_force_maximal_spread(fam, Flavor::Symplectic).verdict == Verdict::Maximal);
    CHECK(c.method == "uncovered-mask flag search");
    fam.members.pop_back();
    const auto m = check_maximal_spread(fam, Flavor::Symplectic);
    CHECK(m.verdict == Verdict::Extendable);
    check_witness(fam, Flavor::Symplectic, m);
  }
  auto o = get<SubspaceFamily>("prop4.1", {{"q", 2}, {"m", 2}});
  CHECK(check_maximal_spread(o, Flavor::Plain).verdict == Verdict::Maximal);
  CHECK(brute_force_maximal_spread(o, Flavor::Plain).verdict == Verdict::Maximal);
}

TEST_CASE("budgets and scale guards") {
  auto fam = get<SubspaceFamily>("thm4.3", {{"q", 2}, {"m", 2}, {"k", 2}});
  CheckOptions opt;
  opt.node_budget = 100;
  const auto c = check_maximal_spread(fam, Flavor::Orthogonal, opt);
  CHECK(c.verdict == Verdict::BudgetExceeded);
  CHECK(to_string(c.verdict) == "budget_exceeded");

  auto big = get<PointFamily>("thm7.12", {{"q", 32}, {"s", 2}});
  CHECK(check_maximal_ovoid(big, Flavor::Orthogonal).verdict == Verdict::OutOfScale);
}

TEST_CASE("maximal ovoid scan") {
  auto e = get<PointFamily>("ex7.4", {{"q", 3}});
  const auto c = check_maximal_ovoid(e, Flavor::Orthogonal);
  CHECK(c.verdict == Verdict::Maximal);
  CHECK(c.candidates > 0);
  e.points.pop_back();
  const auto m = check_maximal_ovoid(e, Flavor::Orthogonal);
  REQUIRE(m.verdict == Verdict::Extendable);
  REQUIRE(m.witness_point);
  auto grown = e;
  grown.points.push_back(*m.witness_point);
  CHECK(is_partial_ovoid(grown, Flavor::Orthogonal));

  // brute-force cross-check: no singular point is non-perpendicular to all of ex7.4 (q = 2)
  auto small = get<PointFamily>("ex7.4", {{"q", 2}});
  const auto& V = *small.space;
  int extenders = 0;
  for (const auto& x : V.singular_points()) {
    bool ok = true;
    for (const auto& p : small.points) ok = ok && x != p && oracle::bil(V, x, p) != 0;
    extenders += ok ? 1 : 0;
  }
  CHECK(extenders == 0);
  CHECK(check_maximal_ovoid(small, Flavor::Orthogonal).verdict == Verdict::Maximal);
}

TEST_CASE("hyperplane census of the Suzuki-Tits ovoid (q = 8)") {
  const auto M = suzuki_tits_model(8);
  const auto c = hyperplane_census(*M.o5, M.omega5);
  CHECK(c.hyperplanes == 4681);
  CHECK(c.missing == 0);
  std::uint64_t total = 0;
  for (const auto& [size, n] : c.sizes) {
    CHECK((size == 1 || size == 5 || size == 9 || size == 13));
    total += n;
  }
  CHECK(total == 4681);
  CHECK(c.sizes.at(1) == 65);
}

TEST_CASE("fingerprints") {
  auto e = get<PointFamily>("ex7.4", {{"q", 2}});
  const auto f = fingerprint(e);
  CHECK(f.kind == "perp-counts");
  CHECK_FALSE(f.sampled);
  std::uint64_t n = 0;
  for (const auto& [k, c] : f.histogram) n += c;
  CHECK(n == 135 - 5);
  CHECK(n == f.samples);

  auto s = get<SubspaceFamily>("thm3.1", {{"q", 2}, {"m", 1}});
  const auto g = fingerprint(s, 1);
  CHECK(g.kind == "meet-counts");
  CHECK_FALSE(g.sampled);
  CHECK(g.samples == 15);
  // maximality means no maximal t.i. subspace misses every member
  CHECK(g.histogram.count(0) == 0);

  auto big = get<SubspaceFamily>("thm4.3", {{"q", 2}, {"m", 2}, {"k", 2}});
  const auto a = fingerprint(big, 9, 64), b = fingerprint(big, 9, 64);
  CHECK(a.sampled);
  CHECK(a.histogram == b.histogram);
  CHECK(a.samples == 64);
}

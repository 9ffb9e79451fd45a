#include <random>

#include "doctest.h"
#include "maxspread/families.hpp"
#include "maxspread/search.hpp"
#include "oracle.hpp"

using namespace maxspread;

namespace {

FieldPtr gf(std::uint64_t q) {
  const auto [p, e] = prime_power(q);
  return Field::create(FieldTower::create(p, e), e);
}

std::size_t brute_singular_count(const FormedSpace& V) {
  std::size_t n = 0;
  for (const auto& v : oracle::all_vectors(*V.field(), V.dim()))
    if (!oracle::zero(v) && oracle::quad(V, v) == 0) ++n;
  return n / (V.field()->order() - 1);
}

Subspace span(const FieldPtr& F, int n, std::vector<Vec> rows) { return Subspace::span(F, n, std::move(rows)); }

}  // namespace

TEST_CASE("form evaluation") {
  auto F2 = gf(2);
  auto V = FormedSpace::standard_symplectic(F2, 2);
  CHECK(V->bilinear(unit_vector(4, 0), unit_vector(4, 1)) == 1);
  CHECK(V->bilinear(unit_vector(4, 0), unit_vector(4, 2)) == 0);
  for (const auto& v : oracle::all_vectors(*F2, 4)) REQUIRE(V->bilinear(v, v) == 0);

  auto F3 = gf(3);
  auto W = FormedSpace::standard_hyperbolic(F3, 2);
  for (const auto& v : oracle::all_vectors(*F3, 4)) {
    REQUIRE(W->quadratic(v) == oracle::quad(*W, v));
    REQUIRE(W->quadratic(vec_scale(*F3, 2, v)) == F3->mul(4 % 3, W->quadratic(v)));
  }
}

TEST_CASE("desarguesian ovoid points are singular (q = 4)") {
  const auto M = ovoid_model(4);
  const auto pts = M.ovoid();
  CHECK(pts.size() == 65);
  for (const auto& v : pts) REQUIRE(oracle::quad(*M.space, v) == 0);
}

TEST_CASE("char 2: polar form of Q is the symplectic form") {
  for (std::uint64_t q : {2, 4}) {
    auto V = FormedSpace::standard_hyperbolic(gf(q), 2);
    const auto& F = *V->field();
    const auto all = oracle::all_vectors(F, 4);
    for (const auto& u : all)
      for (const auto& v : all)
        REQUIRE(V->bilinear(u, v) == F.sub(F.sub(V->quadratic(vec_add(F, u, v)), V->quadratic(u)), V->quadratic(v)));
  }
}

TEST_CASE("perp") {
  auto F2 = gf(2);
  auto V = FormedSpace::standard_symplectic(F2, 2);
  CHECK(perp(*V, Subspace::zero(F2, 4)) == Subspace::whole(F2, 4));
  CHECK(perp(*V, span(F2, 4, {unit_vector(4, 0)})) ==
        span(F2, 4, {unit_vector(4, 0), unit_vector(4, 2), unit_vector(4, 3)}));
  std::mt19937_64 rng(5);
  auto F3 = gf(3);
  auto W = FormedSpace::standard_hyperbolic(F3, 3);
  for (int t = 0; t < 40; ++t) {
    std::vector<Vec> rows;
    for (int i = 0; i < 1 + t % 4; ++i) {
      Vec v(6);
      for (auto& x : v) x = rng() % 3;
      rows.push_back(v);
    }
    const auto A = span(F3, 6, rows);
    const auto P = perp(*W, A);
    REQUIRE(P.dim() == 6 - A.dim());
    for (const auto& a : A.rows())
      for (const auto& b : P.rows()) REQUIRE(oracle::bil(*W, a, b) == 0);
    REQUIRE(perp(*W, P) == A);
  }
}

TEST_CASE("t.i. and t.s. predicates") {
  auto F2 = gf(2);
  auto V = FormedSpace::standard_hyperbolic(F2, 1);
  CHECK(is_totally_singular(*V, Subspace::zero(F2, 2)));
  CHECK(is_totally_isotropic(*V, Subspace::zero(F2, 2)));
  CHECK(is_totally_singular(*V, span(F2, 2, {unit_vector(2, 0)})));
  CHECK_FALSE(is_totally_singular(*V, span(F2, 2, {Vec{1, 1}})));
  auto O8 = FormedSpace::standard_hyperbolic(F2, 4);
  for (const auto& W : enumerate_maximal(*O8, Flavor::Orthogonal)) REQUIRE(is_totally_isotropic(*O8, W));
}

TEST_CASE("singular point counts") {
  auto F2 = gf(2);
  CHECK(FormedSpace::standard_hyperbolic(F2, 1)->singular_point_count() == 2);
  auto O8 = FormedSpace::standard_hyperbolic(F2, 4);
  CHECK(O8->singular_point_count() == brute_singular_count(*O8));
  CHECK(O8->singular_point_count() == 135);
  auto P5 = FormedSpace::standard_parabolic(gf(8), 2);
  CHECK(P5->singular_point_count() == brute_singular_count(*P5));
  CHECK(P5->singular_point_count() == 585);
  auto E4 = FormedSpace::standard_elliptic(gf(3), 2);
  CHECK(E4->singular_point_count() == brute_singular_count(*E4));
  CHECK(E4->singular_point_count() == 10);
}

TEST_CASE("types of maximal t.s. subspaces") {
  auto F2 = gf(2);
  {
    auto V = FormedSpace::standard_hyperbolic(F2, 2);
    CHECK(ts_type(*V, V->reference()) == TsType::Same);
    // the two t.s. lines on <e1>
    const auto p = span(F2, 4, {unit_vector(4, 0)});
    std::vector<Subspace> through;
    for (const auto& W : enumerate_maximal(*V, Flavor::Orthogonal))
      if (W.contains(p)) through.push_back(W);
    REQUIRE(through.size() == 2);
    CHECK(ts_type(*V, through[0]) != ts_type(*V, through[1]));
  }
  for (auto [q, n] : std::vector<std::pair<std::uint64_t, int>>{{2, 4}, {3, 4}, {2, 8}}) {
    auto V = FormedSpace::standard_hyperbolic(gf(q), n / 2);
    const auto all = enumerate_maximal(*V, Flavor::Orthogonal);
    std::size_t same = 0;
    for (const auto& W : all) same += ts_type(*V, W) == TsType::Same ? 1 : 0;
    CHECK(same * 2 == all.size());
    for (const auto& A : all)
      for (const auto& B : all)
        REQUIRE((ts_type(*V, A) == ts_type(*V, B)) == (intersection_dim(A, B) % 2 == (n / 2) % 2));
  }
  auto V = FormedSpace::standard_hyperbolic(F2, 2);
  CHECK_THROWS_AS(ts_type(*V, span(F2, 4, {unit_vector(4, 0)})), GeometryError);
}

TEST_CASE("maximal subspace enumeration counts") {
  auto F2 = gf(2);
  auto S4 = FormedSpace::standard_symplectic(F2, 2);
  const auto ti = enumerate_maximal(*S4, Flavor::Symplectic);
  CHECK(ti.size() == 15);
  // brute force: every 2-space of GF(2)^4 that is t.i.
  std::set<Subspace> brute;
  const auto all = oracle::all_vectors(*F2, 4);
  for (const auto& a : all)
    for (const auto& b : all) {
      auto L = span(F2, 4, {a, b});
      if (L.dim() == 2 && oracle::bil(*S4, a, b) == 0) brute.insert(L);
    }
  CHECK(std::set<Subspace>(ti.begin(), ti.end()) == brute);
  CHECK(enumerate_maximal(*FormedSpace::standard_hyperbolic(F2, 4), Flavor::Orthogonal).size() == 270);
  CHECK(enumerate_maximal(*FormedSpace::standard_symplectic(gf(3), 3), Flavor::Symplectic).size() == 1120);
}

TEST_CASE("closed-form maximal subspace counts match enumeration") {
  const std::vector<std::pair<SpacePtr, Flavor>> cases{
      {FormedSpace::standard_symplectic(gf(2), 2), Flavor::Symplectic},
      {FormedSpace::standard_symplectic(gf(3), 2), Flavor::Symplectic},
      {FormedSpace::standard_symplectic(gf(2), 3), Flavor::Symplectic},
      {FormedSpace::standard_hyperbolic(gf(2), 4), Flavor::Orthogonal},
      {FormedSpace::standard_hyperbolic(gf(2), 4), Flavor::Symplectic},
      {FormedSpace::standard_hyperbolic(gf(3), 2), Flavor::Orthogonal},
      {FormedSpace::standard_elliptic(gf(2), 3), Flavor::Orthogonal},
      {FormedSpace::standard_parabolic(gf(3), 2), Flavor::Orthogonal},
      {FormedSpace::standard_parabolic(gf(4), 2), Flavor::Orthogonal},
  };
  for (const auto& [V, flavor] : cases) {
    CAPTURE(V->describe());
    CHECK(maximal_subspace_count(*V, flavor) == enumerate_maximal(*V, flavor).size());
  }
  CHECK(maximal_subspace_count(*FormedSpace::standard_hyperbolic(gf(4), 4), Flavor::Orthogonal) == 11050);
  CHECK(maximal_subspace_count(*FormedSpace::standard_hyperbolic(gf(2), 4), Flavor::Plain) == std::nullopt);
}

TEST_CASE("field descent") {
  auto t = FieldTower::create(2, 2);
  auto F4 = Field::create(t, 2);
  auto V = FormedSpace::standard_hyperbolic(F4, 2);
  Descent D(V, 1);
  CHECK(D.target()->dim() == 8);
  CHECK(D.target()->singular_point_count() == 135);
  CHECK(D.target()->kind() == SpaceKind::OrthogonalPlus);
  const auto lines = enumerate_maximal(*V, Flavor::Orthogonal);
  for (const auto& L : lines) {
    const auto X = D.transport(L);
    REQUIRE(X.dim() == 4);
    REQUIRE(is_totally_singular(*D.target(), X));
  }
  // disjointness survives descent
  for (const auto& A : lines)
    for (const auto& B : lines)
      REQUIRE((intersection_dim(A, B) == 0) == (intersection_dim(D.transport(A), D.transport(B)) == 0));

  const auto M = ovoid_model(4);
  Descent D2(M.space, 1);
  CHECK(D2.target()->dim() == 16);
  CHECK(rank_of(*D2.target()->field(), D2.target()->gram()) == 16);
}

TEST_CASE("projection and lift") {
  auto F2 = gf(2);
  const auto fam = orthogonal_spread(2, 2);
  const FormedSpace& V = *fam.space;
  const Vec z = *Subspace::whole(F2, 8).find_point([&](const Vec& v) { return V.quadratic(v) != 0; });
  Projection P(fam.space, z);
  CHECK(P.quotient()->dim() == 6);
  CHECK(P.quotient()->kind() == SpaceKind::Symplectic);
  std::vector<Subspace> images;
  for (const auto& X : fam.members) {
    const auto Y = P.transport(X);
    REQUIRE(Y.dim() == 3);
    REQUIRE(is_totally_isotropic(*P.quotient(), Y));
    images.push_back(Y);
    // round trip
    REQUIRE(lift_from_z(P, Y, ts_type(V, X)) == X);
  }
  for (std::size_t i = 0; i < images.size(); ++i)
    for (std::size_t j = i + 1; j < images.size(); ++j) REQUIRE(intersection_dim(images[i], images[j]) == 0);

  // lifting the desarguesian Sp(6,2) spread gives 9 disjoint t.s. 4-spaces, pairwise meeting evenly
  const auto desarg = desarguesian_symplectic_spread(2, 3);
  const auto iso = isometry(*desarg.space, *P.quotient());
  std::vector<Subspace> lifts;
  for (const auto& m : desarg.members) lifts.push_back(lift_from_z(P, iso.apply(m), TsType::Same));
  CHECK(lifts.size() == 9);
  for (std::size_t i = 0; i < lifts.size(); ++i) {
    REQUIRE(is_totally_singular(V, lifts[i]));
    for (std::size_t j = i + 1; j < lifts.size(); ++j) REQUIRE(intersection_dim(lifts[i], lifts[j]) == 0);
  }
  // two same-type lifts meet in even dimension
  const auto other = lift_from_z(P, iso.apply(desarg.members[0]), TsType::Same);
  for (const auto& L : lifts) CHECK(intersection_dim(other, L) % 2 == 0);

  CHECK_THROWS(Projection(fam.space, fam.members[0].rows()[0]));
  auto F3 = gf(3);
  auto V3 = FormedSpace::standard_hyperbolic(F3, 2);
  CHECK_THROWS(Projection(V3, Vec{1, 1, 0, 0}));
}

TEST_CASE("Klein correspondence") {
  auto F2 = gf(2);
  auto S = FormedSpace::standard_symplectic(F2, 2);
  auto K = klein_space(F2);
  // <e1, e2> and <f1, f2>
  const auto a = klein_point_of_line(span(F2, 4, {unit_vector(4, 0), unit_vector(4, 2)}));
  const auto b = klein_point_of_line(span(F2, 4, {unit_vector(4, 1), unit_vector(4, 3)}));
  CHECK(K->bilinear(a, b) != 0);
  std::set<Vec> imgs;
  const auto lines = enumerate_maximal(*S, Flavor::Symplectic);
  for (const auto& L : lines) {
    const auto p = klein_point_of_line(L);
    REQUIRE(K->quadratic(p) == 0);
    imgs.insert(p);
  }
  CHECK(imgs.size() == 15);
  CHECK(K->singular_point_count() == 15);
  for (const auto& A : lines)
    for (const auto& B : lines)
      if (A != B)
        REQUIRE((intersection_dim(A, B) > 0) == (K->bilinear(klein_point_of_line(A), klein_point_of_line(B)) == 0));

  const auto desarg = desarguesian_symplectic_spread(3, 2);
  const auto F3 = desarg.space->field();
  auto S3 = FormedSpace::standard_symplectic(F3, 2);
  const auto iso = isometry(*desarg.space, *S3);
  auto K3 = klein_space(F3);
  std::vector<Vec> pts;
  for (const auto& m : desarg.members) pts.push_back(klein_point_of_line(iso.apply(m)));
  CHECK(pts.size() == 10);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    REQUIRE(K3->quadratic(pts[i]) == 0);
    for (std::size_t j = i + 1; j < pts.size(); ++j) REQUIRE(K3->bilinear(pts[i], pts[j]) != 0);
  }
  CHECK_THROWS(klein_point_of_line(span(F2, 4, {unit_vector(4, 0), unit_vector(4, 1)})));
}

TEST_CASE("embedding") {
  auto F8 = gf(8);
  auto P5 = FormedSpace::standard_parabolic(F8, 2);
  auto O8 = FormedSpace::standard_hyperbolic(F8, 4);
  Vec r(8, 0);
  r[4] = r[5] = 1;
  // x0 -> e3 + f3, x1 -> e1, x2 -> f1, x3 -> e2, x4 -> f2
  const auto e = embed(*P5, *O8, {r, unit_vector(8, 0), unit_vector(8, 1), unit_vector(8, 2), unit_vector(8, 3)});
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j)
      REQUIRE(O8->bilinear(e.apply(unit_vector(5, i)), e.apply(unit_vector(5, j))) ==
              P5->bilinear(unit_vector(5, i), unit_vector(5, j)));
  const auto U = e.apply(Subspace::whole(F8, 5));
  // radical of the restricted bilinear form is <e3 + f3>
  std::vector<Vec> rad;
  U.for_each_point([&](const Vec& u) {
    bool all = true;
    for (const auto& w : U.rows()) all = all && O8->bilinear(u, w) == 0;
    if (all) rad.push_back(u);
  });
  CHECK(rad == std::vector<Vec>{r});
  const auto id = embed(*P5, *P5, {unit_vector(5, 0), unit_vector(5, 1), unit_vector(5, 2), unit_vector(5, 3), unit_vector(5, 4)});
  CHECK(id.apply(Vec{1, 2, 3, 4, 5}) == Vec{1, 2, 3, 4, 5});
  CHECK_THROWS(embed(*P5, *O8, {unit_vector(8, 0), unit_vector(8, 1), unit_vector(8, 2), unit_vector(8, 3), unit_vector(8, 4)}));
}

TEST_CASE("GF(2)-subspaces of O+(8,4) with more than 2^6 vectors hold an F-singular vector") {
  auto t = FieldTower::create(2, 2);
  auto F4 = Field::create(t, 2);
  auto V = FormedSpace::standard_hyperbolic(F4, 4);
  Descent D(V, 1);
  const auto& W = *D.target();
  auto F2 = W.field();
  std::mt19937_64 rng(42);
  // F-singular vectors, as GF(2)-vectors of the descended space
  std::set<Vec> fsing;
  for (const auto& p : V->singular_points())
    for (Elem c : F4->elements())
      if (c) fsing.insert(D.map_vector(vec_scale(*F4, c, p)));
  int failures = 0;
  for (int s = 0; s < 300; ++s) {
    std::vector<Vec> rows;
    while (static_cast<int>(rows.size()) < 7) {
      Vec v(16);
      for (auto& x : v) x = rng() & 1;
      rows.push_back(v);
      if (rank_of(*F2, rows) != static_cast<int>(rows.size())) rows.pop_back();
    }
    const auto X = Subspace::span(F2, 16, rows);
    bool hit = false;
    X.for_each_vector([&](const Vec& v) { hit = hit || fsing.count(v) > 0; });
    failures += hit ? 0 : 1;
  }
  CHECK(failures == 0);
}

#include "doctest.h"
#include "maxspread/field.hpp"
#include "oracle.hpp"

using namespace maxspread;

TEST_CASE("arithmetic agrees with schoolbook polynomial multiplication") {
  for (auto [p, d] : std::vector<std::pair<int, int>>{{2, 1}, {2, 4}, {2, 6}, {3, 2}, {5, 2}, {7, 1}, {2, 9}}) {
    auto t = FieldTower::create(p, d);
    oracle::PolyField pf(*t);
    CHECK(t->size() == pf.size());
    const Elem n = t->size();
    const Elem step = n > 128 ? 7 : 1;
    for (Elem a = 0; a < n; a += step)
      for (Elem b = 0; b < n; b += step) {
        REQUIRE(t->mul(a, b) == pf.mul(a, b));
        REQUIRE(t->add(a, b) == pf.add(a, b));
      }
  }
}

TEST_CASE("0 and 1 are indices 0 and 1; polynomial is irreducible") {
  for (auto [p, d] : std::vector<std::pair<int, int>>{{2, 8}, {3, 3}, {5, 2}, {11, 2}, {2, 15}}) {
    auto t = FieldTower::create(p, d);
    CHECK(t->mul(1, 7 % t->size()) == 7 % t->size());
    CHECK(t->add(0, 1) == 1);
    CHECK(FieldTower::is_irreducible(p, t->polynomial()));
  }
  // x^2 + 1 = (x + 1)^2 over GF(2)
  CHECK_FALSE(FieldTower::is_irreducible(2, {1, 0, 1}));
  CHECK_THROWS_AS(FieldTower::from_polynomial(2, {1, 0, 1}, {}), FieldError);
}

TEST_CASE("trace examples") {
  auto f4 = FieldTower::create(2, 2);
  CHECK(f4->trace(0, 2, 1) == 0);
  const Elem g = f4->generator();
  oracle::PolyField pf(*f4);
  CHECK(f4->trace(g, 2, 1) == pf.add(g, pf.mul(g, g)));
  CHECK(f4->trace(g, 2, 1) == 1);
  auto f8 = FieldTower::create(2, 3);
  CHECK(f8->trace(1, 3, 1) == 1);
}

TEST_CASE("norm examples") {
  auto f4 = FieldTower::create(2, 2);
  CHECK(f4->norm(f4->generator(), 2, 1) == 1);
  auto f64 = FieldTower::create(2, 6);
  CHECK(f64->norm(0, 6, 2) == 0);
  CHECK(f64->norm(1, 6, 2) == 1);
  auto f8 = FieldTower::create(2, 3);
  oracle::PolyField pf(*f8);
  const Elem g = f8->generator();
  CHECK(f8->norm(g, 3, 1) == pf.mul(g, pf.mul(pf.pow(g, 2), pf.pow(g, 4))));
  CHECK(f8->norm(g, 3, 1) == 1);
}

TEST_CASE("sqrt in characteristic 2") {
  auto f4 = FieldTower::create(2, 2);
  CHECK(f4->sqrt_char2(0) == 0);
  CHECK(f4->sqrt_char2(1) == 1);
  const Elem g = f4->generator();
  CHECK(f4->sqrt_char2(g) == f4->mul(g, g));
  auto f512 = FieldTower::create(2, 9);
  for (Elem x = 0; x < f512->size(); ++x) REQUIRE(f512->mul(f512->sqrt_char2(x), f512->sqrt_char2(x)) == x);
  CHECK_THROWS_AS(FieldTower::create(3, 2)->sqrt_char2(1), FieldError);
}

TEST_CASE("trace and norm errors") {
  auto t = FieldTower::create(2, 6);
  CHECK_THROWS_AS(t->trace(1, 6, 4), FieldError);
  CHECK_THROWS_AS(t->trace(1, 4, 2), FieldError);
  // an element of GF(64) outside GF(4)
  Elem out = 0;
  for (Elem x = 2; x < t->size(); ++x)
    if (!t->in_subfield(x, 2)) {
      out = x;
      break;
    }
  CHECK_THROWS_AS(t->trace(out, 2, 1), FieldError);
  CHECK_THROWS_AS(t->norm(out, 2, 1), FieldError);
}

TEST_CASE("Frobenius, transitivity, subfield membership of trace and norm") {
  for (auto [p, d] : std::vector<std::pair<int, int>>{{2, 6}, {3, 4}, {2, 9}}) {
    auto t = FieldTower::create(p, d);
    for (Elem x = 0; x < t->size(); ++x) {
      REQUIRE(t->frobenius(x, d) == x);
      for (std::uint32_t mid = 1; mid <= static_cast<std::uint32_t>(d); ++mid) {
        if (d % mid) continue;
        const Elem tr = t->trace(x, d, mid);
        REQUIRE(t->in_subfield(tr, mid));
        REQUIRE(t->in_subfield(t->norm(x, d, mid), mid));
        REQUIRE(t->trace(tr, mid, 1) == t->trace(x, d, 1));
      }
    }
    for (Elem a = 0; a < t->size(); a += 3)
      for (Elem b = 0; b < t->size(); b += 5) {
        REQUIRE(t->frobenius(t->add(a, b), 1) == t->add(t->frobenius(a, 1), t->frobenius(b, 1)));
        REQUIRE(t->frobenius(t->mul(a, b), 1) == t->mul(t->frobenius(a, 1), t->frobenius(b, 1)));
      }
  }
}

TEST_CASE("designated subfields are Frobenius fixed sets") {
  auto t = FieldTower::create(2, 6, {1, 2, 3, 6});
  CHECK(t->designated() == std::vector<std::uint32_t>{1, 2, 3, 6});
  CHECK(t->subfield_elements(2).size() == 4);
  CHECK(t->subfield_elements(3).size() == 8);
  CHECK_THROWS_AS(FieldTower::create(2, 6, {4}), FieldError);
}

namespace {

// every x with T(xE) = 0, by exhaustive scan
std::vector<Elem> theta_solutions(const FieldTower& t, std::uint32_t k, std::uint32_t e, std::uint32_t f) {
  const auto E = t.subfield_elements(e);
  std::vector<Elem> out;
  for (Elem x = 0; x < t.size(); ++x) {
    if (!t.in_subfield(x, f)) continue;
    bool ok = true;
    for (Elem y : E) ok = ok && t.trace(t.mul(x, y), f, k) == 0;
    if (ok) out.push_back(x);
  }
  return out;
}

}  // namespace

TEST_CASE("find_theta") {
  {
    auto t = FieldTower::create(2, 2);
    CHECK(find_theta(*t, 1, 1, 2) == 1);
  }
  {
    auto t = FieldTower::create(3, 2);
    const Elem th = find_theta(*t, 1, 1, 2);
    CHECK(th != 0);
    CHECK(t->trace(th, 2, 1) == 0);
  }
  for (auto [p, k, m] : std::vector<std::tuple<int, int, int>>{{2, 1, 2}, {2, 1, 1}, {3, 1, 1}, {5, 1, 1}, {2, 2, 1}, {2, 1, 3}}) {
    auto t = FieldTower::create(p, 2 * k * m);
    const Elem th = find_theta(*t, k, k * m, 2 * k * m);
    auto sols = theta_solutions(*t, k, k * m, 2 * k * m);
    std::set<Elem> expect;
    for (Elem e : t->subfield_elements(k * m)) expect.insert(t->mul(th, e));
    CHECK(std::set<Elem>(sols.begin(), sols.end()) == expect);
    CHECK(th == *std::find_if(sols.begin(), sols.end(), [](Elem x) { return x != 0; }));
  }
}

TEST_CASE("find_pi") {
  for (std::uint32_t kdeg : {2u, 3u}) {
    auto t = FieldTower::create(2, 3 * kdeg);
    const std::uint64_t q = 1ull << kdeg;
    const Elem pi = find_pi(*t, kdeg);
    CHECK(pi != 0);
    CHECK(t->trace(pi, 3 * kdeg, kdeg) == 0);
    CHECK(t->trace(t->pow(pi, 1 + q), 3 * kdeg, kdeg) != 0);
    // first such element in index order
    for (Elem x = 1; x < pi; ++x)
      CHECK_FALSE((t->trace(x, 3 * kdeg, kdeg) == 0 && t->trace(t->pow(x, 1 + q), 3 * kdeg, kdeg) != 0));
  }
  CHECK_THROWS_AS(find_pi(*FieldTower::create(3, 3), 1), FieldError);
}

TEST_CASE("subfield basis coordinates") {
  auto t = FieldTower::create(2, 6);
  SubfieldBasis b(t, 2, 6);
  CHECK(b.rank() == 3);
  for (Elem x = 0; x < t->size(); ++x) REQUIRE(b.combine(b.coords(x)) == x);
}

TEST_CASE("prime_power") {
  CHECK(prime_power(8) == std::pair<std::uint32_t, std::uint32_t>{2, 3});
  CHECK(prime_power(9) == std::pair<std::uint32_t, std::uint32_t>{3, 2});
  CHECK_THROWS(prime_power(6));
}

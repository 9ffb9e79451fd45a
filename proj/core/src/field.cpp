#include "maxspread/field.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace maxspread {

namespace {

using Poly = std::vector<std::uint32_t>;

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  std::uint64_t r = 1, b = a % p;
  for (std::uint32_t e = p - 2; e; e >>= 1) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
  }
  return static_cast<std::uint32_t>(r);
}

// a mod f over GF(p), f monic.
Poly poly_mod(Poly a, const Poly& f, std::uint32_t p) {
  trim(a);
  const std::size_t df = f.size() - 1;
  while (a.size() > df) {
    const std::uint32_t lead = a.back();
    const std::size_t shift = a.size() - 1 - df;
    for (std::size_t i = 0; i <= df; ++i)
      a[shift + i] = (a[shift + i] + (p - lead) * static_cast<std::uint64_t>(f[i])) % p;
    trim(a);
  }
  return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = static_cast<std::uint32_t>((r[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % p);
  return poly_mod(std::move(r), f, p);
}

Poly poly_gcd(Poly a, Poly b, std::uint32_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    // make b monic, then a mod b
    const std::uint32_t li = inv_mod(b.back(), p);
    for (auto& c : b) c = static_cast<std::uint32_t>(static_cast<std::uint64_t>(c) * li % p);
    Poly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// x^(p^k) mod f by k successive p-th powers
Poly frob_x(const Poly& f, std::uint32_t p, std::uint32_t k) {
  Poly x = poly_mod(Poly{0, 1}, f, p);
  for (std::uint32_t i = 0; i < k; ++i) {
    Poly r{1}, b = x;
    for (std::uint32_t e = p; e; e >>= 1) {
      if (e & 1) r = poly_mulmod(r, b, f, p);
      b = poly_mulmod(b, b, f, p);
    }
    x = r;
  }
  return x;
}

std::vector<std::uint32_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint32_t> out;
  for (std::uint64_t r = 2; r * r <= n; ++r) {
    if (n % r == 0) {
      out.push_back(static_cast<std::uint32_t>(r));
      while (n % r == 0) n /= r;
    }
  }
  if (n > 1) out.push_back(static_cast<std::uint32_t>(n));
  return out;
}

std::uint64_t ipow(std::uint64_t b, std::uint32_t e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

std::uint64_t mulmod64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod64(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  for (; e; e >>= 1) {
    if (e & 1) r = mulmod64(r, b, m);
    b = mulmod64(b, b, m);
  }
  return r;
}

Poly digits(Elem x, std::uint32_t p, std::uint32_t d) {
  Poly r(d);
  for (std::uint32_t i = 0; i < d; ++i) {
    r[i] = x % p;
    x /= p;
  }
  return r;
}

Elem undigits(const Poly& a, std::uint32_t p) {
  Elem x = 0;
  for (std::size_t i = a.size(); i-- > 0;) x = x * p + a[i];
  return x;
}

// Fixed polynomial table, coefficients low to high.
const std::map<std::pair<std::uint32_t, std::uint32_t>, Poly>& polynomial_table() {
  static const std::map<std::pair<std::uint32_t, std::uint32_t>, Poly> table = {
      {{2, 1}, {1, 1}},
      {{2, 2}, {1, 1, 1}},
      {{2, 3}, {1, 1, 0, 1}},
      {{2, 4}, {1, 1, 0, 0, 1}},
      {{2, 5}, {1, 0, 1, 0, 0, 1}},
      {{2, 6}, {1, 1, 0, 1, 1, 0, 1}},
      {{2, 7}, {1, 1, 0, 0, 0, 0, 0, 1}},
      {{2, 8}, {1, 0, 1, 1, 1, 0, 0, 0, 1}},
      {{2, 9}, {1, 0, 0, 0, 1, 0, 0, 0, 0, 1}},
      {{2, 10}, {1, 1, 1, 1, 0, 1, 1, 0, 0, 0, 1}},
      {{2, 11}, {1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1}},
      {{2, 12}, {1, 1, 0, 1, 0, 1, 1, 1, 0, 0, 0, 0, 1}},
      {{2, 13}, {1, 1, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1}},
      {{2, 14}, {1, 0, 0, 1, 0, 1, 0, 1, 0, 0, 0, 0, 0, 0, 1}},
      {{2, 15}, {1, 0, 1, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1}},
      {{2, 16}, {1, 0, 1, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1}},
      {{3, 1}, {1, 1}},
      {{3, 2}, {2, 2, 1}},
      {{3, 3}, {1, 2, 0, 1}},
      {{3, 4}, {2, 0, 0, 2, 1}},
      {{3, 5}, {1, 2, 0, 0, 0, 1}},
      {{3, 6}, {2, 2, 1, 0, 2, 0, 1}},
      {{5, 1}, {3, 1}},
      {{5, 2}, {2, 4, 1}},
      {{5, 3}, {3, 3, 0, 1}},
      {{5, 4}, {2, 4, 4, 0, 1}},
      {{7, 1}, {4, 1}},
      {{7, 2}, {3, 6, 1}},
      {{7, 3}, {4, 0, 6, 1}},
      {{11, 1}, {9, 1}},
      {{11, 2}, {2, 7, 1}},
      {{13, 1}, {11, 1}},
      {{13, 2}, {2, 12, 1}},
  };
  return table;
}

constexpr std::uint32_t kMaxFieldSize = 1u << 16;

}  // namespace

std::vector<std::uint32_t> FieldTower::default_polynomial(std::uint32_t p, std::uint32_t d) {
  const auto& table = polynomial_table();
  auto it = table.find({p, d});
  if (it == table.end()) {
    std::ostringstream os;
    os << "no polynomial on file for GF(" << p << "^" << d << ")";
    throw FieldError(os.str());
  }
  return it->second;
}

bool FieldTower::is_irreducible(std::uint32_t p, const std::vector<std::uint32_t>& poly) {
  if (poly.size() < 2 || poly.back() != 1) return false;
  const auto d = static_cast<std::uint32_t>(poly.size() - 1);
  if (d == 1) return true;
  // Rabin: x^(p^d) = x mod f and gcd(x^(p^(d/r)) - x, f) = 1 for primes r | d.
  Poly x = poly_mod(Poly{0, 1}, poly, p);
  if (frob_x(poly, p, d) != x) return false;
  for (std::uint32_t r : prime_factors(d)) {
    Poly g = frob_x(poly, p, d / r);
    g.resize(std::max<std::size_t>(g.size(), 2), 0);
    g[1] = (g[1] + p - 1) % p;
    trim(g);
    if (g.empty()) return false;
    if (poly_gcd(poly, g, p).size() != 1) return false;
  }
  return true;
}

std::shared_ptr<const FieldTower> FieldTower::create(std::uint32_t p, std::uint32_t d,
                                                     std::vector<std::uint32_t> designated) {
  return from_polynomial(p, default_polynomial(p, d), std::move(designated));
}

std::shared_ptr<const FieldTower> FieldTower::from_polynomial(std::uint32_t p, std::vector<std::uint32_t> poly,
                                                              std::vector<std::uint32_t> designated) {
  if (prime_factors(p).size() != 1 || prime_factors(p)[0] != p) throw FieldError("characteristic must be prime");
  if (!is_irreducible(p, poly)) throw FieldError("polynomial is not monic irreducible");
  const auto d = static_cast<std::uint32_t>(poly.size() - 1);
  const std::uint64_t n = ipow(p, d);
  if (n > kMaxFieldSize) throw FieldError("field larger than 2^16 elements");

  std::shared_ptr<FieldTower> t(new FieldTower());
  t->p_ = p;
  t->d_ = d;
  t->n_ = static_cast<std::uint32_t>(n);
  t->poly_ = std::move(poly);
  if (designated.empty()) designated = {1, d};
  std::sort(designated.begin(), designated.end());
  designated.erase(std::unique(designated.begin(), designated.end()), designated.end());
  for (auto e : designated)
    if (e == 0 || d % e != 0) throw FieldError("designated subfield degree must divide the field degree");
  t->designated_ = std::move(designated);

  // slow multiplication, only used to find a generator and fill the tables
  auto slow_mul = [&](Elem a, Elem b) {
    if (d == 1) return static_cast<Elem>(static_cast<std::uint64_t>(a) * b % p);
    return undigits(poly_mulmod(digits(a, p, d), digits(b, p, d), t->poly_, p), p);
  };
  auto slow_pow = [&](Elem a, std::uint64_t e) {
    Elem r = 1;
    for (; e; e >>= 1) {
      if (e & 1) r = slow_mul(r, a);
      a = slow_mul(a, a);
    }
    return r;
  };
  const std::uint64_t order = n - 1;
  const auto factors = prime_factors(order);
  Elem g = 0;
  for (Elem c = (n == 2 ? 1 : 2); c < n; ++c) {
    bool primitive = true;
    for (auto r : factors)
      if (slow_pow(c, order / r) == 1) {
        primitive = false;
        break;
      }
    if (primitive) {
      g = c;
      break;
    }
  }
  if (g == 0) throw FieldError("no primitive element found");

  t->exp_.assign(2 * order, 0);
  t->log_.assign(n, 0);
  Elem x = 1;
  for (std::uint64_t k = 0; k < order; ++k) {
    t->exp_[k] = x;
    t->exp_[k + order] = x;
    t->log_[x] = static_cast<std::uint32_t>(k);
    x = slow_mul(x, g);
  }
  if (x != 1) throw FieldError("generator order mismatch");

  if (p != 2) {
    t->neg_table_.resize(n);
    for (Elem a = 0; a < n; ++a) {
      Poly da = digits(a, p, d);
      for (auto& c : da) c = (p - c) % p;
      t->neg_table_[a] = undigits(da, p);
    }
    if (n <= 2048) {
      t->add_table_.resize(static_cast<std::size_t>(n) * n);
      for (Elem a = 0; a < n; ++a)
        for (Elem b = 0; b < n; ++b) t->add_table_[static_cast<std::size_t>(a) * n + b] = t->add_digits(a, b);
    }
  }
  return t;
}

Elem FieldTower::add_digits(Elem a, Elem b) const {
  Elem r = 0, scale = 1;
  for (std::uint32_t i = 0; i < d_; ++i) {
    r += ((a % p_ + b % p_) % p_) * scale;
    a /= p_;
    b /= p_;
    scale *= p_;
  }
  return r;
}

Elem FieldTower::inv(Elem a) const {
  if (a == 0) throw FieldError("inverse of zero");
  const std::uint32_t l = log_[a];
  return exp_[l == 0 ? 0 : (n_ - 1) - l];
}

Elem FieldTower::pow(Elem a, std::uint64_t e) const {
  if (e == 0) return 1;
  if (a == 0) return 0;
  return exp_[mulmod64(log_[a], e % (n_ - 1), n_ - 1)];
}

Elem FieldTower::frobenius(Elem x, std::uint32_t j) const {
  if (x == 0) return 0;
  const std::uint64_t e = powmod64(p_, j, n_ - 1);
  return exp_[mulmod64(log_[x], e, n_ - 1)];
}

std::uint32_t FieldTower::log(Elem a) const {
  if (a == 0) throw FieldError("log of zero");
  return log_[a];
}

void FieldTower::check_degree(std::uint32_t deg) const {
  if (deg == 0 || d_ % deg != 0) throw FieldError("subfield degree does not divide the field degree");
}

bool FieldTower::in_subfield(Elem x, std::uint32_t deg) const {
  check_degree(deg);
  return frobenius(x, deg) == x;
}

std::vector<Elem> FieldTower::subfield_elements(std::uint32_t deg) const {
  check_degree(deg);
  std::vector<Elem> out;
  for (Elem x = 0; x < n_; ++x)
    if (frobenius(x, deg) == x) out.push_back(x);
  return out;
}

Elem FieldTower::subfield_generator(std::uint32_t deg) const {
  check_degree(deg);
  const std::uint64_t sub = ipow(p_, deg) - 1;
  return exp_[(n_ - 1) / sub];
}

Elem FieldTower::trace(Elem x, std::uint32_t from, std::uint32_t to) const {
  check_degree(from);
  check_degree(to);
  if (from % to != 0) throw FieldError("trace: target degree must divide source degree");
  if (!in_subfield(x, from)) throw FieldError("trace: element outside the source subfield");
  Elem s = 0;
  for (std::uint32_t i = 0; i < from / to; ++i) s = add(s, frobenius(x, to * i));
  return s;
}

Elem FieldTower::norm(Elem x, std::uint32_t from, std::uint32_t to) const {
  check_degree(from);
  check_degree(to);
  if (from % to != 0) throw FieldError("norm: target degree must divide source degree");
  if (!in_subfield(x, from)) throw FieldError("norm: element outside the source subfield");
  Elem r = 1;
  for (std::uint32_t i = 0; i < from / to; ++i) r = mul(r, frobenius(x, to * i));
  return r;
}

Elem FieldTower::sqrt_char2(Elem x) const {
  if (p_ != 2) throw FieldError("sqrt_char2 needs characteristic 2");
  return frobenius(x, d_ - 1);
}

std::string FieldTower::describe() const {
  std::ostringstream os;
  os << "GF(" << p_ << "^" << d_ << ") poly=[";
  for (std::size_t i = 0; i < poly_.size(); ++i) os << (i ? "," : "") << poly_[i];
  os << "] degrees=[";
  for (std::size_t i = 0; i < designated_.size(); ++i) os << (i ? "," : "") << designated_[i];
  os << "]";
  return os.str();
}

std::shared_ptr<const Field> Field::create(TowerPtr tower, std::uint32_t degree) {
  if (!tower) throw FieldError("null tower");
  std::shared_ptr<Field> f(new Field());
  f->elements_ = tower->subfield_elements(degree);
  f->position_.assign(tower->size(), -1);
  for (std::size_t i = 0; i < f->elements_.size(); ++i) f->position_[f->elements_[i]] = static_cast<int>(i);
  f->tower_ = std::move(tower);
  f->degree_ = degree;
  return f;
}

std::pair<std::uint32_t, std::uint32_t> prime_power(std::uint64_t q) {
  if (q < 2) throw FieldError("field order must be at least 2");
  auto f = prime_factors(q);
  if (f.size() != 1) throw FieldError("field order " + std::to_string(q) + " is not a prime power");
  std::uint32_t e = 0;
  for (std::uint64_t r = q; r > 1; r /= f[0]) ++e;
  return {f[0], e};
}

SubfieldBasis::SubfieldBasis(TowerPtr tower, std::uint32_t small_deg, std::uint32_t big_deg)
    : tower_(std::move(tower)), small_(small_deg), big_(big_deg) {
  const auto& t = *tower_;
  if (small_ == 0 || big_ % small_ != 0 || t.degree() % big_ != 0)
    throw FieldError("subfield basis: degrees must nest");
  const Elem b = t.subfield_generator(big_);
  const std::uint32_t r = big_ / small_;
  Elem pw = 1;
  for (std::uint32_t i = 0; i < r; ++i) {
    basis_.push_back(pw);
    pw = t.mul(pw, b);
  }
  const auto scalars = t.subfield_elements(small_);
  coords_.assign(t.size(), {});
  std::vector<std::size_t> ctr(r, 0);
  for (;;) {
    std::vector<Elem> c(r);
    Elem x = 0;
    for (std::uint32_t i = 0; i < r; ++i) {
      c[i] = scalars[ctr[i]];
      x = t.add(x, t.mul(c[i], basis_[i]));
    }
    if (!coords_[x].empty()) throw FieldError("subfield basis: powers of the generator are dependent");
    coords_[x] = std::move(c);
    std::size_t i = 0;
    while (i < r && ++ctr[i] == scalars.size()) ctr[i++] = 0;
    if (i == r) break;
  }
}

const std::vector<Elem>& SubfieldBasis::coords(Elem x) const {
  if (x >= coords_.size() || coords_[x].empty()) throw FieldError("subfield basis: element outside the subfield");
  return coords_[x];
}

Elem SubfieldBasis::combine(const std::vector<Elem>& c) const {
  if (c.size() != basis_.size()) throw FieldError("subfield basis: wrong coordinate count");
  Elem x = 0;
  for (std::size_t i = 0; i < c.size(); ++i) x = tower_->add(x, tower_->mul(c[i], basis_[i]));
  return x;
}

Elem find_theta(const FieldTower& t, std::uint32_t kdeg, std::uint32_t edeg, std::uint32_t fdeg) {
  if (edeg % kdeg != 0 || fdeg != 2 * edeg) throw FieldError("find_theta: need K <= E <= F with [F:E] = 2");
  std::vector<Elem> ebasis;
  {
    const Elem b = t.subfield_generator(edeg);
    Elem pw = 1;
    for (std::uint32_t i = 0; i < edeg / kdeg; ++i) {
      ebasis.push_back(pw);
      pw = t.mul(pw, b);
    }
  }
  for (Elem x = 1; x < t.size(); ++x) {
    if (!t.in_subfield(x, fdeg)) continue;
    bool ok = true;
    for (Elem e : ebasis)
      if (t.trace(t.mul(x, e), fdeg, kdeg) != 0) {
        ok = false;
        break;
      }
    if (ok) return x;
  }
  throw FieldError("find_theta: no element found");
}

Elem find_pi(const FieldTower& t, std::uint32_t kdeg) {
  if (t.characteristic() != 2) throw FieldError("find_pi needs even q");
  const std::uint32_t fdeg = 3 * kdeg;
  if (t.degree() % fdeg != 0) throw FieldError("find_pi: tower lacks GF(q^3)");
  const std::uint64_t q = ipow(2, kdeg);
  const auto K = t.subfield_elements(kdeg);
  for (Elem x = 1; x < t.size(); ++x) {
    if (!t.in_subfield(x, fdeg)) continue;
    if (t.trace(x, fdeg, kdeg) != 0) continue;
    if (t.trace(t.pow(x, 1 + q), fdeg, kdeg) == 0) continue;
    // pi^q must lie outside K + K pi
    const Elem xq = t.frobenius(x, kdeg);
    for (Elem a : K)
      for (Elem b : K)
        if (t.add(a, t.mul(b, x)) == xq) throw FieldError("find_pi: pi^q lies in K + K pi");
    return x;
  }
  throw FieldError("find_pi: no element found");
}

}  // namespace maxspread

#pragma once

// Reference implementations used as test oracles. PolyField is fully
// independent; the vector helpers use only field add/mul, which PolyField
// checks, and never the library's elimination or form code.

#include <cstdint>
#include <set>
#include <vector>

#include "maxspread/families.hpp"

namespace oracle {

using maxspread::Elem;
using maxspread::Vec;

// GF(p^d) by schoolbook polynomial arithmetic modulo the tower's polynomial.
class PolyField {
 public:
  explicit PolyField(const maxspread::FieldTower& t) : p_(t.characteristic()), d_(t.degree()), poly_(t.polynomial()) {}

  std::vector<std::uint32_t> digits(Elem x) const {
    std::vector<std::uint32_t> r(d_);
    for (std::uint32_t i = 0; i < d_; ++i) {
      r[i] = x % p_;
      x /= p_;
    }
    return r;
  }
  Elem undigits(const std::vector<std::uint32_t>& r) const {
    Elem x = 0;
    for (std::uint32_t i = d_; i-- > 0;) x = x * p_ + r[i];
    return x;
  }
  Elem add(Elem a, Elem b) const {
    auto x = digits(a), y = digits(b);
    for (std::uint32_t i = 0; i < d_; ++i) x[i] = (x[i] + y[i]) % p_;
    return undigits(x);
  }
  Elem mul(Elem a, Elem b) const {
    auto x = digits(a), y = digits(b);
    std::vector<std::uint32_t> prod(2 * d_, 0);
    for (std::uint32_t i = 0; i < d_; ++i)
      for (std::uint32_t j = 0; j < d_; ++j) prod[i + j] = (prod[i + j] + x[i] * y[j]) % p_;
    // reduce with the monic polynomial: x^d = -(c_0 + ... + c_{d-1} x^{d-1})
    for (std::uint32_t k = 2 * d_ - 1; k >= d_; --k) {
      const std::uint32_t c = prod[k];
      if (c == 0) continue;
      prod[k] = 0;
      for (std::uint32_t i = 0; i < d_; ++i)
        prod[k - d_ + i] = (prod[k - d_ + i] + (p_ - poly_[i] % p_) * c) % p_;
    }
    prod.resize(d_);
    return undigits(prod);
  }
  Elem pow(Elem a, std::uint64_t e) const {
    Elem r = 1;
    while (e--) r = mul(r, a);
    return r;
  }
  std::uint32_t size() const {
    std::uint32_t n = 1;
    for (std::uint32_t i = 0; i < d_; ++i) n *= p_;
    return n;
  }

 private:
  std::uint32_t p_, d_;
  std::vector<std::uint32_t> poly_;
};

// All vectors of F^n in lexicographic order.
inline std::vector<Vec> all_vectors(const maxspread::Field& F, int n) {
  std::vector<Vec> out{Vec(static_cast<std::size_t>(n), 0)};
  for (int i = 0; i < n; ++i) {
    std::vector<Vec> next;
    for (const auto& v : out)
      for (Elem e : F.elements()) {
        Vec w = v;
        w[static_cast<std::size_t>(i)] = e;
        next.push_back(w);
      }
    out = std::move(next);
  }
  return out;
}

inline bool zero(const Vec& v) {
  for (Elem x : v)
    if (x) return false;
  return true;
}

// Q(v) straight from the upper-triangular coefficient matrix.
inline Elem quad(const maxspread::FormedSpace& V, const Vec& v) {
  const auto& F = *V.field();
  const auto& c = V.quadratic_matrix();
  Elem s = 0;
  for (int i = 0; i < V.dim(); ++i)
    for (int j = i; j < V.dim(); ++j) s = F.add(s, F.mul(c[i][j], F.mul(v[i], v[j])));
  return s;
}

inline Elem bil(const maxspread::FormedSpace& V, const Vec& u, const Vec& v) {
  const auto& F = *V.field();
  Elem s = 0;
  for (int i = 0; i < V.dim(); ++i)
    for (int j = 0; j < V.dim(); ++j) s = F.add(s, F.mul(u[i], F.mul(V.gram()[i][j], v[j])));
  return s;
}

// The vector set of a subspace, by expanding all linear combinations.
inline std::set<Vec> vectors_of(const maxspread::Subspace& S) {
  const auto& F = *S.field();
  std::set<Vec> out;
  std::vector<Vec> combos = all_vectors(F, S.dim());
  for (const auto& c : combos) {
    Vec v(static_cast<std::size_t>(S.ambient()), 0);
    for (int i = 0; i < S.dim(); ++i)
      for (int j = 0; j < S.ambient(); ++j) v[j] = F.add(v[j], F.mul(c[i], S.rows()[i][j]));
    out.insert(v);
  }
  return out;
}

inline int dim_from_size(std::size_t size, std::uint32_t q) {
  int d = 0;
  while (size > 1) {
    size /= q;
    ++d;
  }
  return d;
}

}  // namespace oracle

#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace maxspread {

using Elem = std::uint32_t;

class FieldError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// GF(p^d) with elements as integer indices 0..p^d-1. The index of an
// element is its polynomial-basis coordinate vector read in base p, so
// 0 and 1 are the field's zero and one. Subfields are the Frobenius
// fixed sets; a tower only records which subfield degrees a
// construction cares about.
class FieldTower {
 public:
  static std::shared_ptr<const FieldTower> create(std::uint32_t p, std::uint32_t d,
                                                  std::vector<std::uint32_t> designated = {});
  static std::shared_ptr<const FieldTower> from_polynomial(std::uint32_t p,
                                                           std::vector<std::uint32_t> poly,
                                                           std::vector<std::uint32_t> designated);

  // Fixed irreducible polynomial for GF(p^d), coefficients low to high.
  static std::vector<std::uint32_t> default_polynomial(std::uint32_t p, std::uint32_t d);
  static bool is_irreducible(std::uint32_t p, const std::vector<std::uint32_t>& poly);

  std::uint32_t characteristic() const { return p_; }
  std::uint32_t degree() const { return d_; }
  std::uint32_t size() const { return n_; }
  const std::vector<std::uint32_t>& polynomial() const { return poly_; }
  const std::vector<std::uint32_t>& designated() const { return designated_; }
  bool operator==(const FieldTower& o) const {
    return p_ == o.p_ && poly_ == o.poly_ && designated_ == o.designated_;
  }

  Elem add(Elem a, Elem b) const {
    if (p_ == 2) return a ^ b;
    if (!add_table_.empty()) return add_table_[static_cast<std::size_t>(a) * n_ + b];
    return add_digits(a, b);
  }
  Elem neg(Elem a) const { return p_ == 2 ? a : neg_table_[a]; }
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem mul(Elem a, Elem b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t e) const;
  // x^(p^j)
  Elem frobenius(Elem x, std::uint32_t j) const;

  Elem generator() const { return exp_[1]; }
  std::uint32_t log(Elem a) const;
  Elem exp(std::uint64_t k) const { return exp_[k % (n_ - 1)]; }

  bool in_subfield(Elem x, std::uint32_t deg) const;
  std::vector<Elem> subfield_elements(std::uint32_t deg) const;
  // Generator of the multiplicative group of the degree-deg subfield.
  Elem subfield_generator(std::uint32_t deg) const;

  Elem trace(Elem x, std::uint32_t from, std::uint32_t to) const;
  Elem norm(Elem x, std::uint32_t from, std::uint32_t to) const;
  Elem sqrt_char2(Elem x) const;

  std::string describe() const;

 private:
  FieldTower() = default;
  Elem add_digits(Elem a, Elem b) const;
  void check_degree(std::uint32_t deg) const;

  std::uint32_t p_ = 0, d_ = 0, n_ = 0;
  std::vector<std::uint32_t> poly_;
  std::vector<std::uint32_t> designated_;
  std::vector<Elem> exp_;             // doubled length, no reduction needed in mul
  std::vector<std::uint32_t> log_;
  std::vector<Elem> add_table_;
  std::vector<Elem> neg_table_;
};

using TowerPtr = std::shared_ptr<const FieldTower>;

// A subfield of a tower viewed as the scalar field of a vector space.
// Elements stay top-field indices; position() ranks them by index.
class Field {
 public:
  static std::shared_ptr<const Field> create(TowerPtr tower, std::uint32_t degree);

  const FieldTower& tower() const { return *tower_; }
  const TowerPtr& tower_ptr() const { return tower_; }
  std::uint32_t degree() const { return degree_; }
  std::uint32_t order() const { return static_cast<std::uint32_t>(elements_.size()); }
  std::uint32_t characteristic() const { return tower_->characteristic(); }
  const std::vector<Elem>& elements() const { return elements_; }
  int position(Elem x) const { return position_[x]; }
  bool contains(Elem x) const { return x < position_.size() && position_[x] >= 0; }
  bool same_as(const Field& o) const {
    return degree_ == o.degree_ && (tower_ == o.tower_ || *tower_ == *o.tower_);
  }

  Elem add(Elem a, Elem b) const { return tower_->add(a, b); }
  Elem sub(Elem a, Elem b) const { return tower_->sub(a, b); }
  Elem neg(Elem a) const { return tower_->neg(a); }
  Elem mul(Elem a, Elem b) const { return tower_->mul(a, b); }
  Elem inv(Elem a) const { return tower_->inv(a); }
  Elem div(Elem a, Elem b) const { return tower_->div(a, b); }

 private:
  Field() = default;
  TowerPtr tower_;
  std::uint32_t degree_ = 0;
  std::vector<Elem> elements_;
  std::vector<int> position_;
};

using FieldPtr = std::shared_ptr<const Field>;

// q = p^e, or FieldError if q is not a prime power.
std::pair<std::uint32_t, std::uint32_t> prime_power(std::uint64_t q);

// Coordinates of elements of the degree-big subfield over the degree-small
// subfield, in the basis 1, b, b^2, ... of powers of the big subfield's
// generator b.
class SubfieldBasis {
 public:
  SubfieldBasis(TowerPtr tower, std::uint32_t small_deg, std::uint32_t big_deg);
  std::uint32_t rank() const { return static_cast<std::uint32_t>(basis_.size()); }
  const std::vector<Elem>& basis() const { return basis_; }
  const std::vector<Elem>& coords(Elem x) const;
  Elem combine(const std::vector<Elem>& c) const;

 private:
  TowerPtr tower_;
  std::uint32_t small_, big_;
  std::vector<Elem> basis_;
  std::vector<std::vector<Elem>> coords_;
};

// First nonzero theta (index order) in the degree-f subfield with
// T_{f->k}(theta e) = 0 for every e in the degree-e subfield, f = 2e.
Elem find_theta(const FieldTower& t, std::uint32_t kdeg, std::uint32_t edeg, std::uint32_t fdeg);

// q even, F the degree-3k subfield: first pi with T(pi) = 0 and
// T(pi^(1+q)) != 0, traces taken F -> K.
Elem find_pi(const FieldTower& t, std::uint32_t kdeg);

}  // namespace maxspread

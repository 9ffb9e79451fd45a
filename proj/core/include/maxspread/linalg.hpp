#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "maxspread/field.hpp"

namespace maxspread {

using Vec = std::vector<Elem>;

class LinalgError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

bool is_zero(const Vec& v);
Vec vec_add(const Field& F, const Vec& a, const Vec& b);
Vec vec_sub(const Field& F, const Vec& a, const Vec& b);
Vec vec_scale(const Field& F, Elem c, const Vec& a);
// a += c * b
void vec_axpy(const Field& F, Vec& a, Elem c, const Vec& b);
Elem vec_dot(const Field& F, const Vec& a, const Vec& b);
// Scale so the first nonzero entry is 1.
Vec normalized(const Field& F, Vec v);
Vec unit_vector(int n, int i);

// Vectors of F^n indexed in base q, coordinate 0 most significant. This is
// also the lexicographic order used whenever a "first" point is needed.
std::uint64_t vector_index(const Field& F, const Vec& v);
Vec vector_at(const Field& F, std::uint64_t index, int n);
// Canonical points of F^n in increasing index order; stops early when fn
// returns false.
void for_each_point_of(const Field& F, int n, const std::function<bool(const Vec&)>& fn);
std::uint64_t vector_count(const Field& F, int n);
std::uint64_t point_count(const Field& F, int dim);

// In-place reduced row echelon form; zero rows are dropped. Returns the
// pivot columns.
std::vector<int> rref(const Field& F, std::vector<Vec>& rows);
int rank_of(const Field& F, std::vector<Vec> rows);

// Packed GF(2) vectors (ambient dimension <= 64).
std::uint64_t pack_gf2(const Vec& v);
Vec unpack_gf2(std::uint64_t bits, int n);
int rank_gf2(std::vector<std::uint64_t> rows);

// A subspace in canonical form: its RREF matrix. Two subspaces are equal
// exactly when the matrices are equal.
class Subspace {
 public:
  Subspace() = default;
  static Subspace span(FieldPtr F, int ambient, std::vector<Vec> vectors);
  static Subspace zero(FieldPtr F, int ambient);
  static Subspace whole(FieldPtr F, int ambient);

  int dim() const { return static_cast<int>(rows_.size()); }
  int ambient() const { return ambient_; }
  const FieldPtr& field() const { return field_; }
  const std::vector<Vec>& rows() const { return rows_; }
  const std::vector<int>& pivots() const { return pivots_; }

  bool operator==(const Subspace& o) const { return ambient_ == o.ambient_ && rows_ == o.rows_; }
  bool operator!=(const Subspace& o) const { return !(*this == o); }
  bool operator<(const Subspace& o) const;
  std::size_t hash() const;

  bool contains(const Vec& v) const;
  bool contains(const Subspace& o) const;
  // v with the pivot columns cleared by row operations; zero iff v is inside.
  Vec reduce(Vec v) const;
  // Coefficients of v in terms of rows(), or nullopt.
  std::optional<Vec> coords(const Vec& v) const;
  Vec combine(const Vec& coeffs) const;

  // Canonical point representatives, sorted by vector index.
  std::vector<Vec> points() const;
  void for_each_point(const std::function<void(const Vec&)>& fn) const;
  void for_each_vector(const std::function<void(const Vec&)>& fn) const;
  // First point (in for_each_point order) satisfying pred.
  std::optional<Vec> find_point(const std::function<bool(const Vec&)>& pred) const;

 private:
  FieldPtr field_;
  int ambient_ = 0;
  std::vector<Vec> rows_;
  std::vector<int> pivots_;
};

struct SubspaceHash {
  std::size_t operator()(const Subspace& s) const { return s.hash(); }
};

Subspace subspace_sum(const Subspace& a, const Subspace& b);
Subspace subspace_intersect(const Subspace& a, const Subspace& b);
int intersection_dim(const Subspace& a, const Subspace& b);
// Solutions x of <r, x> = 0 for every row r (plain dot product).
Subspace nullspace(FieldPtr F, int ambient, const std::vector<Vec>& rows);

// Coordinates of v modulo `kernel` with respect to `complement`, where
// kernel + span(complement) contains v and the union is independent.
class QuotientCoords {
 public:
  QuotientCoords(FieldPtr F, const Subspace& kernel, std::vector<Vec> complement);
  std::optional<Vec> of(const Vec& v) const;
  int dim() const { return static_cast<int>(complement_.size()); }
  const std::vector<Vec>& complement() const { return complement_; }

 private:
  FieldPtr field_;
  int k_ = 0;
  std::vector<Vec> complement_;
  std::vector<Vec> reduced_;  // RREF of [basis | I]
  std::vector<int> pivots_;
};

// n x n matrices as row lists; used for linear maps given by the images
// of the standard basis vectors.
class LinearMap {
 public:
  LinearMap() = default;
  LinearMap(FieldPtr F, int from, int to, std::vector<Vec> images);
  static LinearMap from_bases(FieldPtr F, const std::vector<Vec>& src, const std::vector<Vec>& dst);
  Vec apply(const Vec& v) const;
  Subspace apply(const Subspace& s) const;
  LinearMap inverse() const;
  LinearMap compose(const LinearMap& inner) const;  // this after inner
  int from_dim() const { return from_; }
  int to_dim() const { return to_; }
  const std::vector<Vec>& images() const { return images_; }

 private:
  FieldPtr field_;
  int from_ = 0, to_ = 0;
  std::vector<Vec> images_;
};

}  // namespace maxspread

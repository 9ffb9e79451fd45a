#include "maxspread/linalg.hpp"

#include <algorithm>

namespace maxspread {

bool is_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](Elem x) { return x == 0; });
}

Vec vec_add(const Field& F, const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = F.add(a[i], b[i]);
  return r;
}

Vec vec_sub(const Field& F, const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = F.sub(a[i], b[i]);
  return r;
}

Vec vec_scale(const Field& F, Elem c, const Vec& a) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = F.mul(c, a[i]);
  return r;
}

void vec_axpy(const Field& F, Vec& a, Elem c, const Vec& b) {
  if (c == 0) return;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (b[i]) a[i] = F.add(a[i], F.mul(c, b[i]));
}

Elem vec_dot(const Field& F, const Vec& a, const Vec& b) {
  Elem s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] && b[i]) s = F.add(s, F.mul(a[i], b[i]));
  return s;
}

Vec normalized(const Field& F, Vec v) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    if (v[i] != 1) {
      const Elem c = F.inv(v[i]);
      for (std::size_t j = i; j < v.size(); ++j) v[j] = F.mul(c, v[j]);
    }
    break;
  }
  return v;
}

Vec unit_vector(int n, int i) {
  Vec v(static_cast<std::size_t>(n), 0);
  v[static_cast<std::size_t>(i)] = 1;
  return v;
}

std::uint64_t vector_index(const Field& F, const Vec& v) {
  const std::uint64_t q = F.order();
  std::uint64_t idx = 0;
  for (Elem x : v) idx = idx * q + static_cast<std::uint64_t>(F.position(x));
  return idx;
}

Vec vector_at(const Field& F, std::uint64_t index, int n) {
  const std::uint64_t q = F.order();
  Vec v(static_cast<std::size_t>(n));
  for (int i = n - 1; i >= 0; --i) {
    v[static_cast<std::size_t>(i)] = F.elements()[index % q];
    index /= q;
  }
  return v;
}

void for_each_point_of(const Field& F, int n, const std::function<bool(const Vec&)>& fn) {
  const auto& el = F.elements();
  const std::size_t q = el.size();
  // leading coordinate from the back: (0,..,0,1) has the smallest index
  for (int lead = n - 1; lead >= 0; --lead) {
    Vec v(static_cast<std::size_t>(n), 0);
    v[static_cast<std::size_t>(lead)] = 1;
    std::vector<std::size_t> ctr(static_cast<std::size_t>(n), 0);
    for (;;) {
      if (!fn(v)) return;
      int i = n - 1;
      while (i > lead) {
        auto& c = ctr[static_cast<std::size_t>(i)];
        if (++c < q) {
          v[static_cast<std::size_t>(i)] = el[c];
          break;
        }
        c = 0;
        v[static_cast<std::size_t>(i)] = el[0];
        --i;
      }
      if (i == lead) break;
    }
  }
}

std::uint64_t vector_count(const Field& F, int n) {
  std::uint64_t r = 1;
  for (int i = 0; i < n; ++i) r *= F.order();
  return r;
}

std::uint64_t point_count(const Field& F, int dim) {
  return (vector_count(F, dim) - 1) / (F.order() - 1);
}

std::vector<int> rref(const Field& F, std::vector<Vec>& rows) {
  std::vector<int> pivots;
  if (rows.empty()) return pivots;
  const int n = static_cast<int>(rows[0].size());
  std::size_t r = 0;
  for (int c = 0; c < n && r < rows.size(); ++c) {
    std::size_t sel = r;
    while (sel < rows.size() && rows[sel][static_cast<std::size_t>(c)] == 0) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[r], rows[sel]);
    Vec& pr = rows[r];
    const Elem lead = pr[static_cast<std::size_t>(c)];
    if (lead != 1) {
      const Elem li = F.inv(lead);
      for (int j = c; j < n; ++j) pr[static_cast<std::size_t>(j)] = F.mul(li, pr[static_cast<std::size_t>(j)]);
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r) continue;
      const Elem f = rows[i][static_cast<std::size_t>(c)];
      if (f == 0) continue;
      const Elem nf = F.neg(f);
      Vec& ri = rows[i];
      for (int j = c; j < n; ++j)
        if (pr[static_cast<std::size_t>(j)])
          ri[static_cast<std::size_t>(j)] = F.add(ri[static_cast<std::size_t>(j)], F.mul(nf, pr[static_cast<std::size_t>(j)]));
    }
    pivots.push_back(c);
    ++r;
  }
  rows.resize(r);
  return pivots;
}

int rank_of(const Field& F, std::vector<Vec> rows) {
  return static_cast<int>(rref(F, rows).size());
}

std::uint64_t pack_gf2(const Vec& v) {
  if (v.size() > 64) throw LinalgError("packed GF(2) vectors hold at most 64 coordinates");
  std::uint64_t b = 0;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i]) b |= std::uint64_t{1} << (v.size() - 1 - i);
  return b;
}

Vec unpack_gf2(std::uint64_t bits, int n) {
  Vec v(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = (bits >> (n - 1 - i)) & 1u;
  return v;
}

int rank_gf2(std::vector<std::uint64_t> rows) {
  int r = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::uint64_t x = rows[i];
    if (!x) continue;
    ++r;
    const std::uint64_t top = std::uint64_t{1} << (63 - __builtin_clzll(x));
    for (std::size_t j = i + 1; j < rows.size(); ++j)
      if (rows[j] & top) rows[j] ^= x;
  }
  return r;
}

Subspace Subspace::span(FieldPtr F, int ambient, std::vector<Vec> vectors) {
  for (const auto& v : vectors)
    if (static_cast<int>(v.size()) != ambient) throw LinalgError("vector length differs from ambient dimension");
  Subspace s;
  s.pivots_ = rref(*F, vectors);
  s.rows_ = std::move(vectors);
  s.field_ = std::move(F);
  s.ambient_ = ambient;
  return s;
}

Subspace Subspace::zero(FieldPtr F, int ambient) { return span(std::move(F), ambient, {}); }

Subspace Subspace::whole(FieldPtr F, int ambient) {
  std::vector<Vec> rows;
  for (int i = 0; i < ambient; ++i) rows.push_back(unit_vector(ambient, i));
  return span(std::move(F), ambient, std::move(rows));
}

bool Subspace::operator<(const Subspace& o) const {
  if (ambient_ != o.ambient_) return ambient_ < o.ambient_;
  if (rows_.size() != o.rows_.size()) return rows_.size() < o.rows_.size();
  return rows_ < o.rows_;
}

std::size_t Subspace::hash() const {
  std::size_t h = static_cast<std::size_t>(ambient_) * 1000003u;
  for (const auto& r : rows_)
    for (Elem x : r) h = (h ^ x) * 1099511628211ull;
  return h;
}

Vec Subspace::reduce(Vec v) const {
  const Field& F = *field_;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const Elem c = v[static_cast<std::size_t>(pivots_[i])];
    if (c) vec_axpy(F, v, F.neg(c), rows_[i]);
  }
  return v;
}

bool Subspace::contains(const Vec& v) const { return is_zero(reduce(v)); }

bool Subspace::contains(const Subspace& o) const {
  return std::all_of(o.rows_.begin(), o.rows_.end(), [&](const Vec& r) { return contains(r); });
}

std::optional<Vec> Subspace::coords(const Vec& v) const {
  Vec c(rows_.size());
  for (std::size_t i = 0; i < rows_.size(); ++i) c[i] = v[static_cast<std::size_t>(pivots_[i])];
  if (combine(c) != v) return std::nullopt;
  return c;
}

Vec Subspace::combine(const Vec& coeffs) const {
  Vec v(static_cast<std::size_t>(ambient_), 0);
  for (std::size_t i = 0; i < rows_.size(); ++i) vec_axpy(*field_, v, coeffs[i], rows_[i]);
  return v;
}

void Subspace::for_each_vector(const std::function<void(const Vec&)>& fn) const {
  const Field& F = *field_;
  const auto& el = F.elements();
  const std::size_t k = rows_.size();
  std::vector<std::size_t> ctr(k, 0);
  for (;;) {
    Vec v(static_cast<std::size_t>(ambient_), 0);
    for (std::size_t i = 0; i < k; ++i) vec_axpy(F, v, el[ctr[i]], rows_[i]);
    fn(v);
    std::size_t i = 0;
    while (i < k && ++ctr[i] == el.size()) ctr[i++] = 0;
    if (i == k) break;
  }
}

void Subspace::for_each_point(const std::function<void(const Vec&)>& fn) const {
  const Field& F = *field_;
  const auto& el = F.elements();
  const std::size_t k = rows_.size();
  for (std::size_t lead = 0; lead < k; ++lead) {
    const std::size_t rest = k - lead - 1;
    std::vector<std::size_t> ctr(rest, 0);
    for (;;) {
      Vec v = rows_[lead];
      for (std::size_t i = 0; i < rest; ++i) vec_axpy(F, v, el[ctr[i]], rows_[lead + 1 + i]);
      fn(v);
      std::size_t i = 0;
      while (i < rest && ++ctr[i] == el.size()) ctr[i++] = 0;
      if (i == rest) break;
    }
  }
}

std::optional<Vec> Subspace::find_point(const std::function<bool(const Vec&)>& pred) const {
  const Field& F = *field_;
  const auto& el = F.elements();
  const std::size_t k = rows_.size();
  for (std::size_t lead = 0; lead < k; ++lead) {
    const std::size_t rest = k - lead - 1;
    std::vector<std::size_t> ctr(rest, 0);
    for (;;) {
      Vec v = rows_[lead];
      for (std::size_t i = 0; i < rest; ++i) vec_axpy(F, v, el[ctr[i]], rows_[lead + 1 + i]);
      if (pred(v)) return v;
      std::size_t i = 0;
      while (i < rest && ++ctr[i] == el.size()) ctr[i++] = 0;
      if (i == rest) break;
    }
  }
  return std::nullopt;
}

std::vector<Vec> Subspace::points() const {
  std::vector<std::pair<std::uint64_t, Vec>> tagged;
  for_each_point([&](const Vec& v) { tagged.emplace_back(vector_index(*field_, v), v); });
  std::sort(tagged.begin(), tagged.end());
  std::vector<Vec> out;
  out.reserve(tagged.size());
  for (auto& t : tagged) out.push_back(std::move(t.second));
  return out;
}

Subspace subspace_sum(const Subspace& a, const Subspace& b) {
  if (a.ambient() != b.ambient()) throw LinalgError("sum: ambient dimensions differ");
  std::vector<Vec> rows = a.rows();
  rows.insert(rows.end(), b.rows().begin(), b.rows().end());
  return Subspace::span(a.field(), a.ambient(), std::move(rows));
}

Subspace subspace_intersect(const Subspace& a, const Subspace& b) {
  if (a.ambient() != b.ambient()) throw LinalgError("intersect: ambient dimensions differ");
  // Zassenhaus: rows [a|a] and [b|0]; rows with zero left half give a ∩ b.
  const int n = a.ambient();
  const Field& F = *a.field();
  std::vector<Vec> m;
  for (const auto& r : a.rows()) {
    Vec v(r);
    v.insert(v.end(), r.begin(), r.end());
    m.push_back(std::move(v));
  }
  for (const auto& r : b.rows()) {
    Vec v(r);
    v.resize(static_cast<std::size_t>(2 * n), 0);
    m.push_back(std::move(v));
  }
  const auto piv = rref(F, m);
  std::vector<Vec> out;
  for (std::size_t i = 0; i < m.size(); ++i)
    if (piv[i] >= n) out.emplace_back(m[i].begin() + n, m[i].end());
  return Subspace::span(a.field(), n, std::move(out));
}

int intersection_dim(const Subspace& a, const Subspace& b) {
  std::vector<Vec> rows = a.rows();
  rows.insert(rows.end(), b.rows().begin(), b.rows().end());
  return a.dim() + b.dim() - rank_of(*a.field(), std::move(rows));
}

Subspace nullspace(FieldPtr F, int ambient, const std::vector<Vec>& rows) {
  std::vector<Vec> m = rows;
  const auto piv = rref(*F, m);
  std::vector<bool> is_pivot(static_cast<std::size_t>(ambient), false);
  for (int c : piv) is_pivot[static_cast<std::size_t>(c)] = true;
  std::vector<Vec> basis;
  for (int f = 0; f < ambient; ++f) {
    if (is_pivot[static_cast<std::size_t>(f)]) continue;
    Vec v(static_cast<std::size_t>(ambient), 0);
    v[static_cast<std::size_t>(f)] = 1;
    for (std::size_t i = 0; i < m.size(); ++i) v[static_cast<std::size_t>(piv[i])] = F->neg(m[i][static_cast<std::size_t>(f)]);
    basis.push_back(std::move(v));
  }
  return Subspace::span(std::move(F), ambient, std::move(basis));
}

QuotientCoords::QuotientCoords(FieldPtr F, const Subspace& kernel, std::vector<Vec> complement)
    : field_(std::move(F)), k_(kernel.dim()), complement_(std::move(complement)) {
  const int n = kernel.ambient();
  const int total = k_ + static_cast<int>(complement_.size());
  // rows: [basis_i | e_i], complement first so its coefficients come first
  std::vector<Vec> basis = complement_;
  basis.insert(basis.end(), kernel.rows().begin(), kernel.rows().end());
  for (int i = 0; i < total; ++i) {
    Vec r = basis[static_cast<std::size_t>(i)];
    r.resize(static_cast<std::size_t>(n + total), 0);
    r[static_cast<std::size_t>(n + i)] = 1;
    reduced_.push_back(std::move(r));
  }
  pivots_ = rref(*field_, reduced_);
  for (std::size_t i = 0; i < pivots_.size(); ++i)
    if (pivots_[i] >= n) throw LinalgError("quotient coordinates: kernel and complement are dependent");
}

std::optional<Vec> QuotientCoords::of(const Vec& v) const {
  const Field& F = *field_;
  const std::size_t n = v.size();
  Vec acc(reduced_.empty() ? n : reduced_[0].size(), 0);
  for (std::size_t i = 0; i < reduced_.size(); ++i) {
    const Elem c = v[static_cast<std::size_t>(pivots_[i])];
    if (c) vec_axpy(F, acc, c, reduced_[i]);
  }
  for (std::size_t j = 0; j < n; ++j)
    if (acc[j] != v[j]) return std::nullopt;
  return Vec(acc.begin() + static_cast<std::ptrdiff_t>(n),
             acc.begin() + static_cast<std::ptrdiff_t>(n + complement_.size()));
}

LinearMap::LinearMap(FieldPtr F, int from, int to, std::vector<Vec> images)
    : field_(std::move(F)), from_(from), to_(to), images_(std::move(images)) {
  if (static_cast<int>(images_.size()) != from_) throw LinalgError("linear map: one image per basis vector");
  for (const auto& v : images_)
    if (static_cast<int>(v.size()) != to_) throw LinalgError("linear map: image has wrong length");
}

LinearMap LinearMap::from_bases(FieldPtr F, const std::vector<Vec>& src, const std::vector<Vec>& dst) {
  if (src.empty() || src.size() != dst.size()) throw LinalgError("linear map: basis sizes differ");
  const int n = static_cast<int>(src[0].size());
  const int m = static_cast<int>(dst[0].size());
  if (static_cast<int>(src.size()) != n) throw LinalgError("linear map: source basis must span");
  QuotientCoords qc(F, Subspace::zero(F, n), src);
  std::vector<Vec> images;
  for (int i = 0; i < n; ++i) {
    auto c = qc.of(unit_vector(n, i));
    if (!c) throw LinalgError("linear map: source basis must span");
    Vec img(static_cast<std::size_t>(m), 0);
    for (std::size_t j = 0; j < c->size(); ++j) vec_axpy(*F, img, (*c)[j], dst[j]);
    images.push_back(std::move(img));
  }
  return LinearMap(F, n, m, std::move(images));
}

Vec LinearMap::apply(const Vec& v) const {
  Vec r(static_cast<std::size_t>(to_), 0);
  for (int i = 0; i < from_; ++i) vec_axpy(*field_, r, v[static_cast<std::size_t>(i)], images_[static_cast<std::size_t>(i)]);
  return r;
}

Subspace LinearMap::apply(const Subspace& s) const {
  std::vector<Vec> rows;
  for (const auto& r : s.rows()) rows.push_back(apply(r));
  return Subspace::span(field_, to_, std::move(rows));
}

LinearMap LinearMap::inverse() const {
  if (from_ != to_) throw LinalgError("inverse of a non-square map");
  std::vector<Vec> src;
  for (int i = 0; i < from_; ++i) src.push_back(unit_vector(from_, i));
  return from_bases(field_, images_, src);
}

LinearMap LinearMap::compose(const LinearMap& inner) const {
  std::vector<Vec> imgs;
  for (const auto& v : inner.images_) imgs.push_back(apply(v));
  return LinearMap(field_, inner.from_, to_, std::move(imgs));
}

}  // namespace maxspread

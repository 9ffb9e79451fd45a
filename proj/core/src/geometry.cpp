#include "maxspread/geometry.hpp"

#include <algorithm>
#include <sstream>

namespace maxspread {

std::string to_string(SpaceKind k) {
  switch (k) {
    case SpaceKind::Symplectic: return "symplectic";
    case SpaceKind::OrthogonalPlus: return "orthogonal_plus";
    case SpaceKind::OrthogonalMinus: return "orthogonal_minus";
    case SpaceKind::Parabolic: return "parabolic";
  }
  return "?";
}

SpaceKind space_kind_from_string(const std::string& s) {
  if (s == "symplectic") return SpaceKind::Symplectic;
  if (s == "orthogonal_plus") return SpaceKind::OrthogonalPlus;
  if (s == "orthogonal_minus") return SpaceKind::OrthogonalMinus;
  if (s == "parabolic") return SpaceKind::Parabolic;
  throw GeometryError("unknown space kind '" + s + "'");
}

std::string to_string(TsType t) { return t == TsType::Same ? "same" : "other"; }

namespace {

void check_square(const Matrix& m, int n, const char* what) {
  if (static_cast<int>(m.size()) != n) throw GeometryError(std::string(what) + ": wrong number of rows");
  for (const auto& r : m)
    if (static_cast<int>(r.size()) != n) throw GeometryError(std::string(what) + ": wrong row length");
}

void check_entries(const Field& F, const Matrix& m, const char* what) {
  for (const auto& r : m)
    for (Elem x : r)
      if (!F.contains(x)) throw GeometryError(std::string(what) + ": entry outside the scalar field");
}

}  // namespace

std::shared_ptr<const FormedSpace> FormedSpace::symplectic(FieldPtr F, Matrix gram) {
  const int n = static_cast<int>(gram.size());
  check_square(gram, n, "symplectic form");
  check_entries(*F, gram, "symplectic form");
  for (int i = 0; i < n; ++i) {
    if (gram[i][i] != 0) throw GeometryError("symplectic form must be alternating");
    for (int j = 0; j < n; ++j)
      if (gram[i][j] != F->neg(gram[j][i])) throw GeometryError("symplectic form must be alternating");
  }
  if (n % 2 != 0 || rank_of(*F, gram) != n) throw GeometryError("symplectic form is degenerate");
  std::shared_ptr<FormedSpace> s(new FormedSpace());
  s->field_ = std::move(F);
  s->dim_ = n;
  s->kind_ = SpaceKind::Symplectic;
  s->gram_ = std::move(gram);
  s->finish();
  return s;
}

std::shared_ptr<const FormedSpace> FormedSpace::orthogonal(FieldPtr F, SpaceKind kind, Matrix quad) {
  if (kind == SpaceKind::Symplectic) throw GeometryError("orthogonal space needs an orthogonal kind");
  const int n = static_cast<int>(quad.size());
  check_square(quad, n, "quadratic form");
  check_entries(*F, quad, "quadratic form");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j)
      if (quad[i][j] != 0) throw GeometryError("quadratic form matrix must be upper triangular");
  Matrix gram(n, Vec(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      if (i == j) {
        gram[i][i] = F->add(quad[i][i], quad[i][i]);
      } else {
        gram[i][j] = quad[i][j];
        gram[j][i] = quad[i][j];
      }
    }
  const int r = rank_of(*F, gram);
  const bool parabolic = kind == SpaceKind::Parabolic;
  if (parabolic != (n % 2 == 1)) throw GeometryError("parabolic spaces have odd dimension");
  if (F->characteristic() == 2 && parabolic) {
    if (r != n - 1) throw GeometryError("quadratic form is degenerate");
  } else if (r != n) {
    throw GeometryError("quadratic form is degenerate");
  }
  std::shared_ptr<FormedSpace> s(new FormedSpace());
  s->field_ = std::move(F);
  s->dim_ = n;
  s->kind_ = kind;
  s->gram_ = std::move(gram);
  s->quad_ = std::move(quad);
  s->finish();
  if (parabolic && s->field_->characteristic() == 2) {
    // the radical must be nonsingular
    Subspace rad = nullspace(s->field_, n, s->gram_);
    if (rad.dim() != 1 || s->quadratic(rad.rows()[0]) == 0) throw GeometryError("quadratic form is degenerate");
  }
  return s;
}

std::shared_ptr<const FormedSpace> FormedSpace::standard_symplectic(FieldPtr F, int n) {
  const int N = 2 * n;
  Matrix g(N, Vec(N, 0));
  for (int i = 0; i < n; ++i) {
    g[2 * i][2 * i + 1] = 1;
    g[2 * i + 1][2 * i] = F->neg(1);
  }
  auto s = symplectic(std::move(F), std::move(g));
  return s;
}

std::shared_ptr<const FormedSpace> FormedSpace::standard_hyperbolic(FieldPtr F, int n) {
  const int N = 2 * n;
  Matrix c(N, Vec(N, 0));
  for (int i = 0; i < n; ++i) c[2 * i][2 * i + 1] = 1;
  auto s = orthogonal(std::move(F), SpaceKind::OrthogonalPlus, std::move(c));
  return s;
}

std::shared_ptr<const FormedSpace> FormedSpace::standard_parabolic(FieldPtr F, int n) {
  const int N = 2 * n + 1;
  Matrix c(N, Vec(N, 0));
  c[0][0] = 1;
  for (int i = 0; i < n; ++i) c[2 * i + 1][2 * i + 2] = 1;
  return orthogonal(std::move(F), SpaceKind::Parabolic, std::move(c));
}

std::shared_ptr<const FormedSpace> FormedSpace::standard_elliptic(FieldPtr F, int n) {
  // x^2 + xy + c y^2 with the first c (index order) making it anisotropic
  std::optional<Elem> chosen;
  for (Elem c : F->elements()) {
    bool aniso = true;
    for (Elem x : F->elements())
      if (F->add(F->add(F->mul(x, x), x), c) == 0) {
        aniso = false;
        break;
      }
    if (aniso) {
      chosen = c;
      break;
    }
  }
  if (!chosen) throw GeometryError("no anisotropic binary form found");
  const int N = 2 * n;
  Matrix m(N, Vec(N, 0));
  m[0][0] = 1;
  m[0][1] = 1;
  m[1][1] = *chosen;
  for (int i = 1; i < n; ++i) m[2 * i][2 * i + 1] = 1;
  return orthogonal(std::move(F), SpaceKind::OrthogonalMinus, std::move(m));
}

void FormedSpace::finish() {
  gram_terms_.clear();
  quad_terms_.clear();
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j)
      if (gram_[i][j]) gram_terms_.push_back({i, j, gram_[i][j]});
  if (!quad_.empty())
    for (int i = 0; i < dim_; ++i)
      for (int j = i; j < dim_; ++j)
        if (quad_[i][j]) quad_terms_.push_back({i, j, quad_[i][j]});
  // recognise the standard forms so reloaded spaces keep M0 = <e_1, ..., e_n>
  bool standard = dim_ % 2 == 0 && (kind_ == SpaceKind::Symplectic || kind_ == SpaceKind::OrthogonalPlus);
  for (int i = 0; standard && i < dim_; ++i)
    for (int j = 0; standard && j < dim_; ++j) {
      const bool pair = i % 2 == 0 && j == i + 1;
      Elem want = pair ? 1 : 0;
      if (kind_ == SpaceKind::Symplectic) {
        if (j % 2 == 0 && i == j + 1) want = field_->neg(1);
        standard = gram_[i][j] == want;
      } else {
        standard = quad_[i][j] == want;
      }
    }
  standard_ = standard;
}

bool FormedSpace::operator==(const FormedSpace& o) const {
  return field_->same_as(*o.field_) && dim_ == o.dim_ && kind_ == o.kind_ && gram_ == o.gram_ && quad_ == o.quad_;
}

Elem FormedSpace::bilinear(const Vec& u, const Vec& v) const {
  const Field& F = *field_;
  Elem s = 0;
  for (const auto& t : gram_terms_) {
    const Elem a = u[static_cast<std::size_t>(t.i)], b = v[static_cast<std::size_t>(t.j)];
    if (a && b) s = F.add(s, F.mul(t.c, F.mul(a, b)));
  }
  return s;
}

Elem FormedSpace::quadratic(const Vec& v) const {
  if (quad_.empty()) throw GeometryError("space has no quadratic form");
  const Field& F = *field_;
  Elem s = 0;
  for (const auto& t : quad_terms_) {
    const Elem a = v[static_cast<std::size_t>(t.i)], b = v[static_cast<std::size_t>(t.j)];
    if (a && b) s = F.add(s, F.mul(t.c, F.mul(a, b)));
  }
  return s;
}

Vec FormedSpace::polar(const Vec& v) const {
  const Field& F = *field_;
  Vec r(static_cast<std::size_t>(dim_), 0);
  for (const auto& t : gram_terms_) {
    const Elem a = v[static_cast<std::size_t>(t.i)];
    if (a) r[static_cast<std::size_t>(t.j)] = F.add(r[static_cast<std::size_t>(t.j)], F.mul(t.c, a));
  }
  return r;
}

bool FormedSpace::singular(const Vec& v) const {
  if (quad_.empty()) return true;
  return quadratic(v) == 0;
}

int FormedSpace::max_isotropic_dim() const {
  switch (kind_) {
    case SpaceKind::Symplectic:
    case SpaceKind::OrthogonalPlus: return dim_ / 2;
    case SpaceKind::OrthogonalMinus: return dim_ / 2 - 1;
    case SpaceKind::Parabolic: return (dim_ - 1) / 2;
  }
  return 0;
}

const Subspace& FormedSpace::reference() const {
  std::call_once(ref_once_, [this] {
    if (kind_ != SpaceKind::Symplectic && kind_ != SpaceKind::OrthogonalPlus)
      throw GeometryError("reference subspace needs a symplectic or hyperbolic space");
    std::vector<Vec> rows;
    if (standard_) {
      for (int i = 0; i < dim_ / 2; ++i) rows.push_back(unit_vector(dim_, 2 * i));
    } else {
      for (auto& ef : witt_basis(*this)) rows.push_back(ef.first);
    }
    reference_ = Subspace::span(field_, dim_, std::move(rows));
  });
  return reference_;
}

const std::vector<Vec>& FormedSpace::singular_points() const {
  std::call_once(pts_once_, [this] {
    if (point_count(*field_, dim_) > kMaxEnumeratedPoints)
      throw OutOfScale("point enumeration of " + describe() + " exceeds the desk-scale guard");
    for_each_point_of(*field_, dim_, [&](const Vec& v) {
      if (singular(v)) singular_points_.push_back(v);
      return true;
    });
  });
  return singular_points_;
}

std::uint64_t FormedSpace::singular_point_count() const { return singular_points().size(); }

std::string FormedSpace::describe() const {
  std::ostringstream os;
  os << to_string(kind_) << "(" << dim_ << "," << field_->order() << ")";
  return os.str();
}

Subspace perp(const FormedSpace& V, const Subspace& A) {
  std::vector<Vec> rows;
  for (const auto& r : A.rows()) rows.push_back(V.polar(r));
  return nullspace(V.field(), V.dim(), rows);
}

bool is_totally_isotropic(const FormedSpace& V, const Subspace& A) {
  const auto& r = A.rows();
  for (std::size_t i = 0; i < r.size(); ++i)
    for (std::size_t j = i; j < r.size(); ++j)
      if (V.bilinear(r[i], r[j]) != 0) return false;
  return true;
}

bool is_totally_singular(const FormedSpace& V, const Subspace& A) {
  if (!V.has_quadratic()) throw GeometryError("totally singular needs a quadratic form");
  if (!is_totally_isotropic(V, A)) return false;
  return std::all_of(A.rows().begin(), A.rows().end(), [&](const Vec& r) { return V.quadratic(r) == 0; });
}

TsType ts_type(const FormedSpace& V, const Subspace& W) {
  if (V.kind() != SpaceKind::OrthogonalPlus) throw GeometryError("types are defined in hyperbolic spaces");
  const int n = V.dim() / 2;
  if (W.dim() != n || !is_totally_singular(V, W)) throw GeometryError("type needs a maximal totally singular subspace");
  const int d = intersection_dim(W, V.reference());
  return (d % 2) == (n % 2) ? TsType::Same : TsType::Other;
}

std::vector<Vec> singular_points_of(const FormedSpace& V, const Subspace& U) {
  std::vector<Vec> out;
  for (auto& p : U.points())
    if (V.singular(p)) out.push_back(std::move(p));
  return out;
}

std::vector<std::pair<Vec, Vec>> witt_basis(const FormedSpace& V) {
  const Field& F = *V.field();
  const bool orth = V.has_quadratic();
  if (V.kind() != SpaceKind::Symplectic && V.kind() != SpaceKind::OrthogonalPlus)
    throw GeometryError("hyperbolic basis needs a symplectic or hyperbolic space");
  std::vector<std::pair<Vec, Vec>> out;
  Subspace R = Subspace::whole(V.field(), V.dim());
  while (R.dim() > 0) {
    Vec e;
    if (orth) {
      auto found = R.find_point([&](const Vec& v) { return V.quadratic(v) == 0; });
      if (!found) throw GeometryError("hyperbolic basis: no singular vector left");
      e = *found;
    } else {
      e = R.rows()[0];
    }
    std::optional<Vec> w;
    for (const auto& r : R.rows())
      if (V.bilinear(e, r) != 0) {
        w = r;
        break;
      }
    if (!w) throw GeometryError("hyperbolic basis: form is degenerate");
    Vec f = vec_scale(F, F.inv(V.bilinear(e, *w)), *w);
    if (orth) vec_axpy(F, f, F.neg(V.quadratic(f)), e);
    Subspace ef = Subspace::span(V.field(), V.dim(), {e, f});
    R = subspace_intersect(R, perp(V, ef));
    out.emplace_back(std::move(e), std::move(f));
  }
  return out;
}

LinearMap isometry(const FormedSpace& A, const FormedSpace& B) {
  if (!A.field()->same_as(*B.field()) || A.dim() != B.dim() || A.kind() != B.kind())
    throw GeometryError("isometry needs spaces of the same kind, dimension and field");
  std::vector<Vec> src, dst;
  for (auto& [e, f] : witt_basis(A)) {
    src.push_back(e);
    src.push_back(f);
  }
  for (auto& [e, f] : witt_basis(B)) {
    dst.push_back(e);
    dst.push_back(f);
  }
  return LinearMap::from_bases(A.field(), src, dst);
}

LinearMap embed(const FormedSpace& small, const FormedSpace& big, std::vector<Vec> images) {
  if (!small.field()->same_as(*big.field())) throw GeometryError("embed: fields differ");
  if (static_cast<int>(images.size()) != small.dim()) throw GeometryError("embed: one image per basis vector");
  for (const auto& v : images)
    if (static_cast<int>(v.size()) != big.dim()) throw GeometryError("embed: image has wrong length");
  if (rank_of(*big.field(), images) != small.dim()) throw GeometryError("embed: images are dependent");
  const int n = small.dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (big.bilinear(images[i], images[j]) != small.bilinear(unit_vector(n, i), unit_vector(n, j)))
        throw GeometryError("embed: bilinear form not preserved");
  if (small.has_quadratic()) {
    if (!big.has_quadratic()) throw GeometryError("embed: target has no quadratic form");
    for (int i = 0; i < n; ++i)
      if (big.quadratic(images[i]) != small.quadratic(unit_vector(n, i)))
        throw GeometryError("embed: quadratic form not preserved");
  }
  return LinearMap(small.field(), n, big.dim(), std::move(images));
}

std::optional<Subspace> find_anisotropic_plane(const FormedSpace& V, const Subspace& U) {
  const auto pts = U.points();
  for (std::size_t a = 0; a < pts.size(); ++a) {
    if (V.singular(pts[a])) continue;
    for (std::size_t b = a + 1; b < pts.size(); ++b) {
      if (V.singular(pts[b])) continue;
      Subspace P = Subspace::span(V.field(), V.dim(), {pts[a], pts[b]});
      if (P.dim() != 2) continue;
      bool aniso = true;
      P.for_each_point([&](const Vec& v) {
        if (aniso && V.singular(v)) aniso = false;
      });
      if (aniso) return P;
    }
  }
  return std::nullopt;
}

Descent::Descent(SpacePtr source, std::uint32_t small_degree)
    : source_(std::move(source)), small_degree_(small_degree) {
  const auto& L = *source_->field();
  const auto tower = L.tower_ptr();
  if (small_degree == 0 || L.degree() % small_degree != 0)
    throw GeometryError("descent: target field must be a subfield of the source field");
  if (source_->kind() != SpaceKind::Symplectic && source_->kind() != SpaceKind::OrthogonalPlus)
    throw GeometryError("descent: only symplectic and hyperbolic spaces");
  basis_ = std::make_shared<SubfieldBasis>(tower, small_degree, L.degree());
  auto K = Field::create(tower, small_degree);
  const int r = static_cast<int>(basis_->rank());
  const int N = source_->dim() * r;
  auto lift = [&](int a) {
    Vec v(static_cast<std::size_t>(source_->dim()), 0);
    v[static_cast<std::size_t>(a / r)] = basis_->basis()[static_cast<std::size_t>(a % r)];
    return v;
  };
  auto T = [&](Elem x) { return tower->trace(x, L.degree(), small_degree); };
  Matrix m(N, Vec(N, 0));
  if (source_->has_quadratic()) {
    for (int a = 0; a < N; ++a)
      for (int b = a; b < N; ++b)
        m[a][b] = a == b ? T(source_->quadratic(lift(a))) : T(source_->bilinear(lift(a), lift(b)));
    target_ = FormedSpace::orthogonal(K, source_->kind(), std::move(m));
  } else {
    for (int a = 0; a < N; ++a)
      for (int b = 0; b < N; ++b) m[a][b] = T(source_->bilinear(lift(a), lift(b)));
    target_ = FormedSpace::symplectic(K, std::move(m));
  }
}

Vec Descent::map_vector(const Vec& v) const {
  Vec out;
  out.reserve(v.size() * basis_->rank());
  for (Elem x : v) {
    const auto& c = basis_->coords(x);
    out.insert(out.end(), c.begin(), c.end());
  }
  return out;
}

Subspace Descent::transport(const Subspace& s) const {
  const Field& L = *source_->field();
  std::vector<Vec> rows;
  for (const auto& r : s.rows())
    for (Elem b : basis_->basis()) rows.push_back(map_vector(vec_scale(L, b, r)));
  return Subspace::span(target_->field(), target_->dim(), std::move(rows));
}

Projection::Projection(SpacePtr space, const Vec& z) : parent_(std::move(space)), z_(z) {
  const FormedSpace& V = *parent_;
  const auto& F = V.field();
  if (!V.has_quadratic() || F->characteristic() != 2 || V.kind() != SpaceKind::OrthogonalPlus)
    throw GeometryError("projection needs a hyperbolic space in characteristic 2");
  if (V.quadratic(z_) == 0) throw GeometryError("projection needs a nonsingular point");
  const int n = V.dim();
  Subspace zs = Subspace::span(F, n, {z_});
  zperp_ = perp(V, zs);
  std::vector<Vec> chosen{z_};
  for (const auto& r : zperp_.rows()) {
    chosen.push_back(r);
    if (rank_of(*F, chosen) != static_cast<int>(chosen.size())) {
      chosen.pop_back();
      continue;
    }
    complement_.push_back(r);
  }
  if (static_cast<int>(complement_.size()) != n - 2) throw GeometryError("projection: complement has wrong size");
  coords_ = std::make_shared<QuotientCoords>(F, zs, complement_);
  Matrix g(n - 2, Vec(n - 2, 0));
  for (int i = 0; i < n - 2; ++i)
    for (int j = 0; j < n - 2; ++j) g[i][j] = V.bilinear(complement_[i], complement_[j]);
  quotient_ = FormedSpace::symplectic(F, std::move(g));
}

Subspace Projection::transport(const Subspace& X) const {
  const auto& F = parent_->field();
  Subspace Y = subspace_sum(subspace_intersect(zperp_, X), Subspace::span(F, parent_->dim(), {z_}));
  std::vector<Vec> rows;
  for (const auto& y : Y.rows()) {
    auto c = coords_->of(y);
    if (!c) throw GeometryError("projection: vector outside z-perp");
    rows.push_back(std::move(*c));
  }
  return Subspace::span(F, quotient_->dim(), std::move(rows));
}

Subspace Projection::preimage(const Subspace& ubar) const {
  const auto& F = parent_->field();
  std::vector<Vec> rows{z_};
  for (const auto& a : ubar.rows()) {
    Vec v(static_cast<std::size_t>(parent_->dim()), 0);
    for (std::size_t i = 0; i < a.size(); ++i) vec_axpy(*F, v, a[i], complement_[i]);
    rows.push_back(std::move(v));
  }
  return Subspace::span(F, parent_->dim(), std::move(rows));
}

Subspace lift_from_z(const Projection& P, const Subspace& ubar, TsType target) {
  const FormedSpace& V = *P.parent();
  const auto& F = V.field();
  const int n = V.dim() / 2;
  if (ubar.dim() != n - 1 || !is_totally_isotropic(*P.quotient(), ubar))
    throw GeometryError("lift: need a maximal totally isotropic subspace of the quotient");
  Subspace U = P.preimage(ubar);
  // Q is semilinear on U: Q(sum a_i u_i) = (sum a_i sqrt Q(u_i))^2
  Vec s;
  for (const auto& u : U.rows()) s.push_back(F->tower().sqrt_char2(V.quadratic(u)));
  Subspace ker = nullspace(F, U.dim(), {s});
  std::vector<Vec> rows;
  for (const auto& a : ker.rows()) rows.push_back(U.combine(a));
  Subspace Up = Subspace::span(F, V.dim(), std::move(rows));
  if (Up.dim() != n - 1 || !is_totally_singular(V, Up)) throw GeometryError("lift: Q-kernel is not totally singular");
  Subspace Upp = perp(V, Up);
  std::vector<Vec> comp;
  {
    std::vector<Vec> acc = Up.rows();
    for (const auto& r : Upp.rows()) {
      acc.push_back(r);
      if (rank_of(*F, acc) != static_cast<int>(acc.size())) {
        acc.pop_back();
        continue;
      }
      comp.push_back(r);
    }
  }
  if (comp.size() != 2) throw GeometryError("lift: perp of the kernel has wrong dimension");
  std::vector<Subspace> cands;
  Subspace line = Subspace::span(F, V.dim(), comp);
  line.for_each_point([&](const Vec& w) {
    if (V.quadratic(w) == 0) {
      std::vector<Vec> r = Up.rows();
      r.push_back(w);
      cands.push_back(Subspace::span(F, V.dim(), std::move(r)));
    }
  });
  if (cands.size() != 2) throw GeometryError("lift: expected two maximal subspaces through the kernel");
  for (auto& c : cands)
    if (ts_type(V, c) == target) return c;
  throw GeometryError("lift: no extension of the requested type");
}

SpacePtr klein_space(FieldPtr F) {
  Matrix m(5, Vec(5, 0));
  const Elem minus_one = F->neg(1);
  m[0][0] = minus_one;
  m[1][4] = minus_one;
  m[2][3] = 1;
  return FormedSpace::orthogonal(std::move(F), SpaceKind::Parabolic, std::move(m));
}

Vec klein_point_of_line(const Subspace& line) {
  if (line.ambient() != 4 || line.dim() != 2) throw GeometryError("Klein map needs a line of a 4-space");
  const Field& F = *line.field();
  const Vec& u = line.rows()[0];
  const Vec& v = line.rows()[1];
  auto p = [&](int i, int j) { return F.sub(F.mul(u[i], v[j]), F.mul(u[j], v[i])); };
  if (F.add(p(0, 1), p(2, 3)) != 0) throw GeometryError("Klein map needs a totally isotropic line");
  return normalized(F, Vec{p(0, 1), p(0, 2), p(0, 3), p(1, 2), p(1, 3)});
}

}  // namespace maxspread

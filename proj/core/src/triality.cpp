#include "maxspread/triality.hpp"

namespace maxspread {

Vec flatten(const Octonion& x) {
  return {x.a, x.v[0], x.v[1], x.v[2], x.w[0], x.w[1], x.w[2], x.b};
}

Octonion unflatten(const Vec& x) {
  if (x.size() != 8) throw GeometryError("octonions have 8 coordinates");
  Octonion o;
  o.a = x[0];
  for (int i = 0; i < 3; ++i) {
    o.v[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(1 + i)];
    o.w[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(4 + i)];
  }
  o.b = x[7];
  return o;
}

Octonion zorn_identity() {
  Octonion e;
  e.a = 1;
  e.b = 1;
  return e;
}

namespace {

using V3 = std::array<Elem, 3>;

Elem dot(const Field& F, const V3& x, const V3& y) {
  Elem s = 0;
  for (std::size_t i = 0; i < 3; ++i) s = F.add(s, F.mul(x[i], y[i]));
  return s;
}

V3 cross(const Field& F, const V3& x, const V3& y) {
  return {F.sub(F.mul(x[1], y[2]), F.mul(x[2], y[1])), F.sub(F.mul(x[2], y[0]), F.mul(x[0], y[2])),
          F.sub(F.mul(x[0], y[1]), F.mul(x[1], y[0]))};
}

V3 lin(const Field& F, Elem s, const V3& x, Elem t, const V3& y) {
  V3 r;
  for (std::size_t i = 0; i < 3; ++i) r[i] = F.add(F.mul(s, x[i]), F.mul(t, y[i]));
  return r;
}

}  // namespace

Octonion zorn_mul(const Field& F, const Octonion& x, const Octonion& y) {
  Octonion r;
  r.a = F.add(F.mul(x.a, y.a), dot(F, x.v, y.w));
  r.b = F.add(F.mul(x.b, y.b), dot(F, x.w, y.v));
  const V3 ww = cross(F, x.w, y.w);
  const V3 vv = cross(F, x.v, y.v);
  const V3 v = lin(F, x.a, y.v, y.b, x.v);
  const V3 w = lin(F, y.a, x.w, x.b, y.w);
  for (std::size_t i = 0; i < 3; ++i) {
    r.v[i] = F.sub(v[i], ww[i]);
    r.w[i] = F.add(w[i], vv[i]);
  }
  return r;
}

Elem zorn_norm(const Field& F, const Octonion& x) { return F.sub(F.mul(x.a, x.b), dot(F, x.v, x.w)); }

SpacePtr zorn_space(FieldPtr F) {
  Matrix c(8, Vec(8, 0));
  const Elem m1 = F->neg(1);
  c[0][7] = 1;
  for (int i = 0; i < 3; ++i) c[static_cast<std::size_t>(1 + i)][static_cast<std::size_t>(4 + i)] = m1;
  return FormedSpace::orthogonal(std::move(F), SpaceKind::OrthogonalPlus, std::move(c));
}

Subspace triality_image(const FormedSpace& zorn, const Vec& x) {
  if (zorn.dim() != 8 || !zorn.has_quadratic()) throw GeometryError("triality needs an 8-dimensional orthogonal space");
  if (is_zero(x)) throw GeometryError("triality image of the zero vector");
  if (zorn.quadratic(x) != 0) throw GeometryError("triality image needs a singular point");
  const Field& F = *zorn.field();
  const Octonion o = unflatten(x);
  std::vector<Vec> rows;
  for (int k = 0; k < 8; ++k) rows.push_back(flatten(zorn_mul(F, o, unflatten(unit_vector(8, k)))));
  Subspace s = Subspace::span(zorn.field(), 8, std::move(rows));
  if (s.dim() != 4) throw GeometryError("triality image is not 4-dimensional");
  return s;
}

Triality::Triality(SpacePtr space) : space_(std::move(space)) {
  if (space_->kind() != SpaceKind::OrthogonalPlus || space_->dim() != 8)
    throw GeometryError("triality needs an O+(8,q) space");
  zorn_ = zorn_space(space_->field());
  to_zorn_ = isometry(*space_, *zorn_);
  from_zorn_ = to_zorn_.inverse();
}

Subspace Triality::image(const Vec& p) const {
  return from_zorn_.apply(triality_image(*zorn_, to_zorn_.apply(p)));
}

std::vector<Subspace> Triality::images(const std::vector<Vec>& points) const {
  std::vector<Subspace> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(image(p));
  return out;
}

}  // namespace maxspread

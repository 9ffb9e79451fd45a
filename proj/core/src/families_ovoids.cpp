#include <algorithm>
#include <array>
#include <functional>
#include <set>

#include "families_common.hpp"
#include "maxspread/families.hpp"
#include "maxspread/verify.hpp"

namespace maxspread {

using detail::require;
using detail::step;

namespace {

std::int64_t as_param(std::uint64_t q) { return static_cast<std::int64_t>(q); }

bool is_suzuki_q(std::uint64_t q) {
  const auto [p, e] = prime_power(q);
  return p == 2 && e % 2 == 1 && e >= 3;
}

// Quadratic form matrix c with Q = sum_{i<=j} c_ij x_i x_j from a function
// on vectors, by polarization.
Matrix quad_matrix(const Field& F, int n, const std::function<Elem(const Vec&)>& Q) {
  Matrix c(n, Vec(n, 0));
  std::vector<Elem> diag(n);
  for (int i = 0; i < n; ++i) diag[i] = c[i][i] = Q(unit_vector(n, i));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Vec v = unit_vector(n, i);
      v[j] = 1;
      c[i][j] = F.sub(F.sub(Q(v), diag[i]), diag[j]);
    }
  return c;
}

std::vector<Vec> perp_to(const FormedSpace& V, const Vec& x, const std::vector<Vec>& pts) {
  const Vec r = V.polar(x);
  std::vector<Vec> out;
  for (const auto& p : pts)
    if (vec_dot(*V.field(), r, p) == 0) out.push_back(p);
  return out;
}

std::vector<Vec> minus(const std::vector<Vec>& a, const std::vector<Vec>& b) {
  std::set<Vec> drop(b.begin(), b.end());
  std::vector<Vec> out;
  for (const auto& v : a)
    if (!drop.count(v)) out.push_back(v);
  return out;
}

PointFamily point_family(SpacePtr space, std::vector<Vec> pts, const std::string& id, Params params,
                         const std::string& window, bool in_window, Flavor flavor = Flavor::Orthogonal) {
  PointFamily fam;
  fam.space = std::move(space);
  fam.points = std::move(pts);
  fam.expected_size = detail::expected_or_throw(id, params);
  fam.provenance.push_back(step("construct", id, std::move(params), window, in_window));
  fam.flavor = flavor;
  return fam;
}

}  // namespace

// ---------------------------------------------------------------------------
// Desarguesian ovoid of K + F + F + K

Vec OvoidModel::vec(Elem a, Elem beta, Elem gamma, Elem d) const {
  Vec v{a};
  const auto& b = basis->coords(beta);
  const auto& g = basis->coords(gamma);
  v.insert(v.end(), b.begin(), b.end());
  v.insert(v.end(), g.begin(), g.end());
  v.push_back(d);
  return v;
}

Elem OvoidModel::T(Elem x) const { return tower->trace(x, fdeg, kdeg); }
Elem OvoidModel::N(Elem x) const { return tower->norm(x, fdeg, kdeg); }
Elem OvoidModel::frob(Elem x, std::uint32_t j) const { return tower->frobenius(x, kdeg * j); }

std::vector<Vec> OvoidModel::ovoid() const {
  std::vector<Vec> out{vec(0, 0, 0, 1)};
  for (Elem t : tower->subfield_elements(fdeg))
    out.push_back(vec(1, t, tower->mul(frob(t, 1), frob(t, 2)), N(t)));
  return out;
}

OvoidModel ovoid_model(std::uint64_t q) {
  require(detail::is_even(q) && q > 2, "the desarguesian ovoid needs q even and q > 2");
  const auto [p, e] = prime_power(q);
  OvoidModel m;
  m.tower = tower_for(q, 3);
  m.kdeg = e;
  m.fdeg = 3 * e;
  m.K = Field::create(m.tower, e);
  m.basis = std::make_shared<SubfieldBasis>(m.tower, e, 3 * e);
  m.pi = find_pi(*m.tower, e);
  const auto& t = *m.tower;
  auto Q = [&](const Vec& v) {
    const Elem beta = m.basis->combine({v[1], v[2], v[3]});
    const Elem gamma = m.basis->combine({v[4], v[5], v[6]});
    return t.add(t.mul(v[0], v[7]), m.T(t.mul(beta, gamma)));
  };
  m.space = FormedSpace::orthogonal(m.K, SpaceKind::OrthogonalPlus, quad_matrix(*m.K, 8, Q));
  return m;
}

PointFamily desarguesian_ovoid(std::uint64_t q) {
  auto m = ovoid_model(q);
  return point_family(m.space, m.ovoid(), "appA", {{"q", as_param(q)}}, "q even, q > 2", true);
}

std::string to_string(RemovalScheme s) { return s == RemovalScheme::A6i ? "A6i" : "A6ii"; }

RemovalScheme removal_scheme_from_string(const std::string& s) {
  if (s == "A6i" || s == "i" || s == "0") return RemovalScheme::A6i;
  if (s == "A6ii" || s == "ii" || s == "1") return RemovalScheme::A6ii;
  throw FamilyError("unknown removal scheme " + s);
}

namespace {

std::vector<Vec> removal_points(const OvoidModel& m, RemovalScheme scheme, int s) {
  const auto& t = *m.tower;
  const Elem pi = m.pi, piq = m.frob(m.pi, 1);
  auto ok = [&](Elem a) { return t.add(t.add(t.mul(a, a), a), 1) != 0; };
  std::vector<Vec> list{m.vec(0, 0, pi, 0)};
  if (scheme == RemovalScheme::A6i) {
    for (Elem a : m.K->elements()) {
      if (!ok(a)) continue;
      const Elem beta = t.add(t.mul(a, pi), piq);
      list.push_back(m.vec(0, beta, t.mul(a, beta), 0));
    }
  } else {
    list.push_back(m.vec(0, piq, 0, 0));
    list.push_back(m.vec(0, t.add(pi, piq), t.add(pi, piq), 0));
    for (Elem a : m.K->elements()) {
      if (a == 0 || a == 1 || !ok(a)) continue;
      const Elem beta = t.add(t.mul(a, pi), piq);
      list.push_back(m.vec(0, beta, t.mul(t.mul(a, a), beta), 0));
      break;
    }
  }
  if (s < 1 || s > static_cast<int>(list.size()))
    throw FamilyError("scheme " + to_string(scheme) + " offers 1.." + std::to_string(list.size()) + " points");
  list.resize(static_cast<std::size_t>(s));
  for (auto& v : list) v = normalized(*m.K, v);
  return list;
}

}  // namespace

PointFamily ordinary_removal_set(std::uint64_t q, RemovalScheme scheme, int s) {
  auto m = ovoid_model(q);
  auto pts = removal_points(m, scheme, s);
  PointFamily fam;
  fam.space = m.space;
  fam.points = std::move(pts);
  fam.expected_size = s;
  fam.provenance.push_back(step("construct", "exA.6",
                                {{"q", as_param(q)}, {"s", s}, {"scheme", scheme == RemovalScheme::A6i ? 0 : 1}},
                                "q even, q > 2", true));
  return fam;
}

PointFamily lemma71_bullet(std::uint64_t q) {
  auto m = ovoid_model(q);
  const FormedSpace& V = *m.space;
  const auto omega = m.ovoid();
  const std::set<Vec> in_omega(omega.begin(), omega.end());
  std::optional<Vec> a;
  for_each_point_of(*m.K, 8, [&](const Vec& v) {
    if (V.quadratic(v) != 0 || in_omega.count(v)) return true;
    a = v;
    return false;
  });
  if (!a) throw FamilyError("every singular point lies on the ovoid");
  const auto section = perp_to(V, *a, omega);
  const Subspace aperp = perp(V, Subspace::span(m.K, 8, {*a}));
  if (Subspace::span(m.K, 8, section) != aperp) throw FamilyError("<a^perp ∩ Omega> differs from a^perp");
  auto pts = minus(omega, section);
  pts.push_back(*a);
  return point_family(m.space, std::move(pts), "thm7.2", {{"q", as_param(q)}}, "q even, q > 2", true);
}

PointFamily orthovoid_bullet(std::uint64_t q, int s, RemovalScheme scheme) {
  auto m = ovoid_model(q);
  const FormedSpace& V = *m.space;
  const auto P = removal_points(m, scheme, s);
  auto pts = m.ovoid();
  for (const auto& p : P) pts = minus(pts, perp_to(V, p, pts));
  pts.insert(pts.end(), P.begin(), P.end());
  const bool a6ii = scheme == RemovalScheme::A6ii;
  const bool in_window = 5 * static_cast<std::uint64_t>(s) <= q || (a6ii && s == 4 && q >= 16);
  return point_family(m.space, std::move(pts), "thm7.3", {{"q", as_param(q)}, {"s", s}, {"scheme", a6ii ? 1 : 0}},
                      "1 <= s <= q/5; scheme A6ii with s = 4 needs q >= 16", in_window);
}

OvoidSymmetries ovoid_symmetries(const OvoidModel& m) {
  const auto& t = *m.tower;
  const Field& K = *m.K;
  auto decode = [&](const Vec& v) {
    return std::array<Elem, 4>{v[0], m.basis->combine({v[1], v[2], v[3]}), m.basis->combine({v[4], v[5], v[6]}),
                               v[7]};
  };
  auto build = [&](const std::function<std::array<Elem, 4>(const std::array<Elem, 4>&)>& f) {
    std::vector<Vec> images;
    for (int i = 0; i < 8; ++i) {
      auto r = f(decode(unit_vector(8, i)));
      images.push_back(m.vec(r[0], r[1], r[2], r[3]));
    }
    return LinearMap(m.K, 8, 8, std::move(images));
  };
  OvoidSymmetries out;
  for (Elem s : K.elements()) {
    const Elem s2 = t.mul(s, s), s3 = t.mul(s2, s);
    out.u.emplace_back(s, build([&](const std::array<Elem, 4>& x) {
      const auto [a, beta, gamma, d] = x;
      Elem g = t.add(gamma, t.mul(a, s2));
      g = t.add(g, t.mul(m.frob(beta, 1), s));
      g = t.add(g, t.mul(m.frob(beta, 2), s));
      Elem dd = t.add(d, t.mul(a, s3));
      dd = t.add(dd, t.mul(m.T(beta), s2));
      dd = t.add(dd, t.mul(m.T(gamma), s));
      return std::array<Elem, 4>{a, t.add(beta, t.mul(s, a)), g, dd};
    }));
  }
  out.j = build([](const std::array<Elem, 4>& x) { return std::array<Elem, 4>{x[3], x[2], x[1], x[0]}; });
  return out;
}

// ---------------------------------------------------------------------------
// Partial ovoids of O+(8,q) built from 4- and 5-dimensional sections

namespace {

struct Standard8 {
  FieldPtr K;
  SpacePtr V;
  Subspace first4;  // <e1, f1, e2, f2>
};

Standard8 standard8(std::uint64_t q) {
  Standard8 s;
  s.K = scalar_field(tower_for(q, 1), q);
  s.V = FormedSpace::standard_hyperbolic(s.K, 4);
  s.first4 = Subspace::span(s.K, 8, {unit_vector(8, 0), unit_vector(8, 1), unit_vector(8, 2), unit_vector(8, 3)});
  return s;
}

Subspace anisotropic_plane(const Standard8& s) {
  auto A = find_anisotropic_plane(*s.V, s.first4);
  if (!A) throw FamilyError("no anisotropic plane in <e1, f1, e2, f2>");
  return *A;
}

std::vector<Vec> quadric_points(const FormedSpace& V, const Subspace& U, std::uint64_t q) {
  auto pts = singular_points_of(V, U);
  if (pts.size() != q * q + 1) throw FamilyError("section is not an elliptic quadric");
  return pts;
}

}  // namespace

PointFamily elliptic_partial_ovoid(std::uint64_t q) {
  auto s = standard8(q);
  const Subspace U = subspace_sum(anisotropic_plane(s), Subspace::span(s.K, 8, {unit_vector(8, 4), unit_vector(8, 5)}));
  return point_family(s.V, quadric_points(*s.V, U, q), "ex7.4", {{"q", as_param(q)}}, "any q", true);
}

PointFamily o5_partial_ovoid(std::uint64_t q) {
  auto s = standard8(q);
  Vec r(8, 0);
  r[4] = r[5] = 1;
  const Subspace W5 = Subspace::span(s.K, 8, {unit_vector(8, 0), unit_vector(8, 1), unit_vector(8, 2), unit_vector(8, 3), r});
  std::optional<std::vector<Vec>> found;
  for_each_point_of(*s.K, 5, [&](const Vec& h) {
    std::vector<Vec> rows;
    const Subspace H = nullspace(s.K, 5, {h});
    for (const auto& c : H.rows()) rows.push_back(W5.combine(c));
    auto pts = singular_points_of(*s.V, Subspace::span(s.K, 8, rows));
    if (pts.size() != q * q + 1) return true;
    found = std::move(pts);
    return false;
  });
  if (!found) throw FamilyError("no elliptic hyperplane in the parabolic section");
  return point_family(s.V, std::move(*found), "lemma7.5", {{"q", as_param(q)}}, "any q", true);
}

SuzukiTitsModel suzuki_tits_model(std::uint64_t q) {
  require(is_suzuki_q(q), "Suzuki-Tits ovoids need q = 2^(2e+1) > 2");
  const auto [p, d] = prime_power(q);
  const std::uint32_t sigma_log = (d - 1) / 2 + 1;  // x^sigma with sigma^2 = 2q
  SuzukiTitsModel M;
  M.q = q;
  auto K = scalar_field(tower_for(q, 1), q);
  const auto& t = K->tower();
  M.o5 = FormedSpace::standard_parabolic(K, 2);
  M.o8 = FormedSpace::standard_hyperbolic(K, 4);
  // symplectic coordinates (c1, c2, c3, c4) pair c1 with c4 and c2 with c3
  auto lift = [&](Elem c1, Elem c2, Elem c3, Elem c4) {
    const Elem x1 = c1, x2 = c4, x3 = c2, x4 = c3;
    const Elem x0 = t.sqrt_char2(t.add(t.mul(x1, x2), t.mul(x3, x4)));
    return normalized(*K, Vec{x0, x1, x2, x3, x4});
  };
  M.omega5.push_back(lift(0, 0, 0, 1));
  for (Elem a : K->elements())
    for (Elem b : K->elements()) {
      const Elem sa = t.frobenius(a, sigma_log), sb = t.frobenius(b, sigma_log);
      const Elem c4 = t.add(t.add(t.mul(a, b), t.mul(t.mul(sa, a), a)), sb);
      M.omega5.push_back(lift(1, a, b, c4));
    }
  Vec r(8, 0);
  r[4] = r[5] = 1;
  M.radical = r;
  M.embedding = embed(*M.o5, *M.o8, {r, unit_vector(8, 0), unit_vector(8, 1), unit_vector(8, 2), unit_vector(8, 3)});
  for (const auto& v : M.omega5) M.omega8.push_back(normalized(*K, M.embedding.apply(v)));
  M.U = Subspace::span(K, 8, M.embedding.images());
  M.Uperp = perp(*M.o8, M.U);
  return M;
}

PointFamily suzuki_tits_ovoid(std::uint64_t q) {
  auto M = suzuki_tits_model(q);
  return point_family(M.o5, M.omega5, "st5", {{"q", as_param(q)}}, "q = 2^(2e+1) > 2", true);
}

PointFamily suzuki_tits_partial_ovoid(std::uint64_t q) {
  auto M = suzuki_tits_model(q);
  return point_family(M.o8, M.omega8, "st", {{"q", as_param(q)}}, "q = 2^(2e+1) > 2", true);
}

PointFamily two_quadrics_ovoid(std::uint64_t q) {
  auto s = standard8(q);
  const FormedSpace& V = *s.V;
  const Subspace A = anisotropic_plane(s);
  const Subspace Ap = subspace_intersect(perp(V, A), s.first4);
  const Vec p = unit_vector(8, 4), pp = unit_vector(8, 6);
  const Subspace W = Subspace::span(s.K, 8, {unit_vector(8, 4), unit_vector(8, 5), unit_vector(8, 6), unit_vector(8, 7)});
  auto u = W.find_point(
      [&](const Vec& v) { return V.singular(v) && V.bilinear(v, pp) == 0 && V.bilinear(v, p) != 0; });
  if (!u) throw FamilyError("no singular u with u ⟂ p' and u not ⟂ p");
  auto up = W.find_point([&](const Vec& v) {
    return V.singular(v) && V.bilinear(v, p) == 0 && V.bilinear(v, pp) != 0 && V.bilinear(v, *u) != 0;
  });
  if (!up) throw FamilyError("no singular u' with u' ⟂ p, u' not ⟂ p' and u' not ⟂ u");
  const Subspace U = subspace_sum(A, Subspace::span(s.K, 8, {p, *u}));
  const Subspace Up = subspace_sum(Ap, Subspace::span(s.K, 8, {pp, *up}));
  auto omega = minus(quadric_points(V, U, q), {p});
  auto omegap = minus(quadric_points(V, Up, q), {pp});
  auto x = Subspace::span(s.K, 8, {p, pp}).find_point([&](const Vec& v) { return v != p && v != pp; });
  omega.insert(omega.end(), omegap.begin(), omegap.end());
  omega.push_back(*x);
  return point_family(s.V, std::move(omega), "lemma7.8", {{"q", as_param(q)}}, "any q", true);
}

PointFamily st_pencil_replace(std::uint64_t q) {
  auto M = suzuki_tits_model(q);
  const FormedSpace& V = *M.o8;
  const Vec p = M.omega8.front();
  const auto x0s = singular_points_of(V, M.Uperp);
  if (x0s.size() != q + 1) throw FamilyError("U^perp has " + std::to_string(x0s.size()) + " singular points");
  std::vector<Vec> pts(M.omega8.begin() + 1, M.omega8.end());
  for (const auto& x0 : x0s) {
    auto x = Subspace::span(V.field(), 8, {p, x0}).find_point([&](const Vec& v) { return v != p && v != x0; });
    pts.push_back(*x);
  }
  return point_family(M.o8, std::move(pts), "thm7.10", {{"q", as_param(q)}}, "q = 2^(2e+1) > 2", true);
}

PointFamily st_section_replace(std::uint64_t q) {
  auto M = suzuki_tits_model(q);
  const FormedSpace& V = *M.o8;
  const std::set<Vec> in_omega(M.omega8.begin(), M.omega8.end());
  auto x = M.U.find_point([&](const Vec& v) { return V.singular(v) && !in_omega.count(v); });
  if (!x) throw FamilyError("every singular point of U lies on the ovoid");
  const auto section = perp_to(V, *x, M.omega8);
  if (section.size() != q + 1) throw FamilyError("x^perp meets the ovoid in " + std::to_string(section.size()) + " points");
  auto pts = minus(M.omega8, section);
  pts.push_back(*x);
  return point_family(M.o8, std::move(pts), "thm7.11", {{"q", as_param(q)}}, "q = 2^(2e+1) > 2", true);
}

CircleData st_circles(const SuzukiTitsModel& M) {
  const FormedSpace& V = *M.o8;
  CircleData c;
  c.a = M.omega8[0];
  c.b = M.omega8[1];
  const Subspace plane = subspace_intersect(perp(V, Subspace::span(V.field(), 8, {c.a, c.b})), M.U);
  c.centres = singular_points_of(V, plane);
  for (const auto& x : c.centres) c.circles.push_back(perp_to(V, x, M.omega8));
  return c;
}

PointFamily st_circle_replace(std::uint64_t q, int s) {
  auto M = suzuki_tits_model(q);
  require(s >= 1 && static_cast<std::uint64_t>(s) <= q + 1, "s must lie in 1..q+1");
  const auto C = st_circles(M);
  if (C.centres.size() != q + 1) throw FamilyError("{a,b}^perp ∩ U has the wrong number of singular points");
  auto pts = M.omega8;
  for (int i = 0; i < s; ++i) pts = minus(pts, C.circles[static_cast<std::size_t>(i)]);
  pts.insert(pts.end(), C.centres.begin(), C.centres.begin() + s);
  const bool in_window = s > 1 && 2 * static_cast<std::uint64_t>(s + 1) * static_cast<std::uint64_t>(s + 1) <= q;
  return point_family(M.o8, std::move(pts), "thm7.12", {{"q", as_param(q)}, {"s", s}}, "1 < s <= sqrt(q/2) - 1",
                      in_window);
}

// ---------------------------------------------------------------------------
// Parabolic O(5,q) and Sp(2m,q)

PointFamily conic_replace(std::uint64_t q, int s) {
  require(s >= 1, "s must be at least 1");
  auto K = scalar_field(tower_for(q, 1), q);
  auto V = FormedSpace::standard_parabolic(K, 2);
  const bool even = detail::is_even(q);
  std::optional<Subspace> U;
  std::vector<Vec> omega;
  for_each_point_of(*K, 5, [&](const Vec& h) {
    if (even && h[0] == 0) return true;  // hyperplanes through the nucleus
    Subspace H = nullspace(K, 5, {h});
    auto pts = singular_points_of(*V, H);
    if (pts.size() != q * q + 1) return true;
    U = H;
    omega = std::move(pts);
    return false;
  });
  if (!U) throw FamilyError("no elliptic hyperplane");
  const Vec a = omega[0], b = omega[1];
  const Subspace ab = Subspace::span(K, 5, {a, b});
  std::vector<Subspace> planes;
  std::set<Subspace> seen;
  U->for_each_point([&](const Vec& w) {
    if (ab.contains(w)) return;
    Subspace E = Subspace::span(K, 5, {a, b, w});
    if (seen.insert(E).second) planes.push_back(E);
  });
  std::vector<Vec> removed, added;
  int used = 0;
  for (const auto& E : planes) {
    if (used == s) break;
    const auto xs = singular_points_of(*V, perp(*V, E));
    if (xs.size() != (even ? 1u : 2u)) continue;
    for (const auto& v : omega)
      if (E.contains(v)) removed.push_back(v);
    added.insert(added.end(), xs.begin(), xs.end());
    ++used;
  }
  if (used < s) throw FamilyError("only " + std::to_string(used) + " qualifying planes");
  auto pts = minus(omega, removed);
  pts.insert(pts.end(), added.begin(), added.end());
  const bool in_window = 2 * static_cast<std::uint64_t>(s) < q + 1;
  return point_family(V, std::move(pts), "thm9.1", {{"q", as_param(q)}, {"s", s}}, "1 <= s < (q+1)/2", in_window);
}

PointFamily three_lines(std::uint64_t q, int m) {
  require(q >= 4, "the three-lines construction needs q >= 4");
  require(m >= 2, "the three-lines construction needs m >= 2");
  auto K = scalar_field(tower_for(q, 1), q);
  auto V = FormedSpace::standard_symplectic(K, m);
  const int N = 2 * m;
  const Subspace X = Subspace::span(K, N, {unit_vector(N, 0), unit_vector(N, 2)});
  const Subspace Y = Subspace::span(K, N, {unit_vector(N, 1), unit_vector(N, 3)});
  const auto xp = X.points();
  auto partner = [&](const Vec& x) {
    Subspace s = subspace_intersect(perp(*V, Subspace::span(K, N, {x})), Y);
    return s.points().front();
  };
  const Vec x1 = xp[0], x2 = xp[1], x3 = xp[2], x = xp[3];
  const Vec y1 = partner(x1), y2 = partner(x2), y3 = partner(x3), yx = partner(x);
  auto y = Y.find_point([&](const Vec& v) { return v != y1 && v != y2 && v != y3 && v != yx; });
  std::vector<Vec> pts;
  const std::array<std::pair<Vec, Vec>, 3> lines{{{x1, y2}, {x2, y3}, {x3, y1}}};
  for (const auto& [u, v] : lines)
    Subspace::span(K, N, {u, v}).for_each_point([&](const Vec& w) {
      if (w != u && w != v) pts.push_back(w);
    });
  pts.push_back(x);
  pts.push_back(*y);
  return point_family(V, std::move(pts), "ex9.2", {{"q", as_param(q)}, {"m", m}}, "q >= 4, m >= 2", true,
                      Flavor::Symplectic);
}

}  // namespace maxspread

#include <algorithm>
#include <set>

#include "families_common.hpp"
#include "maxspread/families.hpp"
#include "maxspread/triality.hpp"
#include "maxspread/verify.hpp"

namespace maxspread {

TowerPtr tower_for(std::uint64_t q, std::uint32_t mult) {
  const auto [p, e] = prime_power(q);
  return FieldTower::create(p, e * mult);
}

FieldPtr scalar_field(const TowerPtr& tower, std::uint64_t q) {
  const auto [p, e] = prime_power(q);
  if (p != tower->characteristic() || tower->degree() % e != 0)
    throw FamilyError("GF(" + std::to_string(q) + ") is not a subfield of " + tower->describe());
  return Field::create(tower, e);
}

namespace detail {

ProvenanceStep step(std::string op, std::string family, Params params, std::string window, bool in_window) {
  ProvenanceStep s;
  s.op = std::move(op);
  s.family = std::move(family);
  s.params = std::move(params);
  s.window = std::move(window);
  s.in_window = in_window;
  return s;
}

bool is_even(std::uint64_t q) { return q % 2 == 0; }

void require(bool ok, const std::string& msg) {
  if (!ok) throw FamilyError(msg);
}

std::int64_t expected_or_throw(const std::string& id, const Params& params) {
  auto e = expected_size(id, params);
  if (!e) throw FamilyError("no size formula for " + id);
  return *e;
}

}  // namespace detail

using detail::require;
using detail::step;

// ---------------------------------------------------------------------------

Vec DesarguesianModel::vec(Elem x, Elem y) const {
  Vec v = basis->coords(x);
  const auto& c = basis->coords(y);
  v.insert(v.end(), c.begin(), c.end());
  return v;
}

Subspace DesarguesianModel::span(const std::vector<std::pair<Elem, Elem>>& xy) const {
  std::vector<Vec> rows;
  rows.reserve(xy.size());
  for (auto [x, y] : xy) rows.push_back(vec(x, y));
  return Subspace::span(K, space->dim(), std::move(rows));
}

Subspace DesarguesianModel::x_zero() const {
  std::vector<std::pair<Elem, Elem>> xy;
  for (Elem b : basis->basis()) xy.emplace_back(0, b);
  return span(xy);
}

Subspace DesarguesianModel::y_equals(Elem a) const {
  std::vector<std::pair<Elem, Elem>> xy;
  for (Elem b : basis->basis()) xy.emplace_back(b, tower->mul(a, b));
  return span(xy);
}

std::vector<Subspace> DesarguesianModel::spread() const {
  std::vector<Subspace> out{x_zero()};
  for (Elem a : tower->subfield_elements(fdeg)) out.push_back(y_equals(a));
  return out;
}

DesarguesianModel desarguesian_model(const TowerPtr& tower, std::uint32_t kdeg, std::uint32_t fdeg) {
  DesarguesianModel m;
  m.tower = tower;
  m.kdeg = kdeg;
  m.fdeg = fdeg;
  m.K = Field::create(tower, kdeg);
  m.basis = std::make_shared<SubfieldBasis>(tower, kdeg, fdeg);
  const int n = static_cast<int>(m.basis->rank());
  const auto& b = m.basis->basis();
  Matrix g(2 * n, Vec(2 * n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Elem t = tower->trace(tower->mul(b[i], b[j]), fdeg, kdeg);
      g[i][n + j] = t;
      g[n + j][i] = tower->neg(t);
    }
  m.space = FormedSpace::symplectic(m.K, std::move(g));
  return m;
}

SubspaceFamily desarguesian_symplectic_spread(std::uint64_t q, int n) {
  require(n >= 1, "desarguesian spread needs n >= 1");
  const auto [p, e] = prime_power(q);
  auto model = desarguesian_model(tower_for(q, static_cast<std::uint32_t>(n)), e, e * static_cast<std::uint32_t>(n));
  SubspaceFamily fam;
  fam.space = model.space;
  fam.members = model.spread();
  const Params params{{"q", static_cast<std::int64_t>(q)}, {"n", n}};
  fam.provenance.push_back(step("construct", "desarg", params, "n >= 1", true));
  fam.expected_size = detail::expected_or_throw("desarg", params);
  fam.flavor = Flavor::Symplectic;
  return fam;
}

TransversalData transversal_data(std::uint64_t q, int m) {
  require(m >= 1, "transversal construction needs m >= 1");
  const auto [p, e] = prime_power(q);
  const std::uint32_t mm = static_cast<std::uint32_t>(m);
  auto tower = tower_for(q, 2 * mm);
  const std::uint32_t kdeg = e, edeg = e * mm, fdeg = 2 * e * mm;
  auto model = std::make_shared<DesarguesianModel>(desarguesian_model(tower, kdeg, fdeg));
  TransversalData d;
  d.model = model;
  d.theta = find_theta(*tower, kdeg, edeg, fdeg);
  d.sigma = model->spread();

  const auto E = tower->subfield_elements(edeg);
  std::set<Subspace> star;
  d.star.push_back(model->x_zero());
  for (Elem a : E) d.star.push_back(model->y_equals(tower->mul(a, d.theta)));
  star.insert(d.star.begin(), d.star.end());

  // Z_alpha = (alpha E, theta alpha E), t.i. exactly when alpha^2 lies in E
  SubfieldBasis eb(tower, kdeg, edeg);
  std::set<Subspace> seen;
  for (Elem alpha : tower->subfield_elements(fdeg)) {
    if (alpha == 0 || !tower->in_subfield(tower->mul(alpha, alpha), edeg)) continue;
    std::vector<std::pair<Elem, Elem>> xy;
    for (Elem b : eb.basis()) {
      const Elem x = tower->mul(alpha, b);
      xy.emplace_back(x, 0);
      xy.emplace_back(0, tower->mul(d.theta, x));
    }
    Subspace Z = model->span(xy);
    if (!seen.insert(Z).second) continue;
    if (!is_totally_isotropic(*model->space, Z)) throw FamilyError("transversal is not totally isotropic");
    d.transversals.push_back(Z);
    d.alphas.push_back(alpha);
  }
  const std::size_t want = detail::is_even(q) ? 1 : 2;
  if (d.transversals.size() != want)
    throw FamilyError("found " + std::to_string(d.transversals.size()) + " transversals, expected " +
                      std::to_string(want));

  SubspaceFamily& fam = d.family;
  fam.space = model->space;
  for (const auto& s : d.sigma)
    if (!star.count(s)) fam.members.push_back(s);
  for (const auto& z : d.transversals) fam.members.push_back(z);
  const Params params{{"q", static_cast<std::int64_t>(q)}, {"m", m}};
  fam.provenance.push_back(step("construct", "thm3.1", params, "m >= 1", true));
  fam.expected_size = detail::expected_or_throw("thm3.1", params);
  fam.flavor = Flavor::Symplectic;
  return d;
}

SubspaceFamily transversal_spread(std::uint64_t q, int m) { return transversal_data(q, m).family; }

namespace {

// Desarguesian Sp(4m-2) spread lifted through z^perp/z into O+(4m) over the
// degree-kdeg subfield of the tower.
std::vector<Subspace> lifted_spread(const TowerPtr& tower, std::uint32_t kdeg, int m, SpacePtr* space_out) {
  auto K = Field::create(tower, kdeg);
  auto V = FormedSpace::standard_hyperbolic(K, 2 * m);
  std::optional<Vec> z;
  for_each_point_of(*K, V->dim(), [&](const Vec& v) {
    if (V->quadratic(v) == 0) return true;
    z = v;
    return false;
  });
  Projection P(V, *z);
  auto model = desarguesian_model(tower, kdeg, kdeg * static_cast<std::uint32_t>(2 * m - 1));
  const LinearMap iso = isometry(*model.space, *P.quotient());
  std::vector<Subspace> out;
  for (const auto& s : model.spread()) out.push_back(lift_from_z(P, iso.apply(s), TsType::Same));
  *space_out = V;
  return out;
}

std::string descended_name(const std::string& source) {
  if (source == "prop4.1") return "thm4.3";
  if (source == "ex5.1") return "thm5.2i";
  return "descended";
}

std::string projected_name(const std::string& source) {
  if (source == "thm5.2i") return "thm6.2";
  if (source == "thm4.3" || source == "prop4.1") return "thm6.3";
  return "projected";
}

}  // namespace

SubspaceFamily orthogonal_spread(std::uint64_t q, int m) {
  require(detail::is_even(q), "orthogonal spread construction needs q even");
  require(m >= 1, "orthogonal spread construction needs m >= 1");
  const auto [p, e] = prime_power(q);
  auto tower = tower_for(q, static_cast<std::uint32_t>(2 * m - 1));
  SubspaceFamily fam;
  fam.members = lifted_spread(tower, e, m, &fam.space);
  const Params params{{"q", static_cast<std::int64_t>(q)}, {"m", m}};
  fam.provenance.push_back(step("construct", "prop4.1", params, "q even, m >= 2", m >= 2));
  fam.expected_size = detail::expected_or_throw("prop4.1", params);
  fam.flavor = Flavor::Orthogonal;
  return fam;
}

SubspaceFamily descend_family(const SubspaceFamily& fam, std::uint32_t small_degree) {
  Descent D(fam.space, small_degree);
  SubspaceFamily out;
  out.space = D.target();
  out.members.reserve(fam.members.size());
  for (const auto& s : fam.members) out.members.push_back(D.transport(s));
  out.provenance = fam.provenance;
  out.expected_size = fam.expected_size;
  out.flavor = fam.flavor;

  const std::string source = fam.provenance.empty() ? "" : fam.provenance.back().family;
  const auto& t = fam.space->field()->tower();
  const std::uint32_t big = fam.space->field()->degree();
  const std::int64_t k = big / small_degree;
  const std::int64_t q_small = detail::ipow(t.characteristic(), small_degree);
  const std::string name = descended_name(source);
  Params params{{"q", q_small}, {"k", k}};
  std::string window = "degree divides the source degree";
  bool in_window = true;
  if (name == "thm4.3") {
    const std::int64_t m = fam.provenance.back().params.at("m");
    params["m"] = m;
    window = "q even, m > (k+1)/2";
    in_window = 2 * m > k + 1;
  } else if (name == "thm5.2i") {
    window = "q even, k >= 1";
  }
  out.provenance.push_back(step("descend", name, params, window, in_window));
  if (auto e = expected_size(name, params)) out.expected_size = *e;
  return out;
}

SubspaceFamily descended_spread(std::uint64_t q, int m, int k) {
  require(k >= 1, "descent needs k >= 1");
  const auto [p, e] = prime_power(q);
  std::uint64_t qk = 1;
  for (int i = 0; i < k; ++i) qk *= q;
  return descend_family(orthogonal_spread(qk, m), e);
}

std::pair<SubspaceFamily, SubspaceFamily> folklore_pair(std::uint64_t q) {
  require(detail::is_even(q), "the folklore pair needs q even");
  auto tower = tower_for(q, 1);
  auto L = scalar_field(tower, q);
  Matrix c(4, Vec(4, 0));
  c[0][2] = 1;
  c[1][3] = 1;
  auto V = FormedSpace::orthogonal(L, SpaceKind::OrthogonalPlus, std::move(c));
  SubspaceFamily s;
  s.space = V;
  s.members.push_back(Subspace::span(L, 4, {unit_vector(4, 2), unit_vector(4, 3)}));
  for (Elem a : L->elements()) s.members.push_back(Subspace::span(L, 4, {Vec{1, 0, 0, a}, Vec{0, 1, a, 0}}));
  const Params params{{"q", static_cast<std::int64_t>(q)}};
  s.provenance.push_back(step("construct", "ex5.1", params, "q even", true));
  s.expected_size = detail::expected_or_throw("ex5.1", params);
  s.flavor = Flavor::Orthogonal;

  // x2 <-> y2 preserves Q and carries one ruling onto the other
  const LinearMap j(L, 4, 4, {unit_vector(4, 0), unit_vector(4, 3), unit_vector(4, 2), unit_vector(4, 1)});
  SubspaceFamily d;
  d.space = V;
  for (const auto& m : s.members) d.members.push_back(j.apply(m));
  d.provenance.push_back(step("construct", "ex5.1dagger", params, "q even", true));
  d.expected_size = s.expected_size;
  d.flavor = Flavor::Orthogonal;
  return {std::move(s), std::move(d)};
}

SubspaceFamily grassl_spread(std::uint64_t q, int k, int variant) {
  require(detail::is_even(q), "the Grassl families need q even");
  require(k >= 1, "the Grassl families need k >= 1");
  require(variant == 1 || variant == 2, "variant must be 1 (i) or 2 (ii)");
  const auto [p, e] = prime_power(q);
  std::uint64_t qk = 1;
  for (int i = 0; i < k; ++i) qk *= q;
  auto [sigma, dagger] = folklore_pair(qk);
  if (variant == 1) return descend_family(sigma, e);

  const FormedSpace& V = *sigma.space;
  const Subspace Z = sigma.members.front();
  std::vector<Subspace> members(sigma.members.begin() + 1, sigma.members.end());
  for (const auto& W : Z.points()) {
    const Subspace Wsp = Subspace::span(V.field(), 4, {W});
    const auto on_w = std::find_if(dagger.members.begin(), dagger.members.end(),
                                   [&](const Subspace& D) { return D.contains(W); });
    if (on_w == dagger.members.end()) throw FamilyError("no dagger member through a point of Z");
    std::optional<Subspace> pick;
    perp(V, Wsp).find_point([&](const Vec& w) {
      if (Wsp.contains(w)) return false;
      Subspace S = Subspace::span(V.field(), 4, {W, w});
      if (S == Z || S == *on_w) return false;
      pick = S;
      return true;
    });
    if (!pick) throw FamilyError("no replacement line through a point of Z");
    members.push_back(*pick);
  }
  Descent D(sigma.space, e);
  SubspaceFamily fam;
  fam.space = D.target();
  for (const auto& m : members) fam.members.push_back(D.transport(m));
  const Params params{{"q", static_cast<std::int64_t>(q)}, {"k", k}};
  fam.provenance.push_back(step("construct", "thm5.2ii", params, "q even, k >= 1", true));
  fam.expected_size = detail::expected_or_throw("thm5.2ii", params);
  fam.flavor = Flavor::Symplectic;
  return fam;
}

SubspaceFamily anchored_sum(const SpacePtr& space, const Subspace& X, const Subspace& Y,
                            const std::vector<Subspace>& sigma_x) {
  if (intersection_dim(X, Y) != 0) throw FamilyError("anchored sum: X and Y must be disjoint");
  SubspaceFamily fam;
  fam.space = space;
  for (const auto& A : sigma_x) {
    if (!X.contains(A)) throw FamilyError("anchored sum: member outside X");
    Subspace Ap = subspace_intersect(perp(*space, A), Y);
    if (Ap.dim() != A.dim()) throw FamilyError("anchored sum: A^perp ∩ Y has the wrong dimension");
    fam.members.push_back(subspace_sum(A, Ap));
  }
  fam.expected_size = static_cast<std::int64_t>(sigma_x.size());
  fam.flavor = space->has_quadratic() ? Flavor::Orthogonal : Flavor::Symplectic;
  return fam;
}

SubspaceFamily anchored_example(std::uint64_t q, int m) {
  require(m >= 1, "anchored example needs m >= 1");
  const auto [p, e] = prime_power(q);
  auto tower = tower_for(q, static_cast<std::uint32_t>(m));
  auto model = desarguesian_model(tower, e, e * static_cast<std::uint32_t>(m));
  auto K = model.K;
  auto V = FormedSpace::standard_symplectic(K, 2 * m);
  const int N = 4 * m;
  std::vector<Vec> xs, ys, images;
  for (int i = 0; i < 2 * m; ++i) {
    xs.push_back(unit_vector(N, 2 * i));
    ys.push_back(unit_vector(N, 2 * i + 1));
  }
  const LinearMap into_x(K, 2 * m, N, xs);
  std::vector<Subspace> sigma_x;
  for (const auto& s : model.spread()) sigma_x.push_back(into_x.apply(s));
  auto fam = anchored_sum(V, Subspace::span(K, N, xs), Subspace::span(K, N, ys), sigma_x);
  const Params params{{"q", static_cast<std::int64_t>(q)}, {"m", m}};
  fam.provenance.push_back(step("construct", "ex5.3", params, "m >= 1", true));
  fam.expected_size = detail::expected_or_throw("ex5.3", params);
  return fam;
}

SubspaceFamily sp6_line_replace(std::uint64_t q) {
  const auto [p, e] = prime_power(q);
  auto model = desarguesian_model(tower_for(q, 3), e, 3 * e);
  const FormedSpace& V = *model.space;
  const auto sigma = model.spread();
  const Subspace X = model.y_equals(0);
  const auto xpts = X.points();
  const Subspace L = Subspace::span(model.K, V.dim(), {xpts[0], xpts[1]});
  auto w = perp(V, L).find_point([&](const Vec& v) { return !X.contains(v); });
  if (!w) throw FamilyError("no t.i. plane through L other than X");
  std::vector<Vec> rows = L.rows();
  rows.push_back(*w);
  const Subspace U = Subspace::span(model.K, V.dim(), rows);
  if (!is_totally_isotropic(V, U)) throw FamilyError("replacement plane is not totally isotropic");

  SubspaceFamily fam;
  fam.space = model.space;
  std::size_t met = 0;
  for (const auto& s : sigma) {
    if (intersection_dim(s, U) != 0)
      ++met;
    else
      fam.members.push_back(s);
  }
  if (met != q * q + 1) throw FamilyError("the replacement plane meets " + std::to_string(met) + " members");
  fam.members.push_back(U);
  const Params params{{"q", static_cast<std::int64_t>(q)}};
  fam.provenance.push_back(step("construct", "thm8.1", params, "any q", true));
  fam.expected_size = detail::expected_or_throw("thm8.1", params);
  fam.flavor = Flavor::Symplectic;
  return fam;
}

SubspaceFamily project_family(const SubspaceFamily& fam, const std::optional<Vec>& z_in) {
  const FormedSpace& V = *fam.space;
  std::optional<Vec> z = z_in;
  if (!z) {
    for_each_point_of(*V.field(), V.dim(), [&](const Vec& v) {
      if (!V.has_quadratic() || V.quadratic(v) == 0) return true;
      z = v;
      return false;
    });
    if (!z) throw FamilyError("no nonsingular point to project from");
  }
  *z = normalized(*V.field(), *z);
  Projection P(fam.space, *z);
  SubspaceFamily out;
  out.space = P.quotient();
  for (const auto& m : fam.members) out.members.push_back(P.transport(m));
  out.provenance = fam.provenance;
  const std::string source = fam.provenance.empty() ? "" : fam.provenance.back().family;
  Params params{{"z", static_cast<std::int64_t>(vector_index(*V.field(), *z))}};
  const std::string name = projected_name(source);
  std::string window = "q even, z nonsingular";
  bool in_window = true;
  const Params& sp = fam.provenance.empty() ? Params{} : fam.provenance.back().params;
  auto param = [&](const char* key, std::int64_t dflt) {
    auto it = sp.find(key);
    return it == sp.end() ? dflt : it->second;
  };
  if (name == "thm6.2") {
    window = "q even, k >= 2";
    in_window = param("k", 1) >= 2;
  } else if (name == "thm6.3") {
    window = "q even, m > (k+1)/2";
    in_window = 2 * param("m", 1) > param("k", 1) + 1;
  }
  params.insert(sp.begin(), sp.end());
  out.provenance.push_back(step("project", name, params, window, in_window));
  out.expected_size = fam.expected_size;
  out.flavor = Flavor::Symplectic;
  return out;
}

SubspaceFamily triality_family(const PointFamily& fam) {
  Triality T(fam.space);
  SubspaceFamily out;
  out.space = fam.space;
  out.members = T.images(fam.points);
  out.provenance = fam.provenance;
  out.provenance.push_back(step("triality", "triality", {}, "O+(8,q)", true));
  out.expected_size = fam.expected_size;
  out.flavor = Flavor::Orthogonal;
  return out;
}

}  // namespace maxspread

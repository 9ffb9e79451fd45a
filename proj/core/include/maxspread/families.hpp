#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "maxspread/geometry.hpp"
#include "maxspread/search.hpp"

namespace maxspread {

class FamilyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Params = std::map<std::string, std::int64_t>;

// One step of the pipeline that produced a family. Steps are appended, never
// rewritten, so the list can be replayed.
struct ProvenanceStep {
  std::string op;      // construct, project, descend, triality
  std::string family;  // family id such as "thm3.1"
  Params params;
  std::map<std::string, std::string> tags;
  std::string window;  // parameter range where the maximality statement is proven
  bool in_window = true;
  bool operator==(const ProvenanceStep&) const = default;
};

struct SubspaceFamily {
  SpacePtr space;
  std::vector<Subspace> members;
  std::vector<ProvenanceStep> provenance;
  std::int64_t expected_size = -1;
  Flavor flavor = Flavor::Symplectic;  // the flavor the family is claimed for
};

struct PointFamily {
  SpacePtr space;
  std::vector<Vec> points;
  std::vector<ProvenanceStep> provenance;
  std::int64_t expected_size = -1;
  Flavor flavor = Flavor::Orthogonal;
};

using Family = std::variant<SubspaceFamily, PointFamily>;

// Tower GF(p^(e*mult)) for q = p^e, designated degrees {1, top}.
TowerPtr tower_for(std::uint64_t q, std::uint32_t mult);
// Scalar field GF(q) inside a tower.
FieldPtr scalar_field(const TowerPtr& tower, std::uint64_t q);

// ---------------------------------------------------------------------------
// Spreads

// K-space F^2 with f((x,y),(x',y')) = T(xy') - T(x'y), coordinates are the
// K-coordinates of x followed by those of y.
struct DesarguesianModel {
  TowerPtr tower;
  FieldPtr K;
  std::uint32_t kdeg = 0, fdeg = 0;
  std::shared_ptr<SubfieldBasis> basis;
  SpacePtr space;

  Vec vec(Elem x, Elem y) const;
  // K-span of the given (x, y) pairs
  Subspace span(const std::vector<std::pair<Elem, Elem>>& xy) const;
  Subspace x_zero() const;      // [x=0]
  Subspace y_equals(Elem a) const;  // [y=ax]
  // [x=0] followed by [y=ax] for a in index order
  std::vector<Subspace> spread() const;
};

DesarguesianModel desarguesian_model(const TowerPtr& tower, std::uint32_t kdeg, std::uint32_t fdeg);

SubspaceFamily desarguesian_symplectic_spread(std::uint64_t q, int n);

struct TransversalData {
  SubspaceFamily family;
  std::vector<Subspace> sigma;         // desarguesian spread
  std::vector<Subspace> star;          // members met by Z_star
  std::vector<Subspace> transversals;  // (alpha E, theta alpha E)
  std::vector<Elem> alphas;
  Elem theta = 0;
  std::shared_ptr<DesarguesianModel> model;
};

TransversalData transversal_data(std::uint64_t q, int m);
SubspaceFamily transversal_spread(std::uint64_t q, int m);

// O+(4m,q) spread lifted from the desarguesian Sp(4m-2,q) spread.
SubspaceFamily orthogonal_spread(std::uint64_t q, int m);
// The orthogonal spread over GF(q^k), viewed over GF(q) through the trace.
SubspaceFamily descended_spread(std::uint64_t q, int m, int k);
SubspaceFamily descend_family(const SubspaceFamily& fam, std::uint32_t small_degree);

// The two spreads of t.s. lines of O+(4,q), Q = x1 y1 + x2 y2 on
// (x1, x2, y1, y2); the second is the image of the first under the
// isometry (x1, x2, y1, y2) -> (x1, y2, y1, x2).
std::pair<SubspaceFamily, SubspaceFamily> folklore_pair(std::uint64_t q);
SubspaceFamily grassl_spread(std::uint64_t q, int k, int variant);

// {A + (A^perp ∩ Y) : A in sigma_x}
SubspaceFamily anchored_sum(const SpacePtr& space, const Subspace& X, const Subspace& Y,
                            const std::vector<Subspace>& sigma_x);
// anchored_sum in the standard Sp(4m,q) with X = <e_i>, Y = <f_i> and a
// desarguesian spread of X.
SubspaceFamily anchored_example(std::uint64_t q, int m);

SubspaceFamily sp6_line_replace(std::uint64_t q);

// Sigma/z at z, or at the first nonsingular point.
SubspaceFamily project_family(const SubspaceFamily& fam, const std::optional<Vec>& z = std::nullopt);
SubspaceFamily triality_family(const PointFamily& fam);

// ---------------------------------------------------------------------------
// Ovoids

// K + F + F + K with Q(a, beta, gamma, d) = ad + T(beta gamma), F = GF(q^3).
struct OvoidModel {
  TowerPtr tower;
  FieldPtr K;
  std::uint32_t kdeg = 0, fdeg = 0;
  std::shared_ptr<SubfieldBasis> basis;
  SpacePtr space;
  Elem pi = 0;

  Vec vec(Elem a, Elem beta, Elem gamma, Elem d) const;
  Elem T(Elem x) const;
  Elem N(Elem x) const;
  Elem frob(Elem x, std::uint32_t j) const;  // x^(q^j)
  std::vector<Vec> ovoid() const;            // <(0,0,0,1)>, then t in index order
};

OvoidModel ovoid_model(std::uint64_t q);
PointFamily desarguesian_ovoid(std::uint64_t q);

enum class RemovalScheme { A6i, A6ii };
std::string to_string(RemovalScheme s);
RemovalScheme removal_scheme_from_string(const std::string& s);

PointFamily ordinary_removal_set(std::uint64_t q, RemovalScheme scheme, int s);
// (Omega - a^perp ∩ Omega) + {a} for the first singular a outside Omega.
PointFamily lemma71_bullet(std::uint64_t q);
PointFamily orthovoid_bullet(std::uint64_t q, int s, RemovalScheme scheme);

struct OvoidSymmetries {
  std::vector<std::pair<Elem, LinearMap>> u;  // u_s for s in K
  LinearMap j;
};
OvoidSymmetries ovoid_symmetries(const OvoidModel& model);

// Elliptic quadric of U = A ⊥ <e3, f3> in the standard O+(8,q).
PointFamily elliptic_partial_ovoid(std::uint64_t q);
// Elliptic quadric of an O-(4,q) hyperplane of the parabolic section
// <e1, f1, e2, f2, e3 + f3> of the standard O+(8,q).
PointFamily o5_partial_ovoid(std::uint64_t q);

// Suzuki-Tits ovoid in the standard parabolic O(5,q), Q = x0^2 + x1x2 + x3x4,
// and its image in O+(8,q) under x0 -> e3 + f3, x1 -> e1, x2 -> f1,
// x3 -> e2, x4 -> f2.
struct SuzukiTitsModel {
  std::uint64_t q = 0;
  SpacePtr o5, o8;
  std::vector<Vec> omega5, omega8;
  LinearMap embedding;
  Subspace U;      // image of the 5-space
  Subspace Uperp;  // its perp in O+(8,q)
  Vec radical;     // e3 + f3
};

SuzukiTitsModel suzuki_tits_model(std::uint64_t q);
PointFamily suzuki_tits_ovoid(std::uint64_t q);
PointFamily suzuki_tits_partial_ovoid(std::uint64_t q);

PointFamily two_quadrics_ovoid(std::uint64_t q);
PointFamily st_pencil_replace(std::uint64_t q);
PointFamily st_section_replace(std::uint64_t q);
PointFamily st_circle_replace(std::uint64_t q, int s);

struct CircleData {
  Vec a, b;
  std::vector<Vec> centres;               // singular points of {a,b}^perp ∩ U
  std::vector<std::vector<Vec>> circles;  // x^perp ∩ Omega per centre
};
CircleData st_circles(const SuzukiTitsModel& model);

PointFamily conic_replace(std::uint64_t q, int s);
PointFamily three_lines(std::uint64_t q, int m);

// ---------------------------------------------------------------------------
// Catalogue

struct FamilyInfo {
  std::string id;
  std::string summary;
  std::vector<std::string> params;
  bool points = false;
};

const std::vector<FamilyInfo>& family_catalog();
// Builds a family by id. Out-of-window parameters are allowed; the
// provenance records whether they were inside the proven window.
Family build_family(const std::string& id, const Params& params);

}  // namespace maxspread

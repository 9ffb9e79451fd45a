#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "maxspread/linalg.hpp"

namespace maxspread {

class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when a requested computation exceeds the desk-scale guards.
class OutOfScale : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class SpaceKind { Symplectic, OrthogonalPlus, OrthogonalMinus, Parabolic };
enum class TsType { Same, Other };

std::string to_string(SpaceKind k);
SpaceKind space_kind_from_string(const std::string& s);
std::string to_string(TsType t);

using Matrix = std::vector<Vec>;

// A vector space over a subfield of a tower carrying an alternating form
// (symplectic) or a quadratic form. Quadratic forms are stored as
// upper-triangular coefficient matrices c with Q(x) = sum_{i<=j} c_ij x_i x_j;
// the Gram matrix is then the polarization.
class FormedSpace {
 public:
  static std::shared_ptr<const FormedSpace> symplectic(FieldPtr F, Matrix gram);
  static std::shared_ptr<const FormedSpace> orthogonal(FieldPtr F, SpaceKind kind, Matrix quad);

  // Sp(2n,q) on hyperbolic pairs (e_1,f_1,...,e_n,f_n).
  static std::shared_ptr<const FormedSpace> standard_symplectic(FieldPtr F, int n);
  // O+(2n,q), Q = x1x2 + x3x4 + ... (1-based).
  static std::shared_ptr<const FormedSpace> standard_hyperbolic(FieldPtr F, int n);
  // O(2n+1,q), Q = x0^2 + x1x2 + ... + x_{2n-1}x_{2n}.
  static std::shared_ptr<const FormedSpace> standard_parabolic(FieldPtr F, int n);
  // O-(2n,q), Q = (anisotropic binary form on x1,x2) + x3x4 + ...
  static std::shared_ptr<const FormedSpace> standard_elliptic(FieldPtr F, int n);

  const FieldPtr& field() const { return field_; }
  int dim() const { return dim_; }
  SpaceKind kind() const { return kind_; }
  bool has_quadratic() const { return !quad_.empty(); }
  const Matrix& gram() const { return gram_; }
  const Matrix& quadratic_matrix() const { return quad_; }
  bool operator==(const FormedSpace& o) const;

  Elem bilinear(const Vec& u, const Vec& v) const;
  Elem quadratic(const Vec& v) const;
  // Row r with B(v, x) = <r, x> for all x.
  Vec polar(const Vec& v) const;
  bool singular(const Vec& v) const;

  // Dimension of the maximal totally isotropic / singular subspaces.
  int max_isotropic_dim() const;
  // Reference maximal subspace M0 used for type comparisons.
  const Subspace& reference() const;

  // Singular points (every point for symplectic spaces), sorted by index.
  const std::vector<Vec>& singular_points() const;
  std::uint64_t singular_point_count() const;

  std::string describe() const;

 private:
  FormedSpace() = default;
  void finish();

  FieldPtr field_;
  int dim_ = 0;
  SpaceKind kind_ = SpaceKind::Symplectic;
  Matrix gram_;
  Matrix quad_;
  struct Term {
    int i, j;
    Elem c;
  };
  std::vector<Term> gram_terms_;
  std::vector<Term> quad_terms_;
  bool standard_ = false;
  mutable std::once_flag ref_once_, pts_once_;
  mutable Subspace reference_;
  mutable std::vector<Vec> singular_points_;
};

using SpacePtr = std::shared_ptr<const FormedSpace>;

// Upper bound on the number of points we are willing to enumerate.
constexpr std::uint64_t kMaxEnumeratedPoints = std::uint64_t{1} << 26;

Subspace perp(const FormedSpace& V, const Subspace& A);
bool is_totally_isotropic(const FormedSpace& V, const Subspace& A);
bool is_totally_singular(const FormedSpace& V, const Subspace& A);
TsType ts_type(const FormedSpace& V, const Subspace& W);
std::vector<Vec> singular_points_of(const FormedSpace& V, const Subspace& U);

// Hyperbolic basis (e_i, f_i) with B(e_i,f_j) = delta_ij, all e,f singular
// (or merely isotropic for symplectic spaces). Deterministic.
std::vector<std::pair<Vec, Vec>> witt_basis(const FormedSpace& V);
// Isometry A -> B between two symplectic or two hyperbolic spaces of equal
// dimension over the same field, matching Witt bases.
LinearMap isometry(const FormedSpace& A, const FormedSpace& B);
// Checks that images of the basis of `small` span an isometric copy in `big`.
LinearMap embed(const FormedSpace& small, const FormedSpace& big, std::vector<Vec> images);

// First 2-subspace of U (scan order) without nonzero singular vectors.
std::optional<Subspace> find_anisotropic_plane(const FormedSpace& V, const Subspace& U);

// Restriction of scalars L -> K with Q' = T o Q (or f' = T o f). The
// K-basis of L is the SubfieldBasis of powers of L's generator.
class Descent {
 public:
  Descent(SpacePtr source, std::uint32_t small_degree);
  const SpacePtr& source() const { return source_; }
  const SpacePtr& target() const { return target_; }
  Vec map_vector(const Vec& v) const;
  Subspace transport(const Subspace& s) const;
  const SubfieldBasis& basis() const { return *basis_; }

 private:
  SpacePtr source_, target_;
  std::shared_ptr<SubfieldBasis> basis_;
  std::uint32_t small_degree_;
};

// z^perp / z for a nonsingular point z of an orthogonal space, q even.
class Projection {
 public:
  Projection(SpacePtr space, const Vec& z);
  const SpacePtr& parent() const { return parent_; }
  const SpacePtr& quotient() const { return quotient_; }
  const Vec& z() const { return z_; }
  const std::vector<Vec>& complement() const { return complement_; }
  // X -> <z^perp ∩ X, z>/z
  Subspace transport(const Subspace& X) const;
  // Full preimage of a quotient subspace.
  Subspace preimage(const Subspace& ubar) const;

 private:
  SpacePtr parent_, quotient_;
  Vec z_;
  Subspace zperp_;
  std::vector<Vec> complement_;
  std::shared_ptr<QuotientCoords> coords_;
};

// Unique maximal totally singular subspace of the given type containing the
// Q-kernel of the preimage of ubar (ubar totally isotropic, of dimension n-1).
Subspace lift_from_z(const Projection& P, const Subspace& ubar, TsType target);

// The 5-space p12 + p34 = 0 of the Klein quadric, coordinates
// (p12, p13, p14, p23, p24), Q = -p12^2 - p13 p24 + p14 p23.
SpacePtr klein_space(FieldPtr F);
// Klein image of a totally isotropic line of the standard Sp(4,q).
Vec klein_point_of_line(const Subspace& line);

}  // namespace maxspread

#pragma once

#include <array>
#include <vector>

#include "maxspread/geometry.hpp"

namespace maxspread {

// Zorn vector matrix [[a, v], [w, b]] over a finite field.
struct Octonion {
  Elem a = 0;
  std::array<Elem, 3> v{};
  std::array<Elem, 3> w{};
  Elem b = 0;
  bool operator==(const Octonion&) const = default;
};

// Flattening (a, v1, v2, v3, w1, w2, w3, b).
Vec flatten(const Octonion& x);
Octonion unflatten(const Vec& x);

Octonion zorn_mul(const Field& F, const Octonion& x, const Octonion& y);
Elem zorn_norm(const Field& F, const Octonion& x);
Octonion zorn_identity();

// O+(8,q) on the flattened coordinates with Q = ab - v.w.
SpacePtr zorn_space(FieldPtr F);

// xO for a singular point x of the Zorn space: a totally singular 4-space.
Subspace triality_image(const FormedSpace& zorn, const Vec& x);

// Maps points of any O+(8,q) space to their triality images inside the
// same space, going through a fixed isometry with the Zorn space.
class Triality {
 public:
  explicit Triality(SpacePtr space);
  const SpacePtr& space() const { return space_; }
  Subspace image(const Vec& p) const;
  std::vector<Subspace> images(const std::vector<Vec>& points) const;

 private:
  SpacePtr space_, zorn_;
  LinearMap to_zorn_, from_zorn_;
};

}  // namespace maxspread

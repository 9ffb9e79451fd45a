#include <functional>

#include "maxspread/families.hpp"

namespace maxspread {

namespace {

struct Entry {
  FamilyInfo info;
  std::function<Family(const Params&)> build;
};

std::int64_t need(const Params& p, const std::string& key) {
  auto it = p.find(key);
  if (it == p.end()) throw FamilyError("missing parameter --" + key);
  return it->second;
}

std::int64_t opt(const Params& p, const std::string& key, std::int64_t dflt) {
  auto it = p.find(key);
  return it == p.end() ? dflt : it->second;
}

std::uint64_t Q(const Params& p) {
  const auto q = need(p, "q");
  if (q < 2) throw FamilyError("q must be a prime power >= 2");
  return static_cast<std::uint64_t>(q);
}

int I(const Params& p, const std::string& key) { return static_cast<int>(need(p, key)); }

RemovalScheme scheme_of(const Params& p) {
  const auto v = opt(p, "scheme", 0);
  if (v != 0 && v != 1) throw FamilyError("scheme must be 0 (A6i) or 1 (A6ii)");
  return v == 0 ? RemovalScheme::A6i : RemovalScheme::A6ii;
}

const std::vector<Entry>& entries() {
  static const std::vector<Entry> list = [] {
    std::vector<Entry> e;
    auto add = [&](std::string id, std::string summary, std::vector<std::string> params, bool points,
                   std::function<Family(const Params&)> fn) {
      e.push_back({FamilyInfo{std::move(id), std::move(summary), std::move(params), points}, std::move(fn)});
    };
    add("desarg", "desarguesian symplectic spread of Sp(2n,q)", {"q", "n"}, false,
        [](const Params& p) { return Family{desarguesian_symplectic_spread(Q(p), I(p, "n"))}; });
    add("thm3.1", "transversal replacement in Sp(4m,q)", {"q", "m"}, false,
        [](const Params& p) { return Family{transversal_spread(Q(p), I(p, "m"))}; });
    add("prop4.1", "O+(4m,q) spread lifted from Sp(4m-2,q), q even", {"q", "m"}, false,
        [](const Params& p) { return Family{orthogonal_spread(Q(p), I(p, "m"))}; });
    add("thm4.3", "orthogonal spread over GF(q^k) descended to GF(q)", {"q", "m", "k"}, false,
        [](const Params& p) { return Family{descended_spread(Q(p), I(p, "m"), I(p, "k"))}; });
    add("ex5.1", "one of the two line spreads of O+(4,q)", {"q"}, false,
        [](const Params& p) { return Family{folklore_pair(Q(p)).first}; });
    add("ex5.1dagger", "the other line spread of O+(4,q)", {"q"}, false,
        [](const Params& p) { return Family{folklore_pair(Q(p)).second}; });
    add("thm5.2i", "line spread of O+(4,q^k) descended to Sp(4k,q)", {"q", "k"}, false,
        [](const Params& p) { return Family{grassl_spread(Q(p), I(p, "k"), 1)}; });
    add("thm5.2ii", "one member replaced by q^k+1 lines through its points", {"q", "k"}, false,
        [](const Params& p) { return Family{grassl_spread(Q(p), I(p, "k"), 2)}; });
    add("ex5.3", "anchored sum A + (A^perp ∩ Y) over a spread of X in Sp(4m,q)", {"q", "m"}, false,
        [](const Params& p) { return Family{anchored_example(Q(p), I(p, "m"))}; });
    add("thm6.2", "thm5.2i projected from a nonsingular point", {"q", "k"}, false,
        [](const Params& p) { return Family{project_family(grassl_spread(Q(p), I(p, "k"), 1))}; });
    add("thm6.3", "prop4.1 (k=1) or thm4.3 projected from a nonsingular point", {"q", "m", "k"}, false,
        [](const Params& p) {
          const int k = static_cast<int>(opt(p, "k", 1));
          return Family{project_family(k == 1 ? orthogonal_spread(Q(p), I(p, "m"))
                                             : descended_spread(Q(p), I(p, "m"), k))};
        });
    add("thm8.1", "Sp(6,q) spread with the members meeting a t.i. plane replaced", {"q"}, false,
        [](const Params& p) { return Family{sp6_line_replace(Q(p))}; });

    add("appA", "desarguesian ovoid of O+(8,q), q even > 2", {"q"}, true,
        [](const Params& p) { return Family{desarguesian_ovoid(Q(p))}; });
    add("exA.6", "ordinary removal points (scheme 0 = A6i, 1 = A6ii)", {"q", "s", "scheme"}, true,
        [](const Params& p) { return Family{ordinary_removal_set(Q(p), scheme_of(p), I(p, "s"))}; });
    add("thm7.2", "ovoid with one perp section swapped for its pole", {"q"}, true,
        [](const Params& p) { return Family{lemma71_bullet(Q(p))}; });
    add("thm7.3", "ovoid with s perp sections swapped for their poles", {"q", "s", "scheme"}, true,
        [](const Params& p) { return Family{orthovoid_bullet(Q(p), I(p, "s"), scheme_of(p))}; });
    add("ex7.4", "elliptic quadric of an O-(4,q) subspace of O+(8,q)", {"q"}, true,
        [](const Params& p) { return Family{elliptic_partial_ovoid(Q(p))}; });
    add("lemma7.5", "elliptic quadric inside a parabolic section of O+(8,q)", {"q"}, true,
        [](const Params& p) { return Family{o5_partial_ovoid(Q(p))}; });
    add("st5", "Suzuki-Tits ovoid of O(5,q)", {"q"}, true,
        [](const Params& p) { return Family{suzuki_tits_ovoid(Q(p))}; });
    add("st", "Suzuki-Tits ovoid embedded in O+(8,q)", {"q"}, true,
        [](const Params& p) { return Family{suzuki_tits_partial_ovoid(Q(p))}; });
    add("lemma7.8", "two elliptic quadrics glued along a t.s. line", {"q"}, true,
        [](const Params& p) { return Family{two_quadrics_ovoid(Q(p))}; });
    add("thm7.10", "Suzuki-Tits point replaced by a pencil", {"q"}, true,
        [](const Params& p) { return Family{st_pencil_replace(Q(p))}; });
    add("thm7.11", "Suzuki-Tits circle replaced by its pole", {"q"}, true,
        [](const Params& p) { return Family{st_section_replace(Q(p))}; });
    add("thm7.12", "s Suzuki-Tits circles replaced by their poles", {"q", "s"}, true,
        [](const Params& p) { return Family{st_circle_replace(Q(p), I(p, "s"))}; });
    add("thm9.1", "conic replacement in an elliptic quadric of O(5,q)", {"q", "s"}, true,
        [](const Params& p) { return Family{conic_replace(Q(p), I(p, "s"))}; });
    add("ex9.2", "three open lines plus two points in Sp(2m,q)", {"q", "m"}, true,
        [](const Params& p) { return Family{three_lines(Q(p), static_cast<int>(opt(p, "m", 2)))}; });
    return e;
  }();
  return list;
}

}  // namespace

const std::vector<FamilyInfo>& family_catalog() {
  static const std::vector<FamilyInfo> infos = [] {
    std::vector<FamilyInfo> v;
    for (const auto& e : entries()) v.push_back(e.info);
    return v;
  }();
  return infos;
}

Family build_family(const std::string& id, const Params& params) {
  for (const auto& e : entries())
    if (e.info.id == id) return e.build(params);
  throw FamilyError("unknown family id '" + id + "'");
}

}  // namespace maxspread

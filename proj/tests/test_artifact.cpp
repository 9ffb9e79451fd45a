#include "doctest.h"
#include "json.hpp"
#include "maxspread/artifact.hpp"

using namespace maxspread;

namespace {

const std::vector<std::pair<std::string, Params>>& cases() {
  static const std::vector<std::pair<std::string, Params>> c{
      {"thm3.1", {{"q", 3}, {"m", 1}}},
      {"thm5.2ii", {{"q", 2}, {"k", 2}}},
      {"thm6.3", {{"q", 2}, {"m", 2}, {"k", 1}}},
      {"appA", {{"q", 4}}},
      {"thm7.3", {{"q", 8}, {"s", 1}, {"scheme", 0}}},
      {"thm9.1", {{"q", 5}, {"s", 2}}},
      {"ex9.2", {{"q", 4}, {"m", 3}}},
      {"st", {{"q", 8}}},
  };
  return c;
}

}  // namespace

TEST_CASE("save/load round trip is byte-identical") {
  for (const auto& [id, p] : cases()) {
    CAPTURE(id);
    Artifact a{build_family(id, p), {}};
    const std::string text = save_artifact(a);
    CHECK(text.back() == '\n');
    const Artifact b = load_artifact(text);
    CHECK(save_artifact(b) == text);
    CHECK(family_size(b.family) == family_size(a.family));
    CHECK(family_provenance(b.family) == family_provenance(a.family));
    CHECK(*family_space(b.family) == *family_space(a.family));
  }
}

TEST_CASE("certificate records survive a round trip") {
  auto fam = std::get<SubspaceFamily>(build_family("thm3.1", {{"q", 2}, {"m", 1}}));
  fam.members.pop_back();
  const auto c = check_maximal_spread(fam, Flavor::Symplectic);
  REQUIRE(c.verdict == Verdict::Extendable);
  Artifact a{fam, {make_record("maximal", c)}};
  CHECK(a.certificates[0].verdict == "extendable");
  CHECK(a.certificates[0].witness == c.witness_subspace->rows());
  const Artifact b = load_artifact(save_artifact(a));
  REQUIRE(b.certificates.size() == 1);
  CHECK(b.certificates[0] == a.certificates[0]);
}

TEST_CASE("descending the GF(4) line spread reproduces the GF(2) construction") {
  const auto src = std::get<SubspaceFamily>(build_family("ex5.1", {{"q", 4}}));
  const auto down = descend_family(src, 1);
  const auto direct = build_family("thm5.2i", {{"q", 2}, {"k", 2}});
  CHECK(save_artifact({down, {}}) == save_artifact({direct, {}}));
}

TEST_CASE("chained provenance is append-only") {
  const auto src = std::get<SubspaceFamily>(build_family("prop4.1", {{"q", 2}, {"m", 2}}));
  const auto proj = project_family(src);
  REQUIRE(proj.provenance.size() == src.provenance.size() + 1);
  CHECK(std::equal(src.provenance.begin(), src.provenance.end(), proj.provenance.begin()));
  CHECK(proj.provenance.back().op == "project");
  CHECK(proj.members.size() == 9);
  // replaying the recorded pipeline gives the same artifact
  CHECK(save_artifact({project_family(std::get<SubspaceFamily>(build_family("prop4.1", {{"q", 2}, {"m", 2}}))), {}}) ==
        save_artifact({proj, {}}));

  const auto ovoid = std::get<PointFamily>(build_family("appA", {{"q", 4}}));
  const auto spread = triality_family(ovoid);
  CHECK(spread.members.size() == 65);
  CHECK(spread.provenance.back().op == "triality");
  CHECK(is_partial_spread(spread, Flavor::Orthogonal));
}

TEST_CASE("malformed artifacts are rejected") {
  const std::string good = save_artifact({build_family("thm3.1", {{"q", 2}, {"m", 1}}), {}});
  auto j = nlohmann::json::parse(good);

  CHECK_THROWS_AS(load_artifact("not json"), ArtifactError);
  {
    auto k = j;
    k["format"] = "other";
    CHECK_THROWS_AS(load_artifact(k.dump()), ArtifactError);
  }
  {
    auto k = j;
    k["version"] = 99;
    CHECK_THROWS_AS(load_artifact(k.dump()), ArtifactError);
  }
  {
    auto k = j;
    k["members"]["list"][0][0][0] = 7;  // not an element of GF(2)
    CHECK_THROWS_AS(load_artifact(k.dump()), ArtifactError);
  }
  {
    auto k = j;
    auto& rows = k["members"]["list"][0];
    std::swap(rows[0], rows[1]);
    CHECK_THROWS_AS(load_artifact(k.dump()), ArtifactError);
  }
  {
    auto k = j;
    k["space"]["gram"][0][0] = 1;
    CHECK_THROWS_AS(load_artifact(k.dump()), ArtifactError);
  }
  {
    auto k = j;
    k.erase("members");
    CHECK_THROWS_AS(load_artifact(k.dump()), ArtifactError);
  }
  CHECK_THROWS_AS(read_artifact("/nonexistent/artifact.json"), ArtifactError);
}

TEST_CASE("file round trip") {
  const Artifact a{build_family("ex7.4", {{"q", 3}}), {}};
  const std::string path = "test_artifact_roundtrip.json";
  write_artifact(path, a);
  CHECK(save_artifact(read_artifact(path)) == save_artifact(a));
  std::remove(path.c_str());
}

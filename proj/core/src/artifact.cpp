#include "maxspread/artifact.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace maxspread {

using json = nlohmann::json;

namespace {

json field_json(const FieldTower& t) {
  return json{{"p", t.characteristic()},
              {"d", t.degree()},
              {"polynomial", t.polynomial()},
              {"designated", t.designated()}};
}

json matrix_json(const Matrix& m) {
  json a = json::array();
  for (const auto& row : m) a.push_back(row);
  return a;
}

json space_json(const FormedSpace& V) {
  return json{{"kind", to_string(V.kind())},
              {"dim", V.dim()},
              {"field_degree", V.field()->degree()},
              {"gram", matrix_json(V.gram())},
              {"quadratic", matrix_json(V.quadratic_matrix())}};
}

json step_json(const ProvenanceStep& s) {
  return json{{"op", s.op},         {"family", s.family}, {"params", s.params},
              {"tags", s.tags},     {"window", s.window}, {"in_window", s.in_window}};
}

json cert_json(const CertificateRecord& c) {
  json w = json::array();
  for (const auto& v : c.witness) w.push_back(v);
  return json{{"check", c.check},   {"flavor", to_string(c.flavor)},
              {"verdict", c.verdict}, {"method", c.method},
              {"witness", w},       {"nodes", c.nodes},
              {"pruned", c.pruned}, {"candidates", c.candidates},
              {"seconds", c.seconds}, {"engine", c.engine},
              {"seed", c.seed}};
}

Vec vec_from(const json& j, const Field& F, int dim) {
  Vec v = j.get<Vec>();
  if (static_cast<int>(v.size()) != dim) throw ArtifactError("vector of wrong length");
  for (Elem x : v)
    if (!F.contains(x)) throw ArtifactError("element " + std::to_string(x) + " outside the field");
  return v;
}

Matrix matrix_from(const json& j, const Field& F, int dim) {
  Matrix m;
  for (const auto& row : j) m.push_back(vec_from(row, F, dim));
  return m;
}

SpacePtr space_from(const json& f, const json& s) {
  const auto p = f.at("p").get<std::uint32_t>();
  auto tower = FieldTower::from_polynomial(p, f.at("polynomial").get<std::vector<std::uint32_t>>(),
                                           f.at("designated").get<std::vector<std::uint32_t>>());
  if (tower->degree() != f.at("d").get<std::uint32_t>()) throw ArtifactError("field degree mismatch");
  auto F = Field::create(tower, s.at("field_degree").get<std::uint32_t>());
  const int dim = s.at("dim").get<int>();
  const SpaceKind kind = space_kind_from_string(s.at("kind").get<std::string>());
  SpacePtr V;
  if (kind == SpaceKind::Symplectic)
    V = FormedSpace::symplectic(F, matrix_from(s.at("gram"), *F, dim));
  else
    V = FormedSpace::orthogonal(F, kind, matrix_from(s.at("quadratic"), *F, dim));
  if (V->gram() != matrix_from(s.at("gram"), *F, dim)) throw ArtifactError("stored gram disagrees with the form");
  return V;
}

}  // namespace

CertificateRecord make_record(const std::string& check, const MaximalityCertificate& c) {
  CertificateRecord r;
  r.check = check;
  r.flavor = c.flavor;
  r.verdict = to_string(c.verdict);
  r.method = c.method;
  if (c.witness_subspace) r.witness = c.witness_subspace->rows();
  if (c.witness_point) r.witness = {*c.witness_point};
  r.nodes = c.nodes;
  r.pruned = c.pruned;
  r.candidates = c.candidates;
  r.seconds = c.seconds;
  return r;
}

const SpacePtr& family_space(const Family& f) {
  return std::visit([](const auto& x) -> const SpacePtr& { return x.space; }, f);
}

const std::vector<ProvenanceStep>& family_provenance(const Family& f) {
  return std::visit([](const auto& x) -> const std::vector<ProvenanceStep>& { return x.provenance; }, f);
}

std::size_t family_size(const Family& f) {
  if (auto* s = std::get_if<SubspaceFamily>(&f)) return s->members.size();
  return std::get<PointFamily>(f).points.size();
}

std::int64_t family_expected(const Family& f) {
  return std::visit([](const auto& x) { return x.expected_size; }, f);
}

std::string describe_field(const FieldTower& tower) { return field_json(tower).dump(); }
std::string describe_space(const FormedSpace& space) { return space_json(space).dump(); }

std::string save_artifact(const Artifact& a) {
  const FormedSpace& V = *family_space(a.family);
  json prov = json::array();
  for (const auto& s : family_provenance(a.family)) prov.push_back(step_json(s));
  json members = json::array();
  std::string type;
  Flavor flavor;
  if (auto* s = std::get_if<SubspaceFamily>(&a.family)) {
    type = "subspaces";
    flavor = s->flavor;
    for (const auto& m : s->members) members.push_back(matrix_json(m.rows()));
  } else {
    const auto& p = std::get<PointFamily>(a.family);
    type = "points";
    flavor = p.flavor;
    for (const auto& v : p.points) members.push_back(v);
  }
  json certs = json::array();
  for (const auto& c : a.certificates) certs.push_back(cert_json(c));
  json j{{"format", "maxspread-artifact"},
         {"version", kArtifactVersion},
         {"field", field_json(V.field()->tower())},
         {"space", space_json(V)},
         {"provenance", prov},
         {"expected_size", family_expected(a.family)},
         {"flavor", to_string(flavor)},
         {"members", json{{"type", type}, {"list", members}}},
         {"certificates", certs}};
  return j.dump(2) + "\n";
}

Artifact load_artifact(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ArtifactError(std::string("artifact is not valid JSON: ") + e.what());
  }
  try {
    if (j.at("format") != "maxspread-artifact") throw ArtifactError("not a maxspread artifact");
    if (j.at("version").get<int>() != kArtifactVersion) throw ArtifactError("unsupported artifact version");
    SpacePtr V = space_from(j.at("field"), j.at("space"));
    const Field& F = *V->field();
    std::vector<ProvenanceStep> prov;
    for (const auto& s : j.at("provenance")) {
      ProvenanceStep st;
      st.op = s.at("op").get<std::string>();
      st.family = s.at("family").get<std::string>();
      st.params = s.at("params").get<Params>();
      st.tags = s.at("tags").get<std::map<std::string, std::string>>();
      st.window = s.at("window").get<std::string>();
      st.in_window = s.at("in_window").get<bool>();
      prov.push_back(std::move(st));
    }
    const Flavor flavor = flavor_from_string(j.at("flavor").get<std::string>());
    const auto expected = j.at("expected_size").get<std::int64_t>();
    const auto& mem = j.at("members");
    Artifact a;
    if (mem.at("type") == "subspaces") {
      SubspaceFamily fam{V, {}, std::move(prov), expected, flavor};
      for (const auto& m : mem.at("list")) {
        Matrix rows = matrix_from(m, F, V->dim());
        Subspace S = Subspace::span(V->field(), V->dim(), rows);
        if (S.rows() != rows) throw ArtifactError("member is not in reduced echelon form");
        fam.members.push_back(std::move(S));
      }
      a.family = std::move(fam);
    } else if (mem.at("type") == "points") {
      PointFamily fam{V, {}, std::move(prov), expected, flavor};
      for (const auto& p : mem.at("list")) fam.points.push_back(vec_from(p, F, V->dim()));
      a.family = std::move(fam);
    } else {
      throw ArtifactError("unknown member type");
    }
    for (const auto& c : j.at("certificates")) {
      CertificateRecord r;
      r.check = c.at("check").get<std::string>();
      r.flavor = flavor_from_string(c.at("flavor").get<std::string>());
      r.verdict = c.at("verdict").get<std::string>();
      r.method = c.at("method").get<std::string>();
      for (const auto& w : c.at("witness")) r.witness.push_back(vec_from(w, F, V->dim()));
      r.nodes = c.at("nodes").get<std::uint64_t>();
      r.pruned = c.at("pruned").get<std::uint64_t>();
      r.candidates = c.at("candidates").get<std::uint64_t>();
      r.seconds = c.at("seconds").get<double>();
      r.engine = c.at("engine").get<std::string>();
      r.seed = c.at("seed").get<std::uint64_t>();
      a.certificates.push_back(std::move(r));
    }
    return a;
  } catch (const json::exception& e) {
    throw ArtifactError(std::string("malformed artifact: ") + e.what());
  } catch (const ArtifactError&) {
    throw;
  } catch (const std::runtime_error& e) {
    // inconsistent field or form data
    throw ArtifactError(std::string("invalid artifact: ") + e.what());
  }
}

void write_artifact(const std::string& path, const Artifact& a) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ArtifactError("cannot write " + path);
  out << save_artifact(a);
  if (!out) throw ArtifactError("write failed for " + path);
}

Artifact read_artifact(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ArtifactError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_artifact(ss.str());
}

}  // namespace maxspread

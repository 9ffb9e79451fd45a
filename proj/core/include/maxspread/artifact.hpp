#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "maxspread/families.hpp"
#include "maxspread/verify.hpp"

namespace maxspread {

class ArtifactError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

constexpr int kArtifactVersion = 1;
constexpr const char* kEngineVersion = "maxspread-0.1";

// One verification run attached to an artifact.
struct CertificateRecord {
  std::string check;  // partial, maximal, complete
  Flavor flavor = Flavor::Symplectic;
  std::string verdict;
  std::string method;
  std::vector<Vec> witness;  // basis rows, or a single point
  std::uint64_t nodes = 0, pruned = 0, candidates = 0;
  double seconds = 0;
  std::string engine = kEngineVersion;
  std::uint64_t seed = 0;
  bool operator==(const CertificateRecord&) const = default;
};

CertificateRecord make_record(const std::string& check, const MaximalityCertificate& c);

struct Artifact {
  Family family;
  std::vector<CertificateRecord> certificates;
};

// Canonical text: sorted keys, two-space indent, trailing newline.
std::string save_artifact(const Artifact& a);
Artifact load_artifact(const std::string& text);

void write_artifact(const std::string& path, const Artifact& a);
Artifact read_artifact(const std::string& path);

// Field, space and family descriptors as standalone JSON text.
std::string describe_field(const FieldTower& tower);
std::string describe_space(const FormedSpace& space);

const SpacePtr& family_space(const Family& f);
const std::vector<ProvenanceStep>& family_provenance(const Family& f);
std::size_t family_size(const Family& f);
std::int64_t family_expected(const Family& f);

}  // namespace maxspread

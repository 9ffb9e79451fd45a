#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "ops.hpp"

using namespace maxspread;
using namespace maxspread::tools;

namespace {

struct ParamFlags {
  std::optional<std::int64_t> q, m, k, n, s;
  std::string scheme;

  void attach(CLI::App* app) {
    app->add_option("--q", q, "field order");
    app->add_option("--m", m);
    app->add_option("--k", k);
    app->add_option("--n", n);
    app->add_option("--s", s);
    app->add_option("--scheme", scheme, "removal scheme: A6i or A6ii");
  }

  Params params() const {
    Params p;
    if (q) p["q"] = *q;
    if (m) p["m"] = *m;
    if (k) p["k"] = *k;
    if (n) p["n"] = *n;
    if (s) p["s"] = *s;
    if (!scheme.empty()) p["scheme"] = removal_scheme_from_string(scheme) == RemovalScheme::A6i ? 0 : 1;
    return p;
  }
};

struct CheckFlags {
  unsigned jobs = 1;
  double budget = 0;
  std::uint64_t nodes = 0;

  void attach(CLI::App* app) {
    app->add_option("--jobs", jobs, "search workers")->check(CLI::Range(1u, 64u));
    app->add_option("--budget", budget, "time budget in seconds, 0 for none");
    app->add_option("--node-budget", nodes, "search node budget, 0 for none");
  }

  CheckOptions options() const { return CheckOptions{jobs, budget, nodes}; }
};

void print_summary(const Family& fam) {
  const auto& prov = family_provenance(fam);
  const auto& last = prov.back();
  std::cout << last.family << " " << format_params(last.params) << " size=" << family_size(fam)
            << " expected=" << family_expected(fam) << " space=" << family_space(fam)->describe()
            << (last.in_window ? "" : " exploratory") << "\n";
}

int save_or_print(const Artifact& a, const std::string& out) {
  if (out.empty() || out == "-")
    std::cout << save_artifact(a);
  else
    write_artifact(out, a);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Construct and verify maximal partial spreads and partial ovoids."};
  app.require_subcommand(1);
  int code = kOk;

  // construct
  auto* construct = app.add_subcommand("construct", "build a family by id and write an artifact");
  std::string c_id, c_out;
  bool c_exploratory = false;
  ParamFlags c_params;
  construct->add_option("id", c_id, "family id (see 'list')")->required();
  construct->add_option("-o,--output", c_out, "artifact path, '-' for stdout");
  construct->add_flag("--exploratory", c_exploratory, "allow parameters outside the proven range");
  c_params.attach(construct);
  construct->callback([&] {
    const Family fam = build_family(c_id, c_params.params());
    const auto& last = family_provenance(fam).back();
    if (!last.in_window && !c_exploratory) {
      std::cerr << "parameters outside the proven range: " << last.window << " (use --exploratory)\n";
      code = kUsage;
      return;
    }
    print_summary(fam);
    if (!c_out.empty()) save_or_print(Artifact{fam, {}}, c_out);
  });

  // verify
  auto* verify = app.add_subcommand("verify", "check an artifact and append the certificate");
  std::string v_in, v_check = "partial", v_flavor, v_out;
  bool v_brute = false, v_no_write = false;
  CheckFlags v_flags;
  verify->add_option("input", v_in)->required()->check(CLI::ExistingFile);
  verify->add_option("--check", v_check)->check(CLI::IsMember({"partial", "maximal", "complete"}));
  verify->add_option("--flavor", v_flavor)->check(CLI::IsMember({"plain", "symplectic", "orthogonal"}));
  verify->add_option("-o,--output", v_out, "write the updated artifact here instead of the input");
  verify->add_flag("--brute", v_brute, "decide spread maximality by full enumeration");
  verify->add_flag("--no-write", v_no_write, "leave the artifact untouched");
  v_flags.attach(verify);
  verify->callback([&] {
    Artifact a = read_artifact(v_in);
    std::optional<Flavor> flavor;
    if (!v_flavor.empty()) flavor = flavor_from_string(v_flavor);
    const auto res = verify_family(a.family, v_check, flavor, v_flags.options(), v_brute);
    std::cout << v_check << " " << to_string(res.record.flavor) << " verdict=" << res.record.verdict
              << " nodes=" << res.record.nodes << " seconds=" << res.record.seconds;
    if (!res.record.witness.empty()) std::cout << " witness_rows=" << res.record.witness.size();
    if (!res.message.empty()) std::cout << " (" << res.message << ")";
    std::cout << "\n";
    if (!v_no_write) {
      a.certificates.push_back(res.record);
      write_artifact(v_out.empty() ? v_in : v_out, a);
    }
    code = res.exit_code;
  });

  // project
  auto* project = app.add_subcommand("project", "project a spread from a nonsingular point");
  std::string p_in, p_out = "-";
  std::optional<std::uint64_t> p_z;
  project->add_option("input", p_in)->required()->check(CLI::ExistingFile);
  project->add_option("--z", p_z, "vector index of z; default is the first nonsingular point");
  project->add_option("-o,--output", p_out);
  project->callback([&] {
    const Artifact a = read_artifact(p_in);
    const auto* fam = std::get_if<SubspaceFamily>(&a.family);
    if (!fam) throw CLI::ValidationError("project", "input is not a subspace family");
    std::optional<Vec> z;
    if (p_z) {
      const FormedSpace& V = *fam->space;
      if (*p_z == 0 || *p_z >= vector_count(*V.field(), V.dim()))
        throw CLI::ValidationError("--z", "index out of range");
      z = vector_at(*V.field(), *p_z, V.dim());
    }
    const SubspaceFamily out = project_family(*fam, z);
    if (p_out != "-") print_summary(out);
    save_or_print(Artifact{out, {}}, p_out);
  });

  // descend
  auto* descend = app.add_subcommand("descend", "view a family over a subfield through the trace");
  std::string d_in, d_out = "-";
  std::uint32_t d_degree = 1;
  descend->add_option("input", d_in)->required()->check(CLI::ExistingFile);
  descend->add_option("--degree", d_degree, "degree of the subfield over the prime field");
  descend->add_option("-o,--output", d_out);
  descend->callback([&] {
    const Artifact a = read_artifact(d_in);
    const auto* fam = std::get_if<SubspaceFamily>(&a.family);
    if (!fam) throw CLI::ValidationError("descend", "input is not a subspace family");
    const SubspaceFamily out = descend_family(*fam, d_degree);
    if (d_out != "-") print_summary(out);
    save_or_print(Artifact{out, {}}, d_out);
  });

  // triality
  auto* triality = app.add_subcommand("triality", "map a point family of O+(8,q) to t.s. 4-spaces");
  std::string t_in, t_out = "-";
  triality->add_option("input", t_in)->required()->check(CLI::ExistingFile);
  triality->add_option("-o,--output", t_out);
  triality->callback([&] {
    const Artifact a = read_artifact(t_in);
    const auto* fam = std::get_if<PointFamily>(&a.family);
    if (!fam) throw CLI::ValidationError("triality", "input is not a point family");
    const SubspaceFamily out = triality_family(*fam);
    if (t_out != "-") print_summary(out);
    save_or_print(Artifact{out, {}}, t_out);
  });

  // table
  auto* table = app.add_subcommand("table", "construct and verify one family per summary-table row");
  std::vector<std::string> t_rows;
  CheckFlags t_flags;
  table->add_option("--rows", t_rows, "family ids to include (default: all rows)")->delimiter(',');
  t_flags.attach(table);
  table->callback([&] {
    bool all_ok = true;
    for (const auto& row : table_rows()) {
      if (!t_rows.empty() && std::find(t_rows.begin(), t_rows.end(), row.id) == t_rows.end()) continue;
      const auto r = run_table_row(row, t_flags.options());
      std::cout << r.line << std::endl;
      all_ok = all_ok && r.ok;
    }
    code = all_ok ? kOk : kVerifyFailed;
  });

  // census
  auto* census = app.add_subcommand("census", "hyperplane census of a point set in a 5-dimensional space");
  std::string ce_in;
  std::optional<std::uint64_t> ce_q;
  census->add_option("input", ce_in, "point-family artifact in a 5-dimensional orthogonal space");
  census->add_option("--q", ce_q, "use the Suzuki-Tits ovoid of O(5,q) instead of an artifact");
  census->callback([&] {
    PointFamily fam;
    if (ce_q) {
      fam = suzuki_tits_ovoid(*ce_q);
    } else if (!ce_in.empty()) {
      Artifact a = read_artifact(ce_in);
      auto* p = std::get_if<PointFamily>(&a.family);
      if (!p) throw CLI::ValidationError("census", "input is not a point family");
      fam = *p;
    } else {
      throw CLI::ValidationError("census", "give an artifact or --q");
    }
    const Census c = hyperplane_census(*fam.space, fam.points);
    std::cout << "hyperplanes=" << c.hyperplanes << " missing=" << c.missing << "\n";
    for (const auto& r : c.rows)
      std::cout << "meet=" << r.meet << " radical=" << (r.contains_radical ? "yes" : "no") << " witt=" << r.witt
                << " count=" << r.count << "\n";
    code = c.missing == 0 ? kOk : kVerifyFailed;
  });

  // fingerprint
  auto* fp = app.add_subcommand("fingerprint", "equivalence-sensitive invariant of a family");
  std::string f_in;
  std::uint64_t f_seed = 1, f_samples = 4096;
  fp->add_option("input", f_in)->required()->check(CLI::ExistingFile);
  fp->add_option("--seed", f_seed, "sampler seed");
  fp->add_option("--samples", f_samples, "sample count when enumeration is too large");
  fp->callback([&] {
    const Artifact a = read_artifact(f_in);
    const Fingerprint f = std::holds_alternative<PointFamily>(a.family)
                              ? fingerprint(std::get<PointFamily>(a.family))
                              : fingerprint(std::get<SubspaceFamily>(a.family), f_seed, f_samples);
    std::cout << f.kind << " samples=" << f.samples << (f.sampled ? " sampled seed=" + std::to_string(f.seed) : "")
              << "\n";
    for (const auto& [k, v] : f.histogram) std::cout << k << " " << v << "\n";
  });

  // list
  auto* list = app.add_subcommand("list", "list family ids");
  list->callback([&] {
    for (const auto& info : family_catalog()) {
      std::cout << info.id << " [";
      for (std::size_t i = 0; i < info.params.size(); ++i) std::cout << (i ? " " : "") << info.params[i];
      std::cout << "] " << (info.points ? "points" : "subspaces") << "  " << info.summary << "\n";
    }
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  } catch (const OutOfScale& e) {
    std::cerr << "out of desk scale: " << e.what() << "\n";
    return kOutOfScale;
  } catch (const FamilyError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ArtifactError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kVerifyFailed;
  }
  return code;
}

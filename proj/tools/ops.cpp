#include "ops.hpp"

#include <chrono>
#include <sstream>

namespace maxspread::tools {

namespace {

Flavor family_flavor(const Family& f) {
  return std::visit([](const auto& x) { return x.flavor; }, f);
}

bool partial_ok(const Family& f, Flavor flavor, std::string* why) {
  if (auto* s = std::get_if<SubspaceFamily>(&f)) return is_partial_spread(*s, flavor, why);
  return is_partial_ovoid(std::get<PointFamily>(f), flavor, why);
}

}  // namespace

std::string format_params(const Params& p) {
  std::string out;
  for (const auto& [k, v] : p) {
    if (!out.empty()) out += ",";
    out += k + "=" + std::to_string(v);
  }
  return out.empty() ? "-" : out;
}

VerifyOutcome verify_family(const Family& fam, const std::string& check, std::optional<Flavor> flavor_in,
                            const CheckOptions& opt, bool brute) {
  const Flavor flavor = flavor_in.value_or(family_flavor(fam));
  const bool points = std::holds_alternative<PointFamily>(fam);
  if (points && flavor == Flavor::Plain) throw GeometryError("point families have no plain flavor");
  VerifyOutcome out;
  out.record.check = check;
  out.record.flavor = flavor;
  const auto t0 = std::chrono::steady_clock::now();
  auto finish = [&] {
    out.record.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  };

  std::string why;
  if (!partial_ok(fam, flavor, &why)) {
    out.record.verdict = points ? "not_partial_ovoid" : "not_partial_spread";
    out.record.method = "pairwise";
    out.exit_code = kVerifyFailed;
    out.message = why;
    finish();
    return out;
  }
  if (check == "partial") {
    out.record.verdict = points ? "partial_ovoid" : "partial_spread";
    out.record.method = "pairwise";
    finish();
    return out;
  }
  if (check == "complete") {
    const bool ok = points ? is_ovoid(std::get<PointFamily>(fam), flavor, &why)
                           : is_spread(std::get<SubspaceFamily>(fam), flavor, &why);
    out.record.verdict = points ? (ok ? "ovoid" : "not_ovoid") : (ok ? "spread" : "not_spread");
    out.record.method = points ? "maximal subspace enumeration" : "point count";
    out.exit_code = ok ? kOk : kVerifyFailed;
    out.message = why;
    finish();
    return out;
  }
  if (check != "maximal") throw GeometryError("unknown check '" + check + "'");

  MaximalityCertificate c;
  if (points)
    c = check_maximal_ovoid(std::get<PointFamily>(fam), flavor, opt);
  else if (brute)
    c = brute_force_maximal_spread(std::get<SubspaceFamily>(fam), flavor, opt.jobs);
  else
    c = check_maximal_spread(std::get<SubspaceFamily>(fam), flavor, opt);
  out.record = make_record("maximal", c);
  switch (c.verdict) {
    case Verdict::Maximal: out.exit_code = kOk; break;
    case Verdict::Extendable:
      out.exit_code = kVerifyFailed;
      out.message = "family extends";
      break;
    case Verdict::BudgetExceeded:
      out.exit_code = kVerifyFailed;
      out.message = "search budget exhausted before a verdict";
      break;
    case Verdict::OutOfScale:
      out.exit_code = kOutOfScale;
      out.message = "out of desk scale";
      break;
  }
  return out;
}

const std::vector<TableRow>& table_rows() {
  static const std::vector<TableRow> rows = {
      {"4m", "q^{2m}-q^m+(2,q-1)", "thm3.1", {{"q", 2}, {"m", 2}}},
      {"4mk", "q^{2mk-k}+1", "prop4.1", {{"q", 2}, {"m", 2}}},
      {"4mk-2", "q^{2mk-k}+1", "thm6.3", {{"q", 2}, {"m", 2}, {"k", 1}}},
      {"4k", "q^k+1", "thm5.2i", {{"q", 2}, {"k", 2}}},
      {"4k-2", "q^k+1", "thm6.2", {{"q", 2}, {"k", 2}}},
      {"4k", "2q^k+1", "thm5.2ii", {{"q", 2}, {"k", 2}}},
      {"8", "q^3-q^2+1", "thm7.2", {{"q", 4}}},
      {"8", "n_s", "thm7.3", {{"q", 8}, {"s", 1}, {"scheme", 0}}},
      {"8", "n_4-1", "thm7.3", {{"q", 16}, {"s", 4}, {"scheme", 1}}},
      {"8", "q^2+1", "ex7.4", {{"q", 4}}},
      {"8", "2q^2+1", "lemma7.8", {{"q", 4}}},
      {"8", "q^2+q+1", "thm7.10", {{"q", 8}}},
      {"8", "q^2-q+1", "thm7.11", {{"q", 8}}},
      {"8", "q^2-sq+2s-1", "thm7.12", {{"q", 32}, {"s", 2}}},
      {"6", "q^3-q^2+1", "thm8.1", {{"q", 2}}},
  };
  return rows;
}

RowResult run_table_row(const TableRow& row, const CheckOptions& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  RowResult r;
  std::string verdict, via = "-";
  std::int64_t expected = -1;
  std::size_t actual = 0;
  try {
    const Family fam = build_family(row.id, row.params);
    expected = family_expected(fam);
    actual = family_size(fam);
    if (static_cast<std::int64_t>(actual) != expected) {
      verdict = "size_mismatch";
    } else {
      const auto v = verify_family(fam, "maximal", std::nullopt, opt);
      via = v.record.method.empty() ? "-" : v.record.method;
      for (auto& ch : via)
        if (ch == ' ') ch = '-';
      switch (v.exit_code) {
        case kOk:
          verdict = "maximal";
          r.ok = true;
          break;
        case kOutOfScale:
          verdict = "partial(maximality_out_of_scale)";
          r.ok = true;
          break;
        default:
          verdict = v.record.verdict == "budget_exceeded" ? "partial(budget_exceeded)" : v.record.verdict;
          break;
      }
    }
  } catch (const OutOfScale&) {
    verdict = "out_of_scale";
  } catch (const std::exception& e) {
    verdict = std::string("error(") + e.what() + ")";
  }
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
  std::ostringstream line;
  line << row.id << " " << format_params(row.params) << " dims=" << row.dims << " size=" << row.size
       << " expected=" << expected << " actual=" << actual << " verdict=" << verdict << " via=" << via
       << " millis=" << ms;
  r.line = line.str();
  return r;
}

}  // namespace maxspread::tools

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "maxspread/artifact.hpp"

namespace maxspread::tools {

enum ExitCode { kOk = 0, kVerifyFailed = 1, kUsage = 2, kOutOfScale = 3 };

struct VerifyOutcome {
  CertificateRecord record;
  int exit_code = kOk;
  std::string message;
};

// check is partial, maximal or complete. flavor defaults to the family's own.
VerifyOutcome verify_family(const Family& fam, const std::string& check, std::optional<Flavor> flavor,
                            const CheckOptions& opt, bool brute = false);

struct TableRow {
  std::string dims;  // ambient dimensions of the table row
  std::string size;  // size formula as printed
  std::string id;
  Params params;
};

// One row per line of the summary table, at the smallest desk-scale parameters.
const std::vector<TableRow>& table_rows();

struct RowResult {
  std::string line;
  bool ok = false;
};

RowResult run_table_row(const TableRow& row, const CheckOptions& opt);

std::string format_params(const Params& p);

}  // namespace maxspread::tools

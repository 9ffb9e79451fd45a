#pragma once

#include <cstdint>
#include <string>

#include "maxspread/families.hpp"

namespace maxspread::detail {

ProvenanceStep step(std::string op, std::string family, Params params, std::string window, bool in_window);
bool is_even(std::uint64_t q);
void require(bool ok, const std::string& msg);
std::int64_t expected_or_throw(const std::string& id, const Params& params);

inline std::int64_t ipow(std::int64_t b, std::int64_t e) {
  std::int64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

}  // namespace maxspread::detail

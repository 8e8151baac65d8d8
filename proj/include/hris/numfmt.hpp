// SPDX-License-Identifier: Apache-2.0
#ifndef HRIS_NUMFMT_HPP
#define HRIS_NUMFMT_HPP

#include <charconv>
#include <string>
#include <string_view>

namespace hris {

// Shortest decimal string that parses back to exactly the same double.
// All text output goes through this so reruns are byte-identical.
inline std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

// Strict full-token double parse; returns false on trailing garbage,
// empty input, or non-numeric text.
inline bool parse_double(std::string_view token, double& out) {
  if (token.empty()) return false;
  auto res = std::from_chars(token.data(), token.data() + token.size(), out);
  return res.ec == std::errc{} && res.ptr == token.data() + token.size();
}

}  // namespace hris

#endif

// SPDX-License-Identifier: Apache-2.0
#ifndef HRIS_TOUCHSTONE_HPP
#define HRIS_TOUCHSTONE_HPP

#include <complex>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "hris/error.hpp"

namespace hris {

enum class SParamFormat { RI, MA, DB };
enum class FrequencyUnit { Hz, kHz, MHz, GHz };

const char* to_string(SParamFormat fmt);
const char* to_string(FrequencyUnit unit);
double unit_factor(FrequencyUnit unit);  // multiplier to Hz

struct SParamRecord {
  double freq_hz = 0.0;
  std::complex<double> s11, s21, s12, s22;
};

// Two-port S-parameter sweep. Frequencies are in Hz and strictly ascending;
// complex values are stored rectangular regardless of the source format.
struct SParamTable {
  std::vector<SParamRecord> records;
  double reference_impedance = 50.0;
  SParamFormat source_format = SParamFormat::RI;
  FrequencyUnit source_unit = FrequencyUnit::GHz;
  std::vector<std::string> comments;

  std::size_t size() const { return records.size(); }
  // Throws InvalidTable unless records are finite, positive-frequency,
  // strictly ascending, and at least min_size long.
  void validate(std::size_t min_size = 1) const;
};

// Touchstone v1, two ports only. Accepts '!' comments anywhere, exactly one
// '#' option line before the data, and 9-column data lines in the option
// line's unit/format. Unsorted input is sorted; duplicate frequencies are
// rejected. Comments are retained in the table only when keep_comments is set.
SParamTable parse_touchstone(std::string_view text, bool keep_comments = false);

std::string write_touchstone(const SParamTable& table, SParamFormat fmt, FrequencyUnit unit);
std::string write_touchstone(const SParamTable& table);  // table's own format/unit

// Internal CSV exchange format. Header is either
//   freq_hz,s11_re,s11_im,s21_re,s21_im
// or the 9-column variant extended with s12_re,s12_im,s22_re,s22_im.
// A 5-column file is promoted to a full table with s12 = s21 and s22 = s11.
SParamTable parse_sparam_csv(std::string_view text);
std::string write_sparam_csv(const SParamTable& table);

}  // namespace hris

#endif

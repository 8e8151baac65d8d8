// SPDX-License-Identifier: Apache-2.0
#include "hris/touchstone.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "hris/numfmt.hpp"

namespace hris {

namespace {

constexpr double kDegToRad = M_PI / 180.0;
constexpr double kRadToDeg = 180.0 / M_PI;
constexpr double kDbFloor = -600.0;  // written for exact-zero magnitudes

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Lines without their '\n'; a trailing newline does not create an empty line.
std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) {
      lines.push_back(text.substr(pos));
      break;
    }
    lines.push_back(text.substr(pos, eol - pos));
    pos = eol + 1;
  }
  return lines;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

std::complex<double> pair_to_complex(SParamFormat fmt, double a, double b) {
  switch (fmt) {
    case SParamFormat::RI:
      return {a, b};
    case SParamFormat::MA:
      return std::polar(a, b * kDegToRad);
    case SParamFormat::DB:
      return std::polar(std::pow(10.0, a / 20.0), b * kDegToRad);
  }
  return {};
}

void complex_to_pair(SParamFormat fmt, std::complex<double> s, double& a, double& b) {
  switch (fmt) {
    case SParamFormat::RI:
      a = s.real();
      b = s.imag();
      return;
    case SParamFormat::MA:
      a = std::abs(s);
      b = (a == 0.0) ? 0.0 : std::arg(s) * kRadToDeg;
      return;
    case SParamFormat::DB: {
      const double mag = std::abs(s);
      a = (mag == 0.0) ? kDbFloor : 20.0 * std::log10(mag);
      b = (mag == 0.0) ? 0.0 : std::arg(s) * kRadToDeg;
      return;
    }
  }
}

struct OptionLine {
  FrequencyUnit unit = FrequencyUnit::GHz;
  SParamFormat format = SParamFormat::MA;
  double impedance = 50.0;
};

OptionLine parse_option_line(std::string_view line, std::size_t line_no) {
  OptionLine opt;
  auto tokens = split_ws(line.substr(1));  // past '#'
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const std::string t = lower(tokens[i]);
    if (t == "hz") {
      opt.unit = FrequencyUnit::Hz;
    } else if (t == "khz") {
      opt.unit = FrequencyUnit::kHz;
    } else if (t == "mhz") {
      opt.unit = FrequencyUnit::MHz;
    } else if (t == "ghz") {
      opt.unit = FrequencyUnit::GHz;
    } else if (t == "s") {
      // scattering parameters, the only supported type
    } else if (t == "y" || t == "z" || t == "h" || t == "g") {
      fail(ErrorCode::UnsupportedFormat,
           "line " + std::to_string(line_no) + ": parameter type '" + std::string(tokens[i]) +
               "' not supported, only S");
    } else if (t == "ri") {
      opt.format = SParamFormat::RI;
    } else if (t == "ma") {
      opt.format = SParamFormat::MA;
    } else if (t == "db") {
      opt.format = SParamFormat::DB;
    } else if (t == "r") {
      if (i + 1 >= tokens.size() || !parse_double(tokens[i + 1], opt.impedance))
        fail(ErrorCode::MalformedDataLine,
             "line " + std::to_string(line_no) + ": option 'R' needs a numeric impedance");
      ++i;
    } else {
      fail(ErrorCode::UnsupportedFormat,
           "line " + std::to_string(line_no) + ": unknown option token '" +
               std::string(tokens[i]) + "'");
    }
  }
  return opt;
}

struct NumberedRecord {
  SParamRecord rec;
  std::size_t line_no;
};

void sort_and_check(std::vector<NumberedRecord>& recs) {
  std::stable_sort(recs.begin(), recs.end(),
                   [](const NumberedRecord& a, const NumberedRecord& b) {
                     return a.rec.freq_hz < b.rec.freq_hz;
                   });
  for (std::size_t i = 1; i < recs.size(); ++i) {
    if (recs[i].rec.freq_hz == recs[i - 1].rec.freq_hz)
      fail(ErrorCode::DuplicateFrequency,
           "line " + std::to_string(recs[i].line_no) + ": duplicate frequency " +
               format_double(recs[i].rec.freq_hz) + " Hz (first seen at line " +
               std::to_string(recs[i - 1].line_no) + ")");
  }
}

bool record_finite(const SParamRecord& r) {
  auto ok = [](std::complex<double> s) {
    return std::isfinite(s.real()) && std::isfinite(s.imag());
  };
  return std::isfinite(r.freq_hz) && ok(r.s11) && ok(r.s21) && ok(r.s12) && ok(r.s22);
}

}  // namespace

const char* to_string(SParamFormat fmt) {
  switch (fmt) {
    case SParamFormat::RI: return "RI";
    case SParamFormat::MA: return "MA";
    case SParamFormat::DB: return "DB";
  }
  return "?";
}

const char* to_string(FrequencyUnit unit) {
  switch (unit) {
    case FrequencyUnit::Hz: return "Hz";
    case FrequencyUnit::kHz: return "kHz";
    case FrequencyUnit::MHz: return "MHz";
    case FrequencyUnit::GHz: return "GHz";
  }
  return "?";
}

double unit_factor(FrequencyUnit unit) {
  switch (unit) {
    case FrequencyUnit::Hz: return 1.0;
    case FrequencyUnit::kHz: return 1e3;
    case FrequencyUnit::MHz: return 1e6;
    case FrequencyUnit::GHz: return 1e9;
  }
  return 1.0;
}

void SParamTable::validate(std::size_t min_size) const {
  if (records.size() < min_size)
    fail(ErrorCode::InvalidTable, "table has " + std::to_string(records.size()) +
                                      " records, need at least " + std::to_string(min_size));
  if (!(reference_impedance > 0.0) || !std::isfinite(reference_impedance))
    fail(ErrorCode::InvalidTable, "reference impedance must be positive and finite");
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (!record_finite(records[i]))
      fail(ErrorCode::InvalidTable, "record " + std::to_string(i) + " has non-finite values");
    if (!(records[i].freq_hz > 0.0))
      fail(ErrorCode::InvalidTable, "record " + std::to_string(i) + " has non-positive frequency");
    if (i > 0 && !(records[i].freq_hz > records[i - 1].freq_hz))
      fail(ErrorCode::InvalidTable, "records not strictly ascending at index " + std::to_string(i));
  }
}

SParamTable parse_touchstone(std::string_view text, bool keep_comments) {
  SParamTable table;
  OptionLine opt;
  bool have_option = false;
  std::vector<NumberedRecord> recs;

  const auto lines = split_lines(text);
  for (std::size_t li = 0; li < lines.size(); ++li) {
    const std::size_t line_no = li + 1;
    std::string_view line = lines[li];
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    const std::size_t bang = line.find('!');
    if (bang != std::string_view::npos) {
      if (keep_comments) table.comments.emplace_back(trim(line.substr(bang + 1)));
      line = line.substr(0, bang);
    }
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[')
      fail(ErrorCode::UnsupportedFormat,
           "line " + std::to_string(line_no) + ": keyword sections are a v2 construct");
    if (line.front() == '#') {
      if (have_option)
        fail(ErrorCode::UnsupportedFormat,
             "line " + std::to_string(line_no) + ": second option line");
      opt = parse_option_line(line, line_no);
      have_option = true;
      continue;
    }
    if (!have_option)
      fail(ErrorCode::MissingOptionLine,
           "line " + std::to_string(line_no) + ": data before '#' option line");

    auto tokens = split_ws(line);
    if (tokens.size() != 9)
      fail(ErrorCode::MalformedDataLine,
           "line " + std::to_string(line_no) + ": expected 9 numeric columns, got " +
               std::to_string(tokens.size()));
    double v[9];
    for (std::size_t i = 0; i < 9; ++i) {
      if (!parse_double(tokens[i], v[i]) || !std::isfinite(v[i]))
        fail(ErrorCode::MalformedDataLine,
             "line " + std::to_string(line_no) + ": column " + std::to_string(i + 1) + " ('" +
                 std::string(tokens[i]) + "') is not a finite number");
    }

    SParamRecord rec;
    rec.freq_hz = v[0] * unit_factor(opt.unit);
    // v1 two-port column order is S11 S21 S12 S22
    rec.s11 = pair_to_complex(opt.format, v[1], v[2]);
    rec.s21 = pair_to_complex(opt.format, v[3], v[4]);
    rec.s12 = pair_to_complex(opt.format, v[5], v[6]);
    rec.s22 = pair_to_complex(opt.format, v[7], v[8]);
    if (!(rec.freq_hz > 0.0))
      fail(ErrorCode::MalformedDataLine,
           "line " + std::to_string(line_no) + ": frequency must be positive");
    recs.push_back({rec, line_no});
  }

  if (!have_option)
    fail(ErrorCode::MissingOptionLine,
         "line " + std::to_string(lines.size() + 1) + ": no '#' option line before end of input");

  sort_and_check(recs);
  table.records.reserve(recs.size());
  for (auto& nr : recs) table.records.push_back(nr.rec);
  table.reference_impedance = opt.impedance;
  table.source_format = opt.format;
  table.source_unit = opt.unit;
  return table;
}

std::string write_touchstone(const SParamTable& table, SParamFormat fmt, FrequencyUnit unit) {
  table.validate(1);
  std::string out;
  for (const auto& c : table.comments) out += "! " + c + "\n";
  out += "# ";
  out += to_string(unit);
  out += " S ";
  out += to_string(fmt);
  out += " R ";
  out += format_double(table.reference_impedance);
  out += "\n";
  const double factor = unit_factor(unit);
  for (const auto& rec : table.records) {
    out += format_double(rec.freq_hz / factor);
    for (std::complex<double> s : {rec.s11, rec.s21, rec.s12, rec.s22}) {
      double a, b;
      complex_to_pair(fmt, s, a, b);
      out += ' ';
      out += format_double(a);
      out += ' ';
      out += format_double(b);
    }
    out += '\n';
  }
  return out;
}

std::string write_touchstone(const SParamTable& table) {
  return write_touchstone(table, table.source_format, table.source_unit);
}

namespace {

constexpr std::string_view kCsvHeaderShort = "freq_hz,s11_re,s11_im,s21_re,s21_im";
constexpr std::string_view kCsvHeaderFull =
    "freq_hz,s11_re,s11_im,s21_re,s21_im,s12_re,s12_im,s22_re,s22_im";

std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      out.push_back(trim(line.substr(start)));
      return out;
    }
    out.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
}

}  // namespace

SParamTable parse_sparam_csv(std::string_view text) {
  SParamTable table;
  table.source_format = SParamFormat::RI;
  table.source_unit = FrequencyUnit::Hz;

  std::vector<NumberedRecord> recs;
  bool have_header = false;
  bool full = false;

  const auto lines = split_lines(text);
  for (std::size_t li = 0; li < lines.size(); ++li) {
    const std::size_t line_no = li + 1;
    std::string_view line = lines[li];
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (trim(line).empty()) continue;

    if (!have_header) {
      const auto header = trim(line);
      if (header == kCsvHeaderShort) {
        full = false;
      } else if (header == kCsvHeaderFull) {
        full = true;
      } else {
        fail(ErrorCode::HeaderMismatch,
             "line " + std::to_string(line_no) + ": unrecognized header '" + std::string(header) +
                 "'");
      }
      have_header = true;
      continue;
    }

    auto fields = split_csv(line);
    const std::size_t expect = full ? 9 : 5;
    if (fields.size() != expect)
      fail(ErrorCode::MalformedDataLine,
           "line " + std::to_string(line_no) + ": expected " + std::to_string(expect) +
               " fields, got " + std::to_string(fields.size()));
    double v[9] = {};
    for (std::size_t i = 0; i < expect; ++i) {
      if (!parse_double(fields[i], v[i]) || !std::isfinite(v[i]))
        fail(ErrorCode::MalformedDataLine,
             "line " + std::to_string(line_no) + ": field " + std::to_string(i + 1) + " ('" +
                 std::string(fields[i]) + "') is not a finite number");
    }

    SParamRecord rec;
    rec.freq_hz = v[0];
    rec.s11 = {v[1], v[2]};
    rec.s21 = {v[3], v[4]};
    if (full) {
      rec.s12 = {v[5], v[6]};
      rec.s22 = {v[7], v[8]};
    } else {
      rec.s12 = rec.s21;
      rec.s22 = rec.s11;
    }
    if (!(rec.freq_hz > 0.0))
      fail(ErrorCode::MalformedDataLine,
           "line " + std::to_string(line_no) + ": frequency must be positive");
    recs.push_back({rec, line_no});
  }

  if (!have_header)
    fail(ErrorCode::HeaderMismatch, "line 1: empty input, expected a header row");

  sort_and_check(recs);
  table.records.reserve(recs.size());
  for (auto& nr : recs) table.records.push_back(nr.rec);
  return table;
}

std::string write_sparam_csv(const SParamTable& table) {
  table.validate(1);
  std::string out(kCsvHeaderFull);
  out += '\n';
  for (const auto& rec : table.records) {
    out += format_double(rec.freq_hz);
    for (std::complex<double> s : {rec.s11, rec.s21, rec.s12, rec.s22}) {
      out += ',';
      out += format_double(s.real());
      out += ',';
      out += format_double(s.imag());
    }
    out += '\n';
  }
  return out;
}

}  // namespace hris

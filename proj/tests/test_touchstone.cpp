// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <fstream>
#include <sstream>
#include <string>

#include "hris/rng.hpp"
#include "hris/touchstone.hpp"

using namespace hris;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// |a - b| <= tol * max(1, |a|): relative for large values, absolute near zero.
bool close(double a, double b, double tol = 1e-12) {
  return std::abs(a - b) <= tol * std::max(1.0, std::abs(a));
}

bool close(std::complex<double> a, std::complex<double> b, double tol = 1e-12) {
  return close(a.real(), b.real(), tol) && close(a.imag(), b.imag(), tol);
}

SParamTable random_table(Rng& rng, std::size_t n) {
  SParamTable t;
  double f = rng.uniform(0.5e9, 2e9);
  for (std::size_t i = 0; i < n; ++i) {
    SParamRecord r;
    r.freq_hz = f;
    f += rng.uniform(1e7, 5e8);
    const double m11 = rng.uniform(1e-4, 0.98);
    const double m21 = rng.uniform(1e-4, 0.98);
    r.s11 = std::polar(m11, rng.uniform(-3.1, 3.1));
    r.s21 = std::polar(m21, rng.uniform(-3.1, 3.1));
    r.s12 = r.s21;
    r.s22 = std::polar(rng.uniform(1e-4, 0.98), rng.uniform(-3.1, 3.1));
    t.records.push_back(r);
  }
  return t;
}

void expect_error(const std::string& text, bool csv, ErrorCode code, int line) {
  try {
    if (csv)
      parse_sparam_csv(text);
    else
      parse_touchstone(text);
    FAIL_CHECK("expected failure with " << to_string(code));
  } catch (const Error& e) {
    CHECK(e.code() == code);
    const std::string needle = "line " + std::to_string(line) + ":";
    INFO("message: " << e.what());
    CHECK(std::string(e.what()).find(needle) != std::string::npos);
  }
}

}  // namespace

TEST_CASE("option line tokens are case-insensitive and order-free") {
  const char* text =
      "! fixture\n"
      "# r 50 ri s mhz\n"
      "5500 0.1 0.2 0.8 -0.1 0.8 -0.1 0.05 0.0\n";
  const SParamTable t = parse_touchstone(text);
  REQUIRE(t.size() == 1);
  CHECK(t.source_format == SParamFormat::RI);
  CHECK(t.source_unit == FrequencyUnit::MHz);
  CHECK(t.reference_impedance == 50.0);
  CHECK(t.records[0].freq_hz == doctest::Approx(5.5e9).epsilon(1e-15));
  CHECK(t.records[0].s11 == std::complex<double>(0.1, 0.2));
  CHECK(t.records[0].s21 == std::complex<double>(0.8, -0.1));
}

TEST_CASE("option line defaults are GHz, MA, 50 ohm") {
  const SParamTable t = parse_touchstone("#\n5.5 0.5 90 0.5 0 0.5 0 0.5 -90\n");
  CHECK(t.source_unit == FrequencyUnit::GHz);
  CHECK(t.source_format == SParamFormat::MA);
  CHECK(t.reference_impedance == 50.0);
  CHECK(close(t.records[0].s11, {0.0, 0.5}, 1e-15));
  CHECK(close(t.records[0].s22, {0.0, -0.5}, 1e-15));
}

TEST_CASE("data columns are S11 S21 S12 S22") {
  const SParamTable t = parse_touchstone("# GHz S RI R 50\n1 1 0 2 0 3 0 4 0\n");
  CHECK(t.records[0].s11.real() == 1.0);
  CHECK(t.records[0].s21.real() == 2.0);
  CHECK(t.records[0].s12.real() == 3.0);
  CHECK(t.records[0].s22.real() == 4.0);
}

TEST_CASE("unsorted input is sorted ascending") {
  const SParamTable t = parse_touchstone(
      "# GHz S RI R 50\n"
      "6 0 0 1 0 1 0 0 0\n"
      "4 0 0 1 0 1 0 0 0\n"
      "5 0 0 1 0 1 0 0 0\n");
  REQUIRE(t.size() == 3);
  CHECK(t.records[0].freq_hz < t.records[1].freq_hz);
  CHECK(t.records[1].freq_hz < t.records[2].freq_hz);
}

TEST_CASE("inline comments are stripped and captured on request") {
  const char* text =
      "! header note\n"
      "# GHz S RI R 50\n"
      "5 0.1 0 0.9 0 0.9 0 0.1 0 ! trailing note\n";
  const SParamTable plain = parse_touchstone(text);
  CHECK(plain.comments.empty());
  CHECK(plain.size() == 1);
  const SParamTable kept = parse_touchstone(text, true);
  REQUIRE(kept.comments.size() == 2);
  CHECK(kept.comments[0] == "header note");
  CHECK(kept.comments[1] == "trailing note");
}

TEST_CASE("round trip holds to 1e-12 across all formats and units") {
  Rng rng(20240615);
  const SParamFormat formats[] = {SParamFormat::RI, SParamFormat::MA, SParamFormat::DB};
  const FrequencyUnit units[] = {FrequencyUnit::Hz, FrequencyUnit::kHz, FrequencyUnit::MHz,
                                 FrequencyUnit::GHz};
  for (int rep = 0; rep < 5; ++rep) {
    const SParamTable orig = random_table(rng, 40);
    for (SParamFormat f : formats) {
      for (FrequencyUnit u : units) {
        const std::string text = write_touchstone(orig, f, u);
        const SParamTable back = parse_touchstone(text);
        REQUIRE(back.size() == orig.size());
        CHECK(back.source_format == f);
        CHECK(back.source_unit == u);
        for (std::size_t i = 0; i < orig.size(); ++i) {
          INFO("format " << to_string(f) << " unit " << to_string(u) << " row " << i);
          CHECK(close(back.records[i].freq_hz, orig.records[i].freq_hz));
          CHECK(close(back.records[i].s11, orig.records[i].s11));
          CHECK(close(back.records[i].s21, orig.records[i].s21));
          CHECK(close(back.records[i].s12, orig.records[i].s12));
          CHECK(close(back.records[i].s22, orig.records[i].s22));
        }
      }
    }
  }
}

TEST_CASE("zero magnitude survives the DB writer via the floor") {
  SParamTable t;
  SParamRecord r;
  r.freq_hz = 1e9;
  r.s11 = {0.0, 0.0};
  r.s21 = {1.0, 0.0};
  r.s12 = {1.0, 0.0};
  r.s22 = {0.0, 0.0};
  t.records.push_back(r);
  const std::string text = write_touchstone(t, SParamFormat::DB, FrequencyUnit::GHz);
  CHECK(text.find("-600") != std::string::npos);
  const SParamTable back = parse_touchstone(text);
  CHECK(std::abs(back.records[0].s11) < 1e-29);
  CHECK(close(back.records[0].s21, {1.0, 0.0}));
}

TEST_CASE("CSV round trip and 5-column promotion") {
  Rng rng(7);
  const SParamTable orig = random_table(rng, 25);
  const SParamTable back = parse_sparam_csv(write_sparam_csv(orig));
  REQUIRE(back.size() == orig.size());
  for (std::size_t i = 0; i < orig.size(); ++i) {
    CHECK(close(back.records[i].freq_hz, orig.records[i].freq_hz));
    CHECK(close(back.records[i].s11, orig.records[i].s11));
    CHECK(close(back.records[i].s22, orig.records[i].s22));
  }

  const SParamTable five = parse_sparam_csv(
      "freq_hz,s11_re,s11_im,s21_re,s21_im\n"
      "5.5e9,0.1,-0.2,0.9,0.05\n");
  REQUIRE(five.size() == 1);
  CHECK(five.records[0].s12 == five.records[0].s21);
  CHECK(five.records[0].s22 == five.records[0].s11);
}

TEST_CASE("table validate rejects short and non-ascending tables") {
  SParamTable t;
  CHECK_THROWS_AS(t.validate(), Error);
  SParamRecord r;
  r.freq_hz = 1e9;
  t.records.push_back(r);
  t.records.push_back(r);  // equal frequencies
  CHECK_THROWS_AS(t.validate(), Error);
  t.records[1].freq_hz = 2e9;
  CHECK_NOTHROW(t.validate());
  CHECK_THROWS_AS(t.validate(3), Error);
}

TEST_CASE("malformed corpus is rejected with line-accurate diagnostics") {
  const std::string dir = std::string(HRIS_TEST_DATA_DIR) + "/malformed/";
  struct Entry {
    const char* file;
    ErrorCode code;
    int line;
  };
  const Entry manifest[] = {
      {"01_missing_option.s2p", ErrorCode::MissingOptionLine, 2},
      {"02_eight_columns.s2p", ErrorCode::MalformedDataLine, 3},
      {"03_bad_number.s2p", ErrorCode::MalformedDataLine, 2},
      {"04_duplicate_freq.s2p", ErrorCode::DuplicateFrequency, 4},
      {"05_v2_keyword.s2p", ErrorCode::UnsupportedFormat, 1},
      {"06_yparams.s2p", ErrorCode::UnsupportedFormat, 1},
      {"07_two_option_lines.s2p", ErrorCode::UnsupportedFormat, 3},
      {"08_ten_columns.s2p", ErrorCode::MalformedDataLine, 2},
      {"09_nonpositive_freq.s2p", ErrorCode::MalformedDataLine, 2},
      {"10_nonfinite.s2p", ErrorCode::MalformedDataLine, 2},
      {"11_empty.s2p", ErrorCode::MissingOptionLine, 1},
      {"12_bad_csv_header.csv", ErrorCode::HeaderMismatch, 1},
      {"13_csv_bad_field_count.csv", ErrorCode::MalformedDataLine, 2},
      {"14_csv_bad_number.csv", ErrorCode::MalformedDataLine, 3},
  };
  for (const Entry& e : manifest) {
    INFO("file " << e.file);
    const std::string text = read_file(dir + e.file);
    const bool csv = std::string(e.file).find(".csv") != std::string::npos;
    expect_error(text, csv, e.code, e.line);
  }
}

TEST_CASE("duplicate message names both lines") {
  try {
    parse_touchstone(
        "# GHz S RI R 50\n"
        "5 0.1 0 0.9 0 0.9 0 0.1 0\n"
        "5 0.2 0 0.8 0 0.8 0 0.2 0\n");
    FAIL_CHECK("expected DuplicateFrequency");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DuplicateFrequency);
    const std::string msg = e.what();
    CHECK(msg.find("line 3") != std::string::npos);
    CHECK(msg.find("line 2") != std::string::npos);
  }
}

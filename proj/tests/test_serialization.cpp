// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <complex>
#include <limits>

#include "hris/serialization.hpp"
#include "json.hpp"

using namespace hris;
using cd = std::complex<double>;

TEST_CASE("layout json round trip is exact") {
  const PanelLayout layout = generate_layout(12, 10, 5.5e9);
  const PanelLayout back = layout_from_json(layout_to_json(layout));
  REQUIRE(back.elements.size() == layout.elements.size());
  CHECK(back.design_frequency_hz == layout.design_frequency_hz);
  for (std::size_t i = 0; i < layout.elements.size(); ++i) {
    CHECK(back.elements[i].position == layout.elements[i].position);
    CHECK(back.elements[i].kind == layout.elements[i].kind);
    CHECK(back.elements[i].pol == layout.elements[i].pol);
    CHECK(back.elements[i].feeder == layout.elements[i].feeder);
  }
}

TEST_CASE("layout json exposes the documented shape") {
  const PanelLayout layout = generate_layout(8, 8, 5.5e9);
  const auto j = nlohmann::json::parse(layout_to_json(layout));
  REQUIRE(j.contains("design_frequency_hz"));
  REQUIRE(j.contains("panel_extent_m"));
  REQUIRE(j["panel_extent_m"].is_array());
  REQUIRE(j["elements"].is_array());
  const auto& e = j["elements"][0];
  CHECK(e.contains("x_m"));
  CHECK(e.contains("y_m"));
  CHECK(e.contains("kind"));
  CHECK(e.contains("pol"));
  CHECK(e.contains("feeder"));
}

TEST_CASE("load bank json round trips opens and complex loads") {
  LoadBank bank = LoadBank::default_bank(75.0, 0.95);
  const LoadBank back = load_bank_from_json(load_bank_to_json(bank));
  CHECK(back.reference_impedance == 75.0);
  CHECK(back.insertion_loss == 0.95);
  CHECK(back.loads[0].is_open());
  for (int i = 1; i < 4; ++i) {
    REQUIRE(!back.loads[static_cast<std::size_t>(i)].is_open());
    CHECK(back.loads[static_cast<std::size_t>(i)].z == bank.loads[static_cast<std::size_t>(i)].z);
  }
}

TEST_CASE("bank json validates on load") {
  CHECK_THROWS_AS(load_bank_from_json("{\"z0_ohm\": 50}"), Error);
  CHECK_THROWS_AS(load_bank_from_json("not json"), Error);
  try {
    load_bank_from_json("not json");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MalformedDataLine);
  }
}

TEST_CASE("material json round trip") {
  MaterialModel m;
  m.eps.static_value = 1.0;
  m.eps.strength = 1.0;
  m.eps.resonance_hz = 4.8e9;
  m.eps.damping_hz = 1.5e8;
  m.mu.static_value = 1.0;
  m.mu.strength = 0.8;
  m.mu.resonance_hz = 4.8e9;
  m.mu.damping_hz = 1.5e8;
  const MaterialModel back = material_from_json(material_to_json(m));
  CHECK(back.eps.strength == m.eps.strength);
  CHECK(back.mu.resonance_hz == m.mu.resonance_hz);
  CHECK(back.mu.damping_hz == m.mu.damping_hz);
}

TEST_CASE("scene list json preserves infinite snr and defaults") {
  std::vector<Scene> scenes(2);
  scenes[0].tx_direction = Direction::from_degrees(10.0, 0.0);
  scenes[0].rx_direction = Direction::from_degrees(30.0, 180.0);
  scenes[0].snr_db = std::numeric_limits<double>::infinity();
  scenes[0].seed = 42;
  scenes[1].tx_direction = Direction::from_degrees(20.0, 90.0);
  scenes[1].rx_direction = Direction::from_degrees(20.0, 90.0);
  scenes[1].snr_db = 25.0;
  scenes[1].tx_amplitude = cd(0.5, -0.5);
  const auto back = scenes_from_json(scenes_to_json(scenes));
  REQUIRE(back.size() == 2);
  CHECK(std::isinf(back[0].snr_db));
  CHECK(back[0].seed == 42);
  CHECK(back[1].snr_db == 25.0);
  CHECK(back[1].tx_amplitude == cd(0.5, -0.5));
  CHECK(back[1].rx_direction.theta_deg() == doctest::Approx(20.0));
}

TEST_CASE("load matrix json is an array of state names") {
  LoadMatrix m;
  m.states = {SwitchState::S0, SwitchState::S3, SwitchState::S2};
  const std::string text = load_matrix_to_json(m);
  const auto j = nlohmann::json::parse(text);
  REQUIRE(j.is_array());
  CHECK(j[1] == "S3");
  const LoadMatrix back = load_matrix_from_json(text);
  CHECK(back.states == m.states);
  CHECK_THROWS_AS(load_matrix_from_json("[\"S9\"]"), Error);
}

TEST_CASE("calibration table json round trip") {
  const PanelLayout layout = generate_layout(8, 8, 5.5e9);
  const auto grid = make_direction_grid(0.0, 10.0, 10.0, 0.0, 360.0, 180.0);
  const CalibrationTable table =
      build_lut(layout, LoadBank::default_bank(), grid, grid, 5.5e9);
  const CalibrationTable back = calibration_from_json(calibration_to_json(table));
  CHECK(back.frequency_hz == table.frequency_hz);
  REQUIRE(back.entries.size() == table.entries.size());
  REQUIRE(back.incident_grid.size() == table.incident_grid.size());
  for (std::size_t i = 0; i < table.entries.size(); ++i)
    CHECK(back.entries[i].states == table.entries[i].states);
  CHECK_NOTHROW(back.validate(layout.elements.size()));
}

TEST_CASE("csv headers are stable") {
  EffectiveParams p;
  p.thickness_m = 1e-3;
  EffectiveParamsRecord r;
  r.freq_hz = 5e9;
  r.n = {1.0, 0.0};
  r.z = {1.0, 0.0};
  r.eps = {1.0, 0.0};
  r.mu = {1.0, 0.0};
  p.records.push_back(r);
  const std::string csv = effective_params_to_csv(p);
  CHECK(csv.rfind("freq_hz,n_re,n_im,z_re,z_im,eps_re,eps_im,mu_re,mu_im,branch,gap_flag\n", 0) ==
        0);

  FarFieldPattern pat;
  pat.n_theta = 1;
  pat.n_phi = 1;
  pat.frequency_hz = 5e9;
  pat.samples.push_back({Direction::from_degrees(0.0, 0.0), cd(1.0, 0.0)});
  CHECK(pattern_to_csv(pat).rfind("theta_deg,phi_deg,af_re,af_im,af_db\n", 0) == 0);

  Snapshot snap;
  snap.group = 1;
  snap.samples.resize(1, 1);
  snap.samples(0, 0) = cd(0.5, 0.5);
  CHECK(snapshot_to_csv(snap).rfind("element,snapshot,re,im\n", 0) == 0);

  EpisodeLog log;
  EpisodeStep step;
  log.steps.push_back(step);
  CHECK(episode_log_to_csv(log).rfind("step,tx_true_theta_deg", 0) == 0);
}

TEST_CASE("report json shapes") {
  const UnitCellSpec spec;
  const FitReport fit = check_fit(spec);
  const auto jf = nlohmann::json::parse(fit_report_to_json(fit, spec));
  CHECK(jf.contains("pass"));
  CHECK(jf.contains("cell"));
  CHECK(jf["pass"].get<bool>());

  const PanelLayout layout = generate_layout(8, 8, 5.5e9);
  const auto jl = nlohmann::json::parse(layout_report_to_json(validate_layout(layout)));
  CHECK(jl.contains("pass"));
  CHECK(jl.contains("violations"));
  CHECK(jl["violations"].empty());

  IsolationReport iso;
  iso.group1_db = 31.5;
  iso.group2_db = 33.0;
  const auto ji = nlohmann::json::parse(isolation_to_json(iso));
  CHECK(ji["group1_db"] == 31.5);

  std::vector<FrequencyBand> bands{{4.8e9, 6.4e9}};
  const auto jb = nlohmann::json::parse(bands_to_json(bands));
  REQUIRE(jb["bands"].size() == 1);
  CHECK(jb["bands"][0]["lo_hz"] == 4.8e9);

  DoAEstimate est;
  est.direction = Direction::from_degrees(20.0, 45.0);
  est.spectrum_peak = 2.5;
  est.group = 2;
  const auto jd = nlohmann::json::parse(doa_to_json(est));
  CHECK(jd["theta_deg"] == doctest::Approx(20.0));
  CHECK(jd["group"] == 2);
}

TEST_CASE("json parse and schema failures carry distinct codes") {
  CHECK_THROWS_AS(layout_from_json("{"), Error);
  try {
    layout_from_json("{}");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidSpec);
  }
  try {
    material_from_json("{\"eps\": {}}");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidSpec);
  }
}

TEST_CASE("missing files raise io errors") {
  CHECK_THROWS_AS(read_text_file("/nonexistent/definitely/missing.json"), Error);
  try {
    read_text_file("/nonexistent/definitely/missing.json");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::IoError);
  }
  CHECK_THROWS_AS(write_text_file("/nonexistent/definitely/missing.json", "x"), Error);
}

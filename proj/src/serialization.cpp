// SPDX-License-Identifier: Apache-2.0
#include "hris/serialization.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "hris/numfmt.hpp"
#include "json.hpp"

namespace hris {

using ordered_json = nlohmann::ordered_json;

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::IoError, "cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) fail(ErrorCode::IoError, "read failed on '" + path + "'");
  return ss.str();
}

void write_text_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::IoError, "cannot open '" + path + "' for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) fail(ErrorCode::IoError, "write failed on '" + path + "'");
}

namespace {

ordered_json parse_json(std::string_view text, const char* what) {
  try {
    return ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::MalformedDataLine, std::string(what) + ": " + e.what());
  }
}

[[noreturn]] void schema_fail(const char* what, const nlohmann::json::exception& e) {
  fail(ErrorCode::InvalidSpec, std::string(what) + ": " + e.what());
}

ordered_json direction_json(const Direction& d) {
  return ordered_json{{"theta_deg", d.theta_deg()}, {"phi_deg", d.phi_deg()}};
}

Direction direction_from(const ordered_json& j) {
  return Direction::from_degrees(j.at("theta_deg").get<double>(),
                                 j.at("phi_deg").get<double>());
}

ordered_json complex_json(std::complex<double> v) {
  return ordered_json::array({v.real(), v.imag()});
}

std::complex<double> complex_from(const ordered_json& j) {
  return {j.at(0).get<double>(), j.at(1).get<double>()};
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::string layout_to_json(const PanelLayout& layout) {
  ordered_json j;
  j["design_frequency_hz"] = layout.design_frequency_hz;
  j["panel_extent_m"] = {layout.panel_extent.x(), layout.panel_extent.y()};
  auto elems = ordered_json::array();
  for (const auto& e : layout.elements) {
    ordered_json je;
    je["x_m"] = e.position.x();
    je["y_m"] = e.position.y();
    je["kind"] = to_string(e.kind);
    je["pol"] = to_string(e.pol);
    if (e.feeder > 0)
      je["feeder"] = e.feeder;
    else
      je["feeder"] = nullptr;
    elems.push_back(std::move(je));
  }
  j["elements"] = std::move(elems);
  return dump(j);
}

PanelLayout layout_from_json(std::string_view text) {
  const auto j = parse_json(text, "panel layout");
  try {
    PanelLayout layout;
    layout.design_frequency_hz = j.at("design_frequency_hz").get<double>();
    layout.panel_extent = {j.at("panel_extent_m").at(0).get<double>(),
                           j.at("panel_extent_m").at(1).get<double>()};
    for (const auto& je : j.at("elements")) {
      PanelElement e;
      e.position = {je.at("x_m").get<double>(), je.at("y_m").get<double>()};
      const std::string kind = je.at("kind").get<std::string>();
      if (kind == "SenseA")
        e.kind = CellKind::SenseA;
      else if (kind == "SenseB")
        e.kind = CellKind::SenseB;
      else if (kind == "Reflect")
        e.kind = CellKind::Reflect;
      else
        fail(ErrorCode::InvalidSpec, "unknown cell kind '" + kind + "'");
      const std::string pol = je.at("pol").get<std::string>();
      if (pol == "X")
        e.pol = Polarization::X;
      else if (pol == "Y")
        e.pol = Polarization::Y;
      else
        fail(ErrorCode::InvalidSpec, "unknown polarization '" + pol + "'");
      if (je.contains("feeder") && !je.at("feeder").is_null())
        e.feeder = je.at("feeder").get<int>();
      layout.elements.push_back(e);
    }
    return layout;
  } catch (const nlohmann::json::exception& e) {
    schema_fail("panel layout", e);
  }
}

std::string load_bank_to_json(const LoadBank& bank) {
  ordered_json j;
  j["z0_ohm"] = bank.reference_impedance;
  j["insertion_loss"] = bank.insertion_loss;
  ordered_json loads;
  for (SwitchState s : kAllSwitchStates) {
    const auto& load = bank.loads[static_cast<std::size_t>(s)];
    if (load.is_open())
      loads[to_string(s)] = "open";
    else
      loads[to_string(s)] = complex_json(*load.z);
  }
  j["loads"] = std::move(loads);
  return dump(j);
}

LoadBank load_bank_from_json(std::string_view text) {
  const auto j = parse_json(text, "load bank");
  try {
    LoadBank bank;
    bank.reference_impedance = j.at("z0_ohm").get<double>();
    bank.insertion_loss = j.value("insertion_loss", 1.0);
    const auto& loads = j.at("loads");
    for (SwitchState s : kAllSwitchStates) {
      const auto& jl = loads.at(to_string(s));
      if (jl.is_string()) {
        if (jl.get<std::string>() != "open")
          fail(ErrorCode::InvalidSpec,
               "load must be [re, im] or \"open\", got '" + jl.get<std::string>() + "'");
        bank.loads[static_cast<std::size_t>(s)] = LoadImpedance::open();
      } else {
        bank.loads[static_cast<std::size_t>(s)] = LoadImpedance::of(complex_from(jl));
      }
    }
    bank.validate();
    return bank;
  } catch (const nlohmann::json::exception& e) {
    schema_fail("load bank", e);
  }
}

namespace {

ordered_json term_json(const LorentzianTerm& t) {
  return ordered_json{{"static_value", t.static_value},
                      {"strength", t.strength},
                      {"resonance_hz", t.resonance_hz},
                      {"damping_hz", t.damping_hz}};
}

LorentzianTerm term_from(const ordered_json& j) {
  LorentzianTerm t;
  t.static_value = j.at("static_value").get<double>();
  t.strength = j.value("strength", 0.0);
  t.resonance_hz = j.value("resonance_hz", 0.0);
  t.damping_hz = j.value("damping_hz", 0.0);
  return t;
}

}  // namespace

std::string material_to_json(const MaterialModel& model) {
  ordered_json j;
  j["eps"] = term_json(model.eps);
  j["mu"] = term_json(model.mu);
  return dump(j);
}

MaterialModel material_from_json(std::string_view text) {
  const auto j = parse_json(text, "material model");
  try {
    MaterialModel m;
    m.eps = term_from(j.at("eps"));
    m.mu = term_from(j.at("mu"));
    m.validate();
    return m;
  } catch (const nlohmann::json::exception& e) {
    schema_fail("material model", e);
  }
}

std::string scenes_to_json(const std::vector<Scene>& scenes) {
  auto arr = ordered_json::array();
  for (const auto& s : scenes) {
    ordered_json js;
    js["tx"] = direction_json(s.tx_direction);
    js["rx"] = direction_json(s.rx_direction);
    js["tx_amplitude"] = complex_json(s.tx_amplitude);
    js["rx_amplitude"] = complex_json(s.rx_amplitude);
    if (std::isinf(s.snr_db))
      js["snr_db"] = "inf";
    else
      js["snr_db"] = s.snr_db;
    js["snapshots"] = s.snapshots;
    js["seed"] = s.seed;
    arr.push_back(std::move(js));
  }
  return dump(arr);
}

std::vector<Scene> scenes_from_json(std::string_view text) {
  const auto j = parse_json(text, "scene list");
  try {
    std::vector<Scene> scenes;
    for (const auto& js : j) {
      Scene s;
      s.tx_direction = direction_from(js.at("tx"));
      s.rx_direction = direction_from(js.at("rx"));
      if (js.contains("tx_amplitude")) s.tx_amplitude = complex_from(js.at("tx_amplitude"));
      if (js.contains("rx_amplitude")) s.rx_amplitude = complex_from(js.at("rx_amplitude"));
      if (js.contains("snr_db")) {
        if (js.at("snr_db").is_string() && js.at("snr_db").get<std::string>() == "inf")
          s.snr_db = std::numeric_limits<double>::infinity();
        else
          s.snr_db = js.at("snr_db").get<double>();
      }
      s.snapshots = js.value("snapshots", 64);
      s.seed = js.value("seed", std::uint64_t{0});
      s.validate();
      scenes.push_back(s);
    }
    return scenes;
  } catch (const nlohmann::json::exception& e) {
    schema_fail("scene list", e);
  }
}

std::string load_matrix_to_json(const LoadMatrix& matrix) {
  auto arr = ordered_json::array();
  for (SwitchState s : matrix.states) arr.push_back(to_string(s));
  return dump(arr);
}

LoadMatrix load_matrix_from_json(std::string_view text) {
  const auto j = parse_json(text, "load matrix");
  try {
    LoadMatrix m;
    for (const auto& js : j) m.states.push_back(switch_state_from_string(js.get<std::string>()));
    return m;
  } catch (const nlohmann::json::exception& e) {
    schema_fail("load matrix", e);
  }
}

std::string calibration_to_json(const CalibrationTable& table) {
  ordered_json j;
  j["frequency_hz"] = table.frequency_hz;
  auto inc = ordered_json::array();
  for (const auto& d : table.incident_grid) inc.push_back(direction_json(d));
  auto tgt = ordered_json::array();
  for (const auto& d : table.target_grid) tgt.push_back(direction_json(d));
  j["incident_grid"] = std::move(inc);
  j["target_grid"] = std::move(tgt);
  auto entries = ordered_json::array();
  for (const auto& lm : table.entries) {
    auto arr = ordered_json::array();
    for (SwitchState s : lm.states) arr.push_back(to_string(s));
    entries.push_back(std::move(arr));
  }
  j["entries"] = std::move(entries);
  return dump(j);
}

CalibrationTable calibration_from_json(std::string_view text) {
  const auto j = parse_json(text, "calibration table");
  try {
    CalibrationTable table;
    table.frequency_hz = j.at("frequency_hz").get<double>();
    for (const auto& jd : j.at("incident_grid")) table.incident_grid.push_back(direction_from(jd));
    for (const auto& jd : j.at("target_grid")) table.target_grid.push_back(direction_from(jd));
    for (const auto& je : j.at("entries")) {
      LoadMatrix lm;
      for (const auto& js : je) lm.states.push_back(switch_state_from_string(js.get<std::string>()));
      table.entries.push_back(std::move(lm));
    }
    return table;
  } catch (const nlohmann::json::exception& e) {
    schema_fail("calibration table", e);
  }
}

std::string doa_to_json(const DoAEstimate& est) {
  ordered_json j;
  j["theta_deg"] = est.direction.theta_deg();
  j["phi_deg"] = est.direction.phi_deg();
  j["peak"] = est.spectrum_peak;
  j["group"] = est.group;
  return dump(j);
}

std::string fit_report_to_json(const FitReport& report, const UnitCellSpec& spec) {
  ordered_json j;
  j["pass"] = report.pass();
  j["design_frequency_hz"] = spec.design_frequency_hz;
  j["lambda_m"] = report.lambda_m;
  j["lambda_over_8_m"] = report.lambda_over_8_m;
  j["guided_quarter_m"] = report.guided_quarter_m;
  j["slack"] = report.slack;
  j["quarter_wave_fits"] = report.quarter_wave_fits;
  j["disc_matches_quarter_wave"] = report.disc_matches_quarter_wave;
  j["disc_deviation"] = report.disc_deviation;
  j["ring_clearance_m"] = report.ring_clearance_m;
  j["disc_clearance_m"] = report.disc_clearance_m;
  j["cell"] = ordered_json{{"cell_pitch_m", spec.cell_pitch_m},
                           {"ring_outer_diameter_m", spec.ring_outer_diameter_m},
                           {"disc_diameter_m", spec.disc_diameter_m},
                           {"substrate_thickness_m", spec.substrate_thickness_m},
                           {"eps_ring", spec.eps_ring},
                           {"eps_disc", spec.eps_disc}};
  return dump(j);
}

std::string layout_report_to_json(const LayoutReport& report) {
  ordered_json j;
  j["pass"] = report.pass();
  j["tolerance"] = report.tolerance;
  j["reflect_pitch_deviation"] = report.reflect_pitch_deviation;
  j["sense_spacing_deviation"] = report.sense_spacing_deviation;
  j["interleave_offset_deviation"] = report.interleave_offset_deviation;
  auto viols = ordered_json::array();
  for (const auto& v : report.violations) {
    ordered_json jv;
    jv["check"] = v.check;
    jv["detail"] = v.detail;
    jv["elements"] = v.elements;
    viols.push_back(std::move(jv));
  }
  j["violations"] = std::move(viols);
  return dump(j);
}

std::string isolation_to_json(const IsolationReport& report) {
  ordered_json j;
  j["group1_db"] = report.group1_db;
  j["group2_db"] = report.group2_db;
  return dump(j);
}

std::string bands_to_json(const std::vector<FrequencyBand>& bands) {
  auto arr = ordered_json::array();
  for (const auto& b : bands) arr.push_back(ordered_json{{"lo_hz", b.lo_hz}, {"hi_hz", b.hi_hz}});
  ordered_json j;
  j["bands"] = std::move(arr);
  return dump(j);
}

std::string effective_params_to_csv(const EffectiveParams& params) {
  std::string out = "freq_hz,n_re,n_im,z_re,z_im,eps_re,eps_im,mu_re,mu_im,branch,gap_flag\n";
  for (const auto& r : params.records) {
    out += format_double(r.freq_hz);
    for (double v : {r.n.real(), r.n.imag(), r.z.real(), r.z.imag(), r.eps.real(), r.eps.imag(),
                     r.mu.real(), r.mu.imag()}) {
      out += ',';
      out += format_double(v);
    }
    out += ',';
    out += std::to_string(r.branch);
    out += ',';
    out += r.gap ? '1' : '0';
    out += '\n';
  }
  return out;
}

std::string pattern_to_csv(const FarFieldPattern& pattern) {
  std::string out = "theta_deg,phi_deg,af_re,af_im,af_db\n";
  for (const auto& s : pattern.samples) {
    const double mag = std::abs(s.af);
    const double db = mag > 0.0 ? 20.0 * std::log10(mag) : -600.0;
    out += format_double(s.dir.theta_deg());
    out += ',';
    out += format_double(s.dir.phi_deg());
    out += ',';
    out += format_double(s.af.real());
    out += ',';
    out += format_double(s.af.imag());
    out += ',';
    out += format_double(db);
    out += '\n';
  }
  return out;
}

std::string snapshot_to_csv(const Snapshot& snapshot) {
  std::string out = "element,snapshot,re,im\n";
  for (Eigen::Index e = 0; e < snapshot.samples.rows(); ++e) {
    for (Eigen::Index t = 0; t < snapshot.samples.cols(); ++t) {
      out += std::to_string(e);
      out += ',';
      out += std::to_string(t);
      out += ',';
      out += format_double(snapshot.samples(e, t).real());
      out += ',';
      out += format_double(snapshot.samples(e, t).imag());
      out += '\n';
    }
  }
  return out;
}

std::string episode_log_to_csv(const EpisodeLog& log) {
  std::string out =
      "step,tx_true_theta_deg,tx_true_phi_deg,rx_true_theta_deg,rx_true_phi_deg,"
      "tx_est_theta_deg,tx_est_phi_deg,rx_est_theta_deg,rx_est_phi_deg,"
      "grid_incident,grid_target,achieved_db,ideal_db,loss_db,coincident\n";
  for (std::size_t k = 0; k < log.steps.size(); ++k) {
    const auto& s = log.steps[k];
    out += std::to_string(k);
    for (double v : {s.tx_true.theta_deg(), s.tx_true.phi_deg(), s.rx_true.theta_deg(),
                     s.rx_true.phi_deg(), s.tx_est.theta_deg(), s.tx_est.phi_deg(),
                     s.rx_est.theta_deg(), s.rx_est.phi_deg()}) {
      out += ',';
      out += format_double(v);
    }
    out += ',';
    out += std::to_string(s.grid_incident);
    out += ',';
    out += std::to_string(s.grid_target);
    for (double v : {s.achieved_gain_db, s.ideal_gain_db, s.loss_db}) {
      out += ',';
      out += format_double(v);
    }
    out += ',';
    out += s.coincident ? '1' : '0';
    out += '\n';
  }
  return out;
}

}  // namespace hris

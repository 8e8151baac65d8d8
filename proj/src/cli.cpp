// SPDX-License-Identifier: Apache-2.0
#include "hris/cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <limits>

#include "CLI11.hpp"
#include "hris/numfmt.hpp"
#include "hris/rng.hpp"
#include "hris/serialization.hpp"
#include "json.hpp"

namespace hris {

namespace {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

struct GlobalOpts {
  double freq_ghz = 5.5;
  std::uint64_t seed = 1;
  std::string out;
};

std::string default_out_dir() {
  if (const char* env = std::getenv(kOutputDirEnvVar); env && *env) return env;
  return "out";
}

std::string out_path(const GlobalOpts& g, const std::string& name) {
  fs::create_directories(g.out);
  return (fs::path(g.out) / name).string();
}

void write_config(const GlobalOpts& g, const std::string& command, ordered_json params) {
  ordered_json j;
  j["command"] = command;
  j["freq_ghz"] = g.freq_ghz;
  j["seed"] = g.seed;
  j["out"] = g.out;
  j["params"] = std::move(params);
  write_text_file(out_path(g, command + "_config.json"), j.dump(2) + "\n");
}

std::string fmt(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

PanelLayout load_or_generate_layout(const std::string& layout_path, int nx, int ny,
                                    double freq_hz, double pitch_mm, const std::string& axis) {
  if (!layout_path.empty()) return layout_from_json(read_text_file(layout_path));
  LayoutOptions opt;
  opt.pitch_m = pitch_mm > 0.0 ? pitch_mm * 1e-3 : 0.0;
  opt.interleave_axis = (axis == "y") ? 1 : 0;
  return generate_layout(nx, ny, freq_hz, opt);
}

LoadBank load_or_default_bank(const std::string& bank_path) {
  if (!bank_path.empty()) return load_bank_from_json(read_text_file(bank_path));
  return LoadBank::default_bank();
}

// ---- retrieve ----

struct RetrieveOpts {
  std::string input;
  double thickness_mm = 0.0;
  int branch_hint = 0;
  bool have_hint = false;
};

void cmd_retrieve(const GlobalOpts& g, const RetrieveOpts& o) {
  SlabSpec slab;
  slab.thickness_m = o.thickness_mm * 1e-3;
  slab.validate();  // fail fast before touching the input file

  const std::string text = read_text_file(o.input);
  const bool csv = fs::path(o.input).extension() == ".csv";
  const SParamTable table = csv ? parse_sparam_csv(text) : parse_touchstone(text);

  std::optional<int> hint;
  if (o.have_hint) hint = o.branch_hint;
  const EffectiveParams params = unwrap_branch(table, slab, hint);
  const auto bands = classify_dng_bands(params);

  write_text_file(out_path(g, "effective_params.csv"), effective_params_to_csv(params));
  write_text_file(out_path(g, "dng_bands.json"), bands_to_json(bands));
  write_config(g, "retrieve",
               ordered_json{{"input", o.input},
                            {"thickness_mm", o.thickness_mm},
                            {"branch_hint", o.have_hint ? ordered_json(o.branch_hint)
                                                        : ordered_json(nullptr)}});

  std::size_t gaps = 0;
  for (const auto& r : params.records) gaps += r.gap ? 1 : 0;
  std::cout << params.records.size() << " points, " << gaps << " gaps, " << bands.size()
            << " double-negative band(s)";
  for (const auto& b : bands)
    std::cout << " [" << fmt(b.lo_hz / 1e9) << ", " << fmt(b.hi_hz / 1e9) << "] GHz";
  std::cout << "\n";
}

// ---- forward ----

struct ForwardOpts {
  std::string model;
  double fmin_ghz = 4.0;
  double fmax_ghz = 7.0;
  int points = 200;
  double thickness_mm = 0.8;
  std::string format = "ri";
  std::string unit = "ghz";
  bool csv = false;
};

void cmd_forward(const GlobalOpts& g, const ForwardOpts& o) {
  if (o.points < 2) fail(ErrorCode::InvalidArgument, "need at least 2 sweep points");
  if (!(o.fmin_ghz > 0.0) || !(o.fmax_ghz > o.fmin_ghz))
    fail(ErrorCode::InvalidArgument, "need 0 < fmin < fmax");
  SlabSpec slab;
  slab.thickness_m = o.thickness_mm * 1e-3;
  slab.validate();

  const MaterialModel model = material_from_json(read_text_file(o.model));

  SParamTable table;
  table.source_format = SParamFormat::RI;
  table.source_unit = FrequencyUnit::GHz;
  for (int i = 0; i < o.points; ++i) {
    const double f = (o.fmin_ghz +
                      (o.fmax_ghz - o.fmin_ghz) * static_cast<double>(i) /
                          static_cast<double>(o.points - 1)) *
                     1e9;
    const auto [eps, mu] = evaluate_material(model, f);
    const auto [s11, s21] = slab_forward(eps, mu, slab.thickness_m, f);
    SParamRecord rec;
    rec.freq_hz = f;
    rec.s11 = rec.s22 = s11;  // symmetric reciprocal slab
    rec.s21 = rec.s12 = s21;
    table.records.push_back(rec);
  }

  SParamFormat fmt_out = SParamFormat::RI;
  if (o.format == "ma") fmt_out = SParamFormat::MA;
  else if (o.format == "db") fmt_out = SParamFormat::DB;
  else if (o.format != "ri") fail(ErrorCode::InvalidArgument, "format must be ri, ma, or db");
  FrequencyUnit unit_out = FrequencyUnit::GHz;
  if (o.unit == "hz") unit_out = FrequencyUnit::Hz;
  else if (o.unit == "khz") unit_out = FrequencyUnit::kHz;
  else if (o.unit == "mhz") unit_out = FrequencyUnit::MHz;
  else if (o.unit != "ghz") fail(ErrorCode::InvalidArgument, "unit must be hz, khz, mhz, or ghz");

  if (o.csv)
    write_text_file(out_path(g, "sweep.csv"), write_sparam_csv(table));
  else
    write_text_file(out_path(g, "sweep.s2p"), write_touchstone(table, fmt_out, unit_out));
  write_config(g, "forward",
               ordered_json{{"model", o.model},
                            {"fmin_ghz", o.fmin_ghz},
                            {"fmax_ghz", o.fmax_ghz},
                            {"points", o.points},
                            {"thickness_mm", o.thickness_mm},
                            {"format", o.format},
                            {"unit", o.unit},
                            {"csv", o.csv}});
  std::cout << o.points << " points written\n";
}

// ---- layout ----

struct LayoutOpts {
  int nx = 16;
  int ny = 16;
  double pitch_mm = 0.0;
  std::string axis = "x";
  double tolerance = 0.05;
};

void cmd_layout(const GlobalOpts& g, const LayoutOpts& o) {
  const PanelLayout layout =
      load_or_generate_layout("", o.nx, o.ny, g.freq_ghz * 1e9, o.pitch_mm, o.axis);
  const LayoutReport report = validate_layout(layout, o.tolerance);

  write_text_file(out_path(g, "layout.json"), layout_to_json(layout));
  write_text_file(out_path(g, "layout_report.json"), layout_report_to_json(report));
  write_config(g, "layout",
               ordered_json{{"nx", o.nx},
                            {"ny", o.ny},
                            {"pitch_mm", o.pitch_mm},
                            {"axis", o.axis},
                            {"tolerance", o.tolerance}});

  std::cout << layout.elements.size() << " elements (" << layout.count(CellKind::SenseA)
            << " SenseA, " << layout.count(CellKind::SenseB) << " SenseB, "
            << layout.count(CellKind::Reflect) << " Reflect), validator "
            << (report.pass() ? "PASS" : "FAIL") << " (worst pitch deviation "
            << fmt(report.reflect_pitch_deviation * 100.0, 2) << "%)\n";
}

// ---- checkfit ----

struct CheckFitOpts {
  double pitch_mm = 7.0;
  double ring_mm = 6.4;
  double disc_mm = 3.8;
  double substrate_mm = 0.8;
  double eps_ring = 3.5;
  double eps_disc = 10.2;
  double slack = 0.05;
};

void cmd_checkfit(const GlobalOpts& g, const CheckFitOpts& o) {
  UnitCellSpec spec;
  spec.cell_pitch_m = o.pitch_mm * 1e-3;
  spec.ring_outer_diameter_m = o.ring_mm * 1e-3;
  spec.disc_diameter_m = o.disc_mm * 1e-3;
  spec.substrate_thickness_m = o.substrate_mm * 1e-3;
  spec.eps_ring = o.eps_ring;
  spec.eps_disc = o.eps_disc;
  spec.design_frequency_hz = g.freq_ghz * 1e9;

  const FitReport report = check_fit(spec, o.slack);
  write_text_file(out_path(g, "fit_report.json"), fit_report_to_json(report, spec));
  write_config(g, "checkfit",
               ordered_json{{"pitch_mm", o.pitch_mm},
                            {"ring_mm", o.ring_mm},
                            {"disc_mm", o.disc_mm},
                            {"substrate_mm", o.substrate_mm},
                            {"eps_ring", o.eps_ring},
                            {"eps_disc", o.eps_disc},
                            {"slack", o.slack}});

  std::cout << (report.pass() ? "PASS" : "FAIL") << ": guided quarter wave "
            << fmt(report.guided_quarter_m * 1e3) << " mm "
            << (report.quarter_wave_fits ? "<" : ">=") << " lambda/8 "
            << fmt(report.lambda_over_8_m * 1e3) << " mm; disc " << fmt(o.disc_mm) << " mm "
            << (report.disc_matches_quarter_wave ? "fits" : "oversized") << "\n";
}

// ---- steer ----

struct SteerOpts {
  std::string layout_path;
  int nx = 16, ny = 16;
  std::string bank_path;
  double inc_theta = 0.0, inc_phi = 0.0;
  double tgt_theta = 0.0, tgt_phi = 0.0;
  double rho = 0.5;
  double theta_step = 1.0, phi_step = 1.0;
  bool continuous = false;
};

void cmd_steer(const GlobalOpts& g, const SteerOpts& o) {
  const PanelLayout layout =
      load_or_generate_layout(o.layout_path, o.nx, o.ny, g.freq_ghz * 1e9, 0.0, "x");
  const LoadBank bank = load_or_default_bank(o.bank_path);
  const double f = layout.design_frequency_hz;
  const Direction incident = Direction::from_degrees(o.inc_theta, o.inc_phi);
  const Direction target = Direction::from_degrees(o.tgt_theta, o.tgt_phi);

  ElementModel em;
  em.sense_rho = o.rho;

  std::vector<double> weights;
  for (const auto& e : layout.elements)
    weights.push_back(e.kind == CellKind::Reflect ? 1.0 : std::sqrt(1.0 - o.rho));
  const std::vector<double> phases = required_phase_profile(layout, incident, target);
  const LoadMatrix matrix = quantize_profile(phases, bank, weights);

  Eigen::VectorXcd gammas;
  if (o.continuous) {
    gammas.resize(static_cast<Eigen::Index>(phases.size()));
    for (std::size_t i = 0; i < phases.size(); ++i)
      gammas[static_cast<Eigen::Index>(i)] = bank.insertion_loss * std::polar(1.0, phases[i]);
  } else {
    gammas = state_gammas(matrix, bank);
  }

  GridSpec grid;
  grid.theta_step_deg = o.theta_step;
  grid.phi_step_deg = o.phi_step;
  const FarFieldPattern pat = pattern(layout, gammas, incident, grid, f, em);
  const std::size_t peak = pattern_argmax(pat);

  // Quantized and continuous responses in the exact target direction.
  const std::complex<double> af_q =
      array_factor(layout, state_gammas(matrix, bank), incident, target, f, em);
  Eigen::VectorXcd cont(static_cast<Eigen::Index>(phases.size()));
  for (std::size_t i = 0; i < phases.size(); ++i)
    cont[static_cast<Eigen::Index>(i)] = bank.insertion_loss * std::polar(1.0, phases[i]);
  const std::complex<double> af_c = array_factor(layout, cont, incident, target, f, em);
  const double q_db = 20.0 * std::log10(std::abs(af_q));
  const double c_db = 20.0 * std::log10(std::abs(af_c));

  write_text_file(out_path(g, "load_matrix.json"), load_matrix_to_json(matrix));
  write_text_file(out_path(g, "pattern.csv"), pattern_to_csv(pat));
  ordered_json rep;
  rep["incident"] = ordered_json{{"theta_deg", incident.theta_deg()},
                                 {"phi_deg", incident.phi_deg()}};
  rep["target"] =
      ordered_json{{"theta_deg", target.theta_deg()}, {"phi_deg", target.phi_deg()}};
  rep["peak"] = ordered_json{{"theta_deg", pat.samples[peak].dir.theta_deg()},
                             {"phi_deg", pat.samples[peak].dir.phi_deg()},
                             {"af_db", 20.0 * std::log10(std::abs(pat.samples[peak].af))}};
  rep["af_target_db"] = q_db;
  rep["af_target_continuous_db"] = c_db;
  rep["quantization_loss_db"] = c_db - q_db;
  rep["continuous_pattern"] = o.continuous;
  write_text_file(out_path(g, "steer_report.json"), rep.dump(2) + "\n");
  write_config(g, "steer",
               ordered_json{{"layout", o.layout_path},
                            {"nx", o.nx},
                            {"ny", o.ny},
                            {"bank", o.bank_path},
                            {"inc_theta_deg", o.inc_theta},
                            {"inc_phi_deg", o.inc_phi},
                            {"tgt_theta_deg", o.tgt_theta},
                            {"tgt_phi_deg", o.tgt_phi},
                            {"rho", o.rho},
                            {"theta_step_deg", o.theta_step},
                            {"phi_step_deg", o.phi_step},
                            {"continuous", o.continuous}});

  std::cout << "peak at theta " << fmt(pat.samples[peak].dir.theta_deg(), 1) << ", phi "
            << fmt(pat.samples[peak].dir.phi_deg(), 1) << "; quantization loss "
            << fmt(c_db - q_db, 3) << " dB\n";
}

// ---- sense ----

struct SenseOpts {
  std::string layout_path;
  int nx = 16, ny = 16;
  double tx_theta = 20.0, tx_phi = 0.0;
  double rx_theta = 40.0, rx_phi = 180.0;
  double snr_db = 30.0;
  int snapshots = 64;
  double leak_db = -30.0;
  double rho = 0.5;
  double theta_step = 1.0, phi_step = 5.0;
};

void cmd_sense(const GlobalOpts& g, const SenseOpts& o) {
  const PanelLayout layout =
      load_or_generate_layout(o.layout_path, o.nx, o.ny, g.freq_ghz * 1e9, 0.0, "x");
  Scene scene;
  scene.tx_direction = Direction::from_degrees(o.tx_theta, o.tx_phi);
  scene.rx_direction = Direction::from_degrees(o.rx_theta, o.rx_phi);
  scene.snr_db = o.snr_db;
  scene.snapshots = o.snapshots;
  scene.seed = g.seed;

  SensingOptions so;
  so.sense_rho = o.rho;
  so.leak_amplitude = std::pow(10.0, o.leak_db / 20.0);

  const auto [snap1, snap2] = snapshot_model(layout, scene, so);
  GridSpec grid = default_doa_grid();
  grid.theta_step_deg = o.theta_step;
  grid.phi_step_deg = o.phi_step;
  const DoAEstimate est1 = estimate_doa(snap1, layout, 1, grid);
  const DoAEstimate est2 = estimate_doa(snap2, layout, 2, grid);
  const IsolationReport iso = isolation_report(layout, scene, so);

  write_text_file(out_path(g, "snapshots_group1.csv"), snapshot_to_csv(snap1));
  write_text_file(out_path(g, "snapshots_group2.csv"), snapshot_to_csv(snap2));
  write_text_file(out_path(g, "doa_group1.json"), doa_to_json(est1));
  write_text_file(out_path(g, "doa_group2.json"), doa_to_json(est2));
  write_text_file(out_path(g, "isolation.json"), isolation_to_json(iso));
  write_config(g, "sense",
               ordered_json{{"layout", o.layout_path},
                            {"nx", o.nx},
                            {"ny", o.ny},
                            {"tx_theta_deg", o.tx_theta},
                            {"tx_phi_deg", o.tx_phi},
                            {"rx_theta_deg", o.rx_theta},
                            {"rx_phi_deg", o.rx_phi},
                            {"snr_db", o.snr_db},
                            {"snapshots", o.snapshots},
                            {"leak_db", o.leak_db},
                            {"rho", o.rho},
                            {"theta_step_deg", o.theta_step},
                            {"phi_step_deg", o.phi_step}});

  std::cout << "group 1: theta " << fmt(est1.direction.theta_deg(), 2) << " (true "
            << fmt(o.tx_theta, 2) << "), group 2: theta " << fmt(est2.direction.theta_deg(), 2)
            << " (true " << fmt(o.rx_theta, 2) << "), isolation " << fmt(iso.group1_db, 1) << "/"
            << fmt(iso.group2_db, 1) << " dB\n";
}

// ---- loop ----

struct LoopOpts {
  std::string layout_path;
  int nx = 16, ny = 16;
  std::string bank_path;
  std::string scenes_path;
  int num_scenes = 20;
  double snr_db = 40.0;
  int snapshots = 64;
  double leak_db = -30.0;
  double rho = 0.5;
  double lut_theta_max = 60.0;
  double lut_theta_step = 10.0;
  double lut_phi_step = 90.0;
  bool ideal_sensing = false;
  bool write_lut = false;
};

void cmd_loop(const GlobalOpts& g, const LoopOpts& o) {
  const PanelLayout layout =
      load_or_generate_layout(o.layout_path, o.nx, o.ny, g.freq_ghz * 1e9, 0.0, "x");
  const LoadBank bank = load_or_default_bank(o.bank_path);
  const double f = layout.design_frequency_hz;

  const auto grid = make_direction_grid(0.0, o.lut_theta_max, o.lut_theta_step, 0.0, 360.0,
                                        o.lut_phi_step);
  const CalibrationTable table = build_lut(layout, bank, grid, grid, f, o.rho);

  std::vector<Scene> scenes;
  if (!o.scenes_path.empty()) {
    scenes = scenes_from_json(read_text_file(o.scenes_path));
  } else {
    Rng rng(g.seed);
    for (int k = 0; k < o.num_scenes; ++k) {
      Scene s;
      s.tx_direction = grid[static_cast<std::size_t>(rng.next_u64() % grid.size())];
      s.rx_direction = grid[static_cast<std::size_t>(rng.next_u64() % grid.size())];
      s.snr_db = o.snr_db;
      s.snapshots = o.snapshots;
      s.seed = rng.next_u64();
      scenes.push_back(s);
    }
  }

  EpisodeOptions eo;
  eo.sensing.sense_rho = o.rho;
  eo.sensing.leak_amplitude = std::pow(10.0, o.leak_db / 20.0);
  eo.bypass_sensing = o.ideal_sensing;
  const EpisodeLog log = run_episode(layout, bank, table, scenes, eo);

  std::vector<double> losses, errs;
  for (const auto& s : log.steps) {
    losses.push_back(s.loss_db);
    errs.push_back(angular_distance(s.tx_true, s.tx_est) * 180.0 / M_PI);
    errs.push_back(angular_distance(s.rx_true, s.rx_est) * 180.0 / M_PI);
  }
  auto median = [](std::vector<double> v) {
    if (v.empty()) return 0.0;
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
  };
  const double med_loss = median(losses);
  const double med_err = median(errs);

  write_text_file(out_path(g, "episode_log.csv"), episode_log_to_csv(log));
  write_text_file(out_path(g, "scenes_resolved.json"), scenes_to_json(scenes));
  if (o.write_lut) write_text_file(out_path(g, "lut.json"), calibration_to_json(table));
  ordered_json rep;
  rep["scenes"] = log.steps.size();
  rep["median_loss_db"] = med_loss;
  rep["median_pointing_error_deg"] = med_err;
  rep["lut_incident_nodes"] = table.incident_grid.size();
  rep["lut_target_nodes"] = table.target_grid.size();
  write_text_file(out_path(g, "loop_report.json"), rep.dump(2) + "\n");
  write_config(g, "loop",
               ordered_json{{"layout", o.layout_path},
                            {"nx", o.nx},
                            {"ny", o.ny},
                            {"bank", o.bank_path},
                            {"scenes", o.scenes_path},
                            {"num_scenes", o.num_scenes},
                            {"snr_db", o.snr_db},
                            {"snapshots", o.snapshots},
                            {"leak_db", o.leak_db},
                            {"rho", o.rho},
                            {"lut_theta_max_deg", o.lut_theta_max},
                            {"lut_theta_step_deg", o.lut_theta_step},
                            {"lut_phi_step_deg", o.lut_phi_step},
                            {"ideal_sensing", o.ideal_sensing},
                            {"write_lut", o.write_lut}});

  std::cout << log.steps.size() << " scenes, median loss " << fmt(med_loss, 3)
            << " dB, median pointing error " << fmt(med_err, 3) << " deg\n";
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"design and simulation toolkit for a sensing/reflecting metasurface panel"};
  app.require_subcommand(1);

  GlobalOpts g;
  g.out = default_out_dir();
  app.add_option("--freq-ghz", g.freq_ghz, "design frequency in GHz")->capture_default_str();
  app.add_option("--seed", g.seed, "random seed")->capture_default_str();
  app.add_option("--out", g.out, "output directory")->capture_default_str();

  auto* retrieve = app.add_subcommand("retrieve", "invert an S-parameter sweep to effective parameters");
  retrieve->fallthrough();
  RetrieveOpts ro;
  retrieve->add_option("--input", ro.input, "Touchstone .s2p or S-parameter .csv file")->required();
  retrieve->add_option("--thickness-mm", ro.thickness_mm, "slab thickness in mm")->required();
  auto* hint_opt = retrieve->add_option("--branch-hint", ro.branch_hint,
                                        "initial branch number for electrically thick slabs");
  retrieve->callback([&] {
    ro.have_hint = hint_opt->count() > 0;
    cmd_retrieve(g, ro);
  });

  auto* forward = app.add_subcommand("forward", "synthesize slab S-parameters from a material model");
  forward->fallthrough();
  ForwardOpts fo;
  forward->add_option("--model", fo.model, "material model JSON")->required();
  forward->add_option("--fmin-ghz", fo.fmin_ghz, "sweep start")->capture_default_str();
  forward->add_option("--fmax-ghz", fo.fmax_ghz, "sweep stop")->capture_default_str();
  forward->add_option("--points", fo.points, "sweep points")->capture_default_str();
  forward->add_option("--thickness-mm", fo.thickness_mm, "slab thickness in mm")->capture_default_str();
  forward->add_option("--format", fo.format, "output format: ri, ma, db")->capture_default_str();
  forward->add_option("--unit", fo.unit, "frequency unit: hz, khz, mhz, ghz")->capture_default_str();
  forward->add_flag("--csv", fo.csv, "write the internal CSV format instead of Touchstone");
  forward->callback([&] { cmd_forward(g, fo); });

  auto* layout = app.add_subcommand("layout", "generate and validate a panel layout");
  layout->fallthrough();
  LayoutOpts lo;
  layout->add_option("--nx", lo.nx, "cells along x")->capture_default_str();
  layout->add_option("--ny", lo.ny, "cells along y")->capture_default_str();
  layout->add_option("--pitch-mm", lo.pitch_mm, "grid pitch override in mm (0 = lambda/8)")
      ->capture_default_str();
  layout->add_option("--axis", lo.axis, "interleave axis: x or y")->capture_default_str();
  layout->add_option("--tolerance", lo.tolerance, "validator relative tolerance")
      ->capture_default_str();
  layout->callback([&] { cmd_layout(g, lo); });

  auto* checkfit = app.add_subcommand("checkfit", "check hybrid-cell sizing rules");
  checkfit->fallthrough();
  CheckFitOpts co;
  checkfit->add_option("--pitch-mm", co.pitch_mm, "cell pitch")->capture_default_str();
  checkfit->add_option("--ring-mm", co.ring_mm, "ring outer diameter")->capture_default_str();
  checkfit->add_option("--disc-mm", co.disc_mm, "sensing disc diameter")->capture_default_str();
  checkfit->add_option("--substrate-mm", co.substrate_mm, "substrate thickness")
      ->capture_default_str();
  checkfit->add_option("--eps-ring", co.eps_ring, "ring substrate permittivity")
      ->capture_default_str();
  checkfit->add_option("--eps-disc", co.eps_disc, "disc substrate permittivity")
      ->capture_default_str();
  checkfit->add_option("--slack", co.slack, "disc size slack fraction")->capture_default_str();
  checkfit->callback([&] { cmd_checkfit(g, co); });

  auto* steer = app.add_subcommand("steer", "quantize a steering profile and export its pattern");
  steer->fallthrough();
  SteerOpts so;
  steer->add_option("--layout", so.layout_path, "panel layout JSON (generated when omitted)");
  steer->add_option("--nx", so.nx, "cells along x when generating")->capture_default_str();
  steer->add_option("--ny", so.ny, "cells along y when generating")->capture_default_str();
  steer->add_option("--bank", so.bank_path, "load bank JSON (default bank when omitted)");
  steer->add_option("--inc-theta", so.inc_theta, "incident theta in degrees")->capture_default_str();
  steer->add_option("--inc-phi", so.inc_phi, "incident phi in degrees")->capture_default_str();
  steer->add_option("--tgt-theta", so.tgt_theta, "target theta in degrees")->required();
  steer->add_option("--tgt-phi", so.tgt_phi, "target phi in degrees")->capture_default_str();
  steer->add_option("--rho", so.rho, "hybrid sensing power split")->capture_default_str();
  steer->add_option("--theta-step", so.theta_step, "pattern grid theta step in degrees")
      ->capture_default_str();
  steer->add_option("--phi-step", so.phi_step, "pattern grid phi step in degrees")
      ->capture_default_str();
  steer->add_flag("--continuous", so.continuous,
                  "export the continuous-phase pattern instead of the quantized one");
  steer->callback([&] { cmd_steer(g, so); });

  auto* sense = app.add_subcommand("sense", "simulate sensing snapshots and estimate directions");
  sense->fallthrough();
  SenseOpts seo;
  sense->add_option("--layout", seo.layout_path, "panel layout JSON (generated when omitted)");
  sense->add_option("--nx", seo.nx, "cells along x when generating")->capture_default_str();
  sense->add_option("--ny", seo.ny, "cells along y when generating")->capture_default_str();
  sense->add_option("--tx-theta", seo.tx_theta, "transmit-side theta in degrees")
      ->capture_default_str();
  sense->add_option("--tx-phi", seo.tx_phi, "transmit-side phi in degrees")->capture_default_str();
  sense->add_option("--rx-theta", seo.rx_theta, "receive-side theta in degrees")
      ->capture_default_str();
  sense->add_option("--rx-phi", seo.rx_phi, "receive-side phi in degrees")->capture_default_str();
  sense->add_option("--snr-db", seo.snr_db, "per-element SNR in dB")->capture_default_str();
  sense->add_option("--snapshots", seo.snapshots, "snapshot count")->capture_default_str();
  sense->add_option("--leak-db", seo.leak_db, "cross-polarization leak in dB")
      ->capture_default_str();
  sense->add_option("--rho", seo.rho, "hybrid sensing power split")->capture_default_str();
  sense->add_option("--theta-step", seo.theta_step, "scan grid theta step")->capture_default_str();
  sense->add_option("--phi-step", seo.phi_step, "scan grid phi step")->capture_default_str();
  sense->callback([&] { cmd_sense(g, seo); });

  auto* loop = app.add_subcommand("loop", "run closed-loop sense/steer episodes");
  loop->fallthrough();
  LoopOpts po;
  loop->add_option("--layout", po.layout_path, "panel layout JSON (generated when omitted)");
  loop->add_option("--nx", po.nx, "cells along x when generating")->capture_default_str();
  loop->add_option("--ny", po.ny, "cells along y when generating")->capture_default_str();
  loop->add_option("--bank", po.bank_path, "load bank JSON (default bank when omitted)");
  loop->add_option("--scenes", po.scenes_path, "scene list JSON (generated when omitted)");
  loop->add_option("--num-scenes", po.num_scenes, "scenes to generate")->capture_default_str();
  loop->add_option("--snr-db", po.snr_db, "per-element SNR for generated scenes")
      ->capture_default_str();
  loop->add_option("--snapshots", po.snapshots, "snapshots per generated scene")
      ->capture_default_str();
  loop->add_option("--leak-db", po.leak_db, "cross-polarization leak in dB")
      ->capture_default_str();
  loop->add_option("--rho", po.rho, "hybrid sensing power split")->capture_default_str();
  loop->add_option("--lut-theta-max", po.lut_theta_max, "calibration grid theta maximum")
      ->capture_default_str();
  loop->add_option("--lut-theta-step", po.lut_theta_step, "calibration grid theta step")
      ->capture_default_str();
  loop->add_option("--lut-phi-step", po.lut_phi_step, "calibration grid phi step")
      ->capture_default_str();
  loop->add_flag("--ideal-sensing", po.ideal_sensing, "bypass sensing, inject true directions");
  loop->add_flag("--write-lut", po.write_lut, "also export the calibration table");
  loop->callback([&] { cmd_loop(g, po); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

int run_cli(const std::vector<std::string>& args) {
  std::vector<std::string> storage;
  storage.reserve(args.size() + 1);
  storage.push_back("hris");
  for (const auto& a : args) storage.push_back(a);
  std::vector<const char*> argv;
  argv.reserve(storage.size());
  for (const auto& s : storage) argv.push_back(s.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data());
}

}  // namespace hris

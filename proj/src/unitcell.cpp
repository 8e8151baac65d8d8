// SPDX-License-Identifier: Apache-2.0
#include "hris/unitcell.hpp"

#include <cmath>

#include "hris/numfmt.hpp"

namespace hris {

const char* to_string(SwitchState s) {
  switch (s) {
    case SwitchState::S0: return "S0";
    case SwitchState::S1: return "S1";
    case SwitchState::S2: return "S2";
    case SwitchState::S3: return "S3";
  }
  return "?";
}

SwitchState switch_state_from_string(const std::string& name) {
  for (SwitchState s : kAllSwitchStates)
    if (name == to_string(s)) return s;
  fail(ErrorCode::InvalidArgument, "unknown switch state '" + name + "'");
}

void LoadBank::validate() const {
  if (!(reference_impedance > 0.0) || !std::isfinite(reference_impedance))
    fail(ErrorCode::InvalidSpec, "reference impedance must be positive");
  if (!(insertion_loss > 0.0) || !(insertion_loss <= 1.0))
    fail(ErrorCode::InvalidSpec, "insertion loss must lie in (0, 1]");
  for (const auto& load : loads) {
    if (load.is_open()) continue;
    if (!std::isfinite(load.z->real()) || !std::isfinite(load.z->imag()))
      fail(ErrorCode::InvalidSpec, "load impedance must be finite or symbolic open");
    if (std::abs(*load.z + reference_impedance) < 1e-300)
      fail(ErrorCode::DegenerateLoad, "load equals -z0, reflection undefined");
  }
}

LoadBank LoadBank::default_bank(double z0, double insertion_loss) {
  LoadBank bank;
  bank.reference_impedance = z0;
  bank.insertion_loss = insertion_loss;
  bank.loads[0] = LoadImpedance::open();                                  // gamma = +1
  bank.loads[1] = LoadImpedance::of({0.0, z0});                           // gamma = +j
  bank.loads[2] = LoadImpedance::of({0.0, 0.0});                          // gamma = -1
  bank.loads[3] = LoadImpedance::of({0.0, -z0});                          // gamma = -j
  return bank;
}

std::complex<double> load_reflection(std::complex<double> z_load, double z0) {
  const std::complex<double> den = z_load + z0;
  if (std::abs(den) < 1e-300)
    fail(ErrorCode::DegenerateLoad, "z_load = -z0 has no reflection coefficient");
  return (z_load - z0) / den;
}

std::complex<double> load_reflection(const LoadImpedance& load, double z0) {
  if (load.is_open()) return {1.0, 0.0};
  return load_reflection(*load.z, z0);
}

std::complex<double> state_reflection(SwitchState state, const LoadBank& bank) {
  bank.validate();
  return bank.insertion_loss *
         load_reflection(bank.loads[static_cast<std::size_t>(state)], bank.reference_impedance);
}

void HybridCellModel::validate() const {
  if (!(power_split_rho >= 0.0) || !(power_split_rho <= 1.0))
    fail(ErrorCode::InvalidSpec, "power split rho must lie in [0, 1]");
  load_bank.validate();
}

HybridResponse hybrid_response(const HybridCellModel& model, SwitchState state) {
  model.validate();
  HybridResponse resp;
  resp.sense = std::sqrt(model.power_split_rho);
  resp.reflect = std::sqrt(1.0 - model.power_split_rho) * state_reflection(state, model.load_bank);
  return resp;
}

void ShortedPatchModel::validate() const {
  auto positive = [](double v) { return v > 0.0 && std::isfinite(v); };
  if (!positive(patch_capacitance_f) || !positive(patch_inductance_h) ||
      !positive(patch_conductance_s) || !positive(pin_inductance_per_m) ||
      !positive(pin_feed_distance_m))
    fail(ErrorCode::InvalidSpec, "patch model fields must all be positive");
  if (pin_resistance_per_m < 0.0 || !std::isfinite(pin_resistance_per_m))
    fail(ErrorCode::InvalidSpec, "pin resistance must be non-negative");
}

ShortedPatchModel ShortedPatchModel::default_model() {
  ShortedPatchModel m;
  m.patch_inductance_h = 1.0e-9;
  // resonates the bare patch at 5.5 GHz
  const double w0 = 2.0 * M_PI * 5.5e9;
  m.patch_capacitance_f = 1.0 / (w0 * w0 * m.patch_inductance_h);
  m.patch_conductance_s = 2.0e-3;
  m.pin_inductance_per_m = 0.8e-6;  // 0.8 nH per mm of pin-feed separation
  m.pin_feed_distance_m = 1.0e-3;   // inside the 1.9 mm disc radius
  return m;
}

std::complex<double> shorted_patch_admittance(const ShortedPatchModel& model, double freq_hz) {
  if (!(freq_hz > 0.0)) fail(ErrorCode::InvalidArgument, "frequency must be positive");
  const double w = 2.0 * M_PI * freq_hz;
  std::complex<double> y(model.patch_conductance_s,
                         w * model.patch_capacitance_f - 1.0 / (w * model.patch_inductance_h));
  const std::complex<double> z_pin(model.pin_resistance_per_m * model.pin_feed_distance_m,
                                   w * model.pin_inductance_h());
  y += 1.0 / z_pin;
  return y;
}

std::complex<double> shorted_patch_input(const ShortedPatchModel& model, double freq_hz) {
  model.validate();
  return 1.0 / shorted_patch_admittance(model, freq_hz);
}

double patch_resonance(const ShortedPatchModel& model, double f_lo_hz, double f_hi_hz) {
  model.validate();
  if (!(f_lo_hz > 0.0) || !(f_hi_hz > f_lo_hz))
    fail(ErrorCode::InvalidArgument, "bracket must satisfy 0 < f_lo < f_hi");
  auto suscept = [&](double f) { return shorted_patch_admittance(model, f).imag(); };
  double lo = f_lo_hz, hi = f_hi_hz;
  double s_lo = suscept(lo), s_hi = suscept(hi);
  if (s_lo == 0.0) return lo;
  if (s_hi == 0.0) return hi;
  if ((s_lo > 0.0) == (s_hi > 0.0))
    fail(ErrorCode::NoResonanceInBracket,
         "Im(Y) has the same sign at " + format_double(f_lo_hz) + " and " + format_double(f_hi_hz) + " Hz");
  for (int it = 0; it < 200 && (hi - lo) > 1e-9 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double s_mid = suscept(mid);
    if (s_mid == 0.0) return mid;
    if ((s_mid > 0.0) == (s_lo > 0.0)) {
      lo = mid;
      s_lo = s_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace hris

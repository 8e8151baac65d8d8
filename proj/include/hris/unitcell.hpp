// SPDX-License-Identifier: Apache-2.0
#ifndef HRIS_UNITCELL_HPP
#define HRIS_UNITCELL_HPP

#include <array>
#include <complex>
#include <optional>
#include <string>

#include "hris/error.hpp"

namespace hris {

enum class SwitchState { S0 = 0, S1 = 1, S2 = 2, S3 = 3 };

inline constexpr std::array<SwitchState, 4> kAllSwitchStates{SwitchState::S0, SwitchState::S1,
                                                             SwitchState::S2, SwitchState::S3};

const char* to_string(SwitchState s);
SwitchState switch_state_from_string(const std::string& name);  // throws InvalidArgument

// A termination: either a finite complex impedance or an ideal open circuit.
// The open is symbolic so its reflection is exactly 1.
struct LoadImpedance {
  std::optional<std::complex<double>> z;  // nullopt = open

  static LoadImpedance open() { return {}; }
  static LoadImpedance of(std::complex<double> value) { return {value}; }
  bool is_open() const { return !z.has_value(); }
};

struct LoadBank {
  std::array<LoadImpedance, 4> loads;  // indexed by SwitchState
  double reference_impedance = 50.0;
  double insertion_loss = 1.0;  // amplitude factor in (0, 1]

  void validate() const;  // throws InvalidSpec
  // {open, +j z0, short, -j z0}: reflection phases 0/90/180/270 degrees.
  static LoadBank default_bank(double z0 = 50.0, double insertion_loss = 1.0);
};

std::complex<double> load_reflection(std::complex<double> z_load, double z0);
std::complex<double> load_reflection(const LoadImpedance& load, double z0);
std::complex<double> state_reflection(SwitchState state, const LoadBank& bank);

struct HybridCellModel {
  double power_split_rho = 0.5;  // incident power fraction routed to sensing
  LoadBank load_bank = LoadBank::default_bank();

  void validate() const;
};

struct HybridResponse {
  std::complex<double> reflect;
  double sense;  // real, non-negative
};

HybridResponse hybrid_response(const HybridCellModel& model, SwitchState state);

// Lumped model of the pin-loaded sensing disc: parallel RLC patch shunted by
// the pin inductance L_pin = pin_inductance_per_m * pin_feed_distance_m.
// pin_resistance_per_m extends the ideal model with pin metal loss; the
// default 0 reproduces the purely reactive pin.
struct ShortedPatchModel {
  double patch_capacitance_f = 0.0;
  double patch_inductance_h = 0.0;
  double patch_conductance_s = 0.0;
  double pin_inductance_per_m = 0.0;
  double pin_feed_distance_m = 0.0;
  double pin_resistance_per_m = 0.0;

  void validate() const;
  double pin_inductance_h() const { return pin_inductance_per_m * pin_feed_distance_m; }
  // Unloaded patch resonating at 5.5 GHz; fixture values, not measured data.
  static ShortedPatchModel default_model();
};

std::complex<double> shorted_patch_admittance(const ShortedPatchModel& model, double freq_hz);
std::complex<double> shorted_patch_input(const ShortedPatchModel& model, double freq_hz);

// Zero of Im(Y) located by bisection inside [f_lo, f_hi].
// Throws NoResonanceInBracket when the bracket has no sign change.
double patch_resonance(const ShortedPatchModel& model, double f_lo_hz, double f_hi_hz);

}  // namespace hris

#endif

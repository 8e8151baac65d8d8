// SPDX-License-Identifier: Apache-2.0
#ifndef HRIS_RETRIEVAL_HPP
#define HRIS_RETRIEVAL_HPP

#include <complex>
#include <optional>
#include <utility>
#include <vector>

#include "hris/touchstone.hpp"

namespace hris {

// Transmission magnitudes at or below this are treated as resonance nulls
// where the index phase is unobservable.
inline constexpr double kTolS21 = 1e-6;
// Impedances with |Re z| below this fall back to sign continuity.
inline constexpr double kTolZ = 1e-3;

struct SlabSpec {
  double thickness_m = 0.0;
  // Optional band of interest; purely informational for consumers that trim
  // sweeps before inversion. Zero span means "whole sweep".
  double band_lo_hz = 0.0;
  double band_hi_hz = 0.0;

  void validate() const;  // throws InvalidSpec
};

struct EffectiveParamsRecord {
  double freq_hz = 0.0;
  std::complex<double> n, z, eps, mu;
  int branch = 0;
  bool gap = false;  // inversion undefined here, values are NaN
};

struct EffectiveParams {
  std::vector<EffectiveParamsRecord> records;
  double thickness_m = 0.0;
};

struct LorentzianTerm {
  double static_value = 1.0;   // high-frequency / background value
  double strength = 0.0;       // oscillator strength F
  double resonance_hz = 0.0;   // f0
  double damping_hz = 0.0;     // gamma
};

// eps(f) = static + F f0^2 / (f0^2 - f^2 - i gamma f), same for mu.
// Phasor convention e^{-i omega t}: passive materials have Im >= 0.
struct MaterialModel {
  LorentzianTerm eps;
  LorentzianTerm mu;

  void validate() const;  // throws InvalidSpec
};

std::pair<std::complex<double>, std::complex<double>> evaluate_material(const MaterialModel& model,
                                                                        double freq_hz);

// Normal-incidence S-parameters of a homogeneous slab in vacuum.
// Branches: n = sqrt(eps) sqrt(mu) (Im n >= 0 for passive media and the
// lossless double-negative limit lands on Re n < 0), z = sqrt(mu/eps)
// with Re z >= 0. Returns {s11, s21}.
std::pair<std::complex<double>, std::complex<double>> slab_forward(std::complex<double> eps,
                                                                   std::complex<double> mu,
                                                                   double thickness_m,
                                                                   double freq_hz);

// Wave impedance from one S-parameter pair: z = +-sqrt(((1+s11)^2 - s21^2) /
// ((1-s11)^2 - s21^2)), sign fixed by Re z >= 0. When |Re z| < tol_z the sign
// is chosen to stay close to z_prev if provided.
std::complex<double> retrieve_impedance(std::complex<double> s11, std::complex<double> s21,
                                        std::optional<std::complex<double>> z_prev = {},
                                        double tol_z = kTolZ);

// Refractive index on branch m: n = (arg T + 2 pi m - i ln|T|) / (k0 d) with
// T = s21 / (1 - s11 (z-1)/(z+1)). Throws TransmissionTooSmall when
// |s21| <= tol_s21.
std::complex<double> retrieve_index(std::complex<double> s11, std::complex<double> s21,
                                    std::complex<double> z, double thickness_m, double freq_hz,
                                    int branch_m, double tol_s21 = kTolS21);

// Sweep inversion with branch-number continuity. The first resolvable point
// takes m = 0 when k0 d |n| < pi, otherwise branch_hint (default 0); each
// following point picks the integer m minimizing |n(f_k) - n(f_{k-1})|.
// Per-point failures (transmission null, degenerate denominator, non-finite
// result) become gap records and continuity restarts after them.
// Throws EmptySweep when no point is resolvable.
EffectiveParams unwrap_branch(const SParamTable& table, const SlabSpec& slab,
                              std::optional<int> branch_hint = {});

struct FrequencyBand {
  double lo_hz = 0.0;
  double hi_hz = 0.0;
};

// Maximal runs where Re(eps) < 0 and Re(mu) < 0 simultaneously. Band edges
// sit halfway between the last inside sample and the first outside sample;
// sweep endpoints clamp to the first/last sample. Gap records break runs.
std::vector<FrequencyBand> classify_dng_bands(const EffectiveParams& params);

}  // namespace hris

#endif

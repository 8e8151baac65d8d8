// SPDX-License-Identifier: Apache-2.0
#ifndef HRIS_SENSING_HPP
#define HRIS_SENSING_HPP

#include <Eigen/Core>
#include <complex>
#include <cstdint>
#include <utility>

#include "hris/fields.hpp"

namespace hris {

// Cross-polarization amplitude between the two sensing arrays, -30 dB.
// A toolkit default, not a measured value; configurable everywhere it is used.
inline const double kDefaultLeakAmplitude = std::pow(10.0, -30.0 / 20.0);

struct Scene {
  Direction tx_direction;
  Direction rx_direction;
  std::complex<double> tx_amplitude{1.0, 0.0};
  std::complex<double> rx_amplitude{1.0, 0.0};
  double snr_db = 30.0;  // per element per snapshot vs the intended source
  int snapshots = 64;
  std::uint64_t seed = 0;

  void validate() const;  // throws InvalidSpec
};

struct SensingOptions {
  double sense_rho = 0.5;
  double leak_amplitude = kDefaultLeakAmplitude;
};

struct Snapshot {
  Eigen::MatrixXcd samples;  // group elements x snapshots
  int group = 0;
};

// Steering vector over one feeder group, entries e^{i steering_phase} in
// ascending element-index order.
Eigen::VectorXcd group_steering_vector(const PanelLayout& layout, int group, const Direction& dir,
                                       double freq_hz);

// Narrowband single-tone snapshots at the layout's design frequency.
// Group 1 receives sqrt(rho) [tx_amp a1(tx) + leak rx_amp a1(rx)], group 2
// the mirror image, both plus AWGN sized so that per-element SNR against the
// intended source matches scene.snr_db. Noise comes from a generator seeded
// with scene.seed (group 1 drawn fully before group 2, snapshot-major), so
// identical inputs give bit-identical samples. An infinite snr_db yields
// exactly noise-free samples.
std::pair<Snapshot, Snapshot> snapshot_model(const PanelLayout& layout, const Scene& scene,
                                             const SensingOptions& options = {});

struct DoAEstimate {
  Direction direction;
  double spectrum_peak = 0.0;
  int group = 0;
};

inline GridSpec default_doa_grid() {
  GridSpec g;
  g.phi_step_deg = 5.0;
  return g;
}

// Conventional beam scan P(dir) = |a(dir)^H X|^2 / (|a(dir)|^2 T) over the
// grid, then parabolic refinement of theta and phi around the peak (phi
// wraps; theta refinement skipped on the range boundary).
DoAEstimate estimate_doa(const Snapshot& snapshot, const PanelLayout& layout, int group,
                         const GridSpec& grid = default_doa_grid());

struct IsolationReport {
  double group1_db = 0.0;
  double group2_db = 0.0;
};

inline constexpr double kIsolationCapDb = 300.0;

// Intended-to-leaked power ratio per group through that group's matched
// beamformer, computed from the model parameters:
// 20 log10(|amp_int| / (leak |amp_leak|)) + 10 log10(M^2 / |a_int^H a_leak|^2),
// capped at 300 dB when the leak path vanishes.
IsolationReport isolation_report(const PanelLayout& layout, const Scene& scene,
                                 const SensingOptions& options = {});

}  // namespace hris

#endif

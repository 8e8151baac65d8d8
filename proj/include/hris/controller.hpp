// SPDX-License-Identifier: Apache-2.0
#ifndef HRIS_CONTROLLER_HPP
#define HRIS_CONTROLLER_HPP

#include <cstddef>
#include <utility>
#include <vector>

#include "hris/sensing.hpp"

namespace hris {

struct CalibrationTable {
  std::vector<Direction> incident_grid;
  std::vector<Direction> target_grid;
  std::vector<LoadMatrix> entries;  // incident-major over the grid product
  double frequency_hz = 0.0;

  const LoadMatrix& entry(std::size_t incident_idx, std::size_t target_idx) const;
  void validate(std::size_t n_elements) const;  // throws InvalidTable
};

// theta-major product grid; phi_stop_deg is exclusive.
std::vector<Direction> make_direction_grid(double theta_start_deg, double theta_stop_deg,
                                           double theta_step_deg, double phi_start_deg,
                                           double phi_stop_deg, double phi_step_deg);

// theta {0,10,...,60} x phi {0,90,180,270}
std::vector<Direction> default_direction_grid();

// One quantized load matrix per (incident, target) grid pair, from the
// phase-gradient profile with hybrid cells weighted sqrt(1-rho).
CalibrationTable build_lut(const PanelLayout& layout, const LoadBank& bank,
                           const std::vector<Direction>& incident_grid,
                           const std::vector<Direction>& target_grid, double freq_hz,
                           double sense_rho = 0.5);

// Nearest grid pair by great-circle distance, ties toward the smaller index;
// estimates outside the grid hull clamp to the nearest node.
std::pair<std::size_t, std::size_t> lookup_indices(const CalibrationTable& table,
                                                   const Direction& incident_est,
                                                   const Direction& target_est);
const LoadMatrix& lookup(const CalibrationTable& table, const Direction& incident_est,
                         const Direction& target_est);

struct EpisodeStep {
  Direction tx_true, rx_true;
  Direction tx_est, rx_est;
  std::size_t grid_incident = 0;
  std::size_t grid_target = 0;
  double achieved_gain_db = 0.0;  // 20 log10 |AF(tx_true -> rx_true)|
  double ideal_gain_db = 0.0;     // continuous-phase profile, same insertion loss
  double loss_db = 0.0;
  bool coincident = false;  // tx and rx directions coincide
};

struct EpisodeLog {
  std::vector<EpisodeStep> steps;
};

struct EpisodeOptions {
  SensingOptions sensing;
  GridSpec doa_grid = default_doa_grid();
  bool bypass_sensing = false;  // inject true directions instead of estimating
};

// Closed loop over a scene list: sense both directions, look up the load
// matrix, apply it, evaluate the reflection toward the true receive
// direction. Module errors are rethrown with the failing scene index attached.
EpisodeLog run_episode(const PanelLayout& layout, const LoadBank& bank,
                       const CalibrationTable& table, const std::vector<Scene>& scenes,
                       const EpisodeOptions& options = {});

}  // namespace hris

#endif

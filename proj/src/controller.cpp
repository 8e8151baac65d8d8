// SPDX-License-Identifier: Apache-2.0
#include "hris/controller.hpp"

#include <cmath>
#include <limits>

namespace hris {

const LoadMatrix& CalibrationTable::entry(std::size_t incident_idx,
                                          std::size_t target_idx) const {
  if (incident_idx >= incident_grid.size() || target_idx >= target_grid.size())
    fail(ErrorCode::InvalidArgument, "grid index out of range");
  return entries[incident_idx * target_grid.size() + target_idx];
}

void CalibrationTable::validate(std::size_t n_elements) const {
  if (incident_grid.empty() || target_grid.empty())
    fail(ErrorCode::InvalidTable, "calibration grids must be non-empty");
  if (entries.size() != incident_grid.size() * target_grid.size())
    fail(ErrorCode::InvalidTable, "calibration table is not a complete grid product");
  for (const auto& e : entries)
    if (e.states.size() != n_elements)
      fail(ErrorCode::InvalidTable, "load matrix does not cover the layout");
  if (!(frequency_hz > 0.0)) fail(ErrorCode::InvalidTable, "calibration frequency must be positive");
}

std::vector<Direction> make_direction_grid(double theta_start_deg, double theta_stop_deg,
                                           double theta_step_deg, double phi_start_deg,
                                           double phi_stop_deg, double phi_step_deg) {
  if (!(theta_step_deg > 0.0) || !(phi_step_deg > 0.0))
    fail(ErrorCode::EmptyGrid, "grid steps must be positive");
  std::vector<Direction> out;
  for (double t = theta_start_deg; t <= theta_stop_deg + 1e-9; t += theta_step_deg)
    for (double p = phi_start_deg; p < phi_stop_deg - 1e-9; p += phi_step_deg)
      out.push_back(Direction::from_degrees(std::min(t, 90.0), p));
  if (out.empty()) fail(ErrorCode::EmptyGrid, "direction grid has no nodes");
  return out;
}

std::vector<Direction> default_direction_grid() {
  return make_direction_grid(0.0, 60.0, 10.0, 0.0, 360.0, 90.0);
}

CalibrationTable build_lut(const PanelLayout& layout, const LoadBank& bank,
                           const std::vector<Direction>& incident_grid,
                           const std::vector<Direction>& target_grid, double freq_hz,
                           double sense_rho) {
  if (incident_grid.empty() || target_grid.empty())
    fail(ErrorCode::EmptyGrid, "calibration grids must be non-empty");
  bank.validate();
  if (!(freq_hz > 0.0)) fail(ErrorCode::InvalidArgument, "frequency must be positive");

  std::vector<double> weights;
  weights.reserve(layout.elements.size());
  for (const auto& e : layout.elements)
    weights.push_back(e.kind == CellKind::Reflect ? 1.0 : std::sqrt(1.0 - sense_rho));

  CalibrationTable table;
  table.incident_grid = incident_grid;
  table.target_grid = target_grid;
  table.frequency_hz = freq_hz;
  table.entries.reserve(incident_grid.size() * target_grid.size());

  std::vector<double> phases(layout.elements.size());
  for (const auto& inc : incident_grid) {
    for (const auto& tgt : target_grid) {
      for (std::size_t i = 0; i < layout.elements.size(); ++i)
        phases[i] = required_cell_phase(inc, tgt, layout.elements[i].position, freq_hz);
      table.entries.push_back(quantize_profile(phases, bank, weights));
    }
  }
  return table;
}

namespace {

std::size_t nearest_node(const std::vector<Direction>& grid, const Direction& d) {
  std::size_t best = 0;
  double best_dist = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double dist = angular_distance(grid[i], d);
    if (dist < best_dist - 1e-12) {
      best_dist = dist;
      best = i;
    }
  }
  return best;
}

}  // namespace

std::pair<std::size_t, std::size_t> lookup_indices(const CalibrationTable& table,
                                                   const Direction& incident_est,
                                                   const Direction& target_est) {
  if (table.incident_grid.empty() || table.target_grid.empty())
    fail(ErrorCode::InvalidTable, "calibration table has empty grids");
  return {nearest_node(table.incident_grid, incident_est),
          nearest_node(table.target_grid, target_est)};
}

const LoadMatrix& lookup(const CalibrationTable& table, const Direction& incident_est,
                         const Direction& target_est) {
  const auto [i, t] = lookup_indices(table, incident_est, target_est);
  return table.entry(i, t);
}

EpisodeLog run_episode(const PanelLayout& layout, const LoadBank& bank,
                       const CalibrationTable& table, const std::vector<Scene>& scenes,
                       const EpisodeOptions& options) {
  table.validate(layout.elements.size());
  bank.validate();
  const double f = table.frequency_hz;
  ElementModel em;
  em.sense_rho = options.sensing.sense_rho;

  EpisodeLog log;
  log.steps.reserve(scenes.size());
  for (std::size_t k = 0; k < scenes.size(); ++k) {
    try {
      const Scene& scene = scenes[k];
      EpisodeStep step;
      step.tx_true = scene.tx_direction;
      step.rx_true = scene.rx_direction;
      step.coincident = angular_distance(scene.tx_direction, scene.rx_direction) < 1e-9;

      if (options.bypass_sensing) {
        step.tx_est = scene.tx_direction;
        step.rx_est = scene.rx_direction;
      } else {
        const auto [snap1, snap2] = snapshot_model(layout, scene, options.sensing);
        step.tx_est = estimate_doa(snap1, layout, 1, options.doa_grid).direction;
        step.rx_est = estimate_doa(snap2, layout, 2, options.doa_grid).direction;
      }

      const auto [gi, gt] = lookup_indices(table, step.tx_est, step.rx_est);
      step.grid_incident = gi;
      step.grid_target = gt;

      const Eigen::VectorXcd gammas = state_gammas(table.entry(gi, gt), bank);
      const std::complex<double> af =
          array_factor(layout, gammas, step.tx_true, step.rx_true, f, em);

      // Continuous-phase reference with the same insertion loss, so the
      // difference isolates quantization and pointing error.
      Eigen::VectorXcd ideal(gammas.size());
      for (std::size_t i = 0; i < layout.elements.size(); ++i)
        ideal[static_cast<Eigen::Index>(i)] =
            bank.insertion_loss *
            std::polar(1.0, required_cell_phase(step.tx_true, step.rx_true,
                                                layout.elements[i].position, f));
      const std::complex<double> af_ideal =
          array_factor(layout, ideal, step.tx_true, step.rx_true, f, em);

      step.achieved_gain_db = 20.0 * std::log10(std::abs(af));
      step.ideal_gain_db = 20.0 * std::log10(std::abs(af_ideal));
      step.loss_db = step.ideal_gain_db - step.achieved_gain_db;
      log.steps.push_back(step);
    } catch (const Error& e) {
      fail(e.code(), "scene " + std::to_string(k) + ": " + e.detail());
    }
  }
  return log;
}

}  // namespace hris

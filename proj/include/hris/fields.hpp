// SPDX-License-Identifier: Apache-2.0
#ifndef HRIS_FIELDS_HPP
#define HRIS_FIELDS_HPP

#include <Eigen/Core>
#include <complex>
#include <cstdint>
#include <vector>

#include "hris/geometry.hpp"
#include "hris/unitcell.hpp"

namespace hris {

// Upper-hemisphere propagation direction, theta from the panel normal.
struct Direction {
  double theta = 0.0;  // radians, [0, pi/2]
  double phi = 0.0;    // radians, [0, 2*pi)

  static Direction from_degrees(double theta_deg, double phi_deg);
  double theta_deg() const;
  double phi_deg() const;
  Eigen::Vector3d unit_vector() const;
  void validate() const;  // throws InvalidArgument
};

// Great-circle angle between two directions, radians in [0, pi].
double angular_distance(const Direction& a, const Direction& b);

// Plane-wave phase accumulated at a panel position for a given direction:
// k (x sin(theta) cos(phi) + y sin(theta) sin(phi)).
double steering_phase(const Eigen::Vector2d& position_m, const Direction& dir, double freq_hz);

// Phase-gradient profile redirecting `incident` into `target`:
// -(steering_phase(incident) + steering_phase(target)) wrapped to [0, 2*pi).
double required_cell_phase(const Direction& incident, const Direction& target,
                           const Eigen::Vector2d& position_m, double freq_hz);

std::vector<double> required_phase_profile(const PanelLayout& layout, const Direction& incident,
                                           const Direction& target);

// State whose reflection phase is nearest to phi on the circle; exact ties go
// to the lower state index.
SwitchState quantize_phase(double phi, const LoadBank& bank);

struct LoadMatrix {
  std::vector<SwitchState> states;  // one per layout element
};

// Per-element nearest-phase quantization of a whole profile, with the free
// global phase reference chosen to maximize the coherent sum
// |sum_n w_n e^{i(phase(state_n) - required_n)}|. A common offset added to
// every required phase changes nothing physical but changes how the per-cell
// rounding errors align; scanning the (finitely many) assignment breakpoints
// makes the result exactly the best achievable by any such rounding, which
// for positive weights equals the exhaustive optimum over all state
// combinations. The offset-zero assignment wins ties, so an already aligned
// profile quantizes to the plain per-element result.
LoadMatrix quantize_profile(const std::vector<double>& required_phases, const LoadBank& bank,
                            const std::vector<double>& weights);

// Reflection coefficients for a full state assignment.
Eigen::VectorXcd state_gammas(const LoadMatrix& matrix, const LoadBank& bank);

struct ElementModel {
  double sense_rho = 0.5;  // hybrid cells reflect with amplitude sqrt(1-rho)
  double cos_exponent_q = 0.0;  // cos^q element factor on both hops, 0 = isotropic
};

// AF = sum_n w_n gamma_n e^{i[steering_phase(r_n, incident) + steering_phase(r_n, observe)]}
// where w_n = sqrt(1-rho) for hybrid cells and 1 for pure reflectors.
std::complex<double> array_factor(const PanelLayout& layout, const Eigen::VectorXcd& gammas,
                                  const Direction& incident, const Direction& observe,
                                  double freq_hz, const ElementModel& em = {});

struct GridSpec {
  double theta_min_deg = 0.0;
  double theta_max_deg = 90.0;
  double theta_step_deg = 1.0;
  double phi_min_deg = 0.0;
  double phi_max_deg = 360.0;  // exclusive
  double phi_step_deg = 1.0;

  std::size_t n_theta() const;
  std::size_t n_phi() const;
  void validate() const;  // throws EmptyGrid
};

struct PatternSample {
  Direction dir;
  std::complex<double> af;
};

struct FarFieldPattern {
  std::vector<PatternSample> samples;  // theta-major over the grid
  std::size_t n_theta = 0;
  std::size_t n_phi = 0;
  double frequency_hz = 0.0;
};

FarFieldPattern pattern(const PanelLayout& layout, const Eigen::VectorXcd& gammas,
                        const Direction& incident, const GridSpec& grid, double freq_hz,
                        const ElementModel& em = {});
FarFieldPattern pattern(const PanelLayout& layout, const LoadMatrix& matrix, const LoadBank& bank,
                        const Direction& incident, const GridSpec& grid, double freq_hz,
                        const ElementModel& em = {});

// Index of the strongest sample; first index wins ties.
std::size_t pattern_argmax(const FarFieldPattern& pat);

// 10 log10(|AF(at)|^2 / mean |AF|^2), the mean taken over the grid with
// sin(theta) solid-angle weights; `at` snaps to the nearest grid sample.
double directivity_db(const FarFieldPattern& pat, const Direction& at);

}  // namespace hris

#endif

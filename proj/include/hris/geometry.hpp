// SPDX-License-Identifier: Apache-2.0
#ifndef HRIS_GEOMETRY_HPP
#define HRIS_GEOMETRY_HPP

#include <Eigen/Core>
#include <string>
#include <vector>

#include "hris/error.hpp"

namespace hris {

inline constexpr double kSpeedOfLight = 299792458.0;

double free_space_wavelength(double freq_hz);
// Quarter wavelength inside a dielectric of relative permittivity eps_r:
// lambda / (4 sqrt(eps_r)).
double guided_quarter_wave(double freq_hz, double eps_r);

// Concentric hybrid cell: outer reflector ring, inner sensing disc on a
// higher-permittivity substrate island.
struct UnitCellSpec {
  double cell_pitch_m = 7.0e-3;
  double ring_outer_diameter_m = 6.4e-3;
  double disc_diameter_m = 3.8e-3;
  double substrate_thickness_m = 0.8e-3;
  double eps_ring = 3.5;
  double eps_disc = 10.2;
  double design_frequency_hz = 5.5e9;

  void validate() const;  // throws InvalidSpec
};

struct FitReport {
  double lambda_m = 0.0;
  double lambda_over_8_m = 0.0;
  double guided_quarter_m = 0.0;
  double slack = 0.0;
  // The disc resonator must stay compact against the reflective grid pitch:
  // lambda_g/4 < lambda/8, which holds iff eps_disc > 4.
  bool quarter_wave_fits = false;
  // Disc diameter within (1 + slack) of its quarter-wave target size.
  bool disc_matches_quarter_wave = false;
  double disc_deviation = 0.0;  // |disc - lambda_g/4| / (lambda_g/4)
  // Nesting clearances, strictly positive when the stackup is realizable.
  double ring_clearance_m = 0.0;  // pitch - ring outer diameter
  double disc_clearance_m = 0.0;  // ring outer diameter - disc diameter

  bool pass() const {
    return quarter_wave_fits && disc_matches_quarter_wave && ring_clearance_m > 0.0 &&
           disc_clearance_m > 0.0;
  }
};

// Evaluates the concentric-cell sizing rules at the design frequency.
FitReport check_fit(const UnitCellSpec& spec, double slack = 0.05);

enum class CellKind { SenseA, SenseB, Reflect };
enum class Polarization { X, Y };

const char* to_string(CellKind kind);
const char* to_string(Polarization pol);

struct PanelElement {
  Eigen::Vector2d position{0.0, 0.0};  // meters, panel plane
  CellKind kind = CellKind::Reflect;
  Polarization pol = Polarization::X;
  int feeder = 0;  // sensing group id, 0 for pure reflectors
};

struct PanelLayout {
  std::vector<PanelElement> elements;
  double design_frequency_hz = 0.0;
  Eigen::Vector2d panel_extent{0.0, 0.0};

  std::vector<int> group_indices(int feeder) const;
  std::size_t count(CellKind kind) const;
};

struct LayoutOptions {
  double pitch_m = 0.0;      // 0 selects lambda/8 at the design frequency
  int interleave_axis = 0;   // 0: groups offset along x, 1: along y
};

// Rectangular reflective grid at lambda/8 pitch with two interleaved sensing
// populations: group 1 (pol X) on every 4th row and column, group 2 (pol Y)
// shifted by lambda/4 (two cells) along the interleave axis, so each group is
// itself a lambda/2-spaced array. Requires nx, ny >= 8 so each sensing group
// gets at least two elements per axis.
PanelLayout generate_layout(int nx, int ny, double design_frequency_hz,
                            const LayoutOptions& options = {});

struct LayoutViolation {
  std::string check;
  std::string detail;
  std::vector<int> elements;
};

struct LayoutReport {
  std::vector<LayoutViolation> violations;
  double tolerance = 0.0;
  // Worst relative deviations actually measured, reported even when passing.
  double reflect_pitch_deviation = 0.0;
  double sense_spacing_deviation = 0.0;
  double interleave_offset_deviation = 0.0;

  bool pass() const { return violations.empty(); }
};

// Structural checks against the nominal spacings implied by the layout's own
// design frequency: reflective pitch lambda/8, in-group spacing lambda/2,
// cross-group nearest-neighbour offset lambda/4 along one axis, orthogonal
// polarizations between groups, both groups present, elements inside the
// panel extent. Relative tolerance applies to all length comparisons.
LayoutReport validate_layout(const PanelLayout& layout, double tolerance = 0.05);

}  // namespace hris

#endif

// SPDX-License-Identifier: Apache-2.0
#include "hris/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hris/numfmt.hpp"

namespace hris {

double free_space_wavelength(double freq_hz) {
  if (!(freq_hz > 0.0)) fail(ErrorCode::InvalidArgument, "frequency must be positive");
  return kSpeedOfLight / freq_hz;
}

double guided_quarter_wave(double freq_hz, double eps_r) {
  if (!(eps_r >= 1.0)) fail(ErrorCode::InvalidArgument, "relative permittivity must be >= 1");
  return free_space_wavelength(freq_hz) / (4.0 * std::sqrt(eps_r));
}

void UnitCellSpec::validate() const {
  auto positive = [](double v) { return v > 0.0 && std::isfinite(v); };
  if (!positive(cell_pitch_m) || !positive(ring_outer_diameter_m) || !positive(disc_diameter_m) ||
      !positive(substrate_thickness_m) || !positive(design_frequency_hz))
    fail(ErrorCode::InvalidSpec, "all cell dimensions and the design frequency must be positive");
  if (!(eps_ring >= 1.0) || !(eps_disc >= 1.0))
    fail(ErrorCode::InvalidSpec, "substrate permittivities must be >= 1");
  if (!(disc_diameter_m < ring_outer_diameter_m))
    fail(ErrorCode::InvalidSpec, "sensing disc (" + format_double(disc_diameter_m * 1e3) +
                                     " mm) must nest inside the ring (" +
                                     format_double(ring_outer_diameter_m * 1e3) + " mm)");
  if (!(ring_outer_diameter_m < cell_pitch_m))
    fail(ErrorCode::InvalidSpec, "ring (" + format_double(ring_outer_diameter_m * 1e3) +
                                     " mm) must fit inside the cell pitch (" +
                                     format_double(cell_pitch_m * 1e3) + " mm)");
}

FitReport check_fit(const UnitCellSpec& spec, double slack) {
  spec.validate();
  if (!(slack >= 0.0)) fail(ErrorCode::InvalidArgument, "slack must be non-negative");

  FitReport rep;
  rep.slack = slack;
  rep.lambda_m = free_space_wavelength(spec.design_frequency_hz);
  rep.lambda_over_8_m = rep.lambda_m / 8.0;
  rep.guided_quarter_m = guided_quarter_wave(spec.design_frequency_hz, spec.eps_disc);

  rep.quarter_wave_fits = rep.guided_quarter_m < rep.lambda_over_8_m;
  rep.disc_deviation =
      std::abs(spec.disc_diameter_m - rep.guided_quarter_m) / rep.guided_quarter_m;
  // A disc smaller than lambda_g/4 is fine (pin loading shrinks the resonant
  // size); only oversize is rejected.
  rep.disc_matches_quarter_wave = spec.disc_diameter_m <= rep.guided_quarter_m * (1.0 + slack);
  rep.ring_clearance_m = spec.cell_pitch_m - spec.ring_outer_diameter_m;
  rep.disc_clearance_m = spec.ring_outer_diameter_m - spec.disc_diameter_m;
  return rep;
}

const char* to_string(CellKind kind) {
  switch (kind) {
    case CellKind::SenseA: return "SenseA";
    case CellKind::SenseB: return "SenseB";
    case CellKind::Reflect: return "Reflect";
  }
  return "?";
}

const char* to_string(Polarization pol) {
  return pol == Polarization::X ? "X" : "Y";
}

std::vector<int> PanelLayout::group_indices(int feeder) const {
  std::vector<int> out;
  for (std::size_t i = 0; i < elements.size(); ++i)
    if (elements[i].feeder == feeder) out.push_back(static_cast<int>(i));
  return out;
}

std::size_t PanelLayout::count(CellKind kind) const {
  return static_cast<std::size_t>(
      std::count_if(elements.begin(), elements.end(),
                    [kind](const PanelElement& e) { return e.kind == kind; }));
}

PanelLayout generate_layout(int nx, int ny, double design_frequency_hz,
                            const LayoutOptions& options) {
  if (nx < 8 || ny < 8)
    fail(ErrorCode::PanelTooSmall, "panel is " + std::to_string(nx) + "x" + std::to_string(ny) +
                                       ", need at least 8x8 for two sensing groups");
  if (options.interleave_axis != 0 && options.interleave_axis != 1)
    fail(ErrorCode::InvalidArgument, "interleave axis must be 0 (x) or 1 (y)");

  const double pitch = options.pitch_m > 0.0 ? options.pitch_m
                                             : free_space_wavelength(design_frequency_hz) / 8.0;

  PanelLayout layout;
  layout.design_frequency_hz = design_frequency_hz;
  layout.panel_extent = {nx * pitch, ny * pitch};
  layout.elements.reserve(static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny));

  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      PanelElement e;
      e.position = {i * pitch, j * pitch};
      const int a = (options.interleave_axis == 0) ? i : j;  // along interleave
      const int b = (options.interleave_axis == 0) ? j : i;  // across
      if (a % 4 == 0 && b % 4 == 0) {
        e.kind = CellKind::SenseA;
        e.pol = Polarization::X;
        e.feeder = 1;
      } else if (a % 4 == 2 && b % 4 == 0) {
        e.kind = CellKind::SenseB;
        e.pol = Polarization::Y;
        e.feeder = 2;
      } else {
        e.kind = CellKind::Reflect;
        e.pol = Polarization::X;
        e.feeder = 0;
      }
      layout.elements.push_back(e);
    }
  }
  return layout;
}

namespace {

double nearest_distance(const PanelLayout& layout, std::size_t self,
                        const std::vector<int>& candidates, int* who = nullptr) {
  double best = std::numeric_limits<double>::infinity();
  for (int c : candidates) {
    if (static_cast<std::size_t>(c) == self) continue;
    const double d =
        (layout.elements[self].position - layout.elements[static_cast<std::size_t>(c)].position)
            .norm();
    if (d < best) {
      best = d;
      if (who) *who = c;
    }
  }
  return best;
}

}  // namespace

LayoutReport validate_layout(const PanelLayout& layout, double tolerance) {
  LayoutReport rep;
  rep.tolerance = tolerance;

  if (layout.elements.empty() || !(layout.design_frequency_hz > 0.0)) {
    rep.violations.push_back({"layout", "empty layout or non-positive design frequency", {}});
    return rep;
  }

  const double lambda = free_space_wavelength(layout.design_frequency_hz);
  const double nominal_pitch = lambda / 8.0;
  const double nominal_half = lambda / 2.0;
  const double nominal_quarter = lambda / 4.0;

  std::vector<int> all(layout.elements.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
  std::vector<int> group1, group2;
  std::vector<int> feeder_mismatch;

  for (std::size_t i = 0; i < layout.elements.size(); ++i) {
    const auto& e = layout.elements[i];
    const int want = e.kind == CellKind::SenseA ? 1 : e.kind == CellKind::SenseB ? 2 : 0;
    if (e.feeder != want) feeder_mismatch.push_back(static_cast<int>(i));
    if (e.kind == CellKind::SenseA) group1.push_back(static_cast<int>(i));
    if (e.kind == CellKind::SenseB) group2.push_back(static_cast<int>(i));
  }
  if (!feeder_mismatch.empty())
    rep.violations.push_back(
        {"feeder", "element kind and feeder group disagree", feeder_mismatch});
  if (group1.empty() || group2.empty()) {
    rep.violations.push_back({"groups", "both sensing groups must be populated", {}});
    return rep;
  }

  // Orthogonal polarizations, uniform within each group.
  const Polarization pol1 = layout.elements[static_cast<std::size_t>(group1[0])].pol;
  const Polarization pol2 = layout.elements[static_cast<std::size_t>(group2[0])].pol;
  std::vector<int> pol_bad;
  for (int i : group1)
    if (layout.elements[static_cast<std::size_t>(i)].pol != pol1) pol_bad.push_back(i);
  for (int i : group2)
    if (layout.elements[static_cast<std::size_t>(i)].pol != pol2) pol_bad.push_back(i);
  if (!pol_bad.empty())
    rep.violations.push_back({"polarization", "mixed polarization within a sensing group", pol_bad});
  else if (pol1 == pol2)
    rep.violations.push_back({"polarization",
                              "sensing groups must use orthogonal polarizations",
                              {group1[0], group2[0]}});

  // Reflective grid pitch: nearest neighbour of each reflective cell.
  std::vector<int> pitch_bad;
  for (std::size_t i = 0; i < layout.elements.size(); ++i) {
    if (layout.elements[i].kind != CellKind::Reflect) continue;
    const double d = nearest_distance(layout, i, all);
    const double dev = std::abs(d - nominal_pitch) / nominal_pitch;
    rep.reflect_pitch_deviation = std::max(rep.reflect_pitch_deviation, dev);
    if (dev > tolerance) pitch_bad.push_back(static_cast<int>(i));
  }
  if (!pitch_bad.empty())
    rep.violations.push_back({"reflect-pitch",
                              "nearest-neighbour spacing off the nominal grid pitch " +
                                  format_double(nominal_pitch),
                              pitch_bad});

  // In-group spacing for both sensing groups.
  std::vector<int> spacing_bad;
  for (const auto* grp : {&group1, &group2}) {
    if (grp->size() < 2) continue;
    for (int i : *grp) {
      const double d = nearest_distance(layout, static_cast<std::size_t>(i), *grp);
      const double dev = std::abs(d - nominal_half) / nominal_half;
      rep.sense_spacing_deviation = std::max(rep.sense_spacing_deviation, dev);
      if (dev > tolerance) spacing_bad.push_back(i);
    }
  }
  if (!spacing_bad.empty())
    rep.violations.push_back({"sense-spacing",
                              "in-group spacing off the nominal " + format_double(nominal_half),
                              spacing_bad});

  // Interleave offset: each SenseB sits a quarter wavelength from its nearest
  // SenseA along exactly one axis.
  std::vector<int> offset_bad;
  for (int i : group2) {
    int nearest = -1;
    const double d = nearest_distance(layout, static_cast<std::size_t>(i), group1, &nearest);
    const double dev = std::abs(d - nominal_quarter) / nominal_quarter;
    rep.interleave_offset_deviation = std::max(rep.interleave_offset_deviation, dev);
    bool axis_ok = false;
    if (nearest >= 0) {
      const Eigen::Vector2d delta = layout.elements[static_cast<std::size_t>(i)].position -
                                    layout.elements[static_cast<std::size_t>(nearest)].position;
      axis_ok = std::min(std::abs(delta.x()), std::abs(delta.y())) <= tolerance * nominal_quarter;
    }
    if (dev > tolerance || !axis_ok) offset_bad.push_back(i);
  }
  if (!offset_bad.empty())
    rep.violations.push_back({"interleave-offset",
                              "cross-group offset off the nominal " +
                                  format_double(nominal_quarter) + " along one axis",
                              offset_bad});

  // Panel extent containment.
  std::vector<int> outside;
  const double margin = tolerance * nominal_pitch;
  for (std::size_t i = 0; i < layout.elements.size(); ++i) {
    const auto& p = layout.elements[i].position;
    if (p.x() < -margin || p.y() < -margin || p.x() > layout.panel_extent.x() + margin ||
        p.y() > layout.panel_extent.y() + margin)
      outside.push_back(static_cast<int>(i));
  }
  if (!outside.empty())
    rep.violations.push_back({"extent", "elements outside the stated panel extent", outside});

  return rep;
}

}  // namespace hris

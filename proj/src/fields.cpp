// SPDX-License-Identifier: Apache-2.0
#include "hris/fields.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hris/numfmt.hpp"

namespace hris {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

double wrap_two_pi(double a) {
  double r = std::fmod(a, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  return r;
}

// Signed circular difference in (-pi, pi].
double wrap_pi(double a) {
  double r = std::fmod(a, kTwoPi);
  if (r <= -M_PI) r += kTwoPi;
  if (r > M_PI) r -= kTwoPi;
  return r;
}

double element_weight(const PanelElement& e, const ElementModel& em) {
  return e.kind == CellKind::Reflect ? 1.0 : std::sqrt(1.0 - em.sense_rho);
}

}  // namespace

Direction Direction::from_degrees(double theta_deg, double phi_deg) {
  Direction d;
  d.theta = theta_deg * M_PI / 180.0;
  d.phi = wrap_two_pi(phi_deg * M_PI / 180.0);
  d.validate();
  return d;
}

double Direction::theta_deg() const { return theta * 180.0 / M_PI; }
double Direction::phi_deg() const { return phi * 180.0 / M_PI; }

Eigen::Vector3d Direction::unit_vector() const {
  const double st = std::sin(theta);
  return {st * std::cos(phi), st * std::sin(phi), std::cos(theta)};
}

void Direction::validate() const {
  if (!(theta >= 0.0) || !(theta <= M_PI / 2.0 + 1e-12))
    fail(ErrorCode::InvalidArgument,
         "theta " + format_double(theta) + " rad outside [0, pi/2]");
  if (!(phi >= 0.0) || !(phi < kTwoPi))
    fail(ErrorCode::InvalidArgument, "phi " + format_double(phi) + " rad outside [0, 2*pi)");
}

double angular_distance(const Direction& a, const Direction& b) {
  const double dot = std::clamp(a.unit_vector().dot(b.unit_vector()), -1.0, 1.0);
  return std::acos(dot);
}

double steering_phase(const Eigen::Vector2d& position_m, const Direction& dir, double freq_hz) {
  const double k = kTwoPi * freq_hz / kSpeedOfLight;
  const double st = std::sin(dir.theta);
  return k * (position_m.x() * st * std::cos(dir.phi) + position_m.y() * st * std::sin(dir.phi));
}

double required_cell_phase(const Direction& incident, const Direction& target,
                           const Eigen::Vector2d& position_m, double freq_hz) {
  return wrap_two_pi(-(steering_phase(position_m, incident, freq_hz) +
                       steering_phase(position_m, target, freq_hz)));
}

std::vector<double> required_phase_profile(const PanelLayout& layout, const Direction& incident,
                                           const Direction& target) {
  incident.validate();
  target.validate();
  std::vector<double> out;
  out.reserve(layout.elements.size());
  for (const auto& e : layout.elements)
    out.push_back(
        required_cell_phase(incident, target, e.position, layout.design_frequency_hz));
  return out;
}

SwitchState quantize_phase(double phi, const LoadBank& bank) {
  bank.validate();
  SwitchState best = SwitchState::S0;
  double best_dist = std::numeric_limits<double>::infinity();
  for (SwitchState s : kAllSwitchStates) {
    const double ph = std::arg(state_reflection(s, bank));
    const double d = std::abs(wrap_pi(phi - ph));
    if (d < best_dist) {
      best_dist = d;
      best = s;
    }
  }
  return best;
}

LoadMatrix quantize_profile(const std::vector<double>& required_phases, const LoadBank& bank,
                            const std::vector<double>& weights) {
  bank.validate();
  if (required_phases.size() != weights.size())
    fail(ErrorCode::DimensionMismatch, "phase profile and weight vector differ in length");
  const std::size_t n = required_phases.size();
  if (n == 0) fail(ErrorCode::InvalidArgument, "empty phase profile");
  for (double w : weights) {
    if (!std::isfinite(w) || w < 0.0)
      fail(ErrorCode::InvalidArgument, "amplitude weights must be finite and nonnegative");
  }

  // Constellation sorted by phase; boundaries midway between neighbours.
  struct Point {
    double phase;
    SwitchState state;
  };
  std::array<Point, 4> con;
  std::array<std::complex<double>, 4> unit;   // e^{i phase} per state index
  std::array<double, 4> state_phase;          // per state index
  for (std::size_t k = 0; k < 4; ++k) {
    const double ph = std::arg(state_reflection(kAllSwitchStates[k], bank));
    con[k] = {wrap_two_pi(ph), kAllSwitchStates[k]};
    unit[k] = std::polar(1.0, ph);
    state_phase[k] = ph;
  }
  std::sort(con.begin(), con.end(), [](const Point& a, const Point& b) {
    if (a.phase != b.phase) return a.phase < b.phase;
    return a.state < b.state;
  });
  // boundary[j] separates con[j] from con[j+1] (cyclic)
  std::array<double, 4> boundary;
  for (std::size_t j = 0; j < 4; ++j) {
    const double next =
        (j + 1 < 4) ? con[j + 1].phase : con[0].phase + kTwoPi;
    boundary[j] = wrap_two_pi(0.5 * (con[j].phase + next));
  }

  auto nearest = [&](double target) {
    SwitchState best = SwitchState::S0;
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < 4; ++k) {
      const double d = std::abs(wrap_pi(target - state_phase[k]));
      if (d < best_dist) {
        best_dist = d;
        best = kAllSwitchStates[k];
      }
    }
    return best;
  };

  // Baseline: zero offset, plain per-element rounding.
  std::vector<SwitchState> current(n), best_states;
  std::complex<double> sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    current[i] = nearest(required_phases[i]);
    sum += weights[i] * unit[static_cast<std::size_t>(current[i])] *
           std::polar(1.0, -required_phases[i]);
  }
  best_states = current;
  double best_score = std::abs(sum);

  // Assignment-change events as the common offset c sweeps [0, 2*pi): element
  // i switches from con[j] to con[j+1] when required_i + c crosses boundary[j].
  struct Event {
    double c;
    std::uint32_t element;
    std::uint8_t into;  // index into con after the crossing
  };
  std::vector<Event> events;
  events.reserve(4 * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      events.push_back({wrap_two_pi(boundary[j] - required_phases[i]),
                        static_cast<std::uint32_t>(i), static_cast<std::uint8_t>((j + 1) % 4)});
  std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) {
    if (a.c != b.c) return a.c < b.c;
    if (a.element != b.element) return a.element < b.element;
    return a.into < b.into;
  });

  for (const Event& ev : events) {
    const SwitchState to = con[ev.into].state;
    const SwitchState from = current[ev.element];
    if (from == to) continue;
    sum += weights[ev.element] *
           (unit[static_cast<std::size_t>(to)] - unit[static_cast<std::size_t>(from)]) *
           std::polar(1.0, -required_phases[ev.element]);
    current[ev.element] = to;
    const double score = std::abs(sum);
    if (score > best_score + 1e-12) {
      best_score = score;
      best_states = current;
    }
  }

  LoadMatrix out;
  out.states = std::move(best_states);
  return out;
}

Eigen::VectorXcd state_gammas(const LoadMatrix& matrix, const LoadBank& bank) {
  bank.validate();
  std::array<std::complex<double>, 4> gamma;
  for (std::size_t k = 0; k < 4; ++k) gamma[k] = state_reflection(kAllSwitchStates[k], bank);
  Eigen::VectorXcd out(static_cast<Eigen::Index>(matrix.states.size()));
  for (std::size_t i = 0; i < matrix.states.size(); ++i)
    out[static_cast<Eigen::Index>(i)] = gamma[static_cast<std::size_t>(matrix.states[i])];
  return out;
}

std::complex<double> array_factor(const PanelLayout& layout, const Eigen::VectorXcd& gammas,
                                  const Direction& incident, const Direction& observe,
                                  double freq_hz, const ElementModel& em) {
  incident.validate();
  observe.validate();
  if (static_cast<std::size_t>(gammas.size()) != layout.elements.size())
    fail(ErrorCode::DimensionMismatch,
         "gamma vector length " + std::to_string(gammas.size()) + " vs " +
             std::to_string(layout.elements.size()) + " elements");
  std::complex<double> af = 0.0;
  for (std::size_t i = 0; i < layout.elements.size(); ++i) {
    const auto& e = layout.elements[i];
    const double phase = steering_phase(e.position, incident, freq_hz) +
                         steering_phase(e.position, observe, freq_hz);
    af += element_weight(e, em) * gammas[static_cast<Eigen::Index>(i)] * std::polar(1.0, phase);
  }
  if (em.cos_exponent_q > 0.0)
    af *= std::pow(std::cos(incident.theta) * std::cos(observe.theta), em.cos_exponent_q);
  return af;
}

std::size_t GridSpec::n_theta() const {
  if (!(theta_step_deg > 0.0) || theta_max_deg < theta_min_deg) return 0;
  return static_cast<std::size_t>(
             std::floor((theta_max_deg - theta_min_deg) / theta_step_deg + 1e-9)) +
         1;
}

std::size_t GridSpec::n_phi() const {
  if (!(phi_step_deg > 0.0) || phi_max_deg <= phi_min_deg) return 0;
  return static_cast<std::size_t>(
      std::ceil((phi_max_deg - phi_min_deg) / phi_step_deg - 1e-9));
}

void GridSpec::validate() const {
  if (n_theta() == 0 || n_phi() == 0)
    fail(ErrorCode::EmptyGrid, "angular grid has no samples");
}

FarFieldPattern pattern(const PanelLayout& layout, const Eigen::VectorXcd& gammas,
                        const Direction& incident, const GridSpec& grid, double freq_hz,
                        const ElementModel& em) {
  grid.validate();
  FarFieldPattern pat;
  pat.n_theta = grid.n_theta();
  pat.n_phi = grid.n_phi();
  pat.frequency_hz = freq_hz;
  pat.samples.reserve(pat.n_theta * pat.n_phi);
  for (std::size_t it = 0; it < pat.n_theta; ++it) {
    const double theta_deg = grid.theta_min_deg + static_cast<double>(it) * grid.theta_step_deg;
    for (std::size_t ip = 0; ip < pat.n_phi; ++ip) {
      const double phi_deg = grid.phi_min_deg + static_cast<double>(ip) * grid.phi_step_deg;
      const Direction dir = Direction::from_degrees(std::min(theta_deg, 90.0), phi_deg);
      pat.samples.push_back({dir, array_factor(layout, gammas, incident, dir, freq_hz, em)});
    }
  }
  return pat;
}

FarFieldPattern pattern(const PanelLayout& layout, const LoadMatrix& matrix, const LoadBank& bank,
                        const Direction& incident, const GridSpec& grid, double freq_hz,
                        const ElementModel& em) {
  return pattern(layout, state_gammas(matrix, bank), incident, grid, freq_hz, em);
}

std::size_t pattern_argmax(const FarFieldPattern& pat) {
  if (pat.samples.empty()) fail(ErrorCode::EmptyGrid, "pattern has no samples");
  std::size_t best = 0;
  double best_mag = -1.0;
  for (std::size_t i = 0; i < pat.samples.size(); ++i) {
    const double m = std::abs(pat.samples[i].af);
    if (m > best_mag) {
      best_mag = m;
      best = i;
    }
  }
  return best;
}

double directivity_db(const FarFieldPattern& pat, const Direction& at) {
  if (pat.samples.empty()) fail(ErrorCode::EmptyGrid, "pattern has no samples");
  double wsum = 0.0, psum = 0.0;
  std::size_t nearest = 0;
  double nearest_dist = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pat.samples.size(); ++i) {
    const double w = std::sin(pat.samples[i].dir.theta);
    wsum += w;
    psum += w * std::norm(pat.samples[i].af);
    const double d = angular_distance(pat.samples[i].dir, at);
    if (d < nearest_dist) {
      nearest_dist = d;
      nearest = i;
    }
  }
  if (!(wsum > 0.0) || !(psum > 0.0))
    fail(ErrorCode::InvalidArgument, "directivity undefined on this grid");
  const double mean = psum / wsum;
  return 10.0 * std::log10(std::norm(pat.samples[nearest].af) / mean);
}

}  // namespace hris

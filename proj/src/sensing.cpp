// SPDX-License-Identifier: Apache-2.0
#include "hris/sensing.hpp"

#include <cmath>
#include <limits>

#include "hris/rng.hpp"

namespace hris {

void Scene::validate() const {
  tx_direction.validate();
  rx_direction.validate();
  auto finite = [](std::complex<double> a) {
    return std::isfinite(a.real()) && std::isfinite(a.imag());
  };
  if (!finite(tx_amplitude) || !finite(rx_amplitude))
    fail(ErrorCode::InvalidSpec, "scene amplitudes must be finite");
  if (snapshots < 1) fail(ErrorCode::InvalidSpec, "need at least one snapshot");
  if (std::isnan(snr_db)) fail(ErrorCode::InvalidSpec, "snr_db must not be NaN");
}

Eigen::VectorXcd group_steering_vector(const PanelLayout& layout, int group, const Direction& dir,
                                       double freq_hz) {
  dir.validate();
  const auto idx = layout.group_indices(group);
  if (idx.empty())
    fail(ErrorCode::MissingSensingGroup,
         "layout has no elements in feeder group " + std::to_string(group));
  Eigen::VectorXcd a(static_cast<Eigen::Index>(idx.size()));
  for (std::size_t i = 0; i < idx.size(); ++i) {
    const auto& e = layout.elements[static_cast<std::size_t>(idx[i])];
    a[static_cast<Eigen::Index>(i)] = std::polar(1.0, steering_phase(e.position, dir, freq_hz));
  }
  return a;
}

std::pair<Snapshot, Snapshot> snapshot_model(const PanelLayout& layout, const Scene& scene,
                                             const SensingOptions& options) {
  scene.validate();
  if (!(options.sense_rho >= 0.0) || !(options.sense_rho <= 1.0))
    fail(ErrorCode::InvalidSpec, "sense_rho must lie in [0, 1]");
  if (options.leak_amplitude < 0.0)
    fail(ErrorCode::InvalidSpec, "leak amplitude must be non-negative");

  const double f = layout.design_frequency_hz;
  const double srho = std::sqrt(options.sense_rho);
  const bool noiseless = std::isinf(scene.snr_db) && scene.snr_db > 0.0;

  Rng rng(scene.seed);
  auto make = [&](int group, std::complex<double> amp_int, const Direction& dir_int,
                  std::complex<double> amp_leak, const Direction& dir_leak) {
    const Eigen::VectorXcd a_int = group_steering_vector(layout, group, dir_int, f);
    const Eigen::VectorXcd a_leak = group_steering_vector(layout, group, dir_leak, f);
    const Eigen::VectorXcd clean =
        srho * (amp_int * a_int + options.leak_amplitude * amp_leak * a_leak);

    Snapshot snap;
    snap.group = group;
    snap.samples.resize(a_int.size(), scene.snapshots);
    const double noise_power =
        options.sense_rho * std::norm(amp_int) * std::pow(10.0, -scene.snr_db / 10.0);
    const double sigma = noiseless ? 0.0 : std::sqrt(noise_power);
    for (int t = 0; t < scene.snapshots; ++t) {
      for (Eigen::Index e = 0; e < a_int.size(); ++e) {
        std::complex<double> v = clean[e];  // constant unit waveform
        if (!noiseless) v += sigma * rng.complex_gaussian();
        snap.samples(e, t) = v;
      }
    }
    return snap;
  };

  Snapshot g1 = make(1, scene.tx_amplitude, scene.tx_direction, scene.rx_amplitude,
                     scene.rx_direction);
  Snapshot g2 = make(2, scene.rx_amplitude, scene.rx_direction, scene.tx_amplitude,
                     scene.tx_direction);
  return {std::move(g1), std::move(g2)};
}

namespace {

double beam_power(const Eigen::VectorXcd& a, const Eigen::MatrixXcd& x) {
  const double denom = a.squaredNorm() * static_cast<double>(x.cols());
  return (a.adjoint() * x).squaredNorm() / denom;
}

// Vertex offset of the parabola through (-1, ym), (0, y0), (+1, yp), clamped
// to half a step; zero when the curvature is non-negative.
double parabolic_offset(double ym, double y0, double yp) {
  const double denom = ym - 2.0 * y0 + yp;
  if (!(denom < 0.0)) return 0.0;
  const double off = 0.5 * (ym - yp) / denom;
  return std::clamp(off, -0.5, 0.5);
}

}  // namespace

DoAEstimate estimate_doa(const Snapshot& snapshot, const PanelLayout& layout, int group,
                         const GridSpec& grid) {
  grid.validate();
  const auto idx = layout.group_indices(group);
  if (idx.empty())
    fail(ErrorCode::MissingSensingGroup,
         "layout has no elements in feeder group " + std::to_string(group));
  if (snapshot.samples.rows() != static_cast<Eigen::Index>(idx.size()))
    fail(ErrorCode::DimensionMismatch,
         "snapshot rows " + std::to_string(snapshot.samples.rows()) + " vs group size " +
             std::to_string(idx.size()));

  const double f = layout.design_frequency_hz;
  const std::size_t nt = grid.n_theta();
  const std::size_t np = grid.n_phi();

  auto power_at = [&](double theta_deg, double phi_deg) {
    const Direction dir = Direction::from_degrees(std::clamp(theta_deg, 0.0, 90.0), phi_deg);
    return beam_power(group_steering_vector(layout, group, dir, f), snapshot.samples);
  };

  Eigen::MatrixXd p(static_cast<Eigen::Index>(nt), static_cast<Eigen::Index>(np));
  std::size_t best_t = 0, best_p = 0;
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t it = 0; it < nt; ++it) {
    const double theta_deg = grid.theta_min_deg + static_cast<double>(it) * grid.theta_step_deg;
    for (std::size_t ip = 0; ip < np; ++ip) {
      const double phi_deg = grid.phi_min_deg + static_cast<double>(ip) * grid.phi_step_deg;
      const double val = power_at(theta_deg, phi_deg);
      p(static_cast<Eigen::Index>(it), static_cast<Eigen::Index>(ip)) = val;
      if (val > best) {
        best = val;
        best_t = it;
        best_p = ip;
      }
    }
  }

  double theta_deg = grid.theta_min_deg + static_cast<double>(best_t) * grid.theta_step_deg;
  double phi_deg = grid.phi_min_deg + static_cast<double>(best_p) * grid.phi_step_deg;

  if (best_t > 0 && best_t + 1 < nt) {
    const double off = parabolic_offset(
        p(static_cast<Eigen::Index>(best_t - 1), static_cast<Eigen::Index>(best_p)), best,
        p(static_cast<Eigen::Index>(best_t + 1), static_cast<Eigen::Index>(best_p)));
    theta_deg += off * grid.theta_step_deg;
  }
  if (np >= 3) {
    const std::size_t pm = (best_p + np - 1) % np;  // phi wraps
    const std::size_t pp = (best_p + 1) % np;
    const double off =
        parabolic_offset(p(static_cast<Eigen::Index>(best_t), static_cast<Eigen::Index>(pm)), best,
                         p(static_cast<Eigen::Index>(best_t), static_cast<Eigen::Index>(pp)));
    phi_deg += off * grid.phi_step_deg;
  }

  theta_deg = std::clamp(theta_deg, 0.0, 90.0);
  DoAEstimate est;
  est.direction = Direction::from_degrees(theta_deg, phi_deg);
  est.spectrum_peak = power_at(theta_deg, phi_deg);
  est.group = group;
  return est;
}

IsolationReport isolation_report(const PanelLayout& layout, const Scene& scene,
                                 const SensingOptions& options) {
  scene.validate();
  auto one = [&](int group, std::complex<double> amp_int, const Direction& dir_int,
                 std::complex<double> amp_leak, const Direction& dir_leak) {
    const Eigen::VectorXcd a_int =
        group_steering_vector(layout, group, dir_int, layout.design_frequency_hz);
    const Eigen::VectorXcd a_leak =
        group_steering_vector(layout, group, dir_leak, layout.design_frequency_hz);
    const double m = static_cast<double>(a_int.size());
    const double corr = std::abs((a_int.adjoint() * a_leak)(0));
    const double num = std::abs(amp_int) * m;
    const double den = options.leak_amplitude * std::abs(amp_leak) * corr;
    if (!(den > 0.0)) return kIsolationCapDb;
    return std::min(kIsolationCapDb, 20.0 * std::log10(num / den));
  };
  IsolationReport rep;
  rep.group1_db = one(1, scene.tx_amplitude, scene.tx_direction, scene.rx_amplitude,
                      scene.rx_direction);
  rep.group2_db = one(2, scene.rx_amplitude, scene.rx_direction, scene.tx_amplitude,
                      scene.tx_direction);
  return rep;
}

}  // namespace hris

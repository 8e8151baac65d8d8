// SPDX-License-Identifier: Apache-2.0
#include "hris/retrieval.hpp"

#include <cmath>
#include <limits>

#include "hris/numfmt.hpp"

namespace hris {

namespace {

constexpr double kC0 = 299792458.0;
constexpr double kTwoPi = 2.0 * M_PI;

bool finite(std::complex<double> v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

double wavenumber(double freq_hz) { return kTwoPi * freq_hz / kC0; }

}  // namespace

void SlabSpec::validate() const {
  if (!(thickness_m > 0.0) || !std::isfinite(thickness_m))
    fail(ErrorCode::InvalidSpec, "slab thickness must be positive, got " + format_double(thickness_m));
  if (band_lo_hz < 0.0 || band_hi_hz < 0.0 || (band_hi_hz > 0.0 && band_hi_hz < band_lo_hz))
    fail(ErrorCode::InvalidSpec, "slab band of interest is inverted");
}

void MaterialModel::validate() const {
  for (const LorentzianTerm* t : {&eps, &mu}) {
    if (!std::isfinite(t->static_value) || !std::isfinite(t->strength) ||
        !std::isfinite(t->resonance_hz) || !std::isfinite(t->damping_hz))
      fail(ErrorCode::InvalidSpec, "material term has non-finite fields");
    if (t->strength != 0.0 && !(t->resonance_hz > 0.0))
      fail(ErrorCode::InvalidSpec, "oscillator needs a positive resonance frequency");
    if (t->damping_hz < 0.0)
      fail(ErrorCode::InvalidSpec, "damping must be non-negative (passive material)");
    if (t->strength < 0.0)
      fail(ErrorCode::InvalidSpec, "oscillator strength must be non-negative");
  }
}

std::pair<std::complex<double>, std::complex<double>> evaluate_material(const MaterialModel& model,
                                                                        double freq_hz) {
  auto term = [freq_hz](const LorentzianTerm& t) {
    if (t.strength == 0.0) return std::complex<double>(t.static_value, 0.0);
    const double f0sq = t.resonance_hz * t.resonance_hz;
    const std::complex<double> den(f0sq - freq_hz * freq_hz, -t.damping_hz * freq_hz);
    return t.static_value + t.strength * f0sq / den;
  };
  return {term(model.eps), term(model.mu)};
}

std::pair<std::complex<double>, std::complex<double>> slab_forward(std::complex<double> eps,
                                                                   std::complex<double> mu,
                                                                   double thickness_m,
                                                                   double freq_hz) {
  if (!(thickness_m > 0.0) || !(freq_hz > 0.0))
    fail(ErrorCode::InvalidArgument, "slab_forward needs positive thickness and frequency");
  // Product of the principal square roots, not the principal root of the
  // product: for lossless eps = mu = -1 this gives n = -1 as the limit of the
  // passive case, while sqrt(eps*mu) would give +1.
  const std::complex<double> n = std::sqrt(eps) * std::sqrt(mu);
  const std::complex<double> z = std::sqrt(mu / eps);
  const std::complex<double> r = (z - 1.0) / (z + 1.0);
  const std::complex<double> phase =
      std::exp(std::complex<double>(0.0, 1.0) * n * (wavenumber(freq_hz) * thickness_m));
  const std::complex<double> den = 1.0 - r * r * phase * phase;
  if (std::abs(den) == 0.0)
    fail(ErrorCode::NonFiniteResult, "slab denominator vanished");
  const std::complex<double> s11 = r * (1.0 - phase * phase) / den;
  const std::complex<double> s21 = (1.0 - r * r) * phase / den;
  if (!finite(s11) || !finite(s21))
    fail(ErrorCode::NonFiniteResult, "slab response is not finite");
  return {s11, s21};
}

std::complex<double> retrieve_impedance(std::complex<double> s11, std::complex<double> s21,
                                        std::optional<std::complex<double>> z_prev, double tol_z) {
  const std::complex<double> num = (1.0 + s11) * (1.0 + s11) - s21 * s21;
  const std::complex<double> den = (1.0 - s11) * (1.0 - s11) - s21 * s21;
  if (std::abs(den) < 1e-300)
    fail(ErrorCode::DegenerateDenominator, "impedance denominator vanished");
  std::complex<double> z = std::sqrt(num / den);
  if (!finite(z)) fail(ErrorCode::NonFiniteResult, "impedance is not finite");

  if (std::abs(z.real()) >= tol_z) {
    if (z.real() < 0.0) z = -z;
  } else if (z_prev) {
    // Nearly reactive: the real part cannot pick the sign, stay continuous.
    if (std::abs(z - *z_prev) > std::abs(-z - *z_prev)) z = -z;
  } else if (z.real() < 0.0) {
    z = -z;
  }
  return z;
}

std::complex<double> retrieve_index(std::complex<double> s11, std::complex<double> s21,
                                    std::complex<double> z, double thickness_m, double freq_hz,
                                    int branch_m, double tol_s21) {
  if (std::abs(s21) <= tol_s21)
    fail(ErrorCode::TransmissionTooSmall,
         "|s21| = " + format_double(std::abs(s21)) + " at " + format_double(freq_hz) + " Hz");
  const std::complex<double> gamma = (z - 1.0) / (z + 1.0);
  const std::complex<double> den = 1.0 - s11 * gamma;
  if (std::abs(den) < 1e-300)
    fail(ErrorCode::DegenerateDenominator, "transmission term denominator vanished");
  const std::complex<double> T = s21 / den;
  const double k0d = wavenumber(freq_hz) * thickness_m;
  const std::complex<double> n(
      (std::arg(T) + kTwoPi * static_cast<double>(branch_m)) / k0d,
      -std::log(std::abs(T)) / k0d);
  if (!finite(n)) fail(ErrorCode::NonFiniteResult, "index is not finite");
  return n;
}

EffectiveParams unwrap_branch(const SParamTable& table, const SlabSpec& slab,
                              std::optional<int> branch_hint) {
  table.validate(2);
  slab.validate();
  const double d = slab.thickness_m;
  const double nan = std::numeric_limits<double>::quiet_NaN();

  EffectiveParams out;
  out.thickness_m = d;
  out.records.reserve(table.records.size());

  std::optional<std::complex<double>> z_prev;
  std::optional<std::complex<double>> n_prev;
  bool first_usable = true;

  for (const auto& rec : table.records) {
    EffectiveParamsRecord r;
    r.freq_hz = rec.freq_hz;
    try {
      const std::complex<double> z = retrieve_impedance(rec.s11, rec.s21, z_prev);
      const double k0d = wavenumber(rec.freq_hz) * d;

      int m = 0;
      if (n_prev) {
        // arg(T) follows from z; recompute it to place the branch.
        if (std::abs(rec.s21) <= kTolS21)
          fail(ErrorCode::TransmissionTooSmall, "transmission null");
        const std::complex<double> gamma = (z - 1.0) / (z + 1.0);
        const std::complex<double> den = 1.0 - rec.s11 * gamma;
        if (std::abs(den) < 1e-300)
          fail(ErrorCode::DegenerateDenominator, "transmission term denominator vanished");
        const double argT = std::arg(rec.s21 / den);
        // Closed-form integer minimizer of |Re n(m) - Re n_prev|.
        m = static_cast<int>(std::lround((n_prev->real() * k0d - argT) / kTwoPi));
      } else if (first_usable) {
        // The hint covers the sweep start; restarts after a gap default to 0.
        m = branch_hint.value_or(0);
      }

      const std::complex<double> n =
          retrieve_index(rec.s11, rec.s21, z, d, rec.freq_hz, m);

      r.n = n;
      r.z = z;
      r.eps = n / z;
      r.mu = n * z;
      r.branch = m;
      z_prev = z;
      n_prev = n;
      first_usable = false;
    } catch (const Error&) {
      r.gap = true;
      r.n = r.z = r.eps = r.mu = {nan, nan};
      r.branch = 0;
      // Continuity is meaningless across an unobservable stretch.
      z_prev.reset();
      n_prev.reset();
    }
    out.records.push_back(r);
  }

  bool any = false;
  for (const auto& r : out.records) any = any || !r.gap;
  if (!any) fail(ErrorCode::EmptySweep, "every point of the sweep is a gap");
  return out;
}

std::vector<FrequencyBand> classify_dng_bands(const EffectiveParams& params) {
  const auto& recs = params.records;
  auto inside = [](const EffectiveParamsRecord& r) {
    return !r.gap && r.eps.real() < 0.0 && r.mu.real() < 0.0;
  };

  std::vector<FrequencyBand> bands;
  std::size_t i = 0;
  while (i < recs.size()) {
    if (!inside(recs[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < recs.size() && inside(recs[j + 1])) ++j;
    FrequencyBand band;
    band.lo_hz = (i == 0) ? recs[i].freq_hz : 0.5 * (recs[i - 1].freq_hz + recs[i].freq_hz);
    band.hi_hz =
        (j + 1 == recs.size()) ? recs[j].freq_hz : 0.5 * (recs[j].freq_hz + recs[j + 1].freq_hz);
    bands.push_back(band);
    i = j + 1;
  }
  return bands;
}

}  // namespace hris

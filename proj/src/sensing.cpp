#include "roisac/sensing.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "roisac/constants.hpp"
#include "roisac/fft.hpp"

namespace roisac {

void EchoModel::validate() const {
  for (const auto& c : components) {
    if (c.amplitude < 0.0 || c.delay_s < 0.0) {
      throw std::invalid_argument("invalid echo: amplitude and delay must be nonnegative");
    }
  }
}

void EchoModel::canonicalize() {
  validate();
  std::stable_sort(components.begin(), components.end(),
                   [](const EchoComponent& a, const EchoComponent& b) {
                     return a.delay_s < b.delay_s;
                   });
}

namespace {

bool all_zero(const Samples& x) {
  for (double v : x) {
    if (v != 0.0) return false;
  }
  return true;
}

// Cross-correlation c[l] = sum_n rx[n] * ref[n - l], evaluated on an
// upsample-times-denser lag grid via spectral zero padding. The product
// spectrum trick is equivalent to upsampling both signals first: interpolating
// the correlation interpolates the band-limited signals it came from.
// Returns the circular buffer of length L * upsample; positive lags occupy the
// front, negative lags wrap around the top.
std::vector<double> xcorr_upsampled(const Samples& rx, const Samples& ref, unsigned up,
                                    std::size_t& padded_len) {
  const std::size_t need = rx.size() + ref.size() - 1;
  const std::size_t len = fft::next_pow2(need);
  fft::cvec a = fft::forward_real(rx, len);
  const fft::cvec b = fft::forward_real(ref, len);
  for (std::size_t i = 0; i < len; ++i) a[i] *= std::conj(b[i]);

  padded_len = len;
  if (up == 1) {
    return fft::inverse_real(std::move(a));
  }

  const std::size_t ulen = len * up;
  fft::cvec spec(ulen, {0.0, 0.0});
  for (std::size_t i = 0; i < len / 2; ++i) spec[i] = a[i];
  for (std::size_t i = len / 2 + 1; i < len; ++i) spec[ulen - len + i] = a[i];
  // Split the Nyquist bin so the interpolated sequence stays real and matches
  // the base-rate samples exactly at integer lags.
  spec[len / 2] = a[len / 2] * 0.5;
  spec[ulen - len / 2] = a[len / 2] * 0.5;
  const double gain = static_cast<double>(up);
  for (auto& v : spec) v *= gain;
  return fft::inverse_real(std::move(spec));
}

double parabolic_offset(double ym, double y0, double yp) {
  const double denom = ym - 2.0 * y0 + yp;
  if (denom == 0.0) return 0.0;
  const double d = 0.5 * (ym - yp) / denom;
  // The vertex of the fitted parabola through a discrete maximum stays within
  // half a bin of it.
  return std::clamp(d, -0.5, 0.5);
}

} // namespace

RangeEstimate estimate_tof(const Waveform& rx, const Waveform& reference, unsigned upsample,
                           bool refine) {
  if (upsample < 1) throw std::invalid_argument("estimate_tof: upsample factor must be >= 1");
  if (rx.samples.empty()) throw std::invalid_argument("estimate_tof: empty receive window");
  if (reference.samples.empty() || all_zero(reference.samples)) {
    throw std::invalid_argument("estimate_tof: reference waveform is all zero");
  }
  if (rx.sample_rate != reference.sample_rate) {
    throw std::invalid_argument("estimate_tof: sample rate mismatch");
  }

  std::size_t base_len = 0;
  const std::vector<double> c = xcorr_upsampled(rx.samples, reference.samples, upsample, base_len);
  const std::size_t last = (rx.samples.size() - 1) * upsample; // largest physical lag

  std::size_t best = 0;
  for (std::size_t l = 1; l <= last; ++l) {
    if (c[l] > c[best]) best = l;
  }

  RangeEstimate est;
  est.peak_value = c[best];
  est.out_of_window = (best == last);

  double lag = static_cast<double>(best);
  if (refine && !est.out_of_window) {
    const double ym = c[best == 0 ? c.size() - 1 : best - 1];
    lag += parabolic_offset(ym, c[best], c[best + 1]);
  }
  est.tof_s = lag / (static_cast<double>(upsample) * rx.sample_rate);
  est.distance_m = kSpeedOfLight * est.tof_s / 2.0;
  return est;
}

CorrelationProfile correlation_profile(const Waveform& rx, const Waveform& reference,
                                       unsigned upsample) {
  if (upsample < 1) throw std::invalid_argument("correlation_profile: upsample factor must be >= 1");
  if (rx.samples.empty() || reference.samples.empty()) {
    throw std::invalid_argument("correlation_profile: empty input");
  }
  std::size_t base_len = 0;
  const std::vector<double> c = xcorr_upsampled(rx.samples, reference.samples, upsample, base_len);
  const std::size_t last = (rx.samples.size() - 1) * upsample;
  CorrelationProfile p;
  p.lag_s.reserve(last + 1);
  p.value.reserve(last + 1);
  const double dt = 1.0 / (static_cast<double>(upsample) * rx.sample_rate);
  for (std::size_t l = 0; l <= last; ++l) {
    p.lag_s.push_back(static_cast<double>(l) * dt);
    p.value.push_back(c[l]);
  }
  return p;
}

double ranging_rmse(std::span<const std::pair<double, RangeEstimate>> truth_and_estimate) {
  if (truth_and_estimate.empty()) {
    throw std::invalid_argument("ranging_rmse: no trials");
  }
  double acc = 0.0;
  for (const auto& [truth, est] : truth_and_estimate) {
    const double e = est.distance_m - truth;
    acc += e * e;
  }
  return std::sqrt(acc / static_cast<double>(truth_and_estimate.size()));
}

std::vector<RangeEstimate> sic_multi_target(const Waveform& rx, const Waveform& reference,
                                            std::size_t max_targets, double stop_threshold,
                                            bool refine) {
  if (max_targets == 0) throw std::invalid_argument("sic_multi_target: max_targets must be >= 1");
  if (stop_threshold < 0.0) throw std::invalid_argument("sic_multi_target: negative threshold");
  if (reference.samples.empty() || all_zero(reference.samples)) {
    throw std::invalid_argument("sic_multi_target: reference waveform is all zero");
  }
  if (rx.samples.empty()) throw std::invalid_argument("sic_multi_target: empty receive window");

  const Samples& ref = reference.samples;
  Samples residual = rx.samples;
  std::vector<RangeEstimate> found;
  double first_peak = 0.0;

  for (std::size_t k = 0; k < max_targets; ++k) {
    std::size_t base_len = 0;
    const std::vector<double> c = xcorr_upsampled(residual, ref, 1, base_len);
    const std::size_t last = residual.size() - 1;
    std::size_t best = 0;
    for (std::size_t l = 1; l <= last; ++l) {
      if (c[l] > c[best]) best = l; // strict: ties keep the smaller delay
    }
    const double peak = c[best];
    if (k == 0) {
      first_peak = peak;
      if (peak <= 0.0) break;
    } else if (peak < stop_threshold * first_peak) {
      break;
    }

    // Least-squares amplitude of a reference copy at this integer lag, over
    // the part of it that fits the window.
    double overlap_energy = 0.0;
    const std::size_t span = std::min(ref.size(), residual.size() - best);
    for (std::size_t i = 0; i < span; ++i) overlap_energy += ref[i] * ref[i];
    if (overlap_energy <= 0.0) break;
    const double amp = peak / overlap_energy;
    for (std::size_t i = 0; i < span; ++i) residual[best + i] -= amp * ref[i];

    RangeEstimate est;
    est.peak_value = peak;
    est.target_id = static_cast<int>(k);
    est.out_of_window = (best == last);
    double lag = static_cast<double>(best);
    if (refine && best > 0 && !est.out_of_window) {
      lag += parabolic_offset(c[best - 1], c[best], c[best + 1]);
    }
    est.tof_s = lag / rx.sample_rate;
    est.distance_m = kSpeedOfLight * est.tof_s / 2.0;
    found.push_back(est);
  }
  return found;
}

SectorAssignment sector_partition(const Pose& tx, const std::vector<Pose>& targets,
                                  const std::vector<Sector>& sectors) {
  tx.validate();
  for (const auto& s : sectors) {
    if (!(s.half_angle > 0.0) || s.half_angle > kPi) {
      throw std::invalid_argument("sector half-angle must be in (0, pi]");
    }
    if (std::abs(s.boresight.norm() - 1.0) > 1e-9) {
      throw std::invalid_argument("sector boresight must be a unit vector");
    }
  }
  SectorAssignment out;
  out.per_sector.resize(sectors.size());
  for (std::size_t t = 0; t < targets.size(); ++t) {
    const Vec3 delta = targets[t].position - tx.position;
    if (delta.norm() < 1e-12) {
      throw GeometryError("sector_partition: target coincides with transceiver");
    }
    bool hit = false;
    for (std::size_t s = 0; s < sectors.size(); ++s) {
      const double ang = angle_between(delta, sectors[s].boresight);
      if (ang <= sectors[s].half_angle + 1e-12) { // closed cone
        out.per_sector[s].push_back(t);
        hit = true;
      }
    }
    if (!hit) out.unassigned.push_back(t);
  }
  return out;
}

} // namespace roisac

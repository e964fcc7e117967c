#include "roisac/channel.hpp"

#include <cmath>
#include <stdexcept>

#include "roisac/rng.hpp"

namespace roisac {

double ChannelParams::kappa_at(double phi) const {
  const double v = kappa ? kappa(phi) : std::max(0.0, std::cos(phi));
  return std::clamp(v, 0.0, 1.0);
}

double ChannelParams::xi_at(double phi, double theta) const {
  const double v = xi ? xi(phi, theta) : xi0 * std::max(0.0, std::cos(theta));
  return std::clamp(v, 0.0, 1.0);
}

void ChannelParams::validate() const {
  if (m_p < 1.0 || m_a < 1.0) throw std::invalid_argument("Lambertian orders must be >= 1");
  if (!(A_s > 0.0)) throw std::invalid_argument("A_s must be positive");
  if (!(rho_s > 0.0)) throw std::invalid_argument("rho_s must be positive");
  if (!(Phi_s > 0.0) || Phi_s > kPi / 2.0) throw std::invalid_argument("Phi_s must be in (0, pi/2]");
  if (!(k > 0.0) || k > 1.0) throw std::invalid_argument("k must be in (0, 1]");
  if (!(Phi_r > 0.0) || Phi_r > kPi / 2.0) throw std::invalid_argument("Phi_r must be in (0, pi/2]");
  if (xi0 < 0.0 || xi0 > 1.0) throw std::invalid_argument("xi0 must be in [0, 1]");
  if (std::abs(kappa_at(0.0) - 1.0) > 1e-9) {
    throw std::invalid_argument("kappa(0) must equal 1");
  }
}

void NoiseParams::validate() const {
  if (mode == Mode::physical) {
    if (ambient_power < 0.0 || bandwidth < 0.0 || thermal_variance < 0.0) {
      throw std::invalid_argument("physical noise parameters must be nonnegative");
    }
  }
}

namespace {

// Shared Lambertian emitter factor: (m+1)/(2*pi) * cos^m(angle).
double emitter_factor(double m, double cos_angle) {
  return (m + 1.0) / (2.0 * kPi) * std::pow(cos_angle, m);
}

} // namespace

double point_source_gain(const LinkGeometry& g, const ChannelParams& p) {
  g.validate();
  p.validate();
  const double cphi = std::cos(g.phi);
  const double ctheta = std::cos(g.theta);
  if (g.phi > p.Phi_s || g.theta > p.Phi_r) return 0.0;
  if (cphi <= 0.0 || ctheta <= 0.0) return 0.0;
  const double twod = 2.0 * g.d;
  return p.k * p.kappa_at(g.phi) * ctheta * emitter_factor(p.m_p, cphi) * p.A_s * cphi /
         (twod * twod);
}

double area_source_gain(const LinkGeometry& g, const ChannelParams& p) {
  g.validate();
  p.validate();
  const double cphi = std::cos(g.phi);
  const double ctheta = std::cos(g.theta);
  if (g.phi > p.Phi_s || g.theta > p.Phi_r) return 0.0;
  if (cphi <= 0.0 || ctheta <= 0.0) return 0.0;
  const double twod = 2.0 * g.d;
  return p.k * p.xi_at(g.phi, g.theta) * ctheta * emitter_factor(p.m_a, cphi) * p.A_s * cphi /
         (twod * twod);
}

double uplink_gain(const LinkGeometry& g, double m, double area, double phi_fov) {
  g.validate();
  if (m < 1.0) throw std::invalid_argument("Lambertian order must be >= 1");
  if (!(area > 0.0)) throw std::invalid_argument("receiver area must be positive");
  const double cphi = std::cos(g.phi);
  const double ctheta = std::cos(g.theta);
  if (g.phi > phi_fov || cphi <= 0.0 || ctheta <= 0.0) return 0.0;
  return emitter_factor(m, ctheta) * area * cphi / (g.d * g.d);
}

double one_way_downlink_gain(const LinkGeometry& g, double m, double pd_area, double pd_fov) {
  g.validate();
  if (m < 1.0) throw std::invalid_argument("Lambertian order must be >= 1");
  if (!(pd_area > 0.0)) throw std::invalid_argument("receiver area must be positive");
  const double cphi = std::cos(g.phi);
  const double ctheta = std::cos(g.theta);
  if (g.theta > pd_fov || cphi <= 0.0 || ctheta <= 0.0) return 0.0;
  return emitter_factor(m, cphi) * pd_area * ctheta / (g.d * g.d);
}

double noise_sigma(const NoiseParams& noise, double signal_power, double rho_s) {
  noise.validate();
  switch (noise.mode) {
    case NoiseParams::Mode::none:
      return 0.0;
    case NoiseParams::Mode::direct_snr:
      return std::sqrt(signal_power * std::pow(10.0, -noise.snr_db / 10.0));
    case NoiseParams::Mode::physical: {
      // Shot noise from the detected plus ambient optical power, plus the
      // thermal term. Detected optical power is taken as the RMS photocurrent
      // over rho_s.
      const double p_rx = std::sqrt(signal_power) / rho_s;
      const double shot = 2.0 * kElementaryCharge * rho_s * (p_rx + noise.ambient_power) *
                          noise.bandwidth;
      return std::sqrt(shot + noise.thermal_variance);
    }
  }
  return 0.0;
}

Samples fractional_delay(std::span<const double> x, double delay_samples, int half_width) {
  if (delay_samples < 0.0) throw std::invalid_argument("delay must be nonnegative");
  if (half_width < 1) throw std::invalid_argument("kernel half width must be >= 1");
  const std::size_t n0 = static_cast<std::size_t>(std::floor(delay_samples));
  const double mu = delay_samples - static_cast<double>(n0);

  if (mu < 1e-12 || mu > 1.0 - 1e-12) {
    // Effectively integer: shift exactly.
    const std::size_t shift = mu > 0.5 ? n0 + 1 : n0;
    Samples out(x.size() + shift, 0.0);
    for (std::size_t i = 0; i < x.size(); ++i) out[shift + i] = x[i];
    return out;
  }

  const int w = half_width;
  Samples out(x.size() + n0 + static_cast<std::size_t>(w) + 1, 0.0);
  // y[n] = sum_j x[j] * h(n - delay - j), Hann-windowed sinc kernel.
  for (std::size_t j = 0; j < x.size(); ++j) {
    const double center = static_cast<double>(j) + delay_samples;
    const int lo = std::max(0, static_cast<int>(std::ceil(center)) - w);
    const int hi = std::min(static_cast<int>(out.size()) - 1,
                            static_cast<int>(std::floor(center)) + w);
    for (int n = lo; n <= hi; ++n) {
      const double t = static_cast<double>(n) - center;
      const double window = 0.5 * (1.0 + std::cos(kPi * t / static_cast<double>(w)));
      const double s = t == 0.0 ? 1.0 : std::sin(kPi * t) / (kPi * t);
      out[static_cast<std::size_t>(n)] += x[j] * s * window;
    }
  }
  return out;
}

Waveform received_signal(const Waveform& tx, const EchoModel& echoes, const NoiseParams& noise,
                         std::uint64_t seed, double rho_s) {
  echoes.validate();
  noise.validate();
  if (tx.samples.empty()) throw std::invalid_argument("received_signal: empty transmit waveform");
  if (!(tx.sample_rate > 0.0)) throw std::invalid_argument("received_signal: bad sample rate");

  std::size_t out_len = tx.samples.size();
  for (const auto& c : echoes.components) {
    const double ds = c.delay_s * tx.sample_rate;
    const std::size_t need = tx.samples.size() + static_cast<std::size_t>(std::ceil(ds)) + 20;
    out_len = std::max(out_len, need);
  }

  Waveform rx;
  rx.sample_rate = tx.sample_rate;
  rx.meta = tx.meta;
  rx.dc_bias = 0.0;

  // Exact-identity special case: a single unit echo at zero delay with noise
  // off reproduces the input.
  if (echoes.components.size() == 1 && echoes.components[0].delay_s == 0.0 &&
      noise.mode == NoiseParams::Mode::none) {
    rx.samples = tx.samples;
    const double a = echoes.components[0].amplitude * rho_s;
    for (double& v : rx.samples) v *= a;
    return rx;
  }

  rx.samples.assign(out_len, 0.0);
  for (const auto& c : echoes.components) {
    const double ds = c.delay_s * tx.sample_rate;
    const Samples shifted = fractional_delay(tx.samples, ds);
    for (std::size_t i = 0; i < shifted.size() && i < out_len; ++i) {
      rx.samples[i] += c.amplitude * shifted[i];
    }
  }
  for (double& v : rx.samples) v *= rho_s;

  add_window_noise(rx.samples, noise, rho_s, seed);
  return rx;
}

void add_window_noise(std::span<double> x, const NoiseParams& noise, double rho_s,
                      std::uint64_t seed) {
  if (noise.mode == NoiseParams::Mode::none || x.empty()) return;
  double power = 0.0;
  for (double v : x) power += v * v;
  power /= static_cast<double>(x.size());
  const double sigma = noise_sigma(noise, power, rho_s);
  if (sigma == 0.0) return;
  Rng rng(seed);
  for (double& v : x) v += sigma * rng.gaussian();
}

} // namespace roisac

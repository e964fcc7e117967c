#pragma once

#include <cstdint>
#include <functional>
#include <span>

#include "roisac/constants.hpp"
#include "roisac/geometry.hpp"
#include "roisac/sensing.hpp"
#include "roisac/waveform.hpp"

namespace roisac {

// Retroreflective link parameters. The reflector is modeled either as a point
// source re-emitting with Lambertian order m_p, or as an area source of order
// m_a whose effective reflecting ratio xi(phi, theta) captures how much of
// the panel takes part. kappa(phi) is the point-source geometric factor.
// Both factors are pluggable; null means the cosine defaults.
struct ChannelParams {
  double m_p = 1.0;
  double m_a = 1.0;
  double A_s = 1e-4;        // receiver PD area, m^2
  double rho_s = 0.5;       // PD responsivity, A/W
  double Phi_s = kPi / 3.0; // source half FOV, rad
  double k = 0.9;           // reflection coefficient, (0, 1]
  double Phi_r = kPi / 6.0; // reflector FOV, rad
  double xi0 = 0.5;         // scale of the default xi
  std::function<double(double)> kappa;           // phi -> [0, 1]
  std::function<double(double, double)> xi;      // (phi, theta) -> [0, 1]

  double kappa_at(double phi) const;
  double xi_at(double phi, double theta) const;
  void validate() const;
};

struct NoiseParams {
  enum class Mode { none, direct_snr, physical };
  Mode mode = Mode::none;
  double snr_db = 10.0;         // direct_snr: per-sample SNR against the clean signal
  double ambient_power = 0.0;   // physical: W
  double bandwidth = 0.0;       // physical: Hz
  double thermal_variance = 0.0; // physical: A^2
  void validate() const;
};

// Round-trip gain of the point-source reflector model. Zero when a FOV gate
// fails or a cosine goes negative. Note the doubled propagation distance.
double point_source_gain(const LinkGeometry& g, const ChannelParams& p);

// Same structure with the area-source order and the effective reflecting
// ratio in place of kappa.
double area_source_gain(const LinkGeometry& g, const ChannelParams& p);

// One-way LoS gain for the target-to-transceiver link: the target emits with
// Lambertian order m (angle theta on its side), the transceiver PD of area
// `area` receives at incidence phi within half FOV phi_fov.
double uplink_gain(const LinkGeometry& g, double m, double area, double phi_fov);

// One-way LoS gain for transceiver-to-target reception (roles mirrored:
// emitter angle phi, receiving PD angle theta).
double one_way_downlink_gain(const LinkGeometry& g, double m, double pd_area, double pd_fov);

// Noise standard deviation for a window whose clean content has the given
// mean-square power (photocurrent units).
double noise_sigma(const NoiseParams& noise, double signal_power, double rho_s);

// Band-limited fractional delay via windowed-sinc interpolation. Integer
// delays shift exactly. Output length grows by the delay (plus the kernel
// half width when interpolation is needed).
Samples fractional_delay(std::span<const double> x, double delay_samples, int half_width = 16);

// Sum of delayed/scaled copies of the transmit waveform plus additive white
// Gaussian noise. Deterministic for a fixed seed.
Waveform received_signal(const Waveform& tx, const EchoModel& echoes, const NoiseParams& noise,
                         std::uint64_t seed, double rho_s = 1.0);

// In-place AWGN on one receive window; sigma comes from the window's own
// clean content per `noise`.
void add_window_noise(std::span<double> x, const NoiseParams& noise, double rho_s,
                      std::uint64_t seed);

} // namespace roisac

#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "roisac/channel.hpp"
#include "roisac/geometry.hpp"
#include "roisac/sensing.hpp"
#include "roisac/waveform.hpp"

namespace roisac {

struct TddFrame {
  std::size_t downlink_len = 0; // samples
  std::size_t guard_len = 0;
  std::size_t uplink_len = 0;
  double sample_rate = 1e8;
  void validate() const;
};

// Guard interval covering the worst-case round trip: ceil(2 * d_max / c * fs),
// never less than one sample. A small tolerance keeps exact-boundary cases
// from being pushed up by floating-point noise.
std::size_t size_guard(double d_max_m, double sample_rate);

// Payload bits per second for a frame of downlink+guard+uplink samples.
double tdd_throughput(const TddFrame& frame, std::size_t payload_bits);

struct WddConfig {
  std::string downlink_band = "blue";
  std::string uplink_band = "green";
  // crosstalk[i][j]: leakage of band j into receiver band i.
  std::array<std::array<double, 2>, 2> crosstalk{{{1.0, 1e-3}, {1e-3, 1.0}}};
  void validate() const;
};

// Target-side transducer parameters used to derive the one-way link gains.
struct TargetDevice {
  double pd_area = 1e-4;        // m^2
  double pd_fov = kPi / 3.0;    // rad
  double pd_responsivity = 0.5; // A/W
  double emit_order = 1.0;      // Lambertian order of the uplink emitter
  // Radiated uplink power relative to the interrogator's downlink power.
  // Tag-class devices run far below the interrogator; the default keeps the
  // retro echo well above the uplink at the transceiver PD.
  double emit_power = 0.0075;
};

// Everything a frame simulation needs about one transceiver-target link:
// photocurrent amplitude scales per path and the propagation delays.
struct DuplexLink {
  double echo_amp = 1.0; // retro echo at the transceiver PD
  double dl_amp = 1.0;   // downlink signal at the target PD
  double ul_amp = 1.0;   // uplink signal at the transceiver PD
  double echo_delay_s = 0.0;
  double ul_delay_s = 0.0;
  double rho_s = 1.0;
  NoiseParams noise;
};

DuplexLink make_duplex_link(const Pose& tx, const Pose& target, const ChannelParams& params,
                            const TargetDevice& device, bool area_model,
                            const NoiseParams& noise);

struct DuplexRunOptions {
  unsigned upsample = 1;
  bool refine = true;
  bool mls_reference = true; // correlate against the MLS component of a hybrid
};

struct TddResult {
  RangeEstimate sensing;
  Bits dl_bits; // decoded at the target
  Bits ul_bits; // decoded at the transceiver
  double ul_window_echo_energy = 0.0;
  Samples stream; // transceiver receive timeline (for export)
};

// One TDD frame: downlink slot (target demodulates, transceiver collects the
// retro echo), guard, uplink slot. Echo and uplink delays are applied at
// integer sample resolution so the guard accounting is exact; an undersized
// guard lets the echo tail spill into the uplink slot and corrupt it.
TddResult run_tdd_frame(const TddFrame& frame, const Waveform& dl, const Waveform& ul,
                        const DuplexLink& link, std::uint64_t seed,
                        const DuplexRunOptions& opts = {});

struct WddResult {
  RangeEstimate sensing;
  Bits dl_bits;
  Bits ul_bits;
  Samples band1; // downlink-wavelength receiver (echo + uplink leakage)
  Samples band2; // uplink-wavelength receiver (uplink + echo leakage)
};

// Wavelength-division duplexing: both directions run concurrently on separate
// bands; the crosstalk matrix couples them at the transceiver.
WddResult run_wdd_frame(const WddConfig& cfg, const Waveform& dl, const Waveform& ul,
                        const DuplexLink& link, std::uint64_t seed,
                        const DuplexRunOptions& opts = {});

} // namespace roisac

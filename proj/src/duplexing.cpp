#include "roisac/duplexing.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "roisac/rng.hpp"

namespace roisac {

void TddFrame::validate() const {
  if (downlink_len == 0) throw std::invalid_argument("TDD frame needs a downlink slot");
  if (!(sample_rate > 0.0)) throw std::invalid_argument("TDD frame sample rate must be positive");
}

std::size_t size_guard(double d_max_m, double sample_rate) {
  if (!(d_max_m > 0.0)) throw std::invalid_argument("size_guard: d_max must be positive");
  if (!(sample_rate > 0.0)) throw std::invalid_argument("size_guard: sample rate must be positive");
  const double x = 2.0 * d_max_m / kSpeedOfLight * sample_rate;
  const auto g = static_cast<long long>(std::ceil(x - 1e-9));
  return static_cast<std::size_t>(std::max(1ll, g));
}

double tdd_throughput(const TddFrame& frame, std::size_t payload_bits) {
  frame.validate();
  const std::size_t total = frame.downlink_len + frame.guard_len + frame.uplink_len;
  return static_cast<double>(payload_bits) * frame.sample_rate / static_cast<double>(total);
}

void WddConfig::validate() const {
  for (int i = 0; i < 2; ++i) {
    if (std::abs(crosstalk[i][i] - 1.0) > 1e-12) {
      throw std::invalid_argument("WDD crosstalk diagonal must be 1");
    }
    const double off = crosstalk[i][1 - i];
    if (off < 0.0 || off >= 1.0) {
      throw std::invalid_argument("WDD crosstalk off-diagonal must be in [0, 1)");
    }
  }
}

DuplexLink make_duplex_link(const Pose& tx, const Pose& target, const ChannelParams& params,
                            const TargetDevice& device, bool area_model,
                            const NoiseParams& noise) {
  const LinkGeometry g = derive_link_geometry(tx, target);
  const double h_rt = area_model ? area_source_gain(g, params) : point_source_gain(g, params);
  DuplexLink link;
  link.echo_amp = h_rt * params.rho_s;
  link.ul_amp =
      device.emit_power * uplink_gain(g, device.emit_order, params.A_s, params.Phi_s) * params.rho_s;
  link.dl_amp = one_way_downlink_gain(g, area_model ? params.m_a : params.m_p, device.pd_area,
                                      device.pd_fov) *
                device.pd_responsivity;
  link.echo_delay_s = 2.0 * g.d / kSpeedOfLight;
  link.ul_delay_s = g.d / kSpeedOfLight;
  link.rho_s = params.rho_s;
  link.noise = noise;
  return link;
}

namespace {

// Correlation reference for sensing: the MLS component of a hybrid when
// requested, otherwise the transmitted waveform itself.
Waveform sensing_reference(const Waveform& dl, const DuplexRunOptions& opts) {
  Waveform ref;
  ref.sample_rate = dl.sample_rate;
  if (opts.mls_reference && dl.meta.cls == WaveformClass::hybrid) {
    ref.samples = tile_mls(mls_config_from_meta(dl.meta), dl.size());
  } else {
    ref.samples = dl.samples;
  }
  return ref;
}

// Payload recovery keyed by the waveform's own metadata.
Bits demod_by_meta(const Waveform& rx, double gain) {
  switch (rx.meta.cls) {
    case WaveformClass::ofdm:
      return demod_ofdm(rx, ofdm_config_from_meta(rx.meta), gain).bits;
    case WaveformClass::hybrid:
      return demod_hybrid(rx, hybrid_config_from_meta(rx.meta), gain);
    case WaveformClass::ppm:
    case WaveformClass::mls:
      return {}; // probe waveforms carry no user data
  }
  return {};
}

Bits demod_target_side(const Waveform& dl, double dl_amp, const NoiseParams& noise, double rho,
                       std::uint64_t seed) {
  if (dl_amp == 0.0) return {};
  Waveform at_target;
  at_target.sample_rate = dl.sample_rate;
  at_target.meta = dl.meta;
  at_target.samples = dl.samples;
  for (double& v : at_target.samples) v *= dl_amp;
  add_window_noise(at_target.samples, noise, rho, seed);
  return demod_by_meta(at_target, dl_amp);
}

} // namespace

TddResult run_tdd_frame(const TddFrame& frame, const Waveform& dl, const Waveform& ul,
                        const DuplexLink& link, std::uint64_t seed,
                        const DuplexRunOptions& opts) {
  frame.validate();
  if (dl.size() != frame.downlink_len) {
    throw std::invalid_argument("run_tdd_frame: downlink waveform does not fill its slot");
  }
  if (ul.size() != frame.uplink_len) {
    throw std::invalid_argument("run_tdd_frame: uplink waveform does not fill its slot");
  }
  if (dl.sample_rate != frame.sample_rate || (ul.size() > 0 && ul.sample_rate != frame.sample_rate)) {
    throw std::invalid_argument("run_tdd_frame: sample rate mismatch");
  }

  const auto de = static_cast<std::size_t>(std::llround(link.echo_delay_s * frame.sample_rate));
  const auto du = static_cast<std::size_t>(std::llround(link.ul_delay_s * frame.sample_rate));
  const std::size_t sense_len = frame.downlink_len + frame.guard_len;
  const std::size_t ul_start = sense_len + du;
  const std::size_t total =
      std::max({sense_len + frame.uplink_len, de + dl.size(), ul_start + ul.size()}) + 8;

  Samples echo(total, 0.0);
  for (std::size_t i = 0; i < dl.size(); ++i) echo[de + i] += link.echo_amp * dl.samples[i];

  Samples stream = echo;
  for (std::size_t i = 0; i < ul.size(); ++i) stream[ul_start + i] += link.ul_amp * ul.samples[i];

  // Each receive window gets its own noise stream so slot contents stay
  // independent of what the other slots carry.
  add_window_noise(std::span<double>(stream.data(), sense_len), link.noise, link.rho_s,
                   derive_seed(seed, "tdd.sense", 0));
  if (ul.size() > 0) {
    add_window_noise(std::span<double>(stream.data() + ul_start, ul.size()), link.noise,
                     link.rho_s, derive_seed(seed, "tdd.uplink", 0));
  }

  TddResult res;

  Waveform window;
  window.sample_rate = frame.sample_rate;
  window.samples.assign(stream.begin(), stream.begin() + static_cast<std::ptrdiff_t>(sense_len));
  res.sensing = estimate_tof(window, sensing_reference(dl, opts), opts.upsample, opts.refine);

  if (ul.size() > 0) {
    Waveform rx_ul;
    rx_ul.sample_rate = frame.sample_rate;
    rx_ul.meta = ul.meta;
    rx_ul.samples.assign(stream.begin() + static_cast<std::ptrdiff_t>(ul_start),
                         stream.begin() + static_cast<std::ptrdiff_t>(ul_start + ul.size()));
    res.ul_bits = demod_by_meta(rx_ul, link.ul_amp);
  }

  res.dl_bits = demod_target_side(dl, link.dl_amp, link.noise, link.rho_s,
                                  derive_seed(seed, "tdd.target", 0));

  double e = 0.0;
  for (std::size_t i = sense_len; i < echo.size(); ++i) e += echo[i] * echo[i];
  res.ul_window_echo_energy = e;
  res.stream = std::move(stream);
  return res;
}

WddResult run_wdd_frame(const WddConfig& cfg, const Waveform& dl, const Waveform& ul,
                        const DuplexLink& link, std::uint64_t seed,
                        const DuplexRunOptions& opts) {
  cfg.validate();
  if (dl.size() == 0 || dl.size() != ul.size()) {
    throw std::invalid_argument("run_wdd_frame: downlink and uplink must have equal nonzero length");
  }
  if (dl.sample_rate != ul.sample_rate) {
    throw std::invalid_argument("run_wdd_frame: sample rate mismatch");
  }

  const double fs = dl.sample_rate;
  const auto de = static_cast<std::size_t>(std::llround(link.echo_delay_s * fs));
  const auto du = static_cast<std::size_t>(std::llround(link.ul_delay_s * fs));
  const std::size_t total = dl.size() + std::max(de, du) + 8;

  Samples echo(total, 0.0);
  for (std::size_t i = 0; i < dl.size(); ++i) echo[de + i] += link.echo_amp * dl.samples[i];
  Samples uplink(total, 0.0);
  for (std::size_t i = 0; i < ul.size(); ++i) uplink[du + i] += link.ul_amp * ul.samples[i];

  WddResult res;
  res.band1.resize(total);
  res.band2.resize(total);
  for (std::size_t i = 0; i < total; ++i) {
    res.band1[i] = echo[i] + cfg.crosstalk[0][1] * uplink[i];
    res.band2[i] = uplink[i] + cfg.crosstalk[1][0] * echo[i];
  }
  add_window_noise(res.band1, link.noise, link.rho_s, derive_seed(seed, "wdd.band1", 0));
  add_window_noise(res.band2, link.noise, link.rho_s, derive_seed(seed, "wdd.band2", 0));

  Waveform band1_wf;
  band1_wf.sample_rate = fs;
  band1_wf.samples = res.band1;
  res.sensing = estimate_tof(band1_wf, sensing_reference(dl, opts), opts.upsample, opts.refine);

  Waveform rx_ul;
  rx_ul.sample_rate = fs;
  rx_ul.meta = ul.meta;
  rx_ul.samples.assign(res.band2.begin() + static_cast<std::ptrdiff_t>(du),
                       res.band2.begin() + static_cast<std::ptrdiff_t>(du + ul.size()));
  res.ul_bits = demod_by_meta(rx_ul, link.ul_amp);

  res.dl_bits = demod_target_side(dl, link.dl_amp, link.noise, link.rho_s,
                                  derive_seed(seed, "wdd.target", 0));
  return res;
}

} // namespace roisac

#include "roisac/waveform.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "roisac/constants.hpp"
#include "roisac/fft.hpp"

namespace roisac {

std::string to_string(WaveformClass c) {
  switch (c) {
    case WaveformClass::ppm: return "ppm";
    case WaveformClass::ofdm: return "ofdm";
    case WaveformClass::hybrid: return "hybrid";
    case WaveformClass::mls: return "mls";
  }
  return "ofdm";
}

WaveformClass waveform_class_from_string(const std::string& s) {
  if (s == "ppm") return WaveformClass::ppm;
  if (s == "ofdm") return WaveformClass::ofdm;
  if (s == "hybrid") return WaveformClass::hybrid;
  if (s == "mls") return WaveformClass::mls;
  throw std::invalid_argument("unknown waveform class: " + s);
}

double WaveformMeta::get(const std::string& key, double fallback) const {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

double WaveformMeta::require(const std::string& key) const {
  auto it = params.find(key);
  if (it == params.end()) {
    throw std::invalid_argument("waveform meta missing key: " + key);
  }
  return it->second;
}

void Waveform::validate_emitted() const {
  if (!(sample_rate > 0.0)) throw std::invalid_argument("sample_rate must be positive");
  for (double v : samples) {
    if (v + dc_bias < -1e-12) {
      throw std::invalid_argument("emitted waveform is negative after dc bias");
    }
  }
}

unsigned OfdmConfig::bits_per_qam_symbol() const {
  switch (qam_order) {
    case 4: return 2;
    case 16: return 4;
    case 64: return 6;
    case 256: return 8;
    default: throw std::invalid_argument("qam_order must be one of 4, 16, 64, 256");
  }
}

void OfdmConfig::validate() const {
  if (n_subcarriers < 8 || (n_subcarriers & (n_subcarriers - 1)) != 0) {
    throw std::invalid_argument("n_subcarriers must be a power of two >= 8");
  }
  bits_per_qam_symbol();
  if (clip_level && *clip_level < 1.0) {
    throw std::invalid_argument("clip_level must be >= 1 (in units of signal std)");
  }
}

// ---------------------------------------------------------------------------
// Maximum length sequences

namespace {

// Feedback tap masks for a Fibonacci LFSR: bit (i-1) set means stage i feeds
// the parity. One entry per degree 3..16; each yields the full 2^n - 1 period
// (gen_mls re-checks this at run time).
// Bit j of a mask is the coefficient of x^j in a primitive polynomial of the
// row's degree (the x^degree term is implicit), matching the shift recurrence
// in gen_mls. Every entry is verified at runtime by the full-period check.
constexpr std::uint32_t kPrimitiveTaps[17] = {
    0, 0, 0,
    0x3,    // 3: x^3 + x + 1
    0x3,    // 4: x^4 + x + 1
    0x5,    // 5: x^5 + x^2 + 1
    0x3,    // 6: x^6 + x + 1
    0x3,    // 7: x^7 + x + 1
    0x1D,   // 8: x^8 + x^4 + x^3 + x^2 + 1
    0x11,   // 9: x^9 + x^4 + 1
    0x9,    // 10: x^10 + x^3 + 1
    0x5,    // 11: x^11 + x^2 + 1
    0x53,   // 12: x^12 + x^6 + x^4 + x + 1
    0x1B,   // 13: x^13 + x^4 + x^3 + x + 1
    0x443,  // 14: x^14 + x^10 + x^6 + x + 1
    0x3,    // 15: x^15 + x + 1
    0x100B, // 16: x^16 + x^12 + x^3 + x + 1
};

} // namespace

std::uint32_t MlsConfig::resolved_taps() const {
  return taps != 0 ? taps : kPrimitiveTaps[degree];
}

void MlsConfig::validate() const {
  if (degree < 3 || degree > 16) {
    throw std::invalid_argument("mls degree must be in [3, 16]");
  }
  const std::uint32_t mask = (1u << degree) - 1;
  if ((seed & mask) == 0) {
    throw std::invalid_argument("mls seed must be a nonzero LFSR state");
  }
}

std::vector<int> gen_mls(const MlsConfig& cfg) {
  cfg.validate();
  const unsigned n = cfg.degree;
  const std::uint32_t mask = (1u << n) - 1;
  const std::uint32_t taps = cfg.resolved_taps() & mask;
  const std::uint32_t start = cfg.seed & mask;
  const std::size_t period = cfg.period();

  std::vector<int> chips(period);
  std::uint32_t state = start;
  for (std::size_t i = 0; i < period; ++i) {
    chips[i] = (state & 1u) ? 1 : -1;
    const std::uint32_t fb = static_cast<std::uint32_t>(std::popcount(state & taps) & 1);
    state = (state >> 1) | (fb << (n - 1));
    if (state == start && i + 1 < period) {
      throw std::invalid_argument("mls taps are not primitive: sequence repeats early");
    }
  }
  if (state != start) {
    throw std::invalid_argument("mls taps are not primitive: period check failed");
  }
  return chips;
}

Samples tile_mls(const MlsConfig& cfg, std::size_t len) {
  const std::vector<int> chips = gen_mls(cfg);
  Samples out(len);
  for (std::size_t i = 0; i < len; ++i) {
    out[i] = static_cast<double>(chips[i % chips.size()]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// QAM mapping (Gray-coded square constellations, unit average energy)

namespace {

unsigned rail_bit_count(unsigned order) {
  switch (order) {
    case 4: return 1;
    case 16: return 2;
    case 64: return 3;
    case 256: return 4;
    default: throw std::invalid_argument("qam_order must be one of 4, 16, 64, 256");
  }
}

double rail_norm(unsigned order) {
  const unsigned m = 1u << rail_bit_count(order);
  return std::sqrt(2.0 * (m * m - 1) / 3.0);
}

unsigned gray_decode(unsigned g) {
  g ^= g >> 1;
  g ^= g >> 2;
  g ^= g >> 4;
  return g;
}

double map_rail(const std::uint8_t* bits, unsigned k) {
  unsigned g = 0;
  for (unsigned i = 0; i < k; ++i) g = (g << 1) | (bits[i] & 1u);
  const unsigned m = 1u << k;
  const unsigned b = gray_decode(g);
  return 2.0 * static_cast<double>(b) - static_cast<double>(m - 1);
}

void decide_rail(double level, unsigned k, Bits& out) {
  const int m = 1 << k;
  long idx = std::lround((level + (m - 1)) / 2.0);
  idx = std::clamp(idx, 0l, static_cast<long>(m - 1));
  const unsigned g = static_cast<unsigned>(idx) ^ (static_cast<unsigned>(idx) >> 1);
  for (unsigned i = 0; i < k; ++i) {
    out.push_back(static_cast<std::uint8_t>((g >> (k - 1 - i)) & 1u));
  }
}

} // namespace

std::vector<std::complex<double>> qam_map(const Bits& bits, unsigned order) {
  const unsigned k = rail_bit_count(order);
  if (bits.empty() || bits.size() % (2 * k) != 0) {
    throw std::invalid_argument("qam_map: bit count must be a positive multiple of bits per symbol");
  }
  const double norm = rail_norm(order);
  std::vector<std::complex<double>> sym(bits.size() / (2 * k));
  for (std::size_t s = 0; s < sym.size(); ++s) {
    const std::uint8_t* p = bits.data() + s * 2 * k;
    sym[s] = std::complex<double>(map_rail(p, k), map_rail(p + k, k)) / norm;
  }
  return sym;
}

Bits qam_decide(std::span<const std::complex<double>> symbols, unsigned order) {
  const unsigned k = rail_bit_count(order);
  const double norm = rail_norm(order);
  Bits bits;
  bits.reserve(symbols.size() * 2 * k);
  for (const auto& y : symbols) {
    decide_rail(y.real() * norm, k, bits);
    decide_rail(y.imag() * norm, k, bits);
  }
  return bits;
}

// ---------------------------------------------------------------------------
// OFDM

std::vector<std::complex<double>> build_hermitian_spectrum(
    std::span<const std::complex<double>> load, std::size_t n_subcarriers) {
  if (load.size() != n_subcarriers / 2 - 1) {
    throw std::invalid_argument("spectrum load must cover exactly the data subcarriers");
  }
  std::vector<std::complex<double>> spec(n_subcarriers, {0.0, 0.0});
  for (std::size_t k = 1; k <= load.size(); ++k) {
    spec[k] = load[k - 1];
    spec[n_subcarriers - k] = std::conj(load[k - 1]);
  }
  return spec;
}

Samples ofdm_modulate(const std::vector<std::vector<std::complex<double>>>& symbol_loads,
                      const OfdmConfig& cfg) {
  cfg.validate();
  const std::size_t n = cfg.n_subcarriers;
  Samples out;
  out.reserve(symbol_loads.size() * cfg.symbol_len());
  for (const auto& load : symbol_loads) {
    fft::cvec spec = build_hermitian_spectrum(load, n);
    fft::transform(spec, true);
    // Hermitian symmetry makes the time samples real; imaginary parts are
    // rounding noise only.
    for (std::size_t i = n - cfg.cp_len; i < n; ++i) out.push_back(spec[i].real());
    for (std::size_t i = 0; i < n; ++i) out.push_back(spec[i].real());
  }
  return out;
}

double ofdm_expected_rms(const OfdmConfig& cfg) {
  const double n = static_cast<double>(cfg.n_subcarriers);
  return std::sqrt(n - 2.0) / n;
}

Samples clip_to_gamma(Samples x, double gamma) {
  if (gamma < 1.0) throw std::invalid_argument("clip gamma must be >= 1");
  if (x.empty()) return x;
  for (;;) {
    double ms = 0.0;
    for (double v : x) ms += v * v;
    ms /= static_cast<double>(x.size());
    if (ms == 0.0) return x;
    const double t = gamma * std::sqrt(ms);
    bool clipped = false;
    for (double& v : x) {
      if (v > t) {
        v = t;
        clipped = true;
      } else if (v < -t) {
        v = -t;
        clipped = true;
      }
    }
    if (!clipped) return x;
  }
}

Waveform finalize_ofdm(Samples raw, const OfdmConfig& cfg, double sample_rate,
                       std::size_t n_symbols) {
  double scale;
  if (cfg.clip_level) {
    raw = clip_to_gamma(std::move(raw), *cfg.clip_level);
    double ms = 0.0;
    for (double v : raw) ms += v * v;
    ms /= raw.empty() ? 1.0 : static_cast<double>(raw.size());
    scale = ms > 0.0 ? 1.0 / std::sqrt(ms) : 1.0;
  } else {
    // Payload-independent scale to unit expected power, so the receive side
    // can reconstruct it from the config alone (and an all-zero load stays
    // all-zero instead of dividing by a zero empirical power).
    scale = 1.0 / ofdm_expected_rms(cfg);
  }

  Waveform w;
  w.sample_rate = sample_rate;
  w.samples = std::move(raw);
  for (double& v : w.samples) v *= scale;

  w.meta.cls = WaveformClass::ofdm;
  w.meta.set("n_subcarriers", static_cast<double>(cfg.n_subcarriers));
  w.meta.set("qam_order", static_cast<double>(cfg.qam_order));
  w.meta.set("cp_len", static_cast<double>(cfg.cp_len));
  w.meta.set("n_symbols", static_cast<double>(n_symbols));
  w.meta.set("norm_scale", scale);
  if (cfg.clip_level) w.meta.set("clip_level", *cfg.clip_level);

  double lo = 0.0;
  for (double v : w.samples) lo = std::min(lo, v);
  w.dc_bias = -lo;
  return w;
}

Waveform gen_ofdm(const Bits& bits, const OfdmConfig& cfg, std::uint64_t /*seed*/,
                  double sample_rate) {
  cfg.validate();
  const std::size_t per_symbol = cfg.bits_per_ofdm_symbol();
  if (bits.empty() || bits.size() % per_symbol != 0) {
    throw std::invalid_argument(
        "gen_ofdm: bit count must be a positive multiple of data_subcarriers * bits per QAM symbol");
  }
  const std::size_t n_symbols = bits.size() / per_symbol;
  std::vector<std::vector<std::complex<double>>> loads(n_symbols);
  for (std::size_t s = 0; s < n_symbols; ++s) {
    Bits chunk(bits.begin() + s * per_symbol, bits.begin() + (s + 1) * per_symbol);
    loads[s] = qam_map(chunk, cfg.qam_order);
  }
  return finalize_ofdm(ofdm_modulate(loads, cfg), cfg, sample_rate, n_symbols);
}

// ---------------------------------------------------------------------------
// PPM

Waveform gen_ppm_train(const std::vector<int>& chips, unsigned order, double duty,
                       std::size_t samples_per_slot, double sample_rate) {
  if (chips.empty()) throw std::invalid_argument("gen_ppm_train: empty chip sequence");
  if (order < 2) throw std::invalid_argument("gen_ppm_train: order must be >= 2");
  if (!(duty > 0.0) || duty > 1.0) throw std::invalid_argument("gen_ppm_train: duty must be in (0, 1]");
  const std::size_t s = samples_per_slot == 0 ? 10 * order : samples_per_slot;
  if (s % order != 0) {
    throw std::invalid_argument("gen_ppm_train: samples_per_slot must be divisible by order");
  }
  const std::size_t span = s / order; // samples per pulse position
  const std::size_t pulse = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(duty * s)));
  if (pulse > span) {
    throw std::invalid_argument("gen_ppm_train: duty too large, pulse overruns its position");
  }
  const double peak = std::sqrt(static_cast<double>(s) / static_cast<double>(pulse));

  Waveform w;
  w.sample_rate = sample_rate;
  w.samples.assign(chips.size() * s, 0.0);
  for (std::size_t c = 0; c < chips.size(); ++c) {
    if (chips[c] != 1 && chips[c] != -1) {
      throw std::invalid_argument("gen_ppm_train: chips must be +/-1");
    }
    const std::size_t pos = chips[c] > 0 ? 0 : order - 1;
    const std::size_t off = c * s + pos * span;
    for (std::size_t i = 0; i < pulse; ++i) w.samples[off + i] = peak;
  }
  w.dc_bias = 0.0;
  w.meta.cls = WaveformClass::ppm;
  w.meta.set("order", static_cast<double>(order));
  w.meta.set("duty", duty);
  w.meta.set("samples_per_slot", static_cast<double>(s));
  w.meta.set("peak", peak);
  w.meta.set("n_chips", static_cast<double>(chips.size()));
  return w;
}

// ---------------------------------------------------------------------------
// Hybrid superposition

void HybridConfig::validate() const {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("hybrid alpha must be in [0, 1]");
  }
  ofdm.validate();
  mls.validate();
}

Waveform mix_hybrid(const Waveform& ofdm_component, const HybridConfig& cfg) {
  cfg.validate();
  if (ofdm_component.samples.empty()) {
    throw std::invalid_argument("mix_hybrid: empty payload component");
  }
  const double a = std::sqrt(cfg.alpha);
  const double b = std::sqrt(1.0 - cfg.alpha);
  const Samples tile = tile_mls(cfg.mls, ofdm_component.size());

  Waveform w;
  w.sample_rate = ofdm_component.sample_rate;
  w.samples.resize(ofdm_component.size());
  for (std::size_t i = 0; i < w.samples.size(); ++i) {
    w.samples[i] = a * tile[i] + b * ofdm_component.samples[i];
  }
  w.meta = ofdm_component.meta;
  w.meta.cls = WaveformClass::hybrid;
  w.meta.set("alpha", cfg.alpha);
  w.meta.set("mls_degree", static_cast<double>(cfg.mls.degree));
  w.meta.set("mls_taps", static_cast<double>(cfg.mls.resolved_taps()));
  w.meta.set("mls_seed", static_cast<double>(cfg.mls.seed));

  double lo = 0.0;
  for (double v : w.samples) lo = std::min(lo, v);
  w.dc_bias = -lo;
  return w;
}

Waveform gen_hybrid(const Bits& bits, const HybridConfig& cfg, std::uint64_t seed,
                    double sample_rate) {
  return mix_hybrid(gen_ofdm(bits, cfg.ofdm, seed, sample_rate), cfg);
}

// ---------------------------------------------------------------------------
// Demodulation

OfdmConfig ofdm_config_from_meta(const WaveformMeta& m) {
  OfdmConfig cfg;
  cfg.n_subcarriers = static_cast<std::size_t>(m.require("n_subcarriers"));
  cfg.qam_order = static_cast<unsigned>(m.require("qam_order"));
  cfg.cp_len = static_cast<std::size_t>(m.require("cp_len"));
  if (m.has("clip_level")) cfg.clip_level = m.require("clip_level");
  return cfg;
}

MlsConfig mls_config_from_meta(const WaveformMeta& m) {
  MlsConfig cfg;
  cfg.degree = static_cast<unsigned>(m.require("mls_degree"));
  cfg.taps = static_cast<std::uint32_t>(m.require("mls_taps"));
  cfg.seed = static_cast<std::uint32_t>(m.require("mls_seed"));
  return cfg;
}

HybridConfig hybrid_config_from_meta(const WaveformMeta& m) {
  HybridConfig cfg;
  cfg.alpha = m.require("alpha");
  cfg.ofdm = ofdm_config_from_meta(m);
  cfg.mls = mls_config_from_meta(m);
  return cfg;
}

OfdmDemodResult demod_ofdm(const Waveform& rx, const OfdmConfig& cfg, double channel_gain,
                           const Samples* known_interference, double norm_scale,
                           double timing_offset_samples) {
  cfg.validate();
  if (channel_gain == 0.0) throw std::invalid_argument("demod_ofdm: zero channel gain");
  if (norm_scale <= 0.0) {
    norm_scale = rx.meta.get("norm_scale", 1.0 / ofdm_expected_rms(cfg));
  }
  const std::size_t sym_len = cfg.symbol_len();
  if (rx.samples.empty() || rx.samples.size() % sym_len != 0) {
    throw std::invalid_argument("demod_ofdm: waveform length is not a whole number of OFDM symbols");
  }
  if (known_interference && known_interference->size() != rx.samples.size()) {
    throw std::invalid_argument("demod_ofdm: interference length mismatch");
  }
  const std::size_t n_sym = rx.samples.size() / sym_len;
  const std::size_t n = cfg.n_subcarriers;
  const std::size_t n_data = cfg.data_subcarriers();
  const double eq = 1.0 / (channel_gain * norm_scale);

  OfdmDemodResult res;
  res.symbols.reserve(n_sym * n_data);
  res.bits.reserve(n_sym * cfg.bits_per_ofdm_symbol());

  fft::cvec spec(n);
  std::vector<std::complex<double>> bins(n_data);
  for (std::size_t s = 0; s < n_sym; ++s) {
    const std::size_t body = s * sym_len + cfg.cp_len;
    for (std::size_t i = 0; i < n; ++i) {
      double v = rx.samples[body + i];
      if (known_interference) v -= (*known_interference)[body + i];
      spec[i] = v;
    }
    fft::transform(spec, false);
    for (std::size_t k = 1; k <= n_data; ++k) {
      std::complex<double> y = spec[k] * eq;
      if (timing_offset_samples != 0.0) {
        y *= std::polar(1.0, 2.0 * kPi * static_cast<double>(k) * timing_offset_samples /
                                 static_cast<double>(n));
      }
      bins[k - 1] = y;
    }
    res.symbols.insert(res.symbols.end(), bins.begin(), bins.end());
    Bits b = qam_decide(bins, cfg.qam_order);
    res.bits.insert(res.bits.end(), b.begin(), b.end());
  }
  return res;
}

Bits demod_hybrid(const Waveform& rx, const HybridConfig& cfg, double channel_gain,
                  bool subtract_mls, double timing_offset_samples) {
  cfg.validate();
  if (cfg.alpha >= 1.0) return {}; // pure probe, no payload to recover
  const double ofdm_gain = channel_gain * std::sqrt(1.0 - cfg.alpha);
  Samples interference;
  const Samples* interf_ptr = nullptr;
  if (subtract_mls && cfg.alpha > 0.0) {
    interference = tile_mls(cfg.mls, rx.size());
    const double s = channel_gain * std::sqrt(cfg.alpha);
    for (double& v : interference) v *= s;
    interf_ptr = &interference;
  }
  const double norm = rx.meta.get("norm_scale", 1.0 / ofdm_expected_rms(cfg.ofdm));
  return demod_ofdm(rx, cfg.ofdm, ofdm_gain, interf_ptr, norm, timing_offset_samples).bits;
}

// ---------------------------------------------------------------------------

double measure_ber(const Bits& reference, const Bits& received) {
  if (reference.empty() || reference.size() != received.size()) {
    throw std::invalid_argument("measure_ber: bit streams must be nonempty and equal length");
  }
  std::size_t errors = 0;
  for (std::size_t i = 0; i < reference.size(); ++i) {
    errors += (reference[i] != received[i]) ? 1 : 0;
  }
  return static_cast<double>(errors) / static_cast<double>(reference.size());
}

double papr_db(const Waveform& w) {
  if (w.samples.empty()) throw std::invalid_argument("papr: empty waveform");
  double peak = 0.0;
  double ms = 0.0;
  for (double v : w.samples) {
    peak = std::max(peak, v * v);
    ms += v * v;
  }
  ms /= static_cast<double>(w.samples.size());
  if (ms == 0.0) throw std::invalid_argument("papr: zero waveform");
  return 10.0 * std::log10(peak / ms);
}

} // namespace roisac

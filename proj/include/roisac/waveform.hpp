#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace roisac {

using Bits = std::vector<std::uint8_t>;
using Samples = std::vector<double>;

enum class WaveformClass { ppm, ofdm, hybrid, mls };

std::string to_string(WaveformClass c);
WaveformClass waveform_class_from_string(const std::string& s);

// Class tag plus the numeric generation parameters, enough to rebuild the
// matching demodulator configuration on the receive side.
struct WaveformMeta {
  WaveformClass cls = WaveformClass::ofdm;
  std::map<std::string, double> params;

  bool has(const std::string& key) const { return params.count(key) != 0; }
  double get(const std::string& key, double fallback) const;
  double require(const std::string& key) const;
  void set(const std::string& key, double v) { params[key] = v; }
};

struct Waveform {
  Samples samples;
  double sample_rate = 1.0; // Hz
  double dc_bias = 0.0;     // added at emission so the optical drive stays nonnegative
  WaveformMeta meta;

  std::size_t size() const { return samples.size(); }
  // Emission-side check: samples + dc_bias >= 0 and a positive sample rate.
  void validate_emitted() const;
};

struct OfdmConfig {
  std::size_t n_subcarriers = 256;       // power of two, >= 8
  unsigned qam_order = 4;                // square QAM: 4, 16, 64, 256
  std::size_t cp_len = 16;
  std::optional<double> clip_level;      // gamma, in multiples of signal std; nullopt = no clipping

  std::size_t data_subcarriers() const { return n_subcarriers / 2 - 1; }
  unsigned bits_per_qam_symbol() const;
  std::size_t bits_per_ofdm_symbol() const { return data_subcarriers() * bits_per_qam_symbol(); }
  std::size_t symbol_len() const { return n_subcarriers + cp_len; }
  void validate() const;
};

struct MlsConfig {
  unsigned degree = 10;   // 3..16
  std::uint32_t taps = 0; // feedback tap mask; 0 selects the built-in primitive polynomial
  std::uint32_t seed = 1; // nonzero LFSR start state

  std::size_t period() const { return (std::size_t{1} << degree) - 1; }
  std::uint32_t resolved_taps() const;
  void validate() const;
};

struct HybridConfig {
  double alpha = 0.5; // MLS power share
  OfdmConfig ofdm;
  MlsConfig mls;
  void validate() const;
};

// Maximum length sequence as bipolar +/-1 chips, one full period.
std::vector<int> gen_mls(const MlsConfig& cfg);

// One-chip-per-sample tiling of the sequence onto a buffer of arbitrary length.
Samples tile_mls(const MlsConfig& cfg, std::size_t len);

// Gray-mapped square QAM with unit average symbol energy.
std::vector<std::complex<double>> qam_map(const Bits& bits, unsigned order);
Bits qam_decide(std::span<const std::complex<double>> symbols, unsigned order);

// Hermitian-symmetric spectrum for one OFDM symbol: bins 1..N/2-1 carry the
// load, mirrors carry conjugates, DC and Nyquist stay empty.
std::vector<std::complex<double>> build_hermitian_spectrum(
    std::span<const std::complex<double>> load, std::size_t n_subcarriers);

// Raw modulator: IFFT per symbol plus cyclic prefix, no clipping and no
// power normalization. Exposed for the access-scheme assemblers and tests.
Samples ofdm_modulate(const std::vector<std::vector<std::complex<double>>>& symbol_loads,
                      const OfdmConfig& cfg);

// Expected RMS of the raw modulator output under a unit-energy constellation.
double ofdm_expected_rms(const OfdmConfig& cfg);

// Symmetric clipping with the threshold tracking the post-clip RMS, so that
// max|x| <= gamma * rms(x) holds exactly on the result. Re-applying with the
// same gamma is a no-op. Requires gamma >= 1.
Samples clip_to_gamma(Samples x, double gamma);

// Shared tail of the OFDM generators: optional clipping, scaling to unit
// average power, meta/dc-bias bookkeeping.
Waveform finalize_ofdm(Samples raw, const OfdmConfig& cfg, double sample_rate,
                       std::size_t n_symbols);

Waveform gen_ofdm(const Bits& bits, const OfdmConfig& cfg, std::uint64_t seed,
                  double sample_rate = 1.0);

// chips are bipolar +/-1; each chip selects one of `order` pulse positions in
// its slot (+1 -> first position, -1 -> last). duty is the on-fraction of a
// slot; average power is exactly 1 when duty * samples_per_slot is an integer.
Waveform gen_ppm_train(const std::vector<int>& chips, unsigned order, double duty,
                       std::size_t samples_per_slot = 0, double sample_rate = 1.0);

// Power-domain superposition sqrt(alpha)*mls + sqrt(1-alpha)*ofdm.
Waveform mix_hybrid(const Waveform& ofdm_component, const HybridConfig& cfg);
Waveform gen_hybrid(const Bits& bits, const HybridConfig& cfg, std::uint64_t seed,
                    double sample_rate = 1.0);

struct OfdmDemodResult {
  Bits bits;
  std::vector<std::complex<double>> symbols; // equalized, per data bin, symbol-major
};

// One-tap equalization by the known flat channel gain. norm_scale defaults to
// the generator's recorded scale (waveform meta), falling back to the
// analytic value. known_interference, when given, is subtracted from the
// samples first (it must already carry its own channel scaling).
// timing_offset_samples equalizes a known fractional timing offset as a
// per-bin phase ramp.
OfdmDemodResult demod_ofdm(const Waveform& rx, const OfdmConfig& cfg,
                           double channel_gain = 1.0,
                           const Samples* known_interference = nullptr,
                           double norm_scale = 0.0,
                           double timing_offset_samples = 0.0);

// Regenerates the MLS component from the hybrid parameters, subtracts it
// (when enabled), and demodulates the OFDM part.
Bits demod_hybrid(const Waveform& rx, const HybridConfig& cfg,
                  double channel_gain = 1.0, bool subtract_mls = true,
                  double timing_offset_samples = 0.0);

// Rebuild configs from received-waveform metadata.
OfdmConfig ofdm_config_from_meta(const WaveformMeta& m);
MlsConfig mls_config_from_meta(const WaveformMeta& m);
HybridConfig hybrid_config_from_meta(const WaveformMeta& m);

double measure_ber(const Bits& reference, const Bits& received);

double papr_db(const Waveform& w);

} // namespace roisac

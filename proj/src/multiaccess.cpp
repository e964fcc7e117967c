#include "roisac/multiaccess.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <set>
#include <string>
#include <utility>

namespace roisac {
namespace {

std::vector<int> sorted(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  return v;
}

// Equalized per-bin symbols for the whole frame, symbol-major. Thin wrapper
// so the access schemes share the OFDM receiver front end.
std::vector<std::complex<double>> frame_symbols(const Waveform& rx, const OfdmConfig& cfg,
                                                double channel_gain, double norm_scale) {
  OfdmDemodResult full = demod_ofdm(rx, cfg, channel_gain, nullptr, norm_scale);
  return std::move(full.symbols);
}

double resolve_scale(const Waveform& rx, const OfdmConfig& cfg, double norm_scale) {
  if (norm_scale > 0.0) return norm_scale;
  if (rx.meta.has("norm_scale")) return rx.meta.require("norm_scale");
  return 1.0 / ofdm_expected_rms(cfg);
}

} // namespace

std::size_t ResourceGrid::user_capacity_bits(std::size_t user, const OfdmConfig& cfg) const {
  return subcarrier_groups[user].size() * time_slots[user].size() * cfg.bits_per_qam_symbol();
}

void ResourceGrid::validate(const OfdmConfig& cfg) const {
  cfg.validate();
  if (subcarrier_groups.size() != time_slots.size())
    throw AllocationError("resource grid: one slot set per subcarrier group required");
  if (subcarrier_groups.empty()) throw AllocationError("resource grid: no users");
  if (n_time_slots == 0) throw AllocationError("resource grid: need at least one time slot");

  const int max_bin = static_cast<int>(cfg.n_subcarriers / 2) - 1;
  std::set<std::pair<int, int>> occupied;
  for (std::size_t u = 0; u < subcarrier_groups.size(); ++u) {
    for (int b : subcarrier_groups[u])
      if (b < 1 || b > max_bin)
        throw AllocationError("resource grid: subcarrier index outside the data range");
    for (int s : time_slots[u])
      if (s < 0 || s >= static_cast<int>(n_time_slots))
        throw AllocationError("resource grid: time slot index out of range");
    for (int s : time_slots[u]) {
      for (int b : subcarrier_groups[u]) {
        if (!occupied.insert({s, b}).second)
          throw AllocationError("resource grid: overlapping allocations at slot " +
                                std::to_string(s) + ", subcarrier " + std::to_string(b));
      }
    }
  }
}

bool NomaAllocation::degenerate_equal_power() const {
  for (std::size_t i = 1; i < power_shares.size(); ++i)
    if (std::abs(power_shares[i] - power_shares[i - 1]) < 1e-12) return true;
  return false;
}

void NomaAllocation::validate() const {
  if (power_shares.empty()) throw AllocationError("noma allocation: no users");
  double sum = 0.0;
  for (std::size_t i = 0; i < power_shares.size(); ++i) {
    if (!(power_shares[i] > 0.0))
      throw AllocationError("noma allocation: power shares must be positive");
    if (i > 0 && power_shares[i] > power_shares[i - 1] + 1e-12)
      throw AllocationError("noma allocation: users must be ordered strongest first");
    sum += power_shares[i];
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw AllocationError("noma allocation: power shares must sum to 1");
}

Waveform oma_assemble(const std::vector<Bits>& per_user_bits, const ResourceGrid& grid,
                      const OfdmConfig& cfg, double sample_rate) {
  grid.validate(cfg);
  if (per_user_bits.size() != grid.n_users())
    throw AllocationError("oma_assemble: one payload per user required");

  const std::size_t n_bins = cfg.data_subcarriers();
  std::vector<std::vector<std::complex<double>>> loads(
      grid.n_time_slots, std::vector<std::complex<double>>(n_bins, {0.0, 0.0}));

  for (std::size_t u = 0; u < grid.n_users(); ++u) {
    if (per_user_bits[u].size() != grid.user_capacity_bits(u, cfg))
      throw AllocationError("oma_assemble: payload size does not match the allocation of user " +
                            std::to_string(u));
    if (per_user_bits[u].empty()) continue;
    const auto symbols = qam_map(per_user_bits[u], cfg.qam_order);
    std::size_t next = 0;
    for (int s : sorted(grid.time_slots[u]))
      for (int b : sorted(grid.subcarrier_groups[u]))
        loads[static_cast<std::size_t>(s)][static_cast<std::size_t>(b - 1)] = symbols[next++];
  }

  return finalize_ofdm(ofdm_modulate(loads, cfg), cfg, sample_rate, grid.n_time_slots);
}

OfdmDemodResult oma_extract(const Waveform& rx, const ResourceGrid& grid, std::size_t user,
                            const OfdmConfig& cfg, double channel_gain, double norm_scale) {
  grid.validate(cfg);
  if (user >= grid.n_users()) throw AllocationError("oma_extract: user index out of range");

  const auto all = frame_symbols(rx, cfg, channel_gain, norm_scale);
  const std::size_t n_bins = cfg.data_subcarriers();

  OfdmDemodResult out;
  out.symbols.reserve(grid.subcarrier_groups[user].size() * grid.time_slots[user].size());
  for (int s : sorted(grid.time_slots[user]))
    for (int b : sorted(grid.subcarrier_groups[user]))
      out.symbols.push_back(all[static_cast<std::size_t>(s) * n_bins +
                                static_cast<std::size_t>(b - 1)]);
  out.bits = qam_decide(out.symbols, cfg.qam_order);
  return out;
}

Waveform noma_assemble(const std::vector<Bits>& per_user_bits, const NomaAllocation& alloc,
                       const OfdmConfig& cfg, double sample_rate) {
  alloc.validate();
  cfg.validate();
  if (per_user_bits.size() != alloc.n_users())
    throw AllocationError("noma_assemble: one payload per user required");
  const std::size_t frame_bits = per_user_bits[0].size();
  if (frame_bits == 0 || frame_bits % cfg.bits_per_ofdm_symbol() != 0)
    throw AllocationError("noma_assemble: payload must fill whole OFDM symbols");
  for (const auto& b : per_user_bits)
    if (b.size() != frame_bits)
      throw AllocationError("noma_assemble: users must carry equal payload sizes");

  const std::size_t n_symbols = frame_bits / cfg.bits_per_ofdm_symbol();
  const std::size_t n_bins = cfg.data_subcarriers();
  std::vector<std::vector<std::complex<double>>> loads(
      n_symbols, std::vector<std::complex<double>>(n_bins, {0.0, 0.0}));
  for (std::size_t u = 0; u < alloc.n_users(); ++u) {
    const double w = std::sqrt(alloc.power_shares[u]);
    const auto symbols = qam_map(per_user_bits[u], cfg.qam_order);
    for (std::size_t s = 0; s < n_symbols; ++s)
      for (std::size_t b = 0; b < n_bins; ++b)
        loads[s][b] += w * symbols[s * n_bins + b];
  }

  Waveform wv = finalize_ofdm(ofdm_modulate(loads, cfg), cfg, sample_rate, n_symbols);
  wv.meta.set("noma_users", static_cast<double>(alloc.n_users()));
  for (std::size_t u = 0; u < alloc.n_users(); ++u)
    wv.meta.set("noma_share_" + std::to_string(u), alloc.power_shares[u]);
  wv.meta.set("noma_degenerate", alloc.degenerate_equal_power() ? 1.0 : 0.0);
  return wv;
}

std::vector<Bits> noma_decode(const Waveform& rx, const NomaAllocation& alloc,
                              const OfdmConfig& cfg, double channel_gain, double norm_scale) {
  alloc.validate();
  const double scale = resolve_scale(rx, cfg, norm_scale);
  auto residual = frame_symbols(rx, cfg, channel_gain, scale);

  std::vector<Bits> out(alloc.n_users());
  for (std::size_t u = 0; u < alloc.n_users(); ++u) {
    const double w = std::sqrt(alloc.power_shares[u]);
    std::vector<std::complex<double>> scaled(residual.size());
    for (std::size_t i = 0; i < residual.size(); ++i) scaled[i] = residual[i] / w;
    out[u] = qam_decide(scaled, cfg.qam_order);
    if (u + 1 == alloc.n_users()) break;
    const auto rebuilt = qam_map(out[u], cfg.qam_order);
    for (std::size_t i = 0; i < residual.size(); ++i) residual[i] -= w * rebuilt[i];
  }
  return out;
}

Bits noma_decode_user_direct(const Waveform& rx, const NomaAllocation& alloc, std::size_t user,
                             const OfdmConfig& cfg, double channel_gain, double norm_scale) {
  alloc.validate();
  if (user >= alloc.n_users())
    throw AllocationError("noma_decode_user_direct: user index out of range");
  const double scale = resolve_scale(rx, cfg, norm_scale);
  auto symbols = frame_symbols(rx, cfg, channel_gain, scale);
  const double w = std::sqrt(alloc.power_shares[user]);
  for (auto& s : symbols) s /= w;
  return qam_decide(symbols, cfg.qam_order);
}

} // namespace roisac

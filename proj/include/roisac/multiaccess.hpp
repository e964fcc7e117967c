#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "roisac/waveform.hpp"

namespace roisac {

struct AllocationError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Orthogonal allocation: each user owns the (slot, bin) cells given by the
// cartesian product of its time slots and subcarrier bins. Cells must be
// pairwise disjoint across users; bins live in the data range 1..N/2-1 and
// slots in 0..n_time_slots-1. Bits are consumed slot-major, bins ascending.
struct ResourceGrid {
  std::vector<std::vector<int>> subcarrier_groups;
  std::vector<std::vector<int>> time_slots;
  std::size_t n_time_slots = 1;

  std::size_t n_users() const { return subcarrier_groups.size(); }
  std::size_t user_capacity_bits(std::size_t user, const OfdmConfig& cfg) const;
  void validate(const OfdmConfig& cfg) const;
};

// Power-domain superposition. Users are listed strongest first and the decode
// order follows the listing. Equal adjacent shares make the SIC ordering
// ill-defined; that configuration is legal but flagged.
struct NomaAllocation {
  std::vector<double> power_shares;

  std::size_t n_users() const { return power_shares.size(); }
  bool degenerate_equal_power() const;
  void validate() const;
};

// One OFDM frame of n_time_slots symbols carrying the disjoint union of the
// user loads. Unowned cells stay empty.
Waveform oma_assemble(const std::vector<Bits>& per_user_bits, const ResourceGrid& grid,
                      const OfdmConfig& cfg, double sample_rate = 1.0);

// Recovers one user's cells from a frame assembled on `grid`.
OfdmDemodResult oma_extract(const Waveform& rx, const ResourceGrid& grid, std::size_t user,
                            const OfdmConfig& cfg, double channel_gain = 1.0,
                            double norm_scale = 0.0);

// Superposes sqrt(p_i)-weighted user loads over identical resources. Every
// user's payload must fill the same number of OFDM symbols.
Waveform noma_assemble(const std::vector<Bits>& per_user_bits, const NomaAllocation& alloc,
                       const OfdmConfig& cfg, double sample_rate = 1.0);

// Successive decoding down the allocation order: decode, rebuild, subtract.
std::vector<Bits> noma_decode(const Waveform& rx, const NomaAllocation& alloc,
                              const OfdmConfig& cfg, double channel_gain = 1.0,
                              double norm_scale = 0.0);

// Decodes one user directly, with no cancellation of the stronger users.
// Exists to demonstrate why power disparity is required.
Bits noma_decode_user_direct(const Waveform& rx, const NomaAllocation& alloc,
                             std::size_t user, const OfdmConfig& cfg,
                             double channel_gain = 1.0, double norm_scale = 0.0);

} // namespace roisac

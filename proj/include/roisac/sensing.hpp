#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "roisac/geometry.hpp"
#include "roisac/waveform.hpp"

namespace roisac {

struct EchoComponent {
  double amplitude = 1.0; // linear power-to-current scale, >= 0
  double delay_s = 0.0;   // round-trip delay, >= 0
  int target_id = -1;
};

struct EchoModel {
  std::vector<EchoComponent> components;
  void validate() const;
  // Sort ascending by delay; ids travel with their components.
  void canonicalize();
};

struct RangeEstimate {
  double tof_s = 0.0;
  double distance_m = 0.0; // kSpeedOfLight * tof / 2
  double peak_value = 0.0;
  int target_id = -1;
  bool out_of_window = false; // peak landed on the correlation boundary
};

struct CorrelationProfile {
  std::vector<double> lag_s;
  std::vector<double> value;
};

// Matched-filter ToF: band-limited upsampling of both signals by `upsample`,
// FFT cross-correlation (zero-padded, so linear rather than circular), global
// peak over nonnegative lags, optional 3-point parabolic refinement.
RangeEstimate estimate_tof(const Waveform& rx, const Waveform& reference,
                           unsigned upsample = 1, bool refine = true);

CorrelationProfile correlation_profile(const Waveform& rx, const Waveform& reference,
                                       unsigned upsample = 1);

double ranging_rmse(std::span<const std::pair<double, RangeEstimate>> truth_and_estimate);

// Successive cancellation: find the strongest correlation peak, fit its
// amplitude by least squares, subtract the reconstructed echo, repeat. Stops
// after max_targets or once the next peak falls below stop_threshold times
// the first. Estimates come back strongest first; equal peaks resolve to the
// smaller delay.
std::vector<RangeEstimate> sic_multi_target(const Waveform& rx, const Waveform& reference,
                                            std::size_t max_targets,
                                            double stop_threshold = 0.05,
                                            bool refine = true);

struct Sector {
  Vec3 boresight;
  double half_angle; // rad, closed cone
};

struct SectorAssignment {
  std::vector<std::vector<std::size_t>> per_sector; // target indices per sector
  std::vector<std::size_t> unassigned;
};

SectorAssignment sector_partition(const Pose& tx, const std::vector<Pose>& targets,
                                  const std::vector<Sector>& sectors);

} // namespace roisac

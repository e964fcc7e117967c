#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "roisac/channel.hpp"
#include "roisac/duplexing.hpp"
#include "roisac/geometry.hpp"
#include "roisac/waveform.hpp"

namespace roisac {

// Raised for anything wrong with the scenario file or an override: unknown
// keys, bad types, values outside module invariants. The message carries the
// dotted path of the offending key.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ExperimentSpec {
  int trials = 100;
  std::uint64_t seed = 1;
  long long bits = 1000000;             // payload bits per BER point
  std::vector<double> ebn0_grid_db;     // ber-validate
  std::vector<double> alpha_grid;       // sweep-ratio
  std::vector<double> epsilon_grid;     // wdd crosstalk sweep
  std::vector<double> distance_grid_m;  // link-budget rows
  std::vector<double> angle_grid_deg;   // link-budget rows
  std::vector<double> offset_grid_m;    // retro-sweep lateral offsets
  double standoff_m = 2.0;              // retro-sweep perpendicular distance
  double range_sigma_m = 0.05;          // localization range noise
};

struct GeometrySpec {
  Pose transceiver;
  std::vector<Pose> targets;
  std::vector<std::vector<double>> anchors; // localization, 2D or 3D points
  double d_max_m = 15.0;                    // guard sizing
};

struct DuplexSpec {
  bool guard_auto = true;    // guard from size_guard(d_max) when set
  std::size_t guard_len = 0; // samples, used when guard_auto is off
  double epsilon_01 = 1e-3;  // uplink band leaking into the echo band
  double epsilon_10 = 1e-3;  // echo band leaking into the uplink band
  TargetDevice target_device;
};

struct Scenario {
  GeometrySpec geometry;
  ChannelParams channel;
  NoiseParams noise;
  OfdmConfig ofdm;
  MlsConfig mls;
  double alpha = 0.5;
  unsigned ppm_order = 2;
  double ppm_duty = 0.05;
  DuplexSpec duplex;
  double sample_rate = 1e8;
  ExperimentSpec experiment;

  HybridConfig hybrid_config() const;
  WddConfig wdd_config() const;
  void validate() const;
};

// Built-in defaults used when --scenario is not given.
Scenario default_scenario();
std::string default_scenario_json();

// Full JSON rendering of a scenario, usable as a --scenario file.
std::string scenario_json(const Scenario& sc);

// Strict parse: unknown keys are errors, every value must carry the expected
// type, module invariants are enforced after assembly. Keys omitted from the
// file keep their defaults.
Scenario load_scenario_json(const std::string& text);
Scenario load_scenario_file(const std::string& path);

// Applies one dotted-path override onto the scenario, e.g. "channel.k=0.8"
// or "experiment.alpha_grid=[0.1,0.5,0.9]". Values parse as JSON.
void apply_override(Scenario& sc, const std::string& key_eq_value);

} // namespace roisac

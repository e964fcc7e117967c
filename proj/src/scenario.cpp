#include "roisac/scenario.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "roisac/constants.hpp"

namespace roisac {
namespace {

using nlohmann::json;

constexpr double kDegToRad = kPi / 180.0;

std::string join_path(const std::string& base, const std::string& key) {
  return base.empty() ? key : base + "." + key;
}

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ConfigError("scenario: " + (path.empty() ? what : path + ": " + what));
}

const json& member(const json& j, const char* key, const std::string& path) {
  auto it = j.find(key);
  if (it == j.end()) fail(join_path(path, key), "missing key");
  return *it;
}

double num_at(const json& j, const char* key, const std::string& path) {
  const json& v = member(j, key, path);
  if (!v.is_number()) fail(join_path(path, key), "expected a number");
  return v.get<double>();
}

long long int_at(const json& j, const char* key, const std::string& path) {
  const json& v = member(j, key, path);
  if (!v.is_number_integer()) fail(join_path(path, key), "expected an integer");
  return v.get<long long>();
}

std::uint64_t uint_at(const json& j, const char* key, const std::string& path) {
  const json& v = member(j, key, path);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
    fail(join_path(path, key), "expected a nonnegative integer");
  return v.get<std::uint64_t>();
}

bool bool_at(const json& j, const char* key, const std::string& path) {
  const json& v = member(j, key, path);
  if (!v.is_boolean()) fail(join_path(path, key), "expected true or false");
  return v.get<bool>();
}

std::string str_at(const json& j, const char* key, const std::string& path) {
  const json& v = member(j, key, path);
  if (!v.is_string()) fail(join_path(path, key), "expected a string");
  return v.get<std::string>();
}

std::vector<double> vec_at(const json& j, const char* key, const std::string& path) {
  const json& v = member(j, key, path);
  if (!v.is_array()) fail(join_path(path, key), "expected an array of numbers");
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& e : v) {
    if (!e.is_number()) fail(join_path(path, key), "expected an array of numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

Vec3 vec3_at(const json& j, const char* key, const std::string& path) {
  const auto v = vec_at(j, key, path);
  if (v.size() != 3) fail(join_path(path, key), "expected exactly 3 components");
  return Vec3{v[0], v[1], v[2]};
}

void check_keys(const json& j, std::initializer_list<const char*> allowed,
                const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed)
      if (it.key() == k) { ok = true; break; }
    if (!ok) fail(join_path(path, it.key()), "unknown key");
  }
}

Pose pose_from(const json& j, const std::string& path) {
  check_keys(j, {"position", "boresight"}, path);
  Pose p;
  p.position = vec3_at(j, "position", path);
  p.boresight = vec3_at(j, "boresight", path);
  return p;
}

json pose_to_json(const Pose& p) {
  return json{{"position", {p.position.x, p.position.y, p.position.z}},
              {"boresight", {p.boresight.x, p.boresight.y, p.boresight.z}}};
}

json scenario_to_json(const Scenario& s) {
  json targets = json::array();
  for (const auto& t : s.geometry.targets) targets.push_back(pose_to_json(t));
  json anchors = json::array();
  for (const auto& a : s.geometry.anchors) anchors.push_back(a);

  const char* noise_mode = "none";
  if (s.noise.mode == NoiseParams::Mode::direct_snr) noise_mode = "direct_snr";
  if (s.noise.mode == NoiseParams::Mode::physical) noise_mode = "physical";

  return json{
      {"geometry",
       {{"transceiver", pose_to_json(s.geometry.transceiver)},
        {"targets", targets},
        {"anchors", anchors},
        {"d_max_m", s.geometry.d_max_m}}},
      {"channel",
       {{"m_p", s.channel.m_p},
        {"m_a", s.channel.m_a},
        {"A_s", s.channel.A_s},
        {"rho_s", s.channel.rho_s},
        {"Phi_s_deg", s.channel.Phi_s / kDegToRad},
        {"k", s.channel.k},
        {"Phi_r_deg", s.channel.Phi_r / kDegToRad},
        {"xi0", s.channel.xi0}}},
      {"noise",
       {{"mode", noise_mode},
        {"snr_db", s.noise.snr_db},
        {"ambient_power", s.noise.ambient_power},
        {"bandwidth", s.noise.bandwidth},
        {"thermal_variance", s.noise.thermal_variance}}},
      {"waveform",
       {{"ofdm",
         {{"n_subcarriers", s.ofdm.n_subcarriers},
          {"qam_order", s.ofdm.qam_order},
          {"cp_len", s.ofdm.cp_len},
          {"clip_level", s.ofdm.clip_level.value_or(0.0)}}},
        {"mls", {{"degree", s.mls.degree}, {"taps", s.mls.taps}, {"seed", s.mls.seed}}},
        {"alpha", s.alpha},
        {"ppm_order", s.ppm_order},
        {"ppm_duty", s.ppm_duty}}},
      {"duplex",
       {{"guard_auto", s.duplex.guard_auto},
        {"guard_len", s.duplex.guard_len},
        {"epsilon_01", s.duplex.epsilon_01},
        {"epsilon_10", s.duplex.epsilon_10},
        {"target_device",
         {{"pd_area", s.duplex.target_device.pd_area},
          {"pd_fov_deg", s.duplex.target_device.pd_fov / kDegToRad},
          {"pd_responsivity", s.duplex.target_device.pd_responsivity},
          {"emit_order", s.duplex.target_device.emit_order},
          {"emit_power", s.duplex.target_device.emit_power}}}}},
      {"sample_rate", s.sample_rate},
      {"experiment",
       {{"trials", s.experiment.trials},
        {"seed", s.experiment.seed},
        {"bits", s.experiment.bits},
        {"ebn0_grid_db", s.experiment.ebn0_grid_db},
        {"alpha_grid", s.experiment.alpha_grid},
        {"epsilon_grid", s.experiment.epsilon_grid},
        {"distance_grid_m", s.experiment.distance_grid_m},
        {"angle_grid_deg", s.experiment.angle_grid_deg},
        {"offset_grid_m", s.experiment.offset_grid_m},
        {"standoff_m", s.experiment.standoff_m},
        {"range_sigma_m", s.experiment.range_sigma_m}}}};
}

Scenario scenario_from_json(const json& j) {
  check_keys(j, {"geometry", "channel", "noise", "waveform", "duplex", "sample_rate",
                 "experiment"},
             "");
  Scenario s;

  {
    const json& g = member(j, "geometry", "");
    const std::string p = "geometry";
    check_keys(g, {"transceiver", "targets", "anchors", "d_max_m"}, p);
    s.geometry.transceiver = pose_from(member(g, "transceiver", p), p + ".transceiver");
    const json& targets = member(g, "targets", p);
    if (!targets.is_array()) fail(p + ".targets", "expected an array of poses");
    s.geometry.targets.clear();
    for (std::size_t i = 0; i < targets.size(); ++i)
      s.geometry.targets.push_back(
          pose_from(targets[i], p + ".targets." + std::to_string(i)));
    const json& anchors = member(g, "anchors", p);
    if (!anchors.is_array()) fail(p + ".anchors", "expected an array of points");
    s.geometry.anchors.clear();
    for (std::size_t i = 0; i < anchors.size(); ++i) {
      const json& a = anchors[i];
      const std::string ap = p + ".anchors." + std::to_string(i);
      if (!a.is_array() || (a.size() != 2 && a.size() != 3))
        fail(ap, "expected a 2D or 3D point");
      std::vector<double> pt;
      for (const auto& e : a) {
        if (!e.is_number()) fail(ap, "expected numeric coordinates");
        pt.push_back(e.get<double>());
      }
      s.geometry.anchors.push_back(std::move(pt));
    }
    s.geometry.d_max_m = num_at(g, "d_max_m", p);
  }

  {
    const json& c = member(j, "channel", "");
    const std::string p = "channel";
    check_keys(c, {"m_p", "m_a", "A_s", "rho_s", "Phi_s_deg", "k", "Phi_r_deg", "xi0"}, p);
    s.channel.m_p = num_at(c, "m_p", p);
    s.channel.m_a = num_at(c, "m_a", p);
    s.channel.A_s = num_at(c, "A_s", p);
    s.channel.rho_s = num_at(c, "rho_s", p);
    s.channel.Phi_s = num_at(c, "Phi_s_deg", p) * kDegToRad;
    s.channel.k = num_at(c, "k", p);
    s.channel.Phi_r = num_at(c, "Phi_r_deg", p) * kDegToRad;
    s.channel.xi0 = num_at(c, "xi0", p);
  }

  {
    const json& n = member(j, "noise", "");
    const std::string p = "noise";
    check_keys(n, {"mode", "snr_db", "ambient_power", "bandwidth", "thermal_variance"}, p);
    const std::string mode = str_at(n, "mode", p);
    if (mode == "none") s.noise.mode = NoiseParams::Mode::none;
    else if (mode == "direct_snr") s.noise.mode = NoiseParams::Mode::direct_snr;
    else if (mode == "physical") s.noise.mode = NoiseParams::Mode::physical;
    else fail(p + ".mode", "expected one of none, direct_snr, physical");
    s.noise.snr_db = num_at(n, "snr_db", p);
    s.noise.ambient_power = num_at(n, "ambient_power", p);
    s.noise.bandwidth = num_at(n, "bandwidth", p);
    s.noise.thermal_variance = num_at(n, "thermal_variance", p);
  }

  {
    const json& w = member(j, "waveform", "");
    const std::string p = "waveform";
    check_keys(w, {"ofdm", "mls", "alpha", "ppm_order", "ppm_duty"}, p);
    const json& o = member(w, "ofdm", p);
    const std::string op = p + ".ofdm";
    check_keys(o, {"n_subcarriers", "qam_order", "cp_len", "clip_level"}, op);
    const long long nsc = int_at(o, "n_subcarriers", op);
    if (nsc < 0) fail(op + ".n_subcarriers", "expected a positive integer");
    s.ofdm.n_subcarriers = static_cast<std::size_t>(nsc);
    s.ofdm.qam_order = static_cast<unsigned>(uint_at(o, "qam_order", op));
    s.ofdm.cp_len = static_cast<std::size_t>(uint_at(o, "cp_len", op));
    const double clip = num_at(o, "clip_level", op);
    if (clip < 0.0) fail(op + ".clip_level", "expected 0 (off) or a value >= 1");
    s.ofdm.clip_level = clip == 0.0 ? std::optional<double>{} : std::optional<double>{clip};

    const json& m = member(w, "mls", p);
    const std::string mp = p + ".mls";
    check_keys(m, {"degree", "taps", "seed"}, mp);
    s.mls.degree = static_cast<unsigned>(uint_at(m, "degree", mp));
    s.mls.taps = static_cast<std::uint32_t>(uint_at(m, "taps", mp));
    s.mls.seed = static_cast<std::uint32_t>(uint_at(m, "seed", mp));

    s.alpha = num_at(w, "alpha", p);
    s.ppm_order = static_cast<unsigned>(uint_at(w, "ppm_order", p));
    s.ppm_duty = num_at(w, "ppm_duty", p);
  }

  {
    const json& d = member(j, "duplex", "");
    const std::string p = "duplex";
    check_keys(d, {"guard_auto", "guard_len", "epsilon_01", "epsilon_10", "target_device"}, p);
    s.duplex.guard_auto = bool_at(d, "guard_auto", p);
    s.duplex.guard_len = static_cast<std::size_t>(uint_at(d, "guard_len", p));
    s.duplex.epsilon_01 = num_at(d, "epsilon_01", p);
    s.duplex.epsilon_10 = num_at(d, "epsilon_10", p);
    const json& t = member(d, "target_device", p);
    const std::string tp = p + ".target_device";
    check_keys(t, {"pd_area", "pd_fov_deg", "pd_responsivity", "emit_order", "emit_power"}, tp);
    s.duplex.target_device.pd_area = num_at(t, "pd_area", tp);
    s.duplex.target_device.pd_fov = num_at(t, "pd_fov_deg", tp) * kDegToRad;
    s.duplex.target_device.pd_responsivity = num_at(t, "pd_responsivity", tp);
    s.duplex.target_device.emit_order = num_at(t, "emit_order", tp);
    s.duplex.target_device.emit_power = num_at(t, "emit_power", tp);
  }

  s.sample_rate = num_at(j, "sample_rate", "");

  {
    const json& e = member(j, "experiment", "");
    const std::string p = "experiment";
    check_keys(e, {"trials", "seed", "bits", "ebn0_grid_db", "alpha_grid", "epsilon_grid",
                   "distance_grid_m", "angle_grid_deg", "offset_grid_m", "standoff_m",
                   "range_sigma_m"},
               p);
    s.experiment.trials = static_cast<int>(int_at(e, "trials", p));
    s.experiment.seed = uint_at(e, "seed", p);
    s.experiment.bits = int_at(e, "bits", p);
    s.experiment.ebn0_grid_db = vec_at(e, "ebn0_grid_db", p);
    s.experiment.alpha_grid = vec_at(e, "alpha_grid", p);
    s.experiment.epsilon_grid = vec_at(e, "epsilon_grid", p);
    s.experiment.distance_grid_m = vec_at(e, "distance_grid_m", p);
    s.experiment.angle_grid_deg = vec_at(e, "angle_grid_deg", p);
    s.experiment.offset_grid_m = vec_at(e, "offset_grid_m", p);
    s.experiment.standoff_m = num_at(e, "standoff_m", p);
    s.experiment.range_sigma_m = num_at(e, "range_sigma_m", p);
  }

  s.validate();
  return s;
}

// Recursive overlay of a partial user document onto the defaults. Unknown
// keys and object/value kind changes are rejected with the offending path.
void merge_into(json& base, const json& patch, const std::string& path) {
  for (auto it = patch.begin(); it != patch.end(); ++it) {
    const std::string kp = join_path(path, it.key());
    auto bit = base.find(it.key());
    if (bit == base.end()) fail(kp, "unknown key");
    if (bit->is_object() && it->is_object()) {
      merge_into(*bit, *it, kp);
    } else if (bit->is_object() != it->is_object()) {
      fail(kp, "expected " + std::string(bit->is_object() ? "an object" : "a value"));
    } else {
      *bit = *it;
    }
  }
}

} // namespace

HybridConfig Scenario::hybrid_config() const {
  HybridConfig h;
  h.alpha = alpha;
  h.ofdm = ofdm;
  h.mls = mls;
  return h;
}

WddConfig Scenario::wdd_config() const {
  WddConfig w;
  w.crosstalk[0][1] = duplex.epsilon_01;
  w.crosstalk[1][0] = duplex.epsilon_10;
  return w;
}

void Scenario::validate() const {
  try {
    geometry.transceiver.validate();
    for (const auto& t : geometry.targets) t.validate();
    channel.validate();
    noise.validate();
    ofdm.validate();
    mls.validate();
    hybrid_config().validate();
    wdd_config().validate();
  } catch (const std::exception& e) {
    throw ConfigError(std::string("scenario: ") + e.what());
  }
  if (geometry.targets.empty()) throw ConfigError("scenario: geometry.targets: need at least one");
  if (!geometry.anchors.empty()) {
    const std::size_t dim = geometry.anchors.front().size();
    for (const auto& a : geometry.anchors)
      if (a.size() != dim)
        throw ConfigError("scenario: geometry.anchors: mixed 2D and 3D points");
  }
  if (!(geometry.d_max_m > 0.0)) throw ConfigError("scenario: geometry.d_max_m must be positive");
  if (!(sample_rate > 0.0)) throw ConfigError("scenario: sample_rate must be positive");
  if (ppm_order < 2) throw ConfigError("scenario: waveform.ppm_order must be at least 2");
  if (!(ppm_duty > 0.0 && ppm_duty <= 1.0))
    throw ConfigError("scenario: waveform.ppm_duty must be in (0, 1]");
  if (experiment.trials < 1) throw ConfigError("scenario: experiment.trials must be at least 1");
  if (experiment.bits < 1) throw ConfigError("scenario: experiment.bits must be at least 1");
  if (!(experiment.standoff_m > 0.0))
    throw ConfigError("scenario: experiment.standoff_m must be positive");
  for (double a : experiment.alpha_grid)
    if (!(a >= 0.0 && a <= 1.0))
      throw ConfigError("scenario: experiment.alpha_grid values must lie in [0, 1]");
  for (double e : experiment.epsilon_grid)
    if (!(e >= 0.0 && e < 1.0))
      throw ConfigError("scenario: experiment.epsilon_grid values must lie in [0, 1)");
  for (double d : experiment.distance_grid_m)
    if (!(d > 0.0)) throw ConfigError("scenario: experiment.distance_grid_m must be positive");
  for (double a : experiment.angle_grid_deg)
    if (!(a >= 0.0 && a <= 180.0))
      throw ConfigError("scenario: experiment.angle_grid_deg values must lie in [0, 180]");
  for (double o : experiment.offset_grid_m)
    if (!(o >= 0.0))
      throw ConfigError("scenario: experiment.offset_grid_m values must be nonnegative");
  if (!(experiment.range_sigma_m >= 0.0))
    throw ConfigError("scenario: experiment.range_sigma_m must be nonnegative");
}

Scenario default_scenario() {
  Scenario s;
  // Target standoffs sit on the round-trip sample grid (multiples of
  // c / (2 fs) = 1.499 m), so the frame simulations range them exactly.
  s.geometry.transceiver = Pose{{0.0, 0.0, 0.0}, {0.0, 0.0, 1.0}};
  s.geometry.targets = {Pose{{0.3, 0.4, 2.9560115020073927}, {0.0, 0.0, -1.0}},
                        Pose{{0.3, 0.0, 5.98849029388877}, {0.0, 0.0, -1.0}}};
  s.geometry.anchors = {{0.0, 0.0}, {10.0, 0.0}, {0.0, 10.0}, {10.0, 10.0}};
  s.noise.mode = NoiseParams::Mode::direct_snr;
  s.noise.snr_db = 10.0;
  s.noise.ambient_power = 1e-3;
  s.noise.bandwidth = 1e8;
  s.noise.thermal_variance = 1e-13;
  s.experiment.ebn0_grid_db = {0.0, 4.0, 8.0};
  s.experiment.alpha_grid = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  s.experiment.epsilon_grid = {0.0, 1e-3, 1e-2, 1e-1};
  s.experiment.distance_grid_m = {0.5, 1.0, 2.0, 3.0, 5.0, 8.0, 10.0};
  s.experiment.angle_grid_deg = {0.0, 10.0, 20.0, 30.0, 45.0, 60.0};
  s.experiment.offset_grid_m = {0.0, 0.25, 0.5, 0.75, 1.0, 1.5, 2.0, 3.0};
  return s;
}

std::string default_scenario_json() { return scenario_json(default_scenario()); }

std::string scenario_json(const Scenario& sc) { return scenario_to_json(sc).dump(2) + "\n"; }

Scenario load_scenario_json(const std::string& text) {
  json user;
  try {
    user = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("scenario: invalid JSON: ") + e.what());
  }
  if (!user.is_object()) throw ConfigError("scenario: top level must be an object");
  json doc = scenario_to_json(default_scenario());
  merge_into(doc, user, "");
  return scenario_from_json(doc);
}

Scenario load_scenario_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError("scenario: cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return load_scenario_json(ss.str());
}

void apply_override(Scenario& sc, const std::string& key_eq_value) {
  const auto eq = key_eq_value.find('=');
  if (eq == std::string::npos || eq == 0)
    throw ConfigError("override '" + key_eq_value + "': expected key.path=value");
  const std::string key = key_eq_value.substr(0, eq);
  const std::string value = key_eq_value.substr(eq + 1);

  json doc = scenario_to_json(sc);
  json* node = &doc;
  std::string consumed;
  std::size_t pos = 0;
  while (true) {
    const auto dot = key.find('.', pos);
    const std::string seg = key.substr(pos, dot == std::string::npos ? dot : dot - pos);
    if (seg.empty()) throw ConfigError("override '" + key + "': empty path segment");
    if (node->is_array()) {
      std::size_t idx = 0;
      try {
        idx = std::stoul(seg);
      } catch (const std::exception&) {
        fail(join_path(consumed, seg), "array index expected");
      }
      if (idx >= node->size()) fail(join_path(consumed, seg), "array index out of range");
      node = &(*node)[idx];
    } else if (node->is_object()) {
      auto it = node->find(seg);
      if (it == node->end()) fail(join_path(consumed, seg), "unknown key");
      node = &*it;
    } else {
      fail(consumed, "path descends into a scalar");
    }
    consumed = join_path(consumed, seg);
    if (dot == std::string::npos) break;
    pos = dot + 1;
  }
  if (node->is_object()) fail(consumed, "cannot assign to a whole section");

  json parsed;
  try {
    parsed = json::parse(value);
  } catch (const json::parse_error&) {
    parsed = value; // bare words are string values
  }
  if (node->is_string() != parsed.is_string() || node->is_array() != parsed.is_array() ||
      node->is_boolean() != parsed.is_boolean() ||
      (node->is_number() && !parsed.is_number()))
    fail(consumed, "value kind does not match the existing setting");
  *node = parsed;
  sc = scenario_from_json(doc);
}

} // namespace roisac

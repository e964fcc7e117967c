#include "roisac/commands.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <utility>

#include "roisac/channel.hpp"
#include "roisac/constants.hpp"
#include "roisac/duplexing.hpp"
#include "roisac/localization.hpp"
#include "roisac/rng.hpp"
#include "roisac/sensing.hpp"
#include "roisac/waveform.hpp"

namespace roisac {
namespace {

namespace fsys = std::filesystem;

constexpr double kDegToRad = kPi / 180.0;
const double kNan = std::numeric_limits<double>::quiet_NaN();

double q_func(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

std::size_t count_errors(const Bits& a, const Bits& b) {
  const std::size_t n = std::min(a.size(), b.size());
  std::size_t e = std::max(a.size(), b.size()) - n;
  for (std::size_t i = 0; i < n; ++i) e += a[i] != b[i];
  return e;
}

void emit_table(const fsys::path& out, const std::string& name, const io::Table& t) {
  const fsys::path p = out / (name + ".csv");
  io::write_csv(p, t);
  std::cout << "wrote " << p.string() << " (" << t.rows.size() << " rows)\n";
}

void emit_chart(const fsys::path& out, const std::string& name, const io::ChartSpec& spec) {
  const fsys::path p = out / (name + ".svg");
  io::write_text_file(p, io::render_line_chart(spec));
  std::cout << "wrote " << p.string() << "\n";
}

Waveform mls_probe(const Scenario& sc, std::size_t periods) {
  Waveform p;
  p.sample_rate = sc.sample_rate;
  p.samples = tile_mls(sc.mls, sc.mls.period() * periods);
  p.meta.cls = WaveformClass::mls;
  return p;
}

// Frame simulations quantize propagation to whole samples, so sub-sample
// refinement would only pick up waveform cross terms; leave it off there.
const DuplexRunOptions kFrameOpts{1, false, true};

} // namespace

io::Table cmd_link_budget(const Scenario& sc, const fsys::path& out) {
  io::Table t;
  t.columns = {"distance_m", "phi_deg", "theta_deg", "point_gain", "area_gain", "uplink_gain"};
  for (double d : sc.experiment.distance_grid_m) {
    for (double a : sc.experiment.angle_grid_deg) {
      LinkGeometry g{d, a * kDegToRad, a * kDegToRad};
      t.add_row({d, a, a, point_source_gain(g, sc.channel), area_source_gain(g, sc.channel),
                 uplink_gain(g, sc.duplex.target_device.emit_order, sc.channel.A_s,
                             sc.channel.Phi_s)});
    }
  }
  emit_table(out, "link-budget", t);

  if (!sc.experiment.angle_grid_deg.empty() && !t.rows.empty()) {
    const double a0 = sc.experiment.angle_grid_deg.front();
    io::ChartSpec spec;
    spec.title = "Round-trip and uplink gain vs distance";
    spec.x_label = "distance [m]";
    spec.y_label = "gain";
    spec.log_y = true;
    io::Series sp{"point", {}, {}}, sa{"area", {}, {}}, su{"uplink", {}, {}};
    for (const auto& r : t.rows) {
      if (r[1] != a0) continue;
      sp.x.push_back(r[0]); sp.y.push_back(r[3]);
      sa.x.push_back(r[0]); sa.y.push_back(r[4]);
      su.x.push_back(r[0]); su.y.push_back(r[5]);
    }
    spec.series = {sp, sa, su};
    emit_chart(out, "link-budget", spec);
  }
  return t;
}

io::Table cmd_retro_sweep(const Scenario& sc, const fsys::path& out) {
  ChannelParams enhanced = sc.channel;
  enhanced.xi0 = std::min(0.98, sc.channel.xi0 * 1.8);

  io::Table t;
  t.columns = {"offset_m", "distance_m", "incidence_deg", "gain_point", "gain_area",
               "gain_area_enhanced"};
  for (double off : sc.experiment.offset_grid_m) {
    const double d = std::hypot(off, sc.experiment.standoff_m);
    const double ang = std::atan2(off, sc.experiment.standoff_m);
    LinkGeometry g{d, ang, ang};
    const double gp = point_source_gain(g, sc.channel);
    const double ga = area_source_gain(g, sc.channel);
    const double ge = area_source_gain(g, enhanced);
    if (ge < ga - 1e-15)
      throw std::runtime_error("retro-sweep: larger reflecting ratio did not dominate at offset " +
                               io::format_number(off));
    t.add_row({off, d, ang / kDegToRad, gp, ga, ge});
  }
  emit_table(out, "retro-sweep", t);

  io::ChartSpec spec;
  spec.title = "Retroreflected gain vs lateral offset";
  spec.x_label = "offset [m]";
  spec.y_label = "gain";
  spec.log_y = true;
  io::Series sp{"point", {}, {}}, sa{"area", {}, {}}, se{"area, enhanced", {}, {}};
  for (const auto& r : t.rows) {
    sp.x.push_back(r[0]); sp.y.push_back(r[3]);
    sa.x.push_back(r[0]); sa.y.push_back(r[4]);
    se.x.push_back(r[0]); se.y.push_back(r[5]);
  }
  spec.series = {sp, sa, se};
  emit_chart(out, "retro-sweep", spec);
  return t;
}

io::Table cmd_sweep_ratio(const Scenario& sc, const fsys::path& out) {
  const auto& ex = sc.experiment;
  constexpr std::size_t kSymbols = 16;
  const std::size_t frame_bits = kSymbols * sc.ofdm.bits_per_ofdm_symbol();
  const double fs = sc.sample_rate;

  io::Table t;
  t.columns = {"alpha", "ber", "rmse_m", "trials", "total_bits"};
  for (double alpha : ex.alpha_grid) {
    HybridConfig hc = sc.hybrid_config();
    hc.alpha = alpha;
    std::size_t errs = 0, nbits = 0;
    std::vector<std::pair<double, RangeEstimate>> ranging;
    ranging.reserve(static_cast<std::size_t>(ex.trials));

    for (int trial = 0; trial < ex.trials; ++trial) {
      // seeds depend on the trial only, so every alpha sees the same bits and
      // the same noise draws (common random numbers keep the trend clean)
      Rng bitrng(derive_seed(ex.seed, "sweep-ratio.bits", static_cast<std::uint64_t>(trial)));
      const Bits bits = random_bits(bitrng, frame_bits);
      const Waveform wv = gen_hybrid(bits, hc, ex.seed, fs);

      if (alpha < 1.0) {
        Waveform rxc = wv;
        add_window_noise(rxc.samples, sc.noise, 1.0,
                         derive_seed(ex.seed, "sweep-ratio.comm", static_cast<std::uint64_t>(trial)));
        errs += count_errors(bits, demod_hybrid(rxc, hc, 1.0));
        nbits += bits.size();
      }
      if (alpha > 0.0) {
        const int delay_samples = 1 + trial % 5;
        const double d_true = delay_samples * kSpeedOfLight / (2.0 * fs);
        EchoModel em;
        em.components = {EchoComponent{1.0, 2.0 * d_true / kSpeedOfLight, 0}};
        const Waveform rx = received_signal(
            wv, em, sc.noise,
            derive_seed(ex.seed, "sweep-ratio.sense", static_cast<std::uint64_t>(trial)));
        Waveform ref;
        ref.sample_rate = fs;
        ref.samples = tile_mls(sc.mls, wv.size());
        ranging.emplace_back(d_true, estimate_tof(rx, ref, 4, true));
      }
    }
    const double ber = nbits > 0 ? static_cast<double>(errs) / static_cast<double>(nbits) : kNan;
    const double rmse = ranging.empty() ? kNan : ranging_rmse(ranging);
    t.add_row({alpha, ber, rmse, static_cast<double>(ex.trials), static_cast<double>(nbits)});
  }
  emit_table(out, "sweep-ratio", t);

  io::ChartSpec spec;
  spec.title = "Sensing-communication trade-off vs power split";
  spec.x_label = "MLS power share alpha";
  spec.y_label = "BER / RMSE [m]";
  spec.log_y = true;
  io::Series sb{"BER", {}, {}}, sr{"ranging RMSE [m]", {}, {}};
  for (const auto& r : t.rows) {
    sb.x.push_back(r[0]); sb.y.push_back(r[1]);
    sr.x.push_back(r[0]); sr.y.push_back(r[2]);
  }
  spec.series = {sb, sr};
  emit_chart(out, "sweep-ratio", spec);
  return t;
}

io::Table cmd_range(const Scenario& sc, const fsys::path& out) {
  const Waveform probe = mls_probe(sc, 4);
  const std::size_t nt = sc.geometry.targets.size();

  io::Table t;
  t.columns = {"trial", "target", "true_distance_m", "est_distance_m", "error_m",
               "peak", "out_of_window"};
  for (int trial = 0; trial < sc.experiment.trials; ++trial) {
    for (std::size_t i = 0; i < nt; ++i) {
      const DuplexLink link = make_duplex_link(sc.geometry.transceiver, sc.geometry.targets[i],
                                               sc.channel, sc.duplex.target_device, false,
                                               sc.noise);
      const double d_true = link.echo_delay_s * kSpeedOfLight / 2.0;
      EchoModel em;
      em.components = {EchoComponent{link.echo_amp, link.echo_delay_s, static_cast<int>(i)}};
      const Waveform rx = received_signal(
          probe, em, sc.noise,
          derive_seed(sc.experiment.seed, "range.noise",
                      static_cast<std::uint64_t>(trial) * nt + i));
      const RangeEstimate est = estimate_tof(rx, probe, 8, true);
      t.add_row({static_cast<double>(trial), static_cast<double>(i), d_true, est.distance_m,
                 est.distance_m - d_true, est.peak_value, est.out_of_window ? 1.0 : 0.0});
    }
  }
  emit_table(out, "range", t);
  return t;
}

io::Table cmd_multi_target(const Scenario& sc, const fsys::path& out) {
  const Waveform probe = mls_probe(sc, 4);
  const std::size_t nt = sc.geometry.targets.size();

  EchoModel em;
  std::vector<double> true_d(nt);
  for (std::size_t i = 0; i < nt; ++i) {
    const DuplexLink link = make_duplex_link(sc.geometry.transceiver, sc.geometry.targets[i],
                                             sc.channel, sc.duplex.target_device, false, sc.noise);
    true_d[i] = link.echo_delay_s * kSpeedOfLight / 2.0;
    em.components.push_back(EchoComponent{link.echo_amp, link.echo_delay_s, static_cast<int>(i)});
  }
  em.canonicalize();

  io::Table t;
  t.columns = {"trial", "detection", "est_distance_m", "est_amplitude", "matched_target",
               "true_distance_m", "error_m"};
  for (int trial = 0; trial < sc.experiment.trials; ++trial) {
    const Waveform rx = received_signal(
        probe, em, sc.noise,
        derive_seed(sc.experiment.seed, "multi-target.noise", static_cast<std::uint64_t>(trial)));
    const auto detections = sic_multi_target(rx, probe, nt);
    for (std::size_t j = 0; j < detections.size(); ++j) {
      std::size_t best = 0;
      for (std::size_t i = 1; i < nt; ++i)
        if (std::abs(detections[j].distance_m - true_d[i]) <
            std::abs(detections[j].distance_m - true_d[best]))
          best = i;
      t.add_row({static_cast<double>(trial), static_cast<double>(j), detections[j].distance_m,
                 detections[j].peak_value, static_cast<double>(best), true_d[best],
                 detections[j].distance_m - true_d[best]});
    }
    if (trial == 0) {
      const CorrelationProfile prof = correlation_profile(rx, probe, 4);
      io::ChartSpec spec;
      spec.title = "Echo correlation profile";
      spec.x_label = "lag [samples]";
      spec.y_label = "correlation";
      io::Series s{"trial 0", {}, {}};
      const std::size_t n = std::min<std::size_t>(prof.lag_s.size(), 256);
      for (std::size_t i = 0; i < n; ++i) {
        s.x.push_back(prof.lag_s[i] * sc.sample_rate);
        s.y.push_back(prof.value[i]);
      }
      spec.series = {s};
      emit_chart(out, "multi-target", spec);
    }
  }
  emit_table(out, "multi-target", t);
  return t;
}

io::Table cmd_tdd(const Scenario& sc, const fsys::path& out) {
  const double fs = sc.sample_rate;
  constexpr std::size_t kDlSymbols = 16, kUlSymbols = 8;
  const std::size_t dl_bits_n = kDlSymbols * sc.ofdm.bits_per_ofdm_symbol();
  const std::size_t ul_bits_n = kUlSymbols * sc.ofdm.bits_per_ofdm_symbol();

  const DuplexLink link = make_duplex_link(sc.geometry.transceiver, sc.geometry.targets[0],
                                           sc.channel, sc.duplex.target_device, false, sc.noise);
  const double d_true = link.echo_delay_s * kSpeedOfLight / 2.0;
  const double applied = static_cast<double>(std::llround(link.echo_delay_s * fs));
  const std::size_t guard = sc.duplex.guard_auto ? size_guard(sc.geometry.d_max_m, fs)
                                                 : sc.duplex.guard_len;

  io::Table t;
  t.columns = {"trial", "guard_len", "applied_delay_samples", "true_distance_m",
               "est_distance_m", "dl_ber", "ul_ber", "ul_echo_energy", "throughput_bps"};
  for (int trial = 0; trial < sc.experiment.trials; ++trial) {
    Rng dlrng(derive_seed(sc.experiment.seed, "tdd.dlbits", static_cast<std::uint64_t>(trial)));
    Rng ulrng(derive_seed(sc.experiment.seed, "tdd.ulbits", static_cast<std::uint64_t>(trial)));
    const Bits dl_bits = random_bits(dlrng, dl_bits_n);
    const Bits ul_bits = random_bits(ulrng, ul_bits_n);
    const Waveform dl = gen_hybrid(dl_bits, sc.hybrid_config(), sc.experiment.seed, fs);
    const Waveform ul = gen_ofdm(ul_bits, sc.ofdm, sc.experiment.seed, fs);

    const TddFrame frame{dl.size(), guard, ul.size(), fs};
    const TddResult res =
        run_tdd_frame(frame, dl, ul, link,
                      derive_seed(sc.experiment.seed, "tdd.frame", static_cast<std::uint64_t>(trial)),
                      kFrameOpts);
    t.add_row({static_cast<double>(trial), static_cast<double>(guard), applied, d_true,
               res.sensing.distance_m, measure_ber(dl_bits, res.dl_bits),
               measure_ber(ul_bits, res.ul_bits), res.ul_window_echo_energy,
               tdd_throughput(frame, dl_bits_n + ul_bits_n)});
  }
  emit_table(out, "tdd", t);
  return t;
}

io::Table cmd_wdd(const Scenario& sc, const fsys::path& out) {
  const double fs = sc.sample_rate;
  constexpr std::size_t kSymbols = 16;
  const std::size_t bits_n = kSymbols * sc.ofdm.bits_per_ofdm_symbol();

  const DuplexLink link = make_duplex_link(sc.geometry.transceiver, sc.geometry.targets[0],
                                           sc.channel, sc.duplex.target_device, false, sc.noise);
  const double applied_d =
      static_cast<double>(std::llround(link.echo_delay_s * fs)) / fs * kSpeedOfLight / 2.0;

  io::Table t;
  t.columns = {"epsilon", "ul_ber", "dl_ber", "range_rmse_m", "total_ul_bits"};
  for (double eps : sc.experiment.epsilon_grid) {
    WddConfig wc = sc.wdd_config();
    wc.crosstalk[0][1] = eps;
    wc.crosstalk[1][0] = eps;
    std::size_t ul_errs = 0, dl_errs = 0, nbits = 0;
    std::vector<std::pair<double, RangeEstimate>> ranging;

    for (int trial = 0; trial < sc.experiment.trials; ++trial) {
      // trial-only seeds: identical payloads and noise across the eps grid
      Rng dlrng(derive_seed(sc.experiment.seed, "wdd.dlbits", static_cast<std::uint64_t>(trial)));
      Rng ulrng(derive_seed(sc.experiment.seed, "wdd.ulbits", static_cast<std::uint64_t>(trial)));
      const Bits dl_bits = random_bits(dlrng, bits_n);
      const Bits ul_bits = random_bits(ulrng, bits_n);
      const Waveform dl = gen_hybrid(dl_bits, sc.hybrid_config(), sc.experiment.seed, fs);
      const Waveform ul = gen_ofdm(ul_bits, sc.ofdm, sc.experiment.seed, fs);

      const WddResult res = run_wdd_frame(
          wc, dl, ul, link,
          derive_seed(sc.experiment.seed, "wdd.frame", static_cast<std::uint64_t>(trial)),
          kFrameOpts);
      ul_errs += count_errors(ul_bits, res.ul_bits);
      dl_errs += count_errors(dl_bits, res.dl_bits);
      nbits += bits_n;
      ranging.emplace_back(applied_d, res.sensing);
    }
    t.add_row({eps, static_cast<double>(ul_errs) / static_cast<double>(nbits),
               static_cast<double>(dl_errs) / static_cast<double>(nbits),
               ranging_rmse(ranging), static_cast<double>(nbits)});
  }
  emit_table(out, "wdd", t);

  io::ChartSpec spec;
  spec.title = "Full-duplex uplink BER vs band crosstalk";
  spec.x_label = "crosstalk epsilon";
  spec.y_label = "uplink BER";
  io::Series s{"uplink", {}, {}};
  for (const auto& r : t.rows) { s.x.push_back(r[0]); s.y.push_back(r[1]); }
  spec.series = {s};
  emit_chart(out, "wdd", spec);
  return t;
}

io::Table cmd_localize(const Scenario& sc, const fsys::path& out) {
  const auto& anchors = sc.geometry.anchors;
  if (anchors.empty()) throw ConfigError("localize: geometry.anchors is empty");
  const int dim = static_cast<int>(anchors.front().size());
  if (anchors.size() < static_cast<std::size_t>(dim) + 1)
    throw ConfigError("localize: need at least dim+1 anchors");

  std::vector<double> p0 = {sc.geometry.targets[0].position.x, sc.geometry.targets[0].position.y};
  if (dim == 3) p0.push_back(sc.geometry.targets[0].position.z);
  const std::vector<double> v_true = dim == 3 ? std::vector<double>{0.4, 0.3, 0.0}
                                              : std::vector<double>{0.4, 0.3};
  constexpr double kDt = 0.2;

  io::Table t;
  t.columns = {"step", "t_s", "true_x_m", "true_y_m", "est_x_m", "est_y_m", "error_m",
               "residual_norm_m"};
  if (dim == 3) t.columns.insert(t.columns.begin() + 4, "true_z_m");
  if (dim == 3) t.columns.insert(t.columns.begin() + 7, "est_z_m");

  std::vector<PositionFix> track;
  std::vector<double> tx_true, ty_true, ex_est, ey_est;
  for (int step = 0; step < sc.experiment.trials; ++step) {
    const double ts = step * kDt;
    std::vector<double> p(p0);
    for (int k = 0; k < dim; ++k) p[static_cast<std::size_t>(k)] += v_true[static_cast<std::size_t>(k)] * ts;

    Rng rng(derive_seed(sc.experiment.seed, "localize.ranges", static_cast<std::uint64_t>(step)));
    std::vector<double> ranges(anchors.size());
    for (std::size_t i = 0; i < anchors.size(); ++i) {
      double ssq = 0.0;
      for (int k = 0; k < dim; ++k) {
        const double dd = p[static_cast<std::size_t>(k)] - anchors[i][static_cast<std::size_t>(k)];
        ssq += dd * dd;
      }
      ranges[i] = std::max(0.0, std::sqrt(ssq) + sc.experiment.range_sigma_m * rng.gaussian());
    }

    PositionFix fix;
    try {
      fix = multilaterate(anchors, ranges, dim);
    } catch (const ConvergenceError& e) {
      fix = e.best;
    }
    fix.timestamp_s = ts;
    track.push_back(fix);

    double esq = 0.0;
    for (int k = 0; k < dim; ++k) {
      const double dd = fix.position[static_cast<std::size_t>(k)] - p[static_cast<std::size_t>(k)];
      esq += dd * dd;
    }
    std::vector<double> row = {static_cast<double>(step), ts, p[0], p[1]};
    if (dim == 3) row.push_back(p[2]);
    row.push_back(fix.position[0]);
    row.push_back(fix.position[1]);
    if (dim == 3) row.push_back(fix.position[2]);
    row.push_back(std::sqrt(esq));
    row.push_back(fix.residual_norm);
    t.add_row(std::move(row));

    tx_true.push_back(p[0]); ty_true.push_back(p[1]);
    ex_est.push_back(fix.position[0]); ey_est.push_back(fix.position[1]);
  }
  emit_table(out, "localize", t);

  if (track.size() >= 2) {
    const VelocityEstimate vel = estimate_velocity(track);
    double vnorm = 0.0;
    for (double v : v_true) vnorm += v * v;
    std::cout << "velocity: estimated " << io::format_number(vel.speed_mps) << " m/s, true "
              << io::format_number(std::sqrt(vnorm)) << " m/s\n";
  }

  io::ChartSpec spec;
  spec.title = "Estimated track against ground truth";
  spec.x_label = "x [m]";
  spec.y_label = "y [m]";
  spec.series = {io::Series{"true", tx_true, ty_true}, io::Series{"estimated", ex_est, ey_est}};
  emit_chart(out, "localize", spec);
  return t;
}

io::Table cmd_ber_validate(const Scenario& sc, const fsys::path& out) {
  OfdmConfig cfg = sc.ofdm;
  cfg.qam_order = 4; // the closed form below is the per-rail BPSK case
  cfg.cp_len = 0;
  cfg.clip_level.reset();
  const double n = static_cast<double>(cfg.n_subcarriers);
  const double scale = 1.0 / ofdm_expected_rms(cfg);
  constexpr std::size_t kChunkSymbols = 128;
  constexpr double kTargetRelSe = 0.012;
  constexpr double kMaxBits = 4e7;

  io::Table t;
  t.columns = {"ebn0_db", "ber_sim", "ber_theory", "rel_error", "bits"};
  for (std::size_t k = 0; k < sc.experiment.ebn0_grid_db.size(); ++k) {
    const double ebn0_db = sc.experiment.ebn0_grid_db[k];
    const double gamma_b = std::pow(10.0, ebn0_db / 10.0);
    const double p_theory = q_func(std::sqrt(2.0 * gamma_b));
    const double sigma_t = scale * std::sqrt(1.0 / (2.0 * gamma_b * n));

    double needed = static_cast<double>(sc.experiment.bits);
    if (p_theory > 0.0)
      needed = std::max(needed,
                        std::min(kMaxBits, (1.0 - p_theory) / (p_theory * kTargetRelSe * kTargetRelSe)));
    const std::size_t bits_per_chunk = kChunkSymbols * cfg.bits_per_ofdm_symbol();

    Rng bitrng(derive_seed(sc.experiment.seed, "ber-validate.bits", k));
    Rng noiserng(derive_seed(sc.experiment.seed, "ber-validate.noise", k));
    std::size_t errs = 0, done = 0;
    while (done < static_cast<std::size_t>(needed)) {
      const Bits bits = random_bits(bitrng, bits_per_chunk);
      Waveform wv = gen_ofdm(bits, cfg, sc.experiment.seed, 1.0);
      for (double& s : wv.samples) s += sigma_t * noiserng.gaussian();
      errs += count_errors(bits, demod_ofdm(wv, cfg).bits);
      done += bits_per_chunk;
    }
    const double ber = static_cast<double>(errs) / static_cast<double>(done);
    const double rel = p_theory > 0.0 ? std::abs(ber - p_theory) / p_theory : kNan;
    t.add_row({ebn0_db, ber, p_theory, rel, static_cast<double>(done)});
  }
  emit_table(out, "ber-validate", t);

  io::ChartSpec spec;
  spec.title = "Demodulator BER against the closed form";
  spec.x_label = "Eb/N0 [dB]";
  spec.y_label = "BER";
  spec.log_y = true;
  io::Series ss{"simulated", {}, {}}, st{"theory", {}, {}};
  for (const auto& r : t.rows) {
    ss.x.push_back(r[0]); ss.y.push_back(r[1]);
    st.x.push_back(r[0]); st.y.push_back(r[2]);
  }
  spec.series = {ss, st};
  emit_chart(out, "ber-validate", spec);
  return t;
}

std::vector<std::string> command_names() {
  return {"link-budget", "retro-sweep", "sweep-ratio", "range",       "multi-target",
          "tdd",         "wdd",         "localize",    "ber-validate"};
}

io::Table run_command(const std::string& name, const Scenario& sc, const fsys::path& out) {
  if (name == "link-budget") return cmd_link_budget(sc, out);
  if (name == "retro-sweep") return cmd_retro_sweep(sc, out);
  if (name == "sweep-ratio") return cmd_sweep_ratio(sc, out);
  if (name == "range") return cmd_range(sc, out);
  if (name == "multi-target") return cmd_multi_target(sc, out);
  if (name == "tdd") return cmd_tdd(sc, out);
  if (name == "wdd") return cmd_wdd(sc, out);
  if (name == "localize") return cmd_localize(sc, out);
  if (name == "ber-validate") return cmd_ber_validate(sc, out);
  throw ConfigError("unknown command: " + name);
}

} // namespace roisac

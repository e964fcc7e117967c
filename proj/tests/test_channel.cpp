#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "roisac/channel.hpp"
#include "roisac/constants.hpp"
#include "roisac/rng.hpp"

using namespace roisac;

namespace {

LinkGeometry link(double d, double phi_deg, double theta_deg) {
  LinkGeometry g;
  g.d = d;
  g.phi = phi_deg * kPi / 180.0;
  g.theta = theta_deg * kPi / 180.0;
  return g;
}

} // namespace

TEST_CASE("point source gain at two meters on boresight") {
  ChannelParams p;
  // Defaults: m_p = 1, A_s = 1e-4, k = 0.9. On boresight the expression
  // collapses to k * (m_p+1)/(2*pi) * A_s / (2d)^2 = 9e-5 / (16*pi).
  const double g = point_source_gain(link(2.0, 0.0, 0.0), p);
  CHECK(g == doctest::Approx(9e-5 / (16.0 * kPi)).epsilon(1e-12));
  CHECK(g == doctest::Approx(1.79049310978e-06).epsilon(1e-9));
}

TEST_CASE("area source gain at two meters on boresight") {
  ChannelParams p;
  // With the default reflecting ratio xi0 * cos(theta) and xi0 = 0.5 this is
  // exactly half the point-source value at normal incidence.
  const double g = area_source_gain(link(2.0, 0.0, 0.0), p);
  CHECK(g == doctest::Approx(8.95246554892e-07).epsilon(1e-9));
  CHECK(g == doctest::Approx(0.5 * point_source_gain(link(2.0, 0.0, 0.0), p)).epsilon(1e-12));
}

TEST_CASE("uplink gain at half a meter on boresight") {
  const double g = uplink_gain(link(0.5, 0.0, 0.0), 1.0, 1e-4, kPi / 3.0);
  // (m+1)/(2*pi*d^2) * A = 2 / (2*pi*0.25) * 1e-4.
  CHECK(g == doctest::Approx(1.27323954474e-04).epsilon(1e-9));
}

TEST_CASE("round trip follows inverse square in the doubled distance") {
  Rng rng(42);
  ChannelParams p;
  for (int i = 0; i < 20; ++i) {
    p.m_p = 1.0 + 2.0 * rng.uniform();
    p.m_a = 1.0 + 2.0 * rng.uniform();
    p.k = 0.2 + 0.8 * rng.uniform();
    p.A_s = 1e-5 + 1e-4 * rng.uniform();
    p.xi0 = rng.uniform();
    const double d = 0.5 + 5.0 * rng.uniform();
    const double phi = rng.uniform(0.0, 0.9) * (kPi / 3.0);
    const double theta = rng.uniform(0.0, 0.9) * (kPi / 6.0);
    LinkGeometry g1{d, phi, theta};
    LinkGeometry g2{2.0 * d, phi, theta};
    const double hp1 = point_source_gain(g1, p);
    const double ha1 = area_source_gain(g1, p);
    REQUIRE(hp1 > 0.0);
    CHECK(point_source_gain(g2, p) / hp1 == doctest::Approx(0.25).epsilon(1e-12));
    if (ha1 > 0.0) CHECK(area_source_gain(g2, p) / ha1 == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(uplink_gain(g2, p.m_p, p.A_s, kPi / 2.0) /
              uplink_gain(g1, p.m_p, p.A_s, kPi / 2.0) ==
          doctest::Approx(0.25).epsilon(1e-12));
  }
}

TEST_CASE("field-of-view gates cut the link to zero") {
  ChannelParams p; // Phi_s = 60 deg, Phi_r = 30 deg
  CHECK(point_source_gain(link(2.0, 59.9, 0.0), p) > 0.0);
  CHECK(point_source_gain(link(2.0, 60.1, 0.0), p) == 0.0);
  CHECK(point_source_gain(link(2.0, 0.0, 29.9), p) > 0.0);
  CHECK(point_source_gain(link(2.0, 0.0, 30.1), p) == 0.0);
  CHECK(area_source_gain(link(2.0, 60.1, 0.0), p) == 0.0);
  CHECK(area_source_gain(link(2.0, 0.0, 30.1), p) == 0.0);
  CHECK(uplink_gain(link(2.0, 45.1, 0.0), 1.0, 1e-4, 45.0 * kPi / 180.0) == 0.0);
  CHECK(one_way_downlink_gain(link(2.0, 0.0, 45.1), 1.0, 1e-4, 45.0 * kPi / 180.0) == 0.0);
}

TEST_CASE("default geometric factor is the cosine") {
  ChannelParams with_default;
  ChannelParams with_explicit;
  with_explicit.kappa = [](double phi) { return std::cos(phi); };
  for (double deg : {0.0, 10.0, 25.0, 45.0, 59.0}) {
    auto g = link(1.5, deg, 5.0);
    CHECK(point_source_gain(g, with_default) ==
          doctest::Approx(point_source_gain(g, with_explicit)).epsilon(1e-12));
  }
  // A flat kappa removes exactly one cosine from the product.
  ChannelParams flat;
  flat.kappa = [](double) { return 1.0; };
  auto g = link(1.5, 30.0, 5.0);
  CHECK(point_source_gain(g, flat) / point_source_gain(g, with_default) ==
        doctest::Approx(1.0 / std::cos(30.0 * kPi / 180.0)).epsilon(1e-12));
}

TEST_CASE("default reflecting ratio scales with incidence cosine") {
  ChannelParams p;
  auto normal = link(2.0, 10.0, 0.0);
  auto tilted = link(2.0, 10.0, 25.0);
  const double ratio = area_source_gain(tilted, p) / area_source_gain(normal, p);
  // One cos(theta) from xi and one from the collection term.
  const double c = std::cos(25.0 * kPi / 180.0);
  CHECK(ratio == doctest::Approx(c * c).epsilon(1e-12));
}

TEST_CASE("factor outputs are clamped to the unit interval") {
  ChannelParams p;
  p.xi = [](double, double) { return 7.5; };
  CHECK(p.xi_at(0.1, 0.1) == 1.0);
  p.xi = [](double, double) { return -2.0; };
  CHECK(p.xi_at(0.1, 0.1) == 0.0);
  p.kappa = [](double phi) { return phi < 0.05 ? 1.0 : 3.0; };
  CHECK(p.kappa_at(0.3) == 1.0);
}

TEST_CASE("channel parameter validation") {
  ChannelParams p;
  CHECK_NOTHROW(p.validate());
  p.m_p = 0.5;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = ChannelParams{};
  p.k = 0.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = ChannelParams{};
  p.Phi_s = kPi;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = ChannelParams{};
  p.kappa = [](double) { return 0.7; }; // kappa(0) must be 1
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

TEST_CASE("noise sigma per mode") {
  NoiseParams off;
  CHECK(noise_sigma(off, 4.0, 0.5) == 0.0);

  NoiseParams snr;
  snr.mode = NoiseParams::Mode::direct_snr;
  snr.snr_db = 10.0;
  CHECK(noise_sigma(snr, 4.0, 0.5) == doctest::Approx(std::sqrt(0.4)).epsilon(1e-12));

  NoiseParams phys;
  phys.mode = NoiseParams::Mode::physical;
  phys.ambient_power = 1e-3;
  phys.bandwidth = 1e8;
  phys.thermal_variance = 1e-13;
  const double rho = 0.5;
  const double sig_power = 1e-8;
  const double p_rx = std::sqrt(sig_power) / rho;
  const double expect = std::sqrt(
      2.0 * kElementaryCharge * rho * (p_rx + phys.ambient_power) * phys.bandwidth +
      phys.thermal_variance);
  CHECK(noise_sigma(phys, sig_power, rho) == doctest::Approx(expect).epsilon(1e-12));
  phys.bandwidth = -1.0;
  CHECK_THROWS_AS(noise_sigma(phys, sig_power, rho), std::invalid_argument);
}

TEST_CASE("integer delays shift exactly") {
  Samples x = {1.0, -2.0, 3.0, 0.5};
  auto y = fractional_delay(x, 3.0);
  REQUIRE(y.size() == 7);
  for (int i = 0; i < 3; ++i) CHECK(y[i] == 0.0);
  for (std::size_t i = 0; i < x.size(); ++i) CHECK(y[3 + i] == x[i]);
}

TEST_CASE("fractional delay interpolates a band-limited tone") {
  const std::size_t n = 1024;
  const double f = 0.04; // cycles per sample, far below Nyquist
  Samples x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = std::sin(2.0 * kPi * f * static_cast<double>(i));

  for (double delay : {2.5, 7.25, 12.875}) {
    auto y = fractional_delay(x, delay, 16);
    double worst = 0.0;
    for (std::size_t i = 64; i + 64 < n; ++i) {
      const double want = std::sin(2.0 * kPi * f * (static_cast<double>(i) - delay));
      worst = std::max(worst, std::abs(y[i] - want));
    }
    CHECK(worst < 2e-3);
  }
  // A wider kernel tightens the interpolation.
  auto y = fractional_delay(x, 7.25, 48);
  double worst = 0.0;
  for (std::size_t i = 128; i + 128 < n; ++i) {
    const double want = std::sin(2.0 * kPi * f * (static_cast<double>(i) - 7.25));
    worst = std::max(worst, std::abs(y[i] - want));
  }
  CHECK(worst < 5e-5);
}

TEST_CASE("fractional delay input checks") {
  Samples x = {1.0, 2.0};
  CHECK_THROWS_AS(fractional_delay(x, -0.5), std::invalid_argument);
  CHECK_THROWS_AS(fractional_delay(x, 1.0, 0), std::invalid_argument);
}

TEST_CASE("received signal sums scaled delayed echoes") {
  Waveform tx;
  tx.sample_rate = 1.0;
  tx.samples = {1.0, 0.0, 0.0, 0.0, 0.0, 0.0};

  EchoModel echoes;
  echoes.components.push_back({0.5, 2.0, 0});
  echoes.components.push_back({0.25, 4.0, 1});

  NoiseParams off;
  auto rx = received_signal(tx, echoes, off, 1);
  CHECK(rx.samples[2] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(rx.samples[4] == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(rx.samples[0] == doctest::Approx(0.0));
  CHECK(rx.samples[3] == doctest::Approx(0.0));
}

TEST_CASE("unit echo at zero delay reproduces the transmit waveform") {
  Waveform tx;
  tx.sample_rate = 2e6;
  tx.samples = {0.25, -1.5, 3.0};
  EchoModel echoes;
  echoes.components.push_back({1.0, 0.0, 0});
  NoiseParams off;
  auto rx = received_signal(tx, echoes, off, 9, 1.0);
  CHECK(rx.samples == tx.samples);
}

TEST_CASE("received signal is deterministic in the seed") {
  Waveform tx;
  tx.sample_rate = 1e6;
  tx.samples.assign(256, 0.0);
  for (std::size_t i = 0; i < tx.samples.size(); ++i) {
    tx.samples[i] = std::sin(0.1 * static_cast<double>(i));
  }
  EchoModel echoes;
  echoes.components.push_back({1.0, 8e-6, 0});
  NoiseParams noise;
  noise.mode = NoiseParams::Mode::direct_snr;
  noise.snr_db = 5.0;

  auto a = received_signal(tx, echoes, noise, 1234);
  auto b = received_signal(tx, echoes, noise, 1234);
  auto c = received_signal(tx, echoes, noise, 1235);
  CHECK(a.samples == b.samples);
  REQUIRE(a.samples.size() == c.samples.size());
  bool any_diff = false;
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    if (a.samples[i] != c.samples[i]) any_diff = true;
  }
  CHECK(any_diff);
}

TEST_CASE("window noise hits the requested SNR") {
  const std::size_t n = 200000;
  Samples x(n);
  Rng rng(77);
  for (auto& v : x) v = rng.gaussian();
  double clean_power = 0.0;
  for (double v : x) clean_power += v * v;
  clean_power /= static_cast<double>(n);

  Samples noisy = x;
  NoiseParams noise;
  noise.mode = NoiseParams::Mode::direct_snr;
  noise.snr_db = 10.0;
  add_window_noise(noisy, noise, 1.0, 5);

  double noise_power = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = noisy[i] - x[i];
    noise_power += d * d;
  }
  noise_power /= static_cast<double>(n);
  const double snr = 10.0 * std::log10(clean_power / noise_power);
  CHECK(snr == doctest::Approx(10.0).epsilon(0.01));

  Samples untouched = x;
  NoiseParams off;
  add_window_noise(untouched, off, 1.0, 5);
  CHECK(untouched == x);
}

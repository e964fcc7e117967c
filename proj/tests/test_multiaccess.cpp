#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "roisac/multiaccess.hpp"
#include "roisac/rng.hpp"

using namespace roisac;

namespace {

OfdmConfig small_cfg() {
  OfdmConfig cfg;
  cfg.n_subcarriers = 32; // 15 data bins
  cfg.cp_len = 4;
  return cfg;
}

Bits payload(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  return random_bits(rng, n);
}

} // namespace

TEST_CASE("orthogonal users come back exactly with zero leakage") {
  auto cfg = small_cfg();
  ResourceGrid grid;
  grid.n_time_slots = 2;
  grid.subcarrier_groups = {{1, 2, 3, 4, 5}, {6, 7, 8, 9, 10, 11}, {12, 13, 14, 15}};
  grid.time_slots = {{0, 1}, {0, 1}, {0, 1}};

  std::vector<Bits> bits;
  for (std::size_t u = 0; u < 3; ++u) {
    bits.push_back(payload(grid.user_capacity_bits(u, cfg), 10 + u));
  }
  auto frame = oma_assemble(bits, grid, cfg, 1e8);
  CHECK(frame.size() == 2 * cfg.symbol_len());

  for (std::size_t u = 0; u < 3; ++u) {
    auto res = oma_extract(frame, grid, u, cfg);
    CHECK(res.bits == bits[u]);
    // Interference-free recovery: equalized symbols match the mapped payload
    // to numerical precision, not merely within a decision cell.
    auto ref = qam_map(bits[u], cfg.qam_order);
    double worst = 0.0;
    for (std::size_t i = 0; i < ref.size(); ++i) {
      worst = std::max(worst, std::abs(res.symbols[i] - ref[i]));
    }
    CHECK(worst < 1e-9);
  }
}

TEST_CASE("unowned cells stay empty in an oma frame") {
  auto cfg = small_cfg();
  ResourceGrid grid;
  grid.n_time_slots = 1;
  grid.subcarrier_groups = {{1, 2, 3}};
  grid.time_slots = {{0}};
  std::vector<Bits> bits = {payload(grid.user_capacity_bits(0, cfg), 3)};
  auto frame = oma_assemble(bits, grid, cfg, 1.0);

  auto res = demod_ofdm(frame, cfg);
  // Bins 4..15 carried nothing.
  for (std::size_t b = 3; b < cfg.data_subcarriers(); ++b) {
    CHECK(std::abs(res.symbols[b]) < 1e-9);
  }
}

TEST_CASE("per-user capacity scales with owned cells") {
  auto cfg = small_cfg();
  ResourceGrid grid;
  grid.n_time_slots = 3;
  grid.subcarrier_groups = {{1, 2}, {3, 4, 5}};
  grid.time_slots = {{0, 1, 2}, {1}};
  CHECK(grid.user_capacity_bits(0, cfg) == 2 * 3 * 2);
  CHECK(grid.user_capacity_bits(1, cfg) == 3 * 1 * 2);
}

TEST_CASE("overlapping allocations are named and rejected") {
  auto cfg = small_cfg();
  ResourceGrid grid;
  grid.n_time_slots = 2;
  grid.subcarrier_groups = {{1, 2, 3}, {3, 4}};
  grid.time_slots = {{0, 1}, {1}};
  try {
    grid.validate(cfg);
    FAIL("expected an overlap rejection");
  } catch (const AllocationError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("slot 1") != std::string::npos);
    CHECK(msg.find("subcarrier 3") != std::string::npos);
  }

  // Same bins on disjoint slots are fine.
  grid.time_slots = {{0}, {1}};
  CHECK_NOTHROW(grid.validate(cfg));
}

TEST_CASE("grid validation bounds") {
  auto cfg = small_cfg();
  ResourceGrid grid;
  grid.subcarrier_groups = {{0}};
  grid.time_slots = {{0}};
  CHECK_THROWS_AS(grid.validate(cfg), AllocationError); // bin 0 is the DC carrier
  grid.subcarrier_groups = {{16}};
  CHECK_THROWS_AS(grid.validate(cfg), AllocationError); // past the data range
  grid.subcarrier_groups = {{1}};
  grid.time_slots = {{1}};
  CHECK_THROWS_AS(grid.validate(cfg), AllocationError); // slot outside n_time_slots=1
  grid.time_slots = {{0}, {0}};
  CHECK_THROWS_AS(grid.validate(cfg), AllocationError); // list size mismatch
  grid.subcarrier_groups = {};
  grid.time_slots = {};
  CHECK_THROWS_AS(grid.validate(cfg), AllocationError); // no users
}

TEST_CASE("a user owning zero subcarriers is legal and carries nothing") {
  auto cfg = small_cfg();
  ResourceGrid grid;
  grid.n_time_slots = 1;
  grid.subcarrier_groups = {{1, 2, 3, 4}, {}};
  grid.time_slots = {{0}, {0}};
  CHECK(grid.user_capacity_bits(1, cfg) == 0);

  std::vector<Bits> bits = {payload(grid.user_capacity_bits(0, cfg), 7), {}};
  auto frame = oma_assemble(bits, grid, cfg, 1.0);
  CHECK(oma_extract(frame, grid, 0, cfg).bits == bits[0]);
  CHECK(oma_extract(frame, grid, 1, cfg).bits.empty());
}

TEST_CASE("a single full-power noma user reduces to plain ofdm") {
  auto cfg = small_cfg();
  NomaAllocation alloc;
  alloc.power_shares = {1.0};
  Bits bits = payload(cfg.bits_per_ofdm_symbol() * 4, 9);
  auto noma = noma_assemble({bits}, alloc, cfg, 1e8);
  auto plain = gen_ofdm(bits, cfg, 0, 1e8);
  CHECK(noma.samples == plain.samples);
  CHECK(noma.meta.require("noma_users") == 1.0);

  auto decoded = noma_decode(noma, alloc, cfg);
  REQUIRE(decoded.size() == 1);
  CHECK(decoded[0] == bits);
}

TEST_CASE("power-domain pair decodes exactly through cancellation") {
  auto cfg = small_cfg();
  NomaAllocation alloc;
  alloc.power_shares = {0.8, 0.2};
  Bits strong = payload(cfg.bits_per_ofdm_symbol() * 6, 21);
  Bits weak = payload(cfg.bits_per_ofdm_symbol() * 6, 22);

  auto frame = noma_assemble({strong, weak}, alloc, cfg, 1e8);
  auto decoded = noma_decode(frame, alloc, cfg);
  REQUIRE(decoded.size() == 2);
  CHECK(decoded[0] == strong);
  CHECK(decoded[1] == weak);

  // The weak user read directly, without cancelling the strong one, is junk.
  auto direct = noma_decode_user_direct(frame, alloc, 1, cfg);
  CHECK(measure_ber(weak, direct) > 0.1);
}

TEST_CASE("noma decoding tolerates a known flat channel gain") {
  auto cfg = small_cfg();
  NomaAllocation alloc;
  alloc.power_shares = {0.7, 0.3};
  Bits strong = payload(cfg.bits_per_ofdm_symbol() * 2, 31);
  Bits weak = payload(cfg.bits_per_ofdm_symbol() * 2, 32);
  auto frame = noma_assemble({strong, weak}, alloc, cfg, 1.0);
  const double gain = 2.3e-3;
  for (auto& v : frame.samples) v *= gain;
  auto decoded = noma_decode(frame, alloc, cfg, gain);
  CHECK(decoded[0] == strong);
  CHECK(decoded[1] == weak);
}

TEST_CASE("equal power shares are flagged as degenerate") {
  NomaAllocation alloc;
  alloc.power_shares = {0.5, 0.5};
  CHECK(alloc.degenerate_equal_power());
  CHECK_NOTHROW(alloc.validate());

  auto cfg = small_cfg();
  Bits a = payload(cfg.bits_per_ofdm_symbol(), 41);
  Bits b = payload(cfg.bits_per_ofdm_symbol(), 42);
  auto frame = noma_assemble({a, b}, alloc, cfg, 1.0);
  CHECK(frame.meta.require("noma_degenerate") == 1.0);

  alloc.power_shares = {0.6, 0.4};
  CHECK_FALSE(alloc.degenerate_equal_power());
}

TEST_CASE("noma allocation validation") {
  NomaAllocation alloc;
  alloc.power_shares = {};
  CHECK_THROWS_AS(alloc.validate(), AllocationError);
  alloc.power_shares = {0.5, 0.0, 0.5};
  CHECK_THROWS_AS(alloc.validate(), AllocationError);
  alloc.power_shares = {0.3, 0.7};
  CHECK_THROWS_AS(alloc.validate(), AllocationError); // ascending order
  alloc.power_shares = {0.7, 0.2};
  CHECK_THROWS_AS(alloc.validate(), AllocationError); // sums to 0.9
}

TEST_CASE("noma payload shape errors") {
  auto cfg = small_cfg();
  NomaAllocation alloc;
  alloc.power_shares = {0.8, 0.2};
  Bits ok = payload(cfg.bits_per_ofdm_symbol(), 1);
  Bits ragged = payload(cfg.bits_per_ofdm_symbol() * 2, 2);
  CHECK_THROWS_AS(noma_assemble({ok}, alloc, cfg, 1.0), AllocationError);
  CHECK_THROWS_AS(noma_assemble({ok, ragged}, alloc, cfg, 1.0), AllocationError);
  Bits partial(cfg.bits_per_ofdm_symbol() - 2, 0);
  CHECK_THROWS_AS(noma_assemble({partial, partial}, alloc, cfg, 1.0), AllocationError);
}

TEST_CASE("stronger shares give the strong user more margin") {
  auto cfg = small_cfg();
  Bits strong = payload(cfg.bits_per_ofdm_symbol() * 4, 51);
  Bits weak = payload(cfg.bits_per_ofdm_symbol() * 4, 52);
  Rng noise(7);

  // Additive channel noise at fixed power; the strong user's direct decode
  // should clean up as its share grows.
  auto run = [&](double share) {
    NomaAllocation alloc;
    alloc.power_shares = {share, 1.0 - share};
    auto frame = noma_assemble({strong, weak}, alloc, cfg, 1.0);
    Rng trial_noise(99);
    for (auto& v : frame.samples) v += 0.05 * trial_noise.gaussian();
    return measure_ber(strong, noma_decode_user_direct(frame, alloc, 0, cfg));
  };
  const double low = run(0.55);
  const double high = run(0.95);
  CHECK(high <= low);
}

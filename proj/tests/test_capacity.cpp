#include <doctest.h>

#include <cmath>
#include <vector>

#include "bwc/capacity.hpp"
#include "bwc/entropy.hpp"
#include "bwc/errors.hpp"

using doctest::Approx;

namespace {

bwc::ChannelParamSet singleton(double tau, double eta, double E) {
  return {{tau}, {eta}, E};
}

}  // namespace

TEST_SUITE("capacity") {

TEST_CASE("received photon number") {
  CHECK(bwc::received_photon_number(1.0, 3.5) == 3.5);
  CHECK(bwc::received_photon_number(0.0, 3.5) == 0.0);
  // Satellite-downlink magnitude: tau = 1e-2 at E = 1e6 photons.
  CHECK(bwc::received_photon_number(1e-2, 1e6) == Approx(100.0).epsilon(1e-15));
  CHECK_THROWS_AS(bwc::received_photon_number(1.2, 1.0), std::domain_error);
  CHECK_THROWS_AS(bwc::received_photon_number(-0.1, 1.0), std::domain_error);
  CHECK_THROWS_AS(bwc::received_photon_number(0.5, -1.0), std::domain_error);
}

TEST_CASE("clip nonnegative") {
  auto a = bwc::clip_nonnegative(-0.3);
  CHECK(a.value == 0.0);
  CHECK(a.clipped);
  auto b = bwc::clip_nonnegative(0.0);
  CHECK(b.value == 0.0);
  CHECK_FALSE(b.clipped);
  auto c = bwc::clip_nonnegative(0.34);
  CHECK(c.value == 0.34);
  CHECK_FALSE(c.clipped);
}

TEST_CASE("qq capacity trivial cases") {
  // Wiretapper receives vacuum: only Bob's term remains.
  auto r = bwc::qq_capacity(singleton(1.0, 0.0, 1.0));
  CHECK(r.raw == bwc::h_bpsk(1.0));
  CHECK_FALSE(r.clipped);
  // Identical links cancel exactly.
  CHECK(bwc::qq_capacity(singleton(0.7, 0.7, 2.3)).raw == 0.0);
}

TEST_CASE("qq capacity at the reference point") {
  // n_B = 1, n_E = 0.2: h_bpsk(1) - h_bpsk(0.2).
  auto r = bwc::qq_capacity(singleton(1.0, std::sqrt(0.2), 1.0));
  CHECK(r.raw == Approx(0.34098383175551667229).epsilon(1e-12));
  CHECK(r.worst_tau == 1.0);
  CHECK(r.worst_eta == std::sqrt(0.2));
}

TEST_CASE("cq capacity at the reference point") {
  auto r = bwc::cq_capacity(singleton(1.0, std::sqrt(0.2), 1.0));
  CHECK(r.raw == Approx(0.19762131559075651073).epsilon(1e-12));
}

TEST_CASE("cq capacity trivial cases") {
  // n_B = 0 makes Bob's BSC useless: raw <= 0.
  auto r = bwc::cq_capacity(singleton(0.0, 0.5, 1.0));
  CHECK(r.raw <= 0.0);
  CHECK(r.clipped);
  CHECK(r.value == 0.0);
  // Large n_B, vacuum wiretapper: raw approaches 1.
  auto s = bwc::cq_capacity(singleton(1.0, 0.0, 50.0));
  CHECK(s.raw == Approx(1.0).epsilon(1e-10));
}

TEST_CASE("cc capacity at the reference point") {
  auto r = bwc::cc_capacity(singleton(1.0, std::sqrt(0.2), 1.0));
  CHECK(r.raw == Approx(0.5354468654786122557).epsilon(1e-12));
}

TEST_CASE("cc capacity trivial cases") {
  // Equal mean photon numbers: identical BSCs, zero rate.
  CHECK(bwc::cc_capacity(singleton(0.6, 0.6, 1.7)).raw == 0.0);
  // Vacuum wiretapper: leakage term is 1 - h(1/2) = 0.
  auto r = bwc::cc_capacity(singleton(0.8, 0.0, 1.0));
  CHECK(r.raw == 1.0 - bwc::binary_entropy(bwc::homodyne_error(
                           bwc::received_photon_number(0.8, 1.0))));
}

TEST_CASE("empty sets are configuration errors") {
  bwc::ChannelParamSet p{{}, {0.5}, 1.0};
  CHECK_THROWS_AS(bwc::qq_capacity(p), bwc::config_error);
  bwc::ChannelParamSet q{{0.5}, {}, 1.0};
  CHECK_THROWS_AS(bwc::cq_capacity(q), bwc::config_error);
  bwc::ChannelParamSet bad{{1.5}, {0.5}, 1.0};
  CHECK_THROWS_AS(bwc::cc_capacity(bad), std::domain_error);
}

TEST_CASE("worst case scans over the full sets") {
  // Worst Bob tau is the smallest (weakest link); worst Eve eta the largest.
  bwc::ChannelParamSet p{{0.9, 0.3, 0.6}, {0.1, 0.4, 0.2}, 1.0};
  auto qq = bwc::qq_capacity(p);
  CHECK(qq.worst_tau == 0.3);
  CHECK(qq.worst_eta == 0.4);
  CHECK(qq.raw == bwc::h_bpsk(bwc::received_photon_number(0.3, 1.0)) -
                      bwc::h_bpsk(bwc::received_photon_number(0.4, 1.0)));
  auto cq = bwc::cq_capacity(p);
  CHECK(cq.worst_tau == 0.3);
  CHECK(cq.worst_eta == 0.4);
  auto cc = bwc::cc_capacity(p);
  CHECK(cc.worst_eta == 0.4);
}

TEST_CASE("ties break toward the smallest parameter") {
  // Duplicate entries attain the same value; the smallest must be reported.
  bwc::ChannelParamSet p{{0.5, 0.5}, {0.2, 0.2}, 1.0};
  CHECK(bwc::qq_capacity(p).worst_tau == 0.5);
  // tau = 0 and tau = 1 both give h(P) extremes; with E = 0 every tau ties
  // and the smallest wins.
  bwc::ChannelParamSet z{{0.4, 0.2, 0.9}, {0.3, 0.1}, 0.0};
  CHECK(bwc::qq_capacity(z).worst_tau == 0.2);
  CHECK(bwc::qq_capacity(z).worst_eta == 0.1);
}

TEST_CASE("enlarging the wiretapper set never helps") {
  bwc::ChannelParamSet base{{0.8}, {0.3}, 1.5};
  double qq0 = bwc::qq_capacity(base).raw;
  double cq0 = bwc::cq_capacity(base).raw;
  double cc0 = bwc::cc_capacity(base).raw;
  for (double extra : {0.05, 0.35, 0.6, 0.9}) {
    bwc::ChannelParamSet larger = base;
    larger.eta_set.push_back(extra);
    CHECK(bwc::qq_capacity(larger).raw <= qq0 + 1e-15);
    CHECK(bwc::cq_capacity(larger).raw <= cq0 + 1e-15);
    CHECK(bwc::cc_capacity(larger).raw <= cc0 + 1e-15);
  }
}

TEST_CASE("enlarging Bob's set never increases the qq rate") {
  bwc::ChannelParamSet base{{0.8}, {0.3}, 1.5};
  double qq0 = bwc::qq_capacity(base).raw;
  for (double extra : {0.1, 0.5, 0.79, 0.95}) {
    bwc::ChannelParamSet larger = base;
    larger.tau_set.push_back(extra);
    CHECK(bwc::qq_capacity(larger).raw <= qq0 + 1e-15);
  }
}

TEST_CASE("sweep matches individual calls and propagates indexed errors") {
  bwc::ChannelParamSet base{{1.0}, {1.0}, 1.0};
  std::vector<bwc::SweepPoint> grid{{0.8, 0.3}};
  auto rows = bwc::capacity_sweep(base, grid);
  REQUIRE(rows.size() == 1);
  auto direct = bwc::capacity_report(singleton(0.8, 0.3, 1.0));
  CHECK(rows[0].qq.raw == direct.qq.raw);
  CHECK(rows[0].cq.raw == direct.cq.raw);
  CHECK(rows[0].cc.raw == direct.cc.raw);

  std::vector<bwc::SweepPoint> bad{{0.5, 1.0}, {1.5, 1.0}};
  CHECK_THROWS_WITH_AS(bwc::capacity_sweep(base, bad),
                       doctest::Contains("sweep point 1"), std::domain_error);
  CHECK_THROWS_AS(bwc::capacity_sweep(base, {}), bwc::config_error);
}

TEST_CASE("sweep ordering invariants on the downlink grid") {
  // E = 1e6, tau log-spaced in [1e-4, 1e-2], eta^2 = 0.2 tau^2.
  bwc::ChannelParamSet base{{1.0}, {1.0}, 1e6};
  std::vector<bwc::SweepPoint> grid;
  int points = 64;
  for (int i = 0; i < points; ++i) {
    double t = 1e-4 * std::pow(100.0, static_cast<double>(i) / (points - 1));
    grid.push_back({t, std::sqrt(0.2) * t});
  }
  auto rows = bwc::capacity_sweep(base, grid);
  bool saw_gap = false;
  for (const auto& r : rows) {
    CHECK(r.qq.raw >= r.cq.raw - 1e-12);
    CHECK(r.cc.raw >= r.cq.raw - 1e-12);
    if (r.cq.value == 0.0 && r.qq.value > 0.0) saw_gap = true;
  }
  // The low-photon-number end has positive quantum rate but clipped cq.
  CHECK(saw_gap);
}

TEST_CASE("qq over the downlink grid rises to an interior peak then falls") {
  // Both h_bpsk terms saturate at 1 for large E_r, so the difference decays
  // at both ends; the maximum sits at E_r near 0.42.
  bwc::ChannelParamSet base{{1.0}, {1.0}, 1e6};
  std::vector<bwc::SweepPoint> grid;
  int points = 129;
  for (int i = 0; i < points; ++i) {
    double t = 1e-4 * std::pow(100.0, static_cast<double>(i) / (points - 1));
    grid.push_back({t, std::sqrt(0.2) * t});
  }
  auto rows = bwc::capacity_sweep(base, grid);
  std::size_t peak = 0;
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (rows[i].qq.raw > rows[peak].qq.raw) peak = i;
  CHECK(peak > 0);
  CHECK(peak < rows.size() - 1);
  double er_peak = base.energy_E * grid[peak].tau * grid[peak].tau;
  CHECK(er_peak > 0.1);
  CHECK(er_peak < 1.0);
  CHECK(rows[peak].qq.raw == Approx(0.46834).epsilon(1e-3));
  for (std::size_t i = 0; i < peak; ++i)
    CHECK(rows[i].qq.raw < rows[i + 1].qq.raw);
  // Past the peak the raw value decays; once both h_bpsk terms saturate at
  // exactly 1.0 in double precision the difference is exactly 0, so ties are
  // allowed on the tail.
  for (std::size_t i = peak; i + 1 < rows.size(); ++i)
    CHECK(rows[i].qq.raw >= rows[i + 1].qq.raw);
  CHECK(rows.back().qq.raw < 1e-12);
}

}  // TEST_SUITE

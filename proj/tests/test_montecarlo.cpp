#include <doctest.h>

#include <cmath>
#include <map>
#include <numeric>

#include "oracles.hpp"
#include "rgg/combinatorics.hpp"
#include "rgg/inputs.hpp"
#include "rgg/montecarlo.hpp"
#include "rgg/transform.hpp"

using namespace rgg;

TEST_CASE("random stream basics") {
  RandomStream a = RandomStream::for_frame(1, 0);
  RandomStream b = RandomStream::for_frame(1, 0);
  RandomStream c = RandomStream::for_frame(1, 1);
  const auto x = a();
  CHECK(x == b());
  CHECK(x != c());
  for (int i = 0; i < 1000; ++i) {
    CHECK(a.below(7) < 7);
    const double u = a.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
  CHECK_THROWS_AS(a.below(0), Error);
}

TEST_CASE("sample_configuration conserves photons") {
  RandomStream s(42);
  CHECK(sample_configuration(0, 5, s) == std::vector<std::uint64_t>(5, 0));
  CHECK(sample_configuration(7, 1, s) == std::vector<std::uint64_t>{7});
  for (std::uint64_t N : {1u, 3u, 10u, 100u}) {
    for (std::uint64_t M : {2u, 3u, 50u, 400u}) {
      const auto occ = sample_configuration(N, M, s);
      CHECK(occ.size() == M);
      CHECK(std::accumulate(occ.begin(), occ.end(), std::uint64_t{0}) == N);
    }
  }
}

TEST_CASE("composition_rank is a bijection onto [0, Z)") {
  for (std::uint64_t N = 0; N <= 5; ++N) {
    for (std::uint64_t M = 1; M <= 4; ++M) {
      std::vector<bool> seen(config_count(N, M).get_ui(), false);
      oracle::for_each_composition(N, M, [&](const std::vector<std::uint64_t>& c) {
        const auto r = composition_rank(c);
        REQUIRE(r < seen.size());
        CHECK_FALSE(seen[r]);
        seen[r] = true;
      });
    }
  }
}

TEST_CASE("two photons on two pixels: each configuration at 1/3") {
  const std::uint64_t frames = 1000000;
  const auto counts = configuration_histogram(2, 2, frames, 9);
  REQUIRE(counts.size() == 3);
  const double p = 1.0 / 3.0;
  const double sigma = std::sqrt(p * (1 - p) / frames);
  for (auto c : counts) CHECK(std::abs(c / double(frames) - p) < 5 * sigma);
}

TEST_CASE("configuration uniformity by chi-square") {
  // Includes the stars branch (N < M - 1) as well as the bars branch.
  const std::vector<std::pair<std::uint64_t, std::uint64_t>> cases{{2, 2}, {3, 3}, {4, 3}, {2, 6}, {5, 4}};
  for (const auto& [N, M] : cases) {
    const auto counts = configuration_histogram(N, M, 300000, 1234 + N * 10 + M);
    CHECK(counts.size() == config_count(N, M).get_ui());
    const auto chi = chi_square_uniform(counts);
    INFO("N = " << N << ", M = " << M << ", chi2 = " << chi.statistic);
    CHECK(chi.p_value > 0.001);
  }
}

TEST_CASE("pixel-0 marginal matches the counting pmf") {
  const std::uint64_t frames = 400000;
  int bins = 0, good = 0;
  for (const auto& [N, M] : std::vector<std::pair<std::uint64_t, std::uint64_t>>{{8, 8}, {3, 20}, {30, 4}}) {
    MCConfig cfg{Fock{N}, M, frames, 99 + N};
    const MCRunResult r = run_mc(cfg);
    CHECK(std::accumulate(r.histogram.begin(), r.histogram.end(), std::uint64_t{0}) == frames);
    const Pmf exact = fock_scatter_pmf(N, M);
    for (std::size_t n = 0; n <= N; ++n) {
      const double p = exact[n];
      const double emp = r.histogram[n] / double(frames);
      ++bins;
      if (std::abs(emp - p) <= 5 * std::sqrt(p * (1 - p) / frames) + 1e-12) ++good;
    }
  }
  CHECK(good >= 0.99 * bins);
}

TEST_CASE("run_mc edge cases") {
  const MCRunResult vac = run_mc({Fock{0}, 5, 1000, 1});
  CHECK(vac.histogram == std::vector<std::uint64_t>{1000});

  const MCRunResult single = run_mc({Fock{1}, 8, 200000, 3});
  const double p1 = single.histogram[1] / 200000.0;
  CHECK(std::abs(p1 - 0.125) < 5 * std::sqrt(0.125 * 0.875 / 200000));
  const auto rep = empirical_report(single, 2);
  CHECK(rep.report.gn(2) == 0.0);

  CHECK_THROWS_AS(run_mc({Fock{1}, 0, 10, 1}), Error);
  CHECK_THROWS_AS(run_mc({Fock{1}, 3, 0, 1}), Error);
}

TEST_CASE("seed determinism") {
  const MCConfig cfg{Coherent{5.0}, 6, 50000, 777};
  const MCRunResult a = run_mc(cfg);
  const MCRunResult b = run_mc(cfg);
  CHECK(a == b);
  MCConfig other = cfg;
  other.seed = 778;
  CHECK_FALSE(run_mc(other) == a);
}

TEST_CASE("empirical_report") {
  MCRunResult r;
  r.frames = 500;
  r.M = 3;
  r.histogram = {0, 500};
  r.block_histograms.assign(100, {0, 5});
  const auto rep = empirical_report(r, 3);
  CHECK(rep.report.mean == 1.0);
  CHECK(rep.report.gn(2) == 0.0);
  CHECK(rep.g_stderr[0] == 0.0);
  CHECK(rep.blocks == 100);

  // Thermal-like: Poisson input, moderate M.
  const MCRunResult run = run_mc({Coherent{20.0}, 10, 400000, 5});
  const auto th = empirical_report(run, 2);
  CHECK(th.g_stderr[0] > 0.0);
  CHECK(std::abs(th.report.gn(2) - 20.0 / 11.0) < 4 * th.g_stderr[0]);

  const MCRunResult fock = run_mc({Fock{8}, 8, 400000, 6});
  const auto fr = empirical_report(fock, 2);
  CHECK(std::abs(fr.report.gn(2) - 14.0 / 9.0) < 4 * fr.g_stderr[0]);

  MCRunResult zero;
  zero.frames = 10;
  zero.histogram = {10};
  zero.block_histograms.assign(10, {1});
  CHECK_THROWS_AS(empirical_report(zero, 2), Error);
}

TEST_CASE("block layout") {
  CHECK(block_count(1) == 1);
  CHECK(block_count(57) == 57);
  CHECK(block_count(100) == 100);
  CHECK(block_count(1000000) == 100);
  const MCRunResult r = run_mc({Fock{2}, 2, 1003, 1});
  std::uint64_t total = 0;
  for (const auto& b : r.block_histograms) total += std::accumulate(b.begin(), b.end(), std::uint64_t{0});
  CHECK(total == 1003);
}

#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "rgg/combinatorics.hpp"
#include "rgg/transform.hpp"

using namespace rgg;

TEST_CASE("config_count") {
  CHECK(config_count(1, 2) == 2);
  CHECK(config_count(2, 3) == 6);
  for (std::uint64_t M = 1; M < 6; ++M) CHECK(config_count(0, M) == 1);
  // enumeration agrees on a small grid
  for (std::uint64_t N = 0; N <= 6; ++N)
    for (std::uint64_t M = 1; M <= 4; ++M) CHECK(config_count(N, M) == oracle::enumerate_pixel0(N, M).total);
}

TEST_CASE("fock_scatter_pmf examples") {
  for (std::uint64_t M : {2u, 3u, 8u, 200u, 5000u}) {
    const Pmf p = fock_scatter_pmf(1, M);
    CHECK(p[0] == doctest::Approx(1.0 - 1.0 / M).epsilon(1e-15));
    CHECK(p[1] == doctest::Approx(1.0 / M).epsilon(1e-15));
  }
  CHECK(correlation_report(fock_scatter_pmf(8, 8), 2).gn(2) == doctest::Approx(14.0 / 9.0).epsilon(1e-14));

  const ExactPmf two = fock_scatter_exact(2, 2);
  for (std::size_t n = 0; n < 3; ++n) CHECK(two.at(n) == mpq_class(1, 3));

  // M = 1 is the identity
  CHECK(fock_scatter_pmf(4, 1) == Pmf({0.0, 0.0, 0.0, 0.0, 1.0}));
}

TEST_CASE("fock_scatter_exact matches full enumeration") {
  for (std::uint64_t N = 0; N <= 6; ++N) {
    for (std::uint64_t M = 1; M <= 4; ++M) {
      const auto counts = oracle::enumerate_pixel0(N, M);
      const ExactPmf p = fock_scatter_exact(N, M);
      REQUIRE(p.size() == N + 1);
      for (std::size_t n = 0; n <= N; ++n) {
        INFO("N = " << N << ", M = " << M << ", n = " << n);
        mpq_class expected(counts.by_n[n], counts.total);
        expected.canonicalize();
        CHECK(p.at(n) == expected);
        if (M >= 2) {
          // p_n = Z(N - n, M - 1) / Z(N, M)
          mpq_class via_counts(config_count(N - n, M - 1), config_count(N, M));
          via_counts.canonicalize();
          CHECK(p.at(n) == via_counts);
        }
      }
    }
  }
}

TEST_CASE("exact normalization and mean N/M") {
  for (std::uint64_t N : {0u, 1u, 7u, 40u, 150u}) {
    for (std::uint64_t M : {1u, 2u, 3u, 10u, 97u, 1000u}) {
      const ExactPmf p = fock_scatter_exact(N, M);
      CHECK(p.sums_to_one());
      mpq_class mean(p.factorial_moment_numerator(1), p.denominator);
      mean.canonicalize();
      mpq_class expected(static_cast<unsigned long>(N), static_cast<unsigned long>(M));
      expected.canonicalize();
      CHECK(mean == expected);
    }
  }
}

TEST_CASE("successive ratios equal thermal_ratio") {
  for (std::uint64_t N : {1u, 5u, 60u, 200u}) {
    for (std::uint64_t M : {2u, 3u, 8u, 200u}) {
      const Pmf p = fock_scatter_pmf(N, M);
      for (std::uint64_t n = 0; n < N; ++n) {
        if (p[n] < 1e-290) break;  // ratios of subnormals lose precision
        CHECK(std::abs(p[n + 1] / p[n] - thermal_ratio(N, M, n)) < 1e-12);
      }
    }
  }
}

TEST_CASE("thermal_ratio") {
  CHECK(thermal_ratio(200, 200, 0) == doctest::Approx(100.0 / 199.0).epsilon(1e-15));
  CHECK(thermal_ratio(1, 2, 0) == 1.0);
  CHECK(std::abs(thermal_ratio(10000, 100, 0) - 1.0 / (1.0 + 100.0 / 10000.0)) < 1e-3);
  try {
    (void)thermal_ratio(5, 3, 5);
    FAIL("expected OutOfRange");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::OutOfRange);
  }
}

TEST_CASE("quadratic-exponent approximation") {
  const auto c = approx_coefficients(200, 200);
  CHECK(c.beta0 == doctest::Approx(std::log(1.0 + 198.0 / 200.0)).epsilon(1e-15));
  CHECK(c.betac == doctest::Approx(198.0 / (2.0 * 200.0 * 398.0)).epsilon(1e-15));
  CHECK(approx_coefficients(1000000, 200).betac < 1e-10);

  const Pmf exact = fock_scatter_pmf(200, 200);
  const Pmf approx = approx_scatter_pmf(200, 200, 200);
  double worst = 0.0;
  for (std::size_t n = 0; n <= 20; ++n) worst = std::max(worst, std::abs(approx[n] - exact[n]) / exact[n]);
  CHECK(worst < 0.05);

  CHECK_THROWS_AS(approx_scatter_pmf(10, 2, 5), Error);
  CHECK_THROWS_AS(approx_scatter_pmf(10, 5, 11), Error);
}

TEST_CASE("log-space path agrees with exact path") {
  // N + M = 25000 goes through lgamma-free log sums; compare to the exact
  // integers computed directly.
  const std::uint64_t N = 60, M = 24940;
  const Pmf fast = fock_scatter_pmf(N, M);
  const ExactPmf exact = fock_scatter_exact(N, M);
  const auto ref = exact.to_doubles();
  for (std::size_t n = 0; n <= N; ++n) {
    if (ref[n] < 1e-250) continue;
    CHECK(fast[n] == doctest::Approx(ref[n]).epsilon(1e-10));
  }

  const FockScatterTable table(100, 30000);
  CHECK_FALSE(table.exact());
  CHECK(FockScatterTable(100, 300).exact());
}

TEST_CASE("table matches per-N exact pmfs") {
  const FockScatterTable table(40, 7);
  for (std::size_t N = 0; N <= 40; ++N) {
    const auto ref = fock_scatter_exact(N, 7).to_doubles();
    for (std::size_t n = 0; n <= N; ++n) CHECK(table(N, n) == doctest::Approx(ref[n]).epsilon(4e-16));
    CHECK(table(N, N + 1) == 0.0);
  }
}

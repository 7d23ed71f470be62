#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "rgg/core.hpp"
#include "rgg/exact.hpp"

namespace rgg {

/// Above this N + M the Fock scattering pmf is evaluated in log space.
inline constexpr std::uint64_t kExactLimit = 20000;

/// Number of ways to place N identical photons on M pixels,
/// C(N + M - 1, M - 1).
BigCount config_count(std::uint64_t N, std::uint64_t M);

/// Pixel-0 photon-number distribution when exactly N photons are spread
/// uniformly over all configurations of M pixels:
///   p_n = C(N - n + M - 2, M - 2) / C(N + M - 1, M - 1),  0 <= n <= N.
/// M = 1 is the identity (the single pixel receives all N photons).
ExactPmf fock_scatter_exact(std::uint64_t N, std::uint64_t M);
Pmf fock_scatter_pmf(std::uint64_t N, std::uint64_t M);

/// P_{n+1} / P_n = 1 / (1 + (M - 2) / (N - n)) for the Fock scattering pmf.
/// Throws OutOfRange when n >= N.
double thermal_ratio(std::uint64_t N, std::uint64_t M, std::uint64_t n);

struct ApproxCoefficients {
  double beta0 = 0.0;  // ln(1 + (M - 2)/N)
  double betac = 0.0;  // (M - 2) / (2 N (N + M - 2))
};

ApproxCoefficients approx_coefficients(std::uint64_t N, std::uint64_t M);

/// Quadratic-exponent approximation p_n ∝ exp(-beta0 n - betac (n^2 - n)),
/// normalized over 0..n_max. Requires N >= 1, M >= 3 and n_max <= N.
Pmf approx_scatter_pmf(std::uint64_t N, std::uint64_t M, std::uint64_t n_max);

/// Precomputed P_n^(N) for all 0 <= n <= N <= n_max at fixed M.
///
/// The numerators C(j + M - 2, M - 2) depend only on j = N - n, and
/// C(N + M - 1, M - 1) is their prefix sum, so one pass over j builds the
/// whole triangle. Entries are stored as (mantissa, exponent) of the exact
/// integers when N + M <= kExactLimit, and as logarithms otherwise.
class FockScatterTable {
 public:
  FockScatterTable(std::size_t n_max, std::uint64_t M);

  /// P_n^(N); zero for n > N.
  double operator()(std::size_t N, std::size_t n) const;

  std::size_t n_max() const noexcept { return n_max_; }
  std::uint64_t M() const noexcept { return M_; }
  bool exact() const noexcept { return exact_; }

 private:
  std::size_t n_max_;
  std::uint64_t M_;
  bool exact_;
  // exact path: value = mant * 2^exp
  std::vector<double> num_mant_, den_mant_;
  std::vector<long> num_exp_, den_exp_;
  // log path
  std::vector<double> log_num_, log_den_;
};

}  // namespace rgg

#pragma once

#include <cstdint>
#include <span>

#include "rgg/core.hpp"

namespace rgg {

/// Scattered pixel statistics P_n = sum_N P_in(N) P_n^(N) for an arbitrary
/// input pmf. The output keeps the input support 0..n_max; any input tail
/// mass is carried over unchanged as the output tail.
///
/// Parallel over output n; each P_n is reduced in ascending N, so the result
/// is bit-identical to reference::scatter_pmf_serial for any thread count.
Pmf scatter_pmf(const Pmf& input, std::uint64_t M);

/// <n^2>_out = 2 <N^2>_in / (M (M + 1)) + <N>_in (M - 1) / (M (M + 1)).
double second_moment_out(const Pmf& input, std::uint64_t M);

/// Factorial moments and g^(n) for n = 2..order.
/// Throws ZeroMean when the pmf has zero mean.
CorrelationReport correlation_report(const Pmf& p, int order);

/// 2 g2_in M / (M + 1)
double g2_out_predicted(double g2_in, std::uint64_t M);
/// 6 g3_in M^2 / (M^2 + 3M + 2)
double g3_out_predicted(double g3_in, std::uint64_t M);

/// k successive scatterings with the same M.
Pmf cascade_pmf(const Pmf& input, std::uint64_t M, std::uint32_t k);
/// One scattering per entry of `Ms`.
Pmf cascade_pmf(const Pmf& input, std::span<const std::uint64_t> Ms);

}  // namespace rgg

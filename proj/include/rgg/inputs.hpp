#pragma once

#include <cstddef>
#include <cstdint>

#include "rgg/core.hpp"

namespace rgg {

/// Squeezed coherent state |alpha, xi> = D(alpha) S(xi) |0>, xi = r e^{i theta}.
struct SqueezedParams {
  double alpha_mag = 0.0;
  double alpha_phase = 0.0;
  double r = 0.0;
  double theta = 0.0;

  /// |alpha|^2 + sinh^2 r
  double expected_mean() const;
};

Pmf fock_pmf(std::uint64_t N);

/// Poisson pmf truncated at the smallest n whose tail is below 1e-12 and whose
/// factorial moments up to order 3 lose less than 1e-12 of their value
/// (capped at n = 4096).
Pmf poisson_pmf(double mean);
/// Poisson pmf truncated at an explicit n_max; the exact tail is recorded.
Pmf poisson_pmf(double mean, std::size_t n_max);

/// Bose-Einstein (geometric) pmf n̄^n / (1 + n̄)^{n+1}, truncated by the same
/// rule as poisson_pmf.
Pmf thermal_pmf(double mean);

/// Photon-number pmf of a squeezed coherent state.
///
/// Amplitudes c_n = <n|alpha, xi> follow from the annihilation condition
/// (a cosh r + a^+ e^{i theta} sinh r) |psi> = gamma |psi> with
/// gamma = alpha cosh r + alpha^* e^{i theta} sinh r, which gives
///
///   cosh r sqrt(n+1) c_{n+1} = gamma c_n - e^{i theta} sinh r sqrt(n) c_{n-1}
///   c_0 = exp(-|alpha|^2/2 - alpha^{*2} e^{i theta} tanh r / 2) / sqrt(cosh r).
///
/// The pair (c_{n-1}, c_n) is carried as unit-scale complex values with a
/// shared log-magnitude so that neither overflows nor underflows.
/// Throws UnstableEvaluation when the accumulated norm leaves [0, 1].
Pmf squeezed_coherent_pmf(const SqueezedParams& sp);

/// Independent oracle: builds the truncated annihilation operator on a
/// dim-dimensional number basis and applies the dense matrix exponentials of
/// the squeeze and displacement generators to the vacuum.
/// Throws DimTooSmall if the top of the basis still carries probability
/// above 1e-12.
Pmf squeezed_oracle_pmf(const SqueezedParams& sp, std::size_t dim);

/// Suggested oracle dimension: n̄ + 10 sqrt(n̄) + 20, widened by the
/// ln(1e-14) / ln(tanh r) levels a squeezed vacuum needs to decay.
std::size_t recommended_oracle_dim(const SqueezedParams& sp);

Pmf input_pmf(const InputStateSpec& spec);

}  // namespace rgg

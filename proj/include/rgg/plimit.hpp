#pragma once

#include <cstdint>
#include <vector>

#include "rgg/core.hpp"
#include "rgg/exact.hpp"

namespace rgg {

/// Coherent input of mean |alpha0|^2 maps to a thermal state of mean
/// |alpha0|^2 / M in the many-diffuser limit.
Pmf coherent_limit_pmf(double input_mean, std::uint64_t M);

/// <a^+n a^n>_out = <a^+n a^n>_in n! / M^n
double limit_factorial_moment(double input_fm_n, int n, std::uint64_t M);

/// g^(n) after k_stages scatterings in the many-diffuser limit: (n!)^k g_in.
double gn_limit(double g_in_n, int n, std::uint32_t k_stages);

/// Limit moments and g^(n) for an arbitrary input pmf.
CorrelationReport limit_report(const Pmf& input, int order, std::uint64_t M);

/// Fock-input pixel pmf in the many-diffuser limit,
///
///   P_n = (N!/n!) sum_{k=n}^{N} (-1)^{k-n} k! / ((N-k)! (k-n)! M^k),
///
/// held exactly as integer numerators A_n over M^N with
///   A_n = sum_k (-1)^{k-n} N!/(N-k)! C(k, n) M^{N-k}.
/// Entries are independent and computed in parallel over n.
ExactPmf fock_pn_limit_exact(std::uint64_t N, std::uint64_t M);

/// Single entry, exact then rounded; zero for n > N.
double fock_pn_limit(std::uint64_t N, std::uint64_t M, std::uint64_t n);

/// Throws NormalizationFailure if the exact entries do not sum to one and
/// NegativeProbability (with the offending n) if M is too small for the
/// limit formula to stay nonnegative.
Pmf fock_pn_limit_pmf(std::uint64_t N, std::uint64_t M);

/// The same alternating sum evaluated term by term in double precision
/// (magnitudes from lgamma). Kept to quantify cancellation error.
std::vector<double> fock_pn_limit_double(std::uint64_t N, std::uint64_t M);

}  // namespace rgg

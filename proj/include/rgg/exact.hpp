#pragma once

#include <cstddef>
#include <vector>

#include <gmpxx.h>

#include "rgg/core.hpp"

namespace rgg {

using BigCount = mpz_class;

/// num / den rounded to double without forming the rational: both operands
/// are split into mantissa and binary exponent, so huge values do not
/// overflow. Relative error is a few ulp.
double ratio_to_double(const mpz_class& num, const mpz_class& den);

/// A distribution held as integer numerators over one common positive
/// denominator. Numerators may be negative (see the many-diffuser limit).
struct ExactPmf {
  std::vector<mpz_class> numerators;
  mpz_class denominator{1};

  std::size_t size() const noexcept { return numerators.size(); }
  mpq_class at(std::size_t n) const;

  /// sum of numerators == denominator
  bool sums_to_one() const;
  bool has_negative() const;
  /// First n with a negative entry, or size() when none.
  std::size_t first_negative() const;

  /// Sum_n numerators[n] * n (n-1) ... (n-k+1), still over `denominator`.
  mpz_class factorial_moment_numerator(unsigned k) const;

  std::vector<double> to_doubles() const;
  /// Throws NegativeProbability if any entry is negative.
  Pmf to_pmf() const;
};

}  // namespace rgg

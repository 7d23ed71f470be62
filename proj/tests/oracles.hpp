#pragma once

// Test-only reference computations. Nothing here calls into the library's
// evaluation paths; they exist to check those paths independently.

#include <cstdint>
#include <functional>
#include <vector>

#include <gmpxx.h>

namespace rgg::oracle {

/// Calls `visit` with every weak composition of N into M parts.
inline void for_each_composition(std::uint64_t N, std::uint64_t M,
                                 const std::function<void(const std::vector<std::uint64_t>&)>& visit) {
  std::vector<std::uint64_t> parts(M, 0);
  std::function<void(std::size_t, std::uint64_t)> rec = [&](std::size_t i, std::uint64_t left) {
    if (i + 1 == M) {
      parts[i] = left;
      visit(parts);
      return;
    }
    for (std::uint64_t v = 0; v <= left; ++v) {
      parts[i] = v;
      rec(i + 1, left - v);
    }
  };
  rec(0, N);
}

/// Count of compositions with pixel 0 holding n photons, and the total count.
struct PixelCounts {
  std::vector<mpz_class> by_n;
  mpz_class total = 0;
};

inline PixelCounts enumerate_pixel0(std::uint64_t N, std::uint64_t M) {
  PixelCounts out;
  out.by_n.assign(N + 1, 0);
  for_each_composition(N, M, [&](const std::vector<std::uint64_t>& parts) {
    out.by_n[parts[0]] += 1;
    out.total += 1;
  });
  return out;
}

inline mpz_class factorial(unsigned long n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return f;
}

/// (N!/n!) sum_{k=n}^{N} (-1)^{k-n} k! / ((N-k)! (k-n)! M^k), straight from
/// factorials.
inline mpq_class limit_entry(unsigned long N, unsigned long M, unsigned long n) {
  if (n > N) return 0;
  mpq_class sum = 0;
  for (unsigned long k = n; k <= N; ++k) {
    mpz_class Mk;
    mpz_ui_pow_ui(Mk.get_mpz_t(), M, k);
    mpq_class term(factorial(k), factorial(N - k) * factorial(k - n) * Mk);
    term.canonicalize();
    if ((k - n) % 2 == 0)
      sum += term;
    else
      sum -= term;
  }
  mpq_class pre(factorial(N), factorial(n));
  pre.canonicalize();
  return pre * sum;
}

/// Factorial moments of the geometric pmf of mean m: k! m^k.
inline double thermal_factorial_moment(double mean, int k) {
  double f = 1.0;
  for (int i = 1; i <= k; ++i) f *= i * mean;
  return f;
}

/// Normally ordered moment sum_n p_n n!/(n-k)! over exact rationals.
inline mpq_class factorial_moment(const std::vector<mpq_class>& p, unsigned k) {
  mpq_class acc = 0;
  for (std::size_t n = k; n < p.size(); ++n) {
    mpz_class falling = 1;
    for (unsigned i = 0; i < k; ++i) falling *= static_cast<unsigned long>(n - i);
    acc += p[n] * falling;
  }
  return acc;
}

}  // namespace rgg::oracle

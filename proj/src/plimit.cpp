#include "rgg/plimit.hpp"

#include <cmath>
#include <sstream>

#include "rgg/inputs.hpp"
#include "rgg/reference.hpp"
#include "rgg/transform.hpp"

namespace rgg {

namespace {

void require_M(std::uint64_t M) {
  if (M < 1) throw Error(ErrorKind::InvalidArgument, "M must be >= 1");
}

std::size_t checked_size(std::uint64_t N) {
  if (N > 100000) throw Error(ErrorKind::OutOfRange, "N too large for the exact limit sum");
  return static_cast<std::size_t>(N) + 1;
}

// A_n = sum_{k=n}^{N} (-1)^{k-n} t_k,  t_k = N!/(N-k)! C(k,n) M^{N-k}
mpz_class limit_numerator(unsigned long N, unsigned long M, unsigned long n) {
  mpz_class term;
  mpz_ui_pow_ui(term.get_mpz_t(), M, N - n);
  for (unsigned long i = 0; i < n; ++i) term *= N - i;

  mpz_class acc = term;
  for (unsigned long k = n; k < N; ++k) {
    // t_{k+1} = t_k (N - k)(k + 1) / ((k + 1 - n) M)
    term *= (N - k) * (k + 1);
    mpz_divexact_ui(term.get_mpz_t(), term.get_mpz_t(), k + 1 - n);
    mpz_divexact_ui(term.get_mpz_t(), term.get_mpz_t(), M);
    if ((k + 1 - n) % 2 == 0)
      acc += term;
    else
      acc -= term;
  }
  return acc;
}

mpz_class limit_denominator(unsigned long N, unsigned long M) {
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), M, N);
  return den;
}

}  // namespace

Pmf coherent_limit_pmf(double input_mean, std::uint64_t M) {
  require_M(M);
  return thermal_pmf(input_mean / static_cast<double>(M));
}

double limit_factorial_moment(double input_fm_n, int n, std::uint64_t M) {
  require_M(M);
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "moment order must be >= 1");
  double scale = 1.0;
  for (int k = 1; k <= n; ++k) scale *= static_cast<double>(k) / static_cast<double>(M);
  return input_fm_n * scale;
}

double gn_limit(double g_in_n, int n, std::uint32_t k_stages) {
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "g order must be >= 2");
  double factorial = 1.0;
  for (int k = 2; k <= n; ++k) factorial *= k;
  return std::pow(factorial, static_cast<double>(k_stages)) * g_in_n;
}

CorrelationReport limit_report(const Pmf& input, int order, std::uint64_t M) {
  const CorrelationReport in = correlation_report(input, order);
  CorrelationReport out;
  out.order = order;
  out.dropped_tail = in.dropped_tail;
  for (int n = 1; n <= order; ++n)
    out.factorial_moments.push_back(limit_factorial_moment(in.fm(n), n, M));
  out.mean = out.factorial_moments[0];
  for (int n = 2; n <= order; ++n) out.g.push_back(out.fm(n) / std::pow(out.mean, n));
  return out;
}

ExactPmf fock_pn_limit_exact(std::uint64_t N, std::uint64_t M) {
  require_M(M);
  const std::size_t size = checked_size(N);
  ExactPmf out;
  out.numerators.resize(size);
  out.denominator = limit_denominator(N, M);
  const auto count = static_cast<long long>(size);
#pragma omp parallel for schedule(dynamic, 1)
  for (long long i = 0; i < count; ++i)
    out.numerators[static_cast<std::size_t>(i)] =
        limit_numerator(N, M, static_cast<unsigned long>(i));
  return out;
}

namespace reference {

ExactPmf fock_pn_limit_exact_serial(std::uint64_t N, std::uint64_t M) {
  require_M(M);
  const std::size_t size = checked_size(N);
  ExactPmf out;
  out.numerators.resize(size);
  out.denominator = limit_denominator(N, M);
  for (std::size_t n = 0; n < size; ++n) out.numerators[n] = limit_numerator(N, M, n);
  return out;
}

}  // namespace reference

double fock_pn_limit(std::uint64_t N, std::uint64_t M, std::uint64_t n) {
  require_M(M);
  checked_size(N);
  if (n > N) return 0.0;
  return ratio_to_double(limit_numerator(N, M, n), limit_denominator(N, M));
}

Pmf fock_pn_limit_pmf(std::uint64_t N, std::uint64_t M) {
  const ExactPmf exact = fock_pn_limit_exact(N, M);
  if (!exact.sums_to_one()) {
    std::ostringstream os;
    os << "exact entries for N = " << N << ", M = " << M << " do not sum to 1";
    throw Error(ErrorKind::NormalizationFailure, os.str());
  }
  return exact.to_pmf();
}

std::vector<double> fock_pn_limit_double(std::uint64_t N, std::uint64_t M) {
  require_M(M);
  const std::size_t size = checked_size(N);
  const double dN = static_cast<double>(N);
  const double log_M = std::log(static_cast<double>(M));
  std::vector<double> out(size);
  for (std::size_t n = 0; n < size; ++n) {
    const double dn = static_cast<double>(n);
    double acc = 0.0;
    for (std::size_t k = n; k < size; ++k) {
      const double dk = static_cast<double>(k);
      const double magnitude =
          std::exp(std::lgamma(dN + 1.0) - std::lgamma(dN - dk + 1.0) + std::lgamma(dk + 1.0) -
                   std::lgamma(dn + 1.0) - std::lgamma(dk - dn + 1.0) - dk * log_M);
      acc += ((k - n) % 2 == 0) ? magnitude : -magnitude;
    }
    out[n] = acc;
  }
  return out;
}

}  // namespace rgg

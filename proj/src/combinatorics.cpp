#include "rgg/combinatorics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace rgg {

namespace {

void require_M(std::uint64_t M) {
  if (M < 1) throw Error(ErrorKind::InvalidArgument, "M must be >= 1");
}

std::size_t checked_size(std::uint64_t N) {
  if (N > (std::uint64_t{1} << 26))
    throw Error(ErrorKind::OutOfRange, "photon number too large for a dense pmf");
  return static_cast<std::size_t>(N);
}

// log(exp(a) + exp(b))
double log_add(double a, double b) {
  if (a == -std::numeric_limits<double>::infinity()) return b;
  const double hi = std::max(a, b);
  const double lo = std::min(a, b);
  return hi + std::log1p(std::exp(lo - hi));
}

}  // namespace

BigCount config_count(std::uint64_t N, std::uint64_t M) {
  require_M(M);
  BigCount out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(N + M - 1),
               static_cast<unsigned long>(M - 1));
  return out;
}

ExactPmf fock_scatter_exact(std::uint64_t N, std::uint64_t M) {
  require_M(M);
  const std::size_t size = checked_size(N) + 1;
  ExactPmf out;
  out.numerators.assign(size, 0);
  if (M == 1) {
    out.numerators.back() = 1;
    out.denominator = 1;
    return out;
  }
  // numerators[n] = C(j + M - 2, M - 2) with j = N - n
  mpz_class b = 1;
  for (std::size_t j = 0; j < size; ++j) {
    if (j > 0) {
      b *= static_cast<unsigned long>(j + M - 2);
      mpz_divexact_ui(b.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(j));
    }
    out.numerators[size - 1 - j] = b;
  }
  out.denominator = config_count(N, M);
  return out;
}

Pmf fock_scatter_pmf(std::uint64_t N, std::uint64_t M) {
  require_M(M);
  if (M == 1 || N + M <= kExactLimit) return fock_scatter_exact(N, M).to_pmf();

  const FockScatterTable table(checked_size(N), M);
  std::vector<double> probs(checked_size(N) + 1);
  double total = 0.0;
  for (std::size_t n = 0; n < probs.size(); ++n) {
    probs[n] = table(probs.size() - 1, n);
    total += probs[n];
  }
  for (auto& p : probs) p /= total;
  return Pmf(std::move(probs), 0.0);
}

double thermal_ratio(std::uint64_t N, std::uint64_t M, std::uint64_t n) {
  if (M < 2) throw Error(ErrorKind::InvalidArgument, "thermal_ratio needs M >= 2");
  if (n >= N) {
    std::ostringstream os;
    os << "n = " << n << " must be below N = " << N;
    throw Error(ErrorKind::OutOfRange, os.str());
  }
  // (N - n) / (N - n + M - 2)
  return ratio_to_double(mpz_class(static_cast<unsigned long>(N - n)),
                         mpz_class(static_cast<unsigned long>(N - n)) +
                             static_cast<unsigned long>(M - 2));
}

ApproxCoefficients approx_coefficients(std::uint64_t N, std::uint64_t M) {
  if (N < 1) throw Error(ErrorKind::InvalidArgument, "approximation needs N >= 1");
  if (M < 3) throw Error(ErrorKind::InvalidArgument, "approximation needs M >= 3");
  const double n = static_cast<double>(N);
  const double m2 = static_cast<double>(M - 2);
  return {std::log1p(m2 / n), m2 / (2.0 * n * (n + m2))};
}

Pmf approx_scatter_pmf(std::uint64_t N, std::uint64_t M, std::uint64_t n_max) {
  const auto c = approx_coefficients(N, M);
  if (n_max > N) throw Error(ErrorKind::InvalidArgument, "n_max must not exceed N");
  std::vector<double> probs(checked_size(n_max) + 1);
  double total = 0.0;
  for (std::size_t n = 0; n < probs.size(); ++n) {
    const double dn = static_cast<double>(n);
    probs[n] = std::exp(-c.beta0 * dn - c.betac * (dn * dn - dn));
    total += probs[n];
  }
  for (auto& p : probs) p /= total;
  return Pmf(std::move(probs), 0.0);
}

FockScatterTable::FockScatterTable(std::size_t n_max, std::uint64_t M)
    : n_max_(n_max), M_(M), exact_(M == 1 || n_max + M <= kExactLimit) {
  require_M(M);
  if (M == 1) return;
  const std::size_t size = n_max + 1;
  if (exact_) {
    num_mant_.resize(size);
    num_exp_.resize(size);
    den_mant_.resize(size);
    den_exp_.resize(size);
    mpz_class b = 1;
    mpz_class z = 0;
    for (std::size_t j = 0; j < size; ++j) {
      if (j > 0) {
        b *= static_cast<unsigned long>(j + M - 2);
        mpz_divexact_ui(b.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(j));
      }
      z += b;  // hockey stick: sum_{i<=j} C(i + M - 2, M - 2) = C(j + M - 1, M - 1)
      num_mant_[j] = mpz_get_d_2exp(&num_exp_[j], b.get_mpz_t());
      den_mant_[j] = mpz_get_d_2exp(&den_exp_[j], z.get_mpz_t());
    }
  } else {
    log_num_.resize(size);
    log_den_.resize(size);
    const double m2 = static_cast<double>(M - 2);
    double log_b = 0.0;
    double log_z = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < size; ++j) {
      if (j > 0) log_b += std::log1p(m2 / static_cast<double>(j));
      log_z = log_add(log_z, log_b);
      log_num_[j] = log_b;
      log_den_[j] = log_z;
    }
  }
}

double FockScatterTable::operator()(std::size_t N, std::size_t n) const {
  if (n > N) return 0.0;
  if (M_ == 1) return n == N ? 1.0 : 0.0;
  const std::size_t j = N - n;
  if (exact_)
    return std::ldexp(num_mant_[j] / den_mant_[N], static_cast<int>(num_exp_[j] - den_exp_[N]));
  return std::exp(log_num_[j] - log_den_[N]);
}

}  // namespace rgg

#include "rgg/transform.hpp"

#include <cmath>
#include <vector>

#include "rgg/combinatorics.hpp"
#include "rgg/reference.hpp"

namespace rgg {

namespace {

void require_M(std::uint64_t M) {
  if (M < 1) throw Error(ErrorKind::InvalidArgument, "M must be >= 1");
}

}  // namespace

Pmf scatter_pmf(const Pmf& input, std::uint64_t M) {
  require_M(M);
  const auto weights = input.probs();
  const std::size_t size = weights.size();
  const FockScatterTable table(size - 1, M);

  std::vector<double> out(size, 0.0);
  const auto count = static_cast<long long>(size);
#pragma omp parallel for schedule(dynamic, 16)
  for (long long i = 0; i < count; ++i) {
    const auto n = static_cast<std::size_t>(i);
    double acc = 0.0;
    for (std::size_t N = n; N < size; ++N) {
      if (weights[N] == 0.0) continue;
      acc += weights[N] * table(N, n);
    }
    out[n] = acc;
  }
  return Pmf(std::move(out), input.tail_mass());
}

namespace reference {

Pmf scatter_pmf_serial(const Pmf& input, std::uint64_t M) {
  require_M(M);
  const auto weights = input.probs();
  const std::size_t size = weights.size();
  const FockScatterTable table(size - 1, M);
  std::vector<double> out(size, 0.0);
  for (std::size_t N = 0; N < size; ++N) {
    if (weights[N] == 0.0) continue;
    for (std::size_t n = 0; n <= N; ++n) out[n] += weights[N] * table(N, n);
  }
  return Pmf(std::move(out), input.tail_mass());
}

}  // namespace reference

double second_moment_out(const Pmf& input, std::uint64_t M) {
  require_M(M);
  double mean = 0.0;
  double square = 0.0;
  const auto probs = input.probs();
  for (std::size_t N = 1; N < probs.size(); ++N) {
    const double dn = static_cast<double>(N);
    mean += dn * probs[N];
    square += dn * dn * probs[N];
  }
  const double m = static_cast<double>(M);
  return (2.0 * square + mean * (m - 1.0)) / (m * (m + 1.0));
}

CorrelationReport correlation_report(const Pmf& p, int order) {
  if (order < 2) throw Error(ErrorKind::InvalidArgument, "order must be >= 2");
  CorrelationReport report;
  report.order = order;
  report.dropped_tail = p.tail_mass();
  report.factorial_moments.assign(static_cast<std::size_t>(order), 0.0);

  const auto probs = p.probs();
  for (std::size_t n = 1; n < probs.size(); ++n) {
    if (probs[n] == 0.0) continue;
    double falling = 1.0;
    for (int k = 1; k <= order && static_cast<std::size_t>(k) <= n; ++k) {
      falling *= static_cast<double>(n - static_cast<std::size_t>(k) + 1);
      report.factorial_moments[static_cast<std::size_t>(k - 1)] += probs[n] * falling;
    }
  }
  report.mean = report.factorial_moments[0];
  if (report.mean <= 0.0) throw Error(ErrorKind::ZeroMean, "g^(n) undefined for zero mean");
  for (int k = 2; k <= order; ++k)
    report.g.push_back(report.fm(k) / std::pow(report.mean, k));
  return report;
}

double g2_out_predicted(double g2_in, std::uint64_t M) {
  require_M(M);
  const double m = static_cast<double>(M);
  return 2.0 * g2_in * m / (m + 1.0);
}

double g3_out_predicted(double g3_in, std::uint64_t M) {
  require_M(M);
  const double m = static_cast<double>(M);
  return 6.0 * g3_in * m * m / (m * m + 3.0 * m + 2.0);
}

Pmf cascade_pmf(const Pmf& input, std::uint64_t M, std::uint32_t k) {
  if (k < 1) throw Error(ErrorKind::InvalidArgument, "cascade depth must be >= 1");
  const std::vector<std::uint64_t> Ms(k, M);
  return cascade_pmf(input, Ms);
}

Pmf cascade_pmf(const Pmf& input, std::span<const std::uint64_t> Ms) {
  if (Ms.empty()) throw Error(ErrorKind::InvalidArgument, "cascade needs at least one stage");
  Pmf current = input;
  for (const auto M : Ms) current = scatter_pmf(current, M);
  return current;
}

}  // namespace rgg

#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "rgg/core.hpp"

namespace rgg {

/// SplitMix64 stream. Every frame of a run owns an independent stream
/// derived from (seed, frame index), so results do not depend on how frames
/// are scheduled across threads.
class RandomStream {
 public:
  using result_type = std::uint64_t;

  explicit RandomStream(std::uint64_t state) : state_(state) {}
  static RandomStream for_frame(std::uint64_t seed, std::uint64_t frame);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform integer in [0, bound) (Lemire's multiply-and-reject).
  std::uint64_t below(std::uint64_t bound);
  /// Uniform double in [0, 1) with 53 random bits.
  double uniform();

 private:
  std::uint64_t state_;
};

struct MCConfig {
  InputStateSpec input = Fock{0};
  std::uint64_t M = 1;
  std::uint64_t frames = 1;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Number of jackknife blocks used for a run of `frames` frames.
std::size_t block_count(std::uint64_t frames);

/// Occupation numbers (n_1..n_M), sum N, uniform over all
/// C(N + M - 1, M - 1) weak compositions. Draws the K = min(N, M - 1)
/// positions of the rarer symbol (stars or bars) among N + M - 1 slots with
/// Floyd's algorithm, sorts them and decodes the gaps.
std::vector<std::uint64_t> sample_configuration(std::uint64_t N, std::uint64_t M,
                                                RandomStream& stream);

/// Per frame: draw N from the input pmf (renormalized over its stored
/// support), draw a configuration, record pixel 0. Parallel over blocks.
MCRunResult run_mc(const MCConfig& cfg);

/// Histogram of full configurations indexed by composition_rank, for
/// uniformity testing. Requires C(N + M - 1, M - 1) <= 10^7.
std::vector<std::uint64_t> configuration_histogram(std::uint64_t N, std::uint64_t M,
                                                   std::uint64_t frames, std::uint64_t seed);

/// Rank of a weak composition in [0, C(N + M - 1, M - 1)) via the
/// combinatorial number system on its bar positions.
std::uint64_t composition_rank(std::span<const std::uint64_t> occupation);

Pmf empirical_pmf(const MCRunResult& r);

struct EmpiricalReport {
  CorrelationReport report;
  std::vector<double> g_stderr;  // jackknife standard error, index 0 holds n = 2
  std::size_t blocks = 0;
};

/// Empirical g^(n) with jackknife standard errors over the run's blocks.
EmpiricalReport empirical_report(const MCRunResult& r, int order);

struct ChiSquareResult {
  double statistic = 0.0;
  double dof = 0.0;
  double p_value = 0.0;
};

/// Pearson chi-square of `counts` against the uniform distribution.
ChiSquareResult chi_square_uniform(std::span<const std::uint64_t> counts);

}  // namespace rgg

#include "rgg/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/math/distributions/chi_squared.hpp>

#include "rgg/inputs.hpp"
#include "rgg/reference.hpp"
#include "rgg/transform.hpp"

namespace rgg {

namespace {

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Sorted K distinct positions out of [0, S) (Floyd). `out` is reused.
void draw_positions(std::uint64_t S, std::uint64_t K, RandomStream& stream,
                    std::vector<std::uint64_t>& out) {
  out.clear();
  for (std::uint64_t j = S - K; j < S; ++j) {
    const std::uint64_t t = stream.below(j + 1);
    auto it = std::lower_bound(out.begin(), out.end(), t);
    if (it != out.end() && *it == t) {
      // j is larger than everything chosen so far
      out.push_back(j);
    } else {
      out.insert(it, t);
    }
  }
}

bool bars_mode(std::uint64_t N, std::uint64_t M) { return M - 1 <= N; }

// Draws one configuration's marker positions; returns whether they are bars.
bool draw_configuration(std::uint64_t N, std::uint64_t M, RandomStream& stream,
                        std::vector<std::uint64_t>& positions) {
  const bool bars = bars_mode(N, M);
  const std::uint64_t K = bars ? M - 1 : N;
  draw_positions(N + M - 1, K, stream, positions);
  return bars;
}

std::uint64_t pixel0(std::uint64_t N, bool bars, const std::vector<std::uint64_t>& positions) {
  if (bars) return positions.empty() ? N : positions.front();
  std::uint64_t count = 0;
  while (count < positions.size() && positions[count] == count) ++count;
  return count;
}

struct InputSampler {
  std::vector<double> cdf;

  explicit InputSampler(const Pmf& p) : cdf(p.probs().begin(), p.probs().end()) {
    std::partial_sum(cdf.begin(), cdf.end(), cdf.begin());
  }

  std::uint64_t operator()(RandomStream& stream) const {
    const double u = stream.uniform() * cdf.back();
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    const auto idx = static_cast<std::size_t>(it - cdf.begin());
    return std::min(idx, cdf.size() - 1);
  }
};

std::uint64_t block_begin(std::uint64_t frames, std::size_t blocks, std::size_t b) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(frames) * b / blocks);
}

void run_block(const MCConfig& cfg, const InputSampler& sampler, std::size_t blocks,
               std::size_t b, std::vector<std::uint64_t>& hist) {
  std::vector<std::uint64_t> positions;
  const std::uint64_t lo = block_begin(cfg.frames, blocks, b);
  const std::uint64_t hi = block_begin(cfg.frames, blocks, b + 1);
  for (std::uint64_t f = lo; f < hi; ++f) {
    RandomStream stream = RandomStream::for_frame(cfg.seed, f);
    const std::uint64_t N = sampler(stream);
    const bool bars = draw_configuration(N, cfg.M, stream, positions);
    ++hist[pixel0(N, bars, positions)];
  }
}

MCRunResult make_result(const MCConfig& cfg, std::size_t width, std::size_t blocks) {
  MCRunResult r;
  r.frames = cfg.frames;
  r.seed = cfg.seed;
  r.M = cfg.M;
  r.histogram.assign(width, 0);
  r.block_histograms.assign(blocks, std::vector<std::uint64_t>(width, 0));
  return r;
}

void merge_blocks(MCRunResult& r) {
  for (const auto& block : r.block_histograms)
    for (std::size_t n = 0; n < block.size(); ++n) r.histogram[n] += block[n];
}

double binomial_u64(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0.0;
  k = std::min(k, n - k);
  double r = 1.0;
  for (std::uint64_t j = 1; j <= k; ++j) r = r * static_cast<double>(n - k + j) / static_cast<double>(j);
  return std::round(r);
}

std::vector<double> g_from_counts(const std::vector<double>& counts, int order) {
  double total = 0.0;
  std::vector<double> fm(static_cast<std::size_t>(order), 0.0);
  for (std::size_t n = 0; n < counts.size(); ++n) {
    total += counts[n];
    double falling = 1.0;
    for (int k = 1; k <= order && static_cast<std::size_t>(k) <= n; ++k) {
      falling *= static_cast<double>(n - static_cast<std::size_t>(k) + 1);
      fm[static_cast<std::size_t>(k - 1)] += counts[n] * falling;
    }
  }
  std::vector<double> g;
  const double mean = fm[0] / total;
  if (!(mean > 0.0)) throw Error(ErrorKind::ZeroMean, "jackknife sample has zero mean");
  for (int k = 2; k <= order; ++k)
    g.push_back(fm[static_cast<std::size_t>(k - 1)] / total / std::pow(mean, k));
  return g;
}

}  // namespace

RandomStream RandomStream::for_frame(std::uint64_t seed, std::uint64_t frame) {
  return RandomStream(mix64(seed ^ mix64(frame + 0x9e3779b97f4a7c15ULL)));
}

std::uint64_t RandomStream::below(std::uint64_t bound) {
  if (bound == 0) throw Error(ErrorKind::InvalidArgument, "empty range");
  unsigned __int128 m = static_cast<unsigned __int128>((*this)()) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      m = static_cast<unsigned __int128>((*this)()) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

double RandomStream::uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

void MCConfig::validate() const {
  if (M < 1) throw Error(ErrorKind::InvalidArgument, "M must be >= 1");
  if (frames < 1) throw Error(ErrorKind::InvalidArgument, "frames must be >= 1");
  rgg::validate(input);
}

std::size_t block_count(std::uint64_t frames) {
  return static_cast<std::size_t>(std::min<std::uint64_t>(frames, 100));
}

std::vector<std::uint64_t> sample_configuration(std::uint64_t N, std::uint64_t M,
                                                RandomStream& stream) {
  if (M < 1) throw Error(ErrorKind::InvalidArgument, "M must be >= 1");
  std::vector<std::uint64_t> occupation(M, 0);
  std::vector<std::uint64_t> positions;
  const bool bars = draw_configuration(N, M, stream, positions);
  if (bars) {
    std::uint64_t prev = 0;
    for (std::size_t i = 0; i < positions.size(); ++i) {
      occupation[i] = positions[i] - prev;
      prev = positions[i] + 1;
    }
    occupation[M - 1] = N + M - 1 - prev;
  } else {
    for (std::size_t i = 0; i < positions.size(); ++i) ++occupation[positions[i] - i];
  }
  return occupation;
}

MCRunResult run_mc(const MCConfig& cfg) {
  cfg.validate();
  const Pmf input = input_pmf(cfg.input);
  const InputSampler sampler(input);
  const std::size_t blocks = block_count(cfg.frames);
  MCRunResult r = make_result(cfg, input.size(), blocks);
  const auto count = static_cast<long long>(blocks);
#pragma omp parallel for schedule(dynamic, 1)
  for (long long b = 0; b < count; ++b)
    run_block(cfg, sampler, blocks, static_cast<std::size_t>(b),
              r.block_histograms[static_cast<std::size_t>(b)]);
  merge_blocks(r);
  return r;
}

namespace reference {

MCRunResult run_mc_serial(const MCConfig& cfg) {
  cfg.validate();
  const Pmf input = input_pmf(cfg.input);
  const InputSampler sampler(input);
  const std::size_t blocks = block_count(cfg.frames);
  MCRunResult r = make_result(cfg, input.size(), blocks);
  for (std::size_t b = 0; b < blocks; ++b) run_block(cfg, sampler, blocks, b, r.block_histograms[b]);
  merge_blocks(r);
  return r;
}

}  // namespace reference

std::uint64_t composition_rank(std::span<const std::uint64_t> occupation) {
  std::uint64_t rank = 0;
  std::uint64_t position = 0;
  for (std::size_t i = 0; i + 1 < occupation.size(); ++i) {
    position += occupation[i];
    rank += static_cast<std::uint64_t>(binomial_u64(position, i + 1));
    ++position;  // the bar itself
  }
  return rank;
}

std::vector<std::uint64_t> configuration_histogram(std::uint64_t N, std::uint64_t M,
                                                   std::uint64_t frames, std::uint64_t seed) {
  if (M < 1) throw Error(ErrorKind::InvalidArgument, "M must be >= 1");
  const double cells = binomial_u64(N + M - 1, M - 1);
  if (cells > 1e7) throw Error(ErrorKind::OutOfRange, "too many configurations to histogram");
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(cells), 0);
  for (std::uint64_t f = 0; f < frames; ++f) {
    RandomStream stream = RandomStream::for_frame(seed, f);
    const auto occupation = sample_configuration(N, M, stream);
    ++counts[composition_rank(occupation)];
  }
  return counts;
}

Pmf empirical_pmf(const MCRunResult& r) {
  std::vector<double> probs(r.histogram.size());
  for (std::size_t n = 0; n < probs.size(); ++n)
    probs[n] = static_cast<double>(r.histogram[n]) / static_cast<double>(r.frames);
  return Pmf(std::move(probs), 0.0);
}

EmpiricalReport empirical_report(const MCRunResult& r, int order) {
  EmpiricalReport out;
  out.report = correlation_report(empirical_pmf(r), order);
  out.blocks = r.block_histograms.size();
  const std::size_t B = out.blocks;
  out.g_stderr.assign(static_cast<std::size_t>(order - 1), 0.0);
  if (B < 2) return out;

  std::vector<std::vector<double>> leave_out;
  leave_out.reserve(B);
  std::vector<double> counts(r.histogram.size());
  for (std::size_t b = 0; b < B; ++b) {
    for (std::size_t n = 0; n < counts.size(); ++n)
      counts[n] = static_cast<double>(r.histogram[n] - r.block_histograms[b][n]);
    leave_out.push_back(g_from_counts(counts, order));
  }
  for (std::size_t k = 0; k < out.g_stderr.size(); ++k) {
    double mean = 0.0;
    for (const auto& g : leave_out) mean += g[k];
    mean /= static_cast<double>(B);
    double ss = 0.0;
    for (const auto& g : leave_out) ss += (g[k] - mean) * (g[k] - mean);
    out.g_stderr[k] = std::sqrt(static_cast<double>(B - 1) / static_cast<double>(B) * ss);
  }
  return out;
}

ChiSquareResult chi_square_uniform(std::span<const std::uint64_t> counts) {
  if (counts.size() < 2) throw Error(ErrorKind::InvalidArgument, "need at least two cells");
  const double total = static_cast<double>(std::accumulate(counts.begin(), counts.end(), std::uint64_t{0}));
  const double expected = total / static_cast<double>(counts.size());
  ChiSquareResult res;
  for (const auto c : counts) {
    const double d = static_cast<double>(c) - expected;
    res.statistic += d * d / expected;
  }
  res.dof = static_cast<double>(counts.size() - 1);
  const boost::math::chi_squared dist(res.dof);
  res.p_value = boost::math::cdf(boost::math::complement(dist, res.statistic));
  return res;
}

}  // namespace rgg

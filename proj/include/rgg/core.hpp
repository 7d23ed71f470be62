#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace rgg {

/// Failure categories raised by the engine. The CLI maps them to exit codes.
enum class ErrorKind {
  InvalidPmf,
  InvalidArgument,
  TailTooHeavy,
  ZeroMass,
  ZeroMean,
  OutOfRange,
  UnstableEvaluation,
  DimTooSmall,
  NormalizationFailure,
  NegativeProbability,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Tolerance on |sum(probs) + tail_mass - 1| accepted by the Pmf constructor.
inline constexpr double kNormTolerance = 1e-9;
/// Truncation target for infinite-support distributions.
inline constexpr double kTruncationTail = 1e-12;
/// Hard cap on the highest photon number kept for infinite-support inputs.
inline constexpr std::size_t kMaxSupport = 4096;
/// pmf_mean refuses pmfs whose truncated tail is at least this heavy.
inline constexpr double kMeanTailLimit = 1e-6;

/// Photon-number probability mass function on n = 0..n_max plus the
/// probability mass truncated beyond n_max.
///
/// Immutable once built. The constructor validates and never renormalizes.
class Pmf {
 public:
  Pmf();  // vacuum
  explicit Pmf(std::vector<double> probs, double tail_mass = 0.0);

  std::span<const double> probs() const noexcept { return probs_; }
  double tail_mass() const noexcept { return tail_mass_; }
  std::size_t size() const noexcept { return probs_.size(); }
  std::size_t n_max() const noexcept { return probs_.size() - 1; }

  /// p_n, zero beyond the stored support.
  double operator[](std::size_t n) const noexcept {
    return n < probs_.size() ? probs_[n] : 0.0;
  }

  bool operator==(const Pmf&) const = default;

 private:
  std::vector<double> probs_;
  double tail_mass_ = 0.0;
};

double pmf_mean(const Pmf& p);
Pmf pmf_normalize(const Pmf& p);

/// Weighted mixture sum_i w_i p_i (weights need not be normalized by the
/// caller, but the result must satisfy the Pmf invariants).
Pmf pmf_mixture(std::span<const double> weights, std::span<const Pmf> parts);

/// Half the L1 distance between two pmfs over the union of their supports.
double total_variation(const Pmf& a, const Pmf& b);

struct Fock {
  std::uint64_t N = 0;
};
struct Coherent {
  double mean = 0.0;
};
struct Thermal {
  double mean = 0.0;
};
struct SqueezedCoherent {
  double alpha_mag = 0.0;
  double alpha_phase = 0.0;  // radians
  double r = 0.0;
  double theta = 0.0;  // radians, xi = r e^{i theta}
};
struct Custom {
  Pmf pmf;
};

using InputStateSpec = std::variant<Fock, Coherent, Thermal, SqueezedCoherent, Custom>;

/// Throws InvalidArgument when parameters are out of range.
void validate(const InputStateSpec& spec);
std::string describe(const InputStateSpec& spec);

struct ScatterParams {
  std::uint64_t M = 1;       // independent fluctuation units
  std::uint32_t stages = 1;  // cascade depth

  void validate() const;
};

/// Mean, normally ordered moments <a^+n a^n> and g^(n) of a pmf.
struct CorrelationReport {
  int order = 2;
  double mean = 0.0;
  std::vector<double> factorial_moments;  // index 0 holds n = 1
  std::vector<double> g;                  // index 0 holds n = 2
  double dropped_tail = 0.0;              // tail mass excluded from the sums

  double fm(int n) const { return factorial_moments.at(static_cast<std::size_t>(n - 1)); }
  double gn(int n) const { return g.at(static_cast<std::size_t>(n - 2)); }
};

/// Pixel-0 histogram of a Monte Carlo run, plus per-block histograms used
/// for jackknife error bars.
struct MCRunResult {
  std::vector<std::uint64_t> histogram;
  std::vector<std::vector<std::uint64_t>> block_histograms;
  std::uint64_t frames = 0;
  std::uint64_t seed = 0;
  std::uint64_t M = 1;

  bool operator==(const MCRunResult&) const = default;
};

}  // namespace rgg

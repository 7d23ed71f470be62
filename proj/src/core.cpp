#include "rgg/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace rgg {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidPmf: return "InvalidPmf";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::TailTooHeavy: return "TailTooHeavy";
    case ErrorKind::ZeroMass: return "ZeroMass";
    case ErrorKind::ZeroMean: return "ZeroMean";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::UnstableEvaluation: return "UnstableEvaluation";
    case ErrorKind::DimTooSmall: return "DimTooSmall";
    case ErrorKind::NormalizationFailure: return "NormalizationFailure";
    case ErrorKind::NegativeProbability: return "NegativeProbability";
  }
  return "Unknown";
}

Pmf::Pmf() : probs_{1.0} {}

Pmf::Pmf(std::vector<double> probs, double tail_mass)
    : probs_(std::move(probs)), tail_mass_(tail_mass) {
  if (probs_.empty()) throw Error(ErrorKind::InvalidPmf, "empty probability vector");
  if (!(tail_mass_ >= 0.0) || !std::isfinite(tail_mass_))
    throw Error(ErrorKind::InvalidPmf, "tail_mass must be finite and >= 0");
  for (std::size_t n = 0; n < probs_.size(); ++n) {
    if (!(probs_[n] >= 0.0) || !std::isfinite(probs_[n])) {
      std::ostringstream os;
      os << "p[" << n << "] = " << probs_[n] << " is not a probability";
      throw Error(ErrorKind::InvalidPmf, os.str());
    }
  }
  const double total = std::accumulate(probs_.begin(), probs_.end(), 0.0) + tail_mass_;
  if (std::abs(total - 1.0) > kNormTolerance) {
    std::ostringstream os;
    os.precision(17);
    os << "sum(probs) + tail_mass = " << total << " is not 1 within " << kNormTolerance;
    throw Error(ErrorKind::InvalidPmf, os.str());
  }
}

double pmf_mean(const Pmf& p) {
  if (p.tail_mass() >= kMeanTailLimit) {
    std::ostringstream os;
    os << "tail_mass " << p.tail_mass() << " >= " << kMeanTailLimit;
    throw Error(ErrorKind::TailTooHeavy, os.str());
  }
  double mean = 0.0;
  const auto probs = p.probs();
  for (std::size_t n = 1; n < probs.size(); ++n) mean += static_cast<double>(n) * probs[n];
  return mean;
}

Pmf pmf_normalize(const Pmf& p) {
  const auto probs = p.probs();
  const double total = std::accumulate(probs.begin(), probs.end(), 0.0);
  if (total <= 0.0) throw Error(ErrorKind::ZeroMass, "all probabilities are zero");
  std::vector<double> out(probs.begin(), probs.end());
  for (auto& v : out) v /= total;
  return Pmf(std::move(out), 0.0);
}

Pmf pmf_mixture(std::span<const double> weights, std::span<const Pmf> parts) {
  if (weights.size() != parts.size())
    throw Error(ErrorKind::InvalidArgument, "mixture weights and parts differ in length");
  std::size_t len = 1;
  for (const auto& part : parts) len = std::max(len, part.size());
  std::vector<double> out(len, 0.0);
  double tail = 0.0;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const auto probs = parts[i].probs();
    for (std::size_t n = 0; n < probs.size(); ++n) out[n] += weights[i] * probs[n];
    tail += weights[i] * parts[i].tail_mass();
  }
  return Pmf(std::move(out), tail);
}

double total_variation(const Pmf& a, const Pmf& b) {
  const std::size_t len = std::max(a.size(), b.size());
  double acc = 0.0;
  for (std::size_t n = 0; n < len; ++n) acc += std::abs(a[n] - b[n]);
  return 0.5 * acc;
}

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw Error(ErrorKind::InvalidArgument, msg);
}

struct Validator {
  void operator()(const Fock&) const {}
  void operator()(const Coherent& c) const {
    require(std::isfinite(c.mean) && c.mean >= 0.0, "coherent mean must be >= 0");
  }
  void operator()(const Thermal& t) const {
    require(std::isfinite(t.mean) && t.mean >= 0.0, "thermal mean must be >= 0");
  }
  void operator()(const SqueezedCoherent& s) const {
    require(std::isfinite(s.alpha_mag) && s.alpha_mag >= 0.0, "alpha_mag must be >= 0");
    require(std::isfinite(s.r) && s.r >= 0.0, "squeezing r must be >= 0");
    require(std::isfinite(s.alpha_phase) && std::isfinite(s.theta), "phases must be finite");
  }
  void operator()(const Custom&) const {}  // Pmf validates itself on construction
};

struct Describer {
  std::string operator()(const Fock& f) const { return "fock(N=" + std::to_string(f.N) + ")"; }
  std::string operator()(const Coherent& c) const {
    std::ostringstream os;
    os << "coherent(mean=" << c.mean << ")";
    return os.str();
  }
  std::string operator()(const Thermal& t) const {
    std::ostringstream os;
    os << "thermal(mean=" << t.mean << ")";
    return os.str();
  }
  std::string operator()(const SqueezedCoherent& s) const {
    std::ostringstream os;
    os << "squeezed(alpha_mag=" << s.alpha_mag << ", alpha_phase=" << s.alpha_phase
       << ", r=" << s.r << ", theta=" << s.theta << ")";
    return os.str();
  }
  std::string operator()(const Custom& c) const {
    return "custom(n_max=" + std::to_string(c.pmf.n_max()) + ")";
  }
};

}  // namespace

void validate(const InputStateSpec& spec) { std::visit(Validator{}, spec); }

std::string describe(const InputStateSpec& spec) { return std::visit(Describer{}, spec); }

void ScatterParams::validate() const {
  require(M >= 1, "M must be >= 1");
  require(stages >= 1, "stages must be >= 1");
}

}  // namespace rgg

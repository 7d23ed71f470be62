#include "rgg/inputs.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>
#include <boost/math/distributions/negative_binomial.hpp>
#include <boost/math/special_functions/gamma.hpp>

namespace rgg {

namespace {

using cplx = std::complex<double>;

// Factorial moments up to this order are kept within kTruncationTail
// (relative) of their untruncated values.
constexpr unsigned kGuardedMomentOrder = 3;

// Sum-and-clamp helper for generators that produce a pmf plus an analytic tail.
Pmf finish(std::vector<double> probs, double tail) {
  return Pmf(std::move(probs), std::max(0.0, tail));
}

}  // namespace

double SqueezedParams::expected_mean() const {
  const double s = std::sinh(r);
  return alpha_mag * alpha_mag + s * s;
}

Pmf fock_pmf(std::uint64_t N) {
  if (N > (std::uint64_t{1} << 26))
    throw Error(ErrorKind::OutOfRange, "Fock photon number too large for a dense pmf");
  std::vector<double> probs(static_cast<std::size_t>(N) + 1, 0.0);
  probs.back() = 1.0;
  return Pmf(std::move(probs), 0.0);
}

Pmf poisson_pmf(double mean, std::size_t n_max) {
  if (!(mean >= 0.0) || !std::isfinite(mean))
    throw Error(ErrorKind::InvalidArgument, "Poisson mean must be >= 0");
  if (mean == 0.0) {
    std::vector<double> probs(n_max + 1, 0.0);
    probs[0] = 1.0;
    return Pmf(std::move(probs), 0.0);
  }
  std::vector<double> probs(n_max + 1);
  const double log_mean = std::log(mean);
  for (std::size_t n = 0; n <= n_max; ++n) {
    const double dn = static_cast<double>(n);
    probs[n] = std::exp(-mean + dn * log_mean - std::lgamma(dn + 1.0));
  }
  // P(X > n_max) = P(n_max + 1, mean), the regularized lower incomplete gamma.
  const double tail = boost::math::gamma_p(static_cast<double>(n_max) + 1.0, mean);
  return finish(std::move(probs), tail);
}

Pmf poisson_pmf(double mean) {
  if (!(mean >= 0.0) || !std::isfinite(mean))
    throw Error(ErrorKind::InvalidArgument, "Poisson mean must be >= 0");
  if (mean == 0.0) return Pmf();
  // The share of the k-th factorial moment lost above n is P(X > n - k).
  auto dropped = [mean](std::size_t n, unsigned k) {
    return n < k ? 1.0 : boost::math::gamma_p(static_cast<double>(n - k) + 1.0, mean);
  };
  std::size_t n = static_cast<std::size_t>(std::floor(mean));
  while (n < kMaxSupport && (dropped(n, 0) >= kTruncationTail || dropped(n, kGuardedMomentOrder) >= kTruncationTail))
    ++n;
  return poisson_pmf(mean, std::min(n, kMaxSupport));
}

Pmf thermal_pmf(double mean) {
  if (!(mean >= 0.0) || !std::isfinite(mean))
    throw Error(ErrorKind::InvalidArgument, "thermal mean must be >= 0");
  if (mean == 0.0) return Pmf();
  const double q = mean / (1.0 + mean);
  const double log_q = std::log(q);
  // Tail after n is q^{n+1}. The share of the k-th factorial moment lost
  // above n is P(Y > n - k) for Y negative binomial with k + 1 successes.
  const boost::math::negative_binomial_distribution<double> nb(kGuardedMomentOrder + 1, 1.0 - q);
  auto moment_dropped = [&](std::size_t n) {
    return n < kGuardedMomentOrder ? 1.0
                                   : boost::math::cdf(boost::math::complement(nb, static_cast<double>(n - kGuardedMomentOrder)));
  };
  std::size_t n = 0;
  while (n < kMaxSupport && ((static_cast<double>(n) + 1.0) * log_q >= std::log(kTruncationTail) ||
                             moment_dropped(n) >= kTruncationTail))
    ++n;
  n = std::min(n, kMaxSupport);
  std::vector<double> probs(n + 1);
  const double norm = 1.0 / (1.0 + mean);
  for (std::size_t k = 0; k <= n; ++k) probs[k] = norm * std::exp(static_cast<double>(k) * log_q);
  const double tail = std::exp((static_cast<double>(n) + 1.0) * log_q);
  return finish(std::move(probs), tail);
}

Pmf squeezed_coherent_pmf(const SqueezedParams& sp) {
  validate(InputStateSpec{SqueezedCoherent{sp.alpha_mag, sp.alpha_phase, sp.r, sp.theta}});

  const cplx alpha = std::polar(sp.alpha_mag, sp.alpha_phase);
  const cplx e_theta = std::polar(1.0, sp.theta);
  const double ch = std::cosh(sp.r);
  const double sh = std::sinh(sp.r);
  const double th = std::tanh(sp.r);
  const cplx gamma = alpha * ch + std::conj(alpha) * e_theta * sh;
  const cplx e_sh = e_theta * sh;

  const cplx log_c0 = -0.5 * std::norm(alpha) - 0.5 * std::conj(alpha) * std::conj(alpha) * e_theta * th -
                      0.5 * std::log(ch);
  double log_scale = log_c0.real();
  cplx prev{0.0, 0.0};
  cplx cur = std::polar(1.0, log_c0.imag());

  std::vector<double> probs;
  probs.reserve(64);
  double cumulative = 0.0;
  for (std::size_t n = 0;; ++n) {
    const double p = std::norm(cur) * std::exp(2.0 * log_scale);
    if (!std::isfinite(p)) {
      std::ostringstream os;
      os << "non-finite amplitude at n = " << n;
      throw Error(ErrorKind::UnstableEvaluation, os.str());
    }
    probs.push_back(p);
    cumulative += p;
    if (cumulative > 1.0 + kNormTolerance) {
      std::ostringstream os;
      os.precision(17);
      os << "accumulated norm " << cumulative << " exceeds 1 at n = " << n;
      throw Error(ErrorKind::UnstableEvaluation, os.str());
    }
    if (1.0 - cumulative < kTruncationTail || n == kMaxSupport) break;

    const double dn = static_cast<double>(n);
    cplx next = (gamma * cur - e_sh * std::sqrt(dn) * prev) / (ch * std::sqrt(dn + 1.0));
    prev = cur;
    cur = next;
    const double s = std::max(std::abs(prev), std::abs(cur));
    if (s == 0.0) {
      std::ostringstream os;
      os << "amplitudes vanished at n = " << n + 1 << " with norm " << cumulative;
      throw Error(ErrorKind::UnstableEvaluation, os.str());
    }
    if (s > 1e64 || s < 1e-64) {
      prev /= s;
      cur /= s;
      log_scale += std::log(s);
    }
  }
  return finish(std::move(probs), 1.0 - cumulative);
}

std::size_t recommended_oracle_dim(const SqueezedParams& sp) {
  const double mean = sp.expected_mean();
  double dim = mean + 10.0 * std::sqrt(mean) + 20.0;
  // squeezed-vacuum populations fall off like tanh(r)^n
  if (sp.r > 0.0) dim += std::log(1e-14) / std::log(std::tanh(sp.r));
  return static_cast<std::size_t>(std::ceil(dim));
}

Pmf squeezed_oracle_pmf(const SqueezedParams& sp, std::size_t dim) {
  validate(InputStateSpec{SqueezedCoherent{sp.alpha_mag, sp.alpha_phase, sp.r, sp.theta}});
  if (dim < 2) throw Error(ErrorKind::DimTooSmall, "oracle basis needs at least 2 states");

  using Mat = Eigen::MatrixXcd;
  const auto d = static_cast<Eigen::Index>(dim);
  Mat a = Mat::Zero(d, d);
  for (Eigen::Index n = 1; n < d; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  const Mat ad = a.adjoint();

  const cplx xi = std::polar(sp.r, sp.theta);
  const cplx alpha = std::polar(sp.alpha_mag, sp.alpha_phase);
  const Mat squeeze_gen = 0.5 * (std::conj(xi) * (a * a) - xi * (ad * ad));
  const Mat displace_gen = alpha * ad - std::conj(alpha) * a;

  Eigen::VectorXcd state = Eigen::VectorXcd::Zero(d);
  state(0) = 1.0;
  const Mat squeeze = squeeze_gen.exp();
  state = squeeze * state;
  const Mat displace = displace_gen.exp();
  state = displace * state;

  // Parity makes every other amplitude of a squeezed vacuum exactly zero, so
  // inspect the top two levels.
  const double top = std::max(std::norm(state(d - 1)), std::norm(state(d - 2)));
  if (top > 1e-12) {
    std::ostringstream os;
    os << "dim = " << dim << " leaves |amplitude|^2 = " << top << " at the top of the basis";
    throw Error(ErrorKind::DimTooSmall, os.str());
  }

  std::vector<double> probs(dim);
  double total = 0.0;
  for (Eigen::Index n = 0; n < d; ++n) {
    probs[static_cast<std::size_t>(n)] = std::norm(state(n));
    total += probs[static_cast<std::size_t>(n)];
  }
  // The truncated evolution is unitary up to rounding; whatever is missing is
  // reported as tail.
  return finish(std::move(probs), 1.0 - total);
}

namespace {

struct InputDispatch {
  Pmf operator()(const Fock& f) const { return fock_pmf(f.N); }
  Pmf operator()(const Coherent& c) const { return poisson_pmf(c.mean); }
  Pmf operator()(const Thermal& t) const { return thermal_pmf(t.mean); }
  Pmf operator()(const SqueezedCoherent& s) const {
    return squeezed_coherent_pmf(SqueezedParams{s.alpha_mag, s.alpha_phase, s.r, s.theta});
  }
  Pmf operator()(const Custom& c) const { return c.pmf; }
};

}  // namespace

Pmf input_pmf(const InputStateSpec& spec) {
  validate(spec);
  return std::visit(InputDispatch{}, spec);
}

}  // namespace rgg

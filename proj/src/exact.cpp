#include "rgg/exact.hpp"

#include <cmath>
#include <sstream>

namespace rgg {

double ratio_to_double(const mpz_class& num, const mpz_class& den) {
  if (sgn(den) == 0) throw Error(ErrorKind::InvalidArgument, "zero denominator");
  if (sgn(num) == 0) return 0.0;
  long num_exp = 0;
  long den_exp = 0;
  const double num_mant = mpz_get_d_2exp(&num_exp, num.get_mpz_t());
  const double den_mant = mpz_get_d_2exp(&den_exp, den.get_mpz_t());
  return std::ldexp(num_mant / den_mant, static_cast<int>(num_exp - den_exp));
}

mpq_class ExactPmf::at(std::size_t n) const {
  mpq_class q(numerators.at(n), denominator);
  q.canonicalize();
  return q;
}

bool ExactPmf::sums_to_one() const {
  mpz_class total = 0;
  for (const auto& v : numerators) total += v;
  return total == denominator;
}

bool ExactPmf::has_negative() const { return first_negative() != size(); }

std::size_t ExactPmf::first_negative() const {
  for (std::size_t n = 0; n < numerators.size(); ++n)
    if (sgn(numerators[n]) < 0) return n;
  return numerators.size();
}

mpz_class ExactPmf::factorial_moment_numerator(unsigned k) const {
  mpz_class total = 0;
  mpz_class falling;
  for (std::size_t n = k; n < numerators.size(); ++n) {
    falling = 1;
    for (unsigned i = 0; i < k; ++i) falling *= static_cast<unsigned long>(n - i);
    total += falling * numerators[n];
  }
  return total;
}

std::vector<double> ExactPmf::to_doubles() const {
  std::vector<double> out(numerators.size());
  for (std::size_t n = 0; n < numerators.size(); ++n)
    out[n] = ratio_to_double(numerators[n], denominator);
  return out;
}

Pmf ExactPmf::to_pmf() const {
  if (const auto n = first_negative(); n != size()) {
    std::ostringstream os;
    os << "entry n = " << n << " is negative (" << ratio_to_double(numerators[n], denominator)
       << ")";
    throw Error(ErrorKind::NegativeProbability, os.str());
  }
  return Pmf(to_doubles(), 0.0);
}

}  // namespace rgg

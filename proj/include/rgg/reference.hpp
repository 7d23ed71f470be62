#pragma once

// Serial reference kernels. They define the expected output of the OpenMP
// kernels and are used by the tests and the benchmark.

#include <cstdint>

#include "rgg/core.hpp"
#include "rgg/exact.hpp"

namespace rgg {
struct MCConfig;
}

namespace rgg::reference {

Pmf scatter_pmf_serial(const Pmf& input, std::uint64_t M);

ExactPmf fock_pn_limit_exact_serial(std::uint64_t N, std::uint64_t M);

MCRunResult run_mc_serial(const MCConfig& cfg);

}  // namespace rgg::reference

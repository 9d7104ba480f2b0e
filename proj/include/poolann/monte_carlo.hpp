#pragma once

#include <cstdint>
#include <vector>

#include "poolann/enumeration.hpp"
#include "poolann/fairness.hpp"
#include "poolann/hetero_gsa.hpp"

namespace poolann {

struct SimConfig {
    HeterogeneousFund fund;
    std::uint64_t replications = 0;
    std::uint64_t seed = 0;
    int threads = 1;
};

// Raw sampling summary. Replications are processed in fixed-size batches
// whose partial sums are combined in batch order, so every statistic here is
// bitwise independent of the thread count.
struct MonteCarloDetail {
    double mean = 0.0;
    double std_error = 0.0;
    double conditional_mean = 0.0;
    double conditional_std_error = 0.0;
    std::uint64_t conditional_count = 0;
    std::vector<double> batch_means;
};

inline constexpr std::uint64_t kMonteCarloBatch = 8192;

MonteCarloDetail monte_carlo_detail(const SimConfig& config, MemberRef target);

// GainReport view of the sampler. The conditional benchmark beta*f(1) uses
// the exact closed sum; only the heterogeneous expectations are sampled.
GainReport monte_carlo_expected_consumption(const SimConfig& config, MemberRef target);

}  // namespace poolann

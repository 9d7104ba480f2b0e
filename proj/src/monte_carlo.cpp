#include "poolann/monte_carlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

#include "poolann/philox.hpp"

namespace poolann {

namespace {

// One uniform draw inverted through the binomial CDF. The walk runs on the
// side whose zero-count probability is the larger one, so the starting mass
// stays inside long-double range for any desk-scale group.
int sample_binomial(ReplicationStream& stream, int trials, double success_prob) {
    if (trials == 0) return 0;
    const double u = stream.next_double();
    const bool flip = success_prob > 0.5;
    const long double pr = flip ? 1.0L - success_prob : success_prob;
    const long double start = std::exp(trials * std::log1p(-pr));
    if (!(start > 0.0L)) {
        throw std::runtime_error("sample_binomial: group too large for CDF inversion");
    }
    long double pmf = start;
    long double cdf = pmf;
    int k = 0;
    const long double ratio = pr / (1.0L - pr);
    while (cdf <= static_cast<long double>(u) && k < trials) {
        pmf *= ratio * (trials - k) / (k + 1.0L);
        cdf += pmf;
        ++k;
    }
    return flip ? trials - k : k;
}

struct FundView {
    std::vector<int> sizes;
    std::vector<double> survival;
    double c0_target = 0.0;
    double f0p_target = 0.0;
    long double remaining_fund = 0.0L;
    std::vector<double> f0p;
};

struct BatchStat {
    long double sum = 0.0L;
    long double sum_sq = 0.0L;
    long double alive_sum = 0.0L;
    long double alive_sum_sq = 0.0L;
    std::uint64_t alive_n = 0;
    std::uint64_t n = 0;
};

// Payoff to the target for one sampled outcome.
double replicate_once(const FundView& v, MemberRef target, std::uint64_t seed,
                      std::uint64_t replication, bool& target_alive) {
    ReplicationStream stream(seed, replication);
    const std::size_t k = v.sizes.size();

    target_alive = stream.next_double() < v.survival[target.group];
    long double weighted_survivors = 0.0L;
    bool everyone_dead = true;
    for (std::size_t i = 0; i < k; ++i) {
        int deaths;
        if (i == target.group) {
            deaths = sample_binomial(stream, v.sizes[i] - 1, 1.0 - v.survival[i]) +
                     (target_alive ? 0 : 1);
        } else {
            deaths = sample_binomial(stream, v.sizes[i], 1.0 - v.survival[i]);
        }
        if (deaths != v.sizes[i]) everyone_dead = false;
        weighted_survivors +=
            static_cast<long double>(v.f0p[i]) * (v.sizes[i] - deaths) / v.survival[i];
    }

    double payoff = v.c0_target;
    if (target_alive) {
        payoff += static_cast<double>(v.remaining_fund / weighted_survivors) * v.c0_target;
    } else if (everyone_dead) {
        payoff += v.f0p_target;
    }
    return payoff;
}

BatchStat run_batch(const FundView& v, MemberRef target, std::uint64_t seed, std::uint64_t begin,
                    std::uint64_t end) {
    BatchStat stat;
    for (std::uint64_t r = begin; r < end; ++r) {
        bool alive = false;
        const double x = replicate_once(v, target, seed, r, alive);
        stat.sum += x;
        stat.sum_sq += static_cast<long double>(x) * x;
        if (alive) {
            stat.alive_sum += x;
            stat.alive_sum_sq += static_cast<long double>(x) * x;
            ++stat.alive_n;
        }
        ++stat.n;
    }
    return stat;
}

double std_error_of(long double sum, long double sum_sq, std::uint64_t n) {
    if (n < 2) return 0.0;
    const long double mean = sum / n;
    long double var = (sum_sq - static_cast<long double>(n) * mean * mean) / (n - 1.0L);
    if (var < 0.0L) var = 0.0L;
    return static_cast<double>(std::sqrt(var / n));
}

}  // namespace

MonteCarloDetail monte_carlo_detail(const SimConfig& config, MemberRef target) {
    validate_fund(config.fund);
    if (target.group >= config.fund.groups.size()) {
        throw std::invalid_argument("monte_carlo: target group out of range");
    }
    if (config.replications < 1) {
        throw std::invalid_argument("monte_carlo: replications must be >= 1");
    }

    FundView v;
    for (const GroupProfile& g : config.fund.groups) {
        v.sizes.push_back(g.size);
        v.survival.push_back(g.survival_prob);
        v.f0p.push_back(post_consumption_wealth(g));
        v.remaining_fund += static_cast<long double>(v.f0p.back()) * g.size;
    }
    v.c0_target = initial_consumption(config.fund.groups[target.group]);
    v.f0p_target = v.f0p[target.group];

    // Fixed batch boundaries; partial sums combined in batch order, so the
    // result is the same for any worker count.
    const std::uint64_t batches = (config.replications + kMonteCarloBatch - 1) / kMonteCarloBatch;
    std::vector<BatchStat> stats(batches);
    const int workers =
        std::max(1, std::min<int>(config.threads, static_cast<int>(std::min<std::uint64_t>(
                                                      batches, std::uint64_t{64}))));
    if (workers == 1) {
        for (std::uint64_t b = 0; b < batches; ++b) {
            const std::uint64_t begin = b * kMonteCarloBatch;
            const std::uint64_t end = std::min(config.replications, begin + kMonteCarloBatch);
            stats[b] = run_batch(v, target, config.seed, begin, end);
        }
    } else {
        std::atomic<std::uint64_t> next_batch{0};
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (;;) {
                    const std::uint64_t b = next_batch.fetch_add(1);
                    if (b >= batches) return;
                    const std::uint64_t begin = b * kMonteCarloBatch;
                    const std::uint64_t end =
                        std::min(config.replications, begin + kMonteCarloBatch);
                    stats[b] = run_batch(v, target, config.seed, begin, end);
                }
            });
        }
        for (std::thread& t : pool) t.join();
    }

    MonteCarloDetail detail;
    detail.batch_means.reserve(batches);
    long double sum = 0.0L, sum_sq = 0.0L, alive_sum = 0.0L, alive_sum_sq = 0.0L;
    std::uint64_t alive_n = 0;
    for (const BatchStat& s : stats) {
        sum += s.sum;
        sum_sq += s.sum_sq;
        alive_sum += s.alive_sum;
        alive_sum_sq += s.alive_sum_sq;
        alive_n += s.alive_n;
        detail.batch_means.push_back(static_cast<double>(s.sum / s.n));
    }
    detail.mean = static_cast<double>(sum / config.replications);
    detail.std_error = std_error_of(sum, sum_sq, config.replications);
    detail.conditional_count = alive_n;
    detail.conditional_mean = alive_n > 0 ? static_cast<double>(alive_sum / alive_n) : 0.0;
    detail.conditional_std_error = std_error_of(alive_sum, alive_sum_sq, alive_n);
    return detail;
}

GainReport monte_carlo_expected_consumption(const SimConfig& config, MemberRef target) {
    const MonteCarloDetail detail = monte_carlo_detail(config, target);
    const GroupProfile& bob = config.fund.groups[target.group];

    int total_lives = 0;
    for (const GroupProfile& g : config.fund.groups) total_lives += g.size;

    GainReport report;
    report.expected_consumption = detail.mean;
    report.conditional_consumption = detail.conditional_mean;
    report.gain_per_unit = (detail.mean - bob.initial_wealth) / bob.initial_wealth;
    const double f_unit =
        total_lives == 1 ? 1.0
                         : expected_consumption_solo_bob(total_lives - 1, bob.survival_prob, 1.0)
                               .conditional_consumption;
    report.conditional_relative_gain_per_unit =
        (detail.conditional_mean - bob.initial_wealth * f_unit) / bob.initial_wealth;
    report.method = Method::monte_carlo;
    report.std_error = detail.std_error;
    return report;
}

}  // namespace poolann

#include "poolann/enumeration.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "poolann/numerics.hpp"

namespace poolann {

namespace {

struct FundView {
    std::vector<int> sizes;
    std::vector<double> survival;
    std::vector<double> c0;       // per-member time-0 payment
    std::vector<double> f0p;      // per-member post-consumption wealth
    long double remaining_fund = 0.0L;  // sum_i f0p_i * L_i
};

FundView view_of(const HeterogeneousFund& fund, MemberRef target) {
    validate_fund(fund);
    if (target.group >= fund.groups.size()) {
        throw std::invalid_argument("enumeration: target group out of range");
    }
    FundView v;
    for (const GroupProfile& g : fund.groups) {
        v.sizes.push_back(g.size);
        v.survival.push_back(g.survival_prob);
        v.c0.push_back(initial_consumption(g));
        v.f0p.push_back(post_consumption_wealth(g));
        v.remaining_fund += static_cast<long double>(v.f0p.back()) * g.size;
    }
    return v;
}

// MEA for realized death counts; < 0 signals the all-dead outcome.
long double mea_for_counts(const FundView& v, const std::vector<int>& deaths) {
    long double weighted_survivors = 0.0L;
    for (std::size_t i = 0; i < v.sizes.size(); ++i) {
        weighted_survivors +=
            static_cast<long double>(v.f0p[i]) * (v.sizes[i] - deaths[i]) / v.survival[i];
    }
    if (!(weighted_survivors > 0.0L)) return -1.0L;
    return v.remaining_fund / weighted_survivors;
}

struct Accumulator {
    long double mass = 0.0L;        // total probability seen
    long double alive_mass = 0.0L;  // P(outcome and target alive)
    long double survivor_payment = 0.0L;  // E[ 1{alive} * MEA * c0_t ]
    long double estate_payment = 0.0L;    // E[ 1{dead} * estate ]
};

// Shared tail: one enumerated atom with probability `prob`, realized counts
// `deaths`, and the probability that the target is alive within the atom.
void accumulate(Accumulator& acc, const FundView& v, MemberRef target,
                const std::vector<int>& deaths, long double prob, long double alive_weight) {
    acc.mass += prob;
    if (alive_weight > 0.0L) {
        const long double adj = mea_for_counts(v, deaths);
        acc.alive_mass += prob * alive_weight;
        acc.survivor_payment += prob * alive_weight * adj * v.c0[target.group];
    } else {
        bool everyone_dead = true;
        for (std::size_t i = 0; i < v.sizes.size(); ++i) {
            if (deaths[i] != v.sizes[i]) {
                everyone_dead = false;
                break;
            }
        }
        if (everyone_dead) {
            acc.estate_payment += prob * v.f0p[target.group];
        }
    }
}

EnumerationResult finish(const Accumulator& acc, const FundView& v, MemberRef target,
                         std::uint64_t outcomes) {
    const double c0 = v.c0[target.group];
    const double p_target = v.survival[target.group];
    EnumerationResult result;
    result.outcome_count = outcomes;
    result.total_probability = static_cast<double>(acc.mass);
    result.expectation =
        c0 + static_cast<double>(acc.survivor_payment + acc.estate_payment);
    result.conditional_expectation = c0 + static_cast<double>(acc.survivor_payment / p_target);
    return result;
}

}  // namespace

EnumerationTooLarge::EnumerationTooLarge(std::uint64_t states, std::uint64_t limit, const char* mode)
    : std::runtime_error("enumeration refused: " + std::string(mode) + " state space of " +
                         std::to_string(states) + " outcomes exceeds the limit of " +
                         std::to_string(limit)),
      states_(states) {}

EnumerationResult enumerate_expected_consumption(const HeterogeneousFund& fund, MemberRef target) {
    const FundView v = view_of(fund, target);
    const std::size_t k = v.sizes.size();

    long double approx_states = 1.0L;
    for (int size : v.sizes) approx_states *= size + 1.0L;
    if (approx_states > static_cast<long double>(kMaxCountStates)) {
        const auto reported = approx_states > 1e19L
                                  ? std::numeric_limits<std::uint64_t>::max()
                                  : static_cast<std::uint64_t>(approx_states);
        throw EnumerationTooLarge(reported, kMaxCountStates, "death-count");
    }
    std::uint64_t states = 1;
    for (int size : v.sizes) states *= static_cast<std::uint64_t>(size) + 1;

    std::vector<std::vector<double>> pmf;
    pmf.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
        pmf.push_back(binomial_pmf_table(v.sizes[i], 1.0 - v.survival[i]));
    }

    Accumulator acc;
    std::vector<int> deaths(k, 0);
    // Mixed-radix walk over joint death counts, last group fastest.
    for (std::uint64_t atom = 0; atom < states; ++atom) {
        long double prob = 1.0L;
        for (std::size_t i = 0; i < k; ++i) {
            prob *= pmf[i][static_cast<std::size_t>(deaths[i])];
        }
        const long double alive_weight =
            static_cast<long double>(v.sizes[target.group] - deaths[target.group]) /
            v.sizes[target.group];
        accumulate(acc, v, target, deaths, prob, alive_weight);

        for (std::size_t i = k; i-- > 0;) {
            if (++deaths[i] <= v.sizes[i]) break;
            deaths[i] = 0;
        }
    }
    return finish(acc, v, target, states);
}

EnumerationResult enumerate_expected_consumption_by_life(const HeterogeneousFund& fund,
                                                         MemberRef target) {
    const FundView v = view_of(fund, target);
    const std::size_t k = v.sizes.size();

    int total_lives = 0;
    for (int size : v.sizes) total_lives += size;
    if (total_lives > kMaxLifeEnumerationLives) {
        throw EnumerationTooLarge(std::uint64_t{1} << total_lives,
                                  std::uint64_t{1} << kMaxLifeEnumerationLives, "per-life");
    }

    // Life i belongs to group owner[i]; the target is the first life of its group.
    std::vector<std::size_t> owner(static_cast<std::size_t>(total_lives));
    std::size_t target_life = 0;
    {
        std::size_t life = 0;
        for (std::size_t g = 0; g < k; ++g) {
            if (g == target.group) target_life = life;
            for (int j = 0; j < v.sizes[g]; ++j) owner[life++] = g;
        }
    }

    const std::uint64_t states = std::uint64_t{1} << total_lives;
    Accumulator acc;
    std::vector<int> deaths(k, 0);
    for (std::uint64_t mask = 0; mask < states; ++mask) {  // set bit = that life died
        long double prob = 1.0L;
        deaths.assign(k, 0);
        for (int life = 0; life < total_lives; ++life) {
            const std::size_t g = owner[static_cast<std::size_t>(life)];
            if (mask >> life & 1) {
                prob *= 1.0L - v.survival[g];
                ++deaths[g];
            } else {
                prob *= v.survival[g];
            }
        }
        const bool target_alive = ((mask >> target_life) & 1) == 0;
        accumulate(acc, v, target, deaths, prob, target_alive ? 1.0L : 0.0L);
    }
    return finish(acc, v, target, states);
}

GainReport enumerate_gain_report(const HeterogeneousFund& fund, MemberRef target) {
    const EnumerationResult result = enumerate_expected_consumption(fund, target);
    const GroupProfile& bob = fund.groups[target.group];

    int total_lives = 0;
    for (const GroupProfile& g : fund.groups) total_lives += g.size;

    GainReport report;
    report.expected_consumption = result.expectation;
    report.conditional_consumption = result.conditional_expectation;
    report.gain_per_unit = (result.expectation - bob.initial_wealth) / bob.initial_wealth;
    // Benchmark: a homogeneous fund of the same total size in which every
    // member is a copy of the target (unit wealth; degree-1 homogeneity).
    double f_unit;
    if (total_lives == 1) {
        // Lone member: c0 + (alive ? remainder consumed at time 1 : 0).
        f_unit = 1.0;
    } else {
        f_unit = expected_consumption_solo_bob(total_lives - 1, bob.survival_prob, 1.0)
                     .conditional_consumption;
    }
    report.conditional_relative_gain_per_unit =
        (result.conditional_expectation - bob.initial_wealth * f_unit) / bob.initial_wealth;
    report.method = Method::enumeration;
    report.std_error = 0.0;
    return report;
}

}  // namespace poolann

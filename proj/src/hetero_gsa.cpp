#include "poolann/hetero_gsa.hpp"

#include <stdexcept>
#include <string>

namespace poolann {

HeterogeneousFund validate_fund(const HeterogeneousFund& fund) {
    if (fund.groups.empty()) {
        throw std::invalid_argument("HeterogeneousFund: needs at least one group");
    }
    for (std::size_t i = 0; i < fund.groups.size(); ++i) {
        try {
            validate_profile(fund.groups[i]);
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument("group " + std::to_string(i) + ": " + e.what());
        }
    }
    return fund;
}

void validate_outcome(const HeterogeneousFund& fund, const MortalityOutcome& outcome) {
    if (outcome.deaths.size() != fund.groups.size()) {
        throw std::invalid_argument("MortalityOutcome: expected " +
                                    std::to_string(fund.groups.size()) + " death counts, got " +
                                    std::to_string(outcome.deaths.size()));
    }
    for (std::size_t i = 0; i < outcome.deaths.size(); ++i) {
        if (outcome.deaths[i] < 0 || outcome.deaths[i] > fund.groups[i].size) {
            throw std::invalid_argument("MortalityOutcome: deaths[" + std::to_string(i) +
                                        "] must lie in [0, " + std::to_string(fund.groups[i].size) +
                                        "], got " + std::to_string(outcome.deaths[i]));
        }
    }
}

double initial_consumption(const GroupProfile& group) {
    validate_profile(group);
    return group.initial_wealth / (1.0 + group.survival_prob);
}

double post_consumption_wealth(const GroupProfile& group) {
    validate_profile(group);
    return group.initial_wealth * group.survival_prob / (1.0 + group.survival_prob);
}

bool all_dead(const HeterogeneousFund& fund, const MortalityOutcome& outcome) {
    validate_outcome(fund, outcome);
    for (std::size_t i = 0; i < fund.groups.size(); ++i) {
        if (outcome.deaths[i] != fund.groups[i].size) return false;
    }
    return true;
}

double mea(const HeterogeneousFund& fund, const MortalityOutcome& outcome) {
    validate_fund(fund);
    validate_outcome(fund, outcome);
    long double remaining_fund = 0.0L;
    long double weighted_survivors = 0.0L;
    for (std::size_t i = 0; i < fund.groups.size(); ++i) {
        const GroupProfile& g = fund.groups[i];
        const long double f0p = post_consumption_wealth(g);
        remaining_fund += f0p * g.size;
        weighted_survivors += f0p * (g.size - outcome.deaths[i]) / g.survival_prob;
    }
    if (!(weighted_survivors > 0.0L)) {
        throw std::domain_error("mea: no survivors; the all-dead outcome is settled by the estate rule");
    }
    return static_cast<double>(remaining_fund / weighted_survivors);
}

double time1_consumption(const HeterogeneousFund& fund, const MortalityOutcome& outcome,
                         std::size_t group_index) {
    if (group_index >= fund.groups.size()) {
        throw std::invalid_argument("time1_consumption: group index out of range");
    }
    validate_outcome(fund, outcome);
    if (outcome.deaths[group_index] == fund.groups[group_index].size) {
        throw std::domain_error("time1_consumption: group " + std::to_string(group_index) +
                                " has no survivor");
    }
    return mea(fund, outcome) * initial_consumption(fund.groups[group_index]);
}

std::vector<double> estate_rule(const HeterogeneousFund& fund, const MortalityOutcome& outcome) {
    validate_fund(fund);
    if (!all_dead(fund, outcome)) {
        throw std::logic_error("estate_rule: invoked on an outcome with survivors");
    }
    std::vector<double> estates;
    estates.reserve(fund.groups.size());
    for (const GroupProfile& g : fund.groups) {
        estates.push_back(post_consumption_wealth(g));
    }
    return estates;
}

ConsumptionReport consumption_report(const HeterogeneousFund& fund, const MortalityOutcome& outcome) {
    validate_fund(fund);
    validate_outcome(fund, outcome);
    ConsumptionReport report;
    const std::size_t k = fund.groups.size();
    report.c0.reserve(k);
    for (const GroupProfile& g : fund.groups) {
        report.c0.push_back(initial_consumption(g));
    }
    if (all_dead(fund, outcome)) {
        report.c1.assign(k, 0.0);
        report.estate = estate_rule(fund, outcome);
        report.mea = 0.0;
        return report;
    }
    report.mea = mea(fund, outcome);
    report.estate.assign(k, 0.0);
    report.c1.resize(k);
    for (std::size_t i = 0; i < k; ++i) {
        report.c1[i] =
            outcome.deaths[i] == fund.groups[i].size ? 0.0 : report.mea * report.c0[i];
    }
    return report;
}

}  // namespace poolann

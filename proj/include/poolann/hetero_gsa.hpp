#pragma once

#include <cstddef>
#include <vector>

#include "poolann/model.hpp"

namespace poolann {

// A fund of K >= 1 homogeneous subgroups. The two-period model prices every
// group on its own basis (1 + p^X at time 0, 1 at time 1) with zero interest.
struct HeterogeneousFund {
    std::vector<GroupProfile> groups;
};

// Realized death counts for one period, one entry per group.
struct MortalityOutcome {
    std::vector<int> deaths;
};

// Per-group payments implied by one mortality outcome. c1 entries are per
// surviving member (zero for a group with no survivors); estate entries are
// per deceased member and nonzero only on the all-dead outcome. mea is the
// realized adjustment factor (zero on the all-dead outcome, where none applies).
struct ConsumptionReport {
    std::vector<double> c0;
    std::vector<double> c1;
    std::vector<double> estate;
    double mea = 0.0;
};

HeterogeneousFund validate_fund(const HeterogeneousFund& fund);
void validate_outcome(const HeterogeneousFund& fund, const MortalityOutcome& outcome);

// Time-0 payment per member: c0 = F0 / (1 + p).
double initial_consumption(const GroupProfile& group);

// Notional wealth left after the time-0 payment: F0 * p / (1 + p).
double post_consumption_wealth(const GroupProfile& group);

bool all_dead(const HeterogeneousFund& fund, const MortalityOutcome& outcome);

// Mortality experience adjustment: the remaining fund divided by the
// survival-weighted survivor fund,
//   sum_i F0+_i L_i / sum_i F0+_i (L_i - N_i) / p_i.
// Requires at least one survivor somewhere.
double mea(const HeterogeneousFund& fund, const MortalityOutcome& outcome);

// Time-1 payment per survivor of group i: c1 = MEA * c0. The survivor
// consumes their whole notional fund (death is certain by time 2).
double time1_consumption(const HeterogeneousFund& fund, const MortalityOutcome& outcome,
                         std::size_t group_index);

// Per-group estate payment on the all-dead outcome: each member's estate
// receives the time-0 notional fund F0+. Throws std::logic_error if any
// member survived (the payment exists only on that event).
std::vector<double> estate_rule(const HeterogeneousFund& fund, const MortalityOutcome& outcome);

ConsumptionReport consumption_report(const HeterogeneousFund& fund, const MortalityOutcome& outcome);

}  // namespace poolann

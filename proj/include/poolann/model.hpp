#pragma once

#include <cstddef>
#include <vector>

namespace poolann {

// Wealth-mortality triple describing one homogeneous subgroup: L members,
// each surviving the period with probability p and contributing F0.
struct GroupProfile {
    int size = 0;
    double survival_prob = 0.0;
    double initial_wealth = 0.0;
};

// Expected present value of a unit-per-period life annuity at times 0 and 1.
// In the two-period model factor_t1 is identically 1.
struct AnnuityBasis {
    double factor_t0 = 0.0;
    double factor_t1 = 0.0;
};

// Per-member wealth and alive flags at one instant. Dead members' wealth
// entries hold whatever their estates have received.
struct FundState {
    std::vector<double> wealth;
    std::vector<bool> alive;
    double time = 0.0;
};

// Two-period basis (1+p, 1). Rejects p outside the open interval (0,1).
AnnuityBasis annuity_factor_two_period(double survival_prob);

// (1+r)/r, the price of a unit perpetuity-due. Rejects r <= 0.
double perpetuity_factor(double rate);

// Returns the profile unchanged, or throws std::invalid_argument with one
// clause per violated invariant, naming the offending field.
GroupProfile validate_profile(const GroupProfile& profile);

double total_wealth(const FundState& state);
std::size_t alive_count(const FundState& state);

}  // namespace poolann

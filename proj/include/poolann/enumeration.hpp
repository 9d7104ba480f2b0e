#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>

#include "poolann/fairness.hpp"
#include "poolann/hetero_gsa.hpp"

namespace poolann {

// A designated member of one group. Members of a group are exchangeable, so
// the group index identifies the target up to relabeling.
struct MemberRef {
    std::size_t group = 0;
};

struct EnumerationResult {
    double expectation = 0.0;              // E(c0 + c1) for the target
    double conditional_expectation = 0.0;  // E(c0 + c1 | target survives)
    std::uint64_t outcome_count = 0;       // atoms enumerated
    double total_probability = 0.0;        // mass of the enumerated atoms
};

// Refusal to enumerate a state space beyond the supported size.
class EnumerationTooLarge : public std::runtime_error {
public:
    EnumerationTooLarge(std::uint64_t states, std::uint64_t limit, const char* mode);
    std::uint64_t states() const noexcept { return states_; }

private:
    std::uint64_t states_;
};

inline constexpr std::uint64_t kMaxCountStates = 10'000'000;
inline constexpr int kMaxLifeEnumerationLives = 20;

// Exact expectation by enumerating joint death COUNTS weighted by binomial
// probabilities (payoffs depend only on counts). State space is
// prod_i (L_i + 1), refused above kMaxCountStates.
EnumerationResult enumerate_expected_consumption(const HeterogeneousFund& fund, MemberRef target);

// Independence check: enumerate every per-life death pattern (2^n atoms).
// Refused above kMaxLifeEnumerationLives total lives.
EnumerationResult enumerate_expected_consumption_by_life(const HeterogeneousFund& fund,
                                                         MemberRef target);

// Wraps the count-space enumeration in a GainReport for the target member.
// The conditional benchmark is the homogeneous fund of the same total size in
// which everyone matches the target (evaluated by closed sum).
GainReport enumerate_gain_report(const HeterogeneousFund& fund, MemberRef target);

}  // namespace poolann

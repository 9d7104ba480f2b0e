#pragma once

#include <string>

namespace poolann {

enum class Method { closed_sum, enumeration, monte_carlo };

std::string method_name(Method m);

// Expected-consumption summary for a designated Group-B member ("Bob") with
// contribution F0B. expected_consumption is g = E(c0 + c1); the conditional
// value f conditions on Bob surviving the period. gain_per_unit is
// (g - F0B)/F0B; conditional_relative_gain_per_unit is (f - beta*f(1))/beta
// against the homogeneous benchmark in which every member is a copy of Bob.
// std_error is zero for the exact methods.
struct GainReport {
    double expected_consumption = 0.0;
    double conditional_consumption = 0.0;
    double gain_per_unit = 0.0;
    double conditional_relative_gain_per_unit = 0.0;
    Method method = Method::closed_sum;
    double std_error = 0.0;
};

enum class PropositionLayout { same_size, solo_bob };

// The two membership layouts the closed sums cover. group_a_size is L (shared
// by both groups in the same_size layout; Group B is Bob alone in solo_bob).
struct PropositionConfig {
    PropositionLayout layout = PropositionLayout::solo_bob;
    int group_a_size = 0;
    double survival_prob = 0.0;
    double bob_wealth = 0.0;
};

// E(F1) for a surviving-or-not member of a homogeneous fund of L unit
// contributions with no time-0 consumption, estates keeping their wealth on
// the all-dead event:  q^L + p * sum_n L/(L-n) C(L-1,n) q^n p^{L-1-n}.
// Equals 1 for every L >= 1 and p in (0,1).
double paf_expected_survivor_value(int members, double survival_prob);

// Closed binomial sums for the two-group fund z^A = (L, p, 1),
// z^B = (L, p, beta). Cross-checks the direct sums against the closed-form
// difference beta*f(1) - f(beta) to 1e-10 and throws std::logic_error on
// disagreement. Requires L >= 2.
GainReport expected_consumption_same_size(int group_size, double survival_prob, double bob_wealth);

// Same for z^A = (LA, p, 1), z^B = (1, p, beta), LA >= 1.
GainReport expected_consumption_solo_bob(int group_a_size, double survival_prob, double bob_wealth);

GainReport expected_consumption(const PropositionConfig& config);

// (g - F0B) / F0B.
double expected_gain_per_unit(const GainReport& report, double bob_contribution);

// (f(beta) - beta*f(1)) / beta for the given layout.
double conditional_relative_gain_per_unit(const PropositionConfig& config);

// True iff sign(beta - 1) = sign(F0B - g(beta)) = sign(beta*f(1) - f(beta)),
// with both differences below 1e-10 in magnitude when beta = 1.
bool proposition_sign_check(const PropositionConfig& config);

// The no-death adjustment factor 2*pa*pb/(pa+pb) quoted for equal-size,
// equal-contribution groups.
double no_death_mea_harmonic(double pa, double pb);

// True iff the harmonic factor lies strictly inside (pa, pb). Requires
// 0 < pa < pb < 1.
bool mea_no_death_bound_check(double pa, double pb);

}  // namespace poolann

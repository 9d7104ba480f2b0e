#pragma once

#include <cstddef>
#include <vector>

#include "poolann/model.hpp"

namespace poolann {

// One period of a homogeneous fund: L members with unit wealth at time 0,
// N deaths by time 1, and a common time-0 consumption rate c0 in [0,1).
struct HomogeneousScenario {
    int members = 0;
    int deaths = 0;
    double consumption_t0 = 0.0;
};

// Time-1 wealth of a survivor when deceased members' wealth is split equally
// among survivors: (1 + N/(L-N)) * (1 - c0). Requires at least one survivor.
double paf_survivor_value(const HomogeneousScenario& s);

// Time-1 notional fund per survivor when the whole fund is reallocated:
// L * (1 - c0) / (L - N). Requires at least one survivor.
double gsa_homog_survivor_value(const HomogeneousScenario& s);

// Time-1 wealth of a survivor when each death is shared with everyone alive
// just before it, estate included: (1 + N/(L+1-N)) * (1 - c0).
double aof_survivor_value(const HomogeneousScenario& s);

// aof_survivor_value - gsa_homog_survivor_value in closed form:
// -N * (1 - c0) / ((L - N) * (L + 1 - N)). Nonpositive, zero iff N = 0.
double aof_gsa_gap(const HomogeneousScenario& s);

// True iff PAF and GSA survivor values agree (to 1e-12 relative) for every
// death count N in {0,...,L-1} when both consume c0 = 1/(1+p).
bool gsa_paf_equivalence_check(int members, double survival_prob);

// Shares the deceased's wealth W equally among the M members alive just
// before the death (deceased included): each of the M-1 survivors gains W/M
// and the deceased's wealth entry becomes the estate payment W/M. Requires
// the deceased to be alive and the alive members to hold equal wealth.
FundState aof_redistribute_on_death(const FundState& state, std::size_t deceased_index);

// Consumption stream c_0..c_T paid by a GSA of immortal members earning the
// realized bond returns R_1..R_T against a constant valuation rate r > 0:
// c_n = r/(1+r)^{n+1} * prod_{k<=n} (1+R_k). Rejects any R_k <= -1.
std::vector<double> immortal_gsa_consumption(double rate, const std::vector<double>& realized_returns);

}  // namespace poolann

#include "poolann/schemes.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "poolann/numerics.hpp"

namespace poolann {

namespace {

void validate_scenario(const HomogeneousScenario& s) {
    if (s.members < 1) {
        throw std::domain_error("scenario: members must be >= 1, got " + std::to_string(s.members));
    }
    if (s.deaths < 0 || s.deaths > s.members) {
        throw std::domain_error("scenario: deaths must lie in [0, members], got " +
                                std::to_string(s.deaths));
    }
    if (!(s.consumption_t0 >= 0.0 && s.consumption_t0 < 1.0)) {
        throw std::domain_error("scenario: consumption_t0 must lie in [0,1), got " +
                                std::to_string(s.consumption_t0));
    }
}

void require_survivor(const HomogeneousScenario& s) {
    validate_scenario(s);
    if (s.deaths == s.members) {
        throw std::domain_error("no survivor to value: all " + std::to_string(s.members) +
                                " members died; the all-dead event is settled by the estate rule");
    }
}

}  // namespace

double paf_survivor_value(const HomogeneousScenario& s) {
    require_survivor(s);
    const double n = s.deaths;
    const double survivors = s.members - s.deaths;
    return (1.0 + n / survivors) * (1.0 - s.consumption_t0);
}

double gsa_homog_survivor_value(const HomogeneousScenario& s) {
    require_survivor(s);
    const double members = s.members;
    const double survivors = s.members - s.deaths;
    return members * (1.0 - s.consumption_t0) / survivors;
}

double aof_survivor_value(const HomogeneousScenario& s) {
    require_survivor(s);
    const double n = s.deaths;
    const double denom = s.members + 1 - s.deaths;
    return (1.0 + n / denom) * (1.0 - s.consumption_t0);
}

double aof_gsa_gap(const HomogeneousScenario& s) {
    require_survivor(s);
    const double n = s.deaths;
    const double survivors = s.members - s.deaths;
    return -n * (1.0 - s.consumption_t0) / (survivors * (survivors + 1.0));
}

bool gsa_paf_equivalence_check(int members, double survival_prob) {
    if (members < 2) {
        throw std::domain_error("gsa_paf_equivalence_check: members must be >= 2");
    }
    if (!(survival_prob > 0.0 && survival_prob < 1.0)) {
        throw std::domain_error("gsa_paf_equivalence_check: survival_prob must lie in (0,1)");
    }
    const double c0 = 1.0 / (1.0 + survival_prob);
    for (int n = 0; n < members; ++n) {
        const HomogeneousScenario s{members, n, c0};
        if (rel_diff(paf_survivor_value(s), gsa_homog_survivor_value(s)) > 1e-12) {
            return false;
        }
    }
    return true;
}

FundState aof_redistribute_on_death(const FundState& state, std::size_t deceased_index) {
    if (state.wealth.size() != state.alive.size()) {
        throw std::invalid_argument("FundState: wealth and alive lengths differ");
    }
    if (deceased_index >= state.alive.size()) {
        throw std::domain_error("aof_redistribute_on_death: member index out of range");
    }
    if (!state.alive[deceased_index]) {
        throw std::domain_error("aof_redistribute_on_death: member " +
                                std::to_string(deceased_index) + " is already dead");
    }
    // The equal-split rule is the homogeneous special case; require it.
    const double reference = state.wealth[deceased_index];
    std::size_t alive = 0;
    for (std::size_t i = 0; i < state.alive.size(); ++i) {
        if (!state.alive[i]) continue;
        ++alive;
        if (rel_diff(state.wealth[i], reference) > 1e-9) {
            throw std::domain_error("aof_redistribute_on_death: alive members must hold equal wealth");
        }
    }

    FundState next = state;
    const double share = reference / static_cast<double>(alive);
    for (std::size_t i = 0; i < next.alive.size(); ++i) {
        if (next.alive[i] && i != deceased_index) {
            next.wealth[i] += share;
        }
    }
    next.wealth[deceased_index] = share;  // estate payment
    next.alive[deceased_index] = false;
    return next;
}

std::vector<double> immortal_gsa_consumption(double rate, const std::vector<double>& realized_returns) {
    const double factor = perpetuity_factor(rate);  // rejects rate <= 0
    std::vector<double> payments;
    payments.reserve(realized_returns.size() + 1);
    payments.push_back(1.0 / factor);  // c0 = r/(1+r)

    double growth = 1.0;                // prod (1+R_k)
    double discount = 1.0 + rate;       // (1+r)^{n+1}
    for (std::size_t k = 0; k < realized_returns.size(); ++k) {
        if (!(realized_returns[k] > -1.0)) {
            throw std::domain_error("immortal_gsa_consumption: return R_" + std::to_string(k + 1) +
                                    " must exceed -1, got " + std::to_string(realized_returns[k]));
        }
        growth *= 1.0 + realized_returns[k];
        discount *= 1.0 + rate;
        payments.push_back(rate / discount * growth);
    }
    return payments;
}

}  // namespace poolann

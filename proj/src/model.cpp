#include "poolann/model.hpp"

#include <stdexcept>
#include <string>

namespace poolann {

AnnuityBasis annuity_factor_two_period(double survival_prob) {
    if (!(survival_prob > 0.0 && survival_prob < 1.0)) {
        throw std::domain_error("annuity_factor_two_period: survival_prob must lie in (0,1), got " +
                                std::to_string(survival_prob));
    }
    return AnnuityBasis{1.0 + survival_prob, 1.0};
}

double perpetuity_factor(double rate) {
    if (!(rate > 0.0)) {
        throw std::domain_error("perpetuity_factor: rate must be > 0, got " + std::to_string(rate));
    }
    return (1.0 + rate) / rate;
}

GroupProfile validate_profile(const GroupProfile& profile) {
    std::string problems;
    auto add = [&problems](const std::string& msg) {
        if (!problems.empty()) problems += "; ";
        problems += msg;
    };
    if (profile.size < 1) {
        add("size must be >= 1, got " + std::to_string(profile.size));
    }
    if (!(profile.survival_prob > 0.0 && profile.survival_prob < 1.0)) {
        add("survival_prob must lie strictly in (0,1), got " + std::to_string(profile.survival_prob));
    }
    if (!(profile.initial_wealth > 0.0)) {
        add("initial_wealth must be > 0, got " + std::to_string(profile.initial_wealth));
    }
    if (!problems.empty()) {
        throw std::invalid_argument("invalid GroupProfile: " + problems);
    }
    return profile;
}

double total_wealth(const FundState& state) {
    long double sum = 0.0L;
    for (double w : state.wealth) sum += w;
    return static_cast<double>(sum);
}

std::size_t alive_count(const FundState& state) {
    std::size_t n = 0;
    for (bool a : state.alive) n += a ? 1 : 0;
    return n;
}

}  // namespace poolann

#include "poolann/fairness.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "poolann/numerics.hpp"

namespace poolann {

namespace {

constexpr double kClosedFormTolerance = 1e-10;

void require_probability(double p, const char* where) {
    if (!(p > 0.0 && p < 1.0)) {
        throw std::domain_error(std::string(where) + ": survival_prob must lie in (0,1), got " +
                                std::to_string(p));
    }
}

void require_wealth(double beta, const char* where) {
    if (!(beta > 0.0)) {
        throw std::domain_error(std::string(where) + ": bob_wealth must be > 0, got " +
                                std::to_string(beta));
    }
}

std::vector<long double> pmf_table_ld(int n, long double q) {
    std::vector<long double> pmf(static_cast<std::size_t>(n) + 1);
    const long double lq = std::log(q);
    const long double lp = std::log1p(-q);
    for (int k = 0; k <= n; ++k) {
        pmf[static_cast<std::size_t>(k)] = std::exp(log_choose(n, k) + k * lq + (n - k) * lp);
    }
    return pmf;
}

// f(beta) for z^A=(L,p,1), z^B=(L,p,beta): Bob alive, deaths N^A ~ BIN(L,q)
// and N^B ~ BIN(L-1,q) among the other B members; the survivor payment is
//   c1 = beta/(1+p) * p*(beta+1)*L / (L - n + beta*(L - m)).
long double f_same_size(int L, long double p, long double beta) {
    const long double q = 1.0L - p;
    const auto pmf_a = pmf_table_ld(L, q);
    const auto pmf_b = pmf_table_ld(L - 1, q);
    long double sum = 0.0L;
    for (int n = 0; n <= L; ++n) {
        for (int m = 0; m <= L - 1; ++m) {
            const long double weight = pmf_a[static_cast<std::size_t>(n)] *
                                       pmf_b[static_cast<std::size_t>(m)];
            sum += weight * beta * (beta + 1.0L) * L / (L - n + beta * (L - m));
        }
    }
    return beta / (1.0L + p) + p / (1.0L + p) * sum;
}

// Closed form of beta*f(1) - f(beta) for the same-size layout: the diagonal
// terms cancel, the symmetric pairs collapse onto a (n-m)^2 kernel over
// N^A, N^B ~ BIN(L,q), and the n = L tail contributes q^L(1-q^L).
long double conditional_difference_same_size(int L, long double p, long double beta) {
    const long double q = 1.0L - p;
    const auto pmf = pmf_table_ld(L, q);
    long double sum = 0.0L;
    for (int n = 0; n <= L - 2; ++n) {
        for (int m = n + 1; m <= L - 1; ++m) {
            const long double weight =
                pmf[static_cast<std::size_t>(n)] * pmf[static_cast<std::size_t>(m)];
            const long double d1 = L - n + beta * (L - m);
            const long double d2 = L - m + beta * (L - n);
            const long double gap = static_cast<long double>(n - m);
            sum += weight * gap * gap / (d1 * d2);
        }
    }
    // sum carries pmf(n)*pmf(m) = C(L,n)C(L,m) q^{n+m} p^{2L-(n+m)}, one power
    // of p more than the kernel weight, so the p of the beta*p prefactor is
    // already inside it.
    const long double q_l = std::exp(L * std::log(q));
    return (beta - 1.0L) / (1.0L + p) * (beta * sum + q_l * (1.0L - q_l));
}

// f(beta) for z^A=(LA,p,1), z^B=(1,p,beta): Bob alive, N^A ~ BIN(LA,q),
//   c1 = beta/(1+p) * p*(LA+beta) / (LA + beta - n).
long double f_solo_bob(int LA, long double p, long double beta) {
    const long double q = 1.0L - p;
    const auto pmf = pmf_table_ld(LA, q);
    long double sum = 0.0L;
    for (int n = 0; n <= LA; ++n) {
        sum += pmf[static_cast<std::size_t>(n)] * beta * (LA + beta) / (LA + beta - n);
    }
    return beta / (1.0L + p) + p / (1.0L + p) * sum;
}

// Closed form of beta*f(1) - f(beta) for the solo-Bob layout.
long double conditional_difference_solo_bob(int LA, long double p, long double beta) {
    const long double q = 1.0L - p;
    const auto pmf = pmf_table_ld(LA, q);
    long double sum = 0.0L;
    for (int n = 0; n <= LA; ++n) {
        sum += pmf[static_cast<std::size_t>(n)] * n / ((LA + 1.0L - n) * (LA + beta - n));
    }
    return beta * (beta - 1.0L) * p / (1.0L + p) * sum;
}

// g = p*f + q*(c0 + estate term), where the estate pays beta*p/(1+p) only
// when the other `other_lives` members also all die.
long double unconditional_from_conditional(long double f, long double p, long double beta,
                                           int other_lives) {
    const long double q = 1.0L - p;
    const long double q_rest = std::exp(other_lives * std::log(q));
    return p * f + q * (beta / (1.0L + p) + beta * p / (1.0L + p) * q_rest);
}

GainReport build_report(long double f, long double f_unit, long double g, double beta) {
    GainReport report;
    report.expected_consumption = static_cast<double>(g);
    report.conditional_consumption = static_cast<double>(f);
    report.gain_per_unit = static_cast<double>((g - beta) / beta);
    report.conditional_relative_gain_per_unit = static_cast<double>((f - beta * f_unit) / beta);
    report.method = Method::closed_sum;
    report.std_error = 0.0;
    return report;
}

void check_closed_difference(long double direct, long double closed, const char* where) {
    if (std::fabs(direct - closed) > kClosedFormTolerance) {
        throw std::logic_error(std::string(where) +
                               ": closed-form difference disagrees with direct sums by " +
                               std::to_string(static_cast<double>(std::fabs(direct - closed))));
    }
}

}  // namespace

std::string method_name(Method m) {
    switch (m) {
        case Method::closed_sum: return "closed_sum";
        case Method::enumeration: return "enumeration";
        case Method::monte_carlo: return "monte_carlo";
    }
    return "unknown";
}

double paf_expected_survivor_value(int members, double survival_prob) {
    if (members < 1) {
        throw std::domain_error("paf_expected_survivor_value: members must be >= 1");
    }
    require_probability(survival_prob, "paf_expected_survivor_value");
    const long double p = survival_prob;
    const long double q = 1.0L - p;
    const auto pmf = pmf_table_ld(members - 1, q);  // deaths among the other L-1
    long double sum = 0.0L;
    for (int n = 0; n <= members - 1; ++n) {
        sum += static_cast<long double>(members) / (members - n) * pmf[static_cast<std::size_t>(n)];
    }
    const long double q_l = std::exp(members * std::log(q));
    return static_cast<double>(q_l + p * sum);
}

GainReport expected_consumption_same_size(int group_size, double survival_prob, double bob_wealth) {
    if (group_size < 2) {
        throw std::domain_error("expected_consumption_same_size: group_size must be >= 2, got " +
                                std::to_string(group_size));
    }
    require_probability(survival_prob, "expected_consumption_same_size");
    require_wealth(bob_wealth, "expected_consumption_same_size");

    const long double p = survival_prob;
    const long double beta = bob_wealth;
    const long double f = f_same_size(group_size, p, beta);
    const long double f_unit = f_same_size(group_size, p, 1.0L);
    check_closed_difference(beta * f_unit - f, conditional_difference_same_size(group_size, p, beta),
                            "expected_consumption_same_size");
    const long double g = unconditional_from_conditional(f, p, beta, 2 * group_size - 1);
    return build_report(f, f_unit, g, bob_wealth);
}

GainReport expected_consumption_solo_bob(int group_a_size, double survival_prob, double bob_wealth) {
    if (group_a_size < 1) {
        throw std::domain_error("expected_consumption_solo_bob: group_a_size must be >= 1, got " +
                                std::to_string(group_a_size));
    }
    require_probability(survival_prob, "expected_consumption_solo_bob");
    require_wealth(bob_wealth, "expected_consumption_solo_bob");

    const long double p = survival_prob;
    const long double beta = bob_wealth;
    const long double f = f_solo_bob(group_a_size, p, beta);
    const long double f_unit = f_solo_bob(group_a_size, p, 1.0L);
    check_closed_difference(beta * f_unit - f,
                            conditional_difference_solo_bob(group_a_size, p, beta),
                            "expected_consumption_solo_bob");
    const long double g = unconditional_from_conditional(f, p, beta, group_a_size);
    return build_report(f, f_unit, g, bob_wealth);
}

GainReport expected_consumption(const PropositionConfig& config) {
    return config.layout == PropositionLayout::same_size
               ? expected_consumption_same_size(config.group_a_size, config.survival_prob,
                                                config.bob_wealth)
               : expected_consumption_solo_bob(config.group_a_size, config.survival_prob,
                                               config.bob_wealth);
}

double expected_gain_per_unit(const GainReport& report, double bob_contribution) {
    if (!(bob_contribution > 0.0)) {
        throw std::domain_error("expected_gain_per_unit: contribution must be > 0");
    }
    return (report.expected_consumption - bob_contribution) / bob_contribution;
}

double conditional_relative_gain_per_unit(const PropositionConfig& config) {
    return expected_consumption(config).conditional_relative_gain_per_unit;
}

bool proposition_sign_check(const PropositionConfig& config) {
    const GainReport report = expected_consumption(config);
    const double beta = config.bob_wealth;
    const double unconditional_diff = beta - report.expected_consumption;        // F0B - g(beta)
    const double conditional_diff = -beta * report.conditional_relative_gain_per_unit;  // beta*f(1) - f(beta)
    if (std::fabs(beta - 1.0) < 1e-15) {
        return std::fabs(unconditional_diff) < kClosedFormTolerance &&
               std::fabs(conditional_diff) < kClosedFormTolerance;
    }
    const double sign = beta > 1.0 ? 1.0 : -1.0;
    return sign * unconditional_diff > 0.0 && sign * conditional_diff > 0.0;
}

double no_death_mea_harmonic(double pa, double pb) {
    return 2.0 * pa * pb / (pa + pb);
}

bool mea_no_death_bound_check(double pa, double pb) {
    if (!(pa > 0.0 && pa < 1.0 && pb > 0.0 && pb < 1.0)) {
        throw std::domain_error("mea_no_death_bound_check: probabilities must lie in (0,1)");
    }
    if (!(pa < pb)) {
        throw std::domain_error("mea_no_death_bound_check: requires pa < pb");
    }
    const double factor = no_death_mea_harmonic(pa, pb);
    return factor > pa && factor < pb;
}

}  // namespace poolann

#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "poolann/hetero_gsa.hpp"
#include "poolann/numerics.hpp"
#include "poolann/philox.hpp"
#include "poolann/schemes.hpp"

using namespace poolann;

namespace {

const HeterogeneousFund kAliceBobFund{{GroupProfile{1, 0.5, 1.0}, GroupProfile{1, 0.5, 2.0}}};

double uniform_in(ReplicationStream& stream, double lo, double hi) {
    return lo + (hi - lo) * stream.next_double();
}

}  // namespace

TEST_CASE("initial consumption and post-consumption wealth") {
    CHECK(initial_consumption({10, 0.9, 1.0}) == doctest::Approx(1.0 / 1.9).epsilon(1e-15));
    CHECK(initial_consumption({1, 0.5, 2.0}) == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
    CHECK(initial_consumption({5, 1.0 - 1e-12, 1.0}) == doctest::Approx(0.5).epsilon(1e-11));

    CHECK(post_consumption_wealth({10, 0.9, 1.0}) == doctest::Approx(0.9 / 1.9).epsilon(1e-15));
    CHECK(post_consumption_wealth({1, 0.5, 2.0}) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK_THROWS_AS(initial_consumption({0, 0.9, 1.0}), std::invalid_argument);
}

TEST_CASE("mortality experience adjustment") {
    // Exact Eq.-style substitution with F0+_A = 0.8/1.8, F0+_B = 0.9/1.9:
    // remaining fund / survivor-weighted fund = 157/185 on the no-death event.
    const HeterogeneousFund fund{{GroupProfile{10, 0.8, 1.0}, GroupProfile{10, 0.9, 1.0}}};
    CHECK(mea(fund, MortalityOutcome{{0, 0}}) == doctest::Approx(157.0 / 185.0).epsilon(1e-13));

    // One-member groups, Alice dead: remaining fund 1, denominator (4/3)/0.5 * ... = 4/3.
    CHECK(mea(kAliceBobFund, MortalityOutcome{{1, 0}}) == doctest::Approx(0.75).epsilon(1e-14));
    CHECK(mea(kAliceBobFund, MortalityOutcome{{0, 0}}) == doctest::Approx(0.5).epsilon(1e-14));

    CHECK_THROWS_AS(mea(kAliceBobFund, MortalityOutcome{{1, 1}}), std::domain_error);
    CHECK_THROWS_AS(mea(kAliceBobFund, MortalityOutcome{{2, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(mea(kAliceBobFund, MortalityOutcome{{0}}), std::invalid_argument);
}

TEST_CASE("adjustment is exactly one when deaths land on expectation") {
    const HeterogeneousFund fund{
        {GroupProfile{10, 0.9, 1.0}, GroupProfile{20, 0.8, 3.0}, GroupProfile{4, 0.5, 0.25}}};
    CHECK(rel_diff(mea(fund, MortalityOutcome{{1, 4, 2}}), 1.0) < 1e-12);
}

TEST_CASE("time-1 consumption scales the initial payment by the adjustment") {
    const HeterogeneousFund fund{{GroupProfile{10, 0.9, 1.0}, GroupProfile{20, 0.8, 3.0}}};
    const MortalityOutcome expected{{1, 4}};
    for (std::size_t g = 0; g < 2; ++g) {
        CHECK(rel_diff(time1_consumption(fund, expected, g), initial_consumption(fund.groups[g])) <
              1e-12);
    }

    CHECK(time1_consumption(kAliceBobFund, MortalityOutcome{{0, 0}}, 1) ==
          doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    CHECK(time1_consumption(kAliceBobFund, MortalityOutcome{{1, 0}}, 1) ==
          doctest::Approx(1.0).epsilon(1e-14));
    CHECK_THROWS_AS(time1_consumption(kAliceBobFund, MortalityOutcome{{0, 1}}, 1),
                    std::domain_error);
}

TEST_CASE("estate rule pays the time-0 notional values on the all-dead event") {
    const HeterogeneousFund fund{{GroupProfile{1, 0.5, 2.0}, GroupProfile{2, 0.9, 1.0}}};
    const auto estates = estate_rule(fund, MortalityOutcome{{1, 2}});
    REQUIRE(estates.size() == 2);
    CHECK(estates[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(estates[1] == doctest::Approx(0.9 / 1.9).epsilon(1e-15));

    CHECK_THROWS_AS(estate_rule(fund, MortalityOutcome{{1, 1}}), std::logic_error);
    CHECK_THROWS_AS(estate_rule(fund, MortalityOutcome{{0, 0}}), std::logic_error);
}

TEST_CASE("survivors consume exactly the remaining fund") {
    ReplicationStream stream(555, 0);
    for (int trial = 0; trial < 2000; ++trial) {
        const int k = 1 + static_cast<int>(stream.next_double() * 3.0);
        HeterogeneousFund fund;
        MortalityOutcome outcome;
        bool any_survivor = false;
        for (int g = 0; g < k; ++g) {
            const int size = 1 + static_cast<int>(stream.next_double() * 25.0);
            fund.groups.push_back(
                GroupProfile{size, uniform_in(stream, 0.05, 0.95), uniform_in(stream, 0.1, 10.0)});
            outcome.deaths.push_back(static_cast<int>(stream.next_double() * (size + 1.0)));
            if (outcome.deaths.back() > size) outcome.deaths.back() = size;
            any_survivor = any_survivor || outcome.deaths.back() < size;
        }
        if (!any_survivor) continue;

        long double consumed = 0.0L;
        long double remaining = 0.0L;
        for (std::size_t g = 0; g < fund.groups.size(); ++g) {
            remaining += static_cast<long double>(post_consumption_wealth(fund.groups[g])) *
                         fund.groups[g].size;
            if (outcome.deaths[g] < fund.groups[g].size) {
                consumed += static_cast<long double>(time1_consumption(fund, outcome, g)) *
                            (fund.groups[g].size - outcome.deaths[g]);
            }
        }
        CHECK(rel_diff(static_cast<double>(consumed), static_cast<double>(remaining)) < 1e-12);
    }
}

TEST_CASE("no-death event: the adjustment sits between the survival probabilities") {
    ReplicationStream stream(556, 0);
    for (int trial = 0; trial < 2000; ++trial) {
        const double pa = uniform_in(stream, 0.02, 0.97);
        const double pb = uniform_in(stream, pa + 1e-4, 0.99);
        const int size = 1 + static_cast<int>(stream.next_double() * 50.0);
        const HeterogeneousFund fund{{GroupProfile{size, pa, 1.0}, GroupProfile{size, pb, 1.0}}};
        const double adjusted = mea(fund, MortalityOutcome{{0, 0}});
        CHECK(adjusted > pa);
        CHECK(adjusted < pb);
        // hence A survivors' notional wealth rises while B survivors' falls
        const double c0a = initial_consumption(fund.groups[0]);
        const double c0b = initial_consumption(fund.groups[1]);
        CHECK(adjusted * c0a > post_consumption_wealth(fund.groups[0]));
        CHECK(adjusted * c0b < post_consumption_wealth(fund.groups[1]));
    }
}

TEST_CASE("two identical groups behave like one homogeneous GSA") {
    const int half = 6;
    const double p = 0.85;
    const double wealth = 2.5;
    const HeterogeneousFund fund{{GroupProfile{half, p, wealth}, GroupProfile{half, p, wealth}}};
    const double c0_rate = 1.0 / (1.0 + p);
    for (int n1 = 0; n1 <= half; ++n1) {
        for (int n2 = 0; n2 <= half; ++n2) {
            const int deaths = n1 + n2;
            if (deaths == 2 * half) continue;
            const HomogeneousScenario merged{2 * half, deaths, c0_rate};
            const double gsa = wealth * gsa_homog_survivor_value(merged);
            for (std::size_t g = 0; g < 2; ++g) {
                const int group_deaths = g == 0 ? n1 : n2;
                if (group_deaths < half) {
                    CHECK(rel_diff(time1_consumption(fund, MortalityOutcome{{n1, n2}}, g), gsa) <
                          1e-12);
                }
            }
        }
    }
}

TEST_CASE("consumption report") {
    const ConsumptionReport report = consumption_report(kAliceBobFund, MortalityOutcome{{1, 0}});
    CHECK(report.mea == doctest::Approx(0.75).epsilon(1e-14));
    CHECK(report.c0[1] == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
    CHECK(report.c1[1] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(report.c1[0] == 0.0);      // no survivor in group 0
    CHECK(report.estate[0] == 0.0);  // estates only on the all-dead event
    CHECK(report.estate[1] == 0.0);

    const ConsumptionReport wiped = consumption_report(kAliceBobFund, MortalityOutcome{{1, 1}});
    CHECK(wiped.c1[0] == 0.0);
    CHECK(wiped.c1[1] == 0.0);
    CHECK(wiped.estate[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(wiped.estate[1] == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(wiped.mea == 0.0);
}

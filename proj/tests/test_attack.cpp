// Copyright (c) 2026 The nakasim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <nakasim/consensus.h>

#include <boost/multiprecision/cpp_dec_float.hpp>

#include <doctest.h>

#include <cmath>

using namespace nakasim;

namespace {

using Decimal = boost::multiprecision::cpp_dec_float_50;

// 50-digit evaluation of the closed form, written separately from the library.
double OracleCatchup(double q_in, int z)
{
    const Decimal q(q_in);
    const Decimal p = 1 - q;
    const Decimal lambda = z * q / p;
    Decimal sum = 1;
    Decimal factorial = 1;
    for (int k = 0; k <= z; ++k) {
        if (k > 0) factorial *= k;
        const Decimal pois = exp(-lambda) * pow(lambda, k) / factorial;
        sum -= pois * (1 - pow(q / p, z - k));
    }
    return sum.convert_to<double>();
}

} // namespace

TEST_CASE("closed form matches the high-precision oracle")
{
    // mpmath values from tests/oracles/compute_oracles.py.
    CHECK(CatchupProbabilityClosedForm(0.1, 6) == doctest::Approx(0.00024280274536288625).epsilon(1e-12));
    CHECK(CatchupProbabilityClosedForm(0.3, 6) == doctest::Approx(0.13211116871353526).epsilon(1e-12));
    CHECK(CatchupProbabilityClosedForm(0.1, 5) == doctest::Approx(0.00091368218792777439).epsilon(1e-12));
    CHECK(CatchupProbabilityClosedForm(0.3, 5) == doctest::Approx(0.17735231136094511).epsilon(1e-12));
    for (double q : {0.05, 0.15, 0.25, 0.35, 0.45}) {
        for (int z = 0; z <= 10; ++z) {
            CHECK(CatchupProbabilityClosedForm(q, z) == doctest::Approx(OracleCatchup(q, z)).epsilon(1e-12));
        }
    }
    CHECK(CatchupProbabilityClosedForm(0.0, 6) == 0.0);
    CHECK(CatchupProbabilityClosedForm(0.2, 0) == 1.0);
}

TEST_CASE("attacker catch-up boundaries")
{
    const AttackEstimate never = AttackerCatchupProbability({0.0, 3, 1000, 1});
    CHECK(never.probability == 0.0);
    CHECK(never.standard_error == 0.0);

    const AttackEstimate even = AttackerCatchupProbability({0.3, 0, 1000, 1});
    CHECK(even.probability == 1.0);
    CHECK(even.successes == 1000);
}

TEST_CASE("monte carlo agrees with the closed form")
{
    const AttackEstimate est = AttackerCatchupProbability({0.1, 6, 100'000, 2024});
    const double oracle = OracleCatchup(0.1, 6);
    CHECK(std::fabs(est.probability - oracle) <= 3.0 * est.standard_error);
    CHECK(est.trials == 100'000);
    CHECK(est.successes + est.truncated == est.trials);
}

TEST_CASE("monte carlo is deterministic per seed")
{
    const AttackEstimate a = AttackerCatchupProbability({0.3, 4, 20'000, 9});
    const AttackEstimate b = AttackerCatchupProbability({0.3, 4, 20'000, 9});
    CHECK(a.successes == b.successes);
    CHECK(a.probability == b.probability);
}

TEST_CASE("attack query validation")
{
    CHECK_THROWS_AS(AttackerCatchupProbability({1.0, 6, 10, 0}), std::invalid_argument);
    CHECK_THROWS_AS(AttackerCatchupProbability({-0.1, 6, 10, 0}), std::invalid_argument);
    CHECK_THROWS_AS(AttackerCatchupProbability({0.1, -1, 10, 0}), std::invalid_argument);
    CHECK_THROWS_AS(AttackerCatchupProbability({0.1, 6, 0, 0}), std::invalid_argument);
}

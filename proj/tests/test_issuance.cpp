// Copyright (c) 2026 The nakasim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <nakasim/issuance.h>

#include <doctest.h>

#include <stdexcept>

using namespace nakasim;

namespace {

// Independent of the implementation: per-era subsidy by repeated integer halving.
Amount OracleTotalSupply()
{
    Amount total = 0;
    Amount subsidy = 5'000'000'000;
    for (int era = 0; era <= 32; ++era) {
        total += 210'000 * subsidy;
        subsidy /= 2;
    }
    return total;
}

} // namespace

TEST_CASE("era_of")
{
    CHECK(EraOf(0) == 0);
    CHECK(EraOf(209'999) == 0);
    CHECK(EraOf(210'000) == 1);
    CHECK(EraOf(840'000) == 4);
    CHECK_THROWS_AS(EraOf(-1), std::domain_error);
}

TEST_CASE("block subsidy milestones")
{
    CHECK(BlockSubsidy(0) == 5'000'000'000);
    CHECK(BlockSubsidy(210'000) == 2'500'000'000);
    CHECK(BlockSubsidy(420'000) == 1'250'000'000);
    CHECK(BlockSubsidy(630'000) == 625'000'000);
    CHECK(BlockSubsidy(840'000) == 312'500'000);
    CHECK(BlockSubsidy(210'000 * 32) == 1);
    CHECK(BlockSubsidy(210'000 * 33) == 0);
    CHECK(BlockSubsidy(210'000 * 33 - 1) == 1);
    CHECK(BlockSubsidy(int64_t{1} << 40) == 0);
}

TEST_CASE("halving identity")
{
    // 50 BTC = 5^10 * 2^9 sat, so doubling is exact through era 8 and floors after.
    for (int64_t era = 0; era <= 32; ++era) {
        for (int64_t offset : {int64_t{0}, int64_t{1}, int64_t{104'999}, int64_t{209'999}}) {
            const int64_t h = era * 210'000 + offset;
            REQUIRE(BlockSubsidy(h + 210'000) == BlockSubsidy(h) / 2);
            if (era <= 8) REQUIRE(BlockSubsidy(h) == 2 * BlockSubsidy(h + 210'000));
        }
    }
    CHECK(BlockSubsidy(9 * 210'000) == 9'765'625);
    CHECK(BlockSubsidy(10 * 210'000) == 4'882'812);
    // Era 31 -> 32: 2 sat -> 1 sat, still exact; era 32 -> 33 floors 1 sat to 0.
    CHECK(BlockSubsidy(31 * 210'000) == 2);
    CHECK(BlockSubsidy(32 * 210'000) == 1);
    CHECK(BlockSubsidy(33 * 210'000) == 0);
}

TEST_CASE("exactly 33 eras carry a subsidy")
{
    int positive = 0;
    for (int64_t era = 0; era < 70; ++era) {
        if (BlockSubsidy(era * 210'000) > 0) ++positive;
    }
    CHECK(positive == 33);
}

TEST_CASE("cumulative supply")
{
    CHECK(CumulativeSupply(0) == 5'000'000'000);
    CHECK(CumulativeSupply(209'999) == 1'050'000'000'000'000);
    CHECK(CumulativeSupply(210'000) == 1'050'000'000'000'000 + 2'500'000'000);

    const Amount total = OracleTotalSupply();
    CHECK(total == 2'099'999'997'690'000);
    CHECK(CumulativeSupply(6'929'999) == total);
    CHECK(CumulativeSupply(6'930'000) == total);
    CHECK(CumulativeSupply(100'000'000) == total);
    CHECK(total < issuance::SUPPLY_CAP);

    // Brute-force running sum over the first eras, sampled at era edges.
    Amount running = 0;
    for (int64_t h = 0; h < 3 * 210'000; ++h) {
        running += BlockSubsidy(h);
        if (h % 52'500 == 52'499 || h % 210'000 == 0) REQUIRE(CumulativeSupply(h) == running);
    }
}

TEST_CASE("cumulative supply is monotone and capped")
{
    Amount prev = 0;
    for (int64_t h = 0; h < 8'000'000; h += 9'973) {
        const Amount s = CumulativeSupply(h);
        REQUIRE(s >= prev);
        REQUIRE(s < issuance::SUPPLY_CAP);
        prev = s;
    }
}

TEST_CASE("halving heights")
{
    CHECK(HalvingHeight(1) == 210'000);
    CHECK(HalvingHeight(4) == 840'000);
    CHECK(HalvingHeight(33) == 6'930'000);
    CHECK(BlockSubsidy(HalvingHeight(33)) == 0);
    CHECK(BlockSubsidy(HalvingHeight(33) - 1) > 0);
    CHECK_THROWS_AS(HalvingHeight(0), std::domain_error);
    CHECK(BlocksToDays(210'000) == doctest::Approx(1458.333).epsilon(1e-6));
}

TEST_CASE("security budget projection")
{
    const auto zero_fees = ProjectSecurityBudget(0, 0, 0);
    REQUIRE(zero_fees.size() == 1);
    CHECK(zero_fees[0].subsidy_share == 1.0);

    const auto equal = ProjectSecurityBudget(5'000'000'000, 0, 0);
    CHECK(equal[0].subsidy_share == 0.5);

    const auto empty = ProjectSecurityBudget(0, 33, 34);
    CHECK(empty[0].subsidy_share == 0.0);
    CHECK(empty[1].subsidy_sat == 0);

    // Constant positive fees: share strictly decreases until era 33, then 0.
    const Amount fees = 10'000'000;
    const auto proj = ProjectSecurityBudget(fees, 0, 40);
    REQUIRE(proj.size() == 41);
    for (std::size_t i = 0; i < proj.size(); ++i) {
        const double closed = static_cast<double>(proj[i].subsidy_sat) / static_cast<double>(proj[i].subsidy_sat + fees);
        CHECK(proj[i].subsidy_share == closed);
        CHECK(proj[i].subsidy_sat == BlockSubsidy(static_cast<int64_t>(i) * 210'000));
        if (i >= 1 && i <= 33) CHECK(proj[i].subsidy_share < proj[i - 1].subsidy_share);
        if (i >= 33) CHECK(proj[i].subsidy_share == 0.0);
    }

    const auto curve = ProjectSecurityBudget(std::vector<Amount>{0, 100, 200}, 2);
    CHECK(curve[0].era == 2);
    CHECK(curve[2].assumed_fees_sat_per_block == 200);
    CHECK_THROWS_AS(ProjectSecurityBudget(-1, 0, 1), std::domain_error);
}

// Copyright (c) 2026 The nakasim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef NAKASIM_ISSUANCE_H
#define NAKASIM_ISSUANCE_H

#include <nakasim/params.h>

#include <cstdint>
#include <vector>

namespace nakasim {

namespace issuance {

static constexpr int64_t BLOCKS_PER_ERA = 210'000;
static constexpr Amount INITIAL_SUBSIDY = 50 * COIN;
/** Last era with a non-zero subsidy (1 satoshi). */
static constexpr int LAST_SUBSIDIZED_ERA = 32;
static constexpr Amount SUPPLY_CAP = 21'000'000 * COIN;

static_assert(INITIAL_SUBSIDY / COIN == 50);
static_assert((INITIAL_SUBSIDY >> LAST_SUBSIDIZED_ERA) == 1);
static_assert((INITIAL_SUBSIDY >> (LAST_SUBSIDIZED_ERA + 1)) == 0);

} // namespace issuance

// All height arguments must be >= 0; negative heights throw std::domain_error.

int64_t EraOf(int64_t height);
Amount BlockSubsidy(int64_t height);
/** Sum of subsidies for every height in [0, height]. */
Amount CumulativeSupply(int64_t height);
/** First height of the n-th halving era (n >= 1). */
int64_t HalvingHeight(int64_t n);

/** Calendar span of a number of blocks at the 600 s target spacing. */
double BlocksToDays(int64_t blocks);

struct BudgetEra {
    int64_t era{0};
    Amount subsidy_sat{0};
    Amount assumed_fees_sat_per_block{0};
    /** subsidy / (subsidy + fees); 0 when both are zero. */
    double subsidy_share{0.0};
};

using BudgetProjection = std::vector<BudgetEra>;

/** Constant fee assumption over eras [first_era, last_era]. */
BudgetProjection ProjectSecurityBudget(Amount fees_sat_per_block, int64_t first_era, int64_t last_era);
/** Per-era fee curve; element i applies to era first_era + i. */
BudgetProjection ProjectSecurityBudget(const std::vector<Amount>& fees_per_era, int64_t first_era);

} // namespace nakasim

#endif // NAKASIM_ISSUANCE_H

// Copyright (c) 2026 The nakasim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <nakasim/issuance.h>

#include <stdexcept>
#include <string>

namespace nakasim {

namespace {

void RequireNonNegative(int64_t value, const char* what)
{
    if (value < 0) throw std::domain_error(std::string(what) + " must be >= 0");
}

Amount SubsidyForEra(int64_t era)
{
    if (era > issuance::LAST_SUBSIDIZED_ERA) return 0;
    return issuance::INITIAL_SUBSIDY >> era;
}

} // namespace

int64_t EraOf(int64_t height)
{
    RequireNonNegative(height, "height");
    return height / issuance::BLOCKS_PER_ERA;
}

Amount BlockSubsidy(int64_t height)
{
    return SubsidyForEra(EraOf(height));
}

Amount CumulativeSupply(int64_t height)
{
    const int64_t era = EraOf(height);
    Amount total = 0;
    for (int64_t e = 0; e < era && e <= issuance::LAST_SUBSIDIZED_ERA; ++e) {
        total += issuance::BLOCKS_PER_ERA * SubsidyForEra(e);
    }
    const int64_t into_era = height - era * issuance::BLOCKS_PER_ERA + 1;
    return total + into_era * SubsidyForEra(era);
}

int64_t HalvingHeight(int64_t n)
{
    if (n < 1) throw std::domain_error("halving ordinal must be >= 1");
    return n * issuance::BLOCKS_PER_ERA;
}

double BlocksToDays(int64_t blocks)
{
    return static_cast<double>(blocks) * TARGET_SPACING_SECONDS / 86400.0;
}

BudgetProjection ProjectSecurityBudget(const std::vector<Amount>& fees_per_era, int64_t first_era)
{
    RequireNonNegative(first_era, "first_era");
    BudgetProjection out;
    out.reserve(fees_per_era.size());
    for (std::size_t i = 0; i < fees_per_era.size(); ++i) {
        RequireNonNegative(fees_per_era[i], "fee assumption");
        BudgetEra rec;
        rec.era = first_era + static_cast<int64_t>(i);
        rec.subsidy_sat = BlockSubsidy(rec.era * issuance::BLOCKS_PER_ERA);
        rec.assumed_fees_sat_per_block = fees_per_era[i];
        const Amount total = rec.subsidy_sat + rec.assumed_fees_sat_per_block;
        rec.subsidy_share = total == 0 ? 0.0 : static_cast<double>(rec.subsidy_sat) / static_cast<double>(total);
        out.push_back(rec);
    }
    return out;
}

BudgetProjection ProjectSecurityBudget(Amount fees_sat_per_block, int64_t first_era, int64_t last_era)
{
    if (last_era < first_era) throw std::domain_error("last_era must be >= first_era");
    return ProjectSecurityBudget(std::vector<Amount>(static_cast<std::size_t>(last_era - first_era + 1), fees_sat_per_block),
                                 first_era);
}

} // namespace nakasim

// Copyright (c) 2026 The nakasim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef NAKASIM_MEMPOOL_H
#define NAKASIM_MEMPOOL_H

#include <nakasim/chain.h>

#include <map>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace nakasim {

class DuplicateId : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/** Pending transactions keyed by id. No eviction, expiry or replacement. */
class Mempool
{
public:
    /** Throws DuplicateId (pool unchanged) or InvalidBlock for a malformed transaction. */
    void Submit(const SimTransaction& tx);
    /** Returns false if the id was not present. */
    bool Remove(TxId id);
    bool Contains(TxId id) const { return m_pending.count(id) != 0; }
    std::size_t Size() const { return m_pending.size(); }
    bool Empty() const { return m_pending.empty(); }

    const std::map<TxId, SimTransaction>& Pending() const { return m_pending; }

private:
    std::map<TxId, SimTransaction> m_pending;
};

struct BlockTemplate {
    std::vector<SimTransaction> transactions;
    int64_t total_weight_wu{0};
    Amount total_fees_sat{0};
};

/** fee_a / weight_a > fee_b / weight_b, compared exactly in integers; ties by smaller id. */
bool FeerateOrder(const SimTransaction& a, const SimTransaction& b);

/**
 * Greedy selection by descending feerate, skipping any transaction that no
 * longer fits. Not knapsack-optimal.
 */
BlockTemplate BuildTemplate(const Mempool& pool, int64_t max_weight_wu = MAX_BLOCK_WEIGHT);
BlockTemplate BuildTemplate(std::vector<SimTransaction> candidates, int64_t max_weight_wu = MAX_BLOCK_WEIGHT);

/** Subsidy at `height` plus template fees. The coinbase itself carries no weight. */
Amount BlockReward(const BlockTemplate& tmpl, int64_t height);

/** Parse a JSON array of {id, fee_sat, weight_wu} into a pool. */
Mempool ParsePoolJson(std::string_view json_text);

} // namespace nakasim

#endif // NAKASIM_MEMPOOL_H

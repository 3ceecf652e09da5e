// Copyright (c) 2026 The nakasim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <nakasim/issuance.h>
#include <nakasim/mempool.h>

#include <json.hpp>

#include <algorithm>
#include <string>

namespace nakasim {

void Mempool::Submit(const SimTransaction& tx)
{
    CheckTransaction(tx);
    if (!m_pending.emplace(tx.id, tx).second) {
        throw DuplicateId("transaction " + std::to_string(tx.id) + " already in pool");
    }
}

bool Mempool::Remove(TxId id)
{
    return m_pending.erase(id) != 0;
}

bool FeerateOrder(const SimTransaction& a, const SimTransaction& b)
{
    // fee <= 2.1e15 and weight <= 4e6, so the cross products fit in 128 bits.
    const __int128 lhs = static_cast<__int128>(a.fee_sat) * b.weight_wu;
    const __int128 rhs = static_cast<__int128>(b.fee_sat) * a.weight_wu;
    if (lhs != rhs) return lhs > rhs;
    return a.id < b.id;
}

BlockTemplate BuildTemplate(std::vector<SimTransaction> candidates, int64_t max_weight_wu)
{
    if (max_weight_wu <= 0) throw std::invalid_argument("max_weight_wu must be > 0");
    std::sort(candidates.begin(), candidates.end(), FeerateOrder);

    BlockTemplate tmpl;
    for (const auto& tx : candidates) {
        if (tmpl.total_weight_wu + tx.weight_wu > max_weight_wu) continue;
        tmpl.total_weight_wu += tx.weight_wu;
        tmpl.total_fees_sat += tx.fee_sat;
        tmpl.transactions.push_back(tx);
    }
    return tmpl;
}

BlockTemplate BuildTemplate(const Mempool& pool, int64_t max_weight_wu)
{
    std::vector<SimTransaction> candidates;
    candidates.reserve(pool.Size());
    for (const auto& [id, tx] : pool.Pending()) candidates.push_back(tx);
    return BuildTemplate(std::move(candidates), max_weight_wu);
}

Amount BlockReward(const BlockTemplate& tmpl, int64_t height)
{
    return BlockSubsidy(height) + tmpl.total_fees_sat;
}

Mempool ParsePoolJson(std::string_view json_text)
{
    const auto doc = nlohmann::json::parse(json_text);
    if (!doc.is_array()) throw std::invalid_argument("pool fixture must be a JSON array");
    Mempool pool;
    for (const auto& item : doc) {
        SimTransaction tx;
        tx.id = item.at("id").get<TxId>();
        tx.fee_sat = item.at("fee_sat").get<Amount>();
        tx.weight_wu = item.at("weight_wu").get<int64_t>();
        pool.Submit(tx);
    }
    return pool;
}

} // namespace nakasim

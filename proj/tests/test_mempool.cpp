// Copyright (c) 2026 The nakasim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <nakasim/issuance.h>
#include <nakasim/mempool.h>
#include <nakasim/random.h>

#include <doctest.h>

#include <algorithm>

using namespace nakasim;

namespace {

// Exhaustive knapsack over all subsets; pools stay small.
Amount BruteForceBest(const std::vector<SimTransaction>& txs, int64_t capacity)
{
    Amount best = 0;
    const std::size_t n = txs.size();
    for (uint32_t mask = 0; mask < (1u << n); ++mask) {
        int64_t weight = 0;
        Amount fees = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (mask & (1u << i)) {
                weight += txs[i].weight_wu;
                fees += txs[i].fee_sat;
            }
        }
        if (weight <= capacity) best = std::max(best, fees);
    }
    return best;
}

} // namespace

TEST_CASE("submit_tx")
{
    Mempool pool;
    CHECK_NOTHROW(pool.Submit({1, 0, 100}));
    CHECK(pool.Contains(1));
    CHECK_THROWS_AS(pool.Submit({1, 50, 100}), DuplicateId);
    CHECK(pool.Pending().at(1).fee_sat == 0);
    CHECK_THROWS_AS(pool.Submit({2, 10, 4'000'001}), InvalidBlock);
    CHECK(pool.Size() == 1);
    CHECK(pool.Remove(1));
    CHECK_FALSE(pool.Remove(1));
}

TEST_CASE("build_template examples")
{
    CHECK(BuildTemplate(Mempool{}).transactions.empty());
    CHECK(BuildTemplate(Mempool{}).total_fees_sat == 0);

    const int64_t w = 1000;
    const auto ordered = BuildTemplate({{1, 5, w}, {2, 1, w}, {3, 9, w}}, 2 * w);
    REQUIRE(ordered.transactions.size() == 2);
    CHECK(ordered.transactions[0].fee_sat == 9);
    CHECK(ordered.transactions[1].fee_sat == 5);
    CHECK(ordered.total_fees_sat == 14);
    CHECK(ordered.total_weight_wu == 2 * w);

    const std::vector<SimTransaction> counter = {{1, 10, 3}, {2, 6, 2}, {3, 6, 2}};
    const auto greedy = BuildTemplate(counter, 4);
    CHECK(greedy.total_fees_sat == 10);
    CHECK(BruteForceBest(counter, 4) == 12);

    CHECK_THROWS_AS(BuildTemplate(Mempool{}, 0), std::invalid_argument);
}

TEST_CASE("feerate ties break by id")
{
    const auto tmpl = BuildTemplate({{7, 20, 10}, {3, 10, 5}, {5, 40, 20}}, 100);
    REQUIRE(tmpl.transactions.size() == 3);
    CHECK(tmpl.transactions[0].id == 3);
    CHECK(tmpl.transactions[1].id == 5);
    CHECK(tmpl.transactions[2].id == 7);
}

TEST_CASE("template invariants on random pools")
{
    Rng rng(21);
    for (int round = 0; round < 100; ++round) {
        Mempool pool;
        const int n = 1 + static_cast<int>(rng.NextU64() % 400);
        for (int i = 0; i < n; ++i) {
            pool.Submit({static_cast<TxId>(i), static_cast<Amount>(rng.NextU64() % 100'000),
                         1 + static_cast<int64_t>(rng.NextU64() % 100'000)});
        }
        const int64_t cap = 1 + static_cast<int64_t>(rng.NextU64() % MAX_BLOCK_WEIGHT);
        const BlockTemplate tmpl = BuildTemplate(pool, cap);
        REQUIRE(tmpl.total_weight_wu <= cap);
        int64_t weight = 0;
        Amount fees = 0;
        for (std::size_t i = 0; i < tmpl.transactions.size(); ++i) {
            weight += tmpl.transactions[i].weight_wu;
            fees += tmpl.transactions[i].fee_sat;
            if (i > 0) REQUIRE_FALSE(FeerateOrder(tmpl.transactions[i], tmpl.transactions[i - 1]));
        }
        CHECK(weight == tmpl.total_weight_wu);
        CHECK(fees == tmpl.total_fees_sat);

        // Deleting a transaction greedy skipped leaves the template unchanged.
        for (const auto& [id, tx] : pool.Pending()) {
            const bool selected = std::any_of(tmpl.transactions.begin(), tmpl.transactions.end(),
                                              [&](const SimTransaction& t) { return t.id == id; });
            if (selected) continue;
            Mempool smaller = pool;
            smaller.Remove(id);
            const BlockTemplate again = BuildTemplate(smaller, cap);
            CHECK(again.total_fees_sat == tmpl.total_fees_sat);
            CHECK(again.transactions.size() == tmpl.transactions.size());
            break;
        }
    }
}

TEST_CASE("deleting a winner")
{
    Rng rng(31);
    for (int round = 0; round < 100; ++round) {
        Mempool pool;
        const int64_t w = 1 + static_cast<int64_t>(rng.NextU64() % 50'000);
        for (int i = 0; i < 60; ++i) pool.Submit({static_cast<TxId>(i), static_cast<Amount>(rng.NextU64() % 10'000), w});
        const int64_t cap = w * (1 + static_cast<int64_t>(rng.NextU64() % 40));
        const BlockTemplate tmpl = BuildTemplate(pool, cap);
        Mempool smaller = pool;
        smaller.Remove(tmpl.transactions[rng.NextU64() % tmpl.transactions.size()].id);
        CHECK(BuildTemplate(smaller, cap).total_fees_sat <= tmpl.total_fees_sat);
    }

    // With unequal weights the freed space can be refilled more profitably.
    Mempool counter = ParsePoolJson(R"([{"id": 1, "fee_sat": 10, "weight_wu": 3},
                                        {"id": 2, "fee_sat": 6, "weight_wu": 2},
                                        {"id": 3, "fee_sat": 6, "weight_wu": 2}])");
    CHECK(BuildTemplate(counter, 4).total_fees_sat == 10);
    counter.Remove(1);
    CHECK(BuildTemplate(counter, 4).total_fees_sat == 12);
}

TEST_CASE("greedy equals brute force on equal weights")
{
    Rng rng(8);
    for (int round = 0; round < 50; ++round) {
        const std::size_t n = 1 + rng.NextU64() % 12;
        const int64_t w = 1 + static_cast<int64_t>(rng.NextU64() % 1000);
        std::vector<SimTransaction> txs;
        for (std::size_t i = 0; i < n; ++i) txs.push_back({i, static_cast<Amount>(rng.NextU64() % 1000), w});
        const int64_t cap = w * static_cast<int64_t>(rng.NextU64() % (n + 1)) + static_cast<int64_t>(rng.NextU64() % w);
        if (cap <= 0) continue;
        CHECK(BuildTemplate(txs, cap).total_fees_sat == BruteForceBest(txs, cap));
    }
}

TEST_CASE("block reward")
{
    CHECK(BlockReward(BlockTemplate{}, 0) == 5'000'000'000);
    BlockTemplate fees_only;
    fees_only.total_fees_sat = 1000;
    CHECK(BlockReward(fees_only, 210'000 * 33) == 1000);
    BlockTemplate busy;
    busy.total_fees_sat = 250'000'000;
    CHECK(BlockReward(busy, 630'000) == 625'000'000 + 250'000'000);
    CHECK(BlockReward(busy, 630'000) == 875'000'000);
}

TEST_CASE("pool fixtures from JSON")
{
    const Mempool pool = ParsePoolJson(R"([{"id": 1, "fee_sat": 10, "weight_wu": 3},
                                           {"id": 2, "fee_sat": 6, "weight_wu": 2},
                                           {"id": 3, "fee_sat": 0, "weight_wu": 2}])");
    CHECK(pool.Size() == 3);
    CHECK(BuildTemplate(pool, 4).total_fees_sat == 10);
    CHECK_THROWS_AS(ParsePoolJson(R"([{"id": 1, "fee_sat": 1, "weight_wu": 1}, {"id": 1, "fee_sat": 2, "weight_wu": 1}])"),
                    DuplicateId);
    CHECK_THROWS(ParsePoolJson(R"({"id": 1})"));
}

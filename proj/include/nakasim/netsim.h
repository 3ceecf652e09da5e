// Copyright (c) 2026 The nakasim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef NAKASIM_NETSIM_H
#define NAKASIM_NETSIM_H

#include <nakasim/chain.h>
#include <nakasim/consensus.h>
#include <nakasim/mempool.h>
#include <nakasim/random.h>

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

namespace nakasim {

/** A violated scenario precondition; field() names the offending config path. */
class InvalidConfig : public std::runtime_error
{
public:
    InvalidConfig(std::string field, const std::string& message)
        : std::runtime_error(field + ": " + message), m_field(std::move(field)) {}
    const std::string& field() const { return m_field; }

private:
    std::string m_field;
};

enum class NodeRole { Full, Mining, Spv, Listening };

std::string RoleName(NodeRole role);
std::optional<NodeRole> ParseRole(std::string_view name);

struct PeerLink {
    std::string id;
    /** One-way delay for messages sent over this link; defaults to the sender's latency_ms. */
    std::optional<double> latency_ms;
};

struct NodeSpec {
    std::string id;
    NodeRole role{NodeRole::Full};
    double hashrate_ths{0.0};
    std::vector<PeerLink> peers;
    double latency_ms{0.0};

    bool Mines() const { return role == NodeRole::Mining; }
    /** SPV nodes keep headers only. */
    bool StoresTransactions() const { return role != NodeRole::Spv; }
};

struct FeeDistribution {
    enum class Kind { Constant, Uniform, Exponential, LogNormal };

    Kind kind{Kind::Constant};
    /** constant: value; uniform: min; exponential: mean; lognormal: mu of ln(fee). */
    double a{0.0};
    /** uniform: max; lognormal: sigma of ln(fee). */
    double b{0.0};

    Amount Sample(Rng& rng) const;
    void Validate() const;
};

struct ScenarioConfig {
    std::vector<NodeSpec> nodes;
    int64_t duration_sim_seconds{0};
    double initial_difficulty{1.0};
    RetargetParams retarget;
    double tx_arrival_rate_per_s{0.0};
    int64_t tx_weight_wu{560};
    FeeDistribution fee_distribution;
    uint64_t seed{0};
    bool toy_pow_mode{false};
    /**
     * After duration_sim_seconds, mining continues until every node reports
     * the same best tip with nothing in flight, for at most this long.
     */
    int64_t max_settle_seconds{7 * 86400};

    /** Throws InvalidConfig. */
    void Validate() const;
    double TotalHashrate() const;
    PowParams Pow() const { return toy_pow_mode ? PowParams::Toy() : PowParams::Simulation(); }
};

struct RetargetRecord {
    int64_t window_index{0};
    double old_difficulty{0.0};
    double actual_minutes{0.0};
    double new_difficulty{0.0};
};

/** One row of the per-block export; covers every mined block, orphaned or not. */
struct BlockRecord {
    int64_t height{0};
    std::string miner;
    uint32_t timestamp{0};
    int64_t interblock_s{0};
    Amount fees_sat{0};
    bool orphaned{false};
    std::string hash;
};

struct TreeSummary {
    std::string best_tip;
    int64_t best_height{0};
    std::string best_chain_work;
    std::size_t reference_tips{0};
    std::size_t reference_blocks{0};
    bool converged{false};
};

struct SimResult {
    int64_t blocks_accepted{0};
    int64_t orphans{0};
    int64_t mined_total{0};
    int64_t invalid_dropped{0};
    double mean_interblock_s{0.0};
    double end_time_s{0.0};
    std::map<std::string, Amount> per_miner_rewards_sat;
    std::map<std::string, int64_t> per_miner_blocks;
    std::vector<RetargetRecord> retarget_history;
    TreeSummary final_tree_summary;
    std::vector<BlockRecord> blocks;
};

/** Expected seconds per block equals difficulty * HashesPerUnitDifficulty / hashrate. */
double SampleInterval(Rng& rng, double total_hashrate_ths, double difficulty,
                      const PowParams& pow = PowParams::Simulation());
/** Difficulty at which `total_hashrate_ths` finds a block every 600 s on average. */
double EquilibriumDifficulty(double total_hashrate_ths, const PowParams& pow = PowParams::Simulation());

struct NetworkRules {
    BlockTree::PowCheck pow_check{BlockTree::PowCheck::Skip};
    RetargetParams retarget;
    PowParams pow;
};

/**
 * Peer-to-peer block propagation over a fixed topology. Each node keeps its
 * own tree and best tip; events run in (time, node index, sequence) order.
 * Single-threaded.
 */
class Network
{
public:
    struct Node {
        NodeSpec spec;
        BlockTree tree;
        Hash256 best;
        /** Blocks waiting for their parent, keyed by parent hash. */
        std::multimap<Hash256, std::shared_ptr<const Block>> orphans;
        int64_t invalid_dropped{0};
        int64_t buffered{0};
    };

    struct Link {
        std::size_t to;
        double latency_s;
    };

    /** Throws InvalidConfig on unknown peer ids or negative latencies. */
    Network(std::vector<NodeSpec> nodes, NetworkRules rules);

    /** Give every node the same genesis block at time zero. */
    void Bootstrap(std::shared_ptr<const Block> genesis);

    /** `origin` accepts a block it produced and relays it to its peers. */
    void Announce(std::size_t origin, std::shared_ptr<const Block> block);

    /** Schedule an arrival of `block` at node `to` at absolute time `at`. */
    void ScheduleDelivery(std::size_t to, std::size_t from, std::shared_ptr<const Block> block, double at);
    /** Generic wake-up for driver logic (mining, transaction arrivals). */
    void ScheduleTimer(double at, std::size_t node, uint64_t tag);

    /** Process one event; false when the queue is empty. */
    bool Step();
    void RunUntil(double time);
    void Drain();

    double Now() const { return m_now; }
    std::optional<double> NextEventTime() const;
    std::size_t PendingDeliveries() const { return m_pending_deliveries; }
    bool AllAgree() const;

    std::size_t NodeCount() const { return m_nodes.size(); }
    const Node& node(std::size_t i) const { return m_nodes.at(i); }
    std::size_t NodeIndex(std::string_view id) const;
    const std::vector<Link>& Links(std::size_t i) const { return m_links.at(i); }
    const NetworkRules& Rules() const { return m_rules; }

    /** Called when a node's best tip moves, with the previous and new best hashes. */
    std::function<void(std::size_t node, const Hash256& old_best, const Hash256& new_best)> on_best_changed;
    std::function<void(std::size_t node, uint64_t tag)> on_timer;

private:
    struct Event {
        double time;
        std::size_t node;
        uint64_t seq;
        bool is_timer;
        std::size_t from;
        uint64_t tag;
        std::shared_ptr<const Block> block;
    };
    struct EventAfter {
        bool operator()(const Event& a, const Event& b) const
        {
            if (a.time != b.time) return a.time > b.time;
            if (a.node != b.node) return a.node > b.node;
            return a.seq > b.seq;
        }
    };

    void Receive(std::size_t to, const std::shared_ptr<const Block>& block);
    bool Accept(std::size_t to, const std::shared_ptr<const Block>& block);
    void Relay(std::size_t from, const std::shared_ptr<const Block>& block);

    std::vector<Node> m_nodes;
    std::vector<std::vector<Link>> m_links;
    NetworkRules m_rules;
    std::priority_queue<Event, std::vector<Event>, EventAfter> m_queue;
    uint64_t m_next_seq{0};
    std::size_t m_pending_deliveries{0};
    double m_now{0.0};
};

/** Deterministic for a fixed config, seed included. Throws InvalidConfig. */
SimResult RunScenario(const ScenarioConfig& config);

} // namespace nakasim

#endif // NAKASIM_NETSIM_H

// Copyright (c) 2026 The nakasim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <nakasim/issuance.h>
#include <nakasim/netsim.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_set>

namespace nakasim {

std::string RoleName(NodeRole role)
{
    switch (role) {
    case NodeRole::Full: return "full";
    case NodeRole::Mining: return "mining";
    case NodeRole::Spv: return "spv";
    case NodeRole::Listening: return "listening";
    }
    return "full";
}

std::optional<NodeRole> ParseRole(std::string_view name)
{
    if (name == "full") return NodeRole::Full;
    if (name == "mining") return NodeRole::Mining;
    if (name == "spv") return NodeRole::Spv;
    if (name == "listening") return NodeRole::Listening;
    return std::nullopt;
}

Amount FeeDistribution::Sample(Rng& rng) const
{
    double fee = 0.0;
    switch (kind) {
    case Kind::Constant: fee = a; break;
    case Kind::Uniform: fee = a + (b - a) * rng.Uniform(); break;
    case Kind::Exponential: fee = rng.Exponential(a); break;
    case Kind::LogNormal: fee = std::exp(rng.Normal(a, b)); break;
    }
    return static_cast<Amount>(std::floor(std::max(fee, 0.0)));
}

void FeeDistribution::Validate() const
{
    switch (kind) {
    case Kind::Constant:
        if (!(a >= 0.0)) throw InvalidConfig("fee_distribution.value_sat", "must be >= 0");
        break;
    case Kind::Uniform:
        if (!(a >= 0.0)) throw InvalidConfig("fee_distribution.min_sat", "must be >= 0");
        if (!(b >= a)) throw InvalidConfig("fee_distribution.max_sat", "must be >= min_sat");
        break;
    case Kind::Exponential:
        if (!(a > 0.0)) throw InvalidConfig("fee_distribution.mean_sat", "must be > 0");
        break;
    case Kind::LogNormal:
        if (!std::isfinite(a)) throw InvalidConfig("fee_distribution.mu", "must be finite");
        if (!(b >= 0.0)) throw InvalidConfig("fee_distribution.sigma", "must be >= 0");
        break;
    }
}

double ScenarioConfig::TotalHashrate() const
{
    double total = 0.0;
    for (const auto& n : nodes) total += n.hashrate_ths;
    return total;
}

void ScenarioConfig::Validate() const
{
    if (nodes.empty()) throw InvalidConfig("nodes", "at least one node is required");
    if (duration_sim_seconds < 0) throw InvalidConfig("duration_sim_seconds", "must be >= 0");
    if (!(initial_difficulty > 0.0) || !std::isfinite(initial_difficulty)) {
        throw InvalidConfig("initial_difficulty", "must be a positive number");
    }
    if (!(tx_arrival_rate_per_s >= 0.0)) throw InvalidConfig("tx_arrival_rate_per_s", "must be >= 0");
    if (tx_weight_wu <= 0 || tx_weight_wu > MAX_BLOCK_WEIGHT) {
        throw InvalidConfig("tx_weight_wu", "must be in (0, 4000000]");
    }
    if (max_settle_seconds < 0) throw InvalidConfig("max_settle_seconds", "must be >= 0");
    try {
        retarget.Validate();
    } catch (const std::invalid_argument& e) {
        throw InvalidConfig("retarget", e.what());
    }
    fee_distribution.Validate();

    std::set<std::string> ids;
    bool any_miner = false;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const NodeSpec& n = nodes[i];
        const std::string path = "nodes[" + std::to_string(i) + "]";
        if (n.id.empty()) throw InvalidConfig(path + ".id", "must be non-empty");
        if (!ids.insert(n.id).second) throw InvalidConfig(path + ".id", "duplicate node id '" + n.id + "'");
        if (!(n.hashrate_ths >= 0.0) || !std::isfinite(n.hashrate_ths)) {
            throw InvalidConfig(path + ".hashrate_ths", "must be >= 0");
        }
        if (n.Mines() && n.hashrate_ths <= 0.0) throw InvalidConfig(path + ".hashrate_ths", "mining nodes need hashrate > 0");
        if (!n.Mines() && n.hashrate_ths > 0.0) {
            throw InvalidConfig(path + ".hashrate_ths", "only mining nodes may have hashrate");
        }
        if (!(n.latency_ms >= 0.0)) throw InvalidConfig(path + ".latency_ms", "must be >= 0");
        any_miner = any_miner || n.Mines();
    }
    if (duration_sim_seconds > 0 && !any_miner) {
        throw InvalidConfig("nodes", "at least one node with role 'mining' is required when duration_sim_seconds > 0");
    }
    // Peer ids and connectivity; eventual agreement is impossible across disconnected islands.
    Network probe(nodes, NetworkRules{});
    std::vector<bool> seen(nodes.size(), false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    while (!stack.empty()) {
        const std::size_t cur = stack.back();
        stack.pop_back();
        for (const auto& link : probe.Links(cur)) {
            if (!seen[link.to]) {
                seen[link.to] = true;
                stack.push_back(link.to);
            }
        }
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
        throw InvalidConfig("nodes.peers", "peer graph is not connected");
    }
    if (duration_sim_seconds > 0) {
        const double d_eq = EquilibriumDifficulty(TotalHashrate(), Pow());
        const double min_difficulty = DifficultyFromBits(Pow().pow_limit_bits, Pow());
        if (d_eq < min_difficulty) {
            throw InvalidConfig("nodes.hashrate_ths", "total hashrate too small for the pow limit");
        }
    }
}

double SampleInterval(Rng& rng, double total_hashrate_ths, double difficulty, const PowParams& pow)
{
    if (!(total_hashrate_ths > 0.0)) throw std::invalid_argument("hashrate must be > 0");
    if (!(difficulty > 0.0)) throw std::invalid_argument("difficulty must be > 0");
    const double mean = difficulty * HashesPerUnitDifficulty(pow) / (total_hashrate_ths * 1e12);
    return rng.Exponential(mean);
}

double EquilibriumDifficulty(double total_hashrate_ths, const PowParams& pow)
{
    return static_cast<double>(TARGET_SPACING_SECONDS) * total_hashrate_ths * 1e12 / HashesPerUnitDifficulty(pow);
}

// ---------------------------------------------------------------------------
// Network

Network::Network(std::vector<NodeSpec> nodes, NetworkRules rules)
    : m_links(nodes.size()), m_rules(rules)
{
    m_nodes.reserve(nodes.size());
    for (auto& spec : nodes) {
        Node n;
        n.spec = std::move(spec);
        m_nodes.push_back(std::move(n));
    }
    // Links are bidirectional; each direction uses the sender's latency unless
    // the sender lists the peer with an explicit value.
    std::vector<std::map<std::size_t, double>> latency(m_nodes.size());
    for (std::size_t i = 0; i < m_nodes.size(); ++i) {
        for (std::size_t p = 0; p < m_nodes[i].spec.peers.size(); ++p) {
            const PeerLink& peer = m_nodes[i].spec.peers[p];
            const std::string path = "nodes[" + std::to_string(i) + "].peers[" + std::to_string(p) + "]";
            std::size_t j = m_nodes.size();
            for (std::size_t k = 0; k < m_nodes.size(); ++k) {
                if (m_nodes[k].spec.id == peer.id) j = k;
            }
            if (j == m_nodes.size()) throw InvalidConfig(path, "unknown peer id '" + peer.id + "'");
            if (j == i) throw InvalidConfig(path, "node lists itself as a peer");
            if (peer.latency_ms && !(*peer.latency_ms >= 0.0)) throw InvalidConfig(path + ".latency_ms", "must be >= 0");

            const double out = peer.latency_ms.value_or(m_nodes[i].spec.latency_ms);
            latency[i][j] = out;
            if (!latency[j].count(i)) latency[j][i] = m_nodes[j].spec.latency_ms;
        }
    }
    for (std::size_t i = 0; i < m_nodes.size(); ++i) {
        for (const auto& [j, ms] : latency[i]) m_links[i].push_back(Link{j, ms / 1000.0});
    }
}

std::size_t Network::NodeIndex(std::string_view id) const
{
    for (std::size_t i = 0; i < m_nodes.size(); ++i) {
        if (m_nodes[i].spec.id == id) return i;
    }
    throw std::out_of_range("unknown node id");
}

void Network::Bootstrap(std::shared_ptr<const Block> genesis)
{
    for (auto& n : m_nodes) {
        n.tree.AddBlock(genesis, m_rules.pow_check);
        n.best = genesis->GetHash();
    }
}

void Network::Announce(std::size_t origin, std::shared_ptr<const Block> block)
{
    Receive(origin, block);
}

void Network::ScheduleDelivery(std::size_t to, std::size_t from, std::shared_ptr<const Block> block, double at)
{
    m_queue.push(Event{at, to, m_next_seq++, false, from, 0, std::move(block)});
    ++m_pending_deliveries;
}

void Network::ScheduleTimer(double at, std::size_t node, uint64_t tag)
{
    m_queue.push(Event{at, node, m_next_seq++, true, 0, tag, nullptr});
}

std::optional<double> Network::NextEventTime() const
{
    if (m_queue.empty()) return std::nullopt;
    return m_queue.top().time;
}

bool Network::Step()
{
    if (m_queue.empty()) return false;
    Event ev = m_queue.top();
    m_queue.pop();
    m_now = ev.time;
    if (ev.is_timer) {
        if (on_timer) on_timer(ev.node, ev.tag);
    } else {
        --m_pending_deliveries;
        Receive(ev.node, ev.block);
    }
    return true;
}

void Network::RunUntil(double time)
{
    while (!m_queue.empty() && m_queue.top().time <= time) Step();
    m_now = std::max(m_now, time);
}

void Network::Drain()
{
    while (Step()) {
    }
}

bool Network::AllAgree() const
{
    for (const auto& n : m_nodes) {
        if (n.best != m_nodes.front().best) return false;
    }
    return true;
}

void Network::Relay(std::size_t from, const std::shared_ptr<const Block>& block)
{
    for (const Link& link : m_links[from]) ScheduleDelivery(link.to, from, block, m_now + link.latency_s);
}

bool Network::Accept(std::size_t to, const std::shared_ptr<const Block>& block)
{
    Node& node = m_nodes[to];
    try {
        if (block->header.bits != NextBits(node.tree, block->header.prev_hash, m_rules.retarget, m_rules.pow)) {
            ++node.invalid_dropped;
            return false;
        }
        if (node.spec.StoresTransactions()) {
            node.tree.AddBlock(block, m_rules.pow_check);
        } else {
            auto header_only = std::make_shared<Block>(*block);
            header_only->transactions.clear();
            header_only->tx_count = 0;
            node.tree.AddBlock(std::move(header_only), m_rules.pow_check);
        }
    } catch (const ChainError&) {
        ++node.invalid_dropped;
        return false;
    }
    return true;
}

void Network::Receive(std::size_t to, const std::shared_ptr<const Block>& block)
{
    Node& node = m_nodes[to];
    const Hash256 hash = block->GetHash();
    if (node.tree.Contains(hash)) return;
    if (!node.tree.Contains(block->header.prev_hash)) {
        const auto range = node.orphans.equal_range(block->header.prev_hash);
        for (auto it = range.first; it != range.second; ++it) {
            if (it->second->GetHash() == hash) return;
        }
        node.orphans.emplace(block->header.prev_hash, block);
        ++node.buffered;
        return;
    }
    if (!Accept(to, block)) return;

    const Hash256 old_best = node.best;
    if (IsBetterTip(node.tree.Get(hash), node.tree.Get(old_best))) {
        node.best = hash;
        if (on_best_changed) on_best_changed(to, old_best, hash);
    }
    Relay(to, block);

    // Children that arrived before this block.
    std::vector<std::shared_ptr<const Block>> waiting;
    const auto range = node.orphans.equal_range(hash);
    for (auto it = range.first; it != range.second; ++it) waiting.push_back(it->second);
    node.orphans.erase(range.first, range.second);
    for (const auto& child : waiting) Receive(to, child);
}

// ---------------------------------------------------------------------------
// Scenario driver

namespace {

constexpr uint64_t kToyScanChunk = uint64_t{1} << 22;

class Simulation
{
public:
    explicit Simulation(const ScenarioConfig& config)
        : m_config(config),
          m_pow(config.Pow()),
          m_net(config.nodes, NetworkRules{config.toy_pow_mode ? BlockTree::PowCheck::Verify : BlockTree::PowCheck::Skip,
                                           config.retarget, m_pow}),
          m_tx_rng(Rng::Derive(config.seed, 0))
    {
        for (std::size_t i = 0; i < config.nodes.size(); ++i) {
            MinerState state{Rng::Derive(config.seed, i + 1), Mempool{}, 0, nullptr};
            m_miners.push_back(std::move(state));
        }
    }

    SimResult Run();

private:
    struct MinerState {
        Rng rng;
        Mempool pool;
        uint64_t token{0};
        std::shared_ptr<const Block> pending;
    };

    static constexpr uint64_t kTxArrivalTag = ~uint64_t{0};

    std::shared_ptr<const Block> MakeGenesis() const;
    Block BuildCandidate(std::size_t miner, uint32_t timestamp);
    void ScheduleMining(std::size_t miner);
    void OnTimer(std::size_t node, uint64_t tag);
    void OnBestChanged(std::size_t node, const Hash256& old_best, const Hash256& new_best);
    void ScheduleNextTx();
    uint32_t Timestamp(double t) const { return genesis::TIME + static_cast<uint32_t>(std::floor(t)); }
    bool Converged() const { return m_net.PendingDeliveries() == 0 && m_net.AllAgree(); }
    SimResult Collect(bool converged);

    const ScenarioConfig& m_config;
    PowParams m_pow;
    Network m_net;
    Rng m_tx_rng;
    std::vector<MinerState> m_miners;
    TxId m_next_tx{1};
    bool m_settling{false};
    // Every block ever produced, in production order.
    std::vector<std::shared_ptr<const Block>> m_produced;
};

std::shared_ptr<const Block> Simulation::MakeGenesis() const
{
    auto block = std::make_shared<Block>();
    block->height = 0;
    block->header.version = genesis::VERSION;
    block->header.timestamp = genesis::TIME;
    block->header.bits = BitsForDifficulty(m_config.initial_difficulty, m_pow);
    block->header.merkle_root = BlockMerkleRoot("", 0, {});
    if (m_config.toy_pow_mode) {
        while (true) {
            if (auto nonce = MineToy(block->header, 0, kToyScanChunk)) {
                block->header.nonce = *nonce;
                break;
            }
            ++block->header.timestamp;
        }
    }
    return block;
}

Block Simulation::BuildCandidate(std::size_t miner, uint32_t timestamp)
{
    const Network::Node& node = m_net.node(miner);
    const Block& parent = *node.tree.Get(node.best).block;

    Block block;
    block.height = parent.height + 1;
    block.miner_id = node.spec.id;
    BlockTemplate tmpl = BuildTemplate(m_miners[miner].pool);
    block.transactions = std::move(tmpl.transactions);
    block.tx_count = static_cast<int64_t>(block.transactions.size());
    block.header.version = 1;
    block.header.prev_hash = node.best;
    block.header.merkle_root = BlockMerkleRoot(block.miner_id, block.height, block.transactions);
    block.header.timestamp = timestamp;
    block.header.bits = NextBits(node.tree, node.best, m_config.retarget, m_pow);
    return block;
}

void Simulation::ScheduleMining(std::size_t miner)
{
    MinerState& state = m_miners[miner];
    const Network::Node& node = m_net.node(miner);
    const uint64_t token = ++state.token;
    const double now = m_net.Now();
    const double hashrate = node.spec.hashrate_ths;
    const uint32_t bits = NextBits(node.tree, node.best, m_config.retarget, m_pow);

    if (!m_config.toy_pow_mode) {
        state.pending.reset();
        m_net.ScheduleTimer(now + SampleInterval(state.rng, hashrate, DifficultyFromBits(bits, m_pow), m_pow), miner, token);
        return;
    }

    // Simulated time advances by one hash per attempt at the node's hashrate.
    const double seconds_per_hash = 1.0 / (hashrate * 1e12);
    Block block = BuildCandidate(miner, Timestamp(now));
    const uint32_t start = static_cast<uint32_t>(state.rng.NextU64());
    uint64_t hashes = 0;
    while (true) {
        const uint64_t room = uint64_t{0xffffffff} - start + 1;
        const uint64_t span = std::min(kToyScanChunk, room);
        if (auto nonce = MineToy(block.header, start, span)) {
            block.header.nonce = *nonce;
            hashes += uint64_t{*nonce} - start + 1;
            break;
        }
        hashes += span;
        ++block.header.timestamp;
    }
    state.pending = std::make_shared<const Block>(std::move(block));
    m_net.ScheduleTimer(now + static_cast<double>(hashes) * seconds_per_hash, miner, token);
}

void Simulation::ScheduleNextTx()
{
    if (m_config.tx_arrival_rate_per_s <= 0.0) return;
    const double at = m_net.Now() + m_tx_rng.Exponential(1.0 / m_config.tx_arrival_rate_per_s);
    if (at > static_cast<double>(m_config.duration_sim_seconds)) return;
    m_net.ScheduleTimer(at, m_net.NodeCount(), kTxArrivalTag);
}

void Simulation::OnTimer(std::size_t node, uint64_t tag)
{
    if (tag == kTxArrivalTag) {
        SimTransaction tx;
        tx.id = m_next_tx++;
        tx.fee_sat = m_config.fee_distribution.Sample(m_tx_rng);
        tx.weight_wu = m_config.tx_weight_wu;
        for (std::size_t i = 0; i < m_miners.size(); ++i) {
            if (m_net.node(i).spec.Mines()) m_miners[i].pool.Submit(tx);
        }
        ScheduleNextTx();
        return;
    }

    MinerState& state = m_miners[node];
    if (tag != state.token) return;
    std::shared_ptr<const Block> block = state.pending;
    if (!block) block = std::make_shared<const Block>(BuildCandidate(node, Timestamp(m_net.Now())));
    state.pending.reset();
    m_produced.push_back(block);
    m_net.Announce(node, block);
}

void Simulation::OnBestChanged(std::size_t node, const Hash256& old_best, const Hash256& new_best)
{
    if (!m_net.node(node).spec.Mines()) return;
    const BlockTree& tree = m_net.node(node).tree;
    Mempool& pool = m_miners[node].pool;

    // Walk both branches back to the fork point: disconnected transactions
    // return to the pool, connected ones leave it.
    Hash256 a = old_best;
    Hash256 b = new_best;
    std::vector<const Block*> connected;
    while (a != b) {
        const Block& ba = *tree.Get(a).block;
        const Block& bb = *tree.Get(b).block;
        if (ba.height >= bb.height) {
            for (const auto& tx : ba.transactions) {
                if (!pool.Contains(tx.id)) pool.Submit(tx);
            }
            a = ba.header.prev_hash;
        } else {
            connected.push_back(&bb);
            b = bb.header.prev_hash;
        }
    }
    for (const Block* blk : connected) {
        for (const auto& tx : blk->transactions) pool.Remove(tx.id);
    }
    ScheduleMining(node);
}

SimResult Simulation::Run()
{
    m_net.Bootstrap(MakeGenesis());
    m_net.on_timer = [this](std::size_t node, uint64_t tag) { OnTimer(node, tag); };
    m_net.on_best_changed = [this](std::size_t node, const Hash256& o, const Hash256& n) { OnBestChanged(node, o, n); };

    const double duration = static_cast<double>(m_config.duration_sim_seconds);
    if (m_config.duration_sim_seconds > 0) {
        for (std::size_t i = 0; i < m_net.NodeCount(); ++i) {
            if (m_net.node(i).spec.Mines()) ScheduleMining(i);
        }
        ScheduleNextTx();
    }

    while (true) {
        const auto next = m_net.NextEventTime();
        if (!next) break;
        if (*next > duration) break;
        m_net.Step();
    }

    const double deadline = duration + static_cast<double>(m_config.max_settle_seconds);
    bool converged = Converged();
    while (!converged) {
        const auto next = m_net.NextEventTime();
        if (!next || *next > deadline) break;
        m_net.Step();
        converged = Converged();
    }
    return Collect(converged);
}

SimResult Simulation::Collect(bool converged)
{
    SimResult out;

    // Reference view: the first node that stores full blocks.
    std::size_t ref = 0;
    for (std::size_t i = 0; i < m_net.NodeCount(); ++i) {
        if (m_net.node(i).spec.StoresTransactions()) {
            ref = i;
            break;
        }
    }
    const Network::Node& node = m_net.node(ref);
    const BlockTree& tree = node.tree;

    std::vector<const Block*> chain;
    for (Hash256 cur = node.best;;) {
        const Block* blk = tree.Get(cur).block.get();
        chain.push_back(blk);
        if (blk->height == 0) break;
        cur = blk->header.prev_hash;
    }
    std::reverse(chain.begin(), chain.end());
    std::unordered_set<Hash256> on_best;
    for (const Block* blk : chain) on_best.insert(blk->GetHash());

    for (const auto& spec : m_config.nodes) {
        if (spec.Mines()) {
            out.per_miner_rewards_sat[spec.id] = 0;
            out.per_miner_blocks[spec.id] = 0;
        }
    }
    for (std::size_t h = 1; h < chain.size(); ++h) {
        const Block& blk = *chain[h];
        out.per_miner_rewards_sat[blk.miner_id] += BlockSubsidy(blk.height) + blk.TotalFees();
        out.per_miner_blocks[blk.miner_id] += 1;
    }

    const int64_t window = m_config.retarget.window_blocks;
    for (int64_t h = window; h + 1 < static_cast<int64_t>(chain.size()); h += window) {
        RetargetRecord rec;
        rec.window_index = h / window;
        rec.old_difficulty = DifficultyFromBits(chain[h]->header.bits, m_pow);
        rec.actual_minutes = (double(chain[h]->header.timestamp) - double(chain[h - window]->header.timestamp)) / 60.0;
        rec.new_difficulty = DifficultyFromBits(chain[h + 1]->header.bits, m_pow);
        out.retarget_history.push_back(rec);
    }

    // Every produced block, whichever node saw it.
    std::unordered_map<Hash256, uint32_t> timestamps;
    for (const Block* blk : chain) timestamps[blk->GetHash()] = blk->header.timestamp;
    for (const auto& blk : m_produced) timestamps[blk->GetHash()] = blk->header.timestamp;
    std::vector<std::size_t> order(m_produced.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return m_produced[x]->height < m_produced[y]->height; });
    for (std::size_t i : order) {
        const Block& blk = *m_produced[i];
        BlockRecord rec;
        rec.height = blk.height;
        rec.miner = blk.miner_id;
        rec.timestamp = blk.header.timestamp;
        rec.interblock_s = int64_t{blk.header.timestamp} - int64_t{timestamps.at(blk.header.prev_hash)};
        rec.fees_sat = blk.TotalFees();
        rec.hash = blk.GetHash().ToHex();
        rec.orphaned = on_best.count(blk.GetHash()) == 0;
        out.blocks.push_back(std::move(rec));
    }

    out.mined_total = static_cast<int64_t>(m_produced.size());
    out.blocks_accepted = static_cast<int64_t>(chain.size()) - 1;
    out.orphans = out.mined_total - out.blocks_accepted;
    if (out.blocks_accepted > 0) {
        out.mean_interblock_s = (double(chain.back()->header.timestamp) - double(chain.front()->header.timestamp)) /
                                static_cast<double>(out.blocks_accepted);
    }
    for (std::size_t i = 0; i < m_net.NodeCount(); ++i) out.invalid_dropped += m_net.node(i).invalid_dropped;
    out.end_time_s = m_net.Now();

    TreeSummary& summary = out.final_tree_summary;
    summary.best_tip = node.best.ToHex();
    summary.best_height = chain.back()->height;
    summary.best_chain_work = tree.Get(node.best).cumulative_work.str();
    summary.reference_tips = tree.Tips().size();
    summary.reference_blocks = tree.Size();
    summary.converged = converged;
    return out;
}

} // namespace

SimResult RunScenario(const ScenarioConfig& config)
{
    config.Validate();
    Simulation sim(config);
    return sim.Run();
}

} // namespace nakasim

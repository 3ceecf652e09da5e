// Copyright (c) 2026 The nakasim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

// Acceptance run: one PASS/FAIL line per criterion, exit status 1 on any failure.

#include <nakasim/chain.h>
#include <nakasim/cli.h>
#include <nakasim/consensus.h>
#include <nakasim/issuance.h>
#include <nakasim/mempool.h>
#include <nakasim/netsim.h>
#include <nakasim/params.h>
#include <nakasim/random.h>
#include <nakasim/scenario_io.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

using namespace nakasim;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass{false};
    std::string detail;
};

NodeSpec Miner(const std::string& id, double ths, std::vector<std::string> peers, double latency_ms)
{
    NodeSpec n;
    n.id = id;
    n.role = NodeRole::Mining;
    n.hashrate_ths = ths;
    n.latency_ms = latency_ms;
    for (auto& p : peers) n.peers.push_back({p, std::nullopt});
    return n;
}

NodeSpec Full(const std::string& id, NodeRole role, std::vector<std::string> peers, double latency_ms)
{
    NodeSpec n;
    n.id = id;
    n.role = role;
    n.latency_ms = latency_ms;
    for (auto& p : peers) n.peers.push_back({p, std::nullopt});
    return n;
}

std::string ReadFile(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Outcome GenesisHash()
{
    const BlockHeader g = GenesisHeader();
    const std::string hash = BlockHash(g).ToHex();
    const std::time_t t = static_cast<std::time_t>(ParseHeader(SerializeHeader(g)).timestamp);
    char when[32];
    std::strftime(when, sizeof(when), "%Y-%m-%dT%H:%M:%S", std::gmtime(&t));
    const bool ok = hash == "000000000019d6689c085ae165831e934ff763ae46a2a6c172b3f1b60a8ce26f" &&
                    std::string(when) == "2009-01-03T18:15:05";
    return {ok, hash + " " + when + "Z"};
}

Outcome SupplyCap()
{
    // Independent oracle: era-by-era sum with the subsidy recomputed by halving.
    int64_t oracle = 0;
    int64_t subsidy = 50 * COIN;
    for (int era = 0; era <= 32; ++era) {
        oracle += 210'000 * subsidy;
        subsidy /= 2;
    }
    bool ok = oracle == 2'099'999'997'690'000 && oracle < 21'000'000 * COIN;
    for (int64_t h : {int64_t{6'929'999}, int64_t{6'930'000}, int64_t{10'000'000}, int64_t{1} << 40}) {
        ok = ok && CumulativeSupply(h) == oracle;
    }
    ok = ok && CumulativeSupply(6'929'998) < oracle;
    return {ok, std::to_string(CumulativeSupply(6'930'000)) + " sat"};
}

Outcome Milestones()
{
    const int64_t heights[] = {0, 210'000, 420'000, 630'000, 840'000};
    const Amount expected[] = {5'000'000'000, 2'500'000'000, 1'250'000'000, 625'000'000, 312'500'000};
    bool ok = true;
    std::string detail;
    for (int i = 0; i < 5; ++i) {
        ok = ok && BlockSubsidy(heights[i]) == expected[i];
        detail += std::to_string(BlockSubsidy(heights[i])) + (i < 4 ? "/" : " sat");
    }
    return {ok, detail};
}

Outcome RetargetConvergence()
{
    ScenarioConfig cfg;
    cfg.nodes = {Miner("m", 500, {}, 0)};
    cfg.initial_difficulty = 3.0 * EquilibriumDifficulty(500);
    const int64_t windows = 12;
    cfg.duration_sim_seconds = static_cast<int64_t>(windows * 2016 * 600 * 1.6);
    cfg.seed = 2024;
    const SimResult r = RunScenario(cfg);

    const int64_t w = cfg.retarget.window_blocks;
    const int64_t full_windows = r.blocks_accepted / w;
    if (full_windows < 10 || r.retarget_history.size() < 10) {
        return {false, "only " + std::to_string(full_windows) + " windows"};
    }
    const int64_t last = full_windows * w;
    const int64_t first = last - 5 * w;
    double total = 0;
    int64_t n = 0;
    for (const auto& b : r.blocks) {
        if (!b.orphaned && b.height > first && b.height <= last) {
            total += static_cast<double>(b.interblock_s);
            ++n;
        }
    }
    const double mean = total / static_cast<double>(n);
    char buf[128];
    std::snprintf(buf, sizeof(buf), "%lld windows, final-5 mean %.1f s", static_cast<long long>(full_windows), mean);
    return {std::fabs(mean - 600.0) <= 30.0, buf};
}

Outcome ForkResolution()
{
    ScenarioConfig cfg;
    cfg.nodes = {Miner("m0", 30, {"m1", "hub"}, 4000), Miner("m1", 25, {"m2"}, 6000), Miner("m2", 25, {"m3", "spv"}, 2000),
                 Miner("m3", 20, {"hub"}, 9000),          Full("hub", NodeRole::Full, {"spv"}, 300),
                 Full("spv", NodeRole::Spv, {}, 100)};
    cfg.duration_sim_seconds = 400 * 600;
    cfg.initial_difficulty = EquilibriumDifficulty(100);
    cfg.tx_arrival_rate_per_s = 0.5;
    cfg.fee_distribution = {FeeDistribution::Kind::Exponential, 3000, 0};
    cfg.retarget.window_blocks = 100;
    cfg.retarget.target_window_minutes = 1000;
    int64_t seeds = 0, orphans = 0;
    for (uint64_t seed = 1; seed <= 25; ++seed) {
        cfg.seed = seed;
        const SimResult r = RunScenario(cfg);
        if (!r.final_tree_summary.converged) return {false, "seed " + std::to_string(seed) + " did not converge"};
        if (r.orphans != r.mined_total - r.blocks_accepted) return {false, "orphan accounting, seed " + std::to_string(seed)};
        int64_t off_chain = 0;
        for (const auto& b : r.blocks) off_chain += b.orphaned;
        if (off_chain != r.orphans) return {false, "orphan rows, seed " + std::to_string(seed)};
        ++seeds;
        orphans += r.orphans;
    }
    return {true, std::to_string(seeds) + " seeds, " + std::to_string(orphans) + " orphans total"};
}

Outcome AttackProbability()
{
    std::string detail;
    for (double q : {0.1, 0.3}) {
        const AttackEstimate est = AttackerCatchupProbability({q, 6, 100'000, 7});
        const double oracle = CatchupProbabilityClosedForm(q, 6);
        const double dev = std::fabs(est.probability - oracle) / est.standard_error;
        char buf[96];
        std::snprintf(buf, sizeof(buf), "q=%.1f: %.6f vs %.6f (%.2f SE); ", q, est.probability, oracle, dev);
        detail += buf;
        if (!(dev <= 3.0)) return {false, detail};
    }
    // Probability falls with confirmations and rises with attacker share.
    for (int qi = 1; qi <= 9; ++qi) {
        const double q = 0.05 * qi;
        for (int z = 0; z <= 8; ++z) {
            const double p = CatchupProbabilityClosedForm(q, z);
            if (z > 0 && !(p < CatchupProbabilityClosedForm(q, z - 1))) return {false, detail + "z-monotonicity"};
            if (qi > 1 && z > 0 && !(p > CatchupProbabilityClosedForm(q - 0.05, z))) return {false, detail + "q-monotonicity"};
        }
    }
    return {true, detail + "grid monotone"};
}

Amount BruteForce(const std::vector<SimTransaction>& txs, int64_t cap)
{
    Amount best = 0;
    for (uint32_t mask = 0; mask < (1u << txs.size()); ++mask) {
        int64_t w = 0;
        Amount f = 0;
        for (std::size_t i = 0; i < txs.size(); ++i) {
            if (mask & (1u << i)) {
                w += txs[i].weight_wu;
                f += txs[i].fee_sat;
            }
        }
        if (w <= cap) best = std::max(best, f);
    }
    return best;
}

Outcome FeeMarket()
{
    Rng rng(77);
    for (int i = 0; i < 200; ++i) {
        const std::size_t n = 1 + rng.NextU64() % 12;
        const int64_t w = 1 + static_cast<int64_t>(rng.NextU64() % 400'000);
        std::vector<SimTransaction> txs;
        for (std::size_t k = 0; k < n; ++k) txs.push_back({k, static_cast<Amount>(rng.NextU64() % 1'000'000), w});
        const int64_t cap = std::max<int64_t>(1, w * static_cast<int64_t>(rng.NextU64() % (n + 1)));
        if (BuildTemplate(txs, cap).total_fees_sat != BruteForce(txs, cap)) return {false, "equal-weight pool " + std::to_string(i)};
    }
    for (int i = 0; i < 200; ++i) {
        const std::size_t n = 1 + rng.NextU64() % 12;
        std::vector<SimTransaction> txs;
        for (std::size_t k = 0; k < n; ++k) {
            txs.push_back({k, static_cast<Amount>(rng.NextU64() % 1'000'000), 1 + static_cast<int64_t>(rng.NextU64() % 400'000)});
        }
        const int64_t cap = 1 + static_cast<int64_t>(rng.NextU64() % 2'000'000);
        if (BuildTemplate(txs, cap).total_fees_sat > BruteForce(txs, cap)) return {false, "greedy beat optimum"};
    }
    const std::vector<SimTransaction> counter = {{1, 10, 3}, {2, 6, 2}, {3, 6, 2}};
    const Amount greedy = BuildTemplate(counter, 4).total_fees_sat;
    const Amount best = BruteForce(counter, 4);
    return {greedy == 10 && best == 12,
            "200+200 pools; counterexample greedy " + std::to_string(greedy) + " vs optimum " + std::to_string(best)};
}

Outcome GoldenReport()
{
    ReportOptions opts;
    opts.inputs_path = NAKASIM_TEST_DATA_DIR "/part_j_fixture.json";
    opts.fixture = true;
    std::ostringstream out, err;
    if (CmdReport(opts, out, err) != EXIT_OK) return {false, err.str()};
    const std::string md = out.str();
    if (md != ReadFile(NAKASIM_TEST_DATA_DIR "/../golden/part_j_fixture.md")) return {false, "differs from golden file"};
    for (const char* metric : {"121,134,042.6 kWh", "72.76%", "44.47 kWh", "61,311,929.06 tCO₂e", "21.92 kg/Tx",
                               "10,350 t", "84.75%", "122 t", "1,909 GL"}) {
        if (md.find(std::string("| ") + metric + " |") == std::string::npos) return {false, std::string("missing ") + metric};
    }
    return {true, "9 metrics byte-exact"};
}

Outcome Determinism()
{
    const fs::path root = fs::temp_directory_path() / "nakasim_acceptance_det";
    fs::remove_all(root);
    std::ostringstream out, err;
    for (const char* run : {"a", "b"}) {
        SimulateOptions opts{NAKASIM_TEST_DATA_DIR "/scenario_two_miners.json", std::nullopt, (root / run).string()};
        if (CmdSimulate(opts, out, err) != EXIT_OK) return {false, err.str()};
    }
    for (const char* name : {"result.json", "blocks.csv"}) {
        const std::string a = ReadFile(root / "a" / name);
        if (a.empty() || a != ReadFile(root / "b" / name)) return {false, std::string(name) + " differs"};
    }
    return {true, "result.json and blocks.csv identical"};
}

Outcome RewardProportionality()
{
    ScenarioConfig cfg;
    cfg.nodes = {Miner("big", 70, {"small"}, 0), Miner("small", 30, {}, 0)};
    cfg.initial_difficulty = EquilibriumDifficulty(100);
    cfg.seed = 5000;
    // Run long enough for at least 5,000 best-chain blocks.
    cfg.duration_sim_seconds = 5'200 * 600;
    const SimResult r = RunScenario(cfg);
    const double n = static_cast<double>(r.blocks_accepted);
    const double big = static_cast<double>(r.per_miner_blocks.count("big") ? r.per_miner_blocks.at("big") : 0);
    const double sd = std::sqrt(n * 0.7 * 0.3);
    const double dev = std::fabs(big - 0.7 * n) / sd;
    char buf[128];
    std::snprintf(buf, sizeof(buf), "%lld blocks, share %.4f (%.2f SD)", static_cast<long long>(r.blocks_accepted), big / n, dev);
    return {r.blocks_accepted >= 5000 && dev <= 3.0, buf};
}

} // namespace

int main()
{
    const std::pair<const char*, std::function<Outcome()>> criteria[] = {
        {"genesis hash and timestamp", GenesisHash},
        {"supply cap", SupplyCap},
        {"subsidy milestones", Milestones},
        {"retarget convergence", RetargetConvergence},
        {"fork resolution", ForkResolution},
        {"attack probability", AttackProbability},
        {"fee-market oracle", FeeMarket},
        {"golden indicator report", GoldenReport},
        {"determinism", Determinism},
        {"reward proportionality", RewardProportionality},
    };
    int failures = 0;
    int index = 0;
    for (const auto& [name, check] : criteria) {
        ++index;
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("%s %2d %-26s %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", index, name, o.detail.c_str(), secs);
        failures += !o.pass;
    }
    std::printf("%d/%d criteria passed\n", index - failures, index);
    return failures == 0 ? 0 : 1;
}

// Copyright (c) 2026 The nakasim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <nakasim/scenario_io.h>

#include <sstream>

namespace nakasim {

using nlohmann::json;

namespace {

const json& Require(const json& obj, const std::string& key, const std::string& path)
{
    if (!obj.is_object() || !obj.contains(key)) throw InvalidConfig(path + key, "missing required field");
    return obj.at(key);
}

double GetNumber(const json& v, const std::string& path)
{
    if (!v.is_number()) throw InvalidConfig(path, "must be a number");
    return v.get<double>();
}

int64_t GetInteger(const json& v, const std::string& path)
{
    if (!v.is_number_integer()) throw InvalidConfig(path, "must be an integer");
    return v.get<int64_t>();
}

double NumberOr(const json& obj, const std::string& key, double fallback, const std::string& path)
{
    return obj.contains(key) ? GetNumber(obj.at(key), path + key) : fallback;
}

FeeDistribution FeeFromJson(const json& v)
{
    const std::string path = "fee_distribution.";
    const json& kind_json = Require(v, "kind", path);
    if (!kind_json.is_string()) throw InvalidConfig(path + "kind", "must be a string");
    const std::string kind = kind_json.get<std::string>();
    FeeDistribution fee;
    if (kind == "constant") {
        fee.kind = FeeDistribution::Kind::Constant;
        fee.a = GetNumber(Require(v, "value_sat", path), path + "value_sat");
    } else if (kind == "uniform") {
        fee.kind = FeeDistribution::Kind::Uniform;
        fee.a = GetNumber(Require(v, "min_sat", path), path + "min_sat");
        fee.b = GetNumber(Require(v, "max_sat", path), path + "max_sat");
    } else if (kind == "exponential") {
        fee.kind = FeeDistribution::Kind::Exponential;
        fee.a = GetNumber(Require(v, "mean_sat", path), path + "mean_sat");
    } else if (kind == "lognormal") {
        fee.kind = FeeDistribution::Kind::LogNormal;
        fee.a = GetNumber(Require(v, "mu", path), path + "mu");
        fee.b = GetNumber(Require(v, "sigma", path), path + "sigma");
    } else {
        throw InvalidConfig(path + "kind", "unknown distribution '" + kind + "'");
    }
    return fee;
}

json FeeToJson(const FeeDistribution& fee)
{
    switch (fee.kind) {
    case FeeDistribution::Kind::Constant: return {{"kind", "constant"}, {"value_sat", fee.a}};
    case FeeDistribution::Kind::Uniform: return {{"kind", "uniform"}, {"min_sat", fee.a}, {"max_sat", fee.b}};
    case FeeDistribution::Kind::Exponential: return {{"kind", "exponential"}, {"mean_sat", fee.a}};
    case FeeDistribution::Kind::LogNormal: return {{"kind", "lognormal"}, {"mu", fee.a}, {"sigma", fee.b}};
    }
    return {};
}

} // namespace

ScenarioConfig ScenarioConfigFromJson(const json& doc)
{
    if (!doc.is_object()) throw InvalidConfig("<root>", "scenario config must be a JSON object");
    ScenarioConfig cfg;

    const json& nodes = Require(doc, "nodes", "");
    if (!nodes.is_array()) throw InvalidConfig("nodes", "must be an array");
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const json& n = nodes[i];
        const std::string path = "nodes[" + std::to_string(i) + "].";
        NodeSpec spec;
        const json& id = Require(n, "id", path);
        if (!id.is_string()) throw InvalidConfig(path + "id", "must be a string");
        spec.id = id.get<std::string>();
        const json& role = Require(n, "role", path);
        const auto parsed = role.is_string() ? ParseRole(role.get<std::string>()) : std::nullopt;
        if (!parsed) throw InvalidConfig(path + "role", "must be one of full, mining, spv, listening");
        spec.role = *parsed;
        spec.hashrate_ths = NumberOr(n, "hashrate_ths", 0.0, path);
        spec.latency_ms = NumberOr(n, "latency_ms", 0.0, path);
        if (n.contains("peers")) {
            const json& peers = n.at("peers");
            if (!peers.is_array()) throw InvalidConfig(path + "peers", "must be an array");
            for (std::size_t p = 0; p < peers.size(); ++p) {
                const std::string ppath = path + "peers[" + std::to_string(p) + "]";
                PeerLink link;
                if (peers[p].is_string()) {
                    link.id = peers[p].get<std::string>();
                } else if (peers[p].is_object()) {
                    const json& pid = Require(peers[p], "id", ppath + ".");
                    if (!pid.is_string()) throw InvalidConfig(ppath + ".id", "must be a string");
                    link.id = pid.get<std::string>();
                    if (peers[p].contains("latency_ms")) {
                        link.latency_ms = GetNumber(peers[p].at("latency_ms"), ppath + ".latency_ms");
                    }
                } else {
                    throw InvalidConfig(ppath, "must be a node id or {id, latency_ms}");
                }
                spec.peers.push_back(std::move(link));
            }
        }
        cfg.nodes.push_back(std::move(spec));
    }

    cfg.duration_sim_seconds = GetInteger(Require(doc, "duration_sim_seconds", ""), "duration_sim_seconds");
    cfg.initial_difficulty = GetNumber(Require(doc, "initial_difficulty", ""), "initial_difficulty");
    if (doc.contains("seed")) {
        const json& seed = doc.at("seed");
        if (!seed.is_number_unsigned()) throw InvalidConfig("seed", "must be a non-negative integer");
        cfg.seed = seed.get<uint64_t>();
    }
    if (doc.contains("toy_pow_mode")) {
        if (!doc.at("toy_pow_mode").is_boolean()) throw InvalidConfig("toy_pow_mode", "must be a boolean");
        cfg.toy_pow_mode = doc.at("toy_pow_mode").get<bool>();
    }
    cfg.tx_arrival_rate_per_s = NumberOr(doc, "tx_arrival_rate_per_s", 0.0, "");
    if (doc.contains("tx_weight_wu")) cfg.tx_weight_wu = GetInteger(doc.at("tx_weight_wu"), "tx_weight_wu");
    if (doc.contains("max_settle_seconds")) {
        cfg.max_settle_seconds = GetInteger(doc.at("max_settle_seconds"), "max_settle_seconds");
    }
    if (doc.contains("fee_distribution")) cfg.fee_distribution = FeeFromJson(doc.at("fee_distribution"));

    if (doc.contains("retarget")) {
        const json& r = doc.at("retarget");
        const std::string path = "retarget.";
        if (!r.is_object()) throw InvalidConfig("retarget", "must be an object");
        if (r.contains("window_blocks")) cfg.retarget.window_blocks = GetInteger(r.at("window_blocks"), path + "window_blocks");
        cfg.retarget.target_window_minutes = NumberOr(r, "target_window_minutes",
                                                      static_cast<double>(cfg.retarget.window_blocks) * 10.0, path);
        cfg.retarget.clamp_factor = NumberOr(r, "clamp_factor", cfg.retarget.clamp_factor, path);
        if (r.contains("clamp_enabled")) {
            if (!r.at("clamp_enabled").is_boolean()) throw InvalidConfig(path + "clamp_enabled", "must be a boolean");
            cfg.retarget.clamp_enabled = r.at("clamp_enabled").get<bool>();
        }
        if (r.contains("rule")) {
            const std::string rule = r.at("rule").is_string() ? r.at("rule").get<std::string>() : "";
            if (rule == "target_over_actual") {
                cfg.retarget.rule = RetargetRule::TargetOverActual;
            } else if (rule == "actual_over_target") {
                cfg.retarget.rule = RetargetRule::ActualOverTarget;
            } else {
                throw InvalidConfig(path + "rule", "must be target_over_actual or actual_over_target");
            }
        }
    }
    return cfg;
}

json ScenarioConfigToJson(const ScenarioConfig& cfg)
{
    json nodes = json::array();
    for (const auto& n : cfg.nodes) {
        json peers = json::array();
        for (const auto& p : n.peers) {
            if (p.latency_ms) {
                peers.push_back({{"id", p.id}, {"latency_ms", *p.latency_ms}});
            } else {
                peers.push_back(p.id);
            }
        }
        nodes.push_back({{"id", n.id},
                         {"role", RoleName(n.role)},
                         {"hashrate_ths", n.hashrate_ths},
                         {"latency_ms", n.latency_ms},
                         {"peers", peers}});
    }
    return {
        {"nodes", nodes},
        {"duration_sim_seconds", cfg.duration_sim_seconds},
        {"initial_difficulty", cfg.initial_difficulty},
        {"retarget",
         {{"window_blocks", cfg.retarget.window_blocks},
          {"target_window_minutes", cfg.retarget.target_window_minutes},
          {"clamp_factor", cfg.retarget.clamp_factor},
          {"clamp_enabled", cfg.retarget.clamp_enabled},
          {"rule", cfg.retarget.rule == RetargetRule::TargetOverActual ? "target_over_actual" : "actual_over_target"}}},
        {"tx_arrival_rate_per_s", cfg.tx_arrival_rate_per_s},
        {"tx_weight_wu", cfg.tx_weight_wu},
        {"fee_distribution", FeeToJson(cfg.fee_distribution)},
        {"seed", cfg.seed},
        {"toy_pow_mode", cfg.toy_pow_mode},
        {"max_settle_seconds", cfg.max_settle_seconds},
    };
}

json SimResultToJson(const SimResult& r)
{
    json history = json::array();
    for (const auto& rec : r.retarget_history) {
        history.push_back({{"window_index", rec.window_index},
                           {"old_difficulty", rec.old_difficulty},
                           {"actual_minutes", rec.actual_minutes},
                           {"new_difficulty", rec.new_difficulty}});
    }
    const TreeSummary& s = r.final_tree_summary;
    return {
        {"blocks_accepted", r.blocks_accepted},
        {"orphans", r.orphans},
        {"mined_total", r.mined_total},
        {"invalid_dropped", r.invalid_dropped},
        {"mean_interblock_s", r.mean_interblock_s},
        {"end_time_s", r.end_time_s},
        {"per_miner_rewards_sat", r.per_miner_rewards_sat},
        {"per_miner_blocks", r.per_miner_blocks},
        {"retarget_history", history},
        {"final_tree_summary",
         {{"best_tip", s.best_tip},
          {"best_height", s.best_height},
          {"best_chain_work", s.best_chain_work},
          {"reference_tips", s.reference_tips},
          {"reference_blocks", s.reference_blocks},
          {"converged", s.converged}}},
    };
}

std::string BlocksCsv(const SimResult& result)
{
    std::ostringstream out;
    out << "height,miner,timestamp,interblock_s,fees_sat,orphaned\n";
    for (const auto& b : result.blocks) {
        out << b.height << ',' << b.miner << ',' << b.timestamp << ',' << b.interblock_s << ',' << b.fees_sat << ','
            << (b.orphaned ? 1 : 0) << '\n';
    }
    return out.str();
}

} // namespace nakasim

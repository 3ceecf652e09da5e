// Copyright (c) 2026 The nakasim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef NAKASIM_SCENARIO_IO_H
#define NAKASIM_SCENARIO_IO_H

#include <nakasim/netsim.h>

#include <json.hpp>

#include <string>

namespace nakasim {

/** Missing or mistyped fields throw InvalidConfig naming the JSON path. */
ScenarioConfig ScenarioConfigFromJson(const nlohmann::json& doc);
nlohmann::json ScenarioConfigToJson(const ScenarioConfig& config);

nlohmann::json SimResultToJson(const SimResult& result);

/** Header row: height,miner,timestamp,interblock_s,fees_sat,orphaned */
std::string BlocksCsv(const SimResult& result);

} // namespace nakasim

#endif // NAKASIM_SCENARIO_IO_H

// Copyright (c) 2026 The nakasim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef NAKASIM_CLI_H
#define NAKASIM_CLI_H

#include <nakasim/consensus.h>

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

namespace nakasim {

/** Process exit codes shared by every subcommand. */
enum ExitCode : int {
    EXIT_OK = 0,
    EXIT_VALIDATION = 1,
    EXIT_IO = 2,
};

std::string ToolVersion();

struct SimulateOptions {
    std::string config_path;
    std::optional<uint64_t> seed;
    std::string out_dir;
};

/** Writes result.json, blocks.csv and manifest.json into out_dir. */
int CmdSimulate(const SimulateOptions& opts, std::ostream& out, std::ostream& err);

/** Either a single height or the full era schedule as CSV. */
int CmdIssuance(std::optional<int64_t> height, bool schedule, std::ostream& out, std::ostream& err);

int CmdAttack(const AttackQuery& query, std::ostream& out, std::ostream& err);

struct ReportOptions {
    std::string inputs_path;
    std::string format{"md"};
    /** Render indicator values verbatim without checking the intensity identities. */
    bool fixture{false};
    /** Empty: write to `out`. */
    std::string out_path;
};

int CmdReport(const ReportOptions& opts, std::ostream& out, std::ostream& err);

/** Full command-line entry point, used by the nakasim binary. */
int RunCli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace nakasim

#endif // NAKASIM_CLI_H

// Copyright (c) 2026 The nakasim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <nakasim/cli.h>
#include <nakasim/issuance.h>
#include <nakasim/report.h>
#include <nakasim/scenario_io.h>

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#ifndef NAKASIM_VERSION
#define NAKASIM_VERSION "0.0.0"
#endif

namespace nakasim {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

class IoError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

std::string ReadFile(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw IoError("cannot read '" + path + "'");
    return buf.str();
}

void WriteFile(const fs::path& path, const std::string& contents)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out << contents;
    out.flush();
    if (!out) throw IoError("cannot write '" + path.string() + "'");
}

std::string WallClockUtc()
{
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

} // namespace

std::string ToolVersion()
{
    return NAKASIM_VERSION;
}

int CmdSimulate(const SimulateOptions& opts, std::ostream& out, std::ostream& err)
{
    const std::string started = WallClockUtc();
    try {
        json doc;
        try {
            doc = json::parse(ReadFile(opts.config_path));
        } catch (const json::parse_error& e) {
            err << "error: config: " << e.what() << "\n";
            return EXIT_VALIDATION;
        }
        ScenarioConfig config = ScenarioConfigFromJson(doc);
        if (opts.seed) config.seed = *opts.seed;
        config.Validate();

        const SimResult result = RunScenario(config);

        const fs::path dir(opts.out_dir);
        std::error_code ec;
        fs::create_directories(dir, ec);
        if (ec) throw IoError("cannot create '" + dir.string() + "': " + ec.message());

        const fs::path result_path = dir / "result.json";
        const fs::path csv_path = dir / "blocks.csv";
        const fs::path manifest_path = dir / "manifest.json";
        WriteFile(result_path, SimResultToJson(result).dump(2) + "\n");
        WriteFile(csv_path, BlocksCsv(result));

        const json manifest = {
            {"command", "simulate"},
            {"config", ScenarioConfigToJson(config)},
            {"seed", config.seed},
            {"tool_version", ToolVersion()},
            {"start_wall_time", started},
            {"end_wall_time", WallClockUtc()},
            {"outputs", {result_path.string(), csv_path.string(), manifest_path.string()}},
        };
        WriteFile(manifest_path, manifest.dump(2) + "\n");

        out << "blocks_accepted=" << result.blocks_accepted << " orphans=" << result.orphans
            << " mean_interblock_s=" << result.mean_interblock_s << "\n";
        out << "wrote " << result_path.string() << ", " << csv_path.string() << ", " << manifest_path.string() << "\n";
        return EXIT_OK;
    } catch (const IoError& e) {
        err << "error: " << e.what() << "\n";
        return EXIT_IO;
    } catch (const InvalidConfig& e) {
        err << "error: invalid config field '" << e.field() << "': " << e.what() << "\n";
        return EXIT_VALIDATION;
    }
}

int CmdIssuance(std::optional<int64_t> height, bool schedule, std::ostream& out, std::ostream& err)
{
    if (schedule == height.has_value()) {
        err << "error: pass exactly one of --height or --schedule\n";
        return EXIT_VALIDATION;
    }
    if (schedule) {
        out << "era,start_height,subsidy_sat,cumulative_supply_sat\n";
        for (int64_t era = 0; era <= issuance::LAST_SUBSIDIZED_ERA + 1; ++era) {
            const int64_t start = era * issuance::BLOCKS_PER_ERA;
            const int64_t end = start + issuance::BLOCKS_PER_ERA - 1;
            out << era << ',' << start << ',' << BlockSubsidy(start) << ',' << CumulativeSupply(end) << '\n';
        }
        return EXIT_OK;
    }
    if (*height < 0) {
        err << "error: height must be >= 0\n";
        return EXIT_VALIDATION;
    }
    out << "height=" << *height << "\n";
    out << "era=" << EraOf(*height) << "\n";
    out << "subsidy_sat=" << BlockSubsidy(*height) << "\n";
    out << "cumulative_supply_sat=" << CumulativeSupply(*height) << "\n";
    return EXIT_OK;
}

int CmdAttack(const AttackQuery& query, std::ostream& out, std::ostream& err)
{
    try {
        query.Validate();
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return EXIT_VALIDATION;
    }
    const AttackEstimate est = AttackerCatchupProbability(query);
    const double closed = CatchupProbabilityClosedForm(query.q, query.z);
    out << std::setprecision(10);
    out << "q=" << query.q << " z=" << query.z << " trials=" << query.trials << " seed=" << query.seed << "\n";
    out << "estimate=" << est.probability << "\n";
    out << "stderr=" << est.standard_error << "\n";
    out << "closed_form=" << closed << "\n";
    out << "truncated_walks=" << est.truncated << "\n";
    return EXIT_OK;
}

int CmdReport(const ReportOptions& opts, std::ostream& out, std::ostream& err)
{
    if (opts.format != "md" && opts.format != "json") {
        err << "error: --format must be md or json\n";
        return EXIT_VALIDATION;
    }
    try {
        ReportInputs in;
        try {
            in = ParseReportInputs(json::parse(ReadFile(opts.inputs_path)));
        } catch (const json::exception& e) {
            err << "error: inputs: " << e.what() << "\n";
            return EXIT_VALIDATION;
        }

        ReportDocument doc;
        doc.provider_name = in.provider_name;
        doc.source_of_information = in.source_of_information.value_or(DefaultSource(in.provider_name));
        doc.methodology = in.methodology.value_or(DefaultMethodology());
        if (in.models) {
            doc.indicators = ComputeIndicators(*in.models);
        } else {
            doc.indicators = *in.indicators;
            if (!opts.fixture) {
                if (const auto violated = CheckIndicatorIdentities(doc.indicators)) {
                    err << "error: inputs violate identity: " << *violated << " (use --fixture to render verbatim)\n";
                    return EXIT_VALIDATION;
                }
            }
        }

        const std::string rendered =
            opts.format == "md" ? RenderPartJMarkdown(doc) : RenderReportJson(doc).dump(2) + "\n";
        if (opts.out_path.empty()) {
            out << rendered;
        } else {
            WriteFile(opts.out_path, rendered);
        }
        return EXIT_OK;
    } catch (const IoError& e) {
        err << "error: " << e.what() << "\n";
        return EXIT_IO;
    } catch (const std::invalid_argument& e) {
        err << "error: inputs: " << e.what() << "\n";
        return EXIT_VALIDATION;
    } catch (const std::domain_error& e) {
        err << "error: inputs: " << e.what() << "\n";
        return EXIT_VALIDATION;
    }
}

int RunCli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Nakamoto consensus simulator and protocol analysis toolkit"};
    app.set_version_flag("--version", ToolVersion());
    app.require_subcommand(1);

    SimulateOptions sim;
    auto* simulate = app.add_subcommand("simulate", "Run a network scenario");
    simulate->add_option("--config", sim.config_path, "Scenario JSON")->required();
    uint64_t seed_override = 0;
    auto* seed_opt = simulate->add_option("--seed", seed_override, "Override the config seed");
    simulate->add_option("--out", sim.out_dir, "Output directory")->required();

    int64_t height = 0;
    bool schedule = false;
    auto* iss = app.add_subcommand("issuance", "Subsidy and supply at a height, or the era schedule");
    auto* height_opt = iss->add_option("--height", height, "Block height");
    iss->add_flag("--schedule", schedule, "Print the era schedule as CSV");

    AttackQuery query;
    query.trials = 100000;
    auto* attack = app.add_subcommand("attack", "Double-spend catch-up probability");
    attack->add_option("--q", query.q, "Attacker hashrate share")->required();
    attack->add_option("--z", query.z, "Confirmations")->required();
    attack->add_option("--trials", query.trials, "Monte Carlo trials");
    attack->add_option("--seed", query.seed, "RNG seed");

    ReportOptions rep;
    auto* report = app.add_subcommand("report", "Render the sustainability indicator report");
    report->add_option("--inputs", rep.inputs_path, "Indicator inputs JSON")->required();
    report->add_option("--format", rep.format, "md or json");
    report->add_flag("--fixture", rep.fixture, "Render indicator values verbatim");
    report->add_option("--out", rep.out_path, "Write to a file instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return EXIT_OK;
    } catch (const CLI::CallForVersion&) {
        out << ToolVersion() << "\n";
        return EXIT_OK;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return EXIT_VALIDATION;
    }

    if (simulate->parsed()) {
        if (*seed_opt) sim.seed = seed_override;
        return CmdSimulate(sim, out, err);
    }
    if (iss->parsed()) {
        return CmdIssuance(*height_opt ? std::optional<int64_t>(height) : std::nullopt, schedule, out, err);
    }
    if (attack->parsed()) return CmdAttack(query, out, err);
    return CmdReport(rep, out, err);
}

} // namespace nakasim

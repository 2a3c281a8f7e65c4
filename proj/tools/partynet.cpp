// Command-line front end: ingest -> build -> measure -> support/loyalty
// -> report over roll-call voting and recommendation files.

#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "partynet/pipeline.hpp"

namespace {

enum class LogLevel { Quiet = 0, Info = 1, Debug = 2 };

LogLevel log_level_from_env() {
    const char* env = std::getenv("PARTYNET_LOG");
    if (!env)
        return LogLevel::Info;
    std::string v(env);
    if (v == "quiet")
        return LogLevel::Quiet;
    if (v == "debug")
        return LogLevel::Debug;
    return LogLevel::Info;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Party-agreement network analysis of roll-call voting data"};
    app.require_subcommand(1);

    std::string config_path;
    partynet::RunConfig flags;
    std::vector<std::string> format_list;

    app.add_option("--config", config_path, "RunConfig JSON file; flags override it");
    auto* votes = app.add_option(
        "--votes", flags.votes_path,
        "Votes CSV (session_id,date,bill_id,voter_id,voter_name,party,vote)");
    auto* recs = app.add_option(
        "--recs", flags.recommendations_path,
        "Recommendations CSV (session_id,actor,vote); GOV marks the government");
    auto* pres = app.add_option(
        "--presidencies", flags.presidencies_path,
        "Presidency calendar JSON [{name,start,end}]; built-in default when absent");
    auto* allow = app.add_option("--allowlist", flags.allowlist_path,
                                 "JSON array of active party codes for the loyalty table");
    auto* out = app.add_option("--out", flags.out_dir, "Output directory (default: out)");
    auto* damping =
        app.add_option("--damping", flags.measure.damping, "PageRank damping in (0,1)");
    auto* tol = app.add_option("--tol", flags.measure.tolerance,
                               "Convergence tolerance for pagerank and hub scores");
    auto* iters = app.add_option("--max-iter", flags.measure.max_iterations,
                                 "Iteration cap for pagerank and hub scores");
    auto* freq =
        app.add_option("--windows", flags.window_frequency, "Window frequency (yearly)");
    auto* delim =
        app.add_option("--delimiter", flags.delimiter, "CSV delimiter (default ,)");
    auto* topk = app.add_option("--top-k", flags.loyalty_top_k,
                                "Loyalty table size; 0 keeps every party");
    auto* format = app.add_option(
        "--format", format_list, "Graph outputs for build: graphml, dot, csv (repeatable)");

    app.add_subcommand("ingest", "Write cleaned records, windows and diagnostics");
    app.add_subcommand("build", "Write one network per window (graphml/dot/w.csv)");
    app.add_subcommand("measure", "Write per-actor measures and communities CSVs");
    app.add_subcommand("support", "Write per-presidency and per-window support CSVs");
    app.add_subcommand("loyalty", "Write the party loyalty table CSV");
    app.add_subcommand("report", "Write the full JSON report");

    CLI11_PARSE(app, argc, argv);

    const LogLevel level = log_level_from_env();
    try {
        partynet::RunConfig config;
        if (!config_path.empty())
            config = partynet::load_config(config_path);
        if (votes->count())
            config.votes_path = flags.votes_path;
        if (recs->count())
            config.recommendations_path = flags.recommendations_path;
        if (pres->count())
            config.presidencies_path = flags.presidencies_path;
        if (allow->count())
            config.allowlist_path = flags.allowlist_path;
        if (out->count())
            config.out_dir = flags.out_dir;
        if (damping->count())
            config.measure.damping = flags.measure.damping;
        if (tol->count())
            config.measure.tolerance = flags.measure.tolerance;
        if (iters->count())
            config.measure.max_iterations = flags.measure.max_iterations;
        if (freq->count())
            config.window_frequency = flags.window_frequency;
        if (delim->count())
            config.delimiter = flags.delimiter;
        if (topk->count())
            config.loyalty_top_k = flags.loyalty_top_k;
        if (format->count())
            config.formats = std::set<std::string>(format_list.begin(), format_list.end());
        config.validate();

        const auto command =
            partynet::parse_command(app.get_subcommands().front()->get_name());
        if (level >= LogLevel::Debug)
            std::cerr << "config: " << partynet::config_to_json(config).dump() << "\n";
        const auto written = partynet::run_command(config, command);
        if (level >= LogLevel::Info) {
            for (const auto& path : written)
                std::cerr << "wrote " << path.string() << "\n";
        }
        return 0;
    } catch (const partynet::ConvergenceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

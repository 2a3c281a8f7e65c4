#pragma once

#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "partynet/graph.hpp"
#include "partynet/ingest.hpp"
#include "partynet/serialize.hpp"
#include "partynet/simnet.hpp"
#include "partynet/support.hpp"

namespace partynet {

struct RunConfig {
    std::string votes_path;
    std::string recommendations_path;
    std::string presidencies_path; // empty: built-in calendar
    std::string allowlist_path;    // empty: no active-party filter
    std::string out_dir = "out";
    std::string window_frequency = "yearly";
    std::string delimiter = ",";
    MeasureParams measure;
    int loyalty_top_k = 15;
    // Graph serializations emitted by the build stage.
    std::set<std::string> formats = {"csv", "dot", "graphml"};

    bool operator==(const RunConfig&) const;

    // Throws std::invalid_argument when a field is out of range.
    void validate() const;
    CleaningPolicy cleaning_policy() const;
};

nlohmann::json config_to_json(const RunConfig& c);
RunConfig config_from_json(const nlohmann::json& j);
RunConfig load_config(const std::filesystem::path& path);
void save_config(const RunConfig& c, const std::filesystem::path& path);

enum class Command { Ingest, Build, Measure, Support, Loyalty, Report };

Command parse_command(const std::string& name);

// Cleaned and filtered inputs shared by every stage.
struct PipelineData {
    std::vector<VoteRecord> votes; // government-recommended sessions only
    std::vector<Recommendation> recommendations;
    std::vector<Presidency> presidencies;
    std::set<std::string> active_parties;
    std::set<std::string> gov_sessions;
    std::vector<Window> windows;
    DiagnosticsReport votes_diagnostics;
    DiagnosticsReport recommendations_diagnostics;
};

PipelineData load_inputs(const RunConfig& config);

// Everything derived from one window. Measures are only filled when the
// stage asks for them.
struct WindowNetwork {
    AgreementWindow agreement;
    PartyGraph graph;
    MeasureVector closeness;
    MeasureVector pagerank;
    MeasureVector hub;
    double density = 0.0;
    Partition partition;
};

// Builds every window's network (and measures when requested). Windows
// are independent, so the loop is parallelized when OpenMP is enabled.
// A measure failing to converge raises an error naming window and
// measure.
std::vector<WindowNetwork> build_window_networks(const PipelineData& data,
                                                 const MeasureParams& params,
                                                 bool with_measures);

// The five support series, method order: roll_call, closeness, pagerank,
// hub, density.
std::vector<SupportSeries> support_series(const PipelineData& data,
                                          std::span<const WindowNetwork> networks);

nlohmann::json report_json(const PipelineData& data,
                           std::span<const WindowNetwork> networks,
                           std::span<const SupportSeries> series,
                           const LoyaltyTable& loyalty);

// Runs one CLI command, writes its files under config.out_dir, and
// returns the paths written. Identical inputs and config produce
// byte-identical files.
std::vector<std::filesystem::path> run_command(const RunConfig& config, Command command);

} // namespace partynet

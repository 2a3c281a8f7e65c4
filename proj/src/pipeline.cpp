#include "partynet/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "partynet/csv.hpp"

namespace partynet {

bool RunConfig::operator==(const RunConfig& o) const {
    return votes_path == o.votes_path &&
           recommendations_path == o.recommendations_path &&
           presidencies_path == o.presidencies_path &&
           allowlist_path == o.allowlist_path && out_dir == o.out_dir &&
           window_frequency == o.window_frequency && delimiter == o.delimiter &&
           measure.damping == o.measure.damping &&
           measure.tolerance == o.measure.tolerance &&
           measure.max_iterations == o.measure.max_iterations &&
           loyalty_top_k == o.loyalty_top_k && formats == o.formats;
}

void RunConfig::validate() const {
    if (delimiter.size() != 1)
        throw std::invalid_argument("delimiter must be a single character");
    if (window_frequency != "yearly")
        throw std::invalid_argument("unsupported window frequency '" +
                                    window_frequency + "'");
    if (!(measure.damping > 0.0 && measure.damping < 1.0))
        throw std::invalid_argument("damping must lie in (0, 1)");
    if (!(measure.tolerance > 0.0))
        throw std::invalid_argument("tolerance must be positive");
    if (measure.max_iterations < 1)
        throw std::invalid_argument("max_iterations must be at least 1");
    for (const auto& f : formats) {
        if (f != "graphml" && f != "dot" && f != "csv" && f != "json")
            throw std::invalid_argument("unknown format '" + f + "'");
    }
}

CleaningPolicy RunConfig::cleaning_policy() const {
    CleaningPolicy policy;
    policy.delimiter = delimiter[0];
    return policy;
}

nlohmann::json config_to_json(const RunConfig& c) {
    return nlohmann::json{{"votes", c.votes_path},
                          {"recommendations", c.recommendations_path},
                          {"presidencies", c.presidencies_path},
                          {"allowlist", c.allowlist_path},
                          {"out_dir", c.out_dir},
                          {"window_frequency", c.window_frequency},
                          {"delimiter", c.delimiter},
                          {"damping", c.measure.damping},
                          {"tolerance", c.measure.tolerance},
                          {"max_iterations", c.measure.max_iterations},
                          {"loyalty_top_k", c.loyalty_top_k},
                          {"formats", c.formats}};
}

RunConfig config_from_json(const nlohmann::json& j) {
    RunConfig c;
    c.votes_path = j.value("votes", c.votes_path);
    c.recommendations_path = j.value("recommendations", c.recommendations_path);
    c.presidencies_path = j.value("presidencies", c.presidencies_path);
    c.allowlist_path = j.value("allowlist", c.allowlist_path);
    c.out_dir = j.value("out_dir", c.out_dir);
    c.window_frequency = j.value("window_frequency", c.window_frequency);
    c.delimiter = j.value("delimiter", c.delimiter);
    c.measure.damping = j.value("damping", c.measure.damping);
    c.measure.tolerance = j.value("tolerance", c.measure.tolerance);
    c.measure.max_iterations = j.value("max_iterations", c.measure.max_iterations);
    c.loyalty_top_k = j.value("loyalty_top_k", c.loyalty_top_k);
    if (j.contains("formats"))
        c.formats = j.at("formats").get<std::set<std::string>>();
    c.validate();
    return c;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open config " + path.string());
    nlohmann::json j;
    in >> j;
    return config_from_json(j);
}

void save_config(const RunConfig& c, const std::filesystem::path& path) {
    write_file_atomic(path, config_to_json(c).dump(2) + "\n");
}

Command parse_command(const std::string& name) {
    if (name == "ingest")
        return Command::Ingest;
    if (name == "build")
        return Command::Build;
    if (name == "measure")
        return Command::Measure;
    if (name == "support")
        return Command::Support;
    if (name == "loyalty")
        return Command::Loyalty;
    if (name == "report")
        return Command::Report;
    throw std::invalid_argument("unknown command '" + name + "'");
}

namespace {

std::ifstream open_input(const std::string& path, const char* what) {
    if (path.empty())
        throw std::runtime_error(std::string(what) + " file not given");
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error(std::string("cannot open ") + what + " file '" +
                                 path + "'");
    return in;
}

std::set<std::string> load_allowlist(const std::string& path) {
    if (path.empty())
        return {};
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open allowlist file '" + path + "'");
    nlohmann::json j;
    in >> j;
    if (!j.is_array())
        throw ParseError("allowlist must be a JSON array of party codes");
    std::set<std::string> parties;
    for (const auto& item : j)
        parties.insert(item.get<std::string>());
    return parties;
}

} // namespace

PipelineData load_inputs(const RunConfig& config) {
    config.validate();
    PipelineData data;
    const CleaningPolicy policy = config.cleaning_policy();

    {
        auto in = open_input(config.votes_path, "votes");
        auto parsed = parse_votes(in, policy);
        data.votes = std::move(parsed.records);
        data.votes_diagnostics = std::move(parsed.diagnostics);
    }
    {
        auto in = open_input(config.recommendations_path, "recommendations");
        auto parsed = parse_recommendations(in, policy);
        data.recommendations = std::move(parsed.records);
        data.recommendations_diagnostics = std::move(parsed.diagnostics);
    }
    if (config.presidencies_path.empty()) {
        data.presidencies = default_presidencies();
    } else {
        std::ifstream in(config.presidencies_path);
        if (!in)
            throw std::runtime_error("cannot open presidencies file '" +
                                     config.presidencies_path + "'");
        nlohmann::json j;
        in >> j;
        data.presidencies = presidencies_from_json(j);
    }
    validate_presidencies(data.presidencies);
    data.active_parties = load_allowlist(config.allowlist_path);

    auto [kept, sessions] = filter_gov_sessions(data.votes, data.recommendations);
    data.votes = std::move(kept);
    data.gov_sessions = std::move(sessions);
    data.windows = partition_windows(session_dates(data.votes), data.presidencies,
                                     WindowFrequency::Yearly, &data.votes_diagnostics);
    return data;
}

std::vector<WindowNetwork> build_window_networks(const PipelineData& data,
                                                 const MeasureParams& params,
                                                 bool with_measures) {
    const int n = int(data.windows.size());
    std::vector<WindowNetwork> nets(size_t(n));
    std::vector<std::string> errors(size_t(n));
    std::vector<bool> convergence_failure(size_t(n), false);

#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < n; ++i) {
        const Window& window = data.windows[size_t(i)];
        auto& net = nets[size_t(i)];
        try {
            ActorIndex index = window_actor_index(data.recommendations, window);
            auto sessions =
                window_session_agreements(data.recommendations, index, window);
            net.agreement = accumulate(index, sessions, window);
            net.graph = build_network(net.agreement);
            if (with_measures) {
                net.closeness = closeness(net.graph);
                net.pagerank = pagerank(net.graph, params);
                net.hub = hits(net.graph, params);
                net.density = density(net.graph);
                net.partition = fastgreedy(net.graph);
            }
        } catch (const ConvergenceError& e) {
            errors[size_t(i)] = "window " + window.label + ": " + e.what();
            convergence_failure[size_t(i)] = true;
        } catch (const std::exception& e) {
            errors[size_t(i)] = "window " + window.label + ": " + e.what();
        }
    }
    for (size_t i = 0; i < errors.size(); ++i) {
        if (errors[i].empty())
            continue;
        if (convergence_failure[i])
            throw ConvergenceError(errors[i], {});
        throw std::runtime_error(errors[i]);
    }
    return nets;
}

std::vector<SupportSeries> support_series(const PipelineData& data,
                                          std::span<const WindowNetwork> networks) {
    const auto gov_recs = gov_recommendations(data.recommendations);

    std::vector<double> roll_call, clos, pr, hub, dens;
    std::vector<Window> windows_with_votes;
    for (size_t i = 0; i < data.windows.size(); ++i) {
        auto value = roll_call_support(data.votes, gov_recs, data.windows[i]);
        if (!value)
            continue; // window without votes: report nothing, not zero
        windows_with_votes.push_back(data.windows[i]);
        roll_call.push_back(*value);
        const auto& net = networks[i];
        clos.push_back(net.closeness.scores[size_t(net.graph.index.gov())]);
        pr.push_back(net.pagerank.scores[size_t(net.graph.index.gov())]);
        hub.push_back(net.hub.scores[size_t(net.graph.index.gov())]);
        dens.push_back(net.density);
    }

    std::vector<SupportSeries> series;
    series.push_back(aggregate_by_presidency("roll_call", windows_with_votes, roll_call,
                                             data.presidencies));
    series.push_back(aggregate_by_presidency("closeness", windows_with_votes, clos,
                                             data.presidencies));
    series.push_back(
        aggregate_by_presidency("pagerank", windows_with_votes, pr, data.presidencies));
    series.push_back(
        aggregate_by_presidency("hub", windows_with_votes, hub, data.presidencies));
    series.push_back(
        aggregate_by_presidency("density", windows_with_votes, dens, data.presidencies));
    return series;
}

nlohmann::json report_json(const PipelineData& data,
                           std::span<const WindowNetwork> networks,
                           std::span<const SupportSeries> series,
                           const LoyaltyTable& loyalty) {
    nlohmann::json j;
    j["presidencies"] = presidencies_to_json(data.presidencies);

    nlohmann::json windows = nlohmann::json::array();
    for (size_t i = 0; i < data.windows.size(); ++i) {
        const auto& w = data.windows[i];
        const auto& net = networks[i];
        nlohmann::json entry{{"label", w.label},
                             {"start", format_date(w.start)},
                             {"end", format_date(w.end)},
                             {"sessions", w.session_ids.size()},
                             {"nodes", net.graph.node_count()},
                             {"edges", net.graph.edges.size()},
                             {"density", net.density},
                             {"communities", net.partition.community_count()},
                             {"modularity", net.partition.q}};
        entry["presidency"] =
            w.presidency ? nlohmann::json(*w.presidency) : nlohmann::json(nullptr);
        windows.push_back(std::move(entry));
    }
    j["windows"] = std::move(windows);

    nlohmann::json support;
    for (const auto& s : series) {
        nlohmann::json per_window = nlohmann::json::object();
        for (const auto& [label, value] : s.per_window)
            per_window[label] = value;
        nlohmann::json per_presidency = nlohmann::json::object();
        for (const auto& [name, value] : s.per_presidency)
            per_presidency[name] =
                value ? nlohmann::json(*value) : nlohmann::json(nullptr);
        support[s.method] = {{"per_window", std::move(per_window)},
                             {"per_presidency", std::move(per_presidency)}};
    }
    j["support"] = std::move(support);

    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : loyalty.rows) {
        nlohmann::json entry{{"party", row.party},
                             {"total_votes", row.total_votes},
                             {"loyal_votes", row.loyal_votes}};
        entry["rate"] = row.rate ? nlohmann::json(*row.rate) : nlohmann::json(nullptr);
        rows.push_back(std::move(entry));
    }
    j["loyalty"] = std::move(rows);
    return j;
}

namespace {

std::vector<Recommendation> party_recommendations(const PipelineData& data) {
    std::vector<Recommendation> recs;
    for (const auto& rec : data.recommendations) {
        if (rec.actor != kGovActor)
            recs.push_back(rec);
    }
    return recs;
}

std::string votes_csv(std::span<const VoteRecord> votes, char delim) {
    std::ostringstream out;
    csv::write_row(out,
                   {"session_id", "date", "bill_id", "voter_id", "voter_name",
                    "party", "vote"},
                   delim);
    for (const auto& v : votes) {
        csv::write_row(out,
                       {v.session_id, format_date(v.date), v.bill_id,
                        std::to_string(v.voter_id), v.voter_name, v.party,
                        std::string(to_string(v.vote))},
                       delim);
    }
    return out.str();
}

std::string recommendations_csv(std::span<const Recommendation> recs, char delim) {
    std::ostringstream out;
    csv::write_row(out, {"session_id", "actor", "vote"}, delim);
    for (const auto& r : recs)
        csv::write_row(out, {r.session_id, r.actor, std::string(to_string(r.vote))},
                       delim);
    return out.str();
}

std::string windows_csv(std::span<const Window> windows, char delim) {
    std::ostringstream out;
    csv::write_row(out, {"label", "start", "end", "presidency", "sessions"}, delim);
    for (const auto& w : windows)
        csv::write_row(out,
                       {w.label, format_date(w.start), format_date(w.end),
                        w.presidency.value_or(""), std::to_string(w.session_ids.size())},
                       delim);
    return out.str();
}

std::string measures_csv(std::span<const Window> windows,
                         std::span<const WindowNetwork> networks, char delim) {
    std::ostringstream out;
    csv::write_row(out, {"window", "measure", "actor", "score"}, delim);
    for (size_t i = 0; i < windows.size(); ++i) {
        const auto& net = networks[i];
        const auto& index = net.graph.index;
        for (const MeasureVector* mv : {&net.closeness, &net.pagerank, &net.hub}) {
            for (int a = 0; a < index.size(); ++a)
                csv::write_row(out,
                               {windows[i].label, mv->measure, index.code(a),
                                format_score(mv->scores[size_t(a)])},
                               delim);
        }
        // Density is a whole-network measure; '*' marks the network row.
        csv::write_row(out, {windows[i].label, "density", "*", format_score(net.density)},
                       delim);
    }
    return out.str();
}

std::string communities_csv(std::span<const Window> windows,
                            std::span<const WindowNetwork> networks, char delim) {
    std::ostringstream out;
    csv::write_row(out, {"window", "actor", "community"}, delim);
    for (size_t i = 0; i < windows.size(); ++i) {
        const auto& net = networks[i];
        for (int a = 0; a < net.graph.index.size(); ++a)
            csv::write_row(out,
                           {windows[i].label, net.graph.index.code(a),
                            std::to_string(net.partition.community[size_t(a)])},
                           delim);
    }
    return out.str();
}

std::string support_csv(std::span<const SupportSeries> series, char delim) {
    std::ostringstream out;
    csv::write_row(out, {"presidency", "method", "value"}, delim);
    if (series.empty())
        return out.str();
    // All series share the presidency order; group rows by presidency.
    for (size_t p = 0; p < series.front().per_presidency.size(); ++p) {
        for (const auto& s : series) {
            const auto& [name, value] = s.per_presidency[p];
            if (value)
                csv::write_row(out, {name, s.method, format_score(*value)}, delim);
        }
    }
    return out.str();
}

std::string support_by_window_csv(std::span<const SupportSeries> series, char delim) {
    std::ostringstream out;
    csv::write_row(out, {"window", "method", "value"}, delim);
    if (series.empty())
        return out.str();
    for (size_t w = 0; w < series.front().per_window.size(); ++w) {
        for (const auto& s : series)
            csv::write_row(out,
                           {s.per_window[w].first, s.method,
                            format_score(s.per_window[w].second)},
                           delim);
    }
    return out.str();
}

std::string loyalty_csv(const LoyaltyTable& table, char delim) {
    std::ostringstream out;
    csv::write_row(out, {"party", "total_votes", "loyal_votes", "rate"}, delim);
    for (const auto& row : table.rows)
        csv::write_row(out,
                       {row.party, std::to_string(row.total_votes),
                        std::to_string(row.loyal_votes),
                        row.rate ? format_score(*row.rate) : std::string()},
                       delim);
    return out.str();
}

} // namespace

std::vector<std::filesystem::path> run_command(const RunConfig& config, Command command) {
    config.validate();
    const char delim = config.delimiter[0];
    const std::filesystem::path out_dir(config.out_dir);
    std::filesystem::create_directories(out_dir);
    std::vector<std::filesystem::path> written;
    auto emit = [&](const std::filesystem::path& name, const std::string& content) {
        const auto path = out_dir / name;
        write_file_atomic(path, content);
        written.push_back(path);
    };

    PipelineData data = load_inputs(config);

    switch (command) {
    case Command::Ingest: {
        emit("votes_clean.csv", votes_csv(data.votes, delim));
        emit("recommendations_clean.csv",
             recommendations_csv(data.recommendations, delim));
        emit("windows.csv", windows_csv(data.windows, delim));
        nlohmann::json diag{
            {"votes", diagnostics_to_json(data.votes_diagnostics)},
            {"recommendations", diagnostics_to_json(data.recommendations_diagnostics)}};
        emit("diagnostics.json", diag.dump(2) + "\n");
        break;
    }
    case Command::Build: {
        auto nets = build_window_networks(data, config.measure, false);
        for (size_t i = 0; i < nets.size(); ++i) {
            const auto& label = data.windows[i].label;
            if (config.formats.count("graphml")) {
                std::ostringstream out;
                write_graphml(out, nets[i].graph);
                emit(label + ".graphml", out.str());
            }
            if (config.formats.count("dot")) {
                std::ostringstream out;
                write_dot(out, nets[i].graph);
                emit(label + ".dot", out.str());
            }
            if (config.formats.count("csv")) {
                std::ostringstream out;
                write_agreement_csv(out, nets[i].agreement);
                emit(label + ".w.csv", out.str());
            }
        }
        break;
    }
    case Command::Measure: {
        auto nets = build_window_networks(data, config.measure, true);
        emit("measures.csv", measures_csv(data.windows, nets, delim));
        emit("communities.csv", communities_csv(data.windows, nets, delim));
        break;
    }
    case Command::Support: {
        auto nets = build_window_networks(data, config.measure, true);
        auto series = support_series(data, nets);
        emit("support.csv", support_csv(series, delim));
        emit("support_by_window.csv", support_by_window_csv(series, delim));
        break;
    }
    case Command::Loyalty: {
        auto table = loyalty_rates(data.votes, party_recommendations(data),
                                   data.active_parties, config.loyalty_top_k);
        emit("loyalty.csv", loyalty_csv(table, delim));
        break;
    }
    case Command::Report: {
        auto nets = build_window_networks(data, config.measure, true);
        auto series = support_series(data, nets);
        auto table = loyalty_rates(data.votes, party_recommendations(data),
                                   data.active_parties, config.loyalty_top_k);
        emit("report.json", report_json(data, nets, series, table).dump(2) + "\n");
        break;
    }
    }
    return written;
}

} // namespace partynet

#include "partynet/serialize.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "partynet/csv.hpp"

namespace partynet {

namespace {

std::string xml_escape(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        case '\'': out += "&apos;"; break;
        default: out.push_back(c);
        }
    }
    return out;
}

std::string dot_quote(std::string_view s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\')
            out.push_back('\\');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

} // namespace

void write_graphml(std::ostream& out, const PartyGraph& g) {
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
        << "  <key id=\"d0\" for=\"node\" attr.name=\"actor\" attr.type=\"string\"/>\n"
        << "  <key id=\"d1\" for=\"graph\" attr.name=\"window\" attr.type=\"string\"/>\n"
        << "  <graph id=\"G\" edgedefault=\"undirected\">\n"
        << "    <data key=\"d1\">" << xml_escape(g.window_label) << "</data>\n";
    for (int i = 0; i < g.node_count(); ++i) {
        out << "    <node id=\"n" << i << "\"><data key=\"d0\">"
            << xml_escape(g.index.code(i)) << "</data></node>\n";
    }
    for (const auto& [i, j] : g.edges)
        out << "    <edge source=\"n" << i << "\" target=\"n" << j << "\"/>\n";
    out << "  </graph>\n</graphml>\n";
}

void write_dot(std::ostream& out, const PartyGraph& g) {
    out << "graph " << dot_quote(g.window_label) << " {\n";
    for (int i = 0; i < g.node_count(); ++i)
        out << "  " << dot_quote(g.index.code(i)) << ";\n";
    for (const auto& [i, j] : g.edges)
        out << "  " << dot_quote(g.index.code(i)) << " -- "
            << dot_quote(g.index.code(j)) << ";\n";
    out << "}\n";
}

void write_agreement_csv(std::ostream& out, const AgreementWindow& aw) {
    const int n = aw.index.size();
    std::vector<std::string> row;
    row.reserve(size_t(n) + 1);
    row.push_back("actor");
    for (int j = 0; j < n; ++j)
        row.push_back(aw.index.code(j));
    csv::write_row(out, row);
    for (int i = 0; i < n; ++i) {
        row.clear();
        row.push_back(aw.index.code(i));
        for (int j = 0; j < n; ++j)
            row.push_back(std::to_string(aw.w(i, j)));
        csv::write_row(out, row);
    }
}

std::string format_score(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, ptr);
}

nlohmann::json diagnostics_to_json(const DiagnosticsReport& d) {
    nlohmann::json j;
    j["rows_in"] = d.rows_in;
    j["rows_kept"] = d.rows_kept;
    j["dropped"] = d.dropped;
    j["recommendation_conflicts"] = d.recommendation_conflicts;
    j["sessions_outside_presidency"] = d.sessions_outside_presidency;
    j["notes"] = d.notes;
    return j;
}

nlohmann::json presidencies_to_json(std::span<const Presidency> presidencies) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& p : presidencies) {
        arr.push_back({{"name", p.name},
                       {"start", format_date(p.start)},
                       {"end", format_date(p.end)}});
    }
    return arr;
}

std::vector<Presidency> presidencies_from_json(const nlohmann::json& j) {
    if (!j.is_array())
        throw ParseError("presidencies config must be a JSON array");
    std::vector<Presidency> out;
    for (const auto& item : j) {
        Presidency p;
        p.name = item.at("name").get<std::string>();
        auto start = parse_date(item.at("start").get<std::string>());
        auto end = parse_date(item.at("end").get<std::string>());
        if (!start || !end)
            throw ParseError("presidency '" + p.name + "' has an invalid date");
        p.start = *start;
        p.end = *end;
        out.push_back(std::move(p));
    }
    std::sort(out.begin(), out.end(),
              [](const Presidency& a, const Presidency& b) { return a.start < b.start; });
    return out;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    const auto tmp = path.parent_path() /
                     (path.filename().string() + ".tmp");
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        out.write(content.data(), std::streamsize(content.size()));
        if (!out)
            throw std::runtime_error("short write to " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace partynet

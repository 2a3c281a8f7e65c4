#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <span>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "partynet/graph.hpp"
#include "partynet/simnet.hpp"
#include "partynet/support.hpp"
#include "partynet/types.hpp"

namespace partynet {

// GraphML with a string node attribute `actor` and a string graph
// attribute `window`.
void write_graphml(std::ostream& out, const PartyGraph& g);

// Graphviz DOT, undirected.
void write_dot(std::ostream& out, const PartyGraph& g);

// Agreement matrix as CSV with actor labels on the header row and first
// column.
void write_agreement_csv(std::ostream& out, const AgreementWindow& aw);

// Locale-independent shortest round-trip decimal form.
std::string format_score(double value);

nlohmann::json diagnostics_to_json(const DiagnosticsReport& d);
nlohmann::json presidencies_to_json(std::span<const Presidency> presidencies);
std::vector<Presidency> presidencies_from_json(const nlohmann::json& j);

// Writes `content` through a temp file in the same directory followed by
// a rename, so readers never observe a half-written file.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

std::string read_file(const std::filesystem::path& path);

} // namespace partynet

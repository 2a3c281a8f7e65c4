#pragma once

#include <istream>
#include <map>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "partynet/types.hpp"

namespace partynet {

template <typename Record> struct ParseResult {
    std::vector<Record> records;
    DiagnosticsReport diagnostics;
};

// Reads the votes CSV (header: session_id,date,bill_id,voter_id,
// voter_name,party,vote). Rows with absence tokens, unknown vote tokens,
// bad dates or repeated (session_id, voter_id) pairs are dropped and
// counted in the diagnostics; a malformed header throws ParseError.
ParseResult<VoteRecord> parse_votes(std::istream& in, const CleaningPolicy& policy = {});

// Reads the recommendations CSV (header: session_id,actor,vote). At most
// one recommendation survives per (session, actor); groups whose
// duplicates disagree are dropped entirely.
ParseResult<Recommendation> parse_recommendations(std::istream& in,
                                                  const CleaningPolicy& policy = {});

// Keeps only votes whose session carries a government recommendation.
// Returns the retained votes and the set of retained session ids.
std::pair<std::vector<VoteRecord>, std::set<std::string>>
filter_gov_sessions(std::span<const VoteRecord> votes,
                    std::span<const Recommendation> recs);

// Buckets sessions into calendar-year windows clipped at presidency
// boundaries, so no window spans two presidencies. Sessions dated outside
// every presidency land in windows with no presidency attribution and are
// counted in `diagnostics` when given. Labels are the year, suffixed with
// the presidency name only when one year splits across segments.
std::vector<Window> partition_windows(const std::map<std::string, Date>& session_dates,
                                      std::span<const Presidency> presidencies,
                                      WindowFrequency frequency,
                                      DiagnosticsReport* diagnostics = nullptr);

// Presidency calendar used when no config file is given: the Brazilian
// presidencies 1998-2019 whose roll-call data motivated this tool.
std::vector<Presidency> default_presidencies();

// Validates the Presidency invariants: sorted by start, pairwise
// non-overlapping. Throws std::invalid_argument on violation.
void validate_presidencies(std::span<const Presidency> presidencies);

// Map session -> date for the given votes (first occurrence wins).
std::map<std::string, Date> session_dates(std::span<const VoteRecord> votes);

} // namespace partynet

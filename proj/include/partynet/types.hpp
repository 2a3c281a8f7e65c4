#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "partynet/date.hpp"

namespace partynet {

// Actor token reserved for the government in recommendation files and
// actor indices.
inline constexpr std::string_view kGovActor = "GOV";

enum class VoteValue : std::uint8_t {
    Yes,
    No,
    Abstention,
    Obstruction,
};

// Case-insensitive token -> VoteValue. Anything else is not a vote.
std::optional<VoteValue> parse_vote_value(std::string_view token);
std::string_view to_string(VoteValue v);

// Tokens the source data uses for lawmakers who were not present. These
// are dropped during cleaning, counted separately from unknown garbage.
bool is_absence_token(std::string_view token);

struct VoteRecord {
    std::string session_id;
    Date date{};
    std::string bill_id;
    std::int64_t voter_id = 0;
    std::string voter_name;
    std::string party;
    VoteValue vote = VoteValue::Yes;

    bool operator==(const VoteRecord&) const = default;
};

struct Recommendation {
    std::string session_id;
    std::string actor; // party code or kGovActor
    VoteValue vote = VoteValue::Yes;

    bool operator==(const Recommendation&) const = default;
};

struct Presidency {
    std::string name;
    Date start{};
    Date end{};

    bool contains(const Date& d) const { return start <= d && d <= end; }
    bool operator==(const Presidency&) const = default;
};

enum class WindowFrequency { Yearly };

struct Window {
    std::string label;
    Date start{};
    Date end{};
    // Name of the presidency the window belongs to; empty when the
    // window covers sessions dated outside every presidency.
    std::optional<std::string> presidency;
    std::set<std::string> session_ids;

    bool contains_session(const std::string& session_id) const {
        return session_ids.count(session_id) > 0;
    }
};

// Row-level accounting for one parsing/cleaning pass. The invariant
// rows_kept + sum(dropped) == rows_in holds for every parse.
struct DiagnosticsReport {
    std::uint64_t rows_in = 0;
    std::uint64_t rows_kept = 0;
    std::map<std::string, std::uint64_t> dropped; // reason -> row count
    // (session, actor) groups removed because the duplicates disagreed.
    std::uint64_t recommendation_conflicts = 0;
    std::uint64_t sessions_outside_presidency = 0;
    std::vector<std::string> notes;

    std::uint64_t dropped_total() const {
        std::uint64_t n = 0;
        for (const auto& [_, count] : dropped)
            n += count;
        return n;
    }
    void drop(const std::string& reason, std::uint64_t n = 1) { dropped[reason] += n; }
    bool balanced() const { return rows_in == rows_kept + dropped_total(); }
};

struct CleaningPolicy {
    char delimiter = ',';
    // Records dated before this are dropped (the recommendation data the
    // pipeline depends on only exists from 1998 on).
    Date min_date = make_date(1998, 1, 1);
    // When true, row-level problems abort the parse instead of being
    // dropped with a diagnostic.
    bool strict = false;
};

// Fatal input problems: unreadable stream, malformed header, strict-mode
// row failures.
class ParseError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

} // namespace partynet

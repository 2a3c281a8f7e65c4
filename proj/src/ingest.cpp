#include "partynet/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <unordered_map>
#include <unordered_set>

#include "partynet/csv.hpp"

namespace partynet {

namespace {

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return out;
}

std::string trim(std::string_view s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b])))
        ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1])))
        --e;
    return std::string(s.substr(b, e - b));
}

void check_header(const std::vector<std::string>& got,
                  const std::vector<std::string>& want, const char* what) {
    if (got.size() != want.size())
        throw ParseError(std::string(what) + ": malformed header, expected " +
                         std::to_string(want.size()) + " columns, got " +
                         std::to_string(got.size()));
    for (size_t i = 0; i < want.size(); ++i) {
        if (lower(trim(got[i])) != want[i])
            throw ParseError(std::string(what) + ": malformed header, column " +
                             std::to_string(i + 1) + " is '" + got[i] +
                             "', expected '" + want[i] + "'");
    }
}

struct SessionVoterKey {
    std::string session;
    std::int64_t voter;
    bool operator==(const SessionVoterKey&) const = default;
};

struct SessionVoterHash {
    size_t operator()(const SessionVoterKey& k) const {
        return std::hash<std::string>{}(k.session) ^
               (std::hash<std::int64_t>{}(k.voter) * 0x9e3779b97f4a7c15ULL);
    }
};

} // namespace

std::optional<VoteValue> parse_vote_value(std::string_view token) {
    std::string t = lower(trim(token));
    if (t == "yes")
        return VoteValue::Yes;
    if (t == "no")
        return VoteValue::No;
    if (t == "abstention")
        return VoteValue::Abstention;
    if (t == "obstruction")
        return VoteValue::Obstruction;
    return std::nullopt;
}

std::string_view to_string(VoteValue v) {
    switch (v) {
    case VoteValue::Yes: return "Yes";
    case VoteValue::No: return "No";
    case VoteValue::Abstention: return "Abstention";
    case VoteValue::Obstruction: return "Obstruction";
    }
    return "Yes";
}

bool is_absence_token(std::string_view token) {
    return lower(trim(token)).find("absent") != std::string::npos;
}

ParseResult<VoteRecord> parse_votes(std::istream& in, const CleaningPolicy& policy) {
    csv::Reader reader(in, policy.delimiter);
    std::vector<std::string> fields;
    if (!reader.next(fields))
        throw ParseError("votes: empty input, header row required");
    check_header(fields,
                 {"session_id", "date", "bill_id", "voter_id", "voter_name",
                  "party", "vote"},
                 "votes");

    ParseResult<VoteRecord> result;
    std::unordered_set<SessionVoterKey, SessionVoterHash> seen;
    auto reject = [&](const std::string& reason) {
        if (policy.strict)
            throw ParseError("votes: row " + std::to_string(result.diagnostics.rows_in) +
                             " rejected (" + reason + ")");
        result.diagnostics.drop(reason);
    };

    while (reader.next(fields)) {
        ++result.diagnostics.rows_in;
        if (fields.size() != 7) {
            reject("malformed_row");
            continue;
        }
        VoteRecord rec;
        rec.session_id = trim(fields[0]);
        if (rec.session_id.empty()) {
            reject("malformed_row");
            continue;
        }
        auto date = parse_date(trim(fields[1]));
        if (!date) {
            reject("bad_date");
            continue;
        }
        if (*date < policy.min_date) {
            reject("date_out_of_range");
            continue;
        }
        rec.date = *date;
        rec.bill_id = trim(fields[2]);
        const std::string voter = trim(fields[3]);
        auto [ptr, ec] = std::from_chars(voter.data(), voter.data() + voter.size(),
                                         rec.voter_id);
        if (ec != std::errc{} || ptr != voter.data() + voter.size()) {
            reject("bad_voter_id");
            continue;
        }
        rec.voter_name = trim(fields[4]);
        rec.party = trim(fields[5]);
        auto vote = parse_vote_value(fields[6]);
        if (!vote) {
            reject(is_absence_token(fields[6]) ? "absent_vote" : "unknown_vote");
            continue;
        }
        rec.vote = *vote;
        if (!seen.insert({rec.session_id, rec.voter_id}).second) {
            // Duplicate (session, voter): keep the first occurrence.
            reject("duplicate_vote");
            continue;
        }
        result.records.push_back(std::move(rec));
        ++result.diagnostics.rows_kept;
    }
    return result;
}

ParseResult<Recommendation> parse_recommendations(std::istream& in,
                                                  const CleaningPolicy& policy) {
    csv::Reader reader(in, policy.delimiter);
    std::vector<std::string> fields;
    if (!reader.next(fields))
        throw ParseError("recommendations: empty input, header row required");
    check_header(fields, {"session_id", "actor", "vote"}, "recommendations");

    ParseResult<Recommendation> result;
    auto& diag = result.diagnostics;
    auto reject = [&](const std::string& reason) {
        if (policy.strict)
            throw ParseError("recommendations: row " + std::to_string(diag.rows_in) +
                             " rejected (" + reason + ")");
        diag.drop(reason);
    };

    // (session, actor) -> index into result.records, or conflict marker.
    constexpr size_t kConflict = ~size_t{0};
    std::map<std::pair<std::string, std::string>, size_t> by_key;

    while (reader.next(fields)) {
        ++diag.rows_in;
        if (fields.size() != 3) {
            reject("malformed_row");
            continue;
        }
        Recommendation rec;
        rec.session_id = trim(fields[0]);
        rec.actor = trim(fields[1]);
        if (rec.session_id.empty() || rec.actor.empty()) {
            reject("malformed_row");
            continue;
        }
        auto vote = parse_vote_value(fields[2]);
        if (!vote) {
            reject(is_absence_token(fields[2]) ? "absent_vote" : "unknown_vote");
            continue;
        }
        rec.vote = *vote;

        auto key = std::make_pair(rec.session_id, rec.actor);
        auto it = by_key.find(key);
        if (it == by_key.end()) {
            by_key.emplace(std::move(key), result.records.size());
            result.records.push_back(std::move(rec));
            ++diag.rows_kept;
            continue;
        }
        if (it->second == kConflict) {
            // Group already dropped for disagreeing; this row joins it.
            reject("conflicting_recommendation");
            continue;
        }
        if (result.records[it->second].vote == rec.vote) {
            reject("duplicate_recommendation");
            continue;
        }
        // Disagreeing duplicate: the recommendation is unresolvable, drop
        // the kept row too.
        if (policy.strict)
            throw ParseError("recommendations: conflicting votes for session " +
                             rec.session_id + ", actor " + rec.actor);
        diag.drop("conflicting_recommendation", 2);
        --diag.rows_kept;
        ++diag.recommendation_conflicts;
        result.records[it->second].session_id.clear(); // tombstone
        it->second = kConflict;
    }

    std::erase_if(result.records,
                  [](const Recommendation& r) { return r.session_id.empty(); });
    return result;
}

std::pair<std::vector<VoteRecord>, std::set<std::string>>
filter_gov_sessions(std::span<const VoteRecord> votes,
                    std::span<const Recommendation> recs) {
    std::unordered_set<std::string> gov_sessions;
    for (const auto& rec : recs) {
        if (rec.actor == kGovActor)
            gov_sessions.insert(rec.session_id);
    }
    std::vector<VoteRecord> kept;
    std::set<std::string> sessions;
    for (const auto& vote : votes) {
        if (gov_sessions.count(vote.session_id)) {
            kept.push_back(vote);
            sessions.insert(vote.session_id);
        }
    }
    return {std::move(kept), std::move(sessions)};
}

namespace {

std::string sanitize_label(std::string_view name) {
    std::string out;
    for (char c : name)
        out.push_back(std::isalnum(static_cast<unsigned char>(c)) ? c : '_');
    return out;
}

// A bucket key: one calendar year restricted to one presidency, or to one
// gap between presidencies (segment = index of the presidency, or for
// gaps, ~index of the preceding one).
struct Segment {
    int year;
    int presidency = -1;     // index into presidencies, -1 for gaps
    int gap_after = -1;      // for gaps: index of the presidency just before
    bool operator<(const Segment& o) const {
        return std::tie(year, presidency, gap_after) <
               std::tie(o.year, o.presidency, o.gap_after);
    }
};

} // namespace

std::vector<Window> partition_windows(const std::map<std::string, Date>& dates,
                                      std::span<const Presidency> presidencies,
                                      WindowFrequency frequency,
                                      DiagnosticsReport* diagnostics) {
    (void)frequency; // Yearly is the only frequency defined.
    validate_presidencies(presidencies);

    struct Bucket {
        std::set<std::string> sessions;
        Date min_date{}, max_date{};
    };
    std::map<Segment, Bucket> buckets;

    for (const auto& [session, date] : dates) {
        Segment seg{year_of(date)};
        for (size_t p = 0; p < presidencies.size(); ++p) {
            if (presidencies[p].contains(date)) {
                seg.presidency = int(p);
                break;
            }
            if (presidencies[p].end < date)
                seg.gap_after = int(p);
        }
        if (seg.presidency < 0 && diagnostics) {
            ++diagnostics->sessions_outside_presidency;
            diagnostics->notes.push_back("session " + session + " dated " +
                                         format_date(date) +
                                         " lies outside every presidency");
        }
        auto& b = buckets[seg];
        if (b.sessions.empty()) {
            b.min_date = b.max_date = date;
        } else {
            b.min_date = std::min(b.min_date, date);
            b.max_date = std::max(b.max_date, date);
        }
        b.sessions.insert(session);
    }

    std::map<int, int> segments_per_year;
    for (const auto& [seg, _] : buckets)
        ++segments_per_year[seg.year];

    std::vector<Window> windows;
    windows.reserve(buckets.size());
    for (auto& [seg, bucket] : buckets) {
        Window w;
        w.session_ids = std::move(bucket.sessions);
        const Date year_start = make_date(seg.year, 1, 1);
        const Date year_end = make_date(seg.year, 12, 31);
        std::string label = std::to_string(seg.year);
        if (seg.presidency >= 0) {
            const auto& pres = presidencies[size_t(seg.presidency)];
            w.presidency = pres.name;
            w.start = std::max(year_start, pres.start);
            w.end = std::min(year_end, pres.end);
            if (segments_per_year[seg.year] > 1)
                label += "-" + sanitize_label(pres.name);
        } else {
            // No presidency to clip against; tight session bounds keep the
            // window inside the gap.
            w.start = bucket.min_date;
            w.end = bucket.max_date;
            if (segments_per_year[seg.year] > 1)
                label += "-unassigned";
        }
        w.label = std::move(label);
        windows.push_back(std::move(w));
    }

    // Rare collision (two gap segments in one year): disambiguate.
    std::map<std::string, int> label_uses;
    for (auto& w : windows)
        ++label_uses[w.label];
    std::map<std::string, int> ordinal;
    for (auto& w : windows) {
        if (label_uses[w.label] > 1) {
            int n = ++ordinal[w.label];
            if (n > 1)
                w.label += "-" + std::to_string(n);
        }
    }

    std::sort(windows.begin(), windows.end(), [](const Window& a, const Window& b) {
        return std::tie(a.start, a.label) < std::tie(b.start, b.label);
    });
    return windows;
}

std::vector<Presidency> default_presidencies() {
    return {
        {"FHC I", make_date(1998, 1, 1), make_date(1998, 12, 31)},
        {"FHC II", make_date(1999, 1, 1), make_date(2002, 12, 31)},
        {"Lula I", make_date(2003, 1, 1), make_date(2006, 12, 31)},
        {"Lula II", make_date(2007, 1, 1), make_date(2010, 12, 31)},
        {"Dilma I", make_date(2011, 1, 1), make_date(2014, 12, 31)},
        {"Dilma II", make_date(2015, 1, 1), make_date(2015, 12, 2)},
        {"Temer", make_date(2016, 8, 31), make_date(2018, 12, 31)},
        {"Bolsonaro", make_date(2019, 1, 1), make_date(2019, 7, 12)},
    };
}

void validate_presidencies(std::span<const Presidency> presidencies) {
    for (size_t i = 0; i < presidencies.size(); ++i) {
        const auto& p = presidencies[i];
        if (p.end < p.start)
            throw std::invalid_argument("presidency '" + p.name + "' ends before it starts");
        if (i > 0) {
            const auto& prev = presidencies[i - 1];
            if (!(prev.start < p.start))
                throw std::invalid_argument("presidencies not ordered by start date at '" +
                                            p.name + "'");
            if (!(prev.end < p.start))
                throw std::invalid_argument("presidencies '" + prev.name + "' and '" +
                                            p.name + "' overlap");
        }
    }
}

std::map<std::string, Date> session_dates(std::span<const VoteRecord> votes) {
    std::map<std::string, Date> dates;
    for (const auto& v : votes)
        dates.emplace(v.session_id, v.date);
    return dates;
}

} // namespace partynet

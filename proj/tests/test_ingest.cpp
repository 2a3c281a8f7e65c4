#include <doctest.h>

#include <random>
#include <sstream>

#include "partynet/ingest.hpp"

using namespace partynet;

namespace {

ParseResult<VoteRecord> parse_votes_str(const std::string& text,
                                        const CleaningPolicy& policy = {}) {
    std::istringstream in(text);
    return parse_votes(in, policy);
}

ParseResult<Recommendation> parse_recs_str(const std::string& text,
                                           const CleaningPolicy& policy = {}) {
    std::istringstream in(text);
    return parse_recommendations(in, policy);
}

const std::string kVotesHeader =
    "session_id,date,bill_id,voter_id,voter_name,party,vote\n";

} // namespace

TEST_CASE("parse_votes maps tokens and keeps clean rows") {
    auto r = parse_votes_str(kVotesHeader +
                             "S1,1999-03-05,B1,10,Alice,PT,Yes\n"
                             "S1,1999-03-05,B1,11,Bob,DEM,Obstruction\n");
    CHECK(r.records.size() == 2);
    CHECK(r.records[0].vote == VoteValue::Yes);
    CHECK(r.records[0].voter_id == 10);
    CHECK(r.records[0].date == make_date(1999, 3, 5));
    CHECK(r.records[1].vote == VoteValue::Obstruction);
    CHECK(r.diagnostics.rows_kept == 2);
    CHECK(r.diagnostics.balanced());
}

TEST_CASE("parse_votes drops duplicates keeping the first occurrence") {
    auto r = parse_votes_str(kVotesHeader +
                             "S1,1999-03-05,B1,10,Alice,PT,Yes\n"
                             "S1,1999-03-05,B1,10,Alice,PT,No\n");
    REQUIRE(r.records.size() == 1);
    CHECK(r.records[0].vote == VoteValue::Yes);
    CHECK(r.diagnostics.dropped.at("duplicate_vote") == 1);
    CHECK(r.diagnostics.balanced());
}

TEST_CASE("parse_votes drops absence categories separately from garbage") {
    auto r = parse_votes_str(kVotesHeader +
                             "S1,1999-03-05,B1,10,Alice,PT,Absent\n"
                             "S1,1999-03-05,B1,11,Bob,PT,Absent - justified\n"
                             "S1,1999-03-05,B1,12,Carol,PT,Banana\n");
    CHECK(r.records.empty());
    CHECK(r.diagnostics.dropped.at("absent_vote") == 2);
    CHECK(r.diagnostics.dropped.at("unknown_vote") == 1);
    CHECK(r.diagnostics.balanced());
}

TEST_CASE("parse_votes drops bad dates and pre-1998 dates") {
    auto r = parse_votes_str(kVotesHeader +
                             "S1,1999-02-30,B1,10,Alice,PT,Yes\n"
                             "S1,not-a-date,B1,11,Bob,PT,Yes\n"
                             "S1,1997-12-31,B1,12,Carol,PT,Yes\n");
    CHECK(r.records.empty());
    CHECK(r.diagnostics.dropped.at("bad_date") == 2);
    CHECK(r.diagnostics.dropped.at("date_out_of_range") == 1);
}

TEST_CASE("parse_votes rejects malformed headers") {
    CHECK_THROWS_AS(parse_votes_str("session,date\nS1,1999-01-01\n"), ParseError);
    CHECK_THROWS_AS(parse_votes_str(""), ParseError);
}

TEST_CASE("parse_votes strict mode turns drops into errors") {
    CleaningPolicy strict;
    strict.strict = true;
    CHECK_THROWS_AS(parse_votes_str(kVotesHeader + "S1,1999-01-01,B1,1,A,PT,Banana\n",
                                    strict),
                    ParseError);
}

TEST_CASE("parse_votes honors the configured delimiter and quoting") {
    CleaningPolicy policy;
    policy.delimiter = ';';
    auto r = parse_votes_str("session_id;date;bill_id;voter_id;voter_name;party;vote\n"
                             "S1;1999-03-05;B1;10;\"da Silva; Alice\";PT;Yes\n",
                             policy);
    REQUIRE(r.records.size() == 1);
    CHECK(r.records[0].voter_name == "da Silva; Alice");
}

TEST_CASE("parse_recommendations maps GOV and applies the conflict rule") {
    auto r = parse_recs_str("session_id,actor,vote\n"
                            "S1,GOV,No\n"
                            "S2,PT,Yes\n"
                            "S2,PT,No\n");
    REQUIRE(r.records.size() == 1);
    CHECK(r.records[0].actor == kGovActor);
    CHECK(r.records[0].vote == VoteValue::No);
    CHECK(r.diagnostics.recommendation_conflicts == 1);
    CHECK(r.diagnostics.dropped.at("conflicting_recommendation") == 2);
    CHECK(r.diagnostics.balanced());
}

TEST_CASE("parse_recommendations keeps one copy of agreeing duplicates") {
    auto r = parse_recs_str("session_id,actor,vote\n"
                            "S1,PT,Yes\n"
                            "S1,PT,Yes\n");
    REQUIRE(r.records.size() == 1);
    CHECK(r.diagnostics.dropped.at("duplicate_recommendation") == 1);
    CHECK(r.diagnostics.recommendation_conflicts == 0);
}

TEST_CASE("parse_recommendations on an empty body yields nothing") {
    auto r = parse_recs_str("session_id,actor,vote\n");
    CHECK(r.records.empty());
    CHECK(r.diagnostics.rows_in == 0);
    CHECK(r.diagnostics.balanced());
}

TEST_CASE("row accounting balances on random noisy input") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> kind(0, 5);
    std::ostringstream text;
    text << kVotesHeader;
    int rows = 0;
    for (int i = 0; i < 500; ++i, ++rows) {
        switch (kind(rng)) {
        case 0: text << "S" << i % 17 << ",1999-01-01,B1," << i % 29 << ",A,PT,Yes\n"; break;
        case 1: text << "S" << i % 17 << ",1999-01-01,B1," << i % 29 << ",A,PT,No\n"; break;
        case 2: text << "S" << i % 17 << ",baddate,B1," << i << ",A,PT,Yes\n"; break;
        case 3: text << "S" << i % 17 << ",1999-01-01,B1," << i << ",A,PT,Absent\n"; break;
        case 4: text << "S" << i % 17 << ",1999-01-01,B1," << i << ",A,PT,???\n"; break;
        case 5: text << "only,two\n"; break;
        }
    }
    auto r = parse_votes_str(text.str());
    CHECK(r.diagnostics.rows_in == std::uint64_t(rows));
    CHECK(r.diagnostics.balanced());
}

TEST_CASE("filter_gov_sessions keeps exactly the recommended sessions") {
    std::vector<VoteRecord> votes;
    for (const char* session : {"S1", "S2", "S3"}) {
        VoteRecord v;
        v.session_id = session;
        v.date = make_date(1999, 1, 1);
        v.voter_id = int(votes.size());
        v.party = "PT";
        votes.push_back(v);
    }
    std::vector<Recommendation> recs = {{"S1", "GOV", VoteValue::Yes},
                                        {"S3", "GOV", VoteValue::No},
                                        {"S2", "PT", VoteValue::Yes}};
    auto [kept, sessions] = filter_gov_sessions(votes, recs);
    CHECK(kept.size() == 2);
    CHECK(sessions == std::set<std::string>{"S1", "S3"});

    SUBCASE("idempotent") {
        auto [again, sessions2] = filter_gov_sessions(kept, recs);
        CHECK(again == kept);
        CHECK(sessions2 == sessions);
    }
    SUBCASE("identity when every session is recommended") {
        recs.push_back({"S2", "GOV", VoteValue::Yes});
        auto [all, _] = filter_gov_sessions(votes, recs);
        CHECK(all == votes);
    }
}

TEST_CASE("partition_windows: one window per year under one presidency") {
    std::map<std::string, Date> dates;
    dates["S1"] = make_date(1999, 2, 1);
    dates["S2"] = make_date(2000, 5, 1);
    dates["S3"] = make_date(2001, 7, 1);
    dates["S4"] = make_date(2002, 9, 1);
    dates["S5"] = make_date(2002, 10, 1);
    std::vector<Presidency> pres = {
        {"FHC II", make_date(1999, 1, 1), make_date(2002, 12, 31)}};
    auto windows = partition_windows(dates, pres, WindowFrequency::Yearly);
    REQUIRE(windows.size() == 4);
    CHECK(windows[0].label == "1999");
    CHECK(windows[3].label == "2002");
    CHECK(windows[3].session_ids.size() == 2);
    for (const auto& w : windows)
        CHECK(w.presidency == "FHC II");
}

TEST_CASE("partition_windows never merges across a presidency boundary") {
    std::map<std::string, Date> dates;
    dates["S1"] = make_date(2015, 11, 30);
    dates["S2"] = make_date(2016, 9, 15);
    auto windows =
        partition_windows(dates, default_presidencies(), WindowFrequency::Yearly);
    REQUIRE(windows.size() == 2);
    CHECK(windows[0].label == "2015");
    CHECK(windows[0].presidency == "Dilma II");
    CHECK(windows[1].label == "2016");
    CHECK(windows[1].presidency == "Temer");
    CHECK(windows[1].start == make_date(2016, 8, 31));
}

TEST_CASE("partition_windows splits a year with a mid-year change") {
    std::map<std::string, Date> dates;
    dates["S1"] = make_date(2001, 3, 1);
    dates["S2"] = make_date(2001, 9, 1);
    std::vector<Presidency> pres = {
        {"First", make_date(2000, 1, 1), make_date(2001, 6, 30)},
        {"Second", make_date(2001, 7, 1), make_date(2002, 12, 31)}};
    auto windows = partition_windows(dates, pres, WindowFrequency::Yearly);
    REQUIRE(windows.size() == 2);
    CHECK(windows[0].label == "2001-First");
    CHECK(windows[0].end == make_date(2001, 6, 30));
    CHECK(windows[1].label == "2001-Second");
    CHECK(windows[1].start == make_date(2001, 7, 1));
}

TEST_CASE("partition_windows flags sessions outside every presidency") {
    std::map<std::string, Date> dates;
    dates["S1"] = make_date(2016, 2, 1);  // between Dilma II and Temer
    dates["S2"] = make_date(2016, 10, 1); // Temer
    DiagnosticsReport diag;
    auto windows = partition_windows(dates, default_presidencies(),
                                     WindowFrequency::Yearly, &diag);
    REQUIRE(windows.size() == 2);
    CHECK(windows[0].label == "2016-unassigned");
    CHECK_FALSE(windows[0].presidency.has_value());
    CHECK(windows[1].label == "2016-Temer");
    CHECK(diag.sessions_outside_presidency == 1);
}

TEST_CASE("window partition covers every session exactly once") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> year(1998, 2019);
    std::uniform_int_distribution<int> month(1, 12);
    std::uniform_int_distribution<int> day(1, 28);
    for (int trial = 0; trial < 50; ++trial) {
        std::map<std::string, Date> dates;
        for (int s = 0; s < 200; ++s)
            dates["S" + std::to_string(s)] =
                make_date(year(rng), unsigned(month(rng)), unsigned(day(rng)));
        auto windows = partition_windows(dates, default_presidencies(),
                                         WindowFrequency::Yearly);
        std::map<std::string, int> seen;
        for (const auto& w : windows) {
            for (const auto& s : w.session_ids) {
                ++seen[s];
                CHECK(w.start <= dates[s]);
                CHECK(dates[s] <= w.end);
            }
        }
        CHECK(seen.size() == dates.size());
        for (const auto& [_, count] : seen)
            CHECK(count == 1);
    }
}

TEST_CASE("windows oracle: labels and counts match brute-force date bucketing") {
    // Independent check: bucket sessions by (year, containing presidency)
    // with plain loops and compare window count and populations.
    std::mt19937 rng(23);
    std::uniform_int_distribution<int> year(2014, 2017);
    std::uniform_int_distribution<int> month(1, 12);
    std::uniform_int_distribution<int> day(1, 28);
    const auto presidencies = default_presidencies();
    for (int trial = 0; trial < 100; ++trial) {
        std::map<std::string, Date> dates;
        for (int s = 0; s < 60; ++s)
            dates["S" + std::to_string(s)] =
                make_date(year(rng), unsigned(month(rng)), unsigned(day(rng)));

        std::map<std::pair<int, std::string>, std::set<std::string>> expected;
        for (const auto& [session, date] : dates) {
            std::string pres = "<none>";
            for (const auto& p : presidencies) {
                if (p.contains(date)) {
                    pres = p.name;
                    break;
                }
            }
            expected[{year_of(date), pres}].insert(session);
        }

        auto windows = partition_windows(dates, presidencies, WindowFrequency::Yearly);
        REQUIRE(windows.size() == expected.size());
        for (const auto& w : windows) {
            auto key = std::make_pair(year_of(w.start),
                                      w.presidency ? *w.presidency : "<none>");
            REQUIRE(expected.count(key) == 1);
            CHECK(expected[key] == w.session_ids);
        }
    }
}

TEST_CASE("default presidency calendar is valid") {
    CHECK_NOTHROW(validate_presidencies(default_presidencies()));
    std::vector<Presidency> overlapping = {
        {"A", make_date(1998, 1, 1), make_date(1999, 6, 30)},
        {"B", make_date(1999, 1, 1), make_date(2000, 12, 31)}};
    CHECK_THROWS_AS(validate_presidencies(overlapping), std::invalid_argument);
}

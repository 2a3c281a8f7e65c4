#include <doctest.h>

#include <random>

#include "corpus.hpp"
#include "oracles.hpp"
#include "partynet/simnet.hpp"

using namespace partynet;

namespace {

Window make_window(std::initializer_list<std::string> sessions) {
    Window w;
    w.label = "w";
    w.start = make_date(1998, 1, 1);
    w.end = make_date(1998, 12, 31);
    for (const auto& s : sessions)
        w.session_ids.insert(s);
    return w;
}

// Hand-built AgreementWindow over explicit matrices.
AgreementWindow make_aw(std::vector<std::string> codes,
                        const std::vector<std::vector<std::int64_t>>& w,
                        const std::vector<std::vector<std::int64_t>>& co,
                        std::int64_t n_sessions) {
    AgreementWindow aw;
    aw.index = ActorIndex(std::move(codes));
    aw.window = make_window({});
    aw.n_sessions = n_sessions;
    const int n = aw.index.size();
    aw.agreement.assign(size_t(n) * size_t(n), 0);
    aw.co_recommended.assign(size_t(n) * size_t(n), 0);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            aw.agreement[size_t(i) * size_t(n) + size_t(j)] = w[size_t(i)][size_t(j)];
            aw.co_recommended[size_t(i) * size_t(n) + size_t(j)] = co[size_t(i)][size_t(j)];
        }
    }
    return aw;
}

} // namespace

TEST_CASE("ActorIndex always contains GOV and stays sorted unique") {
    ActorIndex index({"PT", "DEM", "PT"});
    CHECK(index.size() == 3);
    CHECK(index.codes() == std::vector<std::string>{"DEM", "GOV", "PT"});
    CHECK(index.gov() == 1);
    CHECK(index.at("PT") == 2);
    CHECK(index.find("PSDB") == -1);
    CHECK_THROWS_AS(index.at("PSDB"), std::out_of_range);
}

TEST_CASE("session_agreement scores equal and different votes") {
    ActorIndex index({"PT", "DEM"});
    SUBCASE("equal votes give +1") {
        auto a = session_agreement("S1", {{"PT", VoteValue::Yes}, {"GOV", VoteValue::Yes}},
                                   index);
        REQUIRE(a.pairs.size() == 1);
        CHECK(a.pairs[0].a == index.at("GOV"));
        CHECK(a.pairs[0].b == index.at("PT"));
        CHECK(a.pairs[0].value == 1);
    }
    SUBCASE("different votes give -1") {
        auto a = session_agreement("S1", {{"PT", VoteValue::Yes}, {"DEM", VoteValue::No}},
                                   index);
        REQUIRE(a.pairs.size() == 1);
        CHECK(a.pairs[0].value == -1);
    }
    SUBCASE("silent actors contribute nothing") {
        auto a = session_agreement("S1", {{"PT", VoteValue::Yes}}, index);
        CHECK(a.pairs.empty());
    }
    SUBCASE("unknown actor is an error") {
        CHECK_THROWS_AS(
            session_agreement("S1", {{"PSOL", VoteValue::Yes}}, index),
            std::out_of_range);
    }
}

TEST_CASE("accumulate cancels and saturates as expected") {
    ActorIndex index({"PT"});
    Window window = make_window({"S1", "S2", "S3", "S4", "S5"});
    auto rec_session = [&](const std::string& id, VoteValue pt, VoteValue gov) {
        return session_agreement(id, {{"PT", pt}, {"GOV", gov}}, index);
    };

    SUBCASE("+1 then -1 cancels to zero") {
        std::vector<SessionAgreement> sessions = {
            rec_session("S1", VoteValue::Yes, VoteValue::Yes),
            rec_session("S2", VoteValue::Yes, VoteValue::No)};
        auto aw = accumulate_serial(index, sessions, window);
        CHECK(aw.w(index.at("PT"), index.at("GOV")) == 0);
        CHECK(aw.co(index.at("PT"), index.at("GOV")) == 2);
    }
    SUBCASE("full agreement reaches +n") {
        std::vector<SessionAgreement> sessions;
        for (int s = 1; s <= 5; ++s)
            sessions.push_back(rec_session("S" + std::to_string(s), VoteValue::Yes,
                                           VoteValue::Yes));
        auto aw = accumulate_serial(index, sessions, window);
        CHECK(aw.w(index.at("PT"), index.at("GOV")) == 5);
        CHECK(aw.n_sessions == 5);
    }
    SUBCASE("sessions outside the window are rejected") {
        std::vector<SessionAgreement> sessions = {
            rec_session("S9", VoteValue::Yes, VoteValue::Yes)};
        CHECK_THROWS_AS(accumulate_serial(index, sessions, window),
                        std::invalid_argument);
    }
}

TEST_CASE("accumulate matches the brute-force oracle on random fixtures") {
    std::mt19937 rng(101);
    for (int trial = 0; trial < 60; ++trial) {
        auto fx = corpus::random_fixture(rng);
        auto aw = accumulate(fx.index, fx.agreements, fx.window);
        auto brute = oracles::brute_accumulate(fx.sessions);

        const int n = fx.index.size();
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                oracles::CodePair key{fx.index.code(i), fx.index.code(j)};
                const long long expect_w = brute.w.count(key) ? brute.w.at(key) : 0;
                const long long expect_co = brute.co.count(key) ? brute.co.at(key) : 0;
                CHECK(aw.w(i, j) == expect_w);
                CHECK(aw.co(i, j) == expect_co);
            }
        }
    }
}

TEST_CASE("accumulate parallel kernel equals the serial reference") {
    std::mt19937 rng(102);
    for (int trial = 0; trial < 10; ++trial) {
        auto fx = corpus::random_fixture(rng, 8, 400);
        auto par = accumulate(fx.index, fx.agreements, fx.window);
        auto ser = accumulate_serial(fx.index, fx.agreements, fx.window);
        CHECK(par.agreement == ser.agreement);
        CHECK(par.co_recommended == ser.co_recommended);
        CHECK(par.n_sessions == ser.n_sessions);
    }
}

TEST_CASE("accumulate output is symmetric with zero diagonal and bounded") {
    std::mt19937 rng(103);
    for (int trial = 0; trial < 40; ++trial) {
        auto fx = corpus::random_fixture(rng);
        auto aw = accumulate(fx.index, fx.agreements, fx.window);
        const int n = fx.index.size();
        for (int i = 0; i < n; ++i) {
            CHECK(aw.w(i, i) == 0);
            for (int j = 0; j < n; ++j) {
                CHECK(aw.w(i, j) == aw.w(j, i));
                CHECK(std::abs(aw.w(i, j)) <= aw.co(i, j));
                CHECK(aw.co(i, j) <= aw.n_sessions);
            }
        }
    }
}

TEST_CASE("build_network follows the row-max rule") {
    SUBCASE("three actors, spec matrix") {
        // rows: (.,5,2) / (5,.,3) / (2,3,.) -> edges {0,1} and {1,2}
        auto aw = make_aw({"A", "B"}, // plus GOV -> 3 actors A,B,GOV
                          {{0, 5, 2}, {5, 0, 3}, {2, 3, 0}},
                          {{0, 9, 9}, {9, 0, 9}, {9, 9, 0}}, 9);
        auto g = build_network(aw);
        CHECK(g.edges == std::vector<std::pair<int, int>>{{0, 1}, {1, 2}});
    }
    SUBCASE("two actors with negative agreement still connect") {
        auto aw = make_aw({"A"}, {{0, -4}, {-4, 0}}, {{0, 4}, {4, 0}}, 4);
        auto g = build_network(aw);
        CHECK(g.edges == std::vector<std::pair<int, int>>{{0, 1}});
    }
    SUBCASE("ties select every maximizer") {
        auto aw = make_aw({"A", "B"}, {{0, 3, 3}, {3, 0, -1}, {3, -1, 0}},
                          {{0, 5, 5}, {5, 0, 5}, {5, 5, 0}}, 5);
        auto g = build_network(aw);
        CHECK(g.has_edge(0, 1));
        CHECK(g.has_edge(0, 2));
    }
    SUBCASE("actors with no defined pair stay isolated") {
        auto aw = make_aw({"A", "B"}, {{0, 2, 0}, {2, 0, 0}, {0, 0, 0}},
                          {{0, 3, 0}, {3, 0, 0}, {0, 0, 0}}, 3);
        auto g = build_network(aw);
        CHECK(g.edges == std::vector<std::pair<int, int>>{{0, 1}});
        auto adj = g.adjacency();
        CHECK(adj[2].empty());
    }
    SUBCASE("fewer than two actors is an error") {
        AgreementWindow aw;
        aw.index = ActorIndex({});
        aw.agreement.assign(1, 0);
        aw.co_recommended.assign(1, 0);
        CHECK_THROWS_AS(build_network(aw), std::invalid_argument);
    }
}

TEST_CASE("build_network matches exhaustive row-max enumeration on fixtures") {
    std::mt19937 rng(104);
    for (int trial = 0; trial < 60; ++trial) {
        auto fx = corpus::random_fixture(rng);
        auto aw = accumulate(fx.index, fx.agreements, fx.window);
        auto g = build_network(aw);
        auto brute = oracles::brute_edges(fx.actors, oracles::brute_accumulate(fx.sessions));

        std::set<oracles::CodePair> got;
        for (const auto& [i, j] : g.edges)
            got.insert({aw.index.code(i), aw.index.code(j)});
        CHECK(got == brute);
    }
}

TEST_CASE("row selection is invariant under a constant shift of the row") {
    std::mt19937 rng(105);
    for (int trial = 0; trial < 40; ++trial) {
        auto fx = corpus::random_fixture(rng);
        auto aw = accumulate(fx.index, fx.agreements, fx.window);
        const int n = aw.index.size();
        for (int row = 0; row < n; ++row) {
            auto before = row_max_selection(aw, row);
            AgreementWindow shifted = aw;
            for (int j = 0; j < n; ++j) {
                if (j != row && shifted.defined(row, j))
                    shifted.agreement[size_t(row) * size_t(n) + size_t(j)] += 7;
            }
            CHECK(row_max_selection(shifted, row) == before);
        }
    }
}

TEST_CASE("every non-isolated actor keeps an incident row-max edge") {
    std::mt19937 rng(106);
    for (int trial = 0; trial < 40; ++trial) {
        auto fx = corpus::random_fixture(rng);
        auto aw = accumulate(fx.index, fx.agreements, fx.window);
        auto g = build_network(aw);
        for (int i = 0; i < aw.index.size(); ++i) {
            auto selection = row_max_selection(aw, i);
            if (selection.empty())
                continue;
            bool found = false;
            for (int j : selection)
                found = found || g.has_edge(i, j);
            CHECK(found);
        }
    }
}

TEST_CASE("renaming actors produces an isomorphic graph") {
    std::mt19937 rng(107);
    for (int trial = 0; trial < 20; ++trial) {
        auto fx = corpus::random_fixture(rng);
        auto aw = accumulate(fx.index, fx.agreements, fx.window);
        auto g = build_network(aw);

        // Rename parties with a sort-order-scrambling prefix.
        auto rename = [](const std::string& code) {
            return code == kGovActor ? code : "Z" + code;
        };
        std::vector<corpus::ActorVotes> renamed_sessions;
        for (const auto& session : fx.sessions) {
            corpus::ActorVotes votes;
            for (const auto& [actor, vote] : session)
                votes[rename(actor)] = vote;
            renamed_sessions.push_back(std::move(votes));
        }
        std::vector<std::string> codes;
        for (const auto& actor : fx.actors)
            codes.push_back(rename(actor));
        ActorIndex renamed_index(std::move(codes));
        std::vector<SessionAgreement> agreements;
        for (size_t s = 0; s < renamed_sessions.size(); ++s)
            agreements.push_back(session_agreement("S" + std::to_string(s),
                                                   renamed_sessions[s], renamed_index));
        auto aw2 = accumulate(renamed_index, agreements, fx.window);
        auto g2 = build_network(aw2);

        std::set<oracles::CodePair> edges1, edges2;
        for (const auto& [i, j] : g.edges) {
            auto a = rename(g.index.code(i)), b = rename(g.index.code(j));
            edges1.insert(a < b ? oracles::CodePair{a, b} : oracles::CodePair{b, a});
        }
        for (const auto& [i, j] : g2.edges)
            edges2.insert({g2.index.code(i), g2.index.code(j)});
        CHECK(edges1 == edges2);
    }
}

TEST_CASE("window_actor_index applies the eligibility rule") {
    Window w = make_window({"S1", "S2"});
    std::vector<Recommendation> recs = {{"S1", "GOV", VoteValue::Yes},
                                        {"S1", "PT", VoteValue::Yes},
                                        {"S9", "DEM", VoteValue::No}};
    auto index = window_actor_index(recs, w);
    // DEM only recommended outside the window, so it does not enter.
    CHECK(index.codes() == std::vector<std::string>{"GOV", "PT"});
}

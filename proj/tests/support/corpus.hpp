#pragma once

// Deterministic synthetic corpora for the tests, the acceptance suite and
// scale runs.

#include <map>
#include <random>
#include <string>
#include <vector>

#include "partynet/simnet.hpp"
#include "partynet/types.hpp"

namespace corpus {

using ActorVotes = std::map<std::string, partynet::VoteValue>;

// Random recommendation patterns with silences: each actor speaks in each
// session with probability `speak_prob`, choosing among all four vote
// values. GOV is always one of the actors.
struct RandomFixture {
    std::vector<std::string> actors;
    std::vector<ActorVotes> sessions; // one map per session
    partynet::ActorIndex index;
    partynet::Window window;
    std::vector<partynet::SessionAgreement> agreements;
};
RandomFixture random_fixture(std::mt19937& rng, int max_actors = 8,
                             int max_sessions = 50, double speak_prob = 0.7);

// Random undirected simple graph dressed up as a PartyGraph.
partynet::PartyGraph random_graph(std::mt19937& rng, int n, double edge_prob);

// Multi-window recommendation corpus in which GOV always recommends like
// the ruling party R and agrees with every other party in under half of
// the sessions.
struct RecCorpus {
    std::vector<partynet::Recommendation> recommendations;
    std::vector<partynet::Presidency> presidencies;
    std::vector<partynet::Window> windows;
    std::string ruling_party;
};
RecCorpus gov_attachment_corpus(std::mt19937& rng, int years = 4,
                                int sessions_per_year = 40, int parties = 6);

// Two-presidency corpus: presidency A's recommendations are followed by
// exactly 90% of votes and its parties track GOV closely (star network);
// presidency B sits at 40% with parties paired among themselves and GOV
// peripheral.
struct FullCorpus {
    std::vector<partynet::VoteRecord> votes;
    std::vector<partynet::Recommendation> recommendations;
    std::vector<partynet::Presidency> presidencies;
};
FullCorpus support_ordering_corpus(std::mt19937& rng);

// Large flat corpus for the performance criteria: sessions spread over
// the built-in presidency calendar (22 windows), `total_votes` vote rows,
// a slice of sessions without a government recommendation so the filter
// has work to do.
FullCorpus scale_corpus(std::mt19937& rng, long long total_votes,
                        int sessions_per_year = 100, int parties = 20,
                        bool all_gov_recommended = false);

// CSV/JSON renderings matching the CLI input schemas.
std::string votes_csv(const std::vector<partynet::VoteRecord>& votes);
std::string recommendations_csv(const std::vector<partynet::Recommendation>& recs);
std::string presidencies_json(const std::vector<partynet::Presidency>& presidencies);

} // namespace corpus

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "partynet/types.hpp"

namespace partynet {

// One support indicator over time: raw per-window values plus the
// per-presidency means. Presidencies without a window stay absent rather
// than zero, and windows outside every presidency contribute to no mean.
struct SupportSeries {
    std::string method; // roll_call | closeness | pagerank | hub | density
    std::vector<std::pair<std::string, double>> per_window;
    std::vector<std::pair<std::string, std::optional<double>>> per_presidency;
};

// Fraction of votes in the window that equal the government
// recommendation of their session. Exact VoteValue equality, abstention
// and obstruction included. Empty windows yield no value. Parallelized
// over votes when OpenMP is enabled.
std::optional<double> roll_call_support(std::span<const VoteRecord> votes,
                                        const std::map<std::string, VoteValue>& gov_recs,
                                        const Window& window);

// Single-threaded reference used by the tests and the benchmark.
std::optional<double>
roll_call_support_serial(std::span<const VoteRecord> votes,
                         const std::map<std::string, VoteValue>& gov_recs,
                         const Window& window);

// Averages per-window values into one value per presidency, in calendar
// order of the `presidencies` span.
SupportSeries aggregate_by_presidency(std::string method,
                                      std::span<const Window> windows,
                                      std::span<const double> window_values,
                                      std::span<const Presidency> presidencies);

struct LoyaltyRow {
    std::string party;
    std::int64_t total_votes = 0; // votes cast in sessions the leader spoke
    std::int64_t loyal_votes = 0;
    std::optional<double> rate;   // absent when total_votes is zero
};

struct LoyaltyTable {
    std::vector<LoyaltyRow> rows; // sorted by total desc, party asc
};

// Per-party share of members' votes matching their own leader's
// recommendation. Votes in sessions where the leader was silent count in
// neither numerator nor denominator. An empty allowlist means no filter;
// top_k <= 0 means no truncation. Parallelized over votes when OpenMP is
// enabled.
LoyaltyTable loyalty_rates(std::span<const VoteRecord> votes,
                           std::span<const Recommendation> party_recs,
                           const std::set<std::string>& active_parties,
                           int top_k = 15);

// Single-threaded reference used by the tests and the benchmark.
LoyaltyTable loyalty_rates_serial(std::span<const VoteRecord> votes,
                                  std::span<const Recommendation> party_recs,
                                  const std::set<std::string>& active_parties,
                                  int top_k = 15);

// Map session -> government recommendation.
std::map<std::string, VoteValue> gov_recommendations(std::span<const Recommendation> recs);

} // namespace partynet

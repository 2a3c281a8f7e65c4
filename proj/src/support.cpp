#include "partynet/support.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace partynet {

namespace {

// Shared per-vote logic: is the vote in the window, and does it match the
// government recommendation of its session?
struct RollCallCounter {
    const std::map<std::string, VoteValue>& gov_recs;
    const Window& window;

    void count(const VoteRecord& v, std::int64_t& total, std::int64_t& matched) const {
        if (!window.contains_session(v.session_id))
            return;
        auto it = gov_recs.find(v.session_id);
        if (it == gov_recs.end())
            throw std::invalid_argument("session " + v.session_id +
                                        " has no government recommendation");
        ++total;
        if (v.vote == it->second)
            ++matched;
    }
};

} // namespace

std::optional<double>
roll_call_support_serial(std::span<const VoteRecord> votes,
                         const std::map<std::string, VoteValue>& gov_recs,
                         const Window& window) {
    RollCallCounter counter{gov_recs, window};
    std::int64_t total = 0, matched = 0;
    for (const auto& v : votes)
        counter.count(v, total, matched);
    if (total == 0)
        return std::nullopt;
    return double(matched) / double(total);
}

std::optional<double> roll_call_support(std::span<const VoteRecord> votes,
                                        const std::map<std::string, VoteValue>& gov_recs,
                                        const Window& window) {
#ifdef _OPENMP
    if (votes.size() >= 4096) {
        RollCallCounter counter{gov_recs, window};
        std::int64_t total = 0, matched = 0;
        bool missing_rec = false;
#pragma omp parallel for schedule(static) reduction(+ : total, matched)                 \
    reduction(|| : missing_rec)
        for (std::int64_t i = 0; i < std::int64_t(votes.size()); ++i) {
            try {
                counter.count(votes[size_t(i)], total, matched);
            } catch (const std::invalid_argument&) {
                missing_rec = true;
            }
        }
        if (missing_rec)
            throw std::invalid_argument("window " + window.label +
                                        " contains a session without a government "
                                        "recommendation");
        if (total == 0)
            return std::nullopt;
        return double(matched) / double(total);
    }
#endif
    return roll_call_support_serial(votes, gov_recs, window);
}

SupportSeries aggregate_by_presidency(std::string method,
                                      std::span<const Window> windows,
                                      std::span<const double> window_values,
                                      std::span<const Presidency> presidencies) {
    if (windows.size() != window_values.size())
        throw std::invalid_argument("one value per window required");
    SupportSeries series;
    series.method = std::move(method);
    std::map<std::string, std::pair<double, std::int64_t>> sums; // presidency -> (sum, n)
    for (size_t i = 0; i < windows.size(); ++i) {
        series.per_window.emplace_back(windows[i].label, window_values[i]);
        if (windows[i].presidency) {
            auto& [sum, count] = sums[*windows[i].presidency];
            sum += window_values[i];
            ++count;
        }
    }
    for (const auto& pres : presidencies) {
        auto it = sums.find(pres.name);
        if (it == sums.end())
            series.per_presidency.emplace_back(pres.name, std::nullopt);
        else
            series.per_presidency.emplace_back(
                pres.name, it->second.first / double(it->second.second));
    }
    return series;
}

namespace {

struct LoyaltyAccumulator {
    // party code -> dense index, plus per-session leader positions keyed
    // by party index for fast lookup in the hot loop.
    std::vector<std::string> parties;
    std::unordered_map<std::string, int> party_index;
    std::unordered_map<std::string, std::vector<std::pair<int, VoteValue>>> session_recs;

    LoyaltyAccumulator(std::span<const VoteRecord> votes,
                       std::span<const Recommendation> recs) {
        auto intern = [&](const std::string& code) {
            auto [it, inserted] = party_index.emplace(code, int(parties.size()));
            if (inserted)
                parties.push_back(code);
            return it->second;
        };
        for (const auto& rec : recs) {
            if (rec.actor == kGovActor)
                throw std::invalid_argument(
                    "loyalty_rates expects party recommendations only");
            session_recs[rec.session_id].emplace_back(intern(rec.actor), rec.vote);
        }
        for (const auto& v : votes)
            intern(v.party);
    }

    // Returns party index and loyalty flag, or -1 when the vote does not
    // count (no leader recommendation for that session and party).
    std::pair<int, bool> classify(const VoteRecord& v) const {
        auto pit = party_index.find(v.party);
        if (pit == party_index.end())
            return {-1, false};
        auto sit = session_recs.find(v.session_id);
        if (sit == session_recs.end())
            return {-1, false};
        for (const auto& [party, vote] : sit->second) {
            if (party == pit->second)
                return {pit->second, v.vote == vote};
        }
        return {-1, false};
    }
};

LoyaltyTable finish_table(const LoyaltyAccumulator& acc,
                          const std::vector<std::int64_t>& total,
                          const std::vector<std::int64_t>& loyal,
                          const std::set<std::string>& active_parties, int top_k) {
    LoyaltyTable table;
    for (size_t p = 0; p < acc.parties.size(); ++p) {
        if (!active_parties.empty() && !active_parties.count(acc.parties[p]))
            continue;
        LoyaltyRow row;
        row.party = acc.parties[p];
        row.total_votes = total[p];
        row.loyal_votes = loyal[p];
        if (row.total_votes > 0)
            row.rate = double(row.loyal_votes) / double(row.total_votes);
        table.rows.push_back(std::move(row));
    }
    std::sort(table.rows.begin(), table.rows.end(),
              [](const LoyaltyRow& a, const LoyaltyRow& b) {
                  if (a.total_votes != b.total_votes)
                      return a.total_votes > b.total_votes;
                  return a.party < b.party;
              });
    if (top_k > 0 && int(table.rows.size()) > top_k)
        table.rows.resize(size_t(top_k));
    return table;
}

} // namespace

LoyaltyTable loyalty_rates_serial(std::span<const VoteRecord> votes,
                                  std::span<const Recommendation> party_recs,
                                  const std::set<std::string>& active_parties,
                                  int top_k) {
    LoyaltyAccumulator acc(votes, party_recs);
    std::vector<std::int64_t> total(acc.parties.size(), 0), loyal(acc.parties.size(), 0);
    for (const auto& v : votes) {
        auto [party, is_loyal] = acc.classify(v);
        if (party < 0)
            continue;
        ++total[size_t(party)];
        if (is_loyal)
            ++loyal[size_t(party)];
    }
    return finish_table(acc, total, loyal, active_parties, top_k);
}

LoyaltyTable loyalty_rates(std::span<const VoteRecord> votes,
                           std::span<const Recommendation> party_recs,
                           const std::set<std::string>& active_parties, int top_k) {
#ifdef _OPENMP
    if (votes.size() >= 4096) {
        LoyaltyAccumulator acc(votes, party_recs);
        const size_t n_parties = acc.parties.size();
        const int threads = omp_get_max_threads();
        std::vector<std::vector<std::int64_t>> totals(size_t(threads)),
            loyals(size_t(threads));

#pragma omp parallel
        {
            const int t = omp_get_thread_num();
            totals[size_t(t)].assign(n_parties, 0);
            loyals[size_t(t)].assign(n_parties, 0);
#pragma omp for schedule(static)
            for (std::int64_t i = 0; i < std::int64_t(votes.size()); ++i) {
                auto [party, is_loyal] = acc.classify(votes[size_t(i)]);
                if (party < 0)
                    continue;
                ++totals[size_t(t)][size_t(party)];
                if (is_loyal)
                    ++loyals[size_t(t)][size_t(party)];
            }
        }
        std::vector<std::int64_t> total(n_parties, 0), loyal(n_parties, 0);
        for (int t = 0; t < threads; ++t) {
            if (totals[size_t(t)].empty())
                continue;
            for (size_t p = 0; p < n_parties; ++p) {
                total[p] += totals[size_t(t)][p];
                loyal[p] += loyals[size_t(t)][p];
            }
        }
        return finish_table(acc, total, loyal, active_parties, top_k);
    }
#endif
    return loyalty_rates_serial(votes, party_recs, active_parties, top_k);
}

std::map<std::string, VoteValue> gov_recommendations(std::span<const Recommendation> recs) {
    std::map<std::string, VoteValue> out;
    for (const auto& rec : recs) {
        if (rec.actor == kGovActor)
            out.emplace(rec.session_id, rec.vote);
    }
    return out;
}

} // namespace partynet

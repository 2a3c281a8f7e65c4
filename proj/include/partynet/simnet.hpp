#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "partynet/types.hpp"

namespace partynet {

// Ordered set of actor codes for one window: every party that issued at
// least one recommendation in the window, plus the government node.
class ActorIndex {
  public:
    ActorIndex() = default;
    // Sorts, dedups and guarantees the government actor is present.
    explicit ActorIndex(std::vector<std::string> codes);

    int size() const { return int(codes_.size()); }
    const std::vector<std::string>& codes() const { return codes_; }
    const std::string& code(int idx) const { return codes_[size_t(idx)]; }
    int gov() const { return gov_; }

    // Index of `code`, or -1 when absent.
    int find(const std::string& code) const;
    // Index of `code`; throws std::out_of_range when absent.
    int at(const std::string& code) const;

    bool operator==(const ActorIndex&) const = default;

  private:
    std::vector<std::string> codes_;
    int gov_ = -1;
};

// One session's pairwise agreement values: +1 when both actors
// recommended the same vote, -1 when they recommended different ones.
// Pairs with a silent actor are simply absent.
struct PairAgreement {
    int a = 0; // a < b, indices into the ActorIndex
    int b = 0;
    int value = 0; // +1 or -1
    bool operator==(const PairAgreement&) const = default;
};

struct SessionAgreement {
    std::string session_id;
    std::vector<PairAgreement> pairs; // sorted by (a, b)
};

SessionAgreement session_agreement(const std::string& session_id,
                                   const std::map<std::string, VoteValue>& recs,
                                   const ActorIndex& index);

// Signed agreement counts accumulated over one window. `agreement` is the
// session-summed matrix, `co_recommended` counts the sessions in which
// both actors of a pair recommended; a pair is defined iff that count is
// positive. Both matrices are symmetric with zero diagonal.
struct AgreementWindow {
    ActorIndex index;
    Window window;
    std::int64_t n_sessions = 0;
    std::vector<std::int64_t> agreement;     // n*n row-major
    std::vector<std::int64_t> co_recommended; // n*n row-major

    std::int64_t w(int i, int j) const {
        return agreement[size_t(i) * size_t(index.size()) + size_t(j)];
    }
    std::int64_t co(int i, int j) const {
        return co_recommended[size_t(i) * size_t(index.size()) + size_t(j)];
    }
    bool defined(int i, int j) const { return co(i, j) > 0; }
};

// Sums per-session agreements into a window matrix. Every session must
// belong to the window's session set. Parallelized over sessions when
// OpenMP is enabled; the result is identical to accumulate_serial for any
// thread count.
AgreementWindow accumulate(const ActorIndex& index,
                           std::span<const SessionAgreement> sessions,
                           Window window);

// Single-threaded reference used by the tests and the benchmark.
AgreementWindow accumulate_serial(const ActorIndex& index,
                                  std::span<const SessionAgreement> sessions,
                                  Window window);

// Unweighted undirected graph of actors. Edges hold index pairs (i, j)
// with i < j, sorted.
struct PartyGraph {
    ActorIndex index;
    std::string window_label;
    std::vector<std::pair<int, int>> edges;

    int node_count() const { return index.size(); }
    bool has_edge(int i, int j) const;
    std::vector<std::vector<int>> adjacency() const;
};

// The actors j maximizing w(row, j) among the row's defined pairs,
// ascending. Empty when the row has no defined pair.
std::vector<int> row_max_selection(const AgreementWindow& aw, int row);

// Row-max edge rule: each actor selects all of its most-agreeing peers,
// and the undirected union of the selections is the edge set. Actors with
// no defined pair stay isolated. Throws when fewer than two actors exist.
PartyGraph build_network(const AgreementWindow& aw);

// Convenience wiring used by the pipeline: group recommendations by
// session (window membership decides which recommendations count) and
// build the window's actor index per the eligibility rule.
ActorIndex window_actor_index(std::span<const Recommendation> recs, const Window& window);
std::vector<SessionAgreement> window_session_agreements(
    std::span<const Recommendation> recs, const ActorIndex& index, const Window& window);

} // namespace partynet

#include "partynet/simnet.hpp"

#include <algorithm>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace partynet {

ActorIndex::ActorIndex(std::vector<std::string> codes) : codes_(std::move(codes)) {
    codes_.push_back(std::string(kGovActor));
    std::sort(codes_.begin(), codes_.end());
    codes_.erase(std::unique(codes_.begin(), codes_.end()), codes_.end());
    gov_ = find(std::string(kGovActor));
}

int ActorIndex::find(const std::string& code) const {
    auto it = std::lower_bound(codes_.begin(), codes_.end(), code);
    if (it == codes_.end() || *it != code)
        return -1;
    return int(it - codes_.begin());
}

int ActorIndex::at(const std::string& code) const {
    int idx = find(code);
    if (idx < 0)
        throw std::out_of_range("actor '" + code + "' not in index");
    return idx;
}

SessionAgreement session_agreement(const std::string& session_id,
                                   const std::map<std::string, VoteValue>& recs,
                                   const ActorIndex& index) {
    std::vector<std::pair<int, VoteValue>> voting;
    voting.reserve(recs.size());
    for (const auto& [actor, vote] : recs)
        voting.emplace_back(index.at(actor), vote);
    std::sort(voting.begin(), voting.end());

    SessionAgreement out;
    out.session_id = session_id;
    out.pairs.reserve(voting.size() * (voting.size() - 1) / 2);
    for (size_t x = 0; x < voting.size(); ++x) {
        for (size_t y = x + 1; y < voting.size(); ++y) {
            out.pairs.push_back({voting[x].first, voting[y].first,
                                 voting[x].second == voting[y].second ? 1 : -1});
        }
    }
    return out;
}

namespace {

void check_sessions_in_window(std::span<const SessionAgreement> sessions,
                              const Window& window) {
    for (const auto& s : sessions) {
        if (!window.contains_session(s.session_id))
            throw std::invalid_argument("session " + s.session_id +
                                        " is not part of window " + window.label);
    }
}

void add_session(const SessionAgreement& s, int n, std::int64_t* w, std::int64_t* c) {
    for (const auto& p : s.pairs) {
        const size_t ij = size_t(p.a) * size_t(n) + size_t(p.b);
        const size_t ji = size_t(p.b) * size_t(n) + size_t(p.a);
        w[ij] += p.value;
        w[ji] += p.value;
        c[ij] += 1;
        c[ji] += 1;
    }
}

} // namespace

AgreementWindow accumulate_serial(const ActorIndex& index,
                                  std::span<const SessionAgreement> sessions,
                                  Window window) {
    check_sessions_in_window(sessions, window);
    AgreementWindow aw;
    aw.index = index;
    aw.window = std::move(window);
    aw.n_sessions = std::int64_t(sessions.size());
    const int n = index.size();
    aw.agreement.assign(size_t(n) * size_t(n), 0);
    aw.co_recommended.assign(size_t(n) * size_t(n), 0);
    for (const auto& s : sessions)
        add_session(s, n, aw.agreement.data(), aw.co_recommended.data());
    return aw;
}

AgreementWindow accumulate(const ActorIndex& index,
                           std::span<const SessionAgreement> sessions,
                           Window window) {
#ifdef _OPENMP
    if (sessions.size() >= 64) {
        check_sessions_in_window(sessions, window);
        AgreementWindow aw;
        aw.index = index;
        aw.window = std::move(window);
        aw.n_sessions = std::int64_t(sessions.size());
        const int n = index.size();
        const size_t cells = size_t(n) * size_t(n);
        aw.agreement.assign(cells, 0);
        aw.co_recommended.assign(cells, 0);

        const int threads = omp_get_max_threads();
        std::vector<std::vector<std::int64_t>> w_buf(size_t(threads)),
            c_buf(size_t(threads));

#pragma omp parallel
        {
            const int t = omp_get_thread_num();
            w_buf[size_t(t)].assign(cells, 0);
            c_buf[size_t(t)].assign(cells, 0);
#pragma omp for schedule(static)
            for (std::int64_t i = 0; i < std::int64_t(sessions.size()); ++i)
                add_session(sessions[size_t(i)], n, w_buf[size_t(t)].data(),
                            c_buf[size_t(t)].data());
        }
        // Integer sums commute, so the merged result does not depend on
        // the schedule.
        for (int t = 0; t < threads; ++t) {
            if (w_buf[size_t(t)].empty())
                continue;
            for (size_t k = 0; k < cells; ++k) {
                aw.agreement[k] += w_buf[size_t(t)][k];
                aw.co_recommended[k] += c_buf[size_t(t)][k];
            }
        }
        return aw;
    }
#endif
    return accumulate_serial(index, sessions, std::move(window));
}

bool PartyGraph::has_edge(int i, int j) const {
    if (i > j)
        std::swap(i, j);
    return std::binary_search(edges.begin(), edges.end(), std::make_pair(i, j));
}

std::vector<std::vector<int>> PartyGraph::adjacency() const {
    std::vector<std::vector<int>> adj(size_t(node_count()));
    for (const auto& [i, j] : edges) {
        adj[size_t(i)].push_back(j);
        adj[size_t(j)].push_back(i);
    }
    return adj;
}

std::vector<int> row_max_selection(const AgreementWindow& aw, int row) {
    const int n = aw.index.size();
    bool any = false;
    std::int64_t best = 0;
    for (int j = 0; j < n; ++j) {
        if (j == row || !aw.defined(row, j))
            continue;
        if (!any || aw.w(row, j) > best) {
            best = aw.w(row, j);
            any = true;
        }
    }
    std::vector<int> selected;
    if (!any)
        return selected;
    for (int j = 0; j < n; ++j) {
        if (j != row && aw.defined(row, j) && aw.w(row, j) == best)
            selected.push_back(j);
    }
    return selected;
}

PartyGraph build_network(const AgreementWindow& aw) {
    const int n = aw.index.size();
    if (n < 2)
        throw std::invalid_argument("build_network requires at least two actors");
    PartyGraph g;
    g.index = aw.index;
    g.window_label = aw.window.label;
    for (int i = 0; i < n; ++i) {
        for (int j : row_max_selection(aw, i)) {
            auto e = std::minmax(i, j);
            g.edges.emplace_back(e.first, e.second);
        }
    }
    std::sort(g.edges.begin(), g.edges.end());
    g.edges.erase(std::unique(g.edges.begin(), g.edges.end()), g.edges.end());
    return g;
}

ActorIndex window_actor_index(std::span<const Recommendation> recs, const Window& window) {
    std::vector<std::string> codes;
    for (const auto& rec : recs) {
        if (window.contains_session(rec.session_id))
            codes.push_back(rec.actor);
    }
    return ActorIndex(std::move(codes));
}

std::vector<SessionAgreement> window_session_agreements(
    std::span<const Recommendation> recs, const ActorIndex& index, const Window& window) {
    std::map<std::string, std::map<std::string, VoteValue>> per_session;
    for (const auto& rec : recs) {
        if (window.contains_session(rec.session_id))
            per_session[rec.session_id][rec.actor] = rec.vote;
    }
    std::vector<SessionAgreement> out;
    out.reserve(per_session.size());
    for (const auto& [session, votes] : per_session)
        out.push_back(session_agreement(session, votes, index));
    return out;
}

} // namespace partynet

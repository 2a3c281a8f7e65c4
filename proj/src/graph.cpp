#include "partynet/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>

namespace partynet {

MeasureVector closeness(const PartyGraph& g) {
    const int n = g.node_count();
    if (n < 2)
        throw std::invalid_argument("closeness requires at least two nodes");
    const auto adj = g.adjacency();
    MeasureVector mv;
    mv.measure = "closeness";
    mv.scores.assign(size_t(n), 0.0);

    std::vector<int> dist(size_t(n));
    std::deque<int> queue;
    for (int src = 0; src < n; ++src) {
        std::fill(dist.begin(), dist.end(), -1);
        dist[size_t(src)] = 0;
        queue.clear();
        queue.push_back(src);
        std::int64_t sum = 0, reached = 0;
        while (!queue.empty()) {
            int u = queue.front();
            queue.pop_front();
            for (int v : adj[size_t(u)]) {
                if (dist[size_t(v)] < 0) {
                    dist[size_t(v)] = dist[size_t(u)] + 1;
                    sum += dist[size_t(v)];
                    ++reached;
                    queue.push_back(v);
                }
            }
        }
        if (reached > 0)
            mv.scores[size_t(src)] =
                (double(reached) / double(sum)) * (double(reached) / double(n - 1));
    }
    return mv;
}

MeasureVector pagerank(const PartyGraph& g, const MeasureParams& params) {
    const int n = g.node_count();
    if (n < 1)
        throw std::invalid_argument("pagerank requires a nonempty graph");
    if (params.damping <= 0.0 || params.damping >= 1.0)
        throw std::invalid_argument("pagerank damping must lie in (0, 1)");
    const auto adj = g.adjacency();
    const double d = params.damping;

    std::vector<double> x(size_t(n), 1.0 / n), next(size_t(n));
    MeasureVector mv;
    mv.measure = "pagerank";
    mv.params = params;
    for (int it = 1; it <= params.max_iterations; ++it) {
        double dangling = 0.0;
        for (int i = 0; i < n; ++i) {
            if (adj[size_t(i)].empty())
                dangling += x[size_t(i)];
        }
        const double base = (1.0 - d) / n + d * dangling / n;
        for (int i = 0; i < n; ++i) {
            double in = 0.0;
            for (int j : adj[size_t(i)])
                in += x[size_t(j)] / double(adj[size_t(j)].size());
            next[size_t(i)] = base + d * in;
        }
        double delta = 0.0;
        for (int i = 0; i < n; ++i)
            delta = std::max(delta, std::abs(next[size_t(i)] - x[size_t(i)]));
        x.swap(next);
        if (delta < params.tolerance) {
            mv.iterations = it;
            mv.scores = std::move(x);
            return mv;
        }
    }
    throw ConvergenceError("pagerank did not converge within " +
                               std::to_string(params.max_iterations) + " iterations",
                           std::move(x));
}

MeasureVector hits(const PartyGraph& g, const MeasureParams& params) {
    const int n = g.node_count();
    if (g.edges.empty())
        throw std::invalid_argument("hits requires at least one edge");
    const auto adj = g.adjacency();

    // Power iteration on A + I. The shift leaves eigenvectors untouched
    // and makes the principal eigenvalue strictly dominant in magnitude,
    // which plain alternating hub/authority updates lack on bipartite
    // graphs.
    std::vector<double> x(size_t(n), 1.0 / std::sqrt(double(n))), next(size_t(n));
    MeasureVector mv;
    mv.measure = "hub";
    mv.params = params;
    for (int it = 1; it <= params.max_iterations; ++it) {
        for (int i = 0; i < n; ++i) {
            double acc = x[size_t(i)];
            for (int j : adj[size_t(i)])
                acc += x[size_t(j)];
            next[size_t(i)] = acc;
        }
        double norm = std::sqrt(
            std::inner_product(next.begin(), next.end(), next.begin(), 0.0));
        for (double& v : next)
            v /= norm;
        double delta = 0.0;
        for (int i = 0; i < n; ++i)
            delta = std::max(delta, std::abs(next[size_t(i)] - x[size_t(i)]));
        x.swap(next);
        if (delta < params.tolerance) {
            mv.iterations = it;
            mv.scores = std::move(x);
            return mv;
        }
    }
    throw ConvergenceError("hits did not converge within " +
                               std::to_string(params.max_iterations) + " iterations",
                           std::move(x));
}

double density(const PartyGraph& g) {
    const std::int64_t n = g.node_count();
    if (n < 2)
        throw std::invalid_argument("density requires at least two nodes");
    return 2.0 * double(g.edges.size()) / (double(n) * double(n - 1));
}

int Partition::community_count() const {
    int max_id = -1;
    for (int c : community)
        max_id = std::max(max_id, c);
    return max_id + 1;
}

double modularity(const PartyGraph& g, const Partition& p) {
    const int n = g.node_count();
    if (int(p.community.size()) != n)
        throw std::invalid_argument("partition does not cover every node");
    for (int c : p.community) {
        if (c < 0)
            throw std::invalid_argument("partition does not cover every node");
    }
    const std::int64_t m = std::int64_t(g.edges.size());
    if (m == 0)
        return 0.0;

    const int k = p.community_count();
    std::vector<std::int64_t> intra(size_t(k), 0), degree(size_t(k), 0);
    for (const auto& [i, j] : g.edges) {
        degree[size_t(p.community[size_t(i)])] += 1;
        degree[size_t(p.community[size_t(j)])] += 1;
        if (p.community[size_t(i)] == p.community[size_t(j)])
            intra[size_t(p.community[size_t(i)])] += 1;
    }
    double q = 0.0;
    for (int c = 0; c < k; ++c) {
        const double a = double(degree[size_t(c)]) / double(2 * m);
        q += double(intra[size_t(c)]) / double(m) - a * a;
    }
    return q;
}

namespace {

// Contiguous community ids ordered by smallest member node.
Partition relabel(const std::vector<int>& owner, int n, double q) {
    Partition p;
    p.community.assign(size_t(n), -1);
    p.q = q;
    std::vector<int> id_map(size_t(n), -1);
    int next_id = 0;
    for (int v = 0; v < n; ++v) {
        int c = owner[size_t(v)];
        if (id_map[size_t(c)] < 0)
            id_map[size_t(c)] = next_id++;
        p.community[size_t(v)] = id_map[size_t(c)];
    }
    return p;
}

} // namespace

Partition fastgreedy(const PartyGraph& g, FastgreedyTrace* trace) {
    const int n = g.node_count();
    if (n < 1)
        throw std::invalid_argument("fastgreedy requires a nonempty graph");
    const std::int64_t m = std::int64_t(g.edges.size());

    // owner[v] = current community of node v; communities start as the
    // node indices and a merge keeps the smaller id.
    std::vector<int> owner(size_t(n));
    std::iota(owner.begin(), owner.end(), 0);
    if (m == 0)
        return relabel(owner, n, 0.0);

    std::vector<bool> active(size_t(n), true);
    std::vector<std::int64_t> degree(size_t(n), 0), intra(size_t(n), 0);
    std::vector<std::int64_t> between(size_t(n) * size_t(n), 0);
    for (const auto& [i, j] : g.edges) {
        degree[size_t(i)] += 1;
        degree[size_t(j)] += 1;
        between[size_t(i) * size_t(n) + size_t(j)] += 1;
        between[size_t(j) * size_t(n) + size_t(i)] += 1;
    }

    while (true) {
        // Gain of merging (a, b): B/m - Da*Db/(2m^2), compared through
        // the integer key 2m*B - Da*Db so ties are exact.
        bool found = false;
        std::int64_t best_key = 0;
        int best_a = -1, best_b = -1;
        for (int a = 0; a < n; ++a) {
            if (!active[size_t(a)])
                continue;
            for (int b = a + 1; b < n; ++b) {
                if (!active[size_t(b)] || between[size_t(a) * size_t(n) + size_t(b)] == 0)
                    continue;
                const std::int64_t key =
                    2 * m * between[size_t(a) * size_t(n) + size_t(b)] -
                    degree[size_t(a)] * degree[size_t(b)];
                if (!found || key > best_key) {
                    found = true;
                    best_key = key;
                    best_a = a;
                    best_b = b;
                }
            }
        }
        if (!found || best_key <= 0)
            break;

        // Fold best_b into best_a.
        intra[size_t(best_a)] += intra[size_t(best_b)] +
                                 between[size_t(best_a) * size_t(n) + size_t(best_b)];
        degree[size_t(best_a)] += degree[size_t(best_b)];
        for (int c = 0; c < n; ++c) {
            if (c == best_a || c == best_b || !active[size_t(c)])
                continue;
            between[size_t(best_a) * size_t(n) + size_t(c)] +=
                between[size_t(best_b) * size_t(n) + size_t(c)];
            between[size_t(c) * size_t(n) + size_t(best_a)] =
                between[size_t(best_a) * size_t(n) + size_t(c)];
        }
        active[size_t(best_b)] = false;
        for (int v = 0; v < n; ++v) {
            if (owner[size_t(v)] == best_b)
                owner[size_t(v)] = best_a;
        }
        if (trace) {
            trace->merges.emplace_back(best_a, best_b);
            double q = 0.0;
            for (int c = 0; c < n; ++c) {
                if (!active[size_t(c)])
                    continue;
                const double a = double(degree[size_t(c)]) / double(2 * m);
                q += double(intra[size_t(c)]) / double(m) - a * a;
            }
            trace->q_after.push_back(q);
        }
    }

    double q = 0.0;
    for (int c = 0; c < n; ++c) {
        if (!active[size_t(c)])
            continue;
        const double a = double(degree[size_t(c)]) / double(2 * m);
        q += double(intra[size_t(c)]) / double(m) - a * a;
    }
    return relabel(owner, n, q);
}

} // namespace partynet

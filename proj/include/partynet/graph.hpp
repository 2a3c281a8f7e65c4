#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "partynet/simnet.hpp"

namespace partynet {

struct MeasureParams {
    double damping = 0.85;
    double tolerance = 1e-10;
    int max_iterations = 200;
};

// Per-node scores for one measure, aligned with the graph's ActorIndex.
struct MeasureVector {
    std::string measure;
    std::vector<double> scores;
    MeasureParams params;
    int iterations = 0;
};

// Thrown when an iterative measure fails to reach its tolerance; carries
// the last iterate so callers can inspect how far it got.
class ConvergenceError : public std::runtime_error {
  public:
    ConvergenceError(const std::string& what, std::vector<double> last)
        : std::runtime_error(what), last_iterate(std::move(last)) {}
    std::vector<double> last_iterate;
};

// Closeness with the reachable-set scaling: for node i reaching r others
// with distance sum S, the score is (r/S) * (r/(N-1)). Isolated nodes
// score 0. Comparable across disconnected graphs.
MeasureVector closeness(const PartyGraph& g);

// PageRank on the undirected graph (each edge acts as two arcs), uniform
// teleport, dangling mass spread uniformly. Scores sum to one.
MeasureVector pagerank(const PartyGraph& g, const MeasureParams& params = {});

// Hub scores: the principal eigenvector of the adjacency matrix, unit
// Euclidean norm, nonnegative. Hub and authority coincide on the
// undirected graphs built here. Computed by shifted power iteration so
// bipartite graphs converge too. Requires at least one edge.
MeasureVector hits(const PartyGraph& g, const MeasureParams& params = {});

// 2|E| / (N (N-1)). Requires at least two nodes.
double density(const PartyGraph& g);

// Community ids are contiguous from zero, numbered by each community's
// smallest member index.
struct Partition {
    std::vector<int> community; // node -> community id
    double q = 0.0;

    int community_count() const;
};

// Newman modularity of `p` on `g`: sum over communities of
// (intra-edge fraction - squared degree fraction). Zero edges give 0.
double modularity(const PartyGraph& g, const Partition& p);

// Merge trace for the greedy agglomeration, for tests and diagnostics.
// Community ids during agglomeration are the original node indices; a
// merge (a, b) with a < b folds b into a.
struct FastgreedyTrace {
    std::vector<std::pair<int, int>> merges;
    std::vector<double> q_after;
};

// Greedy modularity agglomeration: start from singletons and repeatedly
// merge the connected community pair with the largest modularity gain,
// ties broken by the smallest (a, b) pair, until no merge gains. Gain
// comparison is done in exact integer arithmetic so tie-breaking is
// deterministic. Isolated nodes stay singleton.
Partition fastgreedy(const PartyGraph& g, FastgreedyTrace* trace = nullptr);

} // namespace partynet

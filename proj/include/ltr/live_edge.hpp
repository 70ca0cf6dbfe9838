#pragma once

#include <functional>
#include <span>
#include <vector>

#include "ltr/diffusion.hpp"
#include "ltr/election.hpp"
#include "ltr/graph.hpp"
#include "ltr/rng.hpp"

namespace ltr {

// One sampled live-edge graph: every node keeps at most one incoming
// edge, edge (u,v) with probability b_uv, none with 1 - sum b.
struct LiveEdgeGraph {
    std::vector<int> parent;  // parent[v] = chosen in-neighbor, -1 for none

    // Forward adjacency over the chosen edges, built on demand.
    std::vector<std::vector<int>> children(int node_count) const;
};

// Final-position distribution for a reachable node with the target at
// position r: P(r,1) = a/(r-1), P(r,l) = a/(r-l) - a/(r-l+1) for
// l = 2..r-1, P(r,r) = 1 - a. r = 1 is the point mass at 1.
struct ShiftDistribution {
    int r;
    std::vector<double> probs;  // probs[l-1] for final position l in 1..r
};

// Mirror for destructive shifts: final positions l in r..m with
// probs[l-r]; P(r,r) = 1 - a, P(r,m) = a/(m-r).
struct DownShiftDistribution {
    int r;
    int m;
    std::vector<double> probs;
};

ShiftDistribution shift_distribution(int r, double alpha_r);
DownShiftDistribution shift_distribution_down(int r, double alpha_r, int m);

LiveEdgeGraph sample_live_edge(const InfluenceGraph& graph, Rng& rng);

// Exact sampling probability of g: product over chosen edges of b_uv and
// over no-choice nodes of (1 - sum of incoming weights).
double live_edge_probability(const InfluenceGraph& graph, const LiveEdgeGraph& g);

// Forward closure of the seeds along chosen edges, as a node mask.
std::vector<char> reachable(const LiveEdgeGraph& g, int node_count, std::span<const int> seeds);

// Weight of the reached in-neighborhood of v: sum of b_uv over reached
// u in N_v. This is the exact dice-roll probability of v in the
// live-edge reformulation -- using the 0/1 reachability indicator
// instead breaks the LTR equivalence on graphs with directed cycles
// through v and for seed nodes.
double roll_weight(const InfluenceGraph& graph, const std::vector<char>& reached, int v);

// Live-edge dice-roll process (constructive): sample a live-edge graph,
// then every node with a shiftable position rolls with probability
// roll_weight and draws its final position from shift_distribution.
DiffusionOutcome run_ldr(const ControlInstance& instance, std::span<const int> seeds, Rng& rng);

// Calls fn for every member of the live-edge family with its exact
// probability. Throws if prod_v (|N_v| + 1) exceeds max_graphs.
void enumerate_live_edges(const InfluenceGraph& graph,
                          const std::function<void(const LiveEdgeGraph&, double)>& fn,
                          long long max_graphs = 1000000);

long long live_edge_family_size(const InfluenceGraph& graph);

// Exact expected target score F(A0) by full enumeration. Handles both
// modes (destructive uses the down-shift distribution directly, without
// going through the constructive reduction).
double exact_expected_score(const ControlInstance& instance, std::span<const int> seeds);

// Expected target score contributed on one fixed live-edge graph.
double score_on_live_edge(const ControlInstance& instance, std::span<const int> seeds,
                          const LiveEdgeGraph& g);

}  // namespace ltr

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace ltr {

struct Edge {
    int src;
    int dst;
    double weight;
};

enum class WeightMode {
    AsGiven,            // weights taken from the input file
    UniformByInDegree,  // b_uv = 1 / |N_v|
    RandomNormalized,   // raw uniform (0,1], divided per node by max(1, sum)
};

// Immutable directed influence graph. Node ids are dense 0..n-1 in
// first-appearance order of the input labels; per-node in/out adjacency
// is indexed for the diffusion hot loops.
class InfluenceGraph {
public:
    InfluenceGraph() = default;
    InfluenceGraph(int node_count, std::vector<Edge> edges,
                   std::vector<std::string> labels = {});

    int node_count() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::vector<Edge>& edges() const { return edges_; }

    // (source id, weight) pairs for each incoming edge of v.
    const std::vector<std::pair<int, double>>& in_neighbors(int v) const {
        return in_[v];
    }
    const std::vector<std::pair<int, double>>& out_neighbors(int v) const {
        return out_[v];
    }
    double in_weight_sum(int v) const { return in_sum_[v]; }
    int out_degree(int v) const { return static_cast<int>(out_[v].size()); }

    const std::string& label(int v) const { return labels_[v]; }
    // Returns -1 if the label is unknown.
    int node_by_label(const std::string& label) const;

private:
    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<std::pair<int, double>>> in_;
    std::vector<std::vector<std::pair<int, double>>> out_;
    std::vector<double> in_sum_;
    std::vector<std::string> labels_;
};

struct Violation {
    std::string rule;     // short identifier of the broken invariant
    std::string message;  // human readable, names the node/edge involved
};

using ValidationReport = std::vector<Violation>;

// Empty report iff all InfluenceGraph invariants hold (weights in [0,1],
// per-node incoming sum <= 1 + 1e-12, no self-loops, no duplicate edges).
ValidationReport validate(const InfluenceGraph& graph);

// Parses "u v" / "u v w" lines ('#' comments ignored). With
// directed=false every line yields both orientations. Throws
// std::runtime_error naming the offending line on malformed input,
// duplicate edges, or (under AsGiven) LTM violations.
InfluenceGraph load_edge_list(std::istream& in, bool directed,
                              WeightMode weight_mode, uint64_t seed);

}  // namespace ltr

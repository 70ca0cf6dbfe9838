#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ltr/diffusion.hpp"
#include "ltr/live_edge.hpp"

namespace ltr {

// Monte-Carlo estimation settings. With common_random_numbers the same
// fixed set of live-edge samples backs every candidate evaluation of a
// greedy run, which keeps the estimated objective exactly monotone
// submodular and makes lazy evaluation sound.
struct Estimator {
    int samples = 256;
    uint64_t seed = 0;
    bool common_random_numbers = true;
};

struct SeedSet {
    std::vector<int> nodes;   // greedy insertion order
    std::vector<double> gains;  // estimated marginal gain per step
};

// Fixed live-edge sample set for one constructive instance. contrib[u]
// folds the whole expected-score effect of reaching node u: the sum over
// out-edges (u,v) of b_uv times v's expected score lift, so the
// per-sample score is F(empty) + sum of contrib over reached nodes.
class SampleSet {
public:
    SampleSet(const ControlInstance& instance, const Estimator& est);

    double score(std::span<const int> seeds) const;  // estimated F(A0)
    int sample_count() const { return static_cast<int>(children_.size()); }
    double base() const { return base_; }
    const std::vector<std::vector<int>>& children(int sample) const {
        return children_[sample];
    }
    const std::vector<double>& contrib() const { return contrib_; }
    int node_count() const { return n_; }

private:
    int n_;
    double base_;
    std::vector<double> contrib_;
    std::vector<std::vector<std::vector<int>>> children_;
};

// Mean over the estimator's live-edge samples of the closed-form
// per-graph score. Deterministic given est.seed; equals F(empty) exactly
// when seeds is empty.
double estimate_score(const ControlInstance& instance, std::span<const int> seeds,
                      const Estimator& est);

// Lazy greedy hill climbing over the estimated score, budget iterations,
// argmax ties broken by lowest node id, early stop on zero best gain.
// Asserts monotonicity and non-increasing selected gains as it runs.
SeedSet greedy_select(const ControlInstance& instance, const Estimator& est);

// Destructive -> constructive reduction: reversed rankings, complemented
// scoring function f'(r) = f_max - f(m-r+1), alpha re-indexed as
// alpha'(r) = alpha(m-r+1). Graph, target, and budget are unchanged.
ControlInstance destructive_transform(const ControlInstance& instance);

// Constructive instances go straight to greedy_select; destructive ones
// run greedy on the transformed instance (the seed set transfers as-is).
SeedSet solve(const ControlInstance& instance, const Estimator& est);

}  // namespace ltr

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ltr/live_edge.hpp"
#include "ltr/optimizer.hpp"

namespace ltr {

struct MovReport {
    // Closed-form live-edge estimate of E[MoV(A0)].
    double expected_mov = 0.0;
    double stderr_ = 0.0;
    int mov_samples = 0;

    // Simulation side: pov = fraction of runs where the target strictly
    // beats every opponent (ties lose); expected_scores[c] = mean tallied
    // score of candidate c over the same runs.
    double pov = 0.0;
    int pov_runs = 0;
    std::vector<double> expected_scores;
    double sim_mov_mean = 0.0;  // mean of mu(empty) - mu(A0) over runs (sign
    double sim_mov_std = 0.0;   // flipped for destructive instances)
    double reported_mov = 0.0;  // mean of -mu(A0): the experiment-table form

    long long mu_empty = 0;  // static margin before any diffusion
};

// Expected margin-of-victory change on one fixed live-edge graph, with
// every node's roll probability equal to its reached in-weight. The
// per-opponent loss/gain sums use the telescoped tail of P(r, .):
// constructive, opponent at h < r loses f(h)-f(h+1) w.p. alpha(r)/(r-h);
// destructive, opponent at h > r gains f(h-1)-f(h) w.p. alpha(r)/(h-r).
// min/max over opponents break ties by lowest candidate id.
double mov_on_live_edge(const ControlInstance& instance, std::span<const int> seeds,
                        const LiveEdgeGraph& g);

// Mean and standard error of mov_on_live_edge over est.samples live-edge
// draws (sample i seeded with derive_seed(est.seed, i)). Deterministic
// given est.seed regardless of thread count.
MovReport expected_mov(const ControlInstance& instance, std::span<const int> seeds,
                       const Estimator& est, int threads = 1);

// Fraction of runs (seeded derive_seed(master_seed, i)) where the target
// wins the shifted election outright.
double pov(const ControlInstance& instance, std::span<const int> seeds, int runs,
           uint64_t master_seed);

// Full report: expected_mov plus pov_runs simulations feeding pov,
// per-candidate expected scores, and the simulation-side MoV statistics.
MovReport evaluate(const ControlInstance& instance, std::span<const int> seeds,
                   const Estimator& est, int pov_runs, uint64_t pov_seed,
                   int threads = 1);

}  // namespace ltr

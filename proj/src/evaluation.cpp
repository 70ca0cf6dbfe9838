#include "ltr/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ltr/util.hpp"

namespace ltr {

double mov_on_live_edge(const ControlInstance& instance, std::span<const int> seeds,
                        const LiveEdgeGraph& g) {
    instance.check();
    const InfluenceGraph& graph = instance.graph;
    const PreferenceProfile& profile = instance.profile;
    const ScoringRule& rule = instance.rule;
    const int n = graph.node_count();
    const int m = profile.candidate_count();
    const int target = instance.target;
    const bool constructive = instance.mode == ControlMode::Constructive;

    std::vector<char> reached = reachable(g, n, seeds);

    // Static tallies and the target's expected score change.
    std::vector<double> statics(m, 0.0);
    std::vector<double> opp_shift(m, 0.0);  // expected loss (constructive) or
                                            // gain (destructive) per opponent
    double target_change = 0.0;
    for (int v = 0; v < n; ++v) {
        for (int c = 0; c < m; ++c) {
            statics[c] += static_cast<double>(rule.score(profile.position_of(v, c)));
        }
        int r = profile.position_of(v, target);
        bool shiftable = constructive ? r > 1 : r < m;
        if (!shiftable) continue;
        double w = roll_weight(graph, reached, v);
        if (w <= 0.0) continue;
        double alpha_r = instance.alpha.at(r);
        if (constructive) {
            ShiftDistribution d = shift_distribution(r, alpha_r);
            for (int l = 1; l <= r; ++l) {
                target_change +=
                    w * d.probs[l - 1] *
                    static_cast<double>(rule.score(l) - rule.score(r));
            }
            // An opponent at h < r drops one slot exactly when the target
            // ends at position <= h; that tail of P(r,.) telescopes.
            for (int h = 1; h < r; ++h) {
                int z = profile.candidate_at(v, h);
                opp_shift[z] += w * (alpha_r / (r - h)) *
                                static_cast<double>(rule.score(h) - rule.score(h + 1));
            }
        } else {
            DownShiftDistribution d = shift_distribution_down(r, alpha_r, m);
            for (int l = r; l <= m; ++l) {
                target_change +=
                    w * d.probs[l - r] *
                    static_cast<double>(rule.score(l) - rule.score(r));
            }
            // An opponent at h > r rises one slot when the target ends at
            // position >= h, with telescoped tail alpha(r)/(h-r).
            for (int h = r + 1; h <= m; ++h) {
                int z = profile.candidate_at(v, h);
                opp_shift[z] += w * (alpha_r / (h - r)) *
                                static_cast<double>(rule.score(h - 1) - rule.score(h));
            }
        }
    }

    double max_static = 0.0;
    bool first = true;
    for (int c = 0; c < m; ++c) {
        if (c == target) continue;
        if (first || statics[c] > max_static) {
            max_static = statics[c];
            first = false;
        }
    }

    // Strongest opponent after shifts (expected scores), lowest id on ties.
    double best_final = 0.0;
    first = true;
    for (int c = 0; c < m; ++c) {
        if (c == target) continue;
        double final_score =
            constructive ? statics[c] - opp_shift[c] : statics[c] + opp_shift[c];
        if (first || final_score > best_final) {
            best_final = final_score;
            first = false;
        }
    }

    if (constructive) {
        // mu(empty) - E[mu(A0)] = target gain + max_static - best_final.
        return target_change + max_static - best_final;
    }
    // E[mu(A0)] - mu(empty) = -target drop + best_final - max_static.
    return -target_change + best_final - max_static;
}

MovReport expected_mov(const ControlInstance& instance, std::span<const int> seeds,
                       const Estimator& est, int threads) {
    if (est.samples < 1) throw std::invalid_argument("estimator needs >= 1 sample");
    std::vector<double> values(est.samples);
    parallel_for(static_cast<size_t>(est.samples), threads, [&](size_t i) {
        Rng rng(derive_seed(est.seed, static_cast<uint64_t>(i)));
        LiveEdgeGraph g = sample_live_edge(instance.graph, rng);
        values[i] = mov_on_live_edge(instance, seeds, g);
    });
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= values.size();
    double var = 0.0;
    for (double v : values) var += (v - mean) * (v - mean);
    var = values.size() > 1 ? var / (values.size() - 1) : 0.0;

    MovReport report;
    report.expected_mov = mean;
    report.stderr_ = std::sqrt(var / values.size());
    report.mov_samples = est.samples;
    report.mu_empty = margin(instance.profile, instance.rule, instance.target);
    return report;
}

double pov(const ControlInstance& instance, std::span<const int> seeds, int runs,
           uint64_t master_seed) {
    if (runs < 1) throw std::invalid_argument("pov needs >= 1 run");
    const int m = instance.profile.candidate_count();
    int wins = 0;
    for (int i = 0; i < runs; ++i) {
        Rng rng(derive_seed(master_seed, static_cast<uint64_t>(i)));
        DiffusionOutcome out = run_ltr(instance, seeds, rng);
        long long target_score = total_score(out.shifted, instance.rule, instance.target);
        bool win = true;
        for (int c = 0; c < m && win; ++c) {
            if (c == instance.target) continue;
            if (total_score(out.shifted, instance.rule, c) >= target_score) win = false;
        }
        if (win) ++wins;
    }
    return static_cast<double>(wins) / runs;
}

MovReport evaluate(const ControlInstance& instance, std::span<const int> seeds,
                   const Estimator& est, int pov_runs, uint64_t pov_seed,
                   int threads) {
    if (pov_runs < 1) throw std::invalid_argument("evaluate needs >= 1 pov run");
    MovReport report = expected_mov(instance, seeds, est, threads);
    report.pov_runs = pov_runs;

    const int m = instance.profile.candidate_count();
    const bool constructive = instance.mode == ControlMode::Constructive;

    // One simulation per slot; every derived statistic reduces over the
    // slots sequentially, so thread count cannot change the numbers.
    std::vector<std::vector<long long>> scores(pov_runs);
    parallel_for(static_cast<size_t>(pov_runs), threads, [&](size_t i) {
        Rng rng(derive_seed(pov_seed, static_cast<uint64_t>(i)));
        DiffusionOutcome out = run_ltr(instance, seeds, rng);
        scores[i].resize(m);
        for (int c = 0; c < m; ++c) {
            scores[i][c] = total_score(out.shifted, instance.rule, c);
        }
    });

    report.expected_scores.assign(m, 0.0);
    int wins = 0;
    double mov_sum = 0.0, mov_sq = 0.0, reported_sum = 0.0;
    for (const auto& run : scores) {
        bool win = true;
        long long best_opp = 0;
        bool first = true;
        for (int c = 0; c < m; ++c) {
            report.expected_scores[c] += static_cast<double>(run[c]);
            if (c == instance.target) continue;
            if (run[c] >= run[instance.target]) win = false;
            if (first || run[c] > best_opp) {
                best_opp = run[c];
                first = false;
            }
        }
        if (win) ++wins;
        double mu = static_cast<double>(best_opp - run[instance.target]);
        double mov = constructive ? static_cast<double>(report.mu_empty) - mu
                                  : mu - static_cast<double>(report.mu_empty);
        mov_sum += mov;
        mov_sq += mov * mov;
        reported_sum += -mu;
    }
    for (double& s : report.expected_scores) s /= pov_runs;
    report.pov = static_cast<double>(wins) / pov_runs;
    report.sim_mov_mean = mov_sum / pov_runs;
    double var = pov_runs > 1
                     ? (mov_sq - mov_sum * mov_sum / pov_runs) / (pov_runs - 1)
                     : 0.0;
    report.sim_mov_std = std::sqrt(std::max(0.0, var));
    report.reported_mov = reported_sum / pov_runs;
    return report;
}

}  // namespace ltr

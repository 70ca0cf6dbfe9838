#include "ltr/diffusion.hpp"

#include <cmath>
#include <stdexcept>

namespace ltr {

AlphaTable::AlphaTable(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) throw std::invalid_argument("alpha table must not be empty");
    for (double a : values_) {
        if (!(a >= 0.0 && a <= 1.0)) {
            throw std::invalid_argument("alpha entries must lie in [0,1]");
        }
    }
}

AlphaTable AlphaTable::constant(int m, double a) {
    return AlphaTable(std::vector<double>(m, a));
}

AlphaTable AlphaTable::custom(std::vector<double> values) {
    return AlphaTable(std::move(values));
}

void ControlInstance::check() const {
    if (budget < 0 || budget > graph.node_count()) {
        throw std::invalid_argument("budget must lie in 0..|V|");
    }
    if (alpha.size() != profile.candidate_count()) {
        throw std::invalid_argument("alpha table length must equal candidate count");
    }
    if (profile.node_count() != graph.node_count()) {
        throw std::invalid_argument("profile and graph node counts differ");
    }
    if (target < 0 || target >= profile.candidate_count()) {
        throw std::invalid_argument("target candidate out of range");
    }
    if (rule.candidate_count() != profile.candidate_count()) {
        throw std::invalid_argument("rule and profile candidate counts differ");
    }
}

LtmResult run_ltm(const InfluenceGraph& graph, std::span<const int> seeds,
                  std::span<const double> thresholds) {
    const int n = graph.node_count();
    if (static_cast<int>(thresholds.size()) != n) {
        throw std::invalid_argument("thresholds length must equal |V|");
    }
    for (double t : thresholds) {
        if (!(t > 0.0 && t <= 1.0)) {
            throw std::invalid_argument("thresholds must lie in (0,1]");
        }
    }
    std::vector<char> active(n, 0);
    std::vector<double> incoming(n, 0.0);
    std::vector<int> frontier;
    for (int s : seeds) {
        if (s < 0 || s >= n) throw std::invalid_argument("seed out of range");
        if (!active[s]) {
            active[s] = 1;
            frontier.push_back(s);
        }
    }
    int rounds = 0;
    std::vector<int> next;
    while (!frontier.empty()) {
        ++rounds;
        // Weight from nodes active at the previous round.
        for (int u : frontier) {
            for (const auto& [v, w] : graph.out_neighbors(u)) {
                if (!active[v]) incoming[v] += w;
            }
        }
        next.clear();
        for (int u : frontier) {
            for (const auto& [v, w] : graph.out_neighbors(u)) {
                if (!active[v] && incoming[v] >= thresholds[v]) {
                    active[v] = 1;
                    next.push_back(v);
                }
            }
        }
        frontier.swap(next);
        if (rounds > n) throw std::logic_error("LTM failed to quiesce within |V| rounds");
    }
    return {std::move(active), rounds};
}

int shift_up(int position, double alpha_r, double threshold, double active_weight) {
    if (position < 2) throw std::invalid_argument("shift_up needs position >= 2");
    double steps = std::floor(alpha_r * active_weight / threshold);
    if (steps >= position - 1) return position - 1;
    return static_cast<int>(steps);
}

int shift_down(int position, double alpha_r, double threshold, double active_weight, int m) {
    if (position > m - 1) throw std::invalid_argument("shift_down needs position <= m-1");
    double steps = std::floor(alpha_r * active_weight / threshold);
    if (steps >= m - position) return m - position;
    return static_cast<int>(steps);
}

DiffusionOutcome run_ltr_fixed(const ControlInstance& instance, std::span<const int> seeds,
                               std::span<const double> thresholds,
                               std::span<const double> shift_draws) {
    const InfluenceGraph& graph = instance.graph;
    const int n = graph.node_count();
    const int m = instance.profile.candidate_count();
    if (static_cast<int>(shift_draws.size()) != n) {
        throw std::invalid_argument("shift_draws length must equal |V|");
    }
    LtmResult ltm = run_ltm(graph, seeds, thresholds);

    std::vector<std::vector<int>> rankings;
    rankings.reserve(n);
    for (int v = 0; v < n; ++v) {
        int r = instance.profile.position_of(v, instance.target);
        bool shiftable = instance.mode == ControlMode::Constructive ? r > 1 : r < m;
        if (!shiftable) {
            rankings.push_back(instance.profile.ranking(v));
            continue;
        }
        double weight = 0.0;
        for (const auto& [u, w] : graph.in_neighbors(v)) {
            if (ltm.active[u]) weight += w;
        }
        if (weight <= 0.0) {
            rankings.push_back(instance.profile.ranking(v));
            continue;
        }
        double alpha_r = instance.alpha.at(r);
        int new_pos;
        if (instance.mode == ControlMode::Constructive) {
            new_pos = r - shift_up(r, alpha_r, shift_draws[v], weight);
        } else {
            new_pos = r + shift_down(r, alpha_r, shift_draws[v], weight, m);
        }
        rankings.push_back(apply_shift(instance.profile.ranking(v), instance.target, new_pos));
    }
    return {std::move(ltm.active), PreferenceProfile(m, std::move(rankings)), ltm.rounds};
}

DiffusionOutcome run_ltr(const ControlInstance& instance, std::span<const int> seeds,
                         Rng& rng) {
    const int n = instance.graph.node_count();
    std::vector<double> thresholds(n), shift_draws(n);
    for (int v = 0; v < n; ++v) thresholds[v] = rng.uniform01();
    for (int v = 0; v < n; ++v) shift_draws[v] = rng.uniform01();
    return run_ltr_fixed(instance, seeds, thresholds, shift_draws);
}

}  // namespace ltr

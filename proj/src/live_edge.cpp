#include "ltr/live_edge.hpp"

#include <stdexcept>

namespace ltr {

std::vector<std::vector<int>> LiveEdgeGraph::children(int node_count) const {
    std::vector<std::vector<int>> out(node_count);
    for (int v = 0; v < node_count; ++v) {
        if (parent[v] >= 0) out[parent[v]].push_back(v);
    }
    return out;
}

ShiftDistribution shift_distribution(int r, double alpha_r) {
    if (r < 1) throw std::invalid_argument("position must be >= 1");
    if (!(alpha_r >= 0.0 && alpha_r <= 1.0)) {
        throw std::invalid_argument("alpha must lie in [0,1]");
    }
    ShiftDistribution d{r, std::vector<double>(r, 0.0)};
    if (r == 1) {
        d.probs[0] = 1.0;
        return d;
    }
    d.probs[0] = alpha_r / (r - 1);
    for (int l = 2; l <= r - 1; ++l) {
        d.probs[l - 1] = alpha_r / (r - l) - alpha_r / (r - l + 1);
    }
    d.probs[r - 1] = 1.0 - alpha_r;
    return d;
}

DownShiftDistribution shift_distribution_down(int r, double alpha_r, int m) {
    if (r < 1 || r > m) throw std::invalid_argument("position must lie in 1..m");
    if (!(alpha_r >= 0.0 && alpha_r <= 1.0)) {
        throw std::invalid_argument("alpha must lie in [0,1]");
    }
    DownShiftDistribution d{r, m, std::vector<double>(m - r + 1, 0.0)};
    if (r == m) {
        d.probs[0] = 1.0;
        return d;
    }
    d.probs[0] = 1.0 - alpha_r;
    for (int l = r + 1; l <= m - 1; ++l) {
        d.probs[l - r] = alpha_r / (l - r) - alpha_r / (l - r + 1);
    }
    d.probs[m - r] = alpha_r / (m - r);
    return d;
}

LiveEdgeGraph sample_live_edge(const InfluenceGraph& graph, Rng& rng) {
    const int n = graph.node_count();
    LiveEdgeGraph g{std::vector<int>(n, -1)};
    for (int v = 0; v < n; ++v) {
        const auto& in = graph.in_neighbors(v);
        if (in.empty()) continue;
        double u = rng.uniform01();
        double cum = 0.0;
        for (const auto& [src, w] : in) {
            cum += w;
            if (u <= cum) {
                g.parent[v] = src;
                break;
            }
        }
    }
    return g;
}

double live_edge_probability(const InfluenceGraph& graph, const LiveEdgeGraph& g) {
    const int n = graph.node_count();
    if (static_cast<int>(g.parent.size()) != n) {
        throw std::invalid_argument("live-edge graph size mismatch");
    }
    double p = 1.0;
    for (int v = 0; v < n; ++v) {
        const auto& in = graph.in_neighbors(v);
        if (g.parent[v] < 0) {
            if (!in.empty()) p *= 1.0 - graph.in_weight_sum(v);
            continue;
        }
        double w = -1.0;
        for (const auto& [src, weight] : in) {
            if (src == g.parent[v]) {
                w = weight;
                break;
            }
        }
        if (w < 0.0) {
            throw std::invalid_argument("chosen edge does not exist in source graph");
        }
        p *= w;
    }
    return p;
}

std::vector<char> reachable(const LiveEdgeGraph& g, int node_count, std::span<const int> seeds) {
    std::vector<char> reached(node_count, 0);
    auto children = g.children(node_count);
    std::vector<int> stack;
    for (int s : seeds) {
        if (s < 0 || s >= node_count) throw std::invalid_argument("seed out of range");
        if (!reached[s]) {
            reached[s] = 1;
            stack.push_back(s);
        }
    }
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int v : children[u]) {
            if (!reached[v]) {
                reached[v] = 1;
                stack.push_back(v);
            }
        }
    }
    return reached;
}

double roll_weight(const InfluenceGraph& graph, const std::vector<char>& reached, int v) {
    double w = 0.0;
    for (const auto& [u, weight] : graph.in_neighbors(v)) {
        if (reached[u]) w += weight;
    }
    return w;
}

DiffusionOutcome run_ldr(const ControlInstance& instance, std::span<const int> seeds, Rng& rng) {
    if (instance.mode != ControlMode::Constructive) {
        throw std::invalid_argument("run_ldr handles constructive instances only");
    }
    const int n = instance.graph.node_count();
    const int m = instance.profile.candidate_count();
    LiveEdgeGraph g = sample_live_edge(instance.graph, rng);
    std::vector<char> reached = reachable(g, n, seeds);

    std::vector<std::vector<int>> rankings;
    rankings.reserve(n);
    int rounds = 0;
    for (int v = 0; v < n; ++v) {
        int r = instance.profile.position_of(v, instance.target);
        if (r <= 1) {
            rankings.push_back(instance.profile.ranking(v));
            continue;
        }
        double w = roll_weight(instance.graph, reached, v);
        if (w <= 0.0) {
            rankings.push_back(instance.profile.ranking(v));
            continue;
        }
        // Single draw: cumulative probability of final position <= l is
        // w * alpha / (r - l); the remainder keeps the original position.
        double alpha_r = instance.alpha.at(r);
        double s = rng.uniform01();
        int final_pos = r;
        for (int l = 1; l <= r - 1; ++l) {
            if (s <= w * alpha_r / (r - l)) {
                final_pos = l;
                break;
            }
        }
        rankings.push_back(apply_shift(instance.profile.ranking(v), instance.target, final_pos));
    }
    return {std::move(reached), PreferenceProfile(m, std::move(rankings)), rounds};
}

long long live_edge_family_size(const InfluenceGraph& graph) {
    long long total = 1;
    for (int v = 0; v < graph.node_count(); ++v) {
        long long choices = static_cast<long long>(graph.in_neighbors(v).size()) + 1;
        if (total > (1LL << 62) / choices) return -1;  // overflow guard
        total *= choices;
    }
    return total;
}

void enumerate_live_edges(const InfluenceGraph& graph,
                          const std::function<void(const LiveEdgeGraph&, double)>& fn,
                          long long max_graphs) {
    long long total = live_edge_family_size(graph);
    if (total < 0 || total > max_graphs) {
        throw std::runtime_error("live-edge family too large to enumerate");
    }
    const int n = graph.node_count();
    LiveEdgeGraph g{std::vector<int>(n, -1)};

    // Odometer over per-node choices; probability maintained per prefix.
    std::function<void(int, double)> rec = [&](int v, double p) {
        if (v == n) {
            fn(g, p);
            return;
        }
        const auto& in = graph.in_neighbors(v);
        double none = in.empty() ? 1.0 : 1.0 - graph.in_weight_sum(v);
        g.parent[v] = -1;
        rec(v + 1, p * none);
        for (const auto& [src, w] : in) {
            g.parent[v] = src;
            rec(v + 1, p * w);
        }
        g.parent[v] = -1;
    };
    rec(0, 1.0);
}

double score_on_live_edge(const ControlInstance& instance, std::span<const int> seeds,
                          const LiveEdgeGraph& g) {
    const int n = instance.graph.node_count();
    const int m = instance.profile.candidate_count();
    std::vector<char> reached = reachable(g, n, seeds);
    double score = 0.0;
    for (int v = 0; v < n; ++v) {
        int r = instance.profile.position_of(v, instance.target);
        double base = static_cast<double>(instance.rule.score(r));
        score += base;
        bool shiftable = instance.mode == ControlMode::Constructive ? r > 1 : r < m;
        if (!shiftable) continue;
        double w = roll_weight(instance.graph, reached, v);
        if (w <= 0.0) continue;
        double expected = 0.0;
        if (instance.mode == ControlMode::Constructive) {
            ShiftDistribution d = shift_distribution(r, instance.alpha.at(r));
            for (int l = 1; l <= r; ++l) {
                expected += d.probs[l - 1] * static_cast<double>(instance.rule.score(l));
            }
        } else {
            DownShiftDistribution d = shift_distribution_down(r, instance.alpha.at(r), m);
            for (int l = r; l <= m; ++l) {
                expected += d.probs[l - r] * static_cast<double>(instance.rule.score(l));
            }
        }
        score += w * (expected - base);
    }
    return score;
}

double exact_expected_score(const ControlInstance& instance, std::span<const int> seeds) {
    double total = 0.0;
    enumerate_live_edges(instance.graph, [&](const LiveEdgeGraph& g, double p) {
        total += p * score_on_live_edge(instance, seeds, g);
    });
    return total;
}

}  // namespace ltr

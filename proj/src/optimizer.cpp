#include "ltr/optimizer.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <stdexcept>
#include <tuple>

namespace ltr {

SampleSet::SampleSet(const ControlInstance& instance, const Estimator& est) {
    instance.check();
    if (est.samples < 1) throw std::invalid_argument("estimator needs >= 1 sample");
    const InfluenceGraph& graph = instance.graph;
    const int m = instance.profile.candidate_count();
    n_ = graph.node_count();

    base_ = 0.0;
    contrib_.assign(n_, 0.0);
    for (int v = 0; v < n_; ++v) {
        int r = instance.profile.position_of(v, instance.target);
        base_ += static_cast<double>(instance.rule.score(r));
        bool shiftable = instance.mode == ControlMode::Constructive ? r > 1 : r < m;
        if (!shiftable) continue;
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
        double g = expected - static_cast<double>(instance.rule.score(r));
        // Reaching u lets every out-neighbor v roll with an extra b_uv.
        for (const auto& [u, w] : graph.in_neighbors(v)) {
            contrib_[u] += w * g;
        }
    }

    children_.reserve(est.samples);
    for (int i = 0; i < est.samples; ++i) {
        Rng rng(derive_seed(est.seed, static_cast<uint64_t>(i)));
        children_.push_back(sample_live_edge(graph, rng).children(n_));
    }
}

double SampleSet::score(std::span<const int> seeds) const {
    double sum = 0.0;
    std::vector<char> reached(n_, 0);
    std::vector<int> stack;
    for (const auto& kids : children_) {
        std::fill(reached.begin(), reached.end(), 0);
        stack.clear();
        for (int s : seeds) {
            if (s < 0 || s >= n_) throw std::invalid_argument("seed out of range");
            if (!reached[s]) {
                reached[s] = 1;
                sum += contrib_[s];
                stack.push_back(s);
            }
        }
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int v : kids[u]) {
                if (!reached[v]) {
                    reached[v] = 1;
                    sum += contrib_[v];
                    stack.push_back(v);
                }
            }
        }
    }
    return base_ + sum / static_cast<double>(children_.size());
}

double estimate_score(const ControlInstance& instance, std::span<const int> seeds,
                      const Estimator& est) {
    return SampleSet(instance, est).score(seeds);
}

namespace {

// Contribution newly covered by seeding w, across one sample. commit
// marks the nodes; otherwise the reached mask is restored via the undo
// list so marginal queries stay side-effect free.
double probe(const std::vector<std::vector<int>>& kids, const std::vector<double>& contrib,
             std::vector<char>& reached, std::vector<int>& scratch, int w, bool commit) {
    if (reached[w]) return 0.0;
    double gain = 0.0;
    scratch.clear();
    reached[w] = 1;
    scratch.push_back(w);
    gain += contrib[w];
    for (size_t i = 0; i < scratch.size(); ++i) {
        for (int v : kids[scratch[i]]) {
            if (!reached[v]) {
                reached[v] = 1;
                scratch.push_back(v);
                gain += contrib[v];
            }
        }
    }
    if (!commit) {
        for (int v : scratch) reached[v] = 0;
    }
    return gain;
}

}  // namespace

SeedSet greedy_select(const ControlInstance& instance, const Estimator& est) {
    if (instance.mode != ControlMode::Constructive) {
        throw std::invalid_argument("greedy_select maximizes constructive instances only");
    }
    instance.check();
    SampleSet set(instance, est);
    const int n = set.node_count();
    const int R = set.sample_count();
    const auto& contrib = set.contrib();

    std::vector<std::vector<char>> reached(R, std::vector<char>(n, 0));
    std::vector<int> scratch;
    auto marginal = [&](int w, bool commit) {
        double g = 0.0;
        for (int s = 0; s < R; ++s) {
            g += probe(set.children(s), contrib, reached[s], scratch, w, commit);
        }
        return g / static_cast<double>(R);
    };

    // CELF: cached gains are upper bounds by submodularity, so the top
    // entry is optimal once its cache is fresh for this iteration.
    // Ordering: larger gain first, lowest node id on ties.
    using Entry = std::tuple<double, int, int>;  // (gain, -node, iteration)
    std::priority_queue<Entry> pq;
    for (int v = 0; v < n; ++v) pq.emplace(marginal(v, false), -v, 0);

    SeedSet result;
    double prev_gain = std::numeric_limits<double>::infinity();
    for (int it = 1; it <= instance.budget && !pq.empty(); ++it) {
        double gain;
        int node;
        for (;;) {
            auto [g, neg, stamp] = pq.top();
            pq.pop();
            if (stamp == it) {
                gain = g;
                node = -neg;
                break;
            }
            pq.emplace(marginal(-neg, false), neg, it);
        }
        if (gain < -1e-9) throw std::logic_error("negative marginal gain in greedy");
        if (gain > prev_gain + 1e-9) {
            throw std::logic_error("selected gains increased: submodularity violated");
        }
        if (gain <= 1e-12) break;  // nothing left to gain
        marginal(node, true);
        result.nodes.push_back(node);
        result.gains.push_back(gain);
        prev_gain = gain;
    }
    return result;
}

ControlInstance destructive_transform(const ControlInstance& instance) {
    if (instance.mode != ControlMode::Destructive) {
        throw std::invalid_argument("destructive_transform expects a destructive instance");
    }
    instance.check();
    const int m = instance.profile.candidate_count();
    const int n = instance.graph.node_count();

    std::vector<std::vector<int>> rankings;
    rankings.reserve(n);
    for (int v = 0; v < n; ++v) {
        std::vector<int> order = instance.profile.ranking(v);
        std::reverse(order.begin(), order.end());
        rankings.push_back(std::move(order));
    }

    long long fmax = instance.rule.max_score();
    std::vector<long long> scores(m);
    for (int r = 1; r <= m; ++r) scores[r - 1] = fmax - instance.rule.score(m - r + 1);

    std::vector<double> alpha(m);
    for (int r = 1; r <= m; ++r) alpha[r - 1] = instance.alpha.at(m - r + 1);

    return ControlInstance{instance.graph,
                           PreferenceProfile(m, std::move(rankings)),
                           ScoringRule::custom(std::move(scores)),
                           instance.target,
                           AlphaTable::custom(std::move(alpha)),
                           instance.budget,
                           ControlMode::Constructive};
}

SeedSet solve(const ControlInstance& instance, const Estimator& est) {
    if (instance.mode == ControlMode::Constructive) {
        return greedy_select(instance, est);
    }
    return greedy_select(destructive_transform(instance), est);
}

}  // namespace ltr

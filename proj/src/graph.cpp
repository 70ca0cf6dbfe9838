#include "ltr/graph.hpp"

#include <cmath>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "ltr/rng.hpp"

namespace ltr {

namespace {
constexpr double kLtmSlack = 1e-12;
}

InfluenceGraph::InfluenceGraph(int node_count, std::vector<Edge> edges,
                               std::vector<std::string> labels)
    : n_(node_count), edges_(std::move(edges)), labels_(std::move(labels)) {
    if (n_ < 0) throw std::invalid_argument("node_count must be non-negative");
    for (const Edge& e : edges_) {
        if (e.src < 0 || e.src >= n_ || e.dst < 0 || e.dst >= n_) {
            throw std::invalid_argument("edge endpoint out of range");
        }
    }
    if (labels_.empty()) {
        labels_.reserve(n_);
        for (int v = 0; v < n_; ++v) labels_.push_back(std::to_string(v));
    }
    if (static_cast<int>(labels_.size()) != n_) {
        throw std::invalid_argument("label table size mismatch");
    }
    in_.assign(n_, {});
    out_.assign(n_, {});
    in_sum_.assign(n_, 0.0);
    for (const Edge& e : edges_) {
        in_[e.dst].emplace_back(e.src, e.weight);
        out_[e.src].emplace_back(e.dst, e.weight);
        in_sum_[e.dst] += e.weight;
    }
}

int InfluenceGraph::node_by_label(const std::string& label) const {
    for (int v = 0; v < n_; ++v) {
        if (labels_[v] == label) return v;
    }
    return -1;
}

ValidationReport validate(const InfluenceGraph& graph) {
    ValidationReport report;
    std::unordered_set<int64_t> seen;
    for (const Edge& e : graph.edges()) {
        if (e.src == e.dst) {
            report.push_back({"self-loop", "self-loop at node " + graph.label(e.src)});
        }
        int64_t key = static_cast<int64_t>(e.src) * graph.node_count() + e.dst;
        if (!seen.insert(key).second) {
            report.push_back({"duplicate-edge",
                              "duplicate edge (" + graph.label(e.src) + "," +
                                  graph.label(e.dst) + ")"});
        }
        if (!(e.weight >= 0.0 && e.weight <= 1.0) || !std::isfinite(e.weight)) {
            report.push_back({"weight-range",
                              "weight " + std::to_string(e.weight) + " on edge (" +
                                  graph.label(e.src) + "," + graph.label(e.dst) +
                                  ") outside [0,1]"});
        }
    }
    for (int v = 0; v < graph.node_count(); ++v) {
        if (graph.in_weight_sum(v) > 1.0 + kLtmSlack) {
            report.push_back({"ltm-sum",
                              "node " + graph.label(v) + " incoming weight sum " +
                                  std::to_string(graph.in_weight_sum(v)) + " > 1"});
        }
    }
    return report;
}

InfluenceGraph load_edge_list(std::istream& in, bool directed,
                              WeightMode weight_mode, uint64_t seed) {
    std::unordered_map<std::string, int> ids;
    std::vector<std::string> labels;
    auto intern = [&](const std::string& tok) {
        auto it = ids.find(tok);
        if (it != ids.end()) return it->second;
        int id = static_cast<int>(labels.size());
        ids.emplace(tok, id);
        labels.push_back(tok);
        return id;
    };

    struct RawEdge {
        int src, dst;
        double weight;
        int line;
    };
    std::vector<RawEdge> raw;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string u, v, w, extra;
        if (!(ls >> u)) continue;  // blank line
        if (u[0] == '#') continue;
        if (!(ls >> v)) {
            throw std::runtime_error("line " + std::to_string(lineno) +
                                     ": expected \"u v\" or \"u v w\"");
        }
        double weight = -1.0;
        if (ls >> w) {
            try {
                size_t pos = 0;
                weight = std::stod(w, &pos);
                if (pos != w.size()) throw std::invalid_argument(w);
            } catch (const std::exception&) {
                throw std::runtime_error("line " + std::to_string(lineno) +
                                         ": bad weight \"" + w + "\"");
            }
            if (ls >> extra) {
                throw std::runtime_error("line " + std::to_string(lineno) +
                                         ": trailing token \"" + extra + "\"");
            }
        } else if (weight_mode == WeightMode::AsGiven) {
            throw std::runtime_error("line " + std::to_string(lineno) +
                                     ": weight required with as-given weights");
        }
        if (weight_mode == WeightMode::AsGiven && (weight < 0.0 || weight > 1.0)) {
            throw std::runtime_error("line " + std::to_string(lineno) + ": weight " +
                                     std::to_string(weight) + " outside [0,1]");
        }
        int a = intern(u);
        int b = intern(v);
        if (a == b) {
            throw std::runtime_error("line " + std::to_string(lineno) + ": self-loop at \"" +
                                     u + "\"");
        }
        raw.push_back({a, b, weight, lineno});
        if (!directed) raw.push_back({b, a, weight, lineno});
    }

    int n = static_cast<int>(labels.size());
    std::unordered_set<int64_t> seen;
    for (const RawEdge& e : raw) {
        int64_t key = static_cast<int64_t>(e.src) * std::max(n, 1) + e.dst;
        if (!seen.insert(key).second) {
            throw std::runtime_error("line " + std::to_string(e.line) + ": duplicate edge (" +
                                     labels[e.src] + "," + labels[e.dst] + ")");
        }
    }

    std::vector<Edge> edges;
    edges.reserve(raw.size());
    std::vector<int> in_degree(n, 0);
    for (const RawEdge& e : raw) ++in_degree[e.dst];

    Rng rng(seed);
    std::vector<double> node_sum(n, 0.0);
    for (const RawEdge& e : raw) {
        double w;
        switch (weight_mode) {
            case WeightMode::AsGiven:
                w = e.weight;
                break;
            case WeightMode::UniformByInDegree:
                w = 1.0 / in_degree[e.dst];
                break;
            case WeightMode::RandomNormalized:
            default:
                w = rng.uniform01();
                break;
        }
        node_sum[e.dst] += w;
        edges.push_back({e.src, e.dst, w});
    }
    if (weight_mode == WeightMode::RandomNormalized) {
        // Division by max(1, sum) keeps sparse nodes below total weight 1,
        // preserving a positive no-edge probability in live-edge sampling.
        for (Edge& e : edges) e.weight /= std::max(1.0, node_sum[e.dst]);
    }

    InfluenceGraph graph(n, std::move(edges), std::move(labels));
    if (weight_mode == WeightMode::AsGiven) {
        for (int v = 0; v < n; ++v) {
            if (graph.in_weight_sum(v) > 1.0 + kLtmSlack) {
                throw std::runtime_error("node " + graph.label(v) + " incoming weight sum " +
                                         std::to_string(graph.in_weight_sum(v)) + " > 1");
            }
        }
    }
    return graph;
}

}  // namespace ltr

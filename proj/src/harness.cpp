#include "ltr/harness.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "ltr/optimizer.hpp"
#include "ltr/util.hpp"

namespace ltr {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) parts.push_back(item);
    }
    return parts;
}

bool parse_bool(const std::string& v, const std::string& key) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw std::invalid_argument("config: bad boolean for '" + key + "': " + v);
}

}  // namespace

void ExperimentConfig::validate_fields() const {
    if (m < 2) throw std::invalid_argument("config: m must be >= 2");
    if (rules.empty() || budgets.empty() || alphas.empty() || methods.empty()) {
        throw std::invalid_argument("config: rules/budgets/alphas/methods must be non-empty");
    }
    if (permutations < 1 || runs < 1 || samples < 1) {
        throw std::invalid_argument("config: permutations/runs/samples must be >= 1");
    }
    if (target < 0 || target >= m) throw std::invalid_argument("config: target out of 0..m-1");
    for (int b : budgets) {
        if (b < 0) throw std::invalid_argument("config: budgets must be >= 0");
    }
    for (double a : alphas) {
        if (!(a >= 0.0 && a <= 1.0)) throw std::invalid_argument("config: alphas in [0,1]");
    }
    for (const std::string& meth : methods) {
        if (meth != "greedy" && meth != "random" && meth != "degree") {
            throw std::invalid_argument("config: unknown method '" + meth + "'");
        }
    }
}

ExperimentConfig parse_config(std::istream& in) {
    ExperimentConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": expected key=value");
        }
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        try {
            if (key == "graph") {
                cfg.graph_path = value;
            } else if (key == "undirected") {
                cfg.undirected = parse_bool(value, key);
            } else if (key == "weights") {
                if (value == "given") cfg.weights = WeightMode::AsGiven;
                else if (value == "uniform") cfg.weights = WeightMode::UniformByInDegree;
                else if (value == "random") cfg.weights = WeightMode::RandomNormalized;
                else throw std::invalid_argument("expected given|uniform|random");
            } else if (key == "target") {
                cfg.target = std::stoi(value);
            } else if (key == "m") {
                cfg.m = std::stoi(value);
            } else if (key == "rules") {
                cfg.rules = split_csv(value);
            } else if (key == "budgets") {
                cfg.budgets.clear();
                for (const auto& s : split_csv(value)) cfg.budgets.push_back(std::stoi(s));
            } else if (key == "alphas") {
                cfg.alphas.clear();
                for (const auto& s : split_csv(value)) cfg.alphas.push_back(std::stod(s));
            } else if (key == "permutations") {
                cfg.permutations = std::stoi(value);
            } else if (key == "runs") {
                cfg.runs = std::stoi(value);
            } else if (key == "samples") {
                cfg.samples = std::stoi(value);
            } else if (key == "seed") {
                cfg.seed = std::stoull(value);
            } else if (key == "methods") {
                cfg.methods = split_csv(value);
            } else if (key == "mode") {
                if (value == "constructive") cfg.mode = ControlMode::Constructive;
                else if (value == "destructive") cfg.mode = ControlMode::Destructive;
                else throw std::invalid_argument("expected constructive|destructive");
            } else if (key == "output") {
                cfg.output = value;
            } else if (key == "plots") {
                cfg.plots = parse_bool(value, key);
            } else if (key == "threads") {
                cfg.threads = std::stoi(value);
            } else {
                throw std::invalid_argument("unknown key");
            }
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument("config line " + std::to_string(lineno) + " ('" +
                                        key + "'): " + e.what());
        }
    }
    cfg.validate_fields();
    return cfg;
}

PreferenceProfile assign_random_preferences(int node_count, int m, uint64_t seed) {
    if (m < 2) throw std::invalid_argument("need at least 2 candidates");
    Rng rng(seed);
    std::vector<std::vector<int>> rankings(node_count);
    for (int v = 0; v < node_count; ++v) {
        std::vector<int> order(m);
        for (int c = 0; c < m; ++c) order[c] = c;
        rng.shuffle(order);
        rankings[v] = std::move(order);
    }
    return PreferenceProfile(m, std::move(rankings));
}

namespace {

// Seed-derivation tags; distinct streams per purpose.
constexpr uint64_t kTagPrefs = 0xA1;
constexpr uint64_t kTagGreedy = 0xB2;
constexpr uint64_t kTagRandomSeeds = 0xC3;
constexpr uint64_t kTagEvalSamples = 0xD4;
constexpr uint64_t kTagSimRuns = 0xE5;

std::vector<int> top_degree_seeds(const InfluenceGraph& graph, int budget) {
    std::vector<int> ids(graph.node_count());
    for (int v = 0; v < graph.node_count(); ++v) ids[v] = v;
    std::stable_sort(ids.begin(), ids.end(), [&](int a, int b) {
        if (graph.out_degree(a) != graph.out_degree(b)) {
            return graph.out_degree(a) > graph.out_degree(b);
        }
        return a < b;
    });
    ids.resize(std::min<size_t>(ids.size(), budget));
    return ids;
}

std::vector<int> random_seeds(int n, int budget, uint64_t seed) {
    std::vector<int> ids(n);
    for (int v = 0; v < n; ++v) ids[v] = v;
    Rng rng(seed);
    rng.shuffle(ids);
    ids.resize(std::min<size_t>(ids.size(), budget));
    return ids;
}

std::string detail_line(const DetailRow& r) {
    std::string s;
    s += r.rule;
    s += ',' + std::to_string(r.budget);
    s += ',' + format_double(r.alpha);
    s += ',' + std::to_string(r.perm);
    s += ',' + r.method;
    s += ',' + format_double(r.pov);
    s += ',' + format_double(r.mov_mean);
    s += ',' + format_double(r.mov_std);
    s += ',' + format_double(r.expected_mov);
    s += ',' + format_double(r.expected_mov_stderr);
    s += ',' + format_double(r.reported_mov);
    s += ',' + std::to_string(r.mu_empty);
    return s;
}

void emit_boxplots(const std::filesystem::path& dir, const ExperimentConfig& cfg,
                   const std::vector<DetailRow>& detail) {
    std::filesystem::create_directories(dir);
    for (const std::string& rule : cfg.rules) {
        for (int budget : cfg.budgets) {
            for (const std::string& method : cfg.methods) {
                const double width = 120.0 * cfg.alphas.size() + 60.0;
                const double height = 260.0;
                std::ostringstream svg;
                svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
                    << "\" height=\"" << height << "\">\n";
                // Gather per-alpha samples of the per-permutation MoV means.
                double lo = 0.0, hi = 1.0;
                std::vector<std::vector<double>> groups;
                for (double alpha : cfg.alphas) {
                    std::vector<double> vals;
                    for (const DetailRow& r : detail) {
                        if (r.rule == rule && r.budget == budget && r.method == method &&
                            r.alpha == alpha) {
                            vals.push_back(r.mov_mean);
                        }
                    }
                    std::sort(vals.begin(), vals.end());
                    if (!vals.empty()) {
                        lo = std::min(lo, vals.front());
                        hi = std::max(hi, vals.back());
                    }
                    groups.push_back(std::move(vals));
                }
                if (hi <= lo) hi = lo + 1.0;
                auto y = [&](double v) {
                    return 220.0 - 190.0 * (v - lo) / (hi - lo);
                };
                for (size_t i = 0; i < groups.size(); ++i) {
                    const auto& vals = groups[i];
                    if (vals.empty()) continue;
                    double x = 60.0 + 120.0 * i;
                    auto q = [&](double p) {
                        double idx = p * (vals.size() - 1);
                        size_t a = static_cast<size_t>(idx);
                        size_t b = std::min(a + 1, vals.size() - 1);
                        return vals[a] + (idx - a) * (vals[b] - vals[a]);
                    };
                    svg << "<line x1=\"" << x + 30 << "\" x2=\"" << x + 30 << "\" y1=\""
                        << y(vals.front()) << "\" y2=\"" << y(vals.back())
                        << "\" stroke=\"black\"/>\n";
                    svg << "<rect x=\"" << x << "\" width=\"60\" y=\"" << y(q(0.75))
                        << "\" height=\"" << std::max(1.0, y(q(0.25)) - y(q(0.75)))
                        << "\" fill=\"#9ecae1\" stroke=\"black\"/>\n";
                    svg << "<line x1=\"" << x << "\" x2=\"" << x + 60 << "\" y1=\""
                        << y(q(0.5)) << "\" y2=\"" << y(q(0.5))
                        << "\" stroke=\"black\" stroke-width=\"2\"/>\n";
                    svg << "<text x=\"" << x + 30 << "\" y=\"245\" text-anchor=\"middle\" "
                        << "font-size=\"12\">a=" << format_double(cfg.alphas[i])
                        << "</text>\n";
                }
                svg << "<text x=\"10\" y=\"16\" font-size=\"12\">" << rule << " B="
                    << budget << " " << method << "</text>\n";
                svg << "</svg>\n";
                std::string name = rule + "_B" + std::to_string(budget) + "_" + method + ".svg";
                std::ofstream out(dir / name, std::ios::binary);
                out << svg.str();
            }
        }
    }
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config,
                                const InfluenceGraph& graph) {
    config.validate_fields();
    const int n = graph.node_count();
    const size_t nr = config.rules.size();
    const size_t nb = config.budgets.size();
    const size_t na = config.alphas.size();
    const size_t nm = config.methods.size();
    const size_t np = static_cast<size_t>(config.permutations);
    const size_t total = nr * nb * na * np * nm;

    // Parse rules once up front so bad specs fail before any work runs.
    std::vector<ScoringRule> rules;
    rules.reserve(nr);
    for (const std::string& spec : config.rules) rules.push_back(parse_rule(spec, config.m));

    std::filesystem::path out_dir(config.output);
    std::filesystem::path partial = out_dir / "results_detail.csv.partial";
    std::ofstream partial_out;
    std::mutex partial_mu;
    if (!config.output.empty()) {
        std::filesystem::create_directories(out_dir);
        partial_out.open(partial, std::ios::binary | std::ios::trunc);
    }

    ExperimentResult result;
    result.detail.resize(total);
    parallel_for(total, config.threads, [&](size_t idx) {
        size_t rest = idx;
        const size_t mi = rest % nm; rest /= nm;
        const size_t pi = rest % np; rest /= np;
        const size_t ai = rest % na; rest /= na;
        const size_t bi = rest % nb; rest /= nb;
        const size_t ri = rest;
        const uint64_t cell = static_cast<uint64_t>(ri * nb * na + bi * na + ai);
        const int budget = config.budgets[bi];
        const double alpha = config.alphas[ai];
        const std::string& method = config.methods[mi];

        ControlInstance instance{graph,
                                 assign_random_preferences(
                                     n, config.m, derive_seed(config.seed, kTagPrefs, pi)),
                                 rules[ri],
                                 config.target,
                                 AlphaTable::constant(config.m, alpha),
                                 budget,
                                 config.mode};

        std::vector<int> seeds;
        if (method == "greedy") {
            Estimator est{config.samples, derive_seed(config.seed, kTagGreedy, pi, cell),
                          true};
            seeds = solve(instance, est).nodes;
        } else if (method == "random") {
            seeds = random_seeds(n, budget,
                                 derive_seed(config.seed, kTagRandomSeeds, pi, cell));
        } else {
            seeds = top_degree_seeds(graph, budget);
        }

        // Evaluation samples and simulation seeds are shared across
        // methods (and across budgets/alphas for the simulations), so
        // method comparisons use common random numbers.
        Estimator eval_est{config.samples,
                           derive_seed(config.seed, kTagEvalSamples, pi, cell), true};
        MovReport rep = evaluate(instance, seeds, eval_est, config.runs,
                                 derive_seed(config.seed, kTagSimRuns, pi), 1);

        DetailRow row{config.rules[ri], budget,        alpha,
                      static_cast<int>(pi), method,    rep.pov,
                      rep.sim_mov_mean,     rep.sim_mov_std,
                      rep.expected_mov,     rep.stderr_,
                      rep.reported_mov,     rep.mu_empty};
        result.detail[idx] = row;
        if (partial_out.is_open()) {
            std::lock_guard<std::mutex> lock(partial_mu);
            partial_out << detail_line(row) << '\n';
            partial_out.flush();
        }
    });

    // Aggregate over permutations per (rule, budget, alpha, method).
    for (size_t ri = 0; ri < nr; ++ri) {
        for (size_t bi = 0; bi < nb; ++bi) {
            for (size_t ai = 0; ai < na; ++ai) {
                for (size_t mi = 0; mi < nm; ++mi) {
                    AggregateRow agg{config.rules[ri], config.budgets[bi],
                                     config.alphas[ai], config.methods[mi],
                                     static_cast<int>(np), 0.0, 0.0, 0.0, 0.0};
                    std::vector<double> means;
                    for (size_t pi = 0; pi < np; ++pi) {
                        size_t idx = (((ri * nb + bi) * na + ai) * np + pi) * nm + mi;
                        const DetailRow& r = result.detail[idx];
                        agg.pov_mean += r.pov;
                        agg.mov_mu += r.mov_mean;
                        agg.mov_sigma += r.mov_std;
                        means.push_back(r.mov_mean);
                    }
                    agg.pov_mean /= np;
                    agg.mov_mu /= np;
                    agg.mov_sigma /= np;
                    if (np > 1) {
                        double var = 0.0;
                        for (double v : means) var += (v - agg.mov_mu) * (v - agg.mov_mu);
                        agg.mov_stderr = std::sqrt(var / (np - 1) / np);
                    } else {
                        // Single permutation: fall back to simulation noise.
                        agg.mov_stderr =
                            result.detail[((ri * nb + bi) * na + ai) * np * nm + mi]
                                .mov_std /
                            std::sqrt(static_cast<double>(config.runs));
                    }
                    result.aggregate.push_back(std::move(agg));
                }
            }
        }
    }

    if (!config.output.empty()) {
        {
            std::ofstream out(out_dir / "results_detail.csv", std::ios::binary);
            write_detail_csv(out, result.detail);
        }
        {
            std::ofstream out(out_dir / "results_aggregate.csv", std::ios::binary);
            write_aggregate_csv(out, result.aggregate);
        }
        partial_out.close();
        std::filesystem::remove(partial);
        if (config.plots) emit_boxplots(out_dir / "plots", config, result.detail);
    }
    return result;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
    std::ifstream in(config.graph_path);
    if (!in) throw std::runtime_error("cannot open graph file: " + config.graph_path);
    InfluenceGraph graph =
        load_edge_list(in, !config.undirected, config.weights, config.seed);
    return run_experiment(config, graph);
}

void write_detail_csv(std::ostream& out, const std::vector<DetailRow>& rows) {
    out << "# ltr-results-v1\n";
    out << "rule,budget,alpha,perm,method,pov,mov_mean,mov_std,expected_mov,"
           "expected_mov_stderr,reported_mov,mu_empty\n";
    for (const DetailRow& r : rows) out << detail_line(r) << '\n';
}

void write_aggregate_csv(std::ostream& out, const std::vector<AggregateRow>& rows) {
    out << "# ltr-results-v1\n";
    out << "rule,budget,alpha,method,perms,pov_mean,mov_mu,mov_sigma,mov_stderr\n";
    for (const AggregateRow& r : rows) {
        out << r.rule << ',' << r.budget << ',' << format_double(r.alpha) << ','
            << r.method << ',' << r.cells << ',' << format_double(r.pov_mean) << ','
            << format_double(r.mov_mu) << ',' << format_double(r.mov_sigma) << ','
            << format_double(r.mov_stderr) << '\n';
    }
}

}  // namespace ltr

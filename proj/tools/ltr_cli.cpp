#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "ltr/evaluation.hpp"
#include "ltr/harness.hpp"
#include "ltr/optimizer.hpp"
#include "ltr/util.hpp"

namespace {

struct GraphOpts {
    std::string path;
    bool undirected = false;
    std::string weights = "given";
    uint64_t seed = 0;
};

void add_graph_opts(CLI::App* cmd, GraphOpts& g) {
    cmd->add_option("--graph", g.path, "edge list file")->required();
    cmd->add_flag("--undirected", g.undirected, "treat edges as undirected");
    cmd->add_option("--weights", g.weights, "given|uniform|random")
        ->check(CLI::IsMember({"given", "uniform", "random"}));
}

ltr::WeightMode weight_mode(const std::string& name) {
    if (name == "given") return ltr::WeightMode::AsGiven;
    if (name == "uniform") return ltr::WeightMode::UniformByInDegree;
    return ltr::WeightMode::RandomNormalized;
}

ltr::InfluenceGraph load_graph(const GraphOpts& g) {
    std::ifstream in(g.path);
    if (!in) throw std::runtime_error("cannot open graph file: " + g.path);
    return ltr::load_edge_list(in, !g.undirected, weight_mode(g.weights), g.seed);
}

// Candidate count inferred from the first ranking line of the file.
int infer_m(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open preference file: " + path);
    std::string line;
    while (std::getline(in, line)) {
        size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        size_t colon = line.find(':');
        if (colon == std::string::npos) continue;
        int count = 1;
        for (char ch : line.substr(colon + 1)) {
            if (ch == ',') ++count;
        }
        return count;
    }
    throw std::runtime_error("preference file has no rankings: " + path);
}

ltr::PreferenceProfile load_prefs(const std::string& path, const ltr::InfluenceGraph& graph,
                                  int m) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open preference file: " + path);
    return ltr::load_preferences(in, graph, m);
}

ltr::AlphaTable parse_alpha(const std::string& spec, int m) {
    std::vector<double> values;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) values.push_back(std::stod(item));
    if (values.size() == 1) return ltr::AlphaTable::constant(m, values[0]);
    return ltr::AlphaTable::custom(std::move(values));
}

std::vector<int> parse_seeds(const std::string& spec, const ltr::InfluenceGraph& graph) {
    std::vector<int> seeds;
    if (spec.empty()) return seeds;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        int id = graph.node_by_label(item);
        if (id < 0) {
            try {
                size_t pos = 0;
                id = std::stoi(item, &pos);
                if (pos != item.size()) id = -1;
            } catch (const std::exception&) {
                id = -1;
            }
        }
        if (id < 0 || id >= graph.node_count()) {
            throw std::runtime_error("unknown seed node: " + item);
        }
        seeds.push_back(id);
    }
    return seeds;
}

int resolve_threads(int flag_value) {
    if (flag_value > 0) return flag_value;
    if (const char* env = std::getenv("LTR_THREADS")) {
        int t = std::atoi(env);
        if (t > 0) return t;
    }
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Linear Threshold Ranking election-control toolkit"};
    app.require_subcommand(1);

    // validate
    GraphOpts vg;
    auto* validate_cmd = app.add_subcommand("validate", "check graph invariants");
    add_graph_opts(validate_cmd, vg);
    validate_cmd->add_option("--seed", vg.seed, "weight randomization seed");

    // simulate
    GraphOpts sg;
    std::string s_prefs, s_alpha = "1.0", s_seeds, s_rule = "plurality",
                s_mode = "constructive";
    int s_target = 0, s_runs = 20;
    uint64_t s_seed = 0;
    auto* simulate_cmd = app.add_subcommand("simulate", "run LTR simulations");
    add_graph_opts(simulate_cmd, sg);
    simulate_cmd->add_option("--prefs", s_prefs, "preference file")->required();
    simulate_cmd->add_option("--target", s_target, "target candidate id");
    simulate_cmd->add_option("--alpha", s_alpha, "shift rate (single value or csv per position)");
    simulate_cmd->add_option("--seeds", s_seeds, "comma-separated seed nodes");
    simulate_cmd->add_option("--rule", s_rule, "scoring rule");
    simulate_cmd->add_option("--runs", s_runs, "number of simulation runs");
    simulate_cmd->add_option("--seed", s_seed, "master seed");
    simulate_cmd->add_option("--mode", s_mode, "constructive|destructive")
        ->check(CLI::IsMember({"constructive", "destructive"}));

    // optimize
    GraphOpts og;
    std::string o_prefs, o_alpha = "1.0", o_rule = "plurality", o_mode = "constructive";
    int o_target = 0, o_budget = 1, o_samples = 256;
    uint64_t o_seed = 0;
    auto* optimize_cmd = app.add_subcommand("optimize", "greedy seed selection");
    add_graph_opts(optimize_cmd, og);
    optimize_cmd->add_option("--prefs", o_prefs, "preference file")->required();
    optimize_cmd->add_option("--target", o_target, "target candidate id");
    optimize_cmd->add_option("--alpha", o_alpha, "shift rate");
    optimize_cmd->add_option("--rule", o_rule, "scoring rule");
    optimize_cmd->add_option("--budget", o_budget, "seed budget");
    optimize_cmd->add_option("--samples", o_samples, "estimator live-edge samples");
    optimize_cmd->add_option("--seed", o_seed, "master seed");
    optimize_cmd->add_option("--mode", o_mode, "constructive|destructive")
        ->check(CLI::IsMember({"constructive", "destructive"}));

    // evaluate
    GraphOpts eg;
    std::string e_prefs, e_alpha = "1.0", e_seeds, e_rule = "plurality",
                e_mode = "constructive";
    int e_target = 0, e_samples = 256, e_pov_runs = 20, e_threads = 0;
    uint64_t e_seed = 0;
    auto* evaluate_cmd = app.add_subcommand("evaluate", "MoV / PoV report for a seed set");
    add_graph_opts(evaluate_cmd, eg);
    evaluate_cmd->add_option("--prefs", e_prefs, "preference file")->required();
    evaluate_cmd->add_option("--target", e_target, "target candidate id");
    evaluate_cmd->add_option("--alpha", e_alpha, "shift rate");
    evaluate_cmd->add_option("--seeds", e_seeds, "comma-separated seed nodes");
    evaluate_cmd->add_option("--rule", e_rule, "scoring rule");
    evaluate_cmd->add_option("--samples", e_samples, "live-edge samples");
    evaluate_cmd->add_option("--pov-runs", e_pov_runs, "simulation runs for PoV");
    evaluate_cmd->add_option("--seed", e_seed, "master seed");
    evaluate_cmd->add_option("--threads", e_threads, "worker threads");
    evaluate_cmd->add_option("--mode", e_mode, "constructive|destructive")
        ->check(CLI::IsMember({"constructive", "destructive"}));

    // experiment
    std::string x_config;
    int x_threads = 0;
    auto* experiment_cmd = app.add_subcommand("experiment", "parameter sweep from config");
    experiment_cmd->add_option("--config", x_config, "config file")->required();
    experiment_cmd->add_option("--threads", x_threads, "worker threads (overrides config)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*validate_cmd) {
            ltr::InfluenceGraph graph = load_graph(vg);
            ltr::ValidationReport report = ltr::validate(graph);
            std::cout << "nodes," << graph.node_count() << "\n";
            std::cout << "edges," << graph.edge_count() << "\n";
            std::cout << "violations," << report.size() << "\n";
            for (const auto& v : report) {
                std::cout << v.rule << "," << v.message << "\n";
            }
            return report.empty() ? 0 : 1;
        }

        if (*simulate_cmd) {
            ltr::InfluenceGraph graph = load_graph(sg);
            int m = infer_m(s_prefs);
            ltr::ControlInstance instance{graph,
                                          load_prefs(s_prefs, graph, m),
                                          ltr::parse_rule(s_rule, m),
                                          s_target,
                                          parse_alpha(s_alpha, m),
                                          graph.node_count(),
                                          s_mode == "destructive"
                                              ? ltr::ControlMode::Destructive
                                              : ltr::ControlMode::Constructive};
            instance.check();
            std::vector<int> seeds = parse_seeds(s_seeds, graph);
            std::cout << "run,target_score,winner,margin\n";
            for (int i = 0; i < s_runs; ++i) {
                ltr::Rng rng(ltr::derive_seed(s_seed, static_cast<uint64_t>(i)));
                ltr::DiffusionOutcome out = ltr::run_ltr(instance, seeds, rng);
                long long best = 0;
                int winner = -1;
                for (int c = 0; c < m; ++c) {
                    long long sc = ltr::total_score(out.shifted, instance.rule, c);
                    if (winner < 0 || sc > best) {
                        best = sc;
                        winner = c;
                    }
                }
                std::cout << i << ','
                          << ltr::total_score(out.shifted, instance.rule, s_target) << ','
                          << winner << ','
                          << ltr::margin(out.shifted, instance.rule, s_target) << "\n";
            }
            return 0;
        }

        if (*optimize_cmd) {
            ltr::InfluenceGraph graph = load_graph(og);
            int m = infer_m(o_prefs);
            ltr::ControlInstance instance{graph,
                                          load_prefs(o_prefs, graph, m),
                                          ltr::parse_rule(o_rule, m),
                                          o_target,
                                          parse_alpha(o_alpha, m),
                                          o_budget,
                                          o_mode == "destructive"
                                              ? ltr::ControlMode::Destructive
                                              : ltr::ControlMode::Constructive};
            instance.check();
            ltr::Estimator est{o_samples, o_seed, true};
            ltr::SeedSet seeds = ltr::solve(instance, est);
            double f = ltr::estimate_score(instance, seeds.nodes, est);
            std::cout << "step,node,label,marginal_gain\n";
            for (size_t i = 0; i < seeds.nodes.size(); ++i) {
                std::cout << i + 1 << ',' << seeds.nodes[i] << ','
                          << graph.label(seeds.nodes[i]) << ','
                          << ltr::format_double(seeds.gains[i]) << "\n";
            }
            std::cout << "estimated_score," << ltr::format_double(f) << "\n";
            return 0;
        }

        if (*evaluate_cmd) {
            ltr::InfluenceGraph graph = load_graph(eg);
            int m = infer_m(e_prefs);
            ltr::ControlInstance instance{graph,
                                          load_prefs(e_prefs, graph, m),
                                          ltr::parse_rule(e_rule, m),
                                          e_target,
                                          parse_alpha(e_alpha, m),
                                          graph.node_count(),
                                          e_mode == "destructive"
                                              ? ltr::ControlMode::Destructive
                                              : ltr::ControlMode::Constructive};
            instance.check();
            std::vector<int> seeds = parse_seeds(e_seeds, graph);
            ltr::Estimator est{e_samples, e_seed, true};
            ltr::MovReport rep =
                ltr::evaluate(instance, seeds, est, e_pov_runs,
                              ltr::derive_seed(e_seed, 0x9e5ULL), resolve_threads(e_threads));
            std::cout << "metric,value\n";
            std::cout << "expected_mov," << ltr::format_double(rep.expected_mov) << "\n";
            std::cout << "stderr," << ltr::format_double(rep.stderr_) << "\n";
            std::cout << "mov_samples," << rep.mov_samples << "\n";
            std::cout << "pov," << ltr::format_double(rep.pov) << "\n";
            std::cout << "pov_runs," << rep.pov_runs << "\n";
            std::cout << "mu_empty," << rep.mu_empty << "\n";
            std::cout << "sim_mov_mean," << ltr::format_double(rep.sim_mov_mean) << "\n";
            std::cout << "sim_mov_std," << ltr::format_double(rep.sim_mov_std) << "\n";
            std::cout << "reported_mov," << ltr::format_double(rep.reported_mov) << "\n";
            for (int c = 0; c < m; ++c) {
                std::cout << "expected_score_c" << c << ','
                          << ltr::format_double(rep.expected_scores[c]) << "\n";
            }
            return 0;
        }

        if (*experiment_cmd) {
            std::ifstream in(x_config);
            if (!in) throw std::runtime_error("cannot open config file: " + x_config);
            ltr::ExperimentConfig cfg = ltr::parse_config(in);
            int threads = x_threads > 0 ? x_threads : 0;
            if (threads == 0 && std::getenv("LTR_THREADS")) {
                threads = resolve_threads(0);
            }
            if (threads > 0) cfg.threads = threads;
            ltr::ExperimentResult result = ltr::run_experiment(cfg);
            std::cerr << "wrote " << result.detail.size() << " detail rows and "
                      << result.aggregate.size() << " aggregate rows to " << cfg.output
                      << "\n";
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

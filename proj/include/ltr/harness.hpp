#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ltr/evaluation.hpp"

namespace ltr {

// Flat key=value experiment description; lists are comma separated.
struct ExperimentConfig {
    std::string graph_path;
    bool undirected = false;
    WeightMode weights = WeightMode::RandomNormalized;
    int target = 0;
    int m = 2;
    std::vector<std::string> rules = {"plurality"};
    std::vector<int> budgets = {1};
    std::vector<double> alphas = {1.0};
    int permutations = 1;   // preference re-randomizations (paper: 10)
    int runs = 20;          // simulation runs per cell (paper: 20)
    int samples = 256;      // estimator live-edge samples
    uint64_t seed = 0;
    std::vector<std::string> methods = {"greedy"};  // greedy|random|degree
    ControlMode mode = ControlMode::Constructive;
    std::string output = ".";
    bool plots = false;
    int threads = 1;

    void validate_fields() const;  // throws std::invalid_argument
};

ExperimentConfig parse_config(std::istream& in);

// One independent uniform ranking per node via unbiased shuffles.
PreferenceProfile assign_random_preferences(int node_count, int m, uint64_t seed);

struct DetailRow {
    std::string rule;
    int budget;
    double alpha;
    int perm;
    std::string method;
    double pov;
    double mov_mean;  // simulation mean of mu(empty)-mu(A0) (sign per mode)
    double mov_std;
    double expected_mov;  // closed-form live-edge estimate
    double expected_mov_stderr;
    double reported_mov;  // mean of -mu(A0), the experiment-table form
    long long mu_empty;
};

struct AggregateRow {
    std::string rule;
    int budget;
    double alpha;
    std::string method;
    int cells;        // number of permutations averaged
    double pov_mean;
    double mov_mu;    // mean over permutations of mov_mean
    double mov_sigma;  // mean over permutations of mov_std
    double mov_stderr;  // stderr of mov_mu
};

struct ExperimentResult {
    std::vector<DetailRow> detail;
    std::vector<AggregateRow> aggregate;
};

// Runs the full sweep on an already-loaded graph. Cells execute in
// parallel into indexed slots; CSVs (results_detail.csv,
// results_aggregate.csv, optional plots/*.svg) are written in cell-index
// order afterwards, so output bytes do not depend on the thread count.
// Pass an empty config.output to skip file emission.
ExperimentResult run_experiment(const ExperimentConfig& config,
                                const InfluenceGraph& graph);

// Loads config.graph_path first (weights derived from config.seed).
ExperimentResult run_experiment(const ExperimentConfig& config);

void write_detail_csv(std::ostream& out, const std::vector<DetailRow>& rows);
void write_aggregate_csv(std::ostream& out, const std::vector<AggregateRow>& rows);

}  // namespace ltr

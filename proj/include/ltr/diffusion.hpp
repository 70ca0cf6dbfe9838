#pragma once

#include <span>
#include <vector>

#include "ltr/election.hpp"
#include "ltr/graph.hpp"
#include "ltr/rng.hpp"

namespace ltr {

// Per-position shift rate alpha(1..m), each entry in [0,1].
class AlphaTable {
public:
    static AlphaTable constant(int m, double a);
    static AlphaTable custom(std::vector<double> values);

    double at(int position) const { return values_[position - 1]; }
    int size() const { return static_cast<int>(values_.size()); }
    const std::vector<double>& values() const { return values_; }

private:
    explicit AlphaTable(std::vector<double> values);
    std::vector<double> values_;
};

enum class ControlMode { Constructive, Destructive };

// Binds every ingredient of the control problem. check() enforces the
// cross-field invariants (budget <= |V|, alpha length = m, node counts
// agree) and throws std::invalid_argument otherwise.
struct ControlInstance {
    InfluenceGraph graph;
    PreferenceProfile profile;
    ScoringRule rule;
    int target;
    AlphaTable alpha;
    int budget;
    ControlMode mode = ControlMode::Constructive;

    void check() const;
};

struct LtmResult {
    std::vector<char> active;  // mask over node ids
    int rounds;
};

struct DiffusionOutcome {
    std::vector<char> active;
    PreferenceProfile shifted;
    int rounds;
};

// Synchronous LTM: v activates once the weight of in-neighbors active at
// the previous round reaches its threshold. Quiesces within |V| rounds.
LtmResult run_ltm(const InfluenceGraph& graph, std::span<const int> seeds,
                  std::span<const double> thresholds);

// pi-up = min(position-1, floor(alpha_r * active_weight / threshold)).
int shift_up(int position, double alpha_r, double threshold, double active_weight);

// pi-down = min(m-position, floor(alpha_r * active_weight / threshold)).
int shift_down(int position, double alpha_r, double threshold, double active_weight, int m);

// Deterministic core: activation thresholds and per-node shift draws are
// supplied by the caller. The shift draw is a fresh uniform independent
// of the activation threshold (see run_ltr).
DiffusionOutcome run_ltr_fixed(const ControlInstance& instance, std::span<const int> seeds,
                               std::span<const double> thresholds,
                               std::span<const double> shift_draws);

// Full LTR: samples activation thresholds uniform on (0,1], runs LTM,
// then every node with active in-neighbors and a shiftable position
// moves the target by shift_up / shift_down using an independent uniform
// shift draw. Draw order is fixed (thresholds by node id, then shift
// draws by node id) so results depend only on (instance, seeds, rng).
DiffusionOutcome run_ltr(const ControlInstance& instance, std::span<const int> seeds,
                         Rng& rng);

}  // namespace ltr

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <map>

#include "doctest.h"
#include "ltr/diffusion.hpp"
#include "support/oracle.hpp"

using namespace ltr;

namespace {

ControlInstance two_node_instance(double b, double alpha = 1.0) {
    // node 0 ranks the target (candidate 0) first, node 1 ranks it second
    InfluenceGraph g(2, {{0, 1, b}});
    PreferenceProfile p(2, {{0, 1}, {1, 0}});
    return ControlInstance{std::move(g), std::move(p), ScoringRule::plurality(2), 0,
                           AlphaTable::constant(2, alpha), 2, ControlMode::Constructive};
}

}  // namespace

TEST_CASE("run_ltm examples") {
    InfluenceGraph chain(3, {{0, 1, 1.0}, {1, 2, 1.0}});
    std::vector<double> t{0.9, 0.9, 0.9};
    std::vector<int> seeds{0};
    LtmResult r = run_ltm(chain, seeds, t);
    CHECK(r.active == std::vector<char>{1, 1, 1});
    CHECK(r.rounds <= 3);

    LtmResult empty = run_ltm(chain, std::vector<int>{}, t);
    CHECK(empty.active == std::vector<char>{0, 0, 0});

    InfluenceGraph weak(2, {{0, 1, 0.4}});
    std::vector<double> t2{0.5, 0.5};
    CHECK(run_ltm(weak, seeds, t2).active == std::vector<char>{1, 0});
}

TEST_CASE("run_ltm rejects bad thresholds and seeds") {
    InfluenceGraph g(2, {{0, 1, 0.5}});
    std::vector<int> seeds{0};
    CHECK_THROWS_AS(run_ltm(g, seeds, std::vector<double>{0.0, 0.5}),
                    std::invalid_argument);
    CHECK_THROWS_AS(run_ltm(g, seeds, std::vector<double>{0.5}), std::invalid_argument);
    CHECK_THROWS_AS(run_ltm(g, std::vector<int>{5}, std::vector<double>{0.5, 0.5}),
                    std::invalid_argument);
}

TEST_CASE("run_ltm is monotone in seeds for fixed thresholds") {
    Rng rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        ControlInstance inst = oracle::random_tiny_instance(rng);
        int n = inst.graph.node_count();
        std::vector<double> t(n);
        for (double& x : t) x = rng.uniform01();
        std::vector<int> small{0};
        std::vector<int> big{0, n - 1};
        LtmResult a = run_ltm(inst.graph, small, t);
        LtmResult b = run_ltm(inst.graph, big, t);
        for (int v = 0; v < n; ++v) {
            if (a.active[v]) CHECK(b.active[v]);
        }
        CHECK(a.rounds <= n);
    }
}

TEST_CASE("shift_up examples") {
    CHECK(shift_up(4, 0.8, 0.3, 0.5) == 1);
    CHECK(shift_up(4, 0.8, 0.1, 0.5) == 3);
    CHECK(shift_up(4, 0.8, 0.5, 0.0) == 0);
    CHECK_THROWS_AS(shift_up(1, 0.8, 0.5, 0.5), std::invalid_argument);
}

TEST_CASE("shift_down examples") {
    CHECK(shift_down(2, 1.0, 0.2, 0.9, 5) == 3);
    CHECK(shift_down(2, 0.5, 0.6, 0.5, 3) == 0);
    CHECK(shift_down(2, 0.5, 0.6, 0.0, 5) == 0);
    CHECK_THROWS_AS(shift_down(3, 0.5, 0.6, 0.5, 3), std::invalid_argument);
}

TEST_CASE("run_ltr: weight-1 edge always lifts the target to first") {
    ControlInstance inst = two_node_instance(1.0);
    std::vector<int> seeds{0};
    for (int i = 0; i < 200; ++i) {
        Rng rng(derive_seed(99, i));
        DiffusionOutcome out = run_ltr(inst, seeds, rng);
        CHECK(out.shifted.position_of(1, 0) == 1);
    }
}

TEST_CASE("run_ltr: empty seeds leave the profile unchanged") {
    Rng master(5);
    for (int trial = 0; trial < 20; ++trial) {
        ControlInstance inst = oracle::random_tiny_instance(master);
        Rng rng(derive_seed(7, trial));
        DiffusionOutcome out = run_ltr(inst, std::vector<int>{}, rng);
        for (int v = 0; v < inst.graph.node_count(); ++v) {
            CHECK(out.shifted.ranking(v) == inst.profile.ranking(v));
        }
    }
}

TEST_CASE("run_ltr: half-weight edge flips with probability one half") {
    ControlInstance inst = two_node_instance(0.5);
    std::vector<int> seeds{0};
    const int runs = 100000;
    int flips = 0;
    for (int i = 0; i < runs; ++i) {
        Rng rng(derive_seed(123, i));
        if (run_ltr(inst, seeds, rng).shifted.position_of(1, 0) == 1) ++flips;
    }
    double freq = static_cast<double>(flips) / runs;
    double sigma = std::sqrt(0.25 / runs);
    CHECK(std::abs(freq - 0.5) <= 3 * sigma);
}

TEST_CASE("constructive shifts never lower the target's score") {
    Rng master(21);
    for (int trial = 0; trial < 40; ++trial) {
        ControlInstance inst = oracle::random_tiny_instance(master);
        std::vector<int> seeds{static_cast<int>(master.below(inst.graph.node_count()))};
        Rng rng(derive_seed(31, trial));
        DiffusionOutcome out = run_ltr(inst, seeds, rng);
        for (int v = 0; v < inst.graph.node_count(); ++v) {
            CHECK(out.shifted.position_of(v, inst.target) <=
                  inst.profile.position_of(v, inst.target));
        }
    }
}

TEST_CASE("destructive shifts never raise the target's position") {
    Rng master(22);
    for (int trial = 0; trial < 40; ++trial) {
        ControlInstance inst = oracle::random_tiny_instance(master);
        inst.mode = ControlMode::Destructive;
        std::vector<int> seeds{static_cast<int>(master.below(inst.graph.node_count()))};
        Rng rng(derive_seed(32, trial));
        DiffusionOutcome out = run_ltr(inst, seeds, rng);
        for (int v = 0; v < inst.graph.node_count(); ++v) {
            CHECK(out.shifted.position_of(v, inst.target) >=
                  inst.profile.position_of(v, inst.target));
        }
    }
}

TEST_CASE("run_ltr_fixed is deterministic") {
    ControlInstance inst = two_node_instance(0.7, 0.6);
    std::vector<int> seeds{0};
    std::vector<double> t{0.4, 0.3};
    std::vector<double> s{0.9, 0.2};
    DiffusionOutcome a = run_ltr_fixed(inst, seeds, t, s);
    DiffusionOutcome b = run_ltr_fixed(inst, seeds, t, s);
    CHECK(a.active == b.active);
    for (int v = 0; v < 2; ++v) CHECK(a.shifted.ranking(v) == b.shifted.ranking(v));
}

TEST_CASE("instance cross-field validation") {
    ControlInstance inst = two_node_instance(0.5);
    inst.budget = 3;
    CHECK_THROWS_AS(inst.check(), std::invalid_argument);
    inst.budget = 1;
    inst.target = 5;
    CHECK_THROWS_AS(inst.check(), std::invalid_argument);
}

TEST_CASE("alpha table validation") {
    CHECK_THROWS_AS(AlphaTable::custom({0.5, 1.2}), std::invalid_argument);
    CHECK_THROWS_AS(AlphaTable::custom({}), std::invalid_argument);
    CHECK(AlphaTable::constant(3, 0.4).at(2) == 0.4);
}

TEST_CASE("Theorem 1: live-edge reachable sets match LTM active sets") {
    // fixed 3-node instance, compare the distribution over active sets
    InfluenceGraph g(3, {{0, 1, 0.5}, {0, 2, 0.3}, {1, 2, 0.4}});
    std::vector<int> seeds{0};
    const int n = 3;

    std::map<int, double> exact;
    enumerate_live_edges(g, [&](const LiveEdgeGraph& le, double p) {
        std::vector<char> r = reachable(le, n, seeds);
        int key = r[0] | (r[1] << 1) | (r[2] << 2);
        exact[key] += p;
    });

    const int runs = 100000;
    std::map<int, int> counts;
    for (int i = 0; i < runs; ++i) {
        Rng rng(derive_seed(777, i));
        std::vector<double> t(n);
        for (double& x : t) x = rng.uniform01();
        LtmResult res = run_ltm(g, seeds, t);
        int key = res.active[0] | (res.active[1] << 1) | (res.active[2] << 2);
        counts[key]++;
    }
    for (const auto& [key, p] : exact) {
        double freq = static_cast<double>(counts[key]) / runs;
        double sigma = std::sqrt(std::max(p * (1 - p), 1e-12) / runs);
        CHECK(std::abs(freq - p) <= 3 * sigma + 1e-9);
    }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "support/oracle.hpp"

using namespace ltr;

namespace {

// Star: center 0 feeds 3 leaves with weight 1; all leaves rank the target
// (candidate 0) second, the center ranks it first.
ControlInstance star_instance(int budget = 1) {
    InfluenceGraph g(4, {{0, 1, 1.0}, {0, 2, 1.0}, {0, 3, 1.0}});
    PreferenceProfile p(2, {{0, 1}, {1, 0}, {1, 0}, {1, 0}});
    return ControlInstance{std::move(g), std::move(p), ScoringRule::plurality(2), 0,
                           AlphaTable::constant(2, 1.0), budget,
                           ControlMode::Constructive};
}

}  // namespace

TEST_CASE("estimate_score: empty seeds give exactly F(empty)") {
    Rng master(41);
    for (int trial = 0; trial < 10; ++trial) {
        ControlInstance inst = oracle::random_tiny_instance(master);
        Estimator est{64, static_cast<uint64_t>(trial), true};
        CHECK(estimate_score(inst, std::vector<int>{}, est) ==
              doctest::Approx(static_cast<double>(
                                  total_score(inst.profile, inst.rule, inst.target)))
                  .epsilon(1e-12));
    }
}

TEST_CASE("estimate_score on a deterministic instance") {
    InfluenceGraph g(2, {{0, 1, 1.0}});
    PreferenceProfile p(2, {{0, 1}, {1, 0}});
    ControlInstance inst{g, p, ScoringRule::plurality(2), 0,
                         AlphaTable::constant(2, 1.0), 2, ControlMode::Constructive};
    Estimator est{16, 5, true};
    CHECK(estimate_score(inst, std::vector<int>{0}, est) ==
          doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("estimate_score tracks the exact oracle") {
    Rng master(43);
    int ok = 0, total = 0;
    for (int trial = 0; trial < 100; ++trial) {
        ControlInstance inst = oracle::random_tiny_instance(master);
        std::vector<int> seeds{static_cast<int>(master.below(inst.graph.node_count()))};
        double exact = exact_expected_score(inst, seeds);
        Estimator est{512, static_cast<uint64_t>(trial) + 1000, true};
        double estimate = estimate_score(inst, seeds, est);
        // Per-sample scores are bounded by n * f_max; a generous stderr
        // proxy keeps the check sharp without recomputing sample stddev.
        double bound = inst.graph.node_count() *
                       static_cast<double>(inst.rule.max_score()) / std::sqrt(512.0);
        ++total;
        if (std::abs(estimate - exact) <= 3 * bound) ++ok;
    }
    CHECK(ok >= total * 99 / 100);
}

TEST_CASE("greedy_select picks the star center") {
    SeedSet s = greedy_select(star_instance(1), Estimator{64, 7, true});
    REQUIRE(s.nodes.size() == 1);
    CHECK(s.nodes[0] == 0);
    CHECK(s.gains[0] == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("greedy_select edge cases") {
    CHECK(greedy_select(star_instance(0), Estimator{16, 1, true}).nodes.empty());

    // no edges and target already first everywhere: zero gain, early stop
    InfluenceGraph g(3, {});
    PreferenceProfile p(2, {{0, 1}, {0, 1}, {0, 1}});
    ControlInstance inst{g, p, ScoringRule::plurality(2), 0,
                         AlphaTable::constant(2, 1.0), 3, ControlMode::Constructive};
    CHECK(greedy_select(inst, Estimator{16, 2, true}).nodes.empty());

    ControlInstance bad = star_instance(5);
    CHECK_THROWS_AS(greedy_select(bad, Estimator{16, 3, true}), std::invalid_argument);
    CHECK_THROWS_AS(greedy_select(star_instance(1), Estimator{0, 3, true}),
                    std::invalid_argument);
}

TEST_CASE("greedy gains are nonincreasing and deterministic") {
    Rng master(47);
    for (int trial = 0; trial < 25; ++trial) {
        ControlInstance inst = oracle::random_tiny_instance(master);
        inst.budget = inst.graph.node_count();
        Estimator est{128, static_cast<uint64_t>(trial), true};
        SeedSet a = greedy_select(inst, est);
        SeedSet b = greedy_select(inst, est);
        CHECK(a.nodes == b.nodes);
        for (size_t i = 0; i + 1 < a.gains.size(); ++i) {
            CHECK(a.gains[i] >= a.gains[i + 1] - 1e-9);
        }
        for (double gain : a.gains) CHECK(gain >= 0.0);
    }
}

TEST_CASE("estimated objective is monotone and submodular on fixed samples") {
    Rng master(53);
    for (int trial = 0; trial < 20; ++trial) {
        ControlInstance inst = oracle::random_tiny_instance(master);
        const int n = inst.graph.node_count();
        SampleSet set(inst, Estimator{64, static_cast<uint64_t>(trial), true});
        for (const auto& S : oracle::subsets(n, 1)) {
            for (const auto& T : oracle::subsets(n, 2)) {
                if (T[0] != S[0] && T[1] != S[0]) continue;  // need S subset of T
                CHECK(set.score(T) >= set.score(S) - 1e-9);
                for (int v = 0; v < n; ++v) {
                    if (v == T[0] || v == T[1]) continue;
                    std::vector<int> Sv = S;
                    Sv.push_back(v);
                    std::vector<int> Tv = T;
                    Tv.push_back(v);
                    CHECK(set.score(Sv) - set.score(S) >=
                          set.score(Tv) - set.score(T) - 1e-9);
                }
            }
        }
    }
}

TEST_CASE("destructive_transform examples") {
    InfluenceGraph g(2, {{0, 1, 0.5}});
    PreferenceProfile p(3, {{0, 1, 2}, {1, 2, 0}});
    ControlInstance borda_inst{g, p, ScoringRule::borda(3), 2,
                               AlphaTable::custom({0.1, 0.5, 0.9}), 1,
                               ControlMode::Destructive};
    ControlInstance t1 = destructive_transform(borda_inst);
    CHECK(t1.mode == ControlMode::Constructive);
    CHECK(t1.rule.scores() == std::vector<long long>{2, 1, 0});  // borda -> borda
    CHECK(t1.profile.ranking(0) == std::vector<int>{2, 1, 0});   // reversal
    CHECK(t1.alpha.at(1) == 0.9);
    CHECK(t1.alpha.at(3) == 0.1);

    ControlInstance plur_inst{g, p, ScoringRule::plurality(3), 2,
                              AlphaTable::constant(3, 1.0), 1, ControlMode::Destructive};
    CHECK(destructive_transform(plur_inst).rule.scores() ==
          std::vector<long long>{1, 1, 0});  // plurality -> 1-veto

    CHECK_THROWS_AS(destructive_transform(t1), std::invalid_argument);
}

TEST_CASE("Lemma 3 identity: exact destructive loss equals transformed gain") {
    Rng master(59);
    for (int trial = 0; trial < 40; ++trial) {
        ControlInstance inst = oracle::random_tiny_instance(master);
        inst.mode = ControlMode::Destructive;
        ControlInstance transformed = destructive_transform(inst);
        const int n = inst.graph.node_count();
        double fd_empty = exact_expected_score(inst, std::vector<int>{});
        double ft_empty = exact_expected_score(transformed, std::vector<int>{});
        for (int b = 0; b <= n; ++b) {
            for (const auto& seeds : oracle::subsets(n, b)) {
                double lhs = fd_empty - exact_expected_score(inst, seeds);
                double rhs = exact_expected_score(transformed, seeds) - ft_empty;
                CHECK(std::abs(lhs - rhs) <= 1e-9);
            }
        }
    }
}

TEST_CASE("solve handles both modes") {
    CHECK(solve(star_instance(1), Estimator{64, 7, true}).nodes ==
          std::vector<int>{0});

    // destructive instance whose reversal is the star example
    InfluenceGraph g(4, {{0, 1, 1.0}, {0, 2, 1.0}, {0, 3, 1.0}});
    PreferenceProfile p(2, {{1, 0}, {0, 1}, {0, 1}, {0, 1}});
    ControlInstance dest{g, p, ScoringRule::plurality(2), 0,
                         AlphaTable::constant(2, 1.0), 1, ControlMode::Destructive};
    CHECK(solve(dest, Estimator{64, 7, true}).nodes == std::vector<int>{0});
}

TEST_CASE("full budget seeds everything useful") {
    ControlInstance inst = star_instance(4);
    SeedSet s = solve(inst, Estimator{32, 11, true});
    // seeding the center already reaches every leaf; further gains are 0
    CHECK(s.nodes == std::vector<int>{0});
    Estimator est{32, 11, true};
    CHECK(estimate_score(inst, s.nodes, est) ==
          doctest::Approx(4.0).epsilon(1e-12));
}

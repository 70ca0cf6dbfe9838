#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ltr/graph.hpp"

namespace ltr {

// Per-node candidate rankings. Positions are 1-based: position 1 is the
// most preferred candidate. Immutable after construction; the diffusion
// code builds new profiles rather than mutating.
class PreferenceProfile {
public:
    // rankings[v] lists candidate ids most-preferred first.
    PreferenceProfile(int candidate_count, std::vector<std::vector<int>> rankings);

    int candidate_count() const { return m_; }
    int node_count() const { return static_cast<int>(order_.size()); }

    // pi_v(c) in {1,...,m}.
    int position_of(int node, int candidate) const {
        return position_[node][candidate];
    }
    int candidate_at(int node, int position) const {
        return order_[node][position - 1];
    }
    const std::vector<int>& ranking(int node) const { return order_[node]; }

private:
    int m_;
    std::vector<std::vector<int>> order_;     // order_[v][pos-1] = candidate
    std::vector<std::vector<int>> position_;  // position_[v][c] = pos (1-based)
};

// Nonincreasing position-to-points map. Scores stay integral so static
// tallies are exact; expected scores become reals downstream.
class ScoringRule {
public:
    static ScoringRule plurality(int m);
    static ScoringRule t_approval(int m, int t);
    static ScoringRule t_veto(int m, int t);
    static ScoringRule borda(int m);
    static ScoringRule custom(std::vector<long long> scores);

    int candidate_count() const { return m_; }
    long long score(int position) const;  // throws on position out of 1..m
    long long max_score() const { return scores_.empty() ? 0 : scores_.front(); }
    const std::vector<long long>& scores() const { return scores_; }
    const std::string& name() const { return name_; }

private:
    ScoringRule(std::vector<long long> scores, std::string name);
    int m_;
    std::vector<long long> scores_;
    std::string name_;
};

long long total_score(const PreferenceProfile& profile, const ScoringRule& rule,
                      int candidate);

// (best opponent score) - (target score); opponent ties broken by lowest
// candidate id. Negative when the target leads.
long long margin(const PreferenceProfile& profile, const ScoringRule& rule, int target);

// Moves target to new_position; candidates strictly between the old and
// new slots shift one place toward the vacated slot.
std::vector<int> apply_shift(const std::vector<int>& ranking, int target, int new_position);

// Parses "label: c2,c0,c1" lines (candidates most-preferred first; the c
// prefix is optional). Every graph node must appear exactly once.
PreferenceProfile load_preferences(std::istream& in, const InfluenceGraph& graph,
                                   int candidate_count);

// Parses "plurality", "borda", "approval:t", "veto:t", "custom:a,b,c".
ScoringRule parse_rule(const std::string& spec, int m);

}  // namespace ltr

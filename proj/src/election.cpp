#include "ltr/election.hpp"

#include <algorithm>
#include <istream>
#include <sstream>
#include <stdexcept>

namespace ltr {

PreferenceProfile::PreferenceProfile(int candidate_count,
                                     std::vector<std::vector<int>> rankings)
    : m_(candidate_count), order_(std::move(rankings)) {
    if (m_ < 2) throw std::invalid_argument("need at least 2 candidates");
    position_.assign(order_.size(), std::vector<int>(m_, 0));
    for (size_t v = 0; v < order_.size(); ++v) {
        if (static_cast<int>(order_[v].size()) != m_) {
            throw std::invalid_argument("ranking of node " + std::to_string(v) +
                                        " has wrong length");
        }
        for (int pos = 1; pos <= m_; ++pos) {
            int c = order_[v][pos - 1];
            if (c < 0 || c >= m_ || position_[v][c] != 0) {
                throw std::invalid_argument("ranking of node " + std::to_string(v) +
                                            " is not a permutation");
            }
            position_[v][c] = pos;
        }
    }
}

ScoringRule::ScoringRule(std::vector<long long> scores, std::string name)
    : m_(static_cast<int>(scores.size())), scores_(std::move(scores)), name_(std::move(name)) {
    if (m_ < 2) throw std::invalid_argument("scoring rule needs m >= 2");
    for (int i = 0; i < m_; ++i) {
        if (scores_[i] < 0) throw std::invalid_argument("scores must be non-negative");
        if (i + 1 < m_ && scores_[i] < scores_[i + 1]) {
            throw std::invalid_argument("scores must be nonincreasing");
        }
    }
}

ScoringRule ScoringRule::plurality(int m) {
    std::vector<long long> s(m, 0);
    s[0] = 1;
    return ScoringRule(std::move(s), "plurality");
}

ScoringRule ScoringRule::t_approval(int m, int t) {
    if (t < 1 || t > m) throw std::invalid_argument("t-approval needs 1 <= t <= m");
    std::vector<long long> s(m, 0);
    std::fill(s.begin(), s.begin() + t, 1);
    return ScoringRule(std::move(s), "approval:" + std::to_string(t));
}

ScoringRule ScoringRule::t_veto(int m, int t) {
    if (t < 0 || t >= m) throw std::invalid_argument("t-veto needs 0 <= t < m");
    std::vector<long long> s(m, 0);
    std::fill(s.begin(), s.begin() + (m - t), 1);
    return ScoringRule(std::move(s), "veto:" + std::to_string(t));
}

ScoringRule ScoringRule::borda(int m) {
    std::vector<long long> s(m);
    for (int l = 1; l <= m; ++l) s[l - 1] = m - l;
    return ScoringRule(std::move(s), "borda");
}

ScoringRule ScoringRule::custom(std::vector<long long> scores) {
    return ScoringRule(std::move(scores), "custom");
}

long long ScoringRule::score(int position) const {
    if (position < 1 || position > m_) {
        throw std::out_of_range("position " + std::to_string(position) +
                                " outside 1.." + std::to_string(m_));
    }
    return scores_[position - 1];
}

long long total_score(const PreferenceProfile& profile, const ScoringRule& rule,
                      int candidate) {
    if (candidate < 0 || candidate >= profile.candidate_count()) {
        throw std::out_of_range("candidate id out of range");
    }
    long long total = 0;
    for (int v = 0; v < profile.node_count(); ++v) {
        total += rule.score(profile.position_of(v, candidate));
    }
    return total;
}

long long margin(const PreferenceProfile& profile, const ScoringRule& rule, int target) {
    long long target_score = total_score(profile, rule, target);
    bool found = false;
    long long best = 0;
    for (int c = 0; c < profile.candidate_count(); ++c) {
        if (c == target) continue;
        long long s = total_score(profile, rule, c);
        if (!found || s > best) {  // ties keep the lowest id
            best = s;
            found = true;
        }
    }
    return best - target_score;
}

std::vector<int> apply_shift(const std::vector<int>& ranking, int target, int new_position) {
    int m = static_cast<int>(ranking.size());
    if (new_position < 1 || new_position > m) {
        throw std::out_of_range("new_position outside 1..m");
    }
    auto it = std::find(ranking.begin(), ranking.end(), target);
    if (it == ranking.end()) throw std::invalid_argument("target not in ranking");
    int old_idx = static_cast<int>(it - ranking.begin());
    int new_idx = new_position - 1;
    std::vector<int> out = ranking;
    if (new_idx < old_idx) {
        std::rotate(out.begin() + new_idx, out.begin() + old_idx, out.begin() + old_idx + 1);
    } else if (new_idx > old_idx) {
        std::rotate(out.begin() + old_idx, out.begin() + old_idx + 1, out.begin() + new_idx + 1);
    }
    return out;
}

PreferenceProfile load_preferences(std::istream& in, const InfluenceGraph& graph,
                                   int candidate_count) {
    std::vector<std::vector<int>> rankings(graph.node_count());
    std::vector<char> seen(graph.node_count(), 0);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        size_t start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos || line[start] == '#') continue;
        size_t colon = line.find(':');
        if (colon == std::string::npos) {
            throw std::runtime_error("line " + std::to_string(lineno) + ": expected \"label: ...\"");
        }
        std::string label = line.substr(start, colon - start);
        while (!label.empty() && (label.back() == ' ' || label.back() == '\t')) label.pop_back();
        int v = graph.node_by_label(label);
        if (v < 0) {
            throw std::runtime_error("line " + std::to_string(lineno) + ": unknown node \"" +
                                     label + "\"");
        }
        if (seen[v]) {
            throw std::runtime_error("line " + std::to_string(lineno) + ": node \"" + label +
                                     "\" listed twice");
        }
        seen[v] = 1;
        std::vector<int> order;
        std::string token;
        std::istringstream rest(line.substr(colon + 1));
        while (std::getline(rest, token, ',')) {
            size_t b = token.find_first_not_of(" \t\r");
            size_t e = token.find_last_not_of(" \t\r");
            if (b == std::string::npos) {
                throw std::runtime_error("line " + std::to_string(lineno) + ": empty candidate");
            }
            std::string t = token.substr(b, e - b + 1);
            if (!t.empty() && (t[0] == 'c' || t[0] == 'C')) t = t.substr(1);
            try {
                order.push_back(std::stoi(t));
            } catch (const std::exception&) {
                throw std::runtime_error("line " + std::to_string(lineno) +
                                         ": bad candidate token \"" + token + "\"");
            }
        }
        rankings[v] = std::move(order);
    }
    for (int v = 0; v < graph.node_count(); ++v) {
        if (!seen[v]) {
            throw std::runtime_error("no preference list for node \"" + graph.label(v) + "\"");
        }
    }
    return PreferenceProfile(candidate_count, std::move(rankings));
}

ScoringRule parse_rule(const std::string& spec, int m) {
    if (spec == "plurality") return ScoringRule::plurality(m);
    if (spec == "borda") return ScoringRule::borda(m);
    auto colon = spec.find(':');
    if (colon != std::string::npos) {
        std::string head = spec.substr(0, colon);
        std::string tail = spec.substr(colon + 1);
        if (head == "approval") return ScoringRule::t_approval(m, std::stoi(tail));
        if (head == "veto") return ScoringRule::t_veto(m, std::stoi(tail));
        if (head == "custom") {
            std::vector<long long> scores;
            std::istringstream ss(tail);
            std::string tok;
            while (std::getline(ss, tok, ',')) scores.push_back(std::stoll(tok));
            if (static_cast<int>(scores.size()) != m) {
                throw std::invalid_argument("custom rule needs exactly m scores");
            }
            return ScoringRule::custom(std::move(scores));
        }
    }
    throw std::invalid_argument("unknown rule \"" + spec + "\"");
}

}  // namespace ltr

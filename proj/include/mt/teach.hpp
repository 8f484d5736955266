#pragma once

#include <deque>
#include <limits>
#include <optional>
#include <unordered_map>
#include <vector>

#include "mt/core.hpp"
#include "mt/prefs.hpp"

namespace mt {

// Costs are positive; kUnreachable marks targets no teacher strategy can force.
inline constexpr int kUnreachable = std::numeric_limits<int>::max();

struct TeachingPlan {
    Index target = 0;
    std::vector<Example> steps;
    std::vector<Index> trace;  // h0 followed by the learner's hypothesis after each step
    int cost = 0;
};

struct CostOptions {
    // Report 0 instead of the recurrence's 1 when the learner already holds the target.
    bool zero_at_target = false;
    // Exhaustive fallback limit on explored (version space, hypothesis) states.
    std::size_t state_cap = 4'000'000;
};

// Worst-case steering cost D_σ(V, h, h*) for one fixed target, with memoised bounds.
class CostSolver {
public:
    struct Move {
        Example z;
        VersionSpace next;
        std::vector<Index> candidates;  // preferred set after z, ascending
    };

    CostSolver(const PreferenceFunction& s, const HypothesisClass& c, Index target,
               CostOptions opt = {});

    int cost(const VersionSpace& V, Index h);
    // Teacher moves from (V, h): one example per instance, labelled by the target.
    std::vector<Move> moves(const VersionSpace& V, Index h);

    Index target() const { return target_; }
    std::size_t states() const { return nodes_.size(); }

private:
    struct Node {
        Bits V;
        Index h = 0;
        int lo = 1, hi = kUnreachable;
        bool expanded = false, direct = false;
        std::vector<std::vector<std::size_t>> succ;  // one list per non-finishing move
    };
    struct KeyHash {
        std::size_t operator()(const std::pair<Bits, Index>& k) const noexcept {
            return std::hash<Bits>{}(k.first) * 1000003u + k.second;
        }
    };

    std::size_t node(const Bits& V, Index h);
    void expand(std::size_t id);
    bool within(std::size_t id, int b);
    void retrograde(std::size_t root);

    const PreferenceFunction& s_;
    const HypothesisClass& c_;
    Index target_;
    CostOptions opt_;
    int deepening_limit_;
    std::deque<Node> nodes_;
    std::unordered_map<std::pair<Bits, Index>, std::size_t, KeyHash> ids_;
};

int d_sigma(const PreferenceFunction& s, const HypothesisClass& c, const VersionSpace& H, Index h,
            Index h_star, CostOptions opt = {});
int td_sigma(const PreferenceFunction& s, const HypothesisClass& c, Index h0,
             std::vector<int>* per_target = nullptr, CostOptions opt = {});

TeachingPlan extract_plan(const PreferenceFunction& s, const HypothesisClass& c, Index h0,
                          Index h_star, CostOptions opt = {});

enum class TieMode { LowestIndex, Adversarial };

struct Trace {
    std::vector<Index> hypotheses;       // h0, then one entry per applied step
    std::vector<VersionSpace> spaces;    // ℋ, then one entry per applied step
    std::optional<std::size_t> halted_at;  // step whose example emptied the version space
};

Trace simulate(const PreferenceFunction& s, const HypothesisClass& c, Index h0,
               const std::vector<Example>& steps, TieMode tie, Index target = npos);

inline constexpr std::size_t kDefaultGlobalOracleCap = 8;
int sigma_td_global_bruteforce(const HypothesisClass& c, Index h0,
                               std::size_t cap = kDefaultGlobalOracleCap,
                               std::vector<Rank>* best_order = nullptr);

}  // namespace mt

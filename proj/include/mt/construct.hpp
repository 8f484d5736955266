#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mt/core.hpp"
#include "mt/prefs.hpp"
#include "mt/teach.hpp"

namespace mt {

struct Block {
    VersionSpace members;
    Index pivot = npos;  // npos for the final {h_H} block
    bool label = false;
};

struct Partition {
    std::vector<Block> blocks;
    Index reference = 0;
    InstanceSet source;
};

Partition partition_class(const VersionSpace& H, const InstanceSet& xbar, Index h_ref,
                          const HypothesisClass& c);

// One call of the recursive construction.
struct LvsLevel {
    std::size_t depth = 0;
    VersionSpace V;  // learner's version space on entry
    VersionSpace H;  // hypotheses this call is responsible for
    InstanceSet X;   // instances available to the call
    InstanceSet xbar;
    Index reference = 0;
    Partition partition;
    std::vector<VersionSpace> next;  // V ∩ ℋ({(x_j, y_j)}) per non-final block
};

struct LvsConstruction {
    PreferenceFunction sigma;
    std::map<Index, TeachingPlan> plans;
    std::vector<std::size_t> index;  // I(h), 1-based
    std::vector<LvsLevel> levels;
    Index h0 = 0;
    std::vector<std::string> notes;
};

// root_xbar replaces the deterministic compact set of the top-level call.
LvsConstruction build_sigma_lvs(const HypothesisClass& c, Index h0,
                                const std::optional<InstanceSet>& root_xbar = std::nullopt);

struct PowersetConstruction {
    std::size_t k = 0;
    std::size_t depth = 0;  // deepest node of the teaching tree
    Index h0 = 0;
    PreferenceFunction sigma;
    std::map<Index, TeachingPlan> plans;
    std::vector<Index> parent;                 // npos for the root
    std::vector<std::vector<Index>> children;  // in rank order
};

// Smallest D with 1 + k + k(k-1) + ... (D terms) >= 2^k.
std::size_t powerset_tree_min_depth(std::size_t k);

PowersetConstruction build_sigma_local_powerset(std::size_t k, Index h0);

}  // namespace mt

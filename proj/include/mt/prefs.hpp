#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "mt/core.hpp"

namespace mt {

using Rank = std::int64_t;

enum class Family { Const, Global, Local, Gvs, Lvs };

std::string family_name(Family f);
Family parse_family(const std::string& s);

// Lazily expanded entry family: applies to every version space V with
// core ⊆ V ⊆ core ∪ optional and, when currents is non-empty, to current h ∈ currents.
struct SubsetRule {
    Index h_prime = 0;
    Bits core, optional, currents;
    Rank rank = 0;

    bool matches(const Bits& V, Index h) const;
};

class PreferenceFunction {
public:
    static PreferenceFunction constant(std::size_t n, Rank r = 0);
    static PreferenceFunction global(std::vector<Rank> ranks);
    // m[h][h'] is the rank of h' when the learner currently holds h.
    static PreferenceFunction local(const std::vector<std::vector<Rank>>& m);
    static PreferenceFunction gvs(std::size_t n, Rank default_rank);
    static PreferenceFunction lvs(std::size_t n, Rank self_rank, Rank other_rank);

    Family family() const { return family_; }
    std::size_t num_hypotheses() const { return n_; }

    // Gvs: current must be npos. Lvs: current is the learner's hypothesis.
    void set_entry(const Bits& V, Index current, Index h_prime, Rank r);
    std::optional<Rank> entry(const Bits& V, Index current, Index h_prime) const;
    void add_rule(SubsetRule r);

    // Raw lookup; no membership check on h_prime.
    Rank rank(Index h_prime, const Bits& V, Index h) const;
    // Ranks of every member of V, in member order.
    std::vector<Rank> ranks(const VersionSpace& V, Index h) const;

    Rank const_rank() const { return const_rank_; }
    const std::vector<Rank>& global_ranks() const { return global_; }
    Rank local_rank(Index h, Index h_prime) const { return local_[h * n_ + h_prime]; }
    Rank default_rank() const { return other_default_; }
    Rank self_default() const { return self_default_; }
    Rank other_default() const { return other_default_; }

    struct Row {
        Bits V;
        Index current = npos;
        std::map<Index, Rank> ranks;
    };
    // Exact entries in canonical order (by V key, then current).
    std::vector<Row> rows() const;
    const std::vector<SubsetRule>& rules() const { return rules_; }

private:
    struct Key {
        Bits V;
        Index h;
        bool operator==(const Key& o) const { return h == o.h && V == o.V; }
    };
    struct KeyHash {
        std::size_t operator()(const Key& k) const noexcept {
            return std::hash<Bits>{}(k.V) * 31 + k.h;
        }
    };

    void check_index(Index h) const;

    Family family_ = Family::Const;
    std::size_t n_ = 0;
    Rank const_rank_ = 0;
    std::vector<Rank> global_;
    std::vector<Rank> local_;
    Rank self_default_ = 0, other_default_ = 0;
    std::unordered_map<Key, std::map<Index, Rank>, KeyHash> entries_;
    std::vector<SubsetRule> rules_;
};

Rank evaluate(const PreferenceFunction& s, Index h_prime, const VersionSpace& H, Index h,
              const HypothesisClass& c);
// argmin of σ(·; V, h) over V.
VersionSpace preferred(const PreferenceFunction& s, const VersionSpace& V, Index h,
                       const HypothesisClass& c);
VersionSpace candidate_set(const PreferenceFunction& s, const VersionSpace& H, Index h,
                           const Example& z, const HypothesisClass& c);

PreferenceFunction hamming_local(const HypothesisClass& c);

struct CollusionReport {
    struct Counterexample {
        VersionSpace V;       // premise version space
        Index current = 0;    // learner's hypothesis before the premise step
        Index preferred = 0;  // the unique ĥ
        Example z;            // ĥ-consistent example that moves the learner; x = npos for S = ∅
        VersionSpace after;   // preferred set in V ∩ ℋ({z}) from ĥ
    };
    bool collusion_free = true;
    std::optional<Counterexample> counterexample;
    std::size_t version_spaces = 0;
    std::size_t states = 0;
};

inline constexpr std::size_t kDefaultCollusionCap = 1'000'000;

// All version spaces ℋ(Z), in breadth-first discovery order from ℋ.
std::vector<VersionSpace> reachable_version_spaces(const HypothesisClass& c,
                                                   std::size_t cap = kDefaultCollusionCap);

CollusionReport collusion_free_check(const PreferenceFunction& s, const HypothesisClass& c,
                                     std::size_t cap = kDefaultCollusionCap);

}  // namespace mt

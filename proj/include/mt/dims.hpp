#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "mt/core.hpp"

namespace mt {

// Per-hypothesis example sequences. Order matters only when replayed.
using TeacherMap = std::map<Index, std::vector<Example>>;

struct DimensionReport {
    std::size_t vcd = 0, td = 0, rtd = 0, nctd = 0;
    InstanceSet shattered;                   // a largest shattered set
    std::map<Index, std::vector<Example>> td_witness;
    std::map<Index, std::size_t> rtd_layer;  // peeling round per hypothesis
    TeacherMap nctd_witness;
};

std::size_t vcd(const VersionSpace& H, const InstanceSet& X, const HypothesisClass& c,
                InstanceSet* witness = nullptr);

std::vector<Example> minimal_teaching_set(Index h, const VersionSpace& H, const HypothesisClass& c);
std::size_t td(const VersionSpace& H, const HypothesisClass& c);
std::size_t rtd(const VersionSpace& H, const HypothesisClass& c,
                std::map<Index, std::size_t>* layers = nullptr);

struct NctdResult {
    std::size_t value = 0;
    TeacherMap witness;
};
inline constexpr std::size_t kDefaultNctdCap = 16;
NctdResult nctd(const VersionSpace& H, const HypothesisClass& c, std::size_t cap = kDefaultNctdCap);

// nullopt when T is non-clashing on H, else the first clashing pair.
std::optional<std::pair<Index, Index>> find_clash(const TeacherMap& T, const VersionSpace& H,
                                                  const HypothesisClass& c);
inline bool is_non_clashing(const TeacherMap& T, const VersionSpace& H, const HypothesisClass& c) {
    return !find_clash(T, H, c).has_value();
}

bool is_distinguishable(const InstanceSet& X, const VersionSpace& H, const HypothesisClass& c);
bool is_compact_distinguishable(const InstanceSet& X, const VersionSpace& H, const HypothesisClass& c);
InstanceSet compact_distinguishable_set(const VersionSpace& H, const InstanceSet& X,
                                        const HypothesisClass& c);

std::size_t sigma_td_lower_bound(std::size_t d);

DimensionReport dimension_report(const HypothesisClass& c, std::size_t nctd_cap = kDefaultNctdCap);

}  // namespace mt

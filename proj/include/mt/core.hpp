#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace mt {

using Bits = boost::dynamic_bitset<std::uint64_t>;
using Index = std::size_t;
// Sorted, duplicate-free list of instance indices.
using InstanceSet = std::vector<Index>;

inline constexpr Index npos = static_cast<Index>(-1);

struct input_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct capacity_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raised when a constructive procedure breaks one of its own guarantees.
struct construction_error : std::logic_error {
    using std::logic_error::logic_error;
};

struct Example {
    Index x = 0;
    bool y = false;
    auto operator<=>(const Example&) const = default;
};

class VersionSpace {
public:
    VersionSpace() = default;
    VersionSpace(Bits members, std::uint64_t class_id)
        : bits_(std::move(members)), class_id_(class_id) {}

    const Bits& bits() const { return bits_; }
    std::uint64_t class_id() const { return class_id_; }
    std::size_t universe() const { return bits_.size(); }

    std::size_t size() const { return bits_.count(); }
    bool empty() const { return bits_.none(); }
    bool contains(Index h) const { return h < bits_.size() && bits_.test(h); }
    Index first() const { return bits_.find_first(); }
    Index next(Index h) const { return bits_.find_next(h); }
    std::vector<Index> members() const;

    bool subset_of(const VersionSpace& other) const;
    VersionSpace operator&(const VersionSpace& other) const;
    VersionSpace operator|(const VersionSpace& other) const;
    VersionSpace operator-(const VersionSpace& other) const;
    VersionSpace with(Index h) const;
    VersionSpace without(Index h) const;

    // Canonical serialization: comma separated ascending indices.
    std::string key() const;

    bool operator==(const VersionSpace& o) const {
        return class_id_ == o.class_id_ && bits_ == o.bits_;
    }

private:
    void check_same(const VersionSpace& o) const;

    Bits bits_;
    std::uint64_t class_id_ = 0;
};

class HypothesisClass {
public:
    HypothesisClass(std::vector<Bits> rows, std::vector<std::string> instance_names = {},
                    std::vector<std::string> hypothesis_names = {});

    // Rows as strings of '0'/'1', leftmost character is instance 0.
    static HypothesisClass from_strings(const std::vector<std::string>& rows,
                                        std::vector<std::string> instance_names = {},
                                        std::vector<std::string> hypothesis_names = {});

    std::size_t num_instances() const { return num_instances_; }
    std::size_t num_hypotheses() const { return rows_.size(); }

    bool label(Index h, Index x) const;
    const Bits& row(Index h) const;
    // Hypotheses labelling x with 1, resp. 0.
    const Bits& ones(Index x) const { return ones_.at(x); }
    const Bits& zeros(Index x) const { return zeros_.at(x); }

    const std::string& instance_name(Index x) const { return instance_names_.at(x); }
    const std::string& hypothesis_name(Index h) const { return hypothesis_names_.at(h); }
    const std::vector<std::string>& instance_names() const { return instance_names_; }
    const std::vector<std::string>& hypothesis_names() const { return hypothesis_names_; }
    Index instance_index(std::string_view name) const;
    Index hypothesis_index(std::string_view name) const;

    std::string row_string(Index h) const;
    InstanceSet all_instances() const;

    VersionSpace all() const;
    VersionSpace none() const;
    VersionSpace subset(const std::vector<Index>& hs) const;

    std::uint64_t id() const { return id_; }
    void check(const VersionSpace& v) const;

private:
    std::size_t num_instances_ = 0;
    std::vector<Bits> rows_;
    std::vector<Bits> ones_, zeros_;
    std::vector<std::string> instance_names_, hypothesis_names_;
    std::uint64_t id_ = 0;
};

struct PatternSet {
    InstanceSet instances;
    std::set<Bits> patterns;
    std::size_t size() const { return patterns.size(); }
};

bool consistent(Index h, const Example& z, const HypothesisClass& c);
bool consistent(Index h, const std::vector<Example>& Z, const HypothesisClass& c);
VersionSpace version_space(const std::vector<Example>& Z, const HypothesisClass& c);
VersionSpace refine(const VersionSpace& v, const Example& z, const HypothesisClass& c);
// The hypotheses of v that agree with h on every instance of X.
VersionSpace agreeing(const VersionSpace& v, Index h, const InstanceSet& X,
                      const HypothesisClass& c);

Bits project(Index h, const InstanceSet& X, const HypothesisClass& c);
PatternSet restrict_patterns(const VersionSpace& H, const InstanceSet& X,
                             const HypothesisClass& c);
std::size_t hamming(Index h, Index h2, const HypothesisClass& c);

InstanceSet normalize(InstanceSet X, std::size_t num_instances);
std::string format_example(const Example& z, const HypothesisClass& c);

}  // namespace mt

template <>
struct std::hash<mt::VersionSpace> {
    std::size_t operator()(const mt::VersionSpace& v) const noexcept {
        return std::hash<mt::Bits>{}(v.bits()) ^ (v.class_id() * 0x9e3779b97f4a7c15ULL);
    }
};

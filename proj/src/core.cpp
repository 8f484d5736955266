#include "mt/core.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_set>

namespace mt {

std::vector<Index> VersionSpace::members() const {
    std::vector<Index> out;
    out.reserve(size());
    for (Index h = first(); h != npos; h = next(h)) out.push_back(h);
    return out;
}

void VersionSpace::check_same(const VersionSpace& o) const {
    if (class_id_ != o.class_id_ || bits_.size() != o.bits_.size())
        throw input_error("version spaces belong to different hypothesis classes");
}

bool VersionSpace::subset_of(const VersionSpace& o) const {
    check_same(o);
    return bits_.is_subset_of(o.bits_);
}

VersionSpace VersionSpace::operator&(const VersionSpace& o) const {
    check_same(o);
    return {bits_ & o.bits_, class_id_};
}

VersionSpace VersionSpace::operator|(const VersionSpace& o) const {
    check_same(o);
    return {bits_ | o.bits_, class_id_};
}

VersionSpace VersionSpace::operator-(const VersionSpace& o) const {
    check_same(o);
    return {bits_ - o.bits_, class_id_};
}

VersionSpace VersionSpace::with(Index h) const {
    if (h >= bits_.size()) throw input_error("hypothesis index out of range");
    Bits b = bits_;
    b.set(h);
    return {std::move(b), class_id_};
}

VersionSpace VersionSpace::without(Index h) const {
    if (h >= bits_.size()) throw input_error("hypothesis index out of range");
    Bits b = bits_;
    b.reset(h);
    return {std::move(b), class_id_};
}

std::string VersionSpace::key() const {
    std::string s;
    for (Index h = first(); h != npos; h = next(h)) {
        if (!s.empty()) s += ',';
        s += std::to_string(h);
    }
    return s;
}

namespace {

std::uint64_t fnv(std::uint64_t seed, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
        seed ^= (v >> (8 * i)) & 0xff;
        seed *= 0x100000001b3ULL;
    }
    return seed;
}

}  // namespace

HypothesisClass::HypothesisClass(std::vector<Bits> rows, std::vector<std::string> instance_names,
                                 std::vector<std::string> hypothesis_names)
    : rows_(std::move(rows)),
      instance_names_(std::move(instance_names)),
      hypothesis_names_(std::move(hypothesis_names)) {
    if (rows_.empty()) throw input_error("a hypothesis class needs at least one hypothesis");
    num_instances_ = rows_.front().size();
    if (num_instances_ == 0) throw input_error("a hypothesis class needs at least one instance");
    for (std::size_t i = 0; i < rows_.size(); ++i)
        if (rows_[i].size() != num_instances_)
            throw input_error("row " + std::to_string(i) + " has " +
                              std::to_string(rows_[i].size()) + " labels, expected " +
                              std::to_string(num_instances_));

    std::unordered_set<Bits> seen;
    for (std::size_t i = 0; i < rows_.size(); ++i)
        if (!seen.insert(rows_[i]).second)
            throw input_error("duplicate hypothesis row at index " + std::to_string(i));

    if (instance_names_.empty())
        for (std::size_t x = 0; x < num_instances_; ++x)
            instance_names_.push_back("x" + std::to_string(x + 1));
    if (hypothesis_names_.empty())
        for (std::size_t h = 0; h < rows_.size(); ++h)
            hypothesis_names_.push_back("h" + std::to_string(h + 1));
    if (instance_names_.size() != num_instances_)
        throw input_error("instance name count does not match the number of columns");
    if (hypothesis_names_.size() != rows_.size())
        throw input_error("hypothesis name count does not match the number of rows");

    auto unique_names = [](const std::vector<std::string>& names, const char* what) {
        std::unordered_set<std::string> s(names.begin(), names.end());
        if (s.size() != names.size()) throw input_error(std::string("duplicate ") + what + " name");
    };
    unique_names(instance_names_, "instance");
    unique_names(hypothesis_names_, "hypothesis");

    ones_.assign(num_instances_, Bits(rows_.size()));
    for (std::size_t h = 0; h < rows_.size(); ++h)
        for (std::size_t x = 0; x < num_instances_; ++x)
            if (rows_[h][x]) ones_[x].set(h);
    zeros_.reserve(num_instances_);
    for (const auto& col : ones_) zeros_.push_back(~col);

    id_ = fnv(0xcbf29ce484222325ULL, rows_.size());
    id_ = fnv(id_, num_instances_);
    for (const auto& r : rows_) {
        std::vector<std::uint64_t> blocks;
        boost::to_block_range(r, std::back_inserter(blocks));
        for (auto b : blocks) id_ = fnv(id_, b);
    }
}

HypothesisClass HypothesisClass::from_strings(const std::vector<std::string>& rows,
                                              std::vector<std::string> instance_names,
                                              std::vector<std::string> hypothesis_names) {
    std::vector<Bits> bits;
    bits.reserve(rows.size());
    for (const auto& r : rows) {
        Bits b(r.size());
        for (std::size_t x = 0; x < r.size(); ++x) {
            if (r[x] == '1')
                b.set(x);
            else if (r[x] != '0')
                throw input_error("label must be 0 or 1, got '" + std::string(1, r[x]) + "'");
        }
        bits.push_back(std::move(b));
    }
    return HypothesisClass(std::move(bits), std::move(instance_names), std::move(hypothesis_names));
}

bool HypothesisClass::label(Index h, Index x) const {
    if (h >= rows_.size()) throw input_error("hypothesis index out of range");
    if (x >= num_instances_) throw input_error("instance index out of range");
    return rows_[h][x];
}

const Bits& HypothesisClass::row(Index h) const {
    if (h >= rows_.size()) throw input_error("hypothesis index out of range");
    return rows_[h];
}

Index HypothesisClass::instance_index(std::string_view name) const {
    for (std::size_t x = 0; x < instance_names_.size(); ++x)
        if (instance_names_[x] == name) return x;
    throw input_error("unknown instance '" + std::string(name) + "'");
}

Index HypothesisClass::hypothesis_index(std::string_view name) const {
    for (std::size_t h = 0; h < hypothesis_names_.size(); ++h)
        if (hypothesis_names_[h] == name) return h;
    throw input_error("unknown hypothesis '" + std::string(name) + "'");
}

std::string HypothesisClass::row_string(Index h) const {
    const Bits& r = row(h);
    std::string s(num_instances_, '0');
    for (std::size_t x = 0; x < num_instances_; ++x)
        if (r[x]) s[x] = '1';
    return s;
}

InstanceSet HypothesisClass::all_instances() const {
    InstanceSet X(num_instances_);
    for (std::size_t x = 0; x < num_instances_; ++x) X[x] = x;
    return X;
}

VersionSpace HypothesisClass::all() const {
    Bits b(rows_.size());
    b.set();
    return {std::move(b), id_};
}

VersionSpace HypothesisClass::none() const { return {Bits(rows_.size()), id_}; }

VersionSpace HypothesisClass::subset(const std::vector<Index>& hs) const {
    Bits b(rows_.size());
    for (Index h : hs) {
        if (h >= rows_.size()) throw input_error("hypothesis index out of range");
        b.set(h);
    }
    return {std::move(b), id_};
}

void HypothesisClass::check(const VersionSpace& v) const {
    if (v.class_id() != id_ || v.universe() != rows_.size())
        throw input_error("version space does not belong to this hypothesis class");
}

bool consistent(Index h, const Example& z, const HypothesisClass& c) {
    return c.label(h, z.x) == z.y;
}

bool consistent(Index h, const std::vector<Example>& Z, const HypothesisClass& c) {
    return std::all_of(Z.begin(), Z.end(), [&](const Example& z) { return consistent(h, z, c); });
}

VersionSpace refine(const VersionSpace& v, const Example& z, const HypothesisClass& c) {
    c.check(v);
    if (z.x >= c.num_instances()) throw input_error("instance index out of range");
    return {v.bits() & (z.y ? c.ones(z.x) : c.zeros(z.x)), c.id()};
}

VersionSpace version_space(const std::vector<Example>& Z, const HypothesisClass& c) {
    VersionSpace v = c.all();
    for (const auto& z : Z) v = refine(v, z, c);
    return v;
}

VersionSpace agreeing(const VersionSpace& v, Index h, const InstanceSet& X,
                      const HypothesisClass& c) {
    c.check(v);
    Bits b = v.bits();
    for (Index x : X) b &= c.label(h, x) ? c.ones(x) : c.zeros(x);
    return {std::move(b), c.id()};
}

Bits project(Index h, const InstanceSet& X, const HypothesisClass& c) {
    Bits p(X.size());
    for (std::size_t i = 0; i < X.size(); ++i)
        if (c.label(h, X[i])) p.set(i);
    return p;
}

PatternSet restrict_patterns(const VersionSpace& H, const InstanceSet& X,
                             const HypothesisClass& c) {
    if (X.empty()) throw input_error("pattern restriction needs a non-empty instance set");
    c.check(H);
    PatternSet ps;
    ps.instances = normalize(X, c.num_instances());
    for (Index h = H.first(); h != npos; h = H.next(h)) ps.patterns.insert(project(h, ps.instances, c));
    return ps;
}

std::size_t hamming(Index h, Index h2, const HypothesisClass& c) {
    return (c.row(h) ^ c.row(h2)).count();
}

InstanceSet normalize(InstanceSet X, std::size_t num_instances) {
    std::sort(X.begin(), X.end());
    X.erase(std::unique(X.begin(), X.end()), X.end());
    if (!X.empty() && X.back() >= num_instances) throw input_error("instance index out of range");
    return X;
}

std::string format_example(const Example& z, const HypothesisClass& c) {
    return "(" + c.instance_name(z.x) + "," + (z.y ? "1" : "0") + ")";
}

}  // namespace mt

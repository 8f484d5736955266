#include "mt/prefs.hpp"

#include <algorithm>
#include <deque>
#include <unordered_set>

namespace mt {

std::string family_name(Family f) {
    switch (f) {
        case Family::Const: return "const";
        case Family::Global: return "global";
        case Family::Local: return "local";
        case Family::Gvs: return "gvs";
        case Family::Lvs: return "lvs";
    }
    return "?";
}

Family parse_family(const std::string& s) {
    for (Family f : {Family::Const, Family::Global, Family::Local, Family::Gvs, Family::Lvs})
        if (family_name(f) == s) return f;
    throw input_error("unknown preference family '" + s + "'");
}

bool SubsetRule::matches(const Bits& V, Index h) const {
    if (!core.is_subset_of(V)) return false;
    if (!V.is_subset_of(core | optional)) return false;
    return currents.none() || (h < currents.size() && currents.test(h));
}

PreferenceFunction PreferenceFunction::constant(std::size_t n, Rank r) {
    PreferenceFunction s;
    s.family_ = Family::Const;
    s.n_ = n;
    s.const_rank_ = r;
    return s;
}

PreferenceFunction PreferenceFunction::global(std::vector<Rank> ranks) {
    PreferenceFunction s;
    s.family_ = Family::Global;
    s.n_ = ranks.size();
    s.global_ = std::move(ranks);
    return s;
}

PreferenceFunction PreferenceFunction::local(const std::vector<std::vector<Rank>>& m) {
    PreferenceFunction s;
    s.family_ = Family::Local;
    s.n_ = m.size();
    s.local_.reserve(s.n_ * s.n_);
    for (const auto& row : m) {
        if (row.size() != s.n_) throw input_error("local preference matrix must be square");
        s.local_.insert(s.local_.end(), row.begin(), row.end());
    }
    return s;
}

PreferenceFunction PreferenceFunction::gvs(std::size_t n, Rank default_rank) {
    PreferenceFunction s;
    s.family_ = Family::Gvs;
    s.n_ = n;
    s.other_default_ = default_rank;
    return s;
}

PreferenceFunction PreferenceFunction::lvs(std::size_t n, Rank self_rank, Rank other_rank) {
    PreferenceFunction s;
    s.family_ = Family::Lvs;
    s.n_ = n;
    s.self_default_ = self_rank;
    s.other_default_ = other_rank;
    return s;
}

void PreferenceFunction::check_index(Index h) const {
    if (h >= n_) throw input_error("hypothesis index out of range for preference function");
}

void PreferenceFunction::set_entry(const Bits& V, Index current, Index h_prime, Rank r) {
    if (family_ != Family::Gvs && family_ != Family::Lvs)
        throw input_error("only gvs/lvs preference functions hold sparse entries");
    if (V.size() != n_) throw input_error("entry version space has the wrong universe");
    check_index(h_prime);
    if (family_ == Family::Gvs)
        current = npos;
    else
        check_index(current);
    entries_[Key{V, current}][h_prime] = r;
}

std::optional<Rank> PreferenceFunction::entry(const Bits& V, Index current, Index h_prime) const {
    if (family_ == Family::Gvs) current = npos;
    auto it = entries_.find(Key{V, current});
    if (it == entries_.end()) return std::nullopt;
    auto jt = it->second.find(h_prime);
    if (jt == it->second.end()) return std::nullopt;
    return jt->second;
}

void PreferenceFunction::add_rule(SubsetRule r) {
    if (family_ != Family::Gvs && family_ != Family::Lvs)
        throw input_error("only gvs/lvs preference functions hold subset rules");
    check_index(r.h_prime);
    for (Bits* b : {&r.core, &r.optional, &r.currents})
        if (b->size() == 0)
            b->resize(n_);
        else if (b->size() != n_)
            throw input_error("subset rule has the wrong universe");
    if (family_ == Family::Gvs) r.currents.reset();
    rules_.push_back(std::move(r));
}

Rank PreferenceFunction::rank(Index h_prime, const Bits& V, Index h) const {
    switch (family_) {
        case Family::Const: return const_rank_;
        case Family::Global: return global_[h_prime];
        case Family::Local: return local_[h * n_ + h_prime];
        case Family::Gvs:
        case Family::Lvs: break;
    }
    if (auto e = entry(V, h, h_prime)) return *e;
    for (const auto& r : rules_)
        if (r.h_prime == h_prime && r.matches(V, h)) return r.rank;
    if (family_ == Family::Lvs && h_prime == h) return self_default_;
    return other_default_;
}

std::vector<Rank> PreferenceFunction::ranks(const VersionSpace& V, Index h) const {
    std::vector<Rank> out;
    out.reserve(V.size());
    const Bits& b = V.bits();
    switch (family_) {
        case Family::Const:
            out.assign(V.size(), const_rank_);
            return out;
        case Family::Global:
            for (Index x = V.first(); x != npos; x = V.next(x)) out.push_back(global_[x]);
            return out;
        case Family::Local:
            for (Index x = V.first(); x != npos; x = V.next(x)) out.push_back(local_[h * n_ + x]);
            return out;
        case Family::Gvs:
        case Family::Lvs: break;
    }
    const std::map<Index, Rank>* row = nullptr;
    if (!entries_.empty()) {
        auto it = entries_.find(Key{b, family_ == Family::Gvs ? npos : h});
        if (it != entries_.end()) row = &it->second;
    }
    std::vector<const SubsetRule*> live;
    for (const auto& r : rules_)
        if (b.test(r.h_prime) && r.matches(b, h)) live.push_back(&r);
    for (Index x = V.first(); x != npos; x = V.next(x)) {
        if (row) {
            auto jt = row->find(x);
            if (jt != row->end()) {
                out.push_back(jt->second);
                continue;
            }
        }
        auto rt = std::find_if(live.begin(), live.end(), [&](const SubsetRule* r) { return r->h_prime == x; });
        if (rt != live.end())
            out.push_back((*rt)->rank);
        else if (family_ == Family::Lvs && x == h)
            out.push_back(self_default_);
        else
            out.push_back(other_default_);
    }
    return out;
}

std::vector<PreferenceFunction::Row> PreferenceFunction::rows() const {
    std::vector<Row> out;
    for (const auto& [k, m] : entries_) out.push_back({k.V, k.h, m});
    auto key = [](const Bits& b) {
        std::vector<Index> v;
        for (Index i = b.find_first(); i != npos; i = b.find_next(i)) v.push_back(i);
        return v;
    };
    std::sort(out.begin(), out.end(), [&](const Row& a, const Row& b) {
        auto ka = key(a.V), kb = key(b.V);
        if (ka != kb) return ka < kb;
        return a.current < b.current;
    });
    return out;
}

namespace {

void check_sizes(const PreferenceFunction& s, const HypothesisClass& c) {
    if (s.num_hypotheses() != c.num_hypotheses())
        throw input_error("preference function covers " + std::to_string(s.num_hypotheses()) +
                          " hypotheses, class has " + std::to_string(c.num_hypotheses()));
}

}  // namespace

Rank evaluate(const PreferenceFunction& s, Index h_prime, const VersionSpace& H, Index h,
              const HypothesisClass& c) {
    check_sizes(s, c);
    c.check(H);
    if (!H.contains(h_prime)) throw input_error("evaluated hypothesis is not in the version space");
    if (h >= c.num_hypotheses()) throw input_error("current hypothesis out of range");
    return s.rank(h_prime, H.bits(), h);
}

VersionSpace preferred(const PreferenceFunction& s, const VersionSpace& V, Index h,
                       const HypothesisClass& c) {
    check_sizes(s, c);
    c.check(V);
    if (h >= c.num_hypotheses()) throw input_error("current hypothesis out of range");
    VersionSpace out = c.none();
    if (V.empty()) return out;
    auto r = s.ranks(V, h);
    Rank lo = *std::min_element(r.begin(), r.end());
    Bits b(c.num_hypotheses());
    std::size_t i = 0;
    for (Index x = V.first(); x != npos; x = V.next(x), ++i)
        if (r[i] == lo) b.set(x);
    return {std::move(b), c.id()};
}

VersionSpace candidate_set(const PreferenceFunction& s, const VersionSpace& H, Index h,
                           const Example& z, const HypothesisClass& c) {
    return preferred(s, refine(H, z, c), h, c);
}

PreferenceFunction hamming_local(const HypothesisClass& c) {
    const auto n = c.num_hypotheses();
    std::vector<std::vector<Rank>> m(n, std::vector<Rank>(n));
    for (Index h = 0; h < n; ++h)
        for (Index g = 0; g < n; ++g) m[h][g] = static_cast<Rank>(hamming(g, h, c));
    return PreferenceFunction::local(m);
}

std::vector<VersionSpace> reachable_version_spaces(const HypothesisClass& c, std::size_t cap) {
    std::vector<VersionSpace> order{c.all()};
    std::unordered_set<VersionSpace> seen{c.all()};
    for (std::size_t i = 0; i < order.size(); ++i) {
        for (Index x = 0; x < c.num_instances(); ++x)
            for (bool y : {false, true}) {
                VersionSpace next = refine(order[i], {x, y}, c);
                if (next.empty() || !seen.insert(next).second) continue;
                order.push_back(std::move(next));
                if (order.size() * c.num_hypotheses() > cap)
                    throw capacity_error("more than " + std::to_string(cap) +
                                         " (version space, hypothesis) states");
            }
    }
    return order;
}

CollusionReport collusion_free_check(const PreferenceFunction& s, const HypothesisClass& c,
                                     std::size_t cap) {
    check_sizes(s, c);
    CollusionReport rep;
    auto spaces = reachable_version_spaces(c, cap);
    rep.version_spaces = spaces.size();
    for (const auto& V : spaces)
        for (Index h = 0; h < c.num_hypotheses(); ++h) {
            ++rep.states;
            VersionSpace P = preferred(s, V, h, c);
            if (P.size() != 1) continue;
            const Index hat = P.first();
            // S = ∅ first (reported with z on instance npos), then every single example.
            for (Index x = npos; x == npos || x < c.num_instances(); ++x) {
                Example z{x, x == npos ? false : c.label(hat, x)};
                VersionSpace after = preferred(s, x == npos ? V : refine(V, z, c), hat, c);
                if (after.size() == 1 && after.first() == hat) continue;
                rep.collusion_free = false;
                rep.counterexample = CollusionReport::Counterexample{V, h, hat, z, after};
                return rep;
            }
        }
    return rep;
}

}  // namespace mt

#include "mt/dims.hpp"

#include <algorithm>
#include <limits>

#include "combin.hpp"

namespace mt {

namespace {

using detail::for_each_combination;

std::size_t count_patterns(const VersionSpace& H, const InstanceSet& X, const HypothesisClass& c) {
    if (X.empty()) return H.empty() ? 0 : 1;
    if (X.size() <= 20) {
        std::vector<bool> seen(std::size_t{1} << X.size());
        std::size_t n = 0;
        for (Index h = H.first(); h != npos; h = H.next(h)) {
            std::size_t code = 0;
            for (Index x : X) code = (code << 1) | (c.label(h, x) ? 1u : 0u);
            if (!seen[code]) {
                seen[code] = true;
                ++n;
            }
        }
        return n;
    }
    return restrict_patterns(H, X, c).size();
}

// Hypotheses of H that disagree with h on x.
Bits disagree(const VersionSpace& H, Index h, Index x, const HypothesisClass& c) {
    return H.bits() & (c.label(h, x) ? c.zeros(x) : c.ones(x));
}

void require_member(Index h, const VersionSpace& H, const HypothesisClass& c) {
    c.check(H);
    if (!H.contains(h)) throw input_error("hypothesis " + std::to_string(h) + " is not in the version space");
}

}  // namespace

std::size_t vcd(const VersionSpace& H, const InstanceSet& Xin, const HypothesisClass& c,
                InstanceSet* witness) {
    c.check(H);
    if (H.empty()) throw input_error("vcd of an empty hypothesis set");
    InstanceSet X = normalize(Xin, c.num_instances());
    if (witness) witness->clear();
    std::size_t best = 0;
    std::size_t limit = 0;
    while ((std::size_t{1} << (limit + 1)) <= H.size()) ++limit;
    for (std::size_t s = 1; s <= std::min(limit, X.size()); ++s) {
        InstanceSet sub(s);
        bool found = for_each_combination(X.size(), s, [&](const std::vector<std::size_t>& idx) {
            for (std::size_t i = 0; i < s; ++i) sub[i] = X[idx[i]];
            return count_patterns(H, sub, c) == (std::size_t{1} << s);
        });
        // Shattered sets are closed under taking subsets.
        if (!found) break;
        best = s;
        if (witness) *witness = sub;
    }
    return best;
}

std::vector<Example> minimal_teaching_set(Index h, const VersionSpace& H, const HypothesisClass& c) {
    require_member(h, H, c);
    if (H.size() == 1) return {};
    const std::size_t n = c.num_instances();
    std::vector<Bits> dis(n);
    for (Index x = 0; x < n; ++x) dis[x] = disagree(H, h, x, c);
    Bits others = H.bits();
    others.reset(h);

    std::vector<Example> out;
    for (std::size_t s = 1; s <= n; ++s) {
        bool found = for_each_combination(n, s, [&](const std::vector<std::size_t>& idx) {
            Bits cover(H.universe());
            for (auto x : idx) cover |= dis[x];
            if (!others.is_subset_of(cover)) return false;
            for (auto x : idx) out.push_back({x, c.label(h, x)});
            return true;
        });
        if (found) return out;
    }
    throw construction_error("distinct rows must be separable by the full instance set");
}

std::size_t td(const VersionSpace& H, const HypothesisClass& c) {
    c.check(H);
    if (H.empty()) throw input_error("td of an empty hypothesis set");
    std::size_t best = 0;
    for (Index h = H.first(); h != npos; h = H.next(h))
        best = std::max(best, minimal_teaching_set(h, H, c).size());
    return best;
}

std::size_t rtd(const VersionSpace& H, const HypothesisClass& c, std::map<Index, std::size_t>* layers) {
    c.check(H);
    if (H.empty()) throw input_error("rtd of an empty hypothesis set");
    VersionSpace rest = H;
    std::size_t best = 0, round = 0;
    while (!rest.empty()) {
        std::vector<std::pair<Index, std::size_t>> sizes;
        std::size_t lo = std::numeric_limits<std::size_t>::max();
        for (Index h = rest.first(); h != npos; h = rest.next(h)) {
            auto s = minimal_teaching_set(h, rest, c).size();
            sizes.emplace_back(h, s);
            lo = std::min(lo, s);
        }
        best = std::max(best, lo);
        for (auto [h, s] : sizes)
            if (s == lo) {
                rest = rest.without(h);
                if (layers) (*layers)[h] = round;
            }
        ++round;
    }
    return best;
}

namespace {

struct Candidate {
    Bits cons;  // members of H consistent with the set
    std::vector<Index> xs;
};

class NctdSearch {
public:
    NctdSearch(const VersionSpace& H, const HypothesisClass& c, std::size_t k)
        : c_(c), members_(H.members()) {
        const std::size_t n = c.num_instances();
        domains_.resize(members_.size());
        cands_.resize(members_.size());
        for (std::size_t i = 0; i < members_.size(); ++i) {
            Index h = members_[i];
            std::vector<Candidate> all;
            for_each_combination(n, std::min(k, n), [&](const std::vector<std::size_t>& idx) {
                Bits cons = H.bits();
                for (auto x : idx) cons &= c.label(h, x) ? c.ones(x) : c.zeros(x);
                all.push_back({std::move(cons), idx});
                return false;
            });
            // A set consistent with fewer hypotheses can never clash more.
            std::vector<bool> dominated(all.size(), false);
            for (std::size_t a = 0; a < all.size(); ++a)
                for (std::size_t b = 0; b < all.size() && !dominated[a]; ++b) {
                    if (a == b || !all[b].cons.is_subset_of(all[a].cons)) continue;
                    dominated[a] = all[b].cons != all[a].cons || b < a;
                }
            std::vector<Candidate> kept;
            for (std::size_t a = 0; a < all.size(); ++a)
                if (!dominated[a]) kept.push_back(std::move(all[a]));
            cands_[i] = std::move(kept);
            for (std::size_t j = 0; j < cands_[i].size(); ++j) domains_[i].push_back(j);
        }
        choice_.assign(members_.size(), npos);
    }

    bool solve() { return dfs(domains_); }

    TeacherMap witness() const {
        TeacherMap T;
        for (std::size_t i = 0; i < members_.size(); ++i) {
            auto& seq = T[members_[i]];
            for (Index x : cands_[i][choice_[i]].xs) seq.push_back({x, c_.label(members_[i], x)});
        }
        return T;
    }

private:
    using Domains = std::vector<std::vector<std::size_t>>;

    bool dfs(const Domains& dom) {
        std::size_t pick = npos, best = std::numeric_limits<std::size_t>::max();
        for (std::size_t i = 0; i < dom.size(); ++i)
            if (choice_[i] == npos && dom[i].size() < best) {
                best = dom[i].size();
                pick = i;
            }
        if (pick == npos) return true;
        const Index h = members_[pick];
        for (std::size_t a : dom[pick]) {
            const Bits& ca = cands_[pick][a].cons;
            Domains next = dom;
            bool dead = false;
            for (std::size_t j = 0; j < dom.size() && !dead; ++j) {
                if (choice_[j] != npos || j == pick || !ca.test(members_[j])) continue;
                auto& d = next[j];
                d.erase(std::remove_if(d.begin(), d.end(),
                                       [&](std::size_t b) { return cands_[j][b].cons.test(h); }),
                        d.end());
                dead = d.empty();
            }
            if (dead) continue;
            choice_[pick] = a;
            if (dfs(next)) return true;
            choice_[pick] = npos;
        }
        return false;
    }

    const HypothesisClass& c_;
    std::vector<Index> members_;
    std::vector<std::vector<Candidate>> cands_;
    Domains domains_;
    std::vector<std::size_t> choice_;
};

}  // namespace

NctdResult nctd(const VersionSpace& H, const HypothesisClass& c, std::size_t cap) {
    c.check(H);
    if (H.empty()) throw input_error("nctd of an empty hypothesis set");
    if (H.size() > cap)
        throw capacity_error("nctd search limited to " + std::to_string(cap) + " hypotheses, got " +
                             std::to_string(H.size()));
    if (H.size() == 1) return {0, {{H.first(), {}}}};
    for (std::size_t k = 1; k <= c.num_instances(); ++k) {
        NctdSearch s(H, c, k);
        if (s.solve()) return {k, s.witness()};
    }
    throw construction_error("the full instance set always yields a non-clashing map");
}

std::optional<std::pair<Index, Index>> find_clash(const TeacherMap& T, const VersionSpace& H,
                                                  const HypothesisClass& c) {
    c.check(H);
    auto members = H.members();
    for (Index h : members) {
        auto it = T.find(h);
        if (it == T.end()) throw input_error("teacher map has no entry for " + c.hypothesis_name(h));
        for (const auto& z : it->second)
            if (z.x >= c.num_instances()) throw input_error("teacher map instance out of range");
    }
    for (std::size_t i = 0; i < members.size(); ++i)
        for (std::size_t j = i + 1; j < members.size(); ++j) {
            Index a = members[i], b = members[j];
            if (consistent(b, T.at(a), c) && consistent(a, T.at(b), c)) return std::make_pair(a, b);
        }
    return std::nullopt;
}

bool is_distinguishable(const InstanceSet& X, const VersionSpace& H, const HypothesisClass& c) {
    c.check(H);
    return count_patterns(H, normalize(X, c.num_instances()), c) == H.size();
}

bool is_compact_distinguishable(const InstanceSet& Xin, const VersionSpace& H, const HypothesisClass& c) {
    InstanceSet X = normalize(Xin, c.num_instances());
    if (!is_distinguishable(X, H, c)) return false;
    // Distinguishability is monotone, so checking single removals suffices.
    for (std::size_t i = 0; i < X.size(); ++i) {
        InstanceSet sub = X;
        sub.erase(sub.begin() + static_cast<std::ptrdiff_t>(i));
        if (is_distinguishable(sub, H, c)) return false;
    }
    return true;
}

InstanceSet compact_distinguishable_set(const VersionSpace& H, const InstanceSet& Xin,
                                        const HypothesisClass& c) {
    InstanceSet X = normalize(Xin, c.num_instances());
    if (!is_distinguishable(X, H, c)) throw input_error("instance set does not distinguish the hypotheses");
    for (Index x : InstanceSet(X)) {
        InstanceSet sub;
        for (Index y : X)
            if (y != x) sub.push_back(y);
        if (is_distinguishable(sub, H, c)) X = std::move(sub);
    }
    return X;
}

std::size_t sigma_td_lower_bound(std::size_t d) {
    if (d < 1) throw input_error("counting bound needs d >= 1");
    if (d > 120) throw capacity_error("counting bound supports d <= 120");
    using u128 = unsigned __int128;
    const u128 target = u128{1} << d;
    u128 sum = 1, term = 1;
    std::size_t k = 0;
    while (sum < target) {
        term *= 2 * d;
        sum += term;
        ++k;
    }
    return k;
}

DimensionReport dimension_report(const HypothesisClass& c, std::size_t nctd_cap) {
    DimensionReport r;
    auto H = c.all();
    r.vcd = vcd(H, c.all_instances(), c, &r.shattered);
    for (Index h = 0; h < c.num_hypotheses(); ++h) {
        r.td_witness[h] = minimal_teaching_set(h, H, c);
        r.td = std::max(r.td, r.td_witness[h].size());
    }
    r.rtd = rtd(H, c, &r.rtd_layer);
    auto n = nctd(H, c, nctd_cap);
    r.nctd = n.value;
    r.nctd_witness = std::move(n.witness);
    return r;
}

}  // namespace mt

#include "support.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <limits>
#include <map>
#include <set>

#include "mt/corpus.hpp"
#include "mt/dims.hpp"

namespace oracle {

Mask full(const HypothesisClass& c) {
    return c.num_hypotheses() == 32 ? ~Mask{0} : (Mask{1} << c.num_hypotheses()) - 1;
}

Mask with_label(const HypothesisClass& c, Index x, bool y) {
    Mask m = 0;
    for (Index h = 0; h < c.num_hypotheses(); ++h)
        if (c.row(h).test(x) == y) m |= Mask{1} << h;
    return m;
}

mt::Bits to_bits(Mask m, std::size_t n) {
    mt::Bits b(n);
    for (std::size_t i = 0; i < n; ++i)
        if (m >> i & 1) b.set(i);
    return b;
}

Mask from(const mt::VersionSpace& V) {
    Mask m = 0;
    for (Index h : V.members()) m |= Mask{1} << h;
    return m;
}

Mask argmin(const PreferenceFunction& s, Mask V, Index h, std::size_t n) {
    const mt::Bits b = to_bits(V, n);
    mt::Rank best = std::numeric_limits<mt::Rank>::max();
    Mask out = 0;
    for (Index g = 0; g < n; ++g) {
        if (!(V >> g & 1)) continue;
        const mt::Rank r = s.rank(g, b, h);
        if (r < best) {
            best = r;
            out = 0;
        }
        if (r == best) out |= Mask{1} << g;
    }
    return out;
}

static Mask consistent_with(const HypothesisClass& c, Mask H, Index h, std::uint32_t xs) {
    for (Index x = 0; x < c.num_instances(); ++x)
        if (xs >> x & 1) H &= with_label(c, x, c.row(h).test(x));
    return H;
}

std::size_t teaching_set_size(const HypothesisClass& c, Mask H, Index h) {
    const std::uint32_t nx = static_cast<std::uint32_t>(c.num_instances());
    std::size_t best = nx + 1;
    for (std::uint32_t xs = 0; xs < (1u << nx); ++xs) {
        const auto k = static_cast<std::size_t>(std::popcount(xs));
        if (k < best && consistent_with(c, H, h, xs) == (Mask{1} << h)) best = k;
    }
    return best;
}

std::size_t td(const HypothesisClass& c) {
    std::size_t w = 0;
    for (Index h = 0; h < c.num_hypotheses(); ++h) w = std::max(w, teaching_set_size(c, full(c), h));
    return w;
}

std::size_t rtd(const HypothesisClass& c) {
    Mask rest = full(c);
    std::size_t w = 0;
    while (rest) {
        std::size_t lo = kInf;
        std::vector<std::size_t> sz(c.num_hypotheses(), kInf);
        for (Index h = 0; h < c.num_hypotheses(); ++h)
            if (rest >> h & 1) lo = std::min(lo, sz[h] = teaching_set_size(c, rest, h));
        w = std::max(w, lo);
        for (Index h = 0; h < c.num_hypotheses(); ++h)
            if (sz[h] == lo) rest &= ~(Mask{1} << h);
    }
    return w;
}

std::size_t vcd(const HypothesisClass& c, Mask H, const std::vector<Index>& X) {
    std::size_t best = 0;
    const std::size_t m = X.size();
    for (std::uint32_t sub = 1; sub < (1u << m); ++sub) {
        const auto k = static_cast<std::size_t>(std::popcount(sub));
        if (k <= best) continue;
        std::set<std::uint32_t> pats;
        for (Index h = 0; h < c.num_hypotheses(); ++h) {
            if (!(H >> h & 1)) continue;
            std::uint32_t p = 0;
            for (std::size_t i = 0, j = 0; i < m; ++i)
                if (sub >> i & 1) p |= static_cast<std::uint32_t>(c.row(h).test(X[i])) << j++;
            pats.insert(p);
        }
        if (pats.size() == (std::size_t{1} << k)) best = k;
    }
    return best;
}

std::size_t nctd(const HypothesisClass& c) {
    const std::size_t n = c.num_hypotheses(), nx = c.num_instances();
    if (n == 1) return 0;
    for (std::size_t k = 1; k <= nx; ++k) {
        // consistency set of every example subset of size <= k, per hypothesis
        std::vector<std::vector<Mask>> opts(n);
        for (Index h = 0; h < n; ++h)
            for (std::uint32_t xs = 0; xs < (1u << nx); ++xs)
                if (static_cast<std::size_t>(std::popcount(xs)) <= k)
                    opts[h].push_back(consistent_with(c, full(c), h, xs));
        std::vector<Mask> pick(n);
        std::function<bool(Index)> go = [&](Index h) {
            if (h == n) return true;
            for (Mask m : opts[h]) {
                bool ok = true;
                for (Index g = 0; g < h && ok; ++g)
                    ok = !((m >> g & 1) && (pick[g] >> h & 1));
                if (!ok) continue;
                pick[h] = m;
                if (go(h + 1)) return true;
            }
            return false;
        };
        if (go(0)) return k;
    }
    return nx;
}

namespace {

struct State {
    Mask V;
    Index h;
    auto operator<=>(const State&) const = default;
};

struct Step {
    bool finishes = false;
    Mask next = 0;
    Mask cands = 0;
};

std::vector<Step> steps_of(const PreferenceFunction& s, const HypothesisClass& c, State st, Index t) {
    std::vector<Step> out;
    for (Index x = 0; x < c.num_instances(); ++x) {
        const Mask next = st.V & with_label(c, x, c.row(t).test(x));
        if (!(next >> t & 1)) continue;
        const Mask cands = argmin(s, next, st.h, c.num_hypotheses());
        out.push_back({cands == (Mask{1} << t), next, cands});
    }
    return out;
}

}  // namespace

int d_sigma_fixpoint(const PreferenceFunction& s, const HypothesisClass& c, Mask V0, Index h0, Index t) {
    std::map<State, std::vector<Step>> graph;
    std::vector<State> todo{{V0, h0}};
    while (!todo.empty()) {
        State st = todo.back();
        todo.pop_back();
        if (graph.count(st)) continue;
        auto& ss = graph[st] = steps_of(s, c, st, t);
        for (const auto& m : ss)
            if (!m.finishes)
                for (Index g = 0; g < c.num_hypotheses(); ++g)
                    if (m.cands >> g & 1) todo.push_back({m.next, g});
    }
    std::map<State, int> D;
    for (const auto& [st, ss] : graph) D[st] = kInf;
    for (bool changed = true; changed;) {
        changed = false;
        for (const auto& [st, ss] : graph) {
            int best = kInf;
            for (const auto& m : ss) {
                if (m.finishes) {
                    best = 1;
                    break;
                }
                int worst = 0;
                for (Index g = 0; g < c.num_hypotheses(); ++g)
                    if (m.cands >> g & 1) worst = std::max(worst, D[{m.next, g}]);
                if (worst < kInf) best = std::min(best, worst + 1);
            }
            if (best < D[st]) {
                D[st] = best;
                changed = true;
            }
        }
    }
    return D[{V0, h0}];
}

int d_sigma_naive(const PreferenceFunction& s, const HypothesisClass& c, Mask V0, Index h0, Index t) {
    std::set<State> path;
    std::function<int(State)> go = [&](State st) {
        if (path.count(st)) return kInf;
        path.insert(st);
        int best = kInf;
        for (const auto& m : steps_of(s, c, st, t)) {
            if (m.finishes) {
                best = 1;
                break;
            }
            int worst = 0;
            for (Index g = 0; g < c.num_hypotheses() && worst < kInf; ++g)
                if (m.cands >> g & 1) worst = std::max(worst, go({m.next, g}));
            if (worst < kInf) best = std::min(best, worst + 1);
        }
        path.erase(st);
        return best;
    };
    return go({V0, h0});
}

bool collusion_free_exhaustive(const PreferenceFunction& s, const HypothesisClass& c) {
    const std::size_t n = c.num_hypotheses(), nx = c.num_instances();
    std::size_t combos = 1;
    for (std::size_t i = 0; i < nx; ++i) combos *= 3;
    std::set<Mask> premises;
    for (std::size_t code = 0; code < combos; ++code) {
        Mask V = full(c);
        std::size_t r = code;
        for (Index x = 0; x < nx; ++x, r /= 3)
            if (r % 3) V &= with_label(c, x, r % 3 == 2);
        if (V) premises.insert(V);
    }
    for (Mask V : premises)
        for (Index h = 0; h < n; ++h) {
            const Mask P = argmin(s, V, h, n);
            if (std::popcount(P) != 1) continue;
            const Index hat = static_cast<Index>(std::countr_zero(P));
            for (std::uint32_t xs = 0; xs < (1u << nx); ++xs) {
                const Mask W = consistent_with(c, V, hat, xs);
                if (argmin(s, W, hat, n) != P) return false;
            }
        }
    return true;
}

int partition_violations(const mt::LvsLevel& lv, const HypothesisClass& c) {
    int bad = 0;
    const auto& blocks = lv.partition.blocks;
    if (blocks.empty()) return 1;
    const std::size_t d = vcd(c, from(lv.H), lv.xbar);
    Mask seen = 0;
    for (std::size_t j = 0; j < blocks.size(); ++j) {
        const auto& b = blocks[j];
        const Mask m = from(b.members);
        bad += m == 0;
        bad += (m & seen) != 0;
        seen |= m;
        if (j + 1 == blocks.size()) {
            bad += b.pivot != mt::npos;
            bad += m != Mask{1} << lv.reference;
            continue;
        }
        bad += b.label == c.row(lv.reference).test(b.pivot);
        bad += (m & with_label(c, b.pivot, b.label)) != m;
        if (b.members.size() > 1 && d >= 1) {
            std::vector<Index> rest;
            for (Index x : lv.xbar)
                if (x != b.pivot) rest.push_back(x);
            const auto cx = mt::compact_distinguishable_set(b.members, rest, c);
            bad += vcd(c, m, cx) > d - 1;
        }
    }
    bad += seen != from(lv.H);
    return bad;
}

std::size_t counting_bound(std::size_t d) {
    using u128 = unsigned __int128;
    const u128 need = u128{1} << d;
    u128 sum = 0, term = 1;
    for (std::size_t k = 0;; ++k) {
        sum += term;
        if (need <= sum) return k;
        term *= 2 * d;
    }
}

HypothesisClass random_class(std::mt19937_64& rng, std::size_t min_h, std::size_t max_h, std::size_t min_x,
                             std::size_t max_x) {
    std::uniform_int_distribution<std::size_t> nx_d(min_x, max_x);
    const std::size_t nx = nx_d(rng);
    const std::size_t cap = std::min(max_h, std::size_t{1} << nx);
    std::uniform_int_distribution<std::size_t> nh_d(std::min(min_h, cap), cap);
    return mt::random_class(rng, nh_d(rng), nx);
}

PreferenceFunction random_sigma(std::mt19937_64& rng, mt::Family f, const HypothesisClass& c) {
    const std::size_t n = c.num_hypotheses();
    std::uniform_int_distribution<int> r3(0, 2);
    auto rank = [&] { return static_cast<mt::Rank>(r3(rng)); };
    switch (f) {
        case mt::Family::Const: return PreferenceFunction::constant(n, rank());
        case mt::Family::Global: {
            std::vector<mt::Rank> g(n);
            for (auto& v : g) v = rank();
            return PreferenceFunction::global(g);
        }
        case mt::Family::Local: {
            std::vector<std::vector<mt::Rank>> m(n, std::vector<mt::Rank>(n));
            for (auto& row : m)
                for (auto& v : row) v = rank();
            return PreferenceFunction::local(m);
        }
        case mt::Family::Gvs:
        case mt::Family::Lvs: break;
    }
    PreferenceFunction s = f == mt::Family::Gvs ? PreferenceFunction::gvs(n, rank())
                                                : PreferenceFunction::lvs(n, rank(), rank());
    const auto spaces = mt::reachable_version_spaces(c);
    std::uniform_int_distribution<std::size_t> pick_v(0, spaces.size() - 1), pick_h(0, n - 1);
    const std::size_t entries = 2 * spaces.size();
    for (std::size_t i = 0; i < entries; ++i) {
        const auto& V = spaces[pick_v(rng)];
        const auto members = V.members();
        const Index g = members[pick_h(rng) % members.size()];
        s.set_entry(V.bits(), pick_h(rng), g, rank());
    }
    if (n >= 2) {
        mt::SubsetRule r;
        r.h_prime = pick_h(rng);
        r.core = to_bits(Mask{1} << r.h_prime, n);
        r.optional = to_bits(static_cast<Mask>(rng()) & full(c), n);
        r.currents = f == mt::Family::Lvs ? to_bits(static_cast<Mask>(rng()) & full(c), n) : mt::Bits(n);
        r.rank = rank();
        s.add_rule(std::move(r));
    }
    return s;
}

}  // namespace oracle

#include "mt/construct.hpp"

#include <algorithm>
#include <bit>
#include <unordered_set>

#include "mt/corpus.hpp"
#include "mt/dims.hpp"

namespace mt {

Partition partition_class(const VersionSpace& H, const InstanceSet& xbar_in, Index h_ref,
                          const HypothesisClass& c) {
    c.check(H);
    if (H.empty()) throw input_error("cannot partition an empty hypothesis set");
    if (!H.contains(h_ref)) throw input_error("reference hypothesis is not in the set being partitioned");
    const InstanceSet xbar = normalize(xbar_in, c.num_instances());
    if (!is_compact_distinguishable(xbar, H, c))
        throw input_error("instance set is not compact-distinguishable on the hypotheses");

    Partition p;
    p.reference = h_ref;
    p.source = xbar;
    VersionSpace rest = H;
    InstanceSet xrest = xbar;
    for (Index x : xbar) {
        const bool y = !c.label(h_ref, x);
        const auto pos = static_cast<std::size_t>(std::find(xrest.begin(), xrest.end(), x) - xrest.begin());
        std::unordered_set<Bits> patterns;
        for (Index h = rest.first(); h != npos; h = rest.next(h)) patterns.insert(project(h, xrest, c));
        Bits block(c.num_hypotheses());
        for (Index h = rest.first(); h != npos; h = rest.next(h)) {
            if (c.label(h, x) != y) continue;
            Bits flipped = project(h, xrest, c);
            flipped.flip(pos);
            if (patterns.count(flipped)) block.set(h);
        }
        VersionSpace b(std::move(block), c.id());
        if (b.empty())
            throw construction_error("empty block at pivot " + c.instance_name(x) + " for reference " +
                                     c.hypothesis_name(h_ref));
        rest = rest - b;
        xrest.erase(xrest.begin() + static_cast<std::ptrdiff_t>(pos));
        p.blocks.push_back({std::move(b), x, y});
    }
    if (rest.size() != 1 || rest.first() != h_ref)
        throw construction_error("partition did not end with the reference hypothesis alone");
    p.blocks.push_back({rest, npos, false});
    return p;
}

namespace {

struct PairHash {
    std::size_t operator()(const std::pair<Bits, Index>& k) const noexcept {
        return std::hash<Bits>{}(k.first) * 1000003u + k.second;
    }
};

class LvsBuilder {
public:
    LvsBuilder(const HypothesisClass& c, LvsConstruction& out) : c_(c), out_(out) {}

    void run(const VersionSpace& V, const VersionSpace& H, const InstanceSet& X, Index h,
             std::size_t depth, const std::optional<InstanceSet>& forced, const TeachingPlan& prefix) {
        InstanceSet xbar;
        if (forced) {
            xbar = normalize(*forced, c_.num_instances());
            if (!std::includes(X.begin(), X.end(), xbar.begin(), xbar.end()) ||
                !is_compact_distinguishable(xbar, H, c_))
                throw input_error("supplied root instance set is not compact-distinguishable");
        } else {
            xbar = compact_distinguishable_set(H, X, c_);
        }
        Partition part = partition_class(H, xbar, h, c_);
        const std::size_t at = out_.levels.size();
        out_.levels.push_back({depth, V, H, X, xbar, h, part, {}});

        std::unordered_set<Bits> induced;
        for (const Block& b : part.blocks) {
            if (b.pivot == npos) continue;
            const Example z{b.pivot, b.label};
            VersionSpace next = refine(V, z, c_);
            if (!induced.insert(refine(H, z, c_).bits()).second)
                throw construction_error("two pivots induce the same subset at depth " + std::to_string(depth));
            if (!keys_.insert({next.bits(), h}).second)
                throw construction_error("version space {" + next.key() + "} visited twice from " +
                                         c_.hypothesis_name(h));
            for (Index g = b.members.first(); g != npos; g = b.members.next(g))
                out_.sigma.set_entry(next.bits(), h, g, static_cast<Rank>(out_.index[g]));
            const Index h_next = b.members.first();  // smallest I in the block

            TeachingPlan plan = prefix;
            plan.target = h_next;
            plan.steps.push_back(z);
            plan.trace.push_back(h_next);
            plan.cost = static_cast<int>(plan.steps.size());
            out_.plans[h_next] = plan;
            out_.levels[at].next.push_back(next);

            InstanceSet rest;
            for (Index x : xbar)
                if (x != b.pivot) rest.push_back(x);
            run(next, b.members, rest, h_next, depth + 1, std::nullopt, plan);
        }
    }

private:
    const HypothesisClass& c_;
    LvsConstruction& out_;
    std::unordered_set<std::pair<Bits, Index>, PairHash> keys_;
};

}  // namespace

LvsConstruction build_sigma_lvs(const HypothesisClass& c, Index h0, const std::optional<InstanceSet>& root_xbar) {
    if (h0 >= c.num_hypotheses()) throw input_error("initial hypothesis out of range");
    const std::size_t n = c.num_hypotheses();
    LvsConstruction out{PreferenceFunction::lvs(n, 0, static_cast<Rank>(n) + 1), {}, {}, {}, h0, {}};
    out.index.resize(n);
    for (Index h = 0; h < n; ++h) out.index[h] = h + 1;

    TeachingPlan root;
    root.target = h0;
    root.trace.push_back(h0);
    LvsBuilder builder(c, out);
    builder.run(c.all(), c.all(), c.all_instances(), h0, 0, root_xbar, root);

    // The recurrence charges one example even for the starting hypothesis:
    // a label agreeing with h0 keeps the learner in place.
    const InstanceSet& top = out.levels.front().xbar;
    const Index x = top.empty() ? 0 : top.front();
    root.steps.push_back({x, c.label(h0, x)});
    root.trace.push_back(h0);
    root.cost = 1;
    out.plans[h0] = root;
    if (n == 1) out.notes.push_back("singleton class: no partition step, defaults only");
    return out;
}

std::size_t powerset_tree_min_depth(std::size_t k) {
    const std::size_t need = std::size_t{1} << k;
    std::size_t total = 1, layer = 1, d = 0;
    while (total < need) {
        layer *= (k - d);
        total += layer;
        ++d;
    }
    return d;
}

namespace {

// Teaching tree over the cube, in coordinates relative to h0.  A node's
// children are ranked; the child taught by flipping instance u must not be
// caught by the version space of any later-ranked sibling, i.e. an earlier
// child's difference from the parent avoids every later child's instance.
class PowersetTree {
public:
    PowersetTree(std::size_t k) : k_(k), n_(1u << k), placed_(n_), path_(n_), parent_(n_, npos),
                                   via_(n_, npos), kids_(n_) {}

    bool build(std::size_t D) {
        placed_[0] = true;
        std::vector<std::uint32_t> level{0};
        for (std::size_t d = 0; d + 1 < D; ++d) {
            std::vector<std::uint32_t> next;
            for (auto c : level) {
                std::uint32_t run = 0;
                for (std::size_t u = 0; u < k_; ++u) {
                    if (path_[c] & bit(u)) continue;
                    run |= bit(u);
                    std::uint32_t pick = d == 0 ? c ^ bit(u) : best_under(c, run, u);
                    if (placed_[pick]) continue;
                    attach(c, pick, u);
                    next.push_back(pick);
                }
            }
            level = std::move(next);
        }
        std::vector<std::uint32_t> rest;
        for (std::uint32_t m = 0; m < n_; ++m)
            if (!placed_[m]) rest.push_back(m);
        last_ = level;
        room_ = k_ - (D - 1);
        assign_.assign(n_, {});
        budget_ = 2'000'000;
        if (!fill(rest, 0)) return false;
        for (auto c : last_) {
            auto order = peel(c, assign_[c]);
            for (auto [leaf, u] : order) attach(c, leaf, u);
        }
        return true;
    }

    std::size_t k_;
    std::uint32_t n_;
    std::vector<bool> placed_;
    std::vector<std::uint32_t> path_;
    std::vector<Index> parent_, via_;
    std::vector<std::vector<std::uint32_t>> kids_;

private:
    std::uint32_t bit(std::size_t u) const { return 1u << (k_ - 1 - u); }

    void attach(std::uint32_t parent, std::uint32_t child, std::size_t u) {
        placed_[child] = true;
        parent_[child] = parent;
        via_[child] = u;
        path_[child] = path_[parent] | bit(u);
        kids_[parent].push_back(child);
    }

    // Prefer the full prefix run; otherwise the largest free flip set inside it that uses u.
    std::uint32_t best_under(std::uint32_t c, std::uint32_t run, std::size_t u) const {
        if (!placed_[c ^ run]) return c ^ run;
        std::uint32_t best = c ^ run;
        int best_pop = -1;
        for (std::uint32_t m = 1; m <= run; ++m) {
            if ((m & ~run) || !(m & bit(u)) || placed_[c ^ m]) continue;
            if (std::popcount(m) > best_pop) {
                best_pop = std::popcount(m);
                best = c ^ m;
            }
        }
        return best;
    }

    // Ranked (leaf, instance) order for the leaves under c, or empty on failure.
    // Peels from the back: the last-ranked leaf needs an instance no other leaf flips.
    std::vector<std::pair<std::uint32_t, std::size_t>> peel(std::uint32_t c,
                                                            std::vector<std::uint32_t> leaves) const {
        std::vector<std::pair<std::uint32_t, std::size_t>> order;
        while (!leaves.empty()) {
            bool found = false;
            for (std::size_t i = 0; i < leaves.size() && !found; ++i) {
                std::uint32_t others = 0;
                for (std::size_t j = 0; j < leaves.size(); ++j)
                    if (j != i) others |= leaves[j] ^ c;
                std::uint32_t own = (leaves[i] ^ c) & ~others;
                for (std::size_t u = 0; u < k_ && !found; ++u)
                    if (own & bit(u)) {
                        order.emplace_back(leaves[i], u);
                        leaves.erase(leaves.begin() + static_cast<std::ptrdiff_t>(i));
                        found = true;
                    }
            }
            if (!found) return {};
        }
        std::reverse(order.begin(), order.end());
        return order;
    }

    bool fill(const std::vector<std::uint32_t>& rest, std::size_t i) {
        if (i == rest.size()) return true;
        if (budget_ == 0) return false;
        --budget_;
        const auto h = rest[i];
        for (auto c : last_) {
            if (((h ^ c) & path_[c]) || assign_[c].size() >= room_) continue;
            assign_[c].push_back(h);
            if (!peel(c, assign_[c]).empty() && fill(rest, i + 1)) return true;
            assign_[c].pop_back();
        }
        return false;
    }

    std::vector<std::uint32_t> last_;
    std::size_t room_ = 0;
    std::vector<std::vector<std::uint32_t>> assign_;
    std::size_t budget_ = 0;
};

}  // namespace

PowersetConstruction build_sigma_local_powerset(std::size_t k, Index h0) {
    if (k < 2 || k > 8) throw input_error("powerset tree builder supports 2 <= k <= 8");
    const HypothesisClass c = powerset_class(k);
    const std::size_t n = c.num_hypotheses();
    if (h0 >= n) throw input_error("initial hypothesis out of range");

    for (std::size_t D = powerset_tree_min_depth(k); D <= k; ++D) {
        PowersetTree t(k);
        if (!t.build(D)) continue;

        PowersetConstruction out;
        out.k = k;
        out.h0 = h0;
        out.parent.assign(n, npos);
        out.children.assign(n, {});
        std::vector<std::vector<Rank>> m(n, std::vector<Rank>(n, static_cast<Rank>(n) + 1));
        for (std::uint32_t mask = 0; mask < n; ++mask) {
            const Index h = h0 ^ mask;
            m[h][h] = 0;
            Rank r = 1;
            for (auto kid : t.kids_[mask]) {
                m[h][h0 ^ kid] = r++;
                out.children[h].push_back(h0 ^ kid);
            }
            if (t.parent_[mask] != npos) out.parent[h] = h0 ^ t.parent_[mask];
        }
        out.sigma = PreferenceFunction::local(m);

        for (std::uint32_t mask = 0; mask < n; ++mask) {
            const Index h = h0 ^ mask;
            TeachingPlan plan;
            plan.target = h;
            std::vector<std::uint32_t> chain;
            for (std::uint32_t v = mask; v != 0; v = static_cast<std::uint32_t>(t.parent_[v])) chain.push_back(v);
            std::reverse(chain.begin(), chain.end());
            plan.trace.push_back(h0);
            for (auto v : chain) {
                const Index u = t.via_[v];
                plan.steps.push_back({u, c.label(h0 ^ v, u)});
                plan.trace.push_back(h0 ^ v);
            }
            if (chain.empty()) {
                plan.steps.push_back({0, c.label(h0, 0)});
                plan.trace.push_back(h0);
            }
            plan.cost = static_cast<int>(plan.steps.size());
            out.depth = std::max(out.depth, chain.size());
            out.plans[h] = std::move(plan);
        }
        return out;
    }
    throw construction_error("no teaching tree of depth <= k covers the powerset class");
}

}  // namespace mt

#include "mt/teach.hpp"

#include <algorithm>
#include <numeric>

namespace mt {

CostSolver::CostSolver(const PreferenceFunction& s, const HypothesisClass& c, Index target,
                       CostOptions opt)
    : s_(s), c_(c), target_(target), opt_(opt) {
    if (s.num_hypotheses() != c.num_hypotheses())
        throw input_error("preference function does not match the hypothesis class");
    if (target >= c.num_hypotheses()) throw input_error("target hypothesis out of range");
    // Iterative deepening handles the common shallow case; deeper questions go to
    // the exhaustive retrograde pass, which also settles unreachability.
    deepening_limit_ = static_cast<int>(2 * c.num_instances() + 2);
}

std::size_t CostSolver::node(const Bits& V, Index h) {
    auto [it, fresh] = ids_.try_emplace({V, h}, nodes_.size());
    if (fresh) {
        Node n;
        n.V = V;
        n.h = h;
        nodes_.push_back(std::move(n));
    }
    return it->second;
}

std::vector<CostSolver::Move> CostSolver::moves(const VersionSpace& V, Index h) {
    c_.check(V);
    std::vector<Move> out;
    for (Index x = 0; x < c_.num_instances(); ++x) {
        Example z{x, c_.label(target_, x)};
        VersionSpace next = refine(V, z, c_);
        if (!next.contains(target_)) continue;
        out.push_back({z, next, preferred(s_, next, h, c_).members()});
    }
    return out;
}

void CostSolver::expand(std::size_t id) {
    if (nodes_[id].expanded) return;
    const Bits V = nodes_[id].V;
    const Index h = nodes_[id].h;
    bool direct = false;
    std::vector<std::vector<std::size_t>> succ;
    for (auto& m : moves(VersionSpace(V, c_.id()), h)) {
        if (m.candidates.size() == 1 && m.candidates.front() == target_) {
            direct = true;
            continue;
        }
        std::vector<std::size_t> ids;
        ids.reserve(m.candidates.size());
        for (Index g : m.candidates) ids.push_back(node(m.next.bits(), g));
        succ.push_back(std::move(ids));
    }
    Node& n = nodes_[id];
    n.expanded = true;
    n.direct = direct;
    n.succ = std::move(succ);
    if (direct) n.lo = n.hi = 1;
    else n.lo = std::max(n.lo, 2);
}

// Is D(state) <= b?  Results are recorded as bounds, valid for every caller.
bool CostSolver::within(std::size_t id, int b) {
    if (nodes_[id].hi <= b) return true;
    if (nodes_[id].lo > b) return false;
    expand(id);
    if (nodes_[id].direct) return true;
    if (nodes_[id].lo > b) return false;
    const std::size_t nm = nodes_[id].succ.size();
    for (std::size_t m = 0; m < nm; ++m) {
        bool ok = true;
        const std::size_t nc = nodes_[id].succ[m].size();
        for (std::size_t i = 0; i < nc && ok; ++i) ok = within(nodes_[id].succ[m][i], b - 1);
        if (ok) {
            nodes_[id].hi = std::min(nodes_[id].hi, b);
            return true;
        }
    }
    nodes_[id].lo = b + 1;
    return false;
}

void CostSolver::retrograde(std::size_t root) {
    std::vector<std::size_t> order{root};
    std::unordered_map<std::size_t, std::size_t> local{{root, 0}};
    for (std::size_t i = 0; i < order.size(); ++i) {
        expand(order[i]);
        for (const auto& ids : nodes_[order[i]].succ)
            for (auto t : ids)
                if (local.try_emplace(t, order.size()).second) {
                    order.push_back(t);
                    if (order.size() > opt_.state_cap)
                        throw capacity_error("cost evaluation exceeded " + std::to_string(opt_.state_cap) +
                                             " states");
                }
    }
    const std::size_t n = order.size();
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> preds(n);
    std::vector<std::vector<std::size_t>> pending(n);
    std::vector<int> value(n, kUnreachable);
    std::vector<std::size_t> queue;
    for (std::size_t i = 0; i < n; ++i) {
        const Node& nd = nodes_[order[i]];
        pending[i].resize(nd.succ.size());
        for (std::size_t m = 0; m < nd.succ.size(); ++m) {
            pending[i][m] = nd.succ[m].size();
            for (auto t : nd.succ[m]) preds[local.at(t)].emplace_back(i, m);
        }
        if (nd.direct) {
            value[i] = 1;
            queue.push_back(i);
        }
    }
    // Breadth-first in cost order: a move resolves when its last (costliest)
    // candidate resolves, and the first resolved move of a state is its best.
    for (std::size_t q = 0; q < queue.size(); ++q) {
        const std::size_t t = queue[q];
        for (auto [s, m] : preds[t]) {
            if (value[s] != kUnreachable) continue;
            if (--pending[s][m] == 0) {
                value[s] = value[t] + 1;
                queue.push_back(s);
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i) nodes_[order[i]].lo = nodes_[order[i]].hi = value[i];
}

int CostSolver::cost(const VersionSpace& V, Index h) {
    c_.check(V);
    if (!V.contains(h)) throw input_error("current hypothesis is not in the version space");
    if (opt_.zero_at_target && h == target_) return 0;
    const std::size_t id = node(V.bits(), h);
    for (int b = nodes_[id].lo; b <= deepening_limit_; b = nodes_[id].lo) {
        if (nodes_[id].lo == nodes_[id].hi) return nodes_[id].lo;
        if (within(id, b)) return b;
    }
    if (nodes_[id].lo != nodes_[id].hi) retrograde(id);
    return nodes_[id].lo;
}

int d_sigma(const PreferenceFunction& s, const HypothesisClass& c, const VersionSpace& H, Index h,
            Index h_star, CostOptions opt) {
    CostSolver solver(s, c, h_star, opt);
    return solver.cost(H, h);
}

int td_sigma(const PreferenceFunction& s, const HypothesisClass& c, Index h0,
             std::vector<int>* per_target, CostOptions opt) {
    if (h0 >= c.num_hypotheses()) throw input_error("initial hypothesis out of range");
    int worst = 0;
    if (per_target) per_target->assign(c.num_hypotheses(), 0);
    const VersionSpace all = c.all();
    for (Index t = 0; t < c.num_hypotheses(); ++t) {
        CostSolver solver(s, c, t, opt);
        int v = solver.cost(all, h0);
        if (per_target) (*per_target)[t] = v;
        worst = std::max(worst, v);
    }
    return worst;
}

namespace {

// The adversary takes the costliest candidate, avoiding the target on ties.
Index adversarial_pick(CostSolver& solver, const VersionSpace& next, const std::vector<Index>& cands) {
    Index best = npos;
    int best_cost = -1;
    for (Index g : cands) {
        int v = solver.cost(next, g);
        bool better = v > best_cost ||
                      (v == best_cost && best == solver.target() && g != solver.target());
        if (better) {
            best = g;
            best_cost = v;
        }
    }
    return best;
}

}  // namespace

TeachingPlan extract_plan(const PreferenceFunction& s, const HypothesisClass& c, Index h0,
                          Index h_star, CostOptions opt) {
    if (h0 >= c.num_hypotheses()) throw input_error("initial hypothesis out of range");
    opt.zero_at_target = false;
    CostSolver solver(s, c, h_star, opt);
    TeachingPlan plan;
    plan.target = h_star;
    plan.trace.push_back(h0);
    VersionSpace V = c.all();
    Index h = h0;
    const int total = solver.cost(V, h);
    if (total == kUnreachable)
        throw input_error("target " + c.hypothesis_name(h_star) + " cannot be taught from " +
                          c.hypothesis_name(h0));
    plan.cost = total;
    for (int left = total; left > 0; --left) {
        bool moved = false;
        for (auto& m : solver.moves(V, h)) {
            if (left == 1) {
                if (m.candidates.size() != 1 || m.candidates.front() != h_star) continue;
            } else {
                int worst = 0;
                for (Index g : m.candidates) worst = std::max(worst, solver.cost(m.next, g));
                if (worst != left - 1) continue;
            }
            plan.steps.push_back(m.z);
            h = adversarial_pick(solver, m.next, m.candidates);
            V = m.next;
            plan.trace.push_back(h);
            moved = true;
            break;
        }
        if (!moved) throw construction_error("cost table inconsistent while extracting a plan");
    }
    return plan;
}

Trace simulate(const PreferenceFunction& s, const HypothesisClass& c, Index h0,
               const std::vector<Example>& steps, TieMode tie, Index target) {
    if (h0 >= c.num_hypotheses()) throw input_error("initial hypothesis out of range");
    std::optional<CostSolver> solver;
    if (tie == TieMode::Adversarial) {
        if (target >= c.num_hypotheses()) throw input_error("adversarial ties need a valid target");
        solver.emplace(s, c, target);
    }
    Trace tr;
    VersionSpace V = c.all();
    Index h = h0;
    tr.hypotheses.push_back(h);
    tr.spaces.push_back(V);
    for (std::size_t i = 0; i < steps.size(); ++i) {
        VersionSpace next = refine(V, steps[i], c);
        if (next.empty()) {
            tr.halted_at = i;
            break;
        }
        auto cands = preferred(s, next, h, c).members();
        if (tie == TieMode::LowestIndex || cands.size() == 1 || !next.contains(target))
            h = cands.front();
        else
            h = adversarial_pick(*solver, next, cands);
        V = std::move(next);
        tr.hypotheses.push_back(h);
        tr.spaces.push_back(V);
    }
    return tr;
}

int sigma_td_global_bruteforce(const HypothesisClass& c, Index h0, std::size_t cap,
                               std::vector<Rank>* best_order) {
    const std::size_t n = c.num_hypotheses();
    if (n > cap)
        throw capacity_error("global oracle enumerates orders of at most " + std::to_string(cap) +
                             " hypotheses, got " + std::to_string(n));
    if (h0 >= n) throw input_error("initial hypothesis out of range");
    std::vector<Rank> ranks(n);
    std::iota(ranks.begin(), ranks.end(), 0);
    int best = kUnreachable;
    const VersionSpace all = c.all();
    do {
        auto s = PreferenceFunction::global(ranks);
        int worst = 0;
        for (Index t = 0; t < n && worst < best; ++t) {
            CostSolver solver(s, c, t);
            worst = std::max(worst, solver.cost(all, h0));
        }
        if (worst < best) {
            best = worst;
            if (best_order) *best_order = ranks;
        }
    } while (best > 1 && std::next_permutation(ranks.begin(), ranks.end()));
    return best;
}

}  // namespace mt

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mt/construct.hpp"
#include "mt/corpus.hpp"
#include "mt/io.hpp"
#include "mt/teach.hpp"
#include "support.hpp"

using namespace mt;

TEST_CASE("evaluate on bundled tables") {
    const auto w = warmuth_class();
    const auto& sc = builtin_sigma("warmuth.const").sigma;
    CHECK(evaluate(sc, 3, w.all(), 0, w) == 0);
    const auto& sl = builtin_sigma("warmuth.local").sigma;
    CHECK(evaluate(sl, 2, w.all(), 0, w) == 4);
    CHECK(evaluate(sl, 5, w.all(), 0, w) == 1);
    CHECK(evaluate(sl, 6, w.all(), 0, w) == 3);
    CHECK(evaluate(sl, 0, w.all(), 0, w) == 0);
    const auto& sg = builtin_sigma("warmuth.gvs").sigma;
    CHECK(evaluate(sg, 0, w.subset({0, 5}), 3, w) == 0);
    CHECK(evaluate(sg, 5, w.subset({0, 5}), 3, w) == 1);
    CHECK_THROWS_AS(evaluate(sc, 3, w.subset({0}), 0, w), input_error);
}

TEST_CASE("evaluate on the appendix tables") {
    const auto a = appendix_class();
    const auto& g = builtin_sigma("appendix.gvs").sigma;
    CHECK(evaluate(g, 3, a.subset({3}), 0, a) == 0);
    const auto& l = builtin_sigma("appendix.lvs").sigma;
    CHECK(evaluate(l, 5, a.subset({5}), 3, a) == 6);
    CHECK(evaluate(l, 1, a.subset({1, 2, 3, 4}), 0, a) == 2);
    CHECK(evaluate(l, 2, a.subset({1, 2, 3, 4}), 0, a) == 7);
    CHECK(evaluate(l, 3, a.subset({3, 5}), 0, a) == 4);
    CHECK(evaluate(l, 5, a.subset({3, 5}), 0, a) == 6);
    CHECK(evaluate(l, 0, a.subset({0, 2}), 0, a) == 0);
    CHECK(evaluate(l, 2, a.subset({0, 2}), 0, a) == 8);
}

TEST_CASE("subset rule families expand lazily") {
    const auto w = warmuth_class();
    const auto& s = builtin_sigma("warmuth.lvs").sigma;
    // {h2} ∪ any subset of {h1,h7,h6,h9}, current h1 or h2.
    CHECK(evaluate(s, 1, w.subset({1}), 0, w) == 0);
    CHECK(evaluate(s, 1, w.subset({0, 1, 6, 8}), 1, w) == 0);
    CHECK(evaluate(s, 1, w.subset({0, 1, 6, 8}), 2, w) == 1);
    CHECK(evaluate(s, 1, w.subset({1, 2}), 0, w) == 1);
}

TEST_CASE("candidate sets use the refined version space") {
    const auto w = warmuth_class();
    const auto& sc = builtin_sigma("warmuth.const").sigma;
    CHECK(candidate_set(sc, w.all(), 3, {0, true}, w) == w.subset({0, 4, 5, 7, 9}));
    CHECK(candidate_set(hamming_local(w), w.all(), 0, {0, false}, w) == w.subset({1}));
    const auto l = build_sigma_lvs(w, 0);
    CHECK(candidate_set(l.sigma, w.all(), 0, {0, false}, w) == w.subset({2}));
    CHECK(candidate_set(sc, w.subset({0}), 0, {0, false}, w).empty());
}

TEST_CASE("collusion checker verdicts") {
    const auto w = warmuth_class();
    CHECK(collusion_free_check(builtin_sigma("warmuth.const").sigma, w).collusion_free);
    CHECK(collusion_free_check(build_sigma_lvs(w, 0).sigma, w).collusion_free);

    // Two hypotheses that agree on x1; from h1 the learner prefers h2.
    const auto c = HypothesisClass::from_strings({"00", "01"});
    const auto s = PreferenceFunction::local({{1, 0}, {0, 1}});
    const auto r = collusion_free_check(s, c);
    CHECK_FALSE(r.collusion_free);
    REQUIRE(r.counterexample);
    CHECK(r.counterexample->after != c.subset({r.counterexample->preferred}));
    CHECK_FALSE(oracle::collusion_free_exhaustive(s, c));
}

TEST_CASE("two bundled tables collude on unlisted version spaces") {
    // appendix.gvs has no {h1,h3} entry; after (x5,0) from {h1,h3,h5} the learner at h1 ties with h3.
    const auto a = appendix_class();
    const auto ra = collusion_free_check(builtin_sigma("appendix.gvs").sigma, a);
    CHECK_FALSE(ra.collusion_free);
    CHECK_FALSE(oracle::collusion_free_exhaustive(builtin_sigma("appendix.gvs").sigma, a));
    REQUIRE(ra.counterexample);
    CHECK(ra.counterexample->after == a.subset({0, 2}));
    // warmuth.lvs ranks both h1 and h6 at 0 in {h1,h6} from h1.
    const auto w = warmuth_class();
    const auto rw = collusion_free_check(builtin_sigma("warmuth.lvs").sigma, w);
    CHECK_FALSE(rw.collusion_free);
    REQUIRE(rw.counterexample);
    CHECK(rw.counterexample->after == w.subset({0, 5}));
}

TEST_CASE("collusion checker cap") {
    const auto p = powerset_class(6);
    CHECK_THROWS_AS(collusion_free_check(PreferenceFunction::constant(64), p, 100), capacity_error);
}

TEST_CASE("family structure") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 60; ++trial) {
        const auto c = oracle::random_class(rng, 2, 6, 2, 4);
        const auto spaces = reachable_version_spaces(c);
        const auto g = oracle::random_sigma(rng, Family::Global, c);
        const auto k = PreferenceFunction::constant(c.num_hypotheses(), 2);
        for (const auto& V : spaces)
            for (Index h = 0; h < c.num_hypotheses(); ++h)
                for (Index x : V.members()) {
                    CHECK(evaluate(g, x, V, h, c) == evaluate(g, x, c.all(), 0, c));
                    CHECK(evaluate(k, x, V, h, c) == 2);
                }
        // Constant preferences make every consistent hypothesis a candidate.
        for (const auto& V : spaces) CHECK(preferred(k, V, 0, c) == V);

        // A Local table that ignores h and a Gvs table that ignores V both reduce to Global.
        const auto gl = oracle::random_sigma(rng, Family::Local, c);
        std::vector<std::vector<Rank>> m(c.num_hypotheses(), std::vector<Rank>(c.num_hypotheses()));
        for (auto& row : m)
            for (Index x = 0; x < row.size(); ++x) row[x] = gl.local_rank(0, x);
        const auto flat = PreferenceFunction::local(m);
        auto gv = PreferenceFunction::gvs(c.num_hypotheses(), 0);
        std::vector<Rank> glob;
        for (Index x = 0; x < c.num_hypotheses(); ++x) glob.push_back(m[0][x]);
        for (const auto& V : spaces)
            for (Index x : V.members()) gv.set_entry(V.bits(), npos, x, m[0][x]);
        const auto as_global = PreferenceFunction::global(glob);
        for (const auto& V : spaces)
            for (Index h = 0; h < c.num_hypotheses(); ++h)
                for (Index x : V.members()) {
                    CHECK(evaluate(flat, x, V, h, c) == evaluate(as_global, x, V, h, c));
                    CHECK(evaluate(gv, x, V, h, c) == evaluate(as_global, x, V, h, c));
                }
    }
}

TEST_CASE("single-step collusion check agrees with the exhaustive definition") {
    std::mt19937_64 rng(99);
    int disagreements = 0, verdicts_false = 0;
    for (int trial = 0; trial < 80; ++trial) {
        const auto c = oracle::random_class(rng, 1, 6, 1, 4);
        for (Family f : {Family::Const, Family::Global, Family::Local, Family::Gvs, Family::Lvs}) {
            const auto s = oracle::random_sigma(rng, f, c);
            const bool fast = collusion_free_check(s, c).collusion_free;
            disagreements += fast != oracle::collusion_free_exhaustive(s, c);
            verdicts_false += !fast;
        }
    }
    CHECK(disagreements == 0);
    CHECK(verdicts_false > 0);
}

TEST_CASE("collusion-free functions keep the learner at its unique choice") {
    std::mt19937_64 rng(3);
    int checked = 0;
    for (int trial = 0; trial < 40; ++trial) {
        const auto c = oracle::random_class(rng, 2, 6, 2, 4);
        const auto s = oracle::random_sigma(rng, Family::Global, c);
        if (!collusion_free_check(s, c).collusion_free) continue;
        for (Index t = 0; t < c.num_hypotheses(); ++t) {
            CostSolver solver(s, c, t);
            if (solver.cost(c.all(), 0) == kUnreachable) continue;
            const auto plan = extract_plan(s, c, 0, t);
            auto steps = plan.steps;
            for (Index x = 0; x < c.num_instances(); ++x) steps.push_back({x, c.label(t, x)});
            const auto tr = simulate(s, c, 0, steps, TieMode::Adversarial, t);
            for (std::size_t i = plan.steps.size(); i < tr.hypotheses.size(); ++i) CHECK(tr.hypotheses[i] == t);
            ++checked;
        }
    }
    CHECK(checked > 0);
}

TEST_CASE("sigma JSON round trip") {
    for (const auto& s : bundled_sigmas()) {
        const json j = sigma_to_json(s.sigma);
        const auto back = sigma_from_json(j, s.sigma.num_hypotheses());
        CHECK(sigma_to_json(back) == j);
        const auto c = builtin_class(s.class_name);
        for (const auto& V : reachable_version_spaces(c))
            for (Index h = 0; h < c.num_hypotheses(); ++h)
                for (Index x : V.members()) CHECK(evaluate(back, x, V, h, c) == evaluate(s.sigma, x, V, h, c));
    }
    CHECK_THROWS_AS(sigma_from_json(json::parse(R"({"family":"global","ranks":[0,1]})"), 3), input_error);
    CHECK_THROWS_AS(sigma_from_json(json::parse(R"({"family":"warm"})"), 3), input_error);
    CHECK_THROWS_AS(sigma_from_json(json::parse(R"({"family":"gvs","entries":[{"vs":[7],"ranks":{}}]})"), 3),
                    input_error);
    const auto lvs = sigma_from_json(
        json::parse(R"({"family":"lvs","defaults":{"self":0,"other":11},"entries":[{"vs":[0,4],"h":0,"ranks":{"4":1}}]})"),
        10);
    const auto w = warmuth_class();
    CHECK(evaluate(lvs, 4, w.subset({0, 4}), 0, w) == 1);
    CHECK(evaluate(lvs, 0, w.subset({0, 4}), 0, w) == 0);
    CHECK(evaluate(lvs, 4, w.subset({0, 4}), 1, w) == 11);
}

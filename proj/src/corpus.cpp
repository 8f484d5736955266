#include "mt/corpus.hpp"

#include <unordered_set>

namespace mt {

namespace {

// The bundled tables number hypotheses and instances from 1.
Bits set1(std::size_t n, std::initializer_list<Index> one_based) {
    Bits b(n);
    for (Index i : one_based) b.set(i - 1);
    return b;
}

std::vector<Example> seq1(const HypothesisClass& c, Index h1, std::initializer_list<Index> xs) {
    std::vector<Example> out;
    for (Index x : xs) out.push_back({x - 1, c.label(h1 - 1, x - 1)});
    return out;
}

TeacherMap map1(const HypothesisClass& c, std::initializer_list<std::initializer_list<Index>> rows) {
    TeacherMap T;
    Index h = 1;
    for (auto r : rows) {
        T[h - 1] = seq1(c, h, r);
        ++h;
    }
    return T;
}

PreferenceFunction warmuth_gvs() {
    // Each h_i is preferred in {h_i} and in {h_i, p_i}.
    const std::pair<Index, Index> pairs[] = {{1, 6}, {2, 7}, {3, 8}, {4, 9}, {5, 10},
                                             {6, 9}, {7, 10}, {8, 6}, {9, 7}, {10, 8}};
    auto s = PreferenceFunction::gvs(10, 1);
    for (auto [h, p] : pairs) {
        s.set_entry(set1(10, {h}), npos, h - 1, 0);
        s.set_entry(set1(10, {h, p}), npos, h - 1, 0);
    }
    return s;
}

PreferenceFunction warmuth_lvs() {
    // σ(h_i; {h_i} ∪ S, h) = 0 for any S ⊆ O_i and h ∈ {h1, h_i}.  The table leaves
    // the remaining values open; both defaults are 1 (see README).
    const std::initializer_list<Index> others[] = {
        {5, 6, 8, 10}, {1, 7, 6, 9}, {2, 7, 8, 10}, {3, 6, 8, 9}, {4, 7, 9, 10},
        {1, 4, 5, 9},  {1, 2, 5, 10}, {1, 2, 3, 6}, {2, 3, 4, 7}, {3, 4, 5, 8}};
    auto s = PreferenceFunction::lvs(10, 1, 1);
    Index i = 1;
    for (auto o : others) {
        SubsetRule r;
        r.h_prime = i - 1;
        r.core = set1(10, {i});
        r.optional = Bits(10);
        for (Index g : o) r.optional.set(g - 1);
        r.currents = i == 1 ? set1(10, {1}) : set1(10, {1, i});
        r.rank = 0;
        s.add_rule(std::move(r));
        ++i;
    }
    return s;
}

PreferenceFunction appendix_gvs() {
    const std::initializer_list<std::initializer_list<Index>> zero[] = {
        {{1, 3, 4, 5}, {1, 3, 4}, {1, 3, 5}, {1}},
        {{2, 3, 4, 5}, {2, 3, 4}, {2, 3, 5}, {2}},
        {{3, 4, 5}, {3, 4}, {3, 5}, {3}},
        {{4, 6}, {4}},
        {{5, 6}, {5}},
        {{1, 2, 6}, {1, 6}, {2, 6}, {6}}};
    auto s = PreferenceFunction::gvs(6, 1);
    Index h = 1;
    for (auto sets : zero) {
        for (auto v : sets) s.set_entry(set1(6, v), npos, h - 1, 0);
        ++h;
    }
    return s;
}

PreferenceFunction appendix_lvs() {
    auto s = PreferenceFunction::lvs(6, 0, 8);
    struct Row {
        std::initializer_list<Index> V;
        Index h;
        std::initializer_list<std::pair<Index, Rank>> named;
    };
    const Row rows[] = {{{2, 3, 4, 5}, 1, {{2, 2}}},
                        {{3, 4, 5}, 1, {{3, 3}}},
                        {{4, 6}, 1, {{4, 4}, {6, 6}}},
                        {{5, 6}, 1, {{5, 5}}},
                        {{6}, 4, {{6, 6}}}};
    for (const auto& r : rows) {
        Bits V = set1(6, r.V);
        for (Index g : r.V) s.set_entry(V, r.h - 1, g - 1, 7);  // "others"
        for (auto [g, rank] : r.named) s.set_entry(V, r.h - 1, g - 1, rank);
    }
    return s;
}

std::vector<std::string> bit_names(std::size_t k) {
    std::vector<std::string> names;
    for (std::size_t r = 0; r < (std::size_t{1} << k); ++r) {
        std::string s(k, '0');
        for (std::size_t j = 0; j < k; ++j)
            if ((r >> (k - 1 - j)) & 1) s[j] = '1';
        names.push_back(s);
    }
    return names;
}

}  // namespace

HypothesisClass warmuth_class() {
    return HypothesisClass::from_strings({"11000", "01100", "00110", "00011", "10001", "11010", "01101",
                                          "10110", "01011", "10101"});
}

HypothesisClass appendix_class() {
    return HypothesisClass::from_strings({"100001", "010001", "111000", "111100", "111010", "000111"});
}

HypothesisClass powerset_class(std::size_t k) {
    if (k < 1 || k > 20) throw input_error("powerset class needs 1 <= k <= 20");
    auto names = bit_names(k);
    std::vector<Bits> rows;
    rows.reserve(names.size());
    for (const auto& s : names) {
        Bits b(k);
        for (std::size_t j = 0; j < k; ++j)
            if (s[j] == '1') b.set(j);
        rows.push_back(std::move(b));
    }
    std::vector<std::string> inst;
    for (std::size_t j = 0; j < k; ++j) inst.push_back("x" + std::to_string(j));
    return HypothesisClass(std::move(rows), std::move(inst), std::move(names));
}

std::vector<NamedSigma> bundled_sigmas() {
    const auto w = warmuth_class();
    std::vector<NamedSigma> out;
    out.push_back({"warmuth.const", "warmuth", "constant preference, all ranks 0", PreferenceFunction::constant(10, 0)});
    out.push_back({"warmuth.global", "warmuth", "global preference, all ranks 0",
                   PreferenceFunction::global(std::vector<Rank>(10, 0))});
    out.push_back({"warmuth.local", "warmuth", "Hamming distance to the current hypothesis", hamming_local(w)});
    out.push_back({"warmuth.gvs", "warmuth", "version-space preference, rank 0 on {h_i} and {h_i, partner}",
                   warmuth_gvs()});
    out.push_back({"warmuth.lvs", "warmuth", "local version-space preference with teaching complexity 1",
                   warmuth_lvs()});
    out.push_back({"appendix.const", "appendix", "constant preference, all ranks 0",
                   PreferenceFunction::constant(6, 0)});
    out.push_back({"appendix.global", "appendix", "global preference favouring h3",
                   PreferenceFunction::global({1, 1, 0, 1, 1, 1})});
    out.push_back({"appendix.gvs", "appendix", "version-space preference with singleton teaching sets",
                   appendix_gvs()});
    out.push_back({"appendix.lvs", "appendix", "recursive construction from h1 over {x2,x3,x4,x5}",
                   appendix_lvs()});
    return out;
}

std::vector<NamedTeacherMap> bundled_teacher_maps() {
    const auto w = warmuth_class();
    const auto a = appendix_class();
    std::vector<NamedTeacherMap> out;
    out.push_back({"warmuth.S_const", "warmuth", "minimal teaching sets (constant and global preference)",
                   map1(w, {{1, 2, 4}, {2, 3, 5}, {1, 3, 4}, {2, 4, 5}, {1, 3, 5},
                            {1, 2, 4}, {2, 3, 5}, {1, 3, 4}, {2, 4, 5}, {1, 3, 5}})});
    out.push_back({"warmuth.S_gvs", "warmuth", "non-clashing teaching sets",
                   map1(w, {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {1, 5}, {2, 4}, {3, 5}, {1, 4}, {2, 5}, {1, 3}})});
    out.push_back({"warmuth.S_local", "warmuth", "teaching sequences under Hamming preference from h1",
                   map1(w, {{1}, {3}, {3, 4}, {5, 4}, {5}, {4}, {3, 5}, {4, 3}, {4, 5}, {5, 3}})});
    out.push_back({"warmuth.S_lvs", "warmuth", "single-example sequences under warmuth.lvs from h1",
                   map1(w, {{1}, {2}, {3}, {4}, {5}, {3}, {4}, {5}, {1}, {2}})});
    out.push_back({"appendix.S_const", "appendix", "minimal teaching sets",
                   map1(a, {{1, 6}, {2, 6}, {3, 4, 5}, {4, 5}, {4, 5}, {4, 5}})});
    out.push_back({"appendix.S_global", "appendix", "teaching sets under appendix.global",
                   map1(a, {{1, 6}, {2, 6}, {1}, {4, 5}, {4, 5}, {4, 5}})});
    out.push_back({"appendix.S_gvs", "appendix", "singleton non-clashing teaching sets",
                   map1(a, {{1}, {2}, {3}, {4}, {5}, {6}})});
    out.push_back({"appendix.T_lvs", "appendix", "teaching sequences under appendix.lvs from h1",
                   map1(a, {{2}, {2}, {3}, {4}, {5}, {4, 5}})});
    return out;
}

std::vector<NamedArtifact> list_artifacts() {
    std::vector<NamedArtifact> out{{"class", "warmuth", "10 hypotheses over 5 instances"},
                                   {"class", "appendix", "6 hypotheses over 6 instances"},
                                   {"class", "powerset-K", "all 2^K labelings of K instances, 1 <= K <= 20"}};
    for (const auto& s : bundled_sigmas()) out.push_back({"sigma", s.name, s.description});
    for (const auto& t : bundled_teacher_maps()) out.push_back({"teacher-map", t.name, t.description});
    return out;
}

bool is_builtin_class(const std::string& name) {
    if (name == "warmuth" || name == "appendix") return true;
    if (name.rfind("powerset-", 0) != 0) return false;
    const auto digits = name.substr(9);
    return !digits.empty() && digits.size() <= 2 &&
           digits.find_first_not_of("0123456789") == std::string::npos;
}

HypothesisClass builtin_class(const std::string& name) {
    if (name == "warmuth") return warmuth_class();
    if (name == "appendix") return appendix_class();
    if (is_builtin_class(name)) return powerset_class(std::stoul(name.substr(9)));
    throw input_error("unknown built-in class '" + name + "'");
}

const NamedSigma& builtin_sigma(const std::string& name) {
    static const std::vector<NamedSigma> all = bundled_sigmas();
    for (const auto& s : all)
        if (s.name == name) return s;
    throw input_error("unknown built-in preference function '" + name + "'");
}

const NamedTeacherMap& builtin_teacher_map(const std::string& name) {
    static const std::vector<NamedTeacherMap> all = bundled_teacher_maps();
    for (const auto& t : all)
        if (t.name == name) return t;
    throw input_error("unknown built-in teacher map '" + name + "'");
}

HypothesisClass random_class(std::mt19937_64& rng, std::size_t n_hyp, std::size_t n_inst) {
    if (n_inst < 1 || n_inst > 30) throw input_error("random classes need 1 <= instances <= 30");
    if (n_hyp < 1 || n_hyp > (std::size_t{1} << n_inst)) throw input_error("too many hypotheses requested");
    std::uniform_int_distribution<std::uint64_t> draw(0, (std::uint64_t{1} << n_inst) - 1);
    std::unordered_set<std::uint64_t> seen;
    std::vector<Bits> rows;
    while (rows.size() < n_hyp) {
        auto v = draw(rng);
        if (!seen.insert(v).second) continue;
        rows.emplace_back(n_inst, v);
    }
    return HypothesisClass(std::move(rows));
}

}  // namespace mt

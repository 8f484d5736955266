// mteach: command-line front end for the teaching toolkit.
// JSON reports go to stdout, diagnostics to stderr.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "mt/construct.hpp"
#include "mt/corpus.hpp"
#include "mt/dims.hpp"
#include "mt/io.hpp"
#include "mt/repro.hpp"
#include "mt/teach.hpp"

using namespace mt;

namespace {

enum Exit { kOk = 0, kInvalid = 1, kCapacity = 2, kMismatch = 3 };

struct Options {
    std::string cls, sigma, h0, target, tie = "lex", json_path, steps, plan, xbar, members, vs, name,
        manifest;
    std::size_t cap = 0, k = 0, d = 0;
    bool trace = false, zero_at_target = false, csv = false;
};

HypothesisClass load_class(const Options& o) {
    if (o.cls.empty()) throw input_error("--class is required");
    if (is_builtin_class(o.cls)) return builtin_class(o.cls);
    return load_class_file(o.cls);
}

PreferenceFunction load_sigma(const Options& o, const HypothesisClass& c) {
    if (o.sigma.empty()) throw input_error("--sigma is required");
    if (o.sigma == "hamming") return hamming_local(c);
    if (o.sigma == "const") return PreferenceFunction::constant(c.num_hypotheses(), 0);
    for (const auto& s : bundled_sigmas())
        if (s.name == o.sigma) {
            if (s.sigma.num_hypotheses() != c.num_hypotheses())
                throw input_error(o.sigma + " does not fit the selected class");
            return s.sigma;
        }
    return load_sigma_file(o.sigma, c.num_hypotheses());
}

Index hyp(const HypothesisClass& c, const std::string& name, Index fallback) {
    return name.empty() ? fallback : c.hypothesis_index(name);
}

std::vector<Index> hyp_list(const HypothesisClass& c, const std::string& text) {
    std::vector<Index> out;
    std::istringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(c.hypothesis_index(item));
    return out;
}

InstanceSet inst_list(const HypothesisClass& c, const std::string& text) {
    InstanceSet out;
    std::istringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(c.instance_index(item));
    return normalize(out, c.num_instances());
}

json cost_json(int v) { return v == kUnreachable ? json(nullptr) : json(v); }

void emit(const json& j, const Options& o) {
    const std::string text = j.dump(2);
    std::cout << text << '\n';
    if (!o.json_path.empty()) {
        std::ofstream f(o.json_path);
        if (!f) throw input_error("cannot write '" + o.json_path + "'");
        f << text << '\n';
    }
}

int cmd_dims(const Options& o) {
    const auto c = load_class(o);
    emit(report_to_json(dimension_report(c, o.cap ? o.cap : kDefaultNctdCap), c), o);
    return kOk;
}

int cmd_tdsigma(const Options& o) {
    const auto c = load_class(o);
    const auto s = load_sigma(o, c);
    const Index h0 = hyp(c, o.h0, 0);
    CostOptions opt;
    opt.zero_at_target = o.zero_at_target;
    std::vector<int> per;
    const int v = td_sigma(s, c, h0, &per, opt);
    json j;
    j["h0"] = c.hypothesis_name(h0);
    j["td_sigma"] = cost_json(v);
    json t = json::object();
    for (Index h = 0; h < per.size(); ++h) t[c.hypothesis_name(h)] = cost_json(per[h]);
    j["per_target"] = t;
    emit(j, o);
    return kOk;
}

int cmd_dsigma(const Options& o) {
    const auto c = load_class(o);
    const auto s = load_sigma(o, c);
    const Index h0 = hyp(c, o.h0, 0);
    if (o.target.empty()) throw input_error("--target is required");
    const Index t = c.hypothesis_index(o.target);
    const VersionSpace V = o.vs.empty() ? c.all() : c.subset(hyp_list(c, o.vs));
    CostOptions opt;
    opt.zero_at_target = o.zero_at_target;
    const int v = d_sigma(s, c, V, h0, t, opt);
    json j;
    j["h"] = c.hypothesis_name(h0);
    j["target"] = c.hypothesis_name(t);
    j["version_space"] = version_space_to_json(V, c);
    j["d_sigma"] = cost_json(v);
    if (o.vs.empty() && v != kUnreachable) j["plan"] = plan_to_json(extract_plan(s, c, h0, t), c);
    emit(j, o);
    return kOk;
}

int cmd_simulate(const Options& o) {
    const auto c = load_class(o);
    const auto s = load_sigma(o, c);
    const Index h0 = hyp(c, o.h0, 0);
    std::vector<Example> steps;
    if (!o.plan.empty()) {
        json p;
        try {
            p = json::parse(read_file(o.plan));
        } catch (const json::exception& e) {
            throw input_error(std::string("malformed plan JSON: ") + e.what());
        }
        steps = examples_from_json(p.is_object() ? p.at("steps") : p, c);
    } else {
        steps = parse_examples(o.steps, c);
    }
    TieMode tie;
    if (o.tie == "lex") tie = TieMode::LowestIndex;
    else if (o.tie == "adversarial") tie = TieMode::Adversarial;
    else throw input_error("--tie must be lex or adversarial");
    const Index t = o.target.empty() ? npos : c.hypothesis_index(o.target);
    const Trace tr = simulate(s, c, h0, steps, tie, t);
    json j = trace_to_json(tr, c);
    j["steps"] = examples_to_json(steps, c);
    if (t != npos) j["reached_target"] = tr.hypotheses.back() == t;
    if (tr.halted_at) std::cerr << "simulate: example " << *tr.halted_at + 1 << " empties the version space\n";
    emit(j, o);
    return kOk;
}

int cmd_collusion(const Options& o) {
    const auto c = load_class(o);
    const auto s = load_sigma(o, c);
    const auto r = collusion_free_check(s, c, o.cap ? o.cap : kDefaultCollusionCap);
    emit(collusion_to_json(r, c), o);
    return kOk;
}

int cmd_build_lvs(const Options& o) {
    const auto c = load_class(o);
    const Index h0 = hyp(c, o.h0, 0);
    std::optional<InstanceSet> xbar;
    if (!o.xbar.empty()) xbar = inst_list(c, o.xbar);
    const auto l = build_sigma_lvs(c, h0, xbar);
    json j = lvs_to_json(l, c, o.trace);
    j["td_sigma"] = cost_json(td_sigma(l.sigma, c, h0));
    j["vcd"] = vcd(c.all(), c.all_instances(), c);
    emit(j, o);
    return kOk;
}

int cmd_build_powerset(const Options& o) {
    if (o.k == 0) throw input_error("--k is required");
    const auto c = powerset_class(o.k);
    const Index h0 = hyp(c, o.h0, 0);
    const auto b = build_sigma_local_powerset(o.k, h0);
    json j = powerset_to_json(b, c);
    j["td_sigma"] = cost_json(td_sigma(b.sigma, c, h0));
    emit(j, o);
    return kOk;
}

int cmd_partition(const Options& o) {
    const auto c = load_class(o);
    const VersionSpace H = o.members.empty() ? c.all() : c.subset(hyp_list(c, o.members));
    const Index ref = hyp(c, o.h0, H.first());
    const InstanceSet xbar =
        o.xbar.empty() ? compact_distinguishable_set(H, c.all_instances(), c) : inst_list(c, o.xbar);
    emit(partition_to_json(partition_class(H, xbar, ref, c), c), o);
    return kOk;
}

int cmd_bound(const Options& o) {
    if (o.d == 0) throw input_error("--d must be positive");
    emit({{"d", o.d}, {"k_min", sigma_td_lower_bound(o.d)}}, o);
    return kOk;
}

int cmd_corpus_list(const Options& o) {
    json a = json::array();
    for (const auto& art : list_artifacts())
        a.push_back({{"kind", art.kind}, {"name", art.name}, {"description", art.description}});
    emit(a, o);
    return kOk;
}

int cmd_corpus_dump(const Options& o) {
    if (o.name.empty()) throw input_error("--name is required");
    if (is_builtin_class(o.name)) {
        const auto c = builtin_class(o.name);
        if (o.csv) {
            write_class_csv(std::cout, c);
            return kOk;
        }
        emit(class_to_json(c), o);
        return kOk;
    }
    for (const auto& s : bundled_sigmas())
        if (s.name == o.name) {
            emit(sigma_to_json(s.sigma), o);
            return kOk;
        }
    for (const auto& t : bundled_teacher_maps())
        if (t.name == o.name) {
            emit(teacher_map_to_json(t.map, builtin_class(t.class_name)), o);
            return kOk;
        }
    throw input_error("no bundled artifact named '" + o.name + "'");
}

int cmd_repro(const Options& o) {
    json manifest;
    try {
        manifest = json::parse(o.manifest.empty() ? expected_manifest() : read_file(o.manifest));
    } catch (const json::exception& e) {
        throw input_error(std::string("malformed repro manifest: ") + e.what());
    }
    const auto rep = run_repro(manifest);
    for (const auto& r : rep.rows)
        if (!r.ok)
            std::cerr << "mismatch " << r.class_name << " " << r.metric << ": expected " << r.expected.dump()
                      << ", got " << r.actual.dump() << '\n';
    emit(rep.to_json(), o);
    return rep.mismatches ? kMismatch : kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact machine-teaching complexity toolkit"};
    app.require_subcommand(1);
    Options o;

    auto add_class = [&](CLI::App* s) { s->add_option("--class", o.cls, "built-in name or CSV/JSON path"); };
    auto add_sigma = [&](CLI::App* s) {
        s->add_option("--sigma", o.sigma, "bundled name, 'hamming', 'const' or a JSON path");
    };
    auto add_json = [&](CLI::App* s) { s->add_option("--json", o.json_path, "also write the report here"); };

    auto* dims = app.add_subcommand("dims", "VCD, TD, RTD and NCTD with witnesses");
    add_class(dims);
    dims->add_option("--cap", o.cap, "largest class for the NCTD search");
    add_json(dims);

    auto* tds = app.add_subcommand("tdsigma", "worst-case teaching cost from h0 over all targets");
    add_class(tds);
    add_sigma(tds);
    tds->add_option("--h0", o.h0, "initial hypothesis (default: first)");
    tds->add_flag("--zero-at-target", o.zero_at_target, "charge 0 when h0 is the target");
    add_json(tds);

    auto* ds = app.add_subcommand("dsigma", "teaching cost for one target, with a plan");
    add_class(ds);
    add_sigma(ds);
    ds->add_option("--h0", o.h0, "learner's current hypothesis");
    ds->add_option("--target", o.target, "target hypothesis");
    ds->add_option("--vs", o.vs, "version space as h1,h2,... (default: all)");
    ds->add_flag("--zero-at-target", o.zero_at_target, "charge 0 when h is the target");
    add_json(ds);

    auto* sim = app.add_subcommand("simulate", "replay examples through the learner");
    add_class(sim);
    add_sigma(sim);
    sim->add_option("--h0", o.h0, "initial hypothesis");
    sim->add_option("--steps", o.steps, "examples as x1=0,x4=1");
    sim->add_option("--plan", o.plan, "plan JSON file (uses its steps)");
    sim->add_option("--tie", o.tie, "lex or adversarial");
    sim->add_option("--target", o.target, "target for adversarial ties");
    add_json(sim);

    auto* col = app.add_subcommand("check-collusion", "sequential collusion-freeness");
    add_class(col);
    add_sigma(col);
    col->add_option("--cap", o.cap, "state limit");
    add_json(col);

    auto* lvs = app.add_subcommand("build-lvs", "recursive local version-space construction");
    add_class(lvs);
    lvs->add_option("--h0", o.h0, "initial hypothesis");
    lvs->add_option("--xbar", o.xbar, "top-level compact-distinguishable set, e.g. x2,x3,x4,x5");
    lvs->add_flag("--trace", o.trace, "include the recursion tree");
    add_json(lvs);

    auto* pw = app.add_subcommand("build-local-powerset", "local preference teaching tree for the powerset class");
    pw->add_option("--k", o.k, "number of instances")->required();
    pw->add_option("--h0", o.h0, "initial hypothesis as a bit string");
    add_json(pw);

    auto* part = app.add_subcommand("partition", "split a set of hypotheses around a reference");
    add_class(part);
    part->add_option("--h0", o.h0, "reference hypothesis (default: first member)");
    part->add_option("--xbar", o.xbar, "compact-distinguishable instances (default: computed)");
    part->add_option("--members", o.members, "hypotheses to split as h1,h2,... (default: all)");
    add_json(part);

    auto* bnd = app.add_subcommand("bound", "counting lower bound on the global teaching cost of the powerset");
    bnd->add_option("--d", o.d, "number of instances")->required();
    add_json(bnd);

    auto* corpus = app.add_subcommand("corpus", "bundled classes, preference functions and teacher maps");
    corpus->require_subcommand(1);
    auto* list = corpus->add_subcommand("list", "enumerate bundled artifacts");
    add_json(list);
    auto* dump = corpus->add_subcommand("dump", "print one artifact");
    dump->add_option("--name", o.name, "artifact name")->required();
    dump->add_flag("--csv", o.csv, "classes as CSV");
    add_json(dump);

    auto* rep = app.add_subcommand("repro", "recompute the reference values and diff against the manifest");
    rep->add_option("--manifest", o.manifest, "expected-values JSON (default: bundled)");
    add_json(rep);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kInvalid;
    }

    try {
        if (*dims) return cmd_dims(o);
        if (*tds) return cmd_tdsigma(o);
        if (*ds) return cmd_dsigma(o);
        if (*sim) return cmd_simulate(o);
        if (*col) return cmd_collusion(o);
        if (*lvs) return cmd_build_lvs(o);
        if (*pw) return cmd_build_powerset(o);
        if (*part) return cmd_partition(o);
        if (*bnd) return cmd_bound(o);
        if (*list) return cmd_corpus_list(o);
        if (*dump) return cmd_corpus_dump(o);
        if (*rep) return cmd_repro(o);
    } catch (const input_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInvalid;
    } catch (const capacity_error& e) {
        std::cerr << "capacity: " << e.what() << '\n';
        return kCapacity;
    } catch (const construction_error& e) {
        std::cerr << "construction failed: " << e.what() << '\n';
        return kInvalid;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInvalid;
    }
    std::cerr << app.help();
    return kInvalid;
}

#include "mt/repro.hpp"

#include <map>
#include <memory>
#include <sstream>

#include "mt/corpus.hpp"

namespace mt {

namespace {

std::vector<std::string> parts(const std::string& metric) {
    std::vector<std::string> out;
    std::string p;
    std::istringstream ss(metric);
    while (std::getline(ss, p, '/')) out.push_back(p);
    return out;
}

const PreferenceFunction& sigma_for(const std::string& name, const std::string& class_name) {
    const auto& s = builtin_sigma(name);
    if (s.class_name != class_name)
        throw input_error("preference function " + name + " belongs to class " + s.class_name);
    return s.sigma;
}

int worst_plan(const std::map<Index, TeachingPlan>& plans) {
    int w = 0;
    for (const auto& [h, p] : plans) w = std::max(w, p.cost);
    return w;
}

}  // namespace

json evaluate_metric(const std::string& class_name, const std::string& metric) {
    const auto p = parts(metric);
    if (class_name == "bound") {
        if (metric.rfind("d=", 0) != 0) throw input_error("bound metrics look like d=<n>");
        return sigma_td_lower_bound(std::stoul(metric.substr(2)));
    }
    const HypothesisClass c = builtin_class(class_name);
    const VersionSpace all = c.all();
    if (metric == "vcd") return vcd(all, c.all_instances(), c);
    if (metric == "td") return td(all, c);
    if (metric == "rtd") return rtd(all, c);
    if (metric == "nctd") return nctd(all, c).value;
    if (p.size() == 3 && p[0] == "tdsigma")
        return td_sigma(sigma_for(p[1], class_name), c, c.hypothesis_index(p[2]));
    if (p.size() == 2 && p[0] == "collusion_free")
        return collusion_free_check(sigma_for(p[1], class_name), c).collusion_free;
    if (p.size() == 2 && p[0] == "global_oracle") return sigma_td_global_bruteforce(c, c.hypothesis_index(p[1]));
    if (p.size() >= 2 && p[0].rfind("lvs", 0) == 0) {
        const auto l = build_sigma_lvs(c, c.hypothesis_index(p[1]));
        if (p[0] == "lvs" && p.size() == 2) return td_sigma(l.sigma, c, l.h0);
        if (p[0] == "lvs_plan_cost" && p.size() == 2) return worst_plan(l.plans);
        if (p[0] == "lvs_collusion_free" && p.size() == 2) return collusion_free_check(l.sigma, c).collusion_free;
        if (p[0] == "lvs_plan" && p.size() == 3)
            return examples_to_json(l.plans.at(c.hypothesis_index(p[2])).steps, c);
    }
    if (p.size() >= 2 && p[0].rfind("powerset", 0) == 0 && class_name.rfind("powerset-", 0) == 0) {
        const auto b = build_sigma_local_powerset(c.num_instances(), c.hypothesis_index(p[1]));
        if (p[0] == "powerset_tdsigma" && p.size() == 2) return td_sigma(b.sigma, c, b.h0);
        if (p[0] == "powerset_plan" && p.size() == 3)
            return examples_to_json(b.plans.at(c.hypothesis_index(p[2])).steps, c);
    }
    throw input_error("unknown metric '" + metric + "' for class " + class_name);
}

json ReproReport::to_json() const {
    json rs = json::array();
    for (const auto& r : rows)
        rs.push_back({{"class", r.class_name}, {"metric", r.metric}, {"expected", r.expected},
                      {"actual", r.actual}, {"ok", r.ok}});
    json j;
    j["rows"] = rs;
    j["checked"] = rows.size();
    j["mismatches"] = mismatches;
    return j;
}

ReproReport run_repro(const json& manifest) {
    if (!manifest.is_object()) throw input_error("repro manifest must be an object keyed by class");
    ReproReport rep;
    for (const auto& [cls, metrics] : manifest.items()) {
        if (!metrics.is_object()) throw input_error("repro manifest entry for " + cls + " must be an object");
        for (const auto& [metric, expected] : metrics.items()) {
            ReproRow r{cls, metric, expected, evaluate_metric(cls, metric), false};
            r.ok = r.actual == r.expected;
            if (!r.ok) ++rep.mismatches;
            rep.rows.push_back(std::move(r));
        }
    }
    return rep;
}

}  // namespace mt

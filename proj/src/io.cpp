#include "mt/io.hpp"

#include <fstream>
#include <sstream>
#include <unordered_set>

namespace mt {

namespace {

std::string trim(std::string s) {
    const char* ws = " \t\r\n";
    s.erase(0, s.find_first_not_of(ws));
    s.erase(s.find_last_not_of(ws) + 1);
    return s;
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, sep)) out.push_back(trim(cell));
    if (!line.empty() && line.back() == sep) out.emplace_back();
    return out;
}

json index_list(const Bits& b) {
    json a = json::array();
    for (Index i = b.find_first(); i != npos; i = b.find_next(i)) a.push_back(i);
    return a;
}

Bits bits_from(const json& a, std::size_t n, const char* what) {
    if (!a.is_array()) throw input_error(std::string(what) + " must be an array of indices");
    Bits b(n);
    for (const auto& v : a) {
        if (!v.is_number_unsigned() || v.get<std::size_t>() >= n)
            throw input_error(std::string(what) + " holds an invalid hypothesis index");
        b.set(v.get<std::size_t>());
    }
    return b;
}

Rank rank_from(const json& v) {
    if (!v.is_number_integer()) throw input_error("ranks must be integers");
    return v.get<Rank>();
}

json names(const std::vector<Index>& hs, const HypothesisClass& c) {
    json a = json::array();
    for (Index h : hs) a.push_back(c.hypothesis_name(h));
    return a;
}

json instance_names(const InstanceSet& X, const HypothesisClass& c) {
    json a = json::array();
    for (Index x : X) a.push_back(c.instance_name(x));
    return a;
}

}  // namespace

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw input_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

HypothesisClass read_class_csv(std::istream& in) {
    std::string line;
    std::vector<std::vector<std::string>> lines;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        lines.push_back(split(line, ','));
    }
    if (lines.empty()) throw input_error("class CSV is empty");
    auto header = lines.front();
    // A header may carry a leading label cell for the name column.
    if (lines.size() > 1 && header.size() == lines[1].size()) header.erase(header.begin());
    if (header.empty()) throw input_error("class CSV header names no instances");
    const std::size_t n = header.size();
    std::vector<Bits> rows;
    std::vector<std::string> hnames;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto& cells = lines[i];
        if (cells.size() != n + 1)
            throw input_error("class CSV row " + std::to_string(i + 1) + " has " +
                              std::to_string(cells.size() - 1) + " labels, expected " + std::to_string(n));
        Bits b(n);
        for (std::size_t j = 0; j < n; ++j) {
            if (cells[j + 1] == "1") b.set(j);
            else if (cells[j + 1] != "0")
                throw input_error("class CSV row " + std::to_string(i + 1) + " has a non-binary label");
        }
        hnames.push_back(cells[0]);
        rows.push_back(std::move(b));
    }
    return HypothesisClass(std::move(rows), std::move(header), std::move(hnames));
}

void write_class_csv(std::ostream& out, const HypothesisClass& c) {
    for (Index x = 0; x < c.num_instances(); ++x) out << (x ? "," : "") << c.instance_name(x);
    out << '\n';
    for (Index h = 0; h < c.num_hypotheses(); ++h) {
        out << c.hypothesis_name(h);
        for (Index x = 0; x < c.num_instances(); ++x) out << ',' << (c.label(h, x) ? 1 : 0);
        out << '\n';
    }
}

HypothesisClass class_from_json(const json& j) {
    if (!j.is_object() || !j.contains("hypotheses") || !j["hypotheses"].is_array())
        throw input_error("class JSON needs a \"hypotheses\" array");
    std::vector<std::string> inst;
    if (j.contains("instances")) inst = j["instances"].get<std::vector<std::string>>();
    std::vector<Bits> rows;
    std::vector<std::string> hnames;
    std::size_t n = inst.size();
    for (const auto& h : j["hypotheses"]) {
        const auto& labels = h.at("labels");
        if (!labels.is_array()) throw input_error("hypothesis labels must be an array");
        if (rows.empty() && inst.empty()) n = labels.size();
        if (labels.size() != n) throw input_error("ragged hypothesis rows in class JSON");
        Bits b(n);
        for (std::size_t x = 0; x < n; ++x) {
            const auto& v = labels[x];
            if (v == 1 || v == true) b.set(x);
            else if (!(v == 0 || v == false)) throw input_error("hypothesis labels must be 0 or 1");
        }
        rows.push_back(std::move(b));
        hnames.push_back(h.contains("name") ? h["name"].get<std::string>() : "h" + std::to_string(rows.size()));
    }
    return HypothesisClass(std::move(rows), std::move(inst), std::move(hnames));
}

json class_to_json(const HypothesisClass& c) {
    json j;
    j["instances"] = c.instance_names();
    json hs = json::array();
    for (Index h = 0; h < c.num_hypotheses(); ++h) {
        json labels = json::array();
        for (Index x = 0; x < c.num_instances(); ++x) labels.push_back(c.label(h, x) ? 1 : 0);
        hs.push_back({{"name", c.hypothesis_name(h)}, {"labels", labels}});
    }
    j["hypotheses"] = hs;
    return j;
}

HypothesisClass load_class_file(const std::string& path) {
    const std::string text = read_file(path);
    const auto p = text.find_first_not_of(" \t\r\n");
    if (p != std::string::npos && text[p] == '{') {
        json j;
        try {
            j = json::parse(text);
        } catch (const json::exception& e) {
            throw input_error("malformed class JSON in '" + path + "': " + e.what());
        }
        return class_from_json(j);
    }
    std::istringstream in(text);
    return read_class_csv(in);
}

json sigma_to_json(const PreferenceFunction& s) {
    json j;
    j["family"] = family_name(s.family());
    j["hypotheses"] = s.num_hypotheses();
    const std::size_t n = s.num_hypotheses();
    switch (s.family()) {
        case Family::Const:
            j["rank"] = s.const_rank();
            return j;
        case Family::Global:
            j["ranks"] = s.global_ranks();
            return j;
        case Family::Local: {
            json m = json::array();
            for (Index h = 0; h < n; ++h) {
                json row = json::array();
                for (Index g = 0; g < n; ++g) row.push_back(s.local_rank(h, g));
                m.push_back(row);
            }
            j["ranks"] = m;
            return j;
        }
        case Family::Gvs:
        case Family::Lvs: break;
    }
    if (s.family() == Family::Gvs)
        j["defaults"] = {{"other", s.other_default()}};
    else
        j["defaults"] = {{"self", s.self_default()}, {"other", s.other_default()}};
    json entries = json::array();
    for (const auto& row : s.rows()) {
        json e;
        e["vs"] = index_list(row.V);
        if (s.family() == Family::Lvs) e["h"] = row.current;
        json r = json::object();
        for (auto [g, rank] : row.ranks) r[std::to_string(g)] = rank;
        e["ranks"] = r;
        entries.push_back(e);
    }
    j["entries"] = entries;
    json rules = json::array();
    for (const auto& r : s.rules()) {
        json e;
        e["h_prime"] = r.h_prime;
        e["core"] = index_list(r.core);
        e["optional"] = index_list(r.optional);
        if (s.family() == Family::Lvs) e["currents"] = index_list(r.currents);
        e["rank"] = r.rank;
        rules.push_back(e);
    }
    j["rules"] = rules;
    return j;
}

PreferenceFunction sigma_from_json(const json& j, std::size_t n) {
    try {
        if (!j.is_object()) throw input_error("preference function JSON must be an object");
        const Family f = parse_family(j.at("family").get<std::string>());
        if (j.contains("hypotheses") && j["hypotheses"].get<std::size_t>() != n)
            throw input_error("preference function is for " + std::to_string(j["hypotheses"].get<std::size_t>()) +
                              " hypotheses, class has " + std::to_string(n));
        switch (f) {
            case Family::Const: return PreferenceFunction::constant(n, j.contains("rank") ? rank_from(j["rank"]) : 0);
            case Family::Global: {
                std::vector<Rank> r;
                for (const auto& v : j.at("ranks")) r.push_back(rank_from(v));
                if (r.size() != n) throw input_error("global ranks must list every hypothesis");
                return PreferenceFunction::global(std::move(r));
            }
            case Family::Local: {
                std::vector<std::vector<Rank>> m;
                for (const auto& row : j.at("ranks")) {
                    std::vector<Rank> r;
                    for (const auto& v : row) r.push_back(rank_from(v));
                    m.push_back(std::move(r));
                }
                if (m.size() != n) throw input_error("local rank matrix must be n x n");
                return PreferenceFunction::local(m);
            }
            case Family::Gvs:
            case Family::Lvs: break;
        }
        const json d = j.value("defaults", json::object());
        PreferenceFunction s = f == Family::Gvs
                                   ? PreferenceFunction::gvs(n, d.contains("other") ? rank_from(d["other"]) : 1)
                                   : PreferenceFunction::lvs(n, d.contains("self") ? rank_from(d["self"]) : 0,
                                                             d.contains("other") ? rank_from(d["other"])
                                                                                 : static_cast<Rank>(n + 1));
        for (const auto& e : j.value("entries", json::array())) {
            const Bits V = bits_from(e.at("vs"), n, "entry version space");
            Index h = npos;
            if (f == Family::Lvs) {
                h = e.at("h").get<Index>();
                if (h >= n) throw input_error("entry current hypothesis out of range");
            }
            for (const auto& [key, v] : e.at("ranks").items()) {
                std::size_t g = 0;
                try {
                    g = std::stoul(key);
                } catch (const std::exception&) {
                    throw input_error("rank keys must be hypothesis indices");
                }
                if (g >= n) throw input_error("ranked hypothesis out of range");
                s.set_entry(V, h, g, rank_from(v));
            }
        }
        for (const auto& e : j.value("rules", json::array())) {
            SubsetRule r;
            r.h_prime = e.at("h_prime").get<Index>();
            r.core = bits_from(e.at("core"), n, "rule core");
            r.optional = bits_from(e.value("optional", json::array()), n, "rule optional set");
            r.currents = bits_from(e.value("currents", json::array()), n, "rule currents");
            r.rank = rank_from(e.at("rank"));
            s.add_rule(std::move(r));
        }
        return s;
    } catch (const json::exception& e) {
        throw input_error(std::string("malformed preference function JSON: ") + e.what());
    }
}

PreferenceFunction load_sigma_file(const std::string& path, std::size_t n) {
    json j;
    try {
        j = json::parse(read_file(path));
    } catch (const json::exception& e) {
        throw input_error("malformed preference function JSON in '" + path + "': " + e.what());
    }
    return sigma_from_json(j, n);
}

json example_to_json(const Example& z, const HypothesisClass& c) {
    return json::array({c.instance_name(z.x), z.y ? 1 : 0});
}

json examples_to_json(const std::vector<Example>& zs, const HypothesisClass& c) {
    json a = json::array();
    for (const auto& z : zs) a.push_back(example_to_json(z, c));
    return a;
}

std::vector<Example> examples_from_json(const json& j, const HypothesisClass& c) {
    std::vector<Example> out;
    if (!j.is_array()) throw input_error("examples must be an array of [instance, label] pairs");
    for (const auto& p : j) {
        if (!p.is_array() || p.size() != 2 || !p[0].is_string())
            throw input_error("examples must be [instance, label] pairs");
        const Index x = c.instance_index(p[0].get<std::string>());
        if (!(p[1] == 0 || p[1] == 1 || p[1].is_boolean())) throw input_error("example labels must be 0 or 1");
        out.push_back({x, p[1] == 1 || p[1] == true});
    }
    return out;
}

std::vector<Example> parse_examples(const std::string& text, const HypothesisClass& c) {
    std::vector<Example> out;
    for (const auto& item : split(text, ',')) {
        if (item.empty()) continue;
        const auto p = item.find_first_of("=:");
        if (p == std::string::npos) throw input_error("example '" + item + "' should look like x1=0");
        const std::string lab = trim(item.substr(p + 1));
        if (lab != "0" && lab != "1") throw input_error("example '" + item + "' has a non-binary label");
        out.push_back({c.instance_index(trim(item.substr(0, p))), lab == "1"});
    }
    return out;
}

json plan_to_json(const TeachingPlan& p, const HypothesisClass& c) {
    json j;
    j["target"] = c.hypothesis_name(p.target);
    j["steps"] = examples_to_json(p.steps, c);
    j["trace"] = names(p.trace, c);
    j["cost"] = p.cost;
    return j;
}

json version_space_to_json(const VersionSpace& V, const HypothesisClass& c) {
    return names(V.members(), c);
}

json trace_to_json(const Trace& t, const HypothesisClass& c) {
    json j;
    j["trace"] = names(t.hypotheses, c);
    json vs = json::array();
    for (const auto& V : t.spaces) vs.push_back(version_space_to_json(V, c));
    j["version_spaces"] = vs;
    j["final"] = c.hypothesis_name(t.hypotheses.back());
    if (t.halted_at) j["halted_at"] = *t.halted_at;
    return j;
}

json teacher_map_to_json(const TeacherMap& T, const HypothesisClass& c) {
    json j = json::object();
    for (const auto& [h, zs] : T) j[c.hypothesis_name(h)] = examples_to_json(zs, c);
    return j;
}

json report_to_json(const DimensionReport& r, const HypothesisClass& c) {
    json j;
    j["vcd"] = r.vcd;
    j["td"] = r.td;
    j["rtd"] = r.rtd;
    j["nctd"] = r.nctd;
    json w;
    w["shattered"] = instance_names(r.shattered, c);
    w["teaching_sets"] = teacher_map_to_json(r.td_witness, c);
    json layers = json::object();
    for (auto [h, l] : r.rtd_layer) layers[c.hypothesis_name(h)] = l;
    w["rtd_layers"] = layers;
    w["non_clashing"] = teacher_map_to_json(r.nctd_witness, c);
    j["witnesses"] = w;
    return j;
}

json collusion_to_json(const CollusionReport& r, const HypothesisClass& c) {
    json j;
    j["collusion_free"] = r.collusion_free;
    j["version_spaces"] = r.version_spaces;
    j["states"] = r.states;
    if (r.counterexample) {
        const auto& ce = *r.counterexample;
        j["counterexample"] = {{"version_space", version_space_to_json(ce.V, c)},
                               {"current", c.hypothesis_name(ce.current)},
                               {"preferred", c.hypothesis_name(ce.preferred)},
                               {"example", ce.z.x == npos ? json(nullptr) : example_to_json(ce.z, c)},
                               {"preferred_after", version_space_to_json(ce.after, c)}};
    }
    return j;
}

json partition_to_json(const Partition& p, const HypothesisClass& c) {
    json j;
    j["reference"] = c.hypothesis_name(p.reference);
    j["xbar"] = instance_names(p.source, c);
    json blocks = json::array();
    for (const auto& b : p.blocks) {
        json e;
        e["members"] = version_space_to_json(b.members, c);
        if (b.pivot != npos) e["pivot"] = example_to_json({b.pivot, b.label}, c);
        blocks.push_back(e);
    }
    j["blocks"] = blocks;
    return j;
}

json lvs_to_json(const LvsConstruction& l, const HypothesisClass& c, bool with_trace) {
    json j;
    j["h0"] = c.hypothesis_name(l.h0);
    int worst = 0;
    json plans = json::object();
    for (const auto& [h, p] : l.plans) {
        plans[c.hypothesis_name(h)] = plan_to_json(p, c);
        worst = std::max(worst, p.cost);
    }
    j["plan_cost"] = worst;
    json index = json::object();
    for (Index h = 0; h < l.index.size(); ++h) index[c.hypothesis_name(h)] = l.index[h];
    j["index"] = index;
    j["sigma"] = sigma_to_json(l.sigma);
    j["plans"] = plans;
    if (with_trace) {
        json levels = json::array();
        for (const auto& lv : l.levels) {
            json e;
            e["depth"] = lv.depth;
            e["V"] = version_space_to_json(lv.V, c);
            e["H"] = version_space_to_json(lv.H, c);
            e["X"] = instance_names(lv.X, c);
            e["partition"] = partition_to_json(lv.partition, c);
            json next = json::array();
            for (const auto& V : lv.next) next.push_back(version_space_to_json(V, c));
            e["V_next"] = next;
            levels.push_back(e);
        }
        j["levels"] = levels;
    }
    if (!l.notes.empty()) j["notes"] = l.notes;
    return j;
}

json powerset_to_json(const PowersetConstruction& p, const HypothesisClass& c) {
    json j;
    j["k"] = p.k;
    j["depth"] = p.depth;
    j["h0"] = c.hypothesis_name(p.h0);
    json tree = json::object();
    for (Index h = 0; h < p.children.size(); ++h)
        if (!p.children[h].empty()) tree[c.hypothesis_name(h)] = names(p.children[h], c);
    j["children"] = tree;
    json plans = json::object();
    for (const auto& [h, pl] : p.plans) plans[c.hypothesis_name(h)] = plan_to_json(pl, c);
    j["plans"] = plans;
    j["sigma"] = sigma_to_json(p.sigma);
    return j;
}

}  // namespace mt

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "mt/construct.hpp"
#include "mt/core.hpp"
#include "mt/dims.hpp"
#include "mt/prefs.hpp"
#include "mt/teach.hpp"

namespace mt {

using json = nlohmann::ordered_json;

HypothesisClass read_class_csv(std::istream& in);
void write_class_csv(std::ostream& out, const HypothesisClass& c);
HypothesisClass class_from_json(const json& j);
json class_to_json(const HypothesisClass& c);
// Sniffs the first non-blank character: '{' means JSON, anything else CSV.
HypothesisClass load_class_file(const std::string& path);

json sigma_to_json(const PreferenceFunction& s);
// n is the class size the function must match.
PreferenceFunction sigma_from_json(const json& j, std::size_t n);
PreferenceFunction load_sigma_file(const std::string& path, std::size_t n);

json example_to_json(const Example& z, const HypothesisClass& c);
json examples_to_json(const std::vector<Example>& zs, const HypothesisClass& c);
// Accepts ["x4",1] pairs.
std::vector<Example> examples_from_json(const json& j, const HypothesisClass& c);
// "x4=1,x5=1" (':' also accepted as the separator).
std::vector<Example> parse_examples(const std::string& text, const HypothesisClass& c);

json plan_to_json(const TeachingPlan& p, const HypothesisClass& c);
json trace_to_json(const Trace& t, const HypothesisClass& c);
json version_space_to_json(const VersionSpace& V, const HypothesisClass& c);
json teacher_map_to_json(const TeacherMap& T, const HypothesisClass& c);
json report_to_json(const DimensionReport& r, const HypothesisClass& c);
json collusion_to_json(const CollusionReport& r, const HypothesisClass& c);
json partition_to_json(const Partition& p, const HypothesisClass& c);
json lvs_to_json(const LvsConstruction& l, const HypothesisClass& c, bool with_trace);
json powerset_to_json(const PowersetConstruction& p, const HypothesisClass& c);

std::string read_file(const std::string& path);

}  // namespace mt

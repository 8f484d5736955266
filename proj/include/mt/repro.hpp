#pragma once

#include <string>
#include <vector>

#include "mt/io.hpp"

namespace mt {

// Bundled expected values, keyed by class then metric.
const std::string& expected_manifest();

struct ReproRow {
    std::string class_name, metric;
    json expected, actual;
    bool ok = false;
};

struct ReproReport {
    std::vector<ReproRow> rows;
    std::size_t mismatches = 0;
    json to_json() const;
};

// Metric names:
//   vcd | td | rtd | nctd
//   tdsigma/<sigma>/<h0>          Σ-TD of a bundled preference function
//   collusion_free/<sigma>
//   global_oracle/<h0>            best Σ_global-TD over all rank orders
//   lvs/<h0>                      Σ-TD of the recursive construction
//   lvs_plan_cost/<h0>            longest emitted plan of the construction
//   lvs_collusion_free/<h0>
//   lvs_plan/<h0>/<target>        emitted plan steps
//   powerset_tdsigma/<h0>         Σ-TD of the powerset teaching-tree construction
//   powerset_plan/<h0>/<target>
//   d=<n>                         counting bound (class "bound")
json evaluate_metric(const std::string& class_name, const std::string& metric);

ReproReport run_repro(const json& manifest);

}  // namespace mt

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "json.hpp"

#include "cftengine/cft.hpp"
#include "cftengine/hrv.hpp"

namespace cfe {

using Json = nlohmann::json;

// malformed or schema-violating input; maps to exit status 2
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ScenarioOptions {
    std::uint64_t seed = 0;
    bool certify = false;
};

struct ScenarioResult {
    Json report;
    bool pass = true;
};

Json load_json_file(const std::string& path);
Json parse_json_text(const std::string& text);

// "S3", {"catalog": ..}, {"cyclic": n}, {"permutations": {"degree", "generators"}}, {"table": [[..]]}
GroupPtr parse_group(const Json& j);
// element index, or a permutation image list for permutation groups
int parse_element(const GroupPtr& g, const Json& j);
Subgroup parse_subgroup(const GroupPtr& g, const Json& j);
GModule parse_module(const GroupPtr& g, const Json& j);
FieldPtr parse_field(const Json& j);
LaurentElement parse_element_support(const FieldPtr& f, const Json& support);

Json report_json(const Report& r);
Json element_json(const LaurentElement& x);

ScenarioResult run_group_report(const Json& input, const ScenarioOptions& opt = {});
ScenarioResult run_mackey_check(const Json& input, const ScenarioOptions& opt = {});
ScenarioResult run_cft_scenario(const Json& input, const ScenarioOptions& opt = {});
ScenarioResult run_hrv_eval(const Json& input, const ScenarioOptions& opt = {});

// pretty JSON with sorted keys and a trailing newline
std::string render_json(const Json& report);
// aligned check lines followed by the remaining fields
std::string render_text(const Json& report);

}  // namespace cfe

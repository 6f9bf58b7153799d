#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "cftengine/scenario.hpp"

using namespace cfe;

namespace {

struct Common {
    std::string input;
    std::string out;
    std::uint64_t seed = 0;
    bool certify = false;
    std::string format = "json";
};

void add_common(CLI::App* sub, Common& c) {
    sub->add_option("--input", c.input, "scenario file (JSON)")->required();
    sub->add_option("--out", c.out, "write the report here instead of stdout");
    sub->add_option("--seed", c.seed, "seed for every sampler");
    sub->add_flag("--certify", c.certify, "recompute the full certificates");
    sub->add_option("--format", c.format, "report format")->check(CLI::IsMember({"json", "text"}));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Class field engine: group reports, Mackey checks, reciprocity maps, valuations"};
    app.require_subcommand(1);
    Common c;
    using Runner = ScenarioResult (*)(const Json&, const ScenarioOptions&);
    std::map<std::string, Runner> runners{{"group", run_group_report},
                                          {"mackey", run_mackey_check},
                                          {"cft", run_cft_scenario},
                                          {"hrv", run_hrv_eval}};
    std::map<std::string, std::string> help{{"group", "order, subgroup lattice, abelianization and transfer tables"},
                                            {"mackey", "RIC-functor and Mackey axioms for abelianization and fixed points"},
                                            {"cft", "FND validation, reciprocity tables and reduced verification"},
                                            {"hrv", "higher-rank valuations, projections and roundtrips"}};
    for (const auto& [name, _] : runners) add_common(app.add_subcommand(name, help[name]), c);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    std::string which = app.get_subcommands().front()->get_name();
    ScenarioResult result;
    try {
        Json input = load_json_file(c.input);
        result = runners.at(which)(input, ScenarioOptions{c.seed, c.certify});
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const Json::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    std::string text = c.format == "json" ? render_json(result.report) : render_text(result.report);
    if (c.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(c.out, std::ios::binary);
        if (!out) {
            std::cerr << "cannot write " << c.out << "\n";
            return 2;
        }
        out << text;
    }
    return result.pass ? 0 : 1;
}

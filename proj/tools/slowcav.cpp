// Command-line front end: run scenarios or individual pipeline stages from
// a JSON config and emit CSV/JSON artifacts for plotting.

#include <chrono>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "slowcav/csv.hpp"
#include "slowcav/errors.hpp"
#include "slowcav/scenario.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitRuntime = 3;

struct Options {
    std::string config_path;
    std::string scenario_name;
    std::string out_dir = ".";
    std::string format = "csv";
    bool normalize = false;
};

slowcav::ScenarioConfig resolve_config(const Options& opt) {
    std::string path = opt.config_path;
    if (path.empty() && !opt.scenario_name.empty())
        path = slowcav::find_scenario_file(opt.scenario_name);
    if (path.empty())
        throw std::runtime_error(opt.scenario_name.empty()
                                     ? "no config given (use --config)"
                                     : "unknown scenario: " + opt.scenario_name);
    return slowcav::load_config_file(path);
}

json issues_json(const std::vector<slowcav::ValidationIssue>& issues) {
    json arr = json::array();
    for (const auto& i : issues)
        arr.push_back({{"field", i.field},
                       {"message", i.message},
                       {"severity", i.warning ? "warning" : "error"}});
    return arr;
}

int run_validate(const Options& opt) {
    const auto cfg = resolve_config(opt);
    const auto issues = slowcav::validate_config(cfg);
    bool valid = true;
    for (const auto& i : issues) valid &= i.warning;
    json report = {{"valid", valid}, {"issues", issues_json(issues)}};
    std::cout << report.dump(2) << "\n";
    return valid ? kExitOk : kExitValidation;
}

// Run the pipeline and emit only the artifacts selected by `stage`
// ("all" for the scenario subcommand).
int run_stage(const Options& opt, const std::string& stage) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto cfg = resolve_config(opt);
    const auto result = slowcav::run_pipeline(cfg);
    if (stage == "pulse" && !result.pulse_out)
        throw std::runtime_error("config has no pulse section");
    if (stage == "sweep" && result.sweep_rows.empty())
        throw std::runtime_error("config has no sweep section");

    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const auto files = slowcav::emit_outputs(
        result, opt.out_dir,
        opt.format == "json" ? slowcav::OutputFormat::json : slowcav::OutputFormat::csv,
        opt.normalize, wall, stage);
    for (const auto& f : files) std::cout << f << "\n";
    return kExitOk;
}

void add_common(CLI::App* sub, Options& opt, bool with_name) {
    if (with_name) sub->add_option("name", opt.scenario_name, "scenario name (e.g. fig1a)");
    sub->add_option("--config", opt.config_path, "JSON scenario config file");
    sub->add_option("--out", opt.out_dir, "output directory (default .)");
    sub->add_flag("--normalize", opt.normalize,
                  "normalize exported pulse traces to unit peak");
    sub->add_option("--format", opt.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Slow-light cavity simulator: engineered absorption profiles, "
                 "Kramers-Kronig dispersion, dispersive Fabry-Perot spectra and "
                 "pulse propagation"};
    app.require_subcommand(1);

    Options opt;
    std::string stage;
    for (const char* name : {"profile", "dispersion", "spectrum", "modes", "pulse", "sweep"}) {
        auto* sub = app.add_subcommand(
            name, std::string("emit the ") + name + " artifact for a config");
        add_common(sub, opt, false);
        sub->callback([&stage, name] { stage = name; });
    }
    auto* scen = app.add_subcommand("scenario", "run a named scenario end to end");
    add_common(scen, opt, true);
    scen->callback([&stage] { stage = "all"; });
    auto* val = app.add_subcommand("validate", "validate a config and report violations");
    add_common(val, opt, true);
    val->callback([&stage] { stage = "validate"; });

    CLI11_PARSE(app, argc, argv);

    try {
        if (stage == "validate") return run_validate(opt);
        return run_stage(opt, stage);
    } catch (const slowcav::invalid_parameter& e) {
        json err = {{"error", "validation"}, {"message", e.what()}};
        std::cerr << err.dump(2) << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        json err = {{"error", "runtime"}, {"message", e.what()}};
        std::cerr << err.dump(2) << "\n";
        return kExitRuntime;
    }
}

#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "opqsl/linops.hpp"
#include "runner/config.hpp"
#include "runner/format.hpp"
#include "runner/scenarios.hpp"

namespace {

namespace rn = opqsl::runner;

enum Exit : int { kOk = 0, kConfig = 1, kViolation = 2, kIo = 3 };

void print_resolved(const rn::ScenarioConfig& cfg) {
    for (const auto& e : cfg.resolved) {
        std::cout << "  " << e.key << " = " << e.value << (e.is_default ? "  (default)" : "") << '\n';
    }
}

int do_run(const std::string& config, const std::string& out_dir, const std::vector<std::string>& overrides) {
    rn::ScenarioConfig cfg = rn::load_config(config, overrides);
    if (!out_dir.empty()) cfg.output_dir = out_dir;
    const rn::ScenarioOutput out = rn::run_scenario(cfg);
    const auto files = rn::write_outputs(out, cfg, cfg.output_dir);
    for (const auto& f : files) std::cout << "wrote " << f.string() << '\n';

    const rn::RunSummary& s = out.summary;
    for (const auto& [k, v] : s.scalars) std::cout << k << " = " << rn::format_number(v) << '\n';
    bool violated = false;
    for (const auto& c : s.checks) {
        if (!c.validity_claimed || c.violations == 0) continue;
        violated = true;
        std::cerr << "bound violation: " << c.curve << " vs " << c.bound << ": " << c.violations
                  << " point(s), min margin " << rn::format_number(c.min_margin) << '\n';
    }
    return violated ? kViolation : kOk;
}

int do_validate(const std::string& config, const std::vector<std::string>& overrides) {
    const rn::ScenarioConfig cfg = rn::load_config(config, overrides);
    std::cout << "ok\n";
    print_resolved(cfg);
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Operator quantum speed limit experiments"};
    app.require_subcommand(1);

    std::string config;
    std::string out_dir;
    std::vector<std::string> overrides;

    CLI::App* run = app.add_subcommand("run", "run a scenario and write CSV curves plus summary.json");
    run->add_option("--config", config, "scenario INI file")->required();
    run->add_option("--out", out_dir, "output directory (overrides output.dir)");
    run->add_option("--override", overrides, "section.key=value, repeatable")->take_all();

    CLI::App* validate = app.add_subcommand("validate", "check a config and print the resolved values");
    validate->add_option("--config", config, "scenario INI file")->required();
    validate->add_option("--override", overrides, "section.key=value, repeatable")->take_all();

    app.add_subcommand("list-scenarios", "print the available scenario names");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfig;
    }

    try {
        if (*run) return do_run(config, out_dir, overrides);
        if (*validate) return do_validate(config, overrides);
        for (rn::Scenario s : rn::all_scenarios()) {
            std::cout << rn::scenario_name(s) << "  " << rn::scenario_summary(s) << '\n';
        }
        return kOk;
    } catch (const rn::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfig;
    } catch (const rn::IoError& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return kIo;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return kConfig;
    } catch (const std::domain_error& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return kConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kIo;
    }
}

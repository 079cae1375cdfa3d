// secondlaw-lab: run or validate a scenario config.
//
//   secondlaw-lab run <config> [--out-dir DIR] [--steps-override N]
//   secondlaw-lab validate <config>

#include "secondlaw/errors.hpp"
#include "secondlaw/scenario.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace sc = secondlaw::scenario;

namespace {

int code(sc::ExitCode c) { return static_cast<int>(c); }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Second-law scenario runner"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::size_t steps_override = 0;

    auto* run = app.add_subcommand("run", "Run a scenario and write its CSV output");
    run->add_option("config", config_path, "Scenario config file")->required();
    run->add_option("--out-dir", out_dir, "Directory for relative output paths");
    run->add_option("--steps-override", steps_override, "Replace grid.steps");

    auto* validate = app.add_subcommand("validate", "Parse and check a config without running it");
    validate->add_option("config", config_path, "Scenario config file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : code(sc::ExitCode::validation);
    }

    try {
        const sc::ScenarioConfig cfg = sc::load_config(config_path);
        if (*validate) {
            std::cout << "ok: " << sc::kind_name(cfg.scenario) << " (" << cfg.expand().size() << " run"
                      << (cfg.expand().size() == 1 ? "" : "s") << ")\n";
            return 0;
        }
        sc::RunOptions options;
        if (run->count("--out-dir")) options.out_dir = out_dir;
        if (run->count("--steps-override")) options.steps_override = steps_override;
        const sc::RunResult result = sc::run_scenario(cfg, options);
        for (const auto& line : result.summary_lines) std::cout << line << '\n';
        return 0;
    } catch (const sc::ConfigError& e) {
        std::cerr << config_path << ": " << e.what() << '\n';
        return code(e.code());
    } catch (const sc::IoError& e) {
        std::cerr << "io error: " << e.what() << '\n';
        return code(sc::ExitCode::io);
    } catch (const secondlaw::ValidationError& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return code(sc::ExitCode::validation);
    } catch (const secondlaw::Error& e) {
        std::cerr << "computation failed: " << e.what() << '\n';
        return code(sc::ExitCode::computation);
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "io error: " << e.what() << '\n';
        return code(sc::ExitCode::io);
    }
}

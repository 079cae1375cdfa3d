// scenario.hpp: declarative scenario configs and the runner behind the CLI
//
// Config format: one `dotted.key = value` pair per line, `#` starts a
// comment, blank lines are ignored. Numbers are plain decimal strings.
//
//   scenario = otto
//   output = otto.csv
//   otto.omega0 = 2.0
//   ...

#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace secondlaw::scenario {

enum class ExitCode : int {
    ok = 0,
    validation = 2,        // value out of range, unknown key
    computation = 3,       // error raised by a physics module
    io = 4,                // reading the config or writing outputs failed
    syntax = 5,            // malformed line, duplicate key, bad number
    unknown_scenario = 6,
    missing_key = 7,
};

class ConfigError : public std::runtime_error {
public:
    ConfigError(ExitCode code, int line, int column, const std::string& message);
    ExitCode code() const noexcept { return code_; }
    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    ExitCode code_;
    int line_;
    int column_;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Kind { gibbs, process, otto, classical, demon, sweep };

std::string_view kind_name(Kind kind);

struct ScenarioConfig {
    Kind scenario = Kind::gibbs;
    std::string output_path;
    std::map<std::string, std::string> parameters;  // every key except scenario/output
    std::optional<double> duration;                 // grid.duration
    std::optional<std::size_t> steps;               // grid.steps

    // Sweep only: the base scenario, the swept key and its values.
    Kind sweep_base = Kind::gibbs;
    std::string sweep_parameter;
    std::vector<std::string> sweep_values;

    // A sweep expands to one config per value, in file order; anything else
    // expands to itself.
    std::vector<ScenarioConfig> expand() const;
};

// Throws ConfigError carrying the exit code and 1-based line/column.
ScenarioConfig parse_config(std::string_view text);
ScenarioConfig load_config(const std::filesystem::path& path);

struct RunOptions {
    std::optional<std::filesystem::path> out_dir;
    std::optional<std::size_t> steps_override;
    bool parallel = true;  // sweeps run their members concurrently
};

struct RunResult {
    std::vector<std::string> summary_lines;  // one per run, config order
    std::vector<std::filesystem::path> outputs;
};

// Physics errors propagate as secondlaw::Error; output failures as IoError.
RunResult run_scenario(const ScenarioConfig& config, const RunOptions& options = {});

// Fixed 17-significant-digit rendering used in every CSV.
std::string format_csv_number(double value);

}  // namespace secondlaw::scenario

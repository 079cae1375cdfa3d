#include "secondlaw/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <span>
#include <sstream>
#include <system_error>

namespace secondlaw::scenario {

namespace {

enum class ValueType { positive, unit_interval, steps, count, memory_mode, povm_kind, scenario_kind, key, number_list };

struct KeySpec {
    std::string_view key;
    ValueType type;
    bool required;
};

// clang-format off
constexpr KeySpec kGibbsKeys[] = {
    {"gibbs.omega", ValueType::positive, true},
    {"gibbs.T", ValueType::positive, true},
};
constexpr KeySpec kProcessKeys[] = {
    {"process.omega", ValueType::positive, true},
    {"process.T", ValueType::positive, true},
    {"process.n0", ValueType::unit_interval, true},
    {"process.gamma", ValueType::positive, true},
    {"process.mode", ValueType::memory_mode, false},
    {"process.omega_mem", ValueType::positive, false},
    {"grid.duration", ValueType::positive, true},
    {"grid.steps", ValueType::steps, true},
};
constexpr KeySpec kOttoKeys[] = {
    {"otto.omega0", ValueType::positive, true},
    {"otto.omega1", ValueType::positive, true},
    {"otto.Th", ValueType::positive, true},
    {"otto.Tc", ValueType::positive, true},
    {"otto.gamma_h", ValueType::positive, false},
    {"otto.gamma_c", ValueType::positive, false},
    {"otto.mode_h", ValueType::memory_mode, false},
    {"otto.mode_c", ValueType::memory_mode, false},
    {"otto.omega_mem_h", ValueType::positive, false},
    {"otto.omega_mem_c", ValueType::positive, false},
    {"otto.cycles", ValueType::count, false},
    {"grid.duration", ValueType::positive, true},
    {"grid.steps", ValueType::steps, true},
};
constexpr KeySpec kClassicalKeys[] = {
    {"classical.Th", ValueType::positive, true},
    {"classical.Tc", ValueType::positive, true},
    {"classical.T1", ValueType::positive, true},
    {"classical.T3", ValueType::positive, true},
    {"classical.Qh", ValueType::positive, true},
};
constexpr KeySpec kDemonKeys[] = {
    {"demon.n0", ValueType::unit_interval, true},
    {"demon.T", ValueType::positive, true},
    {"demon.povm", ValueType::povm_kind, true},
    {"demon.strength", ValueType::unit_interval, false},
};
constexpr KeySpec kSweepKeys[] = {
    {"sweep.base", ValueType::scenario_kind, true},
    {"sweep.parameter", ValueType::key, true},
    {"sweep.values", ValueType::number_list, true},
};
// clang-format on

struct Entry {
    std::string key;
    std::string value;
    int line;
    int key_column;
    int value_column;
};

std::span<const KeySpec> schema_for(Kind kind) {
    switch (kind) {
        case Kind::gibbs: return kGibbsKeys;
        case Kind::process: return kProcessKeys;
        case Kind::otto: return kOttoKeys;
        case Kind::classical: return kClassicalKeys;
        case Kind::demon: return kDemonKeys;
        case Kind::sweep: return kSweepKeys;
    }
    return {};
}

std::optional<Kind> parse_kind(std::string_view word) {
    if (word == "gibbs") return Kind::gibbs;
    if (word == "process") return Kind::process;
    if (word == "otto") return Kind::otto;
    if (word == "classical") return Kind::classical;
    if (word == "demon") return Kind::demon;
    if (word == "sweep") return Kind::sweep;
    return std::nullopt;
}

const KeySpec* find_spec(std::span<const KeySpec> schema, std::string_view key) {
    const auto it = std::find_if(schema.begin(), schema.end(), [&](const KeySpec& s) { return s.key == key; });
    return it == schema.end() ? nullptr : &*it;
}

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

bool valid_key(std::string_view key) {
    return !key.empty() && std::all_of(key.begin(), key.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.';
    });
}

std::optional<double> to_double(std::string_view text) {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value)) return std::nullopt;
    return value;
}

std::optional<unsigned long long> to_count(std::string_view text) {
    unsigned long long value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) return std::nullopt;
    return value;
}

[[noreturn]] void fail(ExitCode code, int line, int column, const std::string& message) {
    throw ConfigError(code, line, column, message);
}

std::vector<std::string> split_list(std::string_view text) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        const auto piece = trim(text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
        out.emplace_back(piece);
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

void check_number(const KeySpec& spec, std::string_view value, int line, int column) {
    std::ostringstream msg;
    switch (spec.type) {
        case ValueType::positive:
        case ValueType::unit_interval: {
            const auto v = to_double(value);
            if (!v) fail(ExitCode::syntax, line, column, std::string(spec.key) + ": '" + std::string(value) + "' is not a decimal number");
            if (spec.type == ValueType::positive && !(*v > 0.0)) {
                msg << spec.key << " must be positive (got " << value << ")";
                fail(ExitCode::validation, line, column, msg.str());
            }
            if (spec.type == ValueType::unit_interval && !(*v >= 0.0 && *v <= 1.0)) {
                msg << spec.key << " must lie in [0, 1] (got " << value << ")";
                fail(ExitCode::validation, line, column, msg.str());
            }
            return;
        }
        case ValueType::steps:
        case ValueType::count: {
            const auto v = to_count(value);
            if (!v) fail(ExitCode::syntax, line, column, std::string(spec.key) + ": '" + std::string(value) + "' is not an integer");
            const unsigned long long minimum = spec.type == ValueType::steps ? 2 : 1;
            if (*v < minimum) {
                msg << spec.key << " must be >= " << minimum << " (got " << value << ")";
                fail(ExitCode::validation, line, column, msg.str());
            }
            return;
        }
        case ValueType::memory_mode:
            if (value != "markovian" && value != "non_markovian") {
                fail(ExitCode::validation, line, column, std::string(spec.key) + " must be markovian or non_markovian");
            }
            return;
        case ValueType::povm_kind:
            if (value != "identity" && value != "uniform" && value != "projective" && value != "weak") {
                fail(ExitCode::validation, line, column, std::string(spec.key) + " must be identity, uniform, projective or weak");
            }
            return;
        case ValueType::scenario_kind:
        case ValueType::key:
        case ValueType::number_list:
            return;
    }
}

struct Located {
    int line = 0;
    int column = 0;
};

// Cross-field checks that need more than one key.
void check_relations(const ScenarioConfig& cfg, const std::map<std::string, Located>& where) {
    const auto num = [&](const std::string& key) { return *to_double(cfg.parameters.at(key)); };
    const auto at = [&](const std::string& key) {
        const auto it = where.find(key);
        return it == where.end() ? Located{} : it->second;
    };
    const auto has = [&](const std::string& key) { return cfg.parameters.count(key) > 0; };
    const auto need_memory = [&](const std::string& mode_key, const std::string& mem_key) {
        if (has(mode_key) && cfg.parameters.at(mode_key) == "non_markovian" && !has(mem_key)) {
            const Located l = at(mode_key);
            fail(ExitCode::missing_key, l.line, l.column, "missing key '" + mem_key + "' required by " + mode_key + " = non_markovian");
        }
    };

    switch (cfg.scenario) {
        case Kind::otto:
            if (!(num("otto.omega0") > num("otto.omega1"))) {
                const Located l = at("otto.omega1");
                fail(ExitCode::validation, l.line, l.column, "otto.omega0 must exceed otto.omega1");
            }
            need_memory("otto.mode_h", "otto.omega_mem_h");
            need_memory("otto.mode_c", "otto.omega_mem_c");
            break;
        case Kind::process:
            need_memory("process.mode", "process.omega_mem");
            break;
        case Kind::classical:
            if (!(num("classical.Th") > num("classical.Tc"))) {
                const Located l = at("classical.Tc");
                fail(ExitCode::validation, l.line, l.column, "classical.Th must exceed classical.Tc");
            }
            break;
        case Kind::demon:
            if (cfg.parameters.at("demon.povm") == "weak" && !has("demon.strength")) {
                const Located l = at("demon.povm");
                fail(ExitCode::missing_key, l.line, l.column, "missing key 'demon.strength' required by demon.povm = weak");
            }
            break;
        case Kind::gibbs:
        case Kind::sweep:
            break;
    }
}

void fill_grid(ScenarioConfig& cfg) {
    cfg.duration.reset();
    cfg.steps.reset();
    if (const auto it = cfg.parameters.find("grid.duration"); it != cfg.parameters.end()) cfg.duration = *to_double(it->second);
    if (const auto it = cfg.parameters.find("grid.steps"); it != cfg.parameters.end()) {
        cfg.steps = static_cast<std::size_t>(*to_count(it->second));
    }
}

}  // namespace

ConfigError::ConfigError(ExitCode code, int line, int column, const std::string& message)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message
                                  : message),
      code_(code), line_(line), column_(column) {}

std::string_view kind_name(Kind kind) {
    switch (kind) {
        case Kind::gibbs: return "gibbs";
        case Kind::process: return "process";
        case Kind::otto: return "otto";
        case Kind::classical: return "classical";
        case Kind::demon: return "demon";
        case Kind::sweep: return "sweep";
    }
    return "?";
}

ScenarioConfig parse_config(std::string_view text) {
    std::vector<Entry> entries;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto eol = text.find('\n', pos);
        std::string_view raw = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
        ++line_no;
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;

        if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
        if (trim(raw).empty()) continue;

        const auto eq = raw.find('=');
        const int first_col = static_cast<int>(raw.find_first_not_of(" \t")) + 1;
        if (eq == std::string_view::npos) fail(ExitCode::syntax, line_no, first_col, "expected 'key = value'");
        const std::string_view key = trim(raw.substr(0, eq));
        const std::string_view value = trim(raw.substr(eq + 1));
        if (!valid_key(key)) fail(ExitCode::syntax, line_no, first_col, "invalid key '" + std::string(key) + "'");
        const int value_col = value.empty() ? static_cast<int>(eq) + 2
                                            : static_cast<int>(value.data() - raw.data()) + 1;
        if (value.empty()) fail(ExitCode::syntax, line_no, value_col, "empty value for '" + std::string(key) + "'");

        const auto dup = std::find_if(entries.begin(), entries.end(), [&](const Entry& e) { return e.key == key; });
        if (dup != entries.end()) {
            fail(ExitCode::syntax, line_no, first_col,
                 "duplicate key '" + std::string(key) + "' (first set on line " + std::to_string(dup->line) + ")");
        }
        entries.push_back({std::string(key), std::string(value), line_no, first_col, value_col});
    }

    const auto find = [&](std::string_view key) -> const Entry* {
        const auto it = std::find_if(entries.begin(), entries.end(), [&](const Entry& e) { return e.key == key; });
        return it == entries.end() ? nullptr : &*it;
    };

    const Entry* scenario_entry = find("scenario");
    if (!scenario_entry) fail(ExitCode::missing_key, 0, 0, "missing key 'scenario'");
    const auto kind = parse_kind(scenario_entry->value);
    if (!kind) {
        fail(ExitCode::unknown_scenario, scenario_entry->line, scenario_entry->value_column,
             "unknown scenario '" + scenario_entry->value + "'");
    }

    ScenarioConfig cfg;
    cfg.scenario = *kind;

    std::vector<KeySpec> schema(schema_for(*kind).begin(), schema_for(*kind).end());
    if (*kind == Kind::sweep) {
        const Entry* base = find("sweep.base");
        if (!base) fail(ExitCode::missing_key, 0, 0, "missing key 'sweep.base'");
        const auto base_kind = parse_kind(base->value);
        if (!base_kind || *base_kind == Kind::sweep) {
            fail(ExitCode::unknown_scenario, base->line, base->value_column, "unknown sweep base scenario '" + base->value + "'");
        }
        cfg.sweep_base = *base_kind;
        const auto base_schema = schema_for(*base_kind);
        schema.insert(schema.end(), base_schema.begin(), base_schema.end());
    }

    std::map<std::string, Located> where;
    for (const Entry& e : entries) {
        if (e.key == "scenario") continue;
        if (e.key == "output") {
            cfg.output_path = e.value;
            continue;
        }
        const KeySpec* spec = find_spec(schema, e.key);
        if (!spec) fail(ExitCode::validation, e.line, e.key_column, "unknown key '" + e.key + "' for scenario " + std::string(kind_name(*kind)));
        check_number(*spec, e.value, e.line, e.value_column);
        cfg.parameters[e.key] = e.value;
        where[e.key] = {e.line, e.value_column};
    }

    if (*kind == Kind::sweep) {
        if (const Entry* param = find("sweep.parameter"); param && !find_spec(schema_for(cfg.sweep_base), param->value)) {
            fail(ExitCode::validation, param->line, param->value_column,
                 "sweep.parameter '" + param->value + "' is not a key of scenario " + std::string(kind_name(cfg.sweep_base)));
        }
    }

    if (!find("output")) fail(ExitCode::missing_key, 0, 0, "missing key 'output'");
    for (const KeySpec& spec : schema) {
        if (spec.required && !cfg.parameters.count(std::string(spec.key))) {
            // A swept base key may come from sweep.values alone.
            const bool swept = *kind == Kind::sweep && cfg.parameters.count("sweep.parameter") &&
                               cfg.parameters.at("sweep.parameter") == spec.key;
            if (!swept) fail(ExitCode::missing_key, 0, 0, "missing key '" + std::string(spec.key) + "'");
        }
    }

    if (*kind == Kind::sweep) {
        const Entry* param = find("sweep.parameter");
        const KeySpec* target = find_spec(schema_for(cfg.sweep_base), param->value);
        cfg.sweep_parameter = param->value;
        const Entry* values = find("sweep.values");
        cfg.sweep_values = split_list(values->value);
        for (const auto& v : cfg.sweep_values) {
            if (v.empty()) fail(ExitCode::syntax, values->line, values->value_column, "empty entry in sweep.values");
            check_number(*target, v, values->line, values->value_column);
        }
        // Relations are checked per expanded member.
        for (const ScenarioConfig& member : cfg.expand()) {
            std::map<std::string, Located> member_where = where;
            member_where[cfg.sweep_parameter] = {values->line, values->value_column};
            check_relations(member, member_where);
        }
    } else {
        check_relations(cfg, where);
    }
    fill_grid(cfg);
    return cfg;
}

std::vector<ScenarioConfig> ScenarioConfig::expand() const {
    if (scenario != Kind::sweep) return {*this};
    std::vector<ScenarioConfig> out;
    out.reserve(sweep_values.size());
    const std::filesystem::path base(output_path);
    for (std::size_t i = 0; i < sweep_values.size(); ++i) {
        ScenarioConfig member;
        member.scenario = sweep_base;
        for (const auto& [key, value] : parameters) {
            if (key.rfind("sweep.", 0) != 0) member.parameters[key] = value;
        }
        member.parameters[sweep_parameter] = sweep_values[i];
        std::filesystem::path out_path = base.parent_path() / (base.stem().string() + "_" + std::to_string(i) + base.extension().string());
        member.output_path = out_path.string();
        fill_grid(member);
        out.push_back(std::move(member));
    }
    return out;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read config '" + path.string() + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

}  // namespace secondlaw::scenario

#include "secondlaw/scenario.hpp"

#include "secondlaw/batch.hpp"
#include "secondlaw/engines.hpp"
#include "secondlaw/errors.hpp"
#include "secondlaw/feedback.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace secondlaw::scenario {

namespace {

constexpr double kSecondLawTolerance = 1e-9;

using Params = std::map<std::string, std::string>;

double num(const Params& p, const std::string& key, double fallback = std::numeric_limits<double>::quiet_NaN()) {
    const auto it = p.find(key);
    return it == p.end() ? fallback : std::stod(it->second);
}

std::string word(const Params& p, const std::string& key, const std::string& fallback) {
    const auto it = p.find(key);
    return it == p.end() ? fallback : it->second;
}

std::string fmt(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string csv(double v) { return format_csv_number(v); }

std::string csv(const EffectiveTemperature& t) {
    return t.infinite ? std::string("inf") : format_csv_number(t.value);
}

const char* pass(bool ok) { return ok ? "PASS" : "VIOLATED"; }

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

void write_atomically(const std::filesystem::path& path, const Table& table) {
    namespace fs = std::filesystem;
    std::error_code ec;
    if (path.has_parent_path()) {
        fs::create_directories(path.parent_path(), ec);
        if (ec) throw IoError("cannot create directory '" + path.parent_path().string() + "': " + ec.message());
    }
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open '" + tmp.string() + "' for writing");
        const auto line = [&](const std::vector<std::string>& cells) {
            for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
            out << '\n';
        };
        line(table.header);
        for (const auto& r : table.rows) line(r);
        out.flush();
        if (!out) throw IoError("write to '" + tmp.string() + "' failed");
    }
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp);
        throw IoError("cannot rename '" + tmp.string() + "' to '" + path.string() + "': " + ec.message());
    }
}

ThermalizationParams memory_params(const Params& p, const std::string& mode_key, const std::string& gamma_key,
                                   const std::string& mem_key) {
    const double gamma = num(p, gamma_key, 1.0);
    if (word(p, mode_key, "markovian") == "non_markovian") return ThermalizationParams::non_markovian(gamma, num(p, mem_key));
    return ThermalizationParams::markovian(gamma);
}

struct Outcome {
    std::string summary;
    Table table;
};

Outcome run_gibbs(const ScenarioConfig& cfg) {
    const double omega = num(cfg.parameters, "gibbs.omega");
    const ThermalContext ctx = ThermalContext::from_temperature(num(cfg.parameters, "gibbs.T"));
    const HermitianOperator h = qubit_hamiltonian(omega);
    const QuantumState g = gibbs_state(h, ctx);
    const double energy = trace_product(g.density(), h);
    const double entropy = von_neumann_entropy(g);
    const double free_energy = equilibrium_free_energy(h, ctx);

    Outcome o;
    o.table.header = {"omega", "T", "p_excited", "p_ground", "energy", "entropy_vn", "free_energy"};
    o.table.rows.push_back({csv(omega), csv(ctx.temperature()), csv(g.population(0)), csv(g.population(1)), csv(energy),
                            csv(entropy), csv(free_energy)});
    o.summary = "gibbs: p_excited=" + fmt(g.population(0)) + " p_ground=" + fmt(g.population(1)) +
                " energy=" + fmt(energy) + " entropy=" + fmt(entropy) + " free_energy=" + fmt(free_energy);
    return o;
}

Outcome run_process(const ScenarioConfig& cfg) {
    const Params& p = cfg.parameters;
    const double omega = num(p, "process.omega");
    const double n0 = num(p, "process.n0");
    const ThermalContext ctx = ThermalContext::from_temperature(num(p, "process.T"));
    const ThermalizationParams params = memory_params(p, "process.mode", "process.gamma", "process.omega_mem");
    const HermitianOperator h = qubit_hamiltonian(omega);
    const Trajectory traj = sample_relaxation(QuantumState::diagonal({n0, 1.0 - n0}), h, ctx, params, *cfg.duration, *cfg.steps);
    const CumulativeFunctionals cum = cumulative_functionals(traj);

    Outcome o;
    o.table.header = {"t",        "energy",   "entropy_vn",        "rel_entropy_to_gibbs", "heat_cum",
                      "work_cum", "entropy_production_cum", "w_rev_cum", "w_irr_cum",            "t_eff"};
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const QuantumState& rho = traj.states()[i];
        std::string t_eff;
        try {
            t_eff = csv(effective_temperature(rho, omega));
        } catch (const DomainError&) {
            t_eff = rho.population(0) > 0.5 ? "-0" : "0";
        }
        o.table.rows.push_back({csv(traj.times()[i]), csv(trace_product(rho.density(), h)), csv(von_neumann_entropy(rho)),
                                csv(cum.relative_entropy_to_gibbs[i]), csv(cum.heat[i]), csv(cum.work[i]),
                                csv(cum.entropy_production[i]), csv(cum.reversible_work[i]), csv(cum.irreversible_work[i]),
                                t_eff});
    }

    // Smallest entropy production over any sub-interval [t_i, t_j].
    double worst = 0.0;
    double running_max = cum.entropy_production.front();
    for (std::size_t j = 1; j < cum.entropy_production.size(); ++j) {
        worst = std::min(worst, cum.entropy_production[j] - running_max);
        running_max = std::max(running_max, cum.entropy_production[j]);
    }
    const std::size_t last = traj.size() - 1;
    o.summary = "process: mode=" + word(p, "process.mode", "markovian") + " heat=" + fmt(cum.heat[last]) +
                " work=" + fmt(cum.work[last]) + " delta_iS=" + fmt(cum.entropy_production[last]) +
                " w_rev=" + fmt(cum.reversible_work[last]) + " w_irr=" + fmt(cum.irreversible_work[last]) +
                " min_interval_delta_iS=" + fmt(worst) + " markov_second_law=" + pass(worst >= -kSecondLawTolerance);
    return o;
}

OttoConfig otto_config(const ScenarioConfig& cfg) {
    const Params& p = cfg.parameters;
    OttoConfig c;
    c.omega0 = num(p, "otto.omega0");
    c.omega1 = num(p, "otto.omega1");
    c.Th = num(p, "otto.Th");
    c.Tc = num(p, "otto.Tc");
    c.stroke_duration = *cfg.duration;
    c.steps = *cfg.steps;
    c.params_h = memory_params(p, "otto.mode_h", "otto.gamma_h", "otto.omega_mem_h");
    c.params_c = memory_params(p, "otto.mode_c", "otto.gamma_c", "otto.omega_mem_c");
    return c;
}

std::string otto_line(const CycleReport& r) {
    return "Qh=" + fmt(r.Qh) + " Qc=" + fmt(r.Qc) + " W_total=" + fmt(r.W_total) +
           " eta=" + (r.eta ? fmt(*r.eta) : std::string("none")) + " eta_carnot=" + fmt(r.eta_carnot) +
           " dIS_h=" + fmt(r.dIS_h) + " dIS_c=" + fmt(r.dIS_c) + " W_rev=" + fmt(r.W_rev) + " W_irr=" + fmt(r.W_irr);
}

Outcome run_otto_scenario(const ScenarioConfig& cfg) {
    const OttoConfig c = otto_config(cfg);
    c.validate();
    const auto cycles = static_cast<std::size_t>(num(cfg.parameters, "otto.cycles", 1.0));

    // Transient cycles from the cold Gibbs state.
    Outcome o;
    o.table.header = {"cycle_index", "Qh", "Qc", "W_total", "eta", "eta_carnot", "dIS_h", "dIS_c", "T1", "T3"};
    double n_a = gibbs_state(qubit_hamiltonian(c.omega1), ThermalContext::from_temperature(c.Tc)).population(0);
    for (std::size_t k = 0; k < cycles; ++k) {
        const CycleReport r = run_otto_cycle_from(c, n_a);
        o.table.rows.push_back({std::to_string(k), csv(r.Qh), csv(r.Qc), csv(r.W_total),
                                r.eta ? csv(*r.eta) : std::string("nan"), csv(r.eta_carnot), csv(r.dIS_h), csv(r.dIS_c),
                                csv(r.T1), csv(r.T3)});
        n_a = r.excited_population_D;
    }

    const CycleReport limit = run_otto(c);
    const bool ok = limit.dIS_h >= -kSecondLawTolerance && limit.dIS_c >= -kSecondLawTolerance;
    o.summary = "otto: " + otto_line(limit) + " is_engine=" + (limit.is_engine ? "true" : "false") +
                " markov_second_law=" + pass(ok);
    return o;
}

Outcome run_classical(const ScenarioConfig& cfg) {
    const Params& p = cfg.parameters;
    const ClassicalEngineReport r = classical_endoreversible(num(p, "classical.Th"), num(p, "classical.Tc"),
                                                             num(p, "classical.T1"), num(p, "classical.T3"),
                                                             num(p, "classical.Qh"));
    Outcome o;
    o.table.header = {"Qc", "eta_e", "eta_carnot", "entropy_production", "identity_residual", "physical_branch"};
    o.table.rows.push_back({csv(r.Qc), csv(r.eta_e), csv(r.eta_carnot), csv(r.entropy_production),
                            csv(r.identity_residual), r.physical_branch ? "1" : "0"});
    o.summary = "classical: Qc=" + fmt(r.Qc) + " eta=" + fmt(r.eta_e) + " eta_carnot=" + fmt(r.eta_carnot) +
                " delta_iS=" + fmt(r.entropy_production) + " physical_branch=" + (r.physical_branch ? "true" : "false") +
                " second_law=" + pass(r.entropy_production >= -kSecondLawTolerance);
    return o;
}

Povm demon_povm(const Params& p) {
    const std::string kind = word(p, "demon.povm", "identity");
    if (kind == "identity") return Povm::trivial(2);
    if (kind == "uniform") return Povm::uniform(2, 2);
    if (kind == "projective") return Povm::computational_projectors(2);
    const double s = num(p, "demon.strength");
    const double hi = 0.5 * (1.0 + s);
    const double lo = 0.5 * (1.0 - s);
    return Povm::from_effects({HermitianOperator::diagonal({hi, lo}), HermitianOperator::diagonal({lo, hi})});
}

Outcome run_demon(const ScenarioConfig& cfg) {
    const Params& p = cfg.parameters;
    const double n0 = num(p, "demon.n0");
    const ThermalContext ctx = ThermalContext::from_temperature(num(p, "demon.T"));
    const QuantumState rho = QuantumState::diagonal({n0, 1.0 - n0});
    const Povm povm = demon_povm(p);
    const MeasurementRecord rec = measure(rho, povm);
    const double info = qc_mutual_information(rho, povm);
    const double outcome_entropy = shannon_entropy(rec.probabilities);
    const double extractable = info / ctx.beta();

    Outcome o;
    o.table.header = {"outcome", "probability"};
    for (std::size_t k = 0; k < rec.probabilities.size(); ++k) {
        o.table.rows.push_back({std::to_string(k), csv(rec.probabilities[k])});
    }
    o.summary = "demon: povm=" + word(p, "demon.povm", "identity") + " outcomes=" + std::to_string(povm.size()) +
                " info=" + fmt(info) + " outcome_entropy=" + fmt(outcome_entropy) +
                " extra_extractable_work=" + fmt(extractable);
    return o;
}

Outcome run_one(const ScenarioConfig& cfg) {
    switch (cfg.scenario) {
        case Kind::gibbs: return run_gibbs(cfg);
        case Kind::process: return run_process(cfg);
        case Kind::otto: return run_otto_scenario(cfg);
        case Kind::classical: return run_classical(cfg);
        case Kind::demon: return run_demon(cfg);
        case Kind::sweep: break;
    }
    throw ValidationError("run_scenario: nested sweep");
}

}  // namespace

std::string format_csv_number(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

RunResult run_scenario(const ScenarioConfig& config, const RunOptions& options) {
    std::vector<ScenarioConfig> members = config.expand();
    for (auto& m : members) {
        if (options.steps_override) {
            if (*options.steps_override < 2) throw ConfigError(ExitCode::validation, 0, 0, "--steps-override must be >= 2");
            if (m.steps) {
                m.steps = options.steps_override;
                m.parameters["grid.steps"] = std::to_string(*options.steps_override);
            }
        }
        if (options.out_dir && std::filesystem::path(m.output_path).is_relative()) {
            m.output_path = (*options.out_dir / m.output_path).string();
        }
    }

    std::vector<Outcome> outcomes(members.size());
    const auto task = [&](std::size_t i) {
        outcomes[i] = run_one(members[i]);
        write_atomically(members[i].output_path, outcomes[i].table);
    };
    if (options.parallel && members.size() > 1) {
        batch::parallel_for(members.size(), task);
    } else {
        batch::serial_for(members.size(), task);
    }

    RunResult result;
    for (std::size_t i = 0; i < members.size(); ++i) {
        std::string line = outcomes[i].summary;
        if (config.scenario == Kind::sweep) {
            line = "sweep[" + std::to_string(i) + "] " + config.sweep_parameter + "=" + config.sweep_values[i] + " " + line;
        }
        result.summary_lines.push_back(std::move(line));
        result.outputs.emplace_back(members[i].output_path);
    }
    return result;
}

}  // namespace secondlaw::scenario

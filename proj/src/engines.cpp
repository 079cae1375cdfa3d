#include "secondlaw/engines.hpp"

#include "secondlaw/errors.hpp"
#include "secondlaw/process.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace secondlaw {

namespace {

constexpr double kFixedPointTolerance = 1e-10;
constexpr int kFixedPointMaxIterations = 10000;

QuantumState qubit_state(double excited) { return QuantumState::diagonal({excited, 1.0 - excited}); }

// Pure endpoints have no finite effective temperature; report the T -> 0
// limit with the inversion flag carrying the side it is approached from.
EffectiveTemperature temperature_or_limit(const QuantumState& rho, double omega) {
    try {
        return effective_temperature(rho, omega);
    } catch (const DomainError&) {
        EffectiveTemperature t;
        t.inverted = trace_product(rho.density(), sigma_z()) > 0.0;
        t.value = t.inverted ? -0.0 : 0.0;
        return t;
    }
}

void require_positive(double value, const char* what) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        std::ostringstream msg;
        msg << what << " must be finite and positive (got " << value << ")";
        throw ValidationError(msg.str());
    }
}

}  // namespace

void OttoConfig::validate() const {
    require_positive(omega1, "OttoConfig: omega1");
    if (!(omega0 > omega1)) throw ValidationError("OttoConfig: omega0 must exceed omega1");
    require_positive(Th, "OttoConfig: Th");
    require_positive(Tc, "OttoConfig: Tc");
    require_positive(stroke_duration, "OttoConfig: stroke_duration");
    if (steps < 2) throw ValidationError("OttoConfig: steps must be >= 2");
    params_h.validate();
    params_c.validate();
}

double otto_fixed_point(const OttoConfig& config) {
    config.validate();
    const ThermalContext hot = ThermalContext::from_temperature(config.Th, "hot");
    const ThermalContext cold = ThermalContext::from_temperature(config.Tc, "cold");
    const HermitianOperator h0 = qubit_hamiltonian(config.omega0);
    const HermitianOperator h1 = qubit_hamiltonian(config.omega1);

    double excited = gibbs_state(h1, cold).population(0);
    for (int it = 0; it < kFixedPointMaxIterations; ++it) {
        const QuantumState b = relax(qubit_state(excited), h0, hot, config.params_h, config.stroke_duration);
        const QuantumState d = relax(b, h1, cold, config.params_c, config.stroke_duration);
        const double next = d.population(0);
        if (std::abs(next - excited) <= kFixedPointTolerance) return next;
        excited = next;
    }
    throw ConvergenceError("run_otto: cycle map did not reach a fixed point within 1e4 iterations");
}

CycleReport run_otto_cycle_from(const OttoConfig& config, double excited_population_A) {
    config.validate();
    const ThermalContext hot = ThermalContext::from_temperature(config.Th, "hot");
    const ThermalContext cold = ThermalContext::from_temperature(config.Tc, "cold");
    const HermitianOperator h0 = qubit_hamiltonian(config.omega0);
    const HermitianOperator h1 = qubit_hamiltonian(config.omega1);

    const QuantumState rho_a = qubit_state(excited_population_A);
    const Trajectory stroke1 = sample_relaxation(rho_a, h0, hot, config.params_h, config.stroke_duration, config.steps);
    const QuantumState& rho_b = stroke1.states().back();
    const Trajectory stroke2 = adiabatic_rescale(rho_b, config.omega0, config.omega1, config.steps);
    const Trajectory stroke3 = sample_relaxation(rho_b, h1, cold, config.params_c, config.stroke_duration, config.steps);
    const QuantumState& rho_d = stroke3.states().back();
    const Trajectory stroke4 = adiabatic_rescale(rho_d, config.omega1, config.omega0, config.steps);

    CycleReport r;
    r.Qh = heat(stroke1);
    r.Qc = heat(stroke3);
    r.W_stroke_II = work(stroke2);
    r.W_stroke_IV = work(stroke4);
    r.W_total = r.W_stroke_II + r.W_stroke_IV;

    const QuantumState gibbs_h = gibbs_state(h0, hot);
    const QuantumState gibbs_c = gibbs_state(h1, cold);
    r.dIS_h = relative_entropy(rho_a, gibbs_h) - relative_entropy(rho_b, gibbs_h);
    r.dIS_c = relative_entropy(rho_b, gibbs_c) - relative_entropy(rho_d, gibbs_c);
    // Adiabats produce no entropy, so only the isochores contribute.
    r.W_irr = r.dIS_h * config.Th + r.dIS_c * config.Tc;
    r.W_rev = r.W_total - r.W_irr;

    r.eta_carnot = 1.0 - config.Tc / config.Th;
    r.is_engine = r.Qh > 0.0 && r.W_total < 0.0;
    if (r.is_engine) r.eta = -r.W_total / r.Qh;
    r.reversed_gradient = config.Th < config.Tc;

    r.T1 = temperature_or_limit(rho_b, config.omega0);
    r.T2 = temperature_or_limit(rho_b, config.omega1);
    r.T3 = temperature_or_limit(rho_d, config.omega1);
    r.T0 = temperature_or_limit(rho_d, config.omega0);
    r.excited_population_A = excited_population_A;
    r.excited_population_B = rho_b.population(0);
    r.excited_population_D = rho_d.population(0);
    return r;
}

CycleReport run_otto(const OttoConfig& config) { return run_otto_cycle_from(config, otto_fixed_point(config)); }

OttoClosedForm otto_closed_form(double omega0, double omega1, double T1, double T3) {
    require_positive(omega0, "otto_closed_form: omega0");
    require_positive(omega1, "otto_closed_form: omega1");
    require_positive(T1, "otto_closed_form: T1");
    require_positive(T3, "otto_closed_form: T3");
    const double bracket = std::tanh(omega1 / (2.0 * T3)) - std::tanh(omega0 / (2.0 * T1));
    OttoClosedForm out;
    out.Qh = 0.5 * omega0 * bracket;
    out.Qc = -0.5 * omega1 * bracket;
    out.W = 0.5 * (omega1 - omega0) * bracket;
    if (engine_condition(omega0, omega1, T1, T3)) out.eta = 1.0 - omega1 / omega0;
    return out;
}

bool engine_condition(double omega0, double omega1, double T1, double T3) {
    return omega1 / T3 >= omega0 / T1 - 1e-12;
}

double generic_efficiency(double W_rev, double Qh, double dIS_h, double dIS_c, double beta_h, double beta_c) {
    if (!(Qh > 0.0)) throw ValidationError("generic_efficiency: Qh must be positive");
    require_positive(beta_h, "generic_efficiency: beta_h");
    require_positive(beta_c, "generic_efficiency: beta_c");
    return -W_rev / Qh - (dIS_h / beta_h + dIS_c / beta_c) / Qh;
}

double single_reservoir_cycle(const HermitianOperator& H0, const HermitianOperator& H1, const QuantumState& rho0,
                              const QuantumState& rho1, const ThermalContext& ctx) {
    if (H0.dim() != H1.dim() || rho0.dim() != H0.dim() || rho1.dim() != H0.dim()) {
        throw ValidationError("single_reservoir_cycle: dimension mismatch");
    }
    const QuantumState g0 = gibbs_state(H0, ctx);
    const QuantumState g1 = gibbs_state(H1, ctx);
    const double stroke1 = relative_entropy(rho0, g0) - relative_entropy(rho1, g0);
    const double stroke2 = relative_entropy(rho1, g1) - relative_entropy(rho0, g1);
    return ctx.temperature() * (stroke1 + stroke2);
}

ClassicalEngineReport classical_endoreversible(double Th, double Tc, double T1, double T3, double Qh) {
    require_positive(Th, "classical_endoreversible: Th");
    require_positive(Tc, "classical_endoreversible: Tc");
    require_positive(T1, "classical_endoreversible: T1");
    require_positive(T3, "classical_endoreversible: T3");
    require_positive(Qh, "classical_endoreversible: Qh");
    if (!(Th > Tc)) throw ValidationError("classical_endoreversible: Th must exceed Tc");

    ClassicalEngineReport r;
    r.Qc = Qh * T3 / T1;
    r.eta_e = 1.0 - T3 / T1;
    r.eta_carnot = 1.0 - Tc / Th;
    r.entropy_production = r.Qc / Tc - Qh / Th;
    r.identity_residual = (r.eta_e - r.eta_carnot) + Tc * r.entropy_production / Qh;
    r.physical_branch = Tc <= T3 && T3 <= T1 && T1 <= Th;
    return r;
}

}  // namespace secondlaw

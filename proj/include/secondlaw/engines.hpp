// engines.hpp: Otto cycle of a spin-1/2 working substance, generic
// efficiency decomposition, single-reservoir cycle and the classical
// endoreversible engine.
//
// Otto strokes (A -> B -> C -> D -> A):
//   I   hot isochore,  H0 = (omega0/2) sigma_z, coupled to the bath at Th
//   II  adiabat,       omega0 -> omega1, state frozen
//   III cold isochore, H1 = (omega1/2) sigma_z, coupled to the bath at Tc
//   IV  adiabat,       omega1 -> omega0, state frozen

#pragma once

#include "secondlaw/channels.hpp"
#include "secondlaw/state_thermo.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace secondlaw {

struct OttoConfig {
    double omega0 = 2.0;
    double omega1 = 1.0;
    double Th = 4.0;
    double Tc = 1.0;
    double stroke_duration = 40.0;
    std::size_t steps = 201;  // samples per stroke
    ThermalizationParams params_h = ThermalizationParams::markovian(1.0);
    ThermalizationParams params_c = ThermalizationParams::markovian(1.0);

    // omega0 > omega1 > 0, temperatures > 0, duration > 0, steps >= 2.
    void validate() const;
};

struct CycleReport {
    double Qh = 0.0;
    double Qc = 0.0;
    double W_total = 0.0;
    double W_stroke_II = 0.0;
    double W_stroke_IV = 0.0;
    double W_rev = 0.0;
    double W_irr = 0.0;
    std::optional<double> eta;  // set only when is_engine
    double eta_carnot = 0.0;    // 1 - Tc/Th (negative on a reversed gradient)
    EffectiveTemperature T1;    // after stroke I, at omega0
    EffectiveTemperature T2;    // after stroke II, at omega1
    EffectiveTemperature T3;    // after stroke III, at omega1
    EffectiveTemperature T0;    // after stroke IV, at omega0
    double dIS_h = 0.0;
    double dIS_c = 0.0;
    bool is_engine = false;          // Qh > 0 and W_total < 0
    bool reversed_gradient = false;  // Th < Tc
    double excited_population_A = 0.0;
    double excited_population_B = 0.0;
    double excited_population_D = 0.0;  // end of the cycle, before stroke IV
};

// Runs the cycle at its limit cycle: the population map of one full cycle is
// iterated to a fixed point (tolerance 1e-10, at most 1e4 iterations, else
// ConvergenceError), then the four strokes are sampled and integrated.
CycleReport run_otto(const OttoConfig& config);

// One cycle starting from the given excited population at point A, without
// closing the cycle.
CycleReport run_otto_cycle_from(const OttoConfig& config, double excited_population_A);

// Limit-cycle excited population at point A.
double otto_fixed_point(const OttoConfig& config);

struct OttoClosedForm {
    double Qh = 0.0;
    double Qc = 0.0;
    double W = 0.0;
    std::optional<double> eta;  // 1 - omega1/omega0 when engine_condition holds
};

OttoClosedForm otto_closed_form(double omega0, double omega1, double T1, double T3);

// omega1 / T3 >= omega0 / T1 (inclusive, 1e-12 slack).
bool engine_condition(double omega0, double omega1, double T1, double T3);

// eta = -W_rev/Qh - (dIS_h/beta_h + dIS_c/beta_c)/Qh. Qh must be positive.
double generic_efficiency(double W_rev, double Qh, double dIS_h, double dIS_c, double beta_h, double beta_c);

// Work over a single-bath cycle rho0 -(H0)-> rho1 -(H1)-> rho0:
//   T [S(rho0||rho0^b) - S(rho1||rho0^b) + S(rho1||rho1^b) - S(rho0||rho1^b)]
// = T (Delta_iS of stroke 1 + Delta_iS of stroke 2). May be +-infinity.
double single_reservoir_cycle(const HermitianOperator& H0, const HermitianOperator& H1, const QuantumState& rho0,
                              const QuantumState& rho1, const ThermalContext& ctx);

struct ClassicalEngineReport {
    double Qc = 0.0;
    double eta_e = 0.0;
    double eta_carnot = 0.0;
    double entropy_production = 0.0;
    double identity_residual = 0.0;  // (eta_e - eta_C) + Tc dIS / Qh
    bool physical_branch = true;     // Tc <= T3 and T1 <= Th
};

ClassicalEngineReport classical_endoreversible(double Th, double Tc, double T1, double T3, double Qh);

}  // namespace secondlaw

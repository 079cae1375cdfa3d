// channels.hpp: population-relaxation dynamics and adiabatic rescaling
//
// States and Hamiltonians are diagonal in one fixed basis; coherences stay
// zero. Each level population relaxes as
//
//     p(t) = p_eq + (p(0) - p_eq) f(t)
//
// with memory factor f(t) = exp(-gamma t) (Markovian) or
// exp(-gamma t) cos(omega_mem t) (non-Markovian). A sign change of f makes
// the state overshoot the Gibbs populations, which is what drives the
// relative entropy to the Gibbs state back up.

#pragma once

#include "secondlaw/process.hpp"
#include "secondlaw/state_thermo.hpp"

#include <cstddef>

namespace secondlaw {

enum class MemoryMode { markovian, non_markovian };

struct ThermalizationParams {
    double gamma = 1.0;      // relaxation rate, > 0
    double omega_mem = 0.0;  // memory oscillation frequency; > 0 when non-Markovian
    MemoryMode mode = MemoryMode::markovian;

    static ThermalizationParams markovian(double gamma);
    static ThermalizationParams non_markovian(double gamma, double omega_mem);

    // Throws ValidationError when the invariants above fail.
    void validate() const;
};

double memory_factor(const ThermalizationParams& params, double t);

// State after relaxing for time t against the bath `ctx`. rho0 and H must be
// diagonal (1e-8). Throws AmplitudeError when a population would leave
// [0, 1]; nothing is clamped.
QuantumState relax(const QuantumState& rho0, const HermitianOperator& hamiltonian, const ThermalContext& ctx,
                   const ThermalizationParams& params, double t);

// `steps` uniform samples of relax(rho0, ., t) for t in [0, duration].
Trajectory sample_relaxation(const QuantumState& rho0, const HermitianOperator& hamiltonian,
                             const ThermalContext& ctx, const ThermalizationParams& params, double duration,
                             std::size_t steps);

// Adiabatic stroke of a qubit: state frozen, H_t = (omega(t)/2) sigma_z with
// omega linear from omega_from to omega_to over [0, duration]. The nominal
// bath only labels the trajectory; no functional on a frozen state depends
// on it.
Trajectory adiabatic_rescale(const QuantumState& rho, double omega_from, double omega_to, std::size_t steps,
                             double duration = 1.0, const ThermalContext& nominal_bath = ThermalContext(1.0, "adiabatic"));

}  // namespace secondlaw

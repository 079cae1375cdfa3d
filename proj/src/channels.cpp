#include "secondlaw/channels.hpp"

#include "secondlaw/errors.hpp"

#include <cmath>
#include <sstream>
#include <vector>

namespace secondlaw {

namespace {

constexpr double kDiagonalTolerance = 1e-8;
constexpr double kPopulationSlack = 1e-12;

}  // namespace

ThermalizationParams ThermalizationParams::markovian(double gamma) {
    ThermalizationParams p{gamma, 0.0, MemoryMode::markovian};
    p.validate();
    return p;
}

ThermalizationParams ThermalizationParams::non_markovian(double gamma, double omega_mem) {
    ThermalizationParams p{gamma, omega_mem, MemoryMode::non_markovian};
    p.validate();
    return p;
}

void ThermalizationParams::validate() const {
    if (!(gamma > 0.0) || !std::isfinite(gamma)) {
        throw ValidationError("ThermalizationParams: gamma must be finite and positive");
    }
    if (mode == MemoryMode::non_markovian && (!(omega_mem > 0.0) || !std::isfinite(omega_mem))) {
        throw ValidationError("ThermalizationParams: non-Markovian mode needs omega_mem > 0");
    }
}

double memory_factor(const ThermalizationParams& params, double t) {
    if (!(t >= 0.0)) throw ValidationError("memory_factor: t must be non-negative");
    const double decay = std::exp(-params.gamma * t);
    if (params.mode == MemoryMode::markovian) return decay;
    return decay * std::cos(params.omega_mem * t);
}

QuantumState relax(const QuantumState& rho0, const HermitianOperator& hamiltonian, const ThermalContext& ctx,
                   const ThermalizationParams& params, double t) {
    params.validate();
    if (rho0.dim() != hamiltonian.dim()) throw ValidationError("relax: dimension mismatch");
    if (!is_diagonal(rho0.density(), kDiagonalTolerance) || !is_diagonal(hamiltonian, kDiagonalTolerance)) {
        throw ValidationError("relax: state and Hamiltonian must be diagonal in the energy basis");
    }
    const QuantumState equilibrium = gibbs_state(hamiltonian, ctx);
    const double f = memory_factor(params, t);

    std::vector<double> populations(static_cast<std::size_t>(rho0.dim()));
    for (int i = 0; i < rho0.dim(); ++i) {
        const double eq = equilibrium.population(i);
        const double p = eq + (rho0.population(i) - eq) * f;
        if (p < -kPopulationSlack || p > 1.0 + kPopulationSlack) {
            std::ostringstream msg;
            msg << "relax: population of level " << i << " reaches " << p << " at t = " << t
                << "; reduce the memory amplitude (gamma, omega_mem) or change the initial state";
            throw AmplitudeError(msg.str());
        }
        populations[static_cast<std::size_t>(i)] = p;
    }
    return QuantumState::diagonal(populations);
}

Trajectory sample_relaxation(const QuantumState& rho0, const HermitianOperator& hamiltonian,
                             const ThermalContext& ctx, const ThermalizationParams& params, double duration,
                             std::size_t steps) {
    if (steps < 2) throw ValidationError("sample_relaxation: steps must be >= 2");
    if (!(duration > 0.0)) throw ValidationError("sample_relaxation: duration must be positive");
    std::vector<double> times(steps);
    std::vector<QuantumState> states;
    states.reserve(steps);
    const double dt = duration / static_cast<double>(steps - 1);
    for (std::size_t i = 0; i < steps; ++i) {
        times[i] = (i + 1 == steps) ? duration : dt * static_cast<double>(i);
        states.push_back(i == 0 ? rho0 : relax(rho0, hamiltonian, ctx, params, times[i]));
    }
    return Trajectory(std::move(times), std::move(states), std::vector<HermitianOperator>(steps, hamiltonian), ctx);
}

Trajectory adiabatic_rescale(const QuantumState& rho, double omega_from, double omega_to, std::size_t steps,
                             double duration, const ThermalContext& nominal_bath) {
    if (!(omega_from > 0.0) || !(omega_to > 0.0)) {
        throw ValidationError("adiabatic_rescale: frequencies must be positive");
    }
    if (steps < 2) throw ValidationError("adiabatic_rescale: steps must be >= 2");
    if (!(duration > 0.0)) throw ValidationError("adiabatic_rescale: duration must be positive");
    if (rho.dim() != 2 || !is_diagonal(rho.density(), kDiagonalTolerance)) {
        throw ValidationError("adiabatic_rescale: state must be a sigma_z-diagonal qubit");
    }
    std::vector<double> times(steps);
    std::vector<HermitianOperator> hamiltonians;
    hamiltonians.reserve(steps);
    for (std::size_t i = 0; i < steps; ++i) {
        const double s = static_cast<double>(i) / static_cast<double>(steps - 1);
        times[i] = s * duration;
        hamiltonians.push_back(qubit_hamiltonian(omega_from + (omega_to - omega_from) * s));
    }
    return Trajectory(std::move(times), std::vector<QuantumState>(steps, rho), std::move(hamiltonians), nominal_bath);
}

}  // namespace secondlaw

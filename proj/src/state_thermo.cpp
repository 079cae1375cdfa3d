#include "secondlaw/state_thermo.hpp"

#include "secondlaw/errors.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

namespace secondlaw {

namespace {

constexpr double kSupportWeightTolerance = 1e-10;

double entropy_of_spectrum(const RealVector& eigenvalues) {
    double s = 0.0;
    for (Eigen::Index k = 0; k < eigenvalues.size(); ++k) {
        const double p = eigenvalues(k);
        if (p > kSupportCutoff) s -= p * std::log(p);
    }
    return s;
}

// Shifted Boltzmann weights exp(-beta (lambda - lambda_min)) and their sum.
struct BoltzmannWeights {
    RealVector weights;
    double partial_sum;
    double ground;
};

BoltzmannWeights boltzmann(const Spectrum& spectrum, double beta) {
    BoltzmannWeights out;
    out.ground = spectrum.eigenvalues(0);
    out.weights = (-beta * (spectrum.eigenvalues.array() - out.ground)).exp().matrix();
    out.partial_sum = out.weights.sum();
    return out;
}

}  // namespace

QuantumState::QuantumState(HermitianOperator density)
    : density_(std::move(density)), spectrum_(eig_hermitian(density_)) {
    const double tr = density_.trace();
    if (!(std::abs(tr - 1.0) <= kTraceTolerance)) {
        std::ostringstream msg;
        msg << "QuantumState: trace " << tr << " differs from 1";
        throw ValidationError(msg.str());
    }
    if (!(spectrum_.eigenvalues(0) >= -kPositivityTolerance)) {
        std::ostringstream msg;
        msg << "QuantumState: eigenvalue " << spectrum_.eigenvalues(0) << " is negative";
        throw ValidationError(msg.str());
    }
}

QuantumState QuantumState::diagonal(std::span<const double> populations) {
    return QuantumState(HermitianOperator::diagonal(populations));
}

QuantumState QuantumState::diagonal(std::initializer_list<double> populations) {
    return QuantumState(HermitianOperator::diagonal(populations));
}

QuantumState QuantumState::maximally_mixed(int dim) {
    return QuantumState(HermitianOperator::identity(dim) * (1.0 / dim));
}

ThermalContext::ThermalContext(double beta, std::string label) : beta_(beta), label_(std::move(label)) {
    if (!(beta > 0.0) || !std::isfinite(beta)) {
        std::ostringstream msg;
        msg << "ThermalContext: beta must be finite and positive (got " << beta << ")";
        throw ValidationError(msg.str());
    }
}

ThermalContext ThermalContext::from_temperature(double temperature, std::string label) {
    if (!(temperature > 0.0) || !std::isfinite(temperature)) {
        std::ostringstream msg;
        msg << "ThermalContext: temperature must be finite and positive (got " << temperature << ")";
        throw ValidationError(msg.str());
    }
    return ThermalContext(1.0 / temperature, std::move(label));
}

HermitianOperator sigma_z() { return HermitianOperator::diagonal({1.0, -1.0}); }

HermitianOperator qubit_hamiltonian(double omega) { return sigma_z() * (0.5 * omega); }

QuantumState gibbs_state(const HermitianOperator& hamiltonian, const ThermalContext& ctx) {
    const Spectrum spectrum = eig_hermitian(hamiltonian);
    const BoltzmannWeights b = boltzmann(spectrum, ctx.beta());
    const RealVector populations = b.weights / b.partial_sum;
    const Matrix rho = spectrum.eigenvectors * populations.cast<Complex>().asDiagonal() * spectrum.eigenvectors.adjoint();
    return QuantumState(HermitianOperator(0.5 * (rho + rho.adjoint())));
}

double equilibrium_free_energy(const HermitianOperator& hamiltonian, const ThermalContext& ctx) {
    const BoltzmannWeights b = boltzmann(eig_hermitian(hamiltonian), ctx.beta());
    return b.ground - std::log(b.partial_sum) / ctx.beta();
}

HermitianOperator log_gibbs_state(const HermitianOperator& hamiltonian, const ThermalContext& ctx) {
    const Spectrum spectrum = eig_hermitian(hamiltonian);
    const BoltzmannWeights b = boltzmann(spectrum, ctx.beta());
    const double log_z = std::log(b.partial_sum);
    const double beta = ctx.beta();
    const double ground = b.ground;
    return matrix_function(spectrum, [=](double e) { return -beta * (e - ground) - log_z; });
}

double von_neumann_entropy(const QuantumState& rho) { return entropy_of_spectrum(rho.spectrum().eigenvalues); }

double relative_entropy(const QuantumState& rho, const QuantumState& sigma) {
    if (rho.dim() != sigma.dim()) {
        throw ValidationError("relative_entropy: dimension mismatch");
    }
    // tr{rho ln sigma} = sum_j <v_j|rho|v_j> ln s_j over sigma's eigenbasis.
    const Spectrum& ss = sigma.spectrum();
    const RealVector weights = diagonal_in_basis(rho.density(), ss.eigenvectors);
    double cross = 0.0;
    for (int j = 0; j < ss.dim(); ++j) {
        const double s = ss.eigenvalues(j);
        if (s < kSupportCutoff) {
            if (weights(j) > kSupportWeightTolerance) return std::numeric_limits<double>::infinity();
            continue;
        }
        cross += weights(j) * std::log(s);
    }
    const double value = -von_neumann_entropy(rho) - cross;
    return value;
}

double relative_entropy_to_gibbs(const QuantumState& rho, const HermitianOperator& hamiltonian,
                                 const ThermalContext& ctx) {
    if (rho.dim() != hamiltonian.dim()) {
        throw ValidationError("relative_entropy_to_gibbs: dimension mismatch");
    }
    const Spectrum spectrum = eig_hermitian(hamiltonian);
    const BoltzmannWeights b = boltzmann(spectrum, ctx.beta());
    const double log_z = std::log(b.partial_sum);
    const RealVector weights = diagonal_in_basis(rho.density(), spectrum.eigenvectors);
    double cross = 0.0;
    for (int j = 0; j < spectrum.dim(); ++j) {
        const double log_g = -ctx.beta() * (spectrum.eigenvalues(j) - b.ground) - log_z;
        if (std::exp(log_g) < kSupportCutoff) {
            if (weights(j) > kSupportWeightTolerance) return std::numeric_limits<double>::infinity();
            continue;
        }
        cross += weights(j) * log_g;
    }
    return -von_neumann_entropy(rho) - cross;
}

double nonequilibrium_free_energy(const QuantumState& rho, const HermitianOperator& hamiltonian,
                                  const ThermalContext& ctx) {
    if (rho.dim() != hamiltonian.dim()) {
        throw ValidationError("nonequilibrium_free_energy: dimension mismatch");
    }
    return trace_product(rho.density(), hamiltonian) - von_neumann_entropy(rho) / ctx.beta();
}

EffectiveTemperature effective_temperature(const QuantumState& rho, double omega) {
    if (rho.dim() != 2) throw ValidationError("effective_temperature: state must be a qubit");
    if (!(omega > 0.0)) throw ValidationError("effective_temperature: omega must be positive");
    if (!is_diagonal(rho.density(), 1e-8)) {
        throw ValidationError("effective_temperature: state must be diagonal in the sigma_z basis");
    }
    const double sz = trace_product(rho.density(), sigma_z());
    if (std::abs(sz) >= 1.0 - 1e-12) {
        std::ostringstream msg;
        msg << "effective_temperature: state is pure (<sigma_z> = " << sz << ")";
        throw DomainError(msg.str());
    }
    EffectiveTemperature out;
    if (std::abs(sz) <= 1e-12) {
        out.value = std::numeric_limits<double>::infinity();
        out.infinite = true;
        return out;
    }
    out.value = -omega / (2.0 * std::atanh(sz));
    out.inverted = sz > 0.0;
    return out;
}

}  // namespace secondlaw

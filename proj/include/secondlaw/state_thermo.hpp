// state_thermo.hpp: density matrices, Gibbs states, entropies, free energies

#pragma once

#include "secondlaw/operator_core.hpp"

#include <initializer_list>
#include <string>

namespace secondlaw {

inline constexpr double kTraceTolerance = 1e-10;
inline constexpr double kPositivityTolerance = 1e-10;

// Density matrix with unit trace and non-negative spectrum (to within the
// tolerances above). The spectrum is computed once at construction.
class QuantumState {
public:
    explicit QuantumState(HermitianOperator density);

    static QuantumState diagonal(std::initializer_list<double> populations);
    static QuantumState diagonal(std::span<const double> populations);
    static QuantumState maximally_mixed(int dim);

    int dim() const noexcept { return density_.dim(); }
    const HermitianOperator& density() const noexcept { return density_; }
    const Spectrum& spectrum() const noexcept { return spectrum_; }
    double population(int level) const { return density_(level, level).real(); }

private:
    HermitianOperator density_;
    Spectrum spectrum_;
};

// Reservoir at inverse temperature beta > 0.
class ThermalContext {
public:
    explicit ThermalContext(double beta, std::string label = "bath");
    static ThermalContext from_temperature(double temperature, std::string label = "bath");

    double beta() const noexcept { return beta_; }
    double temperature() const noexcept { return 1.0 / beta_; }
    const std::string& label() const noexcept { return label_; }

private:
    double beta_;
    std::string label_;
};

// Pauli z in the {excited, ground} ordering used throughout: diag(1, -1).
HermitianOperator sigma_z();
// (omega / 2) sigma_z.
HermitianOperator qubit_hamiltonian(double omega);

QuantumState gibbs_state(const HermitianOperator& hamiltonian, const ThermalContext& ctx);
double equilibrium_free_energy(const HermitianOperator& hamiltonian, const ThermalContext& ctx);

// ln of the Gibbs state, -beta (H - E_min) - ln Z', evaluated spectrally so it
// stays finite for any beta.
HermitianOperator log_gibbs_state(const HermitianOperator& hamiltonian, const ThermalContext& ctx);

double von_neumann_entropy(const QuantumState& rho);

// S(rho || sigma). Returns +infinity when supp(rho) is not contained in
// supp(sigma): an eigenvalue of sigma below kSupportCutoff carrying more
// than 1e-10 of rho's weight.
double relative_entropy(const QuantumState& rho, const QuantumState& sigma);

// S(rho || gibbs(H)) with ln of the Gibbs weights taken from the spectrum of H
// rather than re-diagonalising the Gibbs state, so tiny populations keep
// full relative precision. Same support rule as relative_entropy.
double relative_entropy_to_gibbs(const QuantumState& rho, const HermitianOperator& hamiltonian,
                                 const ThermalContext& ctx);

// F(rho, H) = tr{rho H} - S(rho) / beta.
double nonequilibrium_free_energy(const QuantumState& rho, const HermitianOperator& hamiltonian,
                                  const ThermalContext& ctx);

struct EffectiveTemperature {
    double value = 0.0;     // signed; +infinity when <sigma_z> vanishes
    bool infinite = false;
    bool inverted = false;  // <sigma_z> > 0, i.e. negative temperature
};

// T_eff = -omega / (2 atanh <sigma_z>) for a sigma_z-diagonal qubit.
// Throws DomainError for (numerically) pure states and ValidationError for
// non-qubit or non-diagonal input.
EffectiveTemperature effective_temperature(const QuantumState& rho, double omega);

}  // namespace secondlaw

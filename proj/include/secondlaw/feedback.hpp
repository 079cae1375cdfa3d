// feedback.hpp: measurement and feedback (Maxwell's demon) quantities
//
// Information convention: the quantum-classical mutual information is
//
//     I(rho : X) = S(rho) + H({p_k}) - H(rho : X),
//     H(rho : X) = -sum_k tr{sigma_k ln sigma_k},  sigma_k = sqrt(D_k) rho sqrt(D_k),
//
// dimensionless. It vanishes when every effect is proportional to the
// identity and equals S(rho) for rank-1 projectors commuting with rho.

#pragma once

#include "secondlaw/operator_core.hpp"
#include "secondlaw/state_thermo.hpp"

#include <Eigen/Dense>

#include <span>
#include <vector>

namespace secondlaw {

class Povm {
public:
    // Measurement operators M_k; effects D_k = M_k^dagger M_k must sum to the
    // identity within 1e-10. Throws ValidationError otherwise.
    explicit Povm(std::vector<Matrix> operators);
    static Povm from_effects(const std::vector<HermitianOperator>& effects);

    // {I}, {I/2, I/2} and the computational-basis projectors.
    static Povm trivial(int dim);
    static Povm uniform(int dim, int outcomes);
    static Povm computational_projectors(int dim);

    int dim() const noexcept { return static_cast<int>(operators_.front().rows()); }
    std::size_t size() const noexcept { return operators_.size(); }
    const std::vector<Matrix>& operators() const noexcept { return operators_; }
    const std::vector<HermitianOperator>& effects() const noexcept { return effects_; }
    const std::vector<HermitianOperator>& sqrt_effects() const noexcept { return sqrt_effects_; }

private:
    std::vector<Matrix> operators_;
    std::vector<HermitianOperator> effects_;
    std::vector<HermitianOperator> sqrt_effects_;
};

struct MeasurementRecord {
    std::vector<double> probabilities;
    std::vector<HermitianOperator> post_measurement;  // sigma_k, unnormalised
};

MeasurementRecord measure(const QuantumState& rho, const Povm& povm);

// -sum p ln p in nats. Throws ValidationError unless p >= 0 and sums to 1
// within 1e-8.
double shannon_entropy(std::span<const double> p);

// H(X|M) - H(X) = -I(X:M) for a prior over X and channel rows p(m|x).
double classical_measurement_entropy_change(std::span<const double> prior, const Eigen::MatrixXd& channel);

double qc_mutual_information(const QuantumState& rho, const Povm& povm);

struct FeedbackBoundReport {
    double margin = 0.0;  // dW - (dF - info/beta)
    bool satisfied = true;
};

// dW >= dF - info/beta, tolerance 1e-9. Never throws on violation.
FeedbackBoundReport feedback_bound_check(double delta_w, double delta_f, double beta, double info);

// The three demon work-rate diagnostics. They are kept separate; their sum
// is d/dt of -(1/beta) I(rho_t : X) along the path.
struct DemonRates {
    double state_term = 0.0;        // (1/beta) tr{rho_dot ln rho}
    double outcome_term = 0.0;      // (1/beta) sum_k pdot_k ln p_k
    double measurement_term = 0.0;  // -(1/beta) sum_k tr{sqrt(D_k) rho_dot sqrt(D_k) ln sigma_k}
    double total() const noexcept { return state_term + outcome_term + measurement_term; }
};

// Commuting case only: rho, rho_dot, H and all effects must be
// simultaneously diagonalisable (1e-8), else UnsupportedCaseError.
DemonRates demon_forces(const QuantumState& rho, const HermitianOperator& rho_dot, const Povm& povm,
                        const ThermalContext& ctx, const HermitianOperator& hamiltonian);

}  // namespace secondlaw

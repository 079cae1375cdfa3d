#include "secondlaw/feedback.hpp"

#include "secondlaw/errors.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace secondlaw {

namespace {

constexpr double kCompletenessTolerance = 1e-10;
constexpr double kEffectPositivityTolerance = 1e-10;
constexpr double kDistributionTolerance = 1e-8;
constexpr double kCommutingTolerance = 1e-8;
constexpr double kBoundTolerance = 1e-9;

double sqrt_clamped(double x) { return x < kSupportCutoff ? 0.0 : std::sqrt(x); }

// -sum x ln x over eigenvalues above the support cutoff.
double operator_entropy(const HermitianOperator& op) {
    const Spectrum s = eig_hermitian(op);
    double h = 0.0;
    for (int k = 0; k < s.dim(); ++k) {
        const double x = s.eigenvalues(k);
        if (x > kSupportCutoff) h -= x * std::log(x);
    }
    return h;
}

double entropy_of_probabilities(std::span<const double> p) {
    double h = 0.0;
    for (const double x : p) {
        if (x > kSupportCutoff) h -= x * std::log(x);
    }
    return h;
}

// rate * ln(x), with the x -> 0 limit taken explicitly.
double rate_times_log(double rate, double x) {
    if (rate == 0.0) return 0.0;
    if (x < kSupportCutoff) {
        return rate > 0.0 ? -std::numeric_limits<double>::infinity() : std::numeric_limits<double>::infinity();
    }
    return rate * std::log(x);
}

}  // namespace

Povm::Povm(std::vector<Matrix> operators) : operators_(std::move(operators)) {
    if (operators_.empty()) throw ValidationError("Povm: at least one measurement operator required");
    const Eigen::Index n = operators_.front().rows();
    if (n == 0) throw ValidationError("Povm: empty measurement operator");
    Matrix total = Matrix::Zero(n, n);
    for (const Matrix& m : operators_) {
        if (m.rows() != n || m.cols() != n) throw ValidationError("Povm: measurement operators must share one square shape");
        const Matrix d = m.adjoint() * m;
        HermitianOperator effect(0.5 * (d + d.adjoint()));
        const Spectrum s = eig_hermitian(effect);
        if (s.eigenvalues(0) < -kEffectPositivityTolerance) {
            throw ValidationError("Povm: effect is not positive semidefinite");
        }
        sqrt_effects_.push_back(matrix_function(s, sqrt_clamped));
        total += effect.matrix();
        effects_.push_back(std::move(effect));
    }
    const double deviation = (total - Matrix::Identity(n, n)).cwiseAbs().maxCoeff();
    if (!(deviation <= kCompletenessTolerance)) {
        std::ostringstream msg;
        msg << "Povm: effects sum to identity only within " << deviation;
        throw ValidationError(msg.str());
    }
}

Povm Povm::from_effects(const std::vector<HermitianOperator>& effects) {
    std::vector<Matrix> ops;
    ops.reserve(effects.size());
    for (const auto& e : effects) {
        const Spectrum s = eig_hermitian(e);
        if (s.eigenvalues(0) < -kEffectPositivityTolerance) {
            throw ValidationError("Povm::from_effects: effect is not positive semidefinite");
        }
        ops.push_back(matrix_function(s, sqrt_clamped).matrix());
    }
    return Povm(std::move(ops));
}

Povm Povm::trivial(int dim) { return Povm({Matrix::Identity(dim, dim)}); }

Povm Povm::uniform(int dim, int outcomes) {
    if (outcomes < 1) throw ValidationError("Povm::uniform: outcomes must be >= 1");
    std::vector<HermitianOperator> effects(static_cast<std::size_t>(outcomes),
                                           HermitianOperator::identity(dim) * (1.0 / outcomes));
    return from_effects(effects);
}

Povm Povm::computational_projectors(int dim) {
    std::vector<Matrix> ops;
    for (int k = 0; k < dim; ++k) {
        Matrix p = Matrix::Zero(dim, dim);
        p(k, k) = 1.0;
        ops.push_back(std::move(p));
    }
    return Povm(std::move(ops));
}

MeasurementRecord measure(const QuantumState& rho, const Povm& povm) {
    if (rho.dim() != povm.dim()) throw ValidationError("measure: state and POVM dimensions differ");
    MeasurementRecord rec;
    rec.probabilities.reserve(povm.size());
    rec.post_measurement.reserve(povm.size());
    for (std::size_t k = 0; k < povm.size(); ++k) {
        const Matrix& root = povm.sqrt_effects()[k].matrix();
        const Matrix sigma = root * rho.density().matrix() * root;
        HermitianOperator post(0.5 * (sigma + sigma.adjoint()));
        rec.probabilities.push_back(post.trace());
        rec.post_measurement.push_back(std::move(post));
    }
    return rec;
}

double shannon_entropy(std::span<const double> p) {
    double total = 0.0;
    for (const double x : p) {
        if (!(x >= -1e-12)) throw ValidationError("shannon_entropy: negative probability");
        total += x;
    }
    if (!(std::abs(total - 1.0) <= kDistributionTolerance)) {
        throw ValidationError("shannon_entropy: probabilities do not sum to 1");
    }
    return entropy_of_probabilities(p);
}

double classical_measurement_entropy_change(std::span<const double> prior, const Eigen::MatrixXd& channel) {
    const auto nx = static_cast<Eigen::Index>(prior.size());
    if (channel.rows() != nx || channel.cols() < 1) {
        throw ValidationError("classical_measurement_entropy_change: channel must have one row per prior outcome");
    }
    const double hx = shannon_entropy(prior);
    for (Eigen::Index x = 0; x < nx; ++x) {
        if ((channel.row(x).array() < 0.0).any() || std::abs(channel.row(x).sum() - 1.0) > kDistributionTolerance) {
            throw ValidationError("classical_measurement_entropy_change: channel rows must be distributions");
        }
    }
    std::vector<double> joint;
    joint.reserve(static_cast<std::size_t>(nx * channel.cols()));
    std::vector<double> marginal_m(static_cast<std::size_t>(channel.cols()), 0.0);
    for (Eigen::Index x = 0; x < nx; ++x) {
        for (Eigen::Index m = 0; m < channel.cols(); ++m) {
            const double pxm = prior[static_cast<std::size_t>(x)] * channel(x, m);
            joint.push_back(pxm);
            marginal_m[static_cast<std::size_t>(m)] += pxm;
        }
    }
    const double mutual = hx + entropy_of_probabilities(marginal_m) - entropy_of_probabilities(joint);
    return -mutual;
}

double qc_mutual_information(const QuantumState& rho, const Povm& povm) {
    const MeasurementRecord rec = measure(rho, povm);
    double h_post = 0.0;
    for (const auto& sigma : rec.post_measurement) h_post += operator_entropy(sigma);
    return von_neumann_entropy(rho) + entropy_of_probabilities(rec.probabilities) - h_post;
}

FeedbackBoundReport feedback_bound_check(double delta_w, double delta_f, double beta, double info) {
    if (!(beta > 0.0) || !std::isfinite(beta)) throw ValidationError("feedback_bound_check: beta must be positive");
    if (!(info >= -kBoundTolerance)) throw ValidationError("feedback_bound_check: information must be non-negative");
    FeedbackBoundReport r;
    r.margin = delta_w - (delta_f - info / beta);
    r.satisfied = r.margin >= -kBoundTolerance;
    return r;
}

DemonRates demon_forces(const QuantumState& rho, const HermitianOperator& rho_dot, const Povm& povm,
                        const ThermalContext& ctx, const HermitianOperator& hamiltonian) {
    if (rho_dot.dim() != rho.dim() || hamiltonian.dim() != rho.dim() || povm.dim() != rho.dim()) {
        throw ValidationError("demon_forces: dimension mismatch");
    }
    std::vector<const HermitianOperator*> family{&rho.density(), &rho_dot, &hamiltonian};
    for (const auto& e : povm.effects()) family.push_back(&e);
    const Matrix basis = common_eigenbasis(family, kCommutingTolerance);

    const RealVector p = diagonal_in_basis(rho.density(), basis);
    const RealVector pdot = diagonal_in_basis(rho_dot, basis);
    const double inv_beta = 1.0 / ctx.beta();

    DemonRates out;
    for (Eigen::Index i = 0; i < p.size(); ++i) out.state_term += rate_times_log(pdot(i), p(i));

    for (const auto& effect : povm.effects()) {
        const RealVector d = diagonal_in_basis(effect, basis);
        double pk = 0.0;
        double pk_dot = 0.0;
        for (Eigen::Index i = 0; i < p.size(); ++i) {
            pk += d(i) * p(i);
            pk_dot += d(i) * pdot(i);
            out.measurement_term -= rate_times_log(d(i) * pdot(i), d(i) * p(i));
        }
        out.outcome_term += rate_times_log(pk_dot, pk);
    }
    out.state_term *= inv_beta;
    out.outcome_term *= inv_beta;
    out.measurement_term *= inv_beta;
    return out;
}

}  // namespace secondlaw

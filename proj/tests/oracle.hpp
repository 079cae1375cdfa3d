// Independent reference computations for the tests. Nothing here calls into
// the library: spectra come from Eigen's SelfAdjointEigenSolver and the
// qubit formulas are written out by hand.

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

namespace oracle {

using Cx = std::complex<double>;
using CMat = Eigen::MatrixXcd;

inline CMat random_hermitian(std::mt19937_64& rng, int n, double scale = 1.0) {
    std::normal_distribution<double> g(0.0, scale);
    CMat a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = Cx(g(rng), g(rng));
    return 0.5 * (a + a.adjoint());
}

inline CMat random_unitary(std::mt19937_64& rng, int n) {
    std::normal_distribution<double> g(0.0, 1.0);
    CMat a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = Cx(g(rng), g(rng));
    Eigen::HouseholderQR<CMat> qr(a);
    return qr.householderQ() * CMat::Identity(n, n);
}

// Random full-rank density matrix: normalised W W^dagger plus a floor.
inline CMat random_density(std::mt19937_64& rng, int n, double floor = 0.02) {
    std::normal_distribution<double> g(0.0, 1.0);
    CMat w(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) w(i, j) = Cx(g(rng), g(rng));
    CMat rho = w * w.adjoint() + floor * CMat::Identity(n, n);
    rho /= rho.trace().real();
    return 0.5 * (rho + rho.adjoint());
}

template <class F>
CMat apply(const CMat& a, F f) {
    Eigen::SelfAdjointEigenSolver<CMat> es(a);
    Eigen::VectorXd v = es.eigenvalues().unaryExpr(f);
    return es.eigenvectors() * v.asDiagonal() * es.eigenvectors().adjoint();
}

inline double entropy(const CMat& rho) {
    Eigen::SelfAdjointEigenSolver<CMat> es(rho);
    double s = 0.0;
    for (int i = 0; i < es.eigenvalues().size(); ++i) {
        const double x = es.eigenvalues()(i);
        if (x > 1e-14) s -= x * std::log(x);
    }
    return s;
}

inline double tr(const CMat& a, const CMat& b) { return (a * b).trace().real(); }

inline CMat gibbs(const CMat& h, double beta) {
    Eigen::SelfAdjointEigenSolver<CMat> es(h);
    const double e0 = es.eigenvalues().minCoeff();
    CMat g = apply(h, [&](double e) { return std::exp(-beta * (e - e0)); });
    return g / g.trace().real();
}

inline double free_energy(const CMat& h, double beta) {
    Eigen::SelfAdjointEigenSolver<CMat> es(h);
    const double e0 = es.eigenvalues().minCoeff();
    double z = 0.0;
    for (int i = 0; i < es.eigenvalues().size(); ++i) z += std::exp(-beta * (es.eigenvalues()(i) - e0));
    return e0 - std::log(z) / beta;
}

// Full-rank sigma only.
inline double relative_entropy(const CMat& rho, const CMat& sigma) {
    const CMat log_sigma = apply(sigma, [](double x) { return std::log(x); });
    return -entropy(rho) - tr(rho, log_sigma);
}

// S(rho || gibbs) = beta tr{rho H} + ln Z - S(rho), Z by log-sum-exp.
inline double gibbs_relative_entropy(const CMat& rho, const CMat& h, double beta) {
    Eigen::SelfAdjointEigenSolver<CMat> es(h);
    const Eigen::VectorXd e = es.eigenvalues();
    const double e0 = e.minCoeff();
    const double log_z = -beta * e0 + std::log((-beta * (e.array() - e0)).exp().sum());
    return beta * tr(rho, h) + log_z - entropy(rho);
}

inline double nonequilibrium_free_energy(const CMat& rho, const CMat& h, double beta) {
    return tr(rho, h) - entropy(rho) / beta;
}

inline CMat diag2(double a, double b) {
    CMat m = CMat::Zero(2, 2);
    m(0, 0) = a;
    m(1, 1) = b;
    return m;
}

// Two-level system with H = (omega/2) sigma_z, level 0 excited.
inline double excited_population(double omega, double temperature) { return 1.0 / (1.0 + std::exp(omega / temperature)); }

inline double binary_entropy(double p) {
    double h = 0.0;
    if (p > 0) h -= p * std::log(p);
    if (p < 1) h -= (1 - p) * std::log(1 - p);
    return h;
}

// Relative entropy of two diagonal qubit states given by excited populations.
inline double qubit_relative_entropy(double p, double q) {
    double s = 0.0;
    if (p > 0) s += p * std::log(p / q);
    if (p < 1) s += (1 - p) * std::log((1 - p) / (1 - q));
    return s;
}

struct OttoValues {
    double Qh, Qc, W;
};

inline OttoValues otto(double omega0, double omega1, double t1, double t3) {
    const double bracket = std::tanh(omega1 / (2 * t3)) - std::tanh(omega0 / (2 * t1));
    return {0.5 * omega0 * bracket, -0.5 * omega1 * bracket, 0.5 * (omega1 - omega0) * bracket};
}

inline double effective_temperature(double excited, double omega) {
    const double z = 2 * excited - 1;
    return -omega / (2 * std::atanh(z));
}

}  // namespace oracle

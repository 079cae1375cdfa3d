// Trajectory generators shared by the unit tests and the acceptance runner.

#pragma once

#include "oracle.hpp"

#include "secondlaw/channels.hpp"
#include "secondlaw/process.hpp"

#include <cmath>
#include <random>
#include <vector>

namespace support {

using namespace secondlaw;

inline Matrix pauli(int k) {
    Matrix m = Matrix::Zero(2, 2);
    if (k == 0) {
        m(0, 1) = m(1, 0) = 1.0;
    } else if (k == 1) {
        m(0, 1) = Complex(0, -1);
        m(1, 0) = Complex(0, 1);
    } else {
        m(0, 0) = 1.0;
        m(1, 1) = -1.0;
    }
    return m;
}

inline Matrix bloch(double x, double y, double z, double scale) {
    return scale * (x * pauli(0) + y * pauli(1) + z * pauli(2));
}

// Randomly driven qubit: Bloch vector and field both wander smoothly and do
// not commute with each other. The state stays strictly mixed.
inline Trajectory random_driven(std::mt19937_64& rng, std::size_t samples = 1000) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_real_distribution<double> pos(0.2, 2.0);
    double r0[3], r1[3], h0[3], h1[3];
    for (int k = 0; k < 3; ++k) {
        r0[k] = u(rng);
        r1[k] = u(rng);
        h0[k] = u(rng);
        h1[k] = u(rng);
    }
    const double wr = pos(rng);
    const double wh = pos(rng);
    const double duration = pos(rng) * 2.0;
    const double offset = u(rng);
    const ThermalContext bath(pos(rng));

    std::vector<double> times(samples);
    std::vector<QuantumState> states;
    std::vector<HermitianOperator> hams;
    states.reserve(samples);
    hams.reserve(samples);
    for (std::size_t i = 0; i < samples; ++i) {
        const double t = duration * static_cast<double>(i) / static_cast<double>(samples - 1);
        times[i] = t;
        double r[3], h[3];
        for (int k = 0; k < 3; ++k) {
            r[k] = r0[k] + r1[k] * std::sin(wr * t + k);
            h[k] = h0[k] + h1[k] * std::cos(wh * t + 2 * k);
        }
        const double norm = std::sqrt(r[0] * r[0] + r[1] * r[1] + r[2] * r[2]);
        const double shrink = 0.9 / std::max(1.0, norm);
        Matrix rho = 0.5 * Matrix::Identity(2, 2) + bloch(r[0], r[1], r[2], 0.5 * shrink);
        states.emplace_back(HermitianOperator(rho));
        Matrix ham = offset * Matrix::Identity(2, 2) + bloch(h[0], h[1], h[2], 1.0);
        hams.emplace_back(ham);
    }
    return Trajectory(std::move(times), std::move(states), std::move(hams), bath);
}

struct RelaxationDraw {
    double omega, temperature, n0, gamma, duration;
};

inline RelaxationDraw random_relaxation_draw(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    return {0.5 + 3.0 * u(rng), 0.3 + 3.0 * u(rng), 0.01 + 0.98 * u(rng), 0.1 + 2.0 * u(rng), 0.5 + 5.0 * u(rng)};
}

inline Trajectory relaxation(const RelaxationDraw& d, const ThermalizationParams& params, std::size_t samples) {
    return sample_relaxation(QuantumState::diagonal({d.n0, 1.0 - d.n0}), qubit_hamiltonian(d.omega),
                             ThermalContext::from_temperature(d.temperature), params, d.duration, samples);
}

// The documented non-Markovian backflow run.
inline Trajectory nm1(std::size_t samples = 1001) {
    return sample_relaxation(QuantumState::diagonal({0.05, 0.95}), qubit_hamiltonian(2.0), ThermalContext(1.0),
                             ThermalizationParams::non_markovian(0.1, M_PI), 1.0, samples);
}

inline oracle::CMat dense(const HermitianOperator& op) { return op.matrix(); }

}  // namespace support

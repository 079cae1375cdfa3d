#include "oracle.hpp"
#include "support.hpp"

#include "secondlaw/channels.hpp"
#include "secondlaw/errors.hpp"
#include "secondlaw/process.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

using namespace secondlaw;

namespace {

// Linear population path at fixed or linearly varying diagonal H.
Trajectory diagonal_path(double p0, double p1, std::pair<double, double> e0, std::pair<double, double> e1,
                         std::size_t n = 101, double beta = 1.0) {
    std::vector<double> t(n);
    std::vector<QuantumState> s;
    std::vector<HermitianOperator> h;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = static_cast<double>(i) / static_cast<double>(n - 1);
        t[i] = x;
        const double p = p0 + (p1 - p0) * x;
        s.push_back(QuantumState::diagonal({p, 1 - p}));
        h.push_back(HermitianOperator::diagonal({e0.first + (e1.first - e0.first) * x, e0.second + (e1.second - e0.second) * x}));
    }
    return Trajectory(t, s, h, ThermalContext(beta));
}

// Work along p = 0.5 + 0.3 sin t, H = (1 + 0.5 t) sigma_z on n samples of [0, tau].
double refinement_work(std::size_t n, double tau) {
    std::vector<double> t(n);
    std::vector<QuantumState> s;
    std::vector<HermitianOperator> h;
    for (std::size_t i = 0; i < n; ++i) {
        t[i] = tau * static_cast<double>(i) / static_cast<double>(n - 1);
        const double p = 0.5 + 0.3 * std::sin(t[i]);
        s.push_back(QuantumState::diagonal({p, 1 - p}));
        h.push_back(HermitianOperator::diagonal({1 + 0.5 * t[i], -(1 + 0.5 * t[i])}));
    }
    return work(Trajectory(t, s, h, ThermalContext(1.0)));
}

}  // namespace

TEST(Trajectory, Validation) {
    const auto s = QuantumState::maximally_mixed(2);
    const auto h = HermitianOperator::zero(2);
    const ThermalContext b(1.0);
    EXPECT_THROW(Trajectory({0.0}, {s}, {h}, b), ValidationError);
    EXPECT_THROW(Trajectory({0.0, 0.0}, {s, s}, {h, h}, b), ValidationError);
    EXPECT_THROW(Trajectory({1.0, 0.0}, {s, s}, {h, h}, b), ValidationError);
    EXPECT_THROW(Trajectory({0.0, 1.0}, {s}, {h, h}, b), ValidationError);
    EXPECT_THROW(Trajectory({0.0, 1.0}, {s, QuantumState::maximally_mixed(3)}, {h, h}, b), ValidationError);
    EXPECT_THROW(Trajectory({0.0, 1.0}, {s, s}, {h, HermitianOperator::zero(3)}, b), ValidationError);
    const Trajectory ok({0.0, 1.0, 2.0}, {s, s, s}, {h, h, h}, b);
    EXPECT_EQ(ok.slice(1, 2).size(), 2u);
    EXPECT_THROW(ok.slice(1, 1), ValidationError);
    EXPECT_THROW(ok.slice(0, 3), ValidationError);
}

TEST(Heat, Examples) {
    const Trajectory constant = diagonal_path(0.3, 0.3, {1, -1}, {0.5, -0.5});
    EXPECT_EQ(heat(constant), 0.0);
    const Trajectory fixed_h = diagonal_path(0.2, 0.3, {1, -1}, {1, -1});
    EXPECT_NEAR(heat(fixed_h), 0.2, 1e-9);
}

TEST(Heat, OttoHotStrokeMatchesClosedForm) {
    const double omega0 = 2.0, omega1 = 1.0, th = 4.0, tc = 1.0;
    const double n_d = oracle::excited_population(omega1, tc);
    const Trajectory stroke = sample_relaxation(QuantumState::diagonal({n_d, 1 - n_d}), qubit_hamiltonian(omega0),
                                                ThermalContext::from_temperature(th), ThermalizationParams::markovian(1.0), 40.0, 201);
    EXPECT_NEAR(heat(stroke), oracle::otto(omega0, omega1, th, tc).Qh, 1e-6);
    EXPECT_NEAR(heat(stroke), 0.2171984948563006, 1e-6);
}

TEST(Work, Examples) {
    EXPECT_EQ(work(diagonal_path(0.2, 0.4, {1, -1}, {1, -1})), 0.0);
    EXPECT_NEAR(work(diagonal_path(0.2, 0.2, {1, -1}, {0.5, -0.5})), 0.3, 1e-9);
}

TEST(FirstLaw, RandomDrivenTrajectories) {
    std::mt19937_64 rng(20);
    for (int k = 0; k < 30; ++k) {
        const Trajectory tr = support::random_driven(rng, 400);
        const auto& s = tr.states();
        const auto& h = tr.hamiltonians();
        const double de = oracle::tr(s.back().density().matrix(), h.back().matrix()) -
                          oracle::tr(s.front().density().matrix(), h.front().matrix());
        EXPECT_NEAR(heat(tr) + work(tr), de, 1e-6);
    }
}

TEST(Work, SecondOrderGridRefinement) {
    const double tau = 2.0;
    const double exact = 0.3 * (1 - std::cos(tau));
    for (std::size_t n : {21u, 41u, 81u}) {
        const double coarse = std::abs(refinement_work(n, tau) - exact);
        const double fine = std::abs(refinement_work(2 * n - 1, tau) - exact);
        const double ratio = coarse / fine;
        EXPECT_NEAR(ratio, 4.0, 1.0) << "n = " << n;
    }
}

TEST(EntropyProduction, Examples) {
    const HermitianOperator h = HermitianOperator::diagonal({1, -1});
    const ThermalContext ctx(1.0);
    const QuantumState g = gibbs_state(h, ctx);
    const Trajectory equilibrium({0.0, 0.5, 1.0}, {g, g, g}, {h, h, h}, ctx);
    EXPECT_NEAR(entropy_production(equilibrium), 0.0, 1e-15);

    const QuantumState mixed = QuantumState::maximally_mixed(2);
    const Trajectory to_gibbs({0.0, 1.0}, {mixed, g}, {h, h}, ctx);
    const double expected = oracle::qubit_relative_entropy(0.5, g.population(0));
    EXPECT_NEAR(entropy_production(to_gibbs), expected, 1e-9);
    EXPECT_NEAR(entropy_production(to_gibbs), 0.4337808304830271, 1e-9);
}

TEST(EntropyProduction, FixedHamiltonianClosedFormAnyGrid) {
    std::mt19937_64 rng(21);
    for (int k = 0; k < 20; ++k) {
        const auto d = support::random_relaxation_draw(rng);
        for (std::size_t n : {2u, 7u, 300u}) {
            const Trajectory tr = support::relaxation(d, ThermalizationParams::markovian(d.gamma), n);
            const double g = oracle::excited_population(d.omega, d.temperature);
            const double closed = oracle::qubit_relative_entropy(tr.states().front().population(0), g) -
                                  oracle::qubit_relative_entropy(tr.states().back().population(0), g);
            EXPECT_NEAR(entropy_production(tr), closed, 1e-9);
            EXPECT_GE(entropy_production(tr), -1e-9);
        }
    }
}

TEST(EntropyProduction, InfiniteBoundaryPoisonsPartition) {
    const HermitianOperator h = HermitianOperator::diagonal({100.0, 0.0});
    // Gibbs weight e^-100 on the upper level sits below the support cutoff.
    const QuantumState s = QuantumState::maximally_mixed(2);
    const QuantumState ground = QuantumState::diagonal({0.0, 1.0});
    const Trajectory tr({0.0, 1.0}, {s, ground}, {h, h}, ThermalContext(1.0));
    EXPECT_EQ(entropy_production(tr), std::numeric_limits<double>::infinity());
    const WorkPartition p = work_partition(tr);
    EXPECT_FALSE(p.finite);
    EXPECT_TRUE(std::isinf(p.reversible));
    EXPECT_TRUE(std::isinf(p.irreversible));
}

TEST(EntropyFlow, Examples) {
    EXPECT_EQ(entropy_flow(diagonal_path(0.3, 0.3, {1, -1}, {1, -1})), 0.0);
    const Trajectory tr = diagonal_path(0.5, 0.2, {1, -1}, {1, -1}, 51, 2.0);
    EXPECT_NEAR(entropy_flow(tr), 2.0 * (2 * (0.2 - 0.5)), 1e-9);
}

TEST(EntropyFlow, BalanceOnRandomTrajectories) {
    std::mt19937_64 rng(22);
    for (int k = 0; k < 30; ++k) {
        const Trajectory tr = support::random_driven(rng, 400);
        const double ds = oracle::entropy(tr.states().back().density().matrix()) -
                          oracle::entropy(tr.states().front().density().matrix());
        EXPECT_NEAR(ds - entropy_production(tr) - entropy_flow(tr), 0.0, 1e-6);
    }
}

TEST(WorkPartition, QuasiStaticGibbsFollowing) {
    const std::size_t n = 2001;
    const ThermalContext ctx(1.5);
    std::vector<double> t(n);
    std::vector<QuantumState> s;
    std::vector<HermitianOperator> h;
    for (std::size_t i = 0; i < n; ++i) {
        t[i] = static_cast<double>(i) / static_cast<double>(n - 1);
        h.push_back(qubit_hamiltonian(2.0 - t[i]));
        s.push_back(gibbs_state(h.back(), ctx));
    }
    const Trajectory tr(t, s, h, ctx);
    const WorkPartition p = work_partition(tr);
    EXPECT_NEAR(p.irreversible, 0.0, 1e-6);
    EXPECT_NEAR(p.reversible, work(tr), 1e-6);
    // Reversible work equals the equilibrium free-energy change.
    EXPECT_NEAR(work(tr), oracle::free_energy(h.back().matrix(), 1.5) - oracle::free_energy(h.front().matrix(), 1.5), 1e-6);
    EXPECT_NEAR(minimal_work_check(tr).margin, 0.0, 1e-6);
}

TEST(WorkPartition, FixedHamiltonian) {
    const Trajectory tr = diagonal_path(0.45, 0.2, {1, -1}, {1, -1}, 51, 1.0);
    const WorkPartition p = work_partition(tr);
    EXPECT_NEAR(p.reversible + p.irreversible, 0.0, 1e-9);
    const double g = oracle::excited_population(2.0, 1.0);
    EXPECT_NEAR(p.irreversible, oracle::qubit_relative_entropy(0.45, g) - oracle::qubit_relative_entropy(0.2, g), 1e-9);
}

TEST(WorkPartition, UnitarySegmentIsReversible) {
    std::mt19937_64 rng(23);
    const Matrix hm = oracle::random_hermitian(rng, 3);
    const HermitianOperator h(hm);
    const Matrix rho0 = oracle::random_density(rng, 3);
    Eigen::SelfAdjointEigenSolver<Matrix> es(hm);
    const std::size_t n = 200;
    std::vector<double> t(n);
    std::vector<QuantumState> s;
    std::vector<HermitianOperator> hs(n, h);
    for (std::size_t i = 0; i < n; ++i) {
        t[i] = 3.0 * static_cast<double>(i) / static_cast<double>(n - 1);
        Eigen::VectorXcd phase(3);
        for (int k = 0; k < 3; ++k) phase(k) = std::exp(Complex(0, -es.eigenvalues()(k) * t[i]));
        const Matrix u = es.eigenvectors() * phase.asDiagonal() * es.eigenvectors().adjoint();
        const Matrix r = u * rho0 * u.adjoint();
        s.emplace_back(HermitianOperator(0.5 * (r + r.adjoint())));
    }
    const Trajectory tr(t, s, hs, ThermalContext(0.8));
    EXPECT_NEAR(work_partition(tr).irreversible, 0.0, 1e-8);
}

TEST(WorkPartition, IdentityAndRouteAgreementRandom) {
    std::mt19937_64 rng(24);
    for (int k = 0; k < 30; ++k) {
        const Trajectory tr = support::random_driven(rng, 400);
        const WorkPartition p = work_partition(tr);
        const double w = work(tr);
        EXPECT_NEAR(w, p.reversible + p.irreversible, 1e-6 * std::max(1.0, std::abs(w)));
        EXPECT_NEAR(irr_work_via_free_energy(tr), entropy_production(tr) / tr.bath().beta(), 1e-6);
    }
}

TEST(IrrWorkViaFreeEnergy, EquilibriumEndpoints) {
    const ThermalContext ctx(1.0);
    const HermitianOperator h0 = qubit_hamiltonian(2.0), h1 = qubit_hamiltonian(1.0);
    const QuantumState g0 = gibbs_state(h0, ctx), g1 = gibbs_state(h1, ctx);
    // Sudden quench at t = 0.5 then relaxation: ends in equilibrium at both sides.
    const Trajectory tr({0.0, 0.5, 1.0}, {g0, g0, g1}, {h0, h1, h1}, ctx);
    EXPECT_NEAR(irr_work_via_free_energy(tr),
                work(tr) - (oracle::free_energy(h1.matrix(), 1.0) - oracle::free_energy(h0.matrix(), 1.0)), 1e-12);
}

TEST(IrrWorkViaFreeEnergy, MarkovNonNegativeAndBackflowNegative) {
    std::mt19937_64 rng(25);
    for (int k = 0; k < 20; ++k) {
        const auto d = support::random_relaxation_draw(rng);
        EXPECT_GE(irr_work_via_free_energy(support::relaxation(d, ThermalizationParams::markovian(d.gamma), 200)), -1e-9);
    }
    const Trajectory nm = support::nm1();
    // Backflow sub-interval: from the minimum of the relative entropy to Gibbs onward.
    const CumulativeFunctionals c = cumulative_functionals(nm);
    const auto argmin = static_cast<std::size_t>(
        std::min_element(c.relative_entropy_to_gibbs.begin(), c.relative_entropy_to_gibbs.end()) - c.relative_entropy_to_gibbs.begin());
    const Trajectory back = nm.slice(argmin, nm.size() - 1);
    EXPECT_LT(irr_work_via_free_energy(back), 0.0);
    const MinimalWorkReport m = minimal_work_check(back);
    EXPECT_TRUE(m.markov_violation());
    EXPECT_TRUE(minimal_work_check(support::relaxation(support::random_relaxation_draw(rng),
                                                       ThermalizationParams::markovian(1.0), 100))
                    .satisfied);
}

TEST(ForceFlow, ZeroAtEquilibrium) {
    const HermitianOperator h = qubit_hamiltonian(2.0);
    const ThermalContext ctx(1.0);
    EXPECT_NEAR(force_flow_rate(gibbs_state(h, ctx), HermitianOperator::diagonal({0.3, -0.3}), h, ctx), 0.0, 1e-14);
}

TEST(ForceFlow, MatchesFiniteDifferenceOfEntropyProduction) {
    const double omega = 2.0, n0 = 0.05, gamma = 0.7;
    const ThermalContext ctx(1.0);
    const auto params = ThermalizationParams::markovian(gamma);
    const Trajectory tr = sample_relaxation(QuantumState::diagonal({n0, 1 - n0}), qubit_hamiltonian(omega), ctx, params, 4.0, 2001);
    const CumulativeFunctionals c = cumulative_functionals(tr);
    const double neq = oracle::excited_population(omega, 1.0);
    for (std::size_t i = 1; i + 1 < tr.size(); i += 50) {
        const double t = tr.times()[i];
        const double pdot = -(n0 - neq) * gamma * std::exp(-gamma * t);
        const double rate = force_flow_rate(tr.states()[i], HermitianOperator::diagonal({pdot, -pdot}), qubit_hamiltonian(omega), ctx);
        const double fd = (c.entropy_production[i + 1] - c.entropy_production[i - 1]) / (tr.times()[i + 1] - tr.times()[i - 1]);
        EXPECT_NEAR(rate, fd, 1e-5);
        EXPECT_GE(rate, -1e-9);
    }
}

TEST(ForceFlow, NegativeDuringBackflow) {
    const ThermalizationParams p = ThermalizationParams::non_markovian(0.1, M_PI);
    const double neq = oracle::excited_population(2.0, 1.0);
    const double t = 0.75;
    const double f = memory_factor(p, t);
    const double n = neq + (0.05 - neq) * f;
    const double fdot = -0.1 * f - M_PI * std::exp(-0.1 * t) * std::sin(M_PI * t);
    const double pdot = (0.05 - neq) * fdot;
    EXPECT_LT(force_flow_rate(QuantumState::diagonal({n, 1 - n}), HermitianOperator::diagonal({pdot, -pdot}),
                              qubit_hamiltonian(2.0), ThermalContext(1.0)),
              0.0);
}

TEST(ForceFlow, NonCommutingDeclined) {
    Matrix x = Matrix::Zero(2, 2);
    x(0, 1) = x(1, 0) = 0.1;
    EXPECT_THROW(force_flow_rate(QuantumState::diagonal({0.3, 0.7}), HermitianOperator(x), qubit_hamiltonian(2.0), ThermalContext(1.0)),
                 UnsupportedCaseError);
}

TEST(Summaries, CumulativeEndsMatchScalars) {
    std::mt19937_64 rng(26);
    const Trajectory tr = support::random_driven(rng, 300);
    const CumulativeFunctionals c = cumulative_functionals(tr);
    const TrajectorySummary s = summarize(tr);
    EXPECT_EQ(c.heat.front(), 0.0);
    EXPECT_NEAR(c.heat.back(), s.heat, 1e-12);
    EXPECT_NEAR(c.work.back(), s.work, 1e-12);
    EXPECT_NEAR(c.entropy_production.back(), s.entropy_production, 1e-12);
    EXPECT_NEAR(c.reversible_work.back(), s.partition.reversible, 1e-12);
    EXPECT_NEAR(c.irreversible_work.back(), s.partition.irreversible, 1e-12);
    EXPECT_NEAR(s.heat + s.work, s.energy_change, 1e-9);
    EXPECT_NEAR(s.entropy_flow, tr.bath().beta() * s.heat, 1e-12);
}

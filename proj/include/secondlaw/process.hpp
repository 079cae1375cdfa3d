// process.hpp: heat, work and entropy-production functionals over sampled
// trajectories, and the reversible/irreversible work partition.
//
// Sign conventions: heat > 0 is absorbed by the system, work > 0 is done on
// the system by the drive (an engine outputs -work).
//
// Quadrature. Every integral has the Stieltjes form int tr{A dB} and is
// evaluated panel by panel as tr{(A_i + A_{i+1})/2 (B_{i+1} - B_i)}: the
// trapezoid rule with the derivative taken as the centred difference over
// each panel. The rule is second order and its telescoping structure makes
// the first law and the work partition hold to rounding on any grid.

#pragma once

#include "secondlaw/operator_core.hpp"
#include "secondlaw/state_thermo.hpp"

#include <cstddef>
#include <vector>

namespace secondlaw {

class Trajectory {
public:
    // Requires >= 2 samples, strictly increasing times, equal lengths and a
    // common dimension. Throws ValidationError otherwise.
    Trajectory(std::vector<double> times, std::vector<QuantumState> states,
               std::vector<HermitianOperator> hamiltonians, ThermalContext bath);

    std::size_t size() const noexcept { return times_.size(); }
    int dim() const noexcept { return states_.front().dim(); }
    const std::vector<double>& times() const noexcept { return times_; }
    const std::vector<QuantumState>& states() const noexcept { return states_; }
    const std::vector<HermitianOperator>& hamiltonians() const noexcept { return hamiltonians_; }
    const ThermalContext& bath() const noexcept { return bath_; }

    // Samples [first, last] inclusive; needs last > first.
    Trajectory slice(std::size_t first, std::size_t last) const;

private:
    std::vector<double> times_;
    std::vector<QuantumState> states_;
    std::vector<HermitianOperator> hamiltonians_;
    ThermalContext bath_;
};

double heat(const Trajectory& traj);
double work(const Trajectory& traj);

// Delta_i S = S(rho_0||rho_0^b) - S(rho_t||rho_t^b) - int tr{rho d ln rho^b}.
// Infinite boundary relative entropies propagate as +-infinity.
double entropy_production(const Trajectory& traj);

// Delta_e S = beta * heat.
double entropy_flow(const Trajectory& traj);

struct WorkPartition {
    double reversible = 0.0;    // (1/beta) Delta I + Delta F^beta
    double irreversible = 0.0;  // (1/beta) Delta_i S
    bool finite = true;         // false: a boundary relative entropy diverged
};

WorkPartition work_partition(const Trajectory& traj);

// work - [F(rho_t, H_t) - F(rho_0, H_0)] with the non-equilibrium free energy.
double irr_work_via_free_energy(const Trajectory& traj);

struct MinimalWorkReport {
    double work = 0.0;
    double bound = 0.0;    // Delta F^beta + (1/beta) Delta I
    double margin = 0.0;   // work - bound
    bool satisfied = true;
    bool markov_violation() const noexcept { return !satisfied; }
};

MinimalWorkReport minimal_work_check(const Trajectory& traj);

// Entropy-production rate tr{F_th V_th} in the commuting case:
// sum_i rhodot_ii (ln rho^b_ii - ln rho_ii) in the joint eigenbasis.
// Throws UnsupportedCaseError when rho, rho_dot and H do not commute.
double force_flow_rate(const QuantumState& rho, const HermitianOperator& rho_dot,
                       const HermitianOperator& hamiltonian, const ThermalContext& ctx);

// Running values of every functional at each sample (index 0 is zero).
struct CumulativeFunctionals {
    std::vector<double> heat;
    std::vector<double> work;
    std::vector<double> entropy_production;
    std::vector<double> reversible_work;
    std::vector<double> irreversible_work;
    std::vector<double> relative_entropy_to_gibbs;
};

CumulativeFunctionals cumulative_functionals(const Trajectory& traj);

// Per-trajectory record of every scalar functional; what the batch kernels
// compute.
struct TrajectorySummary {
    double heat = 0.0;
    double work = 0.0;
    double energy_change = 0.0;
    double entropy_change = 0.0;
    double entropy_production = 0.0;
    double entropy_flow = 0.0;
    WorkPartition partition;
    double irr_work_via_free_energy = 0.0;
    MinimalWorkReport minimal_work;
};

TrajectorySummary summarize(const Trajectory& traj);

}  // namespace secondlaw

#include "secondlaw/process.hpp"

#include "secondlaw/errors.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

namespace secondlaw {

namespace {

constexpr double kMinimalWorkTolerance = 1e-9;
constexpr double kCommutingTolerance = 1e-8;

// tr{(A_i + A_{i+1})/2 (B_{i+1} - B_i)} with A, B Hermitian.
double panel(const HermitianOperator& a0, const HermitianOperator& a1,
             const HermitianOperator& b0, const HermitianOperator& b1) {
    return 0.5 * (trace_product(a0, b1) - trace_product(a0, b0) + trace_product(a1, b1) - trace_product(a1, b0));
}

// Per-sample quantities shared by the functionals.
struct SampleData {
    std::vector<HermitianOperator> log_gibbs;
    std::vector<double> free_energy;     // F^beta(H_t)
    std::vector<double> info;            // S(rho_t || rho_t^beta)
};

SampleData sample_data(const Trajectory& traj) {
    SampleData d;
    d.log_gibbs.reserve(traj.size());
    d.free_energy.reserve(traj.size());
    d.info.reserve(traj.size());
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const HermitianOperator& h = traj.hamiltonians()[i];
        d.log_gibbs.push_back(log_gibbs_state(h, traj.bath()));
        d.free_energy.push_back(equilibrium_free_energy(h, traj.bath()));
        d.info.push_back(relative_entropy(traj.states()[i], gibbs_state(h, traj.bath())));
    }
    return d;
}

double boundary_info(const Trajectory& traj, std::size_t i) {
    return relative_entropy_to_gibbs(traj.states()[i], traj.hamiltonians()[i], traj.bath());
}

// int tr{rho d ln rho^beta}; zero when H is constant.
double gibbs_log_integral(const Trajectory& traj, const std::vector<HermitianOperator>& log_gibbs) {
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < traj.size(); ++i) {
        sum += panel(traj.states()[i].density(), traj.states()[i + 1].density(), log_gibbs[i], log_gibbs[i + 1]);
    }
    return sum;
}

std::vector<HermitianOperator> log_gibbs_series(const Trajectory& traj) {
    std::vector<HermitianOperator> out;
    out.reserve(traj.size());
    for (const auto& h : traj.hamiltonians()) out.push_back(log_gibbs_state(h, traj.bath()));
    return out;
}

double energy(const Trajectory& traj, std::size_t i) {
    return trace_product(traj.states()[i].density(), traj.hamiltonians()[i]);
}

}  // namespace

Trajectory::Trajectory(std::vector<double> times, std::vector<QuantumState> states,
                       std::vector<HermitianOperator> hamiltonians, ThermalContext bath)
    : times_(std::move(times)), states_(std::move(states)), hamiltonians_(std::move(hamiltonians)), bath_(std::move(bath)) {
    if (times_.size() < 2) throw ValidationError("Trajectory: at least 2 samples required");
    if (states_.size() != times_.size() || hamiltonians_.size() != times_.size()) {
        throw ValidationError("Trajectory: times, states and hamiltonians must have equal length");
    }
    for (std::size_t i = 0; i + 1 < times_.size(); ++i) {
        if (!(times_[i + 1] > times_[i])) {
            std::ostringstream msg;
            msg << "Trajectory: times must be strictly increasing (sample " << i + 1 << ")";
            throw ValidationError(msg.str());
        }
    }
    const int d = states_.front().dim();
    for (std::size_t i = 0; i < times_.size(); ++i) {
        if (states_[i].dim() != d || hamiltonians_[i].dim() != d) {
            throw ValidationError("Trajectory: all states and hamiltonians must share one dimension");
        }
    }
}

Trajectory Trajectory::slice(std::size_t first, std::size_t last) const {
    if (!(last > first) || last >= size()) throw ValidationError("Trajectory::slice: need first < last < size()");
    const auto b = static_cast<std::ptrdiff_t>(first);
    const auto e = static_cast<std::ptrdiff_t>(last) + 1;
    return Trajectory(std::vector<double>(times_.begin() + b, times_.begin() + e),
                      std::vector<QuantumState>(states_.begin() + b, states_.begin() + e),
                      std::vector<HermitianOperator>(hamiltonians_.begin() + b, hamiltonians_.begin() + e), bath_);
}

double heat(const Trajectory& traj) {
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < traj.size(); ++i) {
        sum += panel(traj.hamiltonians()[i], traj.hamiltonians()[i + 1], traj.states()[i].density(),
                     traj.states()[i + 1].density());
    }
    return sum;
}

double work(const Trajectory& traj) {
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < traj.size(); ++i) {
        sum += panel(traj.states()[i].density(), traj.states()[i + 1].density(), traj.hamiltonians()[i],
                     traj.hamiltonians()[i + 1]);
    }
    return sum;
}

double entropy_production(const Trajectory& traj) {
    const double info0 = boundary_info(traj, 0);
    const double info1 = boundary_info(traj, traj.size() - 1);
    return info0 - info1 - gibbs_log_integral(traj, log_gibbs_series(traj));
}

double entropy_flow(const Trajectory& traj) { return traj.bath().beta() * heat(traj); }

WorkPartition work_partition(const Trajectory& traj) {
    const double beta = traj.bath().beta();
    const std::size_t last = traj.size() - 1;
    const double info0 = boundary_info(traj, 0);
    const double info1 = boundary_info(traj, last);
    WorkPartition out;
    if (!std::isfinite(info0) || !std::isfinite(info1)) {
        out.reversible = std::numeric_limits<double>::infinity();
        out.irreversible = std::numeric_limits<double>::infinity();
        out.finite = false;
        return out;
    }
    const double delta_f = equilibrium_free_energy(traj.hamiltonians()[last], traj.bath()) -
                           equilibrium_free_energy(traj.hamiltonians()[0], traj.bath());
    out.reversible = (info1 - info0) / beta + delta_f;
    out.irreversible = (info0 - info1 - gibbs_log_integral(traj, log_gibbs_series(traj))) / beta;
    return out;
}

double irr_work_via_free_energy(const Trajectory& traj) {
    const std::size_t last = traj.size() - 1;
    const double f0 = nonequilibrium_free_energy(traj.states()[0], traj.hamiltonians()[0], traj.bath());
    const double f1 = nonequilibrium_free_energy(traj.states()[last], traj.hamiltonians()[last], traj.bath());
    return work(traj) - (f1 - f0);
}

MinimalWorkReport minimal_work_check(const Trajectory& traj) {
    const std::size_t last = traj.size() - 1;
    const double beta = traj.bath().beta();
    MinimalWorkReport out;
    out.work = work(traj);
    out.bound = equilibrium_free_energy(traj.hamiltonians()[last], traj.bath()) -
                equilibrium_free_energy(traj.hamiltonians()[0], traj.bath()) +
                (boundary_info(traj, last) - boundary_info(traj, 0)) / beta;
    out.margin = out.work - out.bound;
    out.satisfied = out.margin >= -kMinimalWorkTolerance;
    return out;
}

double force_flow_rate(const QuantumState& rho, const HermitianOperator& rho_dot,
                       const HermitianOperator& hamiltonian, const ThermalContext& ctx) {
    if (rho.dim() != rho_dot.dim() || rho.dim() != hamiltonian.dim()) {
        throw ValidationError("force_flow_rate: dimension mismatch");
    }
    const std::array<const HermitianOperator*, 3> family{&rho.density(), &rho_dot, &hamiltonian};
    const Matrix basis = common_eigenbasis(family, kCommutingTolerance);
    const RealVector p = diagonal_in_basis(rho.density(), basis);
    const RealVector pdot = diagonal_in_basis(rho_dot, basis);
    const RealVector log_g = diagonal_in_basis(log_gibbs_state(hamiltonian, ctx), basis);

    double rate = 0.0;
    for (Eigen::Index i = 0; i < p.size(); ++i) {
        if (pdot(i) == 0.0) continue;
        if (p(i) < kSupportCutoff) {
            // Population leaving an empty level is impossible; filling one
            // produces entropy at an unbounded rate.
            if (pdot(i) > 0.0) return std::numeric_limits<double>::infinity();
            continue;
        }
        rate += pdot(i) * (log_g(i) - std::log(p(i)));
    }
    return rate;
}

CumulativeFunctionals cumulative_functionals(const Trajectory& traj) {
    const SampleData d = sample_data(traj);
    const double beta = traj.bath().beta();
    const std::size_t n = traj.size();
    CumulativeFunctionals c;
    c.heat.assign(n, 0.0);
    c.work.assign(n, 0.0);
    c.entropy_production.assign(n, 0.0);
    c.reversible_work.assign(n, 0.0);
    c.irreversible_work.assign(n, 0.0);
    c.relative_entropy_to_gibbs = d.info;

    double log_integral = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const auto& r0 = traj.states()[i].density();
        const auto& r1 = traj.states()[i + 1].density();
        const auto& h0 = traj.hamiltonians()[i];
        const auto& h1 = traj.hamiltonians()[i + 1];
        c.heat[i + 1] = c.heat[i] + panel(h0, h1, r0, r1);
        c.work[i + 1] = c.work[i] + panel(r0, r1, h0, h1);
        log_integral += panel(r0, r1, d.log_gibbs[i], d.log_gibbs[i + 1]);

        const double production = d.info[0] - d.info[i + 1] - log_integral;
        c.entropy_production[i + 1] = production;
        c.irreversible_work[i + 1] = production / beta;
        c.reversible_work[i + 1] = (d.info[i + 1] - d.info[0]) / beta + d.free_energy[i + 1] - d.free_energy[0];
    }
    return c;
}

TrajectorySummary summarize(const Trajectory& traj) {
    const std::size_t last = traj.size() - 1;
    TrajectorySummary s;
    s.heat = heat(traj);
    s.work = work(traj);
    s.energy_change = energy(traj, last) - energy(traj, 0);
    s.entropy_change = von_neumann_entropy(traj.states()[last]) - von_neumann_entropy(traj.states()[0]);
    s.entropy_production = entropy_production(traj);
    s.entropy_flow = traj.bath().beta() * s.heat;
    s.partition = work_partition(traj);
    s.irr_work_via_free_energy = irr_work_via_free_energy(traj);
    s.minimal_work = minimal_work_check(traj);
    return s;
}

}  // namespace secondlaw

#include "secondlaw/batch.hpp"

#include <omp.h>

namespace secondlaw::batch {

namespace {

void rethrow_first(const std::vector<std::exception_ptr>& errors) {
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

}  // namespace

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& task) {
    std::vector<std::exception_ptr> errors(n);
    const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
        try {
            task(static_cast<std::size_t>(i));
        } catch (...) {
            errors[static_cast<std::size_t>(i)] = std::current_exception();
        }
    }
    rethrow_first(errors);
}

void serial_for(std::size_t n, const std::function<void(std::size_t)>& task) {
    for (std::size_t i = 0; i < n; ++i) task(i);
}

std::vector<TrajectorySummary> summarize_all(std::span<const Trajectory> trajectories) {
    std::vector<TrajectorySummary> out(trajectories.size());
    parallel_for(trajectories.size(), [&](std::size_t i) { out[i] = summarize(trajectories[i]); });
    return out;
}

std::vector<TrajectorySummary> summarize_all_serial(std::span<const Trajectory> trajectories) {
    std::vector<TrajectorySummary> out(trajectories.size());
    serial_for(trajectories.size(), [&](std::size_t i) { out[i] = summarize(trajectories[i]); });
    return out;
}

std::vector<CycleReport> run_otto_all(std::span<const OttoConfig> configs) {
    std::vector<CycleReport> out(configs.size());
    parallel_for(configs.size(), [&](std::size_t i) { out[i] = run_otto(configs[i]); });
    return out;
}

std::vector<CycleReport> run_otto_all_serial(std::span<const OttoConfig> configs) {
    std::vector<CycleReport> out(configs.size());
    serial_for(configs.size(), [&](std::size_t i) { out[i] = run_otto(configs[i]); });
    return out;
}

int max_threads() { return omp_get_max_threads(); }

}  // namespace secondlaw::batch

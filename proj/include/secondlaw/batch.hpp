// batch.hpp: data-parallel evaluation over many independent inputs
//
// Each kernel has an OpenMP version and a serial reference with identical
// results: items are independent and no value is reduced across threads, so
// the outputs agree bit for bit regardless of thread count.

#pragma once

#include "secondlaw/engines.hpp"
#include "secondlaw/process.hpp"

#include <cstddef>
#include <exception>
#include <functional>
#include <span>
#include <vector>

namespace secondlaw::batch {

// Runs task(i) for i in [0, n). Exceptions are captured per item; after the
// loop the one from the lowest index is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& task);
void serial_for(std::size_t n, const std::function<void(std::size_t)>& task);

std::vector<TrajectorySummary> summarize_all(std::span<const Trajectory> trajectories);
std::vector<TrajectorySummary> summarize_all_serial(std::span<const Trajectory> trajectories);

std::vector<CycleReport> run_otto_all(std::span<const OttoConfig> configs);
std::vector<CycleReport> run_otto_all_serial(std::span<const OttoConfig> configs);

int max_threads();

}  // namespace secondlaw::batch

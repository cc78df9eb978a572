#pragma once

#include "qcurl/config.hpp"

#include <functional>

namespace qcurl {

// worker pool over [0, count); each index must write only to its own slots.
// The first exception wins and is rethrown once the pool drains.
void parallel_for(int count, int threads, const std::function<void(int)>& fn);

// --threads beats QCURL_THREADS beats the hardware count
int resolve_threads(const ExperimentConfig& cfg);

// runs the configured experiment and writes raw.csv, aggregate.csv and
// manifest.txt under cfg.output_dir; partial files are removed on failure.
// Results are identical for any thread count: every trial draws its own
// seed substreams and rows are assembled in index order.
void run_experiment(const ExperimentConfig& cfg);

}  // namespace qcurl

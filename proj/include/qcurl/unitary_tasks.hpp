#pragma once

#include "qcurl/ansatz.hpp"
#include "qcurl/dataset.hpp"
#include "qcurl/rng.hpp"

#include <vector>

namespace qcurl {

struct UnitaryTaskFamily {
    std::vector<TaskDataset> tasks;
    std::vector<TargetUnitary> targets;
};

// N input states drawn from rng, each paired with target.apply(input)
TaskDataset sample_task(const TargetUnitary& target, int n, HaarMode input_mode,
                        std::mt19937_64& rng);

// one task per entry of layer_counts; targets share the drift stream (seeded
// by beta_seed) so shallower members are prefixes of deeper ones, plus
// l_fixed common layers seeded by fixed_seed. Fresh inputs per task.
UnitaryTaskFamily make_unitary_tasks(int num_qubits, const std::vector<int>& layer_counts,
                                     int l_fixed, int n, std::uint64_t beta_seed,
                                     std::uint64_t fixed_seed, HaarMode input_mode,
                                     std::mt19937_64& rng);

}  // namespace qcurl

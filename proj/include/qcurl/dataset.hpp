#pragma once

#include <vector>

#include "qcurl/state.hpp"

namespace qcurl {

// Input/target state pairs for one unitary-learning task.
struct TaskDataset {
    std::vector<StateVector> inputs;
    std::vector<StateVector> targets;
    int task_id = 0;
    int layer_count = 0;
};

// label == -1 marks an unlabeled grid point.
struct LabeledState {
    StateVector state;
    int label = 0;
    int true_label = 0;
    double h1 = 0.0;
    double h2 = 0.0;
};

}  // namespace qcurl

#pragma once

#include "qcurl/dataset.hpp"
#include "qcurl/rng.hpp"
#include "qcurl/training.hpp"

#include <vector>

namespace qcurl {

// phi_l(x, y) = fidelity(x, main.inputs[l]) * fidelity(y, main.targets[l])
std::vector<double> kernel_basis(const StateVector& x, const StateVector& y,
                                 const TaskDataset& main);

struct RatioModel {
    std::vector<double> alpha;
    TaskDataset anchors;
    double lambda = 0.0;
};

// least-squares density-ratio fit: solves (H + lambda I) alpha = h with H built
// from aux-data basis evaluations and h from main-data ones
RatioModel fit_ratio(const TaskDataset& main, const TaskDataset& aux, double lambda);

double ratio_at(const RatioModel& model, const StateVector& x, const StateVector& y);

// mean fitted ratio over the aux samples; can go negative, by design left unclipped
double curriculum_weight(const RatioModel& model, const TaskDataset& aux);

struct CurriculumWeights {
    // weights[a][b] = weight of task b relative to main task a
    std::vector<std::vector<double>> weights;
};

CurriculumWeights compute_weights(const std::vector<TaskDataset>& tasks, double lambda);

std::vector<int> greedy_order_from_weights(const CurriculumWeights& w, int main_id);

// backwards walk from the main task, always picking the highest-weight
// remaining task (ties to the lower id); returns a permutation ending at main_id
std::vector<int> greedy_order(const std::vector<TaskDataset>& tasks, int main_id, double lambda);

// trains the tasks sequentially in the given order; only the parameter vector
// carries over between tasks, the optimizer state restarts. Initial parameters
// are drawn uniformly from [0, 2pi). Test metrics in each record are against
// main_test at every epoch.
std::vector<TrainRecord> run_qcurl_game(const std::vector<TaskDataset>& tasks,
                                        const std::vector<int>& order, const Circuit& circuit,
                                        const TaskDataset& main_test, int epochs_per_task,
                                        double lr, std::mt19937_64& rng);

}  // namespace qcurl

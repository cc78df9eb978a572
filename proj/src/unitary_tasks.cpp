#include "qcurl/unitary_tasks.hpp"

#include <stdexcept>

namespace qcurl {

TaskDataset sample_task(const TargetUnitary& target, int n, HaarMode input_mode,
                        std::mt19937_64& rng) {
    if (n < 1) throw std::runtime_error("sample_task: need at least one sample");
    TaskDataset ds;
    ds.layer_count = target.variational_layers;
    ds.inputs.reserve(n);
    ds.targets.reserve(n);
    for (int i = 0; i < n; ++i) {
        StateVector in = haar_state(target.circuit.num_qubits, input_mode, rng);
        StateVector out = in;
        target.apply(out);
        ds.inputs.push_back(std::move(in));
        ds.targets.push_back(std::move(out));
    }
    return ds;
}

UnitaryTaskFamily make_unitary_tasks(int num_qubits, const std::vector<int>& layer_counts,
                                     int l_fixed, int n, std::uint64_t beta_seed,
                                     std::uint64_t fixed_seed, HaarMode input_mode,
                                     std::mt19937_64& rng) {
    if (layer_counts.empty()) throw std::runtime_error("make_unitary_tasks: no layer counts");
    UnitaryTaskFamily fam;
    fam.tasks.reserve(layer_counts.size());
    fam.targets.reserve(layer_counts.size());
    for (size_t m = 0; m < layer_counts.size(); ++m) {
        fam.targets.push_back(
            build_xy_target(num_qubits, layer_counts[m], l_fixed, beta_seed, fixed_seed));
        TaskDataset ds = sample_task(fam.targets.back(), n, input_mode, rng);
        ds.task_id = static_cast<int>(m);
        fam.tasks.push_back(std::move(ds));
    }
    return fam;
}

}  // namespace qcurl

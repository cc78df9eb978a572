#include "qcurl/curriculum.hpp"

#include "qcurl/linalg.hpp"

#include <algorithm>
#include <numbers>
#include <stdexcept>

namespace qcurl {

std::vector<double> kernel_basis(const StateVector& x, const StateVector& y,
                                 const TaskDataset& main) {
    const size_t n = main.inputs.size();
    if (n != main.targets.size()) throw std::runtime_error("kernel_basis: anchor length mismatch");
    std::vector<double> phi(n);
    for (size_t l = 0; l < n; ++l)
        phi[l] = fidelity(x, main.inputs[l]) * fidelity(y, main.targets[l]);
    return phi;
}

RatioModel fit_ratio(const TaskDataset& main, const TaskDataset& aux, double lambda) {
    if (main.inputs.empty() || aux.inputs.empty())
        throw std::runtime_error("fit_ratio: empty dataset");
    if (lambda <= 0.0) throw std::runtime_error("fit_ratio: lambda must be positive");
    const int nm = static_cast<int>(main.inputs.size());
    const int na = static_cast<int>(aux.inputs.size());

    std::vector<double> H(static_cast<size_t>(nm) * nm, 0.0);
    for (int i = 0; i < na; ++i) {
        const std::vector<double> phi = kernel_basis(aux.inputs[i], aux.targets[i], main);
        for (int l = 0; l < nm; ++l)
            for (int lp = 0; lp < nm; ++lp) H[static_cast<size_t>(l) * nm + lp] += phi[l] * phi[lp];
    }
    for (double& v : H) v /= static_cast<double>(na);
    for (int l = 0; l < nm; ++l) H[static_cast<size_t>(l) * nm + l] += lambda;

    std::vector<double> h(nm, 0.0);
    for (int i = 0; i < nm; ++i) {
        const std::vector<double> phi = kernel_basis(main.inputs[i], main.targets[i], main);
        for (int l = 0; l < nm; ++l) h[l] += phi[l];
    }
    for (double& v : h) v /= static_cast<double>(nm);

    RatioModel model;
    model.alpha = solve_spd(std::move(H), std::move(h), nm);
    model.anchors = main;
    model.lambda = lambda;
    return model;
}

double ratio_at(const RatioModel& model, const StateVector& x, const StateVector& y) {
    const std::vector<double> phi = kernel_basis(x, y, model.anchors);
    double r = 0.0;
    for (size_t l = 0; l < phi.size(); ++l) r += model.alpha[l] * phi[l];
    return r;
}

double curriculum_weight(const RatioModel& model, const TaskDataset& aux) {
    if (aux.inputs.empty()) throw std::runtime_error("curriculum_weight: empty dataset");
    double acc = 0.0;
    for (size_t i = 0; i < aux.inputs.size(); ++i)
        acc += ratio_at(model, aux.inputs[i], aux.targets[i]);
    return acc / static_cast<double>(aux.inputs.size());
}

CurriculumWeights compute_weights(const std::vector<TaskDataset>& tasks, double lambda) {
    const size_t n = tasks.size();
    CurriculumWeights cw;
    cw.weights.assign(n, std::vector<double>(n, 0.0));
    for (size_t a = 0; a < n; ++a) {
        for (size_t b = 0; b < n; ++b) {
            if (a == b) continue;
            const RatioModel model = fit_ratio(tasks[a], tasks[b], lambda);
            cw.weights[a][b] = curriculum_weight(model, tasks[b]);
        }
    }
    return cw;
}

std::vector<int> greedy_order_from_weights(const CurriculumWeights& w, int main_id) {
    const int n = static_cast<int>(w.weights.size());
    if (main_id < 0 || main_id >= n) throw std::runtime_error("greedy_order: main_id out of range");
    std::vector<bool> used(n, false);
    used[main_id] = true;
    std::vector<int> order{main_id};
    int current = main_id;
    for (int step = 1; step < n; ++step) {
        int best = -1;
        double best_w = 0.0;
        for (int cand = 0; cand < n; ++cand) {
            if (used[cand]) continue;
            const double c = w.weights[current][cand];
            if (best < 0 || c > best_w) {
                best = cand;
                best_w = c;
            }
        }
        used[best] = true;
        order.push_back(best);
        current = best;
    }
    std::reverse(order.begin(), order.end());
    return order;
}

std::vector<int> greedy_order(const std::vector<TaskDataset>& tasks, int main_id, double lambda) {
    return greedy_order_from_weights(compute_weights(tasks, lambda), main_id);
}

std::vector<TrainRecord> run_qcurl_game(const std::vector<TaskDataset>& tasks,
                                        const std::vector<int>& order, const Circuit& circuit,
                                        const TaskDataset& main_test, int epochs_per_task,
                                        double lr, std::mt19937_64& rng) {
    if (order.size() != tasks.size())
        throw std::runtime_error("run_qcurl_game: order must cover every task");
    std::vector<char> seen(tasks.size(), 0);
    for (int id : order) {
        if (id < 0 || id >= static_cast<int>(tasks.size()) || seen[id])
            throw std::runtime_error("run_qcurl_game: order must be a permutation of task ids");
        seen[id] = 1;
    }
    std::uniform_real_distribution<double> u(0.0, 2.0 * std::numbers::pi);
    std::vector<double> params(circuit.num_params);
    for (double& p : params) p = u(rng);

    TrainConfig cfg;
    cfg.epochs = epochs_per_task;
    cfg.lr = lr;
    cfg.mode = TrainLossMode::Plain;
    cfg.test_eval_every = 1;

    std::vector<TrainRecord> records;
    records.reserve(order.size());
    for (int id : order) {
        UnitaryLearningProblem prob(circuit, tasks[id], main_test);
        TrainRecord rec = train(prob, params, cfg);
        params = rec.final_params;
        records.push_back(std::move(rec));
    }
    return records;
}

}  // namespace qcurl

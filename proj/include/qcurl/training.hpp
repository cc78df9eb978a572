#pragma once

#include <functional>
#include <limits>
#include <vector>

#include "qcurl/ansatz.hpp"
#include "qcurl/circuit.hpp"
#include "qcurl/dataset.hpp"
#include "qcurl/linalg.hpp"
#include "qcurl/superloss.hpp"

namespace qcurl {

// 1 - |Tr[V^dag U]|^2 / d^2, invariant under a global phase of either side.
double hs_distance(const Matrix& u, const Matrix& v);

struct LossValue {
    double value = 0.0;
    std::vector<double> per_sample;
};

// per_sample[j] = 1 - |<target_j| U(params) |input_j>|^2
LossValue empirical_unitary_loss(const Circuit& c, const std::vector<double>& params,
                                 const TaskDataset& data);

enum class LabelMap { Identity, HalfShift };

double label_target(LabelMap m, int y);  // s(y); HalfShift maps 0 to 0.5
double label_threshold(LabelMap m);      // midpoint of s(0) and s(1), the predicted-1 cut
// -s(y) log(yhat) - (1-s(y)) log(1-yhat) with yhat = sigmoid(mu*q)
double bce_loss(double q, int y, double mu, LabelMap map);
double bce_dloss_dq(double q, int y, double mu, LabelMap map);

struct ShiftGradResult {
    std::vector<double> grad;
    bool used_fallback = false;  // central differences were used for some gate
};

// Exact two-term shift rule per trainable gate occurrence, accumulated into
// shared slots. loss_of_angles receives per-gate resolved angles (see
// resolve_angles); use apply_circuit to build such closures.
ShiftGradResult parameter_shift_grad(
    const Circuit& c, const std::vector<double>& params,
    const std::function<double(const std::vector<double>&)>& loss_of_angles);

struct AdamState {
    int step = 0;
    std::vector<double> m, v;
    double lr = 0.001;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
};

AdamState make_adam(int param_count, double lr = 0.001);
void adam_step(AdamState& st, std::vector<double>& params, const std::vector<double>& grad);

// Full-batch training problem: per-sample losses plus per-sample gradients
// (reverse-mode sweeps, exact for this gate set; cross-checked against the
// shift rule in tests).
class TrainingProblem {
  public:
    virtual ~TrainingProblem() = default;
    virtual int sample_count() const = 0;
    virtual int param_count() const = 0;
    // losses resized to sample_count; when grads is non-null, (*grads)[i] is
    // d loss_i / d params.
    virtual void eval_batch(const std::vector<double>& params, std::vector<double>& losses,
                            std::vector<std::vector<double>>* grads) const = 0;
    virtual bool has_test() const = 0;
    virtual double test_loss(const std::vector<double>& params) const = 0;
    virtual double test_accuracy(const std::vector<double>& params) const = 0;  // NaN if n/a
};

class UnitaryLearningProblem : public TrainingProblem {
  public:
    UnitaryLearningProblem(Circuit c, TaskDataset train, TaskDataset test = {});

    int sample_count() const override { return static_cast<int>(train_.inputs.size()); }
    int param_count() const override { return circuit_.num_params; }
    void eval_batch(const std::vector<double>& params, std::vector<double>& losses,
                    std::vector<std::vector<double>>* grads) const override;
    bool has_test() const override { return !test_.inputs.empty(); }
    double test_loss(const std::vector<double>& params) const override;
    double test_accuracy(const std::vector<double>&) const override {
        return std::numeric_limits<double>::quiet_NaN();
    }

  private:
    Circuit circuit_;
    TaskDataset train_, test_;
    std::vector<PauliTerm> terms_;  // per-gate generators, hoisted out of the sweeps
};

class PhaseClassificationProblem : public TrainingProblem {
  public:
    PhaseClassificationProblem(QcnnModel model, std::vector<LabeledState> train,
                               std::vector<LabeledState> test, double mu, LabelMap map);

    int sample_count() const override { return static_cast<int>(train_.size()); }
    int param_count() const override { return model_.circuit.num_params; }
    void eval_batch(const std::vector<double>& params, std::vector<double>& losses,
                    std::vector<std::vector<double>>* grads) const override;
    bool has_test() const override { return !test_.empty(); }
    double test_loss(const std::vector<double>& params) const override;
    double test_accuracy(const std::vector<double>& params) const override;
    double train_accuracy(const std::vector<double>& params) const;
    // readout expectation for one state
    double output(const std::vector<double>& params, const StateVector& s) const;

  private:
    QcnnModel model_;
    std::vector<LabeledState> train_, test_;
    std::vector<PauliTerm> terms_;
    double mu_;
    LabelMap map_;
};

enum class TrainLossMode { Plain, QCurl };

struct TrainConfig {
    int epochs = 1;
    double lr = 0.001;
    TrainLossMode mode = TrainLossMode::Plain;
    SuperLossConfig super;
    int test_eval_every = 1;  // test metrics every k-th epoch and at the last one
};

struct EpochRow {
    int epoch = 0;
    double train_loss = 0.0;     // unweighted mean per-sample loss, before the update
    double weighted_loss = 0.0;  // equals train_loss in plain mode
    double test_loss = std::numeric_limits<double>::quiet_NaN();  // after the update
    double test_accuracy = std::numeric_limits<double>::quiet_NaN();
    double eta = std::numeric_limits<double>::quiet_NaN();
    double mean_w = std::numeric_limits<double>::quiet_NaN();
    double min_w = std::numeric_limits<double>::quiet_NaN();
    double max_w = std::numeric_limits<double>::quiet_NaN();
};

struct TrainRecord {
    std::vector<EpochRow> rows;
    std::vector<double> final_params;
    double final_train_loss = 0.0;  // at final_params
    double final_test_loss = std::numeric_limits<double>::quiet_NaN();
    double final_test_accuracy = std::numeric_limits<double>::quiet_NaN();
};

// Full-batch Adam. QCurl mode reweights each sample by exp(w_i) with w from
// the superloss module; eta follows cfg.super.eta_mode, bootstrapped from the
// first forward pass in PreviousEpochMean mode. Weights are constants within
// an epoch (no gradient through them).
TrainRecord train(const TrainingProblem& prob, const std::vector<double>& init_params,
                  const TrainConfig& cfg);

}  // namespace qcurl

#include "qcurl/training.hpp"

#include "qcurl/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace qcurl {

double hs_distance(const Matrix& u, const Matrix& v) {
    if (u.rows != u.cols || v.rows != v.cols || u.rows != v.rows)
        throw std::runtime_error("hs_distance: dimension mismatch");
    const double d = static_cast<double>(u.rows);
    cd tr = 0.0;
    for (int i = 0; i < u.rows; ++i)
        for (int k = 0; k < u.rows; ++k) tr += std::conj(v(k, i)) * u(k, i);
    return 1.0 - std::norm(tr) / (d * d);
}

LossValue empirical_unitary_loss(const Circuit& c, const std::vector<double>& params,
                                 const TaskDataset& data) {
    if (data.inputs.empty()) throw std::runtime_error("empirical_unitary_loss: empty dataset");
    if (data.inputs.size() != data.targets.size())
        throw std::runtime_error("empirical_unitary_loss: inputs/targets length mismatch");
    LossValue out;
    out.per_sample.reserve(data.inputs.size());
    double acc = 0.0;
    for (size_t j = 0; j < data.inputs.size(); ++j) {
        StateVector s = data.inputs[j];
        apply_circuit_params(c, params, s);
        const double l = 1.0 - fidelity(s, data.targets[j]);
        out.per_sample.push_back(l);
        acc += l;
    }
    out.value = acc / static_cast<double>(out.per_sample.size());
    return out;
}

double label_target(LabelMap m, int y) {
    if (y != 0 && y != 1) throw std::runtime_error("label_target: label must be 0 or 1");
    if (m == LabelMap::HalfShift && y == 0) return 0.5;
    return static_cast<double>(y);
}

double label_threshold(LabelMap m) {
    return 0.5 * (label_target(m, 0) + label_target(m, 1));
}

namespace {

// log(1 + exp(x)) without overflow
double softplus(double x) { return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x)); }

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

}  // namespace

double bce_loss(double q, int y, double mu, LabelMap map) {
    const double s = label_target(map, y);
    const double x = mu * q;
    // -s*log(sigmoid(x)) - (1-s)*log(1-sigmoid(x))
    return softplus(-x) + (1.0 - s) * x;
}

double bce_dloss_dq(double q, int y, double mu, LabelMap map) {
    const double s = label_target(map, y);
    return mu * (sigmoid(mu * q) - s);
}

ShiftGradResult parameter_shift_grad(
    const Circuit& c, const std::vector<double>& params,
    const std::function<double(const std::vector<double>&)>& loss_of_angles) {
    ShiftGradResult res;
    res.grad.assign(c.num_params, 0.0);
    std::vector<double> angles = resolve_angles(c, params);
    std::vector<double> work = angles;
    for (size_t gi = 0; gi < c.gates.size(); ++gi) {
        const GateSpec& g = c.gates[gi];
        if (!gate_trainable(g)) continue;
        double cg = 0.0;
        bool involutory = true;
        try {
            cg = generator_coeff(g);
        } catch (const std::exception&) {
            involutory = false;
        }
        double dloss_dangle;
        if (involutory) {
            const double shift = std::numbers::pi / (4.0 * cg);
            work[gi] = angles[gi] + shift;
            const double lp = loss_of_angles(work);
            work[gi] = angles[gi] - shift;
            const double lm = loss_of_angles(work);
            dloss_dangle = cg * (lp - lm);
        } else {
            res.used_fallback = true;
            const double h = 1e-5;
            work[gi] = angles[gi] + h;
            const double lp = loss_of_angles(work);
            work[gi] = angles[gi] - h;
            const double lm = loss_of_angles(work);
            dloss_dangle = (lp - lm) / (2.0 * h);
        }
        work[gi] = angles[gi];
        res.grad[g.param_slot] += g.param_scale * dloss_dangle;
    }
    return res;
}

AdamState make_adam(int param_count, double lr) {
    AdamState st;
    st.lr = lr;
    st.m.assign(param_count, 0.0);
    st.v.assign(param_count, 0.0);
    return st;
}

void adam_step(AdamState& st, std::vector<double>& params, const std::vector<double>& grad) {
    if (params.size() != st.m.size() || grad.size() != st.m.size())
        throw std::runtime_error("adam_step: length mismatch");
    st.step += 1;
    const double bc1 = 1.0 - std::pow(st.beta1, st.step);
    const double bc2 = 1.0 - std::pow(st.beta2, st.step);
    for (size_t i = 0; i < params.size(); ++i) {
        st.m[i] = st.beta1 * st.m[i] + (1.0 - st.beta1) * grad[i];
        st.v[i] = st.beta2 * st.v[i] + (1.0 - st.beta2) * grad[i] * grad[i];
        params[i] -= st.lr * (st.m[i] / bc1) / (std::sqrt(st.v[i] / bc2) + st.eps);
    }
}

namespace {

std::vector<PauliTerm> trainable_terms(const Circuit& c) {
    std::vector<PauliTerm> terms(c.gates.size());
    for (size_t i = 0; i < c.gates.size(); ++i)
        if (gate_trainable(c.gates[i])) terms[i] = generator_term(c.gates[i]);
    return terms;
}

// loss = 1 - |<target|U|input>|^2 and its parameter gradient via one reverse
// sweep: dA/da_i = -i c_i <b_i|P_i|k_i> for the amplitude A = <target|U|input>.
double amplitude_loss_grad(const Circuit& c, const std::vector<PauliTerm>& terms,
                           const std::vector<double>& angles, const StateVector& input,
                           const StateVector& target, std::vector<double>* grad) {
    StateVector k = input;
    for (size_t i = 0; i < c.gates.size(); ++i) apply_gate_angle(k, c.gates[i], angles[i], false);
    const cd amp = overlap(target, k);
    const double loss = 1.0 - std::norm(amp);
    if (!grad) return loss;
    grad->assign(c.num_params, 0.0);
    StateVector b = target;
    for (size_t ri = c.gates.size(); ri-- > 0;) {
        const GateSpec& g = c.gates[ri];
        if (gate_trainable(g)) {
            const cd da = cd(0.0, -1.0) * generator_coeff(g) * pauli_bilinear(b, k, terms[ri]);
            (*grad)[g.param_slot] += g.param_scale * (-2.0 * std::real(std::conj(amp) * da));
        }
        apply_gate_angle(k, g, angles[ri], true);
        apply_gate_angle(b, g, angles[ri], true);
    }
    return loss;
}

// q = <input|U^dag Z_r U|input> and its gradient: dq/da_i = 2 c_i Im <l_i|P_i|k_i>.
double expectation_grad(const Circuit& c, const std::vector<PauliTerm>& terms,
                        const std::vector<double>& angles, const StateVector& input, int readout,
                        std::vector<double>* grad) {
    StateVector k = input;
    for (size_t i = 0; i < c.gates.size(); ++i) apply_gate_angle(k, c.gates[i], angles[i], false);
    const double q = expval_z(k, readout);
    if (!grad) return q;
    grad->assign(c.num_params, 0.0);
    StateVector lam = k;
    const std::uint64_t bit = std::uint64_t{1} << readout;
    for (std::uint64_t i = 0; i < lam.amp.size(); ++i)
        if (i & bit) lam.amp[i] = -lam.amp[i];
    for (size_t ri = c.gates.size(); ri-- > 0;) {
        const GateSpec& g = c.gates[ri];
        if (gate_trainable(g)) {
            const double dq =
                2.0 * generator_coeff(g) * std::imag(pauli_bilinear(lam, k, terms[ri]));
            (*grad)[g.param_slot] += g.param_scale * dq;
        }
        apply_gate_angle(k, g, angles[ri], true);
        apply_gate_angle(lam, g, angles[ri], true);
    }
    return q;
}

}  // namespace

UnitaryLearningProblem::UnitaryLearningProblem(Circuit c, TaskDataset train, TaskDataset test)
    : circuit_(std::move(c)),
      train_(std::move(train)),
      test_(std::move(test)),
      terms_(trainable_terms(circuit_)) {
    if (train_.inputs.empty()) throw std::runtime_error("UnitaryLearningProblem: empty training set");
    if (train_.inputs.size() != train_.targets.size() || test_.inputs.size() != test_.targets.size())
        throw std::runtime_error("UnitaryLearningProblem: inputs/targets length mismatch");
}

void UnitaryLearningProblem::eval_batch(const std::vector<double>& params,
                                        std::vector<double>& losses,
                                        std::vector<std::vector<double>>* grads) const {
    const std::vector<double> angles = resolve_angles(circuit_, params);
    const size_t n = train_.inputs.size();
    losses.resize(n);
    if (grads) grads->resize(n);
    for (size_t j = 0; j < n; ++j)
        losses[j] = amplitude_loss_grad(circuit_, terms_, angles, train_.inputs[j],
                                        train_.targets[j], grads ? &(*grads)[j] : nullptr);
}

double UnitaryLearningProblem::test_loss(const std::vector<double>& params) const {
    return empirical_unitary_loss(circuit_, params, test_).value;
}

PhaseClassificationProblem::PhaseClassificationProblem(QcnnModel model,
                                                       std::vector<LabeledState> train,
                                                       std::vector<LabeledState> test, double mu,
                                                       LabelMap map)
    : model_(std::move(model)),
      train_(std::move(train)),
      test_(std::move(test)),
      terms_(trainable_terms(model_.circuit)),
      mu_(mu),
      map_(map) {
    if (train_.empty()) throw std::runtime_error("PhaseClassificationProblem: empty training set");
}

void PhaseClassificationProblem::eval_batch(const std::vector<double>& params,
                                            std::vector<double>& losses,
                                            std::vector<std::vector<double>>* grads) const {
    const std::vector<double> angles = resolve_angles(model_.circuit, params);
    const size_t n = train_.size();
    losses.resize(n);
    if (grads) grads->resize(n);
    for (size_t j = 0; j < n; ++j) {
        std::vector<double>* g = grads ? &(*grads)[j] : nullptr;
        const double q = expectation_grad(model_.circuit, terms_, angles, train_[j].state,
                                          model_.readout_qubit, g);
        losses[j] = bce_loss(q, train_[j].label, mu_, map_);
        if (g) {
            const double dldq = bce_dloss_dq(q, train_[j].label, mu_, map_);
            for (double& v : *g) v *= dldq;
        }
    }
}

double PhaseClassificationProblem::output(const std::vector<double>& params,
                                          const StateVector& s) const {
    StateVector k = s;
    apply_circuit_params(model_.circuit, params, k);
    return expval_z(k, model_.readout_qubit);
}

double PhaseClassificationProblem::test_loss(const std::vector<double>& params) const {
    if (test_.empty()) throw std::runtime_error("PhaseClassificationProblem: no test set");
    double acc = 0.0;
    for (const auto& d : test_) acc += bce_loss(output(params, d.state), d.label, mu_, map_);
    return acc / static_cast<double>(test_.size());
}

namespace {

double accuracy_over(const PhaseClassificationProblem& prob, const std::vector<double>& params,
                     const std::vector<LabeledState>& data, double mu, LabelMap map) {
    if (data.empty()) return std::numeric_limits<double>::quiet_NaN();
    const double cut = label_threshold(map);
    int hits = 0;
    for (const auto& d : data) {
        const double yhat = 1.0 / (1.0 + std::exp(-mu * prob.output(params, d.state)));
        const int pred = yhat >= cut ? 1 : 0;
        if (pred == d.label) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(data.size());
}

}  // namespace

double PhaseClassificationProblem::test_accuracy(const std::vector<double>& params) const {
    return accuracy_over(*this, params, test_, mu_, map_);
}

double PhaseClassificationProblem::train_accuracy(const std::vector<double>& params) const {
    return accuracy_over(*this, params, train_, mu_, map_);
}

TrainRecord train(const TrainingProblem& prob, const std::vector<double>& init_params,
                  const TrainConfig& cfg) {
    if (cfg.epochs < 1) throw std::runtime_error("train: epochs must be >= 1");
    if (cfg.test_eval_every < 1) throw std::runtime_error("train: test_eval_every must be >= 1");
    if (static_cast<int>(init_params.size()) != prob.param_count())
        throw std::runtime_error("train: parameter length mismatch");

    const int n = prob.sample_count();
    std::vector<double> params = init_params;
    AdamState adam = make_adam(prob.param_count(), cfg.lr);

    TrainRecord rec;
    rec.rows.reserve(cfg.epochs);
    std::vector<double> losses, grad(prob.param_count());
    std::vector<std::vector<double>> grads;
    double prev_mean = 0.0;

    for (int e = 1; e <= cfg.epochs; ++e) {
        prob.eval_batch(params, losses, &grads);
        EpochRow row;
        row.epoch = e;
        row.train_loss = mean(losses);

        std::vector<double> coef(n, 1.0 / static_cast<double>(n));
        if (cfg.mode == TrainLossMode::QCurl) {
            double eta;
            if (cfg.super.eta_mode == EtaMode::Fixed)
                eta = cfg.super.eta_init;
            else
                eta = (e == 1) ? row.train_loss : prev_mean;
            const SampleWeights wts = compute_sample_weights(losses, eta, cfg.super.gamma);
            row.weighted_loss = weighted_risk(losses, wts, eta, cfg.super.gamma);
            row.eta = eta;
            double wm = 0.0, wlo = wts.w[0], whi = wts.w[0];
            for (size_t i = 0; i < wts.w.size(); ++i) {
                wm += wts.w[i];
                wlo = std::min(wlo, wts.w[i]);
                whi = std::max(whi, wts.w[i]);
                coef[i] = std::exp(wts.w[i]) / static_cast<double>(n);
            }
            row.mean_w = wm / static_cast<double>(n);
            row.min_w = wlo;
            row.max_w = whi;
        } else {
            row.weighted_loss = row.train_loss;
        }

        std::fill(grad.begin(), grad.end(), 0.0);
        for (int i = 0; i < n; ++i)
            for (int p = 0; p < prob.param_count(); ++p) grad[p] += coef[i] * grads[i][p];
        adam_step(adam, params, grad);
        prev_mean = row.train_loss;

        if (prob.has_test() && (e % cfg.test_eval_every == 0 || e == cfg.epochs)) {
            row.test_loss = prob.test_loss(params);
            row.test_accuracy = prob.test_accuracy(params);
        }
        rec.rows.push_back(row);
    }

    prob.eval_batch(params, losses, nullptr);
    rec.final_train_loss = mean(losses);
    if (prob.has_test()) {
        rec.final_test_loss = rec.rows.back().test_loss;
        rec.final_test_accuracy = rec.rows.back().test_accuracy;
    }
    rec.final_params = std::move(params);
    return rec;
}

}  // namespace qcurl

#include "qcurl/superloss.hpp"

#include <cmath>
#include <stdexcept>

#include "qcurl/lambertw.hpp"
#include "qcurl/stats.hpp"

namespace qcurl {

double sample_weight(double l, double eta, double gamma) {
    if (gamma == 0.0) throw std::runtime_error("sample_weight: gamma must be nonzero");
    const double z = std::max(-std::exp(-1.0), (l - eta) / (2.0 * gamma));
    return -lambert_w0(z);
}

SampleWeights compute_sample_weights(const std::vector<double>& losses, double eta, double gamma) {
    SampleWeights out;
    out.eta_used = eta;
    out.w.reserve(losses.size());
    for (double l : losses) out.w.push_back(sample_weight(l, eta, gamma));
    return out;
}

double weighted_risk(const std::vector<double>& per_sample, const SampleWeights& weights,
                     double eta, double gamma) {
    if (per_sample.size() != weights.w.size())
        throw std::runtime_error("weighted_risk: length mismatch");
    if (per_sample.empty()) throw std::runtime_error("weighted_risk: empty input");
    double acc = 0.0;
    for (size_t i = 0; i < per_sample.size(); ++i) {
        const double w = weights.w[i];
        acc += (per_sample[i] - eta) * std::exp(w) + gamma * w * w;
    }
    return acc / static_cast<double>(per_sample.size());
}

double update_eta(const std::vector<double>& prev_epoch_losses, const SuperLossConfig& cfg) {
    if (cfg.eta_mode == EtaMode::Fixed) return cfg.eta_init;
    return mean(prev_epoch_losses);
}

}  // namespace qcurl

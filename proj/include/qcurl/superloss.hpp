#pragma once

#include <vector>

namespace qcurl {

enum class EtaMode { Fixed, PreviousEpochMean };

// gamma > 0 emphasizes easy (low-loss) samples, gamma < 0 hard ones.
struct SuperLossConfig {
    double gamma = 1.0;
    double eta_init = 0.0;
    EtaMode eta_mode = EtaMode::PreviousEpochMean;
};

// w = -W0(max(-1/e, (l - eta) / (2 gamma))); the clamp keeps w <= 1.
double sample_weight(double l, double eta, double gamma);

struct SampleWeights {
    std::vector<double> w;
    double eta_used = 0.0;
};

SampleWeights compute_sample_weights(const std::vector<double>& losses, double eta, double gamma);

// mean over i of (l_i - eta) * exp(w_i) + gamma * w_i^2
double weighted_risk(const std::vector<double>& per_sample, const SampleWeights& weights,
                     double eta, double gamma);

// PreviousEpochMean: mean of the prior epoch's unweighted losses; Fixed: eta_init.
double update_eta(const std::vector<double>& prev_epoch_losses, const SuperLossConfig& cfg);

}  // namespace qcurl

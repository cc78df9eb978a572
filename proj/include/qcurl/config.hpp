#pragma once

#include "qcurl/state.hpp"
#include "qcurl/training.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace qcurl {

enum class ExperimentKind { Weights, Game, Phase, Heatmap, EasyHard };

const char* experiment_name(ExperimentKind k);
ExperimentKind experiment_from_name(const std::string& name);

struct ExperimentConfig {
    ExperimentKind experiment = ExperimentKind::Weights;
    int q = 4;
    int n = 20;            // training states per task
    int n_test = 20;       // held-out states for the game
    int trials = 20;
    int epochs = 500;
    int epochs_per_task = 20;
    double lr = 0.001;
    double lambda = 1e-3;  // ridge coefficient of the ratio fit
    double gamma = 1.0;    // confidence regularizer strength (magnitude)
    double mu = 1.0;       // classifier output sharpness
    double noise_p = 0.3;  // label corruption level
    int l_e = 20;          // model circuit depth for the game
    int l_m = 20;          // main-task target depth
    int l_f = 20;          // fixed target layers
    std::uint64_t seed = 42;
    std::string output_dir;
    int threads = 0;       // 0 = QCURL_THREADS env, then hardware count
    int test_eval_every = 50;
    HaarMode input_mode = HaarMode::Full;
    LabelMap label_map = LabelMap::Identity;
    std::vector<double> p_grid{0.0, 0.1, 0.2, 0.3, 0.4, 0.5};
};

ExperimentConfig default_config(ExperimentKind kind);

// one key, one value; throws on unknown keys and unparsable values
void apply_config_entry(ExperimentConfig& cfg, const std::string& key, const std::string& value);

// flat "key = value" lines; blank lines and # comments skipped
void load_config_file(ExperimentConfig& cfg, const std::string& path);

void validate_config(const ExperimentConfig& cfg);

// every field as key = value lines, for the run manifest
std::string config_echo(const ExperimentConfig& cfg);

}  // namespace qcurl

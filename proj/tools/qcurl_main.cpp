#include "qcurl/experiments.hpp"

#include <cstdio>
#include <exception>
#include <string>
#include <utility>
#include <vector>

namespace {

void usage(std::FILE* to) {
    std::fputs(
        "usage: qcurl <experiment> [--config FILE] [--key value | --key=value]...\n"
        "experiments: weights | game | phase | heatmap | easy_hard\n"
        "keys: q n n_test trials epochs epochs_per_task lr lambda gamma mu\n"
        "      noise_p l_e l_m l_f seed output_dir threads test_eval_every\n"
        "      input_mode label_map p_grid\n"
        "flags override file values; QCURL_THREADS is the --threads fallback\n",
        to);
}

}  // namespace

int main(int argc, char** argv) {
    using namespace qcurl;
    std::vector<std::string> args(argv + 1, argv + argc);
    if (args.empty()) {
        usage(stderr);
        return 2;
    }
    if (args[0] == "-h" || args[0] == "--help") {
        usage(stdout);
        return 0;
    }
    try {
        ExperimentConfig cfg = default_config(experiment_from_name(args[0]));
        std::string config_file;
        std::vector<std::pair<std::string, std::string>> overrides;
        for (size_t i = 1; i < args.size(); ++i) {
            const std::string& a = args[i];
            if (a == "-h" || a == "--help") {
                usage(stdout);
                return 0;
            }
            if (a.rfind("--", 0) != 0)
                throw std::runtime_error("expected a --key argument, got '" + a + "'");
            std::string key = a.substr(2);
            std::string value;
            const size_t eq = key.find('=');
            if (eq != std::string::npos) {
                value = key.substr(eq + 1);
                key.erase(eq);
            } else {
                if (++i >= args.size()) throw std::runtime_error("missing value for --" + key);
                value = args[i];
            }
            if (key == "config")
                config_file = value;
            else
                overrides.emplace_back(std::move(key), std::move(value));
        }
        if (!config_file.empty()) load_config_file(cfg, config_file);
        for (const auto& [k, v] : overrides) apply_config_entry(cfg, k, v);
        if (config_file.empty() && overrides.empty())
            std::fprintf(stderr, "qcurl: no config given, using built-in %s defaults\n",
                         experiment_name(cfg.experiment));
        validate_config(cfg);
        run_experiment(cfg);
        std::fprintf(stderr, "qcurl: wrote %s/{raw.csv,aggregate.csv,manifest.txt}\n",
                     cfg.output_dir.c_str());
        return 0;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "qcurl: %s\n", e.what());
        return 1;
    }
}

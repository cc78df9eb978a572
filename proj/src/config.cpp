#include "qcurl/config.hpp"

#include "qcurl/csv.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qcurl {

const char* experiment_name(ExperimentKind k) {
    switch (k) {
        case ExperimentKind::Weights: return "weights";
        case ExperimentKind::Game: return "game";
        case ExperimentKind::Phase: return "phase";
        case ExperimentKind::Heatmap: return "heatmap";
        case ExperimentKind::EasyHard: return "easy_hard";
    }
    return "?";
}

ExperimentKind experiment_from_name(const std::string& name) {
    if (name == "weights") return ExperimentKind::Weights;
    if (name == "game") return ExperimentKind::Game;
    if (name == "phase") return ExperimentKind::Phase;
    if (name == "heatmap") return ExperimentKind::Heatmap;
    if (name == "easy_hard") return ExperimentKind::EasyHard;
    throw std::runtime_error("unknown experiment '" + name +
                             "' (weights, game, phase, heatmap, easy_hard)");
}

ExperimentConfig default_config(ExperimentKind kind) {
    ExperimentConfig cfg;
    cfg.experiment = kind;
    cfg.output_dir = std::string("out/") + experiment_name(kind);
    switch (kind) {
        case ExperimentKind::Weights:
        case ExperimentKind::Game:
            cfg.q = 4;
            break;
        case ExperimentKind::Phase:
            cfg.q = 8;
            break;
        case ExperimentKind::Heatmap:
            cfg.q = 8;
            cfg.trials = 10;
            cfg.mu = 5.0;
            cfg.label_map = LabelMap::HalfShift;
            cfg.test_eval_every = 100;
            break;
        case ExperimentKind::EasyHard:
            cfg.q = 8;
            cfg.trials = 10;
            cfg.mu = 5.0;
            cfg.label_map = LabelMap::HalfShift;
            break;
    }
    return cfg;
}

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

long long to_ll(const std::string& key, const std::string& v) {
    size_t used = 0;
    long long x = 0;
    try {
        x = std::stoll(v, &used);
    } catch (const std::exception&) {
        throw std::runtime_error("config: bad integer for " + key + ": '" + v + "'");
    }
    if (used != v.size()) throw std::runtime_error("config: bad integer for " + key + ": '" + v + "'");
    return x;
}

double to_d(const std::string& key, const std::string& v) {
    size_t used = 0;
    double x = 0.0;
    try {
        x = std::stod(v, &used);
    } catch (const std::exception&) {
        throw std::runtime_error("config: bad number for " + key + ": '" + v + "'");
    }
    if (used != v.size()) throw std::runtime_error("config: bad number for " + key + ": '" + v + "'");
    return x;
}

int to_int(const std::string& key, const std::string& v) {
    const long long x = to_ll(key, v);
    if (x < -(1ll << 31) || x > (1ll << 31)) throw std::runtime_error("config: " + key + " out of range");
    return static_cast<int>(x);
}

}  // namespace

void apply_config_entry(ExperimentConfig& cfg, const std::string& rawkey,
                        const std::string& rawvalue) {
    const std::string key = trim(rawkey);
    const std::string value = trim(rawvalue);
    if (key == "experiment")
        throw std::runtime_error("config: pick the experiment on the command line, not in the file");
    else if (key == "q")
        cfg.q = to_int(key, value);
    else if (key == "n")
        cfg.n = to_int(key, value);
    else if (key == "n_test")
        cfg.n_test = to_int(key, value);
    else if (key == "trials")
        cfg.trials = to_int(key, value);
    else if (key == "epochs")
        cfg.epochs = to_int(key, value);
    else if (key == "epochs_per_task")
        cfg.epochs_per_task = to_int(key, value);
    else if (key == "lr")
        cfg.lr = to_d(key, value);
    else if (key == "lambda")
        cfg.lambda = to_d(key, value);
    else if (key == "gamma")
        cfg.gamma = to_d(key, value);
    else if (key == "mu")
        cfg.mu = to_d(key, value);
    else if (key == "noise_p")
        cfg.noise_p = to_d(key, value);
    else if (key == "l_e")
        cfg.l_e = to_int(key, value);
    else if (key == "l_m")
        cfg.l_m = to_int(key, value);
    else if (key == "l_f")
        cfg.l_f = to_int(key, value);
    else if (key == "seed")
        cfg.seed = static_cast<std::uint64_t>(to_ll(key, value));
    else if (key == "output_dir")
        cfg.output_dir = value;
    else if (key == "threads")
        cfg.threads = to_int(key, value);
    else if (key == "test_eval_every")
        cfg.test_eval_every = to_int(key, value);
    else if (key == "input_mode") {
        if (value == "full")
            cfg.input_mode = HaarMode::Full;
        else if (value == "product")
            cfg.input_mode = HaarMode::Product;
        else
            throw std::runtime_error("config: input_mode must be full or product");
    } else if (key == "label_map") {
        if (value == "identity")
            cfg.label_map = LabelMap::Identity;
        else if (value == "half_shift")
            cfg.label_map = LabelMap::HalfShift;
        else
            throw std::runtime_error("config: label_map must be identity or half_shift");
    } else if (key == "p_grid") {
        std::vector<double> grid;
        std::stringstream ss(value);
        std::string item;
        while (std::getline(ss, item, ',')) grid.push_back(to_d(key, trim(item)));
        if (grid.empty()) throw std::runtime_error("config: empty p_grid");
        cfg.p_grid = std::move(grid);
    } else {
        throw std::runtime_error("config: unknown key '" + key + "'");
    }
}

void load_config_file(ExperimentConfig& cfg, const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("config: cannot open " + path);
    std::string line;
    int lineno = 0;
    while (std::getline(f, line)) {
        ++lineno;
        const size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config: " + path + ":" + std::to_string(lineno) +
                                     ": expected key = value");
        apply_config_entry(cfg, line.substr(0, eq), line.substr(eq + 1));
    }
}

void validate_config(const ExperimentConfig& cfg) {
    auto need = [](bool ok, const char* msg) {
        if (!ok) throw std::runtime_error(std::string("config: ") + msg);
    };
    need(cfg.q >= 2, "q must be at least 2");
    need(cfg.n >= 1 && cfg.n_test >= 1, "sample counts must be at least 1");
    need(cfg.trials >= 1, "trials must be at least 1");
    need(cfg.epochs >= 1 && cfg.epochs_per_task >= 1, "epoch counts must be at least 1");
    need(cfg.test_eval_every >= 1, "test_eval_every must be at least 1");
    need(cfg.lr > 0.0, "lr must be positive");
    need(cfg.lambda > 0.0, "lambda must be positive");
    need(cfg.gamma > 0.0, "gamma must be positive (hard mode negates it internally)");
    need(cfg.mu > 0.0, "mu must be positive");
    need(cfg.noise_p >= 0.0 && cfg.noise_p <= 1.0, "noise_p must lie in [0, 1]");
    need(cfg.l_e >= 0 && cfg.l_f >= 0, "layer counts must be nonnegative");
    need(cfg.l_m >= 1, "l_m must be at least 1");
    need(cfg.threads >= 0, "threads must be nonnegative");
    for (double p : cfg.p_grid) need(p >= 0.0 && p <= 1.0, "p_grid entries must lie in [0, 1]");
    switch (cfg.experiment) {
        case ExperimentKind::Weights:
        case ExperimentKind::Game:
            need(cfg.q <= 6, "q above 6 makes the target-unitary diagnostics too large");
            break;
        case ExperimentKind::Phase:
        case ExperimentKind::Heatmap:
        case ExperimentKind::EasyHard:
            need(cfg.q >= 4, "phase experiments need q >= 4 for the string order");
            need(cfg.q <= 10, "phase experiments support q up to 10");
            need((cfg.q & (cfg.q - 1)) == 0 || cfg.experiment != ExperimentKind::Phase,
                 "the pooling classifier needs q to be a power of two");
            break;
    }
}

std::string config_echo(const ExperimentConfig& cfg) {
    std::ostringstream out;
    out << "experiment = " << experiment_name(cfg.experiment) << "\n";
    out << "q = " << cfg.q << "\n";
    out << "n = " << cfg.n << "\n";
    out << "n_test = " << cfg.n_test << "\n";
    out << "trials = " << cfg.trials << "\n";
    out << "epochs = " << cfg.epochs << "\n";
    out << "epochs_per_task = " << cfg.epochs_per_task << "\n";
    out << "lr = " << fmt_double(cfg.lr) << "\n";
    out << "lambda = " << fmt_double(cfg.lambda) << "\n";
    out << "gamma = " << fmt_double(cfg.gamma) << "\n";
    out << "mu = " << fmt_double(cfg.mu) << "\n";
    out << "noise_p = " << fmt_double(cfg.noise_p) << "\n";
    out << "l_e = " << cfg.l_e << "\n";
    out << "l_m = " << cfg.l_m << "\n";
    out << "l_f = " << cfg.l_f << "\n";
    out << "seed = " << cfg.seed << "\n";
    out << "output_dir = " << cfg.output_dir << "\n";
    out << "threads = " << cfg.threads << "\n";
    out << "test_eval_every = " << cfg.test_eval_every << "\n";
    out << "input_mode = " << (cfg.input_mode == HaarMode::Full ? "full" : "product") << "\n";
    out << "label_map = " << (cfg.label_map == LabelMap::Identity ? "identity" : "half_shift")
        << "\n";
    out << "p_grid = ";
    for (size_t i = 0; i < cfg.p_grid.size(); ++i) {
        if (i) out << ",";
        out << fmt_double(cfg.p_grid[i]);
    }
    out << "\n";
    return out.str();
}

}  // namespace qcurl

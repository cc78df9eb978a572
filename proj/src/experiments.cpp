#include "qcurl/experiments.hpp"

#include "qcurl/ansatz.hpp"
#include "qcurl/csv.hpp"
#include "qcurl/curriculum.hpp"
#include "qcurl/phase_data.hpp"
#include "qcurl/stats.hpp"
#include "qcurl/unitary_tasks.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace qcurl {

void parallel_for(int count, int threads, const std::function<void(int)>& fn) {
    if (count <= 0) return;
    threads = std::max(1, std::min(threads, count));
    if (threads == 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr err;
    std::mutex err_mu;
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            while (true) {
                const int i = next.fetch_add(1);
                if (i >= count) return;
                {
                    std::lock_guard<std::mutex> lock(err_mu);
                    if (err) return;
                }
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(err_mu);
                    if (!err) err = std::current_exception();
                    return;
                }
            }
        });
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

int resolve_threads(const ExperimentConfig& cfg) {
    if (cfg.threads > 0) return cfg.threads;
    if (const char* env = std::getenv("QCURL_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

namespace {

constexpr const char* kVersion = "qcurl 0.1.0";

// substream ids hung off each trial's master seed
enum : std::uint64_t {
    kSeedBeta = 0,
    kSeedFixed = 1,
    kSeedHaar = 2,
    kSeedInit = 3,
    kSeedCorrupt = 4,
    kSeedOrder = 5,
};

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

struct ExperimentOutput {
    Table raw;
    Table agg;
};

std::vector<double> init_angles(int count, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 2.0 * std::numbers::pi);
    std::vector<double> p(count);
    for (double& x : p) x = u(rng);
    return p;
}

std::vector<int> ladder(int top) {
    std::vector<int> layers(top);
    for (int i = 0; i < top; ++i) layers[i] = i + 1;
    return layers;
}

// ---- weights: curriculum weight vs distance to the main target ----

ExperimentOutput run_weights(const ExperimentConfig& cfg, int threads) {
    const std::vector<int> layers = ladder(cfg.l_m);
    const int main_idx = cfg.l_m - 1;
    struct Trial {
        std::vector<double> hs, cw;
    };
    std::vector<Trial> trials(cfg.trials);

    parallel_for(cfg.trials, threads, [&](int t) {
        const std::uint64_t tm = substream_seed(cfg.seed, t);
        auto haar = make_rng(tm, kSeedHaar);
        const UnitaryTaskFamily fam =
            make_unitary_tasks(cfg.q, layers, cfg.l_f, cfg.n, substream_seed(tm, kSeedBeta),
                               substream_seed(tm, kSeedFixed), cfg.input_mode, haar);
        const Matrix um =
            circuit_unitary(fam.targets[main_idx].circuit, fam.targets[main_idx].params);
        Trial& out = trials[t];
        out.hs.resize(main_idx);
        out.cw.resize(main_idx);
        for (int m = 0; m < main_idx; ++m) {
            const Matrix u = circuit_unitary(fam.targets[m].circuit, fam.targets[m].params);
            out.hs[m] = hs_distance(u, um);
            out.cw[m] = curriculum_weight(
                fit_ratio(fam.tasks[main_idx], fam.tasks[m], cfg.lambda), fam.tasks[m]);
        }
    });

    ExperimentOutput out;
    out.raw.header = {"trial", "L_m", "hs_distance", "curriculum_weight"};
    for (int t = 0; t < cfg.trials; ++t)
        for (int m = 0; m < main_idx; ++m)
            out.raw.rows.push_back({fmt_int(t), fmt_int(layers[m]), fmt_double(trials[t].hs[m]),
                                    fmt_double(trials[t].cw[m])});
    out.agg.header = {"L_m", "hs_distance_mean", "hs_distance_std", "curriculum_weight_mean",
                      "curriculum_weight_std"};
    for (int m = 0; m < main_idx; ++m) {
        std::vector<double> hs(cfg.trials), cw(cfg.trials);
        for (int t = 0; t < cfg.trials; ++t) {
            hs[t] = trials[t].hs[m];
            cw[t] = trials[t].cw[m];
        }
        out.agg.rows.push_back({fmt_int(layers[m]), fmt_double(mean(hs)), fmt_double(stddev(hs)),
                                fmt_double(mean(cw)), fmt_double(stddev(cw))});
    }
    return out;
}

// ---- game: greedy curriculum order vs a random order ----

ExperimentOutput run_game(const ExperimentConfig& cfg, int threads) {
    const std::vector<int> layers = ladder(cfg.l_m);
    const int main_idx = cfg.l_m - 1;
    const int total_epochs = cfg.l_m * cfg.epochs_per_task;
    struct Trial {
        std::array<std::vector<double>, 2> train_loss, test_loss;
    };
    std::vector<Trial> trials(cfg.trials);

    parallel_for(cfg.trials, threads, [&](int t) {
        const std::uint64_t tm = substream_seed(cfg.seed, t);
        auto haar = make_rng(tm, kSeedHaar);
        const UnitaryTaskFamily fam =
            make_unitary_tasks(cfg.q, layers, cfg.l_f, cfg.n, substream_seed(tm, kSeedBeta),
                               substream_seed(tm, kSeedFixed), cfg.input_mode, haar);
        const TaskDataset main_test =
            sample_task(fam.targets[main_idx], cfg.n_test, cfg.input_mode, haar);

        const std::vector<int> greedy = greedy_order(fam.tasks, main_idx, cfg.lambda);
        std::vector<int> random_order(main_idx);
        for (int i = 0; i < main_idx; ++i) random_order[i] = i;
        auto order_rng = make_rng(tm, kSeedOrder);
        std::shuffle(random_order.begin(), random_order.end(), order_rng);
        random_order.push_back(main_idx);

        const Circuit model = build_hea(cfg.q, cfg.l_e);
        for (int ot = 0; ot < 2; ++ot) {
            auto init_rng = make_rng(tm, kSeedInit);
            const std::vector<int>& order = ot == 0 ? greedy : random_order;
            const std::vector<TrainRecord> recs = run_qcurl_game(
                fam.tasks, order, model, main_test, cfg.epochs_per_task, cfg.lr, init_rng);
            auto& tr = trials[t].train_loss[ot];
            auto& te = trials[t].test_loss[ot];
            tr.reserve(total_epochs);
            te.reserve(total_epochs);
            for (const TrainRecord& rec : recs)
                for (const EpochRow& row : rec.rows) {
                    tr.push_back(row.train_loss);
                    te.push_back(row.test_loss);
                }
        }
    });

    const std::array<const char*, 2> names{"qcurl", "random"};
    ExperimentOutput out;
    out.raw.header = {"trial", "order_type", "epoch", "train_loss", "test_loss"};
    for (int t = 0; t < cfg.trials; ++t)
        for (int ot = 0; ot < 2; ++ot)
            for (int e = 0; e < total_epochs; ++e)
                out.raw.rows.push_back({fmt_int(t), names[ot], fmt_int(e + 1),
                                        fmt_double(trials[t].train_loss[ot][e]),
                                        fmt_double(trials[t].test_loss[ot][e])});
    out.agg.header = {"order_type",     "epoch",          "train_loss_mean",
                      "train_loss_std", "test_loss_mean", "test_loss_std"};
    for (int ot = 0; ot < 2; ++ot)
        for (int e = 0; e < total_epochs; ++e) {
            std::vector<double> tr(cfg.trials), te(cfg.trials);
            for (int t = 0; t < cfg.trials; ++t) {
                tr[t] = trials[t].train_loss[ot][e];
                te[t] = trials[t].test_loss[ot][e];
            }
            out.agg.rows.push_back({names[ot], fmt_int(e + 1), fmt_double(mean(tr)),
                                    fmt_double(stddev(tr)), fmt_double(mean(te)),
                                    fmt_double(stddev(te))});
        }
    return out;
}

// ---- phase: corrupted-label robustness across a noise grid ----

ExperimentOutput run_phase(const ExperimentConfig& cfg, int threads) {
    const std::vector<LabeledState> train_base =
        make_phase_dataset(PhaseSetKind::Train, cfg.q, Boundary::Open);
    const std::vector<LabeledState> test =
        make_phase_dataset(PhaseSetKind::Test, cfg.q, Boundary::Open);

    const int n_p = static_cast<int>(cfg.p_grid.size());
    const int per_p = 2 * cfg.trials;
    struct Res {
        double loss = 0.0, acc = 0.0;
    };
    std::vector<Res> res(static_cast<size_t>(n_p) * per_p);

    parallel_for(n_p * per_p, threads, [&](int j) {
        const int p_idx = j / per_p;
        const int mode = (j % per_p) / cfg.trials;
        const int trial = j % cfg.trials;
        const double p = cfg.p_grid[p_idx];

        const std::uint64_t tm = substream_seed(cfg.seed, trial);
        auto corr = make_rng(substream_seed(tm, kSeedCorrupt), p_idx);
        std::vector<LabeledState> train_set = corrupt_labels(train_base, p, corr);
        const QcnnModel model = build_qcnn(cfg.q, QcnnVariant::Main);
        auto init_rng = make_rng(substream_seed(tm, kSeedInit), p_idx);
        const std::vector<double> init = init_angles(model.circuit.num_params, init_rng);

        PhaseClassificationProblem prob(model, std::move(train_set), test, cfg.mu, cfg.label_map);
        TrainConfig tc;
        tc.epochs = cfg.epochs;
        tc.lr = cfg.lr;
        tc.test_eval_every = cfg.test_eval_every;
        if (mode == 1) {
            tc.mode = TrainLossMode::QCurl;
            tc.super.gamma = cfg.gamma;
        }
        const TrainRecord rec = train(prob, init, tc);
        res[j] = {rec.final_test_loss, rec.final_test_accuracy};
    });

    const std::array<const char*, 2> names{"plain", "easy"};
    ExperimentOutput out;
    out.raw.header = {"p", "mode", "trial", "test_loss", "test_accuracy"};
    for (int j = 0; j < n_p * per_p; ++j) {
        const int p_idx = j / per_p;
        const int mode = (j % per_p) / cfg.trials;
        const int trial = j % cfg.trials;
        out.raw.rows.push_back({fmt_double(cfg.p_grid[p_idx]), names[mode], fmt_int(trial),
                                fmt_double(res[j].loss), fmt_double(res[j].acc)});
    }
    out.agg.header = {"p",
                      "mode",
                      "test_loss_mean",
                      "test_loss_std",
                      "test_loss_best",
                      "test_accuracy_mean",
                      "test_accuracy_std",
                      "test_accuracy_best"};
    for (int p_idx = 0; p_idx < n_p; ++p_idx)
        for (int mode = 0; mode < 2; ++mode) {
            std::vector<double> loss(cfg.trials), acc(cfg.trials);
            for (int t = 0; t < cfg.trials; ++t) {
                const int j = p_idx * per_p + mode * cfg.trials + t;
                loss[t] = res[j].loss;
                acc[t] = res[j].acc;
            }
            out.agg.rows.push_back(
                {fmt_double(cfg.p_grid[p_idx]), names[mode], fmt_double(mean(loss)),
                 fmt_double(stddev(loss)), fmt_double(*std::min_element(loss.begin(), loss.end())),
                 fmt_double(mean(acc)), fmt_double(stddev(acc)),
                 fmt_double(*std::max_element(acc.begin(), acc.end()))});
        }
    return out;
}

// ---- heatmap: average readout over the (h1, h2) plane ----

ExperimentOutput run_heatmap(const ExperimentConfig& cfg, int threads) {
    const std::vector<LabeledState> train_base =
        make_phase_dataset(PhaseSetKind::Train, cfg.q, Boundary::Periodic);
    const std::vector<LabeledState> grid =
        make_phase_dataset(PhaseSetKind::HeatmapGrid, cfg.q, Boundary::Periodic);

    const int jobs = 2 * cfg.trials;
    std::vector<std::vector<double>> outputs(jobs);

    parallel_for(jobs, threads, [&](int j) {
        const int mode = j / cfg.trials;
        const int trial = j % cfg.trials;
        const std::uint64_t tm = substream_seed(cfg.seed, trial);
        auto corr = make_rng(tm, kSeedCorrupt);
        std::vector<LabeledState> train_set = corrupt_labels(train_base, cfg.noise_p, corr);
        const QcnnModel model = build_qcnn(cfg.q, QcnnVariant::Heatmap);
        auto init_rng = make_rng(tm, kSeedInit);
        const std::vector<double> init = init_angles(model.circuit.num_params, init_rng);

        PhaseClassificationProblem prob(model, std::move(train_set), {}, cfg.mu, cfg.label_map);
        TrainConfig tc;
        tc.epochs = cfg.epochs;
        tc.lr = cfg.lr;
        tc.test_eval_every = cfg.test_eval_every;
        if (mode == 1) {
            tc.mode = TrainLossMode::QCurl;
            tc.super.gamma = cfg.gamma;
        }
        const TrainRecord rec = train(prob, init, tc);
        std::vector<double>& q_out = outputs[j];
        q_out.resize(grid.size());
        for (size_t g = 0; g < grid.size(); ++g)
            q_out[g] = prob.output(rec.final_params, grid[g].state);
    });

    const std::array<const char*, 2> names{"plain", "easy"};
    ExperimentOutput out;
    out.raw.header = {"mode", "trial", "h1", "h2", "q"};
    for (int j = 0; j < jobs; ++j)
        for (size_t g = 0; g < grid.size(); ++g)
            out.raw.rows.push_back({names[j / cfg.trials], fmt_int(j % cfg.trials),
                                    fmt_double(grid[g].h1), fmt_double(grid[g].h2),
                                    fmt_double(outputs[j][g])});
    out.agg.header = {"mode", "h1", "h2", "q_mean"};
    for (int mode = 0; mode < 2; ++mode)
        for (size_t g = 0; g < grid.size(); ++g) {
            std::vector<double> q(cfg.trials);
            for (int t = 0; t < cfg.trials; ++t) q[t] = outputs[mode * cfg.trials + t][g];
            out.agg.rows.push_back({names[mode], fmt_double(grid[g].h1), fmt_double(grid[g].h2),
                                    fmt_double(mean(q))});
        }
    return out;
}

// ---- easy_hard: confidence weighting sign comparison ----

ExperimentOutput run_easy_hard(const ExperimentConfig& cfg, int threads) {
    const std::vector<LabeledState> train_base =
        make_phase_dataset(PhaseSetKind::Train, cfg.q, Boundary::Periodic);
    const std::vector<LabeledState> test =
        make_phase_dataset(PhaseSetKind::Test, cfg.q, Boundary::Periodic);

    std::vector<double> p_list{0.0};
    if (cfg.noise_p > 0.0) p_list.push_back(cfg.noise_p);
    const int n_p = static_cast<int>(p_list.size());
    const int per_p = 3 * cfg.trials;

    struct Row {
        int epoch;
        double train_loss, test_loss;
    };
    std::vector<std::vector<Row>> res(static_cast<size_t>(n_p) * per_p);

    parallel_for(n_p * per_p, threads, [&](int j) {
        const int p_idx = j / per_p;
        const int mode = (j % per_p) / cfg.trials;
        const int trial = j % cfg.trials;

        const std::uint64_t tm = substream_seed(cfg.seed, trial);
        auto corr = make_rng(substream_seed(tm, kSeedCorrupt), p_idx);
        std::vector<LabeledState> train_set = corrupt_labels(train_base, p_list[p_idx], corr);
        const QcnnModel model = build_qcnn(cfg.q, QcnnVariant::Heatmap);
        auto init_rng = make_rng(substream_seed(tm, kSeedInit), p_idx);
        const std::vector<double> init = init_angles(model.circuit.num_params, init_rng);

        PhaseClassificationProblem prob(model, std::move(train_set), test, cfg.mu, cfg.label_map);
        TrainConfig tc;
        tc.epochs = cfg.epochs;
        tc.lr = cfg.lr;
        tc.test_eval_every = cfg.test_eval_every;
        if (mode != 0) {
            tc.mode = TrainLossMode::QCurl;
            tc.super.gamma = mode == 1 ? cfg.gamma : -cfg.gamma;
        }
        const TrainRecord rec = train(prob, init, tc);
        for (const EpochRow& row : rec.rows)
            if (!std::isnan(row.test_loss))
                res[j].push_back({row.epoch, row.train_loss, row.test_loss});
    });

    const std::array<const char*, 3> names{"plain", "easy", "hard"};
    ExperimentOutput out;
    out.raw.header = {"p", "mode", "trial", "epoch", "train_loss", "test_loss"};
    for (int j = 0; j < n_p * per_p; ++j) {
        const int p_idx = j / per_p;
        const int mode = (j % per_p) / cfg.trials;
        const int trial = j % cfg.trials;
        for (const Row& row : res[j])
            out.raw.rows.push_back({fmt_double(p_list[p_idx]), names[mode], fmt_int(trial),
                                    fmt_int(row.epoch), fmt_double(row.train_loss),
                                    fmt_double(row.test_loss)});
    }
    out.agg.header = {"p",          "mode",           "epoch",         "train_loss_mean",
                      "train_loss_std", "test_loss_mean", "test_loss_std"};
    for (int p_idx = 0; p_idx < n_p; ++p_idx)
        for (int mode = 0; mode < 3; ++mode) {
            const std::vector<Row>& first = res[p_idx * per_p + mode * cfg.trials];
            for (size_t r = 0; r < first.size(); ++r) {
                std::vector<double> tr(cfg.trials), te(cfg.trials);
                for (int t = 0; t < cfg.trials; ++t) {
                    const auto& rows = res[p_idx * per_p + mode * cfg.trials + t];
                    tr[t] = rows[r].train_loss;
                    te[t] = rows[r].test_loss;
                }
                out.agg.rows.push_back({fmt_double(p_list[p_idx]), names[mode],
                                        fmt_int(first[r].epoch), fmt_double(mean(tr)),
                                        fmt_double(stddev(tr)), fmt_double(mean(te)),
                                        fmt_double(stddev(te))});
            }
        }
    return out;
}

}  // namespace

void run_experiment(const ExperimentConfig& cfg) {
    validate_config(cfg);
    const int threads = resolve_threads(cfg);

    ExperimentOutput out;
    switch (cfg.experiment) {
        case ExperimentKind::Weights: out = run_weights(cfg, threads); break;
        case ExperimentKind::Game: out = run_game(cfg, threads); break;
        case ExperimentKind::Phase: out = run_phase(cfg, threads); break;
        case ExperimentKind::Heatmap: out = run_heatmap(cfg, threads); break;
        case ExperimentKind::EasyHard: out = run_easy_hard(cfg, threads); break;
    }

    namespace fs = std::filesystem;
    fs::create_directories(cfg.output_dir);
    const fs::path dir(cfg.output_dir);
    const std::string raw_path = (dir / "raw.csv").string();
    const std::string agg_path = (dir / "aggregate.csv").string();
    const std::string man_path = (dir / "manifest.txt").string();
    try {
        write_csv(raw_path, out.raw.header, out.raw.rows);
        write_csv(agg_path, out.agg.header, out.agg.rows);
        std::ofstream man(man_path, std::ios::binary);
        if (!man) throw std::runtime_error("cannot open " + man_path);
        man << kVersion << "\n" << config_echo(cfg);
        man.flush();
        if (!man) throw std::runtime_error("write failed for " + man_path);
    } catch (...) {
        std::error_code ec;
        fs::remove(raw_path, ec);
        fs::remove(agg_path, ec);
        fs::remove(man_path, ec);
        throw;
    }
}

}  // namespace qcurl

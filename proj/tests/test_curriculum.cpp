#include "doctest.h"

#include "qcurl/ansatz.hpp"
#include "qcurl/curriculum.hpp"
#include "qcurl/rng.hpp"
#include "qcurl/stats.hpp"
#include "qcurl/unitary_tasks.hpp"

#include <cmath>
#include <random>
#include <set>

using namespace qcurl;

namespace {

UnitaryTaskFamily family(int q, const std::vector<int>& layers, int n, std::uint64_t seed) {
    auto rng = make_rng(seed);
    return make_unitary_tasks(q, layers, 2, n, seed + 1, seed + 2, HaarMode::Full, rng);
}

// dense route for the ridge system: H[a][b] = mean_j phi_a(x_j, y_j) phi_b(x_j, y_j)
// over the aux samples, h[a] = same mean over the main samples, then a
// partial-pivot gaussian solve of (H + lambda I) alpha = h.
std::vector<double> dense_ratio_fit(const TaskDataset& main, const TaskDataset& aux,
                                    double lambda) {
    const int na = static_cast<int>(main.inputs.size());
    std::vector<std::vector<double>> phi_aux, phi_main;
    for (size_t j = 0; j < aux.inputs.size(); ++j)
        phi_aux.push_back(kernel_basis(aux.inputs[j], aux.targets[j], main));
    for (size_t j = 0; j < main.inputs.size(); ++j)
        phi_main.push_back(kernel_basis(main.inputs[j], main.targets[j], main));

    std::vector<double> H(static_cast<size_t>(na) * na, 0.0), h(na, 0.0);
    for (const auto& row : phi_aux)
        for (int a = 0; a < na; ++a)
            for (int b = 0; b < na; ++b)
                H[static_cast<size_t>(a) * na + b] += row[a] * row[b] / phi_aux.size();
    for (const auto& row : phi_main)
        for (int a = 0; a < na; ++a) h[a] += row[a] / phi_main.size();
    for (int a = 0; a < na; ++a) H[static_cast<size_t>(a) * na + a] += lambda;

    std::vector<int> perm(na);
    for (int i = 0; i < na; ++i) perm[i] = i;
    for (int c = 0; c < na; ++c) {
        int best = c;
        for (int r = c + 1; r < na; ++r)
            if (std::abs(H[static_cast<size_t>(r) * na + c]) >
                std::abs(H[static_cast<size_t>(best) * na + c]))
                best = r;
        for (int k = 0; k < na; ++k)
            std::swap(H[static_cast<size_t>(c) * na + k], H[static_cast<size_t>(best) * na + k]);
        std::swap(h[c], h[best]);
        for (int r = c + 1; r < na; ++r) {
            const double f = H[static_cast<size_t>(r) * na + c] / H[static_cast<size_t>(c) * na + c];
            for (int k = c; k < na; ++k)
                H[static_cast<size_t>(r) * na + k] -= f * H[static_cast<size_t>(c) * na + k];
            h[r] -= f * h[c];
        }
    }
    std::vector<double> alpha(na);
    for (int r = na - 1; r >= 0; --r) {
        double acc = h[r];
        for (int k = r + 1; k < na; ++k) acc -= H[static_cast<size_t>(r) * na + k] * alpha[k];
        alpha[r] = acc / H[static_cast<size_t>(r) * na + r];
    }
    return alpha;
}

}  // namespace

TEST_SUITE("curriculum") {

TEST_CASE("kernel basis evaluates fidelity products against the anchors") {
    UnitaryTaskFamily fam = family(2, {1, 2}, 4, 10);
    const TaskDataset& main = fam.tasks[1];
    auto rng = make_rng(11);
    StateVector x = haar_state(2, HaarMode::Full, rng);
    StateVector y = haar_state(2, HaarMode::Full, rng);

    std::vector<double> phi = kernel_basis(x, y, main);
    REQUIRE(phi.size() == 4);
    for (int l = 0; l < 4; ++l) {
        const double expect = fidelity(x, main.inputs[l]) * fidelity(y, main.targets[l]);
        CHECK(phi[l] == doctest::Approx(expect).epsilon(1e-12));
        CHECK(phi[l] >= 0.0);
        CHECK(phi[l] <= 1.0 + 1e-12);
    }
    // at an anchor the matching basis entry is exactly 1
    std::vector<double> at0 = kernel_basis(main.inputs[0], main.targets[0], main);
    CHECK(at0[0] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("single anchor closed form") {
    // with one anchor and main == aux every basis value is 1, so
    // (1 + lambda) alpha = 1
    UnitaryTaskFamily fam = family(2, {1}, 1, 20);
    const TaskDataset& t = fam.tasks[0];
    for (double lambda : {1e-3, 0.1, 1.0}) {
        RatioModel m = fit_ratio(t, t, lambda);
        REQUIRE(m.alpha.size() == 1);
        CHECK(m.alpha[0] == doctest::Approx(1.0 / (1.0 + lambda)).epsilon(1e-12));
        CHECK(curriculum_weight(m, t) == doctest::Approx(1.0 / (1.0 + lambda)).epsilon(1e-12));
    }
}

TEST_CASE("ratio fit matches an independent dense solve") {
    for (int inst = 0; inst < 20; ++inst) {
        const int n = 3 + inst % 5;
        UnitaryTaskFamily fam = family(2, {1, 3}, n, 100 + inst);
        const TaskDataset& main = fam.tasks[1];
        const TaskDataset& aux = fam.tasks[0];
        const double lambda = inst % 2 == 0 ? 1e-3 : 3e-2;

        RatioModel m = fit_ratio(main, aux, lambda);
        std::vector<double> ref = dense_ratio_fit(main, aux, lambda);
        REQUIRE(m.alpha.size() == ref.size());
        for (size_t i = 0; i < ref.size(); ++i) CHECK(std::abs(m.alpha[i] - ref[i]) < 1e-10);
        CHECK(m.lambda == lambda);
    }
}

TEST_CASE("ratio model evaluation and weight") {
    UnitaryTaskFamily fam = family(3, {1, 2}, 5, 300);
    const TaskDataset& main = fam.tasks[1];
    const TaskDataset& aux = fam.tasks[0];
    RatioModel m = fit_ratio(main, aux, 1e-2);

    double acc = 0.0;
    for (size_t j = 0; j < aux.inputs.size(); ++j) {
        const std::vector<double> phi = kernel_basis(aux.inputs[j], aux.targets[j], main);
        double r = 0.0;
        for (size_t l = 0; l < phi.size(); ++l) r += m.alpha[l] * phi[l];
        CHECK(ratio_at(m, aux.inputs[j], aux.targets[j]) == doctest::Approx(r).epsilon(1e-12));
        acc += r;
    }
    acc /= static_cast<double>(aux.inputs.size());
    CHECK(curriculum_weight(m, aux) == doctest::Approx(acc).epsilon(1e-12));

    CHECK_THROWS(fit_ratio(main, aux, 0.0));
    CHECK_THROWS(fit_ratio(main, aux, -1.0));
    TaskDataset empty;
    CHECK_THROWS(fit_ratio(empty, aux, 1e-3));
}

TEST_CASE("pairwise weights have a zero diagonal and match fit_ratio") {
    UnitaryTaskFamily fam = family(2, {1, 2, 3}, 4, 400);
    CurriculumWeights w = compute_weights(fam.tasks, 1e-3);
    REQUIRE(w.weights.size() == 3);
    for (int a = 0; a < 3; ++a) {
        REQUIRE(w.weights[a].size() == 3);
        CHECK(w.weights[a][a] == 0.0);
        for (int b = 0; b < 3; ++b) {
            if (a == b) continue;
            RatioModel m = fit_ratio(fam.tasks[a], fam.tasks[b], 1e-3);
            CHECK(w.weights[a][b] ==
                  doctest::Approx(curriculum_weight(m, fam.tasks[b])).epsilon(1e-12));
        }
    }
}

TEST_CASE("greedy order against a brute force walk") {
    auto rng = make_rng(55);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int rep = 0; rep < 25; ++rep) {
        const int m = 3 + rep % 4;
        CurriculumWeights w;
        w.weights.assign(m, std::vector<double>(m, 0.0));
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b)
                if (a != b) w.weights[a][b] = u(rng);
        const int main_id = m - 1;

        std::vector<int> got = greedy_order_from_weights(w, main_id);

        // independent walk: from the current task pick the highest-weight
        // unused task, first index on ties, then reverse
        std::vector<int> ref;
        std::set<int> used{main_id};
        int cur = main_id;
        ref.push_back(main_id);
        for (int step = 1; step < m; ++step) {
            int best = -1;
            double best_w = -1e300;
            for (int b = 0; b < m; ++b) {
                if (used.count(b)) continue;
                if (w.weights[cur][b] > best_w) {
                    best_w = w.weights[cur][b];
                    best = b;
                }
            }
            used.insert(best);
            ref.push_back(best);
            cur = best;
        }
        std::reverse(ref.begin(), ref.end());

        REQUIRE(got.size() == ref.size());
        for (size_t i = 0; i < ref.size(); ++i) CHECK(got[i] == ref[i]);
        CHECK(got.back() == main_id);
    }

    SUBCASE("ties resolve to the lowest id") {
        CurriculumWeights w;
        w.weights = {{0.0, 0.5, 0.5}, {0.5, 0.0, 0.5}, {0.5, 0.5, 0.0}};
        std::vector<int> got = greedy_order_from_weights(w, 2);
        REQUIRE(got.size() == 3);
        CHECK(got[0] == 1);
        CHECK(got[1] == 0);
        CHECK(got[2] == 2);
    }
}

TEST_CASE("greedy order from data is a permutation ending at the main task") {
    UnitaryTaskFamily fam = family(2, {1, 2, 3, 4}, 4, 500);
    std::vector<int> order = greedy_order(fam.tasks, 3, 1e-3);
    REQUIRE(order.size() == 4);
    CHECK(order.back() == 3);
    std::set<int> seen(order.begin(), order.end());
    CHECK(seen.size() == 4);
}

TEST_CASE("similarity trend toward the deepest task") {
    // a scaled-down version of the full similarity check: curriculum weights
    // computed against the deepest member should correlate negatively with
    // the distance between target unitaries
    const int trials = 6, lm = 8;
    std::vector<double> rs;
    for (int t = 0; t < trials; ++t) {
        std::vector<int> layers(lm);
        for (int i = 0; i < lm; ++i) layers[i] = i + 1;
        UnitaryTaskFamily fam = family(3, layers, 12, 700 + t);
        const Matrix um =
            circuit_unitary(fam.targets[lm - 1].circuit, fam.targets[lm - 1].params);
        std::vector<double> hs(lm - 1), cw(lm - 1);
        for (int m = 0; m + 1 < lm; ++m) {
            hs[m] = hs_distance(circuit_unitary(fam.targets[m].circuit, fam.targets[m].params), um);
            RatioModel rm = fit_ratio(fam.tasks[lm - 1], fam.tasks[m], 1e-2);
            cw[m] = curriculum_weight(rm, fam.tasks[m]);
        }
        rs.push_back(spearman(cw, hs));
    }
    double m = 0.0;
    for (double v : rs) m += v;
    m /= trials;
    CHECK(m < -0.2);
}

TEST_CASE("game trains through the order and carries parameters") {
    UnitaryTaskFamily fam = family(2, {1, 2}, 5, 800);
    Circuit model = build_hea(2, 1);
    auto rng = make_rng(77);
    std::vector<TrainRecord> recs =
        run_qcurl_game(fam.tasks, {0, 1}, model, fam.tasks[1], 3, 0.1, rng);
    REQUIRE(recs.size() == 2);
    for (const TrainRecord& r : recs) {
        CHECK(r.rows.size() == 3);
        CHECK(r.final_params.size() == static_cast<size_t>(model.num_params));
        for (const EpochRow& row : r.rows) CHECK(std::isfinite(row.test_loss));
    }

    // second leg must start from the first leg's parameters: its first-epoch
    // train loss evaluated independently at those parameters must match
    UnitaryLearningProblem second(model, fam.tasks[1]);
    std::vector<double> losses;
    second.eval_batch(recs[0].final_params, losses, nullptr);
    double expect = 0.0;
    for (double v : losses) expect += v;
    expect /= static_cast<double>(losses.size());
    CHECK(recs[1].rows[0].train_loss == doctest::Approx(expect).epsilon(1e-12));

    SUBCASE("repeat with the same seed reproduces the records") {
        auto rng2 = make_rng(77);
        std::vector<TrainRecord> again =
            run_qcurl_game(fam.tasks, {0, 1}, model, fam.tasks[1], 3, 0.1, rng2);
        REQUIRE(again.size() == recs.size());
        for (size_t k = 0; k < recs.size(); ++k) {
            CHECK(again[k].final_train_loss == recs[k].final_train_loss);
            for (size_t i = 0; i < recs[k].final_params.size(); ++i)
                CHECK(again[k].final_params[i] == recs[k].final_params[i]);
        }
    }

    SUBCASE("order must be a permutation ending at a valid task") {
        CHECK_THROWS(run_qcurl_game(fam.tasks, {0, 0}, model, fam.tasks[1], 3, 0.1, rng));
        CHECK_THROWS(run_qcurl_game(fam.tasks, {0}, model, fam.tasks[1], 3, 0.1, rng));
    }
}

}  // TEST_SUITE

#include "qcurl/phase_data.hpp"

#include "qcurl/csv.hpp"

#include <array>
#include <cstdint>
#include <fstream>
#include <stdexcept>

namespace qcurl {

namespace {

constexpr int kLinePoints = 40;
constexpr int kGridPoints = 64;
constexpr double kH1Max = 1.6;
constexpr double kH2Span = 1.6;

constexpr std::array<double, 10> kTestH2{0.8439,  0.6636,   0.5033,  0.3631,  0.2229,
                                         0.09766, -0.02755, -0.1377, -0.2479, -0.3531};

LabeledState ground_point(int q, double h1, double h2, Boundary boundary) {
    HamiltonianSpec spec{q, h1, h2, boundary};
    LabeledState out;
    out.state = ground_state(spec).state;
    out.h1 = h1;
    out.h2 = h2;
    return out;
}

}  // namespace

std::vector<LabeledState> make_phase_dataset(PhaseSetKind kind, int num_qubits,
                                             Boundary boundary) {
    std::vector<LabeledState> data;
    switch (kind) {
        case PhaseSetKind::Train:
            data.reserve(kLinePoints);
            for (int i = 0; i < kLinePoints; ++i) {
                const double h1 = kH1Max * i / (kLinePoints - 1);
                LabeledState s = ground_point(num_qubits, h1, 0.0, boundary);
                s.true_label = analytic_label(h1, 0.0);
                s.label = s.true_label;
                data.push_back(std::move(s));
            }
            break;
        case PhaseSetKind::Test:
            data.reserve(kTestH2.size() * kLinePoints);
            for (const double h2 : kTestH2) {
                for (int i = 0; i < kLinePoints; ++i) {
                    const double h1 = kH1Max * i / (kLinePoints - 1);
                    LabeledState s = ground_point(num_qubits, h1, h2, boundary);
                    s.true_label = string_order_label(s.state);
                    s.label = s.true_label;
                    data.push_back(std::move(s));
                }
            }
            break;
        case PhaseSetKind::HeatmapGrid:
            data.reserve(static_cast<size_t>(kGridPoints) * kGridPoints);
            for (int r = 0; r < kGridPoints; ++r) {
                const double h2 = -kH2Span + 2.0 * kH2Span * r / (kGridPoints - 1);
                for (int c = 0; c < kGridPoints; ++c) {
                    const double h1 = kH1Max * c / (kGridPoints - 1);
                    LabeledState s = ground_point(num_qubits, h1, h2, boundary);
                    s.label = -1;
                    s.true_label = -1;
                    data.push_back(std::move(s));
                }
            }
            break;
    }
    return data;
}

std::vector<LabeledState> corrupt_labels(const std::vector<LabeledState>& data, double p,
                                         std::mt19937_64& rng) {
    if (p < 0.0 || p > 1.0) throw std::runtime_error("corrupt_labels: p out of range");
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<LabeledState> out = data;
    for (LabeledState& s : out) {
        if (s.label < 0) continue;
        if (u(rng) < p) s.label = 1 - s.label;
    }
    return out;
}

void save_labeled_states(const std::string& path, const std::vector<LabeledState>& data) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("save_labeled_states: cannot open " + path);
    const std::uint32_t q = data.empty() ? 0 : static_cast<std::uint32_t>(data[0].state.num_qubits);
    const std::uint64_t count = data.size();
    std::uint8_t labeled = 1;
    for (const auto& s : data)
        if (s.label < 0) labeled = 0;
    f.write(reinterpret_cast<const char*>(&q), sizeof q);
    f.write(reinterpret_cast<const char*>(&count), sizeof count);
    f.write(reinterpret_cast<const char*>(&labeled), sizeof labeled);
    for (const auto& s : data) {
        if (s.state.num_qubits != static_cast<int>(q))
            throw std::runtime_error("save_labeled_states: mixed qubit counts");
        for (const cd& a : s.state.amp) {
            const double re = a.real(), im = a.imag();
            f.write(reinterpret_cast<const char*>(&re), sizeof re);
            f.write(reinterpret_cast<const char*>(&im), sizeof im);
        }
    }
    if (labeled) {
        for (const auto& s : data) {
            const std::int8_t y = static_cast<std::int8_t>(s.label);
            f.write(reinterpret_cast<const char*>(&y), 1);
        }
        for (const auto& s : data) {
            const std::int8_t y = static_cast<std::int8_t>(s.true_label);
            f.write(reinterpret_cast<const char*>(&y), 1);
        }
    }
    if (!f) throw std::runtime_error("save_labeled_states: write failed for " + path);
}

std::vector<LabeledState> load_labeled_states(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("load_labeled_states: cannot open " + path);
    std::uint32_t q = 0;
    std::uint64_t count = 0;
    std::uint8_t labeled = 0;
    f.read(reinterpret_cast<char*>(&q), sizeof q);
    f.read(reinterpret_cast<char*>(&count), sizeof count);
    f.read(reinterpret_cast<char*>(&labeled), sizeof labeled);
    if (!f || q > 24) throw std::runtime_error("load_labeled_states: bad header in " + path);
    std::vector<LabeledState> data(count);
    for (auto& s : data) {
        s.state = StateVector(static_cast<int>(q));
        for (cd& a : s.state.amp) {
            double re = 0.0, im = 0.0;
            f.read(reinterpret_cast<char*>(&re), sizeof re);
            f.read(reinterpret_cast<char*>(&im), sizeof im);
            a = cd(re, im);
        }
        s.label = -1;
        s.true_label = -1;
    }
    if (labeled) {
        for (auto& s : data) {
            std::int8_t y = 0;
            f.read(reinterpret_cast<char*>(&y), 1);
            s.label = y;
        }
        for (auto& s : data) {
            std::int8_t y = 0;
            f.read(reinterpret_cast<char*>(&y), 1);
            s.true_label = y;
        }
    }
    if (!f) throw std::runtime_error("load_labeled_states: truncated file " + path);
    return data;
}

void write_state_manifest(const std::string& path, const std::vector<LabeledState>& data) {
    std::vector<std::vector<std::string>> rows;
    rows.reserve(data.size());
    for (size_t i = 0; i < data.size(); ++i)
        rows.push_back({fmt_int(static_cast<long long>(i)), fmt_double(data[i].h1),
                        fmt_double(data[i].h2), fmt_int(data[i].label),
                        fmt_int(data[i].true_label)});
    write_csv(path, {"index", "h1", "h2", "label", "true_label"}, rows);
}

}  // namespace qcurl

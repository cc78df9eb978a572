#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qcurl/ansatz.hpp"
#include "qcurl/cluster_ising.hpp"
#include "qcurl/config.hpp"
#include "qcurl/curriculum.hpp"
#include "qcurl/experiments.hpp"
#include "qcurl/lambertw.hpp"
#include "qcurl/superloss.hpp"
#include "qcurl/training.hpp"
#include "qcurl/unitary_tasks.hpp"

#include <map>
#include <stdexcept>
#include <vector>

namespace py = pybind11;
using namespace qcurl;

namespace {

StateVector to_state(const std::vector<cd>& amps) {
    const size_t n = amps.size();
    if (n == 0 || (n & (n - 1)) != 0)
        throw std::invalid_argument("amplitude count must be a power of two");
    int q = 0;
    while ((size_t(1) << q) < n) ++q;
    StateVector s(q);
    s.amp = amps;
    return s;
}

std::vector<std::vector<cd>> to_rows(const Matrix& m) {
    std::vector<std::vector<cd>> rows(m.rows, std::vector<cd>(m.cols));
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) rows[i][j] = m(i, j);
    return rows;
}

Matrix to_matrix(const std::vector<std::vector<cd>>& rows) {
    const int n = static_cast<int>(rows.size());
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(rows[i].size()) != n)
            throw std::invalid_argument("matrix rows must be square");
        for (int j = 0; j < n; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

HamiltonianSpec spec_of(int q, double h1, double h2, bool periodic) {
    return {q, h1, h2, periodic ? Boundary::Periodic : Boundary::Open};
}

}  // namespace

PYBIND11_MODULE(_qcurl, m) {
    m.doc() = "statevector simulation, curriculum weighting and the experiment runner";

    // confidence weighting
    m.def("lambert_w0", &lambert_w0, py::arg("z"),
          "principal branch of w*exp(w) = z, defined for z >= -1/e");
    m.def("sample_weight", &sample_weight, py::arg("loss"), py::arg("eta"), py::arg("gamma"),
          "log-weight of one sample; gamma > 0 favors easy samples, gamma < 0 hard ones");
    m.def(
        "sample_weights",
        [](const std::vector<double>& losses, double eta, double gamma) {
            return compute_sample_weights(losses, eta, gamma).w;
        },
        py::arg("losses"), py::arg("eta"), py::arg("gamma"));
    m.def(
        "weighted_risk",
        [](const std::vector<double>& losses, double eta, double gamma) {
            return weighted_risk(losses, compute_sample_weights(losses, eta, gamma), eta, gamma);
        },
        py::arg("losses"), py::arg("eta"), py::arg("gamma"));

    // states
    m.def(
        "haar_state",
        [](int num_qubits, std::uint64_t seed, bool product) {
            auto rng = make_rng(seed);
            return haar_state(num_qubits, product ? HaarMode::Product : HaarMode::Full, rng).amp;
        },
        py::arg("num_qubits"), py::arg("seed"), py::arg("product") = false);
    m.def(
        "fidelity",
        [](const std::vector<cd>& a, const std::vector<cd>& b) {
            return fidelity(to_state(a), to_state(b));
        },
        py::arg("a"), py::arg("b"), "|<a|b>|^2");
    m.def(
        "hs_distance",
        [](const std::vector<std::vector<cd>>& u, const std::vector<std::vector<cd>>& v) {
            return hs_distance(to_matrix(u), to_matrix(v));
        },
        py::arg("u"), py::arg("v"), "1 - |tr(v^dag u)|^2 / d^2");

    // circuits
    py::class_<Circuit>(m, "Circuit")
        .def_readonly("num_qubits", &Circuit::num_qubits)
        .def_readonly("num_params", &Circuit::num_params)
        .def("gate_count", [](const Circuit& c) { return c.gates.size(); })
        .def("text", [](const Circuit& c) { return circuit_to_text(c); })
        .def(
            "apply",
            [](const Circuit& c, const std::vector<double>& params, const std::vector<cd>& amps) {
                StateVector s = to_state(amps);
                apply_circuit_params(c, params, s);
                return s.amp;
            },
            py::arg("params"), py::arg("amplitudes"))
        .def(
            "unitary",
            [](const Circuit& c, const std::vector<double>& params) {
                return to_rows(circuit_unitary(c, params));
            },
            py::arg("params"));

    m.def("hea", &build_hea, py::arg("num_qubits"), py::arg("layers"),
          "alternating rotation blocks and cnot chains; 2*q*(layers+1) parameters");
    m.def(
        "qcnn",
        [](int num_qubits, bool heatmap) {
            const QcnnModel model =
                build_qcnn(num_qubits, heatmap ? QcnnVariant::Heatmap : QcnnVariant::Main);
            return py::make_tuple(model.circuit, model.readout_qubit);
        },
        py::arg("num_qubits"), py::arg("heatmap") = false,
        "returns (circuit, readout_qubit); read the class score as <Z> on that qubit");
    m.def(
        "xy_target",
        [](int num_qubits, int variational_layers, int fixed_layers, std::uint64_t beta_seed,
           std::uint64_t fixed_seed) {
            TargetUnitary t =
                build_xy_target(num_qubits, variational_layers, fixed_layers, beta_seed,
                                fixed_seed);
            return py::make_tuple(t.circuit, t.params);
        },
        py::arg("num_qubits"), py::arg("variational_layers"), py::arg("fixed_layers"),
        py::arg("beta_seed"), py::arg("fixed_seed"),
        "returns (circuit, params); same seeds and deeper layer counts extend the same family");

    // classifier loss
    m.def(
        "bce_loss",
        [](double q, int y, double mu, bool half_shift) {
            return bce_loss(q, y, mu, half_shift ? LabelMap::HalfShift : LabelMap::Identity);
        },
        py::arg("q"), py::arg("y"), py::arg("mu") = 1.0, py::arg("half_shift") = false,
        "cross entropy of sigmoid(mu*q) against the mapped label");

    // cluster-Ising physics
    m.def(
        "ground_state",
        [](int q, double h1, double h2, bool periodic, bool compute_gap) {
            const GroundStateResult r = ground_state(spec_of(q, h1, h2, periodic), compute_gap);
            py::dict out;
            out["energy"] = r.energy;
            out["amplitudes"] = r.state.amp;
            if (compute_gap) {
                out["gap"] = r.gap;
                out["degenerate"] = r.degenerate;
            }
            return out;
        },
        py::arg("num_qubits"), py::arg("h1"), py::arg("h2"), py::arg("periodic") = false,
        py::arg("compute_gap") = false);
    m.def("analytic_label", &analytic_label, py::arg("h1"), py::arg("h2"),
          "phase label on the h2 = 0 line: 1 below h1 = 1, else 0");
    m.def(
        "string_order", [](const std::vector<cd>& amps) { return string_order(to_state(amps)); },
        py::arg("amplitudes"));
    m.def(
        "string_order_label",
        [](const std::vector<cd>& amps, double threshold) {
            return string_order_label(to_state(amps), threshold);
        },
        py::arg("amplitudes"), py::arg("threshold") = 0.5);

    // curriculum ordering over a generated task family
    m.def(
        "curriculum_weights",
        [](int q, const std::vector<int>& layer_counts, int fixed_layers, int samples,
           double lambda, std::uint64_t seed, bool product) {
            auto rng = make_rng(seed, 2);
            const UnitaryTaskFamily fam = make_unitary_tasks(
                q, layer_counts, fixed_layers, samples, substream_seed(seed, 0),
                substream_seed(seed, 1), product ? HaarMode::Product : HaarMode::Full, rng);
            const CurriculumWeights w = compute_weights(fam.tasks, lambda);
            py::dict out;
            out["weights"] = w.weights;
            out["greedy_order"] =
                greedy_order_from_weights(w, static_cast<int>(layer_counts.size()) - 1);
            return out;
        },
        py::arg("num_qubits"), py::arg("layer_counts"), py::arg("fixed_layers"),
        py::arg("samples"), py::arg("lambda_"), py::arg("seed"), py::arg("product") = false,
        "density-ratio weights of every task pair plus the greedy order for the last task");

    // full experiment runner; returns the output directory
    m.def(
        "run_experiment",
        [](const std::string& experiment, const std::map<std::string, std::string>& options) {
            ExperimentConfig cfg = default_config(experiment_from_name(experiment));
            for (const auto& [k, v] : options) apply_config_entry(cfg, k, v);
            validate_config(cfg);
            run_experiment(cfg);
            return cfg.output_dir;
        },
        py::arg("experiment"), py::arg("options") = std::map<std::string, std::string>{},
        "writes raw.csv, aggregate.csv and manifest.txt under options['output_dir']");
}

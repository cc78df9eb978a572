#pragma once

#include "qcurl/cluster_ising.hpp"
#include "qcurl/dataset.hpp"
#include "qcurl/rng.hpp"

#include <string>
#include <vector>

namespace qcurl {

enum class PhaseSetKind { Train, Test, HeatmapGrid };

// train: 40 ground states on the h2=0 line with analytic labels;
// test: 400 ground states over ten fixed h2 rows with string-order labels;
// heatmap_grid: unlabeled 64x64 sweep of [0,1.6] x [-1.6,1.6]
std::vector<LabeledState> make_phase_dataset(PhaseSetKind kind, int num_qubits, Boundary boundary);

// flips each label independently with probability p; true_label kept;
// unlabeled entries pass through untouched
std::vector<LabeledState> corrupt_labels(const std::vector<LabeledState>& data, double p,
                                         std::mt19937_64& rng);

// binary blob: u32 qubit count, u64 state count, u8 labels-present flag,
// then per state interleaved little-endian float64 (re, im) amplitudes,
// then, when labeled, one i8 array of labels and one of true labels.
// Grid parameters travel in the CSV manifest, not the blob.
void save_labeled_states(const std::string& path, const std::vector<LabeledState>& data);
std::vector<LabeledState> load_labeled_states(const std::string& path);

// rows of (index, h1, h2, label, true_label) next to the binary blob
void write_state_manifest(const std::string& path, const std::vector<LabeledState>& data);

}  // namespace qcurl

"""Statevector circuit training with curriculum ordering and confidence weights.

Thin re-export of the compiled core. The heavy lifting (simulation, training,
experiment harness) lives in C++; see run_experiment for the end-to-end entry
point and the qcurl CLI for the same thing outside python.
"""

from ._qcurl import (
    Circuit,
    analytic_label,
    bce_loss,
    curriculum_weights,
    fidelity,
    ground_state,
    haar_state,
    hea,
    hs_distance,
    lambert_w0,
    qcnn,
    run_experiment,
    sample_weight,
    sample_weights,
    string_order,
    string_order_label,
    weighted_risk,
    xy_target,
)

__all__ = [
    "Circuit",
    "analytic_label",
    "bce_loss",
    "curriculum_weights",
    "fidelity",
    "ground_state",
    "haar_state",
    "hea",
    "hs_distance",
    "lambert_w0",
    "qcnn",
    "run_experiment",
    "sample_weight",
    "sample_weights",
    "string_order",
    "string_order_label",
    "weighted_risk",
    "xy_target",
]

__version__ = "0.1.0"

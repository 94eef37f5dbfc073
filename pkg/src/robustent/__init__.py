"""Entanglement lifetimes of qubit pairs under local noise.

Qubit channels are handled as Pauli transfer matrices.  Nonunital channels
are reduced to unital ones by quantum Sinkhorn scaling, where entanglement
annihilation has an exact criterion over signed permutations.
"""
from .channels import (
    ChannelClass,
    DiagonalChannel,
    apply_pair,
    canonical_form,
    classify,
    pauli_channel,
    ptm_from_kraus,
)
from .dynamics import (
    LifetimeReport,
    NoiseFamily,
    gad_ea_time,
    gad_reduced_lambda,
    gad_robust_state,
    gad_scaling_B,
    gad_tau_bell,
    gad_tau_tilde,
    interpolated_state,
    lifetime_of_state,
    pair_ea_lifetime,
    transfer_at,
)
from .errors import RobustEntError
from .oracle import PureStateSample, ea_sampled_verdict, sample_pure_states
from .qubit import PSI_PLUS, make_bell_like, negativity
from .sinkhorn import UnitalReduction, decompose, decompose_axial
from .unital import EaVerdict, ea_threshold_time, is_ea_pair, robust_unital_state, witness_family

__version__ = "0.1.0"

__all__ = [
    "ChannelClass",
    "DiagonalChannel",
    "apply_pair",
    "canonical_form",
    "classify",
    "pauli_channel",
    "ptm_from_kraus",
    "LifetimeReport",
    "NoiseFamily",
    "gad_ea_time",
    "gad_reduced_lambda",
    "gad_robust_state",
    "gad_scaling_B",
    "gad_tau_bell",
    "gad_tau_tilde",
    "interpolated_state",
    "lifetime_of_state",
    "pair_ea_lifetime",
    "transfer_at",
    "RobustEntError",
    "PureStateSample",
    "ea_sampled_verdict",
    "sample_pure_states",
    "PSI_PLUS",
    "make_bell_like",
    "negativity",
    "UnitalReduction",
    "decompose",
    "decompose_axial",
    "EaVerdict",
    "ea_threshold_time",
    "is_ea_pair",
    "robust_unital_state",
    "witness_family",
]

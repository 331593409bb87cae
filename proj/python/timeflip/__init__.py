"""Quantum time-flip game toolkit: simulation, tester SDP bounds, exact certificates."""

from ._core import (
    __version__,
    analytic_win_probability,
    average_gate_fidelity,
    canonical_sets,
    certify_bound,
    chernoff_log_pvalue_bound,
    classify_pair,
    decompose_gadget,
    exact_binomial_tail_log,
    gadget_unitaries,
    play_setting,
    relative_entropy,
    run_game,
    solve_bounds,
)

__all__ = [
    "analytic_win_probability",
    "average_gate_fidelity",
    "canonical_sets",
    "certify_bound",
    "chernoff_log_pvalue_bound",
    "classify_pair",
    "decompose_gadget",
    "exact_binomial_tail_log",
    "gadget_unitaries",
    "play_setting",
    "relative_entropy",
    "run_game",
    "solve_bounds",
]

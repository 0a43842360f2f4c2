"""Equivalence-query learning laboratory.

Classes cross the boundary as dicts in the JSON interchange shape:
{"domain_size": n, "num_labels": k, "hypotheses": [[...], ...]}.
"""

from eqlab._core import (
    Error,
    best_response_value,
    derive_seed,
    gen_linear_functionals,
    gen_random_class,
    gen_singletons,
    run_experiment,
    solve_minimax,
)
from eqlab import _core

__version__ = "0.1.0"

__all__ = [
    "Error",
    "best_response_value",
    "check_symmetric",
    "derive_seed",
    "gen_linear_functionals",
    "gen_random_class",
    "gen_singletons",
    "ldim",
    "ldim_bruteforce",
    "run_experiment",
    "shattered_tree",
    "soa_label",
    "solve_minimax",
]


def ldim(cls):
    """Littlestone dimension of a class dict."""
    return _core.ldim(cls["hypotheses"], cls["num_labels"])


def ldim_bruteforce(cls):
    """Brute-force dimension oracle for small class dicts."""
    return _core.ldim_bruteforce(cls["hypotheses"], cls["num_labels"])


def soa_label(cls, x):
    """Unique dimension-preserving label at instance x, or -1."""
    return _core.soa_label(cls["hypotheses"], cls["num_labels"], x)


def shattered_tree(cls):
    """Maximum-depth shattered mistake tree of a class dict."""
    return _core.shattered_tree(cls["hypotheses"], cls["num_labels"])


def check_symmetric(adversary, cls):
    """Verify generator symmetry on a class dict; returns (pass, h, c, detail)."""
    return _core.check_symmetric(adversary, cls["hypotheses"], cls["num_labels"])

"""Free Graev presentations of open subgroups over finite topological spaces."""

from ._core import (
    FinSpace,
    TopofreeError,
    classify,
    component_projection,
    decide_open,
    graev_to_markov,
    markov_to_graev,
    reduce_word,
    stratum_open_check,
    subgroup_basis,
    verify_certificate,
    wedge,
    __version__,
)

__all__ = [
    "FinSpace",
    "TopofreeError",
    "classify",
    "component_projection",
    "decide_open",
    "graev_to_markov",
    "markov_to_graev",
    "reduce_word",
    "stratum_open_check",
    "subgroup_basis",
    "verify_certificate",
    "wedge",
    "__version__",
]

"""Approximate coloring of k-colorable graphs."""

import json

from ._core import (
    Graph,
    GraphError,
    ParseError,
    alpha_k,
    alpha_k_value,
    f_exponent,
    gnp,
    independent_set,
    planted,
    read_dimacs,
    run_cli,
    verify_coloring,
    verify_independent_set,
    wedge_bounds,
    wedge_probability,
    write_dimacs,
)

__all__ = [
    "Graph",
    "GraphError",
    "ParseError",
    "alpha_k",
    "alpha_k_value",
    "color",
    "f_exponent",
    "gnp",
    "independent_set",
    "planted",
    "read_dimacs",
    "run_cli",
    "verify_coloring",
    "verify_independent_set",
    "wedge_bounds",
    "wedge_probability",
    "write_dimacs",
]


def color(graph, k, seed=0, repeats=3, eps=1e-3):
    """Color a graph promised to be k-colorable; returns the result record as a dict."""
    from ._core import combined_color_json

    return json.loads(combined_color_json(graph, k, seed=seed, repeats=repeats, eps=eps))

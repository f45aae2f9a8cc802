"""Nested, positive-weight quadrature and sparse cubature rules.

The heavy lifting lives in the compiled extension; this package re-exports
its public surface.
"""

from ._core import (
    CubatureRule,
    Distribution,
    GenzSpec,
    NestedFamily,
    QuadratureRule,
    clenshaw_curtis_rule,
    cumulative_bound,
    dim_poly,
    gauss_rule,
    genz_evaluate,
    genz_exact_uniform,
    genz_random_spec,
    load_rule,
    nested_family,
    reduce_general,
    reduce_negative,
    reduce_symmetric,
    reduction_step,
    restricted_partition_count,
    save_cubature,
    save_rule,
    smolyak_rule,
    smolyak_rule_from_family,
    tensor_rule,
    weights_from_nodes,
)

__all__ = [
    "CubatureRule",
    "Distribution",
    "GenzSpec",
    "NestedFamily",
    "QuadratureRule",
    "clenshaw_curtis_rule",
    "cumulative_bound",
    "dim_poly",
    "gauss_rule",
    "genz_evaluate",
    "genz_exact_uniform",
    "genz_random_spec",
    "load_rule",
    "nested_family",
    "reduce_general",
    "reduce_negative",
    "reduce_symmetric",
    "reduction_step",
    "restricted_partition_count",
    "save_cubature",
    "save_rule",
    "smolyak_rule",
    "smolyak_rule_from_family",
    "tensor_rule",
    "weights_from_nodes",
]

"""Exact certificates for maximal degeneracy points of toric GKZ systems."""

__version__ = "0.1.0"

from .fan import (  # noqa: E402
    Fan,
    FanError,
    kahler_cone,
    maximal_triangulation,
    point_config,
    primitive_collections,
    primitive_relations,
    property_star,
    validate,
)
from .groebner import (  # noqa: E402
    TermOrder,
    buchberger_complete,
    buchberger_verify,
    candidate_groebner_basis,
    check_lt_equals_sr,
    unique_index_certificate,
)
from .series import (  # noqa: E402
    local_series,
    numeric_period,
    torus_cycle_series,
    verify_max_degeneracy,
)

"""Exact finite-model engine for continuous multivalued maps and their singular homology."""

from mvhom.finspace import (
    ContMap,
    FinSpace,
    SpaceError,
    closure,
    discrete,
    is_closed_map,
    is_continuous,
    make_space,
    point_space,
    product,
    subspace,
)
from mvhom.corr import (
    Corr,
    CorrespondenceError,
    Validity,
    box,
    compose,
    constant,
    from_map,
    glue,
    image,
    mpath,
    pullback,
    pushforward,
    restrict,
    validate,
)

__version__ = "0.1.0"

__all__ = [
    "ContMap",
    "Corr",
    "CorrespondenceError",
    "FinSpace",
    "SpaceError",
    "Validity",
    "box",
    "closure",
    "compose",
    "constant",
    "discrete",
    "from_map",
    "glue",
    "image",
    "is_closed_map",
    "is_continuous",
    "make_space",
    "mpath",
    "point_space",
    "product",
    "pullback",
    "pushforward",
    "restrict",
    "subspace",
    "validate",
]

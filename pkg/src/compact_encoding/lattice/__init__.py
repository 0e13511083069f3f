from .cubic import CUBIC_SEEDS, build_cubic
from .graph import (
    FAMILIES,
    PLANAR_FAMILIES,
    Cell,
    Edge,
    Face,
    FermionicGraph,
    LatticeError,
    counts,
    euler_characteristic,
)
from .planar import (
    SQUARE_SEEDS,
    T488_SEEDS,
    build_fragment,
    build_square,
    build_surrounded,
    build_t488,
    build_triangle_tiling,
    corner_candidates,
    parallelogram_sites,
)
from .spec import LatticeSpec, build


def build_tiling(spec: LatticeSpec) -> FermionicGraph:
    """Build one of the uniform tilings (any planar family except square)."""
    if spec.family in ("square", "cubic"):
        raise LatticeError(f"{spec.family} is not a uniform tiling")
    return build(spec)


__all__ = [
    "CUBIC_SEEDS",
    "FAMILIES",
    "PLANAR_FAMILIES",
    "SQUARE_SEEDS",
    "T488_SEEDS",
    "Cell",
    "Edge",
    "Face",
    "FermionicGraph",
    "LatticeError",
    "LatticeSpec",
    "build",
    "build_cubic",
    "build_fragment",
    "build_square",
    "build_surrounded",
    "build_t488",
    "build_tiling",
    "build_triangle_tiling",
    "corner_candidates",
    "counts",
    "euler_characteristic",
    "parallelogram_sites",
]

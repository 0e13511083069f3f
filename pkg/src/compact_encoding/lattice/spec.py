"""Lattice specifications and the single ``build`` entry point."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .cubic import CUBIC_SEEDS, build_cubic
from .graph import FAMILIES, FermionicGraph, LatticeError
from .planar import (
    SQUARE_SEEDS,
    T488_SEEDS,
    build_fragment,
    build_square,
    build_surrounded,
    build_t488,
    build_triangle_tiling,
    finish,
    parallelogram_sites,
)

DEFAULT_SEEDS = {
    "square": SQUARE_SEEDS[0],
    "t488": T488_SEEDS[0],
    "cubic": "out",
}
SEEDS = {"square": SQUARE_SEEDS, "t488": T488_SEEDS, "cubic": tuple(CUBIC_SEEDS)}
_DIM_COUNT = {"square": 2, "t488": 2, "t6434": 2, "t4612": 2, "kagome": 2, "t31212": 2, "cubic": 3}


@dataclass
class LatticeSpec:
    """What to build. ``dims`` meaning depends on the family:

    square: vertex rows, cols. t488: cells along the two diagonals.
    t6434, t4612, kagome, t31212: parallelogram of big-polygon sites
    (ignored when ``sites`` or ``faces`` is given). cubic: cells per axis.
    """

    family: str
    dims: list[int] = field(default_factory=list)
    seed: str | None = None
    sites: list[list[int]] | None = None
    corners: int | list | None = None
    faces: list | None = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise LatticeError(f"unknown family {self.family!r}; expected one of {FAMILIES}")
        if self.seed is not None and self.seed not in SEEDS.get(self.family, ()):
            raise LatticeError(
                f"seed {self.seed!r} not valid for {self.family}; "
                f"choices: {SEEDS.get(self.family, ())}"
            )
        explicit = self.sites is not None or self.faces is not None
        if not explicit:
            if len(self.dims) != _DIM_COUNT[self.family]:
                raise LatticeError(
                    f"{self.family} needs {_DIM_COUNT[self.family]} dimensions, got {self.dims}"
                )
            if any((not isinstance(d, int)) or d < 1 for d in self.dims):
                raise LatticeError(f"dimensions must be integers >= 1, got {self.dims}")
        if self.corners is not None and self.family not in ("kagome", "t31212"):
            raise LatticeError("triangular corners only exist on kagome and t31212")
        if self.faces is not None and self.family not in ("t6434", "t4612"):
            raise LatticeError("explicit face lists are supported for t6434 and t4612 only")

    def to_json(self) -> dict:
        out: dict[str, Any] = {"family": self.family, "dims": list(self.dims)}
        if self.seed is not None:
            out["seed"] = self.seed
        for key in ("sites", "corners", "faces"):
            val = getattr(self, key)
            if val is not None:
                out[key] = val
        return out

    @classmethod
    def from_json(cls, data: Any) -> LatticeSpec:
        if not isinstance(data, dict):
            raise LatticeError("lattice spec must be a JSON object")
        unknown = set(data) - {"family", "dims", "seed", "sites", "corners", "faces"}
        if unknown:
            raise LatticeError(f"unknown spec keys: {sorted(unknown)}")
        if "family" not in data:
            raise LatticeError("lattice spec is missing 'family'")
        dims = data.get("dims", [])
        if not isinstance(dims, list):
            raise LatticeError("'dims' must be a list of integers")
        return cls(
            family=data["family"],
            dims=dims,
            seed=data.get("seed"),
            sites=data.get("sites"),
            corners=data.get("corners"),
            faces=data.get("faces"),
        )


def build(spec: LatticeSpec) -> FermionicGraph:
    fam = spec.family
    seed = spec.seed or DEFAULT_SEEDS.get(fam)
    if fam == "square":
        g = build_square(*spec.dims, seed=seed)
    elif fam == "t488":
        g = finish(build_t488(*spec.dims, seed=seed))
    elif fam == "cubic":
        g = build_cubic(*spec.dims, seed=seed)
    elif fam in ("t6434", "t4612"):
        if spec.faces is not None:
            g = build_fragment(fam, spec.faces)
        else:
            sites = spec.sites if spec.sites is not None else parallelogram_sites(*spec.dims)
            g = build_surrounded(fam, sites)
        g = finish(g)
    else:
        sites = spec.sites if spec.sites is not None else parallelogram_sites(*spec.dims)
        g = finish(build_triangle_tiling(fam, sites, spec.corners or 0))
    g.meta["spec"] = spec.to_json()
    return g

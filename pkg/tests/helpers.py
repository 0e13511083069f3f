"""Shared lattice instances for the test suite."""

from __future__ import annotations

import json
from functools import lru_cache

from compact_encoding.encoding import encode
from compact_encoding.homology import kernel_and_stabilizers
from compact_encoding.lattice import CUBIC_SEEDS, LatticeSpec, build

# One small instance per family (plus every cubic seed).
RELATION_SPECS = [
    {"family": "square", "dims": [4, 5]},
    {"family": "t488", "dims": [2, 2]},
    {"family": "t6434", "dims": [2, 2]},
    {"family": "t4612", "dims": [2, 2]},
    {"family": "kagome", "dims": [2, 2]},
    {"family": "t31212", "dims": [2, 2]},
] + [{"family": "cubic", "dims": [2, 2, 2], "seed": s} for s in CUBIC_SEEDS]

SMALL_SPECS = [
    {"family": "square", "dims": [2, 2]},
    {"family": "square", "dims": [2, 2], "seed": "even_origin"},
    {"family": "square", "dims": [3, 4]},
    {"family": "t488", "dims": [2, 2]},
    {"family": "t6434", "dims": [1, 1]},
    {"family": "t4612", "dims": [1, 1]},
    {"family": "kagome", "sites": [[0, 0], [1, 0]], "corners": 1},
    {"family": "t31212", "sites": [[0, 0]], "corners": 2},
    {"family": "cubic", "dims": [1, 1, 1]},
    {"family": "cubic", "dims": [2, 1, 1], "seed": "y_in"},
]

# the four dense-certification instances
CERT_SPECS = [
    {"family": "square", "dims": [2, 2]},
    {"family": "square", "dims": [2, 2], "seed": "even_origin"},
    {"family": "square", "dims": [2, 3]},
    {"family": "t6434", "faces": [["square", [0, 0], [1, 0]], ["small", [0, 0, "u"]]]},
]

KAGOME_SHAPES = {
    1: [[0, 0]],
    2: [[0, 0], [1, 0]],
    3: [[0, 0], [1, 0], [0, 1]],
    4: [[0, 0], [1, 0], [0, 1], [1, 1]],
    5: [[0, 0], [1, 0], [2, 0], [0, 1], [1, 1]],
}


def spec_id(spec: dict) -> str:
    parts = [spec["family"]]
    for key in ("dims", "seed", "sites", "corners"):
        if key in spec:
            parts.append(json.dumps(spec[key], separators=(",", "")).replace('"', ""))
    if "faces" in spec:
        parts.append("fragment")
    return "-".join(parts)


@lru_cache(maxsize=None)
def _cached(key: str):
    spec = LatticeSpec.from_json(json.loads(key))
    enc = encode(build(spec))
    return enc, kernel_and_stabilizers(enc)


def encoded(spec: dict):
    """``(encoding, homology report)`` for a spec dict, cached per session."""
    return _cached(json.dumps(spec, sort_keys=True))

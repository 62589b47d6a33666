"""Small built-in lattices and ray sets used by tests, docs, and demos.

Everything is rebuilt on each call; the constructions are cheap and the
callers sometimes mutate derived state, so no caching.
"""

from __future__ import annotations

import string
from importlib import resources

import numpy as np

from .core import FiniteOML, product, verify_oml
from .greechie import parse_greechie, paste
from .vectors import ContextHypergraph, parse_vectors


def _data_text(name: str) -> str:
    return (resources.files("omlkit") / "data" / name).read_text(encoding="utf-8")


def chain2() -> FiniteOML:
    """The two-element Boolean algebra."""
    leq = np.array([[1, 1], [0, 1]], dtype=bool)
    neg = np.array([1, 0], dtype=np.int64)
    return verify_oml(leq, neg, names=("0", "1"))


def boolean(k: int) -> FiniteOML:
    """The Boolean algebra with 2**k elements, k >= 1."""
    if k < 1:
        raise ValueError(f"need at least one atom, got {k}")
    if k == 1:
        return chain2()
    atoms = " ".join(f"p{i}" for i in range(1, k + 1))
    return paste(parse_greechie(atoms + "\n"))


def mo(k: int) -> FiniteOML:
    """k incompatible two-atom blocks glued at 0 and 1 (4k + 2 elements)."""
    if k < 1:
        raise ValueError(f"need at least one block, got {k}")
    if k > len(string.ascii_lowercase):
        raise ValueError(f"at most {len(string.ascii_lowercase)} blocks, got {k}")
    lines = "".join(f"{c} {c}2\n" for c in string.ascii_lowercase[:k])
    return paste(parse_greechie(lines))


def bowtie() -> FiniteOML:
    """Two three-atom blocks sharing one atom; the smallest non-Boolean
    lattice with a nontrivial centre."""
    return paste(parse_greechie(_data_text("bowtie.gd")))


def pentagon() -> FiniteOML:
    """Five three-atom blocks pasted in a loop; centre is trivial."""
    return paste(parse_greechie(_data_text("pentagon.gd")))


def b2xmo2() -> FiniteOML:
    """Product of the four-element Boolean algebra with mo(2)."""
    return product(boolean(2), mo(2))


def mo2xmo2() -> FiniteOML:
    """Product of mo(2) with itself; hosts the diagonal extension of mo(2)."""
    base = mo(2)
    return product(base, base)


def cabello18() -> ContextHypergraph:
    """Eighteen rational four-dimensional rays forming nine contexts with
    every ray in exactly two of them; no global section exists."""
    return parse_vectors(_data_text("cabello18.ksv"))


CORPUS = {
    "chain2": chain2,
    "boolean2": lambda: boolean(2),
    "boolean3": lambda: boolean(3),
    "boolean4": lambda: boolean(4),
    "mo2": lambda: mo(2),
    "mo3": lambda: mo(3),
    "mo4": lambda: mo(4),
    "bowtie": bowtie,
    "pentagon": pentagon,
    "b2xmo2": b2xmo2,
    "mo2xmo2": mo2xmo2,
}

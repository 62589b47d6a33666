"""Exact rational vector sets and their orthogonality hypergraphs.

Vectors are read from a ``dim=N`` header plus one vector per line and
canonicalised to primitive integer form (common denominator cleared,
divided by the gcd, first nonzero coordinate positive), so equality and
orthogonality are exact integer questions.  Contexts are the maximal
cliques of the orthogonality graph with exactly ``dim`` members;
smaller maximal cliques are counted but dropped.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import networkx as nx
import numpy as np

from .errors import DimensionMismatch, ParseError, ZeroVector


@dataclass(frozen=True)
class RationalVector:
    """A ray stored as a primitive integer tuple."""

    coords: tuple[int, ...]

    @property
    def name(self) -> str:
        return ",".join(str(c) for c in self.coords)

    def dot(self, other: "RationalVector") -> int:
        return sum(a * b for a, b in zip(self.coords, other.coords))

    def __repr__(self) -> str:
        return f"RationalVector({self.name})"


def canonical_ray(entries) -> RationalVector:
    """Scale a rational vector to primitive integers, first nonzero positive."""
    fracs = [Fraction(e) for e in entries]
    denom_lcm = 1
    for f in fracs:
        denom_lcm = denom_lcm * f.denominator // gcd(denom_lcm, f.denominator)
    ints = [int(f * denom_lcm) for f in fracs]
    g = 0
    for v in ints:
        g = gcd(g, v)
    if g == 0:
        raise ValueError("zero vector has no canonical ray")
    ints = [v // g for v in ints]
    first = next(v for v in ints if v != 0)
    if first < 0:
        ints = [-v for v in ints]
    return RationalVector(coords=tuple(ints))


@dataclass(frozen=True)
class ContextHypergraph:
    """Vertices, exact orthogonality, and the dim-sized maximal cliques."""

    dim: int
    vertices: tuple[str, ...]
    vectors: tuple[RationalVector, ...] | None
    orthogonal: np.ndarray  # bool, symmetric, hollow
    contexts: tuple[tuple[int, ...], ...]
    submaximal_cliques: int

    @property
    def n(self) -> int:
        return len(self.vertices)

    def vertex_index(self, name: str) -> int:
        try:
            return self.vertices.index(name)
        except ValueError:
            raise KeyError(f"no vertex named {name!r}") from None

    def contexts_of(self, v: int) -> tuple[int, ...]:
        return tuple(i for i, ctx in enumerate(self.contexts) if v in ctx)

    def __repr__(self) -> str:
        return (f"ContextHypergraph(dim={self.dim}, vertices={self.n}, "
                f"contexts={len(self.contexts)})")


def hypergraph_from_rays(dim: int, rays) -> ContextHypergraph:
    """Build the orthogonality hypergraph of canonical rays (deduplicated)."""
    unique: list[RationalVector] = []
    seen = set()
    for r in rays:
        if r.coords not in seen:
            seen.add(r.coords)
            unique.append(r)
    n = len(unique)
    ortho = np.zeros((n, n), dtype=bool)
    for i in range(n):
        for j in range(i + 1, n):
            if unique[i].dot(unique[j]) == 0:
                ortho[i, j] = ortho[j, i] = True
    g = nx.Graph()
    g.add_nodes_from(range(n))
    for i in range(n):
        for j in range(i + 1, n):
            if ortho[i, j]:
                g.add_edge(i, j)
    contexts = []
    submaximal = 0
    for clique in nx.find_cliques(g):
        if len(clique) == dim:
            contexts.append(tuple(sorted(clique)))
        else:
            submaximal += 1
    ortho.setflags(write=False)
    return ContextHypergraph(
        dim=dim,
        vertices=tuple(r.name for r in unique),
        vectors=tuple(unique),
        orthogonal=ortho,
        contexts=tuple(sorted(contexts)),
        submaximal_cliques=submaximal,
    )


def parse_vectors(text: str) -> ContextHypergraph:
    """Parse the ``dim=N`` header plus one rational vector per line.

    Rational entries may be integers or p/q fractions.  Scalar multiples
    collapse to one vertex; zero vectors and wrong-length lines are
    rejected with their line number.
    """
    dim = None
    rays: list[RationalVector] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if dim is None:
            if not line.startswith("dim"):
                raise ParseError("expected a dim=N header before any vectors", lineno)
            _, _, value = line.partition("=")
            try:
                dim = int(value.strip())
            except ValueError:
                raise ParseError(f"bad dimension {value.strip()!r}", lineno) from None
            if dim < 1:
                raise ParseError(f"dimension must be positive, got {dim}", lineno)
            if dim <= 2:
                warnings.warn(
                    f"dimension {dim} admits global valuations; contextuality "
                    "arguments need dim >= 3", stacklevel=2)
            continue
        tokens = line.split()
        if len(tokens) != dim:
            raise DimensionMismatch(
                f"expected {dim} entries, got {len(tokens)}", lineno)
        entries = []
        col = 1
        for tok in tokens:
            col = line.index(tok, col - 1) + 1
            try:
                entries.append(Fraction(tok))
            except (ValueError, ZeroDivisionError):
                raise ParseError(f"bad rational {tok!r}", lineno, col) from None
            col += len(tok)
        if all(e == 0 for e in entries):
            raise ZeroVector("zero vector cannot name a ray", lineno)
        rays.append(canonical_ray(entries))
    if dim is None:
        raise ParseError("missing dim=N header", 1)
    if not rays:
        raise ParseError("no vectors after the header", 1)
    return hypergraph_from_rays(dim, rays)

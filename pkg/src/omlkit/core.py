"""Finite orthomodular lattices as dense index tables.

Elements are the integers ``0..n-1``.  The order is a boolean matrix,
the complement a permutation array, and meet/join are precomputed
``n x n`` tables.  Everything is validated up front by ``verify_oml``
and frozen afterwards, so the rest of the package can index tables
without re-checking laws.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from .errors import NotALattice, NotOrtho, NotOrthomodular, SizeCap

DEFAULT_ELEMENT_CAP = 4096
ELEMENT_CAP_ENV = "OMLKIT_ELEMENT_CAP"


def element_cap() -> int:
    """Current element cap: the environment override or the default."""
    raw = os.environ.get(ELEMENT_CAP_ENV)
    if raw is None:
        return DEFAULT_ELEMENT_CAP
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{ELEMENT_CAP_ENV} must be an integer, got {raw!r}") from None
    if value < 2:
        raise ValueError(f"{ELEMENT_CAP_ENV} must be at least 2, got {value}")
    return value


@dataclass(frozen=True, eq=False)
class FiniteOML:
    """A validated finite orthomodular lattice.

    Instances compare by identity; they are only created through
    ``verify_oml`` and are immutable (the arrays are read-only).
    """

    names: tuple[str, ...]
    leq: np.ndarray   # bool, shape (n, n); leq[a, b] means a <= b
    neg: np.ndarray   # int, shape (n,); orthocomplement
    meet: np.ndarray  # int, shape (n, n)
    join: np.ndarray  # int, shape (n, n)
    zero: int
    one: int

    @property
    def n(self) -> int:
        return len(self.names)

    @property
    def elements(self) -> range:
        return range(self.n)

    def atoms(self) -> tuple[int, ...]:
        """Minimal nonzero elements, ascending."""
        counts = self.leq.sum(axis=0)
        return tuple(int(a) for a in np.flatnonzero(counts == 2))

    def le(self, a: int, b: int) -> bool:
        return bool(self.leq[a, b])

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"no element named {name!r}") from None

    def __repr__(self) -> str:
        return f"FiniteOML(n={self.n})"


def _first_true(mask: np.ndarray) -> tuple[int, ...] | None:
    """Lexicographically first index tuple where a boolean array is true."""
    hits = np.argwhere(mask)
    if len(hits) == 0:
        return None
    return tuple(int(v) for v in hits[0])


def verify_oml(leq, neg, names=None, cap: int | None = None) -> FiniteOML:
    """Validate an order matrix and complement map into a FiniteOML.

    Checks, in order: size cap, partial-order axioms, bounds, totality of
    meet and join, orthocomplementation, and the orthomodular law.  The
    first violated law raises with a lexicographically-first witness.
    """
    leq = np.asarray(leq, dtype=bool)
    if leq.ndim != 2 or leq.shape[0] != leq.shape[1]:
        raise NotALattice("shape", (), f"order matrix must be square, got {leq.shape}")
    n = leq.shape[0]
    if cap is None:
        cap = element_cap()
    if n > cap:
        raise SizeCap(n, cap)
    if n < 2:
        raise NotALattice("degenerate", (), "a bounded lattice needs distinct 0 and 1")

    neg = np.asarray(neg, dtype=np.int64)
    if neg.shape != (n,):
        raise NotOrtho("shape", (), f"complement map must have length {n}")
    if sorted(int(x) for x in neg) != list(range(n)):
        raise NotOrtho("permutation", (), "complement map must be a permutation of the elements")

    if names is None:
        names = tuple(f"e{i}" for i in range(n))
    else:
        names = tuple(str(s) for s in names)
        if len(names) != n:
            raise NotALattice("names", (), f"expected {n} names, got {len(names)}")
        if len(set(names)) != n:
            raise NotALattice("names", (), "element names must be unique")

    w = _first_true(~np.diag(leq).copy())
    if w is not None:
        raise NotALattice("reflexivity", w, f"element {names[w[0]]} is not below itself")
    w = _first_true(leq & leq.T & ~np.eye(n, dtype=bool))
    if w is not None:
        raise NotALattice("antisymmetry", w,
                          f"elements {names[w[0]]} and {names[w[1]]} are below each other")
    # composition: reach[i, k] = exists j with i<=j and j<=k
    reach = (leq.astype(np.uint8) @ leq.astype(np.uint8)) > 0
    w = _first_true(reach & ~leq)
    if w is not None:
        i, k = w
        j = int(np.flatnonzero(leq[i] & leq[:, k])[0])
        raise NotALattice("transitivity", (i, j, k),
                          f"{names[i]} <= {names[j]} <= {names[k]} but "
                          f"{names[i]} <= {names[k]} is missing")

    below_all = np.flatnonzero(leq.all(axis=1))
    above_all = np.flatnonzero(leq.all(axis=0))
    if len(below_all) != 1 or len(above_all) != 1:
        raise NotALattice("bounds", (), "lattice must have a unique bottom and top")
    zero, one = int(below_all[0]), int(above_all[0])
    if zero == one:
        raise NotALattice("degenerate", (zero,), "bottom and top coincide")

    # meet(a, b) is the element whose down-set equals downset(a) & downset(b)
    down_key = {leq[:, i].tobytes(): i for i in range(n)}
    up_key = {leq[i, :].tobytes(): i for i in range(n)}
    meet = np.empty((n, n), dtype=np.int64)
    join = np.empty((n, n), dtype=np.int64)
    for a in range(n):
        col_a = leq[:, a]
        row_a = leq[a, :]
        for b in range(a, n):
            m = down_key.get((col_a & leq[:, b]).tobytes())
            if m is None:
                raise NotALattice("meet", (a, b),
                                  f"elements {names[a]} and {names[b]} have no meet")
            j = up_key.get((row_a & leq[b, :]).tobytes())
            if j is None:
                raise NotALattice("join", (a, b),
                                  f"elements {names[a]} and {names[b]} have no join")
            meet[a, b] = meet[b, a] = m
            join[a, b] = join[b, a] = j

    w = _first_true(neg[neg] != np.arange(n))
    if w is not None:
        raise NotOrtho("involution", w,
                       f"complement of complement of {names[w[0]]} differs from it")
    w = _first_true(leq & ~leq[neg][:, neg].T)
    if w is not None:
        a, b = w
        raise NotOrtho("order-reversing", (a, b),
                       f"{names[a]} <= {names[b]} but complements are not reversed")
    idx = np.arange(n)
    w = _first_true(meet[idx, neg] != zero)
    if w is not None:
        raise NotOrtho("complement-meet", w,
                       f"element {names[w[0]]} meets its complement above 0")
    w = _first_true(join[idx, neg] != one)
    if w is not None:
        raise NotOrtho("complement-join", w,
                       f"element {names[w[0]]} joins its complement below 1")

    # orthomodular law: a <= b implies b = a | (b & ~a)
    recover = join[idx[:, None], meet[np.arange(n)[None, :], neg[:, None]]]
    w = _first_true(leq & (recover != idx[None, :]))
    if w is not None:
        a, b = w
        raise NotOrthomodular(
            "orthomodular", (a, b),
            f"{names[a]} <= {names[b]} but "
            f"{names[b]} != {names[a]} v ({names[b]} ^ ~{names[a]})")

    for arr in (leq, neg, meet, join):
        arr.setflags(write=False)
    return FiniteOML(names=names, leq=leq, neg=neg, meet=meet, join=join, zero=zero, one=one)


def commutes(L: FiniteOML, a: int, b: int) -> bool:
    """True when a = (a ^ b) v (a ^ ~b)."""
    return int(L.join[L.meet[a, b], L.meet[a, L.neg[b]]]) == a


@dataclass(frozen=True)
class TripleReport:
    """Distributivity facts for one ordered triple."""

    a: int
    b: int
    c: int
    holds_d: bool      # (a v b) ^ c == (a ^ c) v (b ^ c)
    holds_dstar: bool  # (a ^ b) v c == (a v c) ^ (b v c)
    holds_t: bool      # D and D* under every permutation of (a, b, c)


def _holds_d(L: FiniteOML, a: int, b: int, c: int) -> bool:
    return int(L.meet[L.join[a, b], c]) == int(L.join[L.meet[a, c], L.meet[b, c]])


def _holds_dstar(L: FiniteOML, a: int, b: int, c: int) -> bool:
    return int(L.join[L.meet[a, b], c]) == int(L.meet[L.join[a, c], L.join[b, c]])


_PERMS = ((0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0))


def triple_check(L: FiniteOML, a: int, b: int, c: int) -> TripleReport:
    """Evaluate the distributive laws D and D* and their symmetrized form."""
    t = (a, b, c)
    holds_t = all(
        _holds_d(L, t[p], t[q], t[r]) and _holds_dstar(L, t[p], t[q], t[r])
        for p, q, r in _PERMS
    )
    return TripleReport(a, b, c, _holds_d(L, a, b, c), _holds_dstar(L, a, b, c), holds_t)


def center(L: FiniteOML) -> tuple[int, ...]:
    """Elements forming a symmetrized-distributive triple with every pair.

    The result is always a Boolean subalgebra carrier containing 0 and 1;
    this is asserted rather than trusted.
    """
    members = []
    for z in L.elements:
        # commuting with everything is necessary (take b = ~a in the D law),
        # so use it as a cheap prefilter before the full triple sweep
        if not all(commutes(L, z, a) for a in L.elements):
            continue
        if all(triple_check(L, a, b, z).holds_t for a in L.elements for b in L.elements):
            members.append(z)
    out = tuple(members)
    assert L.zero in out and L.one in out
    got = set(out)
    for x in out:
        assert int(L.neg[x]) in got
        for y in out:
            assert int(L.meet[x, y]) in got and int(L.join[x, y]) in got
    return out


def product(L1: FiniteOML, L2: FiniteOML, cap: int | None = None) -> FiniteOML:
    """Componentwise product lattice; names are '(x,y)' pairs."""
    if cap is None:
        cap = element_cap()
    n1, n2 = L1.n, L2.n
    if n1 * n2 > cap:
        raise SizeCap(n1 * n2, cap)
    leq = np.kron(L1.leq.astype(np.uint8), L2.leq.astype(np.uint8)).astype(bool)
    neg = (L1.neg[:, None] * n2 + L2.neg[None, :]).ravel()
    names = tuple(
        f"({L1.names[a]},{L2.names[b]})" for a in range(n1) for b in range(n2)
    )
    return verify_oml(leq, neg, names, cap=cap)

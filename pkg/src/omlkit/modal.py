"""Boolean saturation, modal extensions, and actualization of valuations.

``saturate`` equips a finite orthomodular lattice with the necessity
operator sending each element to the largest central element below it
(finite lattices always have one) and its dual possibility operator.
A modal extension re-hosts the lattice inside a saturated one through a
validated embedding; the possibility space is the central Boolean
subalgebra its possibility operator generates.  Valuations of that
subalgebra can be pushed back into context valuations (``actualize``),
context valuations extended over it (``born_extend``), and global
sections compressed onto it (``global_actualization_check``).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .boolalg import (BooleanSubalgebra, TwoValuedHom, extend_hom,
                      extend_to_maximal, filter_generate, generated_subalgebra,
                      subalgebra)
from .core import FiniteOML, center, product, verify_oml
from .errors import (EmbeddingInvalid, IncompatibleGlobalSection, NotInW,
                     PreconditionPossibility, ValidationError)
from .sheaf import Section, check_section, principal_poset, principal_section


@dataclass(frozen=True, eq=False)
class ModalStructure:
    """A lattice with its necessity and possibility tables."""

    lattice: FiniteOML
    box: np.ndarray
    diamond: np.ndarray
    central: tuple[int, ...]

    def __repr__(self) -> str:
        return f"ModalStructure(n={self.lattice.n}, central={len(self.central)})"


def saturate(L: FiniteOML) -> ModalStructure:
    """Attach box(a) = largest central element below a, diamond = dual."""
    z = center(L)
    box = np.empty(L.n, dtype=np.int64)
    for a in L.elements:
        best = L.zero
        for c in z:
            if L.leq[c, a]:
                best = int(L.join[best, c])
        assert best in z and L.leq[best, a]
        box[a] = best
    diamond = np.array([int(L.neg[box[int(L.neg[a])]]) for a in L.elements],
                       dtype=np.int64)
    for a in L.elements:
        # diamond really is the least central element above a
        assert diamond[a] in z and L.leq[a, diamond[a]]
        assert all(not L.leq[a, c] or L.leq[diamond[a], c] for c in z)
    box.setflags(write=False)
    diamond.setflags(write=False)
    M = ModalStructure(lattice=L, box=box, diamond=diamond, central=z)
    report = check_modal_axioms(M)
    assert report.ok, [r for r in report.results if not r.passed]
    return M


@dataclass(frozen=True)
class AxiomResult:
    name: str
    statement: str
    passed: bool
    witness: dict | None


@dataclass(frozen=True)
class ModalAxiomReport:
    results: tuple[AxiomResult, ...]

    @property
    def ok(self) -> bool:
        return all(r.passed for r in self.results)


def check_modal_axioms(M: ModalStructure) -> ModalAxiomReport:
    """Evaluate the saturation axioms exhaustively, first witness per axiom.

    The box table may be anything; this reports which axioms it breaks.
    Pairwise axioms run as whole-table comparisons; a failing table's
    first row-major entry is the witness, so witnesses are the
    lexicographically least failing (x, y).
    """
    L, box = M.lattice, M.box
    names = L.names
    idx = np.arange(L.n)
    results = []

    try:
        verify_oml(np.array(L.leq), np.array(L.neg), names)
        results.append(AxiomResult("S1", "orthomodular lattice axioms", True, None))
    except ValidationError as e:
        results.append(AxiomResult("S1", "orthomodular lattice axioms", False,
                                   {"law": e.law, "witness": e.witness}))

    def report(name, statement, ok):
        if ok.ndim == 0:
            witness = None if bool(ok) else {"x": names[L.one]}
        elif ok.all():
            witness = None
        else:
            where = np.argwhere(~ok)[0]
            witness = {"x": names[int(where[0])]}
            if ok.ndim == 2:
                witness["y"] = names[int(where[1])]
        results.append(AxiomResult(name, statement, witness is None, witness))

    report("S2", "box(x) <= x", L.leq[box, idx])
    report("S3", "box(1) = 1", np.asarray(box[L.one] == L.one))
    report("S4", "box(box(x)) = box(x)", box[box] == box)
    report("S5", "box(x ^ y) = box(x) ^ box(y)",
           box[L.meet] == L.meet[np.ix_(box, box)])
    # tables indexed [x, y]: meet and join are symmetric, so row-picking
    # by box[x] keeps the orientation
    report("S6", "y = (y ^ box(x)) v (y ^ ~box(x))",
           L.join[L.meet[box], L.meet[L.neg[box]]] == idx[None, :])
    report("S7", "box(x v box(y)) = box(x) v box(y)",
           box[L.join[:, box]] == L.join[np.ix_(box, box)])
    report("S8", "box(~x v (y ^ x)) <= ~box(x) v box(y)",
           L.leq[box[L.join[L.neg[idx][:, None], L.meet]],
                 L.join[L.neg[box][:, None], box[None, :]]])
    return ModalAxiomReport(results=tuple(results))


@dataclass(frozen=True, eq=False)
class ModalExtension:
    """A saturated host together with the validated embedding into it."""

    base: FiniteOML
    spec: str
    structure: ModalStructure
    embed: tuple[int, ...]

    @property
    def host(self) -> FiniteOML:
        return self.structure.lattice

    def embed_carrier(self, xs) -> tuple[int, ...]:
        return tuple(sorted(self.embed[x] for x in xs))

    def __repr__(self) -> str:
        return f"ModalExtension({self.spec}, base={self.base.n}, host={self.host.n})"


def _validate_embedding(base: FiniteOML, host: FiniteOML, embed) -> tuple[int, ...]:
    embed = tuple(int(e) for e in embed)
    if len(embed) != base.n:
        raise EmbeddingInvalid("shape", (), "embedding must cover every base element")
    for a in range(base.n):
        for b in range(base.n):
            if host.meet[embed[a], embed[b]] != embed[base.meet[a, b]]:
                raise EmbeddingInvalid(
                    "meet", (base.names[a], base.names[b]), "meet not preserved")
    for a in range(base.n):
        for b in range(base.n):
            if host.join[embed[a], embed[b]] != embed[base.join[a, b]]:
                raise EmbeddingInvalid(
                    "join", (base.names[a], base.names[b]), "join not preserved")
    for a in range(base.n):
        if host.neg[embed[a]] != embed[base.neg[a]]:
            raise EmbeddingInvalid(
                "complement", (base.names[a],),
                f"complement not preserved at {base.names[a]}")
    if len(set(embed)) != base.n:
        raise EmbeddingInvalid("injective", (), "embedding must be injective")
    return embed


def modal_extend(L: FiniteOML, spec: str = "identity",
                 factor: FiniteOML | None = None, embed=None) -> ModalExtension:
    """Build a saturated host around L.

    ``identity`` saturates L itself; ``diagonal:k`` saturates the k-fold
    power with the diagonal embedding; ``product`` needs an explicit
    Boolean factor and embedding, which very few maps survive.
    """
    if spec == "identity":
        host = L
        emb = tuple(range(L.n))
    elif spec.startswith("diagonal:"):
        try:
            k = int(spec.split(":", 1)[1])
        except ValueError:
            raise ValueError(f"bad diagonal arity in {spec!r}") from None
        if k < 1:
            raise ValueError(f"diagonal arity must be positive, got {k}")
        host = L
        for _ in range(k - 1):
            host = product(host, L)
        emb = []
        for a in range(L.n):
            e = a
            for _ in range(k - 1):
                e = e * L.n + a
            emb.append(e)
        emb = tuple(emb)
    elif spec == "product":
        if factor is None or embed is None:
            raise ValueError("product extension needs factor= and embed=")
        host = product(L, factor)
        emb = tuple(int(e) for e in embed)
    else:
        raise ValueError(f"unknown extension spec {spec!r}")
    emb = _validate_embedding(L, host, emb)
    return ModalExtension(base=L, spec=spec, structure=saturate(host), embed=emb)


@dataclass(frozen=True, eq=False)
class PossibilitySpace:
    """The central Boolean subalgebra generated by all diamond(embedded) values."""

    extension: ModalExtension
    algebra: BooleanSubalgebra

    def __repr__(self) -> str:
        return f"PossibilitySpace(size={len(self.algebra)})"


def possibility_space(E: ModalExtension) -> PossibilitySpace:
    M = E.structure
    gens = sorted({int(M.diamond[E.embed[p]]) for p in E.base.elements})
    alg = generated_subalgebra(M.lattice, gens)
    central = set(M.central)
    for x in alg.carrier:
        assert x in central, "possibility space escaped the centre"
    return PossibilitySpace(extension=E, algebra=alg)


@dataclass(frozen=True, eq=False)
class PossibilitySection:
    """A two-valued hom on the possibility space."""

    space: PossibilitySpace
    hom: TwoValuedHom

    def value(self, x: int) -> int:
        return self.hom.value(x)

    def __repr__(self) -> str:
        host = self.space.extension.host
        return f"PossibilitySection(true_atom={host.names[self.hom.true_atom]})"


def possibility_sections(S: PossibilitySpace) -> tuple[PossibilitySection, ...]:
    """Every valuation of the possibility space, one per atom."""
    from .boolalg import homs_to_2
    return tuple(PossibilitySection(space=S, hom=h) for h in homs_to_2(S.algebra))


def actualize(E: ModalExtension, W: BooleanSubalgebra, q: int,
              nu: PossibilitySection) -> Section:
    """Turn a possibility valuation with nu(diamond q) = 1 into a context
    valuation over the span of W and the possibility space that makes q
    actual and restricts back to nu.
    """
    M = E.structure
    dia = int(M.diamond[E.embed[q]])
    if q not in W:
        raise NotInW("membership", (E.base.names[q],),
                     f"{E.base.names[q]} is outside the context {W.label()}")
    space = nu.space.algebra
    if nu.hom.value(dia) != 1:
        raise PreconditionPossibility(
            "possibility", (E.base.names[q],),
            f"the chosen valuation gives diamond({E.base.names[q]}) = 0")
    span = generated_subalgebra(
        M.lattice, set(E.embed_carrier(W.carrier)) | set(space.carrier))
    seeds = tuple(nu.hom.ultrafilter().members) + (E.embed[q],)
    lifted = filter_generate(span, seeds)
    assert lifted.proper, "possibility precondition must keep the filter proper"
    hom = extend_to_maximal(lifted).two_valued_hom()
    P = principal_poset(span)
    nu_prime = principal_section(P, P.n - 1, hom)

    assert hom.value(E.embed[q]) == 1
    assert hom.restrict(space).true_atom == nu.hom.true_atom
    space_node = P.node_index(space.label())
    for child in P.down(space_node):
        expected = P.restrict_label(space_node, M.lattice.names[nu.hom.true_atom], child)
        assert nu_prime.choice_at(child) == expected
    return nu_prime


def born_extend(E: ModalExtension, s: Section) -> Section:
    """Extend a principal context valuation over the possibility space.

    ``s`` must be a principal section over a context of the base lattice;
    the result is the principal section over the span of the embedded
    context and the possibility space that restricts back to ``s``.
    """
    P_base = s.poset
    if P_base.kind != "lattice" or P_base.host is not E.base:
        raise ValueError("the section must live over the base lattice")
    tops = [w for w in s.domain
            if not any(P_base.leq[w, v] and v != w for v in s.domain)]
    if len(tops) != 1:
        raise ValueError("extension needs a principal section (single top node)")
    w_idx = tops[0]
    f = s.hom_at(w_idx)
    W = P_base.nodes[w_idx].subalg

    M = E.structure
    image = subalgebra(M.lattice, E.embed_carrier(W.carrier))
    f_image = TwoValuedHom(domain=image, true_atom=E.embed[f.true_atom])
    space = possibility_space(E).algebra
    span = generated_subalgebra(
        M.lattice, set(image.carrier) | set(space.carrier))
    lifted = extend_hom(f_image, span)
    P = principal_poset(span)
    nu_prime = principal_section(P, P.n - 1, lifted)
    for x in W.carrier:
        assert lifted.value(E.embed[x]) == f.value(x)
    return nu_prime


def global_actualization_check(E: ModalExtension, tau: Section) -> PossibilitySection:
    """Compress a global section onto the possibility space and verify
    that both agree on every node's overlap with it.

    Conflicting overlap values raise IncompatibleGlobalSection; on a
    lattice with any global section the construction always succeeds.
    """
    P_base = tau.poset
    if P_base.kind != "lattice" or P_base.host is not E.base:
        raise ValueError("the section must live over the base lattice")
    if tuple(tau.domain) != tuple(range(P_base.n)):
        raise ValueError("a global section must cover every node")
    report = check_section(tau)
    if not report.ok:
        v = report.violations[0]
        raise IncompatibleGlobalSection(v.law, v.witness, v.message)

    M = E.structure
    poss = possibility_space(E)
    space = poss.algebra
    space_set = space.member_set
    base_of = {E.embed[x]: x for x in E.base.elements}
    values: dict[int, int] = {}
    source: dict[int, str] = {}
    for w in tau.domain:
        node = P_base.nodes[w]
        hom = tau.hom_at(w)
        for x in node.subalg.carrier:
            ex = E.embed[x]
            if ex not in space_set:
                continue
            v = hom.value(x)
            if values.get(ex, v) != v:
                raise IncompatibleGlobalSection(
                    "overlap", (M.lattice.names[ex], source[ex], node.label),
                    f"nodes {source[ex]} and {node.label} disagree on "
                    f"{M.lattice.names[ex]}")
            values[ex] = v
            source.setdefault(ex, node.label)

    seeds = [x for x, v in sorted(values.items()) if v == 1]
    seeds += [int(M.lattice.neg[x]) for x, v in sorted(values.items()) if v == 0]
    lifted = filter_generate(space, seeds)
    if not lifted.proper:
        raise IncompatibleGlobalSection(
            "filter", tuple(sorted(values)),
            "the overlap values generate an improper filter")
    hom = extend_to_maximal(lifted).two_valued_hom()
    for x, v in values.items():
        assert hom.value(x) == v
    nu = PossibilitySection(space=poss, hom=hom)
    # nodewise comparison: tau and nu agree on every node's overlap
    for w in tau.domain:
        node = P_base.nodes[w]
        hom_w = tau.hom_at(w)
        for x in node.subalg.carrier:
            ex = E.embed[x]
            if ex in space_set:
                assert hom_w.value(x) == nu.value(ex)
    return nu

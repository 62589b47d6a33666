"""Acceptance gate: eight checks with stated runtime budgets.

Each test prints one summary line; together they are the release bar
for the package.  The oracles come from oracles.py and are written
independently of the library internals they judge.
"""

import importlib.resources
import os
import subprocess
import sys
import time

from omlkit import (actualize, born_extend, build_poset, center,
                    check_modal_axioms, enumerate_blocks,
                    enumerate_subalgebras, global_actualization_check,
                    modal_extend, possibility_sections, possibility_space,
                    principal_section, product, saturate, solve_global)
from omlkit.corpus import CORPUS, boolean, cabello18, mo
from oracles import (center_oracle, hypergraph_valuation_count_oracle,
                     lattice_valuation_count_oracle, subalgebra_carriers_oracle)

LATTICE_NAMES = [n for n in CORPUS if n != "cabello"]


def _report(num, label, elapsed, budget, ok=True):
    verdict = "PASS" if ok else "FAIL"
    print(f"criterion {num} ({label}): {verdict} in {elapsed:.2f}s "
          f"(budget {budget:.0f}s)")
    assert ok
    assert elapsed < budget, f"criterion {num} overran: {elapsed:.2f}s"


def test_criterion_1_no_global_valuation_for_18_rays():
    h = cabello18()
    t0 = time.perf_counter()
    result = solve_global(build_poset(h, mode="blocks"))
    solver_dt = time.perf_counter() - t0
    assert not result.sat and result.sections == ()

    t0 = time.perf_counter()
    count = hypergraph_valuation_count_oracle(h)
    oracle_dt = time.perf_counter() - t0
    assert count == 0
    assert 2 ** h.n <= 2 ** 18

    _report(1, "18-ray UNSAT vs exhaustive oracle",
            solver_dt + oracle_dt, 5 + 60,
            ok=(solver_dt < 5 and oracle_dt < 60))


def test_criterion_2_positive_control_mo2():
    t0 = time.perf_counter()
    L = mo(2)
    result = solve_global(build_poset(L, mode="all"), enumerate_all=True)
    dt = time.perf_counter() - t0
    ok = (result.sat and len(result.sections) == 4
          and lattice_valuation_count_oracle(L) == 4)
    _report(2, "MO2 SAT with exactly 4 sections", dt, 1, ok=ok)


def test_criterion_3_axiom_suite():
    suite = [boolean(1), boolean(2), boolean(3), boolean(4),
             mo(1), mo(2), mo(3), mo(4),
             CORPUS["bowtie"](), CORPUS["pentagon"](),
             product(boolean(2), mo(2)),
             modal_extend(mo(2), "diagonal:2").host]
    t0 = time.perf_counter()
    ok = True
    for L in suite:
        report = check_modal_axioms(saturate(L))
        ok = ok and report.ok and all(r.passed for r in report.results)
    dt = time.perf_counter() - t0
    _report(3, "box axioms hold after saturation", dt, 10, ok=ok)


def _actualization_sweep():
    """Yield (extension, host-or-base lattice) pairs within the size cap."""
    for name in LATTICE_NAMES:
        L = CORPUS[name]()
        if L.n <= 36:
            yield modal_extend(L, "identity")
    yield modal_extend(mo(2), "diagonal:2")


def test_criterion_4_actualization_postconditions():
    t0 = time.perf_counter()
    runs = 0
    for E in _actualization_sweep():
        L = E.base
        S = possibility_space(E)
        sections = possibility_sections(S)
        dia = E.structure.diamond
        for W in enumerate_blocks(L):
            for q in W.carrier:
                if q == 0:
                    continue
                dq = int(dia[E.embed[q]])
                for nu in sections:
                    if nu.value(dq) != 1:
                        continue
                    out = actualize(E, W, q, nu)  # asserts internally too
                    hom = out.hom_at(out.domain[-1])
                    assert hom.value(E.embed[q]) == 1
                    for x in S.algebra.carrier:
                        assert hom.value(x) == nu.value(x)
                    runs += 1
    dt = time.perf_counter() - t0
    _report(4, f"actualize postconditions ({runs} runs)", dt, 30)


def test_criterion_5_born_extension_restriction():
    t0 = time.perf_counter()
    runs = 0
    for E in _actualization_sweep():
        L = E.base
        P = build_poset(L, mode="all")
        for w, node in enumerate(P.nodes):
            for atom in node.atom_labels:
                s = principal_section(P, w, atom)
                out = born_extend(E, s)
                hom = out.hom_at(out.domain[-1])
                for x in node.subalg.carrier:
                    assert hom.value(E.embed[x]) == s.hom_at(w).value(x)
                runs += 1
    dt = time.perf_counter() - t0
    _report(5, f"born_extend restricts back ({runs} runs)", dt, 30)


def test_criterion_6_global_section_roundtrip():
    t0 = time.perf_counter()
    for name in LATTICE_NAMES:
        L = CORPUS[name]()
        E = modal_extend(L, "identity")
        S = possibility_space(E)
        P = build_poset(L, mode="all")
        result = solve_global(P, enumerate_all=True)
        assert result.sat, name  # every lattice in the corpus admits sections
        for tau in result.sections:
            nu = global_actualization_check(E, tau)
            for pos, w in enumerate(tau.domain):
                sub = P.nodes[w].subalg
                hom = tau.hom_at(w)
                for x in sub.carrier:
                    if x in S.algebra:
                        assert hom.value(x) == nu.value(x)
    # the lone UNSAT instance has no global section to round-trip
    unsat = solve_global(build_poset(cabello18(), mode="blocks"),
                         enumerate_all=True)
    assert not unsat.sat and unsat.sections == ()
    dt = time.perf_counter() - t0
    _report(6, "global sections compress and agree nodewise", dt, 30)


def test_criterion_7_oracle_equivalence():
    t0 = time.perf_counter()
    for name in LATTICE_NAMES:
        L = CORPUS[name]()
        if L.n > 16:
            continue
        got = sorted((s.carrier for s in enumerate_subalgebras(L)),
                     key=lambda c: (len(c), c))
        assert got == list(subalgebra_carriers_oracle(L)), name
        assert list(center(L)) == list(center_oracle(L)), name
        sections = solve_global(build_poset(L, mode="all"),
                                enumerate_all=True).sections
        assert len(sections) == lattice_valuation_count_oracle(L), name
    dt = time.perf_counter() - t0
    _report(7, "library matches independent oracles", dt, 60)


def test_criterion_8_cli_determinism():
    data = str(importlib.resources.files("omlkit") / "data")
    mo2 = os.path.join(data, "mo2.gd")
    bowtie = os.path.join(data, "bowtie.gd")
    pentagon = os.path.join(data, "pentagon.gd")
    cabello = os.path.join(data, "cabello18.ksv")
    commands = [
        ("check", mo2), ("check", cabello),
        ("blocks", bowtie), ("blocks", cabello),
        ("center", bowtie),
        ("solve", pentagon, "--enumerate-all", "16"),
        ("solve", cabello),
        ("modal", bowtie),
        ("actualize", bowtie, "--context", "0", "--prop", "c", "--nu", "0"),
        ("export", mo2), ("export", cabello),
        ("check", mo2, "--format", "structured"),
        ("solve", mo2, "--format", "structured", "--enumerate-all", "8"),
    ]
    t0 = time.perf_counter()
    ok = True
    for argv in commands:
        cmd = [sys.executable, "-m", "omlkit.cli", *argv]
        a = subprocess.run(cmd, capture_output=True)
        b = subprocess.run(cmd, capture_output=True)
        ok = ok and a.returncode == b.returncode == 0 and a.stdout == b.stdout
    for workers in ("2", "4"):
        base = [sys.executable, "-m", "omlkit.cli", "solve", pentagon,
                "--enumerate-all", "16"]
        one = subprocess.run(base + ["--workers", "1"], capture_output=True)
        many = subprocess.run(base + ["--workers", workers], capture_output=True)
        ok = ok and one.stdout == many.stdout and many.returncode == 0
    dt = time.perf_counter() - t0
    _report(8, "CLI output is byte-stable", dt, 120, ok=ok)

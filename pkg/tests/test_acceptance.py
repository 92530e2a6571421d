"""Acceptance gate: nine criteria, one PASS/FAIL line each.

Run `pytest tests/test_acceptance.py -v -s` to watch the lines appear;
without -s the line of a failing criterion still shows up in the
captured output of the failing test.  Each criterion carries a pinned
runtime budget and its tolerances inline.
"""

import functools
import itertools
import random
import time
from fractions import Fraction

import numpy as np

from legcob.braids import BraidWord, closure_report
from legcob.errors import DomainError
from legcob.exactseq import filling_polynomial, les_solve, \
    zero_surgery_update
from legcob.front import classical_invariants, parse_front
from legcob.geography import classical_fillable, realize
from legcob.gfnum import (reeb_chords, shifted_unknot_family, spin,
                          sym_eigenvalues, unknot_family)
from legcob.gfnum import _diff_hessian, _diff_value
from legcob.laurent import LaurentPoly, decompose, parse_poly, \
    tb_from_polynomial
from legcob.moves import apply_move, isotopy_candidates, trace_summary
from legcob.rulings import enumerate_rulings
from legcob.whitehead import whitehead_double

TREFOIL = "L1 L2 X3 X3 X3 R2 R1"
ZIGZAG = "L1 L2 R1 L1 R2 R1"  # doubly stabilized unknot, tb -3


def criterion(num, name, budget):
    """Wrap a test so it prints `criterion N (name): PASS|FAIL` and
    enforces the runtime budget in seconds."""
    def deco(fn):
        @functools.wraps(fn)
        def wrapper():
            t0 = time.perf_counter()
            try:
                fn()
                dt = time.perf_counter() - t0
                assert dt < budget, \
                    f"runtime {dt:.2f}s over budget {budget}s"
            except BaseException:
                print(f"criterion {num} ({name}): FAIL")
                raise
            print(f"criterion {num} ({name}): PASS in {dt:.2f}s "
                  f"(budget {budget}s)")
        return wrapper
    return deco


@criterion(1, "duality gate", 5.0)
def test_criterion_1_duality_gate():
    for n in range(2, 7):
        assert decompose(parse_poly(f"t^{n} + t^-2"), n) == []
    assert decompose(parse_poly("2 + t"), 1)
    rng = random.Random(11)
    for _ in range(1000):
        n = rng.randint(1, 6)
        poly = LaurentPoly({rng.randint(-3, n + 3): rng.randint(1, 3)
                            for _ in range(rng.randint(1, 5))})
        results = decompose(poly, n)
        for q, p in results:
            assert q + p + p.reflect(n - 1) == poly
            assert all(0 <= d <= n for d in q.coeffs)
            assert q.coeff(n) >= 1
        if results:
            # decomposable forces the mirror law away from the window
            for d in poly.coeffs:
                if d < -1 or d > n:
                    assert poly.coeff(d) == poly.coeff(n - 1 - d)


@criterion(2, "geography realization", 30.0)
def test_criterion_2_geography_realization():
    rng = random.Random(23)
    for _ in range(500):
        n = rng.randint(2, 6)
        q = {n: 1}
        for _ in range(rng.randint(0, 4)):
            d = rng.randint(1, n - 1)
            q[d] = q.get(d, 0) + rng.randint(1, 3)
        p = {}
        for _ in range(rng.randint(0, 3)):
            d = rng.randint(n // 2, n + 3)
            p[d] = p.get(d, 0) + rng.randint(1, 2)
        qpoly, ppoly = LaurentPoly(q), LaurentPoly(p)
        target = qpoly + ppoly + ppoly.reflect(n - 1)
        plan = realize(target, n)
        assert plan.verified()
        assert plan.recomposed == target  # exact integer equality


@criterion(3, "classical fillable geography", 1.0)
def test_criterion_3_classical_fillable():
    for n in (3, 5, 7):
        for tau in range(-9, 10, 2):
            poly, plan = classical_fillable(n, tau)
            assert tb_from_polynomial(poly, n) == tau
            assert plan.verified()
    assert str(classical_fillable(5, 3)[0]) == "t^5 + 2t^4 + 2"


@criterion(4, "clasped doubles", 5.0)
def test_criterion_4_clasped_doubles():
    bases = ("L1 R1", ZIGZAG, TREFOIL)
    assert [classical_invariants(parse_front(w))["tb"] for w in bases] \
        == [-1, -3, 1]
    for word in bases:
        diagram, trace = whitehead_double(parse_front(word))
        inv = classical_invariants(diagram)
        assert inv["tb"] == 1
        assert inv["rotation"] == [0]
        assert trace_summary(trace)["genus"] == Fraction(1)
    assert filling_polynomial(1, 1) == parse_poly("2 + t")


@criterion(5, "positive braid closures", 30.0)
def test_criterion_5_positive_braids():
    assert closure_report(BraidWord(3, [2, 1]))["genus"] == 0
    assert closure_report(BraidWord(2, [1, 1, 1]))["genus"] == 1
    rng = random.Random(42)
    for _ in range(100):
        s = rng.randint(2, 5)
        k = rng.randint(1, 8)
        rep = closure_report(BraidWord(
            s, [rng.randint(1, s - 1) for _ in range(k)]))
        moves = rep["trace"].moves
        births = sum(1 for m in moves if m[0] == "B")
        pinches = sum(1 for m in moves if m[0] in ("P", "PM"))
        assert births - pinches == s - k == rep["chi"]
        assert rep["genus"] == Fraction(2 - rep["cycles"] + k - s, 2)
        if rep["connected"]:
            assert trace_summary(rep["trace"])["genus"] == rep["genus"]


@criterion(6, "exact-sequence engine", 60.0)
def test_criterion_6_les_engine():
    def brute_feasible(dims, cap):
        # enumerate candidate interior ranks directly, no solving
        def walk(i, r_prev):
            if i == len(dims) - 1:
                return dims[i] == r_prev
            return any(dims[i] == r_prev + r and walk(i + 1, r)
                       for r in range(cap + 1))
        return walk(0, 0)

    for length in range(1, 9):
        for dims in itertools.product(range(5), repeat=length):
            assert bool(les_solve(list(dims))) == brute_feasible(dims, 4)

    rng = random.Random(5)
    done = 0
    while done < 200:
        n = rng.randint(2, 6)
        gamma = LaurentPoly({rng.randint(0, n): rng.randint(1, 3)
                             for _ in range(rng.randint(1, 4))})
        if gamma.coeff(n) < 2:
            gamma = gamma + LaurentPoly({n: 2})
        try:
            out = zero_surgery_update(gamma, n)
        except DomainError:
            continue
        assert out + LaurentPoly({n: 1}) == gamma  # round trip
        done += 1


@criterion(7, "numerical lab", 20.0)
def test_criterion_7_numerical_lab():
    fam = unknot_family()
    for x, eta in ((0.5, 0.7), (-1.2, 0.3), (0.0, -1.0)):
        want = 3.0 * (1.0 - x * x) * eta - eta ** 3
        assert abs(fam.value_at([x], [eta]) - want) < 1e-12
    chords, gamma, _ = reeb_chords(fam, step=0.05)
    assert len(chords) == 1
    assert abs(chords[0].value - 4.0) < 1e-6
    assert chords[0].index == 3
    assert gamma == LaurentPoly({1: 1})

    cases = [(fam, 0.05), (shifted_unknot_family(), 0.05),
             (spin(unknot_family()), 0.1)]
    for f, step in cases:
        chords, _, _ = reeb_chords(f, step=step)
        assert chords
        total = f.n + 2 * f.N
        for p in chords:
            x, eta, eta2 = p.coords
            mirror = np.array(list(x) + list(eta2) + list(eta))
            val = float(_diff_value(f, mirror[None, :])[0])
            assert abs(val + p.value) < 1e-9  # values sum to zero
            eigs = sym_eigenvalues(_diff_hessian(f, mirror))
            mirror_index = sum(1 for v in eigs if v < 0)
            assert mirror_index + p.index == total

    rng = np.random.default_rng(3)
    h = 1e-6
    for f, _ in cases:
        X = rng.uniform(-f.extent(), f.extent(), (30, f.n))
        E = rng.uniform(-f.extent(), f.extent(), (30, f.N))
        for i in range(f.n):
            dX = np.zeros_like(X)
            dX[:, i] = h
            fd = (f.value(X + dX, E) - f.value(X - dX, E)) / (2 * h)
            rel = np.abs(fd - f.grad_x(X, E)[:, i]) \
                / np.maximum(1.0, np.abs(fd))
            assert np.max(rel) < 1e-6
        for j in range(f.N):
            dE = np.zeros_like(E)
            dE[:, j] = h
            fd = (f.value(X, E + dE) - f.value(X, E - dE)) / (2 * h)
            rel = np.abs(fd - f.grad_eta(X, E)[:, j]) \
                / np.maximum(1.0, np.abs(fd))
            assert np.max(rel) < 1e-6


@criterion(8, "move invariance", 60.0)
def test_criterion_8_move_invariance():
    r_kinds = {"R1a", "R1b", "R1a-", "R1b-", "R2u", "R2d", "R2u-",
               "R2d-", "R3"}
    rng = random.Random(31)
    for word in ("L1 R1", TREFOIL):
        d = parse_front(word)
        base = classical_invariants(d)
        base_rulings = len(enumerate_rulings(d, graded=True))
        applied = 0
        while applied < 200:
            cands = [m for m in isotopy_candidates(d) if m[0] in r_kinds]
            rng.shuffle(cands)
            for move in cands:
                try:
                    d = apply_move(d, move)
                except DomainError:
                    continue
                applied += 1
                break
            else:
                raise AssertionError("no applicable move")
            inv = classical_invariants(d)
            assert inv["tb"] == base["tb"]
            assert inv["rotation"] == base["rotation"]
            assert inv["components"] == base["components"]
            assert len(enumerate_rulings(d, graded=True)) == base_rulings


@criterion(9, "filling tb identity", 30.0)
def test_criterion_9_filling_tb_identity():
    cases = []
    for word in ("L1 R1", ZIGZAG, TREFOIL):
        cases.append(whitehead_double(parse_front(word)))
    rng = random.Random(9)
    knots = 0
    while knots < 20:
        s = rng.randint(2, 5)
        k = rng.randint(1, 8)
        rep = closure_report(BraidWord(
            s, [rng.randint(1, s - 1) for _ in range(k)]))
        if rep["cycles"] != 1 or rep["genus"] < 0:
            continue
        cases.append((rep["diagram"], rep["trace"]))
        knots += 1
    for diagram, trace in cases:
        summary = trace_summary(trace)
        assert summary["components"] == 1
        tb = classical_invariants(diagram)["tb"]
        assert tb == 2 * summary["genus"] - 1  # exact

"""Acceptance criteria, one test each; every test prints a PASS/FAIL line.

Run with ``pytest -v tests/test_acceptance.py`` (lines appear inline) or as a
script, ``python3 tests/test_acceptance.py``.
"""

import random
import sys
import time
from itertools import product

import sympy

from chargedhh.algebra import kernel_basis
from chargedhh.checks import (
    check_example_relation,
    commutativity_defect,
    cross_check_one,
    example_relation,
    identity_algebras,
    leibniz_defect,
    random_word_pairs,
)
from chargedhh.hochschild import (
    bar_length_homology,
    build_complex,
    hh_formula_low_charge,
    hochschild_dgca,
    iterated_hh_direct,
    verify_formality_projection,
)
from chargedhh.kdef import build_kdef, character_dims_f2, truncate
from chargedhh.poincare import Series, alt2_series, p_rep_f2, p_u2, ps_b2, sym2_series

REFERENCE_U2 = {
    (2, 1): [1, 3, 5, 10, 15, 12, 7, 6, 4, 1],
    (2, 2): [1, 4, 11, 28, 48, 52, 44, 36, 23, 8, 1],
    (3, 1): [1, 4, 9, 20, 36, 43, 40, 38, 31, 16, 7, 6, 4, 1],
    (3, 2): [1, 5, 17, 50, 105, 155, 183, 188, 155, 91, 39, 18, 11, 5, 1],
}

T = sympy.symbols("t")


class Report:
    def __init__(self, capsys=None):
        self.capsys = capsys

    def emit(self, number, title, ok, elapsed, detail=""):
        status = "PASS" if ok else "FAIL"
        line = f"[criterion {number}] {status}  {title}  ({elapsed:.2f}s){' -- ' + detail if detail else ''}"
        if self.capsys is not None:
            with self.capsys.disabled():
                print("\n" + line)
        else:
            print(line)
        return ok


def window(s, max_degree):
    return truncate(build_kdef(s), 2, max_degree)


def to_comodule(series):
    d = series.truncation
    return series.tagged(None) * Series([1, 0, -1], d) * Series([1, 0, 0, 0, -1], d)


def criterion_1():
    start = time.perf_counter()
    bad = [key for key, want in REFERENCE_U2.items() if [int(c) for c in p_u2(*key).coeffs] != want]
    elapsed = time.perf_counter() - start
    return not bad and elapsed < 1.0, elapsed, f"mismatch for {bad}" if bad else ""


def criterion_2():
    start = time.perf_counter()
    D = 9
    report = iterated_hh_direct(window(2, D + 1), 1, 2, D)
    como = to_comodule(report.series())
    elapsed = time.perf_counter() - start
    ok = report.reliable and como == Series(REFERENCE_U2[2, 1], D) and elapsed < 60
    return ok, elapsed, "" if ok else f"comodule {como}"


def criterion_3():
    start = time.perf_counter()
    D = 6
    report = iterated_hh_direct(window(2, D + 1), 2, 2, D)
    want = Series(REFERENCE_U2[2, 2], D) * ps_b2(D)
    elapsed = time.perf_counter() - start
    ok = report.reliable and report.series().tagged(None) == want and elapsed < 600
    return ok, elapsed, "" if ok else f"got {report.as_list()}"


def criterion_4():
    start = time.perf_counter()
    for s, r, c in product(range(3), range(3), (1, 2)):
        res = cross_check_one(s, r, c, 8)
        if not res.ok:
            return False, time.perf_counter() - start, res.detail
    return True, time.perf_counter() - start, ""


def criterion_5():
    start = time.perf_counter()
    for s in range(4):
        k = build_kdef(s)
        gens = {
            1: (1 + T) ** s / (1 - T**2),
            2: (1 + T) ** s * (1 + T**3) ** s / ((1 - T**2) * (1 - T**4)),
        }
        for c, expr in gens.items():
            poly = sympy.series(expr, T, 0, 9).removeO()
            for d in range(9):
                if k.quotient_dim(d, c) != poly.coeff(T, d):
                    return False, time.perf_counter() - start, f"(s={s}, charge={c}, degree={d})"
    rel_ok = check_example_relation().ok
    (k22,) = kernel_basis(build_kdef(2).defining_map, 2, 2)
    verbatim = k22 == example_relation() or k22 == -example_relation()
    f1 = build_kdef(1).defining_map
    free_ok = all(not kernel_basis(f1, d, c) for d in range(9) for c in range(3))
    ok = rel_ok and verbatim and free_ok
    return ok, time.perf_counter() - start, "" if ok else f"relation={rel_ok and verbatim} s1_free={free_ok}"


def criterion_6():
    start = time.perf_counter()
    if [int(c) for c in p_rep_f2(0).coeffs] != [1, 2, 1]:
        return False, time.perf_counter() - start, "p_rep_f2(0) != 1+2t+t^2"
    for r in range(5):
        closed = p_rep_f2(r)
        if not closed.is_nonneg_integral():
            return False, time.perf_counter() - start, f"r={r}: coefficients not non-negative integers"
        n = closed.truncation + 2
        dims = character_dims_f2(n)
        _, c2 = hh_formula_low_charge(dims.charge1, dims.charge2, r, n)
        if c2 != Series(closed.coeffs, n, c2.convention):
            return False, time.perf_counter() - start, f"r={r}: formula gives {c2}"
    return True, time.perf_counter() - start, ""


def _brute_force_squares(dims):
    degs = [d for d, k in enumerate(dims) for _ in range(k)]
    top = 2 * (len(dims) - 1)
    sym, alt = [0] * (top + 1), [0] * (top + 1)
    for m in range(top + 1):
        pairs = [(i, j) for i, j in product(range(len(degs)), repeat=2) if degs[i] + degs[j] == m]
        if not pairs:
            continue
        pos = {p: k for k, p in enumerate(pairs)}
        swap = sympy.zeros(len(pairs), len(pairs))
        for (i, j), k in pos.items():
            swap[pos[j, i], k] = (-1) ** (degs[i] * degs[j])
        sym[m] = (sympy.eye(len(pairs)) + swap).rank()
        alt[m] = (sympy.eye(len(pairs)) - swap).rank()
    return sym, alt


def criterion_7():
    start = time.perf_counter()

    def fail(msg):
        return False, time.perf_counter() - start, msg

    # d∘d = 0 on every complex the other criteria build, plus charges 0 and 1
    for s, r in product(range(3), range(1, 3)):
        b = window(s, 7)
        for _ in range(r - 1):
            b = hochschild_dgca(b, 2, 7)
        for c in (0, 1, 2):
            cx = build_complex(b, c, 6)
            for n in range(2, cx.top + 1):
                if not (cx.diffs[n - 1] @ cx.diffs[n]).is_zero():
                    return fail(f"d∘d != 0 at (s={s}, r={r}, charge={c}, degree={n})")
    rng = random.Random(2024)
    pairs = 0
    for name, alg in identity_algebras():
        for u, v in random_word_pairs(alg, 300, rng):
            pairs += 1
            if leibniz_defect(alg, u, v):
                return fail(f"Leibniz fails in {name} for {u} * {v}")
            if commutativity_defect(alg, u, v):
                return fail(f"commutativity fails in {name} for {u} * {v}")
    if pairs < 1000:
        return fail(f"only {pairs} random pairs")
    for s in range(3):
        alg = window(s, 7)
        for c in range(3):
            split = bar_length_homology(build_complex(alg, c, 6))
            if [split.get((0, q), 0) for q in range(7)] != [len(alg.basis(q, c)) for q in range(7)]:
                return fail(f"HH_0 != A for (s={s}, charge={c})")
    for _ in range(50):
        p = Series([rng.randint(0, 6) for _ in range(11)], 10)
        if sym2_series(p) + alt2_series(p) != p * p:
            return fail(f"splitting fails for {p}")
    spaces = 0
    for dims in product(range(7), repeat=4):
        if sum(dims) > 6:
            continue
        spaces += 1
        sym, alt = _brute_force_squares(list(dims))
        p = Series(list(dims), 6)
        if [int(c) for c in sym2_series(p).coeffs] != sym or [int(c) for c in alt2_series(p).coeffs] != alt:
            return fail(f"tensor oracle disagrees for dims {dims}")
    return True, time.perf_counter() - start, f"{pairs} pairs, {spaces} graded spaces"


def criterion_8():
    start = time.perf_counter()
    results = {s: verify_formality_projection(window(s, 7), 6) for s in (1, 2)}
    ok = all(results.values())
    detail = "; ".join(f"s={s}: {r.counterexample} {r.detail}" for s, r in results.items() if not r)
    return ok, time.perf_counter() - start, detail


CRITERIA = [
    (1, "closed U(2) polynomials p(2,1), p(2,2), p(3,1), p(3,2)", criterion_1),
    (2, "direct complex s=2 r=1 charge 2, D=9 times BU(2) denominator", criterion_2),
    (3, "direct complex s=2 r=2 charge 2, D=6", criterion_3),
    (4, "complex = formula = closed form on s,r <= 2, charges 1-2, D=8", criterion_4),
    (5, "presentation dims, degree-2 relation, s=1 injectivity", criterion_5),
    (6, "character variety closed form vs formula, r <= 4", criterion_6),
    (7, "homological identities and tensor oracle", criterion_7),
    (8, "formality projection s=1,2, D=6", criterion_8),
]


def _run(number, capsys=None):
    _, title, fn = CRITERIA[number - 1]
    ok, elapsed, detail = fn()
    return Report(capsys).emit(number, title, ok, elapsed, detail)


def test_criterion_1_closed_polynomials(capsys):
    assert _run(1, capsys)


def test_criterion_2_direct_complex_r1(capsys):
    assert _run(2, capsys)


def test_criterion_3_direct_complex_r2(capsys):
    assert _run(3, capsys)


def test_criterion_4_cross_paths(capsys):
    assert _run(4, capsys)


def test_criterion_5_presentation(capsys):
    assert _run(5, capsys)


def test_criterion_6_character_variety(capsys):
    assert _run(6, capsys)


def test_criterion_7_identities(capsys):
    assert _run(7, capsys)


def test_criterion_8_formality(capsys):
    assert _run(8, capsys)


if __name__ == "__main__":
    results = [_run(n) for n, _, _ in CRITERIA]
    sys.exit(0 if all(results) else 1)

"""Verification suites behind ``chargedhh verify`` and the acceptance tests.

Each check returns a :class:`CheckResult`; a failing check names the first
``(s, r, charge, degree)`` where two computations disagree whenever that
makes sense.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .algebra import Element, apply, kernel_basis, multiply
from .charged import TruncatedChargedAlgebra, add_into
from .hochschild import (
    bar_length_homology,
    build_complex,
    differential_element,
    hochschild_dgca,
    shuffle,
    word_charge,
    word_degree,
)
from .kdef import truncate, xi
from .paths import closed_form_path, complex_path, formula_path, kdef, rep_closed_form, rep_formula_path
from .poincare import Series, alt2_series, p_u2, sym2_series

SUITES = ("paper-examples", "identities", "cross-check", "all")

# Closed U(2) polynomials for F_s x Z^r, as printed alongside the closed formula.
KNOWN_U2_POLYNOMIALS: dict[tuple[int, int], list[int]] = {
    (2, 1): [1, 3, 5, 10, 15, 12, 7, 6, 4, 1],
    (2, 2): [1, 4, 11, 28, 48, 52, 44, 36, 23, 8, 1],
    (3, 1): [1, 4, 9, 20, 36, 43, 40, 38, 31, 16, 7, 6, 4, 1],
    (3, 2): [1, 5, 17, 50, 105, 155, 183, 188, 155, 91, 39, 18, 11, 5, 1],
}


@dataclass(frozen=True)
class CheckResult:
    name: str
    anchor: str
    ok: bool
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        tail = f" -- {self.detail}" if self.detail else ""
        return f"{status}  {self.name}  [{self.anchor}]{tail}"


def first_mismatch(a: Series, b: Series) -> int | None:
    for n in range(min(a.truncation, b.truncation) + 1):
        if a[n] != b[n]:
            return n
    return None


# -- reference examples ------------------------------------------------------


def check_known_polynomial(s: int, r: int) -> CheckResult:
    expected = KNOWN_U2_POLYNOMIALS[s, r]
    got = p_u2(s, r)
    n = first_mismatch(got, Series(expected, got.truncation))
    ok = n is None and got.truncation == len(expected) - 1
    detail = "" if ok else f"first mismatch at (s={s}, r={r}, charge=2, degree={n})"
    return CheckResult(f"p_u2({s},{r})", f"closed U(2) polynomial p({s},{r};t)", ok, detail)


def example_relation() -> Element:
    """The degree-2 charge-2 relation of kdef(F_2): xi_{1,0} xi_{2,0} - xi_{∅,0} xi_{12,0}."""
    def prod(g, h):
        return multiply(Element.generator(g), Element.generator(h))

    return prod(xi((1,), 0), xi((2,), 0)) - prod(xi((), 0), xi((1, 2), 0))


def check_example_relation() -> CheckResult:
    f = kdef(2).defining_map
    kernel = kernel_basis(f, 2, 2)
    rel = example_relation()
    found = any(k == rel or k == -rel for k in kernel)
    ok = found and len(kernel) == 1 and apply(f, rel).is_zero()
    detail = "" if ok else f"kernel at (s=2, charge=2, degree=2) is {kernel}"
    return CheckResult("kdef(F_2) relation", "first non-free relation, s=2, degree 2", ok, detail)


def check_rep_r0() -> CheckResult:
    got = rep_closed_form(0)
    ok = got.degree() == 2 and got == Series([1, 2, 1], got.truncation)
    return CheckResult("p_rep_f2(0)", "character variety of F_2, r=0", ok, "" if ok else f"got {got}")


def reference_examples() -> list[CheckResult]:
    out = [check_known_polynomial(s, r) for (s, r) in sorted(KNOWN_U2_POLYNOMIALS)]
    out.append(check_example_relation())
    out.append(check_rep_r0())
    return out


# -- identities --------------------------------------------------------------


def _d_squared(alg: TruncatedChargedAlgebra, charge: int, max_degree: int) -> str | None:
    cx = build_complex(alg, charge, max_degree)
    for n in range(2, cx.top + 1):
        if n in cx.diffs and n - 1 in cx.diffs and not (cx.diffs[n - 1] @ cx.diffs[n]).is_zero():
            return f"d∘d != 0 at (charge={charge}, degree={n})"
    return None


def random_word_pairs(alg: TruncatedChargedAlgebra, count: int, rng: random.Random) -> list[tuple]:
    """Random pairs of bar words whose shuffle stays inside the window."""
    words = [
        (w, word_degree(alg, w), word_charge(alg, w))
        for w in hochschild_dgca(alg, alg.max_charge, alg.max_degree).labels()
    ]
    pairs = []
    attempts = 0
    while len(pairs) < count and attempts < 100 * count:
        attempts += 1
        u, du, cu = rng.choice(words)
        v, dv, cv = rng.choice(words)
        if du + dv <= alg.max_degree and cu + cv <= alg.max_charge:
            pairs.append((u, v))
    return pairs


def leibniz_defect(alg: TruncatedChargedAlgebra, u, v) -> dict:
    """``d(uv) - d(u)v - (-1)^{|u|} u d(v)``, computed in C̄(alg)."""
    du = differential_element(alg, {u: 1})
    dv = differential_element(alg, {v: 1})
    lhs = differential_element(alg, shuffle(alg, u, v))
    sign = -1 if word_degree(alg, u) % 2 else 1
    acc = dict(lhs)
    for w, c in du.items():
        add_into(acc, shuffle(alg, w, v), -c)
    for w, c in dv.items():
        add_into(acc, shuffle(alg, u, w), -sign * c)
    return acc


def commutativity_defect(alg: TruncatedChargedAlgebra, u, v) -> dict:
    sign = -1 if (word_degree(alg, u) * word_degree(alg, v)) % 2 else 1
    acc = dict(shuffle(alg, u, v))
    add_into(acc, shuffle(alg, v, u), -sign)
    return acc


def identity_algebras(max_degree: int = 4) -> list[tuple[str, TruncatedChargedAlgebra]]:
    """Small windows used by the property checks: kdef(F_s) and its Hochschild dgca."""
    out = []
    for s in (1, 2):
        a = truncate(kdef(s), 2, max_degree)
        out.append((f"kdef(F_{s})", a))
        out.append((f"C(kdef(F_{s}))", hochschild_dgca(a, 2, max_degree)))
    return out


def check_d_squared(max_degree: int = 5) -> CheckResult:
    for s in (0, 1, 2):
        for r in (1, 2):
            b = truncate(kdef(s), 2, max_degree + 1)
            for _ in range(r - 1):
                b = hochschild_dgca(b, 2, max_degree + 1)
            for c in (1, 2):
                err = _d_squared(b, c, max_degree)
                if err:
                    return CheckResult("d∘d = 0", "total Hochschild differential", False, f"s={s}, r={r}: {err}")
    return CheckResult("d∘d = 0", "total Hochschild differential", True)


def check_shuffle_laws(pairs_per_algebra: int = 250, seed: int = 0) -> list[CheckResult]:
    rng = random.Random(seed)
    leib = comm = None
    total = 0
    for name, alg in identity_algebras():
        for u, v in random_word_pairs(alg, pairs_per_algebra, rng):
            total += 1
            if leib is None and leibniz_defect(alg, u, v):
                leib = f"{name}: {u!r} * {v!r}"
            if comm is None and commutativity_defect(alg, u, v):
                comm = f"{name}: {u!r} * {v!r}"
    return [
        CheckResult(f"Leibniz rule ({total} pairs)", "shuffle product is a dg product", leib is None, leib or ""),
        CheckResult(f"graded commutativity ({total} pairs)", "shuffle product", comm is None, comm or ""),
    ]


def check_hh0(max_degree: int = 6) -> CheckResult:
    """Bar-length-0 homology of C̄(A) is A when A has zero differential."""
    for s in (0, 1, 2):
        alg = truncate(kdef(s), 2, max_degree + 1)
        for c in (1, 2):
            split = bar_length_homology(build_complex(alg, c, max_degree))
            for q in range(max_degree + 1):
                if split.get((0, q), 0) != len(alg.basis(q, c)):
                    return CheckResult("HH_0 = A", "bar length 0", False, f"(s={s}, r=1, charge={c}, degree={q})")
    return CheckResult("HH_0 = A", "bar length 0", True)


def random_series(rng: random.Random, truncation: int = 10) -> Series:
    return Series([rng.randint(0, 6) for _ in range(truncation + 1)], truncation)


def check_splitting(count: int = 50, seed: int = 1) -> CheckResult:
    rng = random.Random(seed)
    for k in range(count):
        p = random_series(rng)
        if sym2_series(p) + alt2_series(p) != p * p:
            return CheckResult("Sym² + Alt² = p²", "square splitting", False, f"series #{k}: {p}")
    return CheckResult("Sym² + Alt² = p²", "square splitting", True)


def identities() -> list[CheckResult]:
    return [check_d_squared(), *check_shuffle_laws(), check_hh0(), check_splitting()]


# -- cross-check -------------------------------------------------------------


def cross_check_one(s: int, r: int, charge: int, max_degree: int = 8) -> CheckResult:
    direct = complex_path(s, r, charge, max_degree).series()
    formula = formula_path(s, r, charge, max_degree)
    name = f"s={s} r={r} charge={charge}"
    n = first_mismatch(direct, formula)
    if n is not None:
        return CheckResult(name, "complex = formula", False, f"first mismatch at (s={s}, r={r}, charge={charge}, degree={n})")
    if charge == 2:
        closed = closed_form_path(s, r, max_degree)
        n = first_mismatch(direct, closed)
        if n is not None:
            return CheckResult(
                name, "complex = closed form", False, f"first mismatch at (s={s}, r={r}, charge=2, degree={n})"
            )
        return CheckResult(name, "complex = formula = closed form", True)
    return CheckResult(name, "complex = formula", True)


def check_rep_formula(max_r: int = 4) -> CheckResult:
    for r in range(max_r + 1):
        closed = rep_closed_form(r)
        if not closed.is_nonneg_integral():
            return CheckResult("character variety", "closed form vs formula", False, f"r={r}: negative coefficient")
        assembled = rep_formula_path(r, closed.truncation + 2)
        padded = Series(closed.coeffs, assembled.truncation)
        n = first_mismatch(assembled, padded)
        if n is not None:
            return CheckResult(
                "character variety", "closed form vs formula", False, f"first mismatch at (s=2, r={r}, charge=2, degree={n})"
            )
    return CheckResult(f"character variety r<={max_r}", "closed form = low-charge formula", True)


def cross_check(max_s: int = 2, max_r: int = 2, max_degree: int = 8) -> list[CheckResult]:
    out = [
        cross_check_one(s, r, c, max_degree)
        for s in range(max_s + 1)
        for r in range(max_r + 1)
        for c in (1, 2)
    ]
    out.append(check_rep_formula())
    return out


SUITE_RUNNERS: dict[str, Callable[[], list[CheckResult]]] = {
    "paper-examples": reference_examples,
    "identities": identities,
    "cross-check": cross_check,
}


def run_suite(name: str) -> list[CheckResult]:
    if name == "all":
        return [res for key in ("paper-examples", "identities", "cross-check") for res in SUITE_RUNNERS[key]()]
    if name not in SUITE_RUNNERS:
        raise ValueError(f"unknown suite {name!r}")
    return SUITE_RUNNERS[name]()

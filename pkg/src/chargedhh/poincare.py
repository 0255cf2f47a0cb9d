"""Truncated power series in ``t`` and the closed-form Poincaré polynomials.

Two conventions appear side by side.  An *absolute* series counts dimensions of
a graded vector space.  A *comodule* series of a free ``H_*(BU(n))``-comodule
``W ⊗ H_*(BU(n))`` counts the cogenerators ``W`` only; multiplying by
:func:`ps_bu` converts it to the absolute series.  :class:`Series` carries an
optional convention tag and refuses to combine series with different tags.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

ABSOLUTE = "absolute"
COMODULE = "comodule"


class Series:
    """Power series truncated after ``t**truncation``; exact rational coefficients."""

    __slots__ = ("coeffs", "truncation", "convention")

    def __init__(self, coeffs: Iterable[object], truncation: int, convention: str | None = None):
        if truncation < 0:
            raise ValueError("truncation must be non-negative")
        cs = [Fraction(c) for c in coeffs][: truncation + 1]
        cs += [Fraction(0)] * (truncation + 1 - len(cs))
        self.coeffs = tuple(cs)
        self.truncation = truncation
        self.convention = convention

    # -- constructors ------------------------------------------------------
    @classmethod
    def one(cls, truncation: int) -> Series:
        return cls([1], truncation)

    @classmethod
    def t(cls, truncation: int, power: int = 1) -> Series:
        return cls([0] * power + [1], truncation)

    @classmethod
    def poly(cls, coeffs: Sequence[object], truncation: int | None = None) -> Series:
        """Polynomial with the given coefficients; default truncation is its length."""
        if truncation is None:
            truncation = max(len(coeffs) - 1, 0)
        return cls(coeffs, truncation)

    # -- helpers -----------------------------------------------------------
    def _tag(self, other: Series) -> str | None:
        if self.convention and other.convention and self.convention != other.convention:
            raise ValueError(f"cannot combine {self.convention} and {other.convention} series")
        return self.convention or other.convention

    def _coerce(self, other) -> Series:
        if isinstance(other, Series):
            return other
        return Series([other], self.truncation)

    def tagged(self, convention: str | None) -> Series:
        return Series(self.coeffs, self.truncation, convention)

    def truncate(self, truncation: int) -> Series:
        if truncation > self.truncation:
            raise ValueError("cannot extend a truncated series")
        return Series(self.coeffs, truncation, self.convention)

    def __getitem__(self, n: int) -> Fraction:
        return self.coeffs[n]

    def __len__(self) -> int:
        return self.truncation + 1

    def __iter__(self):
        return iter(self.coeffs)

    # -- arithmetic --------------------------------------------------------
    def __add__(self, other) -> Series:
        other = self._coerce(other)
        n = min(self.truncation, other.truncation)
        return Series((a + b for a, b in zip(self.coeffs[: n + 1], other.coeffs)), n, self._tag(other))

    __radd__ = __add__

    def __neg__(self) -> Series:
        return Series((-a for a in self.coeffs), self.truncation, self.convention)

    def __sub__(self, other) -> Series:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> Series:
        return self._coerce(other) - self

    def __mul__(self, other) -> Series:
        if not isinstance(other, Series):
            c = Fraction(other)
            return Series((c * a for a in self.coeffs), self.truncation, self.convention)
        n = min(self.truncation, other.truncation)
        out = [Fraction(0)] * (n + 1)
        b = other.coeffs
        for i, a in enumerate(self.coeffs[: n + 1]):
            if a:
                for j in range(n + 1 - i):
                    if b[j]:
                        out[i + j] += a * b[j]
        return Series(out, n, self._tag(other))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> Series:
        if k < 0:
            return self.inverse() ** (-k)
        out = Series.one(self.truncation).tagged(self.convention)
        for _ in range(k):
            out = out * self
        return out

    def inverse(self) -> Series:
        """Multiplicative inverse; only series with constant term 1 are invertible here."""
        if self.coeffs[0] != 1:
            raise ZeroDivisionError("only series with constant term 1 can be inverted")
        n = self.truncation
        inv = [Fraction(0)] * (n + 1)
        inv[0] = Fraction(1)
        for k in range(1, n + 1):
            inv[k] = -sum(self.coeffs[i] * inv[k - i] for i in range(1, k + 1))
        return Series(inv, n, self.convention)

    def __truediv__(self, other) -> Series:
        if not isinstance(other, Series):
            return self * (1 / Fraction(other))
        return self * other.inverse()

    def shift(self, k: int = 1) -> Series:
        """Multiply by ``t**k`` (the degree-raising suspension applied k times)."""
        return Series([0] * k + list(self.coeffs), self.truncation, self.convention)

    def subs_neg_t2(self) -> Series:
        """Substitute ``t -> -t**2``; valid to the same truncation."""
        n = self.truncation
        out = [Fraction(0)] * (n + 1)
        for i, a in enumerate(self.coeffs):
            if 2 * i > n:
                break
            out[2 * i] = a if i % 2 == 0 else -a
        return Series(out, n, self.convention)

    def subs_neg_t(self) -> Series:
        return Series((a if i % 2 == 0 else -a for i, a in enumerate(self.coeffs)), self.truncation, self.convention)

    # -- comparison / export ----------------------------------------------
    def __eq__(self, other) -> bool:
        if not isinstance(other, Series):
            return NotImplemented
        if self.truncation != other.truncation:
            raise ValueError("series of different truncation are not comparable")
        return self.coeffs == other.coeffs and (
            not (self.convention and other.convention) or self.convention == other.convention
        )

    def __hash__(self):
        return hash((self.coeffs, self.truncation))

    def is_nonneg_integral(self) -> bool:
        return all(c.denominator == 1 and c >= 0 for c in self.coeffs)

    def int_coeffs(self) -> list[int]:
        if any(c.denominator != 1 for c in self.coeffs):
            raise ValueError("series has non-integral coefficients")
        return [int(c) for c in self.coeffs]

    def degree(self) -> int:
        """Largest exponent with a nonzero coefficient (-1 for zero)."""
        for i in range(self.truncation, -1, -1):
            if self.coeffs[i]:
                return i
        return -1

    def to_json(self) -> dict:
        return {"truncation": self.truncation, "coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: dict) -> Series:
        return cls([Fraction(c) for c in data["coeffs"]], int(data["truncation"]))

    def __repr__(self) -> str:
        tag = f", {self.convention}" if self.convention else ""
        return f"Series({format_poly(self)} + O(t^{self.truncation + 1}){tag})"


def format_poly(p: Series) -> str:
    terms = []
    for i, c in enumerate(p.coeffs):
        if not c:
            continue
        mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
        if not mono:
            terms.append(str(c))
        elif c == 1:
            terms.append(mono)
        else:
            terms.append(f"{c}{mono}" if c.denominator == 1 else f"({c}){mono}")
    return " + ".join(terms) if terms else "0"


def one_plus_t(truncation: int, k: int = 1) -> Series:
    return Series([1, 1], truncation) ** k


def ps_b1(truncation: int) -> Series:
    """Poincaré series 1/(1-t^2) of H_*(BU(1))."""
    return Series([1 if i % 2 == 0 else 0 for i in range(truncation + 1)], truncation)


def ps_b2(truncation: int) -> Series:
    """Poincaré series 1/((1-t^2)(1-t^4)) of H_*(BU(2))."""
    return (Series([1, 0, -1], truncation) * Series([1, 0, 0, 0, -1], truncation)).inverse()


def ps_bu(rank: int, truncation: int) -> Series:
    """Poincaré series prod_{j<=rank} 1/(1-t^{2j}) of H_*(BU(rank))."""
    out = Series.one(truncation)
    for j in range(1, rank + 1):
        out = out / Series([1] + [0] * (2 * j - 1) + [-1], truncation)
    return out


def comodule_to_absolute(p: Series, rank: int) -> Series:
    return (p.tagged(None) * ps_bu(rank, p.truncation)).tagged(ABSOLUTE)


def absolute_to_comodule(p: Series, rank: int) -> Series:
    return (p.tagged(None) / ps_bu(rank, p.truncation)).tagged(COMODULE)


def sym2_series(p: Series) -> Series:
    """Poincaré series of the Koszul-symmetric square (W ⊗ W)^{Σ2}."""
    return (p * p + p.subs_neg_t2()) / 2


def alt2_series(p: Series) -> Series:
    """Poincaré series of the alternating square Alt²(W)."""
    return (p * p - p.subs_neg_t2()) / 2


def alt2_comodule_series(p_w: Series) -> Series:
    """Comodule series of Alt²(W ⊗ B1) as a free B2-comodule."""
    n = p_w.truncation
    a = Series([1, 0, 1], n) * p_w * p_w
    b = Series([1, 0, -1], n) * p_w.subs_neg_t2()
    return (a - b) / 2


def _check_polynomial(p: Series, what: str) -> Series:
    if not p.is_nonneg_integral():
        raise ArithmeticError(f"{what} has a coefficient that is not a non-negative integer: {p}")
    return p


def p_u2_degree(s: int, r: int) -> int:
    """Degree bound of the U(2) polynomial for F_s x Z^r."""
    return s + r + max(3 * s, s + r + 2)


def p_u2(s: int, r: int, max_degree: int | None = None) -> Series:
    """Comodule Poincaré polynomial of U(2)-equivariant homology of Hom(F_s x Z^r, U(2)).

    ``(1+t)^{s+r} ((1+t^3)^s + p1 + p2)`` with
    ``p1 = (1+t^2)(1+t)^s((1+t)^r - 1)/2`` and ``p2 = (1-t^2)(1-t)^s((1-t)^r - 1)/2``.
    """
    if s < 0 or r < 0:
        raise ValueError("s and r must be non-negative")
    top = p_u2_degree(s, r)
    n = max(top, max_degree or 0)
    one = Series.one(n)
    opt = Series([1, 1], n)
    omt = Series([1, -1], n)
    p1 = Series([1, 0, 1], n) * opt**s * (opt**r - one) / 2
    p2 = Series([1, 0, -1], n) * omt**s * (omt**r - one) / 2
    p = opt ** (s + r) * (Series([1, 0, 0, 1], n) ** s + p1 + p2)
    _check_polynomial(p, f"p_u2({s},{r})")
    if max_degree is None:
        max_degree = max(p.degree(), 0)
    elif max_degree < p.degree():
        raise ValueError(f"max_degree {max_degree} is below the polynomial degree {p.degree()}")
    p = p.truncate(max_degree)
    return p.tagged(COMODULE)


def p_rep_f2(r: int, max_degree: int | None = None) -> Series:
    """Poincaré polynomial of the U(2)-character variety of F_2 x Z^r.

    ``(1+t)^{r+2} (1 + ((1+t)^2((1+t)^r - 1) + (1-t)^2((1-t)^r - 1))/2)``.
    """
    if r < 0:
        raise ValueError("r must be non-negative")
    top = 2 * r + 4
    n = max(top, max_degree or 0)
    one = Series.one(n)
    opt = Series([1, 1], n)
    omt = Series([1, -1], n)
    bracket = one + (opt**2 * (opt**r - one) + omt**2 * (omt**r - one)) / 2
    p = _check_polynomial(opt ** (r + 2) * bracket, f"p_rep_f2({r})")
    if max_degree is None:
        max_degree = max(p.degree(), 0)
    elif max_degree < p.degree():
        raise ValueError(f"max_degree {max_degree} is below the polynomial degree {p.degree()}")
    p = p.truncate(max_degree)
    return p.tagged(ABSOLUTE)


def formula_cross_check_u2(s: int, r: int, max_degree: int | None = None) -> bool:
    """Reassemble the U(2) comodule polynomial from its low-charge ingredients.

    Charge-2 iterated Hochschild homology is ``(1+t)^r A_2`` plus
    ``sum_k t(1+t)^k Alt²((1+t)^{r-k} A_1)``; on comodule series ``A_2`` is
    ``(1+t)^s(1+t^3)^s`` and each ``Alt²`` is :func:`alt2_comodule_series`
    of ``(1+t)^{r-k+s}``.  The sum must equal :func:`p_u2`.
    """
    n = max(p_u2_degree(s, r), max_degree or 0)
    opt = Series([1, 1], n)
    total = opt**r * opt**s * Series([1, 0, 0, 1], n) ** s
    for k in range(1, r + 1):
        total = total + (opt**k * alt2_comodule_series(opt ** (r - k + s))).shift(1)
    return total.tagged(COMODULE) == p_u2(s, r, n)

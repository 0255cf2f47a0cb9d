"""Free graded-commutative algebras with a charge grading, and their quotients.

Generators carry a homological degree and a non-negative charge; odd-degree
generators anticommute and square to zero.  Generator families may be infinite
and are described intensionally: a family only ever lists the generators inside
an explicit (degree, charge) window.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Callable, Iterable, Iterator, Mapping

from .linalg import Matrix, Reducer, nullspace_basis


@dataclass(frozen=True, order=True)
class Generator:
    family: str
    index: tuple
    degree: int = field(compare=False)
    charge: int = field(compare=False)

    def __post_init__(self):
        if self.degree < 0 or self.charge < 0:
            raise ValueError("degree and charge must be non-negative")
        if self.degree == 0 and self.charge == 0:
            raise ValueError("a generator of degree 0 must have positive charge")

    @property
    def parity(self) -> int:
        return self.degree % 2

    def __str__(self) -> str:
        idx = ",".join(_fmt_index(i) for i in self.index)
        return f"{self.family}[{idx}]"


def _fmt_index(i) -> str:
    if isinstance(i, tuple):
        return "{" + ",".join(map(str, i)) + "}"
    return str(i)


class Monomial:
    """A sorted product of generator powers; odd generators appear at most once."""

    __slots__ = ("factors", "degree", "charge", "_hash")

    def __init__(self, factors: Iterable[tuple[Generator, int]] = ()):
        factors = tuple(factors)
        prev = None
        deg = ch = 0
        for g, e in factors:
            if e < 1:
                raise ValueError("exponents must be positive")
            if g.parity and e != 1:
                raise ValueError(f"odd generator {g} with exponent {e}")
            if prev is not None and not prev < g:
                raise ValueError("factors must be strictly sorted")
            prev = g
            deg += e * g.degree
            ch += e * g.charge
        self.factors = factors
        self.degree = deg
        self.charge = ch
        self._hash = hash(factors)

    @property
    def bidegree(self) -> tuple[int, int]:
        return self.degree, self.charge

    @property
    def parity(self) -> int:
        return self.degree % 2

    def is_unit(self) -> bool:
        return not self.factors

    def __eq__(self, other) -> bool:
        return isinstance(other, Monomial) and self.factors == other.factors

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: Monomial) -> bool:
        return self.factors < other.factors

    def __repr__(self) -> str:
        return f"Monomial({self})"

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        return "*".join(str(g) if e == 1 else f"{g}^{e}" for g, e in self.factors)


UNIT = Monomial()


def multiply_monomials(m: Monomial, n: Monomial) -> tuple[int, Monomial | None]:
    """Return ``(sign, product)``; ``product`` is None when it vanishes."""
    a, b = m.factors, n.factors
    if not a:
        return 1, n
    if not b:
        return 1, m
    out = []
    sign = 1
    # number of odd factors of ``a`` not yet emitted
    odd_left = sum(1 for g, _ in a if g.parity)
    i = j = 0
    while i < len(a) and j < len(b):
        ga, ea = a[i]
        gb, eb = b[j]
        if ga < gb:
            out.append(a[i])
            if ga.parity:
                odd_left -= 1
            i += 1
        elif gb < ga:
            if gb.parity and odd_left % 2:
                sign = -sign
            out.append(b[j])
            j += 1
        else:
            if ga.parity:
                return 0, None
            out.append((ga, ea + eb))
            i += 1
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return sign, Monomial(out)


class Element:
    """Finite linear combination of monomials with rational coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, object] | None = None):
        self.terms: dict[Monomial, Fraction] = {}
        if terms:
            for m, c in terms.items():
                c = Fraction(c)
                if c:
                    self.terms[m] = c

    @classmethod
    def monomial(cls, m: Monomial, coeff=1) -> Element:
        return cls({m: coeff})

    @classmethod
    def generator(cls, g: Generator) -> Element:
        return cls({Monomial([(g, 1)]): 1})

    @classmethod
    def one(cls) -> Element:
        return cls({UNIT: 1})

    def is_zero(self) -> bool:
        return not self.terms

    def is_homogeneous(self) -> bool:
        return len({m.bidegree for m in self.terms}) <= 1

    def __add__(self, other: Element) -> Element:
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return Element(out)

    def __neg__(self) -> Element:
        return Element({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: Element) -> Element:
        return self + (-other)

    def scale(self, c) -> Element:
        return Element({m: c * v for m, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Element):
            return self.scale(Fraction(other))
        return multiply(self, other)

    def __rmul__(self, c):
        return self.scale(Fraction(c))

    def __eq__(self, other) -> bool:
        return isinstance(other, Element) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms):
            c = self.terms[m]
            parts.append(f"{c}*{m}" if c != 1 else str(m))
        return " + ".join(parts)


def multiply(a: Element, b: Element) -> Element:
    out: dict[Monomial, Fraction] = {}
    for m, c in a.terms.items():
        for n, d in b.terms.items():
            s, p = multiply_monomials(m, n)
            if p is not None:
                out[p] = out.get(p, 0) + s * c * d
    return Element(out)


@dataclass(frozen=True)
class GeneratorFamily:
    """An intensional, possibly infinite family of generators.

    ``enumerate(max_degree, max_charge)`` must list every generator of the
    family inside the window, each exactly once.
    """

    name: str
    enumerate: Callable[[int, int], Iterable[Generator]]


class FreeGCA:
    """Free graded-commutative algebra on finitely many generator families."""

    def __init__(self, families: Iterable[GeneratorFamily], name: str = ""):
        self.families = tuple(families)
        self.name = name
        names = [f.name for f in self.families]
        if len(set(names)) != len(names):
            raise ValueError("family names must be unique")

    def generators(self, max_degree: int, max_charge: int) -> list[Generator]:
        gens = []
        for fam in self.families:
            for g in fam.enumerate(max_degree, max_charge):
                if g.family != fam.name:
                    raise ValueError(f"generator {g} does not belong to family {fam.name}")
                if g.degree <= max_degree and g.charge <= max_charge:
                    gens.append(g)
        gens.sort()
        if len(set(gens)) != len(gens):
            raise ValueError("duplicate generator names")
        return gens

    def __repr__(self) -> str:
        return f"FreeGCA({self.name or ', '.join(f.name for f in self.families)})"


def enumerate_monomials(alg: FreeGCA, degree: int, charge: int) -> list[Monomial]:
    """All monomials of the given bidegree, in a fixed deterministic order.

    The order is lexicographic on exponent vectors over the global generator
    order, larger exponents of earlier generators first.
    """
    if degree < 0 or charge < 0:
        return []
    gens = alg.generators(degree, charge)
    out: list[Monomial] = []

    def rec(i: int, d: int, c: int, acc: list):
        if d == 0 and c == 0:
            out.append(Monomial(acc))
            return
        if i == len(gens):
            return
        g = gens[i]
        emax = 1 if g.parity else min(
            d // g.degree if g.degree else c // g.charge,
            c // g.charge if g.charge else d // g.degree,
        )
        for e in range(emax, 0, -1):
            acc.append((g, e))
            rec(i + 1, d - e * g.degree, c - e * g.charge, acc)
            acc.pop()
        rec(i + 1, d, c, acc)

    rec(0, degree, charge, [])
    return out


class AlgebraMorphism:
    """Algebra map determined by the images of generators.

    ``images(g)`` returns an :class:`Element` of the target homogeneous of the
    same bidegree as ``g``.
    """

    def __init__(self, source: FreeGCA, target: FreeGCA, images: Callable[[Generator], Element]):
        self.source = source
        self.target = target
        self._images = images
        self._cache: dict[Generator, Element] = {}

    def image(self, g: Generator) -> Element:
        img = self._cache.get(g)
        if img is None:
            img = self._images(g)
            for m in img.terms:
                if m.bidegree != (g.degree, g.charge):
                    raise ValueError(f"image of {g} is not homogeneous of bidegree {(g.degree, g.charge)}")
            self._cache[g] = img
        return img

    def apply_monomial(self, m: Monomial) -> Element:
        out = Element.one()
        for g, e in m.factors:
            img = self.image(g)
            for _ in range(e):
                out = multiply(out, img)
        return out


def apply(f: AlgebraMorphism, e: Element) -> Element:
    out = Element()
    for m, c in e.terms.items():
        out = out + f.apply_monomial(m).scale(c)
    return out


def _image_matrix(f: AlgebraMorphism, monos: list[Monomial]) -> Matrix:
    images = [f.apply_monomial(m) for m in monos]
    targets = sorted({t for img in images for t in img.terms})
    pos = {t: i for i, t in enumerate(targets)}
    cols = [{pos[t]: c for t, c in img.terms.items()} for img in images]
    return Matrix.from_sparse_columns(len(targets), cols)


def kernel_basis(f: AlgebraMorphism, degree: int, charge: int) -> list[Element]:
    """Basis of ker f in one bidegree, one element per free column of the image matrix."""
    monos = enumerate_monomials(f.source, degree, charge)
    if not monos:
        return []
    vecs = nullspace_basis(_image_matrix(f, monos))
    return [Element({m: c for m, c in zip(monos, v) if c}) for v in vecs]


@dataclass
class _Graded:
    monomials: list[Monomial]
    position: dict[Monomial, int]
    reducer: Reducer
    basis: list[Monomial]


class PresentedAlgebra:
    """Quotient ``free / ker(defining_map)``, materialised lazily per bidegree.

    With ``defining_map=None`` the algebra is free.  Normal forms are supported
    on the monomials that are not pivots of the kernel's RREF.
    """

    def __init__(self, free: FreeGCA, defining_map: AlgebraMorphism | None = None):
        if defining_map is not None and defining_map.source is not free:
            raise ValueError("defining map must start at the free algebra")
        self.free = free
        self.defining_map = defining_map
        self._cache: dict[tuple[int, int], _Graded] = {}
        self._lock = threading.Lock()

    def _graded(self, degree: int, charge: int) -> _Graded:
        key = (degree, charge)
        g = self._cache.get(key)
        if g is not None:
            return g
        monos = enumerate_monomials(self.free, degree, charge)
        if self.defining_map is None or not monos:
            kernel = []
        else:
            kernel = nullspace_basis(_image_matrix(self.defining_map, monos))
        red = Reducer(len(monos), kernel)
        g = _Graded(monos, {m: i for i, m in enumerate(monos)}, red, [monos[j] for j in red.complement])
        with self._lock:
            return self._cache.setdefault(key, g)

    def monomials(self, degree: int, charge: int) -> list[Monomial]:
        return self._graded(degree, charge).monomials

    def basis(self, degree: int, charge: int) -> list[Monomial]:
        """Monomials whose classes form a basis of the quotient in this bidegree."""
        return self._graded(degree, charge).basis

    def quotient_dim(self, degree: int, charge: int) -> int:
        return len(self.basis(degree, charge))

    def kernel_dim(self, degree: int, charge: int) -> int:
        g = self._graded(degree, charge)
        return len(g.monomials) - len(g.basis)

    def reduce(self, e: Element) -> Element:
        by_bideg: dict[tuple[int, int], dict[Monomial, Fraction]] = {}
        for m, c in e.terms.items():
            by_bideg.setdefault(m.bidegree, {})[m] = c
        out: dict[Monomial, Fraction] = {}
        for (d, ch), terms in by_bideg.items():
            g = self._graded(d, ch)
            vec = {g.position[m]: c for m, c in terms.items()}
            for j, c in g.reducer.reduce(vec).items():
                out[g.monomials[j]] = c
        return Element(out)

    def multiply(self, a: Element, b: Element) -> Element:
        return self.reduce(multiply(a, b))


def quotient_dim(p: PresentedAlgebra, degree: int, charge: int) -> int:
    return p.quotient_dim(degree, charge)


def reduce(p: PresentedAlgebra, e: Element) -> Element:
    return p.reduce(e)


def iter_bidegrees(max_degree: int, max_charge: int) -> Iterator[tuple[int, int]]:
    for c in range(max_charge + 1):
        for d in range(max_degree + 1):
            yield d, c

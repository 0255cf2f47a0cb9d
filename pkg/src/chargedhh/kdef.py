"""The homology algebra of deformation K-theory of free groups.

For the free group ``F_s`` the algebra is generated by classes ``xi[I,n]``
(``I`` a subset of ``{1..s}``, ``n >= 0``) of degree ``|I| + 2n`` and charge 1,
modulo the kernel of the map into ``Λ(x_j, a_ij)`` sending

    xi[{i1<...<il}, n]  ->  sum over compositions (l0,...,ll) of n of
                            x_{l0} a_{i1,1+l1} ... a_{il,1+ll}

with ``|x_j| = 2j`` (charge 1) and ``|a_ij| = 2j - 1`` (charge 0).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .algebra import (
    AlgebraMorphism,
    Element,
    FreeGCA,
    Generator,
    GeneratorFamily,
    Monomial,
    PresentedAlgebra,
    multiply,
)
from .charged import TruncatedChargedAlgebra, from_presented
from .poincare import ABSOLUTE, Series

MAX_SUPPORTED_CHARGE = 2


def xi(I, n: int) -> Generator:
    I = tuple(sorted(I))
    return Generator("xi", (I, n), len(I) + 2 * n, 1)


def x(j: int) -> Generator:
    return Generator("x", (j,), 2 * j, 1)


def a(i: int, j: int) -> Generator:
    if j < 1:
        raise ValueError("a[i,j] needs j >= 1")
    return Generator("a", (i, j), 2 * j - 1, 0)


def _subsets(s: int):
    for size in range(s + 1):
        yield from combinations(range(1, s + 1), size)


def xi_algebra(s: int) -> FreeGCA:
    def gens(max_degree, max_charge):
        if max_charge < 1:
            return
        for I in _subsets(s):
            for n in range((max_degree - len(I)) // 2 + 1):
                yield xi(I, n)

    return FreeGCA([GeneratorFamily("xi", gens)], name=f"Λ(xi; s={s})")


def target_algebra(s: int) -> FreeGCA:
    def a_gens(max_degree, max_charge):
        for i in range(1, s + 1):
            for j in range(1, (max_degree + 1) // 2 + 1):
                yield a(i, j)

    def x_gens(max_degree, max_charge):
        if max_charge < 1:
            return
        for j in range(max_degree // 2 + 1):
            yield x(j)

    return FreeGCA([GeneratorFamily("a", a_gens), GeneratorFamily("x", x_gens)], name=f"Λ(x, a; s={s})")


def _compositions(n: int, parts: int):
    if parts == 1:
        yield (n,)
        return
    for first in range(n + 1):
        for rest in _compositions(n - first, parts - 1):
            yield (first,) + rest


def xi_image(g: Generator) -> Element:
    """Image of ``xi[I,n]`` under the defining map."""
    I, n = g.index
    out = Element()
    for lam in _compositions(n, len(I) + 1):
        term = Element.generator(x(lam[0]))
        for i, l in zip(I, lam[1:]):
            term = multiply(term, Element.generator(a(i, 1 + l)))
        out = out + term
    return out


@dataclass
class KdefAlgebra:
    s: int
    presentation: PresentedAlgebra

    @property
    def defining_map(self) -> AlgebraMorphism:
        return self.presentation.defining_map

    def quotient_dim(self, degree: int, charge: int) -> int:
        return self.presentation.quotient_dim(degree, charge)

    def dims_series(self, charge: int, max_degree: int) -> Series:
        return Series([self.quotient_dim(d, charge) for d in range(max_degree + 1)], max_degree, ABSOLUTE)


def build_kdef(s: int) -> KdefAlgebra:
    if s < 0:
        raise ValueError("s must be non-negative")
    src = xi_algebra(s)
    f = AlgebraMorphism(src, target_algebra(s), xi_image)
    return KdefAlgebra(s, PresentedAlgebra(src, f))


def truncate(alg: KdefAlgebra, max_charge: int, max_degree: int) -> TruncatedChargedAlgebra:
    """Charge/degree window of the algebra, products reduced to normal form."""
    if max_charge > MAX_SUPPORTED_CHARGE:
        raise ValueError(f"charge {max_charge} truncations are not supported (max {MAX_SUPPORTED_CHARGE})")
    if max_charge < 0 or max_degree < 0:
        raise ValueError("bounds must be non-negative")
    return from_presented(alg.presentation, max_charge, max_degree, name=f"kdef(F_{alg.s})")


@dataclass(frozen=True)
class CharacterDims:
    """Charge-1 and charge-2 Poincaré series of the character-variety algebra of F_2."""

    charge1: Series
    charge2: Series
    truncation: int


def character_dims_f2(max_degree: int) -> CharacterDims:
    if max_degree < 0:
        raise ValueError("max_degree must be non-negative")
    p = Series([1, 2, 1], max_degree, ABSOLUTE)
    return CharacterDims(p, p, max_degree)


def monomial_label(m: Monomial) -> str:
    return str(m)

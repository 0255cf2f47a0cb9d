"""Truncated charged differential graded-commutative algebras.

A :class:`TruncatedChargedAlgebra` is the finite window of a charged dgca in
charges ``0..max_charge`` and degrees ``0..max_degree``.  Elements are sparse
coordinate dicts ``label -> Fraction`` over a fixed basis of hashable labels.
Products that leave the window are zero, which is exactly the quotient by the
ideal of charge > max_charge (degrees never decrease under multiplication).
"""

from __future__ import annotations

import threading
from fractions import Fraction
from typing import Callable, Hashable, Iterable, Mapping

Label = Hashable
Coords = dict  # Label -> Fraction


def add_into(acc: dict, vec: Mapping, coeff=1) -> None:
    """``acc += coeff * vec`` in place, dropping zeros."""
    for k, v in vec.items():
        nv = acc.get(k, 0) + coeff * v
        if nv:
            acc[k] = nv
        else:
            acc.pop(k, None)


class TruncatedChargedAlgebra:
    """Finite window of a charged dgca with explicit basis labels.

    ``mul(x, y)`` and ``diff(x)`` receive basis labels and return coordinate
    dicts; they are called lazily and memoised.  ``diff=None`` means the
    differential is zero.  The charge-0 part must be spanned by ``unit``.
    """

    def __init__(
        self,
        basis: Mapping[tuple[int, int], Iterable[Label]],
        unit: Label,
        mul: Callable[[Label, Label], Mapping[Label, object]],
        diff: Callable[[Label], Mapping[Label, object]] | None,
        max_charge: int,
        max_degree: int,
        name: str = "",
    ):
        self.max_charge = max_charge
        self.max_degree = max_degree
        self.name = name
        self.unit = unit
        self._basis: dict[tuple[int, int], list[Label]] = {}
        self._bideg: dict[Label, tuple[int, int]] = {}
        for (d, c), labels in basis.items():
            if d > max_degree or c > max_charge:
                continue
            labels = list(labels)
            for x in labels:
                if x in self._bideg:
                    raise ValueError(f"duplicate basis label {x!r}")
                self._bideg[x] = (d, c)
            if labels:
                self._basis[d, c] = labels
        if self._bideg.get(unit) != (0, 0):
            raise ValueError("unit must be a basis label of bidegree (0, 0)")
        if any(c == 0 and self._basis[d, c] != [unit] for d, c in self._basis):
            raise ValueError("charge-0 part must be the ground field")
        self._mul = mul
        self._diff = diff
        self._mul_cache: dict[tuple[Label, Label], Coords] = {}
        self._diff_cache: dict[Label, Coords] = {}
        self._lock = threading.Lock()

    # -- grading ---------------------------------------------------------
    def basis(self, degree: int, charge: int) -> list[Label]:
        return self._basis.get((degree, charge), [])

    def labels(self) -> list[Label]:
        return [x for key in sorted(self._basis) for x in self._basis[key]]

    def bidegree(self, x: Label) -> tuple[int, int]:
        return self._bideg[x]

    def degree(self, x: Label) -> int:
        return self._bideg[x][0]

    def charge(self, x: Label) -> int:
        return self._bideg[x][1]

    def __contains__(self, x: Label) -> bool:
        return x in self._bideg

    def dims(self, charge: int) -> list[int]:
        return [len(self.basis(d, charge)) for d in range(self.max_degree + 1)]

    @property
    def trivial_differential(self) -> bool:
        return self._diff is None

    # -- structure maps --------------------------------------------------
    def mul(self, x: Label, y: Label) -> Coords:
        if x == self.unit:
            return {y: Fraction(1)}
        if y == self.unit:
            return {x: Fraction(1)}
        key = (x, y)
        out = self._mul_cache.get(key)
        if out is None:
            dx, cx = self._bideg[x]
            dy, cy = self._bideg[y]
            if dx + dy > self.max_degree or cx + cy > self.max_charge:
                out = {}
            else:
                out = {z: Fraction(v) for z, v in self._mul(x, y).items() if v}
                for z in out:
                    if self._bideg.get(z) != (dx + dy, cx + cy):
                        raise ValueError(f"product {x!r}*{y!r} left the basis at {z!r}")
            with self._lock:
                out = self._mul_cache.setdefault(key, out)
        return out

    def diff(self, x: Label) -> Coords:
        if self._diff is None:
            return {}
        out = self._diff_cache.get(x)
        if out is None:
            d, c = self._bideg[x]
            out = {z: Fraction(v) for z, v in self._diff(x).items() if v}
            for z in out:
                if self._bideg.get(z) != (d - 1, c):
                    raise ValueError(f"differential of {x!r} has wrong bidegree at {z!r}")
            with self._lock:
                out = self._diff_cache.setdefault(x, out)
        return out

    def multiply(self, u: Mapping[Label, object], v: Mapping[Label, object]) -> Coords:
        acc: Coords = {}
        for x, a in u.items():
            for y, b in v.items():
                add_into(acc, self.mul(x, y), a * b)
        return acc

    def differential(self, u: Mapping[Label, object]) -> Coords:
        acc: Coords = {}
        for x, a in u.items():
            add_into(acc, self.diff(x), a)
        return acc

    def multiplication_table(self) -> dict[tuple[Label, Label], Coords]:
        """Every nonzero product of basis labels inside the window."""
        labels = self.labels()
        table = {}
        for x in labels:
            for y in labels:
                p = self.mul(x, y)
                if p:
                    table[x, y] = p
        return table

    def __repr__(self) -> str:
        return (
            f"TruncatedChargedAlgebra({self.name or '?'}, charge<={self.max_charge}, "
            f"degree<={self.max_degree})"
        )


def from_presented(presented, max_charge: int, max_degree: int, name: str = "") -> TruncatedChargedAlgebra:
    """Window of a presented algebra with trivial differential.

    Basis labels are the reduced-representative monomials; products are
    multiply-then-reduce.
    """
    from .algebra import UNIT, Element

    basis = {}
    for c in range(max_charge + 1):
        for d in range(max_degree + 1):
            basis[d, c] = list(presented.basis(d, c))
    basis[0, 0] = [UNIT]

    def mul(x, y):
        return presented.multiply(Element.monomial(x), Element.monomial(y)).terms

    return TruncatedChargedAlgebra(basis, UNIT, mul, None, max_charge, max_degree, name=name)

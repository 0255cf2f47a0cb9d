"""The three independent routes to iterated Hochschild dimensions of kdef(F_s).

* ``complex``: build the iterated normalised Hochschild complex and take homology.
* ``formula``: feed the presentation's own charge-1/charge-2 dimensions to the
  low-charge formality formula.
* ``closed-form``: the closed U(2) polynomial times the BU(2) series (charge 2).
"""

from __future__ import annotations

from functools import lru_cache

from .hochschild import HHReport, hh_formula_low_charge, iterated_hh_direct
from .kdef import KdefAlgebra, build_kdef, character_dims_f2, truncate
from .poincare import ABSOLUTE, Series, absolute_to_comodule, comodule_to_absolute, p_rep_f2, p_u2

METHODS = ("complex", "formula", "closed-form")


@lru_cache(maxsize=None)
def kdef(s: int) -> KdefAlgebra:
    return build_kdef(s)


def complex_path(s: int, r: int, charge: int, max_degree: int) -> HHReport:
    alg = truncate(kdef(s), 2, max_degree + 1)
    return iterated_hh_direct(alg, r, charge, max_degree)


def formula_path(s: int, r: int, charge: int, max_degree: int) -> Series:
    if charge == 0:
        return Series.one(max_degree).tagged(ABSOLUTE)
    k = kdef(s)
    a1 = k.dims_series(1, max_degree)
    a2 = k.dims_series(2, max_degree)
    c1, c2 = hh_formula_low_charge(a1, a2, r, max_degree)
    return c1 if charge == 1 else c2


def closed_form_path(s: int, r: int, max_degree: int) -> Series:
    """Absolute charge-2 dimensions from the closed U(2) polynomial."""
    p = p_u2(s, r)
    n = max(max_degree, p.truncation)
    p = Series(p.coeffs, n, p.convention)
    return comodule_to_absolute(p, 2).truncate(max_degree)


def rep_formula_path(r: int, max_degree: int) -> Series:
    """Charge-2 low-charge formula fed with the character-variety dimensions of F_2."""
    dims = character_dims_f2(max_degree)
    return hh_formula_low_charge(dims.charge1, dims.charge2, r, max_degree)[1]


def rep_closed_form(r: int) -> Series:
    return p_rep_f2(r)


def comodule_series(absolute: Series) -> Series:
    """Charge-2 absolute dimensions times (1-t^2)(1-t^4)."""
    return absolute_to_comodule(absolute, 2)


def dims(method: str, s: int, r: int, charge: int, max_degree: int) -> tuple[Series, list[str]]:
    """Absolute series and warnings for one method."""
    if method == "complex":
        rep = complex_path(s, r, charge, max_degree)
        return rep.series(), rep.warnings
    if method == "formula":
        return formula_path(s, r, charge, max_degree), []
    if method == "closed-form":
        if charge != 2:
            raise ValueError("the closed form is only available in charge 2")
        return closed_form_path(s, r, max_degree), []
    raise ValueError(f"unknown method {method!r}")

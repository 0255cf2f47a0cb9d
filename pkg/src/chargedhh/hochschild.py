"""Normalised Hochschild complexes of charged dgcas, shuffle products, iteration.

A bar word ``(a0, a1, ..., ap)`` stands for ``a0 ⊗ s a1 ⊗ ... ⊗ s ap`` where
``s`` is a suspension of degree +1.  Its total degree is
``|a0| + sum(|ai| + 1)``.  Every sign is the Koszul sign for these suspended
degrees; with that convention the total differential squares to zero, obeys the
Leibniz rule for the shuffle product, and the shuffle product is graded
commutative in total degree.  Entries ``a1..ap`` never equal the unit
(normalisation), and since the charge-0 part of the algebra is the ground field
each of them has positive charge, so a charge-``c`` word has ``p <= c``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping

from .charged import TruncatedChargedAlgebra, add_into
from .linalg import Matrix, nullspace_basis, rank
from .poincare import ABSOLUTE, Series, alt2_series

BarWord = tuple

MAX_SUPPORTED_CHARGE = 2


def word_degree(alg: TruncatedChargedAlgebra, w: BarWord) -> int:
    return sum(alg.degree(x) for x in w) + len(w) - 1


def word_charge(alg: TruncatedChargedAlgebra, w: BarWord) -> int:
    return sum(alg.charge(x) for x in w)


def enumerate_words(alg: TruncatedChargedAlgebra, charge: int, max_degree: int) -> dict[int, list[BarWord]]:
    """Normalised bar words of the given charge, grouped by total degree."""
    by_charge: dict[int, list[tuple[object, int]]] = {}
    for (d, c), labels in sorted(alg._basis.items(), key=lambda kv: (kv[0][1], kv[0][0])):
        by_charge.setdefault(c, []).extend((x, d) for x in labels)

    out: dict[int, list[BarWord]] = {n: [] for n in range(max_degree + 1)}

    def tails(c: int, budget: int):
        # sequences of non-unit labels with total charge c and sum(|ai|+1) <= budget
        if c == 0:
            yield (), 0
            return
        for ci in range(1, c + 1):
            for x, d in by_charge.get(ci, ()):
                if d + 1 > budget:
                    continue
                for rest, used in tails(c - ci, budget - d - 1):
                    yield (x,) + rest, d + 1 + used

    for c0 in range(charge + 1):
        for x0, d0 in by_charge.get(c0, ()):
            if d0 > max_degree:
                continue
            for rest, used in tails(charge - c0, max_degree - d0):
                out[d0 + used].append((x0,) + rest)
    return out


def hochschild_differential(alg: TruncatedChargedAlgebra, w: BarWord) -> dict[BarWord, Fraction]:
    """Total differential (cyclic bar part plus internal part) of one bar word."""
    n = len(w) - 1
    degs = [alg.degree(x) for x in w]
    # eps[i] = |a0| + sum_{1<=j<=i} (|aj| + 1)
    eps = [degs[0]]
    for i in range(1, n + 1):
        eps.append(eps[-1] + degs[i] + 1)
    out: dict[BarWord, Fraction] = {}

    for i in range(n):
        sign = -1 if eps[i] % 2 else 1
        for y, c in alg.mul(w[i], w[i + 1]).items():
            add_into(out, {w[:i] + (y,) + w[i + 2:]: c}, sign)
    if n >= 1:
        sign = 1 if ((degs[n] + 1) * eps[n - 1]) % 2 else -1
        for y, c in alg.mul(w[n], w[0]).items():
            add_into(out, {(y,) + w[1:n]: c}, sign)

    if not alg.trivial_differential:
        for y, c in alg.diff(w[0]).items():
            add_into(out, {(y,) + w[1:]: c})
        for i in range(1, n + 1):
            sign = 1 if eps[i - 1] % 2 else -1
            for y, c in alg.diff(w[i]).items():
                add_into(out, {w[:i] + (y,) + w[i + 1:]: c}, sign)
    return out


def shuffle(alg: TruncatedChargedAlgebra, u: BarWord, v: BarWord) -> dict[BarWord, Fraction]:
    """Shuffle product of two bar words; the leading entries multiply in ``alg``."""
    p, q = len(u) - 1, len(v) - 1
    du = [(alg.degree(x) + 1) % 2 for x in u[1:]]
    dv = [(alg.degree(x) + 1) % 2 for x in v[1:]]
    s0 = -1 if (alg.degree(v[0]) * sum(du)) % 2 else 1
    heads = alg.mul(u[0], v[0])
    out: dict[BarWord, Fraction] = {}
    if not heads:
        return out
    for upos in combinations(range(p + q), p):
        upos_set = set(upos)
        merged = []
        sign = s0
        i = j = 0
        odd_v_seen = 0
        for k in range(p + q):
            if k in upos_set:
                if du[i] and odd_v_seen % 2:
                    sign = -sign
                merged.append(u[1 + i])
                i += 1
            else:
                odd_v_seen += dv[j]
                merged.append(v[1 + j])
                j += 1
        tail = tuple(merged)
        for h, c in heads.items():
            add_into(out, {(h,) + tail: c}, sign)
    return out


def shuffle_elements(alg, x: Mapping[BarWord, object], y: Mapping[BarWord, object]) -> dict[BarWord, Fraction]:
    acc: dict[BarWord, Fraction] = {}
    for u, a in x.items():
        for v, b in y.items():
            add_into(acc, shuffle(alg, u, v), a * b)
    return acc


def differential_element(alg, x: Mapping[BarWord, object]) -> dict[BarWord, Fraction]:
    acc: dict[BarWord, Fraction] = {}
    for w, a in x.items():
        add_into(acc, hochschild_differential(alg, w), a)
    return acc


@dataclass
class ChargedComplex:
    """One charge of a normalised Hochschild complex, degrees ``0..top``.

    ``diffs[n]`` is the matrix of ``C_n -> C_{n-1}`` (columns index ``C_n``).
    ``max_degree`` is the last degree whose homology is reported; the complex
    is built one degree further so that ``H_{max_degree}`` sees its boundaries.
    """

    algebra: TruncatedChargedAlgebra
    charge: int
    max_degree: int
    top: int
    words: dict[int, list[BarWord]]
    diffs: dict[int, Matrix]
    warnings: list[str] = field(default_factory=list)

    def index(self, n: int) -> dict[BarWord, int]:
        return {w: i for i, w in enumerate(self.words.get(n, []))}

    def dims(self) -> list[int]:
        return [len(self.words.get(n, [])) for n in range(self.top + 1)]


def build_complex(alg: TruncatedChargedAlgebra, charge: int, max_degree: int) -> ChargedComplex:
    if charge > alg.max_charge:
        raise ValueError(f"charge {charge} exceeds the algebra's truncation {alg.max_charge}")
    top = max_degree + 1
    warnings = []
    if alg.max_degree < top:
        warnings.append(
            f"algebra known only through degree {alg.max_degree}; "
            f"degree {min(max_degree, alg.max_degree)} and above may be unreliable"
        )
    words = enumerate_words(alg, charge, top)
    diffs: dict[int, Matrix] = {}
    idx_below = {w: i for i, w in enumerate(words[0])}
    for n in range(1, top + 1):
        cols = []
        for w in words[n]:
            col = {}
            for z, c in hochschild_differential(alg, w).items():
                col[idx_below[z]] = c
            cols.append(col)
        diffs[n] = Matrix.from_sparse_columns(len(words[n - 1]), cols)
        idx_below = {w: i for i, w in enumerate(words[n])}
    return ChargedComplex(alg, charge, max_degree, top, words, diffs, warnings)


@dataclass
class HHReport:
    """Homology dimensions of one charge, degrees ``0..max_degree``."""

    charge: int
    max_degree: int
    dims: dict[int, int]
    warnings: list[str] = field(default_factory=list)
    representatives: dict[int, list[dict]] | None = None

    @property
    def reliable(self) -> bool:
        return not self.warnings

    def series(self) -> Series:
        return Series([self.dims[n] for n in range(self.max_degree + 1)], self.max_degree, ABSOLUTE)

    def as_list(self) -> list[int]:
        return [self.dims[n] for n in range(self.max_degree + 1)]


def homology(cx: ChargedComplex, representatives: bool = False) -> HHReport:
    ranks = {n: rank(m) for n, m in cx.diffs.items()}
    dims = {}
    for n in range(cx.max_degree + 1):
        dims[n] = len(cx.words[n]) - ranks.get(n, 0) - ranks.get(n + 1, 0)
    reps = None
    if representatives:
        reps = {n: _representatives(cx, n) for n in range(cx.max_degree + 1)}
    return HHReport(cx.charge, cx.max_degree, dims, list(cx.warnings), reps)


def _representatives(cx: ChargedComplex, n: int) -> list[dict]:
    """Cycles in degree n whose classes form a basis of H_n."""
    size = len(cx.words[n])
    if not size:
        return []
    d = cx.diffs.get(n, Matrix(0, size))
    cycles = nullspace_basis(d)
    bmat = cx.diffs.get(n + 1)
    boundaries = [] if bmat is None else [[row[i] for i in range(size)] for row in _columns(bmat)]
    # greedy extension of a boundary basis by cycles
    chosen: list[list[Fraction]] = []
    base = rank(Matrix.from_rows(boundaries, size)) if boundaries else 0
    for z in cycles:
        trial = boundaries + chosen + [z]
        if rank(Matrix.from_rows(trial, size)) > base + len(chosen):
            chosen.append(z)
    words = cx.words[n]
    return [{words[i]: c for i, c in enumerate(z) if c} for z in chosen]


def _columns(m: Matrix) -> list[list[Fraction]]:
    return m.transpose().to_dense()


def bar_length_homology(cx: ChargedComplex) -> dict[tuple[int, int], int]:
    """Homology split by (bar length p, internal degree q); trivial differentials only."""
    if not cx.algebra.trivial_differential:
        raise ValueError("the bar-length splitting needs a trivial internal differential")
    out = {}
    for n in range(cx.max_degree + 1):
        for p in range(cx.charge + 1):
            q = n - p
            if q < 0:
                continue
            sel = [i for i, w in enumerate(cx.words[n]) if len(w) - 1 == p]
            r_out = _block_rank(cx, n, sel, p - 1)
            r_in = _block_rank(cx, n + 1, None, p, target_sel=sel)
            out[p, q] = len(sel) - r_out - r_in
    return out


def _block_rank(cx, n, src_sel, p_target, target_sel=None):
    m = cx.diffs.get(n)
    if m is None or m.ncols == 0:
        return 0
    if src_sel is None:
        src_sel = [i for i, w in enumerate(cx.words[n]) if len(w) - 1 == p_target + 1]
    if target_sel is None:
        target_sel = [i for i, w in enumerate(cx.words[n - 1]) if len(w) - 1 == p_target]
    tpos = {t: k for k, t in enumerate(target_sel)}
    mt = m.transpose()
    cols = []
    for j in src_sel:
        cols.append({tpos[i]: v for i, v in mt.row(j).items() if i in tpos})
    return rank(Matrix.from_sparse_columns(len(target_sel), cols))


def hochschild_dgca(alg: TruncatedChargedAlgebra, max_charge: int, max_degree: int) -> TruncatedChargedAlgebra:
    """The normalised Hochschild complex as a truncated charged dgca.

    Basis labels are bar words, the differential is the total Hochschild
    differential and the product is the shuffle product.
    """
    if max_charge > MAX_SUPPORTED_CHARGE:
        raise ValueError(f"charge {max_charge} is not supported (max {MAX_SUPPORTED_CHARGE})")
    if max_charge > alg.max_charge:
        raise ValueError("cannot exceed the input algebra's charge truncation")
    basis = {}
    for c in range(max_charge + 1):
        for n, ws in enumerate_words(alg, c, max_degree).items():
            basis[n, c] = ws
    unit = (alg.unit,)
    return TruncatedChargedAlgebra(
        basis,
        unit,
        lambda u, v: shuffle(alg, u, v),
        lambda w: hochschild_differential(alg, w),
        max_charge,
        max_degree,
        name=f"C({alg.name})",
    )


def algebra_homology(alg: TruncatedChargedAlgebra, charge: int, max_degree: int) -> HHReport:
    """Homology of the algebra's own differential in one charge."""
    warnings = []
    needed = max_degree if alg.trivial_differential else max_degree + 1
    if alg.max_degree < needed:
        warnings.append(f"algebra known only through degree {alg.max_degree}")
    dims = {}
    for n in range(max_degree + 1):
        here = alg.basis(n, charge)
        if alg.trivial_differential:
            dims[n] = len(here)
            continue
        dims[n] = len(here) - _diff_rank(alg, n, charge) - _diff_rank(alg, n + 1, charge)
    return HHReport(charge, max_degree, dims, warnings)


def _diff_rank(alg, n, charge):
    src = alg.basis(n, charge)
    if n == 0 or not src:
        return 0
    pos = {x: i for i, x in enumerate(alg.basis(n - 1, charge))}
    cols = [{pos[y]: c for y, c in alg.diff(x).items()} for x in src]
    return rank(Matrix.from_sparse_columns(len(pos), cols))


def iterated_hh_direct(alg: TruncatedChargedAlgebra, r: int, charge: int, max_degree: int) -> HHReport:
    """Charge-``charge`` homology of the r-fold iterated normalised Hochschild complex."""
    if r < 0:
        raise ValueError("r must be non-negative")
    if charge > MAX_SUPPORTED_CHARGE:
        raise ValueError(f"charge {charge} is not supported (max {MAX_SUPPORTED_CHARGE})")
    if r == 0:
        return algebra_homology(alg, charge, max_degree)
    b = alg
    for _ in range(r - 1):
        b = hochschild_dgca(b, charge, min(b.max_degree, max_degree + 1))
    return homology(build_complex(b, charge, max_degree))


def hh_formula_low_charge(a1: Series, a2: Series, r: int, max_degree: int) -> tuple[Series, Series]:
    """Charge-1 and charge-2 series of r-fold iterated HH from the algebra's own series.

    ``charge1 = (1+t)^r a1`` and
    ``charge2 = (1+t)^r a2 + sum_{k=1..r} t (1+t)^k Alt²((1+t)^{r-k} a1)``.
    """
    if r < 0:
        raise ValueError("r must be non-negative")
    for s in (a1, a2):
        if not s.is_nonneg_integral():
            raise ValueError("input series must have non-negative integer coefficients")
    n = max_degree
    if a1.truncation < n or a2.truncation < n:
        raise ValueError(f"input series must be known through degree {n}")
    a1 = a1.tagged(None).truncate(n)
    a2 = a2.tagged(None).truncate(n)
    opt = Series([1, 1], n)
    c1 = opt**r * a1
    c2 = opt**r * a2
    for k in range(1, r + 1):
        c2 = c2 + (opt**k * alt2_series(opt ** (r - k) * a1)).shift(1)
    return c1.tagged(ABSOLUTE), c2.tagged(ABSOLUTE)


# -- formality check -------------------------------------------------------


@dataclass
class FormalityResult:
    ok: bool
    counterexample: tuple[int, int] | None = None  # (charge, degree)
    detail: str = ""

    def __bool__(self) -> bool:
        return self.ok


def formality_map(alg: TruncatedChargedAlgebra):
    """Charge-2 component of the comparison map, as ``bar word -> target coords``.

    Target coordinates are tagged ``T0`` (A_2, bar length 0), ``T1a`` (A_2, bar
    length 1), ``T1b`` and ``T2`` (A_1 ⊗ A_1 at bar lengths 1 and 2).
    """
    deg = alg.degree

    def phi(w) -> dict:
        if len(w) == 1:
            return {("T0", w[0]): Fraction(1)}
        if len(w) == 2 and w[0] == alg.unit:
            return {("T1a", w[1]): Fraction(1)}
        if len(w) == 2:
            a, b = w
            out: dict = {}
            coef = Fraction((-1) ** deg(a), 2)
            for y, c in alg.mul(a, b).items():
                add_into(out, {("T1a", y): c}, coef)
            eps = (-1) ** ((deg(a) + 1) * (deg(b) + 1))
            add_into(out, {("T1b", a, b): 1})
            add_into(out, {("T1b", b, a): eps})
            return out
        _, a, b = w
        eps = (-1) ** ((deg(a) + 1) * (deg(b) + 1))
        out = {}
        add_into(out, {("T2", a, b): 1})
        add_into(out, {("T2", b, a): eps})
        return out

    return phi


def verify_formality_projection(alg: TruncatedChargedAlgebra, max_degree: int, chain_map=None) -> FormalityResult:
    """Check the explicit quasi-isomorphism from C̄(A)_{<=2} to its homology.

    The map is the identity in charges 0 and 1.  In charge 2 it keeps
    ``(x)`` and ``(1, x)`` for ``x`` in A_2, sends ``(a, b)`` with ``a, b`` in
    A_1 to ``(½(-1)^{|a|} ab, a⊗b + ε b⊗a)`` and ``(1, a, b)`` to
    ``a⊗b + ε b⊗a`` with ``ε = (-1)^{(|a|+1)(|b|+1)}``; these are the
    symmetrisation and projection maps written in the suspended sign
    convention.  The check confirms that the map kills boundaries, and that on
    cycles it has rank equal to the target dimension with kernel exactly the
    boundaries, in every degree up to ``max_degree``.  Target dimensions are
    also compared against ``(1+t) A_2 + t(1+t) Alt²(A_1)``.
    """
    if not alg.trivial_differential:
        return FormalityResult(False, None, "algebra must have trivial differential")
    if alg.max_charge < 2:
        return FormalityResult(False, None, "algebra must be truncated at charge >= 2")

    for c in (0, 1):
        cx = build_complex(alg, c, max_degree)
        for n, m in cx.diffs.items():
            if not m.is_zero():
                return FormalityResult(False, (c, n), "differential is not zero in charge <= 1")

    cx = build_complex(alg, 2, max_degree)
    deg = alg.degree
    n_top = cx.top
    phi = chain_map or formality_map(alg)

    # target coordinates per total degree
    a1 = [(x, deg(x)) for d in range(n_top + 1) for x in alg.basis(d, 1)]
    alt_dims = _symmetriser_ranks(alg, a1, n_top)
    a2_dims = [len(alg.basis(d, 2)) for d in range(n_top + 1)]
    a1_series = Series([len(alg.basis(d, 1)) for d in range(n_top + 1)], n_top)
    alt_formula = alt2_series(a1_series)
    for m in range(n_top + 1):
        if alt_dims[m] != alt_formula[m]:
            return FormalityResult(False, (2, m), "alternating square dimension disagrees with formula")

    for n in range(max_degree + 1):
        tdim = a2_dims[n] + (a2_dims[n - 1] + alt_dims[n - 1] if n >= 1 else 0) + (
            alt_dims[n - 2] if n >= 2 else 0
        )
        words = cx.words[n]
        images = [phi(w) for w in words]
        keys = sorted({k for img in images for k in img}, key=repr)
        kpos = {k: i for i, k in enumerate(keys)}
        phi_n = Matrix.from_sparse_columns(len(keys), [{kpos[k]: v for k, v in img.items()} for img in images])

        d_in = cx.diffs.get(n + 1)
        if d_in is not None and d_in.ncols and not (phi_n @ d_in).is_zero():
            return FormalityResult(False, (2, n), "map does not kill boundaries")
        d_out = cx.diffs.get(n)
        if d_out is not None and len(words):
            cycles = nullspace_basis(d_out)
        else:
            cycles = [[Fraction(int(i == j)) for i in range(len(words))] for j in range(len(words))]
        if cycles:
            z = Matrix.from_rows(cycles, len(words)).transpose()
            r_img = rank(phi_n @ z)
        else:
            r_img = 0
        boundaries = rank(d_in) if d_in is not None else 0
        if r_img != tdim:
            return FormalityResult(False, (2, n), f"map on cycles has rank {r_img}, target has dimension {tdim}")
        if len(cycles) - r_img != boundaries:
            return FormalityResult(False, (2, n), "kernel on cycles differs from boundaries")
    return FormalityResult(True)


def _symmetriser_ranks(alg, a1, top) -> list[int]:
    """Dimension of the image of ``a⊗b -> a⊗b + (-1)^{(|a|+1)(|b|+1)} b⊗a`` per degree."""
    by_deg: dict[int, list[tuple]] = {}
    for (a, da) in a1:
        for (b, db) in a1:
            if da + db <= top:
                by_deg.setdefault(da + db, []).append((a, b, da, db))
    out = []
    for m in range(top + 1):
        pairs = by_deg.get(m, [])
        pos = {(a, b): i for i, (a, b, _, _) in enumerate(pairs)}
        cols = []
        for a, b, da, db in pairs:
            col: dict = {}
            add_into(col, {pos[a, b]: 1})
            add_into(col, {pos[b, a]: (-1) ** ((da + 1) * (db + 1))})
            cols.append(col)
        out.append(rank(Matrix.from_sparse_columns(len(pairs), cols)) if pairs else 0)
    return out


def dims_from_series(s: Series) -> list[int]:
    return s.int_coeffs()


def words_as_text(words: Iterable[BarWord]) -> list[str]:
    return [" ⊗ ".join(str(x) for x in w) for w in words]

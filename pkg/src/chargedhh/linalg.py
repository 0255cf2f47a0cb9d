"""Exact sparse linear algebra over the rationals.

Scalars are :class:`fractions.Fraction`.  Matrices store only their nonzero
entries, one dict per row, which suits the very sparse differentials that the
Hochschild complexes produce.
"""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

Scalar = Fraction
SparseVector = dict  # index -> Fraction, no zero values


class Matrix:
    """Immutable sparse rational matrix.

    ``rows[i]`` maps column index to a nonzero :class:`Fraction`.
    """

    __slots__ = ("nrows", "ncols", "_rows")

    def __init__(self, nrows: int, ncols: int, entries: Mapping[tuple[int, int], object] = ()):
        if nrows < 0 or ncols < 0:
            raise ValueError("matrix dimensions must be non-negative")
        self.nrows = nrows
        self.ncols = ncols
        rows: list[dict[int, Fraction]] = [{} for _ in range(nrows)]
        items = entries.items() if isinstance(entries, Mapping) else entries
        for (i, j), v in items:
            if not (0 <= i < nrows and 0 <= j < ncols):
                raise IndexError(f"entry ({i}, {j}) outside {nrows}x{ncols}")
            v = Fraction(v)
            if v:
                rows[i][j] = rows[i].get(j, 0) + v
                if not rows[i][j]:
                    del rows[i][j]
        self._rows = rows

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[object]], ncols: int | None = None) -> Matrix:
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        entries = {}
        for i, row in enumerate(rows):
            if len(row) != ncols:
                raise ValueError("ragged rows")
            for j, v in enumerate(row):
                if v:
                    entries[i, j] = v
        return cls(len(rows), ncols, entries)

    @classmethod
    def from_sparse_columns(cls, nrows: int, columns: Sequence[Mapping[int, object]]) -> Matrix:
        """Build a matrix whose ``j``-th column is the sparse vector ``columns[j]``."""
        entries = {}
        for j, col in enumerate(columns):
            for i, v in col.items():
                if v:
                    entries[i, j] = v
        return cls(nrows, len(columns), entries)

    @classmethod
    def _trusted(cls, nrows: int, ncols: int, rows: list[dict[int, Fraction]]) -> Matrix:
        m = cls.__new__(cls)
        m.nrows, m.ncols, m._rows = nrows, ncols, rows
        return m

    def row(self, i: int) -> dict[int, Fraction]:
        return dict(self._rows[i])

    def entries(self) -> dict[tuple[int, int], Fraction]:
        return {(i, j): v for i, r in enumerate(self._rows) for j, v in r.items()}

    def to_dense(self) -> list[list[Fraction]]:
        out = [[Fraction(0)] * self.ncols for _ in range(self.nrows)]
        for i, r in enumerate(self._rows):
            for j, v in r.items():
                out[i][j] = v
        return out

    def nnz(self) -> int:
        return sum(len(r) for r in self._rows)

    def transpose(self) -> Matrix:
        rows: list[dict[int, Fraction]] = [{} for _ in range(self.ncols)]
        for i, r in enumerate(self._rows):
            for j, v in r.items():
                rows[j][i] = v
        return Matrix._trusted(self.ncols, self.nrows, rows)

    def __matmul__(self, other: Matrix) -> Matrix:
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        rows = []
        for r in self._rows:
            acc: dict[int, Fraction] = defaultdict(Fraction)
            for k, v in r.items():
                for j, w in other._rows[k].items():
                    acc[j] += v * w
            rows.append({j: v for j, v in acc.items() if v})
        return Matrix._trusted(self.nrows, other.ncols, rows)

    def apply(self, vec: Sequence[object]) -> list[Fraction]:
        """Matrix-vector product with a dense vector."""
        if len(vec) != self.ncols:
            raise ValueError("shape mismatch")
        return [sum((v * vec[j] for j, v in r.items()), Fraction(0)) for r in self._rows]

    def is_zero(self) -> bool:
        return not any(self._rows)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.nrows, self.ncols) == (other.nrows, other.ncols) and self._rows == other._rows

    def __hash__(self):
        return hash((self.nrows, self.ncols, tuple(tuple(sorted(r.items())) for r in self._rows)))

    def __repr__(self) -> str:
        return f"Matrix({self.nrows}x{self.ncols}, nnz={self.nnz()})"


def zero_matrix(nrows: int, ncols: int) -> Matrix:
    return Matrix(nrows, ncols)


def identity(n: int) -> Matrix:
    return Matrix(n, n, {(i, i): 1 for i in range(n)})


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and the (strictly increasing) pivot columns.

    Columns are processed left to right; among the candidate rows for a pivot the
    sparsest one is taken, which limits fill-in without changing the (unique)
    result.
    """
    rows = {i: dict(r) for i, r in enumerate(m._rows) if r}
    colmap: dict[int, set[int]] = defaultdict(set)
    for i, r in rows.items():
        for j in r:
            colmap[j].add(i)

    pivot_rows: list[dict[int, Fraction]] = []
    pivots: list[int] = []
    for j in range(m.ncols):
        cand = colmap.get(j)
        if not cand:
            continue
        p = min(cand, key=lambda i: (len(rows[i]), i))
        prow = rows.pop(p)
        for c in prow:
            colmap[c].discard(p)
        inv = 1 / prow[j]
        prow = {c: v * inv for c, v in prow.items()}
        _eliminate(prow, j, list(colmap[j]), rows, colmap)
        # back-substitute into earlier pivot rows
        for r in pivot_rows:
            f = r.get(j)
            if f:
                for c, v in prow.items():
                    nv = r.get(c, 0) - f * v
                    if nv:
                        r[c] = nv
                    else:
                        del r[c]
        pivot_rows.append(prow)
        pivots.append(j)

    out = pivot_rows + [{} for _ in range(m.nrows - len(pivot_rows))]
    return Matrix._trusted(m.nrows, m.ncols, out), pivots


def _eliminate(prow, j, targets, rows, colmap):
    """Clear column ``j`` from ``targets`` using the normalised pivot row ``prow``."""
    for k in targets:
        row = rows[k]
        f = row[j]
        for c, v in prow.items():
            nv = row.get(c, 0) - f * v
            if nv:
                if c not in row:
                    colmap[c].add(k)
                row[c] = nv
            else:
                if c in row:
                    del row[c]
                    colmap[c].discard(k)


def rank(m: Matrix) -> int:
    """Rank by Markowitz-style elimination (sparsest column, then sparsest row)."""
    rows = {i: dict(r) for i, r in enumerate(m._rows) if r}
    colmap: dict[int, set[int]] = defaultdict(set)
    for i, r in rows.items():
        for j in r:
            colmap[j].add(i)
    colmap = {j: s for j, s in colmap.items() if s}

    r = 0
    while colmap:
        j = min(colmap, key=lambda c: (len(colmap[c]), c))
        cand = colmap[j]
        if not cand:
            del colmap[j]
            continue
        p = min(cand, key=lambda i: (len(rows[i]), i))
        prow = rows.pop(p)
        for c in prow:
            s = colmap.get(c)
            if s is not None:
                s.discard(p)
        inv = 1 / prow[j]
        prow = {c: v * inv for c, v in prow.items()}
        targets = list(colmap[j])
        for k in targets:
            row = rows[k]
            f = row[j]
            for c, v in prow.items():
                nv = row.get(c, 0) - f * v
                if nv:
                    if c not in row:
                        colmap.setdefault(c, set()).add(k)
                    row[c] = nv
                else:
                    if c in row:
                        del row[c]
                        colmap[c].discard(k)
        del colmap[j]
        for c in prow:
            s = colmap.get(c)
            if s is not None and not s:
                del colmap[c]
        r += 1
    return r


def nullspace_basis(m: Matrix) -> list[list[Fraction]]:
    """Basis of ker(m) in RREF-parametrised form.

    One vector per free column ``f``: entry ``f`` is 1, other free entries are 0
    and pivot entries are solved from the RREF.
    """
    red, pivots = rref(m)
    pivset = set(pivots)
    basis = []
    for f in range(m.ncols):
        if f in pivset:
            continue
        v = [Fraction(0)] * m.ncols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            c = red._rows[i].get(f)
            if c:
                v[p] = -c
        basis.append(v)
    return basis


def quotient_basis(ambient_dim: int, subspace: Iterable[Sequence[object]]) -> list[int]:
    """Coordinate indices spanning a complement of ``subspace``.

    These are the non-pivot columns of the RREF of the spanning vectors, so the
    corresponding unit vectors project to a basis of ``ambient / subspace``.
    """
    vecs = list(subspace)
    for v in vecs:
        if len(v) != ambient_dim:
            raise ValueError("vector length does not match ambient dimension")
    _, pivots = rref(Matrix.from_rows(vecs, ambient_dim)) if vecs else (None, [])
    pivset = set(pivots)
    return [j for j in range(ambient_dim) if j not in pivset]


class Reducer:
    """Normal forms modulo a subspace, supported on the complement columns."""

    def __init__(self, ambient_dim: int, subspace: Iterable[Sequence[object]]):
        vecs = list(subspace)
        self.ambient_dim = ambient_dim
        if vecs:
            red, pivots = rref(Matrix.from_rows(vecs, ambient_dim))
            self._rows = [red.row(i) for i in range(len(pivots))]
        else:
            pivots = []
            self._rows = []
        self.pivots = pivots
        pivset = set(pivots)
        self.complement = [j for j in range(ambient_dim) if j not in pivset]

    def reduce(self, vec: Mapping[int, object]) -> dict[int, Fraction]:
        out = {j: Fraction(v) for j, v in vec.items() if v}
        for p, row in zip(self.pivots, self._rows):
            f = out.get(p)
            if f:
                for c, v in row.items():
                    nv = out.get(c, 0) - f * v
                    if nv:
                        out[c] = nv
                    else:
                        out.pop(c, None)
        return out

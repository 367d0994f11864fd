"""Exact integer linear algebra: ranks, normal forms, quotient invariants.

Everything here is arbitrary-precision integer arithmetic; there is no
floating point and no modular shortcut anywhere.  Matrices are stored as
sparse rows (dict column -> nonzero entry) because the bracket-closure and
Johnson-image matrices produced by the other modules are overwhelmingly
zero, but the semantics are those of ordinary dense integer matrices.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

__all__ = [
    "IntMatrix",
    "QuotientInvariants",
    "hermite_normal_form",
    "smith_normal_form",
    "row_rank",
    "quotient_invariants",
    "row_space_invariants",
]


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Extended gcd: (g, x, y) with g = x*a + y*b and g >= 0."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


class IntMatrix:
    """Integer matrix with sparse row storage.

    Construct with ``from_dense`` or ``from_rows``; instances are treated as
    immutable once built.  ``nrows`` and ``ncols`` give the dense shape,
    ``entry``/``to_dense`` recover ordinary dense views.
    """

    __slots__ = ("nrows", "ncols", "_rows")

    def __init__(self, nrows: int, ncols: int, rows: Sequence[dict[int, int]] | None = None):
        if nrows < 0 or ncols < 0:
            raise ValueError("matrix shape must be nonnegative")
        self.nrows = nrows
        self.ncols = ncols
        if rows is None:
            self._rows = [dict() for _ in range(nrows)]
        else:
            if len(rows) != nrows:
                raise ValueError("row count mismatch")
            cleaned = []
            for r in rows:
                for c, v in r.items():
                    if not (0 <= c < ncols):
                        raise ValueError(f"column index {c} out of range")
                    if not isinstance(v, int):
                        raise TypeError("entries must be int")
                cleaned.append({c: v for c, v in r.items() if v})
            self._rows = cleaned

    @classmethod
    def from_dense(cls, data: Sequence[Sequence[int]], ncols: int | None = None) -> "IntMatrix":
        nrows = len(data)
        if ncols is None:
            ncols = len(data[0]) if nrows else 0
        rows = []
        for r in data:
            if len(r) != ncols:
                raise ValueError("ragged rows")
            rows.append({j: v for j, v in enumerate(r) if v})
        return cls(nrows, ncols, rows)

    @classmethod
    def from_rows(cls, rows: Sequence[dict[int, int]], ncols: int) -> "IntMatrix":
        return cls(len(rows), ncols, rows)

    @classmethod
    def identity(cls, k: int) -> "IntMatrix":
        return cls(k, k, [{i: 1} for i in range(k)])

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "IntMatrix":
        return cls(nrows, ncols)

    def entry(self, i: int, j: int) -> int:
        if not (0 <= i < self.nrows and 0 <= j < self.ncols):
            raise IndexError("index out of range")
        return self._rows[i].get(j, 0)

    def sparse_rows(self) -> list[dict[int, int]]:
        return [dict(r) for r in self._rows]

    def to_dense(self) -> list[list[int]]:
        return [[r.get(j, 0) for j in range(self.ncols)] for r in self._rows]

    def nnz(self) -> int:
        return sum(len(r) for r in self._rows)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return (self.nrows, self.ncols) == (other.nrows, other.ncols) and self._rows == other._rows

    def __repr__(self) -> str:
        return f"IntMatrix({self.nrows}x{self.ncols}, nnz={self.nnz()})"


@dataclass(frozen=True)
class QuotientInvariants:
    """Invariants of Z^ambient / row-space: free rank plus torsion orders.

    ``torsion`` lists the nontrivial invariant factors in divisibility order
    (each divides the next); an empty tuple means the quotient is free.
    """

    free_rank: int
    torsion: tuple[int, ...]


def _row_submul(r: dict[int, int], p: dict[int, int], q: int) -> None:
    # r -= q * p, in place, dropping zeros
    if not q:
        return
    get = r.get
    for c, v in p.items():
        nv = get(c, 0) - q * v
        if nv:
            r[c] = nv
        else:
            r.pop(c, None)


def _row_combo(r1: dict[int, int], a: int, r2: dict[int, int], b: int) -> dict[int, int]:
    # a*r1 + b*r2 as a fresh dict
    out = {}
    if a:
        for c, v in r1.items():
            out[c] = a * v
    if b:
        get = out.get
        for c, v in r2.items():
            nv = get(c, 0) + b * v
            if nv:
                out[c] = nv
            else:
                out.pop(c, None)
    return out


def _echelon(rows: Iterable[dict[int, int]]) -> dict[int, dict[int, int]]:
    """Row-reduce to a staircase basis of the row space.

    Returns a map pivot column -> row; each stored row has a positive entry
    at its pivot column and zeros in every earlier pivot column.  Integer
    row operations only, so the rows span exactly the input row lattice.
    """
    pivots: dict[int, dict[int, int]] = {}
    for row in rows:
        r = dict(row)
        while r:
            j = min(r)
            p = pivots.get(j)
            if p is None:
                if r[j] < 0:
                    r = {c: -v for c, v in r.items()}
                pivots[j] = r
                break
            a, b = r[j], p[j]
            if a % b == 0:
                _row_submul(r, p, a // b)
            else:
                # Bezout rotation: new pivot entry gcd(b, a), second row
                # gets a zero at column j.  Keeping the pivot at the gcd is
                # what "pivot on the minimal entry" means for lattice rows.
                g, x, y = _xgcd(b, a)
                pivots[j] = _row_combo(p, x, r, y)
                r = _row_combo(p, a // g, r, -(b // g))
    return pivots


def _reduce_above(pivots: dict[int, dict[int, int]]) -> None:
    # Canonical form: entries above each pivot reduced into [0, pivot).
    cols = sorted(pivots)
    for t, col in enumerate(cols):
        prow = pivots[col]
        pval = prow[col]
        for s in range(t):
            above = pivots[cols[s]]
            v = above.get(col, 0)
            q = v // pval
            if q:
                _row_submul(above, prow, q)


def hermite_normal_form(m: IntMatrix) -> IntMatrix:
    """Row-style Hermite normal form, same shape as the input.

    Pivot entries are positive, entries above a pivot lie in [0, pivot),
    nonzero rows come first in staircase order and zero rows pad the bottom.
    """
    pivots = _echelon(m._rows)
    _reduce_above(pivots)
    rows = [pivots[c] for c in sorted(pivots)]
    rows += [dict() for _ in range(m.nrows - len(rows))]
    return IntMatrix(m.nrows, m.ncols, rows)


def row_rank(m: IntMatrix) -> int:
    """Rank of the matrix over the rationals (= rank of the row lattice)."""
    return len(_echelon(m._rows))


def _dense_snf_divisors(a: list[list[int]]) -> list[int]:
    """Nonzero invariant factors of a small dense matrix.

    Classical elimination: repeatedly move a minimal-absolute-value entry to
    the pivot, clear its row and column, and restore the divisibility chain
    by folding offending rows into the pivot row.  Only called on the small
    residue left after unit pivots are split off, so dense is fine.
    """
    a = [list(r) for r in a]
    m = len(a)
    n = len(a[0]) if m else 0
    out: list[int] = []
    t = 0
    while True:
        best = None
        for i in range(t, m):
            ai = a[i]
            for j in range(t, n):
                v = ai[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
        if best is None:
            break
        _, bi, bj = best
        a[t], a[bi] = a[bi], a[t]
        if bj != t:
            for r in a:
                r[t], r[bj] = r[bj], r[t]
        while True:
            p = a[t][t]
            restart = False
            for i in range(t + 1, m):
                v = a[i][t]
                if not v:
                    continue
                q = v // p
                if q:
                    for j in range(t, n):
                        a[i][j] -= q * a[t][j]
                if a[i][t]:
                    a[t], a[i] = a[i], a[t]
                    restart = True
                    break
            if restart:
                continue
            for j in range(t + 1, n):
                v = a[t][j]
                if not v:
                    continue
                q = v // p
                if q:
                    for i in range(t, m):
                        a[i][j] -= q * a[i][t]
                if a[t][j]:
                    # column remainder became the new, smaller pivot
                    for i in range(t, m):
                        a[i][t], a[i][j] = a[i][j], a[i][t]
                    restart = True
                    break
            if restart:
                continue
            offender = None
            for i in range(t + 1, m):
                ai = a[i]
                for j in range(t + 1, n):
                    if ai[j] % p:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            for j in range(t, n):
                a[t][j] += a[offender][j]
        out.append(abs(a[t][t]))
        t += 1
    return out


def _lattice_invariants(rows: Iterable[dict[int, int]]) -> tuple[int, tuple[int, ...]]:
    """(rank, nontrivial invariant factors) of the row lattice.

    After the canonical echelon pass, a row whose pivot is 1 has the only
    nonzero entry of its column, so it splits off a unit invariant factor.
    Only the rows with non-unit pivots are handed to the dense Smith kernel,
    which keeps the dense part tiny even for the large bracket matrices.
    """
    pivots = _echelon(rows)
    _reduce_above(pivots)
    rank = len(pivots)
    residue = [r for c, r in sorted(pivots.items()) if r[c] != 1]
    if not residue:
        return rank, ()
    support = sorted({c for r in residue for c in r})
    colmap = {c: j for j, c in enumerate(support)}
    dense = [[0] * len(support) for _ in residue]
    for i, r in enumerate(residue):
        for c, v in r.items():
            dense[i][colmap[c]] = v
    divisors = _dense_snf_divisors(dense)
    return rank, tuple(d for d in divisors if d != 1)


def row_space_invariants(m: IntMatrix) -> tuple[int, tuple[int, ...]]:
    """Rank and nontrivial invariant factors of the row lattice of ``m``."""
    return _lattice_invariants(m._rows)


def smith_normal_form(m: IntMatrix) -> list[int]:
    """Diagonal of the Smith normal form, length min(nrows, ncols).

    Entries are nonnegative and each divides the next; trailing zeros pad up
    to min(nrows, ncols).
    """
    rank, torsion = _lattice_invariants(m._rows)
    k = min(m.nrows, m.ncols)
    diag = [1] * (rank - len(torsion)) + list(torsion)
    diag += [0] * (k - len(diag))
    return diag


def quotient_invariants(span: IntMatrix, ambient_dim: int) -> QuotientInvariants:
    """Invariants of Z^ambient_dim modulo the row space of ``span``."""
    if span.ncols != ambient_dim:
        raise ValueError(f"span has {span.ncols} columns, ambient dimension is {ambient_dim}")
    rank, torsion = _lattice_invariants(span._rows)
    return QuotientInvariants(free_rank=ambient_dim - rank, torsion=torsion)

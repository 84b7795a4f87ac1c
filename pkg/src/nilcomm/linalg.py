"""Exact dense linear algebra over Q and over prime fields F_p.

Matrices are immutable; entries are ``Fraction`` over Q and canonical
residues ``0 <= x < p`` over F_p.  Elimination over Q is fraction-free
(Bareiss): rows are scaled to integers first and every intermediate
division is exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Either the rationals (``p is None``) or the prime field F_p."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None and not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    @property
    def is_rational(self) -> bool:
        return self.p is None

    def coerce(self, x):
        if self.p is None:
            return Fraction(x)
        if isinstance(x, Fraction):
            return (x.numerator * pow(x.denominator, -1, self.p)) % self.p
        return int(x) % self.p

    def __str__(self):
        return "q" if self.p is None else f"p:{self.p}"

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        """Parse ``q`` or ``p:<prime>``."""
        text = text.strip().lower()
        if text in ("q", "qq", "rationals"):
            return cls()
        if text.startswith("p:"):
            return cls(int(text[2:]))
        raise ValueError(f"unknown field {text!r}; use 'q' or 'p:<prime>'")


QQ = FieldSpec()


def GF(p: int) -> FieldSpec:
    return FieldSpec(p)


@dataclass(frozen=True)
class ExactMatrix:
    rows: int
    cols: int
    entries: tuple
    field: FieldSpec = QQ

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entry count does not match shape")

    # -- construction ---------------------------------------------------
    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], field: FieldSpec = QQ) -> "ExactMatrix":
        rows = [list(r) for r in rows]
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        return cls(nrows, ncols, tuple(field.coerce(x) for r in rows for x in r), field)

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None, field: FieldSpec = QQ) -> "ExactMatrix":
        cols = rows if cols is None else cols
        return cls(rows, cols, (field.coerce(0),) * (rows * cols), field)

    @classmethod
    def identity(cls, n: int, field: FieldSpec = QQ) -> "ExactMatrix":
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)], field)

    @classmethod
    def unit(cls, n: int, i: int, j: int, field: FieldSpec = QQ, cols: int | None = None) -> "ExactMatrix":
        """Matrix unit E_ij (0-based) of shape n x cols."""
        cols = n if cols is None else cols
        return cls.from_rows([[int((a, b) == (i, j)) for b in range(cols)] for a in range(n)], field)

    @classmethod
    def column(cls, values: Iterable, field: FieldSpec = QQ) -> "ExactMatrix":
        return cls.from_rows([[v] for v in values], field)

    @classmethod
    def block(cls, blocks: Sequence[Sequence["ExactMatrix"]]) -> "ExactMatrix":
        """Assemble a block matrix; all blocks share one field."""
        field = blocks[0][0].field
        out = []
        for brow in blocks:
            h = brow[0].rows
            for i in range(h):
                row = []
                for b in brow:
                    if b.rows != h:
                        raise ValueError("block heights differ")
                    row.extend(b.entries[i * b.cols:(i + 1) * b.cols])
                out.append(row)
        return cls.from_rows(out, field)

    # -- access ---------------------------------------------------------
    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def to_rows(self) -> list[list]:
        c = self.cols
        return [list(self.entries[i * c:(i + 1) * c]) for i in range(self.rows)]

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_zero(self) -> bool:
        return not any(self.entries)

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in r) for r in self.to_rows())
        return f"ExactMatrix[{self.rows}x{self.cols} over {self.field}]({body})"

    # -- arithmetic -----------------------------------------------------
    def _check_same(self, other: "ExactMatrix"):
        if self.field != other.field:
            raise ValueError("field mismatch")
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def _wrap(self, values, rows=None, cols=None) -> "ExactMatrix":
        rows = self.rows if rows is None else rows
        cols = self.cols if cols is None else cols
        p = self.field.p
        if p is not None:
            values = [v % p for v in values]
        return ExactMatrix(rows, cols, tuple(values), self.field)

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check_same(other)
        return self._wrap([a + b for a, b in zip(self.entries, other.entries)])

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check_same(other)
        return self._wrap([a - b for a, b in zip(self.entries, other.entries)])

    def __neg__(self) -> "ExactMatrix":
        return self._wrap([-a for a in self.entries])

    def scale(self, c) -> "ExactMatrix":
        c = self.field.coerce(c)
        return self._wrap([c * a for a in self.entries])

    def __mul__(self, c) -> "ExactMatrix":
        if isinstance(c, ExactMatrix):
            return self @ c
        return self.scale(c)

    __rmul__ = scale

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.field != other.field:
            raise ValueError("field mismatch")
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        a = self.to_rows()
        bt = list(zip(*other.to_rows())) if other.rows else [()] * other.cols
        out = []
        for row in a:
            nz = [(k, x) for k, x in enumerate(row) if x]
            for col in bt:
                out.append(sum((x * col[k] for k, x in nz), self.field.coerce(0)))
        return self._wrap(out, self.rows, other.cols)

    def __pow__(self, k: int) -> "ExactMatrix":
        if not self.is_square or k < 0:
            raise ValueError("power needs a square matrix and k >= 0")
        result = ExactMatrix.identity(self.rows, self.field)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def T(self) -> "ExactMatrix":
        c, r = self.cols, self.rows
        return ExactMatrix(c, r, tuple(self.entries[i * c + j] for j in range(c) for i in range(r)), self.field)

    def vec(self) -> tuple:
        """Row-major coordinates."""
        return self.entries

    def reshape(self, rows: int, cols: int) -> "ExactMatrix":
        return ExactMatrix(rows, cols, self.entries, self.field)

    def submatrix(self, r0: int, r1: int, c0: int, c1: int) -> "ExactMatrix":
        return ExactMatrix.from_rows([r[c0:c1] for r in self.to_rows()[r0:r1]], self.field)

    def with_field(self, field: FieldSpec) -> "ExactMatrix":
        return ExactMatrix.from_rows(self.to_rows(), field) if self.rows else \
            ExactMatrix.zeros(0, self.cols, field)


def hstack(mats: Sequence[ExactMatrix]) -> ExactMatrix:
    return ExactMatrix.block([list(mats)])


def vstack(mats: Sequence[ExactMatrix]) -> ExactMatrix:
    field = mats[0].field
    rows = [r for m in mats for r in m.to_rows()]
    if any(m.cols != mats[0].cols for m in mats):
        raise ValueError("column counts differ")
    return ExactMatrix.from_rows(rows, field) if rows else ExactMatrix.zeros(0, mats[0].cols, field)


# ----------------------------------------------------------------------
# elimination

def _integer_rows(rows: list[list[Fraction]]) -> list[list[int]]:
    out = []
    for r in rows:
        den = 1
        for x in r:
            den = den * x.denominator // math.gcd(den, x.denominator)
        out.append([int(x * den) for x in r])
    return out


def _rref_int(m: list[list[int]], ncols: int, reduce_above: bool):
    """Fraction-free Gauss(-Jordan) elimination in place.

    Returns the pivot columns. With ``reduce_above`` every pivot row ends up
    with the same pivot value d (the last pivot) and zeros elsewhere in the
    pivot columns, so kernel vectors are integral.
    """
    nrows = len(m)
    pivots = []
    prev = 1
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        prow = m[r]
        p = prow[c]
        targets = range(nrows) if reduce_above else range(r + 1, nrows)
        nz = [j for j in range(c, ncols) if prow[j]] if not reduce_above else \
            [j for j in range(ncols) if prow[j]]
        for i in targets:
            if i == r:
                continue
            row = m[i]
            f = row[c]
            if f == 0:
                if p != prev:
                    for j in range(ncols):
                        if row[j]:
                            row[j] = row[j] * p // prev
                continue
            new = [x * p for x in row]
            for j in nz:
                new[j] -= f * prow[j]
            if prev != 1:
                new = [x // prev for x in new]
            m[i] = new
        pivots.append(c)
        prev = p
        r += 1
    return pivots


def _rref_mod(m: list[list[int]], ncols: int, p: int, reduce_above: bool):
    nrows = len(m)
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], -1, p)
        prow = [(x * inv) % p for x in m[r]]
        m[r] = prow
        nz = [j for j in range(ncols) if prow[j]]
        targets = range(nrows) if reduce_above else range(r + 1, nrows)
        for i in targets:
            if i == r:
                continue
            row = m[i]
            f = row[c]
            if f:
                for j in nz:
                    row[j] = (row[j] - f * prow[j]) % p
        pivots.append(c)
        r += 1
    return pivots


def echelon(m: ExactMatrix, reduce_above: bool = False):
    """Return (pivot columns, reduced rows) of an exact elimination."""
    rows = m.to_rows()
    if m.field.is_rational:
        work = _integer_rows(rows)
        pivots = _rref_int(work, m.cols, reduce_above)
    else:
        work = [list(r) for r in rows]
        pivots = _rref_mod(work, m.cols, m.field.p, reduce_above)
    return pivots, work


def rank(m: ExactMatrix) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    return len(echelon(m)[0])


def kernel_basis(m: ExactMatrix) -> list[ExactMatrix]:
    """Column vectors spanning the right null space of ``m``.

    Over Q the vectors are primitive integer vectors.
    """
    field = m.field
    if m.rows == 0:
        return [ExactMatrix.column([int(i == j) for i in range(m.cols)], field) for j in range(m.cols)]
    pivots, rows = echelon(m, reduce_above=True)
    pivset = set(pivots)
    basis = []
    for f in range(m.cols):
        if f in pivset:
            continue
        v = [0] * m.cols
        if field.is_rational:
            d = rows[len(pivots) - 1][pivots[-1]] if pivots else 1
            v[f] = d
            for i, pc in enumerate(pivots):
                v[pc] = -rows[i][f]
            g = 0
            for x in v:
                g = math.gcd(g, x)
            if g > 1:
                v = [x // g for x in v]
            if d < 0:
                v = [-x for x in v]
        else:
            v[f] = 1
            for i, pc in enumerate(pivots):
                v[pc] = -rows[i][f]
        basis.append(ExactMatrix.column(v, field))
    return basis


def commutator(x: ExactMatrix, y: ExactMatrix) -> ExactMatrix:
    """[x, y] = xy - yx."""
    if not (x.is_square and y.is_square) or x.shape != y.shape:
        raise ValueError("commutator needs square matrices of equal size")
    if x.field != y.field:
        raise ValueError("field mismatch")
    return x @ y - y @ x


def is_nilpotent(x: ExactMatrix) -> bool:
    if not x.is_square:
        raise ValueError("nilpotency needs a square matrix")
    return (x ** x.rows).is_zero()


def ad_matrix(x: ExactMatrix) -> ExactMatrix:
    """Matrix of y -> [x, y] on gl_n in row-major matrix-unit coordinates."""
    n = x.rows
    field = x.field
    zero = field.coerce(0)
    a = x.to_rows()
    # [x, E_kl] = sum_i x_ik E_il - sum_j x_lj E_kj
    out = [[zero] * (n * n) for _ in range(n * n)]
    for k in range(n):
        for l in range(n):
            col = k * n + l
            for i in range(n):
                if a[i][k]:
                    out[i * n + l][col] += a[i][k]
            for j in range(n):
                if a[l][j]:
                    out[k * n + j][col] -= a[l][j]
    return ExactMatrix.from_rows(out, field)


def centralizer_basis(x: ExactMatrix) -> list[ExactMatrix]:
    """Basis of z(x) = ker ad(x), returned as n x n matrices."""
    n = x.rows
    return [v.reshape(n, n) for v in kernel_basis(ad_matrix(x))]


def rref_mod_p(rows: list[list[int]], p: int) -> tuple[list[int], list[list[int]]]:
    """Reduced row echelon form of plain integer rows over F_p.

    Returns (pivot columns, nonzero reduced rows).  Works on lists so hot
    loops can skip ``ExactMatrix`` construction.
    """
    work = [[x % p for x in r] for r in rows]
    ncols = len(work[0]) if work else 0
    pivots = _rref_mod(work, ncols, p, reduce_above=True)
    return pivots, work[:len(pivots)]


def kernel_mod_p(rows: list[list[int]], ncols: int, p: int) -> list[list[int]]:
    """Null space basis of an integer matrix over F_p, as plain lists."""
    if not rows:
        return [[int(i == j) for i in range(ncols)] for j in range(ncols)]
    pivots, red = rref_mod_p(rows, p)
    pivset = set(pivots)
    out = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [0] * ncols
        v[f] = 1
        for i, pc in enumerate(pivots):
            v[pc] = (-red[i][f]) % p
        out.append(v)
    return out

"""Standard nilpotents in grouped block form, their cocharacters and centralizers.

The grouped layout puts all Jordan blocks of one size i together as the
block matrix J~_i of size i*a_i: i block-rows of width a_i with identity
blocks I_{a_i} on the block superdiagonal.  Blocks are ordered from the
largest part down.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .linalg import QQ, ExactMatrix, FieldSpec, GF, commutator, is_nilpotent, kernel_basis, rank
from .partitions import Partition


@dataclass(frozen=True)
class BlockLayout:
    part: int          # block size i
    multiplicity: int  # a_i
    offset: int        # first row/column of J~_i


@dataclass(frozen=True)
class StandardNilpotent:
    partition: Partition
    matrix: ExactMatrix
    block_layout: tuple[BlockLayout, ...]

    @property
    def n(self) -> int:
        return self.partition.n

    @property
    def field(self) -> FieldSpec:
        return self.matrix.field


@dataclass(frozen=True)
class Cocharacter:
    """Diagonal torus weights w: lambda(t) = diag(t^w_1, ..., t^w_n)."""

    weights: tuple[int, ...]

    def weight_of_unit(self, i: int, j: int) -> int:
        """Weight of the matrix unit E_ij under conjugation."""
        return self.weights[i] - self.weights[j]

    def weight_of(self, x: ExactMatrix) -> int | None:
        """Common weight of the support of x, or None if x is not homogeneous."""
        ws = {self.weight_of_unit(i, j)
              for i in range(x.rows) for j in range(x.cols) if x[i, j]}
        if len(ws) > 1:
            return None
        return ws.pop() if ws else None


@dataclass
class GradedCentralizer:
    base: StandardNilpotent
    components: dict[int, list[ExactMatrix]] = field(default_factory=dict)

    def dims(self) -> dict[int, int]:
        return {w: len(b) for w, b in sorted(self.components.items()) if b}

    @property
    def dim(self) -> int:
        return sum(len(b) for b in self.components.values())

    def basis(self) -> list[ExactMatrix]:
        return [b for w in sorted(self.components) for b in self.components[w]]


def block_layout(lam: Partition) -> tuple[BlockLayout, ...]:
    out, offset = [], 0
    for i, a in lam.multiplicities().items():
        out.append(BlockLayout(i, a, offset))
        offset += i * a
    return tuple(out)


def standard_nilpotent(lam: Partition, field: FieldSpec = QQ) -> StandardNilpotent:
    n = lam.n
    rows = [[0] * n for _ in range(n)]
    layout = block_layout(lam)
    for blk in layout:
        a = blk.multiplicity
        for k in range(blk.part - 1):
            for j in range(a):
                rows[blk.offset + k * a + j][blk.offset + (k + 1) * a + j] = 1
    mat = ExactMatrix.from_rows(rows, field) if n else ExactMatrix.zeros(0, 0, field)
    return StandardNilpotent(lam, mat, layout)


def jordan_layout(lam: Partition, field: FieldSpec = QQ) -> ExactMatrix:
    """Plain Jordan normal form (one block per part), for conversions only."""
    n = lam.n
    rows = [[0] * n for _ in range(n)]
    offset = 0
    for m in lam.parts:
        for k in range(m - 1):
            rows[offset + k][offset + k + 1] = 1
        offset += m
    return ExactMatrix.from_rows(rows, field) if n else ExactMatrix.zeros(0, 0, field)


def associated_cocharacter(lam: Partition) -> Cocharacter:
    weights = []
    for blk in block_layout(lam):
        for k in range(blk.part):
            weights.extend([blk.part - 1 - 2 * k] * blk.multiplicity)
    return Cocharacter(tuple(weights))


def scales_by_t_squared(e: ExactMatrix, cochar: Cocharacter) -> bool:
    """Check lambda(t) . e = t^2 e, i.e. every nonzero entry sits at weight 2."""
    return all(cochar.weight_of_unit(i, j) == 2
               for i in range(e.rows) for j in range(e.cols) if e[i, j])


def graded_centralizer(x: StandardNilpotent) -> GradedCentralizer:
    """Solve [x, y] = 0 separately inside each cocharacter weight space.

    ad(x) raises weight by 2, so the kernel splits along weights.
    """
    n = x.n
    fld = x.field
    cochar = associated_cocharacter(x.partition)
    e = x.matrix.to_rows()
    by_weight: dict[int, list[tuple[int, int]]] = {}
    for i in range(n):
        for j in range(n):
            by_weight.setdefault(cochar.weight_of_unit(i, j), []).append((i, j))
    comps: dict[int, list[ExactMatrix]] = {}
    zero = fld.coerce(0)
    for w, units in sorted(by_weight.items()):
        targets = by_weight.get(w + 2, [])
        tindex = {u: k for k, u in enumerate(targets)}
        # column for E_kl: [x, E_kl] = sum_i x_ik E_il - sum_j x_lj E_kj
        cols = []
        for (k, l) in units:
            col = [zero] * len(targets)
            for i in range(n):
                if e[i][k]:
                    col[tindex[(i, l)]] += e[i][k]
            for j in range(n):
                if e[l][j]:
                    col[tindex[(k, j)]] -= e[l][j]
            cols.append(col)
        if targets:
            system = ExactMatrix.from_rows([list(r) for r in zip(*cols)], fld)
            kern = kernel_basis(system)
        else:
            kern = [ExactMatrix.column([int(a == b) for a in range(len(units))], fld)
                    for b in range(len(units))]
        mats = []
        for v in kern:
            rows = [[zero] * n for _ in range(n)]
            for (k, l), c in zip(units, v.entries):
                rows[k][l] = c
            mats.append(ExactMatrix.from_rows(rows, fld))
        if mats:
            comps[w] = mats
    return GradedCentralizer(x, comps)


def reductive_block(lam: Partition, part: int, a_block: ExactMatrix) -> ExactMatrix:
    """Delta_part(A) placed in the J~_part slot; zero elsewhere.

    ``a_block`` must be a_part x a_part.
    """
    fld = a_block.field
    layout = {b.part: b for b in block_layout(lam)}
    blk = layout[part]
    a = blk.multiplicity
    if a_block.shape != (a, a):
        raise ValueError(f"expected a {a}x{a} block")
    n = lam.n
    rows = [[0] * n for _ in range(n)]
    for k in range(part):
        base = blk.offset + k * a
        for i in range(a):
            for j in range(a):
                rows[base + i][base + j] = a_block[i, j]
    return ExactMatrix.from_rows(rows, fld)


def weight_component(y: ExactMatrix, cochar: Cocharacter, w: int) -> ExactMatrix:
    """Projection of y to the weight-w space of the cocharacter grading."""
    rows = [[y[i, j] if cochar.weight_of_unit(i, j) == w else 0 for j in range(y.cols)]
            for i in range(y.rows)]
    return ExactMatrix.from_rows(rows, y.field)


# ----------------------------------------------------------------------
# z'(e): y with k e + k y inside the orbit closure of e

def pencil_power(e: ExactMatrix, y: ExactMatrix, xi, eta, s: int) -> ExactMatrix:
    """(xi*e + eta*y)^s."""
    return (e.scale(xi) + y.scale(eta)) ** s


def _as_matrix(e) -> ExactMatrix:
    return e.matrix if isinstance(e, StandardNilpotent) else e


def zprime_membership(e, y: ExactMatrix) -> bool:
    """Decide y in z'(e) over Q through the rank conditions on powers.

    For each power s, every (rank(e^s)+1)-minor of (xi e + eta y)^s is a
    binary form of degree <= s*n in (xi:eta); it vanishes identically iff it
    vanishes at s*n+1 distinct points of P^1.  We use (0:1) together with
    (1:eta) for eta = 0..s*n, i.e. s*n+2 points.
    """
    e = _as_matrix(e)
    if not e.field.is_rational or y.field != e.field:
        raise ValueError("z' membership is decided over Q only")
    if not commutator(e, y).is_zero():
        raise ValueError("y does not centralize e")
    if not is_nilpotent(y):
        raise ValueError("y is not nilpotent")
    n = e.rows
    for s in range(1, n + 1):
        bound = rank(e ** s)
        points = [(0, 1)] + [(1, eta) for eta in range(s * n + 1)]
        for xi, eta in points:
            if rank(pencil_power(e, y, xi, eta, s)) > bound:
                return False
    return True


def zprime_counterexample_charp(p: int) -> bool:
    """Check (a e0 + b e)^p = 0 for all a, b in F_p, e of type [p,p] in gl_2p.

    Here e0 = Delta_p(E_12) is a nonzero nilpotent of the reductive part
    z(e;0) ~ gl_2.  A True result shows e0 in z'(e) in characteristic p,
    which the characteristic-zero statement z' in positive weights forbids.
    """
    if p == 2:
        raise ValueError("characteristic 2 is excluded")
    fld = GF(p)
    lam = Partition((p, p))
    e = standard_nilpotent(lam, fld).matrix
    e0 = reductive_block(lam, p, ExactMatrix.from_rows([[0, 1], [0, 0]], fld))
    return all(pencil_power(e, e0, b, a, p).is_zero()
               for a, b in itertools.product(range(p), repeat=2))


def counterexample_rational_power(p: int, a=1, b=1) -> ExactMatrix:
    """(a e0 + b e)^p for the same construction over Q (nonzero for a, b != 0)."""
    lam = Partition((p, p))
    e = standard_nilpotent(lam, QQ).matrix
    e0 = reductive_block(lam, p, ExactMatrix.from_rows([[0, 1], [0, 0]], QQ))
    return pencil_power(e, e0, b, a, p)


# ----------------------------------------------------------------------
# square-zero e in the (s, t, s) block form

def square_zero_form(s: int, t: int, field: FieldSpec = QQ) -> ExactMatrix:
    """e = [[0,0,I_s],[0,0,0],[0,0,0]] with blocks of sizes s, t, s."""
    n = 2 * s + t
    rows = [[0] * n for _ in range(n)]
    for i in range(s):
        rows[i][s + t + i] = 1
    return ExactMatrix.from_rows(rows, field)


def square_zero_cocharacter(s: int, t: int) -> Cocharacter:
    return Cocharacter((1,) * s + (0,) * t + (-1,) * s)


def square_zero_zprime_element(y_block, w_block, s: int, t: int, field: FieldSpec = QQ) -> ExactMatrix:
    """[[0, y, w],[0,0,0],[0,0,0]] with y in M_{s x t}, w in gl_s."""
    n = 2 * s + t
    rows = [[0] * n for _ in range(n)]
    for i in range(s):
        for j in range(t):
            rows[i][s + j] = y_block[i][j]
        for j in range(s):
            rows[i][s + t + j] = w_block[i][j]
    return ExactMatrix.from_rows(rows, field)


def square_zero_zprime_basis(s: int, t: int, field: FieldSpec = QQ) -> list[ExactMatrix]:
    """Matrix units spanning the explicit subspace of z'(e); s(s+t) of them."""
    n = 2 * s + t
    return [ExactMatrix.unit(n, i, j, field) for i in range(s) for j in range(s, n)]


def square_zero_weight0_nilpotent(s: int, t: int, field: FieldSpec = QQ) -> ExactMatrix | None:
    """A nonzero nilpotent in z(e;0) ~ gl_s + gl_t for the (s, t, s) form, if any.

    Uses diag(E_12, 0, E_12) when s >= 2, else E_12 inside the gl_t block;
    None when s, t <= 1 (z(e;0) is a torus then).
    """
    n = 2 * s + t
    rows = [[0] * n for _ in range(n)]
    if s >= 2:
        rows[0][1] = rows[s + t][s + t + 1] = 1
    elif t >= 2:
        rows[s][s + 1] = 1
    else:
        return None
    return ExactMatrix.from_rows(rows, field)

"""Maximal components G.u^r of C_r(N(gl_n)) and the closed dimension formulas."""

from __future__ import annotations

import random
from dataclasses import dataclass, asdict

from .linalg import QQ, ExactMatrix, FieldSpec, rank, vstack, hstack, is_prime


class OutOfRangeError(ValueError):
    """Raised for (n, r) outside the range where a formula is established."""


def floor_quarter_square(n: int) -> int:
    return n * n // 4


@dataclass(frozen=True)
class NilradicalUst:
    """u_{s,n-s}: matrices supported on rows < s and columns >= s."""

    n: int
    s: int

    def __post_init__(self):
        if not 0 <= self.s <= self.n:
            raise ValueError("need 0 <= s <= n")

    @property
    def dim(self) -> int:
        return self.s * (self.n - self.s)

    def coordinates(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.s) for j in range(self.s, self.n)]

    def basis(self, field: FieldSpec = QQ) -> list[ExactMatrix]:
        return [ExactMatrix.unit(self.n, i, j, field) for i, j in self.coordinates()]

    def element(self, values, field: FieldSpec = QQ) -> ExactMatrix:
        rows = [[0] * self.n for _ in range(self.n)]
        for (i, j), v in zip(self.coordinates(), values):
            rows[i][j] = v
        return ExactMatrix.from_rows(rows, field)

    def random_element(self, rng: random.Random, lo: int = -9, hi: int = 9,
                       field: FieldSpec = QQ) -> ExactMatrix:
        return self.element([rng.randint(lo, hi) for _ in range(self.dim)], field)


@dataclass
class ComponentReport:
    name: str
    n: int
    r: int
    dim: int
    is_max: bool
    count_of_max_components: int
    s: int | None = None
    seed: int | None = None

    def to_dict(self) -> dict:
        return {k: v for k, v in asdict(self).items() if v is not None}


def _require_theorem_range(n: int, r: int):
    if n < 4 or r < 7:
        raise OutOfRangeError(
            f"(n, r) = ({n}, {r}) is outside theorem range n >= 4, r >= 7: "
            "formula not established")


def dim_G_u_component(n: int, s: int, r: int) -> int:
    """dim G.u_{s,n-s}^r = (r+1) s (n-s)."""
    if not 0 <= s <= n or r < 1:
        raise ValueError("need 0 <= s <= n and r >= 1")
    return (r + 1) * s * (n - s)


def max_component_count(n: int) -> int:
    return 1 if n % 2 == 0 else 2


def dim_ccv_nilpotent(n: int, r: int) -> int:
    """dim C_r(N(gl_n)) = (r+1) floor(n^2/4) for n >= 4, r >= 7."""
    _require_theorem_range(n, r)
    return (r + 1) * floor_quarter_square(n)


def nilpotent_report(n: int, r: int) -> ComponentReport:
    return ComponentReport("G_u_component", n, r, dim_ccv_nilpotent(n, r), True,
                           max_component_count(n), s=n // 2)


def dim_ccv_gl(n: int, r: int) -> int:
    _require_theorem_range(n, r)
    if (n, r) == (4, 7):
        return 40
    return (r + 1) * floor_quarter_square(n) + r


def dim_ccv_sl(n: int, r: int, p: int) -> int:
    """dim C_r(sl_n) in characteristic p (p prime, not 2 or 3)."""
    _require_theorem_range(n, r)
    if not is_prime(p) or p in (2, 3):
        raise OutOfRangeError(f"characteristic {p} not covered (need a prime other than 2, 3)")
    if n % p == 0:
        return dim_ccv_gl(n, r)
    if (n, r) == (4, 7):
        return 33
    return (r + 1) * floor_quarter_square(n)


def regular_component_dim(n: int, r: int) -> int:
    if n < 1 or r < 1:
        raise ValueError("need n, r >= 1")
    return (n - 1) * (r + n - 1)


def generic_component_dim(n: int, r: int) -> int:
    if n < 1 or r < 1:
        raise ValueError("need n, r >= 1")
    return n * n + (r - 1) * n


def crossover_lists(n_max: int, r_max: int) -> tuple[list[tuple[int, int]], list[tuple[int, int]]]:
    """Pairs (n, r), 4 <= n, r, where the regular (resp. generic) component
    exceeds (r+1) floor(n^2/4) (resp. that plus r)."""
    if n_max < 4 or r_max < 4:
        raise ValueError("need n_max, r_max >= 4")
    nil, ordinary = [], []
    for n in range(4, n_max + 1):
        for r in range(4, r_max + 1):
            base = (r + 1) * floor_quarter_square(n)
            if regular_component_dim(n, r) > base:
                nil.append((n, r))
            if generic_component_dim(n, r) > base + r:
                ordinary.append((n, r))
    return nil, ordinary


def membership_G_u_r(xs: list[ExactMatrix], s: int) -> bool:
    """Closed conditions cutting out G.u_{s,n-s}^r.

    All products x_i x_j vanish, the rows of all x_i span at most n-s
    dimensions and their columns at most s.
    """
    if not xs:
        return True
    n = xs[0].rows
    if any(x.shape != (n, n) for x in xs) or len({x.field for x in xs}) != 1:
        raise ValueError("tuple entries must be n x n over one field")
    for x in xs:
        for y in xs:
            if not (x @ y).is_zero():
                return False
    return rank(vstack(xs)) <= n - s and rank(hstack(xs)) <= s


def gl_r_dot(a: list[list[int]], xs: list[ExactMatrix]) -> list[ExactMatrix]:
    """(a_ij) . (x_1..x_r) = (sum_j a_1j x_j, ..., sum_j a_rj x_j)."""
    out = []
    for row in a:
        acc = ExactMatrix.zeros(xs[0].rows, xs[0].cols, xs[0].field)
        for c, x in zip(row, xs):
            if c:
                acc = acc + x.scale(c)
        out.append(acc)
    return out


# ----------------------------------------------------------------------
# Jacobian-rank oracle

def jacobian_matrix(n: int, s: int, ys: list[ExactMatrix]) -> ExactMatrix:
    """Differential of (g, v_1..v_r) -> (g.v_i) at g = 1, v = y.

    Domain gl_n + u^r, codomain gl_n^r; (A, v) -> (v_i + [A, y_i])_i.
    """
    u = NilradicalUst(n, s)
    r = len(ys)
    ncols = n * n + r * u.dim
    rows = [[0] * ncols for _ in range(r * n * n)]
    for t, y in enumerate(ys):
        yr = y.to_rows()
        base = t * n * n
        # A = E_kl: [E_kl, y] = sum_j y_lj E_kj - sum_i y_ik E_il
        for k in range(n):
            for l in range(n):
                col = k * n + l
                for j in range(n):
                    if yr[l][j]:
                        rows[base + k * n + j][col] += yr[l][j]
                for i in range(n):
                    if yr[i][k]:
                        rows[base + i * n + l][col] -= yr[i][k]
        for c, (i, j) in enumerate(u.coordinates()):
            rows[base + i * n + j][n * n + t * u.dim + c] = 1
    return ExactMatrix.from_rows(rows, QQ)


def jacobian_rank(n: int, s: int, ys: list[ExactMatrix]) -> int:
    """Rank of ``jacobian_matrix`` computed after pivoting out the v-columns.

    Each v-column is a unit vector on a u-coordinate of one gl_n copy, so
    those columns pivot on their own rows; what remains is the A-block
    restricted to the coordinates outside u.
    """
    u = NilradicalUst(n, s)
    ucoords = set(u.coordinates())
    outside = [(i, j) for i in range(n) for j in range(n) if (i, j) not in ucoords]
    rows = []
    for y in ys:
        yr = y.to_rows()
        block = {(i, j): [0] * (n * n) for (i, j) in outside}
        for k in range(n):
            for l in range(n):
                col = k * n + l
                for j in range(n):
                    if yr[l][j] and (k, j) in block:
                        block[(k, j)][col] += yr[l][j]
                for i in range(n):
                    if yr[i][k] and (i, l) in block:
                        block[(i, l)][col] -= yr[i][k]
        rows.extend(r_ for r_ in block.values() if any(r_))
    a_rank = rank(ExactMatrix.from_rows(rows, QQ)) if rows else 0
    return len(ys) * u.dim + a_rank


def _sample_tuple(n: int, s: int, r: int, rng: random.Random) -> list[ExactMatrix]:
    u = NilradicalUst(n, s)
    return [u.random_element(rng) for _ in range(r)]


def jacobian_component_dim(n: int, s: int, r: int, seed: int = 0,
                           max_attempts: int = 5) -> int:
    """Generic rank of the saturation map's differential at random points of u^r.

    Any point gives a lower bound for dim G.u^r; the generic value is that
    dimension.  A rank below (r+1)s(n-s) triggers resampling, up to
    ``max_attempts`` points, and the largest rank seen is returned.
    """
    return jacobian_component_report(n, s, r, seed, max_attempts)["dim"]


def jacobian_component_report(n: int, s: int, r: int, seed: int = 0,
                              max_attempts: int = 5) -> dict:
    if r < 1 or not 0 <= s <= n:
        raise ValueError("need r >= 1 and 0 <= s <= n")
    target = dim_G_u_component(n, s, r)
    best, attempts = -1, 0
    for attempt in range(max_attempts):
        rng = random.Random(f"{seed}:{attempt}")
        attempts += 1
        best = max(best, jacobian_rank(n, s, _sample_tuple(n, s, r, rng)))
        if best >= target:
            break
    return {"n": n, "s": s, "r": r, "seed": seed, "attempts": attempts,
            "dim": best, "formula": target, "agrees": best == target}

"""Exact F_q point counts of small varieties, with a dimension-slope diagnostic.

Counts are exact Python integers.  Where the defining equations are linear
in one block of coordinates once the others are fixed, we enumerate the
fixed block and add q^(nullity) per point instead of enumerating fibres.
Only ``fit_dimension`` uses floating point.
"""

from __future__ import annotations

import csv
import io
import itertools
import math
import os
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .linalg import is_prime, kernel_mod_p, rref_mod_p

DEFAULT_BUDGET = 10 ** 8
CHUNK = 1 << 16


class BudgetExceeded(RuntimeError):
    pass


def budget_from_env(default: int = DEFAULT_BUDGET) -> int:
    value = os.environ.get("NILCOMM_BUDGET")
    return int(value) if value else default


def _check_q(q: int):
    if not is_prime(q):
        raise ValueError(f"q = {q} must be prime")


def _check_budget(points: int, budget: int | None, what: str):
    budget = budget_from_env() if budget is None else budget
    if points > budget:
        raise BudgetExceeded(f"{what}: {points} points exceed enumeration budget {budget}")


# ----------------------------------------------------------------------
# vectorized helpers

def all_vectors(q: int, k: int, start: int = 0, stop: int | None = None) -> np.ndarray:
    """Rows start..stop of the lexicographic list of F_q^k, shape (N, k)."""
    stop = q ** k if stop is None else stop
    idx = np.arange(start, stop, dtype=np.int64)
    out = np.empty((len(idx), k), dtype=np.int64)
    for col in range(k - 1, -1, -1):
        out[:, col] = idx % q
        idx //= q
    return out


def _chunks(total: int, size: int = CHUNK):
    for start in range(0, total, size):
        yield start, min(total, start + size)


def batched_rank_mod_p(mats: np.ndarray, p: int) -> np.ndarray:
    """Ranks over F_p of a stack of integer matrices, shape (N, R, C)."""
    a = np.array(mats, dtype=np.int64) % p
    n, rows, cols = a.shape
    rk = np.zeros(n, dtype=np.int64)
    if rows == 0 or cols == 0 or n == 0:
        return rk
    inv = np.zeros(p, dtype=np.int64)
    for x in range(1, p):
        inv[x] = pow(x, -1, p)
    ar = np.arange(n)
    row_ids = np.arange(rows)
    for c in range(cols):
        cand = (a[:, :, c] != 0) & (row_ids[None, :] >= rk[:, None])
        has = cand.any(axis=1)
        if not has.any():
            continue
        sel = ar[has]
        piv = cand[sel].argmax(axis=1)
        tgt = rk[sel]
        # swap pivot row into position rk
        prow = a[sel, piv].copy()
        a[sel, piv] = a[sel, tgt]
        prow = (prow * inv[prow[:, c]][:, None]) % p
        a[sel, tgt] = prow
        below = row_ids[None, :] > tgt[:, None]
        f = a[sel, :, c] * below
        a[sel] = (a[sel] - f[:, :, None] * prow[:, None, :]) % p
        rk[sel] += 1
    return rk


def _powers_zero(x: np.ndarray, k: int, p: int) -> np.ndarray:
    """Boolean mask: x^k == 0 mod p for a stack of square matrices."""
    acc = x % p
    for _ in range(k - 1):
        acc = np.matmul(acc, x) % p
    return ~acc.reshape(len(x), -1).any(axis=1)


def _sum_q_powers(ranks: np.ndarray, unknowns: int, q: int) -> int:
    counts = np.bincount(ranks, minlength=unknowns + 1)
    return sum(int(c) * q ** (unknowns - k) for k, c in enumerate(counts) if c)


# ----------------------------------------------------------------------
# U_{s,t} = {(y, z) : yz = 0, zy = 0}

def _ust_systems(ys: np.ndarray, s: int, t: int) -> np.ndarray:
    """Linear systems in z (t x s) for yz = 0 and zy = 0, one per y."""
    n = len(ys)
    eye_s = np.eye(s, dtype=np.int64)
    eye_t = np.eye(t, dtype=np.int64)
    # (yz)_{ik} = sum_j y_ij z_jk
    l1 = np.einsum("nij,kK->nikjK", ys, eye_s).reshape(n, s * s, t * s)
    # (zy)_{jl} = sum_k z_jk y_kl
    l2 = np.einsum("jJ,nkl->njlJk", eye_t, ys).reshape(n, t * t, t * s)
    return np.concatenate([l1, l2], axis=1)


def count_Ust(s: int, t: int, q: int, budget: int | None = None) -> int:
    """|U_{s,t}(F_q)|, summing q^dim(fibre over y) over all y in M_{s x t}."""
    _check_q(q)
    if s == 0 or t == 0:
        return 1
    total_y = q ** (s * t)
    _check_budget(total_y, budget, f"U_{{{s},{t}}} over F_{q}")
    total = 0
    for a, b in _chunks(total_y):
        ys = all_vectors(q, s * t, a, b).reshape(-1, s, t)
        total += _sum_q_powers(batched_rank_mod_p(_ust_systems(ys, s, t), q), t * s, q)
    return total


def count_Ust_bruteforce(s: int, t: int, q: int) -> int:
    """Oracle: test every pair (y, z) directly."""
    if s == 0 or t == 0:
        return 1
    pairs = all_vectors(q, 2 * s * t)
    y = pairs[:, :s * t].reshape(-1, s, t)
    z = pairs[:, s * t:].reshape(-1, t, s)
    ok = ~(np.matmul(y, z) % q).reshape(len(y), -1).any(axis=1)
    ok &= ~(np.matmul(z, y) % q).reshape(len(y), -1).any(axis=1)
    return int(ok.sum())


# ----------------------------------------------------------------------
# W_{r,s,t} = {(y_1..y_r, z_1..z_r) : y_i z_j = y_j z_i}

def _w_systems(ys: np.ndarray, r: int, s: int, t: int) -> np.ndarray:
    """Linear systems in (z_1..z_r) for y_i z_j - y_j z_i = 0, i < j."""
    n = len(ys)
    eye_s = np.eye(s, dtype=np.int64)
    block = t * s
    rows = []
    for i, j in itertools.combinations(range(r), 2):
        sys_ij = np.zeros((n, s * s, r * block), dtype=np.int64)
        # (y_i z_j)_{xb} = sum_a y_i[x,a] z_j[a,b]
        sys_ij[:, :, j * block:(j + 1) * block] += \
            np.einsum("nxa,bB->nxbaB", ys[:, i], eye_s).reshape(n, s * s, block)
        sys_ij[:, :, i * block:(i + 1) * block] -= \
            np.einsum("nxa,bB->nxbaB", ys[:, j], eye_s).reshape(n, s * s, block)
        rows.append(sys_ij)
    if not rows:
        return np.zeros((n, 0, r * block), dtype=np.int64)
    return np.concatenate(rows, axis=1)


def count_W(r: int, s: int, t: int, q: int, budget: int | None = None) -> int:
    """|W_{r,s,t}(F_q)|, fibred over the y-tuple (the z-conditions are linear)."""
    _check_q(q)
    if r < 1:
        raise ValueError("r must be positive")
    if s == 0 or t == 0:
        return 1
    total_y = q ** (r * s * t)
    _check_budget(total_y, budget, f"W_{{{r},{s},{t}}} over F_{q}")
    unknowns = r * t * s
    total = 0
    for a, b in _chunks(total_y, max(1, CHUNK // max(1, r * r))):
        ys = all_vectors(q, r * s * t, a, b).reshape(-1, r, s, t)
        systems = _w_systems(ys, r, s, t)
        if systems.shape[1] == 0:
            total += (b - a) * q ** unknowns
            continue
        total += _sum_q_powers(batched_rank_mod_p(systems, q), unknowns, q)
    return total


def count_W_bruteforce(r: int, s: int, t: int, q: int) -> int:
    """Oracle: enumerate every (2r)-tuple."""
    if s == 0 or t == 0:
        return 1
    pts = all_vectors(q, 2 * r * s * t)
    ys = pts[:, :r * s * t].reshape(-1, r, s, t)
    zs = pts[:, r * s * t:].reshape(-1, r, t, s)
    ok = np.ones(len(pts), dtype=bool)
    for i, j in itertools.combinations(range(r), 2):
        d = (np.matmul(ys[:, i], zs[:, j]) - np.matmul(ys[:, j], zs[:, i])) % q
        ok &= ~d.reshape(len(pts), -1).any(axis=1)
    return int(ok.sum())


# ----------------------------------------------------------------------
# V_{c,m,l} = {u : rank u = c-m-l, rank u^2 = c-2m-l}

def count_V(c: int, m: int, l: int, q: int, budget: int | None = None) -> int:
    _check_q(q)
    if min(c, m, l) < 0 or 2 * m + l > c:
        raise ValueError("need non-negative c, m, l with 2m + l <= c")
    total_u = q ** (c * c)
    _check_budget(total_u, budget, f"V_{{{c},{m},{l}}} over F_{q}")
    if c == 0:
        return 1
    want1, want2 = c - m - l, c - 2 * m - l
    total = 0
    for a, b in _chunks(total_u):
        us = all_vectors(q, c * c, a, b).reshape(-1, c, c)
        r1 = batched_rank_mod_p(us, q)
        keep = r1 == want1
        if not keep.any():
            continue
        sq = np.matmul(us[keep], us[keep]) % q
        total += int((batched_rank_mod_p(sq, q) == want2).sum())
    return total


def gl_order(c: int, q: int) -> int:
    out = 1
    for i in range(c):
        out *= q ** c - q ** i
    return out


# ----------------------------------------------------------------------
# C_r(N(gl_n)) for n <= 3

class _CommutingCounter:
    """Counts r-tuples of pairwise commuting nilpotents in a subspace.

    f(k, S) = sum over nilpotent x in S of f(k-1, S cap z(x)), memoized on
    the reduced echelon basis of S.  Nonzero x are taken up to scalars,
    since x and cx have the same centralizer.
    """

    def __init__(self, n: int, q: int, budget: int):
        self.n, self.q, self.budget = n, q, budget
        self.enumerated = 0
        self._nil_cache: dict[tuple, np.ndarray] = {}
        self._memo: dict[tuple, int] = {}

    def nilpotent_coeffs(self, basis: tuple) -> np.ndarray:
        """Coefficient vectors (w.r.t. basis) of nilpotent elements of span(basis)."""
        if basis in self._nil_cache:
            return self._nil_cache[basis]
        k, n, q = len(basis), self.n, self.q
        self.enumerated += q ** k
        if self.enumerated > self.budget:
            raise BudgetExceeded(f"C_r(N(gl_{n})) over F_{q}: enumeration budget {self.budget} exceeded")
        b = np.array(basis, dtype=np.int64).reshape(k, n * n) if k else np.zeros((0, n * n), dtype=np.int64)
        found = []
        for a, c in _chunks(q ** k):
            coeffs = all_vectors(q, k, a, c)
            xs = (coeffs @ b % q).reshape(-1, n, n)
            found.append(coeffs[_powers_zero(xs, n, q)])
        out = np.concatenate(found) if found else np.zeros((0, k), dtype=np.int64)
        self._nil_cache[basis] = out
        return out

    def intersect_centralizer(self, basis: tuple, coeff) -> tuple:
        n, q = self.n, self.q
        mats = [np.array(v, dtype=np.int64).reshape(n, n) for v in basis]
        x = sum(int(c) * m for c, m in zip(coeff, mats)) % q
        # columns: vec([x, B_i])
        cols = [((x @ m - m @ x) % q).reshape(-1).tolist() for m in mats]
        system = [list(row) for row in zip(*cols)]
        kern = kernel_mod_p(system, len(basis), q)
        if not kern:
            return ()
        new = [[sum(c * v[j] for c, v in zip(kv, basis)) % q for j in range(n * n)] for kv in kern]
        _, red = rref_mod_p(new, q)
        return tuple(tuple(r) for r in red)

    def count(self, k: int, basis: tuple) -> int:
        if k == 0:
            return 1
        key = (k, basis)
        if key in self._memo:
            return self._memo[key]
        nil = self.nilpotent_coeffs(basis)
        if k == 1:
            total = len(nil)
        else:
            total = self.count(k - 1, basis)  # x = 0
            for coeff in nil:
                nz = np.flatnonzero(coeff)
                if len(nz) == 0 or coeff[nz[0]] != 1:
                    continue
                total += (self.q - 1) * self.count(k - 1, self.intersect_centralizer(basis, coeff))
        self._memo[key] = total
        return total


def count_commuting_nilpotent(n: int, r: int, q: int, budget: int | None = None) -> int:
    """|C_r(N(gl_n))(F_q)| for n <= 3."""
    _check_q(q)
    if n > 3:
        raise ValueError("n > 3 is not supported (variety not known irreducible)")
    if n < 0 or r < 0:
        raise ValueError("n, r must be non-negative")
    if n == 0:
        return 1
    budget = budget_from_env() if budget is None else budget
    full = tuple(tuple(int(i == j) for j in range(n * n)) for i in range(n * n))
    return _CommutingCounter(n, q, budget).count(r, full)


def count_commuting_nilpotent_bruteforce(n: int, r: int, q: int) -> int:
    """Oracle: enumerate all nilpotent matrices and test every r-tuple."""
    xs = all_vectors(q, n * n).reshape(-1, n, n)
    nil = xs[_powers_zero(xs, n, q)]
    total = 0
    for tup in itertools.product(range(len(nil)), repeat=r):
        ms = [nil[i] for i in tup]
        if all(not ((a @ b - b @ a) % q).any() for a, b in itertools.combinations(ms, 2)):
            total += 1
    return total


# ----------------------------------------------------------------------
# dimension claims and slope fit

def claimed_dim_U(s: int, t: int) -> int:
    return s * t


def claimed_dim_W(r: int, s: int, t: int) -> tuple[int, str]:
    """Exact dimension for t = 1 (r >= 2); otherwise the general upper bound."""
    if s == 0 or t == 0:
        return 0, "exact"
    if t == 1 and r >= 2:
        if s == 1:
            return r + 1, "exact"
        return (r * s, "exact") if r >= 3 else (2 * s + 1, "exact")
    return (r + 1) * s * t + t * t // 2, "upper_bound"


def claimed_dim_V(c: int, m: int, l: int) -> int:
    return c * c - (2 * m * m + 2 * m * l + l * l)


def claimed_dim_commuting_nilpotent(n: int, r: int) -> int:
    """Dimension of the regular component (n - 1)(r + n - 1)."""
    return (n - 1) * (r + n - 1) if n >= 1 else 0


def fit_dimension(samples) -> Fraction:
    """Average log-log slope over consecutive samples, to 3 decimals."""
    samples = sorted(samples)
    if len(samples) < 2:
        raise ValueError("need at least two (q, count) samples")
    if any(c <= 0 for _, c in samples):
        raise ValueError("counts must be positive")
    slopes = [(math.log(c2) - math.log(c1)) / (math.log(q2) - math.log(q1))
              for (q1, c1), (q2, c2) in zip(samples, samples[1:])]
    return Fraction(round(1000 * sum(slopes) / len(slopes)), 1000)


@dataclass
class CountReport:
    variety: str
    params: dict
    samples: list[tuple[int, int]] = field(default_factory=list)
    claimed_dim: int | None = None
    claim_kind: str = "exact"
    tolerance: Fraction = Fraction(6, 10)
    skipped: list[int] = field(default_factory=list)
    note: str = ("point-count slopes estimate dimension heuristically at small q; "
                 "a FAIL reports counts for inspection, not a disproof")

    @property
    def fitted_dim(self) -> Fraction | None:
        return fit_dimension(self.samples) if len(self.samples) >= 2 else None

    @property
    def verdict(self) -> str:
        fd = self.fitted_dim
        if fd is None or self.claimed_dim is None:
            return "INCONCLUSIVE"
        if self.claim_kind == "upper_bound":
            return "PASS" if fd <= self.claimed_dim + self.tolerance else "FAIL"
        return "PASS" if abs(fd - self.claimed_dim) <= self.tolerance else "FAIL"

    def to_dict(self) -> dict:
        fd = self.fitted_dim
        return {
            "variety": self.variety,
            "params": self.params,
            "samples": [{"q": q, "count": c} for q, c in self.samples],
            "skipped_q": self.skipped,
            "fitted_dim": None if fd is None else f"{fd.numerator}/{fd.denominator}",
            "claimed_dim": self.claimed_dim,
            "claim_kind": self.claim_kind,
            "tolerance": f"{self.tolerance.numerator}/{self.tolerance.denominator}",
            "verdict": self.verdict,
            "note": self.note,
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["q", "count"])
        w.writerows(self.samples)
        return buf.getvalue()


def count_report(variety: str, params: dict, qs, budget: int | None = None,
                 tolerance: Fraction = Fraction(6, 10)) -> CountReport:
    """Count ``variety`` (U, W, V or Cnil) at each q; q over budget is skipped."""
    variety = variety.upper() if variety.lower() != "cnil" else "Cnil"
    if variety == "U":
        s, t = params["s"], params["t"]
        fn, claim, kind = (lambda q: count_Ust(s, t, q, budget)), claimed_dim_U(s, t), "exact"
    elif variety == "W":
        r, s, t = params["r"], params["s"], params["t"]
        fn = lambda q: count_W(r, s, t, q, budget)
        claim, kind = claimed_dim_W(r, s, t)
    elif variety == "V":
        c, m, l = params["c"], params["m"], params["l"]
        fn, claim, kind = (lambda q: count_V(c, m, l, q, budget)), claimed_dim_V(c, m, l), "exact"
    elif variety == "Cnil":
        n, r = params["n"], params["r"]
        fn = lambda q: count_commuting_nilpotent(n, r, q, budget)
        claim, kind = claimed_dim_commuting_nilpotent(n, r), "exact"
    else:
        raise ValueError(f"unknown variety {variety!r}")
    report = CountReport(variety, dict(params), claimed_dim=claim, claim_kind=kind, tolerance=tolerance)
    for q in qs:
        try:
            report.samples.append((q, fn(q)))
        except BudgetExceeded:
            report.skipped.append(q)
    return report

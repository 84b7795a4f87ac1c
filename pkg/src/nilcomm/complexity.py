"""Complexity of the trivial module for Frobenius kernels of GL_n and for
finite groups SL_n(F_{p^r}), plus p-adic splitting of weights."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .components import OutOfRangeError, dim_ccv_nilpotent, floor_quarter_square
from .linalg import is_prime

MAXCOMPLEX_VERDICT = "requires module construction, out of scope"
RESTRICTED_NOT_COMPUTED = "restricted nullcone case not computed"


@dataclass(frozen=True)
class ComplexityQuery:
    n: int
    r: int
    p: int

    def __post_init__(self):
        if self.n < 4 or self.r < 7:
            raise OutOfRangeError(f"(n, r) = ({self.n}, {self.r}) is outside theorem range n >= 4, r >= 7")
        if not is_prime(self.p) or self.p <= 3:
            raise OutOfRangeError(f"p = {self.p} must be a prime > 3")


def frobenius_kernel_complexity(q: ComplexityQuery) -> int:
    """Complexity of the trivial G_(r)-module (and of M with p not dividing dim M)."""
    return (q.r + 1) * floor_quarter_square(q.n)


def chevalley_p_rank_sln(n: int, r: int) -> int:
    """p-rank of SL_n(F_{p^r}), i.e. r floor(n^2/4)."""
    if n < 2 or r < 0:
        raise ValueError("need n >= 2 and r >= 0")
    return r * floor_quarter_square(n)


@dataclass(frozen=True)
class RatioCheck:
    lhs: int
    rhs: Fraction
    holds: bool
    equality: bool

    def to_dict(self) -> dict:
        return {"lhs": self.lhs, "rhs": f"{self.rhs.numerator}/{self.rhs.denominator}",
                "holds": self.holds, "equality": self.equality}


def ratio_inequality_check(n: int, r: int, p: int) -> RatioCheck:
    """Compare c_{SL_n(F_{p^r})}(k) with r/(r+1) c_{G_(r)}(k)."""
    q = ComplexityQuery(n, r, p)
    lhs = chevalley_p_rank_sln(n, r)
    rhs = Fraction(r, r + 1) * frobenius_kernel_complexity(q)
    return RatioCheck(lhs, rhs, lhs <= rhs, lhs == rhs)


def nullcone_cross_check(q: ComplexityQuery) -> dict:
    """Compare with dim C_r(N(gl_n)); only meaningful when p > n."""
    value = frobenius_kernel_complexity(q)
    if q.p <= q.n:
        return {"status": RESTRICTED_NOT_COMPUTED, "frobenius": value}
    dim = dim_ccv_nilpotent(q.n, q.r)
    return {"status": "compared", "frobenius": value, "nilpotent_commuting_dim": dim,
            "agrees": dim == value}


def maxcomplex_verdict(*_args) -> str:
    return MAXCOMPLEX_VERDICT


# ----------------------------------------------------------------------
# lambda = lambda_0 + p lambda_1 + ... + p^{r-1} lambda_{r-1}

@dataclass(frozen=True)
class WeightDigits:
    weight: tuple[int, ...]
    p: int
    r: int
    digits: tuple[tuple[int, ...], ...]

    def reassemble(self) -> tuple[int, ...]:
        return reassemble(self.digits, self.p)

    def to_dict(self) -> dict:
        return {"lambda": list(self.weight), "p": self.p, "r": self.r,
                "digits": [list(d) for d in self.digits]}


def p_adic_decompose(weight, p: int, r: int) -> WeightDigits:
    weight = tuple(int(x) for x in weight)
    if not is_prime(p):
        raise ValueError(f"p = {p} is not prime")
    if r < 1:
        raise ValueError("r must be positive")
    bound = p ** r
    if any(not 0 <= x < bound for x in weight):
        raise ValueError(f"weight {weight} is not p^r-restricted (coordinates must lie in [0, {bound}))")
    digits, rest = [], list(weight)
    for _ in range(r):
        digits.append(tuple(x % p for x in rest))
        rest = [x // p for x in rest]
    return WeightDigits(weight, p, r, tuple(digits))


def reassemble(digits, p: int) -> tuple[int, ...]:
    if not digits:
        return ()
    out = [0] * len(digits[0])
    for i, d in enumerate(digits):
        for j, x in enumerate(d):
            out[j] += p ** i * x
    return tuple(out)


def restricted_weights(rank: int, p: int, r: int):
    """All p^r-restricted weights with ``rank`` fundamental-weight coordinates."""
    return itertools.product(range(p ** r), repeat=rank)

"""Partitions indexing nilpotent GL_n-orbits."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterator


@dataclass(frozen=True, order=True)
class Partition:
    """Weakly decreasing tuple of positive parts; normalized on construction."""

    parts: tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(int(x) for x in self.parts)
        if any(x <= 0 for x in parts):
            raise ValueError(f"parts must be positive: {parts}")
        object.__setattr__(self, "parts", tuple(sorted(parts, reverse=True)))

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """Parse ``"4,3,1,1"``; the empty string gives the empty partition."""
        text = text.strip().strip("[]")
        if not text:
            return cls(())
        return cls(tuple(int(x) for x in text.split(",")))

    @classmethod
    def from_multiplicities(cls, mult: dict[int, int]) -> "Partition":
        """Build [m^{a_m}, ..., 1^{a_1}] from {i: a_i}."""
        return cls(tuple(i for i, a in mult.items() for _ in range(a)))

    @property
    def n(self) -> int:
        return sum(self.parts)

    @property
    def largest(self) -> int:
        return self.parts[0] if self.parts else 0

    def multiplicity(self, i: int) -> int:
        """a_i, the number of parts equal to i."""
        return self.parts.count(i)

    def multiplicities(self) -> dict[int, int]:
        """{i: a_i} for parts that occur, largest part first."""
        c = Counter(self.parts)
        return {i: c[i] for i in sorted(c, reverse=True)}

    def __str__(self):
        return ",".join(str(x) for x in self.parts)

    def __len__(self):
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)


def transpose(lam: Partition) -> Partition:
    """Conjugate partition: column lengths of the Young diagram."""
    return Partition(tuple(sum(1 for x in lam.parts if x > i) for i in range(lam.largest)))


def centralizer_dim(lam: Partition) -> int:
    """dim z(e) for e nilpotent of type lam; sum of squared parts of lam^T."""
    return sum(x * x for x in transpose(lam).parts)


def centralizer_dim_by_multiplicities(lam: Partition) -> int:
    """Same quantity as ``centralizer_dim`` via sum_i (a_i + ... + a_m)^2."""
    total = 0
    tail = 0
    for i in range(lam.largest, 0, -1):
        tail += lam.multiplicity(i)
        total += tail * tail
    return total


def orbit_dim(lam: Partition) -> int:
    return lam.n ** 2 - centralizer_dim(lam)


def _partial_sums(parts, length):
    out, s = [], 0
    for i in range(length):
        s += parts[i] if i < len(parts) else 0
        out.append(s)
    return out


def dominates(lam: Partition, mu: Partition) -> bool:
    """True iff lam >= mu in dominance order (orbit closure order)."""
    if lam.n != mu.n:
        raise ValueError(f"partitions of different n: {lam.n} vs {mu.n}")
    k = max(len(lam), len(mu))
    return all(a >= b for a, b in zip(_partial_sums(lam.parts, k), _partial_sums(mu.parts, k)))


def _gen(n: int, cap: int) -> Iterator[tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    for first in range(min(n, cap), 0, -1):
        for rest in _gen(n - first, first):
            yield (first,) + rest


def enumerate_partitions(n: int, max_part: int | None = None) -> list[Partition]:
    """All partitions of n (parts <= max_part if given), reverse-lexicographic."""
    if n < 0:
        raise ValueError("n must be non-negative")
    cap = n if max_part is None else max_part
    return [Partition(p) for p in _gen(n, cap)]

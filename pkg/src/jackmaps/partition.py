"""Integer partitions and Young diagrams."""

from __future__ import annotations

from collections import Counter
from functools import lru_cache
from math import factorial, prod


class Partition(tuple):
    """A weakly decreasing tuple of positive integers.

    Also used for Young diagrams: ``lam[i]`` is the length of row ``i``
    (rows listed longest first).
    """

    def __new__(cls, parts=()):
        if isinstance(parts, str):
            parts = parse_parts(parts)
        parts = tuple(int(p) for p in parts)
        if any(p <= 0 for p in parts):
            raise ValueError(f"parts must be positive: {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            parts = tuple(sorted(parts, reverse=True))
        return super().__new__(cls, parts)

    @property
    def size(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def m(self, i: int) -> int:
        return self.count(i)

    def multiplicities(self) -> dict:
        return dict(Counter(self))

    def z(self) -> int:
        """z_pi = prod(parts) * prod(m_i!)."""
        return prod(self) * prod(factorial(k) for k in Counter(self).values())

    def conjugate(self) -> "Partition":
        if not self:
            return Partition()
        return Partition(sum(1 for p in self if p > j) for j in range(self[0]))

    def add_parts(self, *parts) -> "Partition":
        return Partition(tuple(self) + tuple(p for p in parts if p > 0))

    def remove_part(self, r: int) -> "Partition":
        if r not in self:
            raise ValueError(f"{r} is not a part of {tuple(self)}")
        lst = list(self)
        lst.remove(r)
        return Partition(lst)

    def with_ones(self, l: int) -> "Partition":
        return Partition(tuple(self) + (1,) * l)

    def without_ones(self) -> "Partition":
        return Partition(p for p in self if p > 1)

    # surgery on parts
    def down(self, r: int) -> "Partition":
        """pi with one part r replaced by r - 1 (dropped when r = 1)."""
        return self.remove_part(r).add_parts(r - 1)

    def up(self, i: int, j: int) -> "Partition":
        """pi with a part i + j + 1 replaced by the two parts i, j."""
        return self.remove_part(i + j + 1).add_parts(i, j)

    def join(self, r: int, s: int) -> "Partition":
        """pi with parts r, s replaced by the single part r + s - 1."""
        return self.remove_part(r).remove_part(s).add_parts(r + s - 1)

    def boxes(self):
        for i, row in enumerate(self):
            for j in range(row):
                yield i, j

    def multirect(self):
        """Multirectangular coordinates (P, Q): P multiplicities, Q distinct row lengths (decreasing)."""
        qs = sorted(set(self), reverse=True)
        return tuple(self.count(q) for q in qs), tuple(qs)

    @classmethod
    def from_multirect(cls, P, Q) -> "Partition":
        rows = []
        for p, q in sorted(zip(P, Q), key=lambda t: -t[1]):
            if p < 0 or q < 0:
                raise ValueError("multirectangular coordinates must be non-negative")
            if q > 0:
                rows.extend([q] * p)
        return cls(rows)

    def __repr__(self):
        return f"Partition({tuple(self)})"

    def __str__(self):
        return ",".join(map(str, self)) if self else "()"


YoungDiagram = Partition


def parse_parts(text: str):
    text = text.strip().strip("()[]")
    if not text or text in ("0", "-", "empty"):
        return ()
    return tuple(int(t) for t in text.replace(" ", "").split(",") if t)


@lru_cache(maxsize=None)
def partitions_of(n: int, max_part=None) -> tuple:
    """All partitions of ``n`` in reverse lexicographic order ((n) first)."""
    if max_part is None:
        max_part = n
    if n == 0:
        return (Partition(),)
    out = []
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions_of(n - first, first):
            out.append(Partition((first,) + tuple(rest)))
    return tuple(out)


def partitions_up_to(n: int):
    for k in range(n + 1):
        yield from partitions_of(k)


def dominates(lam, mu) -> bool:
    """lam >= mu in dominance order (same size assumed)."""
    a = b = 0
    for i in range(max(len(lam), len(mu))):
        a += lam[i] if i < len(lam) else 0
        b += mu[i] if i < len(mu) else 0
        if a < b:
            return False
    return True


def falling_factorial(n, k: int):
    out = 1
    for i in range(k):
        out *= n - i
    return out

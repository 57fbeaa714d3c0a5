"""Young diagrams: transpose, parity statistics, and pair enumeration."""

from __future__ import annotations

from functools import lru_cache


class Partition:
    __slots__ = ("parts",)

    def __init__(self, parts=()):
        parts = tuple(int(x) for x in parts)
        if any(x <= 0 for x in parts):
            raise ValueError("parts must be positive")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError("parts must be weakly decreasing")
        self.parts = parts

    def __len__(self):
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __eq__(self, other):
        return isinstance(other, Partition) and self.parts == other.parts

    def __hash__(self):
        return hash(self.parts)

    def __repr__(self):
        return f"Partition{self.parts}"

    def __bool__(self):
        return bool(self.parts)

    @property
    def size(self) -> int:
        return sum(self.parts)

    def part(self, i: int) -> int:
        """Row length lambda_i, 1-based; zero beyond the diagram."""
        return self.parts[i - 1] if 1 <= i <= len(self.parts) else 0

    @property
    def width(self) -> int:
        """First-row length = number of columns."""
        return self.parts[0] if self.parts else 0

    def transpose(self) -> "Partition":
        if not self.parts:
            return Partition()
        cols = [sum(1 for x in self.parts if x >= j) for j in range(1, self.parts[0] + 1)]
        return Partition(cols)

    def column(self, j: int) -> int:
        """Column length lambda^T_j, 1-based; zero beyond the diagram."""
        return sum(1 for x in self.parts if x >= j)

    @property
    def odd_row_sum(self) -> int:
        """|lambda|_o = lambda_1 + lambda_3 + ..."""
        return sum(self.parts[0::2])

    @property
    def even_row_sum(self) -> int:
        """|lambda|_e = lambda_2 + lambda_4 + ..."""
        return sum(self.parts[1::2])

    def boxes(self):
        """(i, j) cells, 1-based."""
        for i, row in enumerate(self.parts, start=1):
            for j in range(1, row + 1):
                yield i, j


@lru_cache(maxsize=None)
def partitions_of(n: int) -> tuple:
    """All partitions of n in lexicographically decreasing part order."""
    if n < 0:
        raise ValueError("n must be >= 0")

    def gen(remaining, largest):
        if remaining == 0:
            yield ()
            return
        for first in range(min(remaining, largest), 0, -1):
            for rest in gen(remaining - first, first):
                yield (first,) + rest

    return tuple(Partition(p) for p in gen(n, n))


@lru_cache(maxsize=None)
def partition_count(n: int) -> int:
    return len(partitions_of(n))


def enumerate_pairs(total_size: int) -> list:
    """All ordered pairs (lambda1, lambda2) with |lambda1| + |lambda2| = total,
    in deterministic lexicographic order."""
    out = []
    for a in range(total_size + 1):
        for lam1 in partitions_of(a):
            for lam2 in partitions_of(total_size - a):
                out.append((lam1, lam2))
    return out

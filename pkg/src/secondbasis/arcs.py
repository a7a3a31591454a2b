"""Arcs, partial matchings, and the gap-inserting lift between ground sets.

An arc is an unordered pair {i, j} of ground elements written in a canonical
order: min first when the difference is odd (a *primed* arc), max first when
the difference is even (a *double-primed* arc).  Exactly one of the two
writings is admissible for any pair, so ``Arc(i, j)`` doubles as the class
tag.  A matching is a set of pairwise disjoint arcs.

Each arc carries a cyclic interval on [1, N]: the plain interval [i, j] for a
primed arc, the wrap-around [i, N] ∪ [1, j] for a double-primed one.  Both
have even size, so intervals and arc pair-vectors live in E_N.
"""

from __future__ import annotations

from typing import Iterable, Iterator, NamedTuple, Sequence

from .errors import DomainError
from .f2 import EvenSet, check_ground_size
from .limits import guard_d

__all__ = [
    "Arc",
    "Matching",
    "classify_pair",
    "cyclic_interval",
    "cyclic_interval_mask",
    "embed_index",
    "embed_set",
    "enumerate_matchings",
    "iter_matchings",
    "lift_matching",
    "pair_evenset",
    "split_parts",
]


class Arc(NamedTuple):
    i: int
    j: int

    @property
    def primed(self) -> bool:
        return self.i < self.j

    @property
    def lo(self) -> int:
        return min(self.i, self.j)

    @property
    def hi(self) -> int:
        return max(self.i, self.j)

    def __str__(self) -> str:
        return f"{self.i}{self.j}" if self.hi <= 9 else f"{self.i}-{self.j}"


def classify_pair(a: int, b: int) -> Arc:
    """Canonical writing of the pair {a, b} (min first iff difference odd)."""
    if a == b:
        raise DomainError(f"arc endpoints must differ, got {a}={b}")
    if a < 1 or b < 1:
        raise DomainError(f"arc endpoints must be positive, got ({a}, {b})")
    lo, hi = min(a, b), max(a, b)
    return Arc(lo, hi) if (hi - lo) % 2 else Arc(hi, lo)


def _check_arc(arc: Arc, n: int) -> None:
    if not (1 <= arc.i <= n and 1 <= arc.j <= n):
        raise DomainError(f"{arc} outside [1, {n}]")
    if classify_pair(arc.i, arc.j) != arc:
        raise DomainError(f"{arc} is not in canonical writing order")


def pair_mask(arc: Arc) -> int:
    return (1 << arc.i) | (1 << arc.j)


def pair_evenset(arc: Arc, n: int) -> EvenSet:
    """The arc as a 2-element vector of E_n."""
    return EvenSet.from_mask(pair_mask(arc), n)


def _range_mask(lo: int, hi: int) -> int:
    # bits lo..hi inclusive; empty when lo > hi
    if lo > hi:
        return 0
    return ((1 << (hi - lo + 1)) - 1) << lo


def cyclic_interval_mask(arc: Arc, n: int) -> int:
    if arc.primed:
        return _range_mask(arc.i, arc.j)
    return _range_mask(arc.i, n) | _range_mask(1, arc.j)


def cyclic_interval(arc: Arc, n: int) -> EvenSet:
    """⌊i,j⌋: the interval [i, j], wrapping through N for double-primed arcs."""
    _check_arc(arc, n)
    return EvenSet.from_mask(cyclic_interval_mask(arc, n), n)


def embed_index(k: int, i: int, n: int) -> int:
    """Order- and parity-preserving embedding [1, n-2] -> [1, n] missing k, k+1."""
    check_ground_size(n)
    if n < 3:
        raise DomainError("embedding needs a target ground set of size >= 3")
    if not 1 <= k <= n - 1:
        raise DomainError(f"slot index {k} outside [1, {n - 1}]")
    if not 1 <= i <= n - 2:
        raise DomainError(f"index {i} outside [1, {n - 2}]")
    return i if i < k else i + 2


def embed_set(k: int, x: EvenSet) -> EvenSet:
    """Element-wise image of an even set under the embedding into [1, x.n + 2]."""
    n = x.n + 2
    return EvenSet((embed_index(k, i, n) for i in x), n)


class Matching:
    """A set of pairwise-disjoint arcs on [1, n] (at most (n-1)/2 of them)."""

    __slots__ = ("arcs", "n", "_supp")

    def __init__(self, arcs: Iterable[Arc], n: int):
        check_ground_size(n)
        arcs = tuple(sorted(arcs, key=lambda a: a.lo))
        supp = 0
        for arc in arcs:
            _check_arc(arc, n)
            m = pair_mask(arc)
            if supp & m:
                raise DomainError(f"arcs are not pairwise disjoint: {arcs}")
            supp |= m
        object.__setattr__(self, "arcs", arcs)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "_supp", supp)

    @classmethod
    def _make(cls, sorted_arcs: tuple[Arc, ...], n: int, supp: int) -> "Matching":
        # fast path for enumerators that already guarantee the invariants
        self = object.__new__(cls)
        object.__setattr__(self, "arcs", sorted_arcs)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "_supp", supp)
        return self

    @classmethod
    def from_pairs(cls, pairs: Iterable[Sequence[int]], n: int) -> "Matching":
        return cls((classify_pair(a, b) for a, b in pairs), n)

    def __setattr__(self, name, value):  # pragma: no cover - immutability guard
        raise AttributeError("Matching is immutable")

    @property
    def support_mask(self) -> int:
        return self._supp

    def __contains__(self, arc: Arc) -> bool:
        return arc in self.arcs

    def __iter__(self) -> Iterator[Arc]:
        return iter(self.arcs)

    def __len__(self) -> int:
        return len(self.arcs)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Matching) and self.n == other.n and self.arcs == other.arcs
        )

    def __hash__(self) -> int:
        return hash((self.arcs, self.n))

    def __repr__(self) -> str:
        return f"Matching([{', '.join(map(str, self.arcs))}], n={self.n})"

    def double_primed(self) -> tuple[Arc, ...]:
        return tuple(a for a in self.arcs if not a.primed)

    def primed(self) -> tuple[Arc, ...]:
        return tuple(a for a in self.arcs if a.primed)

    def pair_vectors(self) -> list[EvenSet]:
        return [pair_evenset(a, self.n) for a in self.arcs]

    def to_pairs(self) -> list[list[int]]:
        return [[a.i, a.j] for a in self.arcs]


def split_parts(b: Matching) -> tuple[tuple[Arc, ...], tuple[Arc, ...], int | None]:
    """(double-primed arcs, primed arcs, largest first coordinate of the former)."""
    b0 = b.double_primed()
    b1 = b.primed()
    i_b = max((a.i for a in b0), default=None)
    return b0, b1, i_b


def lift_matching(k: int, bp: Matching, d: int | None = None) -> Matching:
    """Insert the short arc {k, k+1} and shift the rest through the embedding.

    The embedding misses k and k+1, so the image arcs stay disjoint from the
    new one.  If the target D is supplied, k is checked against [1, D].
    """
    n = bp.n + 2
    if d is not None and not 1 <= k <= d:
        raise DomainError(f"slot index {k} outside [1, {d}]")
    arcs = [
        classify_pair(embed_index(k, a.i, n), embed_index(k, a.j, n)) for a in bp.arcs
    ]
    arcs.append(Arc(k, k + 1))
    return Matching(arcs, n)


def iter_matchings(n: int) -> Iterator[Matching]:
    """All partial matchings of [1, n], smallest-support-first, no duplicates."""
    check_ground_size(n)

    def rec(free: int, acc: tuple[Arc, ...], supp: int) -> Iterator[Matching]:
        if not free:
            yield Matching._make(acc, n, supp)
            return
        low = free & -free
        a = low.bit_length() - 1
        # a stays unmatched
        yield from rec(free ^ low, acc, supp)
        rest = free ^ low
        while rest:
            nxt = rest & -rest
            b = nxt.bit_length() - 1
            arc = Arc(a, b) if (b - a) % 2 else Arc(b, a)
            yield from rec(free ^ low ^ nxt, acc + (arc,), supp | low | nxt)
            rest ^= nxt

    yield from rec(_range_mask(1, n), (), 0)


def enumerate_matchings(n: int) -> list[Matching]:
    """The full matching space, guarded to desk scale."""
    guard_d(n - 2, 13, "matching-space enumeration")
    return list(iter_matchings(n))

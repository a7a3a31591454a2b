"""The even-set image of a matching, the order it generates, and the bases.

``epsilon`` sends a family member to the sum of its cyclic intervals plus a
boundary correction, landing in the span of the member's own pair-vectors.
It is a bijection onto E_N (certified at runtime, not assumed), its inverse
induces a partial order on E_N, and the membership matrix of spans against
that order is unitriangular; its columns are the second basis.

Symbols are the bridge to the classical bookkeeping: complementary pairs
(S, T) over [1, D+1] with a defect that locates the Harish-Chandra series.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from functools import lru_cache
from math import comb

from .arcs import (
    Matching,
    cyclic_interval_mask,
    embed_set,
    lift_matching,
    pair_evenset,
)
from .errors import DomainError, FalsificationError
from .f2 import EvenSet, span_masks
from .family import (
    PieceLabel,
    distinguished_element,
    enumerate_family,
    ground_size,
    piece_of,
)

__all__ = [
    "BasisMatrix",
    "Order",
    "Symbol",
    "boundary_correction",
    "build_order",
    "change_matrix",
    "epsilon",
    "epsilon_inverse",
    "epsilon_pairs",
    "piece_cardinality",
    "primitive_image",
    "recursion_check",
    "reduce_symbol",
    "second_basis_vectors",
    "sector_label",
    "series_size",
    "symbol_of",
    "unique_bijection_check",
]


def sector_label(x: EvenSet, d: int) -> PieceLabel:
    """The piece of E_N an even set belongs to (gamma, and N-membership for odd D)."""
    if x.n != ground_size(d):
        raise DomainError(f"even set over [1, {x.n}] does not fit D={d}")
    if d % 2 == 0:
        return PieceLabel(x.gamma())
    return PieceLabel(x.gamma(), "-" if x.n in x else "+")


def boundary_correction(b: Matching, d: int) -> EvenSet:
    """The correction summand of epsilon.

    Empty except on the nonzero pieces of the odd-D plus sector, where it is
    [u, N] (negative t) or {N} ∪ [1, u] (positive t) for the distinguished
    boundary element u.
    """
    n = b.n
    if d % 2 == 0:
        return EvenSet.empty(n)
    label = piece_of(b, d)
    if label.sign != "+" or label.t == 0:
        return EvenSet.empty(n)
    u = distinguished_element(b, d)
    if label.t < 0:
        return EvenSet(range(u, n + 1), n)
    return EvenSet([n, *range(1, u + 1)], n)


def epsilon(b: Matching, d: int) -> EvenSet:
    """Sum of the cyclic intervals of all arcs, plus the boundary correction."""
    mask = 0
    for arc in b.arcs:
        mask ^= cyclic_interval_mask(arc, b.n)
    return EvenSet.from_mask(mask, b.n) ^ boundary_correction(b, d)


@lru_cache(maxsize=None)
def epsilon_pairs(d: int) -> tuple[tuple[Matching, EvenSet], ...]:
    """(member, image) for the whole family; certifies injectivity onto E_N."""
    out = []
    seen: dict[int, Matching] = {}
    for b in enumerate_family(d):
        x = epsilon(b, d)
        if x.mask in seen:
            raise FalsificationError(
                f"epsilon collision at D={d}: {seen[x.mask]!r} and {b!r} -> {x!r}"
            )
        seen[x.mask] = b
        out.append((b, x))
    n = ground_size(d)
    if len(out) != 1 << (n - 1):
        raise FalsificationError(
            f"family size {len(out)} != |E_{n}| = {1 << (n - 1)} at D={d}"
        )
    return tuple(out)


def epsilon_inverse(d: int) -> dict[EvenSet, Matching]:
    return {x: b for b, x in epsilon_pairs(d)}


# ---------------------------------------------------------------------------
# closed-form images of the primitives


def _steps(start: int, stop: int) -> range:
    return range(start, stop + 1, 2)


def primitive_image(d: int, label: PieceLabel) -> EvenSet:
    """The image of the primitive in the given piece, in closed form."""
    n = ground_size(d)
    t = label.t
    if d % 2 == 0:
        if label.sign is not None:
            raise DomainError(f"even D takes unsigned piece labels, got {label}")
        if t == 0:
            return EvenSet.empty(n)
        if t > 0:
            return EvenSet([*_steps(2, t), *_steps(d + 2 - t, d)], n)
        tau = -t
        return EvenSet([*_steps(1, tau - 1), *_steps(d + 3 - tau, d + 1)], n)
    if label.sign == "+":
        if t == 0:
            return EvenSet.empty(n)
        if t > 0:
            return EvenSet([*_steps(2, t), *_steps(d + 3 - t, d + 1)], n)
        tau = -t
        return EvenSet([*_steps(1, tau - 1), *_steps(d + 2 - tau, d)], n)
    if label.sign == "-":
        if t == 0:
            return EvenSet([d + 1, d + 2], n)
        if t < 0:
            tau = -t
            return EvenSet([*_steps(1, tau - 1), *_steps(d + 4 - tau, d + 2)], n)
        return EvenSet(
            [*_steps(2, t), *_steps(d + 1 - t, d - 1), d + 1, d + 2], n
        )
    raise DomainError(f"odd D takes signed piece labels, got {label}")


def recursion_check(d: int) -> tuple[Matching, int] | None:
    """First (member, slot) violating the lifting recursion, or None.

    The image of a lifted member must be the embedded image of the original,
    up to one optional copy of {k, k+1}.
    """
    for bp in enumerate_family(d - 2):
        ex = epsilon(bp, d - 2)
        for k in range(1, d + 1):
            lifted = epsilon(lift_matching(k, bp, d), d)
            diff = (lifted ^ embed_set(k, ex)).mask
            if diff and diff != (1 << k) | (1 << (k + 1)):
                return (bp, k)
    return None


# ---------------------------------------------------------------------------
# the partial order and the change-of-basis matrices


class Order:
    """The partial order on E_N generated by span membership of preimages.

    ``elements`` is the canonical linear extension (piece blocks in display
    order, ties broken by bit-vector value); ``down(x)`` is the full down-set.
    Construction fails with a falsification error if the generating digraph
    has a cycle, which would contradict antisymmetry.
    """

    def __init__(self, d: int):
        n = ground_size(d)
        self.d = d
        self.n = n
        inv = {x.mask: b for b, x in epsilon_pairs(d)}
        self.gen_spans: dict[int, frozenset[int]] = {
            m: span_masks([pair_evenset(a, n) for a in b.arcs])
            for m, b in inv.items()
        }
        succ: dict[int, list[int]] = {m: [] for m in inv}
        indeg = {m: 0 for m in inv}
        for m, span in self.gen_spans.items():
            for z in span:
                if z != m:
                    succ[z].append(m)
                    indeg[m] += 1

        def key(mask: int) -> tuple:
            return (
                sector_label(EvenSet.from_mask(mask, n), d).sort_key(),
                mask,
            )

        heap = [key(m) for m, deg in indeg.items() if deg == 0]
        heapq.heapify(heap)
        order: list[int] = []
        while heap:
            m = heapq.heappop(heap)[-1]
            order.append(m)
            for m2 in succ[m]:
                indeg[m2] -= 1
                if indeg[m2] == 0:
                    heapq.heappush(heap, key(m2))
        if len(order) != len(inv):
            stuck = sorted(m for m, deg in indeg.items() if deg > 0)[:4]
            raise FalsificationError(
                f"generating digraph at D={d} has a cycle through masks {stuck}"
            )
        self.elements: list[EvenSet] = [EvenSet.from_mask(m, n) for m in order]
        self.position: dict[int, int] = {m: i for i, m in enumerate(order)}
        down: list[int] = []
        for i, m in enumerate(order):
            bits = 1 << i
            for z in self.gen_spans[m]:
                if z != m:
                    bits |= down[self.position[z]]
            down.append(bits)
        self.down = down

    def leq(self, x: EvenSet, y: EvenSet) -> bool:
        return bool(self.down[self.position[y.mask]] >> self.position[x.mask] & 1)

    def below(self, y: EvenSet) -> list[EvenSet]:
        bits = self.down[self.position[y.mask]]
        return [self.elements[i] for i in range(bits.bit_length()) if bits >> i & 1]


@lru_cache(maxsize=None)
def build_order(d: int) -> Order:
    return Order(d)


def unique_bijection_check(d: int) -> dict | None:
    """Certificate that epsilon is the only span-compatible bijection.

    Checks that epsilon is a perfect matching of the bipartite graph pairing
    members with the even sets in their span, then searches the alternating
    digraph for a cycle; finding one would mean a second perfect matching.
    Returns None on success, a counterexample payload otherwise.
    """
    pairs = epsilon_pairs(d)  # raises on any bijectivity failure
    spans = {x.mask: span_masks(b.pair_vectors()) for b, x in pairs}
    for b, x in pairs:
        if x.mask not in spans[x.mask]:
            return {"kind": "image-outside-span", "member": b.to_pairs()}
    # alternating cycle <=> directed cycle in  X' -> (span(X') - {X'})
    WHITE, GRAY, BLACK = 0, 1, 2
    color = {m: WHITE for m in spans}
    for root in spans:
        if color[root] != WHITE:
            continue
        stack: list[tuple[int, list[int]]] = [(root, [z for z in spans[root] if z != root])]
        color[root] = GRAY
        while stack:
            m, todo = stack[-1]
            if not todo:
                color[m] = BLACK
                stack.pop()
                continue
            z = todo.pop()
            if color[z] == GRAY:
                path = [node for node, _ in stack]
                cycle = path[path.index(z):] + [z]
                return {"kind": "alternating-cycle", "masks": cycle}
            if color[z] == WHITE:
                color[z] = GRAY
                stack.append((z, [w for w in spans[z] if w != z]))
    return None


@dataclass(frozen=True)
class BasisMatrix:
    """A square integer matrix with its row/column labels (shared order)."""

    labels: list[EvenSet]
    rows: list[list[int]]

    def to_json(self) -> dict:
        return {
            "labels": [x.to_json() for x in self.labels],
            "rows": [list(r) for r in self.rows],
        }

    def size(self) -> int:
        return len(self.labels)


def _assert_unitriangular(m: BasisMatrix, bound: int, what: str) -> None:
    for i, row in enumerate(m.rows):
        if row[i] != 1:
            raise FalsificationError(f"{what}: diagonal entry {i} is {row[i]}")
        for j, v in enumerate(row):
            if v and j < i:
                raise FalsificationError(
                    f"{what}: nonzero entry below the diagonal at ({i}, {j})"
                )
            if not 0 <= v <= bound:
                raise FalsificationError(f"{what}: entry {v} at ({i}, {j})")


def change_matrix(d: int, sector: str = "all") -> BasisMatrix:
    """Span-membership matrix over the canonical extension, unitriangular.

    sector "all" covers even D; "plus"/"minus" restrict odd D to the even
    sets avoiding/containing N.
    """
    order = build_order(d)
    n = order.n
    if sector == "all":
        if d % 2:
            raise DomainError("sector 'all' needs even D")
        elements = order.elements
    elif sector in ("plus", "minus"):
        if d % 2 == 0:
            raise DomainError(f"sector {sector!r} needs odd D")
        want = sector == "minus"
        elements = [x for x in order.elements if (n in x) == want]
    else:
        raise DomainError(f"unknown sector {sector!r}")
    spans = [order.gen_spans[x.mask] for x in elements]
    rows = [
        [1 if x.mask in spans[j] else 0 for j in range(len(elements))]
        for x in elements
    ]
    matrix = BasisMatrix(elements, rows)
    _assert_unitriangular(matrix, 1, f"matrix D={d} sector={sector}")
    return matrix


def second_basis_vectors(
    d: int, sector: str = "all"
) -> list[tuple[EvenSet, tuple[tuple[EvenSet, int], ...]]]:
    """The columns of the change matrix as integer combinations of labels."""
    m = change_matrix(d, sector)
    out = []
    for j, label in enumerate(m.labels):
        col = tuple(
            (m.labels[i], m.rows[i][j]) for i in range(len(m.labels)) if m.rows[i][j]
        )
        out.append((label, col))
    return out


# ---------------------------------------------------------------------------
# symbols


_FLAVOR_CLASS = {"odd": (2, 1), "plus": (4, 0), "minus": (4, 2)}


@dataclass(frozen=True)
class Symbol:
    """An ordered pair of complementary subsets of [1, D+1].

    The flavor records the residue class of the defect |S| - |T|: odd for
    even D, 0 mod 4 ("plus") or 2 mod 4 ("minus") for odd D.
    """

    s: frozenset[int]
    t: frozenset[int]
    flavor: str

    def __post_init__(self):
        if self.flavor not in _FLAVOR_CLASS:
            raise ValueError(f"unknown flavor {self.flavor!r}")
        if self.s & self.t:
            raise ValueError("symbol halves must be disjoint")
        m = len(self.s) + len(self.t)
        if self.s | self.t != set(range(1, m + 1)):
            raise ValueError("symbol halves must partition [1, D+1]")
        modulus, residue = _FLAVOR_CLASS[self.flavor]
        if self.defect % modulus != residue % modulus:
            raise ValueError(
                f"defect {self.defect} incompatible with flavor {self.flavor!r}"
            )

    @property
    def defect(self) -> int:
        return len(self.s) - len(self.t)

    @property
    def d(self) -> int:
        return len(self.s) + len(self.t) - 1

    def series(self) -> int:
        """The Harish-Chandra series parameter: |defect| for even D, signed else."""
        return abs(self.defect) if self.flavor == "odd" else self.defect

    def to_json(self) -> dict:
        return {
            "S": sorted(self.s),
            "T": sorted(self.t),
            "defect": self.defect,
            "series": self.series(),
        }


def _star_masks(x: EvenSet) -> tuple[frozenset[int], frozenset[int]]:
    members = set(x.members)
    star = {i for i in members if i % 2} | {
        i for i in range(2, x.n + 1, 2) if i not in members
    }
    return frozenset(star), frozenset(range(1, x.n + 1)) - frozenset(star)


def symbol_of(x: EvenSet, d: int) -> Symbol:
    """The symbol attached to an even set (sector-dependent for odd D)."""
    n = ground_size(d)
    if x.n != n:
        raise DomainError(f"even set over [1, {x.n}] does not fit D={d}")
    star, starstar = _star_masks(x)
    if d % 2 == 0:
        return Symbol(star, starstar, "odd")
    if n not in x:
        return Symbol(starstar - {n}, star, "plus")
    return Symbol(starstar, star - {n}, "minus")


def reduce_symbol(s, t, u_prime, u) -> Symbol:
    """Relabel a symbol over (U', U) to the standard ground set [1, D+1]."""
    s, t, u_prime, u = set(s), set(t), set(u_prime), set(u)
    if s | t != u:
        raise ValueError("S and T must cover U")
    if s & t != u_prime:
        raise ValueError("S and T must overlap exactly in U'")
    if 0 in u_prime:
        raise ValueError("0 may not occur in U'")
    core = sorted(u - u_prime)
    if not core:
        raise ValueError("U - U' must be nonempty")
    relabel = {e: i for i, e in enumerate(core, start=1)}
    s2 = frozenset(relabel[e] for e in s - u_prime)
    t2 = frozenset(relabel[e] for e in t - u_prime)
    if len(core) % 2 == 1:
        flavor = "odd"
    else:
        flavor = "plus" if (len(s2) - len(t2)) % 4 == 0 else "minus"
    return Symbol(s2, t2, flavor)


# ---------------------------------------------------------------------------
# counting


def _binom(a: int, b: int) -> int:
    return comb(a, b) if 0 <= b <= a else 0


def piece_cardinality(d: int, label: PieceLabel) -> int:
    """The size of a piece of E_N, in closed form."""
    n = ground_size(d)
    t = label.t
    if d % 2 == 0:
        if label.sign is not None:
            raise DomainError(f"even D takes unsigned piece labels, got {label}")
        return _binom(n, (abs(2 * t + 1) + n) // 2)
    if label.sign == "+":
        num = 2 * t + n - 1
        return _binom(n - 1, num // 2) if num % 2 == 0 else 0
    if label.sign == "-":
        num = 2 * t + n + 1
        return _binom(n - 1, num // 2) if num % 2 == 0 else 0
    raise DomainError(f"odd D takes signed piece labels, got {label}")


def series_size(d: int, s: int) -> int:
    """The size of a Harish-Chandra series of symbols."""
    n = ground_size(d)
    if d % 2 == 0:
        if s % 2 == 0 or s < 0:
            raise DomainError(f"even D takes positive odd series parameters, got {s}")
        return _binom(n, (s + n) // 2)
    if s % 2:
        raise DomainError(f"odd D takes even series parameters, got {s}")
    return _binom(n - 1, (s + n - 1) // 2)

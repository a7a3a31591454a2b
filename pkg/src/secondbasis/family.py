"""The nested arc families X_D: construction, filtering, and piece labels.

X_D is built two independent ways.  The inductive route starts from a short
list of primitive matchings and closes under the gap-inserting lift; the
filter route scans the whole matching space for three structural properties:

  * the double-primed part is the nested pairing of an increasing sequence
    i_1 < ... < i_{2s} (largest with smallest, and so on inward);
  * the size of the double-primed part has the parity dictated by how the
    top ground element N interacts with the matching;
  * a prescribed list of intervals (primed-arc interiors, gaps between
    consecutive i_r within each half of the sequence, and two boundary
    segments) can each be tiled by disjoint primed-arc intervals leaving
    exactly 0 or 1 elements uncovered, as prescribed.

The two constructions are proved equal; ``verify``-level checks re-derive
that equality exhaustively.  The boundary clauses of the third property only
make sense when the double-primed part is non-empty, and are applied exactly
then; for an all-primed matching only the interiors are constrained.

The covering test deliberately uses a budgeted search over arbitrary interval
systems instead of a greedy outermost-arc rule: the filter runs on raw
matchings whose intervals may cross, and laminarity only holds after
membership is established.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .arcs import Arc, Matching, iter_matchings, lift_matching, split_parts
from .errors import DomainError, FalsificationError
from .limits import guard_d

__all__ = [
    "CoverWitness",
    "PieceLabel",
    "cover_interval",
    "covering_requirements",
    "coverings_ok",
    "distinguished_element",
    "enumerate_family",
    "filter_family",
    "ground_size",
    "is_member",
    "labeled_primitives",
    "nested_pairing",
    "parity_ok",
    "parity_target",
    "piece_of",
    "pieces",
    "primitives",
]


def ground_size(d: int) -> int:
    """N for a given D: D+1 when D is even, D+2 when odd (always odd)."""
    if d < 0:
        raise DomainError(f"D must be >= 0, got {d}")
    return d + 1 if d % 2 == 0 else d + 2


@dataclass(frozen=True, slots=True)
class PieceLabel:
    """A block of the piece partition: t for even D, (t, sign) for odd D."""

    t: int
    sign: str | None = None

    def __post_init__(self):
        if self.t % 2:
            raise ValueError(f"piece parameter must be even, got {self.t}")
        if self.sign not in (None, "+", "-"):
            raise ValueError(f"sign must be '+', '-' or None, got {self.sign!r}")

    def __str__(self) -> str:
        return str(self.t) if self.sign is None else f"{self.t},{self.sign}"

    @classmethod
    def parse(cls, text: str) -> "PieceLabel":
        text = text.strip()
        if "," in text:
            t_part, sign = text.split(",", 1)
            return cls(int(t_part), sign.strip())
        return cls(int(text))

    def sort_key(self) -> tuple[int, ...]:
        # sector + first, then by |t| with the negative piece first
        sector = 0 if self.sign in (None, "+") else 1
        return (sector, abs(self.t), 0 if self.t < 0 else 1)


# ---------------------------------------------------------------------------
# primitives


def _desc_arcs(top: int, firsts: range) -> list[Arc]:
    # arcs {top - l, l} for l running over firsts
    return [Arc(top - l, l) for l in firsts]


def labeled_primitives(d: int) -> list[tuple[PieceLabel, Matching]]:
    """The primitive matchings seeding the induction, with their piece labels."""
    if d < 0:
        raise DomainError(f"D must be >= 0, got {d}")
    n = ground_size(d)
    out: list[tuple[PieceLabel, Matching]] = []
    if d % 2 == 0:
        out.append((PieceLabel(0), Matching((), n)))
        for t in range(2, d // 2 + 1, 2):
            out.append((PieceLabel(t), Matching(_desc_arcs(d + 2, range(1, t + 1)), n)))
        for t in range(2, (d + 2) // 2 + 1, 2):
            out.append((PieceLabel(-t), Matching(_desc_arcs(d + 2, range(1, t)), n)))
    else:
        out.append((PieceLabel(0, "+"), Matching((), n)))
        out.append((PieceLabel(0, "-"), Matching((Arc(d + 1, d + 2),), n)))
        for t in range(2, (d + 1) // 2 + 1, 2):
            out.append(
                (PieceLabel(t, "+"), Matching(_desc_arcs(d + 3, range(2, t + 1)), n))
            )
        for t in range(2, (d + 1) // 2 + 1, 2):
            out.append(
                (PieceLabel(-t, "+"), Matching(_desc_arcs(d + 1, range(1, t)), n))
            )
        for t in range(2, (d + 3) // 2 + 1, 2):
            out.append(
                (PieceLabel(-t, "-"), Matching(_desc_arcs(d + 3, range(1, t)), n))
            )
        for t in range(2, (d - 1) // 2 + 1, 2):
            arcs = [Arc(d + 1, d + 2)] + _desc_arcs(d + 1, range(1, t + 1))
            out.append((PieceLabel(t, "-"), Matching(arcs, n)))
    return out


def primitives(d: int) -> list[Matching]:
    return [b for _, b in labeled_primitives(d)]


# ---------------------------------------------------------------------------
# inductive construction


@lru_cache(maxsize=None)
def _family(d: int) -> tuple[Matching, ...]:
    if d == 0:
        return (Matching((), 1),)
    if d == 1:
        base = primitives(1) + [Matching((Arc(1, 2),), 3)]
        return tuple(sorted(base, key=lambda b: b.arcs))
    seen = set(primitives(d))
    for bp in _family(d - 2):
        for k in range(1, d + 1):
            seen.add(lift_matching(k, bp, d))
    return tuple(sorted(seen, key=lambda b: b.arcs))


def enumerate_family(d: int) -> tuple[Matching, ...]:
    """X_D by induction: primitives plus every lift of X_{D-2}, deduplicated."""
    guard_d(d, 15, "family enumeration")
    return _family(d)


# ---------------------------------------------------------------------------
# the three filter properties


def nested_pairing(b: Matching) -> tuple[int, ...] | None:
    """The increasing sequence whose nested pairing is the double-primed part.

    Returns the (possibly empty) sequence i_1 < ... < i_{2s}, or None when the
    double-primed arcs are not exactly {i_{2s}i_1, i_{2s-1}i_2, ...}.  When a
    witness exists it is unique: the sequence is forced to be the sorted
    support.
    """
    b0 = b.double_primed()
    seq = sorted(x for a in b0 for x in (a.i, a.j))
    s = len(b0)
    want = {Arc(seq[2 * s - 1 - r], seq[r]) for r in range(s)}
    return tuple(seq) if want == set(b0) else None


def parity_target(b: Matching, d: int) -> int:
    """The parity the double-primed part must have (0 or 1)."""
    b0, _, i_b = split_parts(b)
    if d % 2 == 0 or not b0:
        return len(b0) % 2
    n_matched = bool(b.support_mask >> b.n & 1)
    return 0 if n_matched and i_b != b.n else 1


def parity_ok(b: Matching, d: int) -> bool:
    return len(b.double_primed()) % 2 == parity_target(b, d)


@dataclass(frozen=True, slots=True)
class CoverWitness:
    """Disjoint primed arcs tiling an interval, plus the uncovered leftovers."""

    arcs: tuple[Arc, ...]
    leftover: tuple[int, ...]


def _starts(b: Matching) -> dict[int, list[int]]:
    starts: dict[int, list[int]] = {}
    for a in b.primed():
        starts.setdefault(a.i, []).append(a.j)
    return starts


def cover_interval(
    b: Matching, lo: int, hi: int, skip: int
) -> CoverWitness | None:
    """Tile [lo, hi] with disjoint primed-arc intervals, skipping `skip` points.

    Returns a witness (arc list in increasing order plus the skipped points)
    or None.  An empty interval (lo > hi) is covered exactly when skip == 0,
    and no interval is coverable when its size and skip disagree mod 2.
    """
    if skip not in (0, 1):
        raise DomainError(f"skip budget must be 0 or 1, got {skip}")
    size = max(0, hi - lo + 1)
    if size % 2 != skip % 2:
        return None
    starts = _starts(b)

    def rec(p: int, budget: int) -> tuple[list[Arc], list[int]] | None:
        if p > hi:
            return ([], []) if budget == 0 else None
        for q in starts.get(p, ()):
            if q <= hi:
                rest = rec(q + 1, budget)
                if rest is not None:
                    return ([Arc(p, q)] + rest[0], rest[1])
        if budget:
            rest = rec(p + 1, budget - 1)
            if rest is not None:
                return (rest[0], [p] + rest[1])
        return None

    found = rec(lo, skip)
    if found is None:
        return None
    return CoverWitness(tuple(found[0]), tuple(found[1]))


def _all_leftovers(b: Matching, lo: int, hi: int) -> set[int]:
    """Every point that some 1-cover of [lo, hi] leaves uncovered."""
    starts = _starts(b)
    out: set[int] = set()

    def rec(p: int, leftover: int | None) -> None:
        if p > hi:
            if leftover is not None:
                out.add(leftover)
            return
        for q in starts.get(p, ()):
            if q <= hi:
                rec(q + 1, leftover)
        if leftover is None:
            rec(p + 1, p)

    if (hi - lo + 1) % 2 == 1 and hi >= lo:
        rec(lo, None)
    return out


def covering_requirements(
    b: Matching, d: int, seq: tuple[int, ...]
) -> list[tuple[int, int, int]]:
    """The interval/budget table the third property demands, materialized.

    Each triple (lo, hi, e) asks for [lo, hi] to be tiled with exactly e
    uncovered points.  The case split on the boundary segments follows the
    parity of D, whether N is matched, and the parity of the largest
    double-primed coordinate; it only applies when the sequence is non-empty.
    """
    n = b.n
    segs = [(a.i + 1, a.j - 1, 0) for a in b.primed()]
    s = len(seq) // 2
    for r in range(s - 1):
        segs.append((seq[r] + 1, seq[r + 1] - 1, 0))
    for r in range(s, 2 * s - 1):
        segs.append((seq[r] + 1, seq[r + 1] - 1, 0))
    if s:
        i1, i2s = seq[0], seq[-1]
        n_matched = bool(b.support_mask >> n & 1)
        if d % 2 == 0 or n_matched:
            segs.append((1, i1 - 1, 0))
            segs.append((i2s + 1, n, 0))
        elif i2s % 2 == 1:
            segs.append((1, i1 - 1, 0))
            segs.append((i2s + 1, n - 1, 1))
        else:
            segs.append((1, i1 - 1, 1))
            segs.append((i2s + 1, n - 1, 0))
    return segs


def coverings_ok(b: Matching, d: int, seq: tuple[int, ...] | None = None) -> bool:
    """Whether every prescribed segment admits its prescribed cover."""
    if seq is None:
        seq = nested_pairing(b)
        if seq is None:
            raise DomainError("covering test needs the nested-pairing witness")
    return all(
        cover_interval(b, lo, hi, e) is not None
        for lo, hi, e in covering_requirements(b, d, seq)
    )


def is_member(b: Matching, d: int) -> bool:
    """Membership in X_D by the three-property filter."""
    if b.n != ground_size(d):
        raise DomainError(f"matching over [1, {b.n}] does not fit D={d}")
    seq = nested_pairing(b)
    if seq is None:
        return False
    if not parity_ok(b, d):
        return False
    return coverings_ok(b, d, seq)


def filter_family(d: int) -> list[Matching]:
    """X_D by exhaustive filtering of the full matching space."""
    guard_d(d, 11, "family filtering")
    n = ground_size(d)
    return [b for b in iter_matchings(n) if is_member(b, d)]


# ---------------------------------------------------------------------------
# distinguished element and pieces


def distinguished_element(b: Matching, d: int) -> int:
    """The unique uncovered point of the 1-covered boundary segment.

    Defined for odd D, non-empty double-primed part, and N unmatched.  The
    uncovered point is provably unique for members of X_D; uniqueness is
    asserted here at runtime, so a violation surfaces as a falsification
    instead of silently picking one.
    """
    n = b.n
    b0, _, i_b = split_parts(b)
    if d % 2 == 0 or not b0 or (b.support_mask >> n & 1):
        raise DomainError(
            "distinguished element needs odd D, double-primed arcs, and N unmatched"
        )
    seq = nested_pairing(b)
    if seq is None:
        raise DomainError("not a member: no nested-pairing witness")
    if i_b % 2 == 1:
        lo, hi = seq[-1] + 1, n - 1
    else:
        lo, hi = 1, seq[0] - 1
    leftovers = _all_leftovers(b, lo, hi)
    if len(leftovers) != 1:
        raise FalsificationError(
            f"boundary segment [{lo},{hi}] of {b!r} admits leftovers {sorted(leftovers)}"
        )
    return leftovers.pop()


def piece_of(b: Matching, d: int) -> PieceLabel:
    """The piece of X_D the matching belongs to."""
    b0, _, i_b = split_parts(b)
    q = len(b0)
    if d % 2 == 0:
        return PieceLabel(q) if q % 2 == 0 else PieceLabel(-q - 1)
    n = b.n
    n_matched = bool(b.support_mask >> n & 1)
    if not n_matched:
        if q == 0:
            return PieceLabel(0, "+")
        if q % 2 == 0:
            raise DomainError(f"{b!r} violates the parity property for D={d}")
        return PieceLabel(q + 1, "+") if i_b % 2 == 0 else PieceLabel(-q - 1, "+")
    if q == 0:
        return PieceLabel(0, "-")
    if i_b == n:
        if q % 2 == 0:
            raise DomainError(f"{b!r} violates the parity property for D={d}")
        return PieceLabel(-q - 1, "-")
    if q % 2 == 1:
        raise DomainError(f"{b!r} violates the parity property for D={d}")
    return PieceLabel(q, "-")


@lru_cache(maxsize=None)
def pieces(d: int) -> dict[PieceLabel, tuple[Matching, ...]]:
    """The family grouped by piece, keyed in canonical piece order."""
    groups: dict[PieceLabel, list[Matching]] = {}
    for b in enumerate_family(d):
        groups.setdefault(piece_of(b, d), []).append(b)
    return {
        label: tuple(groups[label])
        for label in sorted(groups, key=PieceLabel.sort_key)
    }

"""Two refinements of the even-set image.

For even D, the image has a closed form with triangular-number coefficients
over the adjacent-pair basis {k, k+1}; the per-point identity behind it is
exposed as a diagnostic because it exercises every interval computation.

For odd D, adding the fixed block [1, D+1] is a fixed-point-free involution
of each sector; transversals of its orbits index the doubled change-of-basis
matrices whose columns give bases of the orbit spaces.
"""

from __future__ import annotations

from functools import lru_cache

from .arcs import Matching, cyclic_interval_mask
from .basis import (
    BasisMatrix,
    build_order,
    epsilon,
    epsilon_inverse,
    sector_label,
    _assert_unitriangular,
)
from .errors import DomainError
from .f2 import EvenSet
from .family import PieceLabel, ground_size, piece_of

__all__ = [
    "in_primed_zero_piece",
    "in_primed_zero_piece_set",
    "interval_counts",
    "involution",
    "matching_involution",
    "orbit_representatives",
    "pair_basis_coords",
    "pair_basis_set",
    "point_counts",
    "sector_matrix",
    "sector_order_check",
    "triangle_identity_ok",
    "triangular_epsilon",
]


# ---------------------------------------------------------------------------
# even D: the triangular-number formula


def interval_counts(b: Matching, d: int) -> list[int]:
    """n_1..n_{D+1}: arcs whose interval contains {k, k+1}, then |B0|."""
    n = b.n
    masks = [cyclic_interval_mask(a, n) for a in b.arcs]
    counts = []
    for k in range(1, d + 1):
        pair = (1 << k) | (1 << (k + 1))
        counts.append(sum(1 for m in masks if m & pair == pair))
    counts.append(len(b.double_primed()))
    return counts


def point_counts(b: Matching) -> list[int]:
    """m_1..m_N: arcs whose interval contains the point k."""
    n = b.n
    masks = [cyclic_interval_mask(a, n) for a in b.arcs]
    return [sum(1 for m in masks if m >> k & 1) for k in range(1, n + 1)]


def _tri(n: int) -> int:
    return n * (n + 1) // 2 % 2


def triangular_epsilon(b: Matching, d: int) -> EvenSet:
    """The closed form: sum of [n_k]{k,k+1} plus [n_{D+1}]{1,N}, even D only."""
    if d % 2:
        raise DomainError("the triangular closed form is stated for even D only")
    n = b.n
    counts = interval_counts(b, d)
    mask = 0
    for k in range(1, d + 1):
        if _tri(counts[k - 1]):
            mask ^= (1 << k) | (1 << (k + 1))
    if _tri(counts[d]):
        mask ^= (1 << 1) | (1 << n)
    return EvenSet.from_mask(mask, n)


def triangle_identity_ok(b: Matching, d: int) -> bool:
    """Pointwise identity: [n_k] + [n_k'] == m_k mod 2 (k' = cyclic left step)."""
    counts = interval_counts(b, d)
    points = point_counts(b)
    for k in range(1, d + 2):
        left = d + 1 if k == 1 else k - 1
        if (_tri(counts[k - 1]) + _tri(counts[left - 1])) % 2 != points[k - 1] % 2:
            return False
    return True


def pair_basis_coords(x: EvenSet, d: int) -> tuple[int, ...]:
    """Coordinates of x in the adjacent-pair basis {1,2}, {2,3}, ..., {D,D+1}.

    Coordinate j is the parity of |x ∩ [1, j]|; reconstruction round-trips.
    """
    if d % 2:
        raise DomainError("the adjacent-pair basis is for even D only")
    if x.n != ground_size(d):
        raise DomainError(f"even set over [1, {x.n}] does not fit D={d}")
    coords = []
    acc = 0
    for j in range(1, d + 1):
        acc ^= x.mask >> j & 1
        coords.append(acc)
    return tuple(coords)


def pair_basis_set(coords: tuple[int, ...], d: int) -> EvenSet:
    n = ground_size(d)
    if len(coords) != d:
        raise DomainError(f"expected {d} coordinates, got {len(coords)}")
    mask = 0
    for j, c in enumerate(coords, start=1):
        if c:
            mask ^= (1 << j) | (1 << (j + 1))
    return EvenSet.from_mask(mask, n)


# ---------------------------------------------------------------------------
# odd D: the block-flip involution


def involution(x: EvenSet, d: int) -> EvenSet:
    """x + [1, D+1]: flips membership below N, fixed-point free on E_N."""
    if d % 2 == 0:
        raise DomainError("the block-flip involution is for odd D only")
    n = ground_size(d)
    if x.n != n:
        raise DomainError(f"even set over [1, {x.n}] does not fit D={d}")
    block = ((1 << (d + 1)) - 1) << 1
    return EvenSet.from_mask(x.mask ^ block, n)


def matching_involution(b: Matching, d: int) -> Matching:
    """The involution transported through epsilon: the preimage of eps(b)^!."""
    return epsilon_inverse(d)[involution(epsilon(b, d), d)]


def in_primed_zero_piece_set(x: EvenSet, d: int) -> bool:
    """Whether a (0,+)-piece even set avoids D+1 (the primed half of the piece)."""
    if sector_label(x, d) != PieceLabel(0, "+"):
        raise DomainError(f"{x!r} is not in the (0,+) piece for D={d}")
    return (d + 1) not in x


def in_primed_zero_piece(b: Matching, d: int) -> bool:
    """Whether a (0,+)-piece member leaves D+1 unmatched."""
    if piece_of(b, d) != PieceLabel(0, "+"):
        raise DomainError(f"{b!r} is not in the (0,+) piece for D={d}")
    return not (b.support_mask >> (d + 1)) & 1


# ---------------------------------------------------------------------------
# sector order properties and the orbit matrices


def _rank(label: PieceLabel) -> int:
    # strictly increasing along the order within a sector, constant on orbits
    t = label.t
    return max(t, -t) if label.sign == "+" else max(t, -t - 2)


def sector_order_check(d: int) -> dict | None:
    """Both within-sector monotonicity clauses; None on success.

    Comparable plus-sector sets have equal t or strictly growing max(t, -t),
    and anything below the primed half of the (0,+) piece stays primed;
    the minus sector uses max(t, -t-2).
    """
    if d % 2 == 0:
        raise DomainError("the sector order properties concern odd D only")
    order = build_order(d)
    labels = {x.mask: sector_label(x, d) for x in order.elements}
    for y in order.elements:
        ly = labels[y.mask]
        for x in order.below(y):
            lx = labels[x.mask]
            if lx.sign != ly.sign or x == y:
                continue
            if lx.t != ly.t and _rank(lx) >= _rank(ly):
                return {
                    "kind": "rank-violation",
                    "x": x.to_json(),
                    "y": y.to_json(),
                    "pieces": [str(lx), str(ly)],
                }
            if (
                ly == PieceLabel(0, "+")
                and in_primed_zero_piece_set(y, d)
                and not in_primed_zero_piece_set(x, d)
            ):
                return {"kind": "primed-violation", "x": x.to_json(), "y": y.to_json()}
    return None


_SECTOR_NAMES = ("++", "+-", "-+", "--")


@lru_cache(maxsize=None)
def orbit_representatives(d: int, which: str) -> tuple[EvenSet, ...]:
    """A transversal of the involution orbits on one sector.

    ++/+- take the positive/negative pieces of the plus sector together with
    the primed half of its zero piece; -+/-- split the minus sector at t >= 0.
    Ordered by orbit rank, then canonical-extension position, which is the
    triangularizing order for the doubled matrices.
    """
    if which not in _SECTOR_NAMES:
        raise DomainError(f"sector must be one of {_SECTOR_NAMES}, got {which!r}")
    if d % 2 == 0:
        raise DomainError("orbit representatives concern odd D only")
    order = build_order(d)
    chosen = []
    for pos, x in enumerate(order.elements):
        label = sector_label(x, d)
        if which[0] == "+":
            if label.sign != "+":
                continue
            if label.t == 0:
                keep = in_primed_zero_piece_set(x, d)
            else:
                keep = (label.t > 0) == (which[1] == "+")
        else:
            if label.sign != "-":
                continue
            keep = (label.t >= 0) == (which[1] == "+")
        if keep:
            chosen.append((_rank(label), pos, x))
    chosen.sort(key=lambda item: item[:2])
    return tuple(x for _, _, x in chosen)


def sector_matrix(d: int, which: str) -> BasisMatrix:
    """The doubled membership matrix over an orbit transversal.

    Entry (X, X') counts how many of X, X^! lie in the span of the preimage
    of X'; unitriangular with entries in {0, 1, 2}.
    """
    reps = orbit_representatives(d, which)
    order = build_order(d)
    rows = []
    for x in reps:
        flipped = involution(x, d)
        row = []
        for y in reps:
            span = order.gen_spans[y.mask]
            row.append((x.mask in span) + (flipped.mask in span))
        rows.append(row)
    matrix = BasisMatrix(list(reps), rows)
    _assert_unitriangular(matrix, 2, f"orbit matrix D={d} sector={which}")
    return matrix

"""Rendering of the family tables in bracket notation.

An entry shows a member's arcs with the bracketed sub-collection whose
pair-vectors sum to the member's even-set image (the decomposition exists
and is unique because the arcs have disjoint supports).  Arcs print as digit
pairs up to N = 9 and as "i-j" beyond; the empty member prints as ([∅]).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .arcs import Arc, Matching, classify_pair, pair_evenset
from .basis import build_order, epsilon
from .errors import DomainError
from .f2 import unique_decomposition
from .family import PieceLabel, ground_size, pieces
from .limits import guard_d

__all__ = [
    "TableEntry",
    "arc_text",
    "parse_entry",
    "render_entry",
    "render_table",
    "table_data",
    "table_json",
]

EMPTY_MARK = "∅"


@dataclass(frozen=True)
class TableEntry:
    matching: Matching
    bracketed: tuple[Arc, ...]

    def unbracketed(self) -> tuple[Arc, ...]:
        inside = set(self.bracketed)
        return tuple(a for a in self.matching.arcs if a not in inside)

    def key(self) -> tuple:
        return (self.matching.arcs, tuple(sorted(self.bracketed)))

    def to_json(self) -> dict:
        return {
            "arcs": self.matching.to_pairs(),
            "bracketed": [[a.i, a.j] for a in self.bracketed],
        }


def table_entry(b: Matching, d: int) -> TableEntry:
    image = epsilon(b, d)
    part = unique_decomposition(b.pair_vectors(), image)
    picked = {x.mask for x in part}
    bracketed = tuple(a for a in b.arcs if pair_evenset(a, b.n).mask in picked)
    return TableEntry(b, bracketed)


def arc_text(arc: Arc, n: int) -> str:
    # digit concatenation only while every index is a single digit
    return f"{arc.i}{arc.j}" if n <= 9 else f"{arc.i}-{arc.j}"


def render_entry(entry: TableEntry) -> str:
    n = entry.matching.n
    outside = ",".join(arc_text(a, n) for a in entry.unbracketed())
    inside = ",".join(arc_text(a, n) for a in entry.bracketed) or EMPTY_MARK
    head = f"({outside}," if outside else "("
    return f"{head}[{inside}])"


def parse_entry(text: str, n: int) -> TableEntry:
    """Inverse of render_entry (tolerates whitespace and hyphenated arcs)."""
    text = text.strip()
    if not (text.startswith("(") and text.endswith("])")):
        raise ValueError(f"malformed entry {text!r}")
    body = text[1:-2]
    outside_text, _, inside_text = body.partition("[")

    def parse_arcs(chunk: str) -> list[Arc]:
        arcs = []
        for token in chunk.split(","):
            token = token.strip()
            if not token or token == EMPTY_MARK:
                continue
            if "-" in token:
                a, b = token.split("-")
            else:
                a, b = token[0], token[1:]
            arcs.append(classify_pair(int(a), int(b)))
        return arcs

    inside = parse_arcs(inside_text)
    matching = Matching(parse_arcs(outside_text) + inside, n)
    return TableEntry(matching, tuple(inside))


def table_data(d: int) -> tuple[tuple[PieceLabel, tuple[TableEntry, ...]], ...]:
    """Entries per piece, pieces in display order, entries in the canonical
    linear extension of the order on images."""
    guard_d(d, 11, "table rendering")
    return _table_data(d)


@lru_cache(maxsize=None)
def _table_data(d: int) -> tuple[tuple[PieceLabel, tuple[TableEntry, ...]], ...]:
    order = build_order(d)
    out = []
    for label, members in pieces(d).items():
        entries = sorted(
            (table_entry(b, d) for b in members),
            key=lambda e: order.position[epsilon(e.matching, d).mask],
        )
        out.append((label, tuple(entries)))
    return tuple(out)


def render_table(d: int, piece: PieceLabel | None = None) -> str:
    lines = [f"table D={d} (ground set [1,{ground_size(d)}])"]
    found = False
    for label, entries in table_data(d):
        if piece is not None and label != piece:
            continue
        found = True
        lines.append(f"piece {label}:")
        lines.extend(render_entry(e) for e in entries)
    if piece is not None and not found:
        raise DomainError(f"no piece {piece} at D={d}")
    return "\n".join(lines) + "\n"


def table_json(d: int, piece: PieceLabel | None = None) -> dict:
    pieces_json = []
    found = False
    for label, entries in table_data(d):
        if piece is not None and label != piece:
            continue
        found = True
        pieces_json.append(
            {
                "label": str(label),
                "t": label.t,
                "sign": label.sign,
                "entries": [e.to_json() for e in entries],
            }
        )
    if piece is not None and not found:
        raise DomainError(f"no piece {piece} at D={d}")
    return {"D": d, "N": ground_size(d), "pieces": pieces_json}

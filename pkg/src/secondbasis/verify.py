"""The exhaustive verification suite behind `secondbasis verify`.

Twelve checks, each sweeping every applicable D up to the requested bound and
reporting one machine-readable result.  Any failure carries a reproducer
payload; the suite never weakens a check to make it pass.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable

from .arcs import cyclic_interval, lift_matching
from .basis import (
    build_order,
    epsilon,
    epsilon_pairs,
    piece_cardinality,
    primitive_image,
    recursion_check,
    sector_label,
    unique_bijection_check,
)
from .errors import FalsificationError
from .f2 import span_masks
from .family import (
    PieceLabel,
    enumerate_family,
    filter_family,
    labeled_primitives,
    pieces,
)
from .limits import guard_d
from .variants import (
    in_primed_zero_piece,
    in_primed_zero_piece_set,
    involution,
    matching_involution,
    sector_matrix,
    sector_order_check,
    triangle_identity_ok,
    triangular_epsilon,
)

__all__ = ["RunReport", "run_checks", "CHECK_NAMES"]


@dataclass
class RunReport:
    name: str
    d_values: list[int]
    passed: bool
    detail: dict | None = None
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        if self.d_values:
            span = f"D={self.d_values[0]}..{self.d_values[-1]}"
        else:
            span = "D=(none)"
        out = f"{status} {self.name:28s} {span:12s} {self.seconds:7.2f}s"
        if not self.passed:
            out += f"  counterexample: {self.detail}"
        return out

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "d_values": self.d_values,
            "passed": self.passed,
            "detail": self.detail,
            "seconds": round(self.seconds, 4),
        }


def _check_construction_equivalence(ds: list[int]) -> dict | None:
    for d in ds:
        if set(enumerate_family(d)) != set(filter_family(d)):
            extra = set(filter_family(d)) - set(enumerate_family(d))
            missing = set(enumerate_family(d)) - set(filter_family(d))
            return {
                "D": d,
                "filter_only": [b.to_pairs() for b in sorted(extra, key=lambda b: b.arcs)[:3]],
                "inductive_only": [b.to_pairs() for b in sorted(missing, key=lambda b: b.arcs)[:3]],
            }
    return None


def _check_laminarity(ds: list[int]) -> dict | None:
    for d in ds:
        for b in enumerate_family(d):
            ivals = [cyclic_interval(a, b.n).mask for a in b.arcs]
            for i in range(len(ivals)):
                for j in range(i + 1, len(ivals)):
                    meet = ivals[i] & ivals[j]
                    if meet and meet != ivals[i] and meet != ivals[j]:
                        return {"D": d, "member": b.to_pairs()}
    return None


def _check_recursion(ds: list[int]) -> dict | None:
    for d in ds:
        bad = recursion_check(d)
        if bad is not None:
            return {"D": d, "member": bad[0].to_pairs(), "k": bad[1]}
    return None


def _check_gamma_invariance(ds: list[int]) -> dict | None:
    for d in ds:
        for bp in enumerate_family(d - 2):
            g = epsilon(bp, d - 2).gamma()
            for k in range(1, d + 1):
                if epsilon(lift_matching(k, bp, d), d).gamma() != g:
                    return {"D": d, "member": bp.to_pairs(), "k": k}
    return None


def _check_primitive_forms(ds: list[int]) -> dict | None:
    for d in ds:
        for label, q in labeled_primitives(d):
            want = primitive_image(d, label)
            if epsilon(q, d) != want:
                return {"D": d, "piece": str(label), "primitive": q.to_pairs()}
            expect_gamma = label.t
            if want.gamma() != expect_gamma:
                return {"D": d, "piece": str(label), "gamma": want.gamma()}
    return None


def _check_n_transport(ds: list[int]) -> dict | None:
    for d in ds:
        for bp in enumerate_family(d - 2):
            inner = bp.n in epsilon(bp, d - 2)  # bp.n is N-2 of the target
            for k in range(1, d + 1):
                b = lift_matching(k, bp, d)
                if (b.n in epsilon(b, d)) != inner:
                    return {"D": d, "member": bp.to_pairs(), "k": k}
    return None


def _check_piece_bijections(ds: list[int]) -> dict | None:
    for d in ds:
        for label, members in pieces(d).items():
            images = {epsilon(b, d) for b in members}
            if len(images) != len(members):
                return {"D": d, "piece": str(label), "kind": "collision"}
            for x in images:
                if sector_label(x, d) != label:
                    return {"D": d, "piece": str(label), "image": x.to_json()}
            if len(members) != piece_cardinality(d, label):
                return {
                    "D": d,
                    "piece": str(label),
                    "size": len(members),
                    "expected": piece_cardinality(d, label),
                }
    return None


def _check_uniqueness(ds: list[int]) -> dict | None:
    for d in ds:
        bad = unique_bijection_check(d)
        if bad is not None:
            return {"D": d, **bad}
    return None


def _tarjan_max_scc(nodes: list[int], succ: dict[int, list[int]]) -> int:
    index: dict[int, int] = {}
    low: dict[int, int] = {}
    on_stack: set[int] = set()
    stack: list[int] = []
    counter = 0
    best = 1
    for root in nodes:
        if root in index:
            continue
        work = [(root, iter(succ[root]))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(succ[w])))
                    advanced = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                size = 0
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    size += 1
                    if w == v:
                        break
                best = max(best, size)
    return best


def _check_antisymmetry(ds: list[int]) -> dict | None:
    for d in ds:
        pairs = epsilon_pairs(d)
        spans = {x.mask: span_masks(b.pair_vectors()) for b, x in pairs}
        succ = {m: [z for z in span if z != m] for m, span in spans.items()}
        worst = _tarjan_max_scc(list(succ), succ)
        if worst > 1:
            return {"D": d, "largest_scc": worst}
        build_order(d)  # Kahn route must agree; raises on a cycle
    return None


def _check_counting(ds: list[int]) -> dict | None:
    for d in ds:
        fam = enumerate_family(d)
        n = d + 1 if d % 2 == 0 else d + 2
        if len(fam) != 1 << (n - 1):
            return {"D": d, "size": len(fam), "expected": 1 << (n - 1)}
        by_piece = pieces(d)
        for label, members in by_piece.items():
            if piece_cardinality(d, label) != len(members):
                return {"D": d, "piece": str(label), "size": len(members)}
        # formulas for absent labels must give zero (n odd, so -n-1 is even)
        for t in range(-n - 1, n + 2, 2):
            labels = (
                [PieceLabel(t)] if d % 2 == 0 else [PieceLabel(t, "+"), PieceLabel(t, "-")]
            )
            for label in labels:
                if label not in by_piece and piece_cardinality(d, label) != 0:
                    return {"D": d, "piece": str(label), "kind": "phantom"}
    return None


def _check_triangular_form(ds: list[int]) -> dict | None:
    for d in ds:
        for b in enumerate_family(d):
            if triangular_epsilon(b, d) != epsilon(b, d):
                return {"D": d, "member": b.to_pairs(), "kind": "closed-form"}
            if not triangle_identity_ok(b, d):
                return {"D": d, "member": b.to_pairs(), "kind": "point-identity"}
    return None


def _check_involution_suite(ds: list[int]) -> dict | None:
    for d in ds:
        order = build_order(d)
        zero_plus = PieceLabel(0, "+")
        for x in order.elements:
            bang = involution(x, d)
            if bang == x:
                return {"D": d, "kind": "fixed-point", "x": x.to_json()}
            lx, lb = sector_label(x, d), sector_label(bang, d)
            if lx.sign != lb.sign:
                return {"D": d, "kind": "sector-broken", "x": x.to_json()}
            want_t = -lx.t if lx.sign == "+" else -lx.t - 2
            if lb.t != want_t:
                return {"D": d, "kind": "piece-transport", "x": x.to_json()}
            if lx == zero_plus and (
                in_primed_zero_piece_set(x, d) == in_primed_zero_piece_set(bang, d)
            ):
                return {"D": d, "kind": "primed-not-swapped", "x": x.to_json()}
        for b, x in epsilon_pairs(d):
            if epsilon(matching_involution(b, d), d) != involution(x, d):
                return {"D": d, "kind": "not-equivariant", "member": b.to_pairs()}
        for label, members in pieces(d).items():
            if label != zero_plus:
                continue
            for b in members:
                if in_primed_zero_piece(b, d) != in_primed_zero_piece_set(
                    epsilon(b, d), d
                ):
                    return {"D": d, "kind": "primed-class", "member": b.to_pairs()}
        bad = sector_order_check(d)
        if bad is not None:
            return {"D": d, **bad}
        for which in ("++", "+-", "-+", "--"):
            try:
                m = sector_matrix(d, which)
            except FalsificationError as exc:
                return {"D": d, "kind": "orbit-matrix", "detail": str(exc)}
            flat = [v for row in m.rows for v in row]
            if min(flat) < 0 or max(flat) > 2:
                return {"D": d, "kind": "orbit-entries", "sector": which}
    return None


CHECK_NAMES = [
    "construction_equivalence",
    "laminarity",
    "lifting_recursion",
    "gamma_invariance",
    "primitive_closed_forms",
    "n_membership_transport",
    "piece_bijections",
    "unique_bijection",
    "order_antisymmetry",
    "piece_counts",
    "triangular_closed_form",
    "involution_suite",
]


def _ranges(max_d: int, slow: bool) -> dict[str, list[int]]:
    all_d = list(range(0, max_d + 1))
    even_d = [d for d in all_d if d % 2 == 0]
    odd_d = [d for d in all_d if d % 2 == 1]
    filter_cap = 11 if slow else 9
    return {
        "construction_equivalence": [d for d in all_d if d <= filter_cap],
        "laminarity": all_d,
        "lifting_recursion": [d for d in all_d if d >= 2],
        "gamma_invariance": [d for d in all_d if d >= 2],
        "primitive_closed_forms": all_d,
        "n_membership_transport": [d for d in odd_d if d >= 3],
        "piece_bijections": all_d,
        "unique_bijection": [d for d in all_d if d <= 9],
        "order_antisymmetry": all_d,
        "piece_counts": all_d,
        "triangular_closed_form": even_d,
        "involution_suite": odd_d,
    }


_CHECKS: dict[str, Callable[[list[int]], dict | None]] = {
    "construction_equivalence": _check_construction_equivalence,
    "laminarity": _check_laminarity,
    "lifting_recursion": _check_recursion,
    "gamma_invariance": _check_gamma_invariance,
    "primitive_closed_forms": _check_primitive_forms,
    "n_membership_transport": _check_n_transport,
    "piece_bijections": _check_piece_bijections,
    "unique_bijection": _check_uniqueness,
    "order_antisymmetry": _check_antisymmetry,
    "piece_counts": _check_counting,
    "triangular_closed_form": _check_triangular_form,
    "involution_suite": _check_involution_suite,
}


def run_checks(
    max_d: int, slow: bool = False, inject_failure: bool = False
) -> list[RunReport]:
    """Run the twelve checks up to max_d; per-check caps keep the sweep sane."""
    guard_d(max_d, 13 if slow else 11, "verification")
    ranges = _ranges(max_d, slow)
    reports = []
    for name in CHECK_NAMES:
        ds = ranges[name]
        start = time.perf_counter()
        try:
            detail = _CHECKS[name](ds)
        except FalsificationError as exc:
            detail = {"kind": "falsification", "message": str(exc)}
        reports.append(
            RunReport(
                name=name,
                d_values=ds,
                passed=detail is None,
                detail=detail,
                seconds=time.perf_counter() - start,
            )
        )
    if inject_failure:
        reports.append(
            RunReport(
                name="injected_failure",
                d_values=[],
                passed=False,
                detail={"kind": "injected", "message": "failure injection requested"},
                seconds=0.0,
            )
        )
    return reports

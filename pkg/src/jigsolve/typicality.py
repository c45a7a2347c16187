"""The five structural properties that make a puzzle easy to reconstruct.

All properties are evaluated against the ground truth (the puzzle and its
planted placement), so this is a harness-side checker. Thresholds are
compared in exact rational arithmetic. Note that the last property bounds
the number of pieces per color pair by ``c_prime * k``, which is below 1
at small k with the default constant; it is then unsatisfiable, and the
overall verdict is driven by it. The checker still reports each property
separately so the others stay informative at desk scale.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .grid import (
    Assembly,
    Coord,
    DIRECTIONS,
    EdgeId,
    PieceBag,
    Puzzle,
    edge_in_direction,
    piece_at,
    positions_row_major,
)
from .windows import DEFAULT_BUDGET, CandidateStatus, candidate_neighborhoods

#: Default constant for the color-pair property.
DEFAULT_C_PRIME = Fraction(1, 50)


@dataclass(frozen=True)
class TypicalityReport:
    k: int
    c_prime: Fraction
    core_unique: bool  # every core piece has exactly one candidate neighborhood
    core_witness: Optional[tuple[Coord, str]]
    peripheral_consistent: bool  # peripheral pieces: no neighborhood, or the planted one
    peripheral_witness: Optional[tuple[Coord, str]]
    edge_colors_ok: bool  # few peripheral edges with repeated colors
    nonunique_peripheral_edges: int
    edge_witness: Optional[EdgeId]
    pair_sharing_ok: bool  # no two peripheral pieces share two jig colors
    pair_witness: Optional[tuple[Coord, Coord, tuple[int, int]]]
    color_pair_ok: bool  # every color pair is on few pieces
    color_pair_witness: Optional[tuple[tuple[int, int], int]]

    @property
    def typical(self) -> bool:
        return (
            self.core_unique
            and self.peripheral_consistent
            and self.edge_colors_ok
            and self.pair_sharing_ok
            and self.color_pair_ok
        )


def check_typical(
    puzzle: Puzzle,
    k: int,
    c_prime: Fraction = DEFAULT_C_PRIME,
    budget: int = DEFAULT_BUDGET,
) -> TypicalityReport:
    """Evaluate the five properties from scratch.

    Builds a bag in planted order and enumerates its windows; propagates
    :class:`jigsolve.windows.BudgetExceededError` if the enumeration blows
    the budget.
    """
    n = puzzle.n
    if 2 * k >= n:
        raise ValueError("need k < n/2")
    order = positions_row_major(n)
    bag = PieceBag(n, puzzle.q, tuple(piece_at(puzzle, v) for v in order))
    planted = Assembly({v: ix for ix, v in enumerate(order)})
    statuses = candidate_neighborhoods(bag, k, budget)
    return report_from_candidates(puzzle, planted, statuses, k, c_prime)


def report_from_candidates(
    puzzle: Puzzle,
    planted: Assembly,
    statuses: dict[int, CandidateStatus],
    k: int,
    c_prime: Fraction = DEFAULT_C_PRIME,
) -> TypicalityReport:
    """Evaluate the properties given precomputed candidate statuses.

    ``statuses`` must come from the bag that ``planted`` indexes into;
    the harness reuses one window enumeration for both this check and the
    solve.
    """
    n = puzzle.n
    placement = planted.placement
    core_lo, core_hi = k + 1, n - k

    def is_core(v: Coord) -> bool:
        return core_lo <= v[0] <= core_hi and core_lo <= v[1] <= core_hi

    core_unique, core_witness = True, None
    for v in positions_row_major(n):
        if is_core(v) and statuses[placement[v]].kind != "unique":
            core_unique, core_witness = False, (v, statuses[placement[v]].kind)
            break

    peripheral = [v for v in positions_row_major(n) if not is_core(v)]

    peripheral_consistent, peripheral_witness = True, None
    for v in peripheral:
        st = statuses[placement[v]]
        if st.kind == "none":
            continue
        if st.kind == "multiple":
            peripheral_consistent, peripheral_witness = False, (v, "multiple")
            break
        expected = _planted_neighborhood(placement, v, n)
        if expected is None or tuple(st.neighborhood) != expected:
            peripheral_consistent, peripheral_witness = False, (v, "not planted")
            break

    # repeated colors among edges touching the periphery
    edge_colors: dict[EdgeId, int] = {}
    for v in peripheral:
        for d in DIRECTIONS:
            e = edge_in_direction(v, d)
            if e not in edge_colors:
                edge_colors[e] = puzzle.edge_color(e)
    counts: dict[int, int] = {}
    for c in edge_colors.values():
        counts[c] = counts.get(c, 0) + 1
    nonunique = 0
    edge_witness = None
    for e, c in edge_colors.items():
        if counts[c] >= 2:
            nonunique += 1
            if edge_witness is None:
                edge_witness = e
    edge_budget = n - 2 * k - 1
    edge_colors_ok = nonunique <= edge_budget

    # no two peripheral pieces may share a color pair
    pair_sharing_ok, pair_witness = True, None
    seen_pairs: dict[tuple[int, int], Coord] = {}
    for v in peripheral:
        piece = piece_at(puzzle, v)
        for key in _color_pairs(piece):
            prev = seen_pairs.get(key)
            if prev is None:
                seen_pairs[key] = v
            elif prev != v and pair_sharing_ok:
                pair_sharing_ok, pair_witness = False, (prev, v, key)
        if not pair_sharing_ok:
            break

    # every color pair must be on at most c_prime * k pieces (all pieces)
    threshold = c_prime * k
    pair_counts: dict[tuple[int, int], int] = {}
    color_pair_ok, color_pair_witness = True, None
    for v in positions_row_major(n):
        piece = piece_at(puzzle, v)
        for key in set(_color_pairs(piece)):
            pair_counts[key] = pair_counts.get(key, 0) + 1
    for key, count in sorted(pair_counts.items()):
        if Fraction(count) > threshold:
            color_pair_ok, color_pair_witness = False, (key, count)
            break

    return TypicalityReport(
        k=k,
        c_prime=c_prime,
        core_unique=core_unique,
        core_witness=core_witness,
        peripheral_consistent=peripheral_consistent,
        peripheral_witness=peripheral_witness,
        edge_colors_ok=edge_colors_ok,
        nonunique_peripheral_edges=nonunique,
        edge_witness=edge_witness,
        pair_sharing_ok=pair_sharing_ok,
        pair_witness=pair_witness,
        color_pair_ok=color_pair_ok,
        color_pair_witness=color_pair_witness,
    )


def _planted_neighborhood(
    placement: dict[Coord, int], v: Coord, n: int
) -> tuple[int, int, int, int] | None:
    """Planted neighbor ids of v in direction order, None if v borders."""
    out = []
    for d in DIRECTIONS:
        nb = (v[0] + d.step[0], v[1] + d.step[1])
        if not (1 <= nb[0] <= n and 1 <= nb[1] <= n):
            return None
        out.append(placement[nb])
    return tuple(out)  # type: ignore[return-value]


def _color_pairs(piece) -> list[tuple[int, int]]:
    """The six unordered jig color pairs of a piece, as sorted tuples."""
    out = []
    for a in range(4):
        for b in range(a + 1, 4):
            ca, cb = piece[a], piece[b]
            out.append((ca, cb) if ca <= cb else (cb, ca))
    return out

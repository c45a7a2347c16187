"""Feasible window enumeration over a piece bag, with color indexes.

A window is a (2k+1)-by-(2k+1) block of distinct pieces whose internal
edges all match. Enumeration seeds the top-left corner, extends the top
row rightward and the left column downward through single-color lookups,
then fills the interior row by row where each open cell is pinned by two
colors at once. The stream is deterministic: candidates are tried in
increasing piece id.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Iterator, NamedTuple

from .grid import Direction, PieceBag

#: Default cap on explored partial assemblies.
DEFAULT_BUDGET = 10**7


class BudgetExceededError(Exception):
    """Enumeration aborted; any results gathered so far are incomplete."""

    def __init__(self, budget: int):
        super().__init__(f"window enumeration exceeded the budget of {budget} partial assemblies")
        self.budget = budget


@dataclass(frozen=True)
class ColorIndexes:
    """Side and side-pair lookup tables over a bag.

    ``side_index[(d, c)]`` lists the piece ids with color c on side d.
    ``pair_index[(d1, d2, c1, c2)]`` (d1 < d2) lists the piece ids with
    color c1 on side d1 and c2 on side d2; every piece feeds all six
    unordered side pairs.
    """

    side_index: dict[tuple[Direction, int], tuple[int, ...]]
    pair_index: dict[tuple[Direction, Direction, int, int], tuple[int, ...]]


def build_indexes(bag: PieceBag) -> ColorIndexes:
    side: dict[tuple[Direction, int], list[int]] = {}
    pair: dict[tuple[Direction, Direction, int, int], list[int]] = {}
    for pid, piece in enumerate(bag.pieces):
        for d in range(4):
            side.setdefault((Direction(d), piece[d]), []).append(pid)
        for d1 in range(4):
            for d2 in range(d1 + 1, 4):
                key = (Direction(d1), Direction(d2), piece[d1], piece[d2])
                pair.setdefault(key, []).append(pid)
    return ColorIndexes(
        {k: tuple(v) for k, v in side.items()},
        {k: tuple(v) for k, v in pair.items()},
    )


class WindowAssembly(NamedTuple):
    """A feasible window: piece ids in row-major order, top row first."""

    k: int
    cells: tuple[int, ...]

    @property
    def side(self) -> int:
        return 2 * self.k + 1

    def pid_at(self, x: int, y: int) -> int:
        return self.cells[(self.k - y) * self.side + (x + self.k)]

    @property
    def center(self) -> int:
        return self.cells[self.k * self.side + self.k]

    def neighborhood(self) -> "CandidateNeighborhood":
        mid = self.k * self.side + self.k
        return CandidateNeighborhood(
            right=self.cells[mid + 1],
            up=self.cells[mid - self.side],
            left=self.cells[mid - 1],
            down=self.cells[mid + self.side],
        )


class CandidateNeighborhood(NamedTuple):
    """The four claimed neighbors of a center piece, keyed by direction."""

    right: int
    up: int
    left: int
    down: int


class CandidateStatus(NamedTuple):
    """Aggregate of all windows centered on one piece.

    ``stable`` holds, per direction, the neighbor id claimed identically
    by every window (None where windows disagree); for a unique status it
    coincides with the neighborhood.
    """

    kind: str  # "none" | "unique" | "multiple"
    neighborhood: CandidateNeighborhood | None = None
    witnesses: tuple[CandidateNeighborhood, ...] = ()
    stable: tuple[int | None, int | None, int | None, int | None] = (None, None, None, None)


NO_WINDOW = CandidateStatus("none")


def enumerate_windows(bag: PieceBag, k: int, budget: int = DEFAULT_BUDGET) -> Iterator[WindowAssembly]:
    """Yield every feasible window assembly of the bag exactly once.

    Raises :class:`BudgetExceededError` once more than ``budget`` partial
    assemblies (piece placements) have been explored.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    if budget <= 0:
        raise ValueError("budget must be positive")

    pieces = bag.pieces
    npieces = len(pieces)
    q = bag.q
    side = 2 * k + 1
    ncells = side * side

    # per-color buckets for the two constrained sides; dense color spaces
    # use list indexing, sparse ones a defaultdict (avoids q-sized tables)
    UPD, LFT = int(Direction.UP), int(Direction.LEFT)
    if q <= 4 * npieces:
        by_left: list | defaultdict = [() for _ in range(q + 1)]
        by_up: list | defaultdict = [() for _ in range(q + 1)]
        lacc: list[list[int]] = [[] for _ in range(q + 1)]
        uacc: list[list[int]] = [[] for _ in range(q + 1)]
        for pid, piece in enumerate(pieces):
            lacc[piece[LFT]].append(pid)
            uacc[piece[UPD]].append(pid)
        for c in range(q + 1):
            by_left[c] = tuple(lacc[c])
            by_up[c] = tuple(uacc[c])
    else:
        by_left = defaultdict(tuple)
        by_up = defaultdict(tuple)
        ldict: dict[int, list[int]] = {}
        udict: dict[int, list[int]] = {}
        for pid, piece in enumerate(pieces):
            ldict.setdefault(piece[LFT], []).append(pid)
            udict.setdefault(piece[UPD], []).append(pid)
        for c, pids in ldict.items():
            by_left[c] = tuple(pids)
        for c, pids in udict.items():
            by_up[c] = tuple(pids)
    stride = q + 1
    pair_ul: dict[int, tuple[int, ...]] = {}
    pacc: dict[int, list[int]] = {}
    for pid, piece in enumerate(pieces):
        pacc.setdefault(piece[UPD] * stride + piece[LFT], []).append(pid)
    for key, pids in pacc.items():
        pair_ul[key] = tuple(pids)

    # cell order: top row, then left column, then interior rows top-down
    cells: list[tuple[int, int]] = [(x, k) for x in range(-k, k + 1)]
    cells += [(-k, y) for y in range(k - 1, -k - 1, -1)]
    for y in range(k - 1, -k - 1, -1):
        for x in range(-k + 1, k + 1):
            cells.append((x, y))
    slot_of = {cell: s for s, cell in enumerate(cells)}
    # per slot: (left_slot, above_slot), -1 when outside the window
    left_slot = [-1] * ncells
    above_slot = [-1] * ncells
    for s, (x, y) in enumerate(cells):
        ls = slot_of.get((x - 1, y), -1)
        as_ = slot_of.get((x, y + 1), -1)
        assert ls < s and as_ < s, "cell order must place constraints first"
        left_slot[s], above_slot[s] = ls, as_
    canon = [(k - y) * side + (x + k) for (x, y) in cells]

    RIGHT, UP, LEFT, DOWN = 0, 1, 2, 3
    empty: tuple[int, ...] = ()
    pair_get = pair_ul.get

    used = bytearray(npieces)
    slots = [0] * ncells
    out = [0] * ncells
    explored = 0
    last = ncells - 1
    stack: list[Iterator[int]] = [iter(range(npieces))]
    depth = 0
    make = WindowAssembly

    while stack:
        it = stack[-1]
        for pid in it:
            if used[pid]:
                continue
            explored += 1
            if explored > budget:
                raise BudgetExceededError(budget)
            if depth == last:
                out[canon[depth]] = pid
                yield make(k, tuple(out))
                continue
            slots[depth] = pid
            out[canon[depth]] = pid
            used[pid] = 1
            depth += 1
            ls, as_ = left_slot[depth], above_slot[depth]
            if ls >= 0:
                right_color = pieces[slots[ls]][RIGHT]
                if as_ >= 0:
                    cands = pair_get(pieces[slots[as_]][DOWN] * stride + right_color, empty)
                else:
                    cands = by_left[right_color]
            else:
                cands = by_up[pieces[slots[as_]][DOWN]]
            stack.append(iter(cands))
            break
        else:
            stack.pop()
            if not stack:
                break
            depth -= 1
            used[slots[depth]] = 0


def aggregate_candidates(
    num_pieces: int, windows: Iterator[WindowAssembly]
) -> dict[int, CandidateStatus]:
    """Fold a window stream into per-piece candidate statuses.

    Order independent: the result depends only on the set of windows.
    """
    first: dict[int, CandidateNeighborhood] = {}
    multi: dict[int, tuple[CandidateNeighborhood, CandidateNeighborhood]] = {}
    stable: dict[int, list[int | None]] = {}
    for wa in windows:
        center = wa.center
        nb = wa.neighborhood()
        cur = first.get(center)
        if cur is None:
            first[center] = nb
            stable[center] = list(nb)
            continue
        agreed = stable[center]
        for d in range(4):
            if agreed[d] is not None and agreed[d] != nb[d]:
                agreed[d] = None
        if center not in multi and nb != cur:
            multi[center] = (cur, nb)
    statuses: dict[int, CandidateStatus] = {}
    for pid in range(num_pieces):
        if pid in multi:
            statuses[pid] = CandidateStatus("multiple", None, multi[pid], tuple(stable[pid]))
        elif pid in first:
            nb = first[pid]
            statuses[pid] = CandidateStatus("unique", nb, (), tuple(nb))
        else:
            statuses[pid] = NO_WINDOW
    return statuses


def candidate_neighborhoods(
    bag: PieceBag, k: int, budget: int = DEFAULT_BUDGET
) -> dict[int, CandidateStatus]:
    """Candidate status of every piece, from the full window stream."""
    return aggregate_candidates(len(bag.pieces), enumerate_windows(bag, k, budget))

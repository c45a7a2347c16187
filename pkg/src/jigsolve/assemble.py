"""Reconstruction from candidate neighborhoods: join, guess, grow shells.

Given per-piece candidate statuses, mutually confirmed neighbor claims are
joined into rigid components. The largest component must contain a square
of core size; each way to place that square is tried in turn, growing the
periphery ring by ring from unique color matches. A solve succeeds only
when a complete placement passes the independent feasibility check.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .grid import Assembly, Coord, Direction, PieceBag, is_feasible
from .windows import DEFAULT_BUDGET, BudgetExceededError, CandidateStatus, candidate_neighborhoods


class OffsetConflictError(Exception):
    """Two derivations of a piece's relative position disagree."""


class ShellStuck(Exception):
    """A core guess cannot be completed; try the next one."""

    def __init__(self, shell: int, side: str | None, reason: str):
        super().__init__(f"stuck at shell {shell}" + (f" ({side} side)" if side else "") + f": {reason}")
        self.shell = shell
        self.side = side
        self.reason = reason


@dataclass(frozen=True)
class PartialAssembly:
    """A rigid component on the lattice, normalized to start at (0, 0)."""

    placement: dict[Coord, int]
    n: int | None = None
    k: int | None = None

    @property
    def size(self) -> int:
        return len(self.placement)


@dataclass(frozen=True)
class CoreGuess:
    """Component-local anchor of a core-sized square (bottom-left cell)."""

    anchor: Coord


@dataclass(frozen=True)
class SolveOutcome:
    assembly: Assembly | None
    failure: str | None = None  # multiple_candidates | no_core_square | all_guesses_stuck | budget_exceeded
    guesses_tried: int = 0

    @property
    def solved(self) -> bool:
        return self.assembly is not None


def join_neighbors(cands: dict[int, CandidateStatus]) -> list[PartialAssembly]:
    """Rigid components of the mutual-adjacency relation.

    Two pieces are joined when each names the other in the matching
    direction of its unique neighborhood. Components are realized as
    placements on the lattice; disagreeing position derivations raise
    :class:`OffsetConflictError`. Sorted largest first, then by smallest
    piece id.
    """
    for pid, st in cands.items():
        if st.kind == "multiple":
            raise ValueError(f"piece {pid} has several candidate neighborhoods")
    return mutual_components(cands, strict=True)


def mutual_components(
    cands: dict[int, CandidateStatus], strict: bool = False
) -> list[PartialAssembly]:
    """Components of the stable mutual-adjacency relation.

    A directed claim counts only where every window of a piece names the
    same neighbor (for unique statuses: its neighborhood); a link needs
    both directions. With no multiple statuses this is exactly the
    unique-neighborhood join. In strict mode inconsistent derivations
    raise :class:`OffsetConflictError`; otherwise the conflicting link is
    dropped and joining continues.
    """
    mutual: dict[int, list[tuple[Direction, int]]] = {pid: [] for pid in cands}
    for pid, st in cands.items():
        if st.kind == "none":
            continue
        for d in range(4):
            other = st.stable[d]
            if other is None:
                continue
            ost = cands.get(other)
            if ost is None or ost.kind == "none":
                continue
            if ost.stable[Direction(d).opposite] == pid:
                mutual[pid].append((Direction(d), other))

    seen: set[int] = set()
    components: list[PartialAssembly] = []
    for root in sorted(cands):
        if root in seen:
            continue
        offsets: dict[int, Coord] = {root: (0, 0)}
        cells: dict[Coord, int] = {(0, 0): root}
        queue = deque([root])
        seen.add(root)
        while queue:
            pid = queue.popleft()
            (x, y) = offsets[pid]
            for d, other in mutual[pid]:
                (dx, dy) = d.step
                pos = (x + dx, y + dy)
                if other in offsets:
                    if offsets[other] != pos:
                        if strict:
                            raise OffsetConflictError(
                                f"piece {other} derived at both {offsets[other]} and {pos}"
                            )
                        continue  # inconsistent evidence; drop the link
                    continue
                if other in seen:
                    continue  # already attached to an earlier component
                holder = cells.get(pos)
                if holder is not None:
                    if strict:
                        raise OffsetConflictError(
                            f"pieces {holder} and {other} derived at the same cell {pos}"
                        )
                    continue
                offsets[other] = pos
                cells[pos] = other
                seen.add(other)
                queue.append(other)
        minx = min(x for x, _ in offsets.values())
        miny = min(y for _, y in offsets.values())
        components.append(
            PartialAssembly({(x - minx, y - miny): pid for pid, (x, y) in offsets.items()})
        )

    components.sort(key=lambda c: (-c.size, min(c.placement.values())))
    return components


def core_guesses(comp: PartialAssembly, n: int, k: int) -> list[CoreGuess]:
    """All anchors of a fully occupied core-sized square in the component."""
    m = n - 2 * k
    if m < 1:
        raise ValueError("core size must be positive")
    cells = set(comp.placement)
    if not cells:
        return []
    maxx = max(x for x, _ in cells)
    maxy = max(y for _, y in cells)
    guesses = []
    for ax in range(0, maxx - m + 2):
        for ay in range(0, maxy - m + 2):
            if all((ax + dx, ay + dy) in cells for dx in range(m) for dy in range(m)):
                guesses.append(CoreGuess((ax, ay)))
    return guesses


def _best_cover_guesses(comp: PartialAssembly, n: int, k: int) -> list[CoreGuess]:
    """Anchors of core-sized squares covering the most component cells.

    Used only when no square is fully occupied: the component may carry a
    few holes where window evidence was ambiguous, and the missing pieces
    are recovered later by the shell rules (a hole specifies up to four
    free edges).
    """
    m = n - 2 * k
    cells = set(comp.placement)
    if not cells:
        return []
    maxx = max(x for x, _ in cells)
    maxy = max(y for _, y in cells)
    best = 0
    anchors: list[CoreGuess] = []
    for ax in range(0, max(maxx - m + 2, 1)):
        for ay in range(0, max(maxy - m + 2, 1)):
            cover = sum(
                1 for dx in range(m) for dy in range(m) if (ax + dx, ay + dy) in cells
            )
            if cover > best:
                best = cover
                anchors = [CoreGuess((ax, ay))]
            elif cover == best and cover:
                anchors.append(CoreGuess((ax, ay)))
    return anchors


def assemble_shells(
    bag: PieceBag,
    core: dict[Coord, int],
    remaining: list[int],
    n: int,
    k: int,
) -> Assembly:
    """Grow the periphery outward from a placed core, shell by shell.

    Two greedy rules alternate to a fixed point, innermost open cells
    first (so shells emerge in order):

    * fill: an open cell adjacent to at least two placed pieces takes the
      unique remaining piece matching all its specified free edges; cells
      with several matches wait for the pool to shrink; a cell with no
      match means the guess is wrong.
    * seed: when no fill makes progress, the free edges of placed pieces
      are scanned (innermost cell first, sides in bottom/right/top/left
      order) for a color occurring exactly once among all jigs of the
      remaining pieces; the lone occurrence, if it faces the edge, is
      placed.

    Raises :class:`ShellStuck` when neither rule applies and open cells
    remain.
    """
    pieces = bag.pieces
    placement = dict(core)
    square = {(i, j) for i in range(k + 1, n - k + 1) for j in range(k + 1, n - k + 1)}
    if not core or not set(core) <= square:
        raise ValueError("core must sit inside the central square")
    pool = sorted(remaining)
    if len(pool) + len(core) != n * n or set(pool) & set(core.values()):
        raise ValueError("remaining pieces must be exactly the unplaced ids")

    def depth(cell: Coord) -> int:
        i, j = cell
        return min(i - 1, j - 1, n - i, n - j)

    def shell_of(cell: Coord) -> int:
        return max(k - depth(cell), 0)

    # innermost first, then bottom/right/top/left side order, then along the side
    def scan_key(cell: Coord) -> tuple:
        i, j = cell
        d = depth(cell)
        lo, hi = d + 1, n - d
        if j == lo:
            side, along = 0, i
        elif i == hi:
            side, along = 1, j
        elif j == hi:
            side, along = 2, i
        else:
            side, along = 3, j
        return (-d, side, along)

    open_cells = sorted(
        ((i, j) for i in range(1, n + 1) for j in range(1, n + 1) if (i, j) not in placement),
        key=scan_key,
    )

    while open_cells:
        progress = False
        still_open: list[Coord] = []
        for cell in open_cells:
            matches = _matches_at(pieces, placement, pool, cell)
            if matches is None:
                still_open.append(cell)  # fewer than two free edges specified
                continue
            if len(matches) == 0:
                raise ShellStuck(shell_of(cell), _side_name(cell, n), "no matching piece")
            if len(matches) > 1:
                still_open.append(cell)
                continue
            pid = matches[0]
            placement[cell] = pid
            pool.remove(pid)
            progress = True
        open_cells = still_open
        if progress or not open_cells:
            continue

        seeded = _seed_any(pieces, placement, pool, open_cells)
        if seeded is None:
            cell = open_cells[0]
            raise ShellStuck(shell_of(cell), _side_name(cell, n), "no unique fill or seed")
        open_cells.remove(seeded)

    assert not pool, "every piece must be placed"
    return Assembly(placement)


def _seed_any(
    pieces: tuple,
    placement: dict[Coord, int],
    pool: list[int],
    open_cells: list[Coord],
) -> Coord | None:
    """Seed one open cell from a free edge with a unique color.

    Scans open cells in order; for each, every placed neighbor's facing
    edge is a free edge. A color counted exactly once over all jigs of
    the remaining pieces identifies one piece; it is placed if the lone
    occurrence is on the jig facing the edge.
    """
    for cell in open_cells:
        for d in range(4):
            dx, dy = Direction(d).step
            pid = placement.get((cell[0] + dx, cell[1] + dy))
            if pid is None:
                continue
            facing = Direction(d)  # side of the new piece toward the neighbor
            color = pieces[pid][facing.opposite]
            count = 0
            match = -1
            for cand in pool:
                p = pieces[cand]
                count += (p[0] == color) + (p[1] == color) + (p[2] == color) + (p[3] == color)
                if count > 1:
                    break
                if count == 1 and match < 0:
                    match = cand
            if count != 1:
                continue
            if pieces[match][facing] != color:
                continue  # the lone occurrence faces the wrong way
            if not _placement_consistent(pieces, placement, cell, match):
                continue  # violates another already placed neighbor
            placement[cell] = match
            pool.remove(match)
            return cell
    return None


def _placement_consistent(
    pieces: tuple, placement: dict[Coord, int], cell: Coord, pid: int
) -> bool:
    piece = pieces[pid]
    for d in range(4):
        dx, dy = Direction(d).step
        other = placement.get((cell[0] + dx, cell[1] + dy))
        if other is not None and piece[d] != pieces[other][Direction(d).opposite]:
            return False
    return True


def _matches_at(
    pieces: tuple,
    placement: dict[Coord, int],
    pool: list[int],
    cell: Coord,
) -> list[int] | None:
    """Remaining pieces matching every placed neighbor of an open cell.

    Returns None when fewer than two neighbors are placed (the cell does
    not yet specify two free edges).
    """
    wanted: list[tuple[int, int]] = []
    for d in range(4):
        dx, dy = Direction(d).step
        pid = placement.get((cell[0] + dx, cell[1] + dy))
        if pid is not None:
            wanted.append((d, pieces[pid][Direction(d).opposite]))
    if len(wanted) < 2:
        return None
    out = []
    for pid in pool:
        p = pieces[pid]
        if all(p[d] == c for d, c in wanted):
            out.append(pid)
    return out


def _side_name(cell: Coord, n: int) -> str | None:
    i, j = cell
    d = min(i - 1, j - 1, n - i, n - j)
    lo, hi = d + 1, n - d
    if j == lo:
        return "bottom"
    if i == hi:
        return "right"
    if j == hi:
        return "top"
    if i == lo:
        return "left"
    return None


def solve(
    bag: PieceBag,
    n: int,
    k: int,
    budget: int = DEFAULT_BUDGET,
    candidates: dict[int, CandidateStatus] | None = None,
) -> SolveOutcome:
    """Full reconstruction pipeline over a shuffled bag.

    Pieces with several candidate neighborhoods mark the puzzle as
    ambiguous; joining then relies only on direction claims shared by all
    of a piece's windows, and if the pipeline still cannot finish, the
    outcome is ``Failed(multiple_candidates)``. A returned assembly always
    passes the independent feasibility check. Precomputed ``candidates``
    (from :func:`jigsolve.windows.candidate_neighborhoods`) may be
    supplied to avoid re-enumerating windows.
    """
    if len(bag.pieces) != n * n:
        raise ValueError("bag size must be n^2")
    if k < 1 or 2 * k >= n:
        raise ValueError("need 1 <= k < n/2")

    if candidates is None:
        try:
            candidates = candidate_neighborhoods(bag, k, budget)
        except BudgetExceededError:
            return SolveOutcome(None, "budget_exceeded")

    # A piece with several candidate neighborhoods fails step 1 as stated.
    # Recovery still joins on direction claims that are constant across
    # all of a piece's windows and mutually confirmed; if that pipeline
    # cannot finish, the step-1 verdict is reported.
    multiples = any(st.kind == "multiple" for st in candidates.values())

    components = mutual_components(candidates)
    largest = components[0]
    guesses = core_guesses(largest, n, k)
    had_full_square = bool(guesses)
    if not guesses:
        # no fully occupied square; fall back to the best-covered anchors
        guesses = _best_cover_guesses(largest, n, k)
    if not guesses:
        return SolveOutcome(None, "multiple_candidates" if multiples else "no_core_square")

    m = n - 2 * k
    all_pids = set(range(n * n))
    for tried, guess in enumerate(guesses, start=1):
        ax, ay = guess.anchor
        core = {}
        for dx in range(m):
            for dy in range(m):
                pid = largest.placement.get((ax + dx, ay + dy))
                if pid is not None:
                    core[(k + 1 + dx, k + 1 + dy)] = pid
        remaining = sorted(all_pids - set(core.values()))
        try:
            assembly = assemble_shells(bag, core, remaining, n, k)
        except ShellStuck:
            continue
        if is_feasible(bag, assembly):
            return SolveOutcome(assembly, guesses_tried=tried)
    if multiples:
        reason = "multiple_candidates"
    elif had_full_square:
        reason = "all_guesses_stuck"
    else:
        reason = "no_core_square"
    return SolveOutcome(None, reason, guesses_tried=len(guesses))

import io

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jigsolve.gen import generate_variant
from jigsolve.grid import Direction
from jigsolve.oracle import enumerate_feasible_assemblies
from jigsolve.variant import (
    JigInvolution,
    LimitExceededError,
    RotAssembly,
    brute_force_variant_solve,
    identity_assembly,
    is_feasible_rot_assembly,
    make_involution,
    read_variant,
    respects_matching,
    rotate_piece,
    to_base_puzzle,
    write_variant,
)
from jigsolve.grid import PieceBag, piece_at, positions_row_major


def test_involution_identity():
    iota = make_involution(5, "identity")
    assert all(iota(j) == j for j in range(1, 6))


def test_involution_pairing_even():
    iota = make_involution(4, "pairing")
    assert [iota(j) for j in (1, 2, 3, 4)] == [2, 1, 4, 3]


def test_involution_pairing_odd_fixed_point():
    iota = make_involution(5, "pairing")
    fixed = [j for j in range(1, 6) if iota(j) == j]
    assert fixed == [5]


@given(q=st.integers(1, 30), kind=st.sampled_from(["identity", "pairing"]))
@settings(max_examples=40, deadline=None)
def test_involution_self_inverse(q, kind):
    iota = make_involution(q, kind)
    assert all(iota(iota(j)) == j for j in range(1, q + 1))


def test_involution_validation():
    with pytest.raises(ValueError):
        JigInvolution((2, 3, 1))  # a 3-cycle is not an involution
    with pytest.raises(ValueError):
        JigInvolution((5,))


def test_rotate_identity_and_order():
    piece = (1, 2, 3, 4)
    assert rotate_piece(piece, 0) == piece
    rotated = piece
    for _ in range(4):
        rotated = rotate_piece(rotated, 1)
    assert rotated == piece


def test_rotate_generator_geometry():
    # one quarter turn counter-clockwise: the Right jig lands on Up
    piece = (1, 2, 3, 4)  # (right, up, left, down)
    turned = rotate_piece(piece, 1)
    assert turned[Direction.UP] == piece[Direction.RIGHT]
    assert turned[Direction.LEFT] == piece[Direction.UP]
    assert turned[Direction.DOWN] == piece[Direction.LEFT]
    assert turned[Direction.RIGHT] == piece[Direction.DOWN]


@given(turns=st.integers(0, 7), extra=st.integers(0, 7))
@settings(max_examples=30, deadline=None)
def test_rotate_composes(turns, extra):
    piece = (1, 2, 3, 4)
    assert rotate_piece(rotate_piece(piece, turns), extra) == rotate_piece(piece, turns + extra)


def test_identity_assembly_always_feasible():
    for q, kind, seed in ((1, "identity", 0), (4, "pairing", 1), (7, "pairing", 2)):
        vp = generate_variant(3, q, make_involution(q, kind), seed=seed)
        assert is_feasible_rot_assembly(vp, identity_assembly(3))


def test_global_rotation_rejected_as_malformed():
    # rotating the whole board satisfies colors but breaks the rule that
    # the piece homed at (1, 1) keeps the identity rotation
    vp = generate_variant(2, 3, make_involution(3, "identity"), seed=4)
    rotated = RotAssembly(
        2,
        {
            (1, 1): ((2, 1), 1),
            (1, 2): ((1, 1), 1),
            (2, 2): ((1, 2), 1),
            (2, 1): ((2, 2), 1),
        },
    )
    with pytest.raises(ValueError):
        is_feasible_rot_assembly(vp, rotated)


def test_random_rigid_permutation_infeasible_at_large_q():
    bad = 0
    for seed in range(50):
        vp = generate_variant(2, 100, make_involution(100, "pairing"), seed=seed)
        scrambled = RotAssembly(
            2,
            {
                (1, 1): ((1, 2), 3),
                (1, 2): ((2, 1), 2),
                (2, 1): ((2, 2), 1),
                (2, 2): ((1, 1), 0),
            },
        )
        if not is_feasible_rot_assembly(vp, scrambled):
            bad += 1
    assert bad >= 48


def test_variant_solve_n1():
    vp = generate_variant(1, 3, make_involution(3, "identity"), seed=0)
    assemblies = brute_force_variant_solve(vp)
    assert len(assemblies) == 1  # orientation pinning kills the rotations
    assert assemblies[0].placement == {(1, 1): ((1, 1), 0)}


def test_variant_solve_n2_q1_count():
    vp = generate_variant(2, 1, make_involution(1, "identity"), seed=0)
    assemblies = brute_force_variant_solve(vp, limit=2000)
    assert len(assemblies) == 1536  # 4! placements x 4^3 free rotations
    keys = {tuple(sorted(a.placement.items())) for a in assemblies}
    assert len(keys) == 1536


def test_variant_solve_limit():
    vp = generate_variant(2, 1, make_involution(1, "identity"), seed=0)
    with pytest.raises(LimitExceededError):
        brute_force_variant_solve(vp, limit=100)


def test_variant_solve_unique_at_large_q():
    hits = 0
    for seed in range(100):
        vp = generate_variant(2, 100, make_involution(100, "pairing"), seed=seed)
        if len(brute_force_variant_solve(vp, limit=1000)) == 1:
            hits += 1
    assert hits >= 95


def test_identity_always_among_solutions():
    for seed in range(10):
        vp = generate_variant(2, 3, make_involution(3, "pairing"), seed=seed)
        assemblies = brute_force_variant_solve(vp, limit=10**5)
        identity_key = tuple(sorted(identity_assembly(2).placement.items()))
        assert identity_key in {tuple(sorted(a.placement.items())) for a in assemblies}


def test_boundary_fixed_subset():
    for seed in range(5):
        vp = generate_variant(2, 2, make_involution(2, "identity"), seed=seed)
        unrestricted = {
            tuple(sorted(a.placement.items()))
            for a in brute_force_variant_solve(vp, limit=10**5)
        }
        restricted = brute_force_variant_solve(vp, limit=10**5, boundary_fixed=True)
        assert {tuple(sorted(a.placement.items())) for a in restricted} <= unrestricted
        for a in restricted:
            assert is_feasible_rot_assembly(vp, a)


def test_identity_involution_matches_base_model():
    # rotations off + identity involution == the base-model oracle
    for seed in range(6):
        vp = generate_variant(2, 2, make_involution(2, "identity"), seed=seed)
        base = to_base_puzzle(vp)
        order = positions_row_major(2)
        bag = PieceBag(2, 2, tuple(piece_at(base, v) for v in order))
        base_assemblies = {
            tuple(sorted((v, pid) for v, pid in a.placement.items()))
            for a in enumerate_feasible_assemblies(bag, limit=10**5)
        }
        variant_assemblies = set()
        for a in brute_force_variant_solve(vp, limit=10**5, allow_rotations=False):
            key = tuple(sorted((v, order.index(home)) for v, (home, _) in a.placement.items()))
            variant_assemblies.add(key)
        assert variant_assemblies == base_assemblies


def test_to_base_puzzle_requires_identity():
    vp = generate_variant(2, 2, make_involution(2, "pairing"), seed=0)
    with pytest.raises(ValueError):
        to_base_puzzle(vp)


def test_variant_file_round_trip():
    vp = generate_variant(3, 4, make_involution(4, "pairing"), seed=6)
    buf = io.StringIO()
    write_variant(vp, buf)
    back = read_variant(io.StringIO(buf.getvalue()))
    assert back.n == vp.n and back.q == vp.q
    assert back.iota.images == vp.iota.images
    assert np.array_equal(back.sigma, vp.sigma)


def test_variant_puzzle_validates_coupling():
    vp = generate_variant(2, 2, make_involution(2, "identity"), seed=0)
    sigma = np.array(vp.sigma)
    sigma[0, 0, Direction.RIGHT] = 3 - sigma[0, 0, Direction.RIGHT]  # break Eq coupling
    from jigsolve.variant import VariantPuzzle

    with pytest.raises(ValueError):
        VariantPuzzle(2, 2, vp.iota, sigma)
    assert respects_matching(vp)

import dataclasses
import math

import numpy as np
import pytest

from monodromy import (
    GroupSizeError,
    LoopPath,
    Permutation,
    TrackingError,
    base_point,
    block_systems,
    compose,
    critical_loop,
    galois_classify,
    generated_group,
    loop_around_critical,
    loop_around_zero,
    minimal_blocks,
    predicted_collision,
    track_roots,
    zero_loop,
)
from poly import continue_roots, critical_data, small_lambda_roots


def test_permutation_basics():
    c = Permutation.from_cycles(4, (0, 1, 2, 3))
    t = Permutation.from_cycles(4, (0, 2))
    assert c.images == (1, 2, 3, 0)
    assert c.order == 4 and c.is_full_cycle
    assert t.is_transposition and t.moved_points == [0, 2]
    assert c.then(c.inverse()).is_identity
    assert str(c.then(t)) == "(0 1)(2 3)"
    assert compose([c, c, c, c], 4).is_identity
    assert c.conjugate(t).cycle_type == (4,)


def test_permutation_rejects_non_bijection():
    with pytest.raises(ValueError):
        Permutation((0, 0, 1))


def test_generated_group_known_values():
    s3 = generated_group([Permutation.from_cycles(3, (0, 1, 2)), Permutation.from_cycles(3, (0, 1))], 3)
    assert s3.order == 6 and s3.is_symmetric and s3.blocks is None

    d4 = generated_group([Permutation.from_cycles(4, (0, 1, 2, 3)), Permutation.from_cycles(4, (0, 2))], 4)
    assert d4.order == 8
    assert d4.blocks == (frozenset({0, 2}), frozenset({1, 3}))
    assert d4.quotient_order == 2 and d4.quotient_cyclic

    cyclic = generated_group([Permutation.from_cycles(5, (0, 1, 2, 3, 4))], 5)
    assert cyclic.order == 5


def test_schreier_sims_backend_agrees():
    gens = [Permutation.from_cycles(6, (0, 1, 2, 3, 4, 5)), Permutation.from_cycles(6, (0, 3))]
    assert generated_group(gens, 6, backend="schreier_sims").order == generated_group(gens, 6).order


def test_bfs_size_cap():
    gens = [Permutation.from_cycles(9, tuple(range(9)))]
    with pytest.raises(GroupSizeError):
        generated_group(gens, 9)
    assert generated_group(gens, 9, backend="schreier_sims").order == 9


def test_minimal_blocks():
    c = Permutation.from_cycles(6, tuple(range(6)))
    assert minimal_blocks([c], 6, 0, 3) == (frozenset({0, 3}), frozenset({1, 4}), frozenset({2, 5}))


def test_block_systems_of_dihedral_six():
    # ⟨(1 5)(2 4), (0 1 2 3 4 5)⟩ 有两个极小块系
    gens = [
        Permutation.from_cycles(6, (1, 5), (2, 4)),
        Permutation.from_cycles(6, tuple(range(6))),
    ]
    assert minimal_blocks(gens, 6, 0, 2) == (frozenset({0, 2, 4}), frozenset({1, 3, 5}))
    assert block_systems(gens, 6) == [
        (frozenset({0, 3}), frozenset({1, 4}), frozenset({2, 5})),
        (frozenset({0, 2, 4}), frozenset({1, 3, 5})),
    ]


def test_primitive_and_intransitive_groups_have_no_blocks():
    s5 = [Permutation.from_cycles(5, tuple(range(5))), Permutation.from_cycles(5, (0, 1))]
    assert block_systems(s5, 5) == []
    assert minimal_blocks(s5, 5, 0, 1) == (frozenset(range(5)),)
    swap = [Permutation.from_cycles(4, (0, 3))]
    assert minimal_blocks(swap, 4, 0, 3) is None
    assert generated_group(swap, 4).blocks is None


def test_loop_path_must_close():
    with pytest.raises(ValueError):
        LoopPath((0j, 1 + 0j))


@pytest.mark.parametrize("n, p", [(3, 1), (4, 1), (6, 2)])
def test_loop_around_zero_is_shift(n, p):
    perm = loop_around_zero(n, p)
    assert perm.is_full_cycle
    assert perm.images == tuple((j + 1) % n for j in range(n))


def test_reversed_loop_gives_inverse():
    forward = track_roots(4, 1, zero_loop(4))
    backward = track_roots(4, 1, zero_loop(4).reversed())
    assert backward == forward.inverse()


def test_concatenated_loop_composes():
    sigma = track_roots(4, 1, zero_loop(4))
    assert track_roots(4, 1, zero_loop(4) + zero_loop(4)) == sigma.then(sigma)


def test_loop_enclosing_nothing_is_identity():
    lam0 = base_point(4)
    rho = lam0 / 2
    path = LoopPath.circle(lam0 + rho, rho, start_angle=math.pi)
    points = (complex(lam0),) + path.points[1:-1] + (complex(lam0),)
    assert track_roots(4, 1, LoopPath(points)).is_identity


@pytest.mark.parametrize("n, p", [(3, 1), (5, 2), (4, 2)])
def test_loop_around_critical_is_transposition(n, p):
    tau = loop_around_critical(n, p)
    assert tau.is_transposition
    assert tau.then(tau).is_identity


def test_generators_stable_under_refinement():
    assert loop_around_zero(5, 2, samples=64) == loop_around_zero(5, 2, samples=128)
    assert loop_around_critical(5, 2, samples=64) == loop_around_critical(5, 2, samples=128)
    assert track_roots(5, 2, zero_loop(5).refined()) == loop_around_zero(5, 2)
    assert track_roots(5, 2, critical_loop(5, 2).refined(3)) == loop_around_critical(5, 2)


def test_refined_path_keeps_base_and_closes():
    path = zero_loop(4, samples=8)
    fine = path.refined(4)
    assert len(fine.points) == 4 * (len(path.points) - 1) + 1
    assert fine.base == path.base and fine.points[-1] == fine.points[0]


def test_tracking_step_cap():
    with pytest.raises(TrackingError):
        galois_classify(4, 1, max_steps=4)


def test_predicted_collision_labels():
    assert predicted_collision(5, 2) == (1, 4)
    assert predicted_collision(3, 1) == (0, 2)


@pytest.mark.parametrize("n, p", [(3, 1), (4, 1), (5, 2), (7, 3), (6, 5), (8, 3), (4, 2), (6, 3)])
def test_critical_loop_swaps_predicted_pair(n, p):
    report = galois_classify(n, p)
    assert report.collision_matches
    assert set(report.observed_pair) == set(predicted_collision(n, p))


def test_collision_mismatch_fails_classification():
    report = galois_classify(5, 2)
    wrong = dataclasses.replace(report, predicted_pair=(0, 1))
    assert not wrong.collision_matches
    assert not wrong.passed


@pytest.mark.parametrize("n, p", [(3, 1), (5, 2), (7, 3), (6, 5), (8, 3)])
def test_colliding_pair_near_critical_value(n, p):
    # 实轴上 λ → λ_c 时，碰撞的一对是共轭的、彼此最近的两根
    delta = 1e-4
    crit = critical_data(n, p)
    lam = crit.lambda_crit * (1 - delta)
    start = small_lambda_roots(n, p, 0.1)
    x = continue_roots(n, p, list(np.geomspace(start.lam, lam, 64)), start.roots).roots
    d = np.abs(x[:, None] - x[None, :])
    np.fill_diagonal(d, np.inf)
    i, j = np.unravel_index(np.argmin(d), d.shape)
    assert {int(i), int(j)} == set(predicted_collision(n, p))
    assert abs(x[i]) == pytest.approx(abs(x[j]), rel=1e-8)
    assert x[i] == pytest.approx(np.conj(x[j]), abs=1e-8)
    spread = math.sqrt(2 * delta * n * p / (n - p) ** 3)
    assert abs(x[i] - crit.double_root) <= 2 * spread


@pytest.mark.parametrize(
    "n, p, order, blocks",
    [(5, 2, 120, 1), (4, 2, 8, 2), (6, 3, 24, 3), (3, 1, 6, 1)],
)
def test_galois_classification(n, p, order, blocks):
    report = galois_classify(n, p)
    assert report.group.order == order
    assert report.group.block_count == blocks
    assert report.passed


def test_galois_block_structure_for_six_three():
    group = galois_classify(6, 3).group
    assert group.block_size == 2
    assert group.quotient_order == 3 and group.quotient_cyclic
    assert group.wreath_kernel


def test_galois_rejects_bad_parameters():
    with pytest.raises(ValueError):
        galois_classify(4, 4)


@pytest.mark.slow
@pytest.mark.parametrize("n, p", [(4, 1), (6, 5), (7, 3), (8, 3)])
def test_galois_symmetric_when_coprime(n, p):
    report = galois_classify(n, p)
    assert report.group.order == math.factorial(n)
    assert report.passed


@pytest.mark.slow
@pytest.mark.parametrize("n, p, order", [(6, 2, 72), (8, 4, 64)])
def test_galois_wreath_when_not_coprime(n, p, order):
    report = galois_classify(n, p)
    assert report.group.order == order == report.expected_order
    assert report.passed


@pytest.mark.slow
def test_generators_for_all_small_degrees():
    for n in range(2, 9):
        for p in range(1, n):
            assert loop_around_zero(n, p).is_full_cycle
            assert loop_around_critical(n, p).is_transposition

from fractions import Fraction

import pytest

from bipareto import (
    DpState,
    Front,
    GridParams,
    ParetoPoint,
    box_index,
    coverage_check,
    evaluate_schedule,
    find_closeness_violation,
    find_coverage_violation,
    grid_params,
    normalize,
    parse_epsilon,
    solve_exact,
    solve_fptas,
    trim,
    verify_trim_closeness,
)
from bipareto import fptas as fptas_module
from conftest import make_instances

WORKED = [(2, 5), (3, 4), (4, 1)]


def test_parse_epsilon():
    assert parse_epsilon("0.3") == Fraction(3, 10)
    assert parse_epsilon("3/10") == Fraction(3, 10)
    assert parse_epsilon(" 2 ") == Fraction(2)
    for bad in ("0", "-1", "0.0", "abc", "1/0", ""):
        with pytest.raises(ValueError):
            parse_epsilon(bad)


def test_grid_params_direct_substitution():
    grid = grid_params(normalize(WORKED), Fraction(1))
    assert (grid.delta1, grid.delta2) == (Fraction(3, 2), Fraction(14, 9))
    assert (grid.cmax_bound, grid.lmax_bound) == (9, 14)
    assert (grid.n, grid.total_p, grid.q_max) == (3, 9, 5)

    # P=20, q_max=20, n=5
    inst = normalize([(4, 20), (4, 3), (4, 2), (4, 1), (4, 0)])
    grid = grid_params(inst, Fraction(3, 10))
    assert (grid.delta1, grid.delta2) == (Fraction(3, 5), Fraction(4, 5))

    # P=100, q_max=0, n=10
    inst = normalize([(10, 0)] * 10)
    grid = grid_params(inst, Fraction(9, 10))
    assert (grid.delta1, grid.delta2) == (Fraction(9, 2), Fraction(3))

    with pytest.raises(ValueError):
        grid_params(inst, Fraction(0))


def test_box_index():
    assert box_index(5, Fraction(3, 2)) == 3
    assert box_index(0, Fraction(3, 2)) == 0
    assert box_index(0, Fraction(7, 13)) == 0
    # exact boundary belongs to the higher box's lower edge
    assert box_index(9, Fraction(3, 2)) == 6
    with pytest.raises(ValueError):
        box_index(-1, Fraction(3, 2))


def worked_grid():
    return grid_params(normalize(WORKED), Fraction(1))  # delta1=3/2, delta2=14/9


def test_trim_merges_identical_values():
    a = DpState(k=1, lmax=9, cmax=5)
    b = DpState(k=0, lmax=9, cmax=5)
    kept = trim([a, b], worked_grid()).states
    assert kept == (a,)  # same box, earliest generated wins


def test_trim_keeps_distinct_boxes():
    a = DpState(k=1, lmax=7, cmax=6)   # boxes (4, 4)
    b = DpState(k=0, lmax=8, cmax=7)   # boxes (5, 4)
    assert trim([a, b], worked_grid()).states == (a, b)


def test_trim_boundary_straddle():
    # lateness 13 and 14 differ by less than delta2 yet straddle a box edge
    a = DpState(k=1, lmax=13, cmax=3)
    b = DpState(k=1, lmax=14, cmax=3)
    assert box_index(13, Fraction(14, 9)) == 8
    assert box_index(14, Fraction(14, 9)) == 9
    assert trim([a, b], worked_grid()).states == (a, b)


def test_trim_representative_rank():
    grid = GridParams(
        delta1=Fraction(10),
        delta2=Fraction(10),
        cmax_bound=9,
        lmax_bound=9,
        n=2,
        total_p=9,
        q_max=0,
    )
    # one giant box: minimal lateness, then minimal load, then earliest
    states = [
        DpState(k=1, lmax=5, cmax=9),
        DpState(k=1, lmax=4, cmax=8),
        DpState(k=0, lmax=4, cmax=6),
        DpState(k=1, lmax=4, cmax=6),
    ]
    assert trim(states, grid).states == (states[2],)
    with pytest.raises(ValueError):
        trim([], grid)


def test_solve_fptas_worked_instance():
    inst = normalize(WORKED)
    exact = solve_exact(inst)
    eps = Fraction(3, 10)
    approx = solve_fptas(inst, eps)
    assert coverage_check(exact.front, approx.front, eps)
    # exact point (5, 9) needs an approximate point at most (6.5, 11.7)
    assert any(pt.cmax * 10 <= 65 and pt.lmax * 10 <= 117 for pt in approx.front)
    for sched, point in zip(approx.schedules, approx.front):
        assert evaluate_schedule(inst, sched.flags) == point


def test_solve_fptas_degenerate():
    assert solve_fptas(normalize([(7, 3)]), Fraction(9, 10)).front.points == (
        ParetoPoint(7, 10),
    )


def test_solve_fptas_tiny_epsilon_degenerates_to_exact():
    # both deltas below 1: boxes isolate every integer value pair
    for inst in make_instances(23, 15, (2, 9), (1, 9), (1, 9)):
        eps = Fraction(1, 6 * inst.n)
        grid = grid_params(inst, eps)
        assert grid.delta1 < 1 and grid.delta2 < 1
        assert solve_fptas(inst, eps).front.points == solve_exact(inst).front.points


def test_coverage_check_examples():
    exact = Front((ParetoPoint(5, 9), ParetoPoint(6, 7)))
    assert coverage_check(exact, exact, Fraction(1, 1000))

    single = Front((ParetoPoint(10, 20),))
    assert coverage_check(single, Front((ParetoPoint(13, 20),)), Fraction(3, 10))
    assert not coverage_check(single, Front((ParetoPoint(14, 20),)), Fraction(3, 10))


def test_find_coverage_violation_witness():
    exact = Front((ParetoPoint(5, 9), ParetoPoint(6, 7)))
    shifted = Front((ParetoPoint(5, 9), ParetoPoint(6, 8)))
    eps = Fraction(1, 100)
    violation = find_coverage_violation(exact, shifted, eps)
    assert violation == ParetoPoint(6, 7)  # 8 > (1+eps) * 7
    assert find_coverage_violation(exact, exact, eps) is None
    assert find_coverage_violation(exact, Front(()), eps) == ParetoPoint(5, 9)


def test_closeness_base_case_and_identity():
    inst = normalize(WORKED)
    exact = solve_exact(inst, keep_layers=True)
    grid = worked_grid()
    first = exact.layers[:1]
    assert verify_trim_closeness(first, first, grid)
    # identity trimming satisfies the drift bounds with slack zero
    assert verify_trim_closeness(exact.layers, exact.layers, grid)


def test_closeness_worked_instance():
    inst = normalize(WORKED)
    eps = Fraction(1)
    exact = solve_exact(inst, keep_layers=True)
    approx = solve_fptas(inst, eps, keep_layers=True)
    assert verify_trim_closeness(exact.layers, approx.layers, grid_params(inst, eps))


def test_closeness_violation_witness():
    inst = normalize(WORKED)
    exact = solve_exact(inst, keep_layers=True)
    # a far-off approximate layer cannot be close to anything
    fake = [
        type(layer)(layer.i, (DpState(k=0, lmax=10**6, cmax=10**6),))
        for layer in exact.layers
    ]
    grid = worked_grid()
    violation = find_closeness_violation(exact.layers, fake, grid)
    assert violation is not None
    assert violation.layer == 1
    assert violation.state.point == ParetoPoint(2, 7)


def test_closeness_rejects_misaligned_layers():
    inst = normalize(WORKED)
    exact = solve_exact(inst, keep_layers=True)
    with pytest.raises(ValueError, match="length"):
        find_closeness_violation(exact.layers, exact.layers[:2], worked_grid())
    swapped = (exact.layers[1], exact.layers[0], exact.layers[2])
    with pytest.raises(ValueError, match="misaligned"):
        find_closeness_violation(exact.layers, swapped, worked_grid())


def test_coverage_and_closeness_on_random_instances():
    for inst in make_instances(29, 25, (2, 12)):
        exact = solve_exact(inst, keep_layers=True)
        for eps in (Fraction(3, 10), Fraction(9, 10), Fraction(2)):
            approx = solve_fptas(inst, eps, keep_layers=True)
            assert coverage_check(exact.front, approx.front, eps)
            grid = grid_params(inst, eps)
            assert verify_trim_closeness(exact.layers, approx.layers, grid)


def test_layer_sizes_respect_box_count_bound():
    for inst in make_instances(31, 10, (5, 25), (1, 100), (1, 100)):
        for eps in (Fraction(3, 10), Fraction(9, 10)):
            grid = grid_params(inst, eps)
            bound = (box_index(grid.cmax_bound, grid.delta1) + 1) * (
                box_index(grid.lmax_bound, grid.delta2) + 1
            )
            result = solve_fptas(inst, eps)
            assert max(result.layer_sizes) <= bound


def test_python_fallback_reducer_matches_vectorized(monkeypatch):
    instances = make_instances(37, 10, (2, 14))
    eps = Fraction(3, 10)
    vectorized = [solve_fptas(inst, eps) for inst in instances]
    monkeypatch.setattr(fptas_module, "_INT64_MAX", 0)  # force the fallback path
    for inst, vec in zip(instances, vectorized):
        fal = solve_fptas(inst, eps)
        assert fal.front.points == vec.front.points
        assert fal.layer_sizes == vec.layer_sizes
        assert [s.flags for s in fal.schedules] == [s.flags for s in vec.schedules]


def test_huge_epsilon_denominator_uses_exact_arithmetic():
    inst = normalize(WORKED)
    eps = Fraction(1, 10**15)  # overflows any int64 scaling, must still be exact
    exact = solve_exact(inst)
    approx = solve_fptas(inst, eps)
    assert approx.front.points == exact.front.points

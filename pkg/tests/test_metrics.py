import math

import numpy as np
import pytest

from moflowshop.metrics import (
    HV_REFERENCE_POINT,
    ParetoFront,
    ReferenceFront,
    consolidate,
    hypervolume3,
    normalize,
    relative_hypervolume,
    spread,
    spread_terms,
)

from oracles import hypervolume_inclusion_exclusion, nondominated_subset


def front_of(*vectors):
    return ParetoFront((tuple(v), tuple(range(3))) for v in vectors)


def random_front(rng, count, span=100):
    rows = rng.integers(0, span, size=(count, 3))
    return front_of(*nondominated_subset(rows.tolist()))


def test_front_dedups_and_filters():
    f = ParetoFront(
        [
            ((1, 1, 1), (0, 1)),
            ((1, 1, 1), (1, 0)),  # duplicate vector: first genome kept
            ((2, 2, 2), (0, 1)),  # dominated: dropped
            ((0, 5, 5), (1, 0)),
        ]
    )
    assert len(f) == 2
    assert dict(f.points)[(1, 1, 1)] == (0, 1)
    assert (2, 2, 2) not in dict(f.points)


def test_front_equality_ignores_insertion_order():
    a = front_of((1, 2, 3), (3, 2, 1))
    b = front_of((3, 2, 1), (1, 2, 3))
    assert a == b and hash(a) == hash(b)


def test_consolidate_cases():
    f = front_of((1, 2, 2), (2, 1, 2))
    assert consolidate([f]) == f
    both = consolidate([front_of((1, 2, 2)), front_of((2, 1, 2))])
    assert len(both) == 2
    assert consolidate([front_of((1, 1, 1)), front_of((2, 2, 2))]) == front_of((1, 1, 1))


def test_consolidate_set_semantics():
    rng = np.random.default_rng(52)
    fronts = [random_front(rng, 12) for _ in range(3)]
    a, b, c = fronts
    assert consolidate([a, consolidate([b, c])]) == consolidate([consolidate([a, b]), c])
    assert consolidate([a, b]) == consolidate([b, a])
    assert consolidate([a, a]) == consolidate([a])


def test_csv_round_trip():
    f = front_of((3, 10, 0), (2, 12, 5))
    again = ParetoFront.from_csv(f.to_csv())
    assert again == f
    assert f.to_csv().splitlines()[0] == "makespan,wtct,tardiness,permutation"


def test_csv_rejects_malformed():
    with pytest.raises(ValueError):
        ParetoFront.from_csv("nope\n")
    with pytest.raises(ValueError):
        ParetoFront.from_csv("makespan,wtct,tardiness,permutation\n1,2\n")


def test_reference_front_bounds():
    ref = ReferenceFront.of(front_of((1, 9, 4), (5, 2, 3)))
    assert tuple(ref.ideal) == (1, 2, 3)
    assert tuple(ref.nadir) == (5, 9, 4)
    with pytest.raises(ValueError):
        ReferenceFront.of(ParetoFront())


def test_normalize_maps_bounds():
    ref = ReferenceFront.of(front_of((0, 10, 10), (10, 0, 0)))
    rows = normalize(front_of((0, 10, 10), (10, 0, 0), (5, 5, 5)), ref)
    rows = rows[np.lexsort(rows.T[::-1])]
    assert rows.tolist() == [[0, 1, 1], [0.5, 0.5, 0.5], [1, 0, 0]]


def test_normalize_degenerate_reference_warns():
    ref = ReferenceFront.of(front_of((4, 4, 4)))
    rows = normalize(front_of((4, 4, 4)), ref)
    assert rows.tolist() == [[0, 0, 0]]


def test_hypervolume_single_box():
    assert hypervolume3([(0.5, 0.5, 0.5)], (1, 1, 1)) == pytest.approx(0.125, abs=0)


def test_hypervolume_two_boxes():
    pts = [(0.2, 0.6, 0.6), (0.6, 0.2, 0.6)]
    assert hypervolume3(pts, (1, 1, 1)) == pytest.approx(0.192, abs=1e-15)


def test_hypervolume_empty_and_beyond_ref():
    assert hypervolume3([], (1, 1, 1)) == 0.0
    # a point beyond the reference is dropped, not counted negatively
    assert hypervolume3([(1.5, 0.5, 0.5)], (1, 1, 1)) == 0.0


def test_hypervolume_matches_inclusion_exclusion():
    rng = np.random.default_rng(77)
    for _ in range(500):
        count = int(rng.integers(1, 13))
        pts = rng.random((count, 3)).tolist()
        ours = hypervolume3(pts, (1.1, 1.1, 1.1))
        oracle = hypervolume_inclusion_exclusion(pts, (1.1, 1.1, 1.1))
        assert math.isclose(ours, oracle, rel_tol=0, abs_tol=1e-12)


def test_hypervolume_monotone_in_new_points():
    rng = np.random.default_rng(8)
    pts = rng.random((6, 3)).tolist()
    base = hypervolume3(pts, (1.1, 1.1, 1.1))
    grown = hypervolume3(pts + [rng.random(3).tolist()], (1.1, 1.1, 1.1))
    assert grown >= base - 1e-15


def test_rhv_identity_on_random_fronts():
    rng = np.random.default_rng(4242)
    for _ in range(100):
        f = random_front(rng, int(rng.integers(1, 20)))
        ref = ReferenceFront.of(f)
        assert relative_hypervolume(f, ref) == pytest.approx(1.0, abs=1e-12)


def test_rhv_subset_no_more_than_one():
    rng = np.random.default_rng(11)
    f = random_front(rng, 30)
    ref = ReferenceFront.of(f)
    some = ParetoFront(list(f.points)[: max(1, len(f) // 2)])
    assert relative_hypervolume(some, ref) <= 1.0 + 1e-12


def test_rhv_nadir_only_is_small():
    ref = ReferenceFront.of(front_of((0, 10, 10), (10, 0, 10), (10, 10, 0), (5, 5, 5)))
    nadir_only = front_of((10, 10, 10))
    inner = front_of((5, 5, 5))
    assert relative_hypervolume(nadir_only, ref) < relative_hypervolume(inner, ref)


def test_rhv_requires_usable_reference():
    ref = ReferenceFront.of(front_of((4, 4, 4)))
    # single-point reference normalizes to the origin: HV is positive, RHV = 1
    assert relative_hypervolume(front_of((4, 4, 4)), ref) == pytest.approx(1.0)


def test_spread_singleton_is_one():
    ref = ReferenceFront.of(front_of((0, 0, 0), (10, 10, 10)))
    assert spread(front_of((5, 5, 5)), ref) == 1.0


def test_spread_uniform_front_is_zero():
    # evenly spaced on a line, extremes included
    pts = [(0, 100, 100), (25, 75, 75), (50, 50, 50), (75, 25, 25), (100, 0, 0)]
    f = front_of(*pts)
    ref = ReferenceFront.of(f)
    assert spread(f, ref) == pytest.approx(0.0, abs=1e-9)


def test_spread_collinear_hand_value():
    # normalized positions 0, 0.1, 0.2, 1.0 along the x = 1-y line (z constant):
    # d_e = (0,0,0), neighbor gaps g = (0.1, 0.1, 0.1, 0.8) scaled by sqrt(2),
    # mean 0.275*sqrt(2); spread = sum|g - mean| / (4*mean) = 1.05/1.1 = 21/22
    pts = [(0, 1000, 5), (100, 900, 5), (200, 800, 5), (1000, 0, 5)]
    f = front_of(*pts)
    assert len(f) == 4
    ref = ReferenceFront.of(f)
    assert spread(f, ref) == pytest.approx(21 / 22, abs=1e-12)


def test_spread_terms_extreme_distances():
    ref_front = front_of((0, 50, 50), (100, 0, 50), (100, 50, 0))
    ref = ReferenceFront.of(ref_front)
    # the front misses every extreme by the same normalized offset
    f = front_of((50, 25, 25))
    terms = spread_terms(f, ref)
    assert len(terms.extreme_dists) == 3
    assert all(d > 0 for d in terms.extreme_dists)
    assert spread(f, ref) == 1.0  # singleton convention wins


def test_spread_positive_when_extremes_missed():
    ref = ReferenceFront.of(front_of((0, 100, 100), (50, 50, 50), (100, 0, 0)))
    middle_only = front_of((50, 50, 50), (55, 45, 45))
    assert spread(middle_only, ref) > 0

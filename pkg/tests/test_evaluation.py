import numpy as np
import pytest

from moflowshop.evaluation import (
    Evaluator,
    ObjectiveVector,
    completion_times,
    dominates,
    evaluate,
    is_permutation,
)
from moflowshop.instances import GeneratorConfig, Instance, generate_instance

from oracles import simulate_completion_times, simulate_objectives


def make_instance(p, due=None, weights=None):
    p = np.asarray(p, dtype=np.int64)
    n, m = p.shape
    return Instance(
        name="t",
        n_jobs=n,
        n_machines=m,
        processing_times=p,
        due_dates=np.asarray(due if due is not None else [10_000] * n, dtype=np.int64),
        weights=np.asarray(weights if weights is not None else [1] * n, dtype=np.int64),
    )


def test_two_job_recurrence():
    inst = make_instance([[3, 2], [1, 4]])
    c = completion_times(inst, np.array([0, 1]))
    assert c.tolist() == [[3, 5], [4, 9]]


def test_missing_operation_passes_through():
    inst = make_instance([[3, 0], [1, 4]])
    c = completion_times(inst, np.array([0, 1]))
    assert c.tolist() == [[3, 3], [4, 8]]


def test_zero_work_job_scheduled_first_finishes_at_zero():
    inst = make_instance([[0, 0], [5, 5]])
    c = completion_times(inst, np.array([0, 1]))
    assert c[0].tolist() == [0, 0]


def test_objectives_hand_example():
    inst = make_instance([[3, 2], [1, 4]], due=[10, 10], weights=[1, 1])
    assert evaluate(inst, np.array([0, 1])) == ObjectiveVector(9, 14, 0)


def test_tardiness_hand_example():
    inst = make_instance([[3, 2], [1, 4]], due=[4, 8], weights=[1, 1])
    assert evaluate(inst, np.array([0, 1])).total_tardiness == 2


def test_single_job_single_machine():
    inst = make_instance([[5]], due=[0], weights=[3])
    assert evaluate(inst, np.array([0])) == ObjectiveVector(5, 15, 5)


def test_dominates_cases():
    assert dominates((1, 1, 1), (2, 2, 2))
    assert not dominates((1, 1, 1), (1, 1, 1))
    assert not dominates((1, 3, 1), (2, 2, 2))
    assert not dominates((2, 2, 2), (1, 3, 1))


def test_permutation_validation():
    inst = make_instance([[1, 1], [1, 1]])
    with pytest.raises(ValueError):
        completion_times(inst, np.array([0, 0]))
    with pytest.raises(ValueError):
        completion_times(inst, np.array([0]))
    assert is_permutation(np.array([1, 0]), 2)
    assert not is_permutation(np.array([1, 2]), 2)


def test_matches_event_simulation():
    rng = np.random.default_rng(402)
    for _ in range(120):
        n = int(rng.integers(1, 9))
        m = int(rng.integers(1, 5))
        p = int(rng.integers(0, 3))
        inst = generate_instance(
            GeneratorConfig(
                n_jobs=n,
                n_machines=m,
                missing_prob=(0.0, 0.2, 0.6)[p],
                seed=int(rng.integers(0, 2**32)),
            )
        )
        order = rng.permutation(n)
        ours = completion_times(inst, order)
        theirs = simulate_completion_times(inst.processing_times, order)
        assert ours.tolist() == theirs


def test_objectives_match_simulation():
    rng = np.random.default_rng(11)
    for _ in range(40):
        inst = generate_instance(
            GeneratorConfig(n_jobs=6, n_machines=3, missing_prob=0.3, seed=int(rng.integers(1 << 30)))
        )
        order = rng.permutation(6)
        vec = evaluate(inst, order)
        assert tuple(vec) == simulate_objectives(
            inst.processing_times, inst.due_dates, inst.weights, order
        )


def test_monotone_in_processing_time():
    rng = np.random.default_rng(88)
    base = generate_instance(GeneratorConfig(n_jobs=6, n_machines=3, missing_prob=0.2, seed=3))
    order = rng.permutation(6)
    before = evaluate(base, order)
    for _ in range(25):
        j = int(rng.integers(6))
        m = int(rng.integers(3))
        bumped = base.processing_times.copy()
        if bumped[j, m] >= 100:
            continue
        bumped[j, m] += int(rng.integers(1, 5))
        bumped = np.minimum(bumped, 100)
        inst = Instance(
            name="t",
            n_jobs=6,
            n_machines=3,
            processing_times=bumped,
            due_dates=base.due_dates,
            weights=base.weights,
        )
        after = evaluate(inst, order)
        assert all(x >= y for x, y in zip(after, before))


def test_zero_row_job_never_finishes_after_predecessor():
    p = np.array([[4, 7, 2], [0, 0, 0], [3, 1, 5]], dtype=np.int64)
    inst = make_instance(p)
    c = completion_times(inst, np.array([0, 1, 2]))
    assert c[1, -1] <= c[0, -1]


def test_evaluator_counts_and_batches():
    inst = make_instance([[3, 2], [1, 4]], due=[4, 8])
    ev = Evaluator(inst)
    single = ev.evaluate(np.array([0, 1]))
    assert ev.count == 1
    batch = ev.evaluate_batch(np.array([[0, 1], [1, 0]]))
    assert ev.count == 3
    assert batch.shape == (2, 3)
    assert tuple(batch[0]) == tuple(single)
    assert tuple(batch[1]) == tuple(evaluate(inst, np.array([1, 0])))


def test_batch_agrees_with_scalar_on_random_orders():
    rng = np.random.default_rng(1234)
    inst = generate_instance(GeneratorConfig(n_jobs=10, n_machines=4, missing_prob=0.25, seed=6))
    orders = np.stack([rng.permutation(10) for _ in range(50)])
    ev = Evaluator(inst)
    rows = ev.evaluate_batch(orders)
    for k in range(50):
        assert tuple(rows[k]) == tuple(evaluate(inst, orders[k]))

"Tests for `app.services.suite`: grid expansion, error records and ordering."

import pytest

from app import config
from app.config import Caps
from app.models import CheckRecord
from app.services.report import EXIT_CAP, EXIT_OK, exit_code
from app.services.suite import (
    STEP_CHECKS,
    Grid,
    Task,
    build_tasks,
    default_p_max,
    run_suite,
    run_task,
    theorem1_points,
    theorem2_points,
)


def test_default_theorem1_grid() -> None:
    points = theorem1_points(Grid())
    assert (199, 1) in points and (211, 1) not in points
    assert (31, 2) in points and (37, 2) not in points
    assert (7, 3) in points and (11, 3) not in points
    assert len(points) == 45 + 10 + 3


def test_custom_theorem1_grid() -> None:
    assert theorem1_points(Grid(p_max=11, r=2)) == [(3, 2), (5, 2), (7, 2), (11, 2)]
    assert theorem1_points(Grid(p_min=5, p_max=7, r_max=2)) == [(5, 1), (7, 1), (5, 2), (7, 2)]
    assert theorem1_points(Grid(p_max=2)) == []


def test_default_theorem2_grid() -> None:
    points = theorem2_points(Grid())
    assert all(m * p ** r <= config.THEOREM2_TOTAL_MAX for p, r, m in points)
    assert (3, 1, 1) in points and (11, 2, 6) in points
    assert len(points) == 4 * 2 * 6


def test_build_tasks() -> None:
    grid = Grid(p_max=7, r=1)
    assert build_tasks("theorem1", grid) == [
        Task("theorem1", {"p": p, "r": 1, "use_reduced": False}) for p in (3, 5, 7)
    ]
    assert [task.params["n"] for task in build_tasks("q1", Grid(n_min=3, n_max=6))] == [3, 4, 5, 6]
    assert build_tasks("q2", Grid(p_max=5)) == [
        Task("q2", {"parts": 4, "p": 3, "r": 1}),
        Task("q2", {"parts": 4, "p": 5, "r": 1}),
    ]
    with pytest.raises(ValueError):
        build_tasks("everything", grid)


def test_lemma_tasks_cover_every_class() -> None:
    tasks = build_tasks("lemmas", Grid(p_max=5, r=2))
    class_tasks = [task.params for task in tasks if task.check == "lemma22"]
    assert {"x": 4, "p": 5, "r": 2} in class_tasks
    assert len([t for t in tasks if t.check == "composition-count"]) == 2 * (
        config.COMPOSITION_M_MAX - config.COMPOSITION_M_MIN + 1
    )


def test_records_carry_identity_tags() -> None:
    checks = {task.check for task in build_tasks("all", Grid(p_max=5, r=1, m_max=1))}
    assert {"lemma21", "lemma22", "eq31", "eq32", "eq33"} <= checks
    assert {"telescope", "reflection", "bijection", "composition-count", "decomposition"} <= checks
    assert not checks & {"half-cubic", "class-sum", "double-sum-step", "triangle-diagonal", "diagonal-bernoulli"}
    assert STEP_CHECKS[0] == "eq31" and "eq32" in STEP_CHECKS and "eq33" in STEP_CHECKS
    records = run_suite([task for task in build_tasks("steps", Grid(p_max=5, r=1, m_max=1)) if task.check == "eq33"])
    assert [(record.check, record.p) for record in records] == [("eq33", 3), ("eq33", 5)]


def test_empty_grid() -> None:
    assert run_suite(build_tasks("theorem1", Grid(p_max=2))) == []


def test_cap_exceeded_becomes_record() -> None:
    record = run_task(Task("theorem1", {"p": 31, "r": 2}), Caps(visit_cap=1000))
    assert record.error == "CapExceeded"
    assert record.passed is None
    assert (record.p, record.r) == (31, 2)
    assert exit_code([record]) == EXIT_OK
    assert exit_code([record], strict=True) == EXIT_CAP


def test_bad_prime_becomes_error_record() -> None:
    record = run_task(Task("zhao", {"p": 9}))
    assert record.error == "NotPrime"
    assert exit_code([record]) == 1


def test_records_sorted() -> None:
    tasks = list(reversed(build_tasks("steps", Grid(p_max=5, r=1, m_max=2))))
    records = run_suite(tasks)
    assert records == sorted(records, key=CheckRecord.sort_key)
    assert all(record.passed for record in records)


def _without_timings(records):
    return [record.model_copy(update={"elapsed_ms": None}) for record in records]


def test_workers_do_not_change_output() -> None:
    tasks = build_tasks("all", Grid(p_max=7, r_max=2, m_max=2))
    serial = run_suite(tasks, workers=1)
    parallel = run_suite(tasks, workers=3)
    assert _without_timings(serial) == _without_timings(parallel)


@pytest.mark.slow
def test_default_sweep_passes() -> None:
    for selection in ("theorem1", "theorem2", "zhao", "wangcai", "lemmas", "steps"):
        records = run_suite(build_tasks(selection, Grid()), workers=4)
        assert exit_code(records) == EXIT_OK, selection


@pytest.mark.parametrize(
    "selection, r, r_max, expected",
    [
        ("theorem1", None, None, 199),
        ("theorem1", 2, None, 31),
        ("wangcai", None, 3, 199),
        ("theorem2", None, None, 11),
        ("steps", 3, None, 11),
        ("zhao", None, None, config.ZHAO_P_MAX),
        ("q2", None, None, config.Q2_P_MAX),
        ("lemmas", None, None, None),
        ("all", None, None, None),
    ],
)
def test_default_p_max(selection, r, r_max, expected) -> None:
    assert default_p_max(selection, r, r_max) == expected

"""
Sweep orchestration: expand a grid into independent check tasks, run them
(optionally across worker processes) and return records in a fixed order.
"""
from concurrent.futures import ProcessPoolExecutor
from typing import Dict, Iterator, List, NamedTuple, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field
from sympy import primerange

from app import config
from app.config import DEFAULT_CAPS, Caps
from app.errors import CapExceeded, VerificationError
from app.models import CheckRecord
from app.services.verifier import CHECKS
import logging

logger = logging.getLogger(__name__)

SELECTIONS = ("theorem1", "theorem2", "zhao", "wangcai", "lemmas", "steps", "all", "q1", "q2")

STEP_CHECKS = (
    "eq31",
    "pair-sum",
    "eq32",
    "square-split",
    "factorization",
    "eq33",
    "class-factor",
    "class-cubic",
    "reflection",
    "bijection",
    "coprime-harmonic",
)

RECORD_PARAMS = ("p", "r", "m", "n", "parts", "x", "k")


class Task(NamedTuple):
    check: str
    params: Dict[str, int]


class Grid(BaseModel):
    """Parameter ranges; unset fields fall back to the per-check defaults in app.config."""
    model_config = ConfigDict(frozen=True)

    p_min: int = Field(3, ge=2)
    p_max: Optional[int] = Field(None, ge=1)
    r: Optional[int] = Field(None, ge=1)
    r_max: Optional[int] = Field(None, ge=1)
    m_max: Optional[int] = Field(None, ge=1)
    n_min: Optional[int] = Field(None, ge=1)
    n_max: Optional[int] = Field(None, ge=1)
    parts: Optional[int] = Field(None, ge=4)
    use_reduced: bool = False

    def _is_default_theorem_grid(self) -> bool:
        return self.p_max is None and self.r is None and self.r_max is None

    def exponents(self, default_max: int) -> List[int]:
        if self.r is not None:
            return [self.r]
        return list(range(1, (self.r_max or default_max) + 1))

    def primes(self, default_max: int) -> List[int]:
        upper = self.p_max if self.p_max is not None else default_max
        return list(primerange(max(self.p_min, 3), upper + 1))


def _theorem1_p_max(r: Optional[int], r_max: Optional[int]) -> int:
    if r is not None:
        return config.THEOREM1_GRID.get(r, 7)
    if r_max is not None:
        return max(config.THEOREM1_GRID.get(e, 7) for e in range(1, r_max + 1))
    return max(config.THEOREM1_GRID.values())


def default_p_max(selection: str, r: Optional[int] = None, r_max: Optional[int] = None) -> Optional[int]:
    """
    Largest prime bound a selection sweeps when --p-max is not given.

    None for selections that still produce records without any prime
    (lemmas and all carry composition counts and Bernoulli properties).
    """
    if selection in ("theorem1", "wangcai"):
        return _theorem1_p_max(r, r_max)
    if selection == "theorem2":
        return max(config.THEOREM2_PRIMES)
    if selection == "steps":
        return max(_theorem1_p_max(r, r_max), max(config.THEOREM2_PRIMES))
    if selection == "zhao":
        return config.ZHAO_P_MAX
    if selection == "q2":
        return config.Q2_P_MAX
    return None


def theorem1_points(grid: Grid) -> List[Tuple[int, int]]:
    """(p, r) pairs of the Theorem 1 grid."""
    if grid._is_default_theorem_grid():
        return [
            (p, r)
            for r, p_max in sorted(config.THEOREM1_GRID.items())
            for p in primerange(max(grid.p_min, 3), p_max + 1)
        ]
    points = []
    for r in grid.exponents(1):
        default_max = config.THEOREM1_GRID.get(r, 7)
        points.extend((p, r) for p in grid.primes(default_max))
    return points


def theorem2_points(grid: Grid) -> List[Tuple[int, int, int]]:
    """(p, r, m) triples of the Theorem 2 grid."""
    if grid.p_max is None:
        primes = [p for p in config.THEOREM2_PRIMES if p >= grid.p_min]
    else:
        primes = grid.primes(grid.p_max)
    m_max = grid.m_max or config.THEOREM2_M_MAX
    points = []
    for p in primes:
        for r in grid.exponents(config.THEOREM2_R_MAX):
            for m in range(1, m_max + 1):
                if grid._is_default_theorem_grid() and m * p ** r > config.THEOREM2_TOTAL_MAX:
                    continue
                points.append((p, r, m))
    return points


def _lemma_tasks(grid: Grid) -> Iterator[Task]:
    for p in grid.primes(config.HALF_CUBIC_P_MAX):
        for check in ("lemma21", "alt-cubic", "full-cubic", "bernoulli-cross"):
            yield Task(check, {"p": p})

    r_max = grid.r or grid.r_max or config.CLASS_SUM_R_MAX
    for p in grid.primes(config.CLASS_SUM_P_MAX):
        for r in range(1, r_max + 1):
            if p ** r > config.CLASS_SUM_MODULUS_MAX:
                break
            telescope = p ** (r + 1) <= config.CLASS_SUM_MODULUS_MAX
            for x in range(1, p):
                yield Task("lemma22", {"x": x, "p": p, "r": r})
                if telescope:
                    yield Task("telescope", {"x": x, "p": p, "r": r})

    for m in range(config.COMPOSITION_M_MIN, config.COMPOSITION_M_MAX + 1):
        for shift in (1, 2):
            yield Task("composition-count", {"m": m, "shift": shift})

    for n in range(2, config.STAUDT_CLAUSEN_MAX + 1, 2):
        yield Task("staudt-clausen", {"n": n})
    for n in range(3, config.ODD_VANISHING_MAX + 1, 2):
        yield Task("odd-vanishing", {"n": n})


def build_tasks(selection: str, grid: Grid) -> List[Task]:
    """Expand a command selection into the list of tasks to run."""
    if selection not in SELECTIONS:
        raise ValueError(f"Unknown selection: {selection}")

    tasks: List[Task] = []
    if selection in ("theorem1", "all"):
        for p, r in theorem1_points(grid):
            tasks.append(Task("theorem1", {"p": p, "r": r, "use_reduced": grid.use_reduced}))
    if selection in ("theorem2", "all"):
        tasks.extend(Task("theorem2", {"p": p, "r": r, "m": m}) for p, r, m in theorem2_points(grid))
    if selection in ("zhao", "all"):
        tasks.extend(Task("zhao", {"p": p}) for p in grid.primes(config.ZHAO_P_MAX))
    if selection in ("wangcai", "all"):
        tasks.extend(Task("wangcai", {"p": p, "r": r}) for p, r in theorem1_points(grid))
    if selection in ("lemmas", "all"):
        tasks.extend(_lemma_tasks(grid))
    if selection in ("steps", "all"):
        for p, r in theorem1_points(grid):
            tasks.extend(Task(check, {"p": p, "r": r}) for check in STEP_CHECKS)
        tasks.extend(
            Task("decomposition", {"p": p, "r": r, "m": m}) for p, r, m in theorem2_points(grid)
        )
    if selection == "q1":
        n_min = grid.n_min if grid.n_min is not None else config.Q1_N_MIN
        n_max = grid.n_max if grid.n_max is not None else config.Q1_N_MAX
        tasks.extend(Task("q1", {"n": n}) for n in range(max(n_min, 3), n_max + 1))
    if selection == "q2":
        parts = grid.parts or config.Q2_PARTS
        r = grid.r or 1
        tasks.extend(
            Task("q2", {"parts": parts, "p": p, "r": r}) for p in grid.primes(config.Q2_P_MAX)
        )
    return tasks


def _record_params(task: Task) -> Dict[str, int]:
    params = {key: value for key, value in task.params.items() if key in RECORD_PARAMS}
    if task.check == "composition-count":
        params["k"] = task.params["m"] - task.params["shift"]
    if task.check in ("staudt-clausen", "odd-vanishing"):
        params = {"k": task.params["n"]}
    return params


def run_task(task: Task, caps: Caps = DEFAULT_CAPS) -> CheckRecord:
    """Run one task; errors become records instead of aborting the sweep."""
    check = CHECKS[task.check]
    try:
        return check(**task.params, caps=caps)
    except CapExceeded as e:
        logger.warning(f"{task.check} {task.params} skipped: {str(e)}")
        return CheckRecord(check=task.check, error="CapExceeded", **_record_params(task))
    except VerificationError as e:
        logger.warning(f"{task.check} {task.params} errored: {str(e)}")
        return CheckRecord(check=task.check, error=type(e).__name__, **_record_params(task))
    except Exception as e:
        logger.error(f"Unexpected error in {task.check} {task.params}: {str(e)}", exc_info=True)
        return CheckRecord(check=task.check, error="InternalError", **_record_params(task))


def _run_chunk(tasks: List[Task], caps: Caps) -> List[CheckRecord]:
    return [run_task(task, caps) for task in tasks]


def run_suite(
    tasks: List[Task],
    workers: int = 1,
    caps: Caps = DEFAULT_CAPS,
) -> List[CheckRecord]:
    """
    Run every task and return the records sorted by (check, parameters).

    With workers > 1 the tasks are dealt round-robin to a process pool;
    ordering of the result never depends on execution order.
    """
    logger.info(f"Running {len(tasks)} checks on {workers} worker(s)")
    if not tasks:
        return []

    if workers <= 1:
        records = _run_chunk(tasks, caps)
    else:
        chunks = [tasks[i::workers] for i in range(workers)]
        records = []
        with ProcessPoolExecutor(max_workers=workers) as executor:
            for chunk_records in executor.map(_run_chunk, chunks, [caps] * len(chunks)):
                records.extend(chunk_records)

    records.sort(key=CheckRecord.sort_key)
    failed = sum(1 for record in records if record.passed is False)
    skipped = sum(1 for record in records if record.is_cap_exceeded)
    logger.info(f"Finished {len(records)} checks: {failed} failed, {skipped} over cap")
    return records

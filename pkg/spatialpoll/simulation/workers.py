"""
Parallel replications with independent, reproducible random substreams.
"""

from __future__ import annotations

import logging
from multiprocessing import Pool
from typing import Callable, List, Sequence, TypeVar

import numpy as np

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def substream(master_seed: int, index: int) -> np.random.SeedSequence:
    """Seed of worker `index`; distinct indices give independent streams."""
    return np.random.SeedSequence(master_seed, spawn_key=(index,))


def spawn_seeds(master_seed: int, count: int) -> List[np.random.SeedSequence]:
    return [substream(master_seed, i) for i in range(count)]


def run_parallel(fn: Callable[[T], R], tasks: Sequence[T], threads: int = 1) -> List[R]:
    """
    Apply `fn` to every task and return the results in task order.

    With threads > 1 the tasks are spread over a process pool, so `fn` and the tasks must be
    picklable.

    Args:
        fn: Top-level function applied to each task
        tasks: Task arguments
        threads: Worker processes

    Returns:
        Results in task order
    """
    tasks = list(tasks)
    if threads <= 1 or len(tasks) <= 1:
        return [fn(task) for task in tasks]
    workers = min(threads, len(tasks))
    logger.info(f"Running {len(tasks)} tasks on {workers} processes")
    with Pool(processes=workers) as pool:
        return pool.map(fn, tasks)

import logging
import multiprocessing
from multiprocessing.pool import ThreadPool
from typing import Callable, List, Sequence, Tuple

from .errors import ConfigError

logger = logging.getLogger(__name__)

MODES = ("thread", "process")


def _call(job: Tuple[Callable, tuple]):
    fn, args = job
    return fn(*args)


class Worker:
    """Runs independent jobs in threads or processes and returns their results
    in submission order.

    Args:
        mode: 'thread' or 'process'.
        workers: pool size; with one worker the jobs run inline.
    """

    def __init__(self, mode: str = "thread", workers: int = 1):
        if mode not in MODES:
            raise ConfigError(f"unknown worker mode {mode!r}")
        if workers < 1:
            raise ConfigError(f"need at least one worker, got {workers}")
        self.mode = mode
        self.workers = workers

    def isProcess(self) -> bool:
        return self.mode == "process"

    def isThread(self) -> bool:
        return self.mode == "thread"

    def map(self, jobs: Sequence[Tuple[Callable, tuple]]) -> List:
        """Each job is (function, args); process mode needs both picklable."""
        jobs = list(jobs)
        if self.workers == 1 or len(jobs) <= 1:
            return [_call(job) for job in jobs]
        size = min(self.workers, len(jobs))
        logger.debug("Worker :: %d jobs on %d %ss", len(jobs), size, self.mode)
        if self.isProcess():
            with multiprocessing.Pool(size) as pool:
                return pool.map(_call, jobs)
        with ThreadPool(size) as pool:
            return pool.map(_call, jobs)

"""
Parallel execution of independent checks
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, Optional, Sequence, TypeVar

from gstructures.config import settings

logger = logging.getLogger(__name__)

T = TypeVar("T")


def run_all(tasks: Sequence[Callable[[], T]], workers: Optional[int] = None) -> List[T]:
    """Run thunks and return their results in submission order"""
    workers = workers or settings.worker_threads
    if workers <= 1 or len(tasks) <= 1:
        return [task() for task in tasks]
    logger.debug(f"Running {len(tasks)} checks on {workers} threads")
    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(task) for task in tasks]
        return [future.result() for future in futures]

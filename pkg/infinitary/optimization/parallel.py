"""Order-preserving parallel map for independent checks."""

from concurrent.futures import ProcessPoolExecutor, ThreadPoolExecutor
import multiprocessing as mp
from typing import Any, Callable, List, Optional, Sequence


def parallel_map(
    func: Callable,
    items: Sequence[Any],
    n_workers: Optional[int] = None,
    use_threads: bool = False,
    chunksize: Optional[int] = None,
) -> List[Any]:
    """Apply func to every item, returning results in input order.

    Args:
        func: Function to apply (picklable when processes are used)
        items: Items to process
        n_workers: Number of workers (defaults to CPU count); 1 runs inline
        use_threads: Use threads instead of processes
        chunksize: Items per task submitted to a process worker

    Returns:
        List of results
    """
    if n_workers is None:
        n_workers = mp.cpu_count()
    if n_workers <= 1 or len(items) <= 1:
        return [func(item) for item in items]

    if chunksize is None:
        chunksize = max(1, len(items) // (n_workers * 4))

    executor_cls = ThreadPoolExecutor if use_threads else ProcessPoolExecutor
    with executor_cls(max_workers=n_workers) as executor:
        return list(executor.map(func, items, chunksize=chunksize))

"""
Thread-pool helpers for independent work items.

Results always come back in input order, so reductions over them are the
same for any TILINGLAB_THREADS value.
"""
import concurrent.futures

from utils.config import thread_count
from utils.logging import debug_log


def parallel_map(func, items, component="parallel"):
    """
    Apply func to every item on a thread pool.

    Args:
        func (callable): Work function taking one item
        items (iterable): Work items
        component (str): Logging component name

    Returns:
        list: func(item) for each item, in input order

    Raises:
        The exception of the first failing item, in input order.
    """
    items = list(items)
    if not items:
        return []
    workers = thread_count()
    if workers == 1 or len(items) == 1:
        return [func(item) for item in items]

    results = [None] * len(items)
    errors = {}
    with concurrent.futures.ThreadPoolExecutor(max_workers=workers) as executor:
        future_to_index = {
            executor.submit(func, item): index
            for index, item in enumerate(items)
        }
        for future in concurrent.futures.as_completed(future_to_index):
            index = future_to_index[future]
            try:
                results[index] = future.result()
            except Exception as e:
                errors[index] = e

    if errors:
        first = min(errors)
        debug_log(f"{len(errors)}/{len(items)} work items failed; first at #{first}: {errors[first]}",
                  "ERROR", component)
        raise errors[first]
    return results


def chunked(sequence, size):
    """Split a sequence into fixed-size chunks (independent of worker count)."""
    return [sequence[start:start + size] for start in range(0, len(sequence), size)]

import concurrent.futures
import typing

from sphericallab import ctx

T = typing.TypeVar("T")
R = typing.TypeVar("R")


def worker_count(threads: typing.Optional[int] = None) -> int:
    if threads and threads > 0:
        return threads
    return ctx.options.worker_count()


def pool_map(
    func: typing.Callable[[T], R],
    items: typing.Iterable[T],
    threads: typing.Optional[int] = None,
) -> typing.List[R]:
    """
        Map func over items on a thread pool, preserving input order so that
        reductions over the result are deterministic. numpy releases the GIL
        inside the array kernels the workers spend their time in.
    """
    items = list(items)
    n = worker_count(threads)
    if n <= 1 or len(items) <= 1:
        return [func(i) for i in items]
    with concurrent.futures.ThreadPoolExecutor(max_workers=min(n, len(items))) as pool:
        return list(pool.map(func, items))


def chunks(start: int, stop: int, size: int) -> typing.List[typing.Tuple[int, int]]:
    """Split [start, stop) into consecutive half-open chunks of at most size."""
    size = max(1, size)
    return [(i, min(i + size, stop)) for i in range(start, stop, size)]

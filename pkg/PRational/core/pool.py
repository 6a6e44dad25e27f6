import asyncio
from concurrent.futures import ProcessPoolExecutor
from itertools import islice
from typing import Callable, Iterable, Iterator, List, Optional

import config

from ..logging import LOGGER


def batched(items: Iterable, size: int) -> Iterator[List]:
    it = iter(items)
    while True:
        chunk = list(islice(it, size))
        if not chunk:
            return
        yield chunk


class WorkerPool:
    """Process pool driven from an event loop; batches come back in input order."""

    def __init__(self, jobs: Optional[int] = None):
        self.jobs = jobs or config.JOBS
        self._executor = None
        self._loop = None

    def __enter__(self) -> "WorkerPool":
        if self.jobs > 1:
            self._executor = ProcessPoolExecutor(max_workers=self.jobs)
            self._loop = asyncio.new_event_loop()
            LOGGER(__name__).info(f"Worker Pool Started with {self.jobs} processes.")
        return self

    def __exit__(self, *exc) -> None:
        if self._executor is not None:
            self._executor.shutdown(cancel_futures=True)
            self._loop.close()
            self._executor = self._loop = None

    async def _gather(self, func: Callable, batch: List) -> List:
        loop = asyncio.get_running_loop()
        return await asyncio.gather(*(loop.run_in_executor(self._executor, func, x) for x in batch))

    def run_batch(self, func: Callable, batch: List) -> List:
        if self._executor is None:
            return [func(x) for x in batch]
        return self._loop.run_until_complete(self._gather(func, batch))

    def map_batches(self, func: Callable, items: Iterable, batch_size: int = None) -> Iterator[List]:
        batch_size = batch_size or config.CHECKPOINT_EVERY
        for batch in batched(items, batch_size):
            yield self.run_batch(func, batch)

# Copyright (c) 2026, nearfield-noise contributors
"""Parallel evaluation of independent sweep points.

Worker threads pull point indices from a queue and store each result at its
index, so the output order never depends on scheduling. The heavy lifting
happens inside scipy's compiled quadrature, which is where the threads
actually overlap.
"""

import logging
import os
from queue import Empty, SimpleQueue
from threading import Lock, Thread
from typing import Callable, Sequence

import psutil

from nearfield.errors import ConfigError
from nearfield.subscription import EventDispatcher

logger = logging.getLogger(__name__)

THREADS_VARIABLE = "NEARFIELD_THREADS"


def worker_count(requested: int | None = None) -> int:
    """Requested count, capped by NEARFIELD_THREADS, defaulting to the CPU count."""
    count = requested or psutil.cpu_count(logical=True) or 1

    cap = os.environ.get(THREADS_VARIABLE)
    if cap:
        try:
            cap = int(cap)
        except ValueError:
            raise ConfigError(f"{THREADS_VARIABLE} must be an integer, got '{cap}'") from None
        if cap < 1:
            raise ConfigError(f"{THREADS_VARIABLE} must be >= 1, got {cap}")
        count = min(count, cap)

    return max(1, count)



class SweepRunner(EventDispatcher):
    def __init__(self, workers: int | None = None):
        super().__init__()
        self._workers = worker_count(workers)
        self._lock = Lock()
        self._register_events("point-done", "sweep-finished")


    @property
    def workers(self) -> int:
        return self._workers


    def _work(self, function: Callable, items: Sequence, indices: SimpleQueue,
              results: list, errors: list, progress: list) -> None:
        while not errors:
            try:
                index = indices.get_nowait()
            except Empty:
                return

            try:
                results[index] = function(items[index])
            except Exception as e:
                with self._lock:
                    errors.append((index, e))
                return

            with self._lock:
                progress[0] += 1
                done = progress[0]
            self._dispatch("point-done", done, len(items))


    def run(self, function: Callable, items: Sequence) -> list:
        """[function(item) for item in items], evaluated on the worker pool.

        The first exception raised by any point is re-raised after all
        workers stop.
        """
        items = list(items)
        results = [None] * len(items)
        errors: list = []
        progress = [0]

        indices = SimpleQueue()
        for index in range(len(items)):
            indices.put(index)

        workers = min(self._workers, len(items))
        logger.debug(f"[Sweep] {len(items)} points on {workers} workers")

        if workers <= 1:
            self._work(function, items, indices, results, errors, progress)
        else:
            threads = [Thread(target=self._work, args=(function, items, indices, results, errors, progress),
                              daemon=True) for _ in range(workers)]
            for thread in threads:
                thread.start()
            for thread in threads:
                thread.join()

        if errors:
            index, error = min(errors, key=lambda entry: entry[0])
            logger.debug(f"[Sweep] point {index} failed: {error}")
            raise error

        self._dispatch("sweep-finished", len(items))
        return results

"""Worker pool over independent quartet / grid-point evaluations"""

import logging
from typing import Callable, Iterable, List, Optional

from joblib import Parallel, delayed

from src.utils.config import get_config

logger = logging.getLogger(__name__)


class ParallelRunner:
    """Ordered parallel map; reductions stay with the caller."""

    def __init__(self, max_workers: Optional[int] = None, backend: Optional[str] = None):
        self.config = get_config()
        workers = self.config.get('processing.max_workers', 0) if max_workers is None else max_workers
        self.n_jobs = -1 if not workers or workers < 0 else int(workers)
        self.backend = backend or self.config.get('processing.backend', 'threading')
        logger.debug(f"ParallelRunner initialized (n_jobs={self.n_jobs}, backend={self.backend})")

    def map(self, fn: Callable, items: Iterable) -> List:
        items = list(items)
        if self.n_jobs == 1 or len(items) <= 1:
            return [fn(item) for item in items]
        try:
            return Parallel(n_jobs=self.n_jobs, backend=self.backend)(delayed(fn)(item) for item in items)
        except Exception as e:
            logger.error(f"Parallel evaluation failed: {e}")
            raise

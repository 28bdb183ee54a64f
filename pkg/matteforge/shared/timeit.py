from contextlib import contextmanager
from typing import Any, Callable, Iterator, MutableMapping, Optional, Tuple

from std2.locale import si_prefixed_smol
from std2.timeit import timeit as _timeit

from ..consts import DEBUG
from .logging import log

_RECORDS: MutableMapping[str, Tuple[int, float]] = {}


@contextmanager
def timeit(
    name: str, *args: Any, force: bool = False, warn: Optional[float] = None
) -> Iterator[Callable[[], float]]:
    """
    Yields the elapsed-seconds getter, read it after the block

    Logged under MATTEFORGE_DEBUG, `force`, or when slower than `warn` seconds
    """

    with _timeit() as t:
        yield t

    delta = t()
    if DEBUG or force or (warn is not None and delta >= warn):
        count, total = _RECORDS.get(name, (0, 0.0))
        count, total = count + 1, total + delta
        _RECORDS[name] = count, total

        took = f"{si_prefixed_smol(delta, precision=0)}s"
        mean = f"{si_prefixed_smol(total / count, precision=0)}s"
        msg = f"TIME -- {name:<24} :: {took:<8} @ {mean:<8} {' '.join(map(str, args))}"
        log.info("%s", msg)

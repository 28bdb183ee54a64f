from logging import DEBUG as _DEBUG
from logging import INFO, Formatter, StreamHandler, getLogger
from sys import stderr

from ..consts import DEBUG

_FMT = "%(asctime)s [%(levelname)s] %(name)s :: %(message)s"
_DATE_FMT = "%H:%M:%S"

log = getLogger("matteforge")

_handler = StreamHandler(stderr)
_handler.setFormatter(Formatter(fmt=_FMT, datefmt=_DATE_FMT))
log.addHandler(_handler)
log.setLevel(_DEBUG if DEBUG else INFO)
log.propagate = False

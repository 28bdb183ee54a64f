from ..shared.types import MatteError


class UsageError(MatteError):
    ...

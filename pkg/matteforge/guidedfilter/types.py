from ..shared.types import MatteError


class FilterError(MatteError):
    ...

"""
User facing message catalogue, `locale/<lang>.yml` over `locale/en.yml`
"""

from locale import getlocale
from os import environ
from pathlib import Path
from string import Template
from typing import Mapping, MutableMapping, Optional, Union

from std2.pickle.decoder import new_decoder
from yaml import safe_load

from .consts import DEFAULT_LANG, LANG_ROOT, LANG_VAR

_DECODER = new_decoder[Mapping[str, str]](Mapping[str, str])


def _lang_code(code: Optional[str]) -> str:
    tag = code or getlocale()[0] or DEFAULT_LANG
    primary, _, _ = tag.casefold().partition("-")
    lang, _, _ = primary.partition("_")
    return lang


def _catalogue(lang: str) -> Mapping[str, str]:
    path = (LANG_ROOT / lang).with_suffix(".yml")
    return _DECODER(safe_load(path.read_text("UTF-8"))) if path.exists() else {}


class _Lang:
    def __init__(self) -> None:
        self._specs: MutableMapping[str, Template] = {}

    def load(self, specs: Mapping[str, str]) -> None:
        self._specs.update((key, Template(spec)) for key, spec in specs.items())

    def __call__(self, key: str, **kwds: Union[int, float, str, Path]) -> str:
        return self._specs[key].substitute(kwds)


LANG = _Lang()


def init(code: Optional[str]) -> None:
    """
    Keys missing from the chosen language fall back to the default catalogue
    """

    LANG.load(_catalogue(DEFAULT_LANG))
    if (lang := _lang_code(code)) != DEFAULT_LANG:
        LANG.load(_catalogue(lang))


init(environ.get(LANG_VAR))

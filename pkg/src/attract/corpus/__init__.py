"""Instrumented subject programs and their perfect oracles."""

from .base import Subject

_REGISTRY = {}


def _register(module_name: str):
    from importlib import import_module

    module = import_module(f".{module_name}", __package__)
    subject = module.SUBJECT
    _REGISTRY[subject.name] = subject


for _mod in (
    "demo",
    "quicksort",
    "zip_lzw",
    "sudoku",
    "md5",
    "rc4",
    "lcs",
    "laguerre",
    "linreg",
):
    _register(_mod)


def subject_names() -> list:
    return sorted(_REGISTRY)


def get_subject(name: str) -> Subject:
    try:
        return _REGISTRY[name]
    except KeyError:
        raise KeyError(
            f"unknown subject {name!r}; known: {', '.join(subject_names())}"
        ) from None


def all_subjects() -> list:
    return [_REGISTRY[name] for name in subject_names()]

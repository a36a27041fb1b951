"""Reading and writing residue sets.

Two formats are accepted: a JSON object ``{"modulus": M, "elements": [...]}``
and plain text with M on the first line and space-separated elements after it.
"""

from __future__ import annotations

import json
import os
import warnings

from .errors import ModulusMismatch, ParseError
from .residue import ZmSet

__all__ = ["load_set", "parse_set", "save_set", "dumps_set", "DuplicateElementsWarning"]


class DuplicateElementsWarning(UserWarning):
    pass


def _as_int(value, what: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParseError(f"{what} must be an integer, got {value!r}")
    return value


def _parse_text(text: str) -> tuple[int, list[int]]:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise ParseError("empty set file")
    try:
        modulus = int(lines[0])
        elements = [int(tok) for ln in lines[1:] for tok in ln.replace(",", " ").split()]
    except ValueError as exc:
        raise ParseError(f"bad integer in set file: {exc}") from None
    return modulus, elements


def _parse_json(text: str) -> tuple[int, list[int]]:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    if not isinstance(obj, dict) or "modulus" not in obj or "elements" not in obj:
        raise ParseError('expected an object with "modulus" and "elements"')
    modulus = _as_int(obj["modulus"], "modulus")
    if not isinstance(obj["elements"], list):
        raise ParseError('"elements" must be a list')
    return modulus, [_as_int(e, "element") for e in obj["elements"]]


def parse_set(text: str, expected_modulus: int | None = None, source: str = "<string>") -> ZmSet:
    """Parse either set format; duplicates are dropped with a warning."""
    if text.lstrip().startswith("{"):
        modulus, elements = _parse_json(text)
    else:
        modulus, elements = _parse_text(text)
    if modulus < 1:
        raise ParseError(f"{source}: modulus must be positive, got {modulus}")
    bad = [e for e in elements if not 0 <= e < modulus]
    if bad:
        raise ParseError(f"{source}: elements out of range [0, {modulus}): {bad[:5]}")
    if expected_modulus is not None and modulus != expected_modulus:
        raise ModulusMismatch(f"{source}: file modulus {modulus} but the primes give M={expected_modulus}")
    unique = sorted(set(elements))
    if len(unique) != len(elements):
        warnings.warn(f"{source}: {len(elements) - len(unique)} duplicate element(s) dropped",
                      DuplicateElementsWarning, stacklevel=3)
    return ZmSet(modulus, tuple(unique))


def load_set(path, expected_modulus: int | None = None) -> ZmSet:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    return parse_set(text, expected_modulus, source=os.fspath(path))


def dumps_set(E: ZmSet, fmt: str = "json") -> str:
    if fmt == "json":
        return json.dumps(E.to_dict())
    if fmt == "text":
        return E.to_text()
    raise ValueError(f"unknown set format {fmt!r}")


def save_set(E: ZmSet, path, fmt: str = "json") -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_set(E, fmt))
        if fmt == "json":
            fh.write("\n")

"""Character tables, Stickelberger elements and the Brumer-type checks from Python.

Every function accepts a dictionary, a JSON string, or a path to a JSON file, and returns a
dictionary shaped like the command-line tool's JSON output.
"""

import json
import os

from . import _core
from ._core import DomainError, InputError, JsonError

__all__ = ["character_table", "classify", "stickelberger", "check", "quadratic_l0",
           "InputError", "DomainError", "JsonError"]


def _text(data):
    if isinstance(data, dict):
        return json.dumps(data)
    if isinstance(data, os.PathLike) or (isinstance(data, str) and not data.lstrip().startswith("{")):
        with open(data, encoding="utf-8") as f:
            return f.read()
    return data


def character_table(group):
    return json.loads(_core.character_table(_text(group)))


def classify(data, p):
    """Theorem classification of G+ for a group file or an extension file."""
    return json.loads(_core.classify(_text(data), p))


def stickelberger(extension, T=None):
    return json.loads(_core.stickelberger(_text(extension), T))


def check(mode, extension, p, precision=20, unit_bound=6):
    """mode is "brumer", "bs" or "dual-sbs"."""
    return json.loads(_core.check(mode, _text(extension), p, precision, unit_bound))


def quadratic_l0(d):
    return _core.quadratic_l0(d)

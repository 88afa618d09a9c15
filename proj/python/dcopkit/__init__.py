"""Distributed constraint optimization workbench.

Problems may be given as dicts, JSON text or paths to JSON files. Results
come back as dicts; costs stay exact rationals written as strings.
"""

import json
import os

from ._dcopkit import Error, FormatError, NameParseError
from ._dcopkit import builtin_families, describe, encode, run_cli
from . import _dcopkit

__all__ = [
    "Error",
    "FormatError",
    "NameParseError",
    "audit",
    "builtin_families",
    "check_privacy",
    "describe",
    "dualize",
    "encode",
    "merge",
    "oracle",
    "run_cli",
    "solve",
]


def _text(source):
    if isinstance(source, dict):
        return json.dumps(source)
    if isinstance(source, os.PathLike) or (
        isinstance(source, str) and not source.lstrip().startswith("{") and os.path.exists(source)
    ):
        with open(source, encoding="utf-8") as f:
            return f.read()
    return source


def oracle(problem):
    return json.loads(_dcopkit.oracle(_text(problem)))


def solve(problem, steg=False, seed=0, hide_existence="0"):
    """Returns (report, transcript) where transcript is JSON Lines text."""
    report, transcript = _dcopkit.solve(_text(problem), steg, seed, str(hide_existence))
    return json.loads(report), transcript


def audit(problem, transcript):
    if isinstance(transcript, os.PathLike) or (
        isinstance(transcript, str) and "\n" not in transcript and os.path.exists(transcript)
    ):
        with open(transcript, encoding="utf-8") as f:
            transcript = f.read()
    return json.loads(_dcopkit.audit(_text(problem), transcript))


def check_privacy(family, t, non_uniform=False, seed=0):
    if family not in builtin_families():
        family = _text(family)
    return _dcopkit.check_privacy(family, t, non_uniform, seed)


def merge(problem):
    return json.loads(_dcopkit.merge(_text(problem)))


def dualize(problem):
    return json.loads(_dcopkit.dualize(_text(problem)))

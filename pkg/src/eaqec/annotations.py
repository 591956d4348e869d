"""Access to the static annotation tables shipped with the package.

Two annotations cannot be recomputed here because they depend on external
best-known-code tables: the best distance ``d_std`` of a standard
``[[n+c, k]]`` stabilizer code, and which parameter tuples are on record
as strictly beating every standard code.  Both live in a data file and
are exposed read-only.
"""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources


@lru_cache(maxsize=1)
def _data() -> dict:
    text = resources.files("eaqec").joinpath("data/annotations.json").read_text()
    return json.loads(text)


@lru_cache(maxsize=1)
def nonequivalent_tuples() -> frozenset[tuple[int, int, int, int]]:
    """``(n, k, d, c)`` tuples recorded as beating every standard code."""
    return frozenset(tuple(row) for row in _data()["nonequivalent"])


def is_nonequivalent(n: int, k: int, d: int, c: int) -> bool:
    return (n, k, d, c) in nonequivalent_tuples()


def d_std_table(name: str) -> dict[int, str]:
    """Best standard-code distances keyed by ebit count; empty if unknown.

    Values are strings because some published entries are ranges.
    """
    table = _data()["d_std"].get(name, {})
    return {int(c): d for c, d in table.items()}

"""Access to the frozen golden tables shipped with the package."""

from __future__ import annotations

import json
from fractions import Fraction
from functools import lru_cache
from importlib import resources

from .series import Series
from .wright import BivariateAutSum


@lru_cache(maxsize=None)
def golden_tables() -> dict:
    text = resources.files("hypermap.data").joinpath("golden_tables.json").read_text()
    return json.loads(text)


@lru_cache(maxsize=None)
def g5_autsum() -> BivariateAutSum:
    text = resources.files("hypermap.data").joinpath("wright_g5_autsum.json").read_text()
    return BivariateAutSum.from_json_obj(json.loads(text))


def golden_series(table: dict) -> Series:
    """Build a Series from a {power: rational-string} map; the order is one
    past the largest recorded power (unlisted lower powers are zero by
    convention in these tables)."""
    powers = {int(k): Fraction(v) for k, v in table.items()}
    order = max(powers) + 1
    coeffs = [powers.get(k, Fraction(0)) for k in range(order)]
    return Series(coeffs, order)

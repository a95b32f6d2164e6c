"""Published values used as comparison targets, and six-decimal truncation."""

from __future__ import annotations

from decimal import ROUND_DOWN, Decimal
from fractions import Fraction

TABLE_DS = (2, 3, 4, 5, 10, 100, 1000, 10_000, 100_000, 1_000_000)
TABLE_COLUMNS = ("x_bst", "x_bal", "c_bal", "c_bst")

# truncated to six decimals
PUBLISHED_TABLE: dict[int, tuple[str, str, str, str]] = {
    2: ("0.790715", "0.800466", "2.498543", "2.499190"),
    3: ("0.667279", "0.675604", "2.960314", "2.960495"),
    4: ("0.560972", "0.589913", "3.390330", "3.389027"),
    5: ("0.478918", "0.526764", "3.796767", "3.790859"),
    10: ("0.289481", "0.356142", "5.615731", "5.560625"),
    100: ("0.048626", "0.071263", "28.065087", "26.812765"),
    1000: ("0.007055", "0.010988", "182.020489", "172.548703"),
    10_000: ("0.000932", "0.001500", "1333.454911", "1269.860071"),
    100_000: ("0.000116", "0.000191", "10458.564830", "10018.329933"),
    1_000_000: ("0.000014", "0.000023", "85721.802797", "82526.406188"),
}

# computed once with the exact solver and frozen as a regression constant
FLDIM_S3 = Fraction(7, 3)

SIX = Decimal("0.000001")


def truncate6(value: float) -> Decimal:
    return Decimal(repr(float(value))).quantize(SIX, rounding=ROUND_DOWN)


def within_slack(value: float, published: str, units: int = 1) -> bool:
    """Six-decimal truncation of ``value`` equals ``published`` up to ``units`` in the last place."""
    return abs(truncate6(value) - Decimal(published)) <= units * SIX

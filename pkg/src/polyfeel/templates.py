"""Well-formed duple/triple metric structures as beat-strength templates.

A template stacks regular beat levels over a pulse grid: level one contains
every pulse, the next level every second (duple) or third (triple) pulse,
and each further level groups the beats below it by two when their count is
even, otherwise by three when divisible by three.  When neither grouping
divides, construction stops and the first pulse alone is granted one extra
level so the structure still opens on its unique strongest beat.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import StructureError

KINDS = ("binary", "ternary")


@dataclass(frozen=True)
class MetricTemplate:
    kind: str
    length: int
    strengths: np.ndarray  # integer beat-strength per pulse, strengths[0] unique max
    weights: np.ndarray  # strengths scaled to sum one
    level_periods: tuple[int, ...]  # pulse period of each regular level
    has_start_bump: bool  # index 0 got an extra, non-recurring level

    @property
    def max_strength(self) -> int:
        return int(self.strengths[0])


def admissible(kind: str, n: int) -> bool:
    """Lengths a well-formed structure of the given kind can actually have."""
    if kind == "binary":
        return n >= 4 and n % 2 == 0
    if kind == "ternary":
        return n >= 6 and n % 3 == 0
    return False


@lru_cache(maxsize=None)
def build_template(kind: str, n: int) -> MetricTemplate:
    if kind not in KINDS:
        raise StructureError("unknown structure kind %r" % (kind,))
    if not admissible(kind, n):
        raise StructureError(
            "no well-formed %s structure of length %d exists" % (kind, n)
        )
    stride = 2 if kind == "binary" else 3
    periods = [1, stride]
    period = stride
    count = n // stride
    bump = False
    while count > 1:
        if count % 2 == 0:
            factor = 2
        elif count % 3 == 0:
            factor = 3
        else:
            bump = True
            break
        period *= factor
        count //= factor
        periods.append(period)
    strengths = np.array(
        [
            sum(1 for t in periods if j % t == 0) + (1 if bump and j == 0 else 0)
            for j in range(n)
        ],
        dtype=int,
    )
    weights = strengths / strengths.sum()
    strengths.setflags(write=False)
    weights.setflags(write=False)
    return MetricTemplate(
        kind=kind,
        length=n,
        strengths=strengths,
        weights=weights,
        level_periods=tuple(periods),
        has_start_bump=bump,
    )


def normalize_weights(template: MetricTemplate) -> np.ndarray:
    """Beat strengths scaled to sum one (uniform fallback for a flat vector)."""
    strengths = np.asarray(template.strengths, dtype=float)
    total = strengths.sum()
    if total == 0:
        return np.full(len(strengths), 1.0 / len(strengths))
    return strengths / total


def extended_strength(template: MetricTemplate, offset: int) -> int:
    """Beat strength of the structure's grid continued to an arbitrary offset.

    The regular levels repeat with their own periods past the declared
    length; the start bump marks only the structure's opening pulse and does
    not recur.  Used to judge how strong a beat a following structure would
    begin on.
    """
    s = sum(1 for t in template.level_periods if offset % t == 0)
    if template.has_start_bump and offset == 0:
        s += 1
    return s

"""Floating-point cross-checks for the exact pipeline.

These are test-support shadows: a winding-number degree for planar maps and
a sign-change half-branch count for plane curves, both sampled on a small
circle.  The certified pipeline never consults them; this is the only module
allowed to touch floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DimensionMismatchError, OracleInconclusiveError


@dataclass(frozen=True)
class OracleConfig:
    radius: float = 0.01
    samples: int = 4096
    max_samples: int = 1 << 20
    shrink_attempts: int = 6

    def __post_init__(self):
        if self.radius <= 0:
            raise ValueError("radius must be positive")
        if self.samples < 16:
            raise ValueError("need at least 16 samples")


def _check_planar(fs, how_many):
    if len(fs) != how_many:
        raise DimensionMismatchError(f"expected {how_many} polynomial(s)")
    for f in fs:
        if f.nvars != 2:
            raise DimensionMismatchError("the oracle only works in two variables")
        if f.constant_term():
            raise ValueError("the oracle expects germs vanishing at the origin")


def _circle_values(f, radius, n):
    vals = []
    for j in range(n):
        t = 2.0 * math.pi * j / n
        vals.append(f.evaluate((radius * math.cos(t), radius * math.sin(t))))
    return vals


def winding_degree(fs, config=OracleConfig()):
    """Signed number of turns of F/|F| along a small circle around 0.

    Samples are refined until every angular step is below pi/2 and two
    consecutive sample counts agree; the radius shrinks if F comes too close
    to vanishing on the circle.
    """
    _check_planar(fs, 2)
    f, g = fs
    for shrink in range(config.shrink_attempts):
        radius = config.radius / (2.0**shrink)
        n = config.samples
        previous = None
        while n <= config.max_samples:
            xs = _circle_values(f, radius, n)
            ys = _circle_values(g, radius, n)
            norms = [math.hypot(a, b) for a, b in zip(xs, ys)]
            scale = max(norms)
            if scale == 0.0 or min(norms) < 1e-9 * scale:
                break  # too close to a zero on this circle: shrink
            total = 0.0
            ok = True
            for j in range(n):
                k = (j + 1) % n
                dot = xs[j] * xs[k] + ys[j] * ys[k]
                cross = xs[j] * ys[k] - ys[j] * xs[k]
                step = math.atan2(cross, dot)
                if abs(step) >= math.pi / 2:
                    ok = False
                    break
                total += step
            if not ok:
                n *= 2
                continue
            turns = round(total / (2.0 * math.pi))
            if previous == turns:
                return turns
            previous = turns
            n *= 2
    raise OracleInconclusiveError("winding number did not stabilize")


def circle_half_branches(g, config=OracleConfig()):
    """Number of sign changes of g around a small circle: the half-branch
    count of the curve g = 0 for square-free g and small enough radius."""
    _check_planar([g], 1)
    for shrink in range(config.shrink_attempts):
        radius = config.radius / (2.0**shrink)
        n = config.samples
        previous = None
        while n <= config.max_samples:
            vals = _circle_values(g, radius, n)
            scale = max(abs(v) for v in vals)
            if scale == 0.0:
                break
            signs = [0 if abs(v) < 1e-12 * scale else (1 if v > 0 else -1) for v in vals]
            nonzero = [s for s in signs if s]
            if not nonzero:
                break
            changes = sum(
                1
                for a, b in zip(nonzero, nonzero[1:] + nonzero[:1])
                if a != b
            )
            if previous == changes:
                return changes
            previous = changes
            n *= 2
    raise OracleInconclusiveError("sign pattern did not stabilize")

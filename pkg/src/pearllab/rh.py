"""Index calculus for Riemann-Hilbert problems on the disc.

A totally real boundary condition splits into line bundles with partial
indices kappa_i; the kernel and cokernel of d-bar are read off these.
"""

from __future__ import annotations

import math
from typing import NamedTuple, Sequence

import numpy as np


class OhDimensions(NamedTuple):
    ker: int
    coker: int
    index: int


def _check(kappa: Sequence[int]) -> tuple[int, ...]:
    kappa = tuple(int(k) for k in kappa)
    if not kappa:
        raise ValueError("need at least one partial index")
    return kappa


def parse_kappa(text: str) -> tuple[int, ...]:
    return _check(int(s) for s in text.split(",") if s.strip())


def oh_dimensions(kappa: Sequence[int]) -> OhDimensions:
    kappa = _check(kappa)
    ker = sum(k + 1 for k in kappa if k >= 0)
    coker = sum(-k - 1 for k in kappa if k <= -1)
    index = sum(kappa) + len(kappa)
    assert ker - coker == index
    return OhDimensions(ker, coker, index)


def is_regular(kappa: Sequence[int]) -> bool:
    """Surjectivity of d-bar: every partial index is at least -1."""
    return all(k >= -1 for k in _check(kappa))


def is_nonneg(kappa: Sequence[int]) -> bool:
    return all(k >= 0 for k in _check(kappa))


def enumerate_cases(mu: int, n: int) -> list[tuple[int, ...]]:
    """Nondecreasing n-tuples of nonnegative integers with sum mu."""
    if mu < 0 or n < 1:
        raise ValueError("need mu >= 0 and n >= 1")

    def rec(remaining: int, slots: int, floor: int):
        if slots == 1:
            if remaining >= floor:
                yield (remaining,)
            return
        for first in range(floor, remaining // slots + 1):
            for rest in rec(remaining - first, slots - 1, first):
                yield (first, *rest)

    return sorted(rec(mu, n, 0))


def kappa1_evaluation(z1: float, z2: float) -> tuple[np.ndarray, float]:
    """Evaluation of sections c*z + conj(c) at two boundary points.

    Writing c = x + iy and z = e^{i alpha}, the value at z lies in the real
    line spanned by e^{i alpha/2}, with real coordinate
    2x cos(alpha/2) - 2y sin(alpha/2).
    """
    for a in (z1, z2):
        if not 0 <= a < 2 * math.pi:
            raise ValueError(f"angle {a} outside [0, 2pi)")
    m = np.array([[2 * math.cos(a / 2), -2 * math.sin(a / 2)] for a in (z1, z2)])
    det = float(m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0])
    return m, det


def section_zero(c: complex) -> complex:
    """The unique zero -conj(c)/c of c*z + conj(c); it lies on the unit circle."""
    if c == 0:
        raise ValueError("c must be nonzero")
    return -c.conjugate() / c

"""Pearl complex of the Chiang Lagrangian with free orientation signs.

The cochain generators are the critical points of a Z/3-symmetric Morse
function on L_Delta = SU(2)/(binary dihedral group of order 12):

    m'            minimum      (index 0)
    x1', x2', x3' index one
    x1,  x2,  x3  index two
    m             maximum      (index 3)

The differential is the Morse differential plus disc corrections. Each
correction is a signed count of pearly trajectories through one disc; a
Maslov-mu disc changes the Morse index by ``1 - mu``. The three orientation
signs X, Y, Z are left as parameters.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .complexes import (
    FieldHomology,
    GradedBasis,
    GradedComplex,
    LocalSystem,
    ZHomology,
    homology_over_field,
    homology_over_Z,
)
from .exact import GF, ZZ, ExactMatrix, Mod, prime_divisors


@dataclass(frozen=True)
class SignChoice:
    X: int = 1
    Y: int = 1
    Z: int = 1

    def __post_init__(self):
        for name in ("X", "Y", "Z"):
            if getattr(self, name) not in (-1, 1):
                raise ValueError(f"sign {name} must be +1 or -1")

    @classmethod
    def parse(cls, text: str) -> SignChoice:
        parts = [int(s) for s in text.split(",")]
        if len(parts) != 3:
            raise ValueError(f"expected three comma-separated signs, got {text!r}")
        return cls(*parts)

    @property
    def realized(self) -> bool:
        """True when X*Y == Z, the only choice with nonvanishing HF."""
        return self.X * self.Y == self.Z

    def formula_value(self) -> int:
        return 8 * self.Z - 3 * self.X * self.Y

    def __str__(self):
        return f"{self.X:+d},{self.Y:+d},{self.Z:+d}"


ALL_SIGNS = tuple(SignChoice(*s) for s in product((1, -1), repeat=3))


@dataclass(frozen=True)
class DiscContribution:
    source: str
    target: str
    maslov: int
    multiplicity: int
    sign_slot: str  # "X", "Y" or "Z"


@dataclass(frozen=True)
class PearlData:
    basis: GradedBasis
    morse: tuple[tuple[str, str, int], ...]  # (source, target, coefficient)
    discs: tuple[DiscContribution, ...]

    def __post_init__(self):
        for src, tgt, _ in self.morse:
            if self.basis.index_of(tgt) != self.basis.index_of(src) + 1:
                raise ValueError(f"Morse term {src}->{tgt} does not raise the index by one")
        for disc in self.discs:
            if disc.maslov not in (2, 4):
                raise ValueError(f"unsupported Maslov number {disc.maslov}")
            expected = self.basis.index_of(disc.source) + 1 - disc.maslov
            if self.basis.index_of(disc.target) != expected:
                raise ValueError(
                    f"disc {disc.source}->{disc.target} with Maslov {disc.maslov} violates the degree count"
                )
            if disc.sign_slot not in ("X", "Y", "Z"):
                raise ValueError(f"unknown sign slot {disc.sign_slot}")


# Basis order: odd (m; x1', x2', x3') then even (m'; x1, x2, x3).
CHIANG_BASIS = GradedBasis.from_indices(
    [("m", 3), ("x1'", 1), ("x2'", 1), ("x3'", 1), ("m'", 0), ("x1", 2), ("x2", 2), ("x3", 2)]
)

_MORSE_ROWS = ((1, 1, 2), (2, 1, 1), (1, 2, 1))


def morse_matrix() -> ExactMatrix:
    """Morse differential x_i' -> x_j; row i lists the coefficients of d(x_i')."""
    return ExactMatrix(_MORSE_ROWS, ZZ)


CHIANG_PEARL_DATA = PearlData(
    basis=CHIANG_BASIS,
    morse=tuple(
        (f"x{i + 1}'", f"x{j + 1}", c) for i, row in enumerate(_MORSE_ROWS) for j, c in enumerate(row)
    ),
    discs=(
        # Maslov 2 discs through m whose boundary meets the descending disc of x_i.
        *(DiscContribution("m", f"x{i}", 2, 1, "Y") for i in (1, 2, 3)),
        # the two axial Maslov 4 discs through both m and m'
        DiscContribution("m", "m'", 4, 2, "Z"),
        # Maslov 2 disc through m' meeting the ascending disc of x_i'
        *(DiscContribution(f"x{i}'", "m'", 2, 1, "X") for i in (1, 2, 3)),
    ),
)


def _coefficient_ring(char: int):
    return ZZ if char == 0 else GF(char)


def build_complex(data: PearlData, signs: SignChoice, zeta: int = 1, char: int = 0, *, with_discs: bool = True) -> GradedComplex:
    """Assemble the pearl complex; disc terms carry ``zeta**(maslov/2)``.

    Over Z ``zeta`` is any integer representative (so integer determinant
    identities can be checked before reduction); over F_p it must be a unit
    with ``zeta**4 == 1``.
    """
    if char:
        LocalSystem(zeta, char)
    ring = _coefficient_ring(char)
    basis = data.basis
    ne, no = len(basis.even), len(basis.odd)
    eo = [[0] * ne for _ in range(no)]
    oe = [[0] * no for _ in range(ne)]

    def add(src: str, tgt: str, coeff: int):
        sd, sp = basis.position(src)
        td, tp = basis.position(tgt)
        if sd == td:
            raise ValueError(f"term {src}->{tgt} does not change parity")
        if sd == 0:
            eo[tp][sp] += coeff
        else:
            oe[tp][sp] += coeff

    for src, tgt, coeff in data.morse:
        add(src, tgt, coeff)
    if with_discs:
        for disc in data.discs:
            sign = getattr(signs, disc.sign_slot)
            add(disc.source, disc.target, sign * disc.multiplicity * zeta ** (disc.maslov // 2))
    return GradedComplex(basis, ExactMatrix(eo, ring), ExactMatrix(oe, ring))


def build_chiang_complex(signs: SignChoice = SignChoice(), zeta: int = 1, char: int = 0) -> GradedComplex:
    return build_complex(CHIANG_PEARL_DATA, signs, zeta, char)


def morse_complex(char: int = 0) -> GradedComplex:
    """The pearl complex with all disc terms forgotten."""
    return build_complex(CHIANG_PEARL_DATA, SignChoice(), 1, char, with_discs=False)


def floer_cohomology(signs: SignChoice = SignChoice(), zeta: int = 1, char: int = 0) -> ZHomology | FieldHomology:
    """HF over Z (``char == 0``, returns groups) or over F_p (returns ranks)."""
    c = build_chiang_complex(signs, zeta, char)
    if char == 0:
        return homology_over_Z(c)
    return homology_over_field(c, char)


def floer_determinant(signs: SignChoice, zeta: int = 1) -> int:
    """Integer determinant of the odd-to-even Floer differential."""
    return build_chiang_complex(signs, zeta, 0).d_odd_to_even.det()


@dataclass(frozen=True)
class ScanRow:
    signs: SignChoice
    zeta: int
    det: int
    primes: frozenset[int]
    hf_f5_nonzero: bool


def det_formula_scan(zetas=(1, 2, 3, 4)) -> list[ScanRow]:
    """Determinant and HF over F_5 for every sign choice and zeta, with the primes of the determinant."""
    rows = []
    for signs in ALL_SIGNS:
        for zeta in zetas:
            det = floer_determinant(signs, zeta)
            expected = zeta**2 * signs.formula_value()
            if abs(det) != abs(expected):
                raise AssertionError(f"{signs}, zeta={zeta}: det {det} != +-{expected}")
            hf = homology_over_field(build_chiang_complex(signs, zeta, 5), 5)
            rows.append(ScanRow(signs, zeta, det, frozenset(prime_divisors(det)), hf != (0, 0)))
    return rows


def m0_chiang(zeta: int) -> Mod:
    """Signed Maslov-2 disc count through a point, twisted by the local system."""
    z = Mod(zeta, 5)
    if not z:
        raise ValueError("zeta must be a unit mod 5")
    return 3 * z

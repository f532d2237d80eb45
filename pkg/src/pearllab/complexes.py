"""Z/2-graded cochain complexes of free modules and their cohomology."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

from .exact import GF, ZZ, ExactMatrix, Mod, is_prime, smith_normal_form


@dataclass(frozen=True)
class Generator:
    label: str
    degree: int
    morse_index: int


@dataclass(frozen=True)
class GradedBasis:
    """Labelled generators; the Z/2-degree is the Morse index mod 2."""

    generators: tuple[Generator, ...]

    def __post_init__(self):
        labels = [g.label for g in self.generators]
        if len(set(labels)) != len(labels):
            raise ValueError(f"duplicate generator labels in {labels}")
        for g in self.generators:
            if g.degree not in (0, 1):
                raise ValueError(f"{g.label}: degree must be 0 or 1")
            if g.degree != g.morse_index % 2:
                raise ValueError(f"{g.label}: degree {g.degree} does not match index {g.morse_index}")

    @classmethod
    def from_indices(cls, pairs: Sequence[tuple[str, int]]) -> GradedBasis:
        return cls(tuple(Generator(label, index % 2, index) for label, index in pairs))

    def of_degree(self, degree: int) -> list[Generator]:
        return [g for g in self.generators if g.degree == degree]

    @property
    def even(self) -> list[str]:
        return [g.label for g in self.of_degree(0)]

    @property
    def odd(self) -> list[str]:
        return [g.label for g in self.of_degree(1)]

    def position(self, label: str) -> tuple[int, int]:
        """(degree, position within that degree) of a generator."""
        for degree in (0, 1):
            labels = self.even if degree == 0 else self.odd
            if label in labels:
                return degree, labels.index(label)
        raise KeyError(label)

    def index_of(self, label: str) -> int:
        for g in self.generators:
            if g.label == label:
                return g.morse_index
        raise KeyError(label)


@dataclass(frozen=True)
class GradedComplex:
    """Differentials act on column vectors: ``d_even_to_odd`` is odd x even.

    Rows and columns follow the order of ``basis.odd`` / ``basis.even``.
    """

    basis: GradedBasis
    d_even_to_odd: ExactMatrix
    d_odd_to_even: ExactMatrix

    def __post_init__(self):
        ne, no = len(self.basis.even), len(self.basis.odd)
        if self.d_even_to_odd.shape != (no, ne):
            raise ValueError(f"d_even_to_odd has shape {self.d_even_to_odd.shape}, expected {(no, ne)}")
        if self.d_odd_to_even.shape != (ne, no):
            raise ValueError(f"d_odd_to_even has shape {self.d_odd_to_even.shape}, expected {(ne, no)}")
        if self.d_even_to_odd.ring != self.d_odd_to_even.ring:
            raise ValueError("differentials live over different rings")

    @property
    def ring(self):
        return self.d_even_to_odd.ring

    def differential_of(self, label: str) -> dict[str, object]:
        """``d(label)`` as a ``{target label: coefficient}`` dict (nonzero entries)."""
        degree, pos = self.basis.position(label)
        if degree == 0:
            column, targets = self.d_even_to_odd.column(pos), self.basis.odd
        else:
            column, targets = self.d_odd_to_even.column(pos), self.basis.even
        return {t: c for t, c in zip(targets, column) if c}

    def reduced(self, p: int) -> GradedComplex:
        return GradedComplex(self.basis, self.d_even_to_odd.mod(p), self.d_odd_to_even.mod(p))

    def euler_characteristic(self) -> int:
        return len(self.basis.even) - len(self.basis.odd)


@dataclass(frozen=True)
class LocalSystem:
    """Rank-one local system with monodromy ``zeta`` around a cyclic H_1 of given order."""

    zeta: int
    p: int
    group_order: int = 4

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        z = Mod(self.zeta, self.p)
        if not z or z**self.group_order != 1:
            raise ValueError(f"zeta={self.zeta} is not a {self.group_order}-th root of unity mod {self.p}")

    @property
    def monodromy(self) -> Mod:
        return Mod(self.zeta, self.p)

    def weight(self, power: int) -> Mod:
        return self.monodromy**power


def d_squared(c: GradedComplex) -> tuple[ExactMatrix, ExactMatrix]:
    """The two composites (even -> even, odd -> odd)."""
    return c.d_odd_to_even @ c.d_even_to_odd, c.d_even_to_odd @ c.d_odd_to_even


def verify_d_squared(c: GradedComplex) -> bool:
    even, odd = d_squared(c)
    return even.is_zero() and odd.is_zero()


class FieldHomology(NamedTuple):
    even: int
    odd: int


def homology_over_field(c: GradedComplex, p: int) -> FieldHomology:
    """Dimensions of cohomology in even and odd degree over F_p."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    cp = c if c.ring == GF(p) else c.reduced(p)
    if not verify_d_squared(cp):
        raise ValueError(f"d^2 != 0 over F_{p}")
    r_eo = cp.d_even_to_odd.rank()
    r_oe = cp.d_odd_to_even.rank()
    ne, no = len(c.basis.even), len(c.basis.odd)
    return FieldHomology(ne - r_eo - r_oe, no - r_oe - r_eo)


@dataclass(frozen=True)
class AbelianGroup:
    """Finitely generated abelian group ``Z^free + sum Z/t``."""

    free: int
    torsion: tuple[int, ...] = field(default=())

    def is_zero(self) -> bool:
        return self.free == 0 and not self.torsion

    def order_of_torsion(self) -> int:
        out = 1
        for t in self.torsion:
            out *= t
        return out

    def __str__(self):
        parts = []
        if self.free:
            parts.append("Z" if self.free == 1 else f"Z^{self.free}")
        parts.extend(f"Z/{t}" for t in self.torsion)
        return " + ".join(parts) if parts else "0"


class ZHomology(NamedTuple):
    even: AbelianGroup
    odd: AbelianGroup


def homology_over_Z(c: GradedComplex) -> ZHomology:
    """Integral cohomology via Smith normal form of both differentials.

    The torsion of ``ker(d_out)/im(d_in)`` is read off the invariant factors of
    the incoming differential, because ``ker(d_out)`` is a direct summand.
    """
    if c.ring is not ZZ:
        raise TypeError("homology_over_Z needs an integer complex")
    if not verify_d_squared(c):
        raise ValueError("d^2 != 0 over Z")
    snf_eo = smith_normal_form(c.d_even_to_odd)
    snf_oe = smith_normal_form(c.d_odd_to_even)
    ne, no = len(c.basis.even), len(c.basis.odd)
    even = AbelianGroup(ne - snf_eo.rank - snf_oe.rank, tuple(snf_oe.torsion))
    odd = AbelianGroup(no - snf_oe.rank - snf_eo.rank, tuple(snf_eo.torsion))
    return ZHomology(even, odd)


def zero_complex(basis: GradedBasis, ring=ZZ) -> GradedComplex:
    ne, no = len(basis.even), len(basis.odd)
    return GradedComplex(basis, ExactMatrix.zeros(no, ne, ring), ExactMatrix.zeros(ne, no, ring))

"""Small quantum cohomology rings Z[H,E]/(H^2 = kE + R, E^2 = Q).

Polynomials in H and E are dicts ``{(h_degree, e_degree): coefficient}``.
Elements of the quotient are stored on the basis (1, H, E, HE).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Mapping

from .exact import ZZ, ExactMatrix, char_poly, is_prime, poly_eval, roots_mod_p

Poly = dict[tuple[int, int], int]

BASIS = ((0, 0), (1, 0), (0, 1), (1, 1))
BASIS_LABELS = ("1", "H", "E", "HE")

_TERM = re.compile(r"([+-]?)\s*(\d*)\s*\*?\s*((?:H|E)(?:\^\d+)?(?:\s*\*?\s*(?:H|E)(?:\^\d+)?)*)?")


def parse_poly(text: str) -> Poly:
    """Parse strings such as ``"2E+H+4"``, ``"H^2*E - 3"`` or ``"0"``."""
    if re.search(r"\d\s+\d", text):
        raise ValueError(f"digits separated by whitespace in {text!r}")
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty polynomial")
    out: Poly = {}
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos or (not m.group(2) and not m.group(3)):
            raise ValueError(f"cannot parse polynomial {text!r} at position {pos}")
        if pos > 0 and not m.group(1):
            raise ValueError(f"missing operator in {text!r} at position {pos}")
        sign = -1 if m.group(1) == "-" else 1
        coeff = int(m.group(2)) if m.group(2) else 1
        h = e = 0
        for var, exp in re.findall(r"(H|E)(?:\^(\d+))?", m.group(3) or ""):
            n = int(exp) if exp else 1
            if var == "H":
                h += n
            else:
                e += n
        out[(h, e)] = out.get((h, e), 0) + sign * coeff
        pos = m.end()
    return {k: v for k, v in out.items() if v}


def format_element(coeffs) -> str:
    terms = []
    for c, label in zip(coeffs, BASIS_LABELS):
        c = int(c)
        if not c:
            continue
        if label == "1":
            body = str(abs(c))
        else:
            body = label if abs(c) == 1 else f"{abs(c)}{label}"
        terms.append(("-" if c < 0 else "+", body))
    if not terms:
        return "0"
    first_sign, first = terms[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


def _weight(mono: tuple[int, int]) -> tuple[int, int]:
    # H has weight 1, E weight 2; ties broken by H-degree.
    h, e = mono
    return (h + 2 * e, h)


@dataclass(frozen=True)
class QHPresentation:
    name: str
    k: int
    R: Mapping[tuple[int, int], int]
    Q: Mapping[tuple[int, int], int]
    ell: int

    def __post_init__(self):
        object.__setattr__(self, "R", {m: c for m, c in dict(self.R).items() if c})
        object.__setattr__(self, "Q", {m: c for m, c in dict(self.Q).items() if c})
        for mono in self.R:
            if _weight(mono) >= _weight((2, 0)):
                raise ValueError(f"{self.name}: R term {mono} does not lie below H^2; rewriting may not terminate")
        for mono in self.Q:
            if _weight(mono) >= _weight((0, 2)):
                raise ValueError(f"{self.name}: Q term {mono} does not lie below E^2; rewriting may not terminate")

    @classmethod
    def from_strings(cls, name: str, k: int, R: str, Q: str, ell: int) -> QHPresentation:
        return cls(name, int(k), parse_poly(R), parse_poly(Q), int(ell))

    def classical(self) -> QHPresentation:
        """The same ring with the quantum corrections removed."""
        return QHPresentation(f"{self.name}-classical", self.k, {}, {}, self.ell)


PRESENTATIONS = {
    "delta": QHPresentation.from_strings("delta", 1, "0", "1", 4),
    "T": QHPresentation.from_strings("T", 2, "0", "H", 3),
    "O": QHPresentation.from_strings("O", 5, "3", "E+1", 2),
    "I": QHPresentation.from_strings("I", 22, "2H+24", "2E+H+4", 1),
}

# Characteristic polynomials of c1* as published; O is listed as printed.
PUBLISHED_CHAR_POLYS = {
    "delta": [1, 0, 0, 0, -256],
    "T": [1, 0, 0, -108, 0],
    "O": [1, 0, 0, -44, -16],
    "I": [1, -4, -88, -300, -304],
}


def get_presentation(name: str) -> QHPresentation:
    key = "delta" if name.lower() in ("delta", "δ", "d") else name.upper()
    try:
        return PRESENTATIONS[key]
    except KeyError:
        raise KeyError(f"unknown configuration {name!r}; expected one of {sorted(PRESENTATIONS)}") from None


def reduce_poly(poly: Mapping[tuple[int, int], int], pres: QHPresentation) -> Poly:
    """Rewrite until every monomial is one of 1, H, E, HE."""
    work = {m: c for m, c in poly.items() if c}
    out: Poly = {}
    while work:
        mono = max(work, key=_weight)
        c = work.pop(mono)
        h, e = mono
        if h >= 2:
            repl = {(0, 1): pres.k}
            for m, rc in pres.R.items():
                repl[m] = repl.get(m, 0) + rc
            shift = (h - 2, e)
        elif e >= 2:
            repl = dict(pres.Q)
            shift = (h, e - 2)
        else:
            out[mono] = out.get(mono, 0) + c
            continue
        for (rh, re_), rc in repl.items():
            if not rc:
                continue
            target = (rh + shift[0], re_ + shift[1])
            work[target] = work.get(target, 0) + c * rc
            if not work[target]:
                del work[target]
    return {m: c for m, c in out.items() if c}


@dataclass(frozen=True)
class QHElement:
    coeffs: tuple[int, int, int, int]
    pres: QHPresentation

    def __post_init__(self):
        if len(self.coeffs) != 4:
            raise ValueError("QHElement needs four coefficients on (1, H, E, HE)")
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))

    @classmethod
    def from_poly(cls, poly: Mapping[tuple[int, int], int] | str, pres: QHPresentation) -> QHElement:
        if isinstance(poly, str):
            poly = parse_poly(poly)
        red = reduce_poly(poly, pres)
        return cls(tuple(red.get(m, 0) for m in BASIS), pres)

    def as_poly(self) -> Poly:
        return {m: c for m, c in zip(BASIS, self.coeffs) if c}

    def _check(self, other: QHElement):
        if self.pres != other.pres:
            raise ValueError(f"presentation mismatch: {self.pres.name} vs {other.pres.name}")

    def __add__(self, other: QHElement) -> QHElement:
        self._check(other)
        return QHElement(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)), self.pres)

    def __mul__(self, other):
        if isinstance(other, int):
            return QHElement(tuple(other * c for c in self.coeffs), self.pres)
        return multiply(self, other)

    __rmul__ = __mul__

    def __str__(self):
        return format_element(self.coeffs)


def normal_form(poly: Mapping[tuple[int, int], int] | str, pres: QHPresentation) -> QHElement:
    return QHElement.from_poly(poly, pres)


def multiply(a: QHElement, b: QHElement) -> QHElement:
    a._check(b)
    prod: Poly = {}
    for (ha, ea), ca in a.as_poly().items():
        for (hb, eb), cb in b.as_poly().items():
            m = (ha + hb, ea + eb)
            prod[m] = prod.get(m, 0) + ca * cb
    return QHElement.from_poly(prod, a.pres)


def c1_matrix(pres: QHPresentation) -> ExactMatrix:
    """Matrix of multiplication by ell*H; column j is the image of basis vector j."""
    c1 = QHElement.from_poly({(1, 0): pres.ell}, pres)
    cols = [multiply(c1, QHElement.from_poly({m: 1}, pres)).coeffs for m in BASIS]
    return ExactMatrix([[cols[j][i] for j in range(4)] for i in range(4)], ZZ)


def c1_char_poly(pres: QHPresentation) -> list[int]:
    return char_poly(c1_matrix(pres))


def eigenvalue_test(m0: int, pres: QHPresentation, p: int) -> bool:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    return poly_eval(c1_char_poly(pres), m0) % p == 0


def spectrum_mod_p(pres: QHPresentation, p: int) -> set[int]:
    return roots_mod_p(c1_char_poly(pres), p)


def compare_with_published(name: str) -> tuple[list[int], list[int], bool]:
    """(computed, published, equal) for one of the four configurations."""
    pres = get_presentation(name)
    computed = c1_char_poly(pres)
    published = PUBLISHED_CHAR_POLYS[pres.name]
    return computed, published, computed == published


def is_even_polynomial(poly) -> bool:
    """Only even powers of the variable appear (``poly`` highest degree first)."""
    deg = len(poly) - 1
    return all(c == 0 for i, c in enumerate(poly) if (deg - i) % 2)

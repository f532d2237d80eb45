"""Exact scalars and small dense linear algebra over Z, its fraction field and its prime quotients.

Matrices here are tiny (at most a few dozen rows), so everything is plain
Python with arbitrary-precision integers; no floating point is involved.

Polynomials are coefficient lists, highest degree first, so ``[1, 0, -4]``
is ``x**2 - 4``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Iterable, Sequence


def is_prime(n: int) -> bool:
    """Trial-division primality test."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_divisors(n: int) -> set[int]:
    """Set of primes dividing ``|n|``, by trial division."""
    if n == 0:
        raise ValueError("0 has no finite set of prime divisors")
    n = abs(n)
    primes = set()
    d = 2
    while d * d <= n:
        while n % d == 0:
            primes.add(d)
            n //= d
        d += 1
    if n > 1:
        primes.add(n)
    return primes


class Mod:
    """Element of the prime field F_p, stored as a residue in ``[0, p)``."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        if not _checked_prime(p):
            raise ValueError(f"{p} is not prime")
        self.value = int(value) % p
        self.p = p

    def _coerce(self, other) -> Mod:
        if isinstance(other, Mod):
            if other.p != self.p:
                raise ValueError(f"mixing F_{self.p} and F_{other.p}")
            return other
        if isinstance(other, int):
            return Mod(other, self.p)
        if isinstance(other, Fraction):
            return Mod(other.numerator, self.p) / Mod(other.denominator, self.p)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Mod(self.value + other.value, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Mod(self.value - other.value, self.p)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Mod(other.value - self.value, self.p)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Mod(self.value * other.value, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return Mod(-self.value, self.p)

    def inverse(self) -> Mod:
        if self.value == 0:
            raise ZeroDivisionError(f"0 is not invertible in F_{self.p}")
        return Mod(pow(self.value, -1, self.p), self.p)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return Mod(pow(self.value, k, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, Mod):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return (other - self.value) % self.p == 0
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"Mod({self.value}, {self.p})"

    def __str__(self):
        return str(self.value)


@lru_cache(maxsize=None)
def _checked_prime(p: int) -> bool:
    return is_prime(p)


# Rings


class Ring:
    name = "?"
    is_field = False

    def __call__(self, x):
        raise NotImplementedError

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def div(self, a, b):
        raise NotImplementedError

    def __repr__(self):
        return self.name


class IntegerRing(Ring):
    name = "ZZ"

    def __call__(self, x):
        if isinstance(x, Mod):
            raise TypeError("cannot lift a residue to ZZ implicitly")
        if isinstance(x, Fraction):
            if x.denominator != 1:
                raise ValueError(f"{x} is not an integer")
            return x.numerator
        if isinstance(x, bool) or not isinstance(x, int):
            if float(x) != int(x):
                raise ValueError(f"{x} is not an integer")
        return int(x)

    def div(self, a, b):
        q, r = divmod(a, b)
        if r:
            raise ArithmeticError(f"{a} is not divisible by {b}")
        return q


class RationalField(Ring):
    name = "QQ"
    is_field = True

    def __call__(self, x):
        if isinstance(x, Mod):
            raise TypeError("cannot lift a residue to QQ")
        return Fraction(x)

    def div(self, a, b):
        return Fraction(a) / b


class PrimeField(Ring):
    is_field = True

    def __init__(self, p: int):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.name = f"GF({p})"

    def __call__(self, x):
        if isinstance(x, Mod):
            if x.p != self.p:
                raise ValueError(f"cannot coerce F_{x.p} element into F_{self.p}")
            return x
        if isinstance(x, Fraction):
            return Mod(x.numerator, self.p) / x.denominator
        return Mod(int(x), self.p)

    def div(self, a, b):
        return self(a) / self(b)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))


ZZ = IntegerRing()
QQ = RationalField()


@lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


def _infer_ring(values: Iterable) -> Ring:
    ring: Ring = ZZ
    for v in values:
        if isinstance(v, Mod):
            return GF(v.p)
        if isinstance(v, Fraction) and v.denominator != 1:
            ring = QQ
    return ring


# Matrices


class ExactMatrix:
    """Immutable dense matrix with entries in ``ZZ``, ``QQ`` or ``GF(p)``."""

    __slots__ = ("_rows", "_ncols", "ring")

    def __init__(self, rows: Sequence[Sequence], ring: Ring | None = None, *, cols: int | None = None):
        rows = [list(r) for r in rows]
        width = len(rows[0]) if rows else (cols or 0)
        if any(len(r) != width for r in rows):
            raise ValueError("rows have unequal lengths")
        if ring is None:
            ring = _infer_ring(v for r in rows for v in r)
        self.ring = ring
        self._rows = tuple(tuple(ring(v) for v in r) for r in rows)
        self._ncols = width

    # construction helpers
    @classmethod
    def identity(cls, n: int, ring: Ring = ZZ) -> ExactMatrix:
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], ring)

    @classmethod
    def zeros(cls, rows: int, cols: int, ring: Ring = ZZ) -> ExactMatrix:
        if rows == 0:
            return cls([], ring, cols=cols)
        return cls([[0] * cols for _ in range(rows)], ring)

    # shape and access
    @property
    def nrows(self) -> int:
        return len(self._rows)

    @property
    def ncols(self) -> int:
        return self._ncols

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, idx):
        i, j = idx
        return self._rows[i][j]

    def row(self, i: int) -> tuple:
        return self._rows[i]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self._rows)

    def tolist(self) -> list[list]:
        return [list(r) for r in self._rows]

    def to_ints(self) -> list[list[int]]:
        """Integer representatives (residues for prime fields)."""
        out = []
        for r in self._rows:
            row = []
            for v in r:
                if isinstance(v, Fraction):
                    if v.denominator != 1:
                        raise ValueError(f"{v} is not integral")
                    v = v.numerator
                row.append(int(v))
            out.append(row)
        return out

    @property
    def T(self) -> ExactMatrix:
        if not self._rows:
            return ExactMatrix.zeros(self.ncols, 0, self.ring)
        return ExactMatrix(list(zip(*self._rows)), self.ring)

    def change_ring(self, ring: Ring) -> ExactMatrix:
        if isinstance(ring, PrimeField) and self.ring is ZZ:
            rows = self.to_ints()
        else:
            rows = self.tolist()
        if not rows:
            return ExactMatrix.zeros(0, self.ncols, ring)
        return ExactMatrix(rows, ring)

    def mod(self, p: int) -> ExactMatrix:
        return self.change_ring(GF(p))

    # predicates
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def is_zero(self) -> bool:
        return all(not v for r in self._rows for v in r)

    def __eq__(self, other):
        if isinstance(other, ExactMatrix):
            return self.shape == other.shape and self._rows == other._rows
        if isinstance(other, (list, tuple)):
            return self.tolist() == [list(r) for r in other]
        return NotImplemented

    def __hash__(self):
        return hash((self.shape, self._rows))

    def __repr__(self):
        return f"ExactMatrix({self.tolist()!r}, {self.ring!r})"

    # arithmetic
    def _check_same(self, other: ExactMatrix):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: ExactMatrix) -> ExactMatrix:
        self._check_same(other)
        return ExactMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows)], self.ring)

    def __sub__(self, other: ExactMatrix) -> ExactMatrix:
        self._check_same(other)
        return ExactMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows)], self.ring)

    def __neg__(self) -> ExactMatrix:
        return ExactMatrix([[-a for a in r] for r in self._rows], self.ring)

    def __mul__(self, c) -> ExactMatrix:
        c = self.ring(c)
        return ExactMatrix([[c * a for a in r] for r in self._rows], self.ring)

    __rmul__ = __mul__

    def __matmul__(self, other: ExactMatrix) -> ExactMatrix:
        if self.ncols != other.nrows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        if self.nrows == 0 or other.ncols == 0:
            return ExactMatrix.zeros(self.nrows, other.ncols, self.ring)
        cols = other.T._rows if other.nrows else [()] * other.ncols
        zero = self.ring.zero
        return ExactMatrix(
            [[sum((a * b for a, b in zip(r, c)), zero) for c in cols] for r in self._rows],
            self.ring,
        )

    def __pow__(self, k: int) -> ExactMatrix:
        if not self.is_square():
            raise ValueError("power of a non-square matrix")
        result = ExactMatrix.identity(self.nrows, self.ring)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def apply(self, vector: Sequence) -> list:
        """Matrix times column vector."""
        if len(vector) != self.ncols:
            raise ValueError("vector length mismatch")
        vector = [self.ring(v) for v in vector]
        return [sum((a * b for a, b in zip(r, vector)), self.ring.zero) for r in self._rows]

    def trace(self):
        if not self.is_square():
            raise ValueError("trace of a non-square matrix")
        return sum((self._rows[i][i] for i in range(self.nrows)), self.ring.zero)

    # elimination
    def _field_view(self) -> ExactMatrix:
        return self if self.ring.is_field else self.change_ring(QQ)

    def rref(self) -> tuple[ExactMatrix, list[int]]:
        """Reduced row echelon form and pivot columns (over the fraction field)."""
        m = self._field_view()
        ring = m.ring
        a = m.tolist()
        pivots: list[int] = []
        r = 0
        for c in range(m.ncols):
            pr = next((i for i in range(r, m.nrows) if a[i][c]), None)
            if pr is None:
                continue
            a[r], a[pr] = a[pr], a[r]
            inv = ring.div(ring.one, a[r][c])
            a[r] = [v * inv for v in a[r]]
            for i in range(m.nrows):
                if i != r and a[i][c]:
                    f = a[i][c]
                    a[i] = [x - f * y for x, y in zip(a[i], a[r])]
            pivots.append(c)
            r += 1
            if r == m.nrows:
                break
        if not a:
            return ExactMatrix.zeros(0, m.ncols, ring), pivots
        return ExactMatrix(a, ring), pivots

    def rank(self) -> int:
        return len(self.rref()[1])

    def nullspace(self) -> list[list]:
        """Basis of the right kernel ``{v : M v = 0}`` over the fraction field."""
        red, pivots = self.rref()
        ring = red.ring
        free = [c for c in range(self.ncols) if c not in pivots]
        basis = []
        for f in free:
            v = [ring.zero] * self.ncols
            v[f] = ring.one
            for i, pc in enumerate(pivots):
                v[pc] = -red[i, f]
            basis.append(v)
        return basis

    def solve(self, rhs: Sequence) -> list | None:
        """One solution of ``M x = rhs`` over the fraction field, or None."""
        m = self._field_view()
        aug = ExactMatrix([list(r) + [m.ring(b)] for r, b in zip(m.tolist(), rhs)], m.ring)
        red, pivots = aug.rref()
        if m.ncols in pivots:
            return None
        x = [m.ring.zero] * m.ncols
        for i, pc in enumerate(pivots):
            x[pc] = red[i, m.ncols]
        return x

    def det(self):
        if not self.is_square():
            raise ValueError("determinant of a non-square matrix")
        if self.ring is ZZ:
            return _bareiss_det(self.tolist())
        n = self.nrows
        a = self.tolist()
        ring = self.ring
        det = ring.one
        for c in range(n):
            pr = next((i for i in range(c, n) if a[i][c]), None)
            if pr is None:
                return ring.zero
            if pr != c:
                a[c], a[pr] = a[pr], a[c]
                det = -det
            det = det * a[c][c]
            inv = ring.div(ring.one, a[c][c])
            for i in range(c + 1, n):
                if a[i][c]:
                    f = a[i][c] * inv
                    a[i] = [x - f * y for x, y in zip(a[i], a[c])]
        return det


def _bareiss_det(a: list[list[int]]) -> int:
    n = len(a)
    if n == 0:
        return 1
    a = [row[:] for row in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def block(blocks: Sequence[Sequence[ExactMatrix]]) -> ExactMatrix:
    """Assemble a block matrix."""
    rows = []
    for brow in blocks:
        height = brow[0].nrows
        for i in range(height):
            rows.append([v for b in brow for v in b.row(i)])
    return ExactMatrix(rows, blocks[0][0].ring)


# Smith normal form


@dataclass(frozen=True)
class SNFResult:
    """``U @ M @ V == D`` with ``D`` diagonal and ``d_1 | d_2 | ...``."""

    D: ExactMatrix
    U: ExactMatrix
    V: ExactMatrix
    rank: int

    @property
    def invariant_factors(self) -> list[int]:
        return [self.D[i, i] for i in range(self.rank)]

    @property
    def torsion(self) -> list[int]:
        return [d for d in self.invariant_factors if d != 1]


def smith_normal_form(M: ExactMatrix) -> SNFResult:
    """Smith normal form of an integer matrix.

    Pivots are chosen as the entry of smallest nonzero absolute value in the
    active submatrix, first in row-major order, so output is deterministic.
    """
    if M.ring is not ZZ:
        if M.ring is QQ and all(v.denominator == 1 for r in M.tolist() for v in r):
            M = M.change_ring(ZZ)
        else:
            raise TypeError("Smith normal form needs an integer matrix")
    m, n = M.shape
    a = M.to_ints()
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
        U[dst] = [x + q * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        for row in a:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]

    t = 0
    while t < min(m, n):
        candidates = [(abs(a[i][j]), i, j) for i in range(t, m) for j in range(t, n) if a[i][j]]
        if not candidates:
            break
        _, pi, pj = min(candidates)
        swap_rows(t, pi)
        swap_cols(t, pj)
        while True:
            p = a[t][t]
            for i in range(t + 1, m):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // p))
            for j in range(t + 1, n):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // p))
            line = [(abs(a[i][t]), i, t) for i in range(t + 1, m) if a[i][t]]
            line += [(abs(a[t][j]), t, j) for j in range(t + 1, n) if a[t][j]]
            if line:
                _, pi, pj = min(line)
                swap_rows(t, pi)
                swap_cols(t, pj)
                continue
            bad = next(
                ((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if a[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    rank = sum(1 for i in range(min(m, n)) if a[i][i])
    D = ExactMatrix(a, ZZ) if m else ExactMatrix.zeros(0, n)
    return SNFResult(
        D=D,
        U=ExactMatrix(U, ZZ) if m else ExactMatrix.zeros(0, 0),
        V=ExactMatrix(V, ZZ) if n else ExactMatrix.zeros(0, 0),
        rank=rank,
    )


# Characteristic polynomial and roots


def char_poly(M: ExactMatrix) -> list[int]:
    """Monic characteristic polynomial ``det(t I - M)``, highest degree first.

    Faddeev-LeVerrier over the integers: every division is exact. Prime-field
    input is lifted to Z and the result reduced back.
    """
    if not M.is_square():
        raise ValueError("characteristic polynomial of a non-square matrix")
    field = M.ring if isinstance(M.ring, PrimeField) else None
    if M.ring is QQ:
        A = M
        ring = QQ
    else:
        A = ExactMatrix(M.to_ints(), ZZ) if M.nrows else M
        ring = ZZ
    n = A.nrows
    coeffs = [ring.one]
    Mk = ExactMatrix.zeros(n, n, ring)
    I = ExactMatrix.identity(n, ring)
    for k in range(1, n + 1):
        Mk = A @ Mk + I * coeffs[-1]
        c = ring.div(-(A @ Mk).trace(), k)
        coeffs.append(c)
    if field is not None:
        return [int(c) % field.p for c in coeffs]
    if ring is QQ:
        return [int(c) if c.denominator == 1 else c for c in coeffs]
    return coeffs


def poly_eval(poly: Sequence, x):
    """Horner evaluation; ``x`` may be a scalar of any ring."""
    acc = 0 * x
    for c in poly:
        acc = acc * x + c
    return acc


def poly_eval_matrix(poly: Sequence, M: ExactMatrix) -> ExactMatrix:
    n = M.nrows
    acc = ExactMatrix.zeros(n, n, M.ring)
    I = ExactMatrix.identity(n, M.ring)
    for c in poly:
        acc = acc @ M + I * c
    return acc


def roots_mod_p(poly: Sequence[int], p: int) -> set[int]:
    """All residues ``r`` in ``[0, p)`` with ``poly(r) = 0 mod p``, by exhaustion."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if all(int(c) % p == 0 for c in poly):
        raise ValueError(f"polynomial vanishes identically mod {p}")
    return {r for r in range(p) if poly_eval([int(c) for c in poly], r) % p == 0}


def format_poly(poly: Sequence, var: str = "λ") -> str:
    """Human-readable polynomial, e.g. ``λ^4 - 256``."""
    n = len(poly) - 1
    terms = []
    for k, c in enumerate(poly):
        if c == 0:
            continue
        deg = n - k
        mag = abs(c)
        if deg == 0:
            body = str(mag)
        else:
            mono = var if deg == 1 else f"{var}^{deg}"
            body = mono if mag == 1 else f"{mag}{mono}"
        sign = "-" if c < 0 else "+"
        terms.append((sign, body))
    if not terms:
        return "0"
    head_sign, head = terms[0]
    out = ("-" if head_sign == "-" else "") + head
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


def all_vectors(p: int, n: int):
    """Every vector of ``F_p^n`` as a tuple of residues, in lexicographic order."""
    return product(range(p), repeat=n)


def gcd_all(values: Iterable[int]) -> int:
    g = 0
    for v in values:
        g = math.gcd(g, v)
    return g

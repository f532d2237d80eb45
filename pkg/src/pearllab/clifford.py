"""Clifford algebras over odd prime fields and their Z/2-graded modules.

Relation: e_i e_j + e_j e_i = B_ij, so e_i^2 = B_ii / 2. Basis monomials
e_S are indexed by bitmasks S (bit i set means e_{i+1} occurs) with factors
in increasing order.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple, Sequence

from .exact import GF, ExactMatrix, Mod, all_vectors, is_prime

CHIANG_Q = ((2, 1, 1), (1, 2, 1), (1, 1, 2))

EXHAUSTIVE_LIMIT = 10**4


def _popcount(x: int) -> int:
    return bin(x).count("1")


@dataclass(frozen=True)
class BilinearForm:
    B: tuple[tuple[int, ...], ...]
    p: int

    def __post_init__(self):
        if not is_prime(self.p) or self.p == 2:
            raise ValueError(f"need an odd prime, got {self.p}")
        rows = tuple(tuple(int(v) % self.p for v in r) for r in self.B)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("form matrix must be square")
        for i in range(n):
            for j in range(n):
                if rows[i][j] != rows[j][i]:
                    raise ValueError("form matrix must be symmetric")
        object.__setattr__(self, "B", rows)

    @property
    def n(self) -> int:
        return len(self.B)

    def matrix(self) -> ExactMatrix:
        return ExactMatrix(self.B, GF(self.p))

    def det(self) -> int:
        return int(self.matrix().det())

    def is_degenerate(self) -> bool:
        return self.det() == 0

    def scaled(self, c: int) -> BilinearForm:
        return BilinearForm(tuple(tuple(c * v for v in r) for r in self.B), self.p)

    @classmethod
    def zero(cls, n: int, p: int) -> BilinearForm:
        return cls(tuple((0,) * n for _ in range(n)), p)


def chiang_form(zeta: int = 1, p: int = 5) -> BilinearForm:
    """The doubled, twisted form 2*zeta*q of the Clifford torus."""
    return BilinearForm(CHIANG_Q, p).scaled(2 * zeta)


def congruence_diagonalize(form: BilinearForm) -> tuple[list[list[int]], list[int]]:
    """P and d with P B P^T = diag(d) over F_p (p odd)."""
    p, n = form.p, form.n
    a = [list(r) for r in form.B]
    P = [[int(i == j) for j in range(n)] for i in range(n)]

    def row_op(dst, src, c):
        # row dst += c * row src, then the same on columns
        a[dst] = [(x + c * y) % p for x, y in zip(a[dst], a[src])]
        for r in a:
            r[dst] = (r[dst] + c * r[src]) % p
        P[dst] = [(x + c * y) % p for x, y in zip(P[dst], P[src])]

    def swap(i, j):
        a[i], a[j] = a[j], a[i]
        for r in a:
            r[i], r[j] = r[j], r[i]
        P[i], P[j] = P[j], P[i]

    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][i]), None)
        if piv is None:
            # make a nonzero diagonal entry from an off-diagonal one
            pair = next(((i, j) for i in range(k, n) for j in range(i + 1, n) if a[i][j]), None)
            if pair is None:
                break
            row_op(pair[0], pair[1], 1)
            piv = pair[0]
        if piv != k:
            swap(k, piv)
        inv = pow(a[k][k], -1, p)
        for i in range(k + 1, n):
            if a[i][k]:
                row_op(i, k, (-a[i][k] * inv) % p)
    return P, [a[i][i] for i in range(n)]


def square_class(c: int, p: int) -> int:
    """Legendre symbol: 1 for nonzero squares, -1 for non-squares, 0 for 0."""
    c %= p
    if c == 0:
        return 0
    return 1 if pow(c, (p - 1) // 2, p) == 1 else -1


class CliffordAlgebra:
    def __init__(self, form: BilinearForm):
        self.form = form
        self.p = form.p
        self.n = form.n
        self.dim = 1 << self.n
        self._half = pow(2, -1, self.p)
        self.table = self._build_table()

    def __eq__(self, other):
        return isinstance(other, CliffordAlgebra) and other.form == self.form

    def __hash__(self):
        return hash(self.form)

    def _rmul_gen(self, S: int, j: int) -> dict[int, int]:
        """e_S * e_j as {mask: coeff}."""
        if S == 0:
            return {1 << j: 1}
        top = S.bit_length() - 1
        rest = S & ~(1 << top)
        B = self.form.B
        if top < j:
            return {S | (1 << j): 1}
        if top == j:
            return {rest: B[j][j] * self._half % self.p}
        # e_rest e_top e_j = B_top,j e_rest - (e_rest e_j) e_top
        out = {rest: B[top][j]} if B[top][j] else {}
        for mask, c in self._rmul_gen(rest, j).items():
            for m2, c2 in self._rmul_gen(mask, top).items():
                out[m2] = (out.get(m2, 0) - c * c2) % self.p
        return {m: c for m, c in out.items() if c}

    def _build_table(self) -> list[list[dict[int, int]]]:
        table = [[{} for _ in range(self.dim)] for _ in range(self.dim)]
        for S in range(self.dim):
            for T in range(self.dim):
                cur = {S: 1}
                for j in range(self.n):
                    if T >> j & 1:
                        nxt: dict[int, int] = {}
                        for m, c in cur.items():
                            for m2, c2 in self._rmul_gen(m, j).items():
                                nxt[m2] = (nxt.get(m2, 0) + c * c2) % self.p
                        cur = {m: c for m, c in nxt.items() if c}
                table[S][T] = cur
        return table

    def element(self, coeffs: Sequence[int]) -> CliffordElement:
        return CliffordElement(tuple(int(c) % self.p for c in coeffs), self)

    def monomial(self, mask: int, coeff: int = 1) -> CliffordElement:
        v = [0] * self.dim
        v[mask] = coeff % self.p
        return CliffordElement(tuple(v), self)

    def one(self) -> CliffordElement:
        return self.monomial(0)

    def scalar(self, c: int) -> CliffordElement:
        return self.monomial(0, c)

    def gen(self, i: int) -> CliffordElement:
        """Generator e_{i+1}, zero-based."""
        return self.monomial(1 << i)

    def gens(self) -> list[CliffordElement]:
        return [self.gen(i) for i in range(self.n)]

    def basis(self, parity: int | None = None) -> list[int]:
        masks = sorted(range(self.dim), key=lambda m: (_popcount(m), m))
        if parity is None:
            return masks
        return [m for m in masks if _popcount(m) % 2 == parity]

    def zero(self) -> CliffordElement:
        return CliffordElement((0,) * self.dim, self)

    def label(self, mask: int) -> str:
        if mask == 0:
            return "1"
        return "e" + "".join(str(i + 1) for i in range(self.n) if mask >> i & 1)

    @cached_property
    def field(self):
        return GF(self.p)


@dataclass(frozen=True, eq=False)
class CliffordElement:
    coeffs: tuple[int, ...]
    algebra: CliffordAlgebra

    def _check(self, other: CliffordElement):
        if other.algebra != self.algebra:
            raise ValueError("elements of different Clifford algebras")

    def __add__(self, other):
        self._check(other)
        p = self.algebra.p
        return CliffordElement(tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs)), self.algebra)

    def __sub__(self, other):
        self._check(other)
        p = self.algebra.p
        return CliffordElement(tuple((a - b) % p for a, b in zip(self.coeffs, other.coeffs)), self.algebra)

    def __neg__(self):
        p = self.algebra.p
        return CliffordElement(tuple(-a % p for a in self.coeffs), self.algebra)

    def __mul__(self, other):
        if isinstance(other, (int, Mod)):
            p = self.algebra.p
            return CliffordElement(tuple(a * int(other) % p for a in self.coeffs), self.algebra)
        return clifford_multiply(self, other)

    def __rmul__(self, c):
        return self * c

    def __eq__(self, other):
        if isinstance(other, int):
            return self == self.algebra.scalar(other)
        return isinstance(other, CliffordElement) and other.algebra == self.algebra and other.coeffs == self.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __bool__(self):
        return any(self.coeffs)

    def parity(self) -> int | None:
        """0 or 1 for homogeneous nonzero elements, None otherwise."""
        parities = {_popcount(m) % 2 for m, c in enumerate(self.coeffs) if c}
        if len(parities) == 1:
            return parities.pop()
        return None if parities else 0

    def is_scalar(self) -> bool:
        return not any(self.coeffs[1:])

    def scalar_part(self) -> int:
        return self.coeffs[0]

    def __repr__(self):
        alg = self.algebra
        terms = [f"{c}*{alg.label(m)}" for m in alg.basis() if (c := self.coeffs[m])]
        return " + ".join(terms) if terms else "0"


def clifford_multiply(a: CliffordElement, b: CliffordElement) -> CliffordElement:
    a._check(b)
    alg = a.algebra
    p = alg.p
    out = [0] * alg.dim
    for S, ca in enumerate(a.coeffs):
        if not ca:
            continue
        for T, cb in enumerate(b.coeffs):
            if not cb:
                continue
            for m, c in alg.table[S][T].items():
                out[m] = (out[m] + ca * cb * c) % p
    return CliffordElement(tuple(out), alg)


def _kernel(columns: list[list[int]], p: int) -> list[list[int]]:
    """Kernel of the linear map whose images of basis vectors are ``columns``."""
    if not columns:
        return []
    rows = [[col[i] for col in columns] for i in range(len(columns[0]))]
    return [[int(v) for v in vec] for vec in ExactMatrix(rows, GF(p)).nullspace()]


def _span_rank(vectors: list[list[int]], p: int) -> int:
    if not vectors:
        return 0
    return ExactMatrix(vectors, GF(p)).rank()


def _commutator_images(alg: CliffordAlgebra, super_: bool) -> list[list[int]]:
    cols = []
    for S in range(alg.dim):
        x = alg.monomial(S)
        sign = -1 if super_ and _popcount(S) % 2 else 1
        img = []
        for g in alg.gens():
            img.extend((x * g - (g * x) * sign).coeffs)
        cols.append(img)
    return cols


def center(alg: CliffordAlgebra) -> list[CliffordElement]:
    return [alg.element(v) for v in _kernel(_commutator_images(alg, False), alg.p)]


def supercenter(alg: CliffordAlgebra) -> list[CliffordElement]:
    """Elements whose graded commutator with every generator vanishes."""
    return [alg.element(v) for v in _kernel(_commutator_images(alg, True), alg.p)]


def homogeneous_parities(basis: list[CliffordElement]) -> list[int | None]:
    return [x.parity() for x in basis]


class CentralOddElement(NamedTuple):
    z: CliffordElement
    z_squared: int


def central_odd_element(alg: CliffordAlgebra) -> CentralOddElement:
    """Product of an orthogonal basis; central when n is odd."""
    form = alg.form
    if form.is_degenerate():
        raise ValueError("form is degenerate")
    if form.n % 2 == 0:
        raise ValueError("needs an odd number of generators")
    P, _ = congruence_diagonalize(form)
    fs = [sum((alg.gen(j) * P[i][j] for j in range(alg.n)), alg.zero()) for i in range(alg.n)]
    z = alg.one()
    for f in fs:
        z = z * f
    for g in alg.gens():
        if z * g != g * z:
            raise AssertionError("product of orthogonal generators is not central")
    sq = z * z
    if not sq.is_scalar():
        raise AssertionError("z^2 is not a scalar")
    return CentralOddElement(z, sq.scalar_part())


def even_subalgebra_basis(alg: CliffordAlgebra) -> list[int]:
    return alg.basis(0)


def even_center_dimension(alg: CliffordAlgebra) -> int:
    even = alg.basis(0)
    cols = []
    for S in even:
        x = alg.monomial(S)
        img = []
        for T in even:
            y = alg.monomial(T)
            img.extend((x * y - y * x).coeffs)
        cols.append(img)
    return len(_kernel(cols, alg.p))


def left_ideal_basis(alg: CliffordAlgebra, e: CliffordElement, parity: int | None = None) -> list[CliffordElement]:
    """A basis of (algebra part of given parity) * e, by row reduction."""
    vecs = [(alg.monomial(S) * e).coeffs for S in alg.basis(parity)]
    red, pivots = ExactMatrix([list(v) for v in vecs], GF(alg.p)).rref()
    return [alg.element([int(x) for x in red.row(i)]) for i in range(len(pivots))]


class EvenSplit(NamedTuple):
    idempotent: CliffordElement
    module_dim: int


def even_split(alg: CliffordAlgebra, seed: int = 0, max_tries: int = 200_000) -> EvenSplit:
    """A nontrivial idempotent of Cl^0 and the dimension of Cl^0 * e.

    Exhaustive scan when Cl^0 is small enough, else random search.
    """
    if alg.form.is_degenerate():
        raise ValueError("form is degenerate")
    even = alg.basis(0)
    p, k = alg.p, len(even)
    one = alg.one()

    def candidates():
        if p**k <= EXHAUSTIVE_LIMIT:
            yield from all_vectors(p, k)
        else:
            rng = random.Random(seed)
            for _ in range(max_tries):
                yield [rng.randrange(p) for _ in range(k)]

    best = None
    for vec in candidates():
        coeffs = [0] * alg.dim
        for m, c in zip(even, vec):
            coeffs[m] = c
        e = alg.element(coeffs)
        if not e or e == one or e * e != e:
            continue
        dim = len(left_ideal_basis(alg, e, 0))
        if best is None or dim < best.module_dim:
            best = EvenSplit(e, dim)
            if p**k > EXHAUSTIVE_LIMIT:
                break
    if best is None:
        raise RuntimeError("no nontrivial idempotent found in the even subalgebra")
    return best


@dataclass(frozen=True)
class GradedModule:
    """Finite-dimensional Z/2-graded module; ``actions[i]`` is the matrix of e_{i+1}."""

    form: BilinearForm
    degrees: tuple[int, ...]
    actions: tuple[ExactMatrix, ...]

    def __post_init__(self):
        ring = GF(self.form.p)
        d = len(self.degrees)
        if len(self.actions) != self.form.n:
            raise ValueError("one action matrix per generator")
        ident = ExactMatrix.identity(d, ring)
        for i, a in enumerate(self.actions):
            if a.shape != (d, d):
                raise ValueError("action matrices must be square of module dimension")
            for r in range(d):
                for c in range(d):
                    if a[r, c] and self.degrees[r] == self.degrees[c]:
                        raise ValueError(f"e{i + 1} does not act by an odd operator")
        for i, a in enumerate(self.actions):
            for j, b in enumerate(self.actions):
                lhs = a @ b + b @ a
                if lhs != ident * self.form.B[i][j]:
                    raise ValueError(f"Clifford relation fails for (e{i + 1}, e{j + 1})")

    @property
    def dim(self) -> int:
        return len(self.degrees)

    def shift(self) -> GradedModule:
        return GradedModule(self.form, tuple(1 - d for d in self.degrees), self.actions)

    def direct_sum(self, other: GradedModule) -> GradedModule:
        if other.form != self.form:
            raise ValueError("modules over different algebras")
        ring = GF(self.form.p)
        acts = []
        for a, b in zip(self.actions, other.actions):
            rows = [list(r) + [0] * other.dim for r in a.tolist()] + [[0] * self.dim + list(r) for r in b.tolist()]
            acts.append(ExactMatrix(rows, ring))
        return GradedModule(self.form, self.degrees + other.degrees, tuple(acts))


def induce_graded_spin(alg: CliffordAlgebra, split: EvenSplit | None = None) -> GradedModule:
    """The left ideal Cl * e for a primitive even idempotent e, even part first."""
    split = split or even_split(alg)
    e = split.idempotent
    basis = left_ideal_basis(alg, e, 0) + left_ideal_basis(alg, e, 1)
    degrees = tuple(b.parity() for b in basis)
    ring = GF(alg.p)
    coords = ExactMatrix([list(b.coeffs) for b in basis], ring).T  # dim(alg) x dim(M)
    actions = []
    for g in alg.gens():
        cols = []
        for b in basis:
            sol = coords.solve(list((g * b).coeffs))
            if sol is None:
                raise AssertionError("left ideal is not stable under a generator")
            cols.append(sol)
        actions.append(ExactMatrix([[cols[c][r] for c in range(len(basis))] for r in range(len(basis))], ring))
    return GradedModule(alg.form, degrees, tuple(actions))


def _intertwiners(M: GradedModule, N: GradedModule, degree: int) -> list[ExactMatrix]:
    """Maps f of the given degree with f e_i = e_i f on the nose."""
    if M.form != N.form:
        raise ValueError("modules over different algebras")
    p = M.form.p
    ring = GF(p)
    slots = [(r, c) for r in range(N.dim) for c in range(M.dim) if (N.degrees[r] - M.degrees[c]) % 2 == degree]
    cols = []
    for r0, c0 in slots:
        f = ExactMatrix([[int((r, c) == (r0, c0)) for c in range(M.dim)] for r in range(N.dim)], ring)
        img = []
        for a, b in zip(M.actions, N.actions):
            img.extend(int(v) for row in (f @ a - b @ f).tolist() for v in row)
        cols.append(img)
    out = []
    for vec in _kernel(cols, p):
        rows = [[0] * M.dim for _ in range(N.dim)]
        for (r, c), v in zip(slots, vec):
            rows[r][c] = v
        out.append(ExactMatrix(rows, ring))
    return out


def graded_hom(M: GradedModule, N: GradedModule) -> tuple[int, int]:
    return len(_intertwiners(M, N, 0)), len(_intertwiners(M, N, 1))


class ExtConstant(NamedTuple):
    c: int
    square_class: int
    zeta_cubed_class: int | None


def ext_presentation(M: GradedModule, zeta: int | None = None) -> ExtConstant:
    """The constant c with End(M) = F[x]/(x^2 - c), x the odd generator."""
    odd = _intertwiners(M, M, 1)
    if len(odd) != 1:
        raise ValueError(f"odd endomorphisms have dimension {len(odd)}, expected 1")
    x = odd[0]
    sq = x @ x
    c = sq[0, 0]
    if sq != ExactMatrix.identity(M.dim, sq.ring) * c:
        raise AssertionError("square of the odd generator is not scalar")
    c = int(c)
    p = M.form.p
    return ExtConstant(c, square_class(c, p), None if zeta is None else square_class(zeta**3, p))


def _super_derivation_space(alg: CliffordAlgebra, degree: int) -> int:
    """Dimension of degree-``degree`` super-derivations, given on generators."""
    p, n = alg.p, alg.n
    target = alg.basis((1 + degree) % 2)
    m = len(target)
    gens = alg.gens()
    sign = -1 if degree else 1
    cols = []
    # unknown (i, t): coefficient of e_target[t] in D(e_i)
    for i in range(n):
        for t in range(m):
            Dv = [alg.zero() for _ in range(n)]
            Dv[i] = alg.monomial(target[t])
            img = []
            for a in range(n):
                for b in range(a, n):
                    # D(e_a e_b + e_b e_a) = 0, since the right side is a scalar
                    val = Dv[a] * gens[b] + gens[a] * Dv[b] * sign + Dv[b] * gens[a] + gens[b] * Dv[a] * sign
                    img.extend(val.coeffs)
            cols.append(img)
    return len(_kernel(cols, p))


def _inner_rank(alg: CliffordAlgebra, degree: int) -> int:
    vecs = []
    for S in alg.basis(degree):
        a = alg.monomial(S)
        sign = -1 if degree else 1
        img = []
        for g in alg.gens():
            img.extend((a * g - g * a * sign).coeffs)
        vecs.append(img)
    return _span_rank(vecs, alg.p)


def hochschild_low(alg: CliffordAlgebra) -> tuple[int, int]:
    """(dim HH^0, dim HH^1) of the Clifford superalgebra."""
    hh0 = len(supercenter(alg))
    hh1 = sum(_super_derivation_space(alg, d) - _inner_rank(alg, d) for d in (0, 1))
    return hh0, hh1


def load_form(path: str) -> BilinearForm:
    """Read a form from a TOML file with keys ``matrix`` and ``p``."""
    from .config import load_toml

    data = load_toml(path)
    try:
        return BilinearForm(tuple(tuple(r) for r in data["matrix"]), int(data.get("p", 5)))
    except KeyError as exc:
        raise ValueError(f"{path}: missing key {exc}") from None

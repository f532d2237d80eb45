"""Point configurations in Sym^n CP^1 and the axial discs of the Chiang Lagrangian.

A binary form of degree n is a coefficient vector v with v[k] the coefficient
of x^(n-k) y^k. A matrix g acts by p(x, y) -> p(g11 x + g21 y, g12 x + g22 y),
which is a left action of SL(2, C) and restricts to the unitary action used
for the moment map.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

import numpy as np
from scipy.optimize import root

from .exact import QQ, ExactMatrix

LAGRANGIAN_TOL = 1e-9
WINDING_TOL = 1e-6
RESIDUAL_TOL = 1e-10
DET_TOL = 1e-12


# ---------------------------------------------------------------- exact coefficients


@dataclass(frozen=True)
class Surd:
    """The number i**phase * sqrt(square), square a nonnegative rational."""

    square: Fraction
    phase: int = 0

    def __post_init__(self):
        sq = Fraction(self.square)
        if sq < 0:
            raise ValueError("square must be nonnegative")
        object.__setattr__(self, "square", sq)
        object.__setattr__(self, "phase", self.phase % 4)

    @classmethod
    def of(cls, x) -> Surd:
        if isinstance(x, Surd):
            return x
        x = Fraction(x)
        return cls(x * x, 0 if x >= 0 else 2)

    def is_zero(self) -> bool:
        return self.square == 0

    def abs2(self) -> Fraction:
        return self.square

    def __complex__(self):
        return (1j**self.phase) * math.sqrt(self.square)


class BinaryForm:
    """Degree-n binary form; coefficients are complex floats or exact Surds."""

    __slots__ = ("coeffs", "exact")

    def __init__(self, coeffs: Sequence, exact: Sequence[Surd] | None = None):
        arr = np.asarray([complex(c) for c in coeffs], dtype=complex)
        if arr.ndim != 1 or arr.size < 2:
            raise ValueError("a binary form needs at least two coefficients")
        if not np.any(arr):
            raise ValueError("the zero form is not a projective point")
        self.coeffs = arr
        self.exact = tuple(exact) if exact is not None else None

    @classmethod
    def exact_form(cls, values: Sequence) -> BinaryForm:
        surds = [Surd.of(v) for v in values]
        return cls([complex(s) for s in surds], surds)

    @property
    def degree(self) -> int:
        return self.coeffs.size - 1

    def unitary(self) -> np.ndarray:
        n = self.degree
        return self.coeffs / np.sqrt([math.comb(n, k) for k in range(n + 1)])

    def normalized(self) -> BinaryForm:
        u = self.unitary()
        return BinaryForm(self.coeffs / np.linalg.norm(u))

    def projectively_equal(self, other: BinaryForm, tol: float = 1e-12) -> bool:
        a = self.coeffs / np.linalg.norm(self.coeffs)
        b = other.coeffs / np.linalg.norm(other.coeffs)
        return abs(abs(np.vdot(a, b)) - 1) <= tol

    def __repr__(self):
        return f"BinaryForm({np.array2string(self.coeffs, precision=6)})"


CONFIGURATIONS = {
    "delta": BinaryForm.exact_form([1, 0, 3, 0]),
    "T": BinaryForm.exact_form([1, 0, Surd(12, 1), 0, 1]),
    "O": BinaryForm.exact_form([0, 1, 0, 0, 0, 1, 0]),
    "I": BinaryForm.exact_form([0, 1, 0, 0, 0, 0, 11, 0, 0, 0, 0, -1, 0]),
}

# Cube-roots-of-unity triangle; the displayed stabiliser and Pauli-type
# matrices are adapted to this representative of the same orbit.
DELTA_STANDARD = BinaryForm.exact_form([1, 0, 0, -1])


def configuration(name: str) -> BinaryForm:
    key = "delta" if name.lower() in ("delta", "δ", "d") else name.upper()
    try:
        return CONFIGURATIONS[key]
    except KeyError:
        raise KeyError(f"unknown configuration {name!r}") from None


# ---------------------------------------------------------------- moment map


def moment_map(form: BinaryForm, normalize: bool = True) -> np.ndarray:
    """su(2)-valued moment map; divided by |u|^2 when ``normalize``."""
    n = form.degree
    u = form.unitary()
    if normalize:
        # scale first so tiny coefficients do not underflow when squared
        u = u / np.abs(u).max()
    diag = sum((n - 2 * k) * abs(u[k]) ** 2 for k in range(n + 1))
    off = sum(math.sqrt((k + 1) * (n - k)) * u[k] * np.conj(u[k + 1]) for k in range(n))
    m = np.array([[1j * diag, 2j * off], [2j * np.conj(off), -1j * diag]])
    if normalize:
        m = m / np.sum(np.abs(u) ** 2)
    return m


def moment_map_exact(form: BinaryForm) -> Fraction | None:
    """Exact diagonal coefficient when every adjacent product vanishes.

    Returns d with moment map diag(i d, -i d), or None if the fast path does
    not apply.
    """
    if form.exact is None:
        return None
    ex = form.exact
    if any(not ex[k].is_zero() and not ex[k + 1].is_zero() for k in range(len(ex) - 1)):
        return None
    n = len(ex) - 1
    return sum((Fraction(n - 2 * k, math.comb(n, k)) * ex[k].abs2() for k in range(n + 1)), Fraction(0))


def moment_norm(form: BinaryForm) -> float:
    return float(np.abs(moment_map(form)).max())


def verify_lagrangian_orbit(name: str) -> bool:
    form = configuration(name)
    exact = moment_map_exact(form)
    if exact is not None:
        return exact == 0
    return moment_norm(form) <= DET_TOL


# ---------------------------------------------------------------- SL(2) action


def check_group_element(g, tol: float = DET_TOL) -> np.ndarray:
    g = np.asarray(g, dtype=complex)
    if g.shape != (2, 2):
        raise ValueError("group elements are 2x2 matrices")
    if abs(np.linalg.det(g) - 1) > tol:
        raise ValueError(f"det g = {np.linalg.det(g)} is not 1")
    return g


def _linear_power(lin: np.ndarray, k: int) -> np.ndarray:
    out = np.array([1 + 0j])
    for _ in range(k):
        out = np.convolve(out, lin)
    return out


def act(g, form: BinaryForm) -> BinaryForm:
    """Substitute x -> g11 x + g21 y, y -> g12 x + g22 y."""
    g = check_group_element(g)
    n = form.degree
    lx = np.array([g[0, 0], g[1, 0]])
    ly = np.array([g[0, 1], g[1, 1]])
    out = np.zeros(n + 1, dtype=complex)
    for k, c in enumerate(form.coeffs):
        if c:
            out += c * np.convolve(_linear_power(lx, n - k), _linear_power(ly, k))
    return BinaryForm(out)


def sym3_action(g, form: BinaryForm) -> BinaryForm:
    if form.degree != 3:
        raise ValueError("sym3_action expects a cubic form")
    return act(g, form)


def discriminant_cubic(v) -> complex:
    """Discriminant of a x^3 + b x^2 y + c x y^2 + d y^3."""
    coeffs = v.coeffs if isinstance(v, BinaryForm) else v
    a, b, c, d = coeffs
    return 18 * a * b * c * d - 4 * b**3 * d + b**2 * c**2 - 4 * a * c**3 - 27 * a**2 * d**2


# ---------------------------------------------------------------- Pauli-type matrices

SIGMA = {
    1: np.array([[1j, 0], [0, -1j]]),
    2: np.array([[0, 1], [-1, 0]], dtype=complex),
    3: np.array([[0, 1j], [1j, 0]]),
}


def expm_traceless(A) -> np.ndarray:
    """exp(A) for traceless 2x2 A: cosh(r) I + sinh(r)/r A with r^2 = -det A."""
    A = np.asarray(A, dtype=complex)
    r = cmath.sqrt(-np.linalg.det(A))
    ident = np.eye(2, dtype=complex)
    if abs(r) < 1e-8:
        return ident + A + A @ A / 2
    return cmath.cosh(r) * ident + (cmath.sinh(r) / r) * A


def one_parameter(sigma: np.ndarray, d: float, theta: float) -> np.ndarray:
    return expm_traceless(theta * sigma / d)


def gamma_delta() -> list[tuple[np.ndarray, int]]:
    """The 12 elements of the stabiliser of DELTA_STANDARD with their image in Z/4."""
    out = []
    for k in range(6):
        w = cmath.exp(1j * math.pi * k / 3)
        out.append((np.diag([w, w.conjugate()]), (2 * k) % 4))
        out.append((np.array([[0, 1j * w.conjugate()], [1j * w, 0]]), (1 + 2 * k) % 4))
    return out


def h1_class(g, tol: float = 1e-9) -> int:
    """Class in H_1(L) = Z/4 of the loop from the identity to g in the stabiliser."""
    g = np.asarray(g, dtype=complex)
    for gamma, cls in gamma_delta():
        if np.abs(gamma - g).max() <= tol:
            return cls
    raise ValueError("matrix is not in the stabiliser")


def _mobius_from_points(src, dst) -> np.ndarray:
    def to_standard(z1, z2, z3):
        # z1 -> 0, z2 -> 1, z3 -> infinity
        return np.array([[z2 - z3, -z1 * (z2 - z3)], [z2 - z1, -z3 * (z2 - z1)]], dtype=complex)

    m = np.linalg.inv(to_standard(*dst)) @ to_standard(*src)
    return m / cmath.sqrt(np.linalg.det(m))


def _roots_affine(form: BinaryForm) -> list[complex]:
    # roots x/y of sum v_k x^(n-k) y^k; assumes no root at infinity
    return list(np.roots(form.coeffs))


def frame_rotation() -> np.ndarray:
    """g0 in SU(2) with g0 . DELTA_STANDARD proportional to the printed Delta."""
    src = _roots_affine(DELTA_STANDARD)
    dst = _roots_affine(CONFIGURATIONS["delta"])
    target = CONFIGURATIONS["delta"]
    for perm in itertools.permutations(dst):
        M = _mobius_from_points(src, perm)
        if np.abs(M @ M.conj().T - np.eye(2)).max() > 1e-9:
            continue
        # roots of g.p are g^{-T} applied to roots of p
        g = np.linalg.inv(M).T
        if act(g, DELTA_STANDARD).projectively_equal(target, 1e-12):
            return g
    raise AssertionError("no rotation aligns the two triangle representatives")


# ---------------------------------------------------------------- axial discs

AXIAL = {
    "maslov2": (3, 4.0),
    "maslov4": (1, 6.0),
}


class DiscSample(NamedTuple):
    kind: str
    thetas: np.ndarray
    forms: list[BinaryForm]
    exponent_shift: float
    monodromy: np.ndarray  # R(2 pi), acting on vertices

    @property
    def boundary(self) -> list[tuple[float, BinaryForm]]:
        return list(zip(self.thetas, self.forms))


def lie_action_matrix(X, n: int) -> np.ndarray:
    """Derivative at t=0 of act(exp(tX)) on degree-n forms (column k = image of x^(n-k) y^k)."""
    X = np.asarray(X, dtype=complex)
    A = np.zeros((n + 1, n + 1), dtype=complex)
    for k in range(n + 1):
        # (X11 x + X21 y) d/dx + (X12 x + X22 y) d/dy
        A[k, k] += (n - k) * X[0, 0] + k * X[1, 1]
        if k < n:
            A[k + 1, k] += (n - k) * X[1, 0]
        if k > 0:
            A[k - 1, k] += k * X[0, 1]
    return A


def _generator_weights(X: np.ndarray, form: BinaryForm) -> np.ndarray:
    """Weights lambda with exp(t X) acting as e^{i lambda t} on the components of ``form``."""
    vals, vecs = np.linalg.eig(lie_action_matrix(X, form.degree))
    comps = np.linalg.solve(vecs, form.coeffs)
    present = np.abs(comps) > 1e-9 * np.abs(comps).max()
    return (vals[present] / 1j).real


def rotate_roots(g, form: BinaryForm) -> BinaryForm:
    """Move the roots of ``form`` (points of CP^1) by g; under ``act`` roots move by g^{-T}."""
    return act(np.linalg.inv(check_group_element(g)).T, form)


def axial_disc(kind: str, samples: int = 1024, frame: str = "standard") -> DiscSample:
    """Boundary of the axial disc, z = e^{i theta}, holomorphically lifted to C^4.

    The boundary loop rotates the vertices of the base triangle by
    exp(theta * sigma / d). On forms this is act(exp(theta * Y)) with
    Y = -sigma^T / d; multiplying by e^{i c theta}, c = -(smallest weight of Y
    on the base), turns the lift into a polynomial in z, so the argument
    principle applies to its discriminant. ``frame="printed"`` moves the whole
    loop to the printed Delta.
    """
    if kind not in AXIAL:
        raise ValueError(f"unknown disc kind {kind!r}; expected one of {sorted(AXIAL)}")
    if samples < 256:
        raise ValueError("need at least 256 samples")
    if frame not in ("standard", "printed"):
        raise ValueError(f"unknown frame {frame!r}")
    idx, d = AXIAL[kind]
    X = SIGMA[idx] / d
    Y = -X.T
    base = DELTA_STANDARD
    c = -float(np.min(_generator_weights(Y, base)))
    thetas = np.linspace(0.0, 2 * math.pi, samples + 1)
    g0 = frame_rotation() if frame == "printed" else np.eye(2, dtype=complex)
    forms = []
    for t in thetas:
        forms.append(BinaryForm(cmath.exp(1j * c * t) * act(g0 @ expm_traceless(t * Y), base).coeffs))
    return DiscSample(kind, thetas, forms, c, expm_traceless(2 * math.pi * X))


def boundary_moment_error(disc: DiscSample) -> float:
    return max(moment_norm(f) for f in disc.forms)


def loop_closes(disc: DiscSample, tol: float = 1e-9) -> bool:
    return np.abs(disc.forms[-1].coeffs - disc.forms[0].coeffs).max() <= tol


def constant_disc(samples: int = 1024) -> DiscSample:
    thetas = np.linspace(0.0, 2 * math.pi, samples + 1)
    return DiscSample("constant", thetas, [DELTA_STANDARD] * len(thetas), 0.0, np.eye(2, dtype=complex))


class Winding(NamedTuple):
    winding: float
    maslov: int


def winding_number(values: Sequence[complex], min_abs: float = 1e-9) -> float:
    values = np.asarray(values, dtype=complex)
    if np.min(np.abs(values)) < min_abs:
        raise ValueError("loop passes (numerically) through zero")
    steps = np.angle(values[1:] / values[:-1])
    if np.max(np.abs(steps)) > math.pi / 2:
        raise ValueError("argument jumps too far between samples; increase the sample count")
    return float(np.sum(steps) / (2 * math.pi))


def maslov_via_winding(disc: DiscSample, tol: float = WINDING_TOL) -> Winding:
    """Twice the number of zeros of discriminant(u) inside the disc."""
    w = winding_number([discriminant_cubic(f) for f in disc.forms])
    k = round(w)
    if abs(w - k) > tol:
        raise ValueError(f"winding {w} is not within {tol} of an integer")
    return Winding(w, 2 * k)


# ---------------------------------------------------------------- secant projection


class Projection(NamedTuple):
    point: np.ndarray | None

    @property
    def indeterminate(self) -> bool:
        return self.point is None


def secant_projection(u, tol: float = 1e-12) -> Projection:
    u0, u1, u2, u3 = (complex(x) for x in (u.coeffs if isinstance(u, BinaryForm) else u))
    p = np.array([u0 * u2 - u1 * u1, u0 * u3 - u1 * u2, u1 * u3 - u2 * u2])
    scale = max(1.0, max(abs(x) for x in (u0, u1, u2, u3)) ** 2)
    if np.abs(p).max() <= tol * scale:
        return Projection(None)
    return Projection(p)


def twisted_cubic_coordinates(form: BinaryForm) -> np.ndarray:
    """Divide by binomial coefficients so that (s x + t y)^3 maps to (s^3, s^2 t, s t^2, t^3)."""
    n = form.degree
    return form.coeffs / np.array([math.comb(n, k) for k in range(n + 1)])


def realness_residual(p: np.ndarray) -> float:
    """Distance of [p] from a real point: |p x conj(p)| after normalising."""
    q = p / np.linalg.norm(p)
    k = int(np.argmax(np.abs(q)))
    q = q * (abs(q[k]) / q[k])
    return float(np.abs(q.imag).max())


# ---------------------------------------------------------------- torus intersection


class CircleFamily(NamedTuple):
    theta1: float
    theta2: float
    theta3: float
    residual: float

    def point(self, phi: float = 0.0) -> np.ndarray:
        """Unitary coordinates of the point of the family at rotation phi."""
        a, b, c = self.theta1 + phi, self.theta2 + phi, self.theta3 + phi
        return np.exp(-1j * np.array([0.0, a, a + b, a + b + c]))


class IntersectionResult(NamedTuple):
    families: list[CircleFamily]
    perturbed_count: int


def _torus_equation(th):
    t1, t3 = th
    z = math.sqrt(3) * cmath.exp(1j * t1) + 2 + math.sqrt(3) * cmath.exp(1j * t3)
    return [z.real, z.imag]


def _wrap(t: float) -> float:
    return (t + math.pi) % (2 * math.pi) - math.pi


def torus_chiang_intersection(grid: int = 8, tol: float = RESIDUAL_TOL) -> IntersectionResult:
    """Clifford torus meets the Chiang Lagrangian; theta2 is rotated to 0."""
    found: list[CircleFamily] = []
    starts = np.linspace(-math.pi, math.pi, grid, endpoint=False) + 0.1
    for s1, s3 in itertools.product(starts, starts):
        sol = root(_torus_equation, [s1, s3], tol=1e-14)
        if not sol.success:
            continue
        t1, t3 = (_wrap(float(x)) for x in sol.x)
        res = float(np.hypot(*_torus_equation((t1, t3))))
        if res > tol:
            continue
        if any(abs(_wrap(t1 - f.theta1)) < 1e-7 and abs(_wrap(t3 - f.theta3)) < 1e-7 for f in found):
            continue
        found.append(CircleFamily(t1, 0.0, t3, res))
    if not found:
        raise RuntimeError("root finder did not converge from any start")
    found.sort(key=lambda f: f.theta1)
    # each circle carries a perfect Morse function with two critical points
    return IntersectionResult(found, 2 * len(found))


def torus_point_form(family: CircleFamily, phi: float = 0.0) -> BinaryForm:
    u = family.point(phi)
    return BinaryForm(u * np.sqrt([math.comb(3, k) for k in range(4)]))


# ---------------------------------------------------------------- bookkeeping


class Bookkeeping(NamedTuple):
    mu_tilde_eq1: int
    mu_tilde_eq2: Fraction
    consistent: bool


def maslov_bookkeeping(mu_u: int, dot_E: int, mu_proj: int) -> Bookkeeping:
    """Compare mu(u~) = mu(u) - 2 [u~].E with mu(u~) = 2 [u~].E + (2/3) mu(p(u~))."""
    eq1 = int(mu_u) - 2 * int(dot_E)
    eq2 = 2 * int(dot_E) + Fraction(2, 3) * int(mu_proj)
    return Bookkeeping(eq1, eq2, eq1 == eq2)


CASE_B_MATRIX = ((4, 4, 1, 2), (2, 1, 0, 1), (0, 1, 1, 0), (0, 1, 0, 0))
CASE_B_RHS = (0, 0, 1, 1)


class Inconsistency(NamedTuple):
    rank: int
    augmented_rank: int
    certificate: tuple[Fraction, ...]
    certificate_value: Fraction

    @property
    def inconsistent(self) -> bool:
        return self.augmented_rank > self.rank


def case_b_contradiction(A=CASE_B_MATRIX, b=CASE_B_RHS) -> Inconsistency:
    """Rank test plus a vector y with y A = 0 and y b != 0 (unknowns a, b, c, d)."""
    M = ExactMatrix(A, QQ)
    aug = ExactMatrix([list(r) + [v] for r, v in zip(A, b)], QQ)
    r, ra = M.rank(), aug.rank()
    cert: tuple[Fraction, ...] = ()
    value = Fraction(0)
    for y in M.T.nullspace():
        val = sum((Fraction(yi) * bi for yi, bi in zip(y, b)), Fraction(0))
        if val:
            cert, value = tuple(Fraction(v) for v in y), val
            break
    return Inconsistency(r, ra, cert, value)

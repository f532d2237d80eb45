"""The verification suite behind ``pearllab verify-all``.

Each check returns one record; ``expected`` is what the published statement
says and ``computed`` is what this package derives. Status "flagged" marks a
known misprint where the computed value is reported instead.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass
from itertools import product
from typing import Callable, Iterator

from . import clifford, geom, pearl, quantum, rh
from .complexes import homology_over_Z, verify_d_squared
from .config import Settings
from .exact import format_poly, poly_eval, prime_divisors, smith_normal_form

PASS, FAIL, FLAGGED = "pass", "fail", "flagged"


@dataclass(frozen=True)
class CheckRecord:
    id: str
    anchor: str
    status: str
    computed: str
    expected: str
    tolerance: str

    def to_dict(self) -> dict[str, str]:
        return asdict(self)


def _rec(id_, anchor, ok, computed, expected, tol="exact") -> CheckRecord:
    return CheckRecord(id_, anchor, PASS if ok else FAIL, str(computed), str(expected), tol)


def _fmt_float(x: float) -> str:
    return f"{x:.1e}"


def _set(s) -> str:
    return "{" + ",".join(str(v) for v in sorted(s)) + "}"


def fourth_roots_of_unity(p: int) -> list[int]:
    return [z for z in range(1, p) if pow(z, 4, p) == 1]


REALIZED = [s for s in pearl.ALL_SIGNS if s.realized]


# ---------------------------------------------------------------- Morse and Floer


def check_morse() -> Iterator[CheckRecord]:
    M = pearl.morse_matrix()
    snf = smith_normal_form(M)
    diag = [snf.D[i, i] for i in range(3)]
    yield _rec("01.morse-snf", r"H_1(L_C;\mathbf{Z})=\mathbf{Z}/\ell_C", diag == [1, 1, 4], f"diag{tuple(diag)}", "diag(1, 1, 4)")
    h = homology_over_Z(pearl.morse_complex())
    yield _rec(
        "01.morse-cohomology",
        r"H_1(L_C;\mathbf{Z})=\mathbf{Z}/\ell_C",
        (str(h.even), str(h.odd)) == ("Z + Z/4", "Z"),
        f"even {h.even}; odd {h.odd}",
        "even Z + Z/4; odd Z",
    )
    row2 = M.row(1)
    yield CheckRecord(
        "01.morse-x2-row",
        "dx_2'&=2x_1+x_2+x_2",
        FLAGGED,
        "dx_2' = " + " + ".join(f"{c if c != 1 else ''}x_{j + 1}" for j, c in enumerate(row2) if c),
        "2x_1 + x_2 + x_2 as printed",
        "exact",
    )


def check_floer_Z() -> Iterator[CheckRecord]:
    got = {}
    for s in REALIZED:
        h = pearl.floer_cohomology(s, 1, 0)
        got[str(s)] = f"{h.even}|{h.odd}"
    ok = all(v == "Z/5|0" for v in got.values())
    yield _rec(
        "02.floer-Z",
        r"HF^0(L_{\Delta},L_{\Delta};\mathbf{Z})\cong\mathbf{Z}/5",
        ok,
        "; ".join(f"({k}): HF^0={v.split('|')[0]}, HF^1={v.split('|')[1]}" for k, v in got.items()),
        "HF^0 = Z/5, HF^1 = 0 whenever XY = Z",
    )
    dsq = all(verify_d_squared(pearl.build_chiang_complex(s, z)) for s, z in product(pearl.ALL_SIGNS, (1, 2, 3, 4)))
    yield _rec("02.d-squared", "d_Fm=Y(x_1+x_2+x_3)+2Zm'", dsq, "d^2 = 0 in all 32 cases" if dsq else "d^2 != 0", "d^2 = 0")


def check_determinants() -> Iterator[CheckRecord]:
    rows = pearl.det_formula_scan()
    ok = all(abs(r.det) == r.zeta**2 * abs(r.signs.formula_value()) for r in rows)
    yield _rec("03.det-identity", "8Z-3XY", ok and len(rows) == 32, f"{len(rows)} cases, |det| = zeta^2 |8Z-3XY|", "32 cases")
    values = {abs(r.det) for r in rows}
    expected = {5, 11, 20, 44, 45, 80, 99, 176}
    yield _rec("03.det-values", "8Z-3XY", values == expected, _set(values), _set(expected))
    base = {abs(r.det) for r in rows if r.zeta == 1}
    yield _rec("03.det-zeta1", "8Z-3XY", base == {5, 11}, _set(base), "{5,11}")


def check_field_coefficients() -> Iterator[CheckRecord]:
    f5 = {(str(s), z): tuple(pearl.floer_cohomology(s, z, 5)) for s in REALIZED for z in fourth_roots_of_unity(5)}
    yield _rec(
        "04.floer-F05",
        "8Z-3XY",
        set(f5.values()) == {(1, 1)},
        ", ".join(f"({a},{b})" for a, b in sorted(set(f5.values()))),
        "(1,1) for every zeta",
    )
    for p in (2, 3, 7, 11):
        ranks = {tuple(pearl.floer_cohomology(s, z, p)) for s in REALIZED for z in fourth_roots_of_unity(p)}
        yield _rec(
            f"04.floer-F{p:02d}",
            r"p\neq 5",
            ranks == {(0, 0)},
            ", ".join(f"({a},{b})" for a, b in sorted(ranks)),
            "(0,0)",
        )


def check_eigenvalues() -> Iterator[CheckRecord]:
    D = quantum.get_presentation("delta")
    chi3 = poly_eval(quantum.c1_char_poly(D), 3)
    primes = prime_divisors(chi3)
    yield _rec("05.chi-delta-at-3", r"3^4-256=-5^2\times 7", chi3 == -175 and primes == {5, 7}, f"{chi3}, primes {_set(primes)}", "-175, primes {5,7}")
    spec = quantum.spectrum_mod_p(D, 5)
    yield _rec("05.spectrum-delta-F5", r"Spec(c_1\star) = \{1,2,3,4\}", spec == {1, 2, 3, 4}, _set(spec), "{1,2,3,4}")
    m0 = {int(pearl.m0_chiang(z)) for z in range(1, 5)}
    yield _rec("05.m0-values", r"\mathfrak{m}_0(L_{\Delta},\zeta)=3\zeta\in\mathbf{Z}/5", m0 == {1, 2, 3, 4}, _set(m0), "{1,2,3,4}")


def check_char_polys() -> Iterator[CheckRecord]:
    anchors = {"delta": r"\lambda^4-256", "T": r"\lambda(\lambda^3-108)", "I": "λ⁴−4λ³−88λ²−300λ−304"}
    for name, anchor in anchors.items():
        computed, published, equal = quantum.compare_with_published(name)
        yield _rec(f"06.charpoly-{name}", anchor, equal, format_poly(computed), format_poly(published))
    computed, published, equal = quantum.compare_with_published("O")
    yield CheckRecord("06.charpoly-O", "λ⁴−44λ−16", FLAGGED if not equal else PASS, format_poly(computed), format_poly(published), "exact")
    even = quantum.is_even_polynomial(computed)
    yield _rec("06.charpoly-O-even", "c₁ = 2H", even, "even" if even else "not even", "even polynomial")


# ---------------------------------------------------------------- geometry


def check_moment_map() -> Iterator[CheckRecord]:
    for name in ("delta", "T", "O", "I"):
        val = geom.moment_map_exact(geom.configuration(name))
        yield _rec(f"07.moment-{name}", r"L_C=\mu_n^{-1}(0)", val == 0, f"diag coefficient {val}", "0")
    norm = geom.moment_norm(geom.BinaryForm([1, 0, 3, 0.1]))
    yield _rec("07.moment-perturbed", r"\Delta =[1:0:3:0]", norm > 1e-3, _fmt_float(norm), "> 1e-3", "1e-3")


def check_discs(settings: Settings) -> Iterator[CheckRecord]:
    expected = {"maslov2": (2, 1, r"R_1(\theta)=\exp(\theta\sigma_3/4)"), "maslov4": (4, 2, r"R(\theta)=\exp(\theta\sigma_1/6)")}
    for kind, (mu, cls, anchor) in expected.items():
        d = geom.axial_disc(kind, settings.samples)
        w = geom.maslov_via_winding(d, settings.winding_tol)
        err = abs(w.winding - round(w.winding))
        yield _rec(f"08.disc-{kind}-index", anchor, w.maslov == mu, f"maslov {w.maslov}, winding off integer by {_fmt_float(err)}", f"maslov {mu}", f"{settings.winding_tol:g}")
        lag = geom.boundary_moment_error(d)
        yield _rec(f"08.disc-{kind}-lagrangian", anchor, lag <= settings.lagrangian_tol, _fmt_float(lag), f"<= {settings.lagrangian_tol:g}", f"{settings.lagrangian_tol:g}")
        h1 = geom.h1_class(d.monodromy)
        closed = geom.loop_closes(d)
        yield _rec(f"08.disc-{kind}-h1", r"R(2\pi)\in K_x", closed and h1 == cls, f"loop closes: {closed}; class {h1} in Z/4", f"class {cls} in Z/4")


def check_intersection(settings: Settings) -> Iterator[CheckRecord]:
    anchor = r"\sqrt{3}e^{i\theta_1}+2e^{i\theta_2}+\sqrt{3}e^{i\theta_3}=0"
    res = geom.torus_chiang_intersection(tol=settings.residual_tol)
    yield _rec("09.intersection-families", anchor, len(res.families) == 2, len(res.families), 2)
    worst = max(f.residual for f in res.families)
    yield _rec("09.intersection-residual", anchor, worst <= settings.residual_tol, _fmt_float(worst), f"<= {settings.residual_tol:g}", f"{settings.residual_tol:g}")
    yield _rec("09.intersection-perturbed", anchor, res.perturbed_count == 4, res.perturbed_count, 4)
    cosines = sorted({round(math.cos(f.theta1), 12) for f in res.families})
    yield CheckRecord(
        "09.intersection-theta1",
        "θ₁ = −θ₃ = ±cos⁻¹(1/√3)",
        FLAGGED,
        "cos θ_1 = " + ",".join(f"{c:.12f}" for c in cosines),
        f"cos θ_1 = {1 / math.sqrt(3):.12f} as printed",
        f"{settings.residual_tol:g}",
    )


# ---------------------------------------------------------------- algebra


def clifford_summary(zeta: int, p: int = 5, form: clifford.BilinearForm | None = None, seed: int = 0) -> dict[str, object]:
    form = form or clifford.chiang_form(zeta, p)
    alg = clifford.CliffordAlgebra(form)
    cen = clifford.center(alg)
    z = clifford.central_odd_element(alg)
    split = clifford.even_split(alg, seed)
    S = clifford.induce_graded_spin(alg, split)
    ext = clifford.ext_presentation(S, zeta)
    return {
        "center_dim": len(cen),
        "center_parities": clifford.homogeneous_parities(cen),
        "supercenter_dim": len(clifford.supercenter(alg)),
        "z_squared": z.z_squared,
        "z_squared_over_zeta3_class": clifford.square_class(z.z_squared * pow(zeta, -3, p), p),
        "even_module_dim": split.module_dim,
        "spin_degrees": S.degrees,
        "hom": clifford.graded_hom(S, S),
        "ext_constant": ext.c,
        "ext_class": ext.square_class,
        "zeta3_class": ext.zeta_cubed_class,
        "hochschild": clifford.hochschild_low(alg),
    }


def check_clifford(settings: Settings) -> Iterator[CheckRecord]:
    for zeta in (1, 2, 3, 4):
        s = clifford_summary(zeta, seed=settings.seed)
        ok = (
            s["center_dim"] == 2
            and 1 in s["center_parities"]
            and s["supercenter_dim"] == 1
            and s["z_squared_over_zeta3_class"] == 1
            and s["even_module_dim"] == 2
            and s["spin_degrees"] == (0, 0, 1, 1)
            and s["hom"] == (1, 1)
            and s["ext_class"] == s["zeta3_class"]
            and s["hochschild"] == (1, 0)
        )
        computed = (
            f"center {s['center_dim']} (odd part present: {1 in s['center_parities']}), supercenter {s['supercenter_dim']}, "
            f"z^2={s['z_squared']}, Cl^0 module {s['even_module_dim']}, spin degrees {s['spin_degrees']}, "
            f"Hom {s['hom']}, ext c={s['ext_constant']} class {s['ext_class']:+d}, HH {s['hochschild']}"
        )
        expected = (
            f"center 2 with odd element, supercenter 1, z^2 ~ zeta^3, Cl^0 module 2, spin degrees (0, 0, 1, 1), "
            f"Hom (1, 1), ext class {s['zeta3_class']:+d}, HH (1, 0)"
        )
        yield _rec(f"10.clifford-zeta{zeta}", r"\mathbf{F}[x]/ (x^2- \zeta^3)", ok, computed, expected)
    ext_alg = clifford.CliffordAlgebra(clifford.BilinearForm.zero(3, 5))
    hh0 = clifford.hochschild_low(ext_alg)[0]
    yield _rec("10.clifford-zero-form", "HH⁰ = 8", hh0 == 8, f"HH^0 = {hh0}", "HH^0 = 8")


def check_rh() -> Iterator[CheckRecord]:
    bad = 0
    total = 0
    for n in range(1, 5):
        for kappa in product(range(-5, 6), repeat=n):
            total += 1
            d = rh.oh_dimensions(kappa)
            if d.ker - d.coker != d.index or d.index != sum(kappa) + n:
                bad += 1
    yield _rec("11.rh-index", r"\mu(F)+n", bad == 0, f"{total} vectors, {bad} violations", "0 violations")
    cases = rh.enumerate_cases(4, 3)
    expected = [(0, 0, 4), (0, 1, 3), (0, 2, 2), (1, 1, 2)]
    yield _rec("11.rh-cases", "(d) 1 1 2", cases == expected, cases, expected)
    grid = [2 * math.pi * k / 64 for k in range(64)]
    smallest = min(abs(rh.kappa1_evaluation(a, b)[1]) for a in grid for b in grid if a != b)
    ok = smallest > 1e-12 and all(abs(rh.kappa1_evaluation(a, a)[1]) <= 1e-12 for a in grid)
    yield _rec("11.rh-kappa1", r"cz+\bar{c}", ok, f"min |det| off diagonal {smallest:.6f}", "> 1e-12", "1e-12")


def check_case_b() -> Iterator[CheckRecord]:
    cert = geom.case_b_contradiction()
    yield _rec(
        "12.case-b",
        "2b+c=0",
        cert.inconsistent,
        f"rank {cert.rank}, augmented rank {cert.augmented_rank}, y = {tuple(str(v) for v in cert.certificate)}, y.b = {cert.certificate_value}",
        "augmented rank exceeds rank",
    )


CHECK_GROUPS: list[Callable[..., Iterator[CheckRecord]]] = [
    lambda s: check_morse(),
    lambda s: check_floer_Z(),
    lambda s: check_determinants(),
    lambda s: check_field_coefficients(),
    lambda s: check_eigenvalues(),
    lambda s: check_char_polys(),
    lambda s: check_moment_map(),
    check_discs,
    check_intersection,
    check_clifford,
    lambda s: check_rh(),
    lambda s: check_case_b(),
]


def run_all(settings: Settings | None = None) -> list[CheckRecord]:
    settings = settings or Settings()
    records = [r for group in CHECK_GROUPS for r in group(settings)]
    ids = [r.id for r in records]
    if len(set(ids)) != len(ids):
        raise AssertionError("duplicate check ids")
    return sorted(records, key=lambda r: r.id)


def to_json(records: list[CheckRecord]) -> str:
    return json.dumps([r.to_dict() for r in records], ensure_ascii=False, indent=2) + "\n"


def to_table(records: list[CheckRecord]) -> str:
    width = max(len(r.id) for r in records)
    lines = [f"{'id'.ljust(width)}  status   computed  [expected]"]
    for r in records:
        lines.append(f"{r.id.ljust(width)}  {r.status.ljust(7)}  {r.computed}  [{r.expected}]")
    return "\n".join(lines) + "\n"


def exit_code(records: list[CheckRecord]) -> int:
    return 1 if any(r.status == FAIL for r in records) else 0

"""Identity verification suites behind the CLI.

Each suite returns a list of :class:`CheckResult`; every entry states the
identity it checks, the sample count, the worst residual and the tolerance
it was held to.  All sampling is driven by a seeded generator so failures
reproduce.
"""

from __future__ import annotations

import cmath
import math
import time
from dataclasses import dataclass, field, asdict

import numpy as np

from .branch import factorizable, principal_arg, principal_pow, in_cut_plane
from .config import DEFAULTS, Settings
from .errors import DegenerateBijectionError
from .forms import (
    MaassForm,
    delta_coefficients,
    delta_form,
    dslash,
    maass_laplacian_fd,
    maass_lower,
    maass_raise,
    slash,
    surrogate_form,
    two_sided_surrogate,
)
from .kernel import (
    CallableSection,
    RKernel,
    eta_form,
    eta_form_many,
    r_transform_check,
)
from .modgroup import (
    INFINITY,
    MINUS_ONE,
    S,
    T,
    T_PRIME,
    GeneratorWord,
    GroupElement,
    decompose,
    has_nonnegative_entries,
    moebius,
    mu,
)
from .multiplier import MultiplierSystem, construct_eta_power, construct_trivial
from .periods import (
    BijectionConstants,
    NearlyPeriodicFunction,
    PeriodFunction,
    P_to_f,
    derived_period,
    eichler_f,
    eichler_polynomial,
    arc_ray_integrand_kernel_raised,
    eta_integrand_form_raised,
    eta_integrand_kernel_raised,
    f_to_P,
    growth_check,
    synthetic_nearly_periodic,
)
from .quadrature import GeodesicPath, geodesic_image, integrate_form, integrate_ray

__all__ = ["CheckResult", "VerificationReport", "run_suite", "SUITES"]


@dataclass
class CheckResult:
    identity: str
    statement: str
    samples: int
    max_residual: float
    tolerance: float
    passed: bool = field(init=False)
    note: str = ""

    def __post_init__(self):
        self.passed = bool(self.max_residual <= self.tolerance)


@dataclass
class VerificationReport:
    suite: str
    entries: list
    wall_time: float

    @property
    def passed(self) -> bool:
        return all(e.passed for e in self.entries)

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "pass": self.passed,
            "wall_time_seconds": self.wall_time,
            "entries": [asdict(e) for e in sorted(self.entries, key=lambda e: e.identity)],
        }


def _random_words(rng, count, max_len=12):
    out = []
    for _ in range(count):
        m = GroupElement(1, 0, 0, 1)
        for _ in range(rng.integers(1, max_len + 1)):
            if rng.random() < 0.5:
                m = m * S
            else:
                m = m * GroupElement(1, int(rng.integers(-3, 4)), 0, 1)
        out.append(m)
    return out


def _random_h(rng, count):
    return rng.uniform(-2, 2, count) + 1j * rng.uniform(0.2, 3.0, count)


# ---------------------------------------------------------------------------
# branch suite


def suite_branch(settings: Settings, rng) -> list:
    checks = []

    zs = _random_h(rng, 200) * np.exp(1j * rng.uniform(-3, 3, 200))
    res = max(
        max(abs(principal_pow(z, 1) - z) / abs(z) for z in zs if z != 0),
        max(abs(principal_pow(z, 0) - 1) for z in zs if z != 0),
    )
    checks.append(
        CheckResult(
            "branch.pow-unit-exponents",
            "z^1 = z and z^0 = 1 on the principal branch",
            400,
            res,
            1e-13,
        )
    )

    worst = 0.0
    n_pairs = 0
    for _ in range(100):
        if rng.random() < 0.5:
            z = complex(rng.uniform(0.1, 4.0))
            w = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
            if w == 0:
                continue
        else:
            z = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
            if z == 0 or (z.imag == 0 and z.real <= 0):
                continue
            w = complex(rng.uniform(0.1, 3.0)) * z.conjugate()
        if not factorizable(z, w):
            continue
        n_pairs += 1
        for _ in range(10):
            alpha = complex(rng.uniform(-3, 3), rng.uniform(-3, 3))
            if abs(alpha) > 3:
                alpha = 3 * alpha / abs(alpha)
            lhs = principal_pow(z * w, alpha)
            rhs = principal_pow(z, alpha) * principal_pow(w, alpha)
            worst = max(worst, abs(lhs - rhs) / abs(lhs))
    checks.append(
        CheckResult(
            "branch.factorization",
            "(z w)^a = z^a w^a whenever the factorization predicate holds",
            n_pairs * 10,
            worst,
            1e-13,
        )
    )

    neg = abs(principal_pow(-1.0, 0.5) - 1j)
    checks.append(
        CheckResult(
            "branch.negative-axis",
            "arg(-1) = +pi so (-1)^(1/2) = i",
            1,
            max(neg, abs(principal_arg(-1.0) - math.pi)),
            1e-15,
        )
    )

    worst = 0.0
    for z in zs:
        if z == 0 or (z.imag == 0 and z.real < 0):
            continue
        worst = max(worst, abs(principal_arg(z.conjugate()) + principal_arg(z)))
    checks.append(
        CheckResult(
            "branch.arg-conjugation",
            "arg(conj z) = -arg(z) off the cut",
            len(zs),
            worst,
            1e-15,
        )
    )

    bad = abs(principal_pow((-1.0) * (-1.0), 0.5) - principal_pow(-1.0, 0.5) ** 2)
    checks.append(
        CheckResult(
            "branch.counterexample",
            "two negative reals are not factorizable and the identity indeed fails",
            1,
            0.0 if (not factorizable(-1.0, -1.0)) and bad > 1.9 else 1.0,
            0.5,
        )
    )
    return checks


# ---------------------------------------------------------------------------
# group suite


def suite_group(settings: Settings, rng) -> list:
    checks = []
    # the identities involve differences of size 1/|mu|^2, so keep entries
    # moderate or double rounding swamps the relative residual
    mats = [g for g in _random_words(rng, 2000) if g.max_entry() <= 25][:1000]
    zs = _random_h(rng, len(mats))
    worst = 0.0
    for g, z in zip(mats, zs):
        m = mu(g, z)
        gz = moebius(g, z)
        worst = max(worst, abs(gz.imag - z.imag / abs(m) ** 2) / (z.imag / abs(m) ** 2))
    for g, z in zip(mats, zs):
        zeta = z + 0.8 + 0.9j  # keep the difference away from rounding scale
        lhs = moebius(g, zeta) - moebius(g, z)
        rhs = (zeta - z) / (mu(g, zeta) * mu(g, z))
        worst = max(worst, abs(lhs - rhs) / max(abs(rhs), 1e-30))
    checks.append(
        CheckResult(
            "group.action-identities",
            "Im(gz) = Im z/|mu|^2 and g zeta - g z = (zeta - z)/(mu(g,zeta) mu(g,z))",
            2 * len(mats),
            worst,
            1e-12,
        )
    )

    fails = 0
    max_over = 0.0
    for g in _random_words(rng, 1000, max_len=20):
        word, sign = decompose(g)
        m = word.matrix()
        if sign == -1:
            m = -m
        if (m.a, m.b, m.c, m.d) != (g.a, g.b, g.c, g.d):
            fails += 1
        bound = 6.0 * (1.0 + math.log2(max(1, g.max_entry())))
        max_over = max(max_over, len(word) - bound)
    checks.append(
        CheckResult(
            "group.decompose-roundtrip",
            "sign * product(word) reproduces the matrix exactly",
            1000,
            float(fails),
            0.0,
        )
    )
    checks.append(
        CheckResult(
            "group.word-length",
            "token count <= 6 (1 + log2 max entry)",
            1000,
            max(0.0, max_over),
            0.0,
        )
    )

    violations = 0
    plus = []
    for _ in range(40):
        m = GroupElement(1, 0, 0, 1)
        for _ in range(4):
            m = m * (GroupElement(1, int(rng.integers(0, 3)), 0, 1) if rng.random() < 0.5 else T_PRIME)
        if has_nonnegative_entries(m):
            plus.append(m)
    points = rng.uniform(0.1, 3, 100) + 1j * rng.uniform(-2, 2, 100)
    for g in plus:
        for z in points:
            if not in_cut_plane(moebius(g, complex(z))):
                violations += 1
    checks.append(
        CheckResult(
            "group.cut-plane-monoid",
            "nonnegative-entry matrices map the cut plane into itself",
            len(plus) * len(points),
            float(violations),
            0.0,
        )
    )

    ok = (
        abs(moebius(S, 1j) - 1j) < 1e-15
        and abs(moebius(T, 3 + 4j) - (4 + 4j)) < 1e-15
        and abs(moebius(S, INFINITY) - 0.0) < 1e-15
        and moebius(T, INFINITY) is INFINITY
    )
    checks.append(
        CheckResult(
            "group.moebius-examples",
            "S fixes i, T translates, S sends infinity to 0",
            4,
            0.0 if ok else 1.0,
            0.0,
        )
    )
    return checks


# ---------------------------------------------------------------------------
# multiplier suite


def _b10_residual(v: MultiplierSystem, g, d, z) -> float:
    k = v.k
    lhs = v.evaluate(g * d) * cmath.exp(1j * k * principal_arg(mu(g * d, z)))
    rhs = (
        v.evaluate(g)
        * v.evaluate(d)
        * cmath.exp(1j * k * principal_arg(mu(g, moebius(d, z))))
        * cmath.exp(1j * k * principal_arg(mu(d, z)))
    )
    return abs(lhs - rhs)


def suite_multiplier(settings: Settings, rng, weight=None, kind="eta-power") -> list:
    checks = []
    weights = [weight] if weight is not None else ["1/2", "3/2", "12"]
    for wt in weights:
        v = construct_trivial(wt) if kind == "trivial" else construct_eta_power(wt)
        k = v.k
        label = str(wt)

        worst = 0.0
        count = 0
        mats = _random_words(rng, 1200)
        small = [g for g in mats if g.max_entry() <= 50]
        zs = _random_h(rng, 500)
        for i in range(500):
            g = small[i % len(small)]
            d = small[(2 * i + 1) % len(small)]
            worst = max(worst, _b10_residual(v, g, d, complex(zs[i])))
            count += 1
        checks.append(
            CheckResult(
                f"multiplier.consistency[k={label}]",
                "v(gd) e^{ik arg mu(gd,z)} = v(g) v(d) e^{ik arg mu(g,dz)} e^{ik arg mu(d,z)}",
                count,
                worst,
                1e-11,
            )
        )

        want = cmath.exp(-1j * k * math.pi)
        checks.append(
            CheckResult(
                f"multiplier.minus-one[k={label}]",
                "v((-1)) = e^{-ik pi}",
                1,
                abs(v.evaluate(MINUS_ONE) - want),
                1e-13,
            )
        )
        checks.append(
            CheckResult(
                f"multiplier.s-squared[k={label}]",
                "v(S)^2 = e^{-ik pi}",
                1,
                abs(v.v_s * v.v_s - want),
                1e-13,
            )
        )

        direct = v.evaluate_word(GeneratorWord((("T", 1), ("S", 1), ("T", 1))), 1)
        via_decompose = v.evaluate(T_PRIME)
        checks.append(
            CheckResult(
                f"multiplier.word-independence[k={label}]",
                "two words for the same element give the same value",
                1,
                abs(direct - via_decompose),
                1e-12,
            )
        )

        worst = 0.0
        for g in small[:40]:
            a = v.evaluate(g)
            b = v.evaluate(g, base_point=0.37 + 1.11j)
            worst = max(worst, abs(a - b))
        checks.append(
            CheckResult(
                f"multiplier.base-point[k={label}]",
                "folded values do not depend on the base point",
                40,
                worst,
                1e-12,
            )
        )
    return checks


# ---------------------------------------------------------------------------
# kernel suite


def suite_kernel(settings: Settings, rng) -> list:
    checks = []
    closed = RKernel(0.0, -0.5)
    pts = [(1j, 0.0, 1.0), (1j, 1.0, 0.5)]
    worst = 0.0
    for z, zeta, want in pts:
        worst = max(worst, abs(closed.eval(z, zeta) - want))
    for _ in range(20):
        z = complex(rng.uniform(-2, 2), rng.uniform(0.2, 2.5))
        zeta = float(rng.uniform(-3, 3))
        want = z.imag / ((z.real - zeta) ** 2 + z.imag**2)
        worst = max(worst, abs(closed.eval(z, zeta) - want) / abs(want))
    checks.append(
        CheckResult(
            "kernel.closed-form",
            "R_{0,-1/2}(z, zeta) = y / ((x - zeta)^2 + y^2)",
            22,
            worst,
            1e-12,
        )
    )

    worst = 0.0
    for _ in range(20):
        k = 0.5
        nu = 0.2
        ker = RKernel(k, nu)
        z = complex(rng.uniform(-2, 2), rng.uniform(0.2, 2.5))
        zeta = float(rng.uniform(-3, 3))
        direct = ker.eval(z, zeta)
        a = zeta - z
        b = zeta - z.conjugate()
        alt = cmath.exp(-1j * k * principal_arg(a)) * principal_pow(
            z.imag / (a * b), 0.5 - nu
        )
        worst = max(worst, abs(direct - alt) / abs(alt))
    z0, zeta0 = 1 + 1j, 0.0
    ker0 = RKernel(0.5, 0.2)
    a0, b0 = zeta0 - z0, zeta0 - z0.conjugate()
    alt0 = cmath.exp(-1j * 0.5 * principal_arg(a0)) * principal_pow(
        z0.imag / (a0 * b0), 0.3
    )
    worst = max(worst, abs(ker0.eval(z0, zeta0) - alt0) / abs(alt0))
    checks.append(
        CheckResult(
            "kernel.real-zeta-form",
            "for real zeta the kernel equals e^{-ik arg(zeta-z)} (y/((zeta-z)(zeta-zbar)))^{1/2-nu}",
            21,
            worst,
            1e-13,
        )
    )

    ker = RKernel(0.5, 0.31j)
    worst = 0.0
    n = 0
    # clause (1): mu(g, zeta) positive real
    for zeta in (2.0, 0.7, 3.5):
        for z in (1j, 0.4 + 1.3j, -0.2 + 0.8j):
            worst = max(worst, r_transform_check(ker, S, z, zeta))
            n += 1
    # translations are exact
    worst = max(worst, r_transform_check(ker, T, 0.3 + 0.9j, 0.2 + 1.1j))
    n += 1
    # clause (2): g z on the vertical ray above g zeta
    s_inv = S.inverse()
    for zeta in (1 + 1j, 0.5 + 0.6j):
        for t in (0.5, 1.7):
            gz = moebius(S, zeta) + 1j * t
            z = moebius(s_inv, gz)
            worst = max(worst, r_transform_check(ker, S, z, zeta))
            n += 1
    # clause (3): the mirror configuration below the axis
    for zeta in (1 - 1j, 0.5 - 0.6j):
        for t in (0.5, 1.7):
            gzbar = moebius(S, zeta.conjugate()) + 1j * t
            z = moebius(s_inv, gzbar).conjugate()
            worst = max(worst, r_transform_check(ker, S, z, zeta))
            n += 1
    checks.append(
        CheckResult(
            "kernel.transformation-law",
            "R(gz, g zeta) = e^{ik arg mu(g,z)} mu(g,zeta)^{1-2nu} R(z, zeta) under all three clauses",
            n,
            worst,
            1e-11,
        )
    )

    worst_lap = 0.0
    worst_eig = 0.0
    ker = RKernel(0.5, 0.31j)
    lam = 0.25 - ker.nu**2
    for _ in range(10):
        z = complex(rng.uniform(-1, 1), rng.uniform(0.5, 1.8))
        zeta = complex(rng.uniform(2.5, 4.0), rng.uniform(-0.5, 0.5))
        fn = lambda w: ker.eval(w, zeta)
        lap = maass_laplacian_fd(fn, ker.k, z)
        worst_lap = max(worst_lap, abs(lap - lam * fn(z)) / abs(lam * fn(z)))
        for sign in (+1, -1):
            op = maass_raise if sign > 0 else maass_lower
            fd = op(fn, z, k=ker.k)
            coeff = 1.0 - 2.0 * ker.nu + sign * ker.k
            closed_val = coeff * RKernel(ker.k + 2 * sign, ker.nu).eval(z, zeta)
            worst_eig = max(worst_eig, abs(fd - closed_val) / abs(closed_val))
    checks.append(
        CheckResult(
            "kernel.laplace-eigen",
            "the kernel is a (1/4 - nu^2)-eigenfunction of the weight-k Laplacian",
            10,
            worst_lap,
            1e-5,
        )
    )
    checks.append(
        CheckResult(
            "kernel.ladder-eigen",
            "E^{+-}_k shifts the kernel index by 2 with factor 1 - 2 nu +- k",
            20,
            worst_eig,
            1e-6,
        )
    )
    return checks


# ---------------------------------------------------------------------------
# Maass-Selberg suite


def _pullback_form(omega_fn, v_val, g, z):
    """(A, B) of a slashed 1-form: v^{-1} times the Moebius pullback at z."""
    gz = moebius(g, z)
    sample = omega_fn(gz)
    m = mu(g, z)
    return (
        sample.A / (v_val * m * m),
        sample.B / (v_val * m.conjugate() * m.conjugate()),
    )


def suite_ms(settings: Settings, rng, delta: MaassForm | None = None) -> list:
    checks = []
    delta = delta or delta_form(settings.q_terms)
    k, nu = delta.k, delta.nu

    kernel = RKernel(-k, nu)
    zeta = 3.0
    omega = eta_integrand_kernel_raised(delta, zeta)
    corners = [0.2 + 0.8j, 0.6 + 0.8j, 0.6 + 1.6j, 0.2 + 1.6j, 0.2 + 0.8j]
    loop = 0.0 + 0.0j
    scale = 0.0
    for p, q in zip(corners[:-1], corners[1:]):
        seg = integrate_form(omega, GeodesicPath.polyline([p, q]), tol=1e-12, settings=settings)
        loop += seg.value
        scale = max(scale, abs(seg.value))
    checks.append(
        CheckResult(
            "ms.closedness",
            "the Maass-Selberg form of two matched eigenfunctions is closed (loop integral vanishes)",
            4,
            abs(loop) / max(scale, 1e-30),
            1e-8,
        )
    )

    f = lambda z: complex(z).imag ** 0.3
    g_fn = lambda z: complex(z).imag ** 0.6
    kk = 0.5
    z0 = 0.3 + 1.1j
    lhs = eta_form(kk, f, g_fn, z0)
    rhs = eta_form(-kk, g_fn, f, z0)
    h = 1e-4
    d_z = (f(z0 + h) * g_fn(z0 + h) - f(z0 - h) * g_fn(z0 - h)) / (2 * h) / 2 + (
        f(z0 + 1j * h) * g_fn(z0 + 1j * h) - f(z0 - 1j * h) * g_fn(z0 - 1j * h)
    ) / (2j * h) / 2
    d_zbar = (f(z0 + h) * g_fn(z0 + h) - f(z0 - h) * g_fn(z0 - h)) / (2 * h) / 2 - (
        f(z0 + 1j * h) * g_fn(z0 + 1j * h) - f(z0 - 1j * h) * g_fn(z0 - 1j * h)
    ) / (2j * h) / 2
    res = max(
        abs(lhs.A + rhs.A - 4j * d_z),
        abs(lhs.B + rhs.B - 4j * d_zbar),
    )
    checks.append(
        CheckResult(
            "ms.sum-identity",
            "eta_k(f,g) + eta_{-k}(g,f) = 4i d(fg) componentwise",
            2,
            res,
            1e-6,
        )
    )

    sym = lambda z: abs(complex(z).imag) ** 0.4
    zm = 0.5 - 1.2j
    below = eta_form(kk, sym, sym, zm)
    above = eta_form(kk, sym, sym, zm.conjugate())
    res = max(abs(below.A - above.B), abs(below.B - above.A))
    checks.append(
        CheckResult(
            "ms.reflection-symmetry",
            "eta_k(f,g)(z) matches eta_k(g,f)(conj z) with dz and dzbar exchanged",
            2,
            res,
            1e-6,
        )
    )

    v = construct_eta_power("1/2")
    fs = lambda z: complex(z).imag ** 0.3 * (1 + 0.3 * cmath.cos(complex(z).real))
    gs = lambda z: complex(z).imag ** 0.6 * (1 + 0.2 * cmath.sin(0.7 * complex(z).real))
    worst = 0.0
    for g_elt in (S, T):
        v_val = v.evaluate(g_elt)
        for _ in range(5):
            z = complex(rng.uniform(-0.8, 0.8), rng.uniform(0.6, 1.6))
            lhs_pair = _pullback_form(lambda w: eta_form(kk, fs, gs, w), v_val, g_elt, z)
            f_sl = slash(fs, kk, v, g_elt)
            g_sl = slash(gs, -kk, 1, g_elt)
            rhs_sample = eta_form(kk, f_sl, g_sl, z)
            worst = max(
                worst,
                abs(lhs_pair[0] - rhs_sample.A),
                abs(lhs_pair[1] - rhs_sample.B),
            )
    checks.append(
        CheckResult(
            "ms.slash-compatibility",
            "eta_k(f,g)|_0^v g = eta_k(f|_k^v g, g|_{-k}^1 g)",
            10,
            worst,
            1e-8,
        )
    )

    nu_t = 0.3
    s_exp = 0.5 - nu_t
    kk2 = 0.5
    ys = lambda z: complex(z).imag ** s_exp
    e_plus = lambda z: (1 - 2 * nu_t + kk2) * complex(z).imag ** s_exp
    e_minus = lambda z: (1 - 2 * nu_t + kk2) * complex(z).imag ** s_exp
    z0, z1 = 0.2 + 0.9j, 0.5 + 1.4j
    seg = GeodesicPath.polyline([z0, z1])
    lhs_int = integrate_form(
        lambda zs: eta_form_many(kk2 + 2, CallableSection(e_plus), CallableSection(e_minus), zs),
        seg,
        tol=1e-11,
        settings=settings,
    ).value
    rhs_int = integrate_form(
        lambda zs: eta_form_many(kk2, CallableSection(ys), CallableSection(ys), zs),
        seg,
        tol=1e-11,
        settings=settings,
    ).value
    boundary = 4j * (e_plus(z1) * e_minus(z1) - e_plus(z0) * e_minus(z0))
    lhs_val = lhs_int
    rhs_val = (1 + 2 * nu_t + kk2) * (1 - 2 * nu_t + kk2) * rhs_int + boundary
    checks.append(
        CheckResult(
            "ms.raised-pair",
            "eta_{k+2}(E+f, E-g) = (1+2nu+k)(1-2nu+k) eta_k(f,g) + 4i d((E+f)(E-g)), integrated",
            1,
            abs(lhs_val - rhs_val) / max(abs(rhs_val), 1e-30),
            1e-6,
        )
    )

    worst = 0.0
    v12 = delta.multiplier
    zeta = 2.0
    g_elt = S
    v_val = v12.evaluate(g_elt)
    omega_moved = eta_integrand_kernel_raised(delta, moebius(g_elt, zeta))
    omega_base = eta_integrand_kernel_raised(delta, zeta)
    factor = principal_pow(mu(g_elt, zeta), 1 - 2 * delta.nu)
    for z in (0.25j + 0.1, 0.8j - 0.3, 1.5j + 0.4):
        z = complex(z)
        gz = moebius(g_elt, z)
        a_m, b_m = omega_moved(np.array([gz]))
        m = mu(g_elt, z)
        lhs_a = a_m[0] / (v_val * m * m)
        lhs_b = b_m[0] / (v_val * m.conjugate() ** 2)
        a_b, b_b = omega_base(np.array([z]))
        worst = max(
            worst,
            abs(lhs_a - factor * a_b[0]) / max(abs(factor * a_b[0]), 1e-30),
            abs(lhs_b - factor * b_b[0]) / max(abs(factor * b_b[0]), 1e-30) if b_b[0] != 0 else 0.0,
        )
    checks.append(
        CheckResult(
            "ms.moved-kernel",
            "eta_{-k}(R(., g zeta), u)|_0^v g = mu(g, zeta)^{1-2nu} eta_{-k}(R(., zeta), u)",
            3,
            worst,
            1e-8,
        )
    )
    return checks


# ---------------------------------------------------------------------------
# quadrature suite


def suite_quad(settings: Settings, rng, delta: MaassForm | None = None) -> list:
    checks = []
    delta = delta or delta_form(settings.q_terms)

    omega = lambda zs: (1.0 / np.asarray(zs).imag, np.zeros(np.shape(zs), complex))
    got = integrate_form(omega, GeodesicPath.polyline([1j, 2j]), tol=1e-13, settings=settings)
    checks.append(
        CheckResult(
            "quad.log-segment",
            "int of dz/y from i to 2i equals i log 2",
            1,
            abs(got.value - 1j * math.log(2)),
            1e-12,
        )
    )

    omega = lambda zs: (np.exp(2j * math.pi * np.asarray(zs)), np.zeros(np.shape(zs), complex))
    got = integrate_form(omega, GeodesicPath.vertical_ray(1j, +1), tol=1e-15, settings=settings)
    want = 1j * math.exp(-2 * math.pi) / (2 * math.pi)
    checks.append(
        CheckResult(
            "quad.exponential-ray",
            "int of e^{2 pi i z} dz up the ray from i",
            1,
            abs(got.value - want) / abs(want),
            1e-11,
        )
    )

    omega = eta_integrand_kernel_raised(delta, 3.0)
    direct = integrate_form(
        omega, GeodesicPath.vertical_ray(0.0, +1), tol=1e-7, start_mode=("exp",), settings=settings
    ).value
    scaled = abs(direct) * settings.quad_tol
    direct = integrate_form(
        omega, GeodesicPath.vertical_ray(0.0, +1), tol=scaled, start_mode=("exp",), settings=settings
    ).value
    bent = integrate_form(
        omega,
        GeodesicPath.polyline([0.0, -0.5 + 0.5j, -0.5 + 2j, INFINITY]),
        tol=scaled,
        start_mode=("exp",),
        settings=settings,
    ).value
    checks.append(
        CheckResult(
            "quad.path-independence",
            "a closed form integrates identically over homotopic contours",
            2,
            abs(direct - bent) / max(abs(direct), 1e-30),
            1e-8,
        )
    )

    axis = direct
    shifted = integrate_form(
        omega, GeodesicPath.arc(-1.0, INFINITY), tol=scaled, start_mode=("exp",), settings=settings
    ).value
    arc = integrate_form(
        omega, GeodesicPath.arc(0.0, -1.0), tol=scaled, settings=settings
    ).value
    split = abs(axis - shifted - arc) / max(abs(axis), 1e-30)
    checks.append(
        CheckResult(
            "quad.three-path-split",
            "the axis integral equals the sum over the two image geodesics",
            3,
            split,
            1e-8,
        )
    )

    worst = 0.0
    for alpha in (-0.4, -0.2, 0.0):
        d = 1.0 + 1.0j

        def omega_pow(zs, alpha=alpha, d=d):
            t = np.asarray(zs, dtype=complex) / d
            return (t.real.astype(complex) ** alpha / d, np.zeros(np.shape(zs), complex))

        got = integrate_form(
            omega_pow,
            GeodesicPath.polyline([0.0, d]),
            tol=1e-12,
            start_mode=("power", alpha),
            settings=settings,
        )
        worst = max(worst, abs(got.value - 1.0 / (1.0 + alpha)))
    checks.append(
        CheckResult(
            "quad.endpoint-powers",
            "distance-to-endpoint powers integrate to 1/(1+alpha)",
            3,
            worst,
            1e-9,
        )
    )

    omega = lambda zs: (np.exp(2j * math.pi * np.asarray(zs)), np.zeros(np.shape(zs), complex))
    loose = integrate_form(omega, GeodesicPath.vertical_ray(1j, +1), tol=1e-8, settings=settings)
    tight = integrate_form(omega, GeodesicPath.vertical_ray(1j, +1), tol=5e-9, settings=settings)
    checks.append(
        CheckResult(
            "quad.error-estimate",
            "halving the tolerance moves the value by less than the previous estimate",
            2,
            0.0 if abs(loose.value - tight.value) <= max(loose.abs_error_estimate, 1e-15) else 1.0,
            0.0,
        )
    )

    img = geodesic_image(GeodesicPath.vertical_ray(0.0, +1), T.inverse())
    ok_t = img.points == (-1.0, INFINITY)
    img2 = geodesic_image(GeodesicPath.vertical_ray(0.0, +1), T_PRIME.inverse())
    ok_tp = img2.points == (0.0, -1.0)
    img3 = geodesic_image(GeodesicPath.vertical_ray(0.0, +1), S.inverse())
    ok_s = img3.points[0] is INFINITY and img3.points[1] == 0.0
    checks.append(
        CheckResult(
            "quad.geodesic-images",
            "the axis maps to the expected geodesics under T^-1, (T')^-1, S^-1",
            3,
            0.0 if (ok_t and ok_tp and ok_s) else 1.0,
            0.0,
        )
    )
    return checks


# ---------------------------------------------------------------------------
# periods suite


def _rel(a, b):
    return abs(a - b) / max(abs(a), abs(b), 1e-30)


def suite_periods(settings: Settings, rng, forms: dict | None = None) -> list:
    checks = []
    forms = forms or {}
    delta = forms.get("delta") or delta_form(settings.q_terms)
    surro = forms.get("surrogate") or surrogate_form("1/2", 0.35j)
    surro2 = forms.get("surrogate2") or two_sided_surrogate("1/2", 0.35j)
    coeffs0 = (0,) + delta_coefficients(settings.q_terms)

    fD = NearlyPeriodicFunction(delta, settings)
    pD = PeriodFunction(delta, settings)
    fS = NearlyPeriodicFunction(surro, settings)
    f2 = NearlyPeriodicFunction(surro2, settings)
    pS = PeriodFunction(surro, settings)
    v_t = surro.multiplier.v_t

    worst = 0.0
    upper = [0.3 + 1.1j, -0.4 + 0.8j, 0.15 + 1.6j, 0.7 + 0.9j, -0.2 + 1.3j]
    for z in upper + [w.conjugate() for w in upper]:
        a = f2(z + 1) / v_t
        b = f2(z)
        worst = max(worst, _rel(a, b))
    checks.append(
        CheckResult(
            "periods.near-periodicity",
            "v(T)^{-1} f(zeta + 1) = f(zeta) for the half-integral surrogate",
            10,
            worst,
            1e-6,
        )
    )

    worst = 0.0
    pts = [0.3 + 1.3j, 0.5 + 1j, -0.4 + 0.9j, 0.8 + 1.7j, 0.1 + 0.8j]
    fh = {z: eichler_f(coeffs0, 12, z, settings) for z in pts}
    for z in pts:
        worst = max(worst, _rel(eichler_f(coeffs0, 12, z + 1, settings), fh[z]))
    checks.append(
        CheckResult(
            "periods.classical-periodicity",
            "the classical ray transform is 1-periodic",
            5,
            worst,
            1e-8,
        )
    )

    worst = 0.0
    for z in pts:
        lhs = fh[z] - z**10 * eichler_f(coeffs0, 12, -1.0 / z, settings)
        rhs = eichler_polynomial(coeffs0, 12, z, settings)
        worst = max(worst, _rel(lhs, rhs))
    checks.append(
        CheckResult(
            "periods.classical-cocycle",
            "f_h(zeta) - zeta^{k-2} f_h(-1/zeta) equals the period polynomial",
            5,
            worst,
            1e-7,
        )
    )

    worst = 0.0
    vtriv = delta.multiplier
    for zeta in (0.5, 1.0, 2.0, 4.0):
        p0 = pD(zeta)
        p1 = dslash(pD, delta.nu, vtriv, T)(zeta)
        p2 = dslash(pD, delta.nu, vtriv, T_PRIME)(zeta)
        scale = max(abs(p0), abs(p1), abs(p2), 1e-30)
        worst = max(worst, abs(p0 - p1 - p2) / scale)
    checks.append(
        CheckResult(
            "periods.three-term-classical",
            "P = P||T + P||T' on the positive axis for the embedded form",
            4,
            worst,
            1e-7,
        )
    )

    synth = synthetic_nearly_periodic()
    nu_s = 0.3j
    v0 = construct_trivial(0)
    p_synth = derived_period(synth, 0, nu_s, v0)
    worst = 0.0
    pts_both = [0.5 + 0.8j, 1.2 + 0.4j, -0.7 + 1.1j, 0.3 + 2.2j, 2.0 + 0.6j]
    pts_all = pts_both + [z.conjugate() for z in pts_both] + [0.5, 1.0, 2.0, 4.0]
    for z in pts_all:
        z = complex(z)
        p0 = p_synth(z)
        p1 = dslash(p_synth, nu_s, v0, T)(z)
        p2 = dslash(p_synth, nu_s, v0, T_PRIME)(z)
        scale = max(abs(p0), abs(p1), abs(p2), 1e-30)
        worst = max(worst, abs(p0 - p1 - p2) / scale)
    checks.append(
        CheckResult(
            "periods.three-term-synthetic",
            "the transform of any nearly periodic function solves the three-term equation",
            len(pts_all),
            worst,
            1e-9,
        )
    )

    worst = 0.0
    const = BijectionConstants(0.0, nu_s)
    for z in pts_both + [w.conjugate() for w in pts_both]:
        back = P_to_f(p_synth, z, weight=0, nu=nu_s, multiplier=v0)
        worst = max(worst, _rel(back, synth(z)))
        g = lambda w: P_to_f(p_synth, w, weight=0, nu=nu_s, multiplier=v0)
        again = f_to_P(g, z, weight=0, nu=nu_s, multiplier=v0)
        worst = max(worst, _rel(again, p_synth(z)))
    checks.append(
        CheckResult(
            "periods.bijection-roundtrip",
            "the inversion formulas with constants c*+- are mutually inverse",
            20,
            worst,
            1e-9,
        )
    )

    try:
        BijectionConstants(0.0, 0.5)
        rejected = 1.0
    except DegenerateBijectionError:
        rejected = 0.0
    checks.append(
        CheckResult(
            "periods.bijection-degenerate",
            "parameter pairs with c*+- = 0 are rejected",
            1,
            rejected,
            0.0,
        )
    )

    worst = 0.0
    for z in (1 + 0.5j, 1 - 0.5j, 2 + 1j, 0.8 - 1.2j):
        direct = pD(z)
        via_f = f_to_P(fD, z)
        worst = max(worst, _rel(direct, via_f))
    checks.append(
        CheckResult(
            "periods.compatibility-classical",
            "the ray transform and the axis transform give the same period function",
            4,
            worst,
            1e-6,
        )
    )

    worst = 0.0
    for z in (0.6 + 0.9j, 1.1 + 0.5j, 0.9 - 0.7j):
        direct = pS(z)
        via_f = f_to_P(fS, z)
        worst = max(worst, _rel(direct, via_f))
    checks.append(
        CheckResult(
            "periods.compatibility-surrogate",
            "ray and axis transforms agree for the surrogate (fails: the surrogate is not inversion-equivariant)",
            3,
            worst,
            1e-6,
        )
    )

    # transform of the ray integral under T' (positive real part of mu);
    # needs full equivariance, so it runs on the embedded form
    worst = 0.0
    for zeta in (0.4 + 0.9j, 1.1 + 0.6j):
        lhs = dslash(fD, delta.nu, vtriv, T_PRIME)(zeta)
        phi = arc_ray_integrand_kernel_raised(delta, zeta, -1.0)
        alpha = delta.nu - 1.5 + 0.5 * delta.k
        scale = max(abs(phi(np.array([t]))[0]) for t in (0.4, 1.0, 2.0))
        res = integrate_ray(
            phi,
            tol=settings.quad_tol * max(1.0, scale),
            start_mode=("power", alpha),
            settings=settings,
        )
        worst = max(worst, _rel(lhs, res.value))
    checks.append(
        CheckResult(
            "periods.ray-transform-action",
            "f||T' integrates the same pairing along the geodesic toward (T')^{-1} infinity",
            2,
            worst,
            1e-7,
        )
    )

    worst = 0.0
    for g_elt in (T, T_PRIME):
        img = geodesic_image(GeodesicPath.vertical_ray(0.0, +1), g_elt.inverse())
        for zeta in (0.5, 1.0, 2.0):
            lhs = dslash(pD, delta.nu, vtriv, g_elt)(zeta)
            omega = eta_integrand_kernel_raised(delta, zeta)
            res = integrate_form(
                omega, img, tol=None, start_mode=("exp",), settings=settings
            )
            worst = max(worst, _rel(lhs, res.value))
    checks.append(
        CheckResult(
            "periods.slashed-axis-transform",
            "P||g integrates over the geodesic from g^{-1} 0 to g^{-1} infinity",
            6,
            worst,
            1e-8,
        )
    )

    omega_r = eta_integrand_kernel_raised(delta, 3.0)
    omega_u = eta_integrand_form_raised(delta, 3.0)
    i_r = integrate_form(
        omega_r, GeodesicPath.vertical_ray(0.0, +1), tol=None, start_mode=("exp",), settings=settings
    ).value
    i_u = integrate_form(
        omega_u, GeodesicPath.vertical_ray(0.0, +1), tol=None, start_mode=("exp",), settings=settings
    ).value
    checks.append(
        CheckResult(
            "periods.pairing-independence",
            "kernel-raised and form-raised pairings integrate to opposite values cusp-to-cusp",
            2,
            abs(i_r + i_u) / max(abs(i_r), 1e-30),
            1e-8,
        )
    )

    c1 = delta_coefficients(settings.q_terms)
    half = MaassForm(12, delta.multiplier, 5.5, type(delta.backend)(tuple(2 * c for c in c1)))
    p_half = PeriodFunction(half, settings)
    worst = 0.0
    for zeta in (0.7, 1 + 0.6j):
        worst = max(worst, _rel(p_half(zeta), 2.0 * pD(zeta)))
    checks.append(
        CheckResult(
            "periods.linearity",
            "the transforms are linear in the cusp form",
            2,
            worst,
            1e-10,
        )
    )

    report_d = growth_check(pD, settings)
    report_s = growth_check(pS, settings)
    worst = 0.0
    if abs(report_d.slope_at_infinity - 10.0) > 0.1:
        worst = max(worst, abs(report_d.slope_at_infinity - 10.0))
    if report_s.slope_at_infinity > -0.85:
        worst = max(worst, report_s.slope_at_infinity + 0.85)
    if report_s.slope_at_zero < -0.15:
        worst = max(worst, -(report_s.slope_at_zero + 0.15))
    checks.append(
        CheckResult(
            "periods.growth",
            "log-log slopes: embedded form 10 +- 0.1 at infinity; surrogate <= -0.85 there and >= -0.15 at zero",
            32,
            worst,
            0.0,
            )
    )

    worst = 0.0
    h = 0.02
    for zeta in (1.3 + 0.4j, -0.8 + 1.5j, 0.5 - 1.1j):
        def d5(direction):
            return (
                -pD(zeta + 2 * h * direction)
                + 8 * pD(zeta + h * direction)
                - 8 * pD(zeta - h * direction)
                + pD(zeta - 2 * h * direction)
            ) / (12 * h)

        d_zbar = 0.5 * (d5(1.0) + 1j * d5(1j))
        scale = max(abs(pD(zeta)), 1e-3)
        worst = max(worst, abs(d_zbar) / scale)
    checks.append(
        CheckResult(
            "periods.holomorphy",
            "the extended period function has vanishing conj-z derivative on the cut plane",
            3,
            worst,
            1e-6,
        )
    )
    return checks


# ---------------------------------------------------------------------------
# classical suite


def suite_classical(settings: Settings, rng, forms: dict | None = None) -> list:
    checks = []
    forms = forms or {}
    delta = forms.get("delta") or delta_form(settings.q_terms)
    coeffs0 = (0,) + delta_coefficients(settings.q_terms)
    k = 12

    pD = PeriodFunction(delta, settings)
    golden_pts = [0.5, 1.0, 2.0, 1 + 0.5j, 1 - 0.5j]
    worst = 0.0
    for zeta in golden_pts:
        p_val = eichler_polynomial(coeffs0, k, zeta, settings)
        P_val = pD(zeta)
        worst = max(worst, abs(P_val + 22.0 * p_val) / (1.0 + abs(p_val)))
    checks.append(
        CheckResult(
            "classical.golden-period",
            "P at nu = (k-1)/2 equals (2-2k) times the period polynomial",
            len(golden_pts),
            worst,
            1e-7,
        )
    )

    lower = MaassForm(12, delta.multiplier, -5.5, delta.backend)
    p_lower = PeriodFunction(lower, settings)
    worst = 0.0
    for zeta in golden_pts:
        p_val = eichler_polynomial(coeffs0, k, zeta, settings)
        worst = max(worst, abs(p_lower(zeta)) / (1.0 + abs(p_val)))
    checks.append(
        CheckResult(
            "classical.vanishing-period",
            "P at nu = (1-k)/2 vanishes identically",
            len(golden_pts),
            worst,
            1e-8,
        )
    )

    rng_pts = [complex(rng.uniform(0.3, 2.0), rng.uniform(-1.0, 1.0)) for _ in range(10)]
    worst1 = 0.0
    worst2 = 0.0
    scale = 1.0
    for zeta in rng_pts:
        p0 = eichler_polynomial(coeffs0, k, zeta, settings)
        scale = max(abs(p0), 1e-10)
        r1 = p0 + zeta ** (k - 2) * eichler_polynomial(coeffs0, k, -1.0 / zeta, settings)
        worst1 = max(worst1, abs(r1) / scale)
        r2 = (
            p0
            + (zeta + 1) ** (k - 2) * eichler_polynomial(coeffs0, k, -1.0 / (zeta + 1), settings)
            + zeta ** (k - 2) * eichler_polynomial(coeffs0, k, -(zeta + 1) / zeta, settings)
        )
        worst2 = max(worst2, abs(r2) / scale)
    checks.append(
        CheckResult(
            "classical.inversion-relation",
            "p(zeta) + zeta^{k-2} p(-1/zeta) = 0",
            10,
            worst1,
            1e-7,
        )
    )
    checks.append(
        CheckResult(
            "classical.three-term-relation",
            "p + (zeta+1)^{k-2} p(-1/(zeta+1)) + zeta^{k-2} p(-(zeta+1)/zeta) = 0",
            10,
            worst2,
            1e-7,
        )
    )

    fD = NearlyPeriodicFunction(delta, settings)
    worst = 0.0
    for zeta in (0.5 + 1j, 0.3 + 1.3j):
        lhs = fD(zeta)
        rhs = -22.0 * eichler_f(coeffs0, k, zeta, settings)
        worst = max(worst, _rel(lhs, rhs))
    checks.append(
        CheckResult(
            "classical.ray-comparison",
            "the ray transform of the embedded form is (2-2k) times the classical one",
            2,
            worst,
            1e-7,
        )
    )

    nodes = 1.0 + 0.5 * (1 + np.cos(np.pi * (2 * np.arange(1, 12) - 1) / 22.0))
    vals = [eichler_polynomial(coeffs0, k, complex(x), settings) for x in nodes]
    fit = np.polyfit(nodes, vals, 10)
    pred = complex(np.polyval(fit, 3.0))
    direct = eichler_polynomial(coeffs0, k, 3.0, settings)
    checks.append(
        CheckResult(
            "classical.polynomiality",
            "a degree-10 interpolation through 11 nodes extrapolates the transform",
            12,
            _rel(pred, direct),
            1e-8,
        )
    )
    return checks


SUITES = {
    "branch": suite_branch,
    "group": suite_group,
    "multiplier": suite_multiplier,
    "kernel": suite_kernel,
    "ms": suite_ms,
    "quad": suite_quad,
    "periods": suite_periods,
    "classical": suite_classical,
}

EXPECTED_FAILURES = {
    # The surrogate backend is translation-equivariant only; the identity
    # tested here needs equivariance under the inversion generator, so the
    # honest run of this check fails by design of the backend.
    "periods.compatibility-surrogate",
}


def run_suite(
    name: str,
    settings: Settings = DEFAULTS,
    seed: int = 0,
    weight=None,
    multiplier_kind: str = "eta-power",
) -> VerificationReport:
    rng = np.random.default_rng(seed)
    started = time.perf_counter()
    if name == "all":
        entries = []
        shared = {"delta": delta_form(settings.q_terms)}
        for key, fn in SUITES.items():
            entries.extend(_call_suite(fn, settings, rng, weight, multiplier_kind, shared))
    else:
        fn = SUITES[name]
        shared = {"delta": delta_form(settings.q_terms)} if name in ("ms", "quad", "periods", "classical") else None
        entries = _call_suite(fn, settings, rng, weight, multiplier_kind, shared)
    return VerificationReport(name, entries, time.perf_counter() - started)


def _call_suite(fn, settings, rng, weight, multiplier_kind, shared):
    if fn is suite_multiplier:
        return fn(settings, rng, weight=weight, kind=multiplier_kind)
    if fn in (suite_ms, suite_quad):
        return fn(settings, rng, delta=(shared or {}).get("delta"))
    if fn in (suite_periods, suite_classical):
        return fn(settings, rng, forms=shared)
    return fn(settings, rng)

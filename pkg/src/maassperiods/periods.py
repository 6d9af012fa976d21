"""Nearly periodic functions, period functions, and the classical comparison.

For a form u of weight k and spectral parameter nu, the period function is

    P(zeta) = int_0^{i infinity} eta_{-k}( R_{-k,nu}(., zeta), u )

over the imaginary axis, extended to the cut plane by deforming the contour
to the left of zeta and conj(zeta) (factored kernel branch).  The nearly
periodic function integrates the same Maass-Selberg pairing along the ray
from zeta (resp. conj(zeta)) to i*infinity.

Two equivalent pairings are available for the integrand: the kernel in the
raised slot (``eta_{-k}(R, u)``) or the form in the raised slot
(``eta_k(u, R)`` with an overall sign).  They differ by an exact
differential, so they integrate identically whenever both converge - but at
the moving endpoint z -> zeta the raising operator must not fall on the
factor that vanishes there, or the integrand picks up a non-integrable
power for small weights.  Accordingly the upper-half-plane branch of f uses
the form-raised pairing (kernel singularity (zeta-z)^{nu-1/2+k/2}) and the
lower branch integrates the kernel-raised pairing from conj(zeta), where
the roles of the two kernel factors swap.  For the holomorphic embedding
both pairings converge and agree, and the kernel-raised one collapses to
the classical Eichler integrand because the lowering operator kills the
form.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .branch import on_cut, principal_pow
from .config import DEFAULTS, Settings
from .errors import (
    DegenerateBijectionError,
    DomainError,
    UnsupportedSpectralParameterError,
)
from .forms import MaassForm, reduce_to_fundamental_domain
from .kernel import RKernel
from .modgroup import INFINITY, S, mu
from .multiplier import MultiplierSystem
from .quadrature import GeodesicPath, integrate_form, integrate_ray

__all__ = [
    "BijectionConstants",
    "PeriodEvaluation",
    "NearlyPeriodicFunction",
    "PeriodFunction",
    "f_to_P",
    "P_to_f",
    "eichler_polynomial",
    "eichler_f",
    "growth_check",
    "GrowthReport",
    "eta_integrand_kernel_raised",
    "eta_integrand_form_raised",
    "arc_ray_integrand_kernel_raised",
    "synthetic_nearly_periodic",
    "derived_period",
    "holomorphic_series_eval",
]


# ---------------------------------------------------------------------------
# bijection constants


@dataclass(frozen=True)
class BijectionConstants:
    """c*+- = 1 - e^{i pi k} e^{+- i pi (2 nu - 1)}; both must be nonzero."""

    weight: float
    nu: complex
    c_plus: complex = field(init=False)
    c_minus: complex = field(init=False)

    def __post_init__(self):
        k = float(self.weight)
        nu = complex(self.nu)
        phase = cmath.exp(1j * math.pi * k)
        object.__setattr__(
            self, "c_plus", 1.0 - phase * cmath.exp(1j * math.pi * (2 * nu - 1))
        )
        object.__setattr__(
            self, "c_minus", 1.0 - phase * cmath.exp(-1j * math.pi * (2 * nu - 1))
        )
        if min(abs(self.c_plus), abs(self.c_minus)) < 1e-12:
            raise DegenerateBijectionError(
                f"c*+- vanishes for weight {k}, nu {nu}: the correspondence "
                "between nearly periodic and period functions degenerates"
            )

    def for_half_plane(self, zeta: complex) -> complex:
        return self.c_plus if zeta.imag > 0 else self.c_minus


@dataclass(frozen=True)
class PeriodEvaluation:
    """A transform value together with the contour used and the error budget."""

    value: complex
    contour: str
    abs_error: float
    evaluations: int


# ---------------------------------------------------------------------------
# integrand builders


def eta_integrand_kernel_raised(form: MaassForm, zeta: complex, mode: str = "combined"):
    """eta_{-k}(R_{-k,nu}(., zeta), u) as an array integrand.

    dz part:   (1 - 2 nu - k) R_{2-k,nu}(z, zeta) u(z) / y
    dzbar part:       - R_{-k,nu}(z, zeta) (E-_k u)(z) / y
    """
    k, nu = form.k, form.nu
    zeta = complex(zeta)
    c_raise = 1.0 - 2.0 * nu - k
    raised = RKernel(2.0 - k, nu, mode)
    plain = RKernel(-k, nu, mode)
    lowered_vanishes = form.is_embedding

    def omega(zs):
        zs = np.asarray(zs, dtype=complex)
        y = zs.imag
        if c_raise != 0:
            a = c_raise * raised.eval_many(zs, zeta) * form.eval_many(zs) / y
        else:
            a = np.zeros(zs.shape, dtype=complex)
        if lowered_vanishes:
            b = np.zeros(zs.shape, dtype=complex)
        else:
            b = -plain.eval_many(zs, zeta) * form.lower_many(zs) / y
        return a, b

    return omega


def eta_integrand_form_raised(form: MaassForm, zeta: complex, mode: str = "combined"):
    """eta_k(u, R_{-k,nu}(., zeta)) as an array integrand.

    dz part:    (E+_k u)(z) R_{-k,nu}(z, zeta) / y
    dzbar part:  - u(z) (1 - 2 nu + k) R_{-k-2,nu}(z, zeta) / y
    """
    k, nu = form.k, form.nu
    zeta = complex(zeta)
    c_lower = 1.0 - 2.0 * nu + k
    plain = RKernel(-k, nu, mode)
    lowered = RKernel(-k - 2.0, nu, mode)

    def omega(zs):
        zs = np.asarray(zs, dtype=complex)
        y = zs.imag
        a = form.raise_many(zs) * plain.eval_many(zs, zeta) / y
        b = -form.eval_many(zs) * c_lower * lowered.eval_many(zs, zeta) / y
        return a, b

    return omega


def _ray_integrand_kernel_raised(form: MaassForm, zeta: complex, base: complex, mode: str = "combined"):
    """Pullback of eta_{-k}(R(., zeta), u) along z = base + i t, exact offsets."""
    k, nu = form.k, form.nu
    zeta = complex(zeta)
    base = complex(base)
    c_raise = 1.0 - 2.0 * nu - k
    raised = RKernel(2.0 - k, nu, mode)
    plain = RKernel(-k, nu, mode)

    def phi(ts):
        ts = np.asarray(ts, dtype=float)
        zs = base + 1j * ts
        y = base.imag + ts
        total = np.zeros(ts.shape, dtype=complex)
        if c_raise != 0:
            total += 1j * c_raise * raised.eval_ray(base, ts, zeta) * form.eval_many(zs) / y
        if not form.is_embedding:
            total += 1j * plain.eval_ray(base, ts, zeta) * form.lower_many(zs) / y
        return total

    return phi


def _ray_integrand_form_raised(form: MaassForm, zeta: complex, base: complex, mode: str = "combined"):
    """Pullback of eta_k(u, R(., zeta)) along z = base + i t, exact offsets."""
    k, nu = form.k, form.nu
    zeta = complex(zeta)
    base = complex(base)
    c_lower = 1.0 - 2.0 * nu + k
    plain = RKernel(-k, nu, mode)
    lowered = RKernel(-k - 2.0, nu, mode)

    def phi(ts):
        ts = np.asarray(ts, dtype=float)
        zs = base + 1j * ts
        y = base.imag + ts
        a = form.raise_many(zs) * plain.eval_ray(base, ts, zeta) / y
        b = -form.eval_many(zs) * c_lower * lowered.eval_ray(base, ts, zeta) / y
        return 1j * a - 1j * b

    return phi


def arc_ray_integrand_kernel_raised(form: MaassForm, zeta: complex, endpoint: float, mode: str = "combined"):
    """Pullback of eta_{-k}(R(., zeta), u) along the geodesic from zeta to a
    real boundary point, in arclength offset from zeta with exact kernel
    differences (tanh/sech differences formed stably near the start)."""
    zeta = complex(zeta)
    endpoint = float(endpoint)
    k, nu = form.k, form.nu
    c = (abs(zeta) ** 2 - endpoint**2) / (2.0 * (zeta.real - endpoint))
    r = abs(endpoint - c)
    s0 = math.atanh(max(-1 + 1e-15, min(1 - 1e-15, (zeta.real - c) / r)))
    d = 1.0 if endpoint > c else -1.0
    c_raise = 1.0 - 2.0 * nu - k
    raised = RKernel(2.0 - k, nu, mode)
    plain = RKernel(-k, nu, mode)
    two_im = zeta - zeta.conjugate()

    def phi(ts):
        ts = np.asarray(ts, dtype=float)
        s = s0 + d * ts
        cosh_s = np.cosh(s)
        sech = 1.0 / cosh_s
        scale = 1.0 / (cosh_s * math.cosh(s0))
        dz = r * np.sinh(d * ts) * scale - 2j * r * np.sinh(0.5 * (s + s0)) * np.sinh(0.5 * d * ts) * scale
        a = -dz
        b = two_im - np.conj(dz)
        y = r * sech
        zs = zeta + dz
        vel = d * r * sech * (sech - 1j * np.tanh(s))
        total = np.zeros(ts.shape, dtype=complex)
        if c_raise != 0:
            total += c_raise * raised._from_pieces(a, b, y) * form.eval_many(zs) * vel / y
        if not form.is_embedding:
            total -= plain._from_pieces(a, b, y) * form.lower_many(zs) * np.conj(vel) / y
        return total

    return phi


def _scale_probe(omega, probes: np.ndarray) -> float:
    a, b = omega(np.asarray(probes, dtype=complex))
    return float(max(np.max(np.abs(a) + np.abs(b)), 1e-300))


def _scale_probe_ray(phi, ts) -> float:
    return float(max(np.max(np.abs(phi(np.asarray(ts, dtype=float)))), 1e-300))


def _scaled_tol(settings: Settings, scale: float) -> float:
    return settings.quad_tol * max(1.0, scale)


# ---------------------------------------------------------------------------
# the nearly periodic function


class NearlyPeriodicFunction:
    """The ray transform of a form, defined off the real axis."""

    def __init__(self, form: MaassForm, settings: Settings = DEFAULTS):
        self.form = form
        self.settings = settings
        self._degenerate_zero = form.is_embedding and abs(
            form.nu - (1.0 - form.k) / 2.0
        ) < 1e-12
        if not form.is_embedding and abs(form.nu.real) >= 0.5:
            raise UnsupportedSpectralParameterError(
                f"|Re nu| = {abs(form.nu.real)} is not below 1/2"
            )

    def __call__(self, zeta: complex) -> complex:
        return self.eval(zeta).value

    def eval(self, zeta: complex) -> PeriodEvaluation:
        zeta = complex(zeta)
        if zeta.imag == 0.0:
            raise DomainError("the nearly periodic function lives off the real axis")
        if self._degenerate_zero:
            return PeriodEvaluation(0.0 + 0.0j, "identically zero", 0.0, 0)
        form = self.form
        k, nu = form.k, form.nu
        if zeta.imag > 0:
            base = zeta
            if form.is_embedding:
                phi = _ray_integrand_kernel_raised(form, zeta, base)
                sign = 1.0
                alpha = nu - 1.5 + 0.5 * k  # kernel-raised dz singularity
            else:
                phi = _ray_integrand_form_raised(form, zeta, base)
                sign = -1.0
                alpha = nu - 0.5 + 0.5 * k
        else:
            base = zeta.conjugate()
            phi = _ray_integrand_kernel_raised(form, zeta, base)
            sign = 1.0
            # dzbar part dominates at the conjugate endpoint unless it vanishes
            if form.is_embedding:
                alpha = nu + 0.5 - 0.5 * k
            else:
                alpha = nu - 0.5 - 0.5 * k
        scale = _scale_probe_ray(phi, [0.3, 0.9, 2.1])
        result = integrate_ray(
            phi,
            tol=_scaled_tol(self.settings, scale),
            start_mode=("power", alpha),
            settings=self.settings,
        )
        return PeriodEvaluation(
            sign * result.value,
            f"ray {base:.4g} -> i*inf " + ";".join(result.metadata["pieces"]),
            result.abs_error_estimate,
            result.evaluations,
        )


# ---------------------------------------------------------------------------
# the period function


class PeriodFunction:
    """The cusp-to-cusp transform, holomorphic on the cut plane."""

    def __init__(self, form: MaassForm, settings: Settings = DEFAULTS):
        self.form = form
        self.settings = settings
        self._degenerate_zero = form.is_embedding and abs(
            form.nu - (1.0 - form.k) / 2.0
        ) < 1e-12
        self._cache = {}

    def __call__(self, zeta: complex) -> complex:
        return self.eval(zeta).value

    def eval(self, zeta: complex) -> PeriodEvaluation:
        zeta = complex(zeta)
        if on_cut(zeta):
            raise DomainError(f"{zeta} lies on the cut (-inf, 0]")
        key = zeta
        if key in self._cache:
            return self._cache[key]
        if self._degenerate_zero:
            out = PeriodEvaluation(0.0 + 0.0j, "identically zero", 0.0, 0)
            self._cache[key] = out
            return out
        form = self.form
        cusp_mode = ("exp",) if form.cusp_profile == "exponential" else ("log",)
        if zeta.real > 0:
            omega = eta_integrand_kernel_raised(form, zeta, mode="factored")
            path = GeodesicPath.vertical_ray(0.0, +1)
            note = "imaginary axis"
            probes = 1j * np.array([0.4, 0.9, 1.7, 3.0])
        else:
            eps = max(0.25, 0.5 * abs(zeta))
            if eps <= -zeta.real:
                eps = -zeta.real + max(0.25, 0.25 * abs(zeta))
            h0 = min(eps, 0.5 * abs(zeta.imag))
            top = max(1.0, 2.0 * abs(zeta))
            omega = eta_integrand_kernel_raised(form, zeta, mode="factored")
            path = GeodesicPath.polyline(
                [0.0, complex(-eps, h0), complex(-eps, top), INFINITY]
            )
            note = f"deformed polyline eps={eps:.3g}"
            probes = complex(-eps, 0) + 1j * np.array([h0 + 0.3, top * 0.5, top])
        scale = _scale_probe(omega, probes)
        result = integrate_form(
            omega,
            path,
            tol=_scaled_tol(self.settings, scale),
            start_mode=cusp_mode,
            settings=self.settings,
        )
        out = PeriodEvaluation(
            result.value,
            note + " " + ";".join(result.metadata["pieces"]),
            result.abs_error_estimate,
            result.evaluations,
        )
        self._cache[key] = out
        return out


# ---------------------------------------------------------------------------
# the algebraic bridge between f and P


def _callable_of(obj):
    if isinstance(obj, (NearlyPeriodicFunction, PeriodFunction)):
        return obj, obj.form.k, obj.form.nu, obj.form.multiplier
    return obj, None, None, None


def f_to_P(f, zeta: complex, weight=None, nu=None, multiplier=None) -> complex:
    """P(zeta) = f(zeta) - v(S)^{-1} zeta^{2 nu - 1} f(S zeta)."""
    fn, k, n, v = _callable_of(f)
    k = float(weight) if weight is not None else k
    n = complex(nu) if nu is not None else n
    v = multiplier if multiplier is not None else v
    zeta = complex(zeta)
    if zeta.imag == 0.0:
        raise DomainError("f is only defined off the real axis")
    v_s = v.evaluate(S) if isinstance(v, MultiplierSystem) else complex(v)
    s_zeta = -1.0 / zeta
    return fn(zeta) - principal_pow(zeta, 2 * n - 1) / v_s * fn(s_zeta)


def P_to_f(P, zeta: complex, weight=None, nu=None, multiplier=None) -> complex:
    """c*+- f(zeta) = P(zeta) + v(S)^{-1} zeta^{2 nu - 1} P(S zeta), sign by Im."""
    fn, k, n, v = _callable_of(P)
    k = float(weight) if weight is not None else k
    n = complex(nu) if nu is not None else n
    v = multiplier if multiplier is not None else v
    zeta = complex(zeta)
    if zeta.imag == 0.0:
        raise DomainError("the inverse transform needs Im zeta != 0")
    constants = BijectionConstants(k, n)
    v_s = v.evaluate(S) if isinstance(v, MultiplierSystem) else complex(v)
    s_zeta = -1.0 / zeta
    num = fn(zeta) + principal_pow(zeta, 2 * n - 1) / v_s * fn(s_zeta)
    return num / constants.for_half_plane(zeta)


def synthetic_nearly_periodic():
    """A closed-form nearly periodic function: e^{2 pi i zeta} above the
    real axis and e^{-2 pi i conj(zeta)} below (period 1, so a = 1)."""

    def f(zeta: complex) -> complex:
        zeta = complex(zeta)
        if zeta.imag >= 0:
            return cmath.exp(2j * math.pi * zeta)
        return cmath.exp(-2j * math.pi * zeta.conjugate())

    return f


def derived_period(f, weight, nu, multiplier):
    """The period function attached to a nearly periodic evaluatable.

    Same combination as :func:`f_to_P` but packaged as a callable and
    without the off-axis domain guard, so three-term residuals can be
    sampled at positive reals through the boundary values of ``f``.
    """
    nu = complex(nu)
    v_s = multiplier.evaluate(S) if isinstance(multiplier, MultiplierSystem) else complex(multiplier)

    def period(zeta: complex) -> complex:
        zeta = complex(zeta)
        return f(zeta) - principal_pow(zeta, 2 * nu - 1) / v_s * f(-1.0 / zeta)

    return period


# ---------------------------------------------------------------------------
# classical Eichler transforms


def holomorphic_series_eval(coefficients, weight: int, zs: np.ndarray) -> np.ndarray:
    """Evaluate a cuspidal q-series of even weight anywhere on H.

    Points are reduced to the fundamental domain and the weight-k phase is
    unwound exactly (integer powers), so the series converges fast on every
    contour.  ``coefficients`` start at q^1.
    """
    zs = np.asarray(zs, dtype=complex)
    flat = zs.ravel()
    out = np.empty(flat.shape, dtype=complex)
    coeffs = np.zeros(len(coefficients) + 1, dtype=complex)
    coeffs[1:] = coefficients
    k = int(weight)
    for i, z in enumerate(flat):
        w, g = reduce_to_fundamental_domain(complex(z))
        q = cmath.exp(2j * math.pi * w)
        val = complex(np.polynomial.polynomial.polyval(q, coeffs))
        out[i] = val * mu(g, complex(z)) ** (-k)
    return out.reshape(zs.shape)


def _check_cuspidal(coefficients):
    coefficients = tuple(complex(c) for c in coefficients)
    if len(coefficients) == 0:
        raise DomainError("empty coefficient list")
    if coefficients[0] != 0:
        raise DomainError("the constant term must vanish (cuspidal input)")
    return coefficients[1:]


def _check_classical_weight(weight) -> int:
    k = int(weight)
    if k != weight or k < 4 or k % 2 != 0:
        raise DomainError(f"classical transforms need an even weight >= 4, got {weight}")
    return k


def eichler_polynomial(coefficients, weight, zeta: complex, settings: Settings = DEFAULTS) -> complex:
    """p(zeta) = int_0^{i inf} (zeta - z)^{k-2} u_h(z) dz  (a degree <= k-2 polynomial).

    ``coefficients`` start at q^0 and must be cuspidal.
    """
    k = _check_classical_weight(weight)
    coeffs = _check_cuspidal(coefficients)
    zeta = complex(zeta)

    def omega(zs):
        zs = np.asarray(zs, dtype=complex)
        a = (zeta - zs) ** (k - 2) * holomorphic_series_eval(coeffs, k, zs)
        return a, np.zeros(zs.shape, dtype=complex)

    # the series factor confines the integrand to moderate heights
    scale = _scale_probe(omega, 1j * np.array([0.4, 0.8, 1.5, 3.0]))
    result = integrate_form(
        omega,
        GeodesicPath.vertical_ray(0.0, +1),
        tol=_scaled_tol(settings, scale),
        start_mode=("exp",),
        settings=settings,
    )
    return result.value


def eichler_f(coefficients, weight, zeta: complex, settings: Settings = DEFAULTS) -> complex:
    """f_h(zeta) = int_zeta^{i inf} (zeta - z)^{k-2} u_h(z) dz on the upper half-plane."""
    k = _check_classical_weight(weight)
    coeffs = _check_cuspidal(coefficients)
    zeta = complex(zeta)
    if zeta.imag <= 0:
        raise DomainError("the periodic Eichler transform needs Im zeta > 0")

    def omega(zs):
        zs = np.asarray(zs, dtype=complex)
        a = (zeta - zs) ** (k - 2) * holomorphic_series_eval(coeffs, k, zs)
        return a, np.zeros(zs.shape, dtype=complex)

    scale = _scale_probe(omega, zeta + 1j * np.array([0.3, 1.0, 2.0]))
    result = integrate_form(
        omega,
        GeodesicPath.vertical_ray(zeta, +1),
        tol=_scaled_tol(settings, scale),
        settings=settings,
    )
    return result.value


# ---------------------------------------------------------------------------
# growth report


@dataclass(frozen=True)
class GrowthReport:
    slope_at_zero: float
    slope_at_infinity: float
    bound_at_zero: float
    bound_at_infinity: float
    slack: float
    passes_at_zero: bool
    passes_at_infinity: bool
    samples: dict

    @property
    def passes(self) -> bool:
        return self.passes_at_zero and self.passes_at_infinity


def growth_check(period: PeriodFunction, settings: Settings = DEFAULTS, slack: float = 0.15) -> GrowthReport:
    """Log-log slopes of |P| on dyadic rays toward 0 and infinity.

    The exponent 2 Re nu - 1 bounds the decay at infinity when it is
    negative and gives the polynomial degree when positive; at zero the
    bound is max(0, 2 Re nu - 1).  Slopes are fitted with the configured
    dyadic exponents and compared with the stated slack.
    """
    j_lo, j_hi = settings.growth_exponents
    js = np.arange(j_lo, j_hi + 1)
    small = 2.0 ** (-js)
    large = 2.0**js
    p_small = np.array([abs(period(z)) for z in small])
    p_large = np.array([abs(period(z)) for z in large])
    slope_zero = float(np.polyfit(np.log(small), np.log(p_small), 1)[0])
    slope_inf = float(np.polyfit(np.log(large), np.log(p_large), 1)[0])
    two_nu = 2.0 * period.form.nu.real - 1.0
    bound_zero = max(0.0, two_nu)
    bound_inf = two_nu if two_nu > 0 else min(0.0, two_nu)
    passes_zero = slope_zero >= bound_zero - slack
    if two_nu > 0:
        passes_inf = abs(slope_inf - bound_inf) <= slack
    else:
        passes_inf = slope_inf <= bound_inf + slack
    return GrowthReport(
        slope_at_zero=slope_zero,
        slope_at_infinity=slope_inf,
        bound_at_zero=bound_zero,
        bound_at_infinity=bound_inf,
        slack=slack,
        passes_at_zero=passes_zero,
        passes_at_infinity=passes_inf,
        samples={
            "zeta_small": small.tolist(),
            "p_small": p_small.tolist(),
            "zeta_large": large.tolist(),
            "p_large": p_large.tolist(),
        },
    )

"""Evaluatable Maass cusp forms, their conjugates, and the Maass operators.

Two backends:

* ``HolomorphicEmbedding`` wraps a classical holomorphic cusp form u_h of
  even weight as u(z) = (Im z)^{k/2} u_h(z).  It is genuinely equivariant
  under the whole group (evaluation reduces z to the fundamental domain and
  unwinds the phase), the lowering operator kills it exactly, and it anchors
  every identity that involves the inversion generator.

* ``WhittakerSurrogate`` is a finite sum of Whittaker-W Fourier terms at
  half-integral weight.  Each term is an exact eigenfunction of the weight-k
  Laplacian and the sum is exactly equivariant under translations (with the
  multiplier's v(T)), but nothing relates it to the inversion generator; it
  exists to exercise the analytic machinery at weights where no coefficient
  tables exist.  The finite sum itself is the object under test, so there is
  no truncation error in its own identities.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Union

import numpy as np

from .branch import principal_arg, principal_pow
from .errors import BranchViolationError, DomainError, InvalidWeightError
from .modgroup import (
    IDENTITY,
    S,
    GroupElement,
    has_nonnegative_entries,
    moebius,
    mu,
)
from .multiplier import MultiplierSystem, construct_eta_power, construct_trivial, parse_weight
from .specfun import WhittakerTable

__all__ = [
    "MaassForm",
    "ConjugateForm",
    "HolomorphicEmbedding",
    "WhittakerSurrogate",
    "delta_coefficients",
    "delta_form",
    "surrogate_form",
    "two_sided_surrogate",
    "boundary_balanced_coefficients",
    "maass_raise",
    "maass_lower",
    "maass_laplacian_fd",
    "slash",
    "dslash",
    "form_from_json",
    "form_to_json",
    "reduce_to_fundamental_domain",
]


# ---------------------------------------------------------------------------
# discriminant-form coefficients


@lru_cache(maxsize=8)
def delta_coefficients(n_terms: int) -> tuple:
    """First q-coefficients of q * prod_{m>=1} (1 - q^m)^24, exact integers."""
    # product accumulated to O(q^{n_terms}); multiplying by (1 - q^m) is a
    # single backward pass, applied 24 times per m
    poly = [0] * n_terms
    poly[0] = 1
    for m in range(1, n_terms):
        for _ in range(24):
            for j in range(n_terms - 1, m - 1, -1):
                poly[j] -= poly[j - m]
    # shift by one power of q: coefficient of q^n is poly[n-1]
    return tuple(poly)


# ---------------------------------------------------------------------------
# fundamental-domain reduction (exact integer matrices)


def reduce_to_fundamental_domain(z: complex) -> tuple:
    """Return (w, g) with w = g z, |Re w| <= 1/2 and |w| >= 1 (up to roundoff)."""
    w = complex(z)
    if w.imag <= 0:
        raise DomainError("reduction requires Im z > 0")
    g = IDENTITY
    for _ in range(256):
        n = math.floor(w.real + 0.5)
        if n != 0:
            w = complex(w.real - n, w.imag)
            g = GroupElement(1, -n, 0, 1) * g
        if (w.real * w.real + w.imag * w.imag) < 1.0 - 1e-14:
            w = -1.0 / w
            g = S * g
        else:
            return w, g
    return w, g


# ---------------------------------------------------------------------------
# backends


@dataclass(frozen=True)
class HolomorphicEmbedding:
    """q-coefficients c_1, c_2, ... of a cuspidal holomorphic form."""

    coefficients: tuple

    name = "holomorphic_embedding"


@dataclass(frozen=True)
class WhittakerSurrogate:
    """Fourier coefficients a_1, ..., a_N and the frequency shift kappa0.

    ``negative_coefficients`` optionally populate the frequencies
    kappa0 - 1, kappa0 - 2, ... (with Whittaker index -k/2).  The ray
    transform on the lower half-plane pairs exclusively with this side of
    the spectrum - with positive frequencies alone it vanishes identically
    - so two-sided coefficients are needed wherever that transform should
    be nondegenerate.
    """

    coefficients: tuple
    kappa0: float
    negative_coefficients: tuple = ()

    name = "whittaker_surrogate"


Backend = Union[HolomorphicEmbedding, WhittakerSurrogate]


class MaassForm:
    """A weight-k eigenfunction of the hyperbolic Laplacian, evaluatable on H."""

    def __init__(
        self,
        weight,
        multiplier: MultiplierSystem,
        nu: complex,
        backend: Backend,
        truncation: int | None = None,
    ):
        self.weight = parse_weight(weight)
        self.k = float(self.weight)
        self.multiplier = multiplier
        self.nu = complex(nu)
        self.eigenvalue = 0.25 - self.nu * self.nu
        self.backend = backend
        if truncation is None:
            truncation = len(backend.coefficients)
        self.truncation = int(truncation)
        self._validate()
        self._tables = None

    def _validate(self):
        if abs(self.eigenvalue - (0.25 - self.nu**2)) > 1e-14:
            raise ValueError("stored eigenvalue disagrees with nu")
        if isinstance(self.backend, HolomorphicEmbedding):
            if self.weight.denominator != 1 or self.weight <= 0 or self.weight % 2 != 0:
                raise InvalidWeightError(
                    "the holomorphic embedding needs a positive even integer weight"
                )
            allowed = {(self.k - 1) / 2.0, (1.0 - self.k) / 2.0}
            if min(abs(self.nu - a) for a in allowed) > 1e-12:
                raise ValueError(
                    f"embedding spectral parameter must be +-(k-1)/2, got {self.nu}"
                )
            if abs(self.multiplier.v_t - 1) > 1e-12 or abs(self.multiplier.v_s - 1) > 1e-12:
                raise ValueError("the holomorphic embedding carries the trivial multiplier")
        else:
            shift = self.backend.kappa0
            if abs(cmath.exp(2j * math.pi * shift) - self.multiplier.v_t) > 1e-12:
                raise ValueError(
                    "surrogate shift kappa0 must satisfy e^{2 pi i kappa0} = v(T)"
                )

    # -- metadata ------------------------------------------------------------

    @property
    def is_embedding(self) -> bool:
        return isinstance(self.backend, HolomorphicEmbedding)

    @property
    def kappa0(self) -> float:
        return 0.0 if self.is_embedding else self.backend.kappa0

    @property
    def decay_rate(self) -> float:
        """Exponential rate of |u| as y -> infinity."""
        if not self.is_embedding and self.backend.negative_coefficients:
            return 2.0 * math.pi * min(1.0 + self.kappa0, 1.0 - self.kappa0)
        return 2.0 * math.pi * (1.0 + self.kappa0)

    @property
    def cusp_profile(self) -> str:
        """Decay type at finite boundary points: full automorphy gives
        exponential decay at every cusp, the surrogate only a power law."""
        return "exponential" if self.is_embedding else "power"

    def truncation_bound(self, y: float) -> float:
        """Bound for the first dropped term of the backend series at height y."""
        coeffs = self.backend.coefficients
        n = self.truncation
        if n >= len(coeffs):
            return 0.0
        if self.is_embedding:
            return abs(coeffs[n]) * math.exp(-2 * math.pi * (n + 1) * y) * y ** (self.k / 2)
        return abs(coeffs[n]) * math.exp(-2 * math.pi * (n + 1 + self.kappa0) * y)

    # -- evaluation ------------------------------------------------------------

    def eval(self, z: complex) -> complex:
        return complex(self.eval_many(np.array([z]))[0])

    def __call__(self, z: complex) -> complex:
        return self.eval(z)

    def eval_many(self, zs: np.ndarray) -> np.ndarray:
        zs = np.asarray(zs, dtype=complex)
        if np.any(zs.imag <= 0):
            raise DomainError("Maass form evaluation requires Im z > 0")
        if self.is_embedding:
            return self._embedding_eval(zs, raised=False)
        return self._surrogate_eval(zs)

    def raise_many(self, zs: np.ndarray) -> np.ndarray:
        """E^+_k u, analytically termwise."""
        zs = np.asarray(zs, dtype=complex)
        if self.is_embedding:
            return self._embedding_eval(zs, raised=True)
        return self._surrogate_op(zs, +1)

    def lower_many(self, zs: np.ndarray) -> np.ndarray:
        """E^-_k u; identically zero for the holomorphic embedding."""
        zs = np.asarray(zs, dtype=complex)
        if self.is_embedding:
            return np.zeros(zs.shape, dtype=complex)
        return self._surrogate_op(zs, -1)

    # -- embedding internals ---------------------------------------------------

    def _series(self, ws: np.ndarray, derivative: bool) -> np.ndarray:
        c = self.backend.coefficients[: self.truncation]
        q = np.exp(2j * math.pi * ws)
        coeffs = np.zeros(len(c) + 1, dtype=complex)
        for n, cn in enumerate(c, start=1):
            coeffs[n] = cn * (2j * math.pi * n if derivative else 1.0)
        return np.polynomial.polynomial.polyval(q, coeffs)

    def _embedding_eval(self, zs: np.ndarray, raised: bool) -> np.ndarray:
        flat = zs.ravel()
        ws = np.empty(flat.shape, dtype=complex)
        phases = np.empty(flat.shape, dtype=complex)
        k_out = self.k + (2.0 if raised else 0.0)
        for i, z in enumerate(flat):
            w, g = reduce_to_fundamental_domain(complex(z))
            ws[i] = w
            if g is IDENTITY or (g.c == 0 and g.a == 1):
                phases[i] = 1.0
            else:
                phases[i] = cmath.exp(-1j * k_out * principal_arg(mu(g, complex(z))))
        y = ws.imag
        f = self._series(ws, derivative=False)
        if not raised:
            vals = phases * y ** (self.k / 2.0) * f
        else:
            fp = self._series(ws, derivative=True)
            vals = phases * (
                2.0 * self.k * y ** (self.k / 2.0) * f
                + 4j * y ** (self.k / 2.0 + 1.0) * fp
            )
        return vals.reshape(zs.shape)

    # -- surrogate internals -----------------------------------------------------

    def _spectral_data(self):
        """(coefficients, frequencies, whittaker index per term, tables)."""
        if self._tables is None:
            backend = self.backend
            pos = tuple(backend.coefficients[: self.truncation])
            neg = tuple(backend.negative_coefficients)
            coeffs = np.asarray(pos + neg, dtype=complex)
            freqs = np.concatenate(
                [
                    np.arange(1, len(pos) + 1) + backend.kappa0,
                    backend.kappa0 - np.arange(1, len(neg) + 1),
                ]
            )
            kappas = np.where(freqs > 0, self.k / 2.0, -self.k / 2.0)
            tables = {}
            for kap in np.unique(kappas):
                tables[float(kap)] = WhittakerTable(float(kap), self.nu)
            self._tables = (coeffs, freqs, kappas, tables)
        return self._tables

    def _surrogate_radial(self, y: np.ndarray) -> np.ndarray:
        """Matrix of W(4 pi |freq| y) values, one row per Fourier term."""
        coeffs, freqs, kappas, tables = self._spectral_data()
        rows = np.empty((len(coeffs), y.size), dtype=complex)
        for i, (freq, kap) in enumerate(zip(freqs, kappas)):
            rows[i] = tables[float(kap)](4.0 * math.pi * abs(freq) * y)
        return rows

    def _surrogate_eval(self, zs: np.ndarray) -> np.ndarray:
        flat = zs.ravel()
        x, y = flat.real, flat.imag
        coeffs, freqs, _, _ = self._spectral_data()
        rows = self._surrogate_radial(y)
        waves = np.exp(2j * math.pi * freqs[:, None] * x[None, :])
        vals = (coeffs[:, None] * rows * waves).sum(axis=0)
        return vals.reshape(zs.shape)

    def _surrogate_op(self, zs: np.ndarray, sign: int) -> np.ndarray:
        """E^{+-}_k by exact x-derivative and 5-point differencing in y."""
        flat = zs.ravel()
        x, y = flat.real, flat.imag
        n = flat.size
        coeffs, freqs, _, _ = self._spectral_data()
        waves = np.exp(2j * math.pi * freqs[:, None] * x[None, :])

        h = 1e-3 * np.minimum(1.0, y)
        stacked = np.concatenate([y + 2 * h, y + h, y - h, y - 2 * h, y])
        rows_all = self._surrogate_radial(stacked)
        sums = np.empty((5, n), dtype=complex)
        for i in range(5):
            sums[i] = (coeffs[:, None] * rows_all[:, i * n : (i + 1) * n] * waves).sum(axis=0)
        dy = (-sums[0] + 8 * sums[1] - 8 * sums[2] + sums[3]) / (12.0 * h)
        value = sums[4]
        dx = (
            coeffs[:, None]
            * rows_all[:, 4 * n :]
            * waves
            * (2j * math.pi * freqs[:, None])
        ).sum(axis=0)
        out = sign * 2j * y * dx + 2.0 * y * dy + sign * self.k * value
        return out.reshape(zs.shape)

    def to_json(self) -> dict:
        return form_to_json(self)


class ConjugateForm:
    """The lower-half-plane conjugate z -> u(conj z) of a Maass form."""

    def __init__(self, source: MaassForm):
        self.source = source
        self.weight = -source.weight
        self.k = -source.k
        self.nu = source.nu
        self.multiplier = source.multiplier

    def eval(self, z: complex) -> complex:
        return complex(self.eval_many(np.array([z]))[0])

    def __call__(self, z: complex) -> complex:
        return self.eval(z)

    def eval_many(self, zs: np.ndarray) -> np.ndarray:
        zs = np.asarray(zs, dtype=complex)
        if np.any(zs.imag >= 0):
            raise DomainError("conjugate form evaluation requires Im z < 0")
        return self.source.eval_many(np.conj(zs))


# ---------------------------------------------------------------------------
# Maass operators on arbitrary sampled functions


def _fd_partials(fn: Callable, z: complex, h: float) -> tuple:
    """5-point first partials (f_x, f_y) of fn at z."""

    def d(direction):
        return (
            -fn(z + 2 * h * direction)
            + 8 * fn(z + h * direction)
            - 8 * fn(z - h * direction)
            + fn(z - 2 * h * direction)
        ) / (12.0 * h)

    return d(1.0), d(1j)


def _fd_step(z: complex) -> float:
    return 1e-3 * min(1.0, abs(z.imag))


def maass_raise(f, z: complex, k: float | None = None, method: str = "auto") -> complex:
    """E^+_k f at z; analytic for form backends, finite differences otherwise."""
    return _maass_op(f, z, k, method, +1)


def maass_lower(f, z: complex, k: float | None = None, method: str = "auto") -> complex:
    """E^-_k f at z."""
    return _maass_op(f, z, k, method, -1)


def _maass_op(f, z, k, method, sign):
    z = complex(z)
    if isinstance(f, MaassForm) and method == "auto":
        arr = np.array([z])
        vals = f.raise_many(arr) if sign > 0 else f.lower_many(arr)
        return complex(vals[0])
    if isinstance(f, MaassForm):
        k = f.k
        fn = f.eval
    elif isinstance(f, ConjugateForm):
        if k is None:
            k = f.k
        fn = f.eval
    else:
        if k is None:
            raise ValueError("a weight is required for generic functions")
        fn = f
    y = z.imag
    fx, fy = _fd_partials(fn, z, _fd_step(z))
    return sign * 2j * y * fx + 2.0 * y * fy + sign * k * fn(z)


def maass_laplacian_fd(fn: Callable, k: float, z: complex, h: float | None = None) -> complex:
    """Weight-k hyperbolic Laplacian by 5-point second differences."""
    z = complex(z)
    if h is None:
        h = _fd_step(z)
    y = z.imag
    fxx = (
        -fn(z + 2 * h) + 16 * fn(z + h) - 30 * fn(z) + 16 * fn(z - h) - fn(z - 2 * h)
    ) / (12.0 * h * h)
    fyy = (
        -fn(z + 2j * h) + 16 * fn(z + 1j * h) - 30 * fn(z) + 16 * fn(z - 1j * h) - fn(z - 2j * h)
    ) / (12.0 * h * h)
    fx = (-fn(z + 2 * h) + 8 * fn(z + h) - 8 * fn(z - h) + fn(z - 2 * h)) / (12.0 * h)
    return -y * y * (fxx + fyy) + 1j * k * y * fx


# ---------------------------------------------------------------------------
# slash actions


def _multiplier_value(v, g: GroupElement) -> complex:
    if v is None or v == 1:
        return 1.0 + 0.0j
    if isinstance(v, MultiplierSystem):
        return v.evaluate(g)
    return complex(v)


def slash(f: Callable, k: float, v, g: GroupElement) -> Callable:
    """(f |_k^v g)(z) = e^{-ik arg mu(g,z)} v(g)^{-1} f(g z)."""
    vg = _multiplier_value(v, g)

    def acted(z: complex) -> complex:
        z = complex(z)
        return cmath.exp(-1j * float(k) * principal_arg(mu(g, z))) / vg * f(moebius(g, z))

    return acted


def dslash(f: Callable, nu: complex, v, g: GroupElement) -> Callable:
    """(f ||_nu^v g)(z) = v(g)^{-1} mu(g,z)^{2 nu - 1} f(g z)."""
    vg = _multiplier_value(v, g)
    nu = complex(nu)

    def acted(z: complex) -> complex:
        z = complex(z)
        m = mu(g, z)
        if z.imag == 0.0:
            admissible = has_nonnegative_entries(g) or (m.imag == 0.0 and m.real > 0.0)
            if not admissible:
                raise BranchViolationError(
                    f"{g} does not act on the cut plane at z = {z}"
                )
        return principal_pow(m, 2 * nu - 1) / vg * f(moebius(g, z))

    return acted


# ---------------------------------------------------------------------------
# convenience constructors and JSON i/o


def delta_form(n_terms: int = 50) -> MaassForm:
    """The weight-12 discriminant form embedded as a Maass form, nu = 11/2."""
    return MaassForm(
        weight=12,
        multiplier=construct_trivial(12),
        nu=5.5,
        backend=HolomorphicEmbedding(delta_coefficients(n_terms)),
    )


def boundary_balanced_coefficients(nu: complex, kappa0: float, count: int = 6) -> tuple:
    """Coefficients whose y^{1/2-nu} boundary tail cancels.

    Each Whittaker term behaves like c+ t^{1/2+nu} + c- t^{1/2-nu} as the
    argument drops to zero; along the transform contours the c- parts sum
    to a single linear functional of the coefficients and, left alone, make
    the period function grow like log(1/zeta) toward the origin (a genuine
    cusp form suppresses this through its decay at every cusp).  Solving
    the last coefficient from sum a_n (n + kappa0)^{1/2-nu} = 0 restores
    the bounded behaviour the growth bounds assume.
    """
    base = [(1.0 + 0.4j * ((-1) ** n)) / (n * n) for n in range(1, count)]
    weights = [principal_pow(n + kappa0, 0.5 - complex(nu)) for n in range(1, count + 1)]
    last = -sum(a * w for a, w in zip(base, weights[:-1])) / weights[-1]
    return tuple(base) + (last,)


def surrogate_form(
    weight, nu, coefficients=None, multiplier=None, negative_coefficients=()
) -> MaassForm:
    """A Whittaker surrogate at half-integral weight with the eta-power system."""
    k = parse_weight(weight)
    if multiplier is None:
        multiplier = construct_eta_power(k)
    theta = principal_arg(multiplier.v_t)
    kappa0 = theta / (2.0 * math.pi)
    if kappa0 < 0:
        kappa0 += 1.0
    if coefficients is None:
        coefficients = boundary_balanced_coefficients(nu, kappa0)
    return MaassForm(
        weight=k,
        multiplier=multiplier,
        nu=nu,
        backend=WhittakerSurrogate(
            tuple(coefficients), kappa0, tuple(negative_coefficients)
        ),
    )


def two_sided_surrogate(weight, nu) -> MaassForm:
    """A surrogate with both frequency signs populated, so the ray transform
    is nondegenerate on both half-planes."""
    pos = tuple((1.0 + 0.4j * ((-1) ** n)) / (n * n) for n in range(1, 5))
    neg = tuple((0.7 - 0.3j * ((-1) ** n)) / (n * n) for n in range(1, 5))
    return surrogate_form(weight, nu, coefficients=pos, negative_coefficients=neg)


def _parse_complex(value) -> complex:
    if isinstance(value, (list, tuple)):
        return complex(value[0], value[1])
    if isinstance(value, str):
        return complex(value.replace(" ", "").replace("i", "j"))
    return complex(value)


def form_from_json(data: dict) -> MaassForm:
    """Build a form from {weight, multiplier, nu, backend, coefficients, ...}."""
    weight = parse_weight(data["weight"])
    mult_name = data.get("multiplier", "trivial")
    if mult_name in ("trivial", 1):
        multiplier = construct_trivial(weight)
    elif mult_name in ("eta-power", "eta_power"):
        multiplier = construct_eta_power(weight)
    else:
        raise ValueError(f"unknown multiplier {mult_name!r}")
    nu = _parse_complex(data["nu"])
    coeffs = tuple(_parse_complex(c) for c in data["coefficients"])
    backend_name = data["backend"]
    if backend_name == "holomorphic_embedding":
        backend = HolomorphicEmbedding(coeffs)
    elif backend_name == "whittaker_surrogate":
        theta = principal_arg(multiplier.v_t)
        kappa0 = data.get("kappa0", theta / (2 * math.pi) % 1.0)
        neg = tuple(_parse_complex(c) for c in data.get("negative_coefficients", ()))
        backend = WhittakerSurrogate(coeffs, float(kappa0), neg)
    else:
        raise ValueError(f"unknown backend {backend_name!r}")
    return MaassForm(
        weight=weight,
        multiplier=multiplier,
        nu=nu,
        backend=backend,
        truncation=data.get("truncation"),
    )


def form_to_json(form: MaassForm) -> dict:
    out = {
        "weight": str(form.weight),
        "multiplier": form.multiplier.kind.replace("_", "-"),
        "nu": [form.nu.real, form.nu.imag],
        "backend": form.backend.name,
        "coefficients": [[complex(c).real, complex(c).imag] for c in form.backend.coefficients],
        "truncation": form.truncation,
    }
    if not form.is_embedding:
        out["kappa0"] = form.backend.kappa0
        if form.backend.negative_coefficients:
            out["negative_coefficients"] = [
                [complex(c).real, complex(c).imag] for c in form.backend.negative_coefficients
            ]
    return out

"""K-Bessel with complex order and Whittaker W functions.

Both are evaluated from real-axis integral representations by composite
Gauss-Legendre panels sized to the oscillation frequency of the integrand,
so everything vectorises over the argument.  These are the building blocks
for the Fourier terms of the half-integral-weight surrogate forms.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DomainError, UnsupportedParameterError

__all__ = ["WhittakerParams", "gamma_complex", "bessel_k", "whittaker_w", "WhittakerTable"]

# Lanczos approximation, g = 7 with 9 coefficients; relative error < 1e-13
# on the right half-plane, extended by reflection.
_LANCZOS_G = 7.0
_LANCZOS_COEFFS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def gamma_complex(s: complex) -> complex:
    """Gamma function for complex argument (Lanczos, reflection for Re s < 1/2)."""
    s = complex(s)
    if s.real < 0.5:
        if s.imag == 0.0 and s.real == round(s.real):
            raise DomainError(f"gamma pole at {s}")
        return math.pi / (cmath.sin(math.pi * s) * gamma_complex(1.0 - s))
    z = s - 1.0
    acc = _LANCZOS_COEFFS[0]
    for i, c in enumerate(_LANCZOS_COEFFS[1:], start=1):
        acc += c / (z + i)
    t = z + _LANCZOS_G + 0.5
    return math.sqrt(2.0 * math.pi) * t ** (z + 0.5) * cmath.exp(-t) * acc


@lru_cache(maxsize=64)
def _gauss_rule(n: int):
    x, w = np.polynomial.legendre.leggauss(n)
    return x, w


def _panel_nodes(a: float, b: float, width: float, order: int):
    """Composite Gauss-Legendre nodes/weights on [a, b] with bounded panels."""
    n_panels = max(1, int(math.ceil((b - a) / width)))
    edges = np.linspace(a, b, n_panels + 1)
    x, w = _gauss_rule(order)
    half = 0.5 * (edges[1:] - edges[:-1])
    mid = 0.5 * (edges[1:] + edges[:-1])
    nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return nodes, weights


def bessel_k(nu: complex, x: float, truncation: float | None = None) -> complex:
    """Modified Bessel K of complex order via the cosh integral.

    Integrates exp(-x cosh t) cosh(nu t) over [0, T] where T is chosen so
    the dropped tail is below 1e-18 relative to the value scale.
    """
    nu = complex(nu)
    x = float(x)
    if x <= 0:
        raise DomainError(f"bessel_k requires x > 0, got {x}")
    if truncation is None:
        t_cut = 1.0
        for _ in range(8):
            target = (42.0 + abs(nu.real) * t_cut) / x
            t_cut = math.acosh(max(target, 1.0 + 1e-9))
        truncation = t_cut
    width = min(1.0, 6.0 / (1.0 + abs(nu)))
    nodes, weights = _panel_nodes(0.0, float(truncation), width, 20)
    vals = np.exp(-x * np.cosh(nodes)) * np.cosh(nu * nodes)
    return complex(np.sum(weights * vals))


@dataclass(frozen=True)
class WhittakerParams:
    """Index pair for W_{kappa, mu}; kappa is real in all uses here."""

    kappa: float
    mu: complex


def whittaker_w(params: WhittakerParams, y) -> complex | np.ndarray:
    """Whittaker W function from its real-axis integral representation.

        W(y) = e^{-y/2} y^kappa / Gamma(mu - kappa + 1/2)
               * int_0^inf e^{-t} t^{mu-kappa-1/2} (1 + t/y)^{mu+kappa-1/2} dt

    The representation needs Re(mu - kappa + 1/2) > 0; since W is symmetric
    in mu, the reflection mu -> -mu is tried first when that fails.  Accepts
    a scalar y > 0 or an array of them (shared quadrature grid).
    """
    kappa = float(params.kappa)
    mu = complex(params.mu)
    scalar = np.isscalar(y)
    ys = np.atleast_1d(np.asarray(y, dtype=float))
    if np.any(ys <= 0):
        raise DomainError("whittaker_w requires y > 0")

    alpha = mu - kappa + 0.5
    if alpha == 0 or -mu - kappa + 0.5 == 0:
        # first index mu + 1/2: the integral collapses and W = e^{-y/2} y^kappa
        out = np.exp(-ys / 2.0) * ys**kappa
        return complex(out[0]) if scalar else out.astype(complex)
    small = ys <= 0.5
    if np.any(small) and _series_applicable(mu):
        out = np.empty(ys.shape, dtype=complex)
        out[small] = _whittaker_series(kappa, mu, ys[small])
        if np.any(~small):
            out[~small] = np.asarray(
                whittaker_w(WhittakerParams(kappa, mu), ys[~small]), dtype=complex
            )
        return complex(out[0]) if scalar else out
    if alpha.real <= 0:
        mu = -mu
        alpha = mu - kappa + 0.5
    if alpha.real <= 0:
        out = _whittaker_recurrence(kappa, complex(params.mu), ys)
        return complex(out[0]) if scalar else out
    if alpha.imag == 0.0 and alpha.real == round(alpha.real) and alpha.real < 0:
        raise UnsupportedParameterError(
            f"degenerate index pair kappa={kappa}, mu={params.mu}"
        )
    beta = mu + kappa - 0.5

    # substitute t = e^u: integrand exp(-e^u) e^{u alpha} (1 + e^u/y)^beta
    lower = -min(max(42.0 / alpha.real, 8.0), 2000.0)
    upper = math.log(60.0 + 15.0 * (abs(beta) + 1.0))
    width = min(1.5, 6.0 / (1.0 + abs(alpha.imag) + abs(beta.imag)))
    nodes, weights = _panel_nodes(lower, upper, width, 24)

    eu = np.exp(nodes)
    base = np.exp(-eu + nodes * alpha)
    out = np.empty(ys.shape, dtype=complex)
    chunk = 256
    for i in range(0, ys.size, chunk):
        yy = ys[i : i + chunk]
        factor = (1.0 + eu[None, :] / yy[:, None]) ** beta
        out[i : i + chunk] = factor @ (weights * base)
    out *= np.exp(-ys / 2.0) * ys**kappa / gamma_complex(alpha)
    return complex(out[0]) if scalar else out


def _whittaker_recurrence(kappa: float, mu: complex, ys: np.ndarray) -> np.ndarray:
    """Step the first index up from the region where the integral applies.

        W_{k+1,m}(y) = (y - 2k) W_{k,m}(y) - (k - 1/2 - m)(k - 1/2 + m) W_{k-1,m}(y)

    The step count is the smallest shift giving both base evaluations a
    positive-real integrand exponent with margin 1/4.  The recurrence
    cancels catastrophically as y -> 0, so small arguments take the
    convergent series instead when the connection formula is available.
    """
    out = np.empty(ys.shape, dtype=complex)
    small = ys <= 0.5
    if np.any(small) and _series_applicable(mu):
        out[small] = _whittaker_series(kappa, mu, ys[small])
        small_done = True
    else:
        small_done = False
    rest = ~small if small_done else np.ones(ys.shape, dtype=bool)
    if np.any(rest):
        yr = ys[rest]
        need = 0.25 - max((mu - kappa + 0.5).real, (-mu - kappa + 0.5).real)
        n = int(math.ceil(need))
        prev = np.asarray(whittaker_w(WhittakerParams(kappa - n - 1, mu), yr), dtype=complex)
        curr = np.asarray(whittaker_w(WhittakerParams(kappa - n, mu), yr), dtype=complex)
        for j in range(n):
            kj = kappa - n + j
            nxt = (yr - 2.0 * kj) * curr - (kj - 0.5 - mu) * (kj - 0.5 + mu) * prev
            prev, curr = curr, nxt
        out[rest] = curr
    return out


def _series_applicable(mu: complex) -> bool:
    """The two-term connection formula needs 2 mu away from the integers."""
    two_mu = 2.0 * complex(mu)
    if abs(two_mu.imag) > 0.05:
        return True
    return abs(two_mu.real - round(two_mu.real)) > 0.05


def _kummer_m(a: complex, b: complex, ts: np.ndarray, terms: int = 80) -> np.ndarray:
    total = np.ones(ts.shape, dtype=complex)
    term = np.ones(ts.shape, dtype=complex)
    for n in range(terms):
        term = term * (a + n) / ((b + n) * (n + 1.0)) * ts
        total += term
        if np.max(np.abs(term)) < 1e-18 * max(np.max(np.abs(total)), 1e-300):
            break
    return total


def _whittaker_series(kappa: float, mu: complex, ts: np.ndarray) -> np.ndarray:
    """W from the M-function connection, accurate for small arguments."""
    pref = np.exp(-ts / 2.0)
    out = np.zeros(ts.shape, dtype=complex)
    for sign in (+1.0, -1.0):
        m = sign * mu
        coeff = gamma_complex(-2.0 * m) / gamma_complex(0.5 - m - kappa)
        out += coeff * ts ** (0.5 + m) * _kummer_m(0.5 + m - kappa, 1.0 + 2.0 * m, ts)
    return pref * out


class WhittakerTable:
    """Chebyshev cache of t -> W_{kappa,mu}(t) on log-spaced panels.

    The cached quantity is the slowly varying factor W(t) e^{t/2} t^{-kappa},
    whose dynamic range per panel is tame, so the fit keeps relative
    accuracy even where W decays through dozens of orders; the exponential
    and the power are restored at lookup.  Built once per (kappa, mu) pair;
    lookups are vectorised.  Beyond ``t_max`` the function is below 1e-60
    and is returned as exactly zero.
    """

    DEGREE = 22

    def __init__(self, kappa: float, mu: complex, t_min: float = 1e-40, t_max: float = 320.0):
        self.params = WhittakerParams(kappa, mu)
        self.kappa = float(kappa)
        self.s_lo = math.log(t_min)
        self.s_hi = math.log(t_max)
        n_panels = int(math.ceil(self.s_hi - self.s_lo))
        self.edges = np.linspace(self.s_lo, self.s_hi, n_panels + 1)
        # Chebyshev points of the second kind on each panel
        theta = np.pi * np.arange(self.DEGREE + 1) / self.DEGREE
        ref = np.cos(theta)
        coeffs = []
        for lo, hi in zip(self.edges[:-1], self.edges[1:]):
            s_nodes = 0.5 * (hi + lo) + 0.5 * (hi - lo) * ref
            t_nodes = np.exp(s_nodes)
            vals = np.asarray(whittaker_w(self.params, t_nodes), dtype=complex)
            vals *= np.exp(t_nodes / 2.0) * t_nodes ** (-self.kappa)
            coeffs.append(np.polynomial.chebyshev.chebfit(ref, vals, self.DEGREE))
        self.coeffs = np.array(coeffs)

    def __call__(self, t) -> np.ndarray:
        ts = np.atleast_1d(np.asarray(t, dtype=float))
        out = np.zeros(ts.shape, dtype=complex)
        s = np.full(ts.shape, -np.inf)
        positive = ts > 0
        s[positive] = np.log(ts[positive])
        inside = (s >= self.s_lo) & (s <= self.s_hi)
        if np.any(s[positive] < self.s_lo):
            raise DomainError("argument below the tabulated range")
        idx = np.clip(
            np.searchsorted(self.edges, s[inside], side="right") - 1,
            0,
            len(self.coeffs) - 1,
        )
        lo = self.edges[idx]
        hi = self.edges[idx + 1]
        x = (2.0 * s[inside] - (hi + lo)) / (hi - lo)
        # Clenshaw with per-point coefficient rows, vectorised over points
        c = self.coeffs[idx]
        b1 = np.zeros(x.shape, dtype=complex)
        b2 = np.zeros(x.shape, dtype=complex)
        two_x = 2.0 * x
        for j in range(self.DEGREE, 0, -1):
            b1, b2 = c[:, j] + two_x * b1 - b2, b1
        vals = c[:, 0] + x * b1 - b2
        t_in = ts[inside]
        out[inside] = vals * np.exp(-t_in / 2.0) * t_in**self.kappa
        return out if np.ndim(t) else out.reshape(())[()]

"""Adaptive integration of 1-forms along hyperbolic geodesics and polylines.

Paths compile to smooth parametrised pieces (straight segments, vertical
rays, geodesic arcs in hyperbolic-angle parametrisation).  Cusp ends are
truncated by magnitude walks with a tail estimate folded into the error
budget; endpoint singularities of exponent in (-1, 0) are removed by a
power substitution; power-law-oscillatory approaches to the real axis use
a logarithmic substitution.  The core rule is an embedded Gauss pair
(15/31 nodes) with bisection of the worst interval.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .config import DEFAULTS, Settings
from .errors import DivergentIntegralError, DomainError, NonconvergenceError
from .kernel import OneFormSample
from .modgroup import INFINITY, GroupElement, moebius
from .specfun import _gauss_rule

__all__ = [
    "GeodesicPath",
    "QuadratureResult",
    "integrate_form",
    "geodesic_image",
    "vectorize_form",
]


@dataclass(frozen=True)
class QuadratureResult:
    value: complex
    abs_error_estimate: float
    evaluations: int
    metadata: dict = field(default_factory=dict)


@dataclass(frozen=True)
class GeodesicPath:
    """A vertical ray, a geodesic arc, or a polyline of straight pieces.

    Arc endpoints may be real numbers, :data:`INFINITY`, or one interior
    point; boundary endpoints mean the full geodesic into that point.
    Polyline vertices are finite (the first may be real); an
    :data:`INFINITY` final vertex appends a vertical ray.
    """

    kind: str
    points: tuple

    @classmethod
    def vertical_ray(cls, base: complex, toward: int = +1) -> "GeodesicPath":
        return cls("vertical_ray", (complex(base), int(toward)))

    @classmethod
    def arc(cls, e1, e2) -> "GeodesicPath":
        return cls("arc", (e1, e2))

    @classmethod
    def polyline(cls, vertices: Sequence) -> "GeodesicPath":
        vertices = tuple(vertices)
        if any(v is INFINITY for v in vertices[:-1]):
            raise DomainError("INFINITY may only terminate a polyline")
        return cls("polyline", vertices)


def geodesic_image(path: GeodesicPath, g: GroupElement) -> GeodesicPath:
    """The image geodesic under a fractional linear map (rays and arcs only)."""
    if path.kind == "vertical_ray":
        base, toward = path.points
        if toward < 0:
            raise DomainError("images of downward rays are not needed on H")
        e1, e2 = base, INFINITY
    elif path.kind == "arc":
        e1, e2 = path.points
    else:
        raise DomainError("polylines are not geodesics; map their vertices instead")
    return GeodesicPath.arc(moebius(g, e1), moebius(g, e2))


def vectorize_form(omega: Callable) -> Callable:
    """Adapt a scalar z -> OneFormSample function to the array protocol."""

    def many(zs: np.ndarray):
        samples = [omega(complex(z)) for z in np.ravel(zs)]
        a = np.array([s.A for s in samples], dtype=complex).reshape(np.shape(zs))
        b = np.array([s.B for s in samples], dtype=complex).reshape(np.shape(zs))
        return a, b

    return many


# ---------------------------------------------------------------------------
# evaluation budget and the adaptive core


class _Budget:
    def __init__(self, limit: int):
        self.limit = limit
        self.used = 0

    def spend(self, n: int):
        self.used += n
        if self.used > self.limit:
            raise NonconvergenceError(0.0, float("inf"), self.used)


def _adaptive(phi, a: float, b: float, tol: float, budget: _Budget, initial: int = 4):
    x15, w15 = _gauss_rule(15)
    x31, w31 = _gauss_rule(31)

    def gauss(lo, hi):
        half = 0.5 * (hi - lo)
        mid = 0.5 * (hi + lo)
        budget.spend(46)
        i31 = half * np.sum(w31 * phi(mid + half * x31))
        i15 = half * np.sum(w15 * phi(mid + half * x15))
        return complex(i31), abs(i31 - i15)

    edges = np.linspace(a, b, initial + 1)
    heap = []
    total = 0.0 + 0.0j
    total_err = 0.0
    for lo, hi in zip(edges[:-1], edges[1:]):
        val, err = gauss(lo, hi)
        total += val
        total_err += err
        heapq.heappush(heap, (-err, lo, hi, val))
    width_floor = 5e-15 * (abs(a) + abs(b) + 1.0)
    while total_err > tol and heap:
        neg_err, lo, hi, val = heapq.heappop(heap)
        err = -neg_err
        if err <= tol * 1e-3 or hi - lo < width_floor:
            heapq.heappush(heap, (neg_err, lo, hi, val))
            break
        try:
            mid = 0.5 * (lo + hi)
            v1, e1 = gauss(lo, mid)
            v2, e2 = gauss(mid, hi)
        except NonconvergenceError as exc:
            raise NonconvergenceError(total, total_err, budget.used) from exc
        total += v1 + v2 - val
        total_err += e1 + e2 - err
        heapq.heappush(heap, (-e1, lo, mid, v1))
        heapq.heappush(heap, (-e2, mid, hi, v2))
    return total, max(total_err, 0.0)


# ---------------------------------------------------------------------------
# truncation walks and substitutions


def _walk_out(phi, budget, start: float, tol: float, factor: float = 1.7, cap: float = 1e7):
    """Find T beyond which the exponential tail is below tol; (T, tail)."""
    t = start
    prev = None
    while t < cap:
        budget.spend(1)
        m = abs(complex(phi(np.array([t]))[0]))
        if m == 0.0:
            return t, 0.0
        if prev is not None:
            pt, pm = prev
            if m < pm:
                rate = (math.log(pm) - math.log(m)) / (t - pt)
                tail = m / max(rate, 1e-6)
                if tail < tol:
                    return t, tail
        prev = (t, m)
        t *= factor
    return t, abs(complex(phi(np.array([t / factor]))[0])) * t


def _walk_in(phi, budget, t1: float, tol: float):
    """Find t_min near a parameter-0 endpoint with remaining mass below tol."""
    t = t1 / 4.0
    while t > 1e-280:
        budget.spend(1)
        m = abs(complex(phi(np.array([t]))[0]))
        if m == 0.0 or m * t < tol:
            return t, m * t
        t /= 6.0
    return t, 0.0


def _power_substituted(phi, alpha: float):
    p = 1.0 / (1.0 + alpha)

    def phi_s(s):
        s = np.asarray(s, dtype=float)
        return phi(s**p) * p * s ** (p - 1.0)

    return phi_s


def _log_substituted(phi):
    def phi_u(u):
        t = np.exp(np.asarray(u, dtype=float))
        return phi(t) * t

    return phi_u


def _start_handled(phi, t_hi: float, mode, tol, budget):
    """Integrate phi over (0, t_hi] honouring a start-singularity mode."""
    if mode is None:
        val, err = _adaptive(phi, 0.0, t_hi, tol, budget)
        return val, err, "plain"
    tag = mode[0]
    if tag == "power":
        alpha = complex(mode[1])
        if alpha.real <= -1.0:
            raise DivergentIntegralError(f"endpoint exponent {alpha} <= -1")
        if alpha.imag != 0.0:
            # |t|^alpha with complex alpha oscillates in log t all the way
            # down; in the log variable the modulus decays like
            # e^{(1+Re alpha) u} and the oscillation has fixed frequency
            tag = "log"
        elif alpha.real >= 0.0:
            val, err = _adaptive(phi, 0.0, t_hi, tol, budget)
            return val, err, "plain"
        else:
            val, err = _adaptive(
                _power_substituted(phi, alpha.real), 0.0, t_hi ** (1.0 + alpha.real), tol, budget
            )
            return val, err, f"power({alpha.real:.3g})"
    if tag == "log":
        t_min, tail = _walk_in(phi, budget, t_hi, tol / 10.0)
        n_panels = max(4, int(math.log(t_hi / t_min)))
        val, err = _adaptive(
            _log_substituted(phi), math.log(t_min), math.log(t_hi), tol, budget, initial=n_panels
        )
        return val, err + tail, "log"
    if tag == "exp":
        t_min, tail = _walk_in(phi, budget, t_hi, tol / 10.0)
        val, err = _adaptive(phi, t_min, t_hi, tol, budget)
        return val, err + tail, "exp"
    raise ValueError(f"unknown endpoint mode {mode!r}")


# ---------------------------------------------------------------------------
# pieces


def _segment_phi(omega, z0: complex, z1: complex):
    d = z1 - z0

    def phi(t):
        t = np.asarray(t, dtype=float)
        av, bv = omega(z0 + t * d)
        return av * d + bv * np.conj(d)

    return phi


def _ray_phi(omega, base: complex, toward: int):
    step = 1j * toward

    def phi(t):
        t = np.asarray(t, dtype=float)
        av, bv = omega(base + step * t)
        return av * step + bv * np.conj(step)

    return phi


def _arc_phi(omega, c: float, r: float):
    def phi(s):
        s = np.asarray(s, dtype=float)
        sech = 1.0 / np.cosh(s)
        z = c + r * np.tanh(s) + 1j * r * sech
        vel = r * sech * (sech - 1j * np.tanh(s))
        av, bv = omega(z)
        return av * vel + bv * np.conj(vel)

    return phi


# ---------------------------------------------------------------------------
# public entry point


def integrate_form(
    omega,
    path: GeodesicPath,
    tol: float | None = None,
    max_evals: int | None = None,
    start_mode=None,
    end_mode=None,
    settings: Settings = DEFAULTS,
) -> QuadratureResult:
    """Integrate a OneFormSample-valued integrand along a path.

    ``omega`` either maps a z-array to coefficient arrays (A, B) or maps a
    point to a :class:`OneFormSample`.  ``start_mode`` / ``end_mode``
    control endpoint handling: ``("power", alpha)`` for an integrable
    |t|^alpha singularity, ``("log",)`` for a power-law approach to the
    real axis, ``("exp",)`` for cusp decay (walk truncation); boundary
    endpoints default to ``("exp",)``.
    """
    if tol is None:
        tol = settings.quad_tol
    if max_evals is None:
        max_evals = settings.max_evals
    budget = _Budget(max_evals)
    pieces = _compile(path, settings)
    omega = _normalized(omega, pieces)
    n = len(pieces)
    total = 0.0 + 0.0j
    total_err = 0.0
    notes = []
    try:
        for i, piece in enumerate(pieces):
            smode = start_mode if i == 0 else None
            emode = end_mode if i == n - 1 else None
            val, err, note = piece(omega, tol / n, budget, smode, emode)
            total += val
            total_err += err
            notes.append(note)
    except NonconvergenceError as exc:
        raise NonconvergenceError(total + exc.partial, float("inf"), budget.used) from exc
    return QuadratureResult(
        value=total,
        abs_error_estimate=total_err,
        evaluations=budget.used,
        metadata={"pieces": notes, "tol": tol},
    )


def _normalized(omega, pieces) -> Callable:
    """Accept either the array protocol or a scalar OneFormSample function."""
    probe_vals = np.repeat(pieces[0].probe(), 2)  # length-2 so scalar code raises
    try:
        out = omega(probe_vals)
        if isinstance(out, tuple) and len(out) == 2:
            return omega
    except (TypeError, AttributeError, ValueError):
        pass
    sample = omega(complex(probe_vals[0]))
    if isinstance(sample, OneFormSample):
        return vectorize_form(omega)
    raise TypeError("omega must return (A, B) arrays or a OneFormSample")


class _CompiledPiece:
    def __init__(self, runner, probe_point):
        self._runner = runner
        self._probe = probe_point

    def probe(self) -> np.ndarray:
        return np.array([self._probe], dtype=complex)

    def __call__(self, omega, tol, budget, smode, emode):
        return self._runner(omega, tol, budget, smode, emode)


def _compile(path: GeodesicPath, settings: Settings):
    if path.kind == "vertical_ray":
        base, toward = path.points
        return [_make_ray(complex(base), toward, settings)]
    if path.kind == "arc":
        return [_make_arc(path.points[0], path.points[1], settings)]
    pieces = []
    pts = path.points
    for p, q in zip(pts[:-1], pts[1:]):
        if q is INFINITY:
            pieces.append(_make_ray(complex(p), +1, settings))
        else:
            pieces.append(_make_segment(complex(p), complex(q)))
    return pieces


def _make_segment(z0: complex, z1: complex) -> _CompiledPiece:
    def run(omega, tol, budget, smode, emode):
        phi = _segment_phi(omega, z0, z1)
        if emode is not None:
            raise DomainError("singular handling is start-side only; reverse the path")
        val, err, tag = _start_handled(phi, 1.0, smode, tol, budget)
        return val, err, f"segment {tag}"

    return _CompiledPiece(run, 0.5 * (z0 + z1))


def _ray_core(phi, tol, budget, smode, settings):
    t_far, tail = _walk_out(phi, budget, max(1.0, settings.cusp_height), tol / 10.0)
    anchor = min(1.0, 0.5 * t_far)
    val0, err0, tag = _start_handled(phi, anchor, smode, 0.5 * tol, budget)
    val1, err1 = _adaptive(phi, anchor, t_far, 0.5 * tol, budget)
    return val0 + val1, err0 + err1 + tail, f"ray[{tag}] to {t_far:.3g}"


def integrate_ray(
    phi,
    tol: float | None = None,
    max_evals: int | None = None,
    start_mode=None,
    settings: Settings = DEFAULTS,
) -> QuadratureResult:
    """Integrate a pulled-back integrand phi(t) over t in (0, infinity).

    For transforms whose contour starts at a point of the half-plane the
    caller keeps the parametrisation, so the integrand can form its
    differences in exact offset coordinates where base + i t would lose
    the offset to rounding.
    """
    if tol is None:
        tol = settings.quad_tol
    if max_evals is None:
        max_evals = settings.max_evals
    budget = _Budget(max_evals)
    val, err, note = _ray_core(phi, tol, budget, start_mode, settings)
    return QuadratureResult(val, err, budget.used, {"pieces": [note], "tol": tol})


def _make_ray(base: complex, toward: int, settings: Settings) -> _CompiledPiece:
    def run(omega, tol, budget, smode, emode):
        if emode is not None:
            raise DomainError("ray far ends are truncated automatically")
        phi = _ray_phi(omega, base, toward)
        return _ray_core(phi, tol, budget, smode, settings)

    return _CompiledPiece(run, base + 1j * toward * max(0.5, abs(base.imag) or 0.5))


def _make_arc(e1, e2, settings: Settings) -> _CompiledPiece:
    finite1 = e1 is not INFINITY
    finite2 = e2 is not INFINITY
    if not finite1 and not finite2:
        raise DomainError("a geodesic needs a finite endpoint")
    if not finite2:
        p = complex(e1)
        inner = _make_ray(p, +1, settings)
        return inner
    if not finite1:
        p = complex(e2)
        inner = _make_ray(p, +1, settings)

        def run(omega, tol, budget, smode, emode):
            val, err, note = inner(omega, tol, budget, smode, emode)
            return -val, err, note + " reversed"

        return _CompiledPiece(run, p + 1j * max(0.5, abs(p.imag) or 0.5))
    a, b = complex(e1), complex(e2)
    if a.imag == 0.0 and b.imag == 0.0:
        if a.real == b.real:
            raise DomainError("degenerate geodesic")
        c = 0.5 * (a.real + b.real)
        r = 0.5 * abs(b.real - a.real)
        flip = a.real > b.real  # standard parametrisation runs left to right

        def run(omega, tol, budget, smode, emode):
            phi = _arc_phi(omega, c, r)
            far_l, tail_l = _walk_out(lambda s: phi(-s), budget, 4.0, tol / 10.0)
            far_r, tail_r = _walk_out(phi, budget, 4.0, tol / 10.0)
            val, err = _adaptive(phi, -far_l, far_r, tol, budget, initial=8)
            if flip:
                val = -val
            return val, err + tail_l + tail_r, "arc"

        return _CompiledPiece(run, complex(c, r))
    # one interior endpoint, one boundary endpoint
    if a.imag != 0.0 and b.imag == 0.0:
        interior, boundary, flip = a, b.real, False
    elif b.imag != 0.0 and a.imag == 0.0:
        interior, boundary, flip = b, a.real, True
    else:
        raise DomainError("arcs between two interior points are not supported")
    if interior.imag < 0:
        raise DomainError("interior arc endpoints must lie in the upper half-plane")
    c = (abs(interior) ** 2 - boundary**2) / (2.0 * (interior.real - boundary))
    r = abs(boundary - c)
    s_int = math.atanh(max(-1 + 1e-15, min(1 - 1e-15, (interior.real - c) / r)))
    toward_right = boundary > c

    def run(omega, tol, budget, smode, emode):
        phi = _arc_phi(omega, c, r)
        if emode is not None:
            raise DomainError("singular handling is start-side only; reverse the path")
        # shift so the interior endpoint sits at parameter 0
        if toward_right:
            local = lambda t: phi(s_int + np.asarray(t, dtype=float))
        else:
            local = lambda t: phi(s_int - np.asarray(t, dtype=float))
        far, tail = _walk_out(local, budget, 4.0, tol / 10.0)
        anchor = min(1.0, 0.5 * far)
        val0, err0, tag = _start_handled(local, anchor, smode, 0.5 * tol, budget)
        val1, err1 = _adaptive(local, anchor, far, 0.5 * tol, budget)
        val = val0 + val1
        if not toward_right:
            val = -val
        if flip:
            val = -val
        return val, err0 + err1 + tail, f"arc from interior [{tag}]"

    probe_s = s_int + (1.0 if toward_right else -1.0)
    probe = complex(c + r * math.tanh(probe_s), r / math.cosh(probe_s))
    return _CompiledPiece(run, probe)

"""The two-variable R-kernel and the Maass-Selberg 1-form.

The kernel

    R_{k,nu}(z, zeta) = (sqrt(zeta - z) / sqrt(zeta - conj z))^{-k}
                        * (|Im z| / ((zeta - z)(zeta - conj z)))^{(1/2) - nu}

is defined whenever neither difference lies on (-inf, 0]; all roots and
powers are principal.  Two evaluation modes are provided:

* ``combined`` is the displayed formula, with the second factor's power
  taken of the combined quotient.  This is the reference form used by the
  kernel-level identity checks.

* ``factored`` replaces the combined power by
  |Im z|^{1/2-nu} (zeta-z)^{nu-1/2} (zeta-conj z)^{nu-1/2}.  The two modes
  agree whenever arg(zeta-z) + arg(zeta-conj z) lies in (-pi, pi] - in
  particular on every contour used for points with Re zeta > 0 - but only
  the factored form stays real-analytic in z across the vertical line
  through zeta, which is what the deformed contours for the holomorphic
  extension to the cut plane require.

Applying a Maass operator to the kernel shifts its first index by 2; this
is exact and is used instead of differencing whenever a kernel sits inside
an integrand.  The matching operator weight is the first index on the upper
half-plane and its negative on the lower one.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Callable

import numpy as np

from .branch import arg_array, pow_array
from .errors import DomainError, RDomainError
from .forms import ConjugateForm, MaassForm, maass_lower, maass_raise
from .modgroup import GroupElement, moebius, mu
from .branch import principal_arg, principal_pow, in_cut_plane

__all__ = [
    "RKernel",
    "OneFormSample",
    "r_eval",
    "r_transform_check",
    "kernel_eigen_apply",
    "eta_form",
    "eta_form_many",
    "KernelSection",
    "ConjugateKernelSection",
    "FormSection",
    "CallableSection",
    "section_of",
]


@dataclass(frozen=True)
class RKernel:
    """Index pair (k, nu) plus the branch mode described in the module docstring."""

    k: float
    nu: complex
    mode: str = "combined"

    def __post_init__(self):
        if self.mode not in ("combined", "factored"):
            raise ValueError(f"unknown mode {self.mode!r}")

    def shifted(self, step: int) -> "RKernel":
        return replace(self, k=self.k + step)

    def eval(self, z: complex, zeta: complex) -> complex:
        return complex(self.eval_many(np.array([z]), zeta)[0])

    def eval_many(self, zs: np.ndarray, zeta: complex) -> np.ndarray:
        zs = np.asarray(zs, dtype=complex)
        zeta = complex(zeta)
        a = zeta - zs
        b = zeta - np.conj(zs)
        return self._from_pieces(a, b, np.abs(zs.imag))

    def eval_ray(self, base: complex, ts: np.ndarray, zeta: complex) -> np.ndarray:
        """Evaluation along z = base + i t with the differences formed exactly.

        Near a moving endpoint the offset t drops below the resolution of
        base + i t, but the kernel only needs zeta - z = (zeta - base) - i t
        and zeta - conj z = (zeta - conj base) + i t, which stay exact.
        """
        ts = np.asarray(ts, dtype=float)
        zeta = complex(zeta)
        base = complex(base)
        a = (zeta - base) - 1j * ts
        b = (zeta - base.conjugate()) + 1j * ts
        return self._from_pieces(a, b, np.abs(base.imag + ts))

    def _from_pieces(self, a: np.ndarray, b: np.ndarray, y: np.ndarray) -> np.ndarray:
        bad_a = (a.imag == 0.0) & (a.real <= 0.0)
        bad_b = (b.imag == 0.0) & (b.real <= 0.0)
        if np.any(bad_a):
            raise RDomainError("zeta-z", complex(a[bad_a][0]))
        if np.any(bad_b):
            raise RDomainError("zeta-zbar", complex(b[bad_b][0]))
        if np.any(y == 0.0):
            raise DomainError("kernel evaluation requires Im z != 0")
        ratio = pow_array(np.sqrt(np.abs(a) / np.abs(b)) *
                          np.exp(0.5j * (arg_array(a) - arg_array(b))), -self.k)
        s = 0.5 - self.nu
        if self.mode == "combined":
            return ratio * pow_array(y / (a * b), s)
        return ratio * np.exp(s * np.log(y)) * pow_array(a, -s) * pow_array(b, -s)


def r_eval(kernel: RKernel, z: complex, zeta: complex) -> complex:
    """Kernel value at a single pair, with exact domain checks."""
    return kernel.eval(z, zeta)


def kernel_eigen_apply(kernel: RKernel, sign: int, weight: float, upper: bool = True) -> tuple:
    """Closed form of E^{sign}_{weight} applied to z -> R(z, zeta).

    Valid when the operator weight equals the kernel index; because the
    kernel carries |Im z|, the same rule holds on both half-planes (checked
    against finite differences on each).  Returns ``(coefficient, shifted
    kernel)`` with coefficient 1 - 2 nu + sign * k.
    """
    if abs(weight - kernel.k) > 1e-12:
        raise ValueError(
            f"operator weight {weight} does not match kernel index {kernel.k}"
        )
    coefficient = 1.0 - 2.0 * kernel.nu + sign * kernel.k
    return coefficient, kernel.shifted(2 * sign)


def r_transform_check(
    kernel: RKernel, g: GroupElement, z: complex, zeta: complex
) -> float:
    """Relative residual of the kernel transformation law under g.

    Verifies the hypotheses first: both automorphy factors in the cut
    plane, Re mu(g, zeta) > 0, and one of (1) mu(g, zeta) positive real,
    (2) zeta in H with g z on the vertical ray above g zeta, (3) the
    mirror of (2) for zeta in the lower half-plane.
    """
    z = complex(z)
    zeta = complex(zeta)
    m_zeta = mu(g, zeta)
    m_z = mu(g, z)
    if not in_cut_plane(m_zeta):
        raise DomainError(f"mu(g, zeta) = {m_zeta} is on the cut")
    if not in_cut_plane(m_z):
        raise DomainError(f"mu(g, z) = {m_z} is on the cut")
    if not m_zeta.real > 0:
        raise DomainError(f"Re mu(g, zeta) = {m_zeta.real} is not positive")
    gz = moebius(g, z)
    gzeta = moebius(g, zeta)
    tol = 1e-9 * max(1.0, abs(gz), abs(gzeta))
    case1 = m_zeta.imag == 0.0 and m_zeta.real > 0.0
    case2 = zeta.imag > 0 and abs(gz.real - gzeta.real) <= tol and gz.imag > gzeta.imag
    gzbar = moebius(g, z.conjugate())
    gzetabar = moebius(g, zeta.conjugate())
    case3 = (
        zeta.imag < 0
        and abs(gzbar.real - gzetabar.real) <= tol
        and gzbar.imag > gzetabar.imag
    )
    if not (case1 or case2 or case3):
        raise DomainError(
            "none of the three admissibility clauses holds: "
            "mu(g,zeta) not positive real, g z not on the ray above g zeta, "
            "and the conjugate clause fails"
        )
    lhs = kernel.eval(gz, gzeta)
    rhs = (
        np.exp(1j * kernel.k * principal_arg(m_z))
        * principal_pow(m_zeta, 1.0 - 2.0 * kernel.nu)
        * kernel.eval(z, zeta)
    )
    return abs(lhs - rhs) / abs(rhs)


# ---------------------------------------------------------------------------
# sections: things the Maass-Selberg form can pair


class KernelSection:
    """z -> R(z, zeta) with exact eigen-application of the Maass operators."""

    def __init__(self, kernel: RKernel, zeta: complex):
        self.kernel = kernel
        self.zeta = complex(zeta)

    def values(self, zs: np.ndarray) -> np.ndarray:
        return self.kernel.eval_many(zs, self.zeta)

    def e_values(self, sign: int, weight: float, zs: np.ndarray) -> np.ndarray:
        zs = np.asarray(zs, dtype=complex)
        coeff, shifted = kernel_eigen_apply(self.kernel, sign, weight)
        if coeff == 0:
            return np.zeros(zs.shape, dtype=complex)
        return coeff * shifted.eval_many(zs, self.zeta)


class ConjugateKernelSection:
    """z -> R(conj z, zeta); operators act through the reflection."""

    def __init__(self, kernel: RKernel, zeta: complex):
        self.kernel = kernel
        self.zeta = complex(zeta)

    def values(self, zs: np.ndarray) -> np.ndarray:
        return self.kernel.eval_many(np.conj(np.asarray(zs, dtype=complex)), self.zeta)

    def e_values(self, sign: int, weight: float, zs: np.ndarray) -> np.ndarray:
        # (E^+_w [R o conj])(z) = (E^-_{-w} R)(conj z), and vice versa
        zs = np.conj(np.asarray(zs, dtype=complex))
        coeff, shifted = kernel_eigen_apply(self.kernel, -sign, -weight)
        if coeff == 0:
            return np.zeros(zs.shape, dtype=complex)
        return coeff * shifted.eval_many(zs, self.zeta)


class FormSection:
    """A Maass form or its conjugate, with analytic operator application."""

    def __init__(self, form):
        self.form = form

    def values(self, zs: np.ndarray) -> np.ndarray:
        return self.form.eval_many(zs)

    def e_values(self, sign: int, weight: float, zs: np.ndarray) -> np.ndarray:
        if isinstance(self.form, MaassForm):
            if abs(weight - self.form.k) > 1e-12:
                raise ValueError(
                    f"operator weight {weight} does not match form weight {self.form.k}"
                )
            return self.form.raise_many(zs) if sign > 0 else self.form.lower_many(zs)
        # conjugate form: generic differencing at its own weight
        zs = np.asarray(zs, dtype=complex)
        op = maass_raise if sign > 0 else maass_lower
        return np.array([op(self.form.eval, complex(z), k=weight) for z in zs.ravel()]).reshape(
            zs.shape
        )


class CallableSection:
    """A bare callable; operators by 5-point finite differences."""

    def __init__(self, fn: Callable):
        self.fn = fn

    def values(self, zs: np.ndarray) -> np.ndarray:
        zs = np.asarray(zs, dtype=complex)
        return np.array([self.fn(complex(z)) for z in zs.ravel()]).reshape(zs.shape)

    def e_values(self, sign: int, weight: float, zs: np.ndarray) -> np.ndarray:
        zs = np.asarray(zs, dtype=complex)
        op = maass_raise if sign > 0 else maass_lower
        return np.array([op(self.fn, complex(z), k=weight) for z in zs.ravel()]).reshape(zs.shape)


def section_of(obj, zeta=None):
    if isinstance(obj, (KernelSection, ConjugateKernelSection, FormSection, CallableSection)):
        return obj
    if isinstance(obj, RKernel):
        if zeta is None:
            raise ValueError("a kernel section needs its second argument")
        return KernelSection(obj, zeta)
    if isinstance(obj, (MaassForm, ConjugateForm)):
        return FormSection(obj)
    if callable(obj):
        return CallableSection(obj)
    raise TypeError(f"cannot build a section from {obj!r}")


# ---------------------------------------------------------------------------
# the Maass-Selberg form


@dataclass(frozen=True)
class OneFormSample:
    """A dz, d(conj z) coefficient pair at a point."""

    A: complex
    B: complex
    at: complex

    def pullback(self, velocity: complex) -> complex:
        """Contraction with a path velocity dz/dt (the d conj z part rides conj)."""
        return self.A * velocity + self.B * velocity.conjugate()


def eta_form_many(k: float, fsec, gsec, zs: np.ndarray) -> tuple:
    """Coefficient arrays (A, B) of eta_k(f, g) = {E+_k f, g}+ - {f, E-_{-k} g}-."""
    zs = np.asarray(zs, dtype=complex)
    y = zs.imag
    a = fsec.e_values(+1, k, zs) * gsec.values(zs) / y
    b = -fsec.values(zs) * gsec.e_values(-1, -k, zs) / y
    return a, b


def eta_form(k: float, f, g, z: complex, zeta=None) -> OneFormSample:
    """The Maass-Selberg form of a pair at one point.

    ``f`` and ``g`` may be Maass forms, conjugate forms, R-kernels (then
    ``zeta`` supplies the second argument) or bare callables.
    """
    z = complex(z)
    if z.imag == 0:
        raise DomainError("the Maass-Selberg form lives off the real axis")
    fsec = section_of(f, zeta)
    gsec = section_of(g, zeta)
    zs = np.array([z])
    a, b = eta_form_many(float(k), fsec, gsec, zs)
    return OneFormSample(A=complex(a[0]), B=complex(b[0]), at=z)

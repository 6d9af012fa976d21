import cmath
import math

import numpy as np
import pytest

from maassperiods.branch import principal_arg
from maassperiods.errors import DomainError
from maassperiods.forms import (
    ConjugateForm,
    HolomorphicEmbedding,
    MaassForm,
    delta_coefficients,
    delta_form,
    dslash,
    form_from_json,
    form_to_json,
    maass_laplacian_fd,
    maass_lower,
    maass_raise,
    reduce_to_fundamental_domain,
    slash,
    surrogate_form,
    two_sided_surrogate,
)
from maassperiods.modgroup import S, T, T_PRIME, moebius, mu
from maassperiods.multiplier import construct_eta_power, construct_trivial


def test_tau_values():
    tau = delta_coefficients(8)
    assert tau[:6] == (1, -24, 252, -1472, 4830, -6048)


def test_delta_truncation_self_consistency():
    u50 = delta_form(50)
    u60 = MaassForm(12, u50.multiplier, 5.5, HolomorphicEmbedding(delta_coefficients(60)))
    assert abs(u50.eval(1j) - u60.eval(1j)) <= 1e-14 * abs(u50.eval(1j))


def test_embedding_t_equivariance(delta):
    z = 0.3 + 1.2j
    assert abs(delta.eval(z + 1) - delta.eval(z)) <= 1e-12 * abs(delta.eval(z))


def test_embedding_full_equivariance(delta):
    for g in (S, T_PRIME, T.inverse() * S):
        for z in (0.3 + 1.2j, -0.7 + 0.6j):
            lhs = delta.eval(moebius(g, z))
            rhs = cmath.exp(1j * 12 * principal_arg(mu(g, z))) * delta.eval(z)
            assert abs(lhs - rhs) <= 1e-12 * abs(rhs)


def test_embedding_eigen_equation(delta):
    lam = 0.25 - delta.nu**2
    for z in (0.5 + 1.5j, -0.3 + 0.9j):
        resid = maass_laplacian_fd(delta.eval, 12.0, z) - lam * delta.eval(z)
        assert abs(resid) <= 1e-5 * abs(lam * delta.eval(z))


def test_embedding_lowering_vanishes(delta, rng):
    # analytically exact, and the finite-difference route agrees
    for _ in range(20):
        z = complex(rng.uniform(-0.5, 0.5), rng.uniform(0.6, 2.0))
        assert maass_lower(delta, z) == 0
        scale = max(abs(delta.eval(z)), 1e-3)
        assert abs(maass_lower(delta.eval, z, k=12.0)) <= 1e-10 * max(1.0, scale)


def test_embedding_raise_matches_fd(delta):
    z = 0.2 + 1.1j
    analytic = maass_raise(delta, z)
    fd = maass_raise(delta.eval, z, k=12.0)
    assert abs(analytic - fd) <= 1e-7 * abs(analytic)


def test_eval_requires_upper_half_plane(delta):
    with pytest.raises(DomainError):
        delta.eval(1 - 1j)


def test_surrogate_shift(surrogate):
    assert surrogate.backend.kappa0 == pytest.approx(1 / 24)


def test_surrogate_t_equivariance(surrogate):
    z = 0.3 + 1.2j
    lhs = surrogate.eval(z + 1)
    rhs = surrogate.multiplier.v_t * surrogate.eval(z)
    assert abs(lhs - rhs) <= 1e-12 * abs(rhs)


def test_surrogate_eigen_equation(surrogate):
    lam = 0.25 - surrogate.nu**2
    z = 0.3 + 1.2j
    resid = maass_laplacian_fd(surrogate.eval, 0.5, z) - lam * surrogate.eval(z)
    assert abs(resid) <= 1e-5 * abs(lam * surrogate.eval(z))


def test_two_sided_surrogate_eigen_equation(surrogate_two_sided):
    form = surrogate_two_sided
    lam = 0.25 - form.nu**2
    z = 0.4 + 0.9j
    resid = maass_laplacian_fd(form.eval, 0.5, z) - lam * form.eval(z)
    assert abs(resid) <= 1e-5 * abs(lam * form.eval(z))


def test_surrogate_single_term_formula():
    v = construct_eta_power("1/2")
    form = surrogate_form("1/2", 0.4j, coefficients=(1.0,))
    from maassperiods.specfun import WhittakerParams, whittaker_w

    z = 0.3 + 1.4j
    freq = 1 + 1 / 24
    want = whittaker_w(WhittakerParams(0.25, 0.4j), 4 * math.pi * freq * z.imag) * cmath.exp(
        2j * math.pi * freq * z.real
    )
    assert abs(form.eval(z) - want) <= 1e-11 * abs(want)


def test_surrogate_operators_match_fd(surrogate):
    z = 0.3 + 1.2j
    for op in (maass_raise, maass_lower):
        analytic = op(surrogate, z)
        fd = op(surrogate.eval, z, k=0.5)
        assert abs(analytic - fd) <= 1e-6 * max(abs(analytic), 1e-6)


def test_operator_composition_identity(surrogate):
    """E+_{k-2} E-_k u = (1 + 2nu - k)(-1 + 2nu + k) u for an eigenfunction."""
    k, nu = surrogate.k, surrogate.nu
    z = 0.2 + 0.9j
    inner = lambda w: maass_lower(surrogate, w)
    lhs = maass_raise(inner, z, k=k - 2)
    rhs = (1 + 2 * nu - k) * (-1 + 2 * nu + k) * surrogate.eval(z)
    assert abs(lhs - rhs) <= 1e-4 * abs(rhs)


def test_power_eigenfunctions_of_ladder():
    # y^{1/2-nu} scales under both operators by 1 - 2 nu +- k
    k, nu = 0.5, 0.3
    fn = lambda z: complex(z).imag ** (0.5 - nu)
    z = 1j
    up = maass_raise(fn, z, k=k)
    down = maass_lower(fn, z, k=k)
    assert abs(up - (1 - 2 * nu + k) * fn(z)) <= 1e-6 * abs(fn(z))
    assert abs(down - (1 - 2 * nu - k) * fn(z)) <= 1e-6 * abs(fn(z))


def test_conjugate_form(delta):
    tilde = ConjugateForm(delta)
    assert tilde.eval(0.4 - 1.3j) == delta.eval(0.4 + 1.3j)
    with pytest.raises(DomainError):
        tilde.eval(0.4 + 1.3j)
    # tilde u transforms with weight -k and is an eigenfunction there
    z = 1 - 2j
    assert abs(tilde.eval(z + 1) - tilde.eval(z)) <= 1e-12 * abs(tilde.eval(z))
    lam = 0.25 - delta.nu**2
    resid = maass_laplacian_fd(tilde.eval, -12.0, 0.5 - 1.5j) - lam * tilde.eval(0.5 - 1.5j)
    assert abs(resid) <= 1e-5 * abs(lam * tilde.eval(0.5 - 1.5j))


def test_conjugate_transformation_law(delta):
    # tilde u is invariant under the weight -k action for the full group
    tilde = ConjugateForm(delta)
    g = T_PRIME
    z = 1 - 2j
    acted = slash(tilde.eval, -12.0, delta.multiplier, g)(z)
    assert abs(acted - tilde.eval(z)) <= 1e-10 * abs(tilde.eval(z))


def test_slash_identity_and_group_law(delta, rng):
    fn = lambda z: complex(z).imag ** 0.3 * cmath.exp(1j * complex(z).real)
    v = construct_eta_power("1/2")
    ident = slash(fn, 0.5, v, S.inverse() * S)
    z = 0.4 + 1.1j
    assert abs(ident(z) - fn(z)) <= 1e-12
    g, d = T_PRIME, S
    for _ in range(10):
        z = complex(rng.uniform(-1, 1), rng.uniform(0.5, 2.0))
        lhs = slash(fn, 0.5, v, g * d)(z)
        rhs = slash(slash(fn, 0.5, v, g), 0.5, v, d)(z)
        assert abs(lhs - rhs) <= 1e-12 * max(abs(lhs), 1.0)


def test_dslash_translation():
    fn = lambda z: z
    v = construct_eta_power("1/2")
    nu = 0.3j
    z = 0.7 + 0.2j
    acted = dslash(fn, nu, v, T)(z)
    assert abs(acted - (z + 1) / v.v_t) <= 1e-13


def test_dslash_branch_guard():
    from maassperiods.errors import BranchViolationError

    fn = lambda z: 1.0
    v = construct_trivial(0)
    # S at a real point with negative automorphy denominator leaves the cut plane
    with pytest.raises(BranchViolationError):
        dslash(fn, 0.3j, v, S * S * S)(2.0)


def test_reduce_to_fundamental_domain():
    z = 0.37 + 0.02j
    w, g = reduce_to_fundamental_domain(z)
    assert abs(w) >= 1 - 1e-12 and abs(w.real) <= 0.5 + 1e-12
    assert moebius(g, z) == pytest.approx(w)


def test_superpolynomial_decay(delta, surrogate):
    for form in (delta, surrogate):
        ys = np.array([4.0, 8.0, 16.0])
        vals = np.array([abs(form.eval(0.3 + 1j * y)) for y in ys])
        for m in range(1, 9):
            weighted = vals * ys**m
            assert weighted[2] < weighted[1] < weighted[0]


def test_cusp_decay_rate(delta, surrogate):
    # remove the polynomial prefactor (y^{k/2} for the embedding, the
    # Whittaker t^{kappa} for the surrogate) before reading off the rate
    for form, power in ((delta, 6.0), (surrogate, 0.25)):
        y1, y2 = 3.0, 6.0
        drop = abs(form.eval(0.1 + 1j * y2)) / abs(form.eval(0.1 + 1j * y1))
        drop *= (y1 / y2) ** power
        rate = -math.log(drop) / (y2 - y1)
        assert rate >= form.decay_rate - 0.05


def test_json_roundtrip(surrogate, delta, surrogate_two_sided):
    for form in (surrogate, delta, surrogate_two_sided):
        back = form_from_json(form_to_json(form))
        z = 0.21 + 1.3j
        assert abs(back.eval(z) - form.eval(z)) <= 1e-12 * max(abs(form.eval(z)), 1e-12)


def test_embedding_validation():
    with pytest.raises(ValueError):
        MaassForm(12, construct_trivial(12), 0.3j, HolomorphicEmbedding((1, -24)))
    with pytest.raises(ValueError):
        MaassForm(
            "1/2",
            construct_eta_power("1/2"),
            0.3j,
            HolomorphicEmbedding((1, -24)),
        )


def test_surrogate_shift_validation():
    from maassperiods.forms import WhittakerSurrogate

    with pytest.raises(ValueError):
        MaassForm(
            "1/2",
            construct_eta_power("1/2"),
            0.3j,
            WhittakerSurrogate((1.0,), 0.4),  # wrong shift for v(T)
        )

"""Tripartite Werner symmetry: covariant maps L_sigma, block isomorphisms,
extremal witnesses, and the PPT-entangled state family rho_t."""

import numpy as np
import pytest

from covwit import werner3 as w3
from covwit.linalg import (ContractError, DimensionError, is_psd,
                           partial_transpose)
from covwit.oracle import brute_positive_orbit
from covwit.twirl import PERMS, build_V


def random_coeffs(rng, d=3):
    v = rng.uniform(-1, 1, size=6)
    return w3.S3Coeffs(d, v[0], v[1], v[2], v[3], complex(v[4], v[5]))


def test_coeffs_validation():
    with pytest.raises(DimensionError):
        w3.S3Coeffs(2, 1, 0, 0, 0, 0)
    with pytest.raises(ContractError):
        w3.S3Coeffs(3, np.nan, 0, 0, 0, 0)
    c = w3.S3Coeffs(3, 1, 2, 3, 4, complex(5, 6))
    assert c.r == 5 and c.s == 6
    assert np.allclose(c.vector(), [1, 2, 3, 4, 5 + 6j, 5 - 6j])


@pytest.mark.parametrize("d", [2, 3])
@pytest.mark.parametrize("sigma", PERMS)
def test_L_choi_is_V(sigma, d):
    """The unnormalized Choi matrix of L_sigma is V_sigma."""
    c = w3.build_L(sigma, d).choi(normalized=False)
    assert np.abs(c - build_V(sigma, d)).max() < 1e-12


def test_relabel_matches_conjugation():
    """relabel(c, tau) gives the coefficients of V_tau X V_tau."""
    rng = np.random.default_rng(0)
    d = 3
    for tau in ("12", "13", "23"):
        vt = build_V(tau, d)
        for _ in range(5):
            c = random_coeffs(rng, d)
            x = w3.invariant_matrix(c)
            y = w3.invariant_matrix(w3.relabel(c, tau))
            assert np.abs(vt @ x @ vt - y).max() < 1e-12, tau
    with pytest.raises(ContractError):
        w3.relabel(random_coeffs(rng), "123")


def test_invariant_matrix_hermitian_and_trace():
    rng = np.random.default_rng(1)
    for _ in range(10):
        c = random_coeffs(rng)
        x = w3.invariant_matrix(c)
        assert np.abs(x - x.conj().T).max() < 1e-12
        assert np.isclose(np.trace(x).real, w3.trace_w3(c))


@pytest.mark.parametrize("d", [3, 4])
def test_positivity_closed_form_vs_orbit_oracle(d):
    rng = np.random.default_rng(d)
    for _ in range(300):
        c = random_coeffs(rng, d)
        if any(abs(m) < 1e-7 for m in w3.positivity_margins_w3(c)):
            continue
        assert w3.is_positive_w3(c) == \
            brute_positive_orbit(w3.build_map(c))[0]


@pytest.mark.parametrize("d", [3, 4])
def test_block_isomorphisms_vs_psd(d):
    """X PSD iff the F blocks are; X^{T_A} PSD iff the G blocks are."""
    rng = np.random.default_rng(10 + d)
    for _ in range(200):
        c = random_coeffs(rng, d)
        x = w3.invariant_matrix(c)
        assert w3.is_cp_w3(c) == is_psd(x)[0]
        xa = partial_transpose(x, [d, d, d], 0)
        assert w3.is_ccp_w3(c) == is_psd(xa)[0]


def test_G_block_example_a12_only():
    """For the pure a_12 = 1 tuple at d = 3 the G block has the closed form
    [[2, y], [y, 1]] with y = sqrt(d^2-1)/2 and scalar parts 0."""
    c = w3.S3Coeffs(3, 0, 1, 0, 0, 0)
    g = w3.G_iso(c)
    y = np.sqrt(8.0) / 2
    assert g.s1 == 0 and g.s2 == 0
    assert np.abs(g.block - np.array([[2.0, y], [y, 1.0]])).max() < 1e-12


def test_ppt_verdicts_vs_numeric():
    rng = np.random.default_rng(2)
    d = 3
    for _ in range(100):
        c = random_coeffs(rng, d)
        x = w3.invariant_matrix(c)
        got = w3.ppt_w3(c)
        for which, part in ((0, "A-BC"), (1, "B-AC"), (2, "C-AB")):
            assert got[part] == is_psd(
                partial_transpose(x, [d, d, d], which))[0], part


def test_extremal_types_positive_and_tp():
    for kwargs, want_cp, want_ccp in (
            (dict(type_name="I"), True, False),
            (dict(type_name="II", A=0.5, B=0.5, C=0.25), False, True),
            (dict(type_name="III", A=0.5, B=0.5, C=0.5), True, False),
            (dict(type_name="III", A=0.5, B=0.5, C=-0.5), False, True),
    ):
        ex = w3.extremal_w3(d=3, **kwargs)
        c = ex.realized
        assert w3.is_positive_w3(c)
        assert np.isclose(9 * c.a_e + 3 * (c.a_12 + c.a_13 + c.a_23)
                          + 2 * c.r, 1.0)
        assert ex.cp == want_cp and ex.ccp == want_ccp


def test_extremal_rejects_bad_params():
    with pytest.raises(ContractError):
        w3.extremal_w3("II", A=0.1, B=0.1, C=0.9)
    with pytest.raises(ContractError):
        w3.extremal_w3("X")


def test_witness_L0_canonical_form():
    c = w3.witness_L0(3)
    assert np.allclose(c.vector(), [1, 1, -1, 1, -1, -1])
    assert w3.is_positive_w3(c)
    assert not w3.is_cp_w3(c) and not w3.is_ccp_w3(c)  # non-decomposable


def test_rho_t_is_state():
    for d, t in ((3, 1.0), (3, 4.0), (4, 2.0)):
        c, rho = w3.rho_t(d, t)
        assert np.isclose(np.trace(rho).real, 1.0)
        assert is_psd(rho)[0]
        w3.state_check(c)
    with pytest.raises(ContractError):
        w3.rho_t(3, 0.0)


def test_rho_t_certificate_t1():
    """d=3, t=1: A-BC and C-AB PPT, B-AC not; the canonical witness gives
    min eigenvalue -(2/3)/47; overall verdict ENTANGLED."""
    c, _ = w3.rho_t(3, 1.0)
    cert = w3.detect_entanglement_w3(c, grid=8)
    assert cert.check_true("ppt_A-BC")
    assert cert.check_true("ppt_C-AB")
    assert not cert.check_true("ppt_B-AC")
    lo = cert.witnesses[0]["min_eig"]
    assert cert.witnesses[0]["id"] == "L0"
    assert abs(lo + (2 / 3) / 47) < 1e-9
    assert cert.verdict == "ENTANGLED"


def test_rho_t_npt_beyond_threshold():
    """Past the A-BC PPT threshold the state is NPT; the witness sweep also
    fires, so the verdict stays ENTANGLED."""
    c, _ = w3.rho_t(3, 5.6)
    assert not w3.ppt_w3(c)["A-BC"]
    cert = w3.detect_entanglement_w3(c, grid=8)
    assert cert.verdict in ("ENTANGLED", "NPT-ENTANGLED")


def test_t_max_value():
    """The A-BC PPT threshold at d=3 is (21 + sqrt(1161))/10, comfortably
    above the dimension-uniform bound 3.89."""
    tm = w3.t_max(3, tol_t=1e-4)
    assert tm >= 3.89
    assert abs(tm - (21 + np.sqrt(1161)) / 10) < 1e-3


def test_detect_rejects_non_state():
    bad = w3.S3Coeffs(3, 1.0, 0, 0, 0, 0)  # trace 27
    with pytest.raises(ContractError):
        w3.detect_entanglement_w3(bad)


def test_detect_inconclusive_on_separable_like_state():
    """The maximally mixed state is invariant and passes every check."""
    d = 3
    c = w3.S3Coeffs(d, 1.0 / d**3, 0, 0, 0, 0)
    cert = w3.detect_entanglement_w3(c, grid=6)
    assert all(cert.check_true(f"ppt_{p}")
               for p in ("A-BC", "B-AC", "C-AB"))
    assert cert.check_true("witness_sweep")
    assert cert.verdict == "INCONCLUSIVE-AT-RESOLUTION"

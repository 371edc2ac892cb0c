import numpy as np
import pytest

from phaseq import (
    CR_I,
    MOSTLY_MINUS,
    MOSTLY_PLUS,
    chiral_projector,
    dirac_square_check,
    gamma_product_decomposition,
    project_solution,
    sigma,
    standard_gamma_rep,
)
from phaseq.dirac import (
    anticommutator,
    mat_add,
    mat_eq,
    mat_identity,
    mat_mul,
    mat_scale,
    mat_sub,
    mat_to_numpy,
    mat_zero,
)

METRICS = (MOSTLY_MINUS, MOSTLY_PLUS)


def test_clifford_relation_exact():
    for metric in METRICS:
        rep = standard_gamma_rep(metric)
        for mu in range(4):
            for nu in range(4):
                want = mat_scale(
                    2 * metric[mu] if mu == nu else 0, mat_identity()
                )
                got = anticommutator(rep.gamma[mu], rep.gamma[nu])
                assert mat_eq(got, want)


def test_gamma5_properties():
    for metric in METRICS:
        rep = standard_gamma_rep(metric)
        assert mat_eq(mat_mul(rep.gamma5, rep.gamma5), mat_identity())
        for mu in range(4):
            assert mat_eq(anticommutator(rep.gamma5, rep.gamma[mu]), mat_zero())


def test_sigma_block_structure():
    rep = standard_gamma_rep(MOSTLY_MINUS)
    for j in range(3):
        want = mat_scale(CR_I, rep.alpha[j])
        assert mat_eq(sigma(0, j + 1, rep), want)
    for (i, j), k in {(1, 2): 2, (2, 3): 0, (3, 1): 1}.items():
        assert mat_eq(sigma(i, j, rep), rep.sigma_big[k])
        assert mat_eq(
            sigma(j, i, rep), mat_scale(-1, rep.sigma_big[k])
        )


def test_sigma12_spectrum():
    for metric in METRICS:
        rep = standard_gamma_rep(metric)
        eig = np.linalg.eigvals(mat_to_numpy(sigma(1, 2, rep)))
        assert sorted(np.round(eig.real, 12)) == [-1, -1, 1, 1]
        assert np.max(np.abs(eig.imag)) < 1e-12


def test_gamma_product_decomposition_constant():
    for metric in METRICS:
        rep = standard_gamma_rep(metric)
        c = gamma_product_decomposition(rep)
        assert c == -CR_I
        for mu in range(4):
            for nu in range(4):
                if mu == nu:
                    continue
                lhs = mat_mul(rep.gamma[mu], rep.gamma[nu])
                rhs = mat_scale(c, sigma(mu, nu, rep))
                assert mat_eq(lhs, rhs)


def test_broken_representation_rejected():
    rep = standard_gamma_rep(MOSTLY_MINUS)
    bad_g3 = mat_add(rep.gamma[3], mat_scale(CR_I, mat_identity()))
    broken = type(rep)(
        (rep.gamma[0], rep.gamma[1], rep.gamma[2], bad_g3),
        rep.gamma5,
        rep.alpha,
        rep.sigma_big,
        rep.metric,
    )
    with pytest.raises(ValueError):
        gamma_product_decomposition(broken)


def test_chiral_projectors():
    rep = standard_gamma_rep(MOSTLY_MINUS)
    plus = chiral_projector(1, rep)
    minus = chiral_projector(-1, rep)
    assert mat_eq(mat_mul(plus, plus), plus)
    assert mat_eq(mat_mul(minus, minus), minus)
    assert mat_eq(mat_mul(plus, minus), mat_zero())
    assert mat_eq(mat_add(plus, minus), mat_identity())
    assert mat_eq(mat_sub(plus, minus), rep.gamma5)


def test_project_solution_satisfies_chirality():
    rng = np.random.default_rng(31)
    rep = standard_gamma_rep(MOSTLY_MINUS)
    g5 = mat_to_numpy(rep.gamma5)
    for sign in (1, -1):
        psi = rng.normal(size=4) + 1j * rng.normal(size=4)
        out = np.array(project_solution(psi, rep, sign))
        assert np.allclose(g5 @ out, sign * out, atol=1e-14)


def test_dirac_square_degree_one():
    for metric in METRICS:
        report = dirac_square_check(1, metric)
        assert report.passed
        assert report.checked == 4 * 4 * 9

"""Interior-point feasibility solver, certificate verifier and SDPA text I/O."""

import numpy as np
import pytest

from conftest import decoupled_string, weak_oscillator
from stringstab import (AffineLmiSystem, Certificate, build_affine_system,
                        build_blocks, export_sdpa, read_sdpa,
                        solve_feasibility, verify_certificate)

# scalar box problem: x >= 0 and 1 - x >= 0 have common slack 1/2 at x = 1/2
TOY = AffineLmiSystem(
    eps=1e-6,
    constants=(np.zeros((1, 1)), np.ones((1, 1))),
    coeffs=(np.array([[[1.0]]]), np.array([[[-1.0]]])),
)

TOY_SDPA = """\
* box feasibility toy
* variables: decision vector then common slack (maximized)
2 = mDIM
2 = nBLOCK
1 1
0.0 -1.0
1 1 1 1 1
2 1 1 1 -1
0 2 1 1 -1
1 2 1 1 -1
2 2 1 1 -1
"""

# interior-point solution of the scalar decoupled problem at order 0,
# rounded to three decimals; still verifies with ample margin
FROZEN_CERT = Certificate(
    P=np.array([[7.071, 0.0, 0.0],
                [0.0, 2.961, -0.974],
                [0.0, -0.974, 1.667]]),
    S=np.array([[8.795, 0.067], [0.067, 3.286]]),
    R=np.array([[7.391, 0.070], [0.070, 3.331]]),
    t_star=1.0, iterations=0, eps=1e-6)


def test_toy_max_slack():
    report = solve_feasibility(TOY)
    assert report.status == "feasible"
    assert report.certificate.t_star == pytest.approx(0.5, abs=1e-6)
    assert report.certificate.P is None  # generic system, no (P, S, R) split


def test_toy_infeasible():
    bad = AffineLmiSystem(
        eps=1e-6,
        constants=(-np.ones((1, 1)), -np.ones((1, 1))),
        coeffs=(np.array([[[1.0]]]), np.array([[[-1.0]]])),
    )
    report = solve_feasibility(bad)
    assert report.status == "not_certified"
    assert report.certificate.t_star == pytest.approx(-1.0, abs=1e-6)


def test_empty_system():
    report = solve_feasibility(AffineLmiSystem(eps=1e-6, constants=(),
                                               coeffs=()))
    assert report.status == "not_certified"
    assert report.diagnostics["flag"] == "empty_system"


def test_solve_decoupled_feasible():
    system = build_affine_system(build_blocks(decoupled_string(), 0))
    report = solve_feasibility(system)
    assert report.status == "feasible"
    assert report.certificate.t_star >= system.eps
    assert report.diagnostics["verification"].passed
    assert min(report.certificate.residuals) == report.certificate.t_star


def test_solve_oscillator_not_certified_at_order_zero():
    system = build_affine_system(build_blocks(weak_oscillator(), 0))
    report = solve_feasibility(system)
    assert report.status == "not_certified"


def test_verify_frozen_certificate():
    blocks = build_blocks(decoupled_string(), 0)
    report = verify_certificate(blocks, FROZEN_CERT)
    assert report.passed
    assert report.min_eig_P == pytest.approx(1.1447, abs=1e-3)
    assert report.min_eig_S == pytest.approx(3.2852, abs=1e-3)
    assert report.min_eig_R == pytest.approx(3.3298, abs=1e-3)
    assert report.max_eig_psi == pytest.approx(-1.2909, abs=1e-3)


def test_verify_rejects_tampered_certificate():
    blocks = build_blocks(decoupled_string(), 0)
    bad = Certificate(P=-FROZEN_CERT.P, S=FROZEN_CERT.S, R=FROZEN_CERT.R,
                      t_star=1.0, iterations=0, eps=1e-6)
    report = verify_certificate(blocks, bad)
    assert not report.passed
    assert "P not positive definite" in report.messages


def test_verify_rejects_wrong_size():
    blocks = build_blocks(decoupled_string(), 1)
    with pytest.raises(ValueError):
        verify_certificate(blocks, FROZEN_CERT)


def test_export_sdpa_golden():
    assert export_sdpa(TOY, comment="box feasibility toy") == TOY_SDPA


def test_sdpa_roundtrip():
    system = build_affine_system(build_blocks(decoupled_string(), 1))
    objective, sizes, F = read_sdpa(export_sdpa(system))
    m = system.m
    assert objective.size == m + 1
    assert objective[-1] == -1.0 and np.all(objective[:-1] == 0.0)
    assert tuple(sizes) == system.block_sizes
    for b in range(len(sizes)):
        assert np.allclose(F[0][b], -system.constants[b])
        assert np.allclose(F[m + 1][b], -np.eye(sizes[b]))
        for j in range(m):
            assert np.allclose(F[j + 1][b], system.coeffs[b][j])


def test_read_sdpa_rejects_inconsistent_header():
    broken = TOY_SDPA.replace("2 = nBLOCK", "3 = nBLOCK")
    with pytest.raises(ValueError):
        read_sdpa(broken)


def _cvxopt_max_slack(text, t_cap=1.0, box=1e6):
    """Solve an exported problem with an unrelated SDP implementation."""
    from cvxopt import matrix, solvers

    solvers.options["show_progress"] = False
    objective, sizes, F = read_sdpa(text)
    m = objective.size
    Gs, hs = [], []
    for b, d in enumerate(sizes):
        G = np.zeros((d * d, m))
        for k in range(m):
            G[:, k] = -F[k + 1][b].ravel()
        Gs.append(matrix(G))
        hs.append(matrix(-F[0][b]))
    Gl = np.zeros((2 * m - 1, m))
    hl = np.zeros(2 * m - 1)
    Gl[0, m - 1] = 1.0
    hl[0] = t_cap
    for j in range(m - 1):
        Gl[1 + 2 * j, j] = 1.0
        hl[1 + 2 * j] = box
        Gl[2 + 2 * j, j] = -1.0
        hl[2 + 2 * j] = box
    sol = solvers.sdp(matrix(objective), Gl=matrix(Gl), hl=matrix(hl),
                      Gs=Gs, hs=hs)
    assert sol["x"] is not None
    return float(sol["x"][m - 1])


def test_external_solver_agrees_on_feasibility():
    pytest.importorskip("cvxopt")
    from conftest import unstable_plant

    for c, expect_feasible in ((10.0, True), (5.0, False)):
        system = build_affine_system(build_blocks(unstable_plant(c=c), 1))
        ours = solve_feasibility(system).status == "feasible"
        assert ours is expect_feasible
        t_ext = _cvxopt_max_slack(export_sdpa(system))
        assert (t_ext >= 1e-4) is expect_feasible

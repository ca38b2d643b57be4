import numpy as np
import pytest

from bellkit.bell import omega, product_ket
from bellkit.linalg import haar_unitary, identity, random_state, residual, tensor
from bellkit.teleport import (
    TeleportEqCase,
    linearity_reduction_check,
    projective_eq_check,
    protocol_outcomes,
    run_protocol,
    skewed_resource,
    teleport_eq_check,
    teleport_eq_suite,
    transfer_identity_check,
)


def test_transfer_identity():
    rep = transfer_identity_check(2, seed=0)
    assert rep.passed
    rep = transfer_identity_check(5, seed=1)
    assert rep.passed
    with pytest.raises(ValueError):
        transfer_identity_check(17)


def test_basic2_teleportation_equation():
    rng = np.random.default_rng(2)
    psi = random_state(2, rng)
    case = TeleportEqCase("basic2", psi, identity(2), (0, 0), d=2)
    assert teleport_eq_check(case).passed


@pytest.mark.parametrize("variant", ["qudit11", "qudit22", "qudit11p", "qudit22p"])
@pytest.mark.parametrize("d", [2, 3, 5])
def test_qudit_equations_unitary_m(variant, d):
    rep = teleport_eq_suite(variant, d=d, seed=5)
    assert rep.passed, rep.max_residual
    assert len(rep.cases) == d * d


@pytest.mark.parametrize("variant", ["nqubit11", "nqubit22"])
def test_nqubit_equations(variant):
    rep = teleport_eq_suite(variant, n=2, seed=6)
    assert rep.passed
    assert len(rep.cases) == 16


def test_general_m_allowed_on_11_variants():
    assert teleport_eq_suite("qudit11", d=3, seed=7, m_mode="general").passed
    assert teleport_eq_suite("nqubit11", n=2, seed=7, m_mode="general").passed


def test_unitary_m_required_on_22_variants():
    rng = np.random.default_rng(8)
    psi = random_state(3, rng)
    bad_m = np.diag([1.0, 2.0, 3.0]).astype(complex)
    for variant in ("qudit22", "qudit22p"):
        with pytest.raises(ValueError):
            TeleportEqCase(variant, psi, bad_m, (0, 0), d=3)
    psi4 = random_state(4, rng)
    with pytest.raises(ValueError):
        TeleportEqCase("nqubit22", psi4, np.diag([1.0, 1, 1, 2]).astype(complex), ((0, 0), (0, 0)), n=2)
    # and a genuinely non-orthonormal measurement family does break the equation
    case = TeleportEqCase("qudit11", psi, bad_m, (0, 1), d=3)
    assert teleport_eq_check(case).passed  # 11 stays valid for any M


def test_residual_invariant_under_global_phase():
    rng = np.random.default_rng(9)
    psi = random_state(3, rng)
    m = haar_unitary(3, rng)
    base = teleport_eq_check(TeleportEqCase("qudit22", psi, m, (1, 2), d=3)).max_residual
    rotated = teleport_eq_check(
        TeleportEqCase("qudit22", np.exp(0.7j) * psi, m, (1, 2), d=3)
    ).max_residual
    assert abs(base - rotated) < 1e-15


@pytest.mark.parametrize(
    "variant,kw",
    [
        ("projective_qudit", {"d": 2}),
        ("projective_qudit", {"d": 3}),
        ("projective_qudit11", {"d": 3}),
        ("projective_nqubit", {"n": 2}),
    ],
)
def test_projective_equations(variant, kw):
    rep = projective_eq_check(variant, seed=3, **kw)
    assert rep.passed
    expected = kw.get("d", 0) ** 2 or 4 ** kw["n"]
    assert len(rep.cases) == expected


def test_projective_identity_m_is_standard_protocol():
    rep = projective_eq_check("projective_qudit", d=2, m=np.eye(2), seed=4)
    assert rep.passed


def test_protocol_outcomes_qudit():
    rng = np.random.default_rng(10)
    psi = random_state(3, rng)
    m = haar_unitary(3, rng)
    rows = protocol_outcomes(psi, "qudit", m)
    assert len(rows) == 9
    assert abs(sum(r[1] for r in rows) - 1) < 1e-12
    for _, prob, fid, out, corr in rows:
        assert prob == pytest.approx(1 / 9, abs=1e-12)
        assert fid == pytest.approx(1.0, abs=1e-10)
        assert "M†" in corr
    with pytest.raises(ValueError):
        protocol_outcomes(psi, "qudit", np.diag([1.0, 2, 3]))


def test_protocol_outcomes_nqubit():
    rng = np.random.default_rng(11)
    psi = random_state(4, rng)
    rows = protocol_outcomes(psi, "nqubit")
    assert len(rows) == 16
    for _, prob, fid, _, _ in rows:
        assert prob == pytest.approx(1 / 16, abs=1e-12)
        assert fid == pytest.approx(1.0, abs=1e-10)


def test_run_protocol_deterministic():
    psi = np.array([1, 1j]) / np.sqrt(2)
    t1 = run_protocol(psi, "basic2", seed=33)
    t2 = run_protocol(psi, "basic2", seed=33)
    assert t1.outcome == t2.outcome
    assert t1.seed == 33
    assert t1.fidelity == pytest.approx(1.0, abs=1e-10)
    assert t1.probability == pytest.approx(0.25, abs=1e-12)


def test_skewed_resource_degrades_fidelity():
    psi = np.array([1.0, np.sqrt(2.0)]) / np.sqrt(3.0)
    rows = protocol_outcomes(psi, "basic2", resource=skewed_resource(2, [2.0, 1.0]))
    assert abs(sum(r[1] for r in rows) - 1) < 1e-12
    assert min(r[2] for r in rows) < 1 - 1e-3  # recorded, strictly below 1
    probs = sorted(r[1] for r in rows)
    assert probs[-1] - probs[0] > 1e-3  # no longer uniform


@pytest.mark.parametrize(
    "variant,kw",
    [("basic2", {"d": 2}), ("qudit11", {"d": 3}), ("nqubit11", {"n": 2}), ("nqubit22", {"n": 2})],
)
def test_linearity_reduction(variant, kw):
    rep = linearity_reduction_check(variant, seed=12, **kw)
    assert rep.passed, [(c.case_id, c.residual) for c in rep.cases]


def test_linearity_includes_order_crosscheck():
    rep = linearity_reduction_check("nqubit11", n=2, seed=13)
    assert any("twisted-interleaved" in c.case_id for c in rep.cases)


def test_bad_variant_rejected():
    psi = np.array([1.0, 0.0])
    with pytest.raises(ValueError):
        TeleportEqCase("qudit33", psi, np.eye(2), (0, 0), d=2)
    with pytest.raises(ValueError):
        protocol_outcomes(psi, "weird")
    with pytest.raises(ValueError):
        teleport_eq_suite("weird", d=2)

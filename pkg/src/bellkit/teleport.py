"""Teleportation equations as LHS/RHS residual checks, plus a sampled
end-to-end protocol with Born-rule measurement.

Wire layout, fixed once: the sender holds the unknown state followed by
the first (blocked-order) half of the shared resource; the receiver
holds the second half.  Every equation is assembled as two full vectors
in that triple space and compared entrywise.

Variants and their M policy: the measurement family of the ``*22``
equations is (U_a M x 1)|Omega>-shaped, which is orthonormal only for
unitary M, so those variants reject non-unitary M; the ``*11`` variants
measure in the undecorated Bell family and accept any square M.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bell import all_labels, multi_bell, omega, pair_product_bell, qudit_bell, twist
from .linalg import (
    DEFAULT_TOL,
    basis_state,
    dagger,
    haar_unitary,
    identity,
    is_unitary,
    random_state,
    residual,
    tensor,
)
from .pauli import (
    GenPauliWord,
    PauliWord,
    gen_word_dagger,
    gen_word_matrix,
    gen_word_mul,
    word_dagger,
    word_matrix,
    word_mul,
)
from .report import Report

QUDIT_VARIANTS = ("basic2", "qudit11", "qudit22", "qudit11p", "qudit22p")
NQUBIT_VARIANTS = ("nqubit11", "nqubit22")
UNITARY_M_REQUIRED = ("qudit22", "qudit22p", "nqubit22")


@dataclass
class TeleportEqCase:
    """One teleportation equation instance: variant, sizes, M, resource label, input."""

    variant: str
    psi: np.ndarray
    m: np.ndarray
    label: tuple
    d: int | None = None
    n: int | None = None

    def __post_init__(self):
        if self.variant not in QUDIT_VARIANTS + NQUBIT_VARIANTS:
            raise ValueError(f"unknown variant {self.variant!r}")
        self.psi = np.asarray(self.psi, dtype=complex)
        self.m = np.asarray(self.m, dtype=complex)
        if abs(np.linalg.norm(self.psi) - 1.0) > 1e-10:
            raise ValueError("input state is not normalized")
        if self.variant in UNITARY_M_REQUIRED and not is_unitary(self.m):
            raise ValueError(f"variant {self.variant} requires a unitary M")


def _qudit_words(d: int) -> list[GenPauliWord]:
    return [GenPauliWord(d, a, b) for a in range(d) for b in range(d)]


def _nqubit_words(n: int) -> list[PauliWord]:
    return [PauliWord(a, b) for a, b in all_labels(n)]


def transfer_identity_check(d: int, seed: int = 0, tol: float = DEFAULT_TOL) -> Report:
    """<Omega|_CA (|psi>_C |Omega>_AB) = (1/d)|psi>_B, checked on random psi."""
    if d > 16:
        raise ValueError("d capped at 16")
    rng = np.random.default_rng(seed)
    rep = Report("transfer-identity", {"d": d}, tolerance=tol, seed=seed)
    bra = omega(d).conj().reshape(1, -1)
    contract = tensor(bra, identity(d))  # d x d^3
    psi = random_state(d, rng)
    lhs = contract @ np.kron(psi, omega(d))
    rep.add("random-psi", residual(lhs, psi / d))
    rep.add("lhs-norm-is-1/d", abs(np.linalg.norm(lhs) - 1.0 / d))
    if d == 2:
        e0 = basis_state(2, 0)
        rep.add("psi=|0> gives |0>/2", residual(contract @ np.kron(e0, omega(2)), e0 / 2))
    return rep


def _assemble_qudit(case: TeleportEqCase) -> tuple[np.ndarray, np.ndarray]:
    d = case.d
    words = _qudit_words(d)
    m = case.m
    b_word = GenPauliWord(d, *case.label)
    ub = gen_word_matrix(b_word)
    if case.variant in ("qudit11", "qudit11p", "basic2"):
        resource = tensor(ub, m) @ omega(d)  # |Omega M^T(b)>
        lhs = np.kron(case.psi, resource)
        rhs = np.zeros(d**3, dtype=complex)
        for w in words:
            ua = gen_word_matrix(w)
            meas = tensor(ua, identity(d)) @ omega(d)
            rhs += np.kron(meas, m @ ub.T @ dagger(ua) @ case.psi)
        return lhs, rhs / d
    # qudit22 / qudit22p
    resource = tensor(m @ ub, identity(d)) @ omega(d)  # |M Omega(b)>
    lhs = np.kron(case.psi, resource)
    rhs = np.zeros(d**3, dtype=complex)
    for w in words:
        ua = gen_word_matrix(w)
        meas = tensor(ua, m) @ omega(d)  # |Omega M^T(a)>
        rhs += np.kron(meas, ub.T @ dagger(ua) @ case.psi)
    return lhs, rhs / d


def _assemble_nqubit(case: TeleportEqCase) -> tuple[np.ndarray, np.ndarray]:
    n = case.n
    dim = 2**n
    m = case.m
    words = _nqubit_words(n)
    ab_word = PauliWord(*case.label)
    t_ab = word_matrix(ab_word)
    base = omega(dim)
    if case.variant == "nqubit11":
        resource = tensor(t_ab, m) @ base  # |B M^T(a'b')>
        lhs = np.kron(case.psi, resource)
        rhs = np.zeros(dim**3, dtype=complex)
        for w in words:
            meas = multi_bell(n, w.z_exps, w.x_exps)
            corr = word_matrix(word_mul(word_dagger(ab_word), word_dagger(w)))
            rhs += np.kron(meas, m @ corr @ case.psi)
        return lhs, rhs / dim
    # nqubit22
    resource = tensor(m @ t_ab, identity(dim)) @ base  # |M B(a'b')>
    lhs = np.kron(case.psi, resource)
    rhs = np.zeros(dim**3, dtype=complex)
    for w in words:
        meas = tensor(word_matrix(w), m) @ base  # |B M^T(alpha beta)>
        corr = word_matrix(word_mul(word_dagger(ab_word), word_dagger(w)))
        rhs += np.kron(meas, corr @ case.psi)
    return lhs, rhs / dim


def teleport_eq_check(case: TeleportEqCase, tol: float = DEFAULT_TOL) -> Report:
    if case.variant in QUDIT_VARIANTS:
        lhs, rhs = _assemble_qudit(case)
    else:
        lhs, rhs = _assemble_nqubit(case)
    rep = Report(
        "teleport-eq",
        {"variant": case.variant, "d": case.d, "n": case.n, "label": str(case.label)},
        tolerance=tol,
    )
    rep.add(f"{case.variant} label={case.label}", residual(lhs, rhs))
    return rep


def teleport_eq_suite(
    variant: str,
    d: int | None = None,
    n: int | None = None,
    seed: int = 0,
    tol: float = DEFAULT_TOL,
    m_mode: str = "unitary",
) -> Report:
    """Run one variant over all resource labels with a sampled M."""
    rng = np.random.default_rng(seed)
    rep = Report(
        "teleport-eq", {"variant": variant, "d": d, "n": n, "m": m_mode}, tolerance=tol, seed=seed
    )
    if variant in QUDIT_VARIANTS:
        if variant == "basic2":
            d = 2
        if d is None:
            raise ValueError("qudit variant needs d")
        psi = random_state(d, rng)
        if variant == "basic2" or m_mode == "identity":
            m = identity(d)
        elif m_mode == "general":
            m = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
        else:
            m = haar_unitary(d, rng)
        labels = [(a, b) for a in range(d) for b in range(d)]
        for lab in labels:
            case = TeleportEqCase(variant, psi, m, lab, d=d)
            lhs, rhs = _assemble_qudit(case)
            rep.add(f"label={lab}", residual(lhs, rhs))
    elif variant in NQUBIT_VARIANTS:
        if n is None:
            raise ValueError("n-qubit variant needs n")
        dim = 2**n
        psi = random_state(dim, rng)
        if m_mode == "identity":
            m = identity(dim)
        elif m_mode == "general":
            m = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
        else:
            m = haar_unitary(dim, rng)
        for lab in all_labels(n):
            case = TeleportEqCase(variant, psi, m, lab, n=n)
            lhs, rhs = _assemble_nqubit(case)
            rep.add(f"label={lab}", residual(lhs, rhs))
    else:
        raise ValueError(f"unknown variant {variant!r}")
    return rep


# ---------------------------------------------------------------------------
# projective equations


def projective_eq_check(
    variant: str,
    d: int | None = None,
    n: int | None = None,
    m: np.ndarray | None = None,
    seed: int = 0,
    tol: float = DEFAULT_TOL,
) -> Report:
    """Projector-applied teleportation equations, every outcome swept.

    ``projective_qudit``: measure in |Omega M^T(a)>, resource |M Omega>,
    receiver picks up U_a^dag psi (correction U_a).
    ``projective_qudit11``: measure in |Omega(a)>, resource (1 x M)|Omega>,
    receiver picks up M U_a^dag psi (correction U_a M^dag).
    ``projective_nqubit``: measure in |B(ab)>, resource |B>, receiver
    picks up T^dag(ab) psi.
    """
    rng = np.random.default_rng(seed)
    rep = Report(
        "projective-eq", {"variant": variant, "d": d, "n": n}, tolerance=tol, seed=seed
    )
    if variant in ("projective_qudit", "projective_qudit11"):
        if d is None:
            raise ValueError("qudit variant needs d")
        if m is None:
            m = haar_unitary(d, rng)
        if not is_unitary(m):
            raise ValueError("projective qudit variants require unitary M")
        psi = random_state(d, rng)
        eye = identity(d)
        for w in _qudit_words(d):
            ua = gen_word_matrix(w)
            if variant == "projective_qudit":
                meas = tensor(ua, m) @ omega(d)  # |Omega M^T(a)>
                prepared = np.kron(psi, tensor(m, eye) @ omega(d))  # psi x |M Omega>
                receiver = dagger(ua) @ psi
            else:
                meas = tensor(ua, eye) @ omega(d)  # |Omega(a)>
                prepared = np.kron(psi, tensor(eye, m) @ omega(d))  # psi x |M^T shifted>
                receiver = m @ dagger(ua) @ psi
            proj = tensor(np.outer(meas, meas.conj()), eye)
            lhs = proj @ prepared
            rhs = np.kron(meas, receiver) / d
            rep.add(f"outcome={w.alpha, w.beta}", residual(lhs, rhs))
    elif variant == "projective_nqubit":
        if n is None:
            raise ValueError("n-qubit variant needs n")
        dim = 2**n
        psi = random_state(dim, rng)
        prepared = np.kron(psi, omega(dim))
        eye = identity(dim)
        for w in _nqubit_words(n):
            meas = multi_bell(n, w.z_exps, w.x_exps)
            proj = tensor(np.outer(meas, meas.conj()), eye)
            lhs = proj @ prepared
            rhs = np.kron(meas, word_matrix(word_dagger(w)) @ psi) / dim
            rep.add(f"outcome={w.z_exps, w.x_exps}", residual(lhs, rhs))
    else:
        raise ValueError(f"unknown variant {variant!r}")
    return rep


# ---------------------------------------------------------------------------
# protocol simulation


@dataclass
class ProtocolTranscript:
    variant: str
    prepared: str
    outcome: object
    probability: float
    correction: str
    output_state: np.ndarray
    fidelity: float
    seed: int


def protocol_outcomes(
    psi: np.ndarray,
    variant: str,
    m: np.ndarray | None = None,
    resource: np.ndarray | None = None,
):
    """Deterministic outcome table: (label, probability, fidelity, output, correction).

    The correction is composed symbolically (a Pauli word) and only then
    materialized; for the qudit protocol the extra M^dag factor is
    numeric.  A non-default ``resource`` (e.g. a Schmidt-skewed state)
    is allowed so that loss of fidelity can be demonstrated.
    """
    psi = np.asarray(psi, dtype=complex)
    rows = []
    if variant in ("basic2", "qudit"):
        d = psi.shape[0]
        m = identity(d) if m is None else np.asarray(m, dtype=complex)
        if not is_unitary(m):
            raise ValueError("protocol requires a unitary M")
        if resource is None:
            resource = tensor(identity(d), m) @ omega(d)
        prepared = np.kron(psi, resource)
        eye = identity(d)
        for w in _qudit_words(d):
            ua = gen_word_matrix(w)
            meas = tensor(ua, eye) @ omega(d)
            branch = tensor(meas.conj().reshape(1, -1), eye) @ prepared
            prob = float(np.linalg.norm(branch) ** 2)
            post = branch / np.linalg.norm(branch)
            corrected = gen_word_matrix(w) @ dagger(m) @ post
            rows.append(
                (
                    (w.alpha, w.beta),
                    prob,
                    float(abs(np.vdot(psi, corrected))),
                    corrected,
                    f"U({w.alpha},{w.beta})·M†",
                )
            )
    elif variant == "nqubit":
        dim = psi.shape[0]
        n = dim.bit_length() - 1
        if resource is None:
            resource = omega(dim)
        prepared = np.kron(psi, resource)
        eye = identity(dim)
        for w in _nqubit_words(n):
            meas = multi_bell(n, w.z_exps, w.x_exps)
            branch = tensor(meas.conj().reshape(1, -1), eye) @ prepared
            prob = float(np.linalg.norm(branch) ** 2)
            post = branch / np.linalg.norm(branch)
            corrected = word_matrix(w) @ post
            rows.append(
                (
                    (w.z_exps, w.x_exps),
                    prob,
                    float(abs(np.vdot(psi, corrected))),
                    corrected,
                    f"T({w.z_exps},{w.x_exps})",
                )
            )
    else:
        raise ValueError(f"unknown protocol variant {variant!r}")
    total = sum(r[1] for r in rows)
    if abs(total - 1.0) > 1e-12:
        raise AssertionError(f"outcome probabilities sum to {total}, not 1")
    return rows


def run_protocol(
    psi: np.ndarray,
    variant: str,
    m: np.ndarray | None = None,
    seed: int = 0,
    resource: np.ndarray | None = None,
) -> ProtocolTranscript:
    """Sample one Born-rule outcome and return the corrected transcript."""
    rng = np.random.default_rng(seed)
    rows = protocol_outcomes(psi, variant, m, resource)
    probs = np.array([r[1] for r in rows])
    pick = int(rng.choice(len(rows), p=probs / probs.sum()))
    label, prob, fid, out, corr = rows[pick]
    prepared = f"{variant} resource" + ("" if resource is None else " (custom)")
    return ProtocolTranscript(variant, prepared, label, prob, corr, out, fid, seed)


def skewed_resource(d: int, weights) -> np.ndarray:
    """Non-maximally entangled control: sum_i w_i |ii> with w normalized."""
    w = np.asarray(weights, dtype=complex)
    if w.shape != (d,):
        raise ValueError("need d Schmidt weights")
    vec = np.zeros(d * d, dtype=complex)
    vec[:: d + 1] = w / np.linalg.norm(w)
    return vec


# ---------------------------------------------------------------------------
# linearity reduction


def linearity_reduction_check(
    variant: str,
    d: int | None = None,
    n: int | None = None,
    seed: int = 0,
    tol: float = DEFAULT_TOL,
) -> Report:
    """Basis-input instances imply the random-superposition instance.

    Includes a falsifiability control (correction with the dagger
    dropped must fail on some basis input) and, for the n-qubit variant,
    a cross-check that the blocked resource equals the twist applied to
    the interleaved pair-product resource.
    """
    rng = np.random.default_rng(seed)
    rep = Report(
        "linearity-reduction", {"variant": variant, "d": d, "n": n}, tolerance=tol, seed=seed
    )
    if variant in QUDIT_VARIANTS:
        if variant == "basic2":
            d = 2
        if d is None:
            raise ValueError("qudit variant needs d")
        dim = d
        make_case = lambda psi: TeleportEqCase(variant, psi, identity(d), (0, 1), d=d)
        assemble = _assemble_qudit
    elif variant in NQUBIT_VARIANTS:
        if n is None:
            raise ValueError("n-qubit variant needs n")
        dim = 2**n
        lab = (tuple([0] * n), tuple([1] * n))
        make_case = lambda psi: TeleportEqCase(variant, psi, identity(dim), lab, n=n)
        assemble = _assemble_nqubit
    else:
        raise ValueError(f"unknown variant {variant!r}")

    worst = 0.0
    for i in range(dim):
        lhs, rhs = assemble(make_case(basis_state(dim, i)))
        worst = max(worst, residual(lhs, rhs))
    rep.add("all-basis-inputs", worst)

    lhs, rhs = assemble(make_case(random_state(dim, rng)))
    rep.add("random-superposition", residual(lhs, rhs))

    # Control: drop the dagger on the outcome correction; some basis input must fail.
    worst_bad = 0.0
    for i in range(dim):
        psi = basis_state(dim, i)
        case = make_case(psi)
        lhs, _ = assemble(case)
        bad = _corrupted_rhs(case)
        worst_bad = max(worst_bad, residual(lhs, bad))
    rep.add_expect_fail("corrupted-correction-fails", worst_bad, 1e-6)

    if variant in NQUBIT_VARIANTS:
        worst = 0.0
        for a, b in all_labels(n):
            blocked = multi_bell(n, a, b)
            interleaved = twist(n) @ pair_product_bell(n, a, b)
            worst = max(worst, residual(blocked, interleaved))
        rep.add("blocked-equals-twisted-interleaved", worst)
    return rep


def _corrupted_rhs(case: TeleportEqCase) -> np.ndarray:
    """RHS with U_a^dag replaced by U_a: a deliberate sign/phase corruption."""
    if case.variant in QUDIT_VARIANTS:
        d = case.d
        ub = gen_word_matrix(GenPauliWord(d, *case.label))
        rhs = np.zeros(d**3, dtype=complex)
        for w in _qudit_words(d):
            ua = gen_word_matrix(w)
            meas = tensor(ua, identity(d)) @ omega(d)
            rhs += np.kron(meas, case.m @ ub.T @ ua @ case.psi)
        return rhs / d
    n = case.n
    dim = 2**n
    ab_word = PauliWord(*case.label)
    rhs = np.zeros(dim**3, dtype=complex)
    for w in _nqubit_words(n):
        meas = multi_bell(n, w.z_exps, w.x_exps)
        corr = word_matrix(word_mul(word_dagger(ab_word), w))  # outcome word left undaggered
        rhs += np.kron(meas, case.m @ corr @ case.psi)
    return rhs / dim

"""Orthonormality/completeness suites, the unitarity iff basis theorem,
observable eigenequations, and the trace-constraint linear solver.

The decisive numerical statement verified here: extending a Bell basis
by a local matrix M preserves orthonormality exactly when M is unitary.
Random unitaries are Haar samples (QR of a complex Gaussian with the R
diagonal phase-fixed); "non-unitary" probes are unitaries plus a
perturbation pushed to spectral deviation ||M^dag M - 1|| >= 0.1 so the
two classes are cleanly separated.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bell import all_labels, multi_bell, omega, qudit_bell
from .linalg import (
    DEFAULT_TOL,
    basis_state,
    dagger,
    haar_unitary,
    identity,
    is_unitary,
    random_matrix,
    residual,
    tensor,
)
from .pauli import all_words, gen_u, gen_x, gen_z, word_matrix
from .report import Report


@dataclass
class BasisFamily:
    """A family of candidate basis states with their defining local unitaries.

    ``dim`` is the total Hilbert-space dimension; ``unitaries`` (one
    local operator per state, acting on the first tensor factor of
    ``base``) are kept so the family can be extended by a matrix M.
    """

    dim: int
    states: list[np.ndarray]
    labels: list
    unitaries: list[np.ndarray] | None = None
    base: np.ndarray | None = None

    def __post_init__(self):
        if len(self.states) > self.dim:
            raise ValueError("more states than the space can accommodate")


def qubit_bell_family() -> BasisFamily:
    return qudit_bell_family(2)


def qudit_bell_family(d: int) -> BasisFamily:
    labels = [(a, b) for a in range(d) for b in range(d)]
    return BasisFamily(
        dim=d * d,
        states=[qudit_bell(d, a, b) for a, b in labels],
        labels=labels,
        unitaries=[gen_u(d, a, b) for a, b in labels],
        base=omega(d),
    )


def multi_bell_family(n: int) -> BasisFamily:
    labels = list(all_labels(n))
    return BasisFamily(
        dim=4**n,
        states=[multi_bell(n, a, b) for a, b in labels],
        labels=labels,
        unitaries=[word_matrix(w) for w in all_words(n)],
        base=omega(2**n),
    )


def gram_matrix(fam: BasisFamily) -> np.ndarray:
    stack = np.array(fam.states)
    return stack.conj() @ stack.T


def gram_check(fam: BasisFamily, tol: float = DEFAULT_TOL) -> Report:
    rep = Report("gram", {"size": len(fam.states), "dim": fam.dim}, tolerance=tol)
    if not fam.states:
        raise ValueError("empty family")
    rep.add("gram-vs-identity", residual(gram_matrix(fam), np.eye(len(fam.states))))
    return rep


def completeness_check(fam: BasisFamily, tol: float = DEFAULT_TOL) -> Report:
    rep = Report("completeness", {"size": len(fam.states), "dim": fam.dim}, tolerance=tol)
    total = np.zeros((fam.dim, fam.dim), dtype=complex)
    for s in fam.states:
        total += np.outer(s, s.conj())
    res = residual(total, identity(fam.dim))
    case = "projector-sum-vs-identity"
    if len(fam.states) != fam.dim:
        case += f" (incomplete-family: {len(fam.states)} of {fam.dim})"
    rep.add(case, res)
    return rep


def extend_basis(fam: BasisFamily, m: np.ndarray, side: str) -> BasisFamily:
    """Family with states (M U_a x 1)|Omega> (left) or (U_a M x 1)|Omega> (right)."""
    if fam.unitaries is None or fam.base is None:
        raise ValueError("family does not carry its defining unitaries")
    m = np.asarray(m, dtype=complex)
    local = fam.unitaries[0].shape[0]
    if m.shape != (local, local):
        raise ValueError(f"M must be {local}x{local}, got {m.shape}")
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    eye = identity(local)
    composed = [m @ u if side == "left" else u @ m for u in fam.unitaries]
    states = [tensor(c, eye) @ fam.base for c in composed]
    return BasisFamily(fam.dim, states, list(fam.labels), composed, fam.base)


def perturbed_nonunitary(
    dim: int, rng: np.random.Generator, min_dev: float = 0.1
) -> np.ndarray:
    """Haar unitary plus a perturbation with ||M^dag M - 1||_2 >= min_dev."""
    u = haar_unitary(dim, rng)
    g = random_matrix(dim, rng)
    g *= min_dev / np.linalg.norm(g, 2)
    while True:
        m = u + g
        dev = np.linalg.norm(m.conj().T @ m - np.eye(dim), 2)
        if dev >= min_dev:
            return m
        g *= 2.0


def basis_theorem_suite(
    d: int | None = None,
    n: int | None = None,
    trials: int = 20,
    seed: int = 0,
    tol: float = DEFAULT_TOL,
    fail_floor: float = 1e-3,
) -> Report:
    """Unitary extensions stay orthonormal; perturbed ones never do.

    Reports, per side, the worst Gram residual over unitary trials (must
    stay below ``tol``) and the best Gram deviation over non-unitary
    trials (must stay above ``fail_floor``).
    """
    if (d is None) == (n is None):
        raise ValueError("give exactly one of d (qudit) or n (multi-qubit)")
    fam = qudit_bell_family(d) if d is not None else multi_bell_family(n)
    local = fam.unitaries[0].shape[0]
    rng = np.random.default_rng(seed)
    rep = Report(
        "basis-theorem",
        {"d": d, "n": n, "trials": trials},
        tolerance=tol,
        seed=seed,
    )

    eye_k = np.eye(len(fam.states))
    for side in ("left", "right"):
        worst_unitary = 0.0
        best_dev = np.inf
        for _ in range(trials):
            u = haar_unitary(local, rng)
            worst_unitary = max(
                worst_unitary, residual(gram_matrix(extend_basis(fam, u, side)), eye_k)
            )
            m = perturbed_nonunitary(local, rng)
            best_dev = min(best_dev, residual(gram_matrix(extend_basis(fam, m, side)), eye_k))
        rep.add(f"unitary-extensions-{side} ({trials} trials)", worst_unitary)
        rep.add_expect_fail(
            f"nonunitary-extensions-{side} ({trials} trials)", best_dev, fail_floor
        )

    # Reduced completeness: (1/d) sum_a U_a M |i><j| M^dag U_a^dag = (M^dag M)_ji 1.
    m = random_matrix(local, rng)
    mdm = m.conj().T @ m
    worst = 0.0
    for i in range(local):
        for j in range(local):
            eij = np.outer(basis_state(local, i), basis_state(local, j))
            total = np.zeros((local, local), dtype=complex)
            for u in fam.unitaries:
                total += u @ m @ eij @ m.conj().T @ u.conj().T
            worst = max(worst, residual(total / local, mdm[j, i] * identity(local)))
    rep.add("reduced-completeness (general M)", worst)

    # For square M, one-sided unitarity implies two-sided; nothing to sample.
    rep.add("vacuous-one-sided-unitarity", 0.0)
    return rep


# ---------------------------------------------------------------------------
# observables


@dataclass
class ObservableSpec:
    """A Hermitian operator with its closed-form eigenpairs.

    Eigenvalues come from the label, never from an eigensolver, so there
    is no ordering ambiguity: each entry is (label, eigenvalue, state).
    """

    name: str
    matrix: np.ndarray
    eigenpairs: list[tuple[object, float, np.ndarray]]


def observable_check(spec: ObservableSpec, tol: float = DEFAULT_TOL) -> Report:
    rep = Report("observable", {"name": spec.name}, tolerance=tol)
    rep.add("hermitian", residual(spec.matrix, dagger(spec.matrix)))
    worst = 0.0
    for label, lam, state in spec.eigenpairs:
        worst = max(worst, residual(spec.matrix @ state, lam * state))
    rep.add(f"eigenequations ({len(spec.eigenpairs)} states)", worst)
    return rep


def qudit_observables(d: int, k: int) -> list[ObservableSpec]:
    """The four Hermitian combinations of X^k x X^k and Z^k x (Z^dag)^k.

    Their eigenvalues on |Omega(alpha beta)> are cos/sin(2 k alpha pi / d)
    and cos/sin(2 k beta pi / d); at d=2, k=1 the two sine operators
    degenerate to zero.
    """
    if not 1 <= k <= d - 1:
        raise ValueError(f"k must be in 1..{d - 1}")
    xk = np.linalg.matrix_power(gen_x(d), k)
    zk = np.linalg.matrix_power(gen_z(d), k)
    a = tensor(xk, xk)
    b = tensor(zk, dagger(zk))
    ox_p = (a + dagger(a)) / 2
    ox_m = 1j * (a - dagger(a)) / 2
    oz_p = (b + dagger(b)) / 2
    oz_m = -1j * (b - dagger(b)) / 2

    labels = [(al, be) for al in range(d) for be in range(d)]
    states = {lab: qudit_bell(d, *lab) for lab in labels}

    def pairs(eigval):
        return [(lab, eigval(*lab), states[lab]) for lab in labels]

    ang = 2 * np.pi * k / d
    return [
        ObservableSpec(f"OX+({k})", ox_p, pairs(lambda al, be: np.cos(ang * al))),
        ObservableSpec(f"OX-({k})", ox_m, pairs(lambda al, be: np.sin(ang * al))),
        ObservableSpec(f"OZ+({k})", oz_p, pairs(lambda al, be: np.cos(ang * be))),
        ObservableSpec(f"OZ-({k})", oz_m, pairs(lambda al, be: np.sin(ang * be))),
    ]


def conjugated_observables(spec: ObservableSpec, m: np.ndarray, side: str) -> ObservableSpec:
    """Unitary transform of an observable along with its eigenvectors.

    Left: (M x 1) O (M^dag x 1) on states (M x 1)|psi>.  Right uses the
    transpose/conjugate pair (1 x M^T) O (1 x M^*), matching the local
    action U_a M = (1 x M^T) on the reference Bell state.
    """
    m = np.asarray(m, dtype=complex)
    if not is_unitary(m):
        raise ValueError("conjugation requires a unitary matrix")
    d = m.shape[0]
    if spec.matrix.shape != (d * d, d * d):
        raise ValueError("observable dimension does not match M")
    eye = identity(d)
    if side == "left":
        shift = tensor(m, eye)
        inv = tensor(dagger(m), eye)
    elif side == "right":
        shift = tensor(eye, m.T)
        inv = tensor(eye, m.conj())
    else:
        raise ValueError("side must be 'left' or 'right'")
    return ObservableSpec(
        f"{spec.name}|{side}-conjugated",
        shift @ spec.matrix @ inv,
        [(lab, lam, shift @ st) for lab, lam, st in spec.eigenpairs],
    )


def multiqubit_observables(n: int) -> list[ObservableSpec]:
    """Phase-bit X_k X_{n+k} and parity-bit Z_k Z_{n+k} pairs, k = 1..n."""
    if not 1 <= n <= 5:
        raise ValueError("n must be in 1..5")
    labels = list(all_labels(n))
    states = {lab: multi_bell(n, *lab) for lab in labels}
    x = np.array([[0, 1], [1, 0]], dtype=complex)
    z = np.array([[1, 0], [0, -1]], dtype=complex)

    def embed(ops):
        out = np.eye(1, dtype=complex)
        for q in range(2 * n):
            out = np.kron(out, ops.get(q, np.eye(2, dtype=complex)))
        return out

    specs = []
    for k in range(1, n + 1):
        xx = embed({k - 1: x, n + k - 1: x})
        zz = embed({k - 1: z, n + k - 1: z})
        specs.append(
            ObservableSpec(
                f"X{k}X{n + k}",
                xx,
                [(lab, (-1.0) ** lab[0][k - 1], states[lab]) for lab in labels],
            )
        )
        specs.append(
            ObservableSpec(
                f"Z{k}Z{n + k}",
                zz,
                [(lab, (-1.0) ** lab[1][k - 1], states[lab]) for lab in labels],
            )
        )
    return specs


def multiqubit_observable_suite(n: int, tol: float = DEFAULT_TOL) -> Report:
    """Eigenequations, pairwise commutators, and joint-label uniqueness."""
    specs = multiqubit_observables(n)
    rep = Report("multiqubit-observables", {"n": n}, tolerance=tol)
    for spec in specs:
        sub = observable_check(spec, tol)
        rep.add(spec.name, sub.max_residual)
    worst = max(
        residual(a.matrix @ b.matrix, b.matrix @ a.matrix)
        for i, a in enumerate(specs)
        for b in specs[i + 1 :]
    )
    rep.add("pairwise-commutators", worst)
    eig_maps = [{lab: lam for lab, lam, _ in s.eigenpairs} for s in specs]
    patterns = {
        tuple(int(round(em[lab])) for em in eig_maps) for lab in all_labels(n)
    }
    rep.add("joint-labels-distinct", 0.0 if len(patterns) == 4**n else 1.0)
    return rep


# ---------------------------------------------------------------------------
# trace-constraint solver (Lemma of the inductive appendix)


def trace_system(n: int) -> tuple[np.ndarray, np.ndarray, list]:
    """Linear system tr(I T(ab)) = 2^n delta over the 4^n word family.

    Unknowns are the row-major entries of the 2^n x 2^n matrix I; row
    order follows the lexicographic (alpha, beta) label order.
    """
    dim = 2**n
    words = list(all_words(n))
    mat = np.zeros((4**n, dim * dim))
    for r, w in enumerate(words):
        t = word_matrix(w).real  # tensor words of Z, X are real matrices
        for i in range(dim):
            for j in range(dim):
                mat[r, i * dim + j] = t[j, i]
    rhs = np.zeros(4**n)
    rhs[0] = dim  # the all-zero label comes first
    return mat, rhs, [(w.z_exps, w.x_exps) for w in words]


APPENDIX_N1_MATRIX = np.array(
    [[1, 0, 0, 1], [0, 1, 1, 0], [0, -1, 1, 0], [1, 0, 0, -1]], dtype=float
)
# Row order of the appendix system: words 1, X, ZX, Z.
_APPENDIX_ROW_ORDER = [0, 1, 3, 2]


def trace_constraint_solve(n: int, tol: float = DEFAULT_TOL) -> Report:
    if not 1 <= n <= 3:
        raise ValueError("n must be in 1..3")
    mat, rhs, _ = trace_system(n)
    dim = 2**n
    rep = Report("trace-constraint", {"n": n}, tolerance=tol)

    sing = np.linalg.svd(mat, compute_uv=False)
    null_dim = int(np.sum(sing < 1e-10 * sing[0]))
    rep.add(f"system-full-rank ({4 ** n} eqs)", float(null_dim))

    sol = np.linalg.solve(mat, rhs).reshape(dim, dim)
    rep.add("inhomogeneous-solution-is-identity", residual(sol, np.eye(dim)))

    hom = np.linalg.solve(mat, np.zeros(4**n)).reshape(dim, dim)
    rep.add("homogeneous-solution-is-zero", residual(hom, np.zeros((dim, dim))))

    if n == 1:
        rep.add(
            "appendix-system-verbatim",
            residual(mat[_APPENDIX_ROW_ORDER], APPENDIX_N1_MATRIX),
        )
    return rep

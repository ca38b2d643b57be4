"""Bell transform B(eps, eta), Yang-Baxter and braid-group checks,
Temperley-Lieb representations from Bell projectors, and the braid
teleportation equations for one and many qubits.

The two sign parameters select one of four unitary basis changes from
the product basis to the Bell basis; all four solve the constant
Yang-Baxter equation.  Sign bookkeeping throughout uses the exponent
table f(eps, eta, i, j) and the bit bijections

    i' = i xor (|eps - eta| / 2) j' xor (1 + eta) / 2,    j' = i xor j,

kept as exact integer arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from .bell import all_labels, bell2, product_ket, qudit_bell, twist
from .linalg import (
    DEFAULT_TOL,
    dagger,
    identity,
    random_state,
    residual,
    tensor,
    tensor_all,
)
from .pauli import PauliWord, word_dagger, word_matrix, word_mul
from .report import Report

_SIGNS = (1, -1)


def _check_sign(*vals):
    for v in vals:
        if v not in _SIGNS:
            raise ValueError(f"sign parameters must be +1 or -1, got {v}")


def bell_transform(epsilon: int, eta: int) -> np.ndarray:
    """The 4x4 product-to-Bell basis change; B(e, n)^dag = B(-e, -n)."""
    _check_sign(epsilon, eta)
    return np.array(
        [
            [1, 0, 0, eta],
            [0, 1, epsilon, 0],
            [0, -epsilon, 1, 0],
            [-eta, 0, 0, 1],
        ],
        dtype=complex,
    ) / np.sqrt(2.0)


def sign_exponent(epsilon: int, eta: int, i: int, j: int) -> int:
    """f(eps, eta, i, j) in {0,1}: the sign picked up mapping |ij> to a Bell state."""
    _check_sign(epsilon, eta)
    if (epsilon, eta) == (-1, -1):
        return i
    if (epsilon, eta) == (-1, 1):
        return i & (j ^ 1)
    if (epsilon, eta) == (1, -1):
        return i & j
    return 0


def bell_bijection(epsilon: int, eta: int, i: int, j: int) -> tuple[int, int]:
    """(i, j) -> (i', j') with B(eps, eta)|ij> = (-1)^f |phi(i', j')>."""
    _check_sign(epsilon, eta)
    jp = i ^ j
    ip = i ^ ((abs(epsilon - eta) // 2) * jp) ^ ((1 + eta) // 2)
    return ip & 1, jp


def bell_action_check(epsilon: int, eta: int, tol: float = 1e-15) -> Report:
    """Unified action formula and its closed-form special cases, exhaustively."""
    rep = Report("bell-action", {"eps": epsilon, "eta": eta}, tolerance=tol)
    b = bell_transform(epsilon, eta)
    worst = 0.0
    images = set()
    for i, j in product((0, 1), repeat=2):
        ip, jp = bell_bijection(epsilon, eta, i, j)
        images.add((ip, jp))
        sign = (-1.0) ** sign_exponent(epsilon, eta, i, j)
        worst = max(worst, residual(sign * (b @ product_ket((i, j))), bell2(ip, jp)))
    rep.add("unified-action (4 inputs)", worst)
    rep.add("input-output-bijection", 0.0 if len(images) == 4 else 1.0)
    rep.add("dagger-is-negated-params", residual(dagger(b), bell_transform(-epsilon, -eta)))
    rep.add("unitarity", residual(dagger(b) @ b, identity(4)))
    return rep


def yang_baxter_check(r: np.ndarray, local_dim: int, tol: float = DEFAULT_TOL) -> Report:
    """(R x 1)(1 x R)(R x 1) = (1 x R)(R x 1)(1 x R) on the triple space."""
    r = np.asarray(r, dtype=complex)
    if r.shape != (local_dim**2, local_dim**2):
        raise ValueError(f"R must be {local_dim ** 2} square, got {r.shape}")
    eye = identity(local_dim)
    r1 = tensor(r, eye)
    r2 = tensor(eye, r)
    rep = Report("ybe", {"local_dim": local_dim}, tolerance=tol)
    rep.add("triple-products", residual(r1 @ r2 @ r1, r2 @ r1 @ r2))
    return rep


def braid_generators(n_strands: int, gate: np.ndarray) -> list[np.ndarray]:
    return [
        tensor_all(
            [identity(2)] * (i - 1) + [gate] + [identity(2)] * (n_strands - i - 1)
        )
        for i in range(1, n_strands)
    ]


def braid_rep_check(
    n_strands: int,
    epsilon: int = 1,
    eta: int = 1,
    gate: np.ndarray | None = None,
    tol: float = DEFAULT_TOL,
) -> Report:
    """Braid relations b_i b_{i+1} b_i = b_{i+1} b_i b_{i+1} and far commutativity."""
    if not 2 <= n_strands <= 6:
        raise ValueError("strand count must be in 2..6")
    if gate is None:
        gate = bell_transform(epsilon, eta)
    gens = braid_generators(n_strands, gate)
    rep = Report(
        "braid-rep", {"strands": n_strands, "eps": epsilon, "eta": eta}, tolerance=tol
    )
    for i in range(len(gens) - 1):
        a, b = gens[i], gens[i + 1]
        rep.add(f"braid({i + 1},{i + 2})", residual(a @ b @ a, b @ a @ b))
    for i in range(len(gens)):
        for j in range(i + 2, len(gens)):
            rep.add(
                f"far-commute({i + 1},{j + 1})",
                residual(gens[i] @ gens[j], gens[j] @ gens[i]),
            )
    return rep


# ---------------------------------------------------------------------------
# Temperley-Lieb


@dataclass
class TLRep:
    """Projector-built Temperley-Lieb generators on n strands of dimension d."""

    n: int
    d: int
    generators: list[np.ndarray]


def tl_generators(
    n_strands: int,
    d: int,
    label: tuple[int, int] = (0, 0),
    m: np.ndarray | None = None,
) -> TLRep:
    """e_i = 1^(i-1) x |state><state| x 1^(n-i-1) from a two-qudit Bell state.

    With M supplied the projector is built on the normalized
    (M U_a x 1)|Omega>; for unitary M this is |M Omega(a)> itself.
    """
    if not 2 <= n_strands <= 5:
        raise ValueError("strand count must be in 2..5")
    if not 2 <= d <= 4:
        raise ValueError("local dimension must be in 2..4")
    state = qudit_bell(d, *label)
    if m is not None:
        state = tensor(np.asarray(m, dtype=complex), identity(d)) @ state
        state = state / np.linalg.norm(state)
    proj = np.outer(state, state.conj())
    gens = [
        tensor_all(
            [identity(d)] * (i - 1) + [proj] + [identity(d)] * (n_strands - i - 1)
        )
        for i in range(1, n_strands)
    ]
    return TLRep(n_strands, d, gens)


def tl_relation_check(rep_tl: TLRep, tol: float = DEFAULT_TOL) -> Report:
    """e_i^2 = e_i, e_i e_{i+-1} e_i = d^-2 e_i, far commutation (loop parameter d)."""
    gens = rep_tl.generators
    inv_d2 = 1.0 / rep_tl.d**2
    rep = Report("tl-relations", {"strands": rep_tl.n, "d": rep_tl.d}, tolerance=tol)
    for i, e in enumerate(gens):
        rep.add(f"idempotent e{i + 1}", residual(e @ e, e))
    for i in range(len(gens) - 1):
        a, b = gens[i], gens[i + 1]
        rep.add(f"tl({i + 1},{i + 2})", residual(a @ b @ a, inv_d2 * a))
        rep.add(f"tl({i + 2},{i + 1})", residual(b @ a @ b, inv_d2 * b))
    for i in range(len(gens)):
        for j in range(i + 2, len(gens)):
            rep.add(
                f"far-commute({i + 1},{j + 1})",
                residual(gens[i] @ gens[j], gens[j] @ gens[i]),
            )
    return rep


# ---------------------------------------------------------------------------
# braid teleportation


def correction_word(kp: int, mp: int, ip: int, jp: int) -> PauliWord:
    """T^dag(k'm') T^dag(i'j') as one signed word."""
    return word_mul(
        word_dagger(PauliWord((kp,), (mp,))), word_dagger(PauliWord((ip,), (jp,)))
    )


def correction_abc(
    eps_l: int, eta_l: int, eps_r: int, eta_r: int, k: int, m: int, i: int, j: int
) -> tuple[int, int, int]:
    """Exponents (a, b, c) of the single-qubit correction (-1)^a X^b Z^c."""
    kp, mp = bell_bijection(eps_l, eta_l, k, m)
    ip, jp = bell_bijection(eps_r, eta_r, i, j)
    a = (
        sign_exponent(eps_l, eta_l, k, m)
        ^ sign_exponent(eps_r, eta_r, i, j)
        ^ (kp & jp)
    )
    return a, jp ^ mp, ip ^ kp


def table1_abc(eps_l: int, eta_l: int, k: int, m: int, i: int, j: int) -> tuple[int, int, int]:
    """The published closed forms for (a, b, c) when eps_r = -eps_l, eta_r = -eta_l."""
    b = i ^ j ^ k ^ m
    if (eps_l, eta_l) == (-1, 1):
        return (i & j) ^ ((m ^ 1) & (i ^ j ^ k)), b, j ^ m ^ 1
    if (eps_l, eta_l) == (1, -1):
        return (i & (j ^ 1)) ^ (m & (i ^ j ^ k)), b, j ^ m ^ 1
    if (eps_l, eta_l) == (1, 1):
        return i ^ ((k ^ 1) & (i ^ j)), b, i ^ k ^ 1
    return k & (i ^ j ^ 1), b, i ^ k ^ 1


def table1_check() -> Report:
    """Exact agreement of the closed-form exponent table, 16 bit cases per row."""
    rep = Report("table1", {}, tolerance=0.5)
    for eps_l, eta_l in product(_SIGNS, repeat=2):
        mismatches = 0
        for k, m, i, j in product((0, 1), repeat=4):
            got = correction_abc(eps_l, eta_l, -eps_l, -eta_l, k, m, i, j)
            if got != table1_abc(eps_l, eta_l, k, m, i, j):
                mismatches += 1
        rep.add(f"row (eps,eta)=({eps_l},{eta_l})", float(mismatches))
    return rep


def braid_teleport_single_check(
    eps_l: int,
    eta_l: int,
    eps_r: int,
    eta_r: int,
    k: int,
    m: int,
    seed: int = 0,
    tol: float = DEFAULT_TOL,
) -> Report:
    """Single-qubit braid teleportation equation for one resource ket |km>.

    LHS: (B(-eps_r, -eta_r) x 1)(1 x B(eps_l, eta_l)) on psi x |km>.
    RHS: (1/2) sum |ij> x U psi with U the signed word correction; the
    (-1)^a X^b Z^c route must agree with the word route exactly.
    """
    _check_sign(eps_l, eta_l, eps_r, eta_r)
    rng = np.random.default_rng(seed)
    rep = Report(
        "braid-teleport-single",
        {"eps_l": eps_l, "eta_l": eta_l, "eps_r": eps_r, "eta_r": eta_r, "k": k, "m": m},
        tolerance=tol,
        seed=seed,
    )
    lhs_op = tensor(bell_transform(-eps_r, -eta_r), identity(2)) @ tensor(
        identity(2), bell_transform(eps_l, eta_l)
    )
    kp, mp = bell_bijection(eps_l, eta_l, k, m)
    f_l = sign_exponent(eps_l, eta_l, k, m)

    def rhs_for(psi):
        out = np.zeros(8, dtype=complex)
        for i, j in product((0, 1), repeat=2):
            ip, jp = bell_bijection(eps_r, eta_r, i, j)
            f_r = sign_exponent(eps_r, eta_r, i, j)
            u = (-1.0) ** (f_l ^ f_r) * word_matrix(correction_word(kp, mp, ip, jp))
            out += np.kron(product_ket((i, j)), u @ psi)
        return out / 2.0

    worst_eq = 0.0
    for psi in [product_ket((0,)), product_ket((1,)), random_state(2, rng)]:
        lhs = lhs_op @ np.kron(psi, product_ket((k, m)))
        worst_eq = max(worst_eq, residual(lhs, rhs_for(psi)))
    rep.add("equation (basis + random psi)", worst_eq)

    x, z = word_matrix(PauliWord((0,), (1,))), word_matrix(PauliWord((1,), (0,)))
    worst_abc = 0.0
    for i, j in product((0, 1), repeat=2):
        ip, jp = bell_bijection(eps_r, eta_r, i, j)
        f_r = sign_exponent(eps_r, eta_r, i, j)
        u_word = (-1.0) ** (f_l ^ f_r) * word_matrix(correction_word(kp, mp, ip, jp))
        a, b, c = correction_abc(eps_l, eta_l, eps_r, eta_r, k, m, i, j)
        u_abc = (-1.0) ** a * np.linalg.matrix_power(x, b) @ np.linalg.matrix_power(z, c)
        worst_abc = max(worst_abc, residual(u_word, u_abc))
    rep.add("abc-route-equals-word-route", worst_abc)
    return rep


def twisted_yb_gates(n: int, eps, eta, kind: str = "plain") -> np.ndarray:
    """tau . tensor_i B(eps_i, eta_i), optionally conjugated back by tau^dag.

    The conjugated kind solves the Yang-Baxter equation on local
    dimension 2^n; the plain kind does not (it is the gate that appears
    in the multi-qubit braid teleportation equation).
    """
    eps = tuple(eps)
    eta = tuple(eta)
    if len(eps) != n or len(eta) != n:
        raise ValueError("need one (eps, eta) pair per qubit pair")
    _check_sign(*eps, *eta)
    if not 1 <= n <= 3:
        raise ValueError("n must be in 1..3")
    tau = twist(n)
    gate = tau @ tensor_all([bell_transform(e, t) for e, t in zip(eps, eta)])
    if kind == "plain":
        return gate
    if kind == "conjugated":
        return gate @ dagger(tau)
    raise ValueError("kind must be 'plain' or 'conjugated'")


def _interleave(a_bits, b_bits) -> tuple[int, ...]:
    out = []
    for a, b in zip(a_bits, b_bits, strict=True):
        out.extend((a, b))
    return tuple(out)


def braid_teleport_multi_check(
    n: int,
    eps_l,
    eta_l,
    eps_r,
    eta_r,
    a_bits,
    b_bits,
    seed: int = 0,
    tol: float = DEFAULT_TOL,
    blocked: bool = False,
) -> Report:
    """Multi-qubit braid teleportation equation, full-vector assembly.

    Interleaved form uses the plain twisted gates on |a1 b1 ... an bn>;
    the blocked form conjugates the gates by the twist and feeds the
    blocked ket tau|ab>.  Correction per outcome is the signed word
    T^dag(a'b') T^dag(alpha' beta') with the per-pair sign exponents.
    """
    if not 1 <= n <= 2:
        raise ValueError("full-vector assembly is capped at n = 2")
    eps_l, eta_l = tuple(eps_l), tuple(eta_l)
    eps_r, eta_r = tuple(eps_r), tuple(eta_r)
    a_bits, b_bits = tuple(a_bits), tuple(b_bits)
    rng = np.random.default_rng(seed)
    kind = "conjugated" if blocked else "plain"
    gate_l = twisted_yb_gates(n, eps_l, eta_l, kind)
    gate_r = twisted_yb_gates(n, eps_r, eta_r, kind)
    dim = 2**n
    eye_n = identity(dim)
    lhs_op = tensor(dagger(gate_r), eye_n) @ tensor(eye_n, gate_l)

    tau = twist(n)
    ket_ab = product_ket(_interleave(a_bits, b_bits))
    if blocked:
        ket_ab = tau @ ket_ab

    ap = [bell_bijection(e, t, a, b) for e, t, a, b in zip(eps_l, eta_l, a_bits, b_bits)]
    f_l = sum(
        sign_exponent(e, t, a, b) for e, t, a, b in zip(eps_l, eta_l, a_bits, b_bits)
    ) % 2
    word_ab = PauliWord(tuple(x[0] for x in ap), tuple(x[1] for x in ap))

    def rhs_for(psi):
        out = np.zeros(dim**3, dtype=complex)
        for alpha, beta in all_labels(n):
            prime = [
                bell_bijection(e, t, al, be)
                for e, t, al, be in zip(eps_r, eta_r, alpha, beta)
            ]
            f_r = sum(
                sign_exponent(e, t, al, be)
                for e, t, al, be in zip(eps_r, eta_r, alpha, beta)
            ) % 2
            word_out = PauliWord(tuple(x[0] for x in prime), tuple(x[1] for x in prime))
            u = (-1.0) ** (f_l ^ f_r) * word_matrix(
                word_mul(word_dagger(word_ab), word_dagger(word_out))
            )
            ket = product_ket(_interleave(alpha, beta))
            if blocked:
                ket = tau @ ket
            out += np.kron(ket, u @ psi)
        return out / dim

    rep = Report(
        "braid-teleport-multi",
        {
            "n": n,
            "eps_l": str(eps_l),
            "eta_l": str(eta_l),
            "eps_r": str(eps_r),
            "eta_r": str(eta_r),
            "a": str(a_bits),
            "b": str(b_bits),
            "form": "blocked" if blocked else "interleaved",
        },
        tolerance=tol,
        seed=seed,
    )
    psi = random_state(dim, rng)
    lhs = lhs_op @ np.kron(psi, ket_ab)
    rep.add(f"equation a={a_bits} b={b_bits}", residual(lhs, rhs_for(psi)))
    return rep

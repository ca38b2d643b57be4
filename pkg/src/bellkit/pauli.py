"""Pauli machinery, symbolic and numeric.

Covers the qubit gates X, Z, H, the qudit clock/shift pair with
``ZX = omega XZ`` (omega = exp(2 pi i / d)), n-qubit tensor words
``T(ab) = (-1)^s  prod_k Z^{a_k} X^{b_k}`` with an exactly tracked
{0,1} sign exponent, qudit words ``omega^g Z^a X^b`` with an exactly
tracked phase exponent g mod d, and the basis-group closure check.

Phases are never floated through matrices when multiplying words: the
sign/phase arithmetic is integer, so braid and teleportation
bookkeeping built on top of these words stays exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from .linalg import DEFAULT_TOL, hs_inner, identity, residual, tensor_all
from .report import Report

# ---------------------------------------------------------------------------
# bit strings


def as_bits(value, n: int | None = None) -> tuple[int, ...]:
    """Coerce an int, iterable or '0101' string to a tuple of bits.

    Ints are expanded big-endian to width ``n``.
    """
    if isinstance(value, (int, np.integer)):
        if n is None:
            raise ValueError("bit width required to expand an integer label")
        if not 0 <= value < 2**n:
            raise ValueError(f"label {value} out of range for {n} bits")
        return tuple((value >> (n - 1 - k)) & 1 for k in range(n))
    if isinstance(value, str):
        bits = tuple(int(c) for c in value)
    else:
        bits = tuple(int(b) for b in value)
    if any(b not in (0, 1) for b in bits):
        raise ValueError(f"not a bit string: {value!r}")
    if n is not None and len(bits) != n:
        raise ValueError(f"expected {n} bits, got {len(bits)}")
    return bits


def bits_to_int(bits) -> int:
    out = 0
    for b in bits:
        out = (out << 1) | b
    return out


def bit_xor(a, b) -> tuple[int, ...]:
    return tuple(x ^ y for x, y in zip(a, b, strict=True))


def bit_dot(a, b) -> int:
    """Dot product of two bit strings modulo 2."""
    return sum(x * y for x, y in zip(a, b, strict=True)) % 2


# ---------------------------------------------------------------------------
# qubit gates

_SQ2 = 1.0 / np.sqrt(2.0)

_GATES = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
    "H": np.array([[1, 1], [1, -1]], dtype=complex) * _SQ2,
}


def pauli_gate(name: str) -> np.ndarray:
    try:
        return _GATES[name].copy()
    except KeyError:
        raise ValueError(f"unknown gate {name!r}, expected one of I, X, Z, H") from None


# ---------------------------------------------------------------------------
# qudit clock and shift


def omega_root(d: int, k: int = 1) -> complex:
    """exp(2 pi i k / d), computed per entry rather than by repeated products.

    Quarter-turn angles are returned exactly so that d = 2, 4 reductions
    (Z, ZX, ...) carry no floating dust.
    """
    k %= d
    if (4 * k) % d == 0:
        return (1, 1j, -1, -1j)[(4 * k) // d % 4]
    return complex(np.exp(2j * np.pi * k / d))


def gen_x(d: int) -> np.ndarray:
    """Cyclic shift: X|i> = |i + 1 mod d>."""
    if d < 2:
        raise ValueError("local dimension must be at least 2")
    return np.roll(np.eye(d, dtype=complex), 1, axis=0)


def gen_z(d: int) -> np.ndarray:
    """Clock matrix diag(1, omega, ..., omega^(d-1))."""
    if d < 2:
        raise ValueError("local dimension must be at least 2")
    return np.diag([omega_root(d, i) for i in range(d)])


def gen_u(d: int, alpha: int, beta: int) -> np.ndarray:
    """The unitary Z^alpha X^beta without phase decoration."""
    return gen_word_matrix(GenPauliWord(d, alpha, beta))


# ---------------------------------------------------------------------------
# symbolic words


@dataclass(frozen=True)
class PauliWord:
    """(-1)^sign * tensor_k Z^{z_k} X^{x_k} over n qubits."""

    z_exps: tuple[int, ...]
    x_exps: tuple[int, ...]
    sign: int = 0

    def __post_init__(self):
        object.__setattr__(self, "z_exps", as_bits(self.z_exps))
        object.__setattr__(self, "x_exps", as_bits(self.x_exps, len(self.z_exps)))
        object.__setattr__(self, "sign", int(self.sign) & 1)

    @property
    def n(self) -> int:
        return len(self.z_exps)


def word_matrix(w: PauliWord) -> np.ndarray:
    if w.n > 12:
        raise ValueError(f"word on {w.n} qubits exceeds the 2^12 dense cap")
    z, x = _GATES["Z"], _GATES["X"]
    factors = [
        np.linalg.matrix_power(z, a) @ np.linalg.matrix_power(x, b)
        for a, b in zip(w.z_exps, w.x_exps)
    ]
    return (-1.0) ** w.sign * tensor_all(factors)


def word_dagger(w: PauliWord) -> PauliWord:
    # T^dagger(ab) = (-1)^(a.b) T(ab), so only the sign exponent moves.
    return PauliWord(w.z_exps, w.x_exps, w.sign ^ bit_dot(w.z_exps, w.x_exps))


def word_mul(a: PauliWord, b: PauliWord) -> PauliWord:
    """Exact symbolic product; matches the matrix product entry for entry."""
    if a.n != b.n:
        raise ValueError(f"word length mismatch: {a.n} vs {b.n}")
    # Per factor, X^{x_a} Z^{z_b} = (-1)^{x_a z_b} Z^{z_b} X^{x_a}.
    cross = sum(xa * zb for xa, zb in zip(a.x_exps, b.z_exps)) % 2
    return PauliWord(
        bit_xor(a.z_exps, b.z_exps),
        bit_xor(a.x_exps, b.x_exps),
        a.sign ^ b.sign ^ cross,
    )


@dataclass(frozen=True)
class GenPauliWord:
    """omega^gamma * Z^alpha X^beta over one qudit of dimension d."""

    d: int
    alpha: int
    beta: int
    gamma: int = 0

    def __post_init__(self):
        if self.d < 2:
            raise ValueError("local dimension must be at least 2")
        object.__setattr__(self, "alpha", self.alpha % self.d)
        object.__setattr__(self, "beta", self.beta % self.d)
        object.__setattr__(self, "gamma", self.gamma % self.d)


def gen_word_matrix(w: GenPauliWord) -> np.ndarray:
    zpow = np.diag([omega_root(w.d, i * w.alpha) for i in range(w.d)])
    xpow = np.linalg.matrix_power(gen_x(w.d), w.beta)
    return omega_root(w.d, w.gamma) * (zpow @ xpow)


def gen_word_dagger(w: GenPauliWord) -> GenPauliWord:
    # (omega^g Z^a X^b)^dagger = omega^(-g - a b) Z^(-a) X^(-b)  (mod d).
    return GenPauliWord(w.d, -w.alpha, -w.beta, -w.gamma - w.alpha * w.beta)


def gen_word_mul(a: GenPauliWord, b: GenPauliWord) -> GenPauliWord:
    if a.d != b.d:
        raise ValueError(f"dimension mismatch: {a.d} vs {b.d}")
    # X^{b_a} Z^{a_b} = omega^(-b_a a_b) Z^{a_b} X^{b_a}.
    return GenPauliWord(
        a.d,
        a.alpha + b.alpha,
        a.beta + b.beta,
        a.gamma + b.gamma - a.beta * b.alpha,
    )


# ---------------------------------------------------------------------------
# word families


def all_words(n: int):
    """The 4^n unsigned n-qubit words, labels in (alpha, beta) lexicographic order."""
    for za in product((0, 1), repeat=n):
        for xb in product((0, 1), repeat=n):
            yield PauliWord(za, xb)


def qubit_word_set(n: int) -> list[np.ndarray]:
    """All 2 * 4^n signed word matrices, the candidate basis group at d=2^n."""
    mats = []
    for w in all_words(n):
        m = word_matrix(w)
        mats.append(m)
        mats.append(-m)
    return mats


def qudit_word_set(d: int) -> list[np.ndarray]:
    """All d^3 phase-decorated qudit words omega^g Z^a X^b."""
    return [
        gen_word_matrix(GenPauliWord(d, a, b, g))
        for g in range(d)
        for a in range(d)
        for b in range(d)
    ]


def basis_group_check(words, d: int, tol: float = DEFAULT_TOL) -> Report:
    """Verify that a finite set of matrices forms a basis group.

    Checks (i) every element unitary, (ii) closure under multiplication
    and conjugate transpose, (iii) Hilbert-Schmidt orthonormality of one
    phase representative per coset.  A closure violation is reported
    with the witness pair in the case id.
    """
    mats = [np.asarray(w, dtype=complex) for w in words]
    if not mats:
        raise ValueError("empty candidate set")
    rep = Report("basis-group", {"d": d, "size": len(mats)}, tolerance=tol)

    eye = identity(d)
    unit_res = max(residual(m.conj().T @ m, eye) for m in mats)
    rep.add("unitary", unit_res)

    def match_dist(m):
        return min(residual(m, w) for w in mats)

    worst = (0.0, "")
    for i, a in enumerate(mats):
        for j, b in enumerate(mats):
            dist = match_dist(a @ b)
            if dist > worst[0]:
                worst = (dist, f" witness=({i},{j})")
    rep.add("closure-mul" + (worst[1] if worst[0] >= tol else ""), worst[0])

    dag_res = max(match_dist(m.conj().T) for m in mats)
    rep.add("closure-dagger", dag_res)

    # One representative per global-phase coset; for unitaries u, v the
    # coset test is |tr(u^dagger v)| = d.
    reps: list[np.ndarray] = []
    for m in mats:
        if not any(abs(abs(hs_inner(r, m)) - 1.0) < 1e-9 for r in reps):
            reps.append(m)
    gram = np.array([[hs_inner(a, b) for b in reps] for a in reps])
    rep.add("hs-orthonormal", residual(gram, np.eye(len(reps))))
    return rep

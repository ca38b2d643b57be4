"""Bell-state families, the twist operator, preparation circuits and concurrence.

Two wire orders coexist throughout: the *interleaved* order
``i1 j1 ... in jn`` natural for n-fold tensor products of two-qubit Bell
pairs, and the *blocked* order ``i1 .. in j1 .. jn`` natural for viewing
the 2n qubits as two qudits of dimension 2^n.  The twist operator is the
permutation unitary taking interleaved to blocked; every constructor
here returns blocked order and the twist mediates whenever a formula is
stated in the other order.  Drift between the two orders is the main bug
risk in this whole domain, so both are first-class.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

import numpy as np

from .linalg import (
    basis_state,
    identity,
    permutation_matrix,
    tensor,
    tensor_all,
)
from .pauli import PauliWord, as_bits, bits_to_int, gen_u, pauli_gate, word_matrix

_NORM_TOL = 1e-10


# ---------------------------------------------------------------------------
# circuits


def embed(n_wires: int, ops: dict[int, np.ndarray]) -> np.ndarray:
    """Kronecker-embed single-qubit operators at the given wires, identity elsewhere."""
    return tensor_all([ops.get(q, identity(2)) for q in range(n_wires)])


_P0 = np.array([[1, 0], [0, 0]], dtype=complex)
_P1 = np.array([[0, 0], [0, 1]], dtype=complex)


@dataclass
class Circuit:
    """Ordered list of named gates over indexed wires; first gate acts first."""

    wires: int
    gates: list[tuple[str, tuple[int, ...]]] = field(default_factory=list)

    def _check(self, qs):
        for q in qs:
            if not 0 <= q < self.wires:
                raise ValueError(f"wire {q} out of range for {self.wires} wires")
        if len(set(qs)) != len(qs):
            raise ValueError(f"repeated wire in {qs}")

    def append(self, name: str, *qs: int) -> None:
        if name not in ("H", "X", "Z", "CNOT", "SWAP"):
            raise ValueError(f"unsupported gate {name!r}")
        self._check(qs)
        self.gates.append((name, tuple(qs)))

    def h(self, q: int) -> None:
        self.append("H", q)

    def x(self, q: int) -> None:
        self.append("X", q)

    def z(self, q: int) -> None:
        self.append("Z", q)

    def cnot(self, control: int, target: int) -> None:
        self.append("CNOT", control, target)

    def swap(self, a: int, b: int) -> None:
        self.append("SWAP", a, b)

    def gate_matrix(self, name: str, qs: tuple[int, ...]) -> np.ndarray:
        if name in ("H", "X", "Z"):
            return embed(self.wires, {qs[0]: pauli_gate(name)})
        if name == "CNOT":
            c, t = qs
            return embed(self.wires, {c: _P0}) + embed(
                self.wires, {c: _P1, t: pauli_gate("X")}
            )
        # SWAP, possibly between non-adjacent wires
        perm = list(range(self.wires))
        perm[qs[0]], perm[qs[1]] = perm[qs[1]], perm[qs[0]]
        return permutation_matrix(perm, 2)

    def to_matrix(self) -> np.ndarray:
        mat = identity(2**self.wires)
        for name, qs in self.gates:
            mat = self.gate_matrix(name, qs) @ mat
        return mat

    def to_qasm(self) -> str:
        """OpenQASM 2.0 text; gate order is construction order, bit-exact."""
        names = {"H": "h", "X": "x", "Z": "z", "CNOT": "cx", "SWAP": "swap"}
        lines = ['OPENQASM 2.0;', 'include "qelib1.inc";', f"qreg q[{self.wires}];"]
        for name, qs in self.gates:
            args = ",".join(f"q[{q}]" for q in qs)
            lines.append(f"{names[name]} {args};")
        return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# state constructors


def omega(d: int) -> np.ndarray:
    """The maximally entangled two-qudit state (1/sqrt d) sum_i |ii>."""
    if d < 2:
        raise ValueError("local dimension must be at least 2")
    vec = np.zeros(d * d, dtype=complex)
    vec[:: d + 1] = 1.0 / np.sqrt(d)
    return vec


def bell2(alpha: int, beta: int) -> np.ndarray:
    """Two-qubit Bell state (Z^alpha X^beta tensor I)|phi(00)>."""
    word = word_matrix(PauliWord((alpha,), (beta,)))
    return tensor(word, identity(2)) @ omega(2)


def qudit_bell(d: int, alpha: int, beta: int) -> np.ndarray:
    """Generalized two-qudit Bell state (Z^alpha X^beta tensor I)|Omega>."""
    if not (0 <= alpha < d and 0 <= beta < d):
        raise ValueError(f"labels ({alpha},{beta}) out of range for d={d}")
    return tensor(gen_u(d, alpha, beta), identity(d)) @ omega(d)


def twist(n: int) -> np.ndarray:
    """Permutation unitary sending |i1 j1 ... in jn> to |i1 ... in j1 ... jn>."""
    if not 1 <= n <= 6:
        raise ValueError("pair count must be in 1..6")
    perm = [0] * (2 * n)
    for k in range(n):
        perm[2 * k] = k
        perm[2 * k + 1] = n + k
    return permutation_matrix(perm, 2)


def twist_decomposition(n: int) -> Circuit:
    """The twist as a circuit of n(n-1)/2 adjacent SWAPs.

    Factor k walks the k-th pair's second qubit rightward across the
    not-yet-moved first qubits; factors are emitted innermost first so
    the circuit matrix reproduces ``twist(n)`` exactly.
    """
    if not 1 <= n <= 6:
        raise ValueError("pair count must be in 1..6")
    circ = Circuit(2 * n)
    for k in range(n - 1, 0, -1):
        for m in range(2 * k, n + k):
            circ.swap(m - 1, m)
    return circ


def multi_bell(n: int, alpha, beta) -> np.ndarray:
    """Generalized 2n-qubit Bell state, blocked order: (T(ab) tensor I^n)|Omega_{2^n}>."""
    word = PauliWord(as_bits(alpha, n), as_bits(beta, n))
    if word.n != n:
        raise ValueError(f"label length {word.n} does not match n={n}")
    return tensor(word_matrix(word), identity(2**n)) @ omega(2**n)


def pair_product_bell(n: int, alpha, beta) -> np.ndarray:
    """Interleaved-order n-fold tensor product of two-qubit Bell pairs."""
    a = as_bits(alpha, n)
    b = as_bits(beta, n)
    return tensor_all([bell2(ak, bk) for ak, bk in zip(a, b)])


def prep_circuit(n: int, alpha, beta) -> Circuit:
    """Hadamard + CNOT ladder + Pauli layer preparing multi_bell from |0...0>."""
    a = as_bits(alpha, n)
    b = as_bits(beta, n)
    circ = Circuit(2 * n)
    for k in range(n):
        circ.h(k)
    for k in range(n):
        circ.cnot(k, n + k)
    for k in range(n):
        if b[k]:
            circ.x(k)
        if a[k]:
            circ.z(k)
    return circ


def product_ket(bits) -> np.ndarray:
    bits = as_bits(bits)
    return basis_state(2 ** len(bits), bits_to_int(bits))


def ghz_state(n: int, j_bits=0, l_bits=0, sign: int = 1) -> np.ndarray:
    """(|j l> +/- |~j ~l>)/sqrt(2) in blocked order, with ~ the bit complement."""
    j = as_bits(j_bits, n)
    l = as_bits(l_bits, n)
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    jbar = tuple(1 - bit for bit in j)
    lbar = tuple(1 - bit for bit in l)
    return (product_ket(j + l) + sign * product_ket(jbar + lbar)) / np.sqrt(2)


# ---------------------------------------------------------------------------
# Bell-basis expansion and concurrence


@dataclass
class BellExpansion:
    """Amplitudes of a 2n-qubit state over the blocked Bell basis.

    ``amps[a, b]`` is the coefficient of the basis state with phase bits
    ``a`` and parity bits ``b`` read as big-endian integers.
    """

    n: int
    amps: np.ndarray

    def coefficient(self, alpha, beta) -> complex:
        return complex(
            self.amps[bits_to_int(as_bits(alpha, self.n)), bits_to_int(as_bits(beta, self.n))]
        )

    def reconstruct(self) -> np.ndarray:
        out = np.zeros(4**self.n, dtype=complex)
        for a in range(2**self.n):
            for b in range(2**self.n):
                out += self.amps[a, b] * multi_bell(self.n, a, b)
        return out


def _check_state(state: np.ndarray, n: int) -> np.ndarray:
    state = np.asarray(state, dtype=complex)
    if state.shape != (4**n,):
        raise ValueError(f"expected a 2n-qubit state of dimension {4 ** n}, got {state.shape}")
    if abs(np.linalg.norm(state) - 1.0) > _NORM_TOL:
        raise ValueError("state is not normalized")
    return state


def expand_in_bell_basis(state: np.ndarray, n: int) -> BellExpansion:
    state = _check_state(state, n)
    dim = 2**n
    amps = np.zeros((dim, dim), dtype=complex)
    for a in range(dim):
        for b in range(dim):
            amps[a, b] = np.vdot(multi_bell(n, a, b), state)
    return BellExpansion(n, amps)


def concurrence(state: np.ndarray, n: int) -> float:
    """|sum (-1)^(number of k with alpha_k != beta_k) d(ab)^2| over the expansion."""
    exp = expand_in_bell_basis(state, n)
    total = 0.0 + 0.0j
    for a in range(2**n):
        for b in range(2**n):
            sign = -1.0 if bin(a ^ b).count("1") % 2 else 1.0
            total += sign * exp.amps[a, b] ** 2
    return abs(total)


def concurrence_oracle(state: np.ndarray, n: int) -> float:
    """Independent route: overlap with the spin-flipped conjugate state."""
    state = _check_state(state, n)
    zx = pauli_gate("Z") @ pauli_gate("X")
    flip = tensor_all([zx] * (2 * n))
    tilde = (-1.0) ** n * (flip @ state.conj())
    return abs(np.vdot(tilde, state))


def all_labels(n: int):
    """All 4^n (alpha, beta) bit-string pairs, lexicographic."""
    for a in product((0, 1), repeat=n):
        for b in product((0, 1), repeat=n):
            yield a, b

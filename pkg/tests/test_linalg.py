import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bellkit.linalg import (
    dagger,
    haar_unitary,
    hs_inner,
    mul,
    permutation_matrix,
    residual,
    tensor,
    trace,
    transpose,
)
from bellkit.pauli import gen_x, gen_z, pauli_gate

X = pauli_gate("X")
Z = pauli_gate("Z")
I2 = pauli_gate("I")


def rand_complex(rng, shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def test_tensor_identity():
    assert residual(tensor(I2, I2), np.eye(4)) == 0


def test_tensor_zx_entries():
    # expand the 2x2 blocks by hand: Z diag picks the sign of the X block
    zx = tensor(Z, X)
    assert zx[0, 1] == 1
    assert zx[2, 3] == -1
    expected = np.array(
        [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, -1, 0]], dtype=complex
    )
    assert residual(zx, expected) == 0


def test_tensor_basis_kets():
    ket0 = np.array([1, 0], dtype=complex)
    ket1 = np.array([0, 1], dtype=complex)
    assert residual(tensor(ket0, ket1), np.array([0, 1, 0, 0], dtype=complex)) == 0


def test_tensor_size_cap():
    big = np.eye(2**13)
    with pytest.raises(ValueError):
        tensor(big, big)


def test_dagger_identity_and_involution():
    assert residual(dagger(I2), I2) == 0
    rng = np.random.default_rng(0)
    a = rand_complex(rng, (5, 3))
    assert residual(dagger(dagger(a)), a) == 0


def test_dagger_gen_z_entry():
    assert abs(dagger(gen_z(3))[1, 1] - np.exp(-2j * np.pi / 3)) < 1e-15


def test_transpose_vs_dagger():
    # symmetric / diagonal matrices are transpose-fixed
    assert residual(transpose(X), X) == 0
    assert residual(transpose(gen_z(3)), gen_z(3)) == 0
    # the shift matrix is real, so transpose and dagger coincide on it,
    # but differ from the matrix itself at its 6 nonzero positions
    x3 = gen_x(3)
    assert residual(transpose(x3), dagger(x3)) == 0
    assert np.count_nonzero(np.abs(transpose(x3) - x3) > 0.5) == 6
    # with complex entries the two operations genuinely split
    z3 = gen_z(3)
    assert residual(transpose(z3), z3) == 0
    assert np.count_nonzero(np.abs(dagger(z3) - transpose(z3)) > 0.5) == 2


def test_mul():
    assert residual(mul(X, X), I2) == 0
    assert residual(mul(Z, X), -mul(X, Z)) == 0
    rng = np.random.default_rng(1)
    a = rand_complex(rng, (3, 3))
    assert residual(mul(a, np.eye(3)), a) == 0
    with pytest.raises(ValueError):
        mul(np.eye(2), np.eye(3))


def test_trace():
    assert trace(np.eye(7)) == 7
    assert trace(X) == 0
    with pytest.raises(ValueError):
        trace(np.ones((2, 3)))


def test_hs_inner_values():
    assert hs_inner(I2, I2) == 1
    assert hs_inner(Z, X) == 0
    m = np.diag([1.0, 2.0])
    assert hs_inner(m, m) == 2.5
    with pytest.raises(ValueError):
        hs_inner(np.eye(2), np.eye(3))


def test_permutation_matrix_examples():
    assert residual(permutation_matrix([0, 1], 2), np.eye(4)) == 0
    swap = permutation_matrix([1, 0], 2)
    ket01 = np.zeros(4)
    ket01[0b01] = 1
    ket10 = np.zeros(4)
    ket10[0b10] = 1
    assert residual(swap @ ket01, ket10) == 0
    # perm (1,2,0) relabels digits: |100> -> |010>
    p = permutation_matrix([1, 2, 0], 2)
    ket = np.zeros(8)
    ket[0b100] = 1
    out = p @ ket
    assert np.argmax(np.abs(out)) == 0b010
    with pytest.raises(ValueError):
        permutation_matrix([0, 0], 2)


@pytest.mark.parametrize("k", [2, 3, 4])
def test_permutation_composition(k):
    from itertools import permutations

    for sigma in permutations(range(k)):
        for pi in permutations(range(k)):
            composed = [sigma[pi[q]] for q in range(k)]
            lhs = permutation_matrix(composed, 2)
            rhs = permutation_matrix(sigma, 2) @ permutation_matrix(pi, 2)
            assert residual(lhs, rhs) == 0


def test_residual():
    a = np.eye(2)
    assert residual(a, a) == 0
    assert residual(np.eye(2), Z) == 2
    with pytest.raises(ValueError):
        residual(np.eye(2), np.eye(3))


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=25, deadline=None)
def test_tensor_associativity(seed):
    rng = np.random.default_rng(seed)
    # exact equality whenever the entry products are exactly representable
    a, b, c = (rng.integers(-4, 5, (2, 2)).astype(complex) for _ in range(3))
    assert residual(tensor(tensor(a, b), c), tensor(a, tensor(b, c))) == 0
    # generic complex entries reassociate within one ulp
    a, b, c = (rand_complex(rng, (2, 2)) for _ in range(3))
    assert residual(tensor(tensor(a, b), c), tensor(a, tensor(b, c))) < 1e-14


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=25, deadline=None)
def test_tensor_of_unitaries_is_unitary(seed):
    rng = np.random.default_rng(seed)
    u, v = haar_unitary(3, rng), haar_unitary(2, rng)
    uv = tensor(u, v)
    assert residual(mul(dagger(uv), uv), np.eye(6)) < 1e-12


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=25, deadline=None)
def test_trace_cyclicity(seed):
    rng = np.random.default_rng(seed)
    a, b = rand_complex(rng, (8, 8)), rand_complex(rng, (8, 8))
    assert abs(trace(mul(a, b)) - trace(mul(b, a))) < 1e-12

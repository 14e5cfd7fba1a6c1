import numpy as np
import pytest
from hypothesis import given, strategies as st

from elusive.classes import involution_label, semisimple_label
from elusive.delperm import (CycleType, DecorationUnresolved, build, cycle_perm,
                             eigen_multiplicity, epsilon_type, fuse_cycle_type, h0_structure,
                             jordan_of_cycle_shape, module_dimension, permutation_matrix_on_V,
                             target_group)
from elusive.groups import GroupSpec
from elusive.numth import primes_upto
from elusive.oracle import jordan_partition, rank_mod_p


def _det(m, p):
    from sympy import Matrix
    return int(Matrix(m.tolist()).det()) % p


def test_build_examples():
    dm = build(6, 3)
    assert dm.n == 4 and _det(dm.gram, 3) == 2
    dm = build(6, 2)
    assert dm.form_kind == "symplectic" and dm.n == 4
    dm = build(8, 2)
    assert dm.form_kind == "quadratic-even" and dm.n == 6 and dm.epsilon == 1
    with pytest.raises(ValueError):
        build(4, 3)


def test_epsilon_examples():
    assert epsilon_type(6, 3) == -1
    assert epsilon_type(9, 2) == 1
    assert epsilon_type(8, 3) == "odd-dimensional"
    with pytest.raises(ValueError):
        epsilon_type(10, 2)


@pytest.mark.parametrize("d", range(6, 41, 2))
@pytest.mark.parametrize("p", [3, 5, 7, 11, 13])
def test_epsilon_when_p_divides_d(d, p):
    if d % p:
        return
    minus = d % 4 == 2 and p % 4 == 3
    assert epsilon_type(d, p) == (-1 if minus else 1)


def test_h0_examples():
    assert h0_structure(8, 3) == "S_d"
    assert h0_structure(10, 2) == "S_d"
    assert h0_structure(12, 2) == "A_d"


def test_jordan_examples():
    assert list(jordan_of_cycle_shape(CycleType(3, 1, 2), 5, 3).jordan) == [3, 1]
    assert list(jordan_of_cycle_shape(CycleType(3, 2, 0), 6, 3).jordan) == [3, 1]
    assert list(jordan_of_cycle_shape(CycleType(2, 3, 0), 6, 2).jordan) == [2, 2]
    with pytest.raises(ValueError):
        jordan_of_cycle_shape(CycleType(2, 2, 0), 4, 2)


def test_eigen_examples():
    assert eigen_multiplicity(CycleType(5, 2, 1), 11, 3) == (2, 2)
    with pytest.raises(ValueError):
        eigen_multiplicity(CycleType(7, 1, 0), 7, 7)
    with pytest.raises(ValueError):
        eigen_multiplicity(CycleType(5, 3, 0), 15, 5)


def test_fuse_examples():
    lab = fuse_cycle_type(CycleType(3, 2, 2), 8, 3)
    assert target_group(8, 3) == GroupSpec("OmegaOdd", 7, 3)
    assert list(lab.jordan) == [3, 3, 1]
    lab = fuse_cycle_type(CycleType(2, 2, 8), 12, 2)
    assert lab.decoration == "c2" and list(lab.jordan) == [2, 2] + [1] * 6
    lab = fuse_cycle_type(CycleType(5, 1, 7), 12, 3)
    n = module_dimension(12, 3)
    assert lab == semisimple_label(n, 5, {1: 1}, 4) and lab.e == n - 4
    lab = fuse_cycle_type(CycleType(2, 2, 5), 9, 3)
    assert lab == involution_label(7, 2, "t1")
    with pytest.raises(DecorationUnresolved):
        fuse_cycle_type(CycleType(2, 1, 9), 11, 3)  # transposition, n = 10


def test_permutation_matrix_examples():
    dm = build(7, 5)
    assert np.array_equal(permutation_matrix_on_V(tuple(range(7)), dm), np.eye(6, dtype=int))
    x = permutation_matrix_on_V((1, 0, 2, 3, 4, 5, 6), dm)
    assert list(x[0] % 5) == [4, 0, 0, 0, 0, 0]
    assert list(x[1] % 5) == [1, 1, 0, 0, 0, 0]
    assert all(list(x[i]) == [int(i == j) for j in range(6)] for i in range(2, 6))
    three = permutation_matrix_on_V((1, 2, 0, 3, 4), build(5, 3))
    assert jordan_partition(three, 3) == [3, 1]


ODD = [p for p in primes_upto(13) if p > 2]
VALID = [(d, p) for d in range(5, 21) for p in primes_upto(13)]


@given(st.sampled_from(VALID), st.randoms(use_true_random=False))
def test_homomorphism(dp, rnd):
    d, p = dp
    dm = build(d, p)
    s, t = list(range(d)), list(range(d))
    rnd.shuffle(s)
    rnd.shuffle(t)
    st_ = tuple(t[s[i]] for i in range(d))  # first s, then t
    lhs = permutation_matrix_on_V(st_, dm)
    rhs = permutation_matrix_on_V(tuple(s), dm) @ permutation_matrix_on_V(tuple(t), dm) % p
    assert np.array_equal(lhs, rhs)


@given(st.sampled_from(VALID), st.randoms(use_true_random=False))
def test_form_preserved(dp, rnd):
    d, p = dp
    dm = build(d, p)
    s = list(range(d))
    rnd.shuffle(s)
    x = permutation_matrix_on_V(tuple(s), dm)
    assert np.array_equal(x @ dm.gram @ x.T % p, dm.gram % p)
    if dm.qdiag is not None:
        for i in range(dm.n):
            assert dm.quadratic(x[i]) == dm.quadratic(np.eye(dm.n, dtype=int)[i])


SHAPES = [(d, p, h) for d in range(5, 21) for p in (2, 3, 5, 7) for h in range(1, d // p + 1)]


@pytest.mark.parametrize("d,p,h", SHAPES)
def test_jordan_matches_rank_oracle(d, p, h):
    ct = CycleType(p, h, d - p * h)
    x = permutation_matrix_on_V(cycle_perm(ct), build(d, p))
    assert jordan_partition(x, p) == list(jordan_of_cycle_shape(ct, d, p).jordan)


def _kernel_dim_over_ext(x, r, p):
    """Multiplicity of each nontrivial r-th root as an eigenvalue of x,
    via dim ker Phi_r-factor: the number of nontrivial eigenvalues is
    n - dim ker(x - 1), spread evenly when the answer is uniform."""
    n = x.shape[0]
    fixed = n - rank_mod_p((x - np.eye(n, dtype=np.int64)) % p, p)
    return fixed


EIGEN = [(d, p, r, h) for d in range(5, 17) for p in (2, 3, 5, 7, 11, 13) for r in (3, 5, 7)
         if r != p for h in range(1, d // r + 1)]


@pytest.mark.parametrize("d,p,r,h", EIGEN)
def test_eigen_matches_oracle(d, p, r, h):
    ct = CycleType(r, h, d - r * h)
    dm = build(d, p)
    try:
        per_root, trivial = eigen_multiplicity(ct, d, p)
    except ValueError:
        # only the h(r-1) > n case may be rejected
        assert h * (r - 1) > dm.n
        return
    x = permutation_matrix_on_V(cycle_perm(ct), dm)
    # x has order r coprime to p, so it is semisimple: the 1-eigenspace has
    # dim ker(x - 1) and, over the closure, x - w for w a nontrivial root has
    # kernel of dim n - rank(Phi_r(x)) / (r - 1) summed uniformly
    assert _kernel_dim_over_ext(x, r, p) == trivial
    n = dm.n
    phi = sum(np.linalg.matrix_power(x, k) for k in range(r)) % p
    assert (n - rank_mod_p(phi, p)) == per_root * (r - 1)

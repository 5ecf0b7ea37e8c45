import random
from fractions import Fraction

import pytest

from qweb.linalg import (
    DimensionMismatch,
    SparseMat,
    commutant_dim,
    compose,
    kron,
    rank,
    rank_exact,
    rank_mod_p,
    rank_rational,
)
from qweb.rep import cap_bd, cup_bd
from qweb.scalar import ONE, Q, ZERO, as_ratfunc, qint


def random_mat(rng, rows, cols, density=0.5, rank_cap=None):
    """Entries are small Laurent polynomials; optionally force low rank."""
    def entry():
        return sum((rng.randint(-2, 2) * Q**e for e in range(-1, 2)), ZERO)

    if rank_cap is None:
        ents = {(r, c): entry() for r in range(rows) for c in range(cols) if rng.random() < density}
        return SparseMat.from_entries(rows, cols, {k: v for k, v in ents.items() if not v.is_zero()})
    A = random_mat(rng, rows, rank_cap, 1.0)
    B = random_mat(rng, rank_cap, cols, 1.0)
    return compose(A, B)


def test_compose_identities():
    rng = random.Random(1)
    M = random_mat(rng, 3, 4)
    assert compose(SparseMat.identity(3), M) == M
    assert compose(M, SparseMat.identity(4)) == M


def test_circle_matrix():
    m = compose(cap_bd(3).with_bases(None, None), cup_bd(3).with_bases(None, None))
    assert m.shape == (1, 1)
    assert m[0, 0] == qint(3)


def test_compose_shape_mismatch():
    with pytest.raises(DimensionMismatch):
        compose(SparseMat.identity(2), SparseMat.identity(3))


def test_kron():
    assert kron(SparseMat.identity(2), SparseMat.identity(3)) == SparseMat.identity(6)
    rng = random.Random(2)
    A = random_mat(rng, 2, 3)
    assert kron(A, SparseMat.identity(1)) == A
    B = random_mat(rng, 2, 2)
    K = kron(A, B)
    for (r, c), v in K.entries():
        assert v == A[r // 2, c // 2] * B[r % 2, c % 2]


def test_mixed_product():
    rng = random.Random(3)
    A, B, C, D = (random_mat(rng, 2, 2) for _ in range(4))
    assert compose(kron(A, B), kron(C, D)) == kron(compose(A, C), compose(B, D))


def test_rank_trivial():
    assert rank(SparseMat.zero(4, 4)) == 0
    assert rank(SparseMat.identity(5)) == 5
    assert rank_exact(SparseMat.identity(5)) == 5


@pytest.mark.parametrize("seed", range(12))
def test_rank_exact_vs_random(seed):
    rng = random.Random(seed)
    r, c = rng.randint(1, 7), rng.randint(1, 7)
    cap = rng.choice([None, 1, 2, 3])
    M = random_mat(rng, r, c, rank_cap=cap)
    assert rank_exact(M) == rank(M, seed=seed)
    if cap is not None:
        assert rank_exact(M) <= cap


def test_rank_sees_q_dependence():
    # singular at q = 1 only; the generic rank is 2
    M = SparseMat.from_entries(2, 2, {(0, 0): ONE, (0, 1): ONE, (1, 0): ONE, (1, 1): Q})
    assert rank_exact(M) == 2
    assert rank(M) == 2
    assert rank_rational([{0: 1, 1: 1}, {0: 1, 1: 1}]) == 1


def test_rank_rational_and_mod_p():
    rows = [{0: Fraction(1, 2), 1: 1}, {0: 1, 1: 2}, {2: Fraction(3)}]
    assert rank_rational(rows) == 2
    assert rank_mod_p([{0: 1, 1: 2}, {0: 2, 1: 4}]) == 1


def test_commutant_trivial():
    assert commutant_dim([], [list(range(4))]) == 16
    assert commutant_dim([SparseMat.identity(5)], [[0, 1], [2, 3, 4]]) == 4 + 9
    assert commutant_dim([SparseMat.identity(5)]) == 25


def test_commutant_of_jordan_block():
    J = SparseMat.from_entries(3, 3, {(0, 1): ONE, (1, 2): Q})
    assert commutant_dim([J]) == 3


def test_json_roundtrip():
    rng = random.Random(5)
    M = random_mat(rng, 3, 3)
    assert SparseMat.from_json(M.to_json()) == M


def test_entries_are_canonical():
    M = SparseMat.from_entries(1, 1, {(0, 0): as_ratfunc(1)})
    assert M - M == SparseMat.zero(1, 1)
    assert (M - M).is_zero()

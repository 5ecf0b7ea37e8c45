import pytest

from qweb.linalg import SparseMat, compose, kron
from qweb.rep import (
    EXT,
    SYM,
    IndexOutOfRange,
    ParityError,
    TensorSpace,
    cap_bd,
    cap_c,
    coideal_gen,
    coideal_gens,
    crossing,
    cup_bd,
    cup_c,
    dot_bd,
    dot_c,
    equivariance_witness,
    gl_action,
    thick_merge,
    thick_split,
    thin_merge,
    thin_split,
    weight,
)
from qweb.scalar import ONE, Q, ZERO, qbinom, qint


def plain(m):
    return m.with_bases(None, None)


def vec(space, terms):
    """Column vector from {basis tuple: coefficient}."""
    cols = {0: {space.index(k): v for k, v in terms.items()}}
    return SparseMat.from_columns(space.dim, 1, cols)


def image(m, space_in, space_out, key):
    col = m.column(space_in.index(key))
    basis = space_out.basis()
    return {basis[r]: v for r, v in col.items()}


V2 = TensorSpace.of(2, EXT, (1,))
VV2 = TensorSpace.of(2, EXT, (1, 1))


def test_gl_action_on_vector_rep():
    E = gl_action(("E", 1), V2)
    assert image(E, V2, V2, ((2,),)) == {((1,),): ONE}
    assert image(E, V2, V2, ((1,),)) == {}
    K = gl_action(("K", 1), V2)
    assert image(K, V2, V2, ((1,),)) == {((1,),): Q}
    assert image(K, V2, V2, ((2,),)) == {((2,),): Q.inverse()}


def test_gl_coproduct_on_two_factors():
    E = gl_action(("E", 1), VV2)
    assert image(E, VV2, VV2, ((2,), (2,))) == {((1,), (2,)): Q.inverse(), ((2,), (1,)): ONE}


def test_gl_index_range():
    with pytest.raises(IndexOutOfRange):
        gl_action(("E", 2), V2)


def test_so_generator_on_v():
    B = coideal_gen("so", 1, V2)
    assert image(B, V2, V2, ((1,),)) == {((2,),): ONE}
    assert image(B, V2, V2, ((2,),)) == {((1,),): -Q.inverse()}


@pytest.mark.parametrize("n", range(2, 6))
def test_so_kills_the_invariant_vector(n):
    space = TensorSpace.of(n, EXT, (1, 1))
    inv = vec(space, {((i,), (i,)): ONE for i in range(1, n + 1)})
    for G in coideal_gens("so", space).values():
        assert compose(plain(G), inv).is_zero()


def test_sp_kills_the_invariant_two_form():
    space = TensorSpace.of(4, EXT, (2,))
    inv = vec(space, {((1, 2),): ONE, ((3, 4),): Q.inverse()})
    assert compose(plain(coideal_gen("sp", 2, space)), inv).is_zero()


def test_sp_parity_rules():
    with pytest.raises(ParityError):
        coideal_gens("sp", TensorSpace.of(3, EXT, (1,)))
    with pytest.raises(ParityError):
        coideal_gen("sp", 1, TensorSpace.of(4, EXT, (1,)))
    with pytest.raises(ParityError):
        coideal_gen("sp", ("E", 2), TensorSpace.of(4, EXT, (1,)))


@pytest.mark.parametrize("flavor", [EXT, SYM])
@pytest.mark.parametrize("n", [2, 3])
def test_straightening_of_thin_merge(flavor, n):
    M = thin_merge(flavor, n)
    src = TensorSpace.of(n, EXT, (1, 1))
    dst = TensorSpace.of(n, flavor, (2,))
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            up = image(M, src, dst, ((i,), (j,)))
            down = image(M, src, dst, ((j,), (i,)))
            k = next(iter(up))
            if flavor == EXT:
                # the kernel is spanned by v_i v_i and v_j v_i + q^{-1} v_i v_j
                assert down == {k: -Q.inverse() * up[k]}
            else:
                assert down == {k: Q * up[k]}
        if flavor == EXT:
            assert image(M, src, dst, ((i,), (i,))) == {}


@pytest.mark.parametrize("flavor", [EXT, SYM])
@pytest.mark.parametrize("n", [2, 3])
def test_digon(flavor, n):
    for a in (1, 2):
        for b in (1, 2):
            lhs = compose(plain(thick_merge(a, b, flavor, n)), plain(thick_split(a, b, flavor, n)))
            dim = lhs.rows
            assert lhs == SparseMat.identity(dim).scale(qbinom(a + b, a)) or dim == 0


@pytest.mark.parametrize("flavor", [EXT, SYM])
def test_split_coassociative(flavor):
    n = 3
    s12 = plain(thick_split(1, 2, flavor, n))
    s21 = plain(thick_split(2, 1, flavor, n))
    s11 = plain(thin_split(flavor, n))
    I = SparseMat.identity(n)
    left = compose(kron(s11, I), s21)
    right = compose(kron(I, s11), s12)
    assert left == right


@pytest.mark.parametrize("n", [2, 3, 4])
def test_braid_and_inverse_on_v(n):
    over = plain(crossing(EXT, "over", 1, 1, n))
    under = plain(crossing(EXT, "under", 1, 1, n))
    I = SparseMat.identity(n)
    assert compose(over, under) == SparseMat.identity(n * n)
    a = kron(over, I)
    b = kron(I, over)
    assert compose(a, compose(b, a)) == compose(b, compose(a, b))
    hecke = compose(over, over) - over.scale(Q - Q.inverse())
    assert hecke == SparseMat.identity(n * n)


def test_cap_and_dot_values():
    sp3 = TensorSpace.of(3, EXT, (1, 1))
    unit = TensorSpace(3, ())
    assert image(cap_bd(3), sp3, unit, ((1,), (1,))) == {(): Q**2}
    assert image(cap_bd(3), sp3, unit, ((1,), (2,))) == {}
    s2 = TensorSpace.of(3, SYM, (2,))
    assert image(dot_bd(3, "end"), s2, unit, ((2, 2),)) == {(): ONE}
    assert image(dot_bd(3, "end"), s2, unit, ((1, 2),)) == {}
    e2 = TensorSpace.of(4, EXT, (2,))
    assert image(dot_c(4, "end"), e2, TensorSpace(4, ()), ((1, 2),)) == {(): Q**2}
    vv4 = TensorSpace.of(4, SYM, (1, 1))
    assert image(cap_c(4), vv4, TensorSpace(4, ()), ((2,), (1,))) == {(): -Q}


@pytest.mark.parametrize("n", range(1, 7))
def test_circles(n):
    assert compose(plain(cap_bd(n)), plain(cup_bd(n)))[0, 0] == qint(n)
    if n % 2 == 0:
        assert compose(plain(cap_c(n)), plain(cup_c(n)))[0, 0] == qint(n)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_split_of_start_dot_is_cup(n):
    split = plain(thin_split(SYM, n))
    assert compose(split, plain(dot_bd(n, "start"))) == plain(cup_bd(n))


def test_c_side_needs_even_n():
    with pytest.raises(ParityError):
        dot_c(3, "start")
    with pytest.raises(ParityError):
        cup_c(5)


@pytest.mark.parametrize("n", range(2, 6))
def test_intertwiners_so(n):
    unit, vv = TensorSpace(n, ()), TensorSpace.of(n, EXT, (1, 1))
    assert equivariance_witness(cup_bd(n), unit, vv, "so") is None
    assert equivariance_witness(cap_bd(n), vv, unit, "so") is None


@pytest.mark.parametrize("n", [2, 4])
def test_intertwiners_sp(n):
    unit, e2 = TensorSpace(n, ()), TensorSpace.of(n, EXT, (2,))
    vv = TensorSpace.of(n, EXT, (1, 1))
    assert equivariance_witness(dot_c(n, "start"), unit, e2, "sp") is None
    assert equivariance_witness(dot_c(n, "end"), e2, unit, "sp") is None
    assert equivariance_witness(cup_c(n), unit, vv, "sp") is None
    assert equivariance_witness(cap_c(n), vv, unit, "sp") is None


@pytest.mark.parametrize("n", range(2, 6))
def test_cup_only_on_the_right(n):
    v = TensorSpace.of(n, EXT, (1,))
    vvv = TensorSpace.of(n, EXT, (1, 1, 1))
    I = SparseMat.identity(n)
    cup = plain(cup_bd(n))
    assert equivariance_witness(kron(I, cup), v, vvv, "so") is None
    assert equivariance_witness(kron(cup, I), v, vvv, "so") is not None


def test_dot_only_on_the_right():
    n = 4
    v = TensorSpace.of(n, EXT, (1,))
    I = SparseMat.identity(n)
    dot = plain(dot_c(n, "start"))
    ve = TensorSpace(n, ((EXT, 1), (EXT, 2)))
    ev = TensorSpace(n, ((EXT, 2), (EXT, 1)))
    assert equivariance_witness(kron(I, dot), v, ve, "sp") is None
    assert equivariance_witness(kron(dot, I), v, ev, "sp") is not None


@pytest.mark.parametrize("flavor", [EXT, SYM])
def test_weight_grading(flavor):
    n = 3
    space = TensorSpace.of(n, flavor, (1, 2))
    basis = space.basis()
    for i in range(1, n):
        E = gl_action(("E", i), space)
        for (r, c), v in E.entries():
            shift = [a - b for a, b in zip(weight(basis[r], n), weight(basis[c], n))]
            assert shift == [1 if j == i - 1 else -1 if j == i else 0 for j in range(n)]
            assert v != ZERO

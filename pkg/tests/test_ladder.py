import pytest

from qweb.ladder import (
    CartanDatum,
    NonIntegralShift,
    RankTooSmall,
    UqWord,
    check_uq_relations,
    howe,
    howe_commutation,
    ladder,
    ladder_so,
    ladder_sp,
)
from qweb.linalg import SparseMat
from qweb.scalar import ONE, Q, qint


def word(text, lam):
    return UqWord.parse(text, lam)


def commutator(case, lam, i, n):
    return howe(case, word(f"E{i} F{i}", lam), n) - howe(case, word(f"F{i} E{i}", lam), n)


def test_parse_and_print():
    w = word("E1 F2 Ek", (0, 0, 0))
    assert w.letters == (("E", 1), ("F", 2), ("E", 3))
    assert str(w) == "E1 F2 Ek"
    with pytest.raises(ValueError):
        word("E4", (0, 0))
    with pytest.raises(ValueError):
        word("X1", (0, 0))


def test_cartan_data():
    d = CartanDatum.of("D", 3)
    assert d.cartan_matrix == ((2, -1, -1), (-1, 2, 0), (-1, 0, 2))
    c = CartanDatum.of("C", 2)
    assert c.cartan_matrix == ((2, -2), (-1, 2))
    with pytest.raises(RankTooSmall):
        CartanDatum.of("D", 1)


def test_so_idempotent_and_rung():
    assert ladder_so(word("", (0, 0)), 4).source == (2, 2)
    d = ladder_so(word("E1", (0, 0)), 4)
    assert (d.source, d.target) == ((2, 2), (3, 1))


def test_negative_labels_give_zero():
    assert ladder_so(word("F1 F1", (0, 0)), 2) is None
    assert ladder_sp(word("Fk", (0,)), 2) is None


def test_sp_idempotent_and_top_letter():
    assert ladder_sp(word("", (1, 1)), 2).source == (2, 2)
    d = ladder_sp(word("Ek", (0,)), 2)
    assert (d.source, d.target) == ((1,), (3,))
    kinds = [s.gen.kind for s in d.slices]
    assert kinds == ["sdot", "merge"]


def test_half_integral_shift_rejected():
    with pytest.raises(NonIntegralShift):
        ladder("bd-ext", word("", (0, 0)), 3)
    assert ladder("bd-ext", word("", ("1/2", "1/2")), 3).source == (2, 2)


def test_howe_thin_rung():
    # the thin merge V (x) V -> wedge^2 V at n = 2
    m = howe("bd-ext", word("E1", (0, 0)), 2)
    assert m.shape == (1, 4)
    assert m.to_dense() == [[0 * ONE, ONE, -Q.inverse(), 0 * ONE]]


def test_howe_empty_word_is_identity():
    m = howe("bd-ext", word("", (0, 0)), 2)
    assert m == SparseMat.identity(4)


def test_howe_top_letter_sp():
    m = howe("c-ext", word("Ek", (-1,)), 2)
    assert m.shape == (1, 1)
    assert m[0, 0] == ONE


def test_ef_commutator_scalar():
    c = commutator("bd-ext", (1, -1), 1, 4)
    assert c == SparseMat.identity(c.rows).scale(qint(2))
    assert commutator("bd-ext", (0, 0), 1, 4).is_zero()


@pytest.mark.parametrize("case,n,k", [("bd-ext", 2, 2), ("bd-ext", 2, 3), ("bd-ext", 4, 2), ("c-ext", 2, 1), ("c-ext", 2, 2), ("c-ext", 4, 2)])
def test_uq_relations(case, n, k):
    rep = check_uq_relations(case, n, k, box=1)
    assert rep.passed
    assert rep.entries


def test_uq_relations_include_serre():
    rep = check_uq_relations("c-ext", 2, 2, box=1)
    assert any("serre" in e["fixture"] for e in rep.entries)


@pytest.mark.parametrize("case,n,k", [("bd-sym", 2, 2), ("c-sym", 3, 1), ("c-sym", 3, 2), ("c-sym", 4, 1)])
def test_uq_relations_symmetric(case, n, k):
    assert check_uq_relations(case, n, k, box=1, cutoff=6).passed


def test_howe_commutes_with_coideal():
    assert howe_commutation("bd-ext", 3, 2).passed
    assert howe_commutation("c-ext", 2, 2).passed

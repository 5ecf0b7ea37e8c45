"""Catalog of web relations, each checked through the evaluation functors.

A fixture builds a pair of formal combinations for one choice of labels.
Coefficients that depend on z are callables of the functor.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .scalar import ONE, Q, qbinom, qint, zbracket
from .web import FormalCombo, Ladder, Report, check_relation, evaluate, functor

__all__ = ["Fixture", "CATALOG", "SUITES", "catalog", "higher_serre", "run_suite", "shorthand_pair"]

A_FUNCTORS = ("a-ext", "a-sym")
BD_FUNCTORS = ("bd-ext", "bd-sym")
C_FUNCTORS = ("c-ext", "c-sym")


def zb(s, d=1):
    """[z;s]_d resolved per functor."""
    return lambda fun: zbracket(fun.zspec, s, d)


def neg_zinv(fun):
    return -fun.zspec.value().inverse()


def combo(family, source, target, terms):
    """Formal combination of ladder-built diagrams; zero diagrams are dropped."""
    src = tuple(x for x in source if x > 0)
    dst = tuple(x for x in target if x > 0)
    out = []
    for coef, lad in terms:
        d = lad.build() if isinstance(lad, Ladder) else lad
        if d is None:
            continue
        if d.source != src or d.target != dst:
            raise AssertionError(f"boundary mismatch {d.source}->{d.target} vs {src}->{dst}")
        out.append((coef, d))
    return FormalCombo(out, src, dst)


def L(family, *labels):
    return Ladder(family, labels)


@dataclass
class Fixture:
    name: str
    family: str
    functors: tuple
    params: list
    build: object
    n_range: tuple = (2, 3, 4, 5, 6)
    notes: str = ""

    def instances(self):
        for p in self.params:
            lhs, rhs = self.build(**p)
            tag = ",".join(f"{k}={v}" for k, v in p.items())
            yield (f"{self.name}[{tag}]" if tag else self.name), lhs, rhs

    def check(self, n_range=None, functors=None) -> Report:
        rep = Report()
        fs = [f for f in self.functors if functors is None or f in functors]
        for label, lhs, rhs in self.instances():
            rep.extend(
                check_relation(lhs, rhs, fs, n_range or self.n_range, name=label, dominant=True)
            )
        return rep


def grid(**ranges):
    keys = list(ranges)
    return [dict(zip(keys, vals)) for vals in product(*(ranges[k] for k in keys))]


# type A


def _assoc(a, b, c):
    lhs = L("A", a, b, c).merge(0).merge(0)
    rhs = L("A", a, b, c).merge(1).merge(0)
    return combo("A", (a, b, c), (a + b + c,), [(ONE, lhs)]), combo("A", (a, b, c), (a + b + c,), [(ONE, rhs)])


def _coassoc(a, b, c):
    m = a + b + c
    lhs = L("A", m).split(0, a + b, c).split(0, a, b)
    rhs = L("A", m).split(0, a, b + c).split(1, b, c)
    return combo("A", (m,), (a, b, c), [(ONE, lhs)]), combo("A", (m,), (a, b, c), [(ONE, rhs)])


def _square(a, b):
    lhs = L("A", a, b).F(0).E(0)
    rhs = [(ONE, L("A", a, b).E(0).F(0)), (qint(a - b), L("A", a, b))]
    return combo("A", (a, b), (a, b), [(ONE, lhs)]), combo("A", (a, b), (a, b), rhs)


def _thick_square_ef(a, b, c, d):
    # F^(c) first, then E^(d)
    tgt = (a - c + d, b + c - d)
    lhs = [(ONE, L("A", a, b).F(0, c).E(0, d))]
    rhs = [
        (qbinom(a - b - c + d, e), L("A", a, b).E(0, d - e).F(0, c - e))
        for e in range(min(c, d) + 1)
    ]
    return combo("A", (a, b), tgt, lhs), combo("A", (a, b), tgt, rhs)


def _thick_square_fe(a, b, c, d):
    # E^(c) first, then F^(d)
    tgt = (a + c - d, b - c + d)
    lhs = [(ONE, L("A", a, b).E(0, c).F(0, d))]
    rhs = [
        (qbinom(-a + b - c + d, e), L("A", a, b).F(0, d - e).E(0, c - e))
        for e in range(min(c, d) + 1)
    ]
    return combo("A", (a, b), tgt, lhs), combo("A", (a, b), tgt, rhs)


def _collapse(a, b, c, d, kind):
    if kind == "E":
        tgt = (a + c + d, b - c - d)
        lhs = L("A", a, b).E(0, c).E(0, d)
        rhs = L("A", a, b).E(0, c + d)
    else:
        tgt = (a - c - d, b + c + d)
        lhs = L("A", a, b).F(0, c).F(0, d)
        rhs = L("A", a, b).F(0, c + d)
    return (
        combo("A", (a, b), tgt, [(ONE, lhs)]),
        combo("A", (a, b), tgt, [(qbinom(c + d, d), rhs)]),
    )


def _digon(a, b):
    lhs = L("A", a + b).split(0, a, b).merge(0)
    return (
        combo("A", (a + b,), (a + b,), [(ONE, lhs)]),
        combo("A", (a + b,), (a + b,), [(qbinom(a + b, b), L("A", a + b))]),
    )


def _rung(lad, kind, i, r=1):
    return lad.E(i, r) if kind == "E" else lad.F(i, r)


def _word(labels, letters):
    """Apply (kind, i, r) letters left to right (first letter acts first)."""
    lad = L("A", *labels)
    for kind, i, r in letters:
        _rung(lad, kind, i, r)
    return lad


def _shift(labels, letters):
    out = list(labels)
    for kind, i, r in letters:
        s = r if kind == "E" else -r
        out[i] += s
        out[i + 1] -= s
    return tuple(out)


def _serre(a, b, c, kind, i):
    j = 1 - i
    lab = (a, b, c)
    x, y = (kind, i, 1), (kind, j, 1)
    tgt = _shift(lab, [x, x, y])
    lhs = [(qint(2), _word(lab, [x, y, x]))]
    rhs = [(ONE, _word(lab, [y, x, x])), (ONE, _word(lab, [x, x, y]))]
    return combo("A", lab, tgt, lhs), combo("A", lab, tgt, rhs)


def higher_serre(a, b, c, kind, i, s, t, eps):
    # sum_{u+v=t} (-1)^v q^{eps u (s - t + 1)} X_i^(u) X_j^(s) X_i^(v) = 0
    j = 1 - i
    lab = (a, b, c)
    tgt = _shift(lab, [(kind, i, t), (kind, j, s)])
    terms = []
    for u in range(t + 1):
        v = t - u
        coef = Q ** (eps * u * (s - t + 1))
        if v % 2:
            coef = -coef
        terms.append((coef, _word(lab, [(kind, i, v), (kind, j, s), (kind, i, u)])))
    return combo("A", lab, tgt, terms), combo("A", lab, tgt, [])


def _pitchfork_merge(a, b, c):
    lhs = L("A", a, b, c).merge(1).xover(0)
    rhs = L("A", a, b, c).xover(0).xover(1).merge(0)
    return (
        combo("A", (a, b, c), (b + c, a), [(ONE, lhs)]),
        combo("A", (a, b, c), (b + c, a), [(ONE, rhs)]),
    )


def _pitchfork_split(a, b, c):
    lhs = L("A", a, b + c).xover(0).split(0, b, c)
    rhs = L("A", a, b + c).split(1, b, c).xover(0).xover(1)
    return (
        combo("A", (a, b + c), (b, c, a), [(ONE, lhs)]),
        combo("A", (a, b + c), (b, c, a), [(ONE, rhs)]),
    )


def _twist_merge(a, b):
    lhs = L("A", a, b).xover(0).merge(0)
    rhs = L("A", a, b).merge(0)
    return (
        combo("A", (a, b), (a + b,), [(ONE, lhs)]),
        combo("A", (a, b), (a + b,), [(Q ** (a * b), rhs)]),
    )


def _twist_split(a, b):
    lhs = L("A", a + b).split(0, b, a).xover(0)
    rhs = L("A", a + b).split(0, a, b)
    return (
        combo("A", (a + b,), (a, b), [(ONE, lhs)]),
        combo("A", (a + b,), (a, b), [(Q ** (a * b), rhs)]),
    )


def _braid(a, b, c, kind):
    x = "xover" if kind == "over" else "xunder"
    lhs = getattr(getattr(getattr(L("A", a, b, c), x)(0), x)(1), x)(0)
    rhs = getattr(getattr(getattr(L("A", a, b, c), x)(1), x)(0), x)(1)
    return (
        combo("A", (a, b, c), (c, b, a), [(ONE, lhs)]),
        combo("A", (a, b, c), (c, b, a), [(ONE, rhs)]),
    )


def _hecke():
    T = L("A", 1, 1).xover(0)
    TT = L("A", 1, 1).xover(0).xover(0)
    return (
        combo("A", (1, 1), (1, 1), [(ONE, TT)]),
        combo("A", (1, 1), (1, 1), [(Q - Q.inverse(), T), (ONE, L("A", 1, 1))]),
    )


def _inverse(a, b):
    lhs = L("A", a, b).xover(0).xunder(0)
    return (
        combo("A", (a, b), (a, b), [(ONE, lhs)]),
        combo("A", (a, b), (a, b), [(ONE, L("A", a, b))]),
    )


# shared cup/cap webs (family BD, or C where cup and cap expand)


def _sm(lad, v):
    return lad.merge(v).split(v, 1, 1)


def _circle(fam):
    lhs = L(fam).cup().cap()
    return combo(fam, (), (), [(ONE, lhs)]), combo(fam, (), (), [(zb(0), L(fam))])


def _bubble(fam):
    lad = L(fam, 1).cup()
    _sm(lad, 0).cap()
    return combo(fam, (1,), (1,), [(ONE, lad)]), combo(fam, (1,), (1,), [(zb(-1), L(fam, 1))])


def _lollipop(fam):
    up = L(fam).cup().merge(0)
    down = L(fam, 2).split(0, 1, 1).cap()
    return (
        combo(fam, (), (2,), [(ONE, up)]),
        combo(fam, (), (2,), []),
    ), (
        combo(fam, (2,), (), [(ONE, down)]),
        combo(fam, (2,), (), []),
    )


def _sliding(fam):
    lhs = _sm(_sm(L(fam, 1, 1, 1, 1), 2), 1).cap().cap()
    rhs = _sm(_sm(L(fam, 1, 1, 1, 1), 0), 1).cap().cap()
    caps = (combo(fam, (1, 1, 1, 1), (), [(ONE, lhs)]), combo(fam, (1, 1, 1, 1), (), [(ONE, rhs)]))
    lhs = _sm(_sm(L(fam).cup().cup(), 1), 0)
    rhs = _sm(_sm(L(fam).cup().cup(), 1), 2)
    cups = (combo(fam, (), (1, 1, 1, 1), [(ONE, lhs)]), combo(fam, (), (1, 1, 1, 1), [(ONE, rhs)]))
    return caps, cups


def _curl(fam):
    lhs = L(fam, 1).cup().xover(0).cap()
    return combo(fam, (1,), (1,), [(ONE, lhs)]), combo(fam, (1,), (1,), [(neg_zinv, L(fam, 1))])


def _lasso_weave(fam):
    lad = L(fam, 1, 1).cup().xunder(1).xover(0).xunder(2).xover(1).cap()
    rhs = L(fam, 1, 1).cap().cup()
    return combo(fam, (1, 1), (1, 1), [(ONE, lad)]), combo(fam, (1, 1), (1, 1), [(ONE, rhs)])


def _kink(fam, scalar):
    up = (
        combo(fam, (), (1, 1), [(ONE, L(fam).cup().xover(0))]),
        combo(fam, (), (1, 1), [(scalar, L(fam).cup())]),
    )
    down = (
        combo(fam, (1, 1), (), [(ONE, L(fam, 1, 1).xover(0).cap())]),
        combo(fam, (1, 1), (), [(scalar, L(fam, 1, 1).cap())]),
    )
    return up, down


def _sliding_weave(fam):
    lhs = L(fam, 1, 1, 1, 1).xover(0).xover(1).cap().cap()
    rhs = L(fam, 1, 1, 1, 1).xover(2).xover(1).cap().cap()
    caps = (combo(fam, (1, 1, 1, 1), (), [(ONE, lhs)]), combo(fam, (1, 1, 1, 1), (), [(ONE, rhs)]))
    lhs = L(fam).cup().cup().xover(1).xover(0)
    rhs = L(fam).cup().cup().xover(1).xover(2)
    cups = (combo(fam, (), (1, 1, 1, 1), [(ONE, lhs)]), combo(fam, (), (1, 1, 1, 1), [(ONE, rhs)]))
    return caps, cups


# type D ladder identities


def _d_ef(a, b):
    lhs = L("BD", a, b).Ek_so().Fk_so()
    rhs = [(ONE, L("BD", a, b).Fk_so().Ek_so()), (zb(-a - b), L("BD", a, b))]
    return combo("BD", (a, b), (a, b), [(ONE, lhs)]), combo("BD", (a, b), (a, b), rhs)


def _d_ef_far(a, b):
    tgt = (a, b + 2)
    lhs = L("BD", a, b).Ek_so().F(0)
    rhs = L("BD", a, b).F(0).Ek_so()
    return combo("BD", (a, b), tgt, [(ONE, lhs)]), combo("BD", (a, b), tgt, [(ONE, rhs)])


def _d_ee(a, b):
    tgt = (a + 2, b)
    lhs = L("BD", a, b).Ek_so().E(0)
    rhs = L("BD", a, b).E(0).Ek_so()
    return combo("BD", (a, b), tgt, [(ONE, lhs)]), combo("BD", (a, b), tgt, [(ONE, rhs)])


def _d_ee_small():
    lhs = L("BD", 0, 1).Ek_so().E(0)
    rhs = L("BD", 1).cup().merge(0)
    return combo("BD", (1,), (2, 1), [(ONE, lhs)]), combo("BD", (1,), (2, 1), [(ONE, rhs)])


def _d_serre_outer(a, b, c):
    tgt = (a + 2, b - 1, c + 1)
    lhs = [(qint(2), L("BD", a, b, c).E(0).Ek_so().E(0))]
    rhs = [
        (ONE, L("BD", a, b, c).Ek_so().E(0).E(0)),
        (ONE, L("BD", a, b, c).E(0).E(0).Ek_so()),
    ]
    return combo("BD", (a, b, c), tgt, lhs), combo("BD", (a, b, c), tgt, rhs)


def _d_serre_inner(a, b, c):
    tgt = (a + 1, b + 1, c + 2)
    lhs = [(qint(2), L("BD", a, b, c).Ek_so().E(0).Ek_so())]
    rhs = [
        (ONE, L("BD", a, b, c).E(0).Ek_so().Ek_so()),
        (ONE, L("BD", a, b, c).Ek_so().Ek_so().E(0)),
    ]
    return combo("BD", (a, b, c), tgt, lhs), combo("BD", (a, b, c), tgt, rhs)


# type C


def _barbell():
    return (
        combo("C", (), (), [(ONE, L("C").sdot().edot())]),
        combo("C", (), (), [(zb(0, 2), L("C"))]),
    )


def _thin_k():
    lad = L("C", 1).sdot().merge(0).split(0, 1, 2).edot()
    return combo("C", (1,), (1,), [(ONE, lad)]), combo("C", (1,), (1,), [(zb(-1, 2), L("C", 1))])


def _thick_k():
    lad = L("C", 2).sdot().merge(0).split(0, 2, 2).edot()
    rhs = [(ONE, L("C", 2).edot().sdot()), (zb(-2, 2), L("C", 2))]
    return combo("C", (2,), (2,), [(ONE, lad)]), combo("C", (2,), (2,), rhs)


def _c_ef(a):
    lhs = L("C", a).Ek_sp().Fk_sp()
    rhs = [(ONE, L("C", a).Fk_sp().Ek_sp()), (zb(-a, 2), L("C", a))]
    return combo("C", (a,), (a,), [(ONE, lhs)]), combo("C", (a,), (a,), rhs)


def _c_ef_far(a, b):
    tgt = (a - 1, b + 3)
    lhs = L("C", a, b).Ek_sp().F(0)
    rhs = L("C", a, b).F(0).Ek_sp()
    return combo("C", (a, b), tgt, [(ONE, lhs)]), combo("C", (a, b), tgt, [(ONE, rhs)])


def _c_serre(a, b):
    tgt = (a + 3, b - 1)
    lhs = [
        (ONE, L("C", a, b).Ek_sp().E(0).E(0).E(0)),
        (qint(3), L("C", a, b).E(0).E(0).Ek_sp().E(0)),
    ]
    rhs = [
        (ONE, L("C", a, b).E(0).E(0).E(0).Ek_sp()),
        (qint(3), L("C", a, b).E(0).Ek_sp().E(0).E(0)),
    ]
    return combo("C", (a, b), tgt, lhs), combo("C", (a, b), tgt, rhs)


def _c_serre_2(a, b):
    tgt = (a + 1, b + 3)
    lhs = [(qint(2, 2), L("C", a, b).Ek_sp().E(0).Ek_sp())]
    rhs = [
        (ONE, L("C", a, b).E(0).Ek_sp().Ek_sp()),
        (ONE, L("C", a, b).Ek_sp().Ek_sp().E(0)),
    ]
    return combo("C", (a, b), tgt, lhs), combo("C", (a, b), tgt, rhs)


def _two_dots():
    return L("C").sdot().sdot()


def _c_small_1():
    lhs = _two_dots().split(1, 1, 1).merge(0).split(0, 1, 2)
    rhs = _two_dots().split(0, 1, 1).merge(1).split(1, 2, 1)
    return combo("C", (), (1, 2, 1), [(ONE, lhs)]), combo("C", (), (1, 2, 1), [(ONE, rhs)])


def _c_small_2():
    lhs = _two_dots().split(1, 1, 1).merge(0).split(0, 1, 2).merge(1)
    rhs = _two_dots().split(0, 1, 1).merge(1)
    return combo("C", (), (1, 3), [(ONE, lhs)]), combo("C", (), (1, 3), [(qint(3), rhs)])


def _c_four():
    lhs = _two_dots().merge(0).split(0, 1, 3)
    rhs = _two_dots().split(0, 1, 1).merge(1)
    return combo("C", (), (1, 3), [(ONE, lhs)]), combo("C", (), (1, 3), [(qint(2, 2), rhs)])


def _build_catalog():
    r3 = range(1, 4)
    r03 = range(0, 4)
    cat = []
    add = cat.append
    A = A_FUNCTORS
    add(Fixture("a_assoc", "A", A, grid(a=r3, b=r3, c=r3), _assoc))
    add(Fixture("a_coassoc", "A", A, grid(a=r3, b=r3, c=r3), _coassoc))
    add(Fixture("a_square", "A", A, grid(a=r03, b=r03), _square))
    sq = [p for p in grid(a=r03, b=r03, c=(1, 2), d=(1, 2))]
    add(Fixture("a_thick_square_ef", "A", A, sq, _thick_square_ef))
    add(Fixture("a_thick_square_fe", "A", A, sq, _thick_square_fe))
    col = [p for p in grid(a=r03, b=r03, c=(1, 2), d=(1, 2)) if p["c"] + p["d"] <= 3]
    add(Fixture("a_collapse_e", "A", A, col, lambda **p: _collapse(kind="E", **p)))
    add(Fixture("a_collapse_f", "A", A, col, lambda **p: _collapse(kind="F", **p)))
    add(Fixture("a_digon", "A", A, grid(a=r3, b=r3), _digon))
    ser = grid(a=r03, b=r03, c=r03)
    add(Fixture("a_serre_e12", "A", A, ser, lambda **p: _serre(kind="E", i=0, **p)))
    add(Fixture("a_serre_e21", "A", A, ser, lambda **p: _serre(kind="E", i=1, **p)))
    add(Fixture("a_serre_f12", "A", A, ser, lambda **p: _serre(kind="F", i=0, **p)))
    add(Fixture("a_serre_f21", "A", A, ser, lambda **p: _serre(kind="F", i=1, **p)))
    # for (s, t) = (1, 2) the q-exponent vanishes, so both signs coincide
    hs = [
        dict(p, kind=k, i=i, s=s, t=t, eps=e)
        for p in grid(a=r03, b=r03, c=r03)
        for k in ("E", "F")
        for i in (0, 1)
        for s, t, e in ((1, 2, 1), (2, 3, 1), (2, 3, -1))
    ]
    add(Fixture("a_higher_serre", "A", A, hs, higher_serre))
    add(Fixture("a_pitchfork_merge", "A", A, grid(a=r3, b=r3, c=r3), _pitchfork_merge))
    add(Fixture("a_pitchfork_split", "A", A, grid(a=r3, b=r3, c=r3), _pitchfork_split))
    add(Fixture("a_twist_merge", "A", A, grid(a=r3, b=r3), _twist_merge))
    add(Fixture("a_twist_split", "A", A, grid(a=r3, b=r3), _twist_split))
    br = [dict(p, kind=k) for p in grid(a=r3, b=r3, c=r3) for k in ("over", "under")]
    add(Fixture("a_braid", "A", A, br, _braid))
    add(Fixture("a_hecke", "A", A, [{}], _hecke))
    add(Fixture("a_crossing_inverse", "A", A, grid(a=r3, b=r3), _inverse))

    for fam, fs in (("BD", BD_FUNCTORS), ("C", C_FUNCTORS)):
        p = fam.lower()
        add(Fixture(f"{p}_circle", fam, fs, [{}], lambda fam=fam: _circle(fam)))
        add(Fixture(f"{p}_curl", fam, fs, [{}], lambda fam=fam: _curl(fam)))
        add(Fixture(f"{p}_lasso_weave", fam, fs, [{}], lambda fam=fam: _lasso_weave(fam)))
        scalar = -Q.inverse() if fam == "BD" else Q
        add(Fixture(f"{p}_kink_cup", fam, fs, [{}], lambda fam=fam, s=scalar: _kink(fam, s)[0]))
        add(Fixture(f"{p}_kink_cap", fam, fs, [{}], lambda fam=fam, s=scalar: _kink(fam, s)[1]))
        add(Fixture(f"{p}_sliding_weave_caps", fam, fs, [{}], lambda fam=fam: _sliding_weave(fam)[0]))
        add(Fixture(f"{p}_sliding_weave_cups", fam, fs, [{}], lambda fam=fam: _sliding_weave(fam)[1]))
        add(Fixture(f"{p}_sliding_caps", fam, fs, [{}], lambda fam=fam: _sliding(fam)[0]))
        add(Fixture(f"{p}_sliding_cups", fam, fs, [{}], lambda fam=fam: _sliding(fam)[1]))

    D = BD_FUNCTORS
    add(Fixture("bd_bubble", "BD", D, [{}], lambda: _bubble("BD")))
    add(Fixture("bd_lollipop_cup", "BD", D, [{}], lambda: _lollipop("BD")[0]))
    add(Fixture("bd_lollipop_cap", "BD", D, [{}], lambda: _lollipop("BD")[1]))
    add(Fixture("bd_lasso", "BD", D, [{"a": 1, "b": 1}], _d_ef))
    add(Fixture("bd_ef_commutator", "BD", D, grid(a=r03, b=r03), _d_ef))
    add(Fixture("bd_ef_far", "BD", D, grid(a=r03, b=r03), _d_ef_far))
    add(Fixture("bd_ee_commute", "BD", D, grid(a=r03, b=r03), _d_ee))
    add(Fixture("bd_ee_small", "BD", D, [{}], _d_ee_small))
    add(Fixture("bd_serre_outer", "BD", D, grid(a=r03, b=r03, c=r03), _d_serre_outer))
    add(Fixture("bd_serre_inner", "BD", D, grid(a=r03, b=r03, c=r03), _d_serre_inner))

    C = C_FUNCTORS
    add(Fixture("c_barbell", "C", C, [{}], _barbell))
    add(Fixture("c_thin_k", "C", C, [{}], _thin_k))
    add(Fixture("c_thick_k", "C", C, [{}], _thick_k))
    add(Fixture("c_ef_commutator", "C", C, grid(a=r03), _c_ef))
    add(Fixture("c_ef_far", "C", C, grid(a=r03, b=r03), _c_ef_far))
    add(Fixture("c_serre", "C", C, grid(a=r03, b=r03), _c_serre))
    add(Fixture("c_serre_2", "C", C, grid(a=r03, b=r03), _c_serre_2))
    add(Fixture("c_small_label_1", "C", C, [{}], _c_small_1))
    add(Fixture("c_small_label_2", "C", C, [{}], _c_small_2))
    add(Fixture("c_four_label", "C", C, [{}], _c_four))
    return cat


CATALOG = _build_catalog()

SUITES = {
    "a-webs": [f for f in CATALOG if f.family == "A"],
    "bd-webs": [f for f in CATALOG if f.family == "BD"],
    "c-webs": [f for f in CATALOG if f.family == "C"],
}
SUITES["all"] = list(CATALOG)


def catalog(name=None):
    if name is None:
        return list(CATALOG)
    return [f for f in CATALOG if f.name == name]


def run_suite(suite="all", n_range=(2, 3, 4, 5, 6), progress=None) -> Report:
    rep = Report()
    for fx in SUITES[suite]:
        r = fx.check(n_range)
        if progress:
            progress(fx.name, r)
        rep.extend(r)
    return rep


def shorthand_pair():
    """Two cup-cup webs that a shorthand without the rightmost rule would identify."""
    plain = L("BD").cup().cup().build()
    woven = L("BD").cup().cup().xunder(1).xunder(0).xunder(2).xunder(1).build()
    return plain, woven


def shorthand_differs(n=3) -> bool:
    a, b = shorthand_pair()
    fun = functor("bd-ext", n)
    return evaluate(a, fun) != evaluate(b, fun)


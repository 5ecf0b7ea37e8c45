"""Ladder functors from idempotented quantum groups of types C and D into webs.

A word ``E1 F2 Ek`` is read as a product: its rightmost letter acts first.
Weights are given in the epsilon basis and shifted to strand labels by
n/2: labels = lambda + n/2 in the exterior cases and lambda - n/2 in the
symmetric ones. In the symmetric cases E_k picks up a sign so that the
commutator of E_k and F_k comes out as a quantum integer of the right
pairing.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .linalg import SparseMat
from .rep import ParityError, coideal_gens
from .scalar import ONE, RatFunc, qbinom, qint
from .web import Ladder, Report, evaluate, functor

__all__ = [
    "CASES",
    "CartanDatum",
    "NonIntegralShift",
    "RankTooSmall",
    "UqWord",
    "Weight",
    "check_uq_relations",
    "howe",
    "howe_commutation",
    "ladder",
    "ladder_so",
    "ladder_sp",
]

# case -> (web family, cartan type, symmetric?)
CASES = {
    "bd-ext": ("BD", "D", False),
    "bd-sym": ("BD", "D", True),
    "c-ext": ("C", "C", False),
    "c-sym": ("C", "C", True),
}


class RankTooSmall(ValueError):
    pass


class NonIntegralShift(ValueError):
    pass


@dataclass(frozen=True)
class CartanDatum:
    family: str
    k: int
    cartan_matrix: tuple
    d: tuple
    simple_roots: tuple

    @classmethod
    def of(cls, family, k):
        if family not in ("A", "C", "D"):
            raise ValueError(f"unknown Cartan type {family}")
        m = k - 1 if family == "A" else k
        roots = []
        for i in range(m):
            r = [0] * k
            if i < k - 1:
                r[i], r[i + 1] = 1, -1
            elif family == "C":
                r[k - 1] = 2
            else:
                if k < 2:
                    raise RankTooSmall("type D needs k >= 2")
                r[k - 2], r[k - 1] = 1, 1
            roots.append(tuple(r))
        d = tuple(2 if (family == "C" and i == k - 1) else 1 for i in range(m))
        coroots = [tuple(Fraction(2 * x, _norm(r)) for x in r) for r in roots]
        cm = tuple(
            tuple(int(sum(h * a for h, a in zip(coroots[i], roots[j]))) for j in range(m))
            for i in range(m)
        )
        return cls(family, k, cm, d, tuple(roots))

    @property
    def rank(self):
        return len(self.simple_roots)

    def coroot(self, i):
        r = self.simple_roots[i - 1]
        return tuple(Fraction(2 * x, _norm(r)) for x in r)

    def pairing(self, i, lam):
        return sum(h * x for h, x in zip(self.coroot(i), lam))


def _qint_frac(h, d):
    """[h]_d, allowing half-integral h as long as d*h is integral."""
    if h.denominator == 1:
        return qint(int(h), d)
    e = h * d
    if e.denominator != 1:
        raise NonIntegralShift(f"[{h}]_{d} is not a Laurent quotient in q")
    e = int(e)
    return (RatFunc.q_power(e) - RatFunc.q_power(-e)) / (RatFunc.q_power(d) - RatFunc.q_power(-d))


def _norm(r):
    return sum(x * x for x in r)


@dataclass(frozen=True)
class Weight:
    values: tuple

    def __init__(self, values):
        object.__setattr__(self, "values", tuple(Fraction(x) for x in values))

    def __add__(self, root):
        return Weight(tuple(a + b for a, b in zip(self.values, root)))

    def __sub__(self, root):
        return Weight(tuple(a - b for a, b in zip(self.values, root)))

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __str__(self):
        return ",".join(str(x) for x in self.values)


def _parse_letter(tok, k):
    tok = tok.strip()
    kind, idx = tok[0].upper(), tok[1:]
    if kind not in "EF":
        raise ValueError(f"bad letter {tok!r}")
    i = k if idx.lower() == "k" else int(idx)
    if not 1 <= i <= k:
        raise ValueError(f"letter {tok!r} out of range for k={k}")
    return kind, i


@dataclass(frozen=True)
class UqWord:
    letters: tuple
    base_weight: Weight

    @classmethod
    def parse(cls, text, lam):
        lam = lam if isinstance(lam, Weight) else Weight(lam)
        k = len(lam)
        toks = text.replace(",", " ").split()
        return cls(tuple(_parse_letter(t, k) for t in toks), lam)

    @property
    def k(self):
        return len(self.base_weight)

    def __post_init__(self):
        for kind, i in self.letters:
            if kind not in ("E", "F") or not 1 <= i <= self.k:
                raise ValueError(f"bad letter {(kind, i)}")

    def __str__(self):
        return " ".join(f"{a}{'k' if i == self.k else i}" for a, i in self.letters) or "1"


def shift(case, n):
    return Fraction(-n, 2) if CASES[case][2] else Fraction(n, 2)


def labels_of(case, lam, n):
    s = shift(case, n)
    out = []
    for x in lam:
        y = Fraction(x) + s
        if y.denominator != 1:
            raise NonIntegralShift(f"lambda + shift is not integral: {x} with n={n}")
        out.append(int(y))
    return tuple(out)


def _build(family, lam, letters, n, case):
    k = len(lam)
    if family == "BD" and k < 2:
        raise RankTooSmall("the so ladder needs k >= 2")
    lad = Ladder(family, labels_of(case, lam, n))
    for kind, i in reversed(letters):
        if i < k:
            (lad.E if kind == "E" else lad.F)(i - 1)
        elif family == "BD":
            lad.Ek_so() if kind == "E" else lad.Fk_so()
        else:
            lad.Ek_sp() if kind == "E" else lad.Fk_sp()
    return lad


def ladder(case, w: UqWord, n):
    """The web of w·1_lambda, or None for the zero morphism."""
    family = CASES[case][0]
    return _build(family, tuple(w.base_weight), w.letters, n, case).build()


def ladder_so(w: UqWord, n, symmetric=False):
    return ladder("bd-sym" if symmetric else "bd-ext", w, n)


def ladder_sp(w: UqWord, n, symmetric=False):
    return ladder("c-sym" if symmetric else "c-ext", w, n)


def _cartan(case, k):
    return CartanDatum.of(CASES[case][1], k)


def target_weight(case, w: UqWord):
    cd = _cartan(case, w.k)
    lam = w.base_weight
    for kind, i in reversed(w.letters):
        r = cd.simple_roots[i - 1]
        lam = lam + r if kind == "E" else lam - r
    return lam


def _space(fun, labels):
    if any(x < 0 for x in labels):
        return None
    return fun.space(tuple(x for x in labels if x > 0))


def _dim(fun, labels):
    sp = _space(fun, labels)
    return 0 if sp is None else sp.dim


def howe(case, w: UqWord, n) -> SparseMat:
    """Matrix of the Howe functor on w·1_lambda."""
    fun = functor(case, n)
    src = labels_of(case, w.base_weight, n)
    dst = labels_of(case, target_weight(case, w), n)
    rows, cols = _dim(fun, dst), _dim(fun, src)
    if cols == 0 or rows == 0:
        return SparseMat.zero(rows, cols)
    d = ladder(case, w, n)
    if d is None:
        return SparseMat.zero(rows, cols)
    m = evaluate(d, fun).with_bases(None, None)
    if CASES[case][2] and sum(1 for kind, i in w.letters if kind == "E" and i == w.k) % 2:
        m = -m
    return m


def _box(case, n, k, box, cutoff):
    if cutoff is None:
        s = shift(case, n)
        off = s - int(s)
        vals = sorted({Fraction(v) + off for v in range(-box - 1, box + 2) if abs(Fraction(v) + off) <= box})
        yield from (Weight(v) for v in product(vals, repeat=k))
        return
    s = shift(case, n)
    for labels in product(range(cutoff + 1), repeat=k):
        if sum(labels) <= cutoff:
            yield Weight(tuple(x - s for x in labels))


def _word(letters, lam):
    return UqWord(tuple(letters), lam)


def _combo(case, n, terms, lam):
    """Sum of coef * howe(word) over terms; all words must share endpoints."""
    acc = None
    for coef, letters in terms:
        m = howe(case, _word(letters, lam), n)
        m = m.scale(coef) if coef is not ONE else m
        acc = m if acc is None else acc + m
    return acc


def _within(case, n, lam, letters, cutoff):
    if cutoff is None:
        return True
    cd = _cartan(case, len(lam))
    cur = lam
    for kind, i in [(None, None)] + list(reversed(letters)):
        if kind is not None:
            r = cd.simple_roots[i - 1]
            cur = cur + r if kind == "E" else cur - r
        if sum(labels_of(case, cur, n)) > cutoff:
            return False
    return True


def relation_instances(case, k):
    """(name, lhs terms, rhs terms) templates; terms are (coef, letters) or a callable of lambda."""
    cd = _cartan(case, k)
    m = cd.rank
    out = []
    for i in range(1, m + 1):
        for j in range(1, m + 1):
            lhs = [(ONE, (("E", i), ("F", j))), (-ONE, (("F", j), ("E", i)))]
            if i == j:
                di = cd.d[i - 1]

                def rhs(lam, i=i, di=di):
                    return [(_qint_frac(cd.pairing(i, lam), di), ())]

                out.append((f"EF[{i},{j}]", lhs, rhs))
            else:
                out.append((f"EF[{i},{j}]", lhs, lambda lam: []))
    for i in range(1, m + 1):
        for j in range(1, m + 1):
            if i == j:
                continue
            a = cd.cartan_matrix[i - 1][j - 1]
            top = 1 - a
            di = cd.d[i - 1]
            for X in ("E", "F"):
                terms = []
                for r in range(top + 1):
                    c = qbinom(top, r, di)
                    if r % 2:
                        c = -c
                    terms.append((c, ((X, i),) * (top - r) + ((X, j),) + ((X, i),) * r))
                out.append((f"serre-{X}[{i},{j}]", terms, lambda lam: []))
    return out


def check_uq_relations(case, n, k, box=1, cutoff=None) -> Report:
    """EF commutators, Serre and far commutativity on each weight block."""
    if case not in CASES:
        raise ValueError(f"unknown case {case}")
    fun = functor(case, n)
    if fun.needs_even and n % 2:
        raise ParityError(f"{case} needs n even")
    if CASES[case][2] and cutoff is None:
        cutoff = 6
    rep = Report()
    for lam in _box(case, n, k, box, cutoff):
        try:
            labels_of(case, lam, n)
        except NonIntegralShift:
            continue
        for name, lhs, rhs in relation_instances(case, k):
            if not all(_within(case, n, lam, w, cutoff) for _, w in lhs):
                continue
            L = _combo(case, n, lhs, lam)
            rterms = rhs(lam)
            if rterms:
                R = SparseMat.identity(L.cols).scale(rterms[0][0]).with_bases(None, None)
            else:
                R = SparseMat.zero(L.rows, L.cols)
            w = L.diff_witness(R)
            status = "PASS" if w is None else "FAIL"
            wit = None if w is None else {"entry": list(w[0]), "lhs": str(L[w[0]]), "rhs": str(R[w[0]])}
            rep.add(f"{case}:{name}@{lam}", case, n, status, wit, k=k)
    return rep


def howe_commutation(case, n, k, box=1, cutoff=None) -> Report:
    """Every coideal generator commutes with every ladder letter image."""
    fun = functor(case, n)
    if CASES[case][2] and cutoff is None:
        cutoff = 6
    rep = Report()
    cd = _cartan(case, k)
    for lam in _box(case, n, k, box, cutoff):
        try:
            src = labels_of(case, lam, n)
        except NonIntegralShift:
            continue
        for kind, i in product("EF", range(1, cd.rank + 1)):
            w = _word(((kind, i),), lam)
            if not _within(case, n, lam, w.letters, cutoff):
                continue
            dst = labels_of(case, target_weight(case, w), n)
            S, T = _space(fun, src), _space(fun, dst)
            if S is None or T is None or S.dim == 0 or T.dim == 0:
                continue
            M = howe(case, w, n)
            bs, bt = coideal_gens(fun.coideal, S), coideal_gens(fun.coideal, T)
            for g in bs:
                lhs = M @ bs[g].with_bases(None, None)
                rhs = bt[g].with_bases(None, None) @ M
                d = lhs.diff_witness(rhs)
                rep.add(
                    f"{case}:{g}x{kind}{i}@{lam}",
                    case,
                    n,
                    "PASS" if d is None else "FAIL",
                    None if d is None else {"entry": list(d[0])},
                    k=k,
                )
    return rep

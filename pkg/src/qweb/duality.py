"""Desk-scale checks of the skew and symmetric Howe dualities.

The bimodule is the direct sum of the tensor spaces over all label tuples
(each label 0..n in the exterior cases, total degree up to a cutoff in the
symmetric ones). The left side is the coideal, acting blockwise; the right
side is the image of E_i, F_i under the Howe functor together with the
block projectors.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import prod

from .ladder import CASES, UqWord, Weight, _cartan, labels_of, howe, shift
from .linalg import PRIME, SparseMat, commutant_dim as _commutant_dim, rank_mod_p, rank_rational
from .rep import EXT, SYM, ParityError, coideal_gens, straighten
from .scalar import DenominatorVanishes, evaluate_at
from .web import Report, functor

__all__ = [
    "Bimodule",
    "CutoffMissing",
    "DecompPrediction",
    "DualityCase",
    "SymmetricUnsupported",
    "build_bimodule",
    "at_one",
    "classical_commutation",
    "classical_left_gens",
    "classical_oracle_dim",
    "commutant_dim",
    "commutation_check",
    "predicted_decomp",
    "weyl_dim",
]

DIRECT_LIMIT = 6000


class CutoffMissing(ValueError):
    pass


class SymmetricUnsupported(ValueError):
    pass


@dataclass(frozen=True)
class DualityCase:
    case: str
    n: int
    k: int
    sym_cutoff: int | None = None

    def __post_init__(self):
        if self.case not in CASES:
            raise ValueError(f"unknown case {self.case}")
        if functor(self.case, self.n).needs_even and self.n % 2:
            raise ParityError(f"{self.case} needs n even")
        if self.symmetric and self.sym_cutoff is None:
            raise CutoffMissing(f"{self.case} needs a degree cutoff")

    @property
    def symmetric(self):
        return CASES[self.case][2]

    @property
    def flavor(self):
        return SYM if self.symmetric else EXT

    def label_tuples(self):
        if self.symmetric:
            return [t for t in product(range(self.sym_cutoff + 1), repeat=self.k) if sum(t) <= self.sym_cutoff]
        return list(product(range(self.n + 1), repeat=self.k))

    def weight(self, labels):
        s = shift(self.case, self.n)
        return Weight(tuple(Fraction(x) - s for x in labels))


@dataclass
class Bimodule:
    case: DualityCase
    labels: list
    spaces: dict
    offsets: dict
    dim: int
    left: dict = field(default_factory=dict)
    right: dict = field(default_factory=dict)

    @property
    def weight_blocks(self):
        return [list(range(self.offsets[t], self.offsets[t] + self.spaces[t].dim)) for t in self.labels]

    def block_of(self, labels):
        return self.spaces.get(tuple(labels))


def _block_space(fun, labels):
    return fun.space(tuple(x for x in labels if x > 0))


def _letters(c: DualityCase):
    rank = _cartan(c.case, c.k).rank
    return [(kind, i) for kind in "EF" for i in range(1, rank + 1)]


def _right_block(c, labels, letter):
    """(target labels, matrix) of one right generator on one block, or None."""
    lam = c.weight(labels)
    w = UqWord((letter,), lam)
    cd = _cartan(c.case, c.k)
    r = cd.simple_roots[letter[1] - 1]
    tgt = lam + r if letter[0] == "E" else lam - r
    try:
        dst = labels_of(c.case, tgt, c.n)
    except ValueError:
        return None
    return dst, howe(c.case, w, c.n)


def build_bimodule(c: DualityCase, with_left=True, with_right=True) -> Bimodule:
    fun = functor(c.case, c.n)
    labels = [t for t in c.label_tuples() if _block_space(fun, t).dim > 0]
    spaces, offsets, off = {}, {}, 0
    for t in labels:
        spaces[t] = _block_space(fun, t)
        offsets[t] = off
        off += spaces[t].dim
    bm = Bimodule(c, labels, spaces, offsets, off)
    if with_left:
        cols = {}
        for t in labels:
            for name, m in coideal_gens(fun.coideal, spaces[t]).items():
                acc = cols.setdefault(name, {})
                o = offsets[t]
                for cc, col in m.columns():
                    acc[o + cc] = {o + r: v for r, v in col.items()}
        bm.left = {name: SparseMat.from_columns(off, off, acc) for name, acc in cols.items()}
    if with_right:
        for letter in _letters(c):
            acc = {}
            for t in labels:
                got = _right_block(c, t, letter)
                if got is None or got[0] not in spaces:
                    continue
                dst, m = got
                o_s, o_t = offsets[t], offsets[dst]
                for cc, col in m.columns():
                    acc[o_s + cc] = {o_t + r: v for r, v in col.items()}
            bm.right[f"{letter[0]}{letter[1]}"] = SparseMat.from_columns(off, off, acc)
    return bm


def commutation_check(c: DualityCase, left=None) -> Report:
    """Left coideal generators against right letters, block by block.

    In the symmetric cases only blocks whose image stays under the cutoff
    are compared. ``left`` may replace the coideal generators (per block)
    by a callable space -> {name: matrix}, for mutation tests.
    """
    fun = functor(c.case, c.n)
    gens_of = left or (lambda sp: coideal_gens(fun.coideal, sp))
    labels = set(c.label_tuples())
    rep = Report()
    cache = {}

    def gens(t):
        if t not in cache:
            cache[t] = gens_of(_block_space(fun, t))
        return cache[t]

    for t in sorted(labels):
        for letter in _letters(c):
            got = _right_block(c, t, letter)
            if got is None or got[0] not in labels:
                continue
            dst, M = got
            if M.rows == 0 or M.cols == 0:
                continue
            gs, gt = gens(t), gens(dst)
            for name in gs:
                lhs = M @ gs[name].with_bases(None, None)
                rhs = gt[name].with_bases(None, None) @ M
                d = lhs.diff_witness(rhs)
                rep.add(
                    f"{c.case}:{name}x{letter[0]}{letter[1]}@{','.join(map(str, t))}",
                    c.case,
                    c.n,
                    "PASS" if d is None else "FAIL",
                    None if d is None else {"entry": list(d[0]), "value": str(d[1])},
                    k=c.k,
                )
    return rep


def _hw_multiplicities(bm: Bimodule, evaluate_rows):
    """Dimension of the joint kernel of the raising operators on each block."""
    out = {}
    raising = [m for name, m in bm.right.items() if name.startswith("E")]
    rows_all = [evaluate_rows(m) for m in raising]
    for t in bm.labels:
        lo, size = bm.offsets[t], bm.spaces[t].dim
        stacked = []
        for rows in rows_all:
            # keep only the columns of this block; the image sits in one other block
            for row in rows:
                sub = {c - lo: v for c, v in row.items() if lo <= c < lo + size}
                if sub:
                    stacked.append(sub)
        out[t] = size - evaluate_rows.rank(stacked)
    return out


class _ModP:
    def __init__(self, t, p=PRIME):
        self.t, self.p = t, p

    def __call__(self, m):
        return m.mod_p_rows(self.t, self.p)

    def rank(self, rows):
        return rank_mod_p(rows, self.p)


class _AtOne:
    def __call__(self, m):
        rows = [dict() for _ in range(m.rows)]
        for (r, c), v in m.entries():
            x = evaluate_at(v, 1)
            if x:
                rows[r][c] = x
        return rows

    def rank(self, rows):
        return rank_rational(rows)


def _hw_commutant(bm, seed=0, points=3):
    rng = random.Random(seed)
    best = None
    got = 0
    while got < points:
        t = rng.randrange(2, PRIME - 1)
        try:
            mult = _hw_multiplicities(bm, _ModP(t))
        except DenominatorVanishes:
            continue
        got += 1
        total = sum(m * m for m in mult.values())
        best = total if best is None else min(best, total)
    return best


def commutant_dim(c: DualityCase, side="right", seed=0, points=3, method="auto") -> int:
    """Dimension of the commutant of one side's generators.

    For the right side (which contains the block projectors) the direct
    method solves X·G = G·X over block-diagonal X. When that system is too
    large, the highest-weight method sums the squared multiplicities of
    highest-weight vectors per block; this assumes the right action is
    completely reducible, which holds for generic q.
    """
    if c.symmetric:
        raise SymmetricUnsupported("commutant dimensions need a finite-dimensional bimodule")
    if side == "right":
        bm = build_bimodule(c, with_left=False)
        unknowns = sum(bm.spaces[t].dim ** 2 for t in bm.labels)
        if method == "hw" or (method == "auto" and unknowns > DIRECT_LIMIT):
            return _hw_commutant(bm, seed, points)
        return _commutant_dim(list(bm.right.values()), bm.weight_blocks, seed=seed, points=points)
    if side == "left":
        bm = build_bimodule(c, with_right=False)
        if bm.dim**2 > DIRECT_LIMIT:
            raise ValueError(f"left commutant has {bm.dim ** 2} unknowns; too large for the direct method")
        return _commutant_dim(list(bm.left.values()), None, seed=seed, points=points)
    raise ValueError("side must be 'left' or 'right'")


# classical limit


def _elementary_local(flavor, i, j, word):
    """E_{ij} on one power basis vector at q = 1."""
    if flavor == EXT:
        if j not in word or (i in word and i != j):
            return {}
        seq = tuple(i if x == j else x for x in word)
        s = straighten(EXT, seq)
        sign = evaluate_at(s[0], 1)
        return {s[1]: sign}
    cnt = word.count(j)
    if not cnt:
        return {}
    pos = word.index(j)
    seq = tuple(sorted(word[:pos] + (i,) + word[pos + 1:]))
    return {seq: Fraction(cnt)}


def elementary(space, i, j):
    """Matrix of the elementary matrix E_{ij} of gl_n acting on a tensor space at q = 1."""
    basis = space.basis()
    index = {k: x for x, k in enumerate(basis)}
    cols = {}
    for c, key in enumerate(basis):
        col = {}
        for pos, (flavor, _deg) in enumerate(space.factors):
            for w, v in _elementary_local(flavor, i, j, key[pos]).items():
                r = index[key[:pos] + (w,) + key[pos + 1:]]
                col[r] = col.get(r, 0) + v
        col = {r: v for r, v in col.items() if v}
        if col:
            cols[c] = col
    return cols, len(basis)


def _lin(*parts):
    out = {}
    for s, (cols, _dim) in parts:
        for c, col in cols.items():
            acc = out.setdefault(c, {})
            for r, v in col.items():
                acc[r] = acc.get(r, 0) + s * v
    return {c: {r: v for r, v in col.items() if v} for c, col in out.items()}


def classical_left_gens(coideal, space):
    """Hand-built q = 1 generators of the coideal, as {name: {col: {row: Fraction}}}.

    so: f_i - e_i. sp: e_i, f_i and the identity for odd i, and
    f_i + E_{i-1,i+2} for even i.
    """
    n = space.n
    E = lambda i, j: elementary(space, i, j)  # noqa: E731
    out = {}
    if coideal == "so":
        for i in range(1, n):
            out[f"B{i}"] = _lin((1, E(i + 1, i)), (-1, E(i, i + 1)))
        return out
    ident = {c: {c: 1} for c in range(space.dim)}
    for i in range(1, n):
        if i % 2:
            out[f"E{i}"] = _lin((1, E(i, i + 1)))
            out[f"F{i}"] = _lin((1, E(i + 1, i)))
            out[f"K{i}"] = ident
            out[f"Kinv{i}"] = ident
        else:
            out[f"B{i}"] = _lin((1, E(i + 1, i)), (1, E(i - 1, i + 2)))
    return out


def at_one(m: SparseMat):
    """Entries of a matrix at q = 1, column-wise."""
    out = {}
    for (r, c), v in m.entries():
        x = evaluate_at(v, 1)
        if x:
            out.setdefault(c, {})[r] = Fraction(int(x.numerator), int(x.denominator))
    return out


def classical_oracle_dim(c: DualityCase) -> int:
    """Commutant dimension of the right action at q = 1, exactly over Q.

    Counts highest-weight vectors of the classical right action block by
    block; the classical limit is semisimple, so the commutant dimension is
    the sum of squared multiplicities.
    """
    if c.symmetric:
        raise SymmetricUnsupported("the classical oracle needs a finite-dimensional bimodule")
    bm = build_bimodule(c, with_left=False)
    mult = _hw_multiplicities(bm, _AtOne())
    return sum(m * m for m in mult.values())


def classical_commutation(c: DualityCase) -> bool:
    """Hand-built classical left generators commute with the q = 1 right action."""
    fun = functor(c.case, c.n)
    labels = set(c.label_tuples())
    for t in labels:
        sp = _block_space(fun, t)
        if sp.dim == 0:
            continue
        left_t = classical_left_gens(fun.coideal, sp)
        for letter in _letters(c):
            got = _right_block(c, t, letter)
            if got is None or got[0] not in labels:
                continue
            dst, M = got
            if M.rows == 0:
                continue
            left_d = classical_left_gens(fun.coideal, _block_space(fun, dst))
            M1 = at_one(M)
            for name in left_t:
                if _mul(M1, left_t[name]) != _mul(left_d[name], M1):
                    return False
    return True


def _mul(A, B):
    """Column-dict product A·B."""
    out = {}
    for c, col in B.items():
        acc = {}
        for m, v in col.items():
            for r, w in A.get(m, {}).items():
                acc[r] = acc.get(r, 0) + w * v
        acc = {r: v for r, v in acc.items() if v}
        if acc:
            out[c] = acc
    return out


# predicted decomposition


def partitions(max_part, max_len, max_size=None):
    """Partitions with parts <= max_part and at most max_len parts."""
    out = []

    def rec(prefix, bound, size):
        out.append(tuple(prefix))
        if len(prefix) == max_len:
            return
        for p in range(min(bound, max_part), 0, -1):
            if max_size is not None and size + p > max_size:
                continue
            rec(prefix + [p], p, size + p)

    rec([], max_part, 0)
    return out


def transpose(lam):
    return tuple(sum(1 for x in lam if x > j) for j in range(lam[0])) if lam else ()


def weyl_dim(group, n, lam):
    """Dimension of the irreducible representation with highest weight lam.

    group is "sp" (n even), "so" (connected group) or "O" (full orthogonal
    group, labels with lam^T_1 + lam^T_2 <= n).
    """
    lam = tuple(lam)
    if group == "O":
        lt = transpose(lam)
        c1 = lt[0] if lt else 0
        r = n // 2
        if c1 > n - c1:
            # associate partition: replace the first column by n - c1
            lt = (n - c1,) + lt[1:]
            lam = transpose(lt)
            c1 = n - c1
        d = weyl_dim("so", n, lam)
        if n % 2 == 0 and len(lam) == r and r > 0:
            # the O(n) irreducible splits into two SO(n) ones of equal dimension
            d *= 2
        return d
    r = n // 2
    if len(lam) > r:
        raise ValueError(f"{lam} has more than {r} parts")
    lam = lam + (0,) * (r - len(lam))
    if group == "sp":
        if n % 2:
            raise ParityError("sp needs n even")
        rho = [r - i for i in range(r)]
        l = [a + b for a, b in zip(lam, rho)]
        num = prod((l[i] - l[j]) * (l[i] + l[j]) for i in range(r) for j in range(i + 1, r)) * prod(l)
        den = prod((rho[i] - rho[j]) * (rho[i] + rho[j]) for i in range(r) for j in range(i + 1, r)) * prod(rho)
        if num % den:
            raise ArithmeticError(f"non-integral dimension for {lam}")
        return num // den
    if group == "so":
        if n % 2:
            rho = [Fraction(2 * (r - i) - 1, 2) for i in range(r)]
            l = [a + b for a, b in zip(lam, rho)]
            v = prod(l[i] ** 2 - l[j] ** 2 for i in range(r) for j in range(i + 1, r)) * prod(l)
            w = prod(rho[i] ** 2 - rho[j] ** 2 for i in range(r) for j in range(i + 1, r)) * prod(rho)
        else:
            rho = [r - 1 - i for i in range(r)]
            l = [a + b for a, b in zip(lam, rho)]
            v = prod(l[i] ** 2 - l[j] ** 2 for i in range(r) for j in range(i + 1, r))
            w = prod(rho[i] ** 2 - rho[j] ** 2 for i in range(r) for j in range(i + 1, r))
        x = Fraction(v) / Fraction(w)
        if x.denominator != 1:
            raise ArithmeticError(f"non-integral dimension for {lam}")
        return int(x)
    raise ValueError(group)


@dataclass
class DecompPrediction:
    partitions: list
    left_dims: list
    group: str

    @property
    def total_commutant_dim(self):
        return sum(d * d for d in self.left_dims)

    total = total_commutant_dim

    def to_json(self):
        return {
            "group": self.group,
            "partitions": [list(p) for p in self.partitions],
            "dims": list(self.left_dims),
            "total": self.total_commutant_dim,
        }


def predicted_decomp(c: DualityCase) -> DecompPrediction:
    """The constrained partition set and the left irreducible dimensions.

    Symmetric cases are cut off at total size ``sym_cutoff``.
    """
    n, k = c.n, c.k
    if c.case == "c-ext":
        parts = partitions(k, n // 2)
        group = "sp"
    elif c.case == "bd-ext":
        parts = [p for p in partitions(k, n) if _orth_ok(p, n)]
        group = "O"
    elif c.case == "bd-sym":
        parts = partitions(c.sym_cutoff, min(n // 2, k), c.sym_cutoff)
        group = "sp"
    else:
        parts = [p for p in partitions(c.sym_cutoff, k, c.sym_cutoff) if _orth_ok(p, n)]
        group = "O"
    dims = [weyl_dim(group, n, p) for p in parts]
    return DecompPrediction(parts, dims, group)


def _orth_ok(lam, n):
    lt = transpose(lam)
    return (lt[0] if lt else 0) + (lt[1] if len(lt) > 1 else 0) <= n


def duality_report(c: DualityCase, seed=0, points=3) -> dict:
    """Everything the CLI prints for one case."""
    out = {"schema": 1, "case": c.case, "n": c.n, "k": c.k}
    comm = commutation_check(c)
    out["commutation"] = "PASS" if comm.passed else "FAIL"
    out["commutation_counts"] = comm.counts()
    pred = predicted_decomp(c)
    out["predicted"] = pred.to_json()
    if not c.symmetric:
        out["commutant_dim"] = commutant_dim(c, "right", seed=seed, points=points)
        out["oracle_dim"] = classical_oracle_dim(c)
        out["dims_agree"] = out["commutant_dim"] == out["oracle_dim"] == pred.total_commutant_dim
        # even orthogonal n: reported only
        out["asserted"] = not (c.case == "bd-ext" and c.n % 2 == 0)
    else:
        out["sym_cutoff"] = c.sym_cutoff
    return out


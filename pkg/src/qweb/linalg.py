"""Sparse matrices over Q(q) and rank computations.

Matrices are stored column-wise as ``{col: {row: RatFunc}}`` since almost
every operation here is "apply a linear map to a basis vector".  Ranks of
large systems are taken at random points of F_p; small ones can also be
computed exactly over Q(q) for cross-checking.
"""

from __future__ import annotations

import random

from gmpy2 import mpq

from .scalar import ONE, RatFunc, DenominatorVanishes, as_ratfunc, evaluate_at

__all__ = [
    "SparseMat",
    "DimensionMismatch",
    "PRIME",
    "compose",
    "kron",
    "rank",
    "rank_exact",
    "rank_mod_p",
    "rank_rational",
    "nullspace_mod_p",
    "commutant_dim",
]

PRIME = (1 << 61) - 1


class DimensionMismatch(ValueError):
    pass


def _vec_add(acc, vec, scale):
    """acc += scale * vec for sparse vectors (dicts)."""
    for r, v in vec.items():
        w = v * scale if scale is not ONE else v
        old = acc.get(r)
        if old is None:
            acc[r] = w
        else:
            s = old + w
            if s.is_zero():
                del acc[r]
            else:
                acc[r] = s


class SparseMat:
    """Immutable sparse matrix with entries in Q(q)."""

    __slots__ = ("rows", "cols", "_cols", "row_basis", "col_basis")

    def __init__(self, rows, cols, columns=None, row_basis=None, col_basis=None):
        self.rows = rows
        self.cols = cols
        self._cols = {c: dict(v) for c, v in (columns or {}).items() if v}
        self.row_basis = row_basis
        self.col_basis = col_basis

    @classmethod
    def _wrap(cls, rows, cols, columns, row_basis=None, col_basis=None):
        m = cls.__new__(cls)
        m.rows, m.cols, m._cols = rows, cols, columns
        m.row_basis, m.col_basis = row_basis, col_basis
        return m

    @classmethod
    def from_entries(cls, rows, cols, entries, row_basis=None, col_basis=None):
        columns = {}
        for (r, c), v in entries.items():
            if not (0 <= r < rows and 0 <= c < cols):
                raise IndexError((r, c))
            v = as_ratfunc(v)
            if not v.is_zero():
                columns.setdefault(c, {})[r] = v
        return cls._wrap(rows, cols, columns, row_basis, col_basis)

    @classmethod
    def from_columns(cls, rows, cols, columns, row_basis=None, col_basis=None):
        clean = {}
        for c, vec in columns.items():
            v = {r: x for r, x in vec.items() if not x.is_zero()}
            if v:
                clean[c] = v
        return cls._wrap(rows, cols, clean, row_basis, col_basis)

    @classmethod
    def identity(cls, n, basis=None):
        return cls._wrap(n, n, {i: {i: ONE} for i in range(n)}, basis, basis)

    @classmethod
    def zero(cls, rows, cols, row_basis=None, col_basis=None):
        return cls._wrap(rows, cols, {}, row_basis, col_basis)

    @property
    def shape(self):
        return (self.rows, self.cols)

    def column(self, c):
        return self._cols.get(c, {})

    def columns(self):
        return self._cols.items()

    def entries(self):
        """All nonzero entries as ((row, col), value), sorted."""
        out = []
        for c in sorted(self._cols):
            col = self._cols[c]
            for r in sorted(col):
                out.append(((r, c), col[r]))
        return out

    def nnz(self):
        return sum(len(v) for v in self._cols.values())

    def __getitem__(self, rc):
        r, c = rc
        from .scalar import ZERO

        return self._cols.get(c, {}).get(r, ZERO)

    def apply(self, vec):
        """Image of a sparse vector {index: RatFunc}."""
        acc = {}
        for c, x in vec.items():
            col = self._cols.get(c)
            if col:
                _vec_add(acc, col, x)
        return acc

    def __matmul__(self, other):
        return compose(self, other)

    def __add__(self, other):
        if self.shape != other.shape:
            raise DimensionMismatch(f"{self.shape} vs {other.shape}")
        columns = {c: dict(v) for c, v in self._cols.items()}
        for c, vec in other._cols.items():
            acc = columns.setdefault(c, {})
            _vec_add(acc, vec, ONE)
            if not acc:
                del columns[c]
        return SparseMat._wrap(self.rows, self.cols, columns, self.row_basis, self.col_basis)

    def __neg__(self):
        return self.scale(-ONE)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s):
        s = as_ratfunc(s)
        if s.is_zero():
            return SparseMat.zero(self.rows, self.cols, self.row_basis, self.col_basis)
        columns = {c: {r: v * s for r, v in col.items()} for c, col in self._cols.items()}
        return SparseMat._wrap(self.rows, self.cols, columns, self.row_basis, self.col_basis)

    def __rmul__(self, s):
        return self.scale(s)

    def transpose(self):
        columns = {}
        for c, col in self._cols.items():
            for r, v in col.items():
                columns.setdefault(r, {})[c] = v
        return SparseMat._wrap(self.cols, self.rows, columns, self.col_basis, self.row_basis)

    def is_zero(self):
        return not self._cols

    def __eq__(self, other):
        if not isinstance(other, SparseMat):
            return NotImplemented
        return self.shape == other.shape and self._cols == other._cols

    __hash__ = None

    def diff_witness(self, other):
        """First entry where the two matrices differ, or None."""
        d = self - other
        e = d.entries()
        return e[0] if e else None

    def with_bases(self, row_basis, col_basis):
        return SparseMat._wrap(self.rows, self.cols, self._cols, row_basis, col_basis)

    def mod_p_rows(self, t, p=PRIME):
        """Specialize at q = t in F_p; returns a list of {col: int} rows."""
        rows = [dict() for _ in range(self.rows)]
        cache = {}
        for c, col in self._cols.items():
            for r, v in col.items():
                x = cache.get(v)
                if x is None:
                    x = evaluate_at(v, t, p)
                    cache[v] = x
                if x:
                    rows[r][c] = x
        return rows

    def to_dense(self):
        from .scalar import ZERO

        out = [[ZERO] * self.cols for _ in range(self.rows)]
        for c, col in self._cols.items():
            for r, v in col.items():
                out[r][c] = v
        return out

    def to_json(self):
        return {
            "rows": self.rows,
            "cols": self.cols,
            "entries": [[r, c, v.to_json()] for (r, c), v in self.entries()],
        }

    @classmethod
    def from_json(cls, obj):
        entries = {(r, c): RatFunc.from_json(v) for r, c, v in obj["entries"]}
        return cls.from_entries(obj["rows"], obj["cols"], entries)

    def __repr__(self):
        return f"SparseMat({self.rows}x{self.cols}, nnz={self.nnz()})"


def _bases_match(a, b):
    return a is None or b is None or a == b


def compose(A: SparseMat, B: SparseMat) -> SparseMat:
    """The product A·B (apply B first)."""
    if A.cols != B.rows or not _bases_match(A.col_basis, B.row_basis):
        raise DimensionMismatch(f"cannot compose {A.shape} after {B.shape}")
    columns = {}
    for c, col in B._cols.items():
        acc = A.apply(col)
        if acc:
            columns[c] = acc
    return SparseMat._wrap(A.rows, B.cols, columns, A.row_basis, B.col_basis)


def _concat(a, b):
    if a is None or b is None:
        return None
    return tuple(a) + tuple(b)


def kron(A: SparseMat, B: SparseMat) -> SparseMat:
    """Kronecker product, left factor varying slowest."""
    columns = {}
    br, bc = B.rows, B.cols
    for ca, cola in A._cols.items():
        for cb, colb in B._cols.items():
            vec = {}
            for ra, va in cola.items():
                base = ra * br
                if va.is_poly() and va.num.is_one():
                    for rb, vb in colb.items():
                        vec[base + rb] = vb
                else:
                    for rb, vb in colb.items():
                        vec[base + rb] = va * vb
            columns[ca * bc + cb] = vec
    return SparseMat._wrap(
        A.rows * br,
        A.cols * bc,
        columns,
        _concat(A.row_basis, B.row_basis),
        _concat(A.col_basis, B.col_basis),
    )


# modular elimination


def _reduce_into(pivots, row, p):
    """Reduce ``row`` against the pivot rows; returns the residue (may be empty).

    ``pivots`` maps pivot column -> normalized row (pivot entry 1).
    """
    row = dict(row)
    while row:
        c = min(row)
        piv = pivots.get(c)
        if piv is None:
            return c, row
        f = row[c]
        for k, v in piv.items():
            x = (row.get(k, 0) - f * v) % p
            if x:
                row[k] = x
            else:
                row.pop(k, None)
    return None, row


def _echelon(rows, p):
    pivots = {}
    for row in rows:
        if not row:
            continue
        c, red = _reduce_into(pivots, row, p)
        if c is None:
            continue
        inv = pow(red[c], -1, p)
        pivots[c] = {k: v * inv % p for k, v in red.items()}
    return pivots


def rank_mod_p(rows, p=PRIME) -> int:
    """Rank of a list of sparse integer rows over F_p."""
    return len(_echelon(rows, p))


def nullspace_mod_p(rows, ncols, p=PRIME):
    """Basis of the right kernel over F_p as a list of {col: int} vectors."""
    pivots = _echelon(rows, p)
    # back-substitute to reduced row echelon form
    order = sorted(pivots, reverse=True)
    for c in order:
        piv = pivots[c]
        for k in [k for k in piv if k != c and k in pivots]:
            f = piv.get(k)
            if not f:
                continue
            for kk, vv in pivots[k].items():
                x = (piv.get(kk, 0) - f * vv) % p
                if x:
                    piv[kk] = x
                else:
                    piv.pop(kk, None)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        vec = {f: 1}
        for c, piv in pivots.items():
            x = piv.get(f)
            if x:
                vec[c] = (-x) % p
        basis.append(vec)
    return basis


def rank_rational(rows) -> int:
    """Exact rank over Q of sparse rows with rational entries."""
    pivots = {}
    for row in rows:
        row = {k: mpq(v) for k, v in row.items() if v}
        while row:
            c = min(row)
            piv = pivots.get(c)
            if piv is None:
                inv = 1 / row[c]
                pivots[c] = {k: v * inv for k, v in row.items()}
                break
            f = row[c]
            for k, v in piv.items():
                x = row.get(k, 0) - f * v
                if x:
                    row[k] = x
                else:
                    row.pop(k, None)
    return len(pivots)


def _sample_points(seed, count, p=PRIME):
    rng = random.Random(seed)
    return [rng.randrange(2, p - 1) for _ in range(count)]


def rank(A: SparseMat, seed=0, points=3, p=PRIME) -> int:
    """Rank over Q(q) via the maximum rank at random points of F_p."""
    best = 0
    got = 0
    rng = random.Random(seed)
    while got < points:
        t = rng.randrange(2, p - 1)
        try:
            rows = A.mod_p_rows(t, p)
        except DenominatorVanishes:
            continue
        got += 1
        best = max(best, rank_mod_p(rows, p))
    return best


def rank_exact(A: SparseMat) -> int:
    """Rank by Gaussian elimination over Q(q); slow, meant for small matrices."""
    rows = [dict() for _ in range(A.rows)]
    for (r, c), v in A.entries():
        rows[r][c] = v
    pivots = {}
    for row in rows:
        row = dict(row)
        while row:
            c = min(row)
            piv = pivots.get(c)
            if piv is None:
                inv = row[c].inverse()
                pivots[c] = {k: v * inv for k, v in row.items()}
                break
            f = row[c]
            for k, v in piv.items():
                x = row.get(k)
                x = -(f * v) if x is None else x - f * v
                if x.is_zero():
                    row.pop(k, None)
                else:
                    row[k] = x
    return len(pivots)


def commutant_system(gens, blocks, t, p=PRIME):
    """Rows of the linear system X·G = G·X over block-diagonal X at q = t.

    Unknowns are the entries X[r, c] with r, c in the same block; returns
    (rows, number of unknowns).
    """
    block_of = {}
    offsets = []
    total = 0
    for bi, blk in enumerate(blocks):
        offsets.append(total)
        for pos, idx in enumerate(blk):
            block_of[idx] = (bi, pos)
        total += len(blk) ** 2

    def var(r, c):
        br, pr = block_of[r]
        bc, pc = block_of[c]
        if br != bc:
            return None
        return offsets[br] + pr * len(blocks[br]) + pc

    eqs = []
    for G in gens:
        Gt = G.mod_p_rows(t, p)
        Gcols = {}
        for r, row in enumerate(Gt):
            for c, v in row.items():
                Gcols.setdefault(c, {})[r] = v
        # (XG - GX)[r, c] = sum_m X[r,m] G[m,c] - sum_m G[r,m] X[m,c]
        dim = len(Gt)
        for r in range(dim):
            br = block_of[r][0]
            cand = set()
            for m in blocks[br]:
                cand.update(Gt[m])
            for m in Gt[r]:
                cand.update(blocks[block_of[m][0]])
            for c in sorted(cand):
                bc = block_of[c][0]
                eq = {}
                for m, g in Gcols.get(c, {}).items():
                    if block_of[m][0] == br:
                        k = var(r, m)
                        eq[k] = (eq.get(k, 0) + g) % p
                for m, g in Gt[r].items():
                    if block_of[m][0] == bc:
                        k = var(m, c)
                        eq[k] = (eq.get(k, 0) - g) % p
                eq = {k: v for k, v in eq.items() if v}
                if eq:
                    eqs.append(eq)
    return eqs, total


def commutant_dim(gens, blocks=None, seed=0, points=3, p=PRIME) -> int:
    """Dimension of {X block-diagonal : XG = GX for all G in gens}."""
    if not gens and blocks is None:
        raise DimensionMismatch("need a generator or a block structure")
    dim = gens[0].rows if gens else sum(len(b) for b in blocks)
    for G in gens:
        if G.rows != dim or G.cols != dim:
            raise DimensionMismatch("generators must be square of equal size")
    if blocks is None:
        blocks = [list(range(dim))]
    if sum(len(b) for b in blocks) != dim:
        raise DimensionMismatch("blocks do not partition the index set")
    best = None
    rng = random.Random(seed)
    got = 0
    while got < points:
        t = rng.randrange(2, p - 1)
        try:
            eqs, total = commutant_system(gens, blocks, t, p)
        except DenominatorVanishes:
            continue
        got += 1
        d = total - rank_mod_p(eqs, p)
        best = d if best is None else min(best, d)
    return best

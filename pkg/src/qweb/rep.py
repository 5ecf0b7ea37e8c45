"""Representations of U_q(gl_n) on tensor products of exterior and symmetric powers.

A basis vector of a tensor space is a tuple of words, one per factor; a word
is a sorted tuple of indices in 1..n (strictly increasing for exterior
powers, weakly for symmetric ones).  Linear maps are described locally by
functions from such tuples to sparse combinations, then assembled into
``SparseMat`` objects on demand.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, combinations_with_replacement, permutations, product
from math import comb

from .linalg import SparseMat, compose
from .scalar import ONE, RatFunc, qbinom, qfactorial, qint

__all__ = [
    "EXT",
    "SYM",
    "PowerBasis",
    "TensorSpace",
    "CoidealType",
    "IndexOutOfRange",
    "ParityError",
    "flavor_of",
    "straighten",
    "gl_action",
    "coideal_gen",
    "coideal_gens",
    "thin_merge",
    "thin_split",
    "thick_merge",
    "thick_split",
    "crossing",
    "cup_bd",
    "cap_bd",
    "dot_bd",
    "dot_c",
    "cup_c",
    "cap_c",
    "local_matrix",
    "incl",
    "weight",
    "algebra_gens",
    "equivariance_witness",
]

EXT = "ext"
SYM = "sym"

_FLAVORS = {"ext": EXT, "exterior": EXT, "sym": SYM, "symmetric": SYM}


class IndexOutOfRange(IndexError):
    pass


class ParityError(ValueError):
    pass


def flavor_of(name: str) -> str:
    try:
        return _FLAVORS[name]
    except KeyError:
        raise ValueError(f"unknown flavor {name!r}") from None


@lru_cache(maxsize=None)
def _words(flavor, n, degree):
    idx = range(1, n + 1)
    if flavor == EXT:
        return tuple(combinations(idx, degree))
    return tuple(combinations_with_replacement(idx, degree))


@dataclass(frozen=True)
class PowerBasis:
    """Basis of the degree-``degree`` exterior or symmetric power of V = Q(q)^n."""

    flavor: str
    n: int
    degree: int

    def __post_init__(self):
        object.__setattr__(self, "flavor", flavor_of(self.flavor))

    @property
    def words(self):
        return _words(self.flavor, self.n, self.degree)

    def __len__(self):
        if self.flavor == EXT:
            return comb(self.n, self.degree)
        return comb(self.n + self.degree - 1, self.degree)

    def index(self, word):
        return _word_index(self.flavor, self.n, self.degree)[word]


@lru_cache(maxsize=None)
def _word_index(flavor, n, degree):
    return {w: i for i, w in enumerate(_words(flavor, n, degree))}


@dataclass(frozen=True)
class TensorSpace:
    """Tensor product of powers; basis is row-major, leftmost factor slowest."""

    n: int
    factors: tuple

    def __post_init__(self):
        # degrees 0 and 1 look the same in both flavors; normalize them
        object.__setattr__(
            self,
            "factors",
            tuple((flavor_of(f) if d > 1 else EXT, int(d)) for f, d in self.factors),
        )

    @classmethod
    def of(cls, n, flavor, degrees):
        return cls(n, tuple((flavor, d) for d in degrees))

    @property
    def bases(self):
        return tuple(PowerBasis(f, self.n, d) for f, d in self.factors)

    @property
    def dim(self):
        out = 1
        for b in self.bases:
            out *= len(b)
        return out

    def basis(self):
        """All basis vectors as tuples of words, in index order."""
        return _space_basis(self)

    def index(self, key):
        return _space_index(self)[key]


@lru_cache(maxsize=None)
def _space_basis(space):
    return tuple(product(*(b.words for b in space.bases)))


@lru_cache(maxsize=None)
def _space_index(space):
    return {k: i for i, k in enumerate(_space_basis(space))}


@dataclass(frozen=True)
class CoidealType:
    family: str

    def __post_init__(self):
        if self.family not in ("so", "sp"):
            raise ValueError("coideal family must be 'so' or 'sp'")


def local_matrix(src: TensorSpace, dst: TensorSpace, fn) -> SparseMat:
    """Assemble the matrix of a map given on basis tuples by ``fn``."""
    index = _space_index(dst)
    columns = {}
    for c, key in enumerate(_space_basis(src)):
        img = fn(key)
        if img:
            columns[c] = {index[k]: v for k, v in img.items() if not v.is_zero()}
    return SparseMat.from_columns(dst.dim, src.dim, columns, dst, src)


# straightening


def _q(e):
    return RatFunc.q_power(e)


def _inversions(seq):
    return sum(1 for a in range(len(seq)) for b in range(a + 1, len(seq)) if seq[a] > seq[b])


@lru_cache(maxsize=None)
def straighten(flavor, seq):
    """Write the product of the letters in ``seq`` as c * v_word.

    Returns (c, word) or None when the product vanishes.
    """
    word = tuple(sorted(seq))
    inv = _inversions(seq)
    if flavor == EXT:
        if len(set(seq)) < len(seq):
            return None
        c = _q(-inv)
        return (c if inv % 2 == 0 else -c), word
    return _q(inv), word


def _add(acc, key, val):
    old = acc.get(key)
    if old is None:
        acc[key] = val
    else:
        s = old + val
        if s.is_zero():
            del acc[key]
        else:
            acc[key] = s


# gl_n action


def _k_exp(letter, i):
    return 1 if letter == i else (-1 if letter == i + 1 else 0)


def _gl_on_seq(kind, i, seq):
    """Action of a Chevalley generator on a pure tensor of vectors v_{seq}."""
    out = {}
    if kind == "K":
        return {seq: _q(sum(_k_exp(x, i) for x in seq))}
    if kind == "Kinv":
        return {seq: _q(-sum(_k_exp(x, i) for x in seq))}
    for p, x in enumerate(seq):
        if kind == "E" and x == i + 1:
            e = sum(_k_exp(y, i) for y in seq[p + 1:])
            new = seq[:p] + (i,) + seq[p + 1:]
        elif kind == "F" and x == i:
            e = -sum(_k_exp(y, i) for y in seq[:p])
            new = seq[:p] + (i + 1,) + seq[p + 1:]
        else:
            continue
        _add(out, new, _q(e))
    return out


def _parse_gen(gen):
    if isinstance(gen, str):
        g = gen.strip()
        for kind in ("Kinv", "E", "F", "K"):
            if g.startswith(kind):
                return kind, int(g[len(kind):])
        raise ValueError(f"unknown generator {gen!r}")
    kind, i = gen
    if kind in ("K^-1", "K-1"):
        kind = "Kinv"
    return kind, int(i)


@lru_cache(maxsize=None)
def gl_action(gen, space: TensorSpace) -> SparseMat:
    """Matrix of E_i, F_i, K_i or K_i^{-1} on a tensor space via the coproduct."""
    kind, i = _parse_gen(gen)
    if not 1 <= i <= space.n - 1:
        raise IndexOutOfRange(f"generator index {i} out of range for n={space.n}")
    lengths = [d for _, d in space.factors]
    flavors = [f for f, _ in space.factors]

    def fn(key):
        seq = sum(key, ())
        out = {}
        for new, c in _gl_on_seq(kind, i, seq).items():
            words = []
            pos = 0
            for f, d in zip(flavors, lengths):
                s = straighten(f, new[pos:pos + d])
                pos += d
                if s is None:
                    break
                c = c * s[0]
                words.append(s[1])
            else:
                _add(out, tuple(words), c)
        return out

    return local_matrix(space, space, fn)


@lru_cache(maxsize=None)
def coideal_gen(ctype, i, space: TensorSpace) -> SparseMat:
    """Matrix of a generator of the so- or sp-type coideal subalgebra.

    so: B_i = F_i - K_i^{-1} E_i for 1 <= i <= n-1.
    sp: odd i passes through ``gen`` requests ("E", "F", "K", "Kinv");
    even i gives B_i = F_i - K_i^{-1} ad(E_{i-1}E_{i+1}).E_i.
    """
    if isinstance(ctype, CoidealType):
        family = ctype.family
    else:
        family = CoidealType(ctype).family
    n = space.n
    kind = None
    if isinstance(i, tuple):
        kind, i = i
    if not 1 <= i <= n - 1:
        raise IndexOutOfRange(f"coideal index {i} out of range for n={n}")
    g = lambda k, j: gl_action((k, j), space)  # noqa: E731
    if family == "so":
        if kind not in (None, "B"):
            raise ValueError("so-type coideal only has B_i generators")
        return g("F", i) - compose(g("Kinv", i), g("E", i))
    if n % 2:
        raise ParityError("sp-type coideal needs n even")
    if i % 2 == 1:
        if kind is None or kind == "B":
            raise ParityError(f"sp index {i} is odd: ask for E, F, K or Kinv")
        return g(kind, i)
    if kind not in (None, "B"):
        raise ParityError(f"sp index {i} is even: only B_{i} exists")
    if i + 1 > n - 1:
        raise IndexOutOfRange(f"B_{i} needs E_{i + 1}, which does not exist for n={n}")
    a, b, c = g("E", i - 1), g("E", i + 1), g("E", i)
    qi = _q(-1)
    ad = (
        compose(a, compose(b, c))
        - compose(a, compose(c, b)).scale(qi)
        - compose(b, compose(c, a)).scale(qi)
        + compose(c, compose(a, b)).scale(_q(-2))
    )
    return g("F", i) - compose(g("Kinv", i), ad)


def coideal_gens(family, space: TensorSpace):
    """All generator matrices of the coideal acting on ``space``, keyed by name."""
    n = space.n
    out = {}
    if family == "so":
        for i in range(1, n):
            out[f"B{i}"] = coideal_gen("so", i, space)
        return out
    if n % 2:
        raise ParityError("sp-type coideal needs n even")
    for i in range(1, n):
        if i % 2:
            for kind in ("E", "F", "K", "Kinv"):
                out[f"{kind}{i}"] = coideal_gen("sp", (kind, i), space)
        else:
            out[f"B{i}"] = coideal_gen("sp", i, space)
    return out


# inclusions of powers into tensor powers of V and the thick generators


@lru_cache(maxsize=None)
def incl(flavor, word):
    """The inclusion of a power into V^{(x)m}: v_word -> combination of sequences."""
    m = len(word)
    out = {}
    if flavor == EXT:
        pref = _q(comb(m, 2))
        for perm in permutations(range(m)):
            seq = tuple(word[p] for p in perm)
            inv = _inversions(perm)
            c = pref * _q(-inv)
            out[seq] = c if inv % 2 == 0 else -c
        return out
    counts = {}
    for x in word:
        counts[x] = counts.get(x, 0) + 1
    pref = ONE
    d = comb(m, 2)
    for k in counts.values():
        pref = pref * qfactorial(k)
        d -= comb(k, 2)
    pref = pref * _q(-d)
    for seq in set(permutations(word)):
        out[seq] = pref * _q(_inversions(seq))
    return out


def _project(flavor, seq):
    """pi_m without the 1/[m]! factor."""
    return straighten(flavor, seq)


@lru_cache(maxsize=None)
def merge_local(flavor, w1, w2):
    s = straighten(flavor, w1 + w2)
    return {} if s is None else {(s[1],): s[0]}


def _cross_count(w1, w2):
    return sum(1 for x in w1 for y in w2 if x > y)


@lru_cache(maxsize=None)
def split_local(flavor, a, b, w):
    """(pi_a (x) pi_b) o iota on one basis vector, summed in closed form."""
    out = {}
    if flavor == EXT:
        for pick in combinations(range(a + b), a):
            w1 = tuple(w[i] for i in pick)
            w2 = tuple(w[i] for i in range(a + b) if i not in pick)
            c = _cross_count(w1, w2)
            v = _q(a * b - c)
            out[(w1, w2)] = -v if c % 2 else v
        return out
    counts = Counter(w)
    letters = sorted(counts)
    for split in product(*(range(counts[x] + 1) for x in letters)):
        if sum(split) != a:
            continue
        w1, w2, coef, e = [], [], ONE, -a * b
        for x, k in zip(letters, split):
            w1 += [x] * k
            w2 += [x] * (counts[x] - k)
            coef = coef * qbinom(counts[x], k)
            e += k * (counts[x] - k)
        w1, w2 = tuple(w1), tuple(w2)
        out[(w1, w2)] = coef * _q(e + _cross_count(w1, w2))
    return out


def _thin_cross_seq(flavor, kind, seq, p):
    """Thin crossing on positions p, p+1 of a pure tensor."""
    x, y = seq[p], seq[p + 1]
    out = {seq: -_q(-1) if kind == "over" else -_q(1)}
    s = straighten(flavor, (x, y))
    if s is not None:
        c0, w = s
        for (w1, w2), c in split_local(flavor, 1, 1, w).items():
            _add(out, seq[:p] + w1 + w2 + seq[p + 2:], c0 * c)
    return out


@lru_cache(maxsize=None)
def _cross_one(flavor, kind, x, w):
    """A thin strand x crossing a block w: (1, b) -> (b, 1)."""
    b = len(w)
    vec = {(x,) + seq: c for seq, c in incl(flavor, w).items()}
    for p in range(b):
        new = {}
        for seq, c in vec.items():
            for s2, c2 in _thin_cross_seq(flavor, kind, seq, p).items():
                _add(new, s2, c * c2)
        vec = new
    out = {}
    for seq, c in vec.items():
        t = straighten(flavor, seq[:b])
        if t is not None:
            _add(out, (t[1], seq[b]), c * t[0])
    scale = qfactorial(b).inverse()
    return {k: v * scale for k, v in out.items()}


@lru_cache(maxsize=None)
def cross_local(flavor, kind, w1, w2):
    """Crossing (a, b) -> (b, a), exploding the left strand into thin ones.

    The thin pieces pass the right block one at a time; naturality of the
    braiding keeps the block inside the image of the inclusion, so it can
    stay in the power basis throughout.
    """
    a, b = len(w1), len(w2)
    if a == 1 and b == 1:
        out = {}
        for seq, c in _thin_cross_seq(flavor, kind, w1 + w2, 0).items():
            _add(out, ((seq[0],), (seq[1],)), c)
        return out
    states = {seq + (w2,): c for seq, c in incl(flavor, w1).items()}
    for i in range(a - 1, -1, -1):
        new = {}
        for st, c in states.items():
            for (w, y), c2 in _cross_one(flavor, kind, st[i], st[i + 1]).items():
                _add(new, st[:i] + (w, y) + st[i + 2:], c * c2)
        states = new
    out = {}
    for st, c in states.items():
        t = straighten(flavor, st[1:])
        if t is not None:
            _add(out, (st[0], t[1]), c * t[0])
    scale = qfactorial(a).inverse()
    return {k: v * scale for k, v in out.items()}


# intertwiners (local forms, keyed on tuples of words)


def cup_bd_local(n):
    return {((i,), (i,)): ONE for i in range(1, n + 1)}


def cap_bd_local(n, w1, w2):
    i, j = w1[0], w2[0]
    return {(): _q(n + 1 - 2 * i)} if i == j else {}


def sdot_bd_local(n):
    c = qint(2).inverse()
    return {((i, i),): c for i in range(1, n + 1)}


def edot_bd_local(n, w):
    i, j = w
    return {(): _q(n + 1 - 2 * i)} if i == j else {}


def _need_even(n):
    if n % 2:
        raise ParityError(f"n={n} must be even here")


def sdot_c_local(n):
    _need_even(n)
    return {((2 * i - 1, 2 * i),): _q(1 - i) for i in range(1, n // 2 + 1)}


def edot_c_local(n, w):
    i, j = w
    if i % 2 == 1 and j == i + 1:
        return {(): _q(n - (3 * i + 1) // 2)}
    return {}


def cup_c_local(n):
    _need_even(n)
    out = {}
    for i in range(1, n // 2 + 1):
        out[((2 * i - 1,), (2 * i,))] = _q(2 - i)
        out[((2 * i,), (2 * i - 1,))] = -_q(1 - i)
    return out


def cap_c_local(n, w1, w2):
    i, j = w1[0], w2[0]
    if i % 2 == 1 and j == i + 1:
        return {(): _q(n - (3 * i + 1) // 2)}
    if i % 2 == 0 and j == i - 1:
        return {(): -_q(n - 3 * i // 2)}
    return {}


# matrix-level API


def _space(n, *factors):
    return TensorSpace(n, tuple(factors))


def thin_merge(flavor, n) -> SparseMat:
    return thick_merge(1, 1, flavor, n)


def thin_split(flavor, n) -> SparseMat:
    return thick_split(1, 1, flavor, n)


@lru_cache(maxsize=None)
def thick_merge(a, b, flavor, n) -> SparseMat:
    f = flavor_of(flavor)
    src = _space(n, (f, a), (f, b))
    dst = _space(n, (f, a + b))
    return local_matrix(src, dst, lambda k: merge_local(f, k[0], k[1]))


@lru_cache(maxsize=None)
def thick_split(a, b, flavor, n) -> SparseMat:
    f = flavor_of(flavor)
    src = _space(n, (f, a + b))
    dst = _space(n, (f, a), (f, b))
    return local_matrix(src, dst, lambda k: split_local(f, a, b, k[0]))


@lru_cache(maxsize=None)
def crossing(flavor, kind, a, b, n) -> SparseMat:
    """Braiding (a, b) -> (b, a); ``kind`` is "over" or "under"."""
    if kind not in ("over", "under"):
        raise ValueError("kind must be 'over' or 'under'")
    f = flavor_of(flavor)
    src = _space(n, (f, a), (f, b))
    dst = _space(n, (f, b), (f, a))
    return local_matrix(src, dst, lambda k: cross_local(f, kind, k[0], k[1]))


def _unit(n):
    return TensorSpace(n, ())


def cup_bd(n) -> SparseMat:
    return local_matrix(_unit(n), _space(n, (EXT, 1), (EXT, 1)), lambda k: cup_bd_local(n))


def cap_bd(n) -> SparseMat:
    return local_matrix(_space(n, (EXT, 1), (EXT, 1)), _unit(n), lambda k: cap_bd_local(n, *k))


def dot_bd(n, direction) -> SparseMat:
    s2 = _space(n, (SYM, 2))
    if direction == "start":
        return local_matrix(_unit(n), s2, lambda k: sdot_bd_local(n))
    if direction == "end":
        return local_matrix(s2, _unit(n), lambda k: edot_bd_local(n, k[0]))
    raise ValueError("direction must be 'start' or 'end'")


def dot_c(n, direction) -> SparseMat:
    _need_even(n)
    e2 = _space(n, (EXT, 2))
    if direction == "start":
        return local_matrix(_unit(n), e2, lambda k: sdot_c_local(n))
    if direction == "end":
        return local_matrix(e2, _unit(n), lambda k: edot_c_local(n, k[0]))
    raise ValueError("direction must be 'start' or 'end'")


def cup_c(n) -> SparseMat:
    _need_even(n)
    return local_matrix(_unit(n), _space(n, (SYM, 1), (SYM, 1)), lambda k: cup_c_local(n))


def cap_c(n) -> SparseMat:
    _need_even(n)
    return local_matrix(_space(n, (SYM, 1), (SYM, 1)), _unit(n), lambda k: cap_c_local(n, *k))


def weight(key, n):
    """gl_n weight of a basis tuple as a tuple of multiplicities."""
    w = [0] * n
    for word in key:
        for x in word:
            w[x - 1] += 1
    return tuple(w)



def algebra_gens(algebra, space: TensorSpace):
    """Generator matrices of gl_n (all E_i, F_i, K_i) or of a coideal."""
    if algebra in ("so", "sp"):
        return coideal_gens(algebra, space)
    if algebra != "gl":
        raise ValueError(f"unknown algebra {algebra!r}")
    return {
        f"{kind}{i}": gl_action((kind, i), space)
        for i in range(1, space.n)
        for kind in ("E", "F", "K")
    }


def equivariance_witness(M: SparseMat, src: TensorSpace, dst: TensorSpace, algebra):
    """None if M intertwines the action on src and dst, else (generator, entry)."""
    M = M.with_bases(None, None)
    gs, gd = algebra_gens(algebra, src), algebra_gens(algebra, dst)
    for name in gs:
        a = gd[name].with_bases(None, None)
        b = gs[name].with_bases(None, None)
        d = compose(a, M).diff_witness(compose(M, b))
        if d is not None:
            return name, d[0]
    return None

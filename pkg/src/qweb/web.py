"""Web diagrams, a small text format for them, and their evaluation to matrices.

A diagram is a list of slices read bottom to top.  Each slice applies one
generator to a few adjacent strands and leaves the strands to its left and
right alone.  Cups, caps and dots may only act at the right end of a slice.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache

from .linalg import SparseMat
from .rep import (
    EXT,
    SYM,
    ParityError,
    TensorSpace,
    _add,
    cap_bd_local,
    cap_c_local,
    cross_local,
    cup_bd_local,
    cup_c_local,
    edot_bd_local,
    edot_c_local,
    merge_local,
    sdot_bd_local,
    sdot_c_local,
    split_local,
)
from .scalar import ONE, ZSpec, as_ratfunc

__all__ = [
    "WebObject",
    "Gen",
    "Slice",
    "WebDiagram",
    "Web",
    "FormalCombo",
    "Functor",
    "FUNCTORS",
    "Report",
    "WebSyntaxError",
    "WebTypeError",
    "PlacementError",
    "parse",
    "evaluate",
    "check_relation",
    "functor",
    "Ladder",
    "identity",
]


class WebSyntaxError(SyntaxError):
    pass


class WebTypeError(TypeError):
    pass


class PlacementError(ValueError):
    pass


RIGHTMOST = ("cup", "cap", "sdot", "edot")


@dataclass(frozen=True)
class WebObject:
    labels: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(int(x) for x in self.labels))
        if any(x < 1 for x in self.labels):
            raise WebTypeError(f"labels must be positive: {self.labels}")

    def __str__(self):
        return " ".join(map(str, self.labels)) if self.labels else "∅"


@dataclass(frozen=True)
class Gen:
    """A generating morphism; ``a`` and ``b`` are only used by the trivalent ones."""

    kind: str
    a: int = 0
    b: int = 0

    def domain(self):
        k = self.kind
        if k == "merge":
            return (self.a, self.b)
        if k == "split":
            return (self.a + self.b,)
        if k in ("xover", "xunder"):
            return (self.a, self.b)
        if k == "cap":
            return (1, 1)
        if k == "edot":
            return (2,)
        return ()

    def codomain(self):
        k = self.kind
        if k == "merge":
            return (self.a + self.b,)
        if k == "split":
            return (self.a, self.b)
        if k in ("xover", "xunder"):
            return (self.b, self.a)
        if k == "cup":
            return (1, 1)
        if k == "sdot":
            return (2,)
        return ()

    def __str__(self):
        if self.kind in RIGHTMOST:
            return self.kind
        return f"{self.kind} {self.a} {self.b}"


_KINDS = ("merge", "split", "xover", "xunder") + RIGHTMOST


@dataclass(frozen=True)
class Slice:
    passthru: tuple
    gen: Gen
    right: tuple = ()

    def __post_init__(self):
        if self.gen.kind in RIGHTMOST and self.right:
            raise PlacementError(f"{self.gen.kind} must have no strands on its right")

    def domain(self):
        return self.passthru + self.gen.domain() + self.right

    def codomain(self):
        return self.passthru + self.gen.codomain() + self.right

    def __str__(self):
        left = " ".join(map(str, self.passthru))
        right = " ".join(map(str, self.right))
        return f"id {left} | {self.gen} | id {right}".replace("id  |", "id |").rstrip()


_ALLOWED = {
    "A": {"merge", "split", "xover", "xunder"},
    "BD": {"merge", "split", "xover", "xunder", "cup", "cap"},
    "C": {"merge", "split", "xover", "xunder", "sdot", "edot"},
}


@dataclass(frozen=True)
class WebDiagram:
    family: str
    source: tuple
    slices: tuple = ()
    target: tuple = field(default=None)

    def __post_init__(self):
        if self.family not in _ALLOWED:
            raise WebTypeError(f"unknown family {self.family!r}")
        src = WebObject(self.source).labels
        object.__setattr__(self, "source", src)
        cur = src
        for i, s in enumerate(self.slices):
            if s.gen.kind not in _ALLOWED[self.family]:
                raise WebTypeError(f"{s.gen.kind} is not a generator of family {self.family}")
            if s.domain() != cur:
                raise WebTypeError(f"slice {i}: expects {s.domain()}, got {cur}")
            cur = s.codomain()
        if self.target is not None and tuple(self.target) != cur:
            raise WebTypeError(f"target {tuple(self.target)} does not match {cur}")
        object.__setattr__(self, "target", cur)

    def then(self, other: "WebDiagram") -> "WebDiagram":
        """Stack ``other`` on top of this diagram."""
        if other.source != self.target:
            raise WebTypeError(f"cannot stack {other.source} on {self.target}")
        fam = self.family if self.family != "A" else other.family
        return WebDiagram(fam, self.source, self.slices + other.slices)

    def __matmul__(self, other):
        # categorical composition: self after other
        return other.then(self)

    def tensor(self, other: "WebDiagram") -> "WebDiagram":
        """Place ``other`` to the right; the left factor must be an A-web."""
        if self.family != "A" and self.slices:
            raise PlacementError("only A-webs may have strands to their right")
        slices = [Slice(s.passthru, s.gen, s.right + other.source) for s in self.slices]
        slices += [Slice(self.target + s.passthru, s.gen, s.right) for s in other.slices]
        return WebDiagram(other.family if self.family == "A" else self.family,
                          self.source + other.source, tuple(slices))

    def to_text(self):
        src = " ".join(map(str, self.source)) if self.source else "∅"
        lines = [f"family {self.family}; source {src}"]
        lines += [str(s) for s in self.slices]
        return "\n".join(lines) + "\n"

    def __len__(self):
        return len(self.slices)


def identity(labels, family="A"):
    return WebDiagram(family, tuple(labels))


class Web:
    """Incremental builder: track the current labels and append slices."""

    def __init__(self, family, source=()):
        self.family = family
        self.source = tuple(source)
        self.labels = tuple(source)
        self.slices = []

    def _push(self, pos, gen):
        dom = gen.domain()
        if tuple(self.labels[pos:pos + len(dom)]) != dom:
            raise WebTypeError(
                f"{gen} at {pos} needs {dom}, found {self.labels[pos:pos + len(dom)]}"
            )
        s = Slice(self.labels[:pos], gen, self.labels[pos + len(dom):])
        self.slices.append(s)
        self.labels = s.codomain()
        return self

    def merge(self, pos):
        return self._push(pos, Gen("merge", self.labels[pos], self.labels[pos + 1]))

    def split(self, pos, a, b):
        return self._push(pos, Gen("split", a, b))

    def xover(self, pos):
        return self._push(pos, Gen("xover", self.labels[pos], self.labels[pos + 1]))

    def xunder(self, pos):
        return self._push(pos, Gen("xunder", self.labels[pos], self.labels[pos + 1]))

    def cup(self):
        if self.family == "C":
            self._push(len(self.labels), Gen("sdot"))
            return self.split(len(self.labels) - 1, 1, 1)
        return self._push(len(self.labels), Gen("cup"))

    def cap(self):
        if self.family == "C":
            self.merge(len(self.labels) - 2)
            return self._push(len(self.labels) - 1, Gen("edot"))
        return self._push(len(self.labels) - 2, Gen("cap"))

    def sdot(self):
        return self._push(len(self.labels), Gen("sdot"))

    def edot(self):
        return self._push(len(self.labels) - 1, Gen("edot"))

    def build(self) -> WebDiagram:
        return WebDiagram(self.family, self.source, tuple(self.slices))


# text format

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<word>[A-Za-z∅]+)|(?P<bar>\|)|(?P<at>@\d+))")


def _tokens(line, lineno):
    pos = 0
    out = []
    line = line.rstrip()
    while pos < len(line):
        m = _TOKEN.match(line, pos)
        if not m or m.end() == pos:
            raise WebSyntaxError(f"line {lineno}, col {pos + 1}: unexpected {line[pos:]!r}")
        kind = m.lastgroup
        out.append((kind, m.group(kind), pos + 1))
        pos = m.end()
    return out


def _ints(toks, lineno):
    vals = []
    for kind, val, col in toks:
        if kind != "int":
            raise WebSyntaxError(f"line {lineno}, col {col}: expected a label, got {val!r}")
        vals.append(int(val))
    return tuple(vals)


def _parse_gen(toks, lineno):
    if not toks or toks[0][0] != "word" or toks[0][1] not in _KINDS:
        col = toks[0][2] if toks else 1
        raise WebSyntaxError(f"line {lineno}, col {col}: expected a generator")
    kind = toks[0][1]
    args = _ints(toks[1:], lineno)
    if kind in RIGHTMOST:
        if args:
            raise WebSyntaxError(f"line {lineno}: {kind} takes no labels")
        return Gen(kind)
    if len(args) != 2:
        raise WebSyntaxError(f"line {lineno}: {kind} takes two labels")
    return Gen(kind, *args)


def parse(text: str) -> WebDiagram:
    """Parse the line-oriented diagram format.

    Statements are separated by newlines or ';'.  The header gives the family
    and the source object; each further statement is one slice, written
    either in full ("id 1 | merge 1 1 | id 2") or as a bare generator with an
    optional "@k" strand offset.  Bare cups, caps and dots default to the
    right end.
    """
    stmts = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0]
        for part in line.split(";"):
            if part.strip():
                stmts.append((lineno, part))
    if len(stmts) < 2:
        raise WebSyntaxError("expected 'family X' and 'source ...' statements")
    (l1, fam), (l2, src) = stmts[0], stmts[1]
    t = _tokens(fam, l1)
    if len(t) != 2 or t[0][1] != "family" or t[1][1] not in _ALLOWED:
        raise WebSyntaxError(f"line {l1}: expected 'family A|BD|C'")
    family = t[1][1]
    t = _tokens(src, l2)
    if not t or t[0][1] != "source":
        raise WebSyntaxError(f"line {l2}: expected 'source'")
    rest = t[1:]
    source = () if len(rest) == 1 and rest[0][1] == "∅" else _ints(rest, l2)
    web = Web(family, source)
    for lineno, stmt in stmts[2:]:
        toks = _tokens(stmt, lineno)
        bars = [i for i, tk in enumerate(toks) if tk[0] == "bar"]
        if bars:
            closed = len(toks) > bars[-1] + 1 and toks[bars[-1] + 1][1] == "id"
            if len(bars) != 2 or toks[0][1] != "id" or not closed:
                raise WebSyntaxError(f"line {lineno}: expected 'id L* | gen | id R*'")
            left = _ints(toks[1:bars[0]], lineno)
            gen = _parse_gen(toks[bars[0] + 1:bars[1]], lineno)
            right = _ints(toks[bars[1] + 2:], lineno)
            if gen.kind in RIGHTMOST and right:
                raise PlacementError(f"line {lineno}: {gen.kind} must be rightmost")
            s = Slice(left, gen, right)
            if s.domain() != web.labels:
                raise WebTypeError(f"line {lineno}: slice expects {s.domain()}, have {web.labels}")
            web.slices.append(s)
            web.labels = s.codomain()
            continue
        at = None
        if toks and toks[-1][0] == "at":
            at = int(toks[-1][1][1:])
            toks = toks[:-1]
        gen = _parse_gen(toks, lineno)
        width = len(gen.domain())
        if at is None:
            at = len(web.labels) - width if gen.kind in RIGHTMOST else 0
        if at < 0 or at + width > len(web.labels):
            raise WebTypeError(f"line {lineno}: no strands for {gen.kind} at @{at}")
        if gen.kind in RIGHTMOST and at + width != len(web.labels):
            raise PlacementError(f"line {lineno}: {gen.kind} must be rightmost")
        if gen.kind not in _ALLOWED[family]:
            raise WebTypeError(f"line {lineno}: {gen.kind} is not allowed in family {family}")
        try:
            web._push(at, gen)
        except WebTypeError as exc:
            raise WebTypeError(f"line {lineno}: {exc}") from None
    return web.build()


# evaluation


@dataclass(frozen=True)
class Functor:
    """Evaluation functor: diagram family, flavor of the powers, and n."""

    family: str
    flavor: str
    n: int

    def __post_init__(self):
        if self.family not in _ALLOWED:
            raise ValueError(f"unknown family {self.family!r}")
        if self.flavor not in (EXT, SYM):
            raise ValueError(f"unknown flavor {self.flavor!r}")
        if self.needs_even and self.n % 2:
            raise ParityError(f"{self.name} needs n even, got n={self.n}")

    @property
    def name(self):
        return f"{self.family.lower()}-{self.flavor}"

    @property
    def needs_even(self):
        return (self.family, self.flavor) in (("BD", SYM), ("C", EXT))

    @property
    def zspec(self) -> ZSpec:
        return ZSpec.ext(self.n) if self.flavor == EXT else ZSpec.sym(self.n)

    @property
    def coideal(self):
        """The coideal acting on the images: so or sp."""
        if self.family == "A":
            return None
        return {("BD", EXT): "so", ("BD", SYM): "sp", ("C", EXT): "sp", ("C", SYM): "so"}[
            (self.family, self.flavor)
        ]

    def space(self, labels):
        return TensorSpace(self.n, tuple((self.flavor, a) for a in labels))

    def accepts(self, family):
        return family == "A" or family == self.family


FUNCTORS = ("a-ext", "a-sym", "bd-ext", "bd-sym", "c-ext", "c-sym")


def functor(name: str, n: int) -> Functor:
    fam, flav = name.split("-")
    return Functor(fam.upper(), flav, n)


@lru_cache(maxsize=None)
def _local(fun: Functor, gen: Gen):
    f, n = fun.flavor, fun.n
    k = gen.kind
    if k == "merge":
        return lambda key: merge_local(f, key[0], key[1])
    if k == "split":
        a, b = gen.a, gen.b
        return lambda key: split_local(f, a, b, key[0])
    if k in ("xover", "xunder"):
        kind = "over" if k == "xover" else "under"
        return lambda key: cross_local(f, kind, key[0], key[1])
    bd_side = (fun.family, f) in (("BD", EXT), ("C", SYM))
    if k == "cup":
        img = cup_bd_local(n) if bd_side else cup_c_local(n)
        return lambda key: img
    if k == "cap":
        return (lambda key: cap_bd_local(n, *key)) if bd_side else (lambda key: cap_c_local(n, *key))
    if k == "sdot":
        img = sdot_bd_local(n) if bd_side else sdot_c_local(n)
        return lambda key: img
    if k == "edot":
        return (lambda key: edot_bd_local(n, key[0])) if bd_side else (lambda key: edot_c_local(n, key[0]))
    raise WebTypeError(k)


def apply_slice(fun: Functor, s: Slice, vec):
    fn = _local(fun, s.gen)
    p = len(s.passthru)
    w = len(s.gen.domain())
    out = {}
    for key, c in vec.items():
        img = fn(key[p:p + w])
        if not img:
            continue
        head, tail = key[:p], key[p + w:]
        one = c is ONE
        for part, v in img.items():
            _add(out, head + part + tail, v if one else c if v is ONE else c * v)
    return out


def dominant_columns(space):
    """Indices of basis tensors whose gl_n weight is dominant."""
    out = []
    n = space.n
    for c, key in enumerate(space.basis()):
        mu = [0] * (n + 1)
        for w in key:
            for x in w:
                mu[x] += 1
        if all(mu[i] >= mu[i + 1] for i in range(1, n)):
            out.append(c)
    return out


def evaluate(d: WebDiagram, fun, columns=None) -> SparseMat:
    """Matrix of the diagram under ``fun`` (a Functor or a (family, flavor, n) triple).

    With ``columns`` only those source basis vectors are pushed through;
    the other columns of the result are left empty.
    """
    if not isinstance(fun, Functor):
        fun = Functor(*fun)
    if not fun.accepts(d.family):
        raise WebTypeError(f"functor {fun.name} cannot evaluate a {d.family}-web")
    for s in d.slices:
        if s.gen.kind not in _ALLOWED[fun.family]:
            raise WebTypeError(f"{s.gen.kind} has no image under {fun.name}")
    src, dst = fun.space(d.source), fun.space(d.target)
    index = dst.index
    basis = src.basis()
    picked = range(len(basis)) if columns is None else columns
    columns = {}
    for c in picked:
        key = basis[c]
        vec = {key: ONE}
        for s in d.slices:
            vec = apply_slice(fun, s, vec)
            if not vec:
                break
        if vec:
            columns[c] = {index(k): v for k, v in vec.items()}
    return SparseMat.from_columns(dst.dim, src.dim, columns, dst, src)


# relations


class FormalCombo:
    """Linear combination of diagrams with common boundary.

    Coefficients are scalars or callables taking the Functor, so that
    z-dependent values are resolved per evaluation.
    """

    def __init__(self, terms, source=None, target=None):
        self.terms = [(c, d) for c, d in terms]
        if self.terms:
            source = self.terms[0][1].source
            target = self.terms[0][1].target
        for _, d in self.terms:
            if d.source != source or d.target != target:
                raise WebTypeError("terms of a combination must share boundary objects")
        self.source, self.target = tuple(source), tuple(target)

    @classmethod
    def of(cls, d, coef=1):
        return cls([(coef, d)])

    @property
    def family(self):
        fams = {d.family for _, d in self.terms} - {"A"}
        return fams.pop() if fams else "A"

    def evaluate(self, fun: Functor, columns=None) -> SparseMat:
        rows = fun.space(self.target).dim
        cols = fun.space(self.source).dim
        acc = SparseMat.zero(rows, cols)
        for coef, d in self.terms:
            c = coef(fun) if callable(coef) else as_ratfunc(coef)
            if c.is_zero():
                continue
            acc = acc + evaluate(d, fun, columns).scale(c).with_bases(None, None)
        return acc


@dataclass
class Report:
    entries: list = field(default_factory=list)

    def add(self, fixture, functor_name, n, status, witness=None, **extra):
        e = {"fixture": fixture, "functor": functor_name, "n": n, "status": status}
        if witness is not None:
            e["witness"] = witness
        e.update(extra)
        self.entries.append(e)

    def extend(self, other: "Report"):
        self.entries.extend(other.entries)

    @property
    def passed(self):
        return all(e["status"] in ("PASS", "EXPECTED", "SKIP") for e in self.entries)

    def failures(self):
        return [e for e in self.entries if e["status"] == "FAIL"]

    def counts(self):
        out = {}
        for e in self.entries:
            out[e["status"]] = out.get(e["status"], 0) + 1
        return out

    def to_json(self):
        return {"schema": 1, "entries": self.entries, "counts": self.counts()}


def _witness(lhs_m, rhs_m, fun, lhs: FormalCombo):
    d = lhs_m.diff_witness(rhs_m)
    if d is None:
        return None
    (r, c), v = d
    src = fun.space(lhs.source).basis()
    dst = fun.space(lhs.target).basis()
    return {
        "row": [list(w) for w in dst[r]],
        "col": [list(w) for w in src[c]],
        "lhs": str(lhs_m[r, c]),
        "rhs": str(rhs_m[r, c]),
    }


def check_relation(lhs, rhs, functors, n_range, name="relation", dominant=False) -> Report:
    """Compare two combinations under each functor name and each n.

    ``dominant`` compares only columns of dominant gl_n weight.  Both sides
    are equivariant for the relevant algebra B (gl_n itself, or a coideal
    whose generators have leading term F_i), and U = B U^0 U^+, so every
    vector is B applied to gl_n-highest weight vectors, which sit in
    dominant weight spaces.  Agreement there is agreement everywhere.
    """
    if isinstance(lhs, WebDiagram):
        lhs = FormalCombo.of(lhs)
    if isinstance(rhs, WebDiagram):
        rhs = FormalCombo.of(rhs)
    if lhs.source != rhs.source or lhs.target != rhs.target:
        raise WebTypeError(f"{name}: boundaries differ")
    rep = Report()
    for fname in functors:
        for n in n_range:
            try:
                fun = functor(fname, n)
            except ParityError:
                continue
            cols = dominant_columns(fun.space(lhs.source)) if dominant else None
            L = lhs.evaluate(fun, cols)
            R = rhs.evaluate(fun, cols)
            w = _witness(L, R, fun, lhs)
            rep.add(name, fname, n, "PASS" if w is None else "FAIL", w)
    return rep


class Zero(Exception):
    """Raised while building a ladder when a label would become negative."""


class Ladder:
    """Builder over "virtual" strands whose labels may be zero.

    Zero-labeled strands are erased from the resulting diagram, and any
    negative label makes the whole diagram zero (``build`` returns None).
    Positions are virtual strand indices.
    """

    def __init__(self, family, labels):
        self.family = family
        self.virtual = [int(x) for x in labels]
        self.dead = any(x < 0 for x in self.virtual)
        self.web = Web(family, tuple(x for x in self.virtual if x > 0))

    def _pos(self, v):
        return sum(1 for x in self.virtual[:v] if x > 0)

    def merge(self, v):
        if self.dead:
            return self
        a, b = self.virtual[v], self.virtual[v + 1]
        if a > 0 and b > 0:
            self.web.merge(self._pos(v))
        self.virtual[v:v + 2] = [a + b]
        return self

    def split(self, v, a, b):
        if self.dead:
            return self
        if self.virtual[v] != a + b:
            raise WebTypeError(f"cannot split {self.virtual[v]} into {a}+{b}")
        if a < 0 or b < 0:
            self.dead = True
            return self
        if a > 0 and b > 0:
            self.web.split(self._pos(v), a, b)
        self.virtual[v:v + 1] = [a, b]
        return self

    def _cross(self, v, kind):
        if self.dead:
            return self
        a, b = self.virtual[v], self.virtual[v + 1]
        if a > 0 and b > 0:
            getattr(self.web, kind)(self._pos(v))
        self.virtual[v], self.virtual[v + 1] = b, a
        return self

    def xover(self, v):
        return self._cross(v, "xover")

    def xunder(self, v):
        return self._cross(v, "xunder")

    def E(self, i, r=1):
        """Rung moving r from strand i+1 to strand i."""
        if self.dead or r == 0:
            return self
        b = self.virtual[i + 1]
        if b - r < 0:
            self.dead = True
            return self
        self.split(i + 1, r, b - r)
        return self.merge(i)

    def F(self, i, r=1):
        """Rung moving r from strand i to strand i+1."""
        if self.dead or r == 0:
            return self
        a = self.virtual[i]
        if a - r < 0:
            self.dead = True
            return self
        self.split(i, a - r, r)
        return self.merge(i + 1)

    def cup(self):
        if not self.dead:
            self.web.cup()
            self.virtual += [1, 1]
        return self

    def cap(self):
        if not self.dead:
            if self.virtual[-2:] != [1, 1]:
                raise WebTypeError("cap needs two thin strands at the right")
            self.web.cap()
            del self.virtual[-2:]
        return self

    def sdot(self):
        if not self.dead:
            self.web.sdot()
            self.virtual.append(2)
        return self

    def edot(self):
        if not self.dead:
            if self.virtual[-1] != 2:
                raise WebTypeError("end dot needs a 2-strand at the right")
            self.web.edot()
            self.virtual.pop()
        return self

    # type D and C gadgets on the last strands

    def Ek_so(self):
        """Raise the last two labels by one each."""
        n = len(self.virtual)
        self.cup()
        self.xunder(n - 1)
        self.merge(n - 2)
        return self.merge(n - 1)

    def Fk_so(self):
        """Lower the last two labels by one each."""
        n = len(self.virtual)
        if self.dead:
            return self
        a, b = self.virtual[n - 2], self.virtual[n - 1]
        if a < 1 or b < 1:
            self.dead = True
            return self
        self.split(n - 1, b - 1, 1)
        self.split(n - 2, a - 1, 1)
        self.xover(n - 1)
        return self.cap()

    def Ek_sp(self):
        """Raise the last label by two."""
        n = len(self.virtual)
        self.sdot()
        return self.merge(n - 1)

    def Fk_sp(self):
        """Lower the last label by two."""
        n = len(self.virtual)
        if self.dead:
            return self
        if self.virtual[n - 1] < 2:
            self.dead = True
            return self
        self.split(n - 1, self.virtual[n - 1] - 2, 2)
        return self.edot()

    @property
    def labels(self):
        return tuple(self.virtual)

    def build(self):
        """The diagram, or None if it is zero."""
        if self.dead:
            return None
        return self.web.build()

    def boundary(self, source):
        return tuple(x for x in source if x > 0), tuple(x for x in self.virtual if x > 0)

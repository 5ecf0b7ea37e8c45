"""Exact arithmetic in Q(q).

Laurent polynomials carry rational coefficients (``gmpy2.mpq``).  A
``RatFunc`` is a reduced quotient of two of them, kept in a canonical form
so that equality is structural: the numerator and denominator share no
nontrivial factor, the denominator has lowest exponent 0 and is monic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from gmpy2 import mpq

__all__ = [
    "LaurentPoly",
    "RatFunc",
    "ZSpec",
    "DenominatorVanishes",
    "Q",
    "ONE",
    "ZERO",
    "qint",
    "qfactorial",
    "qbinom",
    "zbracket",
    "evaluate_at",
    "as_ratfunc",
]


class DenominatorVanishes(ZeroDivisionError):
    """The denominator of a rational function is zero at the requested point."""


def _coef(x):
    if isinstance(x, str):
        return mpq(Fraction(x))
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    return mpq(x)


class LaurentPoly:
    """Finite sum of c_e q^e with exact rational c_e, stored sparsely."""

    __slots__ = ("_c", "_h")

    def __init__(self, coeffs=None):
        c = {}
        if coeffs:
            for e, v in coeffs.items():
                v = _coef(v)
                if v:
                    c[int(e)] = v
        self._c = c
        self._h = None

    @classmethod
    def _raw(cls, c):
        p = cls.__new__(cls)
        p._c = c
        p._h = None
        return p

    @classmethod
    def monomial(cls, e, c=1):
        c = _coef(c)
        return cls._raw({int(e): c} if c else {})

    @property
    def coeffs(self):
        return dict(self._c)

    def items(self):
        return self._c.items()

    def is_zero(self):
        return not self._c

    def is_one(self):
        return len(self._c) == 1 and self._c.get(0) == 1

    def min_exp(self):
        return min(self._c)

    def max_exp(self):
        return max(self._c)

    def __add__(self, other):
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly.monomial(0, other)
        if len(self._c) < len(other._c):
            self, other = other, self
        c = dict(self._c)
        for e, v in other._c.items():
            w = c.get(e)
            if w is None:
                c[e] = v
            else:
                w = w + v
                if w:
                    c[e] = w
                else:
                    del c[e]
        return LaurentPoly._raw(c)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({e: -v for e, v in self._c.items()})

    def __sub__(self, other):
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly.monomial(0, other)
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, LaurentPoly):
            v = _coef(other)
            if not v:
                return LaurentPoly._raw({})
            return LaurentPoly._raw({e: w * v for e, w in self._c.items()})
        a, b = self._c, other._c
        if len(a) == 1:
            (e0, v0), = a.items()
            return LaurentPoly._raw({e0 + e: v0 * v for e, v in b.items()})
        if len(b) == 1:
            (e0, v0), = b.items()
            return LaurentPoly._raw({e0 + e: v0 * v for e, v in a.items()})
        c = {}
        for e1, v1 in a.items():
            for e2, v2 in b.items():
                e = e1 + e2
                c[e] = c.get(e, 0) + v1 * v2
        return LaurentPoly._raw({e: v for e, v in c.items() if v})

    __rmul__ = __mul__

    def shift(self, k):
        return LaurentPoly._raw({e + k: v for e, v in self._c.items()})

    def bar(self):
        """Substitute q -> q^{-1}."""
        return LaurentPoly._raw({-e: v for e, v in self._c.items()})

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self._c == other._c
        if isinstance(other, (int, Fraction)) or type(other) is type(mpq(0)):
            return self == LaurentPoly.monomial(0, other)
        return NotImplemented

    def __hash__(self):
        if self._h is None:
            self._h = hash(frozenset(self._c.items()))
        return self._h

    def evaluate(self, t, p=None):
        """Evaluate at q = t, either exactly or in F_p when ``p`` is given."""
        if p is None:
            t = _coef(t)
            return sum((v * t ** e for e, v in self._c.items()), mpq(0))
        t %= p
        tinv = pow(t, -1, p) if any(e < 0 for e in self._c) else None
        acc = 0
        for e, v in self._c.items():
            num = int(v.numerator) % p
            den = int(v.denominator)
            if den != 1:
                num = num * pow(den, -1, p) % p
            base = pow(t, e, p) if e >= 0 else pow(tinv, -e, p)
            acc = (acc + num * base) % p
        return acc

    def __repr__(self):
        return f"LaurentPoly({ {e: str(v) for e, v in sorted(self._c.items())} })"

    def __str__(self):
        if not self._c:
            return "0"
        out = []
        for e in sorted(self._c, reverse=True):
            v = self._c[e]
            if e == 0:
                term = str(v)
            else:
                mon = "q" if e == 1 else f"q^{e}"
                if v == 1:
                    term = mon
                elif v == -1:
                    term = "-" + mon
                else:
                    term = f"{v}*{mon}"
            out.append(term)
        return " + ".join(out).replace("+ -", "- ")


# dense polynomial helpers (lists of mpq, index = degree) used for gcds

def _dense(p: LaurentPoly, shift: int):
    deg = p.max_exp() - shift
    out = [mpq(0)] * (deg + 1)
    for e, v in p.items():
        out[e - shift] = v
    return out


def _trim(a):
    while a and not a[-1]:
        a.pop()
    return a


def _divmod(a, b):
    a = list(a)
    q = [mpq(0)] * max(len(a) - len(b) + 1, 1)
    lead = b[-1]
    while len(a) >= len(b) and a:
        k = len(a) - len(b)
        f = a[-1] / lead
        q[k] = f
        for i, bv in enumerate(b):
            a[i + k] -= f * bv
        a.pop()
        _trim(a)
    return q, a


def _gcd(a, b):
    a, b = list(a), list(b)
    while b:
        _, r = _divmod(a, b)
        a, b = b, r
    lead = a[-1]
    return [v / lead for v in a]


def _from_dense(a, shift):
    return LaurentPoly._raw({i + shift: v for i, v in enumerate(a) if v})


class RatFunc:
    """Element of Q(q) in canonical reduced form."""

    __slots__ = ("num", "den", "_h")

    def __init__(self, num=0, den=None):
        if not isinstance(num, LaurentPoly):
            num = LaurentPoly.monomial(0, num)
        if den is None:
            self.num, self.den = num, _ONE_POLY
        else:
            if not isinstance(den, LaurentPoly):
                den = LaurentPoly.monomial(0, den)
            if den.is_zero():
                raise ZeroDivisionError("zero denominator")
            self.num, self.den = _canonical(num, den)
        self._h = None

    @classmethod
    def _make(cls, num, den):
        r = cls.__new__(cls)
        r.num, r.den, r._h = num, den, None
        return r

    @classmethod
    def poly(cls, p: LaurentPoly):
        return cls._make(p, _ONE_POLY)

    @classmethod
    def q_power(cls, e, c=1):
        return cls._make(LaurentPoly.monomial(e, c), _ONE_POLY)

    def is_zero(self):
        return self.num.is_zero()

    def is_poly(self):
        return self.den is _ONE_POLY or self.den.is_one()

    def __bool__(self):
        return not self.num.is_zero()

    def __add__(self, other):
        if not isinstance(other, RatFunc):
            other = as_ratfunc(other)
        if self.is_poly() and other.is_poly():
            return RatFunc._make(self.num + other.num, _ONE_POLY)
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc._make(-self.num, self.den)

    def __sub__(self, other):
        if not isinstance(other, RatFunc):
            other = as_ratfunc(other)
        return self + (-other)

    def __rsub__(self, other):
        return as_ratfunc(other) - self

    def __mul__(self, other):
        if not isinstance(other, RatFunc):
            other = as_ratfunc(other)
        if self.is_poly() and other.is_poly():
            return RatFunc._make(self.num * other.num, _ONE_POLY)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self):
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        if not isinstance(other, RatFunc):
            other = as_ratfunc(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return as_ratfunc(other) * self.inverse()

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if not isinstance(other, RatFunc):
            try:
                other = as_ratfunc(other)
            except TypeError:
                return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._h is None:
            self._h = hash((self.num, self.den))
        return self._h

    def bar(self):
        """Substitute q -> q^{-1}."""
        return RatFunc(self.num.bar(), self.den.bar())

    def evaluate(self, t, p=None):
        return evaluate_at(self, t, p)

    def to_json(self):
        return {
            "num": {str(e): str(v) for e, v in sorted(self.num.items())},
            "den": {str(e): str(v) for e, v in sorted(self.den.items())},
        }

    @classmethod
    def from_json(cls, obj):
        num = LaurentPoly({int(e): v for e, v in obj["num"].items()})
        den = LaurentPoly({int(e): v for e, v in obj["den"].items()})
        return cls(num, den)

    def __repr__(self):
        if self.is_poly():
            return f"RatFunc({self.num})"
        return f"RatFunc(({self.num}) / ({self.den}))"

    def __str__(self):
        if self.is_poly():
            return str(self.num)
        return f"({self.num})/({self.den})"


_ONE_POLY = LaurentPoly.monomial(0, 1)


def _canonical(num: LaurentPoly, den: LaurentPoly):
    if num.is_zero():
        return num, _ONE_POLY
    a, b = num.min_exp(), den.min_exp()
    if len(den._c) == 1:
        (e, v), = den.items()
        return LaurentPoly._raw({k - e: c / v for k, c in num.items()}), _ONE_POLY
    n_dense = _dense(num, a)
    d_dense = _dense(den, b)
    g = _gcd(n_dense, d_dense)
    if len(g) > 1:
        n_dense, r1 = _divmod(n_dense, g)
        d_dense, r2 = _divmod(d_dense, g)
        assert not r1 and not r2
        _trim(n_dense)
        _trim(d_dense)
    lead = d_dense[-1]
    n_dense = [v / lead for v in n_dense]
    d_dense = [v / lead for v in d_dense]
    if len(d_dense) == 1:
        return _from_dense(n_dense, a - b), _ONE_POLY
    return _from_dense(n_dense, a - b), _from_dense(d_dense, 0)


def as_ratfunc(x) -> RatFunc:
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, LaurentPoly):
        return RatFunc.poly(x)
    if isinstance(x, (int, Fraction, str)) or type(x) is type(mpq(0)):
        return RatFunc._make(LaurentPoly.monomial(0, x), _ONE_POLY)
    raise TypeError(f"cannot coerce {type(x).__name__} to RatFunc")


ONE = RatFunc.q_power(0)
ZERO = RatFunc._make(LaurentPoly(), _ONE_POLY)
Q = RatFunc.q_power(1)


def evaluate_at(f: RatFunc, t, p=None):
    """Value of ``f`` at q = t, in F_p if ``p`` is given, else in Q.

    Raises DenominatorVanishes when the (reduced) denominator is zero there.
    """
    f = as_ratfunc(f)
    if p is None:
        t = _coef(t)
        if not t and (f.num._c and f.num.min_exp() < 0 or f.den.min_exp() < 0):
            raise DenominatorVanishes("negative power of q at q = 0")
        d = f.den.evaluate(t)
        if not d:
            raise DenominatorVanishes(f"denominator vanishes at q = {t}")
        return f.num.evaluate(t) / d
    if t % p == 0:
        raise DenominatorVanishes("q = 0")
    d = f.den.evaluate(t, p)
    if d == 0:
        raise DenominatorVanishes(f"denominator vanishes at q = {t} mod {p}")
    return f.num.evaluate(t, p) * pow(d, -1, p) % p


# quantum numbers

_QINT_CACHE: dict = {}


def qint(s: int, d: int = 1) -> RatFunc:
    """[s]_d = (q^{ds} - q^{-ds}) / (q^d - q^{-d})."""
    key = (s, d)
    hit = _QINT_CACHE.get(key)
    if hit is not None:
        return hit
    if s == 0:
        out = ZERO
    else:
        m = abs(s)
        c = {d * (m - 1 - 2 * j): mpq(1) for j in range(m)}
        p = LaurentPoly._raw(c)
        out = RatFunc.poly(p if s > 0 else -p)
    _QINT_CACHE[key] = out
    return out


def qfactorial(s: int, d: int = 1) -> RatFunc:
    out = ONE
    for j in range(1, s + 1):
        out = out * qint(j, d)
    return out


def qbinom(s: int, t: int, d: int = 1) -> RatFunc:
    """Quantum binomial by the product formula; defined for any integer s."""
    if t < 0:
        return ZERO
    num = ONE
    for j in range(t):
        num = num * qint(s - j, d)
    return num / qfactorial(t, d)


@dataclass(frozen=True)
class ZSpec:
    """The specialization z = sign * q^(exponent_sign * n)."""

    sign: int
    exponent_sign: int
    n: int

    def __post_init__(self):
        if self.sign not in (1, -1) or self.exponent_sign not in (1, -1):
            raise ValueError("sign and exponent_sign must be +1 or -1")
        if self.n < 1:
            raise ValueError("n must be positive")

    @classmethod
    def ext(cls, n):
        """z = q^n."""
        return cls(1, 1, n)

    @classmethod
    def sym(cls, n):
        """z = -q^{-n}."""
        return cls(-1, -1, n)

    def value(self) -> RatFunc:
        return RatFunc.q_power(self.exponent_sign * self.n, self.sign)


def zbracket(spec: ZSpec, s: int, d: int = 1) -> RatFunc:
    """(z q^{ds} - z^{-1} q^{-ds}) / (q^d - q^{-d}) with z fixed by ``spec``."""
    m = spec.exponent_sign * spec.n + d * s
    if m % d == 0:
        val = qint(m // d, d)
        return val if spec.sign == 1 else -val
    num = LaurentPoly({m: spec.sign, -m: -spec.sign})
    den = LaurentPoly({d: 1, -d: -1})
    return RatFunc(num, den)

"""Exact scalars: rationals, polynomials in seven named variables, rational functions.

Rationals are :class:`fractions.Fraction`.  :class:`Poly7` is a sparse
polynomial over the rationals in the coordinates ``x1, y1, x2, y2, x3, y3, z``.
:class:`RatFun7` is a quotient of polynomials that is never reduced by a
multivariate gcd; its denominator is kept as a product of normalised
polynomial factors so that sums of many terms with the same factors stay
small.  Equality of rational functions is decided by cross-multiplication.
"""

import re
from fractions import Fraction
from functools import reduce

Rational = Fraction

VARS = ("x1", "y1", "x2", "y2", "x3", "y3", "z")
VAR_INDEX = {name: i for i, name in enumerate(VARS)}
NVARS = len(VARS)
_ZERO_EXP = (0,) * NVARS


class PolyParseError(ValueError):
    """Malformed polynomial text; ``column`` is 1-based."""

    def __init__(self, message, column=None):
        self.column = column
        if column is not None:
            message = f"{message} (column {column})"
        super().__init__(message)


class EvaluationError(ZeroDivisionError):
    pass


def var_index(var):
    if isinstance(var, int):
        if 0 <= var < NVARS:
            return var
        raise ValueError(f"variable index out of range: {var}")
    try:
        return VAR_INDEX[var]
    except KeyError:
        raise ValueError(f"unknown variable {var!r}; expected one of {', '.join(VARS)}") from None


def _grlex_key(exp):
    # graded lexicographic: total degree first, then x1 > y1 > ... > z
    return (sum(exp), exp)


class Poly7:
    """Sparse polynomial with rational coefficients in the seven coordinates."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for exp, c in terms.items():
                c = Fraction(c)
                if c:
                    exp = tuple(exp)
                    if len(exp) != NVARS or any(e < 0 for e in exp):
                        raise ValueError(f"bad exponent vector {exp}")
                    clean[exp] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms):
        p = cls.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def const(cls, c):
        return cls({_ZERO_EXP: c})

    @classmethod
    def var(cls, name):
        exp = [0] * NVARS
        exp[var_index(name)] = 1
        return cls({tuple(exp): 1})

    @classmethod
    def parse(cls, text):
        return parse_poly(text)

    @property
    def terms(self):
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def is_zero(self):
        return not self._terms

    def is_constant(self):
        return not self._terms or set(self._terms) == {_ZERO_EXP}

    def constant_value(self):
        return self._terms.get(_ZERO_EXP, Fraction(0))

    def degree(self):
        return max((sum(e) for e in self._terms), default=-1)

    def variables(self):
        """Names of the variables that actually occur."""
        used = set()
        for exp in self._terms:
            used.update(i for i, e in enumerate(exp) if e)
        return [VARS[i] for i in sorted(used)]

    def leading(self):
        exp = max(self._terms, key=_grlex_key)
        return exp, self._terms[exp]

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly7.const(other)
        if not isinstance(other, Poly7):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __neg__(self):
        return Poly7._raw({e: -c for e, c in self._terms.items()})

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly7.const(other)
        if not isinstance(other, Poly7):
            return NotImplemented
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Poly7._raw(out)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly7.const(other)
        if not isinstance(other, Poly7):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            if not other:
                return Poly7()
            return Poly7._raw({e: c * other for e, c in self._terms.items()})
        if not isinstance(other, Poly7):
            return NotImplemented
        out = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e, 0) + c1 * c2
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return Poly7._raw(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only non-negative integer powers")
        result = Poly7.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def diff(self, var):
        i = var_index(var)
        out = {}
        for e, c in self._terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                out[tuple(ne)] = c * e[i]
        return Poly7._raw(out)

    def eval(self, point):
        point = [Fraction(x) for x in point]
        if len(point) != NVARS:
            raise ValueError("a point has exactly seven coordinates")
        total = Fraction(0)
        for e, c in self._terms.items():
            term = c
            for x, k in zip(point, e):
                if k:
                    term *= x ** k
            total += term
        return total

    def eval_float(self, point):
        total = 0.0
        for e, c in self._terms.items():
            term = float(c)
            for x, k in zip(point, e):
                if k:
                    term *= x ** k
            total += term
        return total

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for exp in sorted(self._terms, key=_grlex_key, reverse=True):
            c = self._terms[exp]
            factors = []
            for name, k in zip(VARS, exp):
                if k == 1:
                    factors.append(name)
                elif k:
                    factors.append(f"{name}^{k}")
            mag = abs(c)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = f"{mag}*" + "*".join(factors)
            sign = "-" if c < 0 else "+"
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append(f" {sign} {body}")
        return "".join(parts)

    def __repr__(self):
        return f"Poly7({str(self)!r})"


_FACTOR_RE = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([a-z]\w*)(?:\^(\d+))?)\s*")


def parse_poly(text):
    """Parse ``c*x1^2*y3 - 3/2*z + 1`` style text into a :class:`Poly7`."""
    if not isinstance(text, str):
        raise PolyParseError("polynomial text must be a string")
    s = text
    pos = 0
    n = len(s)
    result = Poly7()
    first = True
    while True:
        while pos < n and s[pos].isspace():
            pos += 1
        if pos >= n:
            if first:
                raise PolyParseError("empty polynomial", pos + 1)
            break
        sign = 1
        if s[pos] in "+-":
            sign = -1 if s[pos] == "-" else 1
            pos += 1
        elif not first:
            raise PolyParseError(f"expected '+' or '-', found {s[pos]!r}", pos + 1)
        first = False
        term = Poly7.const(sign)
        need_factor = True
        while need_factor:
            m = _FACTOR_RE.match(s, pos)
            if not m or m.end() == pos or (m.group(1) is None and m.group(2) is None):
                raise PolyParseError("expected a number or variable", pos + 1)
            if m.group(1) is not None:
                term = term * Fraction(m.group(1))
            else:
                name = m.group(2)
                if name not in VAR_INDEX:
                    raise PolyParseError(f"unknown variable {name!r}", m.start(2) + 1)
                k = int(m.group(3)) if m.group(3) else 1
                term = term * Poly7.var(name) ** k
            pos = m.end()
            if pos < n and s[pos] == "*":
                pos += 1
            else:
                need_factor = False
        result = result + term
    return result


def _normalise_factor(p):
    """Split ``p`` into (scale, monic factor) with leading coefficient 1."""
    _, lc = p.leading()
    return lc, p * (1 / lc)


class RatFun7:
    """Quotient ``num / prod(f ** k for f, k in den_factors)``.

    Denominator factors are nonconstant polynomials with leading coefficient 1;
    constants are folded into the numerator.  Factors are never cancelled
    against the numerator.
    """

    __slots__ = ("num", "_den")

    def __init__(self, num, den=None):
        if isinstance(num, (int, Fraction)):
            num = Poly7.const(num)
        self.num = num
        self._den = {}
        if den is None:
            return
        if isinstance(den, (int, Fraction)):
            den = Poly7.const(den)
        if isinstance(den, Poly7):
            den = {den: 1}
        for f, k in den.items():
            if f.is_zero():
                raise ZeroDivisionError("denominator is identically zero")
            if f.is_constant():
                self.num = self.num * (1 / f.constant_value()) ** k
                continue
            scale, monic = _normalise_factor(f)
            self.num = self.num * (1 / scale) ** k
            self._den[monic] = self._den.get(monic, 0) + k
        if self.num.is_zero():
            self._den = {}

    @classmethod
    def _raw(cls, num, den):
        r = cls.__new__(cls)
        r.num = num
        r._den = den if not num.is_zero() else {}
        return r

    @classmethod
    def from_text(cls, num, den="1"):
        return cls(parse_poly(num), parse_poly(den))

    @property
    def den_factors(self):
        return dict(self._den)

    @property
    def den(self):
        """The denominator expanded as a single polynomial."""
        return reduce(lambda acc, fk: acc * fk[0] ** fk[1], self._den.items(), Poly7.const(1))

    def is_zero(self):
        return self.num.is_zero()

    def _lift(self, target):
        # numerator over the larger denominator `target`
        extra = Poly7.const(1)
        for f, k in target.items():
            m = k - self._den.get(f, 0)
            if m:
                extra = extra * f ** m
        return self.num * extra

    @staticmethod
    def _lcm(d1, d2):
        out = dict(d1)
        for f, k in d2.items():
            if out.get(f, 0) < k:
                out[f] = k
        return out

    @staticmethod
    def coerce(x):
        if isinstance(x, RatFun7):
            return x
        if isinstance(x, Poly7):
            return RatFun7._raw(x, {})
        if isinstance(x, (int, Fraction)):
            return RatFun7._raw(Poly7.const(x), {})
        raise TypeError(f"cannot convert {type(x).__name__} to RatFun7")

    def __add__(self, other):
        try:
            other = RatFun7.coerce(other)
        except TypeError:
            return NotImplemented
        if other.num.is_zero():
            return self
        if self.num.is_zero():
            return other
        if self._den == other._den:
            return RatFun7._raw(self.num + other.num, dict(self._den))
        target = self._lcm(self._den, other._den)
        return RatFun7._raw(self._lift(target) + other._lift(target), target)

    __radd__ = __add__

    def __neg__(self):
        return RatFun7._raw(-self.num, dict(self._den))

    def __sub__(self, other):
        try:
            other = RatFun7.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return RatFun7._raw(self.num * other, dict(self._den))
        try:
            other = RatFun7.coerce(other)
        except TypeError:
            return NotImplemented
        num = self.num * other.num
        if num.is_zero():
            return RatFun7._raw(num, {})
        den = dict(self._den)
        for f, k in other._den.items():
            den[f] = den.get(f, 0) + k
        return RatFun7._raw(num, den)

    __rmul__ = __mul__

    def reciprocal(self):
        if self.num.is_zero():
            raise ZeroDivisionError("reciprocal of the zero rational function")
        return RatFun7(self.den, self.num)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        return self * RatFun7.coerce(other).reciprocal()

    def __rtruediv__(self, other):
        return RatFun7.coerce(other) * self.reciprocal()

    def __pow__(self, n):
        if n < 0:
            return self.reciprocal() ** (-n)
        return RatFun7._raw(self.num ** n, {f: k * n for f, k in self._den.items()})

    def diff(self, var):
        """Quotient rule; only factors that involve ``var`` gain one power."""
        dn = self.num.diff(var)
        moving = [(f, k, f.diff(var)) for f, k in self._den.items()]
        moving = [(f, k, df) for f, k, df in moving if not df.is_zero()]
        if not moving:
            return RatFun7._raw(dn, dict(self._den))
        num = dn * reduce(lambda acc, t: acc * t[0], moving, Poly7.const(1))
        for i, (f, k, df) in enumerate(moving):
            others = Poly7.const(1)
            for j, (g, _, _) in enumerate(moving):
                if j != i:
                    others = others * g
            num = num - self.num * df * others * k
        den = dict(self._den)
        for f, k, _ in moving:
            den[f] = k + 1
        return RatFun7._raw(num, den)

    def equals(self, other):
        other = RatFun7.coerce(other)
        target = self._lcm(self._den, other._den)
        return self._lift(target) == other._lift(target)

    def __eq__(self, other):
        try:
            return self.equals(other)
        except TypeError:
            return NotImplemented

    __hash__ = None

    def eval(self, point):
        value = self.num.eval(point)
        d = Fraction(1)
        for f, k in self._den.items():
            fv = f.eval(point)
            if fv == 0:
                raise EvaluationError(f"denominator factor {f} vanishes at {tuple(map(str, point))}")
            d *= fv ** k
        return value / d

    def eval_float(self, point):
        value = self.num.eval_float(point)
        for f, k in self._den.items():
            value /= f.eval_float(point) ** k
        return value

    def __str__(self):
        if not self._den:
            return str(self.num)
        den = "*".join(f"({f})" + (f"^{k}" if k > 1 else "") for f, k in self._den.items())
        return f"({self.num})/{den}"

    def __repr__(self):
        return f"RatFun7({str(self)!r})"


def poly_diff(p, var):
    return p.diff(var)


def ratfun_equal(a, b):
    a, b = RatFun7.coerce(a), RatFun7.coerce(b)
    return a.equals(b)


def ratfun_eval(a, point):
    return RatFun7.coerce(a).eval(point)

"""Rational functions whose denominators are products of binomials ``1 - c*m``.

Every denominator produced in this package comes out of the Omega
functional, so it is a product of factors ``(1 - c*m)`` with ``c`` rational
and ``m`` a monomial. Keeping the denominator factored gives a cheap
least common multiple for addition and avoids multivariate gcd entirely.
Equality is decided by cross-multiplication.
"""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational

from ..errors import DivergentOmega
from .laurent import REGISTRY, LaurentPoly, pack, unpack


def _binomial(c, mkey) -> LaurentPoly:
    return LaurentPoly._raw({0: 1, mkey: -c} if mkey else {0: 1 - c})


def _normalize_factor(c, mkey):
    """Return ``(prefactor, (c', m'))`` with ``1/(1-c m) = prefactor/(1-c' m')`` and ``m' > 0``.

    Returns ``(scalar, None)`` when the factor is a nonzero constant.
    """
    c = Fraction(c)
    if mkey == 0:
        if c == 1:
            raise ZeroDivisionError("denominator factor 1 - 1")
        return LaurentPoly.const(1 / (1 - c)), None
    if mkey > 0:
        return None, (c, mkey)
    # 1 - c m = (-c m)(1 - m^{-1}/c)
    return LaurentPoly._raw({-mkey: -1 / c}), (1 / c, -mkey)


class RatFunc:
    """``num / prod (1 - c*m)^e`` with the factor dict ``{(c, m): e}``."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        self.num = LaurentPoly.coerce(num)
        self.den = {}
        if den:
            pre = LaurentPoly.const(1)
            for (c, mkey), e in den.items():
                if e < 0:
                    raise ValueError("denominator exponents must be positive")
                if not e:
                    continue
                p, f = _normalize_factor(c, mkey)
                if p is not None:
                    pre = pre * p ** e
                if f is not None:
                    self.den[f] = self.den.get(f, 0) + e
            if pre != 1:
                self.num = self.num * pre
        if not self.num:
            self.den = {}

    @classmethod
    def _raw(cls, num, den):
        obj = cls.__new__(cls)
        obj.num = num
        obj.den = den if num else {}
        return obj

    @classmethod
    def coerce(cls, x) -> "RatFunc":
        if isinstance(x, RatFunc):
            return x
        return cls(LaurentPoly.coerce(x))

    @classmethod
    def inverse_binomial(cls, c, mkey, power=1) -> "RatFunc":
        return cls(LaurentPoly.const(1), {(c, mkey): power})

    # queries --------------------------------------------------------------
    @property
    def numerator(self) -> LaurentPoly:
        return self.num

    @property
    def denominator(self) -> LaurentPoly:
        out = LaurentPoly.const(1)
        for (c, mkey), e in self.den.items():
            out = out * _binomial(c, mkey) ** e
        return out

    def is_zero(self) -> bool:
        return not self.num

    def is_polynomial(self) -> bool:
        return not self.den

    def __bool__(self):
        return bool(self.num)

    # arithmetic ------------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, RatFunc):
            if isinstance(other, (int, Rational, LaurentPoly)):
                other = RatFunc(other)
            else:
                return NotImplemented
        if not other.num:
            return self
        if not self.num:
            return other
        lcm = dict(self.den)
        for f, e in other.den.items():
            if lcm.get(f, 0) < e:
                lcm[f] = e
        return RatFunc._raw(
            self.num * _cofactor(lcm, self.den) + other.num * _cofactor(lcm, other.den), lcm
        )

    __radd__ = __add__

    def __neg__(self):
        return RatFunc._raw(-self.num, dict(self.den))

    def __sub__(self, other):
        return self + (-RatFunc.coerce(other))

    def __rsub__(self, other):
        return RatFunc.coerce(other) + (-self)

    def __mul__(self, other):
        if not isinstance(other, RatFunc):
            if isinstance(other, (int, Rational, LaurentPoly)):
                return RatFunc._raw(self.num * other, dict(self.den))
            return NotImplemented
        den = dict(self.den)
        for f, e in other.den.items():
            den[f] = den.get(f, 0) + e
        return RatFunc._raw(self.num * other.num, den)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative powers are not supported")
        return RatFunc._raw(self.num ** e, {f: k * e for f, k in self.den.items()})

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)):
            return RatFunc._raw(self.num * (1 / Fraction(other)), dict(self.den))
        if isinstance(other, LaurentPoly) and other.is_monomial():
            return RatFunc._raw(self.num / other, dict(self.den))
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, RatFunc):
            if isinstance(other, (int, Rational, LaurentPoly)):
                other = RatFunc(other)
            else:
                return NotImplemented
        lcm = dict(self.den)
        for f, e in other.den.items():
            if lcm.get(f, 0) < e:
                lcm[f] = e
        return self.num * _cofactor(lcm, self.den) == other.num * _cofactor(lcm, other.den)

    __hash__ = None

    # maps ------------------------------------------------------------------
    def conjugate(self) -> "RatFunc":
        num = self.num.conjugate()
        den = {}
        for (c, mkey), e in self.den.items():
            den[(c, -mkey)] = e
        return RatFunc(num, den)

    def subs(self, values: dict) -> "RatFunc":
        """Substitute numbers or monomials for variables."""
        num = self.num.subs(values)
        den = {}
        for (c, mkey), e in self.den.items():
            m = LaurentPoly._raw({mkey: c}).subs(values)
            if not m.is_monomial():
                if not m:
                    continue  # factor became 1
                raise ValueError("substitution must map monomials to monomials")
            ((nk, nc),) = m.terms.items()
            den[(nc, nk)] = den.get((nc, nk), 0) + e
        return RatFunc(num, den)

    def evaluate(self, values: dict) -> Fraction:
        r = self.subs(values)
        if r.den or not r.num.is_constant():
            raise ValueError("variables left after evaluation")
        return Fraction(r.num.constant_term())

    def __str__(self):
        if not self.den:
            return str(self.num)
        facs = []
        for (c, mkey), e in sorted(self.den.items(), key=lambda t: (unpack(t[0][1]), t[0][0])):
            b = str(_binomial(c, mkey))
            facs.append(f"({b})" + (f"^{e}" if e > 1 else ""))
        return f"({self.num}) / (" + "*".join(facs) + ")"

    def __repr__(self):
        return f"RatFunc({self})"

    def to_json_obj(self):
        return {
            "numerator": self.num.to_json_obj(),
            "denominator_factors": [
                {"c": str(c), "monomial": LaurentPoly._raw({mkey: 1}).to_json_obj(), "power": e}
                for (c, mkey), e in sorted(self.den.items(), key=lambda t: (unpack(t[0][1]), t[0][0]))
            ],
        }


def _cofactor(lcm, den) -> LaurentPoly:
    out = LaurentPoly.const(1)
    for f, e in lcm.items():
        k = e - den.get(f, 0)
        if k:
            out = out * _binomial(*f) ** k
    return out


def omega_product(f) -> RatFunc:
    """Omega of an integer Laurent polynomial: ``prod_m (1 - m)^(-c_m)``.

    Zero when the constant term is negative; raises ``DivergentOmega`` when
    it is positive.
    """
    f = LaurentPoly.coerce(f)
    if not f.has_integer_coefficients():
        raise ValueError("Omega needs integer coefficients")
    c0 = f.constant_term()
    if c0 > 0:
        raise DivergentOmega(f"constant term {c0} > 0 in Omega({f})")
    if c0 < 0:
        return RatFunc(LaurentPoly())
    num = LaurentPoly.const(1)
    den = {}
    for mkey, c in f.items():
        if c > 0:
            den[(1, mkey)] = c
        else:
            num = num * _binomial(1, mkey) ** (-c)
    return RatFunc(num, den)


def conjugate(x):
    if isinstance(x, (LaurentPoly, RatFunc)):
        return x.conjugate()
    return x


__all__ = ["RatFunc", "omega_product", "conjugate", "pack", "REGISTRY"]

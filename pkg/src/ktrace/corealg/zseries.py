"""Power series in z1, z2 truncated at a total order, and expansion at z = 0."""
from __future__ import annotations

from fractions import Fraction

from ..errors import PoleAtOrigin
from .laurent import BITS, HALF, MASK, BASE, LaurentPoly, pack, unpack
from .ratfunc import RatFunc, _binomial


def zdeg(key: int) -> int:
    """Total degree in (z1, z2) of a packed monomial; z1, z2 are registry slots 0, 1."""
    a = key & MASK
    if a >= HALF:
        a -= BASE
    key = (key - a) >> BITS
    b = key & MASK
    if b >= HALF:
        b -= BASE
    return a + b


def zexps(key: int):
    a = key & MASK
    if a >= HALF:
        a -= BASE
    key = (key - a) >> BITS
    b = key & MASK
    if b >= HALF:
        b -= BASE
    return a, b


def truncate(poly: LaurentPoly, order: int) -> LaurentPoly:
    return LaurentPoly._raw({k: c for k, c in poly.terms.items() if zdeg(k) <= order})


class ZSeries:
    """Series in z1, z2 with all terms of total degree <= ``order``.

    Coefficients are Laurent polynomials in the remaining variables, held
    together in a single ``LaurentPoly``. ``wden`` optionally carries a
    common denominator of z-free binomials (symbolic framing weights).
    """

    __slots__ = ("order", "poly", "wden")

    def __init__(self, order: int, poly=None, wden=None):
        self.order = order
        poly = LaurentPoly.coerce(poly if poly is not None else 0)
        for k in poly.terms:
            a, b = zexps(k)
            if a < 0 or b < 0:
                raise ValueError("ZSeries terms need nonnegative z exponents")
        self.poly = truncate(poly, order)
        self.wden = dict(wden or {})

    def coefficient(self, a: int, b: int) -> LaurentPoly:
        """Coefficient of z1^a z2^b (a Laurent polynomial in the other variables)."""
        out = {}
        for k, c in self.poly.terms.items():
            if zexps(k) == (a, b):
                out[k - a - (b << BITS)] = c
        return LaurentPoly._raw(out)

    def coefficients(self) -> dict:
        out = {}
        for k, c in self.poly.terms.items():
            ab = zexps(k)
            out.setdefault(ab, {})[k - ab[0] - (ab[1] << BITS)] = c
        return {ab: LaurentPoly._raw(t) for ab, t in sorted(out.items())}

    def is_zero(self) -> bool:
        return not self.poly

    def _common(self, other):
        if not isinstance(other, ZSeries):
            other = ZSeries(self.order, other)
        order = min(self.order, other.order)
        if self.wden == other.wden:
            return order, self.poly, other.poly, dict(self.wden)
        lcm = dict(self.wden)
        for f, e in other.wden.items():
            lcm[f] = max(lcm.get(f, 0), e)
        return (
            order,
            self.poly * _cofactor(lcm, self.wden),
            other.poly * _cofactor(lcm, other.wden),
            lcm,
        )

    def __add__(self, other):
        order, a, b, den = self._common(other)
        return ZSeries(order, a + b, den)

    __radd__ = __add__

    def __neg__(self):
        return ZSeries(self.order, -self.poly, self.wden)

    def __sub__(self, other):
        order, a, b, den = self._common(other)
        return ZSeries(order, a - b, den)

    def __mul__(self, other):
        if not isinstance(other, ZSeries):
            return ZSeries(self.order, truncate(self.poly * LaurentPoly.coerce(other), self.order), self.wden)
        order = min(self.order, other.order)
        den = dict(self.wden)
        for f, e in other.wden.items():
            den[f] = den.get(f, 0) + e
        return ZSeries(order, mul_trunc(self.poly, other.poly, order), den)

    __rmul__ = __mul__

    def truncated(self, order: int) -> "ZSeries":
        return ZSeries(min(order, self.order), self.poly, self.wden)

    def __eq__(self, other):
        if not isinstance(other, ZSeries):
            other = ZSeries(self.order, other)
        order, a, b, _ = self._common(other)
        return truncate(a, order) == truncate(b, order)

    __hash__ = None

    def mismatches(self, other):
        """List ``(a, b, mine, theirs)`` where coefficients differ up to the common order."""
        order, a, b, _ = self._common(other)
        sa = ZSeries(order, a).coefficients()
        sb = ZSeries(order, b).coefficients()
        out = []
        for ab in sorted(set(sa) | set(sb)):
            x, y = sa.get(ab, LaurentPoly()), sb.get(ab, LaurentPoly())
            if x != y:
                out.append((ab[0], ab[1], x, y))
        return out

    def valuation(self):
        if not self.poly:
            return None
        return min(zdeg(k) for k in self.poly.terms)

    def __str__(self):
        text = f"{self.poly} + O(z^{self.order + 1})"
        if self.wden:
            text = f"[{text}] / ({RatFunc(1, self.wden).denominator})"
        return text

    def __repr__(self):
        return f"ZSeries({self})"

    def to_json_obj(self):
        return {
            "order": self.order,
            "coefficients": [
                {"z1": a, "z2": b, "value": c.to_json_obj()} for (a, b), c in self.coefficients().items()
            ],
            "common_denominator": RatFunc(1, self.wden).denominator.to_json_obj() if self.wden else None,
        }


def _cofactor(lcm, den):
    out = LaurentPoly.const(1)
    for f, e in lcm.items():
        k = e - den.get(f, 0)
        if k:
            out = out * _binomial(*f) ** k
    return out


def mul_trunc(a: LaurentPoly, b: LaurentPoly, order: int) -> LaurentPoly:
    """Product keeping z-degree <= order (inputs assumed to have nonnegative z degree)."""
    bt = [(k, c, zdeg(k)) for k, c in b.terms.items()]
    out = {}
    get = out.get
    for ka, ca in a.terms.items():
        da = zdeg(ka)
        if da > order:
            continue
        for kb, cb, db in bt:
            if da + db <= order:
                k = ka + kb
                out[k] = get(k, 0) + ca * cb
    return LaurentPoly({k: c for k, c in out.items() if c})


def geometric(c, mkey: int, order: int) -> LaurentPoly:
    """Truncated expansion of 1/(1 - c*m) for a monomial of positive z degree."""
    d = zdeg(mkey)
    terms = {}
    coef = Fraction(1)
    for j in range(order // d + 1):
        terms[j * mkey] = coef
        coef *= c
    return LaurentPoly(terms)


def _divide_chain(chain: dict, c, times: int):
    """Divide a univariate Laurent polynomial {t: coef} by (1 - c s)^times, or return None."""
    c = Fraction(c)
    for _ in range(times):
        if not chain:
            return chain
        lo, hi = min(chain), max(chain)
        q = {}
        prev = 0
        for t in range(lo, hi):
            cur = chain.get(t, 0) + c * prev
            if cur:
                q[t] = cur
            prev = cur
        if chain.get(hi, 0) + c * prev != 0:
            return None
        chain = q
    return chain


def cancel_binomial(num: LaurentPoly, c, mkey: int, power: int):
    """Exact quotient ``num / (1 - c m)^power`` or ``None`` if not divisible."""
    m = unpack(mkey)
    i = next(j for j, e in enumerate(m) if e)
    chains = {}
    for key, coef in num.terms.items():
        exps = unpack(key)
        t = exps[i] // m[i]
        chains.setdefault(key - t * mkey, {})[t] = coef
    out = {}
    for res, chain in chains.items():
        q = _divide_chain(chain, c, power)
        if q is None:
            return None
        for t, coef in q.items():
            out[res + t * mkey] = coef
    return LaurentPoly(out)


def expand_at_origin(r, order: int) -> ZSeries:
    """Taylor expansion in (z1, z2) of a rational function up to total degree ``order``.

    Denominator binomials whose z-part has mixed signs must cancel against
    the numerator, otherwise the function has a pole through the origin.
    """
    r = RatFunc.coerce(r)
    num = r.num
    good = []
    wden = {}
    bad = []
    for (c, mkey), e in r.den.items():
        a, b = zexps(mkey)
        if a == 0 and b == 0:
            wden[(c, mkey)] = e
        elif a >= 0 and b >= 0:
            good.append((c, mkey, e))
        elif a <= 0 and b <= 0:
            num = num * LaurentPoly._raw({-mkey: -1 / Fraction(c)}) ** e
            good.append((1 / Fraction(c), -mkey, e))
        else:
            bad.append((c, mkey, e))
    for c, mkey, e in bad:
        q = cancel_binomial(num, c, mkey, e)
        if q is None:
            raise PoleAtOrigin(f"denominator factor (1 - {c}*{LaurentPoly._raw({mkey: 1})}) does not cancel")
        num = q
    for k in num.terms:
        a, b = zexps(k)
        if a < 0 or b < 0:
            raise PoleAtOrigin("numerator has negative z powers after cancellation")
    series = truncate(num, order)
    for c, mkey, e in good:
        g = geometric(c, mkey, order)
        for _ in range(e):
            series = mul_trunc(series, g, order)
    return ZSeries(order, series, wden)

"""Sparse multivariate Laurent polynomials with exact rational coefficients.

A monomial is stored as a single Python integer: the exponent vector
``(e_0, e_1, ...)`` over the registry is packed as ``sum(e_i * BASE**i)``
with balanced digits. Multiplying monomials is then integer addition,
inverting every variable is negation and the Adams operation ``x -> x^k``
is multiplication by ``k``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational

BITS = 20
BASE = 1 << BITS
HALF = BASE >> 1
MASK = BASE - 1


@dataclass(frozen=True)
class VarRegistry:
    """Ordered variable names with fixed roles."""

    names: tuple
    roles: tuple
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if len(set(self.names)) != len(self.names):
            raise ValueError("variable names must be unique")
        if len(self.roles) != len(self.names):
            raise ValueError("one role per variable")
        object.__setattr__(self, "_index", {n: i for i, n in enumerate(self.names)})

    @classmethod
    def standard(cls, n_w=8, n_x=12, n_y=8):
        names = ["z1", "z2"]
        roles = ["torus", "torus"]
        names += [f"w{i}" for i in range(1, n_w + 1)]
        roles += ["framing"] * n_w
        names += ["v", "u"]
        roles += ["auxiliary", "auxiliary"]
        names += [f"x{i}" for i in range(1, n_x + 1)]
        roles += ["auxiliary"] * n_x
        names += [f"y{i}" for i in range(1, n_y + 1)]
        roles += ["auxiliary"] * n_y
        return cls(tuple(names), tuple(roles))

    def __len__(self):
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown variable {name!r}") from None

    def role(self, name: str) -> str:
        return self.roles[self.index(name)]


REGISTRY = VarRegistry.standard()
NVARS = len(REGISTRY)


def pack(exps) -> int:
    """Pack an exponent sequence (registry order) into a monomial key."""
    key = 0
    for e in reversed(exps):
        if not -HALF < e < HALF:
            raise OverflowError("exponent out of range")
        key = key * BASE + e
    return key


def unpack(key: int, nvars: int = NVARS) -> tuple:
    out = []
    for _ in range(nvars):
        d = key & MASK
        if d >= HALF:
            d -= BASE
        out.append(d)
        key = (key - d) >> BITS
    return tuple(out)


def var_key(name: str, power: int = 1) -> int:
    return power << (BITS * REGISTRY.index(name))


def exponent_of(key: int, idx: int) -> int:
    """Exponent of the variable at registry index ``idx`` in a packed key."""
    for _ in range(idx):
        d = key & MASK
        if d >= HALF:
            d -= BASE
        key = (key - d) >> BITS
    d = key & MASK
    return d - BASE if d >= HALF else d


def monomial_str(key: int) -> str:
    parts = []
    for name, e in zip(REGISTRY.names, unpack(key)):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def _norm(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


class LaurentPoly:
    """Immutable sparse Laurent polynomial over Q in the registry variables."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms=None):
        if terms is None:
            terms = {}
        elif not isinstance(terms, dict):
            raise TypeError("terms must be a dict")
        self.terms = {k: _norm(c) for k, c in terms.items() if c}
        self._hash = None

    @classmethod
    def _raw(cls, terms):
        # trusted constructor: no zero coefficients
        obj = cls.__new__(cls)
        obj.terms = terms
        obj._hash = None
        return obj

    # constructors -----------------------------------------------------
    @classmethod
    def const(cls, c) -> "LaurentPoly":
        return cls({0: c}) if c else cls()

    @classmethod
    def var(cls, name: str, power: int = 1) -> "LaurentPoly":
        return cls._raw({var_key(name, power): 1})

    @classmethod
    def monomial(cls, exps: dict, coef=1) -> "LaurentPoly":
        key = 0
        for name, e in exps.items():
            key += var_key(name, e)
        return cls({key: coef})

    @classmethod
    def coerce(cls, x) -> "LaurentPoly":
        if isinstance(x, LaurentPoly):
            return x
        if isinstance(x, (int, Rational)):
            return cls.const(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to LaurentPoly")

    # queries ------------------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and 0 in self.terms)

    def constant_term(self):
        return self.terms.get(0, 0)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def items(self):
        return self.terms.items()

    def decoded(self):
        """Yield ``(exponent_tuple, coefficient)`` pairs."""
        for k, c in self.terms.items():
            yield unpack(k), c

    def variables(self) -> set:
        out = set()
        for exps, _ in self.decoded():
            out.update(REGISTRY.names[i] for i, e in enumerate(exps) if e)
        return out

    def coefficient(self, exps: dict):
        key = 0
        for name, e in exps.items():
            key += var_key(name, e)
        return self.terms.get(key, 0)

    def has_integer_coefficients(self) -> bool:
        return all(Fraction(c).denominator == 1 for c in self.terms.values())

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, LaurentPoly):
            if isinstance(other, (int, Rational)):
                if not other:
                    return self
                other = LaurentPoly.const(other)
            else:
                return NotImplemented
        if len(other.terms) > len(self.terms):
            a, b = other.terms, self.terms
        else:
            a, b = self.terms, other.terms
        out = dict(a)
        for k, c in b.items():
            s = out.get(k, 0) + c
            if s:
                out[k] = _norm(s)
            else:
                out.pop(k, None)
        return LaurentPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Rational)):
            other = LaurentPoly.const(other)
        elif not isinstance(other, LaurentPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, LaurentPoly):
            if isinstance(other, (int, Rational)):
                if not other:
                    return LaurentPoly()
                return LaurentPoly._raw({k: _norm(c * other) for k, c in self.terms.items()})
            return NotImplemented
        a, b = self.terms, other.terms
        if not a or not b:
            return LaurentPoly()
        if len(b) == 1:
            ((kb, cb),) = b.items()
            return LaurentPoly._raw({k + kb: _norm(c * cb) for k, c in a.items()})
        if len(a) == 1:
            ((ka, ca),) = a.items()
            return LaurentPoly._raw({k + ka: _norm(c * ca) for k, c in b.items()})
        out = {}
        get = out.get
        for ka, ca in a.items():
            for kb, cb in b.items():
                k = ka + kb
                out[k] = get(k, 0) + ca * cb
        return LaurentPoly._raw({k: _norm(c) for k, c in out.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)):
            return self * (1 / Fraction(other))
        if isinstance(other, LaurentPoly) and other.is_monomial():
            ((k, c),) = other.terms.items()
            return LaurentPoly._raw({kk - k: _norm(Fraction(cc) / c) for kk, cc in self.terms.items()})
        return NotImplemented

    def __pow__(self, e: int):
        if e < 0:
            if not self.is_monomial():
                raise ValueError("negative power of a non-monomial")
            ((k, c),) = self.terms.items()
            return LaurentPoly._raw({k * e: _norm(Fraction(c) ** e)})
        result = LaurentPoly.const(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.terms == other.terms
        if isinstance(other, (int, Rational)):
            return self.terms == ({0: other} if other else {})
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    # structural maps --------------------------------------------------------
    def conjugate(self) -> "LaurentPoly":
        """Invert every variable."""
        return LaurentPoly._raw({-k: c for k, c in self.terms.items()})

    def adams(self, k: int) -> "LaurentPoly":
        """Plethystic power sum: every variable raised to the k-th power."""
        if k == 1:
            return self
        out = {}
        for key, c in self.terms.items():
            kk = key * k
            out[kk] = out.get(kk, 0) + c
        return LaurentPoly({kk: c for kk, c in out.items() if c})

    def subs(self, values: dict) -> "LaurentPoly":
        """Substitute numbers or Laurent polynomials for named variables."""
        if not values:
            return self
        idx = {REGISTRY.index(n): v for n, v in values.items()}
        poly_vals = any(isinstance(v, LaurentPoly) for v in idx.values())
        out = LaurentPoly() if poly_vals else {}
        for key, c in self.terms.items():
            exps = list(unpack(key))
            coef = Fraction(c)
            extra = None
            for i, v in idx.items():
                e = exps[i]
                if not e:
                    continue
                exps[i] = 0
                if isinstance(v, LaurentPoly):
                    p = v ** e
                    extra = p if extra is None else extra * p
                else:
                    coef *= Fraction(v) ** e
            if not coef:
                continue
            nk = pack(exps)
            if poly_vals:
                term = LaurentPoly._raw({nk: _norm(coef)})
                out = out + (term * extra if extra is not None else term)
            else:
                out[nk] = out.get(nk, 0) + coef
        if poly_vals:
            return out
        return LaurentPoly(out)

    def evaluate(self, values: dict):
        """Substitute and require a constant result."""
        r = self.subs(values)
        if not r.is_constant():
            raise ValueError(f"variables left after evaluation: {sorted(r.variables())}")
        return Fraction(r.constant_term())

    def split_by(self, names) -> dict:
        """Group terms by the exponents of ``names``: {exps_tuple: LaurentPoly}."""
        ids = [REGISTRY.index(n) for n in names]
        out = {}
        for key, c in self.terms.items():
            exps = unpack(key)
            sel = tuple(exps[i] for i in ids)
            rest = list(exps)
            for i in ids:
                rest[i] = 0
            out.setdefault(sel, {})[pack(rest)] = c
        return {s: LaurentPoly._raw(t) for s, t in out.items()}

    def min_degree_in(self, names):
        ids = [REGISTRY.index(n) for n in names]
        best = None
        for key in self.terms:
            exps = unpack(key)
            d = sum(exps[i] for i in ids)
            best = d if best is None or d < best else best
        return best

    # serialization ------------------------------------------------------------
    def sorted_terms(self):
        return sorted(((unpack(k), c) for k, c in self.terms.items()), key=lambda t: t[0])

    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        for exps, c in self.sorted_terms():
            mon = monomial_str(pack(exps))
            c = Fraction(c)
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if not mon:
                body = str(a)
            elif a == 1:
                body = mon
            else:
                body = f"{a}*{mon}"
            pieces.append((sign, body))
        text = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
        for sign, body in pieces[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self):
        return f"LaurentPoly({self})"

    def to_json_obj(self):
        used = sorted(self.variables(), key=REGISTRY.index)
        ids = [REGISTRY.index(n) for n in used]
        return {
            "vars": used,
            "terms": [[[e[i] for i in ids], str(Fraction(c))] for e, c in self.sorted_terms()],
        }

    @classmethod
    def from_json_obj(cls, obj):
        out = {}
        for exps, c in obj["terms"]:
            key = 0
            for name, e in zip(obj["vars"], exps):
                key += var_key(name, e)
            out[key] = Fraction(c)
        return cls(out)

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True)


def lp(x) -> LaurentPoly:
    return LaurentPoly.coerce(x)


def var(name: str) -> LaurentPoly:
    return LaurentPoly.var(name)


ZERO = LaurentPoly()
ONE = LaurentPoly.const(1)

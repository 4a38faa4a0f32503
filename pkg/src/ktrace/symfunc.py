"""Degree-truncated symmetric functions with Laurent-polynomial coefficients.

Elements carry a basis tag (``p``, ``s``, ``e``, ``h`` or ``m``); every
operation goes through the power-sum basis, where plethysm, the Hall
product and the diagonal twists are all native.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from numbers import Rational

from .corealg.laurent import LaurentPoly, ONE, ZERO
from .corealg.partitions import EMPTY, Partition, partitions_list, z_factor

BASES = ("p", "s", "e", "h", "m")


# --------------------------------------------------------------------------
# transition tables


@lru_cache(maxsize=None)
def character(lam: tuple, mu: tuple) -> int:
    """Irreducible S_n character chi^lam at cycle type mu (Murnaghan-Nakayama)."""
    if not mu:
        return 1 if not lam else 0
    k, rest = mu[0], mu[1:]
    L = len(lam)
    beta = [lam[i] + L - 1 - i for i in range(L)]
    bset = set(beta)
    total = 0
    for b in beta:
        t = b - k
        if t < 0 or t in bset:
            continue
        sign = -1 if sum(1 for x in beta if t < x < b) % 2 else 1
        nb = sorted((t if x == b else x for x in beta), reverse=True)
        nl = tuple(x - (L - 1 - i) for i, x in enumerate(nb))
        total += sign * character(tuple(p for p in nl if p), rest)
    return total


def _pmul(a: dict, b: dict, dmax=None) -> dict:
    """Multiply two p-basis dicts with rational (non-polynomial) coefficients."""
    out = {}
    for la, ca in a.items():
        for mu, cb in b.items():
            nu = Partition(sorted(la + mu, reverse=True))
            if dmax is not None and nu.size > dmax:
                continue
            out[nu] = out.get(nu, 0) + ca * cb
    return {k: v for k, v in out.items() if v}


@lru_cache(maxsize=None)
def _h_single(n: int) -> dict:
    return {mu: Fraction(1, z_factor(mu)) for mu in partitions_list(n)}


@lru_cache(maxsize=None)
def _e_single(n: int) -> dict:
    return {mu: Fraction((-1) ** (n - len(mu)), z_factor(mu)) for mu in partitions_list(n)}


def _product_table(single, lam) -> dict:
    out = {EMPTY: Fraction(1)}
    for part in lam:
        out = _pmul(out, single(part))
    return out


@lru_cache(maxsize=None)
def to_p_table(basis: str, d: int) -> dict:
    """``{lam: {mu: coef}}`` expressing basis element lam of degree d in power sums."""
    lams = partitions_list(d)
    if basis == "p":
        return {la: {la: Fraction(1)} for la in lams}
    if basis == "s":
        return {
            la: {mu: Fraction(c, z_factor(mu)) for mu in lams if (c := character(la, mu))}
            for la in lams
        }
    if basis == "h":
        return {la: _product_table(_h_single, la) for la in lams}
    if basis == "e":
        return {la: _product_table(_e_single, la) for la in lams}
    if basis == "m":
        return _invert(from_p_table("m", d), lams)
    raise ValueError(f"unknown basis {basis!r}")


@lru_cache(maxsize=None)
def from_p_table(basis: str, d: int) -> dict:
    """``{mu: {lam: coef}}`` expressing p_mu in the given basis."""
    lams = partitions_list(d)
    if basis == "p":
        return {mu: {mu: Fraction(1)} for mu in lams}
    if basis == "s":
        return {mu: {la: Fraction(c) for la in lams if (c := character(la, mu))} for mu in lams}
    if basis == "m":
        # coefficient of m_lam in p_mu is (p_mu, h_lam)
        out = {mu: {} for mu in lams}
        for la in lams:
            for mu, c in to_p_table("h", d)[la].items():
                out[mu][la] = c * z_factor(mu)
        return {mu: {k: v for k, v in row.items() if v} for mu, row in out.items()}
    if basis in ("e", "h"):
        return _invert(to_p_table(basis, d), lams)
    raise ValueError(f"unknown basis {basis!r}")


def _invert(table: dict, lams) -> dict:
    """Invert a change-of-basis table by exact Gauss-Jordan elimination."""
    idx = {la: i for i, la in enumerate(lams)}
    n = len(lams)
    # rows: basis element la -> vector over p_mu; we need p_mu in terms of la
    mat = [[Fraction(0)] * n + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for la, row in table.items():
        for mu, c in row.items():
            mat[idx[mu]][idx[la]] = Fraction(c)
    # solve M x = e: column j of M is la_j in p-coords, so inverse maps p to la
    for col in range(n):
        piv = next(r for r in range(col, n) if mat[r][col])
        mat[col], mat[piv] = mat[piv], mat[col]
        inv = 1 / mat[col][col]
        mat[col] = [x * inv for x in mat[col]]
        for r in range(n):
            if r != col and mat[r][col]:
                f = mat[r][col]
                mat[r] = [x - f * y for x, y in zip(mat[r], mat[col])]
    out = {}
    for mu in lams:
        j = idx[mu]
        out[mu] = {la: mat[idx[la]][n + j] for la in lams if mat[idx[la]][n + j]}
    return out


# --------------------------------------------------------------------------
# the element type


def _coef(c) -> LaurentPoly:
    return LaurentPoly.coerce(c)


class SymFunc:
    """A symmetric function truncated at degree ``dmax``."""

    __slots__ = ("basis", "terms", "dmax")

    def __init__(self, terms=None, basis: str = "p", dmax: int = 12):
        if basis not in BASES:
            raise ValueError(f"unknown basis {basis!r}")
        self.basis = basis
        self.dmax = dmax
        self.terms = {}
        for la, c in (terms or {}).items():
            la = Partition(la)
            c = _coef(c)
            if c and la.size <= dmax:
                self.terms[la] = self.terms.get(la, ZERO) + c
        self.terms = {k: v for k, v in self.terms.items() if v}

    @classmethod
    def _raw(cls, terms, basis, dmax):
        obj = cls.__new__(cls)
        obj.basis, obj.terms, obj.dmax = basis, terms, dmax
        return obj

    # constructors ----------------------------------------------------------
    @classmethod
    def basis_element(cls, basis: str, parts, dmax: int = 12, coef=1) -> "SymFunc":
        return cls({Partition(sorted(parts, reverse=True)): coef}, basis, dmax)

    @classmethod
    def one(cls, dmax: int = 12, coef=1) -> "SymFunc":
        return cls({EMPTY: coef}, "p", dmax)

    @classmethod
    def zero(cls, dmax: int = 12) -> "SymFunc":
        return cls({}, "p", dmax)

    # conversion -------------------------------------------------------------
    def p_terms(self) -> dict:
        if self.basis == "p":
            return self.terms
        out = {}
        for la, c in self.terms.items():
            for mu, r in to_p_table(self.basis, la.size)[la].items():
                out[mu] = out.get(mu, ZERO) + c * r
        return {k: v for k, v in out.items() if v}

    def to(self, basis: str) -> "SymFunc":
        if basis == self.basis:
            return self
        pt = self.p_terms()
        if basis == "p":
            return SymFunc._raw(dict(pt), "p", self.dmax)
        out = {}
        for mu, c in pt.items():
            for la, r in from_p_table(basis, mu.size)[mu].items():
                out[la] = out.get(la, ZERO) + c * r
        return SymFunc._raw({k: v for k, v in out.items() if v}, basis, self.dmax)

    def with_dmax(self, dmax: int) -> "SymFunc":
        return SymFunc._raw({k: v for k, v in self.terms.items() if k.size <= dmax}, self.basis, dmax)

    # queries ---------------------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((la.size for la in self.terms), default=0)

    def mindegree(self) -> int:
        return min((la.size for la in self.terms), default=0)

    def component(self, d: int) -> "SymFunc":
        return SymFunc._raw({k: v for k, v in self.terms.items() if k.size == d}, self.basis, self.dmax)

    def coefficient(self, parts) -> LaurentPoly:
        return self.terms.get(Partition(parts), ZERO)

    def constant_term(self) -> LaurentPoly:
        return self.p_terms().get(EMPTY, ZERO)

    # arithmetic -------------------------------------------------------------
    def _same(self, other):
        if not isinstance(other, SymFunc):
            other = SymFunc.one(self.dmax, other)
        dmax = min(self.dmax, other.dmax)
        if self.basis == other.basis:
            return self.terms, other.terms, self.basis, dmax
        return self.p_terms(), other.p_terms(), "p", dmax

    def __add__(self, other):
        if not isinstance(other, (SymFunc, int, Rational, LaurentPoly)):
            return NotImplemented
        a, b, basis, dmax = self._same(other)
        out = dict(a)
        for k, v in b.items():
            out[k] = out.get(k, ZERO) + v
        return SymFunc._raw({k: v for k, v in out.items() if v and k.size <= dmax}, basis, dmax)

    __radd__ = __add__

    def __neg__(self):
        return SymFunc._raw({k: -v for k, v in self.terms.items()}, self.basis, self.dmax)

    def __sub__(self, other):
        if not isinstance(other, (SymFunc, int, Rational, LaurentPoly)):
            return NotImplemented
        return self + (-other if isinstance(other, SymFunc) else -_coef(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Rational, LaurentPoly)):
            if not other:
                return SymFunc.zero(self.dmax)
            return SymFunc._raw({k: v * other for k, v in self.terms.items()}, self.basis, self.dmax)
        if isinstance(other, SymFunc):
            return multiply(self, other)
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, e: int):
        out = SymFunc.one(self.dmax)
        for _ in range(e):
            out = multiply(out, self)
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Rational, LaurentPoly)):
            other = SymFunc.one(self.dmax, other)
        if not isinstance(other, SymFunc):
            return NotImplemented
        dmax = min(self.dmax, other.dmax)
        a = {k: v for k, v in self.p_terms().items() if k.size <= dmax}
        b = {k: v for k, v in other.p_terms().items() if k.size <= dmax}
        return a == b

    __hash__ = None

    def map_coefficients(self, fn) -> "SymFunc":
        out = {}
        for k, v in self.terms.items():
            c = fn(v)
            if c:
                out[k] = c
        return SymFunc._raw(out, self.basis, self.dmax)

    def subs(self, values: dict) -> "SymFunc":
        return self.map_coefficients(lambda c: c.subs(values))

    # text ------------------------------------------------------------------
    def __str__(self):
        return format_symfunc(self)

    def __repr__(self):
        return f"SymFunc({self}; dmax={self.dmax})"


def format_symfunc(f: SymFunc) -> str:
    """Canonical text in the expression grammar, e.g. ``3/2*s[2,1] - p[1]``."""
    if not f.terms:
        return "0"
    pieces = []
    for la in sorted(f.terms, key=lambda la: (la.size, tuple(-x for x in la))):
        c = f.terms[la]
        atom = "" if not la else f"{f.basis}[{','.join(map(str, la))}]"
        if c.is_constant():
            q = Fraction(c.constant_term())
            sign = "-" if q < 0 else "+"
            a = abs(q)
            if not atom:
                body = str(a)
            elif a == 1:
                body = atom
            else:
                body = f"{a}*{atom}"
        else:
            sign = "+"
            body = f"({c})" + (f"*{atom}" if atom else "")
        pieces.append((sign, body))
    text = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
    for sign, body in pieces[1:]:
        text += f" {sign} {body}"
    return text


def s(*parts, dmax: int = 12) -> SymFunc:
    return SymFunc.basis_element("s", parts, dmax)


def p(*parts, dmax: int = 12) -> SymFunc:
    return SymFunc.basis_element("p", parts, dmax)


def e(*parts, dmax: int = 12) -> SymFunc:
    return SymFunc.basis_element("e", parts, dmax)


def h(*parts, dmax: int = 12) -> SymFunc:
    return SymFunc.basis_element("h", parts, dmax)


def m(*parts, dmax: int = 12) -> SymFunc:
    return SymFunc.basis_element("m", parts, dmax)


# --------------------------------------------------------------------------
# operations


def convert(f: SymFunc, basis: str) -> SymFunc:
    return f.to(basis)


def hall_inner(f: SymFunc, g: SymFunc) -> LaurentPoly:
    """Hall pairing: power sums orthogonal with norms z(mu)."""
    a, b = f.p_terms(), g.p_terms()
    if len(b) < len(a):
        a, b = b, a
    out = ZERO
    for mu, c in a.items():
        d = b.get(mu)
        if d is not None:
            out = out + c * d * z_factor(mu)
    return out


def multiply(f: SymFunc, g: SymFunc) -> SymFunc:
    dmax = min(f.dmax, g.dmax)
    a, b = f.p_terms(), g.p_terms()
    out = {}
    for la, ca in a.items():
        for mu, cb in b.items():
            if la.size + mu.size > dmax:
                continue
            nu = Partition(sorted(la + mu, reverse=True))
            out[nu] = out.get(nu, ZERO) + ca * cb
    return SymFunc._raw({k: v for k, v in out.items() if v}, "p", dmax)


def _skew_p(la: Partition, mu: Partition):
    """p_la^perp applied to p_mu: returns (coefficient, remaining partition) or None."""
    ml, mm = la.multiplicities(), mu.multiplicities()
    coef = 1
    for k, a in ml.items():
        b = mm.get(k, 0)
        if b < a:
            return None
        coef *= k ** a * factorial(b) // factorial(b - a)
        mm[k] = b - a
    rest = sorted((k for k, c in mm.items() for _ in range(c)), reverse=True)
    return coef, Partition(rest)


def mult_adjoint(f: SymFunc, g: SymFunc) -> SymFunc:
    """Adjoint of multiplication by f under the Hall pairing, applied to g."""
    a, b = f.p_terms(), g.p_terms()
    out = {}
    for la, ca in a.items():
        for mu, cb in b.items():
            r = _skew_p(la, mu)
            if r is None:
                continue
            k, nu = r
            out[nu] = out.get(nu, ZERO) + ca * cb * k
    dmax = max(g.dmax - f.degree(), 0)
    return SymFunc._raw({k: v for k, v in out.items() if v and k.size <= dmax}, "p", dmax)


@dataclass(frozen=True)
class PlethInput:
    """A plethystic alphabet ``poly + pcoef * p_1``.

    ``poly`` and ``pcoef`` are Laurent polynomials in registry variables;
    evaluating at p_k raises every variable to the k-th power and sends p_1
    to p_k.
    """

    poly: LaurentPoly = ZERO
    pcoef: LaurentPoly = ZERO

    @classmethod
    def of(cls, poly=0, pcoef=0) -> "PlethInput":
        return cls(LaurentPoly.coerce(poly), LaurentPoly.coerce(pcoef))

    def __add__(self, other):
        other = other if isinstance(other, PlethInput) else PlethInput.of(other)
        return PlethInput(self.poly + other.poly, self.pcoef + other.pcoef)

    def __neg__(self):
        return PlethInput(-self.poly, -self.pcoef)

    def __sub__(self, other):
        other = other if isinstance(other, PlethInput) else PlethInput.of(other)
        return self + (-other)

    def at(self, k: int, values=None):
        a, b = self.poly.adams(k), self.pcoef.adams(k)
        if values:
            a, b = a.subs(values), b.subs(values)
        return a, b


P1 = PlethInput(ZERO, ONE)


def plethystic_hom(F, g: SymFunc, values=None, dmax=None):
    """Apply the homomorphism p_k -> F_k to g.

    Returns a ``LaurentPoly`` when F has no p_1 part (full evaluation),
    otherwise a ``SymFunc``. ``values`` specializes variables after each
    Adams operation, so numbers substituted for variables are raised to
    the right powers.
    """
    if not isinstance(F, PlethInput):
        F = PlethInput.of(F)
    full = not F.pcoef
    dmax = g.dmax if dmax is None else dmax
    cache = {}

    def part(k):
        if k not in cache:
            cache[k] = F.at(k, values)
        return cache[k]

    if full:
        out = ZERO
        for mu, c in g.p_terms().items():
            val = ONE
            for k in mu:
                val = val * part(k)[0]
                if not val:
                    break
            out = out + c * val
        return out
    out = {}
    for mu, c in g.p_terms().items():
        acc = {EMPTY: c}
        for k in mu:
            a, b = part(k)
            nxt = {}
            for la, v in acc.items():
                if a:
                    nxt[la] = nxt.get(la, ZERO) + v * a
                if b and la.size + k <= dmax:
                    nu = Partition(sorted(la + (k,), reverse=True))
                    nxt[nu] = nxt.get(nu, ZERO) + v * b
            acc = {k2: v2 for k2, v2 in nxt.items() if v2}
        for la, v in acc.items():
            out[la] = out.get(la, ZERO) + v
    return SymFunc._raw({k: v for k, v in out.items() if v}, "p", dmax)


def pi_n(n: int, f: SymFunc) -> SymFunc:
    """Keep the Schur components with at most n rows."""
    fs = f.to("s")
    return SymFunc._raw({la: c for la, c in fs.terms.items() if len(la) <= n}, "s", f.dmax).to(f.basis)


def omega_involution(f: SymFunc) -> SymFunc:
    out = {mu: (c if (mu.size - len(mu)) % 2 == 0 else -c) for mu, c in f.p_terms().items()}
    return SymFunc._raw(out, "p", f.dmax).to(f.basis)


def omega_series(f, dmax: int, values=None) -> SymFunc:
    """Omega(p_1 f) = sum_mu f(p_mu)/z(mu) p_mu, truncated at degree dmax."""
    F = PlethInput.of(f)
    cache = {}
    out = {}
    for d in range(dmax + 1):
        for mu in partitions_list(d):
            val = ONE
            for k in mu:
                if k not in cache:
                    cache[k] = F.at(k, values)[0]
                val = val * cache[k]
                if not val:
                    break
            if val:
                out[mu] = val * Fraction(1, z_factor(mu))
    return SymFunc._raw(out, "p", dmax)


def finite_var_inner(f: SymFunc, g: SymFunc, n: int) -> LaurentPoly:
    """(f, pi_n g) computed as a constant term over n auxiliary variables y_i."""
    names = [f"y{i}" for i in range(1, n + 1)]
    alphabet = sum((LaurentPoly.var(y) for y in names), ZERO)
    fy = plethystic_hom(alphabet, f)
    gy = plethystic_hom(alphabet, g).subs({y: LaurentPoly.var(y, -1) for y in names})
    vander = ONE
    for i in range(n):
        for j in range(i + 1, n):
            vander = vander * (LaurentPoly.var(names[i]) - LaurentPoly.var(names[j]))
    prod = fy * gy * vander * vander.subs({y: LaurentPoly.var(y, -1) for y in names})
    if n == 0:
        return prod
    parts = prod.split_by(names)
    return parts.get((0,) * n, ZERO) * Fraction(1, factorial(n))

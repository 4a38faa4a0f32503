"""Operators on truncated symmetric functions and the trace computations built from them.

The fast trace kernel works in n auxiliary variables. Writing the trace
in the power-sum basis, every summand is a finite-variable pairing

    P(mu, d) = ( Omega(p1 W) f p_mu ,  pi_n  e_n^k h_d[Wbar p1] g p_mu )

and the pairing in n variables is read off from alternant coefficients
(coefficient of x^(nu + delta) after multiplying by the Vandermonde).
Multiplying by e_n^k just shifts every exponent by k. The generic
``LinOp`` trace applies the same composition literally and serves as a
cross-check at small k.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .corealg import (
    EMPTY,
    ONE,
    ZERO,
    LaurentPoly,
    Partition,
    PartitionTuple,
    RatFunc,
    ZSeries,
    expand_at_origin,
    omega_product,
    partitions_list,
    partitions_upto,
    z_factor,
)
from .corealg.laurent import BITS
from .corealg.zseries import mul_trunc, truncate, zexps
from .errors import LengthViolation, PoleAtOrigin
from .localization import M_CHAR, TorusRep, framing, moduli_inner
from .parallel import ordered_map
from .symfunc import (
    P1,
    PlethInput,
    SymFunc,
    e as e_basis,
    hall_inner,
    mult_adjoint,
    omega_series,
    pi_n,
    plethystic_hom,
)

Z1Z2 = LaurentPoly.monomial({"z1": 1, "z2": 1})


def random_w_values(r: int, seed: int = 0, w1_one: bool = False) -> dict:
    """Distinct positive rationals for w1..wr, reproducible from ``seed``."""
    rng = random.Random(seed)
    vals = {}
    seen = set()
    for a in range(1, r + 1):
        if a == 1 and w1_one:
            q = Fraction(1)
        else:
            while True:
                q = Fraction(rng.randint(1, 9), rng.randint(1, 9))
                if q not in seen:
                    break
        seen.add(q)
        vals[f"w{a}"] = q
    return vals


# --------------------------------------------------------------------------
# operators


@dataclass(frozen=True)
class LinOp:
    """A composable operator on SymFunc.

    ``kind`` is one of gamma_plus, gamma_minus, mult, mult_adjoint, pi_n,
    pleth_diag, compose. For compose, ``parts`` are applied right to left.
    """

    kind: str
    arg: object = None
    parts: tuple = ()
    values: dict = field(default=None, compare=False, hash=False)
    zorder: int = None

    def __call__(self, f: SymFunc) -> SymFunc:
        kind, arg = self.kind, self.arg
        if kind == "compose":
            for op in reversed(self.parts):
                f = op(f)
            return f
        if kind == "gamma_plus":
            out = plethystic_hom(P1 + PlethInput.of(arg), f, values=self.values)
        elif kind == "gamma_minus":
            out = omega_series(arg, f.dmax, self.values) * f
        elif kind == "mult":
            out = arg.with_dmax(f.dmax) * f
        elif kind == "mult_adjoint":
            out = mult_adjoint(arg, f).with_dmax(f.dmax)
            out = SymFunc._raw(out.terms, out.basis, f.dmax)
        elif kind == "pi_n":
            out = pi_n(arg, f)
        elif kind == "pleth_diag":
            out = plethystic_hom(PlethInput(ZERO, LaurentPoly.coerce(arg)), f, values=self.values)
        else:
            raise ValueError(f"unknown operator kind {kind!r}")
        if self.zorder is not None:
            out = out.map_coefficients(lambda c: truncate(c, self.zorder))
        return out

    def __matmul__(self, other: "LinOp") -> "LinOp":
        left = self.parts if self.kind == "compose" else (self,)
        right = other.parts if other.kind == "compose" else (other,)
        return LinOp("compose", parts=left + right)

    def shift_bounds(self) -> tuple:
        """(min, max) change of symmetric degree; None means unbounded."""
        if self.kind == "compose":
            lo, hi = 0, 0
            for op in self.parts:
                a, b = op.shift_bounds()
                lo = None if lo is None or a is None else lo + a
                hi = None if hi is None or b is None else hi + b
            return lo, hi
        if self.kind == "gamma_plus":
            return None, 0
        if self.kind == "gamma_minus":
            return 0, None
        if self.kind == "mult":
            return self.arg.mindegree(), self.arg.degree()
        if self.kind == "mult_adjoint":
            return -self.arg.degree(), -self.arg.mindegree()
        return 0, 0


def gamma_plus(F, values=None, zorder=None) -> LinOp:
    return LinOp("gamma_plus", LaurentPoly.coerce(F), values=values, zorder=zorder)


def gamma_minus(F, values=None, zorder=None) -> LinOp:
    return LinOp("gamma_minus", LaurentPoly.coerce(F), values=values, zorder=zorder)


def mult(f: SymFunc) -> LinOp:
    return LinOp("mult", f)


def mult_adj(f: SymFunc) -> LinOp:
    return LinOp("mult_adjoint", f)


def proj(n: int) -> LinOp:
    return LinOp("pi_n", n)


def pleth_diag(F, values=None, zorder=None) -> LinOp:
    """phi_{F p1}: p_k -> F_k p_k."""
    return LinOp("pleth_diag", LaurentPoly.coerce(F), values=values, zorder=zorder)


# --------------------------------------------------------------------------
# Grassmannian right-hand side


def grass_rhs(f: SymFunc, g: SymFunc, X: TorusRep, m: int, n: int) -> LaurentPoly:
    """(f, Gamma_+(X) pi_n Gamma_+(-X) phi_{-p1} pi_m g)."""
    fs = f.to("s")
    for mu in fs.terms:
        if len(mu) > m:
            raise LengthViolation(f"s{list(mu)} has more than m={m} rows")
    D = max(f.degree(), g.degree())
    g = g.with_dmax(D)
    Xc = X.character()
    y = pi_n(m, g)
    y = plethystic_hom(PlethInput(ZERO, -ONE), y)
    y = gamma_plus(-Xc, X.values)(y)
    y = pi_n(n, y)
    y = gamma_plus(Xc, X.values)(y)
    out = hall_inner(f.with_dmax(D), y)
    return out.subs(X.values) if X.values else out


# --------------------------------------------------------------------------
# trace of the twisted operator product


def one_minus_M_adams(k: int) -> LaurentPoly:
    """(1 - M) with z -> z^k, i.e. z1^k + z2^k - z1^k z2^k."""
    return (1 - M_CHAR).adams(k)


def diagonal_factor(mu, order: int) -> LaurentPoly:
    out = ONE
    for part in mu:
        out = mul_trunc(out, one_minus_M_adams(part), order)
    return out


def _h_values(alphabet: list, top: int) -> list:
    """[h_0, ..., h_top] of a list of scalars or Laurent polynomials."""
    h = [ONE] + [ZERO] * top
    for a in alphabet:
        # multiply the series by 1/(1 - a t)
        for m in range(1, top + 1):
            h[m] = h[m] + a * h[m - 1]
    return [_scalar(x) for x in h]


def _scalar(x):
    if isinstance(x, LaurentPoly) and x.is_constant():
        return Fraction(x.constant_term())
    return x


def _yvars(n: int):
    return [f"y{i}" for i in range(1, n + 1)]


def _in_n_vars(f: SymFunc, n: int, values) -> LaurentPoly:
    alphabet = sum((LaurentPoly.var(y) for y in _yvars(n)), ZERO)
    out = LaurentPoly.coerce(plethystic_hom(PlethInput.of(alphabet), f))
    return out.subs(values) if values else out


def _vandermonde(n: int) -> LaurentPoly:
    ys = [LaurentPoly.var(y) for y in _yvars(n)]
    out = ONE
    for i in range(n):
        for j in range(i + 1, n):
            out = out * (ys[i] - ys[j])
    return out


def _power_sum_n(mu, n: int) -> LaurentPoly:
    ys = [LaurentPoly.var(y) for y in _yvars(n)]
    out = ONE
    for k in mu:
        out = out * sum((y ** k for y in ys), ZERO)
    return out


def _compositions(d: int, n: int):
    if n == 0:
        if d == 0:
            yield ()
        return
    if n == 1:
        yield (d,)
        return
    for first in range(d + 1):
        for rest in _compositions(d - first, n - 1):
            yield (first,) + rest


def _decreasing(a) -> bool:
    return all(x > y for x, y in zip(a, a[1:])) and (not a or a[-1] >= 0)


class _Kernel:
    """Per-(f, g, r, n, k) data shared by all power-sum partitions mu."""

    def __init__(self, f, g, r, n, k, dz, values):
        self.n, self.k, self.dz = n, k, dz
        self.values = values
        W = [LaurentPoly.var(f"w{a}") for a in range(1, r + 1)]
        if values:
            W = [w.subs(values) for w in W]
        Wbar = [w.conjugate() if isinstance(w, LaurentPoly) and not w.is_constant() else 1 / _scalar(w) for w in W]
        self.W, self.Wbar = [_scalar(w) for w in W], [_scalar(w) for w in Wbar]
        names = _yvars(n)
        self.names = names
        vand = _vandermonde(n)
        self.fv = _in_n_vars(f, n, values) * vand
        self.gv = _in_n_vars(g, n, values) * vand
        self.dmax_d = dz // 2
        self.hbar = _h_values(self.Wbar, self.dmax_d)
        self._h = [ONE]
        self._h_top = 0

    def h(self, m: int):
        if m > self._h_top:
            self._h = _h_values(self.W, max(m, 2 * self._h_top + 8))
            self._h_top = len(self._h) - 1
        return self._h[m]

    def split(self, poly: LaurentPoly) -> dict:
        out = {}
        for exps, c in poly.split_by(self.names).items():
            out[exps] = _scalar(c)
        return out

    def pairing(self, mu) -> dict:
        """{d: P(mu, d)} for 0 <= d <= (dz - |mu|) / 2."""
        n = self.n
        dtop = (self.dz - Partition(mu).size) // 2
        pm = _power_sum_n(mu, n)
        A = self.split(self.gv * pm)
        B = self.split(self.fv * pm)
        # A side: alternant coefficients of h_d[Wbar x] g p_mu, for each d
        acoef = {}
        for d in range(dtop + 1):
            for eps in _compositions(d, n):
                weight = ONE
                for e in eps:
                    weight = weight * self.hbar[e]
                    if not weight:
                        break
                if not weight:
                    continue
                weight = _scalar(weight)
                for gam, c in A.items():
                    alpha = tuple(a + b for a, b in zip(gam, eps))
                    if not _decreasing(alpha):
                        continue
                    key = (alpha, d)
                    acoef[key] = acoef.get(key, 0) + c * weight
        out = {}
        bcache = {}
        for (alpha, d), ca in acoef.items():
            if not ca:
                continue
            beta = tuple(a + self.k for a in alpha)
            if beta not in bcache:
                bcache[beta] = self._b_coef(B, beta)
            cb = bcache[beta]
            if cb:
                out[d] = out.get(d, 0) + ca * cb
        return {d: v for d, v in out.items() if v}

    def _b_coef(self, B, beta):
        total = 0
        for gam, c in B.items():
            weight = c
            for b, g in zip(beta, gam):
                if b < g:
                    weight = 0
                    break
                weight = weight * self.h(b - g)
                if not weight:
                    break
            if weight:
                total = total + weight
        return total


@dataclass
class TraceResult:
    value: ZSeries
    D_z: int
    D_sym: int
    k: int
    r: int
    n: int
    terms: list  # [(mu, ZSeries)]

    def valuations_ok(self) -> bool:
        return all(t.is_zero() or t.valuation() >= Partition(mu).size for mu, t in self.terms)

    def to_json_obj(self):
        return {
            "value": self.value.to_json_obj(),
            "D_z": self.D_z,
            "D_sym": self.D_sym,
            "k": self.k,
            "r": self.r,
            "n": self.n,
            "terms": [{"mu": list(mu), "valuation": t.valuation(), "term": str(t)} for mu, t in self.terms],
        }


def working_degree(g: SymFunc, n: int, k: int, dz: int) -> int:
    return dz + n * k + g.degree() + dz


def _series_from(coeffs: dict, mu, dz: int) -> ZSeries:
    """c_mu / z(mu) * sum_d (z1 z2)^d P_d as a ZSeries."""
    diag = diagonal_factor(mu, dz)
    poly = ZERO
    for d, val in coeffs.items():
        poly = poly + LaurentPoly.coerce(val) * Z1Z2 ** d
    return ZSeries(dz, mul_trunc(diag, poly, dz) * Fraction(1, z_factor(mu)))


def theoremA_trace(f: SymFunc, g: SymFunc, r: int, n: int, k: int, D_z: int, values=None) -> TraceResult:
    """Tr phi_{(1-M)p1} m_f^* Gamma_+(W) pi_n m_{e_n^k} Gamma_-(z1 z2 Wbar) m_g up to z-order D_z."""
    if k < 0 or D_z < 0 or n < 0 or r < 0:
        raise ValueError("k, D_z, n and r must be nonnegative")
    kern = _Kernel(f, g, r, n, k, D_z, values)
    mus = list(partitions_upto(D_z))
    parts = ordered_map(kern.pairing, mus)
    total = ZSeries(D_z)
    terms = []
    for mu, coeffs in zip(mus, parts):
        if not coeffs:
            continue
        t = _series_from(coeffs, mu, D_z)
        if t.is_zero():
            continue
        terms.append((mu, t))
        total = total + t
    return TraceResult(total, D_z, working_degree(g, n, k, D_z), k, r, n, terms)


def theoremA_trace_generic(f: SymFunc, g: SymFunc, r: int, n, k: int, D_z: int, values=None, D_sym=None) -> ZSeries:
    """The same trace by literal operator composition on SymFunc truncated at D_sym.

    ``n = None`` drops the projection and the e_n^k factor.
    """
    D = working_degree(g, n or 0, k, D_z) if D_sym is None else D_sym
    W = framing(r)
    ops = [mult_adj(f), gamma_plus(W, values)]
    if n is not None:
        ops += [proj(n), mult(e_basis(n, dmax=D) ** k if n else SymFunc.one(D))]
    ops += [gamma_minus(Z1Z2 * W.conjugate(), values, zorder=D_z), mult(g)]
    B = ops[0]
    for op in ops[1:]:
        B = B @ op
    total = ZERO
    for mu in partitions_upto(D_z):
        pm = SymFunc({mu: 1}, "p", D)
        val = hall_inner(pm, B(pm))
        if not val:
            continue
        val = truncate(val, D_z)
        total = total + mul_trunc(diagonal_factor(mu, D_z), val, D_z) * Fraction(1, z_factor(mu))
    return ZSeries(D_z, total)


# --------------------------------------------------------------------------
# trace versus localization


@dataclass
class KCheck:
    k: int
    status: str  # "equal", "mismatch", "pole"
    lhs: ZSeries = None
    rhs: ZSeries = None
    mismatches: list = field(default_factory=list)

    def to_json_obj(self):
        return {
            "k": self.k,
            "status": self.status,
            "lhs_series": self.lhs.to_json_obj() if self.lhs is not None else None,
            "rhs_series": self.rhs.to_json_obj() if self.rhs is not None else None,
            "mismatches": [
                {"k": self.k, "order": [a, b], "coefficient_lhs": str(x), "coefficient_rhs": str(y)}
                for a, b, x, y in self.mismatches
            ],
        }


@dataclass
class TheoremAReport:
    r: int
    n: int
    D_z: int
    values: dict
    checks: list

    @property
    def k0(self):
        """Smallest tested k from which every larger tested k is equal."""
        best = None
        for c in reversed(self.checks):
            if c.status != "equal":
                break
            best = c.k
        return best

    def passed(self, persist: int = 2) -> bool:
        k0 = self.k0
        if k0 is None:
            return False
        return sum(1 for c in self.checks if c.k >= k0) >= persist + 1

    def to_json_obj(self):
        return {
            "r": self.r,
            "n": self.n,
            "D_z": self.D_z,
            "w_values": {k: str(v) for k, v in sorted(self.values.items())},
            "k0": self.k0,
            "checks": [c.to_json_obj() for c in self.checks],
        }


def check_theoremA(f: SymFunc, g: SymFunc, r: int, n: int, ks, D_z: int, seed: int = 0, values=None) -> TheoremAReport:
    values = dict(values) if values is not None else random_w_values(r, seed)
    checks = []
    for k in ks:
        rhs = theoremA_trace(f, g, r, n, k, D_z, values).value
        loc = moduli_inner(f, g, r, n, k, values)
        try:
            lhs = expand_at_origin(loc, D_z)
        except PoleAtOrigin:
            checks.append(KCheck(k, "pole", None, rhs))
            continue
        if lhs.wden:
            raise ValueError("framing weights must be specialized to compare series")
        mm = lhs.mismatches(rhs)
        checks.append(KCheck(k, "equal" if not mm else "mismatch", lhs, rhs, mm))
    return TheoremAReport(r, n, D_z, values, checks)


# --------------------------------------------------------------------------
# partition functions and the Z-infinity identity


def partition_function_Z(r: int, n: int, values=None) -> RatFunc:
    one = SymFunc.one(0)
    return moduli_inner(one, one, r, n, 0, values)


def partition_series(r: int, n: int, D_z: int, values=None) -> ZSeries:
    return expand_at_origin(partition_function_Z(r, n, values), D_z)


def constant_C(D_z: int, with_z: bool) -> ZSeries:
    """sum_mu phi_{1-M}(p_mu), optionally divided by z(mu), up to z-order D_z."""
    total = ZERO
    for mu in partitions_upto(D_z):
        term = diagonal_factor(mu, D_z)
        if with_z:
            term = term * Fraction(1, z_factor(mu))
        total = total + term
    return ZSeries(D_z, total)


def omega_WWbar_series(r: int, D_z: int, values=None) -> ZSeries:
    """Omega(W Wbar M^{-1} z1 z2) with M^{-1} truncated to the needed degree."""
    W = framing(r)
    minv = sum(
        (LaurentPoly.monomial({"z1": i, "z2": j}) for i in range(D_z + 1) for j in range(D_z + 1 - i)),
        ZERO,
    )
    char = truncate(W * W.conjugate() * minv * Z1Z2, D_z)
    rf = omega_product(char)
    if values:
        rf = rf.subs(values)
    return expand_at_origin(rf, D_z)


def trace_infinity(r: int, D_z: int, values=None) -> ZSeries:
    """Tr phi_{(1-M)p1} Gamma_+(W) Gamma_-(Wbar z1 z2), no projection."""
    one = SymFunc.one(2 * D_z)
    return theoremA_trace_generic(one, one, r, None, 0, D_z, values, D_sym=2 * D_z)


@dataclass
class ZInfReport:
    r: int
    D_z: int
    trace: ZSeries
    omega: ZSeries
    candidates: dict  # name -> (C series, ok)

    @property
    def consistent(self) -> list:
        return [name for name, (_, ok) in self.candidates.items() if ok]

    def to_json_obj(self):
        return {
            "r": self.r,
            "D_z": self.D_z,
            "trace": self.trace.to_json_obj(),
            "omega": self.omega.to_json_obj(),
            "candidates": {
                name: {"C": c.to_json_obj(), "identity_holds": ok} for name, (c, ok) in self.candidates.items()
            },
            "consistent": self.consistent,
        }


def z_infinity_check(r: int, D_z: int, values=None) -> ZInfReport:
    tr = trace_infinity(r, D_z, values)
    om = omega_WWbar_series(r, D_z, values)
    cands = {}
    for name, with_z in (("sum_phi", False), ("sum_phi_over_z", True)):
        C = constant_C(D_z, with_z)
        cands[name] = (C, tr == C * om)
    return ZInfReport(r, D_z, tr, om, cands)


def _adams_ratfunc(h: RatFunc, k: int) -> RatFunc:
    num = h.num.adams(k)
    den = {(c, mkey * k): e for (c, mkey), e in h.den.items()}
    return RatFunc(num, den)


def twisted_inner(f: SymFunc, g: SymFunc, h) -> RatFunc:
    """Diagonal pairing with (p_mu, p_mu)_h = z(mu) phi_h(p_mu)."""
    h = RatFunc.coerce(h)
    a, b = f.p_terms(), g.p_terms()
    cache = {}
    out = RatFunc(ZERO)
    for mu, ca in a.items():
        cb = b.get(mu)
        if not cb:
            continue
        val = RatFunc(ca * cb * z_factor(mu))
        for part in mu:
            if part not in cache:
                cache[part] = _adams_ratfunc(h, part)
            val = val * cache[part]
        out = out + val
    return out


__all__ = [
    "LinOp", "gamma_plus", "gamma_minus", "mult", "mult_adj", "proj", "pleth_diag",
    "grass_rhs", "theoremA_trace", "theoremA_trace_generic", "TraceResult", "working_degree",
    "check_theoremA", "TheoremAReport", "KCheck", "random_w_values", "partition_function_Z",
    "partition_series", "constant_C", "omega_WWbar_series", "trace_infinity", "z_infinity_check",
    "ZInfReport", "twisted_inner", "diagonal_factor",
]

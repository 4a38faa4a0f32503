"""Torus fixed-point data and localization sums.

Characters are Laurent polynomials in the registry variables. Framing
weights are ``w1..wr``, Grassmannian weights are ``x1..xN`` and the
auxiliary integration variables of the lambda pairing are ``y1..ym``.
Numbers are substituted for variables only after plethysm, through a
``values`` dict.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import factorial

from .corealg import (
    EMPTY,
    ONE,
    ZERO,
    LaurentPoly,
    Partition,
    PartitionTuple,
    RatFunc,
    enumerate_tuples,
    omega_product,
)
from .errors import DivergentOmega, RepeatedWeights
from .parallel import ordered_map
from .symfunc import PlethInput, SymFunc, e as e_basis, h as h_basis, plethystic_hom

Z1 = LaurentPoly.var("z1")
Z2 = LaurentPoly.var("z2")
M_CHAR = (1 - Z1) * (1 - Z2)


def framing(r: int) -> LaurentPoly:
    """W = w1 + ... + wr."""
    return sum((LaurentPoly.var(f"w{a}") for a in range(1, r + 1)), ZERO)


def _subs(x, values):
    if not values:
        return x
    return x.subs(values)


# --------------------------------------------------------------------------
# torus representations


@dataclass(frozen=True)
class TorusRep:
    """A multiset of monomial weights, optionally with numbers for its variables."""

    weights: tuple
    values: dict = field(default=None, compare=False, hash=False)

    def __post_init__(self):
        ws = tuple(LaurentPoly.coerce(w) for w in self.weights)
        for w in ws:
            if not w.is_monomial():
                raise ValueError(f"weight {w} is not a monomial")
        object.__setattr__(self, "weights", ws)

    @classmethod
    def symbolic(cls, N: int, values=None) -> "TorusRep":
        return cls(tuple(LaurentPoly.var(f"x{i}") for i in range(1, N + 1)), values)

    @classmethod
    def random_rational(cls, N: int, seed: int = 0, spread: int = 9) -> "TorusRep":
        """Symbolic x1..xN paired with distinct random rationals (never 0 or 1)."""
        rng = random.Random(seed)
        seen = set()
        vals = {}
        for i in range(1, N + 1):
            while True:
                q = Fraction(rng.randint(-spread, spread), rng.randint(1, spread))
                if q not in (0, 1) and q not in seen:
                    break
            seen.add(q)
            vals[f"x{i}"] = q
        return cls.symbolic(N, vals)

    @property
    def dim(self) -> int:
        return len(self.weights)

    def character(self) -> LaurentPoly:
        return sum(self.weights, ZERO)

    def specialized_weights(self) -> list:
        return [_subs(w, self.values) for w in self.weights]

    @property
    def distinct(self) -> bool:
        ws = self.specialized_weights()
        return len(set(ws)) == len(ws)

    def det(self) -> LaurentPoly:
        out = ONE
        for w in self.weights:
            out = out * w
        return out


def _character(ws) -> LaurentPoly:
    return sum(ws, ZERO)


def _evaluate_at(alphabet: LaurentPoly, f: SymFunc, values):
    """f evaluated at an alphabet, numbers substituted after plethysm (also into f's coefficients)."""
    out = plethystic_hom(PlethInput.of(alphabet), f, values=values)
    return _subs(out, values)


# --------------------------------------------------------------------------
# fixed-point characters


def char_U(mu_t) -> LaurentPoly:
    """Sum over boxes (i, j) of w_a z1^(j-1) z2^(i-1); a bare Partition means rank one with w = 1."""
    if not any(isinstance(x, (tuple, list)) for x in mu_t):
        return _char_U_single(Partition(mu_t))
    out = ZERO
    for a, mu in enumerate(mu_t, start=1):
        out = out + LaurentPoly.var(f"w{a}") * _char_U_single(Partition(mu))
    return out


def _char_U_single(mu: Partition) -> LaurentPoly:
    return sum((LaurentPoly.monomial({"z1": j - 1, "z2": i - 1}) for i, j in mu.boxes()), ZERO)


def char_E(mu, nu) -> LaurentPoly:
    """Sum_{box in mu} z1^(-a_mu-1) z2^(l_nu) + sum_{box in nu} z1^(a_nu) z2^(-l_mu-1)."""
    mu, nu = Partition(mu), Partition(nu)
    muc, nuc = mu.conjugate(), nu.conjugate()
    out = ZERO
    for i, j in mu.boxes():
        out = out + LaurentPoly.monomial({"z1": -(mu.part(i) - j) - 1, "z2": nuc.part(j) - i})
    for i, j in nu.boxes():
        out = out + LaurentPoly.monomial({"z1": nu.part(i) - j, "z2": -(muc.part(j) - i) - 1})
    return out


def char_E_via_difference(mu, nu) -> LaurentPoly:
    """Independent form of char_E: U_nu + q Ubar_mu - q M Ubar_mu U_nu with q = 1/(z1 z2)."""
    um = _char_U_single(Partition(mu)).conjugate()
    un = _char_U_single(Partition(nu))
    q = LaurentPoly.monomial({"z1": -1, "z2": -1})
    return un + q * um - q * M_CHAR * um * un


def tangent_char(mu_t) -> LaurentPoly:
    """Sum_{i,j} w_j / w_i E_{mu^i, mu^j}."""
    mu_t = PartitionTuple(mu_t)
    r = len(mu_t)
    out = ZERO
    for i in range(r):
        for j in range(r):
            E = char_E(mu_t[i], mu_t[j])
            if E:
                out = out + E * (LaurentPoly.var(f"w{j + 1}") / LaurentPoly.var(f"w{i + 1}"))
    return out


def det_U(mu_t) -> LaurentPoly:
    """Product of the monomials of U, a single monomial."""
    out = ONE
    for key, c in char_U(tuple(mu_t)).terms.items():
        out = out * LaurentPoly._raw({key: 1}) ** int(c)
    return out


@dataclass(frozen=True)
class FixedPointData:
    mu: PartitionTuple
    U: LaurentPoly
    tangent: LaurentPoly
    det: LaurentPoly

    @classmethod
    def of(cls, mu_t) -> "FixedPointData":
        mu_t = PartitionTuple(mu_t)
        return cls(mu_t, char_U(tuple(mu_t)), tangent_char(mu_t), det_U(mu_t))


# --------------------------------------------------------------------------
# moduli space of framed sheaves


def moduli_term(f: SymFunc, g: SymFunc, mu_t, k: int, values=None) -> RatFunc:
    """f(Ubar) g(U) det(U)^k Omega(Tbar) at one fixed point."""
    fp = FixedPointData.of(mu_t)
    fu = _evaluate_at(fp.U.conjugate(), f, values)
    if not fu:
        return RatFunc(ZERO)
    gu = _evaluate_at(fp.U, g, values)
    if not gu:
        return RatFunc(ZERO)
    omega = omega_product(fp.tangent.conjugate())
    if values:
        omega = omega.subs(values)
    return omega * (LaurentPoly.coerce(fu) * gu * _subs(fp.det ** k, values))


def moduli_inner(f: SymFunc, g: SymFunc, r: int, n: int, k: int, values=None) -> RatFunc:
    """Localization sum over r-tuples of partitions of total size n."""
    tuples = list(enumerate_tuples(r, n))
    terms = ordered_map(lambda t: moduli_term(f, g, t, k, values), tuples)
    out = RatFunc(ZERO)
    for t in terms:
        out = out + t
    return out


def moduli_terms_table(f: SymFunc, g: SymFunc, r: int, n: int, k: int, values=None) -> list:
    """Per-fixed-point rows for JSON output."""
    rows = []
    for t in enumerate_tuples(r, n):
        fp = FixedPointData.of(t)
        rows.append(
            {
                "tuple": [list(mu) for mu in fp.mu],
                "U": str(fp.U),
                "tangent": str(fp.tangent),
                "term": str(moduli_term(f, g, t, k, values)),
            }
        )
    return rows


# --------------------------------------------------------------------------
# Grassmannian


def _require_distinct(X: TorusRep):
    if not X.distinct:
        raise RepeatedWeights("torus representation has repeated weights")


def grass_term(f: SymFunc, g: SymFunc, X: TorusRep, subset) -> RatFunc:
    ws = X.weights
    V = _character([ws[i] for i in subset])
    Vp = _character([w for i, w in enumerate(ws) if i not in subset])
    fv = _evaluate_at(Vp.conjugate(), f, X.values)
    if not fv:
        return RatFunc(ZERO)
    gv = _evaluate_at(V, g, X.values)
    if not gv:
        return RatFunc(ZERO)
    omega = omega_product(Vp.conjugate() * V)
    if X.values:
        omega = omega.subs(X.values)
    return omega * (LaurentPoly.coerce(fv) * gv)


def grass_inner(f: SymFunc, g: SymFunc, X: TorusRep, m: int) -> RatFunc:
    """Sum over m-element weight subsets V of f(Vbar') g(V) Omega(Vbar' V)."""
    _require_distinct(X)
    if not 0 <= m <= X.dim:
        raise ValueError(f"need 0 <= m <= {X.dim}")
    subsets = list(combinations(range(X.dim), m))
    out = RatFunc(ZERO)
    for t in ordered_map(lambda s: grass_term(f, g, X, s), subsets):
        out = out + t
    return out


# --------------------------------------------------------------------------
# the lambda functional


class LambdaFunctional:
    """lambda(x^i) for the projective space of X, by the split formula or by localization."""

    def __init__(self, X: TorusRep):
        self.X = X
        self._cache = {}

    @property
    def N(self) -> int:
        return self.X.dim

    def _h(self, d, alphabet):
        if d == 0:
            return ONE
        return LaurentPoly.coerce(_evaluate_at(alphabet, h_basis(d, dmax=d), self.X.values))

    def prime(self, i: int) -> LaurentPoly:
        if i > 0:
            return ZERO
        return self._h(-i, self.X.character().conjugate())

    def double_prime(self, i: int) -> LaurentPoly:
        N = self.N
        if i < N:
            return ZERO
        sign = 1 if (N + 1) % 2 == 0 else -1
        return self._h(i - N, self.X.character()) * _subs(self.X.det(), self.X.values) * sign

    def __call__(self, i: int) -> LaurentPoly:
        if i not in self._cache:
            self._cache[i] = self.prime(i) + self.double_prime(i)
        return self._cache[i]

    def direct(self, i: int) -> RatFunc:
        """sum_a v_a^i Omega(sum_{b != a} v_a / v_b)."""
        _require_distinct(self.X)
        ws = self.X.weights
        out = RatFunc(ZERO)
        for a, wa in enumerate(ws):
            rest = _character([wa / wb for b, wb in enumerate(ws) if b != a])
            term = omega_product(rest) * wa ** i
            out = out + (term.subs(self.X.values) if self.X.values else term)
        return out


def _schur_terms(f: SymFunc):
    return f.to("s").terms


def lambda_pairing_det(f: SymFunc, g: SymFunc, X: TorusRep, m: int, lam=None) -> LaurentPoly:
    """det(lambda_{nu_j - j - mu_i + i}) summed bilinearly over Schur components of length <= m."""
    lam = lam or LambdaFunctional(X)
    out = ZERO
    for mu, cf in _schur_terms(f).items():
        if len(mu) > m:
            continue
        for nu, cg in _schur_terms(g).items():
            if len(nu) > m:
                continue
            mat = [[lam(nu.part(j) - j - mu.part(i) + i) for j in range(1, m + 1)] for i in range(1, m + 1)]
            out = out + _det(mat) * _subs(cf, X.values) * _subs(cg, X.values)
    return out


def _det(mat) -> LaurentPoly:
    n = len(mat)
    if n == 0:
        return ONE
    out = ZERO
    for j in range(n):
        if mat[0][j]:
            minor = [row[:j] + row[j + 1:] for row in mat[1:]]
            term = mat[0][j] * _det(minor)
            out = out + term if j % 2 == 0 else out - term
    return out


def lambda_pairing_direct(f: SymFunc, g: SymFunc, X: TorusRep, m: int, lam=None) -> LaurentPoly:
    """(1/m!) (lambda x ... x lambda) of Delta Delta-bar f(y^-1) g(y) over y1..ym."""
    lam = lam or LambdaFunctional(X)
    names = [f"y{i}" for i in range(1, m + 1)]
    ys = [LaurentPoly.var(y) for y in names]
    alphabet = _character(ys)
    fy = LaurentPoly.coerce(plethystic_hom(PlethInput.of(alphabet.conjugate()), f))
    gy = LaurentPoly.coerce(plethystic_hom(PlethInput.of(alphabet), g))
    vander = ONE
    for i in range(m):
        for j in range(i + 1, m):
            vander = vander * (ys[i] - ys[j])
    prod = vander * vander.conjugate() * fy * gy
    out = ZERO
    for exps, coef in prod.split_by(names).items():
        val = _subs(coef, X.values)
        for e in exps:
            val = val * lam(e)
            if not val:
                break
        out = out + val
    return out * Fraction(1, factorial(m))


def lambda_pairing(f: SymFunc, g: SymFunc, X: TorusRep, m: int, method: str = "det") -> LaurentPoly:
    if method == "det":
        return lambda_pairing_det(f, g, X, m)
    if method == "direct":
        return lambda_pairing_direct(f, g, X, m)
    raise ValueError("method must be 'det' or 'direct'")


def lambda_prime_pairing(f: SymFunc, g: SymFunc, X: TorusRep, m: int) -> LaurentPoly:
    """The determinant pairing with lambda'' switched off."""

    class _Prime(LambdaFunctional):
        def __call__(self, i):
            return self.prime(i)

    return lambda_pairing_det(f, g, X, m, lam=_Prime(X))


# --------------------------------------------------------------------------
# the Z matrix


def _e_at(X: TorusRep, a: int) -> LaurentPoly:
    if a < 0 or a > X.dim:
        return ZERO
    if a == 0:
        return ONE
    return LaurentPoly.coerce(_evaluate_at(X.character(), e_basis(a, dmax=a), X.values))


def _h_at(X: TorusRep, d: int) -> LaurentPoly:
    if d < 0:
        return ZERO
    if d == 0:
        return ONE
    return LaurentPoly.coerce(_evaluate_at(X.character(), h_basis(d, dmax=d), X.values))


def z_matrix(X: TorusRep, n: int, i: int, j: int) -> LaurentPoly:
    """-sum_{a >= n+1-i} (-1)^a e_a(X) h_{j-i-a}(X)."""
    out = ZERO
    for a in range(max(0, n + 1 - i), min(X.dim, j - i) + 1):
        term = _e_at(X, a) * _h_at(X, j - i - a)
        out = out + term if a % 2 == 0 else out - term
    return -out


def z_matrix_shape(n: int, i: int, j: int) -> str:
    """Predicted shape: 'minus-one', 'quadrant' (i <= n < j, generic) or 'zero'."""
    if i == j and i >= n + 1:
        return "minus-one"
    if i <= n and j >= n + 1:
        return "quadrant"
    return "zero"


def z_prime(X: TorusRep, n: int, i: int, j: int) -> LaurentPoly:
    """The quadrant part of Z."""
    return z_matrix(X, n, i, j) if i <= n < j else ZERO


def z_matrix_probe(X: TorusRep, n: int, lo: int, hi: int) -> dict:
    """Shape and (Z')^2 = 0 checks over indices lo..hi."""
    idx = range(lo, hi + 1)
    Z = {(i, j): z_matrix(X, n, i, j) for i in idx for j in idx}
    shape_ok = True
    for (i, j), val in Z.items():
        kind = z_matrix_shape(n, i, j)
        if kind == "minus-one" and val != -1:
            shape_ok = False
        elif kind == "zero" and val:
            shape_ok = False
    square_zero = True
    for i in idx:
        for j in idx:
            acc = ZERO
            for l in idx:
                a = Z[(i, l)] if i <= n < l else ZERO
                b = Z[(l, j)] if l <= n < j else ZERO
                if a and b:
                    acc = acc + a * b
            if acc:
                square_zero = False
    return {"shape": shape_ok, "square_zero": square_zero}


# --------------------------------------------------------------------------
# finite-N approximant


def finite_X(r: int, N: int) -> list:
    """Weights w_a z1^i z2^j with 0 <= i, j < N."""
    return [
        LaurentPoly.monomial({f"w{a}": 1, "z1": i, "z2": j})
        for a in range(1, r + 1)
        for i in range(N)
        for j in range(N)
    ]


def f_N_term(f: SymFunc, g: SymFunc, r: int, k: int, X: list, quotient, values=None, v=None):
    """One summand of F_N, or ``None`` when its Omega factor has negative constant term.

    ``quotient`` are the indices of the weights of V' = X - V. ``v`` is
    substituted before Omega when given (v = 1 recovers the full character).
    """
    Vp = _character([X[i] for i in quotient])
    V = _character([w for i, w in enumerate(X) if i not in quotient])
    W = framing(r)
    E0b = V * Vp.conjugate()
    E1b = W.conjugate() * Z1 * Z2 * Vp
    E2b = (M_CHAR - 1) * V * Vp.conjugate()
    vv = LaurentPoly.var("v") if v is None else LaurentPoly.coerce(v)
    char = E0b + E1b + vv * E2b
    c0 = char.constant_term()
    if c0 < 0:
        return None
    if c0 > 0:
        raise DivergentOmega(f"positive constant term {c0}")
    fv = _evaluate_at(Vp.conjugate(), f, values)
    if not fv:
        return RatFunc(ZERO)
    gv = _evaluate_at(Vp, g, values)
    if not gv:
        return RatFunc(ZERO)
    det = ONE
    for i in quotient:
        det = det * X[i]
    omega = omega_product(char)
    if values:
        omega = omega.subs(values)
    return omega * (LaurentPoly.coerce(fv) * gv * _subs(det ** k, values))


def f_N(f: SymFunc, g: SymFunc, r: int, n: int, k: int, N: int, values=None, v=None) -> RatFunc:
    """Finite-N sum over codimension-n weight subspaces of X_N; z, w specialized via ``values``."""
    X = finite_X(r, N)
    subsets = list(combinations(range(len(X)), n))
    out = RatFunc(ZERO)
    for t in ordered_map(lambda q: f_N_term(f, g, r, k, X, q, values, v), subsets):
        if t is not None:
            out = out + t
    return out


def f_N_pruned_count(r: int, n: int, N: int, v=1) -> tuple:
    """(kept, pruned) counts of weight subsets by the constant-term test."""
    X = finite_X(r, N)
    one = SymFunc.one(0)
    kept = pruned = 0
    for q in combinations(range(len(X)), n):
        if f_N_term(one, one, r, 0, X, q, None, v) is None:
            pruned += 1
        else:
            kept += 1
    return kept, pruned


__all__ = [
    "TorusRep", "FixedPointData", "LambdaFunctional", "framing", "char_U", "char_E",
    "char_E_via_difference", "tangent_char", "det_U", "moduli_term", "moduli_inner",
    "moduli_terms_table", "grass_inner", "grass_term", "lambda_pairing", "lambda_pairing_det",
    "lambda_pairing_direct", "lambda_prime_pairing", "z_matrix", "z_matrix_shape", "z_prime", "z_matrix_probe",
    "finite_X", "f_N", "f_N_term", "f_N_pruned_count", "M_CHAR", "EMPTY",
]

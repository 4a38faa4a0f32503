"""Charge-graded semi-infinite wedge space, truncated by partition size.

The basis vector v_{mu,c} = v_{mu_1+c} ^ v_{mu_2-1+c} ^ ... is stored as
the pair (mu, c). Fermionic operators materialize only the finitely many
indices above the filled tail.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .corealg.laurent import LaurentPoly, ONE, ZERO
from .corealg.partitions import EMPTY, Partition, partitions_list, partitions_upto, z_factor
from .errors import UnstableLimit, WindowExceeded
from .symfunc import P1, PlethInput, SymFunc, omega_series, plethystic_hom


def wedge_indices(mu: Partition, c: int, count: int) -> list:
    """First ``count`` indices mu_i - i + 1 + c of v_{mu,c}."""
    return [mu.part(i) - i + 1 + c for i in range(1, count + 1)]


def from_indices(seq, c: int) -> Partition:
    """Partition of a decreasing index list whose last entry starts the filled tail."""
    return Partition(x + i - c for i, x in enumerate(seq))


class WedgeVector:
    """Finite combination of v_{mu,c} at fixed charge, truncated at |mu| <= dmax."""

    __slots__ = ("charge", "dmax", "terms")

    def __init__(self, charge: int, terms=None, dmax: int = 8):
        self.charge = charge
        self.dmax = dmax
        self.terms = {}
        for mu, c in (terms or {}).items():
            mu = Partition(mu)
            c = LaurentPoly.coerce(c)
            if c and mu.size <= dmax:
                self.terms[mu] = self.terms.get(mu, ZERO) + c
        self.terms = {k: v for k, v in self.terms.items() if v}

    @classmethod
    def basis(cls, mu, charge: int, dmax: int = 8) -> "WedgeVector":
        return cls(charge, {Partition(mu): 1}, dmax)

    @classmethod
    def vacuum(cls, charge: int, dmax: int = 8) -> "WedgeVector":
        return cls(charge, {EMPTY: 1}, dmax)

    def __add__(self, other):
        if other.charge != self.charge:
            raise ValueError("charge mismatch")
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, ZERO) + v
        return WedgeVector(self.charge, out, min(self.dmax, other.dmax))

    def __neg__(self):
        return WedgeVector(self.charge, {k: -v for k, v in self.terms.items()}, self.dmax)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, scalar):
        return WedgeVector(self.charge, {k: v * scalar for k, v in self.terms.items()}, self.dmax)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, WedgeVector):
            return NotImplemented
        if not self.terms and not other.terms:
            return True
        return self.charge == other.charge and self.terms == other.terms

    __hash__ = None

    def is_zero(self):
        return not self.terms

    def truncated(self, dmax: int) -> "WedgeVector":
        return WedgeVector(self.charge, self.terms, dmax)

    def inner(self, other) -> LaurentPoly:
        if self.charge != other.charge:
            return ZERO
        return sum((c * other.terms[k] for k, c in self.terms.items() if k in other.terms), ZERO)

    def __repr__(self):
        body = " + ".join(f"({c})*v[{','.join(map(str, k))}]" for k, c in sorted(self.terms.items()))
        return f"WedgeVector(c={self.charge}: {body or '0'})"


def window(v: WedgeVector) -> int:
    return v.dmax + abs(v.charge) + 2


def _check_window(i, v):
    K = window(v)
    if not -K <= i <= K:
        raise WindowExceeded(f"index {i} outside window [-{K}, {K}]")


def _psi_basis(i, mu, c):
    count = max(len(mu), c - i + 1) + 1
    seq = wedge_indices(mu, c, count)
    if i in seq:
        return None
    above = sum(1 for x in seq if x > i)
    new = sorted(seq + [i], reverse=True)
    return (-1) ** above, from_indices(new, c + 1)


def _psi_star_basis(i, mu, c):
    count = max(len(mu), c - i + 1) + 2
    seq = wedge_indices(mu, c, count)
    if i not in seq:
        return None
    above = sum(1 for x in seq if x > i)
    new = [x for x in seq if x != i]
    return (-1) ** above, from_indices(new, c - 1)


def _apply_basis_op(op, i, v: WedgeVector, dc: int) -> WedgeVector:
    out = {}
    for mu, coef in v.terms.items():
        r = op(i, mu, v.charge)
        if r is None:
            continue
        sign, nu = r
        if nu.size <= v.dmax:
            out[nu] = out.get(nu, ZERO) + coef * sign
    return WedgeVector(v.charge + dc, out, v.dmax)


def psi(i: int, v: WedgeVector) -> WedgeVector:
    """Wedge with v_i (charge + 1)."""
    _check_window(i, v)
    return _apply_basis_op(_psi_basis, i, v, +1)


def psi_star(i: int, v: WedgeVector) -> WedgeVector:
    """Contract v_i (charge - 1)."""
    _check_window(i, v)
    return _apply_basis_op(_psi_star_basis, i, v, -1)


def alpha(n: int, v: WedgeVector) -> WedgeVector:
    """Heisenberg operator sum_i psi_i psi*_{i+n}; alpha_0 is multiplication by the charge."""
    if n == 0:
        return v * v.charge
    c = v.charge
    out = {}
    for mu, coef in v.terms.items():
        lo = c - len(mu) + 1
        hi = mu.part(1) + c + abs(n)
        for i in range(lo - abs(n), hi + 1):
            # compose on basis vectors so the intermediate state is never truncated
            r1 = _psi_star_basis(i + n, mu, c)
            if r1 is None:
                continue
            r2 = _psi_basis(i, r1[1], c - 1)
            if r2 is None or r2[1].size > v.dmax:
                continue
            nu = r2[1]
            out[nu] = out.get(nu, ZERO) + coef * (r1[0] * r2[0])
    return WedgeVector(c, out, v.dmax)


def rho_prime_strip(n: int, v: WedgeVector, scale=1) -> WedgeVector:
    """rho'(X) for the strip X_ij = scale * delta_{j, i+n}, with normal ordering."""
    if n:
        return alpha(n, v) * scale
    out = {}
    c = v.charge
    for mu, coef in v.terms.items():
        count = len(mu) + abs(c) + 2
        seq = set(wedge_indices(mu, c, count))
        floor = c - count + 1
        present_pos = sum(1 for x in seq if x > 0)
        absent_nonpos = sum(1 for x in range(min(floor, 0), 1) if x not in seq)
        val = present_pos - absent_nonpos
        if val:
            out[mu] = coef * val * scale
    return WedgeVector(c, out, v.dmax)


# --------------------------------------------------------------------------
# band matrices and determinant matrix elements


class BandMatrix:
    """Integer-indexed matrix ``entry(i, j)`` with x_ij = 0 once i - j > ``lower``."""

    def __init__(self, entry, lower=None, name="x"):
        self._entry = entry
        self.lower = lower
        self.name = name
        self._cache = {}

    def __call__(self, i, j) -> LaurentPoly:
        if self.lower is not None and i - j > self.lower:
            return ZERO
        key = (i, j)
        if key not in self._cache:
            self._cache[key] = LaurentPoly.coerce(self._entry(i, j))
        return self._cache[key]

    @classmethod
    def identity(cls):
        return cls(lambda i, j: 1 if i == j else 0, lower=0, name="I")

    @classmethod
    def g_plus(cls, F):
        """g_+(F)_ij = h_{i-j}[F]."""
        return cls(lambda i, j: h_eval(F, i - j), lower=None, name="g+")

    @classmethod
    def g_minus(cls, F):
        """g_-(F)_ij = h_{j-i}[F]."""
        return cls(lambda i, j: h_eval(F, j - i), lower=0, name="g-")

    @classmethod
    def D(cls, a: int):
        return cls(lambda i, j: 1 if i == j and i <= a else 0, lower=0, name=f"D{a}")


_h_cache = {}


def h_eval(F, k: int) -> LaurentPoly:
    """Complete homogeneous h_k evaluated at the alphabet F (zero for k < 0)."""
    if k < 0:
        return ZERO
    F = LaurentPoly.coerce(F)
    key = (F, k)
    if key not in _h_cache:
        _h_cache[key] = _h_direct(F, k)
    return _h_cache[key]


def _h_direct(F: LaurentPoly, k: int) -> LaurentPoly:
    out = ZERO
    for mu in partitions_list(k):
        val = ONE
        for part in mu:
            val = val * F.adams(part)
        out = out + val * Fraction(1, z_factor(mu))
    return out


def det(matrix) -> LaurentPoly:
    """Determinant by cofactor expansion over column subsets (small sizes)."""
    n = len(matrix)
    if n == 0:
        return ONE

    @lru_cache(maxsize=None)
    def minor(row, cols):
        if row == n:
            return ONE
        out = ZERO
        sign = 1
        for idx, j in enumerate(cols):
            a = matrix[row][j]
            if a:
                out = out + a * minor(row + 1, cols[:idx] + cols[idx + 1:]) * sign
            sign = -sign
        return out

    return minor(0, tuple(range(n)))


def _det_ratio(x, mu, nu, c, N):
    rows = [mu.part(i) - i + 1 + c for i in range(1, N + 2)]
    cols = [nu.part(j) - j + 1 + c for j in range(1, N + 2)]
    vac = [c - i + 1 for i in range(1, N + 2)]
    num = det([[x(i, j) for j in cols] for i in rows])
    den = det([[x(i, j) for j in vac] for i in vac])
    if not den:
        raise ZeroDivisionError("vacuum determinant vanishes")
    if not den.is_monomial():
        raise ValueError("vacuum determinant is not a unit")
    return num / den


def rho_matrix_element(x, mu, nu, c: int = 0, N_limit=None) -> LaurentPoly:
    """Stabilized ratio of determinants giving <rho(x) v_{mu,c}, v_{nu,c}>.

    Rows are indexed by the wedge indices of mu, columns by those of nu.
    The limit is replaced by agreement at two consecutive sizes.
    """
    mu, nu = Partition(mu), Partition(nu)
    N = N_limit if N_limit is not None else max(len(mu), len(nu)) + 1
    a = _det_ratio(x, mu, nu, c, N)
    b = _det_ratio(x, mu, nu, c, N + 1)
    if a != b:
        raise UnstableLimit(f"ratio changed between N={N} and N={N + 1}")
    return a


def apply_band(x, v: WedgeVector, lowering=None) -> WedgeVector:
    """rho(x) on a truncated vector via determinant matrix elements."""
    out = {}
    for mu, coef in v.terms.items():
        for nu in partitions_upto(v.dmax):
            if lowering is True and not _contains(mu, nu):
                continue
            if lowering is False and not _contains(nu, mu):
                continue
            val = rho_matrix_element(x, mu, nu, v.charge)
            if val:
                out[nu] = out.get(nu, ZERO) + coef * val
    return WedgeVector(v.charge, out, v.dmax)


def _contains(big, small) -> bool:
    return len(small) <= len(big) and all(b >= s for b, s in zip(big, small))


def gamma_plus_fock(F, v: WedgeVector) -> WedgeVector:
    return apply_band(BandMatrix.g_plus(F), v, lowering=True)


def gamma_minus_fock(F, v: WedgeVector) -> WedgeVector:
    return apply_band(BandMatrix.g_minus(F), v, lowering=False)


# --------------------------------------------------------------------------
# boson-fermion dictionary


def phi_map(c: int, f: SymFunc) -> WedgeVector:
    """s_mu -> v_{mu,c}."""
    fs = f.to("s")
    return WedgeVector(c, dict(fs.terms), f.dmax)


def phi_inverse(v: WedgeVector) -> SymFunc:
    return SymFunc(dict(v.terms), "s", v.dmax)


FORMAL = "u"


def bf_coefficient(i: int, side: str, f: SymFunc) -> SymFunc:
    """[u^i] Gamma_-(u) Gamma_+^{-1}(u^{-1}) f  (side 'minus', gives psi~_i), or
    [u^{-i}] Gamma_-^{-1}(u) Gamma_+(u^{-1}) f  (side 'plus', gives psi~*_i).
    """
    u = LaurentPoly.var(FORMAL)
    uinv = LaurentPoly.var(FORMAL, -1)
    D = f.dmax
    if side == "minus":
        inner = plethystic_hom(P1 - PlethInput.of(uinv), f)
        outer = omega_series(u, D)
        target = i
    elif side == "plus":
        inner = plethystic_hom(P1 + PlethInput.of(uinv), f)
        outer = omega_series(-u, D)
        target = -i
    else:
        raise ValueError("side must be 'minus' or 'plus'")
    prod = (outer * inner).p_terms()
    out = {}
    for mu, c in prod.items():
        coef = c.split_by([FORMAL]).get((target,))
        if coef:
            out[mu] = coef
    return SymFunc(out, "p", D)


def psi_via_vertex(i: int, v: WedgeVector) -> WedgeVector:
    """psi_i = psi~_{i-c'} Q where c' = c + 1 is the charge after Q."""
    f = phi_inverse(v)
    return phi_map(v.charge + 1, bf_coefficient(i - v.charge - 1, "minus", f))


def psi_star_via_vertex(i: int, v: WedgeVector) -> WedgeVector:
    """psi*_i = Q^{-1} psi~*_{i-c} on charge c."""
    f = phi_inverse(v)
    return phi_map(v.charge - 1, bf_coefficient(i - v.charge, "plus", f))


def basis_vectors(dmax: int, charge: int, maxsize=None):
    for mu in partitions_upto(dmax if maxsize is None else maxsize):
        yield WedgeVector.basis(mu, charge, dmax)


# --------------------------------------------------------------------------
# identity suite


def _truncate_var(v: WedgeVector, name: str, top: int) -> WedgeVector:
    from .corealg.laurent import REGISTRY, exponent_of

    idx = REGISTRY.index(name)
    out = {}
    for mu, c in v.terms.items():
        t = LaurentPoly({k: x for k, x in c.terms.items() if exponent_of(k, idx) <= top})
        if t:
            out[mu] = t
    return WedgeVector(v.charge, out, v.dmax)


def check_car(maxsize=3, charges=range(-2, 3), span=4, dmax=20) -> tuple:
    """{psi_i, psi*_j} = delta_ij and {psi_i, psi_j} = 0 with room to spare in the window."""
    bad = total = 0
    for c in charges:
        for mu in partitions_upto(maxsize):
            b = WedgeVector.basis(mu, c, dmax)
            zero = WedgeVector(c, {}, dmax)
            for i in range(-span, span + 1):
                for j in range(-span, span + 1):
                    total += 1
                    lhs = psi(i, psi_star(j, b)) + psi_star(j, psi(i, b))
                    if not lhs == (b if i == j else zero):
                        bad += 1
                    if not (psi(i, psi(j, b)) + psi(j, psi(i, b))).is_zero():
                        bad += 1
                    if not (psi_star(i, psi_star(j, b)) + psi_star(j, psi_star(i, b))).is_zero():
                        bad += 1
    return bad == 0, total


def check_heisenberg(dmax=8, mmax=4, charges=range(-1, 2)) -> tuple:
    bad = total = 0
    for c in charges:
        for m in range(1, mmax + 1):
            for mu in partitions_upto(dmax - m):
                b = WedgeVector.basis(mu, c, dmax)
                lhs = alpha(m, alpha(-m, b)) - alpha(-m, alpha(m, b))
                total += 1
                if not lhs == b * m:
                    bad += 1
    return bad == 0, total


def check_phic_gamma(dmax=5, maxsize=3, charges=(-1, 0, 2)) -> tuple:
    """Gamma_+(F) = phi_{p1+F} and Gamma_-(F) = multiplication by Omega(p1 F) through Phi_c."""
    x1, x2 = LaurentPoly.var("x1"), LaurentPoly.var("x2")
    bad = total = 0
    for F in (x1, x1 + x2, 2 * x1 - x2):
        for c in charges:
            for mu in partitions_upto(maxsize):
                v = WedgeVector.basis(mu, c, dmax)
                f = SymFunc({mu: 1}, "s", dmax)
                total += 2
                if not gamma_plus_fock(F, v) == phi_map(c, plethystic_hom(P1 + PlethInput.of(F), f)):
                    bad += 1
                if not gamma_minus_fock(F, v) == phi_map(c, omega_series(F, dmax) * f):
                    bad += 1
    return bad == 0, total


def check_gamma_commutation(dmax=5, maxsize=3, charges=(0, 1)) -> tuple:
    """Gamma_+(a) Gamma_-(b) = Omega(ab) Gamma_-(b) Gamma_+(a), compared up to b-degree dmax - |mu|."""
    a, b = LaurentPoly.var("x1"), LaurentPoly.var("x2")
    bad = total = 0
    for c in charges:
        for mu in partitions_upto(maxsize):
            v = WedgeVector.basis(mu, c, dmax)
            top = dmax - Partition(mu).size
            lhs = gamma_plus_fock(a, gamma_minus_fock(b, v))
            rhs = gamma_minus_fock(b, gamma_plus_fock(a, v))
            om = sum(((a * b) ** j for j in range(top + 1)), ZERO)
            rhs = WedgeVector(c, {k: x * om for k, x in rhs.terms.items()}, dmax)
            total += 1
            if not _truncate_var(lhs, "x2", top) == _truncate_var(rhs, "x2", top):
                bad += 1
    return bad == 0, total


def check_boson_fermion(maxsize=3, charges=range(-2, 3), span=4, dmax=9) -> tuple:
    bad = total = 0
    for c in charges:
        for mu in partitions_upto(maxsize):
            b = WedgeVector.basis(mu, c, dmax)
            for i in range(c - span, c + span + 1):
                total += 2
                if not psi(i, b) == psi_via_vertex(i, b):
                    bad += 1
                if not psi_star(i, b) == psi_star_via_vertex(i, b):
                    bad += 1
    return bad == 0, total


def check_projection(nmax=3, charges=range(-2, 3), maxsize=4) -> tuple:
    """rho(D_{n+c}) is diagonal with entry 1 iff mu_1 <= n, and equals omega pi_n omega."""
    from .symfunc import omega_involution, pi_n

    bad = total = 0
    for n in range(nmax + 1):
        for c in charges:
            for mu in partitions_upto(maxsize):
                for nu in partitions_upto(maxsize):
                    total += 1
                    val = rho_matrix_element(BandMatrix.D(n + c), mu, nu, c)
                    want = 1 if (mu == nu and mu.part(1) <= n) else 0
                    if val != want:
                        bad += 1
                    if mu == nu:
                        f = SymFunc({mu: 1}, "s", maxsize)
                        img = omega_involution(pi_n(n, omega_involution(f)))
                        if not img == (f if want else SymFunc.zero(maxsize)):
                            bad += 1
    return bad == 0, total


def fock_suite(quick: bool = False) -> dict:
    """Run every identity check; ``quick`` shrinks the grids."""
    if quick:
        return {
            "anticommutation": check_car(maxsize=2, charges=range(-1, 2), span=2, dmax=14),
            "heisenberg": check_heisenberg(dmax=6, mmax=3, charges=(0,)),
            "phic_gamma": check_phic_gamma(dmax=4, maxsize=2, charges=(0,)),
            "gamma_commutation": check_gamma_commutation(dmax=4, maxsize=2, charges=(0,)),
            "boson_fermion": check_boson_fermion(maxsize=2, charges=range(-1, 2), span=2, dmax=7),
            "projection": check_projection(nmax=2, charges=(0, 1), maxsize=3),
        }
    return {
        "anticommutation": check_car(),
        "heisenberg": check_heisenberg(),
        "phic_gamma": check_phic_gamma(),
        "gamma_commutation": check_gamma_commutation(),
        "boson_fermion": check_boson_fermion(),
        "projection": check_projection(),
    }

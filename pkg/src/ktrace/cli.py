"""``ktrace`` command line.

Exit codes: 0 when every check passes, 1 on a mathematical mismatch or
computation error, 2 on usage or parse errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass, field
from fractions import Fraction

from . import __version__
from .acceptance import CRITERIA
from .corealg import RatFunc, expand_at_origin, partitions_list
from .errors import KTraceError, ParseError
from .expr import parse_expr
from .fock import fock_suite
from .localization import TorusRep, f_N, grass_inner, moduli_inner
from .parallel import ordered_map, thread_count
from .symfunc import SymFunc, s
from .vertexops import (
    check_theoremA,
    grass_rhs,
    partition_function_Z,
    random_w_values,
    working_degree,
    z_infinity_check,
)

SCHEMA_VERSION = 1
W_MODES = ("specialized", "symbolic")


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    r: int = None
    n: int = None
    k: int = None
    kmin: int = None
    kmax: int = None
    N: int = None
    m: int = None
    Ns: tuple = None
    deg: int = None
    D_z: int = 4
    D_sym: int = None
    seed: int = 0
    w_mode: str = "specialized"
    weights: tuple = ()
    f: str = None
    g: str = None
    z1: str = None
    z2: str = None
    criteria: tuple = None
    quick: bool = False
    format: str = "text"
    output: str = field(default=None, metadata={"serialize": False})

    def validate(self):
        for name in ("r", "n", "k", "kmin", "kmax", "N", "m", "deg", "D_z", "D_sym"):
            v = getattr(self, name)
            if v is not None and v < 0:
                raise ConfigError(f"--{name.replace('_', '-')} must be nonnegative")
        if self.w_mode not in W_MODES:
            raise ConfigError(f"unknown w mode {self.w_mode!r}")
        if self.kmin is not None and self.kmax is not None and self.kmin > self.kmax:
            raise ConfigError("--kmin exceeds --kmax")
        if self.m is not None and self.N is not None and self.m > self.N:
            raise ConfigError("--m exceeds --N")
        if self.criteria:
            bad = [c for c in self.criteria if c not in CRITERIA]
            if bad:
                raise ConfigError(f"unknown criteria {bad}")
        for name, _ in self.weights:
            if not (name[0] in "wxz" and name[1:].isdigit()):
                raise ConfigError(f"cannot assign a value to {name!r}")
        return self

    def to_json_obj(self):
        out = {}
        for k, v in asdict(self).items():
            if k == "output":
                continue
            if isinstance(v, tuple):
                v = [list(x) if isinstance(x, tuple) else x for x in v]
            out[k] = v
        return out


# --------------------------------------------------------------------------
# argument helpers


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _assignment(text: str):
    name, sep, val = text.partition("=")
    if not sep:
        raise argparse.ArgumentTypeError(f"expected NAME=VALUE, got {text!r}")
    _fraction(val)
    return (name.strip(), val.strip())


def _int_list(text: str):
    try:
        return tuple(int(t) for t in text.split(",") if t.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _values(cfg: RunConfig, r: int) -> dict:
    vals = random_w_values(r, cfg.seed) if cfg.w_mode == "specialized" else {}
    for name, v in cfg.weights:
        vals[name] = Fraction(v)
    return vals or None


def _sym(text: str, dmax: int) -> SymFunc:
    return parse_expr(text).evaluate(dmax)


def _expr_degree(*texts) -> int:
    ds = [parse_expr(t).degree() for t in texts]
    return max((d for d in ds if d is not None), default=0)


def _frac_str(x) -> str:
    return str(Fraction(x))


# --------------------------------------------------------------------------
# subcommands; each returns (passed, result, text lines)


def cmd_inner_grass(cfg):
    dmax = cfg.D_sym if cfg.D_sym is not None else max(_expr_degree(cfg.f, cfg.g), 1)
    f, g = _sym(cfg.f, dmax), _sym(cfg.g, dmax)
    X = _weight_set(cfg)
    val = grass_inner(f, g, X, cfg.m)
    res = {"value": str(val), "value_json": val.to_json_obj(), "x_values": _xvals(X)}
    return True, res, [str(val)]


def _weight_set(cfg) -> TorusRep:
    if cfg.w_mode == "symbolic":
        vals = {}
        X = TorusRep.symbolic(cfg.N)
    else:
        X = TorusRep.random_rational(cfg.N, cfg.seed)
        vals = dict(X.values)
    for name, v in cfg.weights:
        if name.startswith("x"):
            vals[name] = Fraction(v)
    return TorusRep.symbolic(cfg.N, vals or None)


def _xvals(X: TorusRep) -> dict:
    return {k: _frac_str(v) for k, v in sorted((X.values or {}).items())}


def cmd_inner_moduli(cfg):
    dmax = cfg.D_sym if cfg.D_sym is not None else max(_expr_degree(cfg.f, cfg.g), 1)
    f, g = _sym(cfg.f, dmax), _sym(cfg.g, dmax)
    vals = _values(cfg, cfg.r)
    val = moduli_inner(f, g, cfg.r, cfg.n, cfg.k, vals)
    res = {"value": str(val), "value_json": val.to_json_obj(), "w_values": {k: _frac_str(v) for k, v in sorted((vals or {}).items())}}
    return True, res, [str(val)]


def cmd_check_grass(cfg):
    X = _weight_set(cfg)
    ms = [cfg.m] if cfg.m is not None else list(range(cfg.N + 1))
    cases = []
    for m in ms:
        for a in range(cfg.deg + 1):
            for mu in partitions_list(a, m):
                for b in range(cfg.deg + 1):
                    for nu in partitions_list(b):
                        cases.append((m, mu, nu))

    def run(case):
        m, mu, nu = case
        f, g = s(*mu, dmax=max(cfg.deg, 1)), s(*nu, dmax=max(cfg.deg, 1))
        lhs = grass_inner(f, g, X, m)
        rhs = RatFunc(grass_rhs(f, g, X, m, cfg.N - m))
        return lhs == rhs, lhs, rhs

    outs = ordered_map(run, cases)
    ok = sum(o[0] for o in outs)
    mism = [
        {"m": m, "f": list(mu), "g": list(nu), "localization": str(lhs), "operator_side": str(rhs)}
        for (m, mu, nu), (good, lhs, rhs) in zip(cases, outs)
        if not good
    ]
    passed = ok == len(cases)
    head = f"{'PASS' if passed else 'FAIL'} {ok}/{len(cases)} pairings"
    lines = [head] + [f"  m={d['m']} f=s{d['f']} g=s{d['g']}: {d['localization']} != {d['operator_side']}" for d in mism]
    return passed, {"total": len(cases), "equal": ok, "x_values": _xvals(X), "mismatches": mism}, lines


def cmd_check_theorem_a(cfg):
    kmin = cfg.kmin or 0
    dmax = cfg.D_sym if cfg.D_sym is not None else max(14, working_degree(SymFunc.one(0), cfg.n, cfg.kmax, cfg.D_z), _expr_degree(cfg.f, cfg.g))
    f, g = _sym(cfg.f, dmax), _sym(cfg.g, dmax)
    rep = check_theoremA(f, g, cfg.r, cfg.n, range(kmin, cfg.kmax + 1), cfg.D_z, seed=cfg.seed, values=_values(cfg, cfg.r) or {})
    passed = rep.passed()
    lines = [f"{'PASS' if passed else 'FAIL'} k0 = {rep.k0}"]
    lines.append("  k  status    lhs_zero  rhs_zero")
    for c in rep.checks:
        lz = "-" if c.lhs is None else str(c.lhs.is_zero())
        lines.append(f"{c.k:3d}  {c.status:8s}  {lz:8s}  {c.rhs.is_zero()!s:8s}")
        for _, (a, b, x, y) in zip(range(3), c.mismatches):
            lines.append(f"       z1^{a} z2^{b}: {x} != {y}")
    res = rep.to_json_obj()
    res["passed"] = passed
    return passed, res, lines


def cmd_zn(cfg):
    vals = _values(cfg, cfg.r)
    Z = partition_function_Z(cfg.r, cfg.n, vals)
    ser = expand_at_origin(Z, cfg.D_z)
    res = {"value": str(Z), "value_json": Z.to_json_obj(), "series": ser.to_json_obj(), "series_text": str(ser)}
    return True, res, [str(Z), str(ser)]


def cmd_zinf_check(cfg):
    vals = _values(cfg, cfg.r)
    rep = z_infinity_check(cfg.r, cfg.D_z, vals)
    passed = bool(rep.consistent)
    lines = [f"{'PASS' if passed else 'FAIL'} consistent normalizations: {', '.join(rep.consistent) or 'none'}"]
    for name, (_, ok) in rep.candidates.items():
        lines.append(f"  {name}: {'holds' if ok else 'fails'}")
    return passed, rep.to_json_obj(), lines


def cmd_fock_check(cfg):
    res = fock_suite(quick=cfg.quick)
    passed = all(v[0] for v in res.values())
    lines = [f"{'PASS' if passed else 'FAIL'} fock identities"]
    lines += [f"  {k}: {'ok' if v[0] else 'FAILED'} ({v[1]} cases)" for k, v in res.items()]
    return passed, {k: {"passed": v[0], "cases": v[1]} for k, v in res.items()}, lines


def cmd_fn_probe(cfg):
    dmax = cfg.D_sym if cfg.D_sym is not None else max(_expr_degree(cfg.f, cfg.g), 1)
    f, g = _sym(cfg.f, dmax), _sym(cfg.g, dmax)
    vals = dict(_values(cfg, cfg.r) or {})
    vals["z1"], vals["z2"] = Fraction(cfg.z1), Fraction(cfg.z2)
    target = moduli_inner(f, g, cfg.r, cfg.n, cfg.k, vals).evaluate({})
    seq = [f_N(f, g, cfg.r, cfg.n, cfg.k, N, vals, v=1).evaluate({}) for N in cfg.Ns]
    diffs = [abs(x - target) for x in seq]
    passed = all(a > b for a, b in zip(diffs, diffs[1:]))
    lines = [f"{'PASS' if passed else 'FAIL'} |F_N(1) - localization| {'decreases' if passed else 'does not decrease'}", f"  localization: {target}"]
    lines += [f"  N={N}: F_N(1) = {x}  difference {d} ({float(d):.6g})" for N, x, d in zip(cfg.Ns, seq, diffs)]
    res = {
        "target": _frac_str(target),
        "values": [{"N": N, "F_N": _frac_str(x), "difference": _frac_str(d)} for N, x, d in zip(cfg.Ns, seq, diffs)],
        "monotone": passed,
    }
    return passed, res, lines


def cmd_selftest(cfg):
    nums = cfg.criteria or tuple(sorted(CRITERIA))
    results = [CRITERIA[i]() for i in nums]
    passed = all(r.passed for r in results)
    lines = [r.line() for r in results]
    lines.append(f"{sum(r.passed for r in results)}/{len(results)} criteria pass")
    return passed, {"criteria": [r.to_json_obj() for r in results]}, lines


COMMANDS = {
    "inner-grass": cmd_inner_grass,
    "inner-moduli": cmd_inner_moduli,
    "check-grass": cmd_check_grass,
    "check-theorem-a": cmd_check_theorem_a,
    "zn": cmd_zn,
    "zinf-check": cmd_zinf_check,
    "fock-check": cmd_fock_check,
    "fn-probe": cmd_fn_probe,
    "selftest": cmd_selftest,
}


# --------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--D-z", dest="D_z", type=int, default=4, help="z-order of series (default 4)")
    common.add_argument("--D-sym", dest="D_sym", type=int, help="override the symmetric-function truncation degree")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--w-mode", choices=W_MODES, default="specialized")
    common.add_argument("--symbolic-w", dest="w_mode", action="store_const", const="symbolic", help="same as --w-mode symbolic")
    common.add_argument("--w", dest="weights", type=_assignment, action="append", default=[], metavar="NAME=VALUE",
                        help="fix a weight, e.g. --w w1=1 or --w x2=3/2 (repeatable)")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--output", "-o", help="write to this file instead of stdout")

    p = argparse.ArgumentParser(prog="ktrace", description="Exact K-theoretic pairings and trace checks.")
    p.add_argument("--version", action="version", version=f"ktrace {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, help_):
        return sub.add_parser(name, parents=[common], help=help_)

    q = add("inner-grass", "localization pairing on Gr(m, N)")
    q.add_argument("--N", type=int, required=True)
    q.add_argument("--m", type=int, required=True)
    q.add_argument("--f", default="1")
    q.add_argument("--g", default="1")

    q = add("inner-moduli", "localization pairing on the moduli space M(r, n)")
    q.add_argument("--r", type=int, required=True)
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--k", type=int, default=0)
    q.add_argument("--f", default="1")
    q.add_argument("--g", default="1")

    q = add("check-grass", "compare localization with the operator formula on a grid of Schur pairs")
    q.add_argument("--N", type=int, required=True)
    q.add_argument("--m", type=int, help="single m (default: every 0 <= m <= N)")
    q.add_argument("--deg", type=int, default=3)

    q = add("check-theorem-a", "compare localization and trace for a range of k")
    q.add_argument("--r", type=int, required=True)
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--kmin", type=int, default=0)
    q.add_argument("--kmax", type=int, default=6)
    q.add_argument("--f", default="1")
    q.add_argument("--g", default="1")

    q = add("zn", "partition function Z_{r,n}")
    q.add_argument("--r", type=int, required=True)
    q.add_argument("--n", type=int, required=True)

    q = add("zinf-check", "test both normalizations of the n -> infinity identity")
    q.add_argument("--r", type=int, default=1)

    q = add("fock-check", "semi-infinite wedge identity suite")
    q.add_argument("--quick", action="store_true")

    q = add("fn-probe", "finite-N approximants at rational z")
    q.add_argument("--r", type=int, default=1)
    q.add_argument("--n", type=int, default=1)
    q.add_argument("--k", type=int, default=2)
    q.add_argument("--Ns", type=_int_list, default=(2, 3, 4), help="comma-separated N values")
    q.add_argument("--z1", type=_fraction, default=Fraction(1, 3))
    q.add_argument("--z2", type=_fraction, default=Fraction(1, 5))
    q.add_argument("--f", default="1")
    q.add_argument("--g", default="1")

    q = add("selftest", "run the acceptance criteria")
    q.add_argument("--criteria", type=_int_list, help="comma-separated criterion numbers (default: all)")
    return p


def config_from_args(ns) -> RunConfig:
    kw = {k: v for k, v in vars(ns).items() if k in RunConfig.__dataclass_fields__}
    kw["weights"] = tuple(sorted(kw.get("weights") or ()))
    for key in ("z1", "z2"):
        if kw.get(key) is not None:
            kw[key] = _frac_str(kw[key])
    if kw.get("Ns") is not None:
        kw["Ns"] = tuple(kw["Ns"])
    return RunConfig(**kw).validate()


# --------------------------------------------------------------------------
# output


def render(cfg: RunConfig, passed: bool, result, lines) -> str:
    if cfg.format == "json":
        doc = {"schema_version": SCHEMA_VERSION, "command": cfg.command, "config": cfg.to_json_obj(), "passed": passed, "result": result}
        return json.dumps(doc, sort_keys=True, indent=2) + "\n"
    return "\n".join(lines) + "\n"


def render_error(cfg, fmt, kind, message, extra=None) -> str:
    if fmt == "json":
        err = {"type": kind, "message": message}
        err.update(extra or {})
        doc = {"schema_version": SCHEMA_VERSION, "command": cfg.command if cfg else None,
               "config": cfg.to_json_obj() if cfg else None, "passed": False, "error": err}
        return json.dumps(doc, sort_keys=True, indent=2) + "\n"
    return f"error ({kind}): {message}\n"


def _emit(text: str, path):
    if path:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    fmt = ns.format
    cfg = None
    try:
        thread_count()
        cfg = config_from_args(ns)
        passed, result, lines = COMMANDS[cfg.command](cfg)
    except ParseError as exc:
        _emit(render_error(cfg, fmt, "ParseError", str(exc.args[0]), {"offset": exc.offset, "expected": list(exc.expected)}), ns.output)
        return 2
    except (ConfigError, ValueError) as exc:
        kind = type(exc).__name__
        code = 2 if isinstance(exc, ConfigError) or cfg is None else 1
        _emit(render_error(cfg, fmt, kind, str(exc)), ns.output)
        return code
    except KTraceError as exc:
        _emit(render_error(cfg, fmt, type(exc).__name__, str(exc)), ns.output)
        return 1
    _emit(render(cfg, passed, result, lines), cfg.output)
    return 0 if passed else 1


if __name__ == "__main__":
    sys.exit(main())

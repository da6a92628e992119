"""``arithdyn`` command line.

Every subcommand writes JSON lines (one object per line, each with
``schema_version``) unless ``--format text`` or ``--format csv`` is given.
Exit status: 0 ok, 1 usage error, 2 domain error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from . import __version__
from .errors import ArithDynError

SCHEMA_VERSION = 1
log = logging.getLogger("arithdyn")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


@dataclass
class RunConfig:
    subcommand: str
    fmt: str = "json"
    cache_dir: str | None = None
    options: dict = field(default_factory=dict)

    def validate(self) -> None:
        if self.fmt not in ("json", "text", "csv"):
            raise UsageError(f"unknown format {self.fmt}")
        for key in ("bound", "pmax", "M", "B", "cap", "N", "nu", "nu2", "n", "precision"):
            v = self.options.get(key)
            if v is not None and v < 0:
                raise UsageError(f"--{key} must be non-negative")


def _coeffs(text: str) -> list[int]:
    try:
        return [int(c) for c in text.replace(" ", "").split(",") if c != ""]
    except ValueError as exc:
        raise UsageError(f"bad coefficient list {text!r}") from exc


def _witt_arg(text: str):
    """``1,-2`` or ``1,-5,6/1,-1`` (numerator/denominator, constant term first)."""
    from .witt import WittRat

    num, _, den = text.partition("/")
    try:
        return WittRat.make(_coeffs(num), _coeffs(den) if den else [1])
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _order(text: str):
    from .scheme import MonogenicOrder

    try:
        return MonogenicOrder.parse(text)
    except ValueError as exc:
        if isinstance(exc, ArithDynError):
            raise
        raise UsageError(str(exc)) from exc


def _element(text: str) -> tuple[int, ...]:
    from .scheme import parse_poly

    try:
        return parse_poly(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _pick_point(order, p: int, index: int, g: str | None):
    from .scheme import parse_poly, split_prime

    pts = split_prime(order, p, allow_nonmaximal=True)
    if g is not None:
        target = tuple(parse_poly(g))
        target = tuple(c % p for c in target)
        for x in pts:
            if x.g == target:
                return x
        raise UsageError(f"{g} is not a prime of this order over {p}")
    if not 0 <= index < len(pts):
        raise UsageError(f"point index {index} out of range (there are {len(pts)})")
    return pts[index]


def _frac_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


# subcommand handlers: each returns a list of JSON-ready dicts (and optional csv text)


def cmd_split(a):
    from .scheme import split_prime

    order = _order(a.poly)
    pts = split_prime(order, a.p, allow_nonmaximal=a.allow_nonmaximal)
    return [{"kind": "split", "poly": str(order), "p": a.p, "points": [x.to_json() for x in pts]}]


def cmd_census(a):
    from .scheme import cached_census, census

    order = _order(a.poly)
    if a.no_cache:
        cen = census(order, a.bound)
    else:
        cen, hit = cached_census(order, a.bound, a.cache_dir)
        log.info("census cache %s", "hit" if hit else "miss")
    return [{"kind": "census", **cen.to_json()}]


def cmd_maximal(a):
    from .scheme import is_maximal_at

    order = _order(a.poly)
    return [{"kind": "maximal", "poly": str(order), "p": a.p, "disc": order.disc, "maximal": is_maximal_at(order, a.p)}]


def cmd_packets(a):
    from .packets import act, canonicalize, fiber_label, isotropy_symbolic

    order = _order(a.poly)
    x = _pick_point(order, a.p, a.point, a.g)
    pt = canonicalize(x, a.M, a.a, Fraction(a.r))
    out = {"kind": "packet", "point": {"p": x.p, "d": x.d, "g": list(x.g)}, "packet": pt.to_json()}
    out["fiber_label"] = list(fiber_label(pt))
    out["isotropy_generator"] = isotropy_symbolic(pt)
    if a.act is not None:
        moved = act(pt, Fraction(a.act))
        out["acted"] = {"by": str(Fraction(a.act)), "result": moved.to_json(), "fixed": moved == pt}
    return [out]


def cmd_isotropy(a):
    from .packets import isotropy_at_level

    order = _order(a.poly)
    x = _pick_point(order, a.p, a.point, a.g)
    det = sorted(isotropy_at_level(x, a.M, a.B, a.a))
    return [{"kind": "isotropy", "point": {"p": x.p, "d": x.d}, "level": a.M, "bound": a.B, "detected": [_frac_str(f) for f in det]}]


def cmd_stable_level(a):
    from .packets import isotropy_at_level, stable_level

    order = _order(a.poly)
    x = _pick_point(order, a.p, a.point, a.g)
    M = stable_level(x, a.B, a.cap)
    det = sorted(isotropy_at_level(x, M, a.B))
    return [{"kind": "stable-level", "point": {"p": x.p, "d": x.d}, "level": M, "bound": a.B, "detected": [_frac_str(f) for f in det]}]


def cmd_lemma5(a):
    from .arith import finite_field
    from .lemma5 import lemma5_witness

    F = finite_field(a.p, a.d)
    q = a.q if a.q else a.p
    cs = range(1, F.size) if a.all else [a.c]
    out = []
    for c in cs:
        w = lemma5_witness(c, F, q, a.nu, a.nu2)
        out.append({"kind": "lemma5", "Q": F.size, "verified": w.verify(), **w.to_json()})
    return out


def cmd_union_index(a):
    from .arith import euler_phi
    from .packets import union_index

    i = union_index(a.N, a.nu, a.nu2)
    return [{"kind": "union-index", "N": a.N, "nu": a.nu, "nu2": a.nu2, "i": i, "phi_N": euler_phi(a.N) if a.N > 1 else 1}]


def cmd_spectrum(a):
    from .flow import orbit_length_spectrum

    order = _order(a.poly)
    entries = orbit_length_spectrum(order, a.bound)
    return [{"kind": "spectrum", "poly": str(order), "norm_bound": a.bound, "entries": [e.to_json() for e in entries]}]


def cmd_flow(a):
    from .flow import GenericPoint, LogTime, flow, is_periodic, suspend
    from .packets import canonicalize

    try:
        t = LogTime.parse(a.t)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if a.generic:
        base = GenericPoint(a.M, a.a, Fraction(a.r))
        desc = {"generic": {"M": base.M, "u": base.u, "r": str(base.r)}}
    else:
        order = _order(a.poly)
        x = _pick_point(order, a.p, a.point, a.g)
        base = canonicalize(x, a.M, a.a, Fraction(a.r))
        desc = {"packet": base.to_json()}
    start = suspend(base)
    end = flow(start, t)
    out = {"kind": "flow", "start": desc, "t": str(t), "theta": str(end.theta)}
    out["end_base"] = end.base.to_json() if hasattr(end.base, "to_json") else {"M": end.base.M, "u": end.base.u, "r": str(end.base.r)}
    out["periodic"] = is_periodic(start, t)
    return [out]


def cmd_witt(a):
    from .witt import TeichCombo, evaluate, frobenius_w, ghost, verschiebung, witt_add, witt_mul, zero_set

    op = a.op
    if op in ("add", "mul"):
        if a.b is None:
            raise UsageError(f"witt {op} needs --b")
        x, y = _witt_arg(a.a), _witt_arg(a.b)
        w = witt_add(x, y) if op == "add" else witt_mul(x, y)
        return [{"kind": f"witt-{op}", **w.to_json()}]
    if op in ("frob", "versch"):
        w = (frobenius_w if op == "frob" else verschiebung)(_witt_arg(a.a), a.nu)
        return [{"kind": f"witt-{op}", "nu": a.nu, **w.to_json()}]
    if op == "ghost":
        g = ghost(_witt_arg(a.a), a.n)
        return [{"kind": "witt-ghost", "n": a.n, "ghost": list(g.entries)}]
    if op == "eval":
        from .characters import TruncatedCharacter

        order = _order(a.poly)
        x = _pick_point(order, a.p, a.point, a.g)
        chi = TruncatedCharacter(x, a.M, a.exp)
        plus = [_element(e) for e in (a.plus or [])]
        minus = [_element(e) for e in (a.minus or [])]
        psi = TeichCombo.of(order, *plus, *minus, signs=[1] * len(plus) + [-1] * len(minus))
        val = evaluate(psi, chi)
        return [{"kind": "witt-eval", "character": chi.to_json(), "value": val.to_json(), "zero": val.is_zero()}]
    if op == "zeroset":
        order = _order(a.poly)
        pts = zero_set(order, _element(a.r), a.bound)
        return [{"kind": "witt-zeroset", "poly": str(order), "r": a.r, "norm_bound": a.bound, "points": [x.to_json() for x in pts]}]
    raise UsageError(f"unknown witt op {op}")


def _zeta_common(a, fn):
    order = _order(a.poly)
    try:
        s = Fraction(a.s)
    except ValueError as exc:
        raise UsageError(f"bad --s {a.s!r}") from exc
    z = fn(order, s, a.pmax, a.precision)
    if a.format == "csv":
        return [], z.factors_csv()
    return [z.to_json()], None


def cmd_zeta(a):
    from .zeta import euler_partial

    return _zeta_common(a, euler_partial)


def cmd_ruelle(a):
    from .zeta import ruelle_partial

    return _zeta_common(a, ruelle_partial)


def cmd_components(a):
    from .zeta import RestrictedCharacter, catalog_for_order, component_count, component_label, cyclotomic_field, field_q, quadratic_field

    if a.poly:
        entry = catalog_for_order(_order(a.poly))
    else:
        kind, _, arg = (a.field or "Q").partition(":")
        if kind == "Q":
            entry = field_q()
        elif kind == "quadratic":
            entry = quadratic_field(int(arg))
        elif kind == "cyclotomic":
            entry = cyclotomic_field(int(arg))
        else:
            from .errors import UnsupportedFieldError

            raise UnsupportedFieldError(f"field {a.field!r} not in the catalog")
    out = {"kind": "components", "field": entry.label, "d_mu": component_count(entry), "label_modulus": entry.label_modulus}
    if a.u is not None:
        chi = RestrictedCharacter(a.k, a.u, a.M)
        out["label"] = component_label(chi, entry)
        out["character"] = {"k": chi.k, "u": chi.u, "M": chi.M}
    return [out]


def _add_point_args(sp, level=True):
    sp.add_argument("--poly", default="t")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--point", type=int, default=0, help="index among the primes over p")
    sp.add_argument("--g", default=None, help="select the prime by its factor, e.g. t+2")
    if level:
        sp.add_argument("--M", type=int, required=True)


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="arithdyn", description="finite-level arithmetic dynamics workbench")
    ap.add_argument("--version", action="version", version=__version__)
    ap.add_argument("--format", choices=["json", "text", "csv"], default="json")
    ap.add_argument("--cache-dir", default=None)
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="cmd", parser_class=_Parser)
    # global flags are also accepted after the subcommand
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=["json", "text", "csv"], default=argparse.SUPPRESS)
    common.add_argument("--cache-dir", default=argparse.SUPPRESS)

    sp = sub.add_parser("split", parents=[common])
    sp.add_argument("--poly", required=True)
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--allow-nonmaximal", action="store_true")
    sp.set_defaults(fn=cmd_split)

    sp = sub.add_parser("census", parents=[common])
    sp.add_argument("--poly", required=True)
    sp.add_argument("--bound", type=int, required=True)
    sp.add_argument("--no-cache", action="store_true")
    sp.set_defaults(fn=cmd_census)

    sp = sub.add_parser("maximal", parents=[common])
    sp.add_argument("--poly", required=True)
    sp.add_argument("--p", type=int, required=True)
    sp.set_defaults(fn=cmd_maximal)

    sp = sub.add_parser("packets", parents=[common])
    _add_point_args(sp)
    sp.add_argument("--a", type=int, default=1)
    sp.add_argument("--r", default="1")
    sp.add_argument("--act", default=None)
    sp.set_defaults(fn=cmd_packets)

    sp = sub.add_parser("isotropy", parents=[common])
    _add_point_args(sp)
    sp.add_argument("--B", type=int, required=True)
    sp.add_argument("--a", type=int, default=1)
    sp.set_defaults(fn=cmd_isotropy)

    sp = sub.add_parser("stable-level", parents=[common])
    _add_point_args(sp, level=False)
    sp.add_argument("--B", type=int, required=True)
    sp.add_argument("--cap", type=int, default=10**6)
    sp.set_defaults(fn=cmd_stable_level)

    sp = sub.add_parser("lemma5", parents=[common])
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--d", type=int, default=1, help="F_Q with Q = p^d")
    sp.add_argument("--q", type=int, default=0, help="subfield order (default p)")
    sp.add_argument("--nu", type=int, required=True)
    sp.add_argument("--nu2", type=int, required=True)
    grp = sp.add_mutually_exclusive_group(required=True)
    grp.add_argument("--c", type=int, help="element by base-p encoding")
    grp.add_argument("--all", action="store_true")
    sp.set_defaults(fn=cmd_lemma5)

    sp = sub.add_parser("union-index", parents=[common])
    sp.add_argument("--N", type=int, required=True)
    sp.add_argument("--nu", type=int, required=True)
    sp.add_argument("--nu2", type=int, required=True)
    sp.set_defaults(fn=cmd_union_index)

    sp = sub.add_parser("spectrum", parents=[common])
    sp.add_argument("--poly", required=True)
    sp.add_argument("--bound", type=int, required=True)
    sp.set_defaults(fn=cmd_spectrum)

    sp = sub.add_parser("flow", parents=[common])
    sp.add_argument("--poly", default="t")
    sp.add_argument("--p", type=int, default=2)
    sp.add_argument("--point", type=int, default=0)
    sp.add_argument("--g", default=None)
    sp.add_argument("--M", type=int, required=True)
    sp.add_argument("--a", type=int, default=1)
    sp.add_argument("--r", default="1")
    sp.add_argument("--t", required=True, help="e.g. 'log 3' or '1/2 log 5 - log 2'")
    sp.add_argument("--generic", action="store_true", help="use a non-packet base point")
    sp.set_defaults(fn=cmd_flow)

    sp = sub.add_parser("witt", parents=[common])
    sp.add_argument("op", choices=["add", "mul", "frob", "versch", "ghost", "eval", "zeroset"])
    sp.add_argument("--a", default="1", help="coefficients, constant term first; num/den with '/'")
    sp.add_argument("--b", default=None)
    sp.add_argument("--nu", type=int, default=2)
    sp.add_argument("--n", type=int, default=6)
    sp.add_argument("--poly", default="t")
    sp.add_argument("--p", type=int, default=None)
    sp.add_argument("--point", type=int, default=0)
    sp.add_argument("--g", default=None)
    sp.add_argument("--M", type=int, default=None)
    sp.add_argument("--exp", type=int, default=1, help="character exponent a")
    sp.add_argument("--plus", action="append", help="element with sign +1 (repeatable)")
    sp.add_argument("--minus", action="append", help="element with sign -1 (repeatable)")
    sp.add_argument("--r", default="1", help="element for zeroset")
    sp.add_argument("--bound", type=int, default=100)
    sp.set_defaults(fn=cmd_witt)

    for name, fn in (("zeta", cmd_zeta), ("ruelle", cmd_ruelle)):
        sp = sub.add_parser(name, parents=[common])
        sp.add_argument("--poly", required=True)
        sp.add_argument("--s", default="2")
        sp.add_argument("--pmax", type=int, required=True)
        sp.add_argument("--precision", type=int, default=80, help="bits")
        sp.set_defaults(fn=fn)

    sp = sub.add_parser("components", parents=[common])
    grp = sp.add_mutually_exclusive_group()
    grp.add_argument("--field", default=None, help="Q | quadratic:D | cyclotomic:n")
    grp.add_argument("--poly", default=None)
    sp.add_argument("--k", type=int, default=1)
    sp.add_argument("--u", type=int, default=None)
    sp.add_argument("--M", type=int, default=None)
    sp.set_defaults(fn=cmd_components)
    return ap


def _emit(objs, fmt, out) -> None:
    for obj in objs:
        obj = {"schema_version": SCHEMA_VERSION, **obj}
        if fmt == "text":
            out.write(" ".join(f"{k}={v}" for k, v in obj.items()) + "\n")
        else:
            out.write(json.dumps(obj, sort_keys=True) + "\n")


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if not getattr(args, "cmd", None):
            raise UsageError("a subcommand is required")
        logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=err, format="%(message)s")
        opts = {k: v for k, v in vars(args).items() if isinstance(v, int) and not isinstance(v, bool)}
        cfg = RunConfig(args.cmd, args.format, args.cache_dir, opts)
        cfg.validate()
        if args.cmd == "witt" and args.op == "eval" and (args.p is None or args.M is None):
            raise UsageError("witt eval needs --p and --M")
        result = args.fn(args)
        csv_text = None
        if isinstance(result, tuple):
            result, csv_text = result
        if cfg.fmt == "csv":
            if csv_text is None:
                raise UsageError("csv output is only available for zeta and ruelle")
            out.write(csv_text)
        else:
            _emit(result, cfg.fmt, out)
        return 0
    except UsageError as exc:
        err.write(f"usage error: {exc}\n")
        return 1
    except ArithDynError as exc:
        err.write(f"{exc.error_name}: {exc}\n")
        _emit([{"error": exc.error_name, "message": str(exc)}], "json", out)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

"""Command-line front end.

Exit codes: 0 when every check passes, 1 when a verification fails, 2 for
usage, parse or configuration errors.  ``--json`` prints canonical JSON
(sorted keys, compact separators) on standard output; timings go to
standard error so that standard output is byte-stable.
"""

import argparse
import json
import os
import sys
import time
from fractions import Fraction

from . import functor, kaehler, lie as lie_mod, toroidal, vacuum
from .errors import (
    CriticalLevelError,
    InvalidHomError,
    MissingLoopVariableError,
    ParseError,
    SpecMismatchError,
    UnsupportedConfigurationError,
)
from .parse import parse_element, parse_field, parse_hom, parse_modes
from .ring import RingSpec

DEFAULT_RING = "laurent:t;t=t"


class UsageError(Exception):
    pass


def canonical_json(obj):
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), default=str)


# ---------------------------------------------------------------------------
# argument helpers


def ring_arg(text):
    try:
        return RingSpec.parse(text)
    except ValueError as exc:
        raise UsageError(f"bad ring {text!r}: {exc}") from None


def loop_ring(spec):
    """``spec`` with a loop variable: the flagged one, else an invertible variable named ``t``."""
    if spec.t_index is not None:
        return spec
    if "t" in spec.names and spec.invertible[spec.index("t")]:
        return RingSpec(spec.names, spec.invertible, spec.index("t"))
    raise MissingLoopVariableError(f"{spec} has no loop variable; add ';t=<name>'")


def lie_arg(text):
    if text in lie_mod.PRESETS:
        return lie_mod.preset(text)
    if os.path.exists(text):
        try:
            return lie_mod.LieAlgebra.load(text)
        except (ValueError, KeyError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot load Lie algebra from {text!r}: {exc}") from None
    raise UsageError(f"unknown Lie algebra {text!r}; use a preset ({', '.join(sorted(lie_mod.PRESETS))}) or a JSON file")


def box_arg(text):
    """``N`` for ``[-N, N]`` or ``lo:hi``."""
    try:
        if ":" in text:
            lo, hi = (int(x) for x in text.split(":"))
        else:
            hi = int(text)
            lo = -hi
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected N or lo:hi, got {text!r}") from None
    if lo > hi:
        raise argparse.ArgumentTypeError(f"empty box {text!r}")
    return lo, hi


# ---------------------------------------------------------------------------
# commands


def _report_result(args, reports, extra=None):
    ok = all(r.passed for r in reports)
    if args.json:
        payload = {"passed": ok, "reports": [r.to_dict() for r in reports]}
        if extra:
            payload.update(extra)
        print(canonical_json(payload))
    else:
        for key, value in (extra or {}).items():
            print(f"{key}: {value}")
        for r in reports:
            print(r.summary())
            for f in r.failures[:5]:
                print(f"  {f['identity']} at {f['tuple']}: {f['lhs']} != {f['rhs']}")
    return 0 if ok else 1


def cmd_validate(args):
    if args.what == "lie":
        if args.file:
            L = lie_arg(args.file)
        else:
            L = lie_arg(args.preset or "sl2")
        report = lie_mod.validate_lie(L)
        lam = lie_mod.proportionality(lie_mod.killing_form(L), L.form)
        extra = {"killing_over_form": None if lam is None else str(lam)}
        return _report_result(args, [report], extra)
    from .ring import validate_hom

    if not (args.source and args.target and args.hom):
        raise UsageError("validate hom needs --source, --target and --hom")
    h = parse_hom(args.hom, ring_arg(args.source), ring_arg(args.target))
    return _report_result(args, [validate_hom(h)])


def cmd_bracket(args):
    spec, L = ring_arg(args.ring), lie_arg(args.lie)
    a = parse_element(args.a, spec, L, kind="toroidal")
    b = parse_element(args.b, spec, L, kind="toroidal")
    result = toroidal.bracket_hat(a, b)
    if args.json:
        print(canonical_json({"a": str(a), "b": str(b), "bracket": str(result)}))
    else:
        print(result)
    return 0


def cmd_nf(args):
    spec = ring_arg(args.ring)
    w = parse_element(args.expr, spec, kind="form")
    nf = kaehler.normal_form(w)
    if args.json:
        print(canonical_json({"expr": str(w), "normal_form": str(nf), "exact": nf.is_zero()}))
    else:
        print(nf)
    return 0


def cmd_dim(args):
    spec = ring_arg(args.ring)
    lo, hi = args.box
    n = spec.nvars
    table = kaehler.graded_dimension(spec, (lo,) * n, (hi,) * n)
    if args.json:
        print(canonical_json([{"degree": list(d), "dim": k} for d, k in table]))
    else:
        for d, k in table:
            print(f"{' '.join(str(x) for x in d)}: {k}")
    return 0


def cmd_act(args):
    spec, L = loop_ring(ring_arg(args.ring)), lie_arg(args.lie)
    modes = parse_modes(args.modes, L, spec)
    M = vacuum.vacuum_module(L, spec)
    v = M.vacuum()
    for f, n in reversed(modes):
        v = M.act(vacuum.field_mode(f, n), v)
    if args.json:
        print(canonical_json({"modes": [f"{f}({n})" for f, n in modes], "state": v.to_json(), "text": str(v)}))
    else:
        print(v)
    return 0


def cmd_ope(args):
    spec, L = loop_ring(ring_arg(args.ring)), lie_arg(args.lie)
    f = parse_field(args.f1, L, spec)
    g = parse_field(args.f2, L, spec)
    delta, ddelta = vacuum.ope_terms(f, g, args.convention)
    extra = {
        "f1": str(f),
        "f2": str(g),
        "delta": vacuum.format_ope(delta),
        "ddelta": vacuum.format_ope(ddelta),
    }
    reports = [vacuum.commutator_check(f, g, args.max_weight, convention=args.convention)]
    if not args.no_locality:
        reports.append(vacuum.locality_check(f, g, args.max_weight))
    return _report_result(args, reports, extra)


def _default_fields(L, spec):
    A = spec.fiber()
    fields = [vacuum.FieldSpec.J(L, spec, 0), vacuum.FieldSpec.Kdt(L, spec)]
    if A.nvars:
        fields.append(vacuum.FieldSpec.Kom(L, spec, kaehler.KaehlerElement.basic(A, (0,) * A.nvars, 0)))
    return fields


def cmd_verify(args):
    spec, L = ring_arg(args.ring), lie_arg(args.lie)
    suite, bound = args.suite, args.bound
    if suite == "jacobi":
        reports = [toroidal.jacobi_suite(L, spec, bound)]
    elif suite == "cocycle":
        reports = [toroidal.cocycle_check(L, spec, bound)]
    elif suite == "h0":
        reports = [toroidal.h0_iso_check(L, spec, bound)]
    elif suite == "module":
        reports = [vacuum.module_axiom_check(L, loop_ring(spec), bound, args.window)]
    elif suite == "locality":
        spec = loop_ring(spec)
        f = parse_field(args.f1 or f"J[{L.names[0]}]", L, spec)
        g = parse_field(args.f2 or f"J[{L.names[-1]}]", L, spec)
        reports = [vacuum.locality_check(f, g, bound, N=args.N)]
    elif suite in ("translation", "vacuum"):
        spec = loop_ring(spec)
        fields = [parse_field(t, L, spec) for t in args.field] if args.field else _default_fields(L, spec)
        if suite == "translation":
            reports = [vacuum.translation_axiom_check(f, bound) for f in fields]
        else:
            reports = [vacuum.vacuum_axiom_check(f, window=bound) for f in fields]
    elif suite == "functor":
        spec = loop_ring(spec)
        if not args.hom or not args.target:
            raise UsageError("verify functor needs --target and --hom")
        target = loop_ring(ring_arg(args.target))
        psi = parse_hom(args.hom, spec, target)
        reports = [functor.hom_intertwines_check(psi, L, bound), functor.embedding_check(L, spec, bound + 1)]
    elif suite == "sugawara":
        reports = [functor.sugawara_check(L, args.level, bound)]
    else:  # pragma: no cover - argparse restricts the choices
        raise UsageError(f"unknown suite {suite!r}")
    return _report_result(args, reports)


def cmd_character(args):
    L = lie_arg(args.lie)
    table = vacuum.character(L, args.max_weight)
    ranks = [r for _, r in table]
    if args.json:
        print(canonical_json(ranks))
    else:
        for w, r in table:
            print(f"{w}: {r}")
    return 0


# ---------------------------------------------------------------------------


def build_parser():
    p = argparse.ArgumentParser(prog="toroidal-va", description="Exact computations in toroidal vertex algebras.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, ring=True, lie=True):
        if ring:
            sp.add_argument("--ring", default=DEFAULT_RING, help=f"ring description (default {DEFAULT_RING})")
        if lie:
            sp.add_argument("--lie", default="sl2", help="preset name or JSON file (default sl2)")
        sp.add_argument("--json", action="store_true", help="canonical JSON output")

    sp = sub.add_parser("validate", help="validate a Lie algebra or a ring hom")
    sp.add_argument("what", choices=["lie", "hom"])
    sp.add_argument("--preset")
    sp.add_argument("--file")
    sp.add_argument("--source")
    sp.add_argument("--target")
    sp.add_argument("--hom")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_validate)

    sp = sub.add_parser("bracket", help="bracket of two toroidal elements")
    common(sp)
    sp.add_argument("--a", required=True)
    sp.add_argument("--b", required=True)
    sp.set_defaults(func=cmd_bracket)

    sp = sub.add_parser("nf", help="normal form of a one-form modulo exact forms")
    common(sp, lie=False)
    sp.add_argument("--expr", required=True)
    sp.set_defaults(func=cmd_nf)

    sp = sub.add_parser("dim", help="graded dimensions of Omega^1/dR over a box")
    common(sp, lie=False)
    sp.add_argument("--box", type=box_arg, default=(-3, 3), help="N or lo:hi (default 3)")
    sp.set_defaults(func=cmd_dim)

    sp = sub.add_parser("act", help="apply modes to the vacuum")
    common(sp)
    sp.add_argument("--modes", required=True, help='e.g. "J[e;u=1](1) J[f;u=1](-1)" (rightmost acts first)')
    sp.set_defaults(func=cmd_act)

    sp = sub.add_parser("ope", help="operator product of two generating fields, with checks")
    common(sp)
    sp.add_argument("--f1", required=True)
    sp.add_argument("--f2", required=True)
    sp.add_argument("--max-weight", type=int, default=3)
    sp.add_argument("--convention", choices=["bracket", "opposite", "no_derivative"], default="bracket")
    sp.add_argument("--no-locality", action="store_true")
    sp.set_defaults(func=cmd_ope)

    sp = sub.add_parser("verify", help="run a verification suite")
    sp.add_argument(
        "suite",
        choices=["jacobi", "cocycle", "h0", "module", "locality", "translation", "vacuum", "functor", "sugawara"],
    )
    common(sp)
    sp.add_argument("--bound", type=int, default=3)
    sp.add_argument("--window", type=box_arg, default=(0, 0), help="A-degree window for module states")
    sp.add_argument("--f1")
    sp.add_argument("--f2")
    sp.add_argument("--N", type=int, default=2)
    sp.add_argument("--field", action="append")
    sp.add_argument("--target")
    sp.add_argument("--hom")
    sp.add_argument("--level", type=Fraction, default=1)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("character", help="ranks of the weight spaces over Q[k] for A = Q")
    sp.add_argument("--lie", default="sl2")
    sp.add_argument("--max-weight", type=int, default=3)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_character)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    start = time.perf_counter()
    try:
        code = args.func(args)
    except (
        UsageError,
        ParseError,
        InvalidHomError,
        MissingLoopVariableError,
        SpecMismatchError,
        UnsupportedConfigurationError,
        CriticalLevelError,
        KeyError,
        ValueError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"time: {time.perf_counter() - start:.3f}s", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end: enumeration, verification and computation
subcommands with canonical JSON output.

Exit status: 0 on success, 1 on domain errors (machine-readable error
JSON on stderr), 2 on I/O or parse errors.  Output is byte-identical
across runs; the --jobs option (or CHTOUCA_KIT_JOBS) is accepted for
interface stability but all work is scheduled sequentially, which is
one of the legal schedules and keeps results reproducible."""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import VERSION, jsonio
from .errors import DomainError
from .fans import (
    dual_cone,
    monoid_generators,
    tau_sequence_check,
    torus_sequence_check,
    verify_fan,
)
from .graph_gluing import check_dimension_condition, check_gluing_condition
from .hn_truncation import hn_polygon, is_mu_convex, split_truncation
from .l_functions import (
    check_bounds,
    local_factor,
    partial_l,
    power_sum,
    spectral_term,
    star_convolve,
)
from .complete_homs import (
    complete_from_open,
    lang_isogeny,
    stratum_data,
    stratum_of,
    torus_action,
)
from .pavings import (
    enumerate_admissible_pavings,
    is_admissible,
    is_q_admissible,
    paving_fan,
)


def _read_json(path):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise IOFailure(str(e)) from e


class IOFailure(Exception):
    pass


def _emit(payload: dict, out: str | None):
    text = jsonio.dumps_canonical(payload)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# subcommand handlers


def cmd_pavings_enum(args):
    pavings = enumerate_admissible_pavings(args.r, args.n)
    payload = {
        "r": args.r,
        "n": args.n,
        "count": len(pavings),
        "pavings": [jsonio.paving_to_json(p)["paves"] for p in pavings],
    }
    _emit(payload, args.out)
    return 0


def cmd_pavings_check(args):
    obj = _read_json(args.file)
    paving = jsonio.paving_from_json(obj)
    res = is_admissible(paving)
    payload = {
        "valid": True,
        "admissible": res.admissible,
        "paves": len(paving.paves),
    }
    if res.admissible and res.witness is not None:
        payload["witness"] = jsonio.lattice_function_to_json(res.witness)
    _emit(payload, args.out)
    return 0


def cmd_pavings_qadm(args):
    obj = _read_json(args.file)
    paving = jsonio.paving_from_json(obj)
    payload = {"q": args.q, "q_admissible": is_q_admissible(paving, args.q)}
    _emit(payload, args.out)
    return 0


def cmd_fans_verify(args):
    obj = _read_json(args.file)
    if "paves" in obj or "pavings" in obj:
        if "pavings" in obj:
            pavings = [
                jsonio.paving_from_json({"r": obj["r"], "n": obj["n"], "paves": paves})
                for paves in obj["pavings"]
            ]
        else:
            pavings = [jsonio.paving_from_json(obj)]
        fan = paving_fan(pavings)
    else:
        fan = jsonio.fan_from_json(obj)
    report = verify_fan(fan)
    payload = {
        "ok": report.ok,
        "cones": report.n_cones,
        "rank": report.rank,
        "failures": [list(map(str, f)) for f in report.failures],
        "fan": jsonio.fan_to_json(fan),
    }
    _emit(payload, args.out)
    return 0


def cmd_fans_dual(args):
    cone = jsonio.cone_from_json(_read_json(args.cone))
    _emit({"dual": jsonio.cone_to_json(dual_cone(cone))}, args.out)
    return 0


def cmd_fans_monoid(args):
    cone = jsonio.cone_from_json(_read_json(args.cone))
    gens = monoid_generators(cone, bound=args.bound)
    _emit({"generators": [list(g) for g in gens]}, args.out)
    return 0


def cmd_fans_torus_seq(args):
    rep = torus_sequence_check(args.r, args.n)
    _emit(
        {
            "ok": rep.ok,
            "dim_torus": rep.dim_torus,
            "checks": [[name, ok] for name, ok in rep.checks],
        },
        args.out,
    )
    return 0


def cmd_fans_tau_seq(args):
    rep = tau_sequence_check(args.r, args.q)
    _emit(
        {
            "ok": rep.ok,
            "dim_torus": rep.dim_torus,
            "checks": [[name, ok] for name, ok in rep.checks],
        },
        args.out,
    )
    return 0


def cmd_homs_complete(args):
    obj = _read_json(args.file)
    field = jsonio.field_from_json(obj["field"])
    u1 = jsonio.matrix_from_json(field, obj["u1"])
    lams = [jsonio.scalar_from_str(field, s) for s in obj["lambda"]]
    h = complete_from_open(field, u1, lams)
    _emit(jsonio.hom_to_json(h), args.out)
    return 0


def cmd_homs_stratum(args):
    h = jsonio.hom_from_json(_read_json(args.file))
    data = stratum_data(h)
    payload = jsonio.stratum_to_json(data)
    payload["stratum"] = list(stratum_of(h))
    _emit(payload, args.out)
    return 0


def cmd_homs_act(args):
    h = jsonio.hom_from_json(_read_json(args.file))
    mus = [jsonio.scalar_from_str(h.field, s) for s in args.mu.split(",")]
    _emit(jsonio.hom_to_json(torus_action(h, mus)), args.out)
    return 0


def cmd_homs_lang(args):
    obj = _read_json(args.file)
    field = jsonio.field_from_json(obj["field"])
    g = jsonio.matrix_from_json(field, obj["matrix"])
    result = lang_isogeny(g, args.q, field)
    _emit(
        {"field": jsonio.field_to_json(field), "matrix": jsonio.matrix_to_json(field, result)},
        args.out,
    )
    return 0


def cmd_hn_compute(args):
    lat = jsonio.subobject_lattice_from_json(_read_json(args.file))
    alpha = Fraction(args.alpha)
    polygon, chain = hn_polygon(lat, alpha)
    _emit(
        {
            "polygon": jsonio.polygon_to_json(polygon),
            "chain": list(chain),
            "alpha": jsonio.frac_str(alpha),
        },
        args.out,
    )
    return 0


def cmd_trunc_split(args):
    p = jsonio.polygon_from_json(_read_json(args.p))
    cuts = [int(c) for c in args.cuts.split(",")] if args.cuts else []
    res = split_truncation(p, args.d, cuts)
    _emit(
        {
            "d_parts": list(res.d_parts),
            "p_parts": [jsonio.polygon_to_json(q) for q in res.p_parts],
        },
        args.out,
    )
    return 0


def cmd_trunc_convex(args):
    p = jsonio.polygon_from_json(_read_json(args.file))
    _emit({"mu": jsonio.frac_str(Fraction(args.mu)), "convex": is_mu_convex(p, Fraction(args.mu))}, args.out)
    return 0


def cmd_graphs_check(args):
    fam = jsonio.family_from_json(_read_json(args.file))
    dim_rep = check_dimension_condition(fam)
    glue_rep = check_gluing_condition(fam)
    _emit(
        {
            "dimension_ok": dim_rep.ok,
            "gluing_ok": glue_rep.ok,
            "dimension_violations": [list(map(str, v)) for v in dim_rep.violations],
            "gluing_violations": [list(map(str, v)) for v in glue_rep.violations],
        },
        args.out,
    )
    return 0


def cmd_lfun_local(args):
    pd = jsonio.place_from_json(_read_json(args.file))
    _emit(jsonio.series_to_json(local_factor(pd, args.order)), args.out)
    return 0


def cmd_lfun_partial(args):
    places = jsonio.places_from_json(_read_json(args.file))
    _emit(jsonio.series_to_json(partial_l(places, args.order)), args.out)
    return 0


def cmd_lfun_star(args):
    a = jsonio.satake_from_json(_read_json(args.a))
    b = jsonio.satake_from_json(_read_json(args.b))
    _emit(jsonio.satake_to_json(star_convolve(a, b)), args.out)
    return 0


def cmd_lfun_psum(args):
    p = jsonio.satake_from_json(_read_json(args.file))
    _emit({"nu": args.nu, "value": jsonio.frac_str(power_sum(p, args.nu))}, args.out)
    return 0


def cmd_lfun_bounds(args):
    pd = jsonio.place_from_json(_read_json(args.file))
    ok = check_bounds(pd, args.q, args.mode, args.tol)
    _emit({"mode": args.mode.upper(), "q": args.q, "ok": ok}, args.out)
    return 0


def cmd_lfun_spectral(args):
    params_inf = jsonio.satake_from_json(_read_json(args.inf))
    params_o = jsonio.satake_from_json(_read_json(args.o))
    val = spectral_term(
        Fraction(args.trace),
        args.r,
        args.deg_xi,
        args.n,
        params_inf,
        args.deg_inf,
        params_o,
        args.deg_o,
        args.q,
    )
    _emit({"value": jsonio.frac_str(val)}, args.out)
    return 0


def cmd_selftest(args):
    from . import acceptance

    wanted = None
    if args.criteria:
        wanted = {int(c) for c in args.criteria.split(",")}
    results = acceptance.run_all(wanted, verbose=True)
    return 0 if all(st in ("PASS", "SKIP") for _, st, _, _ in results) else 1


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chtouca-kit",
        description="Exact pavings, fans, complete homomorphisms, slope polygons and L-factor algebra",
    )
    parser.add_argument("--jobs", type=int, default=None, help="parallelism degree (accepted; execution is sequential)")
    sub = parser.add_subparsers(dest="group", required=True)

    g = sub.add_parser("pavings").add_subparsers(dest="command", required=True)
    p = g.add_parser("enum")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_pavings_enum)
    p = g.add_parser("check")
    p.add_argument("file")
    p.add_argument("--out")
    p.set_defaults(func=cmd_pavings_check)
    p = g.add_parser("qadm")
    p.add_argument("file")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_pavings_qadm)

    g = sub.add_parser("fans").add_subparsers(dest="command", required=True)
    p = g.add_parser("verify")
    p.add_argument("file")
    p.add_argument("--out")
    p.set_defaults(func=cmd_fans_verify)
    p = g.add_parser("dual")
    p.add_argument("--cone", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_fans_dual)
    p = g.add_parser("monoid")
    p.add_argument("--cone", required=True)
    p.add_argument("--bound", type=int, default=8)
    p.add_argument("--out")
    p.set_defaults(func=cmd_fans_monoid)
    p = g.add_parser("torus-seq")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_fans_torus_seq)
    p = g.add_parser("tau-seq")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_fans_tau_seq)

    g = sub.add_parser("homs").add_subparsers(dest="command", required=True)
    p = g.add_parser("complete")
    p.add_argument("file")
    p.add_argument("--out")
    p.set_defaults(func=cmd_homs_complete)
    p = g.add_parser("stratum")
    p.add_argument("file")
    p.add_argument("--out")
    p.set_defaults(func=cmd_homs_stratum)
    p = g.add_parser("act")
    p.add_argument("file")
    p.add_argument("--mu", required=True, help="comma-separated scalars")
    p.add_argument("--out")
    p.set_defaults(func=cmd_homs_act)
    p = g.add_parser("lang")
    p.add_argument("file")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_homs_lang)

    g = sub.add_parser("hn").add_subparsers(dest="command", required=True)
    p = g.add_parser("compute")
    p.add_argument("file")
    p.add_argument("--alpha", default="0")
    p.add_argument("--out")
    p.set_defaults(func=cmd_hn_compute)

    g = sub.add_parser("trunc").add_subparsers(dest="command", required=True)
    p = g.add_parser("split")
    p.add_argument("--p", required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--R", dest="cuts", default="")
    p.add_argument("--out")
    p.set_defaults(func=cmd_trunc_split)
    p = g.add_parser("convex")
    p.add_argument("file")
    p.add_argument("--mu", default="0")
    p.add_argument("--out")
    p.set_defaults(func=cmd_trunc_convex)

    g = sub.add_parser("graphs").add_subparsers(dest="command", required=True)
    p = g.add_parser("check")
    p.add_argument("file")
    p.add_argument("--out")
    p.set_defaults(func=cmd_graphs_check)

    g = sub.add_parser("lfun").add_subparsers(dest="command", required=True)
    p = g.add_parser("local")
    p.add_argument("file")
    p.add_argument("--D", dest="order", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_lfun_local)
    p = g.add_parser("partial")
    p.add_argument("file")
    p.add_argument("--D", dest="order", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_lfun_partial)
    p = g.add_parser("star")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_lfun_star)
    p = g.add_parser("psum")
    p.add_argument("file")
    p.add_argument("--nu", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_lfun_psum)
    p = g.add_parser("bounds")
    p.add_argument("file")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--mode", choices=["js", "rp", "JS", "RP"], required=True)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--out")
    p.set_defaults(func=cmd_lfun_bounds)
    p = g.add_parser("spectral")
    p.add_argument("--trace", required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--deg-xi", dest="deg_xi", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--inf", required=True)
    p.add_argument("--deg-inf", dest="deg_inf", type=int, required=True)
    p.add_argument("--o", required=True)
    p.add_argument("--deg-o", dest="deg_o", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_lfun_spectral)

    p = sub.add_parser("selftest")
    p.add_argument("--criteria", help="comma-separated subset, e.g. 1,2,5")
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    jobs = args.jobs
    if jobs is None:
        jobs = int(os.environ.get("CHTOUCA_KIT_JOBS", "1"))
    if jobs < 1:
        print(
            json.dumps({"error": {"type": "InvalidData", "message": "jobs must be >= 1"}, "version": VERSION}),
            file=sys.stderr,
        )
        return 2
    try:
        return args.func(args)
    except DomainError as e:
        print(
            json.dumps(
                {"error": {"type": e.kind, "message": str(e)}, "version": VERSION},
                sort_keys=True,
            ),
            file=sys.stderr,
        )
        return 1
    except (IOFailure, ValueError, KeyError, TypeError) as e:
        print(
            json.dumps(
                {"error": {"type": "ParseError", "message": str(e)}, "version": VERSION},
                sort_keys=True,
            ),
            file=sys.stderr,
        )
        return 2


if __name__ == "__main__":
    raise SystemExit(main())

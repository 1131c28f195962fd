"""Command-line entry point: ``regbip <command> ...``.

Exit codes: 0 success, 1 some check failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import sys

from . import congruences, eta, hecke, newman
from .bipartitions import BipartitionParams, bipartition_series
from .report import SCHEMA, Status, aggregate, dump
from .series import EtaProductSpec, ModM, TruncationError, ZZ, eta_product


class UsageError(Exception):
    pass


def _ring(mod: int):
    if mod == 0:
        return ZZ
    if mod < 2:
        raise UsageError(f"--mod must be 0 (exact) or >= 2, got {mod}")
    return ModM(mod)


def _factors(text: str) -> list[tuple[int, int]]:
    try:
        pairs = [item.split(":") for item in text.split(",") if item.strip()]
        return [(int(d), int(r)) for d, r in pairs]
    except ValueError:
        raise UsageError(f"--factors expects 'delta:r,delta:r,...', got {text!r}") from None


def _emit(text: str, path: str | None):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _emit_json(obj, path):
    dump(obj, None if path in (None, "-") else path)


# -- commands -----------------------------------------------------------------

def cmd_series(args) -> int:
    spec = EtaProductSpec.merged(_factors(args.factors), args.prefactor)
    s = eta_product(spec, _ring(args.mod), args.trunc)
    _write_series(s, args)
    return 0


def cmd_bipartition(args) -> int:
    s = bipartition_series(BipartitionParams(args.u, args.v), _ring(args.mod), args.trunc)
    _write_series(s, args)
    return 0


def _write_series(s, args):
    if args.json is not None:
        _emit(s.to_json() + "\n", args.json if args.json != "-" else args.out)
    else:
        _emit(s.to_csv(), args.out)


def _prime_filter(p):
    def select(inst):
        ps = inst.params.get("p", inst.params.get("primes"))
        return ps == p or (isinstance(ps, list) and p in ps)
    return select


def cmd_verify(args) -> int:
    fams = congruences.builtin_families()
    wanted = [f.strip() for f in args.family.split(",") if f.strip()]
    if wanted != ["all"]:
        known = {f.id: f for f in fams}
        missing = [w for w in wanted if w not in known]
        if missing:
            raise UsageError(f"--family: unknown id(s) {missing}; try one of {sorted(known)}")
        fams = [known[w] for w in wanted]
    scale = 10 if args.deep else 1
    store = congruences.TableStore(limit=args.table_limit * scale)
    select = _prime_filter(args.p) if args.p is not None else None
    n_max = args.nmax * scale if args.nmax is not None else None
    reports = []
    for fam in fams:
        reports += congruences.run_family(fam, store, n_max, select, scale=scale)
    if not reports:
        raise UsageError("no family instance matches the given filters")
    out = aggregate(reports)
    out["config"] = {"family": args.family, "nmax": args.nmax, "p": args.p, "deep": args.deep,
                     "table_limit": args.table_limit}
    if args.json is not None:
        _emit_json(out, args.json)
    else:
        for r in reports:
            print(r.summary())
        print(" ".join(f"{k}={v}" for k, v in out["counts"].items()))
    return 1 if out["counts"]["FAIL"] else 0


def cmd_density(args) -> int:
    try:
        xs = [int(x) for x in args.checkpoints.split(",")]
    except ValueError:
        raise UsageError(f"--checkpoints expects integers, got {args.checkpoints!r}") from None
    curve = congruences.density_experiment(args.p, args.m, xs)
    if args.csv is not None:
        _emit(curve.to_csv(), args.csv)
    if args.json is not None:
        _emit_json({"schema": SCHEMA, **curve.to_json()}, args.json)
    if args.csv is None and args.json is None:
        for X, c, r in curve.checkpoints:
            print(f"X={X} nonzero={c} ratio={r:.6f}")
    return 0


def cmd_eta(args) -> int:
    if args.fpmj:
        try:
            p, m, j = (int(x) for x in args.fpmj.split(","))
        except ValueError:
            raise UsageError("--fpmj expects p,m,j") from None
        spec = eta.FpmjSpec(p, m, j)
        eq = eta.build_fpmj(spec)
    else:
        if args.factors is None or args.level is None:
            raise UsageError("eta-analyze needs --factors and --level, or --fpmj")
        eq = eta.EtaQuotient.from_mapping(args.level, _factors(args.factors))
    out = {"schema": SCHEMA, **eta.analyze(eq)}
    if args.fpmj:
        out["rescaled_order"] = [
            {"d": r["d"], "L": str(eta.lemma31_inequality(spec, r["d"])[0])} for r in out["cusps"]]
    if args.json is not None:
        _emit_json(out, args.json)
    else:
        print(f"level {out['level']} weight {out['weight']} conditions {out['conditions']} verdict {out['verdict']}")
        for c in out["cusps"]:
            print(f"  d={c['d']} order={c['order']}")
    bad = out["verdict"] not in ("holomorphic_all_cusps",)
    return 1 if bad and args.strict else 0


def cmd_hecke(args) -> int:
    form = hecke.FORMS[args.form]
    a = form.series(args.p * args.bound)
    ctx = hecke.context_for(form, args.p)
    res = hecke.eigen_check(a, ctx, args.bound)
    out = {"schema": SCHEMA, "form": form.name, "p": args.p, "bound": args.bound,
           "chi_p": ctx.chi_p, **res.to_json()}
    if args.json is not None:
        _emit_json(out, args.json)
    else:
        print(f"{form.name} T_{args.p}: {out['verdict']} lambda={res.lam}")
    return 0 if res.is_eigen else 1


def cmd_newman(args) -> int:
    if args.identity == "I":
        if args.series is None:
            raise UsageError("--identity I needs --series")
        params = newman.NewmanIParams(args.series, args.p)
        rep = newman.newman1_verify(params, args.trunc, reduced=args.reduced)
    else:
        if None in (args.q, args.r, args.s):
            raise UsageError("--identity II needs --q, --r and --s")
        params = newman.NewmanIIParams(args.q, args.r, args.s, args.p)
        rep = newman.newman2_verify(params, args.trunc)
    out = aggregate([rep])
    if args.json is not None:
        _emit_json(out, args.json)
    else:
        print(rep.summary())
        for note in rep.notes:
            print("  " + note)
    return 1 if rep.status is Status.FAIL else 0


# -- parser -------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="regbip", description="q-series and congruence checks for regular bipartitions")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def out_flags(sp, csv=False):
        sp.add_argument("--json", nargs="?", const="-", default=None, metavar="PATH",
                        help="JSON output, to PATH or stdout")
        if csv:
            sp.add_argument("--csv", nargs="?", const="-", default=None, metavar="PATH")

    s = sub.add_parser("series", help="expand an eta-product")
    s.add_argument("--factors", required=True, help="delta:r pairs, e.g. 3:1,21:1")
    s.add_argument("--prefactor", type=int, default=0, help="power of q in front")
    s.add_argument("--trunc", type=int, required=True)
    s.add_argument("--mod", type=int, default=0, help="0 for exact integers")
    s.add_argument("--out", default=None)
    out_flags(s)
    s.set_defaults(func=cmd_series)

    b = sub.add_parser("bipartition", help="coefficients B_{u,v}(n) as CSV")
    b.add_argument("--u", type=int, required=True)
    b.add_argument("--v", type=int, required=True)
    b.add_argument("--trunc", type=int, required=True)
    b.add_argument("--mod", type=int, default=0)
    b.add_argument("--out", default=None)
    out_flags(b)
    b.set_defaults(func=cmd_bipartition)

    v = sub.add_parser("verify", help="sweep congruence families")
    v.add_argument("--family", required=True, help="family id, comma list, or 'all'")
    v.add_argument("--nmax", type=int, default=None)
    v.add_argument("--p", type=int, default=None, help="only instances with this prime")
    v.add_argument("--deep", action="store_true", help="scale bounds and table sizes by 10")
    v.add_argument("--table-limit", type=int, default=2_000_000)
    out_flags(v)
    v.set_defaults(func=cmd_verify)

    d = sub.add_parser("density", help="non-vanishing ratio of B_{p,m}(n) mod p")
    d.add_argument("--p", type=int, required=True)
    d.add_argument("--m", type=int, required=True)
    d.add_argument("--checkpoints", default="1000,10000,100000")
    out_flags(d, csv=True)
    d.set_defaults(func=cmd_density)

    e = sub.add_parser("eta-analyze", help="level, weight, character and cusp orders")
    e.add_argument("--factors")
    e.add_argument("--level", type=int)
    e.add_argument("--fpmj", help="p,m,j for the F_{p,m,j} quotient")
    e.add_argument("--strict", action="store_true", help="exit 1 unless holomorphic at all cusps")
    out_flags(e)
    e.set_defaults(func=cmd_eta)

    h = sub.add_parser("hecke", help="T_p eigenform check")
    h.add_argument("--form", required=True, choices=sorted(hecke.FORMS))
    h.add_argument("--p", type=int, required=True)
    h.add_argument("--bound", type=int, default=2000)
    out_flags(h)
    h.set_defaults(func=cmd_hecke)

    n = sub.add_parser("newman", help="Newman recurrence checks")
    n.add_argument("--identity", required=True, choices=["I", "II"])
    n.add_argument("--series", choices=sorted(newman.NEWMAN_I_SERIES))
    n.add_argument("--p", type=int, required=True)
    n.add_argument("--q", type=int)
    n.add_argument("--r", type=int)
    n.add_argument("--s", type=int)
    n.add_argument("--trunc", type=int, required=True)
    n.add_argument("--reduced", action="store_true", help="check c(pn+S) = c(S)c(n) with per-n skips")
    out_flags(n)
    n.set_defaults(func=cmd_newman)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, KeyError, TruncationError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()

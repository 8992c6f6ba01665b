"""Command line front end.

Every handler returns ``(exit code, text lines, json payload)``; ``run``
renders one of the two.  Exit codes: 0 success, 1 a verification or probe
found a failure (the witness is printed), 2 usage or input error.
"""

from __future__ import annotations

import argparse
import io
import json
import sys
from contextlib import redirect_stderr, redirect_stdout

from . import bounds, construct, milnor, pfister, probes, residue, twisting
from .errors import TorsionKitError
from .polyring import PolyContext, field_for_char, identifiers, natural_key

OK, FAIL, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


# ---------------------------------------------------------------------------
# input files


def read_poly_text(text: str, char: int = 0, units=()):
    """Parse a polynomial file.

    Lines starting with '#' are comments, except the headers ``# vars: a,b``
    (variable order), ``# units: t,s`` (unit parameters) and ``# field:
    GF(p)``.  Without a vars header the variables are the identifiers in
    natural order.  The remaining lines are joined into one expression.
    """
    headers = {}
    body = []
    for line in text.splitlines():
        s = line.strip()
        if s.startswith("#"):
            key, sep, val = s[1:].partition(":")
            if sep and key.strip() in ("vars", "units", "field"):
                headers[key.strip()] = val.strip()
        elif s:
            body.append(s)
    expr = " ".join(body)
    if not expr:
        raise TorsionKitError("no polynomial in input")
    unit_set = set(units)
    if "units" in headers:
        unit_set |= {v for v in headers["units"].split(",") if v}
    if "vars" in headers:
        names = tuple(v for v in headers["vars"].split(",") if v)
    else:
        names = tuple(sorted(set(identifiers(expr)) | unit_set, key=natural_key))
    if "field" in headers and headers["field"].startswith("GF("):
        fchar = int(headers["field"][3:-1])
        if char and char != fchar:
            raise TorsionKitError(f"file is over {headers['field']} but --char is {char}")
        char = fchar
    ctx = PolyContext(names, field_for_char(char), frozenset(unit_set))
    return ctx.parse(expr)


def _read(path: str) -> str:
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _assignments(items) -> dict:
    out = {}
    for item in items or ():
        name, sep, val = item.partition("=")
        if not sep:
            raise UsageError(f"bad assignment {item!r}, expected name=value")
        out[name.strip()] = int(val)
    return out


# ---------------------------------------------------------------------------
# handlers


def _spec_output(spec, extra_ok=True):
    failed = [k for k, v in spec.checks.items() if v is False]
    code = OK if not failed and extra_ok else FAIL
    return code, spec.to_text().splitlines(), spec.to_json()


def cmd_pfister(a):
    fld = field_for_char(a.char)
    if a.chi:
        chi = [fld(int(c)) if c.lstrip("-").isdigit() else c for c in a.chi.split(",")]
        spec = pfister.pfister_hypersurface(a.m, chi, fld)
        return _spec_output(spec)
    if a.relation:
        rel = pfister.canonical_relation(a.m, a.n, fld)
        res = rel.verify_witnesses()
        return (OK if res.ok else FAIL), rel.to_text().splitlines() + [res.detail], \
            {"relation": rel.to_text(), "verified": res.ok, "detail": res.detail}
    if a.coefficient is not None:
        c = pfister.pfister_coefficient(a.m, a.n, a.coefficient, fld)
        return OK, [f"c{a.coefficient} = {c}"], {"j": a.coefficient, "coefficient": str(c)}
    form = pfister.pfister_form(a.m, a.n, fld)
    lines = [str(form.body)]
    payload = {"m": a.m, "n": a.n, "form": str(form.body)}
    code = OK
    if a.verify:
        res = pfister.verify_pfister_identities(a.m, a.n, form.body, fld)
        lines.append(f"identities: {'verified' if res.ok else 'FAILED'}")
        payload["verified"] = res.ok
        code = OK if res.ok else FAIL
    return code, lines, payload


def cmd_relation(a):
    fld = field_for_char(a.char)
    if a.file:
        rel = milnor.UniversalRelation.from_text(_read(a.file), fld)
    else:
        if a.m is None or a.n is None:
            raise UsageError("relation needs --m and --n, or --file")
        rel = milnor.iterate_relation(a.m, a.n, fld)
    lines = rel.to_text().splitlines()
    payload = {"m": rel.m, "n": rel.n, "s": rel.s, "lambda": rel.lam,
               "rhs": [str(x) for x in rel.rhs],
               "witnesses": [{"root": str(w.root), "entries": [str(e) for e in w.entries]}
                             for w in rel.witnesses]}
    code = OK
    if a.verify:
        res = rel.verify_witnesses()
        lines.append(res.detail)
        payload["verified"] = res.ok
        payload["detail"] = res.detail
        if not res.ok:
            lines.append(f"difference: {res.difference}")
            code = FAIL
    return code, lines, payload


def cmd_twisting(a):
    p = read_poly_text(_read(a.poly_file), a.char, units=a.units or ())
    rep = twisting.is_twisting_type(p, a.m, units_are_powers=not a.strict_units, hvar=a.hvar)
    return (OK if rep.verdict else FAIL), rep.to_lines(), rep.to_json()


def cmd_residue(a):
    if a.file:
        s = residue.MonomialSymbol.from_text(_read(a.file))
    else:
        if a.n is None or a.m is None:
            raise UsageError("residue needs --n and --m, or --file")
        s = residue.generator(a.n, a.m, a.e)
    lines = [f"symbol: {s}"]
    payload = {"symbol": str(s), "m": s.m}
    if a.order:
        order = tuple(v for v in a.order.split(",") if v)
        val = residue.iterated_residue(s, order)
        lines.append(f"residue along {','.join(order)}: {val}")
        payload["residue"] = {"order": list(order), "value": val}
    else:
        vals = residue.residue_values(residue.normalize(s))
        for order, val in vals.items():
            lines.append(f"residue along {','.join(order)}: {val}")
        payload["residues"] = [{"order": list(k), "value": v} for k, v in vals.items()]
    order_bound = residue.certify_order(s)
    lines.append(f"certified order: {order_bound}")
    payload["certified_order"] = order_bound
    return OK, lines, payload


def cmd_construct(a):
    fld = field_for_char(a.char)
    kind = a.kind
    if kind == "z":
        return _spec_output(construct.build_Z(a.N, a.d, a.m, fld))
    if kind == "y":
        return _spec_output(construct.build_Y(a.N, a.m, fld))
    if kind == "y0-check":
        res = construct.check_special_fiber_section(a.N, a.m, field=fld)
        eq = construct.special_fiber_equation(a.N, a.m, fld)
        lines = [f"Y0: {eq}", f"section residual: {res.difference}",
                 f"verdict: {'pass' if res.ok else 'fail'}"]
        return (OK if res.ok else FAIL), lines, \
            {"equation": str(eq), "residual": str(res.difference), "ok": res.ok}
    if kind == "cyclic":
        if a.d is None:
            raise UsageError("construct cyclic needs --d")
        branch, blowup, d_eta, exps = construct.build_cyclic(a.N, a.d, a.m, fld)
        lines = ["[branch]"] + branch.to_text().splitlines()
        lines += ["[blow-up]"] + blowup.to_text().splitlines()
        lines += ["[D_eta]"] + d_eta.to_text().splitlines()
        lines += ["[exponents]"] + exps.to_lines()
        payload = {"branch": branch.to_json(), "blowup": blowup.to_json(), "d_eta": d_eta.to_json(),
                   "exponents": {"values": list(exps.values), "holds": list(exps.holds),
                                 "middle_actual": exps.middle_actual}}
        specs_ok = all(v is not False for s in (branch, blowup, d_eta) for v in s.checks.values())
        return (OK if specs_ok and exps.all_hold else FAIL), lines, payload
    if kind == "example":
        if a.d is None or a.p is None:
            raise UsageError("construct example needs --d and --p")
        spec = construct.build_explicit_example(a.N, a.d, a.m, a.p, a.mode, a.char or None)
        return _spec_output(spec)
    raise UsageError(f"unknown construction {kind!r}")


def cmd_probe(a):
    text = _read(a.file)
    p = read_poly_text(text, a.char)
    if a.kind == "smooth":
        if a.q is None:
            raise UsageError("probe smooth needs --q")
        rep = probes.smoothness_probe(p, a.q, _assignments(a.assign), workers=a.workers)
        code = FAIL if rep.verdict == "SingularPoint" else OK
    else:
        rep = probes.integrality_probe(p, trials=a.trials, seed=a.seed)
        code = FAIL if rep.verdict == "ReducibleWitness" else OK
    return code, rep.to_lines(), rep.to_json()


def cmd_bounds(a):
    if a.kind == "cyclic":
        if a.m is None:
            raise UsageError("bounds cyclic needs --m")
        cb = bounds.cyclic_bounds(a.N, a.m)
        return OK, cb.to_lines(), cb.to_json()
    if a.kind == "asok":
        if a.m is None:
            raise UsageError("bounds asok needs --m")
        ns = bounds.asok_range(a.N, a.m)
        lines = [f"N={a.N} m={a.m} n: {' '.join(map(str, ns)) or 'none'}"]
        return OK, lines, {"N": a.N, "m": a.m, "n": ns}
    if a.d is None:
        raise UsageError("bounds needs --d")
    rep = bounds.combined_report(a.N, a.d, a.char)
    return OK, rep.to_lines(), rep.to_json()


EXAMPLES = {
    "x100": "combined divisor of the torsion order of a very general degree-100 hypersurface in P^100",
    "relation3": "the degree-3 universal relation for m=2 with its witnesses",
    "conic": "the Pfister conic u*v*y3^2 - u*y1^2 - v*y2^2 + y0^2",
    "explicit": "the explicit example N=3 d=4 m=2 p=3 and its F_7 scan at s=2",
}


def cmd_example(a):
    if a.name is None:
        lines = [f"{k}: {v}" for k, v in EXAMPLES.items()]
        return OK, lines, {"examples": EXAMPLES}
    if a.name == "x100":
        rep = bounds.combined_report(99, 100, 0)
        return OK, rep.to_lines()[-1:], {"combined": str(rep.combined), "upper": str(rep.upper)}
    if a.name == "relation3":
        rel = milnor.iterate_relation(2, 3)
        res = rel.verify_witnesses()
        return (OK if res.ok else FAIL), rel.to_text().splitlines() + [res.detail], \
            {"relation": rel.to_text(), "detail": res.detail}
    if a.name == "conic":
        return _spec_output(pfister.pfister_hypersurface(2, ["u", "v"]))
    if a.name == "explicit":
        spec = construct.build_explicit_example(3, 4, 2, 3)
        rep = probes.smoothness_probe(spec, 7, {"s": 2})
        code = OK if rep.ok and all(v is not False for v in spec.checks.values()) else FAIL
        return code, spec.to_text().splitlines() + rep.to_lines(), \
            {"spec": spec.to_json(), "probe": rep.to_json()}
    raise UsageError(f"unknown example {a.name!r}; choose from {', '.join(EXAMPLES)}")


# ---------------------------------------------------------------------------
# parser


def _globals(defaults: bool) -> argparse.ArgumentParser:
    # shared flags accepted before or after the subcommand
    kw = {} if defaults else {"default": argparse.SUPPRESS}
    g = argparse.ArgumentParser(add_help=False)
    g.add_argument("--format", choices=("text", "json"), **({"default": "text"} if defaults else kw))
    g.add_argument("--seed", type=int, **({"default": 0} if defaults else kw))
    g.add_argument("--char", type=int, **({"default": 0} if defaults else kw))
    return g


def build_parser() -> argparse.ArgumentParser:
    top = _Parser(prog="torsionkit", parents=[_globals(True)],
                  description="Torsion-order constructions, checks and bounds.")
    sub = top.add_subparsers(dest="command", required=True, parser_class=_Parser)
    common = [_globals(False)]

    p = sub.add_parser("pfister", parents=common, help="Fermat-Pfister forms")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--coefficient", type=int)
    p.add_argument("--relation", action="store_true", help="print the canonical relation")
    p.add_argument("--verify", action="store_true", help="check the split and telescope identities")
    p.add_argument("--chi", help="comma separated parameters for the Pfister hypersurface")
    p.set_defaults(func=cmd_pfister)

    p = sub.add_parser("relation", parents=common, help="universal Steinberg relations")
    p.add_argument("--m", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--file")
    p.add_argument("--verify", action="store_true")
    p.set_defaults(func=cmd_relation)

    p = sub.add_parser("twisting", parents=common, help="twisting-type check")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--poly-file", required=True)
    p.add_argument("--strict-units", action="store_true",
                   help="do not treat constants and unit parameters as m-th powers")
    p.add_argument("--units", type=lambda s: [v for v in s.split(",") if v],
                   help="comma separated unit parameters")
    p.add_argument("--hvar", default="x0")
    p.set_defaults(func=cmd_twisting)

    p = sub.add_parser("residue", parents=common, help="iterated residues of monomial symbols")
    p.add_argument("--file")
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--e", type=int, default=1)
    p.add_argument("--order", help="comma separated residue order")
    p.set_defaults(func=cmd_residue)

    p = sub.add_parser("construct", parents=common, help="hypersurface constructions")
    p.add_argument("kind", choices=("z", "y", "y0-check", "cyclic", "example"))
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--d", type=int)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--p", type=int)
    p.add_argument("--mode", choices=("qs", "fpst"), default="qs")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("probe", parents=common, help="finite-field probes")
    p.add_argument("kind", choices=("smooth", "integral"))
    p.add_argument("--file", required=True)
    p.add_argument("--q", type=int)
    p.add_argument("--assign", action="append", help="unit parameter value, name=int")
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_probe)

    p = sub.add_parser("bounds", parents=common, help="torsion-order divisibility bounds")
    p.add_argument("kind", nargs="?", choices=("cyclic", "asok"))
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--d", type=int)
    p.add_argument("--m", type=int)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("example", parents=common, help="canned worked examples")
    p.add_argument("name", nargs="?")
    p.set_defaults(func=cmd_example)
    return top


def run(argv) -> tuple:
    """Run one invocation; returns ``(exit code, output text)``."""
    parser = build_parser()
    buf = io.StringIO()
    try:
        with redirect_stdout(buf), redirect_stderr(buf):
            args = parser.parse_args(list(argv))
    except UsageError as exc:
        return USAGE, f"error: {exc}\n"
    except SystemExit as exc:  # --help
        return (exc.code or 0), buf.getvalue()
    try:
        code, lines, payload = args.func(args)
    except UsageError as exc:
        return USAGE, f"error: {exc}\n"
    except (TorsionKitError, ValueError, OSError) as exc:
        return USAGE, f"error: {type(exc).__name__}: {exc}\n"
    if args.format == "json":
        return code, json.dumps(payload, indent=2, sort_keys=True) + "\n"
    return code, "\n".join(lines) + "\n"


def main(argv=None) -> int:
    code, out = run(sys.argv[1:] if argv is None else argv)
    stream = sys.stderr if code == USAGE else sys.stdout
    stream.write(out)
    return code

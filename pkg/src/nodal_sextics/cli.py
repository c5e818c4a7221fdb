"""Command-line front end.

Exit codes: 0 success, 1 verification or comparison mismatch, 2 usage or
parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from . import classifier, forms, involutions, lattice, schemes, verify

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _emit(obj) -> None:
    print(json.dumps(obj, ensure_ascii=False, indent=1))


def _render(s: schemes.RealScheme, args) -> str:
    return schemes.render_viro(s, ascii=args.ascii)


def _load_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None


def _form_json(f: forms.FiniteQuadraticForm) -> dict:
    pr = forms.profile(f)
    out = f.to_json()
    out["profile"] = {"length": pr.length, "period": pr.period, "parity": pr.parity}
    return out


# --- subcommands ----------------------------------------------------------

def cmd_scheme(args) -> int:
    s = schemes.parse_viro(args.text)
    if args.action == "parse":
        print(_render(s, args))
        return EXIT_OK
    c = schemes.counts(s)
    out = {
        "scheme": _render(s, args),
        "l": c.l, "o_even": c.o_even, "o_odd": c.o_odd,
        "injective_pairs": c.injective_pairs, "max_depth": c.max_depth,
        "forest": s.to_json(),
    }
    if not s.is_empty():
        out["chi_B"] = schemes.euler_char_nonorientable_half(s)
    if args.type:
        r = args.r
        if args.type == "II" and s.is_empty() and r is None:
            r = 0
        a, t, delta, r = schemes.scheme_to_invariants(s, args.type, r)
        out.update({"divtype": args.type, "a": a, "t": t, "delta": delta, "r": r})
    _emit(out)
    return EXIT_OK


def cmd_lattice(args) -> int:
    l = lattice.IntLattice.from_json(_load_json(args.file))
    if args.action == "signature":
        p, n = lattice.signature(l)
        _emit({"label": l.label, "rank": l.rank, "signature": [p, n], "determinant": l.determinant,
               "even": lattice.is_even(l)})
        return EXIT_OK
    out = {"label": l.label, "group": lattice.discriminant_group(l)}
    if lattice.is_even(l):
        out["form"] = _form_json(lattice.discriminant_form(l))
    _emit(out)
    return EXIT_OK


def _load_form(path: str) -> forms.FiniteQuadraticForm:
    obj = _load_json(path)
    if "gram" in obj:
        return lattice.discriminant_form(lattice.IntLattice.from_json(obj))
    return forms.FiniteQuadraticForm.from_json(obj)


def cmd_form(args) -> int:
    if args.action == "gauss":
        if len(args.files) != 1:
            raise UsageError("form gauss takes one form file")
        f = _load_form(args.files[0])
        _emit({"gauss_signature": forms.gauss_signature(f), "order": f.size})
        return EXIT_OK
    if len(args.files) not in (2, 3):
        raise UsageError("form glue takes two form files and an optional anti-isometry file")
    a, b = _load_form(args.files[0]), _load_form(args.files[1])
    if len(args.files) == 3:
        g = _load_json(args.files[2])
        gamma = forms.SubgroupAntiIsometry(tuple(map(tuple, g["domain"])), tuple(map(tuple, g["image"])))
    else:
        gamma = forms.SubgroupAntiIsometry((), ())
    _emit(_form_json(forms.glue(a, b, gamma)))
    return EXIT_OK


def cmd_involution(args) -> int:
    mi = involutions.load_marked_involution(_load_json(args.file))
    report = involutions.validate_marking(mi)
    if not report.ok:
        _emit({"valid": False, "violations": list(report.violations)})
        return EXIT_MISMATCH
    inv = involutions.invariants(mi)
    _emit({"valid": True, "m": inv.m, "a": inv.a, "t": inv.t, "delta": inv.delta, "r": inv.r})
    return EXIT_OK


def cmd_check(args) -> int:
    s = schemes.parse_viro(args.scheme)
    if args.type == "II" and args.r is not None:
        raise UsageError("--r applies to type I only")
    r = args.r if args.type == "I" else None
    if args.type == "I" and r is None:
        raise UsageError("--r is required with --type I")
    try:
        c = classifier.RigidIsotopyClass(args.m, s, args.type, r)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    topo = classifier.topological_conditions(c)
    arith = classifier.arithmetic_report(c)
    verdict = classifier.exists_class(c)
    print(f"class: {_render(s, args)}, type {args.type}, m={args.m}" + (f", r={r}" if r is not None else ""))
    print("topological: " + " ".join(f"({k}) {'ok' if v else 'FAIL'}" for k, v in topo.results)
          + f" -> {topo.ok}")
    if arith is None:
        reason = "m = 0 uses the nonsingular table" if args.m == 0 else "no invariant translation"
        print(f"arithmetic: not applicable ({reason})")
    else:
        a, t, delta, rr = c.invariants()
        print(f"arithmetic: (a, t, delta, r) = ({a}, {t}, {delta}, {rr}); "
              + " ".join(f"({k}) {'ok' if v else 'FAIL'}" for k, v in arith.results) + f" -> {arith.ok}")
    print("EXISTS" if verdict else "DOES NOT EXIST")
    return EXIT_OK


def _pretty_figures(fig1, fig2, args) -> str:
    lines = ["Dividing (type I): scheme, r-set, m_max"]
    for row in fig1:
        rs = "{" + ",".join(map(str, row.r_set)) + "}"
        lines.append(f"  {_render(row.scheme, args):<16} {rs:<8} {row.m_max}")
    lines.append("Non-dividing (type II): scheme, m_max")
    for row in fig2:
        lines.append(f"  {_render(row.scheme, args):<16} {row.m_max}")
    return "\n".join(lines)


def cmd_enumerate(args) -> int:
    classes = classifier.enumerate_classes()
    if args.json:
        sys.stdout.write(classifier.records_json(classes) if not args.ascii else
                         _ascii_records(classes))
    elif args.csv:
        text = classifier.records_csv(classes)
        sys.stdout.write(_asciify(text) if args.ascii else text)
    else:
        fig1, fig2 = classifier.figure_tables(classes)
        print(_pretty_figures(fig1, fig2, args))
        totals = classifier.class_counts(classes)
        print(f"Totals: {totals['I']} dividing classes, {totals['II']} non-dividing classes")
    if args.compare:
        golden = _load_json(args.compare)
        problems = classifier.compare_with_golden(classifier.figures_json(classes), golden)
        for p in problems:
            print(p, file=sys.stderr)
        print("compare: " + ("match" if not problems else f"{len(problems)} differences"), file=sys.stderr)
        return EXIT_MISMATCH if problems else EXIT_OK
    return EXIT_OK


def _ascii_records(classes) -> str:
    recs = [c.to_record() for c in classes]
    for rec, c in zip(recs, classes):
        rec["scheme"] = schemes.render_viro(c.scheme, ascii=True)
    return json.dumps(recs, indent=1) + "\n"


def _asciify(text: str) -> str:
    return text.replace("⟨", "<").replace("⟩", ">").replace(" ⊔ ", " u ").replace("∅", "empty")


def cmd_verify(args) -> int:
    results = verify.run_all()
    for r in results:
        print(f"{'PASS' if r.ok else 'FAIL'}  {r.name}  [{r.detail}]")
    failed = sum(not r.ok for r in results)
    print(f"{len(results) - failed}/{len(results)} checks passed")
    return EXIT_OK if not failed else EXIT_MISMATCH


# --- parser ---------------------------------------------------------------

def _nonneg(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="nodal-sextics",
                                description="Lattice invariants and rigid isotopy classes of real nodal sextics.")
    p.add_argument("--ascii", action="store_true", help="print schemes with < > u empty")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("scheme", help="parse a scheme or compute its invariants")
    sp.add_argument("action", choices=["parse", "invariants"])
    sp.add_argument("text")
    sp.add_argument("--type", choices=["I", "II"])
    sp.add_argument("--r", type=_nonneg)
    sp.set_defaults(func=cmd_scheme)

    lp = sub.add_parser("lattice", help="discriminant form or signature of a lattice file")
    lp.add_argument("action", choices=["disc", "signature"])
    lp.add_argument("file")
    lp.set_defaults(func=cmd_lattice)

    fp = sub.add_parser("form", help="glue finite forms or compute a Gauss signature")
    fp.add_argument("action", choices=["glue", "gauss"])
    fp.add_argument("files", nargs="+")
    fp.set_defaults(func=cmd_form)

    ip = sub.add_parser("involution", help="invariants of a marked involution")
    ip.add_argument("action", choices=["invariants"])
    ip.add_argument("file")
    ip.set_defaults(func=cmd_involution)

    cp = sub.add_parser("check", help="evaluate both condition sets for one class")
    cp.add_argument("--scheme", required=True)
    cp.add_argument("--type", choices=["I", "II"], required=True)
    cp.add_argument("--m", type=_nonneg, required=True)
    cp.add_argument("--r", type=_nonneg)
    cp.set_defaults(func=cmd_check)

    ep = sub.add_parser("enumerate", help="enumerate all rigid isotopy classes")
    fmt = ep.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true")
    fmt.add_argument("--csv", action="store_true")
    ep.add_argument("--compare", metavar="FIGURES_JSON")
    ep.set_defaults(func=cmd_enumerate)

    vp = sub.add_parser("verify", help="run all property suites")
    vp.set_defaults(func=cmd_verify)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except schemes.ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, KeyError, TypeError, ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Exit status: 0 when every requested check passes, 1 when a mathematical
check fails, 2 for unreadable or inconsistent input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .berezin import berezin_integral_odd, integral_transform
from .expr import NotInvertible, ParityError
from .formfile import FormatError, digest, parse_form_file, parse_matrix_file, parse_point
from .forms import (
    CheckReport,
    FormError,
    LagrangianForm,
    check_admissible,
    check_closed,
    check_fundamental,
    check_left_covariance,
    check_right_covariance_inf,
    differential_D,
    dual_differential,
    frame_variation,
    generic_frame,
    variation_integrand,
)
from .parsing import ParseError
from .stable import (
    ExtensionError,
    SignCertificateRequired,
    check_path_form,
    commuting_square_check,
    iso_a_down,
    iso_a_up,
    iso_b_down,
    iso_b_up,
    path_differential,
)
from .supermatrix import ShapeError, SingularBlock, ber, ber_variant
from .symbols import Parity, UndeclaredSymbol

INPUT_ERRORS = (FormatError, ParseError, UndeclaredSymbol, ParityError, FormError, ShapeError,
                SingularBlock, NotInvertible, ExtensionError, SignCertificateRequired, OSError)


class Report:
    def __init__(self, command: str, inputs: list[str]):
        self.command = command
        self.inputs_digest = digest(command, *inputs)
        self.checks: list[CheckReport] = []
        self.output: dict = {}
        self.lines: list[str] = []
        self.failed = False

    def add_check(self, rep: CheckReport) -> None:
        self.checks.append(rep)
        if not rep.passed:
            self.failed = True

    def put(self, key: str, value, line: str | None = None) -> None:
        self.output[key] = value
        self.lines.append(line if line is not None else f"{key}: {value}")

    @property
    def exit_status(self) -> int:
        return 1 if self.failed else 0

    def as_json(self) -> str:
        data = {
            "command": self.command,
            "inputs_digest": self.inputs_digest,
            "checks": [
                {"name": c.name, "passed": c.passed, "checked": c.checked,
                 "residuals": [[label, str(e)] for label, e in c.residuals]}
                for c in self.checks
            ],
            "output": self.output,
            "exit": self.exit_status,
        }
        return json.dumps(data, sort_keys=True, indent=2)

    def as_text(self) -> str:
        out = list(self.lines)
        for c in self.checks:
            out.append(c.summary())
            for label, e in c.residuals[:5]:
                out.append(f"  {label}: {e}")
            if len(c.residuals) > 5:
                out.append(f"  ... {len(c.residuals) - 5} more")
        return "\n".join(out)


def _read(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _degree_line(form: LagrangianForm) -> str:
    sh = form.shape
    d0, d1 = sh.degree
    return f"dims {sh.n}|{sh.m} codeg {sh.p}|{sh.q} adddeg {sh.r}|{sh.s} degree {d0}|{d1}"


def _put_form(rep: Report, form: LagrangianForm, key: str = "result") -> None:
    rep.put(key, str(form.body))
    rep.put("degree", _degree_line(form))


def cmd_check(args) -> Report:
    text = _read(args.file)
    rep = Report("check", [text, str(args.closed)])
    ff = parse_form_file(text)
    if ff.role == "path":
        for c in check_path_form(ff.path_form()):
            rep.add_check(c)
        return rep
    form = ff.form()
    rep.add_check(check_right_covariance_inf(form))
    if form.role == "mixed":
        rep.add_check(check_left_covariance(form))
        rep.add_check(check_admissible(form))
    rep.add_check(check_fundamental(form))
    if args.closed:
        rep.add_check(check_closed(form))
    return rep


def cmd_diff(args) -> Report:
    text = _read(args.file)
    rep = Report("diff", [text, str(args.dual), str(args.times)])
    ff = parse_form_file(text)
    if ff.role == "path":
        if args.dual:
            raise FormError("the dual differential needs a dual form")
        L = ff.path_form()
        for _ in range(args.times):
            L = path_differential(L)
        rep.put("result", str(L.body))
        rep.put("degree", f"path form of degree {L.r}|{L.s}")
        return rep
    form = ff.form()
    if args.dual:
        if form.role != "dual":
            raise FormError("--dual needs role dual")
        for _ in range(args.times):
            form = dual_differential(form)
    else:
        for _ in range(args.times):
            form = differential_D(form)
            if form.jet_terms:
                rep.failed = True
                rep.put("jet2", " ".join(sorted(s.name for s in form.jet_terms)),
                        "second derivatives of the copath remain: the fundamental equations fail")
                break
    _put_form(rep, form)
    return rep


def cmd_ber(args) -> Report:
    text = _read(args.file)
    rep = Report("ber", [text, str(args.alpha), str(args.beta), args.at or ""])
    mf = parse_matrix_file(text)
    if args.alpha or args.beta:
        point = parse_point(args.at, mf.table)
        value = ber_variant(mf.matrix, args.alpha, args.beta, point)
    else:
        value = ber(mf.matrix, cross_check=True)
    rep.put("result", str(value))
    return rep


def cmd_integrate(args) -> Report:
    text = _read(args.file)
    rep = Report("integrate", [text, args.vars])
    ff = parse_form_file(text)
    table = ff.table()
    names = [v.strip() for v in args.vars.split(",") if v.strip()]
    variables = [table.lookup(v) for v in names]
    for v in variables:
        if v.parity is not Parity.ODD:
            raise FormatError(f"{v.name} is not odd")
    rep.put("result", str(berezin_integral_odd(ff.expression(), variables)))
    return rep


def cmd_transform(args) -> Report:
    text = _read(args.file)
    rep = Report("transform", [text, str(args.p)])
    ff = parse_form_file(text)
    form = integral_transform(ff.integral_form(), args.p, ff.kind)
    _put_form(rep, form)
    return rep


def cmd_iso(args) -> Report:
    text = _read(args.file)
    mode = "up" if args.up else "down" if args.down else "roundtrip" if args.roundtrip else "square"
    which = "b" if args.b else "a"
    k, l = args.a if args.a else (0, 0)
    rep = Report("iso", [text, which, str(k), str(l), mode])
    ff = parse_form_file(text)
    if which == "a":
        form = ff.form()
        if mode == "up":
            _put_form(rep, iso_a_up(form, k, l))
        elif mode == "down":
            _put_form(rep, iso_a_down(form, k, l))
        elif mode == "roundtrip":
            back = iso_a_down(iso_a_up(form, k, l), k, l)
            same = back.body == form.body
            rep.failed = not same
            rep.put("identity", same, f"identity: {str(same).lower()}")
        else:
            rep.add_check(commuting_square_check(form, k, l, "a"))
        return rep
    if mode == "up":
        _put_form(rep, iso_b_up(ff.path_form()))
    elif mode == "down":
        L = iso_b_down(ff.form())
        rep.put("result", str(L.body))
        rep.put("degree", f"path form of degree {L.r}|{L.s}")
    elif mode == "roundtrip":
        L = ff.path_form()
        same = iso_b_down(iso_b_up(L)).body == L.body
        rep.failed = not same
        rep.put("identity", same, f"identity: {str(same).lower()}")
    else:
        rep.add_check(commuting_square_check(ff.path_form(), which="b"))
    return rep


def cmd_variation(args) -> Report:
    text = _read(args.file)
    rep = Report("variation", [text, str(args.frame)])
    ff = parse_form_file(text)
    form = ff.form()
    cov = check_right_covariance_inf(form)
    rep.add_check(cov)
    if args.frame:
        value = frame_variation(form, ff.copath_spec() if ff.copath else None, generic_frame(form.shape))
        rep.put("frame", str(value))
        return rep
    if not cov.passed:
        return rep
    brackets = variation_integrand(form, ff.copath_spec())
    rep.put("euler_lagrange", [str(e) for e in brackets],
            "\n".join(f"E_{k}: {e}" for k, e in enumerate(brackets, start=1)))
    return rep


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="superform", description="Exact calculus of dual and mixed forms.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("file")
        sp.add_argument("--json", action="store_true", help="machine-readable report")
        sp.set_defaults(func=func)
        return sp

    sp = add("check", cmd_check, "run covariance, admissibility and fundamental-equation checks")
    sp.add_argument("--closed", action="store_true", help="also test closedness")

    sp = add("diff", cmd_diff, "apply D (default) or the dual differential")
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--dual", action="store_true")
    g.add_argument("--mixed", action="store_true")
    sp.add_argument("--times", type=int, default=1)

    sp = add("ber", cmd_ber, "Berezinian of a supermatrix file")
    sp.add_argument("--alpha", type=int, choices=(0, 1), default=0)
    sp.add_argument("--beta", type=int, choices=(0, 1), default=0)
    sp.add_argument("--at", help="evaluation point for the sign factors, e.g. a=1,d=-2")

    sp = add("integrate", cmd_integrate, "Berezin integral of the body over odd variables")
    sp.add_argument("--vars", required=True, help="comma-separated odd symbols, integrated first to last")

    sp = add("transform", cmd_transform, "integral transform of an integral form")
    sp.add_argument("--p", type=int, required=True, help="number of even momentum columns")

    sp = add("iso", cmd_iso, "isomorphisms between form spaces")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--a", nargs=2, type=int, metavar=("K", "L"))
    g.add_argument("--b", action="store_true")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--up", action="store_true")
    g.add_argument("--down", action="store_true")
    g.add_argument("--roundtrip", action="store_true")
    g.add_argument("--square", action="store_true", help="commutation with D")

    sp = add("variation", cmd_variation, "Euler-Lagrange brackets along the file's copath")
    sp.add_argument("--frame", action="store_true", help="variation under a generic frame change")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        rep = args.func(args)
    except INPUT_ERRORS as exc:
        msg = f"undeclared symbol {exc.args[0]}" if isinstance(exc, UndeclaredSymbol) else str(exc)
        if getattr(args, "json", False):
            print(json.dumps({"command": args.command, "error": msg, "exit": 2}, sort_keys=True, indent=2))
        else:
            print(f"error: {msg}", file=sys.stderr)
        return 2
    print(rep.as_json() if args.json else rep.as_text())
    return rep.exit_status


if __name__ == "__main__":
    sys.exit(main())

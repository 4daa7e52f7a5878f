"""Command-line front end: ``jacobi-tower compute|verify|solve|cache``.

Exit codes: 0 success, 1 verification failure, 2 usage or input error.
"""

import argparse
import json
import re
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from . import blocks as B
from . import forms as F
from .cache import CacheEntry, ExpansionCache
from .operators import modular_diff_H
from .qexpansion import PrecisionError, qs_mul, qs_scale
from .relations import RelationProblem, solve_relation
from .serialize import to_json_obj
from .suites import SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# form registry --------------------------------------------------------------------
# name -> (allowed n, builder(n, trunc, k))

def _tower(name):
    return (range(2, 9), lambda n, t, k: F.tower_form(name, n, t))


def _only(n_allowed, fn):
    return ((n_allowed,), lambda n, t, k: fn(t))


def _d2(key):
    return ((2,), lambda n, t, k: F.d2_family(t)[key])


def _index2(n, t, k):
    if k is None:
        raise UsageError("phi-index2 needs --k")
    return F.phi_index2(n, k, t)


FORMS = {
    "phi01": _tower("phi_0_1"),
    "phi01-d8": _tower("phi_0_1"),
    "phim2": _tower("phi_m2_1"),
    "phim2-d8": _tower("phi_m2_1"),
    "phim4": _tower("phi_m4_1"),
    "phim4-d8": _tower("phi_m4_1"),
    "psi01": _only(8, F.psi_0_1_D8),
    "phim4-tilde": _only(8, F.phi_m4_1_tilde_D8),
    "omega": (range(1, 9), lambda n, t, k: F.omega_Dn(n, t)),
    "omega-sq": (range(1, 9), lambda n, t, k: F.omega_sq(n, t)),
    "phi-index2": (range(1, 9), _index2),
    "theta-d8": _only(8, F.theta_D8_product),
    "theta-e8": _only(8, F.theta_E8),
    "theta-d16": _only(8, F.theta_D16plus_restricted),
    "d2-phim4": _d2("phi_m4_1"),
    "d2-phim2": _d2("phi_m2_1"),
    "d2-phi-hat": _d2("phi_hat_0_1"),
    "d2-phi01": _d2("phi_0_1"),
    "d2-omega": _d2("omega"),
    "a1-phim2": _only(1, B.phi_m2_1),
    "a1-phi01": _only(1, B.phi_0_1),
    "E4": _only(0, B.eisenstein_E4),
    "E6": _only(0, B.eisenstein_E6),
    "G2": _only(0, B.eisenstein_G2),
    "delta": _only(0, B.delta),
    "eta": _only(0, B.eta),
}

_DEFAULT_N = {"omega": 8, "omega-sq": 8, "phi-index2": 8}


def resolve_n(name, n=None):
    if name not in FORMS:
        raise UsageError(f"unknown form {name!r}; known forms: {', '.join(sorted(FORMS))}")
    allowed = FORMS[name][0]
    if n is None:
        n = _DEFAULT_N.get(name, max(allowed))
    if n not in allowed:
        raise UsageError(f"form {name!r} is not defined for n = {n}")
    return n


def build_form(name, n=None, trunc=4, k=None):
    n = resolve_n(name, n)
    return FORMS[name][1](n, trunc, k), n


# operator words for problem files ---------------------------------------------------

_TOKEN = re.compile(r"\s*(H\(|\(|\)|\*|[A-Za-z0-9_\-/.]+)")


def parse_word(text, resolve):
    """Evaluate ``H(E4*phi01)``-style words; ``resolve(name)`` supplies atoms.

    Grammar: ``term := factor ('*' factor)*``, ``factor := 'H(' term ')' |
    '(' term ')' | rational | name``.
    """
    tokens = _TOKEN.findall(text)
    if "".join(t.strip() for t in tokens) != re.sub(r"\s+", "", text):
        raise UsageError(f"cannot parse {text!r}")
    pos = 0

    def peek():
        return tokens[pos].strip() if pos < len(tokens) else None

    def take(expected=None):
        nonlocal pos
        tok = peek()
        if tok is None or (expected is not None and tok != expected):
            raise UsageError(f"in {text!r}: expected {expected or 'a token'}, found {tok!r}")
        pos += 1
        return tok

    def factor():
        tok = take()
        if tok == "H(":
            inner = term()
            take(")")
            if isinstance(inner, Fraction):
                raise UsageError(f"in {text!r}: H needs a form, not a number")
            return modular_diff_H(inner)
        if tok == "(":
            inner = term()
            take(")")
            return inner
        if re.fullmatch(r"-?\d+(/\d+)?", tok):
            return Fraction(tok)
        return resolve(tok)

    def term():
        value = factor()
        while peek() == "*":
            take("*")
            rhs = factor()
            if isinstance(value, Fraction) and isinstance(rhs, Fraction):
                value = value * rhs
            elif isinstance(value, Fraction):
                value = qs_scale(rhs, value)
            elif isinstance(rhs, Fraction):
                value = qs_scale(value, rhs)
            else:
                value = qs_mul(value, rhs)
        return value

    result = term()
    if peek() is not None:
        raise UsageError(f"in {text!r}: unexpected {peek()!r}")
    if isinstance(result, Fraction):
        raise UsageError(f"{text!r} is a number, not a form")
    return result


def load_problem(path, prec=None):
    try:
        doc = json.loads(Path(path).read_text())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    except ValueError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from exc
    forms = doc.get("forms")
    if not isinstance(forms, dict) or not forms:
        raise UsageError("problem file needs a non-empty 'forms' object")
    n = doc.get("n")
    p = prec if prec is not None else int(doc.get("prec", 3))
    trunc = p + 1 + int(doc.get("extra_prec", 0))
    cache = {}

    def resolve(name):
        if name not in cache:
            form_n = n if name in FORMS and len(FORMS[name][0]) > 1 else None
            cache[name] = build_form(name, form_n, trunc)[0]
        return cache[name]

    names = list(forms)
    series = [parse_word(forms[nm], resolve) for nm in names]
    orders = [Fraction(o) for o in doc.get("orders", [0])]
    problem = RelationProblem(series, names, orders, bool(doc.get("full_vanishing", True)))
    return doc, problem


# commands -------------------------------------------------------------------------


def cmd_compute(args, out):
    trunc = args.prec + 1
    n = resolve_n(args.form, args.n)
    if args.form == "phi-index2" and (args.k is None or not 0 <= args.k <= n):
        raise UsageError(f"phi-index2 needs --k between 0 and {n}")

    def compute():
        return build_form(args.form, n, trunc, args.k)[0]

    if args.no_cache:
        series = compute()
    else:
        name = args.form if args.k is None else f"{args.form}-k{args.k}"
        series, _ = ExpansionCache().get_or_compute(CacheEntry(name, n, str(trunc)), compute)
    if args.format == "json":
        out.write(json.dumps(to_json_obj(series)) + "\n")
        return EXIT_OK
    m = series.meta
    desc = m.describe() if m is not None else {}
    out.write(f"{m.name if m is not None and m.name else args.form}: "
              + ", ".join(f"{k} {v}" for k, v in desc.items()) + f", {series.nvars} variables\n")
    for k, c in series.coeffs.items():
        e = Fraction(k, 24)
        out.write(f"q^{e}: {c}\n")
    out.write(f"O(q^{series.prec})\n")
    return EXIT_OK


def cmd_verify(args, out):
    suite = args.suite_opt or args.suite or "all"
    if suite != "all" and suite not in SUITES:
        raise UsageError(f"unknown suite {suite!r}; choose from all, {', '.join(SUITES)}")
    reports = run_suite(suite, args.prec)
    ok = all(r.ok for r in reports)
    if args.format == "json":
        out.write(json.dumps({"ok": ok, "suites": [r.to_dict() for r in reports]}, indent=1) + "\n")
    else:
        for r in reports:
            out.write(r.to_text() + "\n")
        out.write("OK\n" if ok else "FAILED\n")
    return EXIT_OK if ok else EXIT_FAIL


def _linear_form(coeffs, names):
    parts = [f"{Fraction(coeffs[n])}*{n}" for n in names if coeffs.get(n, 0)]
    return " + ".join(parts).replace("+ -", "- ") or "0"


def cmd_solve(args, out):
    doc, problem = load_problem(args.problem, args.prec)
    space = solve_relation(problem)
    result = {"problem": doc.get("name", Path(args.problem).stem), **space.to_dict()}
    ex = doc.get("express")
    if ex and space.dimension == len(ex.get("free", [])) and space.dimension:
        try:
            forms_ = space.express(ex["dependent"], ex["free"])
            result["express"] = {d: _linear_form(v, ex["free"]) for d, v in forms_.items()}
        except ValueError as exc:
            result["express_error"] = str(exc)
    if "printed" in doc:
        result["printed"] = doc["printed"]
    if args.format == "json":
        out.write(json.dumps(result, indent=1) + "\n")
        return EXIT_OK
    out.write(f"problem {result['problem']}: solution space dimension {space.dimension}"
              f" (constrained at q^{', q^'.join(str(o) for o in space.constrained_orders)})\n")
    for v in space.basis:
        out.write("  " + _linear_form(dict(zip(space.names, v)), space.names) + " = 0\n")
    if space.vanishes_identically is not None:
        out.write(f"  every solution vanishes through q^{space.checked_below - 1}: "
                  f"{'yes' if space.vanishes_identically else 'no'}\n")
    for d, v in result.get("express", {}).items():
        out.write(f"  {d} = {v}" + (f"   (printed: {result['printed'][d]})" if d in result.get("printed", {}) else "")
                  + "\n")
    return EXIT_OK


def cmd_cache(args, out):
    cache = ExpansionCache()
    if args.action == "path":
        out.write(f"{cache.root}\n")
    elif args.action == "list":
        for p in cache.entries():
            out.write(f"{p.name}\n")
    elif args.action == "clear":
        out.write(f"removed {cache.clear()} entries\n")
    return EXIT_OK


def build_parser():
    p = argparse.ArgumentParser(prog="jacobi-tower", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compute", help="print the q-expansion of a named form")
    c.add_argument("form", help="form name, e.g. phi01-d8, omega, psi01, d2-phim4")
    c.add_argument("--n", type=int, default=None, help="rank of D_n (default: the form's largest)")
    c.add_argument("--k", type=int, default=None, help="k for phi-index2")
    c.add_argument("--prec", type=int, default=3, help="last q-power to print (default 3)")
    c.add_argument("--format", choices=("text", "json"), default="text")
    c.add_argument("--no-cache", action="store_true", help="skip the on-disk cache")

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", nargs="?", help="all or one of: " + ", ".join(SUITES))
    v.add_argument("--suite", dest="suite_opt", default=None)
    v.add_argument("--prec", type=int, default=3, help="verify identities through q^PREC (default 3)")
    v.add_argument("--format", choices=("text", "json"), default="text")

    s = sub.add_parser("solve", help="solve a relation problem file")
    s.add_argument("problem", help="JSON problem file")
    s.add_argument("--prec", type=int, default=None, help="override the file's precision")
    s.add_argument("--format", choices=("text", "json"), default="text")
    s.add_argument("--no-cache", action="store_true", help="accepted for symmetry; solving does not cache")

    k = sub.add_parser("cache", help="inspect or clear the expansion cache")
    k.add_argument("action", choices=("path", "list", "clear"))
    return p


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    handlers = {"compute": cmd_compute, "verify": cmd_verify, "solve": cmd_solve, "cache": cmd_cache}
    try:
        if getattr(args, "prec", None) is not None and args.prec < 0:
            raise UsageError("--prec must be non-negative")
        return handlers[args.command](args, out)
    except (UsageError, PrecisionError, ValueError, KeyError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

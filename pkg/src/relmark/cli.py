"""Command-line entry point.

Every subcommand prints a single document.  With ``--json`` it is a JSON
object carrying ``"schema": 1``; otherwise a plain ``key: value`` listing.

Exit codes: 0 success, 2 parse error, 3 precondition failure, 4 Groebner
budget exhausted, 5 worked-example mismatch, 6 no quasi-stable position found.
"""

from __future__ import annotations

import argparse
import json
import re
import sys

from .coordinates import PositionNotFound, is_U_marked_set, quasi_stable_position
from .groebner import BudgetExceeded, analyze
from .lex import (
    QuotientContext,
    is_lex_ideal,
    is_piecewise_lexsegment,
    lex_point,
    macaulay_lex_recognizer,
    singleton_growth_violation,
)
from .marked import MarkedSet, MarkedSetError, is_marked_basis, is_relative_marked_basis, reduce
from .monomial import (
    HilbertPolynomial,
    MonomialIdeal,
    NotQuasiStable,
    gotzmann_number,
    hilbert_polynomial,
    is_saturated,
    regularity,
    rho,
    saturation,
    truncation,
)
from .poly import DEGREVLEX, LEX, ParseError, Poly, RingContext, infer_nvars, parse_poly_list
from .schemes import PreconditionError, relative_scheme_ideal, relative_scheme_ideal_truncated
from .worked import EXAMPLES, run_example

SCHEMA = 1

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_PRECONDITION = 3
EXIT_BUDGET = 4
EXIT_MISMATCH = 5
EXIT_NO_POSITION = 6


class CLIError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _read(text: str | None) -> str | None:
    """``-`` reads standard input, ``@path`` reads a file."""
    if text is None:
        return None
    if text == "-":
        return sys.stdin.read()
    if text.startswith("@"):
        with open(text[1:], encoding="utf-8") as fh:
            return fh.read()
    return text


def _ring(args, *texts) -> RingContext:
    mentioned = infer_nvars(" ".join(t for t in texts if t))
    if args.ring is None:
        n = mentioned + (1 if args.w else 0)
    else:
        n = args.ring
        if mentioned + (1 if args.w else 0) > n:
            raise CLIError(f"input mentions variables outside a ring of {n} variables", EXIT_PARSE)
    return RingContext.standard(n, with_w=args.w)


def _ideal(text: str, ring: RingContext) -> MonomialIdeal:
    return MonomialIdeal.parse(text, ring)


def _terms(ring: RingContext, terms) -> list:
    return [ring.format_term(t) for t in terms]


# ---------- subcommands ----------

def cmd_pommaret(args) -> dict:
    text = _read(args.I)
    ring = _ring(args, text)
    I = _ideal(text, ring)
    out = {"ideal": str(I), "minimal_generators": _terms(ring, I.display_basis()),
           "quasi_stable": I.quasi_stable}
    if not I.quasi_stable:
        raise CLIError(f"{I} is not quasi-stable, so it has no finite Pommaret basis", EXIT_PRECONDITION)
    P = I.pommaret()
    out["pommaret_basis"] = P.as_json()
    out["regularity"] = P.regularity
    out["rho"] = rho(I)
    out["saturated"] = is_saturated(I)
    if not out["saturated"]:
        out["saturation"] = str(saturation(I))
    hp = hilbert_polynomial(I)
    out["hilbert_polynomial"] = str(hp)
    try:
        out["gotzmann_number"] = gotzmann_number(hp)
    except ValueError:
        out["gotzmann_number"] = None
    return out


def cmd_reduce(args) -> dict:
    texts = [_read(args.J), _read(args.F), _read(args.p), _read(args.I)]
    ring = _ring(args, *texts)
    J = _ideal(texts[0], ring)
    I = _ideal(texts[3], ring) if texts[3] else None
    F = parse_poly_list(texts[1], ring)
    p = Poly.parse(texts[2] or "0", ring)
    if not J.quasi_stable:
        raise CLIError(f"{J} is not quasi-stable", EXIT_PRECONDITION)
    marked = MarkedSet(F, J, relative_to=I)
    r = reduce(marked, p)
    out = {"input": p.format(args.order), "remainder": r.format(args.order),
           "marked_set": [f.format(args.order) for f in marked]}
    if args.check:
        out["is_basis"] = is_relative_marked_basis(I, marked) if I is not None else is_marked_basis(marked)
    return out


def cmd_relscheme(args) -> dict:
    texts = [_read(args.I), _read(args.J)]
    ring = _ring(args, *texts)
    I, J = _ideal(texts[0], ring), _ideal(texts[1], ring)
    if args.untruncated:
        S = relative_scheme_ideal(I, J)
        t = None
    else:
        t = args.t if args.t is not None else max(0, rho(J) - 1)
        S = relative_scheme_ideal_truncated(I, J, t)
    out = {"I": str(I), "J": str(J), "t": t, "num_parameters": S.num_parameters,
           "num_generators": len(S)}
    out.update(S.as_json(ring))
    if args.analyze:
        out["analysis"] = analyze(S.polys, S.ring, args.order, args.budget_pairs).as_json(S.ring)
    return out


def _parameter_ring(text: str) -> RingContext:
    cs = [int(m) for m in re.findall(r"c(\d+)", text)]
    if re.search(r"x\d", text):
        raise CLIError("analyze expects polynomials in the parameters c1, c2, ...", EXIT_PARSE)
    return RingContext.parameters(max(cs, default=1))


def cmd_analyze(args) -> dict:
    text = _read(args.ideal)
    if text is None:
        text = sys.stdin.read()
    ring = _parameter_ring(text)
    if args.nparams is not None:
        if args.nparams < ring.nvars and re.search(r"c\d", text):
            raise CLIError("input mentions more parameters than --nparams", EXIT_PARSE)
        ring = RingContext.parameters(args.nparams)
    gens = parse_poly_list(text, ring)
    return analyze(gens, ring, args.order, args.budget_pairs).as_json(ring)


def cmd_lexpoint(args) -> dict:
    text = _read(args.I)
    ring = _ring(args, text)
    I = _ideal(text, ring)
    if not I.quasi_stable or not is_saturated(I):
        raise CLIError(f"{I} must be quasi-stable and saturated", EXIT_PRECONDITION)
    hp = HilbertPolynomial.parse(args.hp)
    S = QuotientContext(I)
    L = lex_point(S, hp)
    if L is None:
        raise CLIError(f"no lex-ideal with Hilbert polynomial {hp} was found modulo {I}", EXIT_PRECONDITION)
    return {"I": str(I), "hilbert_polynomial": str(hp), "lex_point": str(L.ideal),
            "generators_outside_I": _terms(ring, L.generators), "is_lex_ideal": is_lex_ideal(S, L.ideal),
            "regularity": regularity(L.ideal)}


def cmd_mlcheck(args) -> dict:
    text = _read(args.I)
    ring = _ring(args, text)
    I = _ideal(text, ring)
    out = {"ideal": str(I), "recognized": macaulay_lex_recognizer(I).as_json()}
    if I.quasi_stable:
        sat = saturation(I)
        out["saturation"] = str(sat)
        out["saturation_recognized"] = macaulay_lex_recognizer(sat).as_json()
        v = singleton_growth_violation(QuotientContext(sat))
        out["growth_violation"] = None if v is None else {
            "term": ring.format_term(v.term), "term_growth": v.term_growth,
            "segment": _terms(ring, v.segment), "segment_growth": v.segment_growth}
        out["regularity"] = regularity(I)
    if args.truncate is not None:
        res = is_piecewise_lexsegment(truncation(I, args.truncate))
        out["piecewise_lexsegment"] = {
            "truncation": args.truncate, "holds": res.holds, "degree": res.degree,
            "witness": None if res.witness is None else _terms(ring, res.witness)}
    return out


def cmd_qsposition(args) -> dict:
    texts = [_read(args.I), _read(args.F)]
    ring = _ring(args, *texts)
    I = _ideal(texts[0], ring)
    if not I.quasi_stable:
        raise CLIError(f"{I} is not quasi-stable", EXIT_PRECONDITION)
    F = parse_poly_list(texts[1], ring)
    pos = quasi_stable_position(F, I, seed=args.seed, max_tries=args.max_tries)
    J = pos.ideal
    return {"change": pos.change.as_json(), "identity": pos.change.is_identity(), "tries": pos.tries,
            "marked_set": [f.format(args.order) for f in pos.marked.polys], "heads": _terms(ring, pos.heads),
            "J": str(J), "pommaret_basis": _terms(ring, J.pommaret().display_order()),
            "regularity": regularity(J), "u_marked": is_U_marked_set(pos.heads, I)}


def cmd_example(args) -> dict:
    rep = run_example(args.id, n=args.n, p=args.p, k=args.k)
    out = rep.as_json()
    if not rep.ok:
        raise _Mismatch(out)
    return out


class _Mismatch(Exception):
    def __init__(self, payload: dict):
        super().__init__("worked example mismatch")
        self.payload = payload


COMMANDS = {
    "pommaret": cmd_pommaret,
    "reduce": cmd_reduce,
    "relscheme": cmd_relscheme,
    "analyze": cmd_analyze,
    "lexpoint": cmd_lexpoint,
    "mlcheck": cmd_mlcheck,
    "qsposition": cmd_qsposition,
    "paper-example": cmd_example,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--ring", type=int, help="number of variables (x0..x{N-1}); inferred when omitted")
    common.add_argument("--w", action="store_true", help="add a lowest variable w below x0")
    common.add_argument("--order", choices=[DEGREVLEX, LEX], default=DEGREVLEX)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--budget-pairs", type=int, default=None, help="cap on reduced S-pairs")
    common.add_argument("--json", action="store_true", help="print one JSON document")

    parser = argparse.ArgumentParser(prog="relmark", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("pommaret", parents=[common], help="Pommaret basis and invariants of a monomial ideal")
    p.add_argument("--I", required=True)

    p = sub.add_parser("reduce", parents=[common], help="reduce a polynomial by a (relative) marked set")
    p.add_argument("--J", required=True)
    p.add_argument("--F", required=True)
    p.add_argument("--p", default="0")
    p.add_argument("--I", default=None)
    p.add_argument("--check", action="store_true", help="also decide whether the set is a basis")

    p = sub.add_parser("relscheme", parents=[common], help="ideal of a relative marked scheme")
    p.add_argument("--I", required=True)
    p.add_argument("--J", required=True)
    p.add_argument("--t", type=int, default=None)
    p.add_argument("--untruncated", action="store_true")
    p.add_argument("--analyze", action="store_true")

    p = sub.add_parser("analyze", parents=[common], help="dimension data of an ideal in c1, c2, ...")
    p.add_argument("--ideal", default=None, help="generators, '-' or '@file'; stdin when omitted")
    p.add_argument("--nparams", type=int, default=None)

    p = sub.add_parser("lexpoint", parents=[common], help="lex-ideal with a given Hilbert polynomial")
    p.add_argument("--I", required=True)
    p.add_argument("--hp", required=True)

    p = sub.add_parser("mlcheck", parents=[common], help="Macaulay-Lex diagnostics")
    p.add_argument("--I", required=True)
    p.add_argument("--truncate", type=int, default=None, help="also test the truncation in this degree")

    p = sub.add_parser("qsposition", parents=[common], help="search for quasi-stable position")
    p.add_argument("--I", required=True)
    p.add_argument("--F", required=True)
    p.add_argument("--max-tries", type=int, default=200)

    p = sub.add_parser("paper-example", parents=[common], help="recompute a worked example")
    p.add_argument("id", choices=sorted(EXAMPLES))
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--p", type=int, default=None)
    p.add_argument("--k", type=int, default=None)
    return parser


def _render_text(obj, indent: int = 0) -> list:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.extend(_render_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {v}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)):
                lines.append(f"{pad}-")
                lines.extend(_render_text(v, indent + 1))
            else:
                lines.append(f"{pad}- {v}")
    else:
        lines.append(f"{pad}{obj}")
    return lines


def _emit(doc: dict, as_json: bool, stream=None) -> None:
    stream = stream or sys.stdout
    if as_json:
        stream.write(json.dumps({"schema": SCHEMA, **doc}, ensure_ascii=False) + "\n")
    else:
        stream.write("\n".join(_render_text(doc)) + "\n")


def run(argv=None, stdout=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        doc = COMMANDS[args.command](args)
        code = EXIT_OK
    except _Mismatch as e:
        doc, code = e.payload, EXIT_MISMATCH
    except CLIError as e:
        doc, code = {"error": str(e)}, e.code
    except ParseError as e:
        doc, code = {"error": f"parse error: {e}"}, EXIT_PARSE
    except BudgetExceeded as e:
        doc, code = {"error": f"budget exhausted: {e}"}, EXIT_BUDGET
    except PositionNotFound as e:
        doc, code = {"error": str(e)}, EXIT_NO_POSITION
    except (PreconditionError, NotQuasiStable, MarkedSetError, ValueError) as e:
        doc, code = {"error": str(e)}, EXIT_PRECONDITION
    doc = {"command": args.command, "ok": code == EXIT_OK, **doc}
    _emit(doc, args.json, stdout)
    if code and "error" in doc:
        print(f"relmark: {doc['error']}", file=sys.stderr)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

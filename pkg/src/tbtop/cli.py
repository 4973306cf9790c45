"""Command line entry point: `tbtop <subcommand> ...`.

Exit codes: 0 success or certified, 1 malformed input, 2 refuted,
3 evidence only when --require-certified is given.  With --json a
deterministic report goes to stdout; otherwise a short table.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Callable, Optional

from . import __version__
from .certify import (
    CERTIFIED,
    EVIDENCE_ONLY,
    REFUTED,
    certify_combination,
    certify_thm51,
    certify_thm52,
    empirical_scan,
)
from .characters import (
    ExactRotation,
    PadicCharacter,
    SumCharacter,
    character_from_json,
    distinguish_characters,
    evaluate,
    separate_points,
)
from .circle import CircleInterval, CirclePoint
from .digits import IndicatorDigits, parse_digits
from .elements import (
    CyclicElement,
    IntegerElement,
    OrderSchema,
    canonicalize_pruefer,
    element_from_json,
    parse_support,
)
from .finlab import (
    FiniteAbelianGroup,
    FiniteAbelianPresentation,
    FiniteCharacter,
    Subgroup,
    enumerate_intermediate_subgroups,
    extend_character,
    quotient_decomposition,
    ranks,
    separation_is_density_check,
    smith_normal_form,
    thm17_injection,
)
from .indexsets import parse_index_set
from .sequences import (
    AffineSupport,
    BasisDirectSum,
    ComplementSupport,
    FactorialPruefer,
    IntegerGrowth,
    classify_growth,
    generate,
    sequence_from_json,
    validate_thm51,
)

EXIT_OK, EXIT_MALFORMED, EXIT_REFUTED, EXIT_EVIDENCE = 0, 1, 2, 3


class CliError(ValueError):
    def __init__(self, fieldname: str, msg: str):
        super().__init__(f"--{fieldname}: {msg}")
        self.fieldname = fieldname


def _field(name: str, parse: Callable, raw):
    if raw is None:
        raise CliError(name, "required")
    try:
        return parse(raw)
    except CliError:
        raise
    except Exception as exc:  # noqa: BLE001 - any parse failure names the field
        raise CliError(name, f"{type(exc).__name__}: {exc}") from None


def _json_or_file(text: str):
    text = text.strip()
    if text.startswith("@"):
        with open(text[1:]) as fh:
            return json.load(fh)
    return json.loads(text)


def _ambient(text: str):
    text = text.strip()
    if text == "int":
        return "int"
    if text.startswith("pruefer"):
        return ("pruefer", int(text[len("pruefer"):]))
    if text.startswith("cyclic"):
        return ("cyclic", int(text[len("cyclic"):]))
    if text.startswith("{"):
        return OrderSchema.from_json(json.loads(text))
    return OrderSchema.from_json(text)


def _element(ambient, text: str):
    text = text.strip()
    if text.startswith("{") and '"kind"' in text:
        return element_from_json(json.loads(text))
    if isinstance(ambient, OrderSchema):
        return parse_support(ambient, json.loads(text))
    if ambient == "int":
        return IntegerElement(int(text))
    kind, p = ambient
    if kind == "cyclic":
        return CyclicElement.of(int(text), p)
    # "a/p^n" or "a/den" with den a power of p
    if text in ("0", "0/1"):
        return canonicalize_pruefer(p, 0, 0)
    a, _, den = text.partition("/")
    if "^" in den:
        base, _, n = den.partition("^")
        if int(base) != p:
            raise ValueError(f"denominator base {base} is not {p}")
        return canonicalize_pruefer(p, int(a), int(n))
    d, n = int(den), 0
    while d % p == 0:
        d //= p
        n += 1
    if d != 1:
        raise ValueError(f"{den} is not a power of {p}")
    return canonicalize_pruefer(p, int(a), n)


def _fraction(text: str) -> Fraction:
    return Fraction(text.strip())


def _int_list(text: str) -> tuple[int, ...]:
    text = text.strip()
    if text.startswith("["):
        return tuple(int(v) for v in json.loads(text))
    return tuple(int(v) for v in text.split(",") if v.strip())


def _matrix(text: str):
    rows = _json_or_file(text)
    M = [[int(v) for v in row] for row in rows]
    if M and any(len(r) != len(M[0]) for r in M):
        raise ValueError("ragged matrix")
    return M


def _thresholds(text: str):
    out = []
    for item in text.split(","):
        if item.strip():
            start, _, eps = item.partition(":")
            out.append((int(start), Fraction(eps)))
    return out


def _value_str(v) -> object:
    if isinstance(v, CircleInterval):
        return v.to_json()
    return str(v)


# --- builders shared by several subcommands --------------------------------


def _character(args):
    if args.character:
        return _field("character", lambda t: character_from_json(_json_or_file(t)), args.character)
    if args.t is not None:
        return ExactRotation(_field("t", CirclePoint.parse, args.t))
    if args.index_set is None:
        raise CliError("character", "give --character, --t, or --index-set with --p/--ambient")
    A = _field("index-set", parse_index_set, args.index_set)
    if args.p is not None:
        return PadicCharacter(args.p, IndicatorDigits(A))
    amb = _field("ambient", _ambient, args.ambient)
    if not isinstance(amb, OrderSchema):
        raise CliError("ambient", "sum characters need a direct-sum ambient")
    return SumCharacter(amb, A)


def _support_rule(text: str):
    if text == "complement":
        return ComplementSupport()
    head, _, rest = text.partition(":")
    if head != "affine":
        raise ValueError(f"unknown support rule {text!r}")
    a, b = (int(v) for v in rest.split(","))
    return AffineSupport(a, b)


def _growth(text: str) -> IntegerGrowth:
    head, _, rest = text.partition(":")
    if head == "factorial":
        return IntegerGrowth("factorial")
    if head in ("exponential", "superexp"):
        return IntegerGrowth(head, base=int(rest or 2))
    if head == "affine":
        a, b = (int(v) for v in rest.split(","))
        return IntegerGrowth("affine", a=a, b=b)
    if head == "prefix":
        body, _, promise = rest.partition(";")
        return IntegerGrowth("prefix", terms=_int_list(body), promise=promise or None)
    raise ValueError(f"unknown growth rule {text!r}")


def _sequence(args):
    if getattr(args, "sequence", None):
        return _field("sequence", lambda t: sequence_from_json(_json_or_file(t)), args.sequence)
    if getattr(args, "growth", None):
        return _field("growth", _growth, args.growth)
    if getattr(args, "digits", None) is not None:
        if args.p is None:
            raise CliError("p", "required with --digits")
        digits = _field("digits", parse_digits, args.digits)
        return _field("digits", lambda d: FactorialPruefer(args.p, d), digits)
    if getattr(args, "S", None) is not None:
        amb = _field("ambient", _ambient, args.ambient)
        S = _field("S", parse_index_set, args.S)
        support = _field("support", _support_rule, args.support)
        return _field("support", lambda s: BasisDirectSum(amb, s, S, args.value), support)
    raise CliError("sequence", "give --sequence, --growth, --p/--digits, or --ambient/--S/--support")


# --- subcommands ------------------------------------------------------------


def cmd_eval(args):
    h = _character(args)
    amb = _field("ambient", _ambient, args.ambient) if args.ambient else None
    if amb is None and args.p is not None:
        amb = ("pruefer", args.p)
    if amb is None and isinstance(h, ExactRotation):
        amb = "int"
    x = _field("x", lambda t: _element(amb, t), args.x)
    prec = _field("precision", _fraction, args.precision) if args.precision else None
    v = evaluate(h, x, prec)
    return EXIT_OK, {"character": h.to_json(), "element": x.to_json(), "value": _value_str(v)}


def _cert_exit(cert, require: bool) -> int:
    if cert.verdict == REFUTED:
        return EXIT_REFUTED
    if cert.verdict == EVIDENCE_ONLY and require:
        return EXIT_EVIDENCE
    return EXIT_OK


def cmd_certify(args):
    theorem = args.theorem
    if theorem == "5.2":
        seq = _sequence(args)
        if args.char_digits:
            h = PadicCharacter(seq.p, _field("char-digits", parse_digits, args.char_digits))
        else:
            A = _field("index-set", parse_index_set, args.index_set)
            h = PadicCharacter(seq.p, IndicatorDigits(A))
        cert = certify_thm52(h, seq, args.n_max, args.n_min)
    elif theorem == "5.1":
        seq = _sequence(args)
        h = _character(args)
        cert = certify_thm51(h, seq, args.window)
    elif theorem == "comb":
        seq = _sequence(args)
        terms = _field("combo", _json_or_file, args.combo)
        parts = []
        for i, item in enumerate(terms):
            m, spec = item
            A = _field(f"combo[{i}]", parse_index_set, spec)
            c = certify_thm52(PadicCharacter(seq.p, IndicatorDigits(A)), seq, args.n_max, args.n_min)
            parts.append((int(m), c))
        cert = certify_combination(parts)
    elif theorem == "scan":
        seq = _sequence(args)
        h = _character(args)
        thresholds = _field("thresholds", _thresholds, args.thresholds) if args.thresholds else []
        prec = _field("precision", _fraction, args.precision) if args.precision else Fraction(1, 10**6)
        cert = empirical_scan(h, seq, args.n_max, thresholds, prec)
    else:
        raise CliError("theorem", f"unknown theorem {theorem!r}")
    return _cert_exit(cert, args.require_certified), {"certificate": cert.to_json()}


def cmd_separate(args):
    amb = _field("ambient", _ambient, args.ambient)
    x = _field("x", lambda t: _element(amb, t), args.x)
    y = _field("y", lambda t: _element(amb, t), args.y)
    w = separate_points(x, y)
    return EXIT_OK, {"x": x.to_json(), "y": y.to_json(), "character": w.character.to_json(),
                     "values": [str(v) for v in w.values]}


def cmd_distinguish(args):
    amb = _field("ambient", _ambient, args.ambient)
    A = _field("A", parse_index_set, args.A)
    B = _field("B", parse_index_set, args.B)
    w = distinguish_characters(SumCharacter(amb, A), SumCharacter(amb, B), args.bound)
    return EXIT_OK, {"witness": w.element.to_json(), "values": [str(v) for v in w.values]}


def cmd_generate(args):
    seq = _sequence(args)
    terms = generate(seq, args.count)
    return EXIT_OK, {"sequence": seq.to_json(), "first_index": seq.first_index,
                     "terms": [t.to_json() for t in terms]}


def cmd_validate(args):
    seq = _sequence(args)
    if args.conditions == "5.1":
        S = _field("S", parse_index_set, args.S)
        chk = validate_thm51(seq, S, args.prefix)
        return EXIT_OK, {"sequence": seq.to_json(), "structural": chk.structural,
                         "prefix_verified": chk.prefix_verified}
    rep = classify_growth(seq, args.prefix)
    return EXIT_OK, {"sequence": seq.to_json(), "raczkowski": rep.raczkowski,
                     "barbieri": rep.barbieri, "basis": rep.basis,
                     "ratios": [str(r) for r in rep.ratios]}


def _mat_json(M):
    return [[str(v) for v in row] for row in M]


def cmd_snf(args):
    M = _field("matrix", _matrix, args.matrix)
    U, D, V = smith_normal_form(M)
    return EXIT_OK, {"matrix": _mat_json(M), "U": _mat_json(U), "D": _mat_json(D), "V": _mat_json(V)}


def cmd_quotient(args):
    M = _field("matrix", _matrix, args.matrix)
    rank = args.rank if args.rank is not None else (len(M[0]) if M else 0)
    pres = _field("matrix", lambda m: FiniteAbelianPresentation(rank, tuple(map(tuple, m))), M)
    f = quotient_decomposition(pres)
    return EXIT_OK, {"rank": rank, "matrix": _mat_json(M), "invariants": f.to_json(),
                     "ranks": ranks(f).to_json()}


def _group_and_sub(args):
    orders = _field("orders", _int_list, args.orders)
    K = FiniteAbelianGroup(orders)
    gens = _field("H", _json_or_file, args.H) if args.H else []
    H = _field("H", lambda g: Subgroup.generated(K, g), gens)
    return K, H


def cmd_subgroups(args):
    K, H = _group_and_sub(args)
    subs = enumerate_intermediate_subgroups(K, H)
    return EXIT_OK, {"orders": list(K.orders), "H": H.to_json(), "count": len(subs),
                     "subgroups": [s.to_json() for s in subs]}


def cmd_thm17(args):
    K, H = _group_and_sub(args)
    members = thm17_injection(K, H)
    return EXIT_OK, {"orders": list(K.orders), "H": H.to_json(), "count": len(members),
                     "members": [m.to_json() for m in members]}


def cmd_extend(args):
    orders = _field("orders", _int_list, args.orders)
    G = FiniteAbelianGroup(orders)
    gens = _field("A", _json_or_file, args.A)
    values = _field("values", lambda t: [CirclePoint.parse(str(v)) for v in _json_or_file(t)], args.values)
    if len(values) != len(gens):
        raise CliError("values", "need one value per generator of A")
    k = extend_character(G, gens, values)
    return EXIT_OK, {"orders": list(orders), "A": gens, "values": [str(v) for v in values],
                     "extension": k.to_json()}


def cmd_dualcheck(args):
    orders = _field("orders", _int_list, args.orders)
    G = FiniteAbelianGroup(orders)
    coeffs = _field("chars", _json_or_file, args.chars) if args.chars else []
    chars = [FiniteCharacter(G, tuple(int(c) for c in row)) for row in coeffs]
    chk = separation_is_density_check(G, chars)
    return EXIT_OK, {"orders": list(orders), "chars": [list(c.coeffs) for c in chars],
                     "separates": chk.separates, "equals_dual": chk.equals_dual}


COMMANDS = {
    "eval": cmd_eval, "certify": cmd_certify, "separate": cmd_separate,
    "distinguish": cmd_distinguish, "generate": cmd_generate, "validate": cmd_validate,
    "snf": cmd_snf, "quotient": cmd_quotient, "subgroups": cmd_subgroups,
    "thm17": cmd_thm17, "extend": cmd_extend, "dualcheck": cmd_dualcheck,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="tbtop", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--json", action="store_true", help="emit a JSON report")
        return p

    def char_opts(p):
        p.add_argument("--character", help="character JSON (or @file)")
        p.add_argument("--t", help="rotation angle num/den for characters of Z")
        p.add_argument("--index-set", help="index set for sum / indicator characters")
        p.add_argument("--ambient", help="dsum2, dsum3^2, order-schema JSON, int, pruefer<p>, cyclic<n>")

    def seq_opts(p):
        p.add_argument("--sequence", help="sequence JSON (or @file)")
        p.add_argument("--growth", help="factorial | exponential:b | superexp:b | affine:a,b | prefix:..;promise")
        p.add_argument("--p", type=int, help="prime")
        p.add_argument("--digits", help="numerator rule a_n for x_n = a_n/p^(n!)")
        p.add_argument("--S", help="avoided index set of a basis direct-sum sequence")
        p.add_argument("--support", default="complement", help="affine:a,b | complement")
        p.add_argument("--value", type=int, default=1, help="coordinate value of basis terms")

    p = common(sub.add_parser("eval", help="evaluate a character on an element"))
    char_opts(p)
    p.add_argument("--p", type=int)
    p.add_argument("--x", help="element")
    p.add_argument("--precision")

    p = common(sub.add_parser("certify", help="build a convergence certificate"))
    p.add_argument("--theorem", required=True, choices=["5.1", "5.2", "comb", "scan"])
    char_opts(p)
    seq_opts(p)
    p.add_argument("--char-digits", help="explicit digit rule for the p-adic character")
    p.add_argument("--combo", help='JSON list of [m, index-set] pairs')
    p.add_argument("--n-max", type=int, default=7)
    p.add_argument("--n-min", type=int, default=3)
    p.add_argument("--window", type=int, default=16)
    p.add_argument("--thresholds", help="schedule start:eps,start:eps,...")
    p.add_argument("--precision")
    p.add_argument("--require-certified", action="store_true")

    p = common(sub.add_parser("separate", help="character separating two elements"))
    p.add_argument("--ambient", required=True)
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)

    p = common(sub.add_parser("distinguish", help="element telling two sum characters apart"))
    p.add_argument("--ambient", required=True)
    p.add_argument("--A", required=True)
    p.add_argument("--B", required=True)
    p.add_argument("--bound", type=int, default=10_000)

    p = common(sub.add_parser("generate", help="sequence prefix"))
    char_opts(p)
    seq_opts(p)
    p.add_argument("--count", type=int, default=5)

    p = common(sub.add_parser("validate", help="check sequence hypotheses"))
    char_opts(p)
    seq_opts(p)
    p.add_argument("--conditions", required=True, choices=["5.1", "growth"])
    p.add_argument("--prefix", type=int, default=10)

    p = common(sub.add_parser("snf", help="Smith normal form"))
    p.add_argument("--matrix", required=True)

    p = common(sub.add_parser("quotient", help="invariant factors of Z^g / rows"))
    p.add_argument("--matrix", required=True)
    p.add_argument("--rank", type=int)

    for name, helptext in (("subgroups", "subgroups between H and K"),
                           ("thm17", "quotient-preimage family H_A")):
        p = common(sub.add_parser(name, help=helptext))
        p.add_argument("--orders", required=True, help="cyclic orders of K, e.g. 2,2")
        p.add_argument("--H", help="JSON list of generators of H")

    p = common(sub.add_parser("extend", help="extend a character from a subgroup"))
    p.add_argument("--orders", required=True)
    p.add_argument("--A", required=True, help="JSON list of generators of A")
    p.add_argument("--values", required=True, help='JSON list of values, e.g. ["1/2"]')

    p = common(sub.add_parser("dualcheck", help="separation vs density on a finite group"))
    p.add_argument("--orders", required=True)
    p.add_argument("--chars", help="JSON list of coefficient vectors")
    return ap


def run(argv: Optional[list[str]] = None) -> tuple[int, dict]:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else EXIT_MALFORMED
        return (EXIT_OK if code == 0 else EXIT_MALFORMED), {"error": "argument parsing failed"}
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        code, outputs = COMMANDS[args.command](args)
    except CliError as exc:
        return EXIT_MALFORMED, {"command": args.command, "argv": argv, "error": str(exc),
                                "field": exc.fieldname}
    except (ValueError, TypeError, KeyError, IndexError, ArithmeticError, RuntimeError) as exc:
        return EXIT_MALFORMED, {"command": args.command, "argv": argv,
                                "error": f"{type(exc).__name__}: {exc}"}
    report = {"tool": "tbtop", "version": __version__, "command": args.command,
              "argv": argv, "outputs": outputs, "exit_code": code}
    return code, report


def _table(report: dict) -> str:
    lines = []
    if "error" in report:
        return f"error: {report['error']}"
    out = report["outputs"]
    cert = out.get("certificate")
    if cert:
        lines.append(f"{cert['tag']}  verdict={cert['verdict']}  range={cert['range']}")
        lines.append(f"tail: {cert['tail']}")
        lines.append(f"{'n':>4}  {'value':<40}  bound")
        for v in cert["values"]:
            val = v["value"] if isinstance(v["value"], str) else f"{v['value']['center']} +- {v['value']['radius']}"
            if len(val) > 40:
                val = val[:37] + "..."
            lines.append(f"{v['n']:>4}  {val:<40}  {v['bound']}")
        return "\n".join(lines)
    for key, val in out.items():
        text = json.dumps(val) if not isinstance(val, str) else val
        lines.append(f"{key}: {text}")
    return "\n".join(lines)


def main(argv: Optional[list[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    if any(a in ("-h", "--help", "--version") for a in argv):
        build_parser().parse_args(argv)
    code, report = run(argv)
    if "--json" in argv:
        print(json.dumps(report, sort_keys=True, indent=2))
    else:
        print(_table(report))
    if code == EXIT_MALFORMED and "error" in report:
        print(f"tbtop: {report['error']}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Subcommands read and write JSON documents in which every scalar is a
string (``"243/245"``, ``"-3"``, or a residue for prime fields).  Exit
status: 0 success, 1 a condition or verification failure, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .certifier import Certificate, InferenceError, certify, infer_eigenvalues
from .constructor_verifier import (
    SpectrumError,
    askey_wilson_check,
    build_pair,
    check_witness_vectors,
    dualize,
    is_irreducible_tridiagonal,
    primitive_idempotents,
    verify_leonard_system,
)
from .exact_algebra import Field, FieldError
from .families import FamilyError, QRacahParams, krawtchouk, q_racah, racah_example
from .leonard_data import ConditionReport, DataError, LeonardData
from .splitseq import SplitError, split_sequences

ROMAN = ("i", "ii", "iii", "iv", "v", "vi", "vii", "viii")
LS_CLAUSES = ("ls(i)", "ls(ii)", "ls(iii)", "ls(iv)", "ls(v)")


class InputError(ValueError):
    pass


def _warn(msg: str) -> None:
    print(f"warning: {msg}", file=sys.stderr)


def _strings(obj, key: str, f: Field, required: bool = True):
    xs = obj.get(key)
    if xs is None:
        if required:
            raise InputError(f"missing array {key!r}")
        return None
    if not isinstance(xs, list) or not all(isinstance(x, str) for x in xs):
        raise InputError(f"{key!r} must be an array of scalar strings")
    return [f.parse(x) for x in xs]


def load_document(obj) -> LeonardData:
    """Build :class:`LeonardData` from an input or certificate document.

    A certificate document is recognised by its ``"input"`` member; its
    top-level ``"theta"`` (present after inference) fills a missing one.
    When ``d <= 2`` and no beta is given, beta defaults to 2.
    """
    if not isinstance(obj, dict):
        raise InputError("document must be a JSON object")
    if "input" in obj:
        inner = dict(obj["input"])
        if inner.get("theta") is None and obj.get("theta") is not None:
            inner["theta"] = obj["theta"]
        obj = inner
    f = Field.from_json(obj.get("field"))
    d = obj.get("d")
    if not isinstance(d, int) or isinstance(d, bool) or d < 1:
        raise InputError(f"d must be a positive integer, got {d!r}")
    beta = obj.get("beta")
    if beta is None and d <= 2:
        _warn("beta not given for d <= 2; using beta = 2")
        beta = "2"
    gamma_star = obj.get("gamma_star")
    for name, x in (("beta", beta), ("gamma_star", gamma_star)):
        if x is not None and not isinstance(x, str):
            raise InputError(f"{name!r} must be a scalar string")
    return LeonardData.build(
        f, d,
        theta=_strings(obj, "theta", f, required=False),
        theta_star=_strings(obj, "theta_star", f),
        a=_strings(obj, "a", f), b=_strings(obj, "b", f), c=_strings(obj, "c", f),
        beta=beta, gamma_star=gamma_star,
    )


def dump_document(data: LeonardData) -> dict:
    f = data.field
    doc = {"field": f.to_json(), "d": data.d}
    if data.theta is not None:
        doc["theta"] = [f.render(x) for x in data.theta]
    for key in ("theta_star", "a", "b", "c"):
        doc[key] = [f.render(x) for x in getattr(data, key)]
    if data.beta_override is not None:
        doc["beta"] = f.render(data.beta_override)
    if data.gamma_star_override is not None:
        doc["gamma_star"] = f.render(data.gamma_star_override)
    return doc


def _label(cond: str) -> str:
    return f"({cond})" if cond in ROMAN else cond


def report_json(rep: ConditionReport, field: Field) -> dict:
    return {
        "passed": rep.passed,
        "violations": [
            {"condition": _label(v.condition), "index": v.index, "message": v.message,
             "residual": None if v.residual is None else field.render(v.residual)}
            for v in rep.violations
        ],
    }


def full_verification(cert: Certificate) -> dict:
    data = cert.data
    pair = build_pair(cert)
    rep = verify_leonard_system(pair, data.theta, data.theta_star)
    failed = set(rep.conditions())
    out = {clause: clause not in failed for clause in LS_CLAUSES}
    out["askey_wilson"] = askey_wilson_check(pair, cert.constants).is_zero()
    out["witness_vectors"] = check_witness_vectors(
        pair, cert.constants.a0_star, data.theta[0], data.theta[1]).passed
    try:
        E = primitive_idempotents(pair.A, data.theta)
        dual = dualize(pair, E)
        out["dual_row_sums"] = dual.row_sums_ok and is_irreducible_tridiagonal(dual.B_star)
    except SpectrumError:
        out["dual_row_sums"] = False
    return out


def certificate_json(cert: Certificate, *, inferred: bool, verify: bool, split: bool) -> dict:
    f = cert.data.field
    doc = {
        "input": dump_document(cert.data if not inferred else cert.data.with_theta(None)),
        "constants": {k: f.render(v) for k, v in cert.constants.as_dict().items()},
    }
    if inferred:
        doc["theta"] = [f.render(x) for x in cert.data.theta]
    if verify:
        doc["verification"] = full_verification(cert)
    if split:
        s = split_sequences(cert.data)
        doc["split"] = {"varphi": [f.render(x) for x in s.varphi],
                        "phi": [f.render(x) for x in s.phi]}
    return doc


def _read(path: str | None):
    try:
        if path is None or path == "-":
            return json.load(sys.stdin)
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read input: {exc}") from exc


def _emit(obj) -> None:
    json.dump(obj, sys.stdout, indent=2)
    sys.stdout.write("\n")


def _certify_and_emit(data: LeonardData, *, inferred: bool, verify: bool, split: bool) -> int:
    result = certify(data)
    if not result.passed:
        _emit(report_json(result, data.field))
        return 1
    doc = certificate_json(result, inferred=inferred, verify=verify, split=split)
    _emit(doc)
    if verify and not all(doc["verification"].values()):
        return 1
    return 0


def cmd_certify(args) -> int:
    data = load_document(_read(args.input))
    if data.theta is None:
        raise InputError("theta is missing; use the infer subcommand")
    return _certify_and_emit(data, inferred=False, verify=args.verify, split=args.split)


def cmd_infer(args) -> int:
    data = load_document(_read(args.input))
    try:
        data = infer_eigenvalues(data)
    except InferenceError as exc:
        _emit({"passed": False, "stage": exc.stage, "message": exc.message})
        return 1
    return _certify_and_emit(data, inferred=True, verify=False, split=False)


def parse_field(text: str) -> Field:
    if text == "rational":
        return Field.rational()
    if text.startswith("prime:"):
        try:
            return Field.prime(int(text[len("prime:"):]))
        except ValueError as exc:
            raise InputError(str(exc)) from exc
    raise InputError(f"field must be 'rational' or 'prime:P', got {text!r}")


def cmd_generate(args) -> int:
    f = parse_field(args.field)
    if args.family == "krawtchouk":
        if args.d is None:
            raise InputError("krawtchouk needs --d")
        data = krawtchouk(args.d, f)
    elif args.family == "q-racah":
        missing = [k for k in ("d", "q", "a", "b", "c") if getattr(args, k) is None]
        if missing:
            raise InputError("q-racah needs " + ", ".join("--" + k for k in missing))
        params = QRacahParams.of(f, args.d, f.parse(args.a), f.parse(args.b), f.parse(args.c), f.parse(args.q))
        data = q_racah(params, f)
    else:
        if f.kind != "rational":
            raise InputError("racah-example is defined over the rationals only")
        data = racah_example()
    _emit(dump_document(data))
    return 0


def cmd_dualize(args) -> int:
    data = load_document(_read(args.input))
    if data.theta is None:
        data = infer_eigenvalues(data)
    result = certify(data)
    if not result.passed:
        _emit(report_json(result, data.field))
        return 1
    f = data.field
    pair = build_pair(result)
    rep = verify_leonard_system(pair, data.theta, data.theta_star)
    if not rep.passed:
        _emit(report_json(rep, f))
        return 1
    dual = dualize(pair, primitive_idempotents(pair.A, data.theta))
    _emit({
        "field": f.to_json(),
        "d": data.d,
        "a_star": [f.render(x) for x in dual.a_star],
        "b_star": [f.render(x) for x in dual.b_star],
        "c_star": [f.render(x) for x in dual.c_star],
        "row_sums": [f.render(x) for x in dual.row_sums],
        "row_sums_equal_theta_star_0": dual.row_sums_ok,
        "irreducible_tridiagonal": is_irreducible_tridiagonal(dual.B_star),
    })
    return 0 if dual.row_sums_ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="leonard", description="Certify and build Leonard systems.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("certify", help="check conditions (i)-(viii) on a data document")
    p.add_argument("--input", help="JSON file (default: stdin)")
    p.add_argument("--verify", action="store_true", help="also run the matrix-level verifier")
    p.add_argument("--split", action="store_true", help="append split sequences")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("infer", help="infer theta from theta*, a, b, c, then certify")
    p.add_argument("--input", help="JSON file (default: stdin)")
    p.set_defaults(func=cmd_infer)

    p = sub.add_parser("generate", help="emit a data document for a known family")
    p.add_argument("family", choices=("krawtchouk", "q-racah", "racah-example"))
    p.add_argument("--d", type=int)
    for k in ("a", "b", "c", "q"):
        p.add_argument(f"--{k}")
    p.add_argument("--field", default="rational", help="'rational' or 'prime:P'")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("dualize", help="dual intersection numbers of a certified system")
    p.add_argument("--input", help="JSON file (default: stdin)")
    p.set_defaults(func=cmd_dualize)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    try:
        return args.func(args)
    except FamilyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InferenceError as exc:
        _emit({"passed": False, "stage": exc.stage, "message": exc.message})
        return 1
    except (InputError, DataError, FieldError, SplitError, KeyError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # exit-code contract: never escape with a traceback
        print(f"error: unexpected failure: {exc!r}", file=sys.stderr)
        return 2


def run() -> None:
    sys.exit(main())

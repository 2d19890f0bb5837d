"""``homleib`` command-line entry point.

Every command prints one report: a JSON object with the keys ``command``,
``args``, ``input_digest``, ``status``, ``payload`` and ``timing`` (in that
order), or a short text summary with ``--format text``.

Exit codes: 0 success, 1 mathematical failure (the report has a witness or
an explanation), 2 input or usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from . import io, linalg
from .algebra import (check_multiplicative, check_n_hom_leibniz, d_n_minus_one, morphism_violation,
                      yau_twist)
from .cochains import Cochain, build_extension, coboundary, cohomology, derivation_space, extensions_isomorphic
from .deformations import DEFAULT_ORDER, TruncatedDeformation, extend_one_order
from .embedding import check_commuting_square, check_injectivity
from .errors import HomLeibnizError, InputError, ParseError, PreconditionError, UnsupportedError
from .fields import env_field, field_from_tag, field_tag
from .graded import bracket_N
from .representations import adjoint_representation, check_representation

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class Failure(Exception):
    """A mathematical failure; carries the payload to report."""

    def __init__(self, message: str, payload: dict | None = None):
        super().__init__(message)
        self.payload = dict(payload or {})
        self.payload.setdefault("reason", message)


def _one_based(t):
    if t is None:
        return None
    out = []
    for v in t:
        out.append(_one_based(v) if isinstance(v, tuple) else (v + 1 if isinstance(v, int) else v))
    return out


def _field(args):
    if args.field:
        return field_from_tag(args.field)
    return env_field()


def _algebra(args):
    return io.load_algebra(args.algebra, _field(args))


def _coefficients(args, A):
    if args.coefficients in (None, "adjoint"):
        return adjoint_representation(A)
    R = io.load_representation(args.coefficients, A)
    rep = check_representation(A, R)
    if not rep.holds:
        slot, tup = rep.failed_relation
        slot = slot + 1 if isinstance(slot, int) else [slot[0], slot[1] + 1]
        raise Failure("coefficients are not a representation",
                      {"failed_relation": {"slot": slot, "tuple": _one_based(tup)}})
    return R


def _valid(A, what):
    rep = check_n_hom_leibniz(A)
    if not rep.holds:
        raise Failure(f"{what}: the defining identity fails", {"witness": _one_based(rep.witness)})
    try:
        mult = check_multiplicative(A)
    except UnsupportedError as exc:
        raise Failure(f"{what}: {exc}") from None
    if not mult:
        raise Failure(f"{what} requires a multiplicative algebra (alpha must preserve the bracket)")


def _cochain_json(f):
    return io.cochain_to_json(f)["entries"]


# -- commands ------------------------------------------------------------------------------

def cmd_check(args):
    A = _algebra(args)
    rep = check_n_hom_leibniz(A)
    payload = {"field": field_tag(A.field), "dim": A.dim, "arity": A.arity,
               "identity": {"holds": rep.holds, "witness": _one_based(rep.witness)}}
    if A.uniform_twist:
        w = morphism_violation(A, A.alpha)
        payload["multiplicative"] = {"holds": w is None, "witness": _one_based(w)}
    else:
        payload["multiplicative"] = None
    if not rep.holds:
        raise Failure("the defining identity fails", payload)
    return payload


def cmd_cohomology(args):
    if args.degree < 1:
        raise InputError("--degree must be at least 1")
    A = _algebra(args)
    _valid(A, "cohomology")
    R = _coefficients(args, A)
    h = cohomology(A, R, args.degree, check=False)
    payload = {"field": field_tag(A.field), "degree": h.degree, "dim_C": h.dim_cochains, "dim_Z": h.dim_cocycles,
               "dim_B": h.dim_coboundaries, "dim_H": h.dim_H}
    if args.representatives:
        payload["representatives"] = [_cochain_json(r) for r in h.basis_representatives]
    return payload


def cmd_derivations(args):
    A = _algebra(args)
    _valid(A, "derivations")
    R = _coefficients(args, A)
    S = derivation_space(A, R)
    F = A.field
    basis = []
    for v in S.basis:
        M = v.reshape(R.module_dim, A.dim)
        basis.append([[F.format(x) for x in row] for row in M])
    return {"dim": S.dim, "basis": basis}


def cmd_deform(args):
    if args.order < 1:
        raise InputError("--order must be at least 1")
    A = _algebra(args)
    _valid(A, "deform")
    R = adjoint_representation(A)
    if args.f1 is not None:
        f1 = io.load_cochain(args.f1, A, R)
        if f1.degree != 2:
            raise InputError("F_1 must be a 2-cochain")
    else:
        h2 = cohomology(A, R, 2, check=False)
        k = args.f1_class
        if not 1 <= k <= h2.dim_H:
            raise InputError(f"--f1-class {k} outside 1..{h2.dim_H} (dim H^2 = {h2.dim_H})")
        f1 = h2.basis_representatives[k - 1]
    steps = []
    if not coboundary(A, R, f1).is_zero():
        raise Failure("F_1 is not a 2-cocycle, so t F_1 is not a first-order deformation",
                      {"orders": [{"order": 1, "status": "not a cocycle"}]})
    D = TruncatedDeformation(A, [f1.coefficients])
    steps.append({"order": 1, "status": "ok"})
    spaces: dict = {}
    while D.order < args.order:
        res = extend_one_order(D, spaces)
        if res.obstructed:
            F = A.field
            steps.append({"order": D.order + 1, "status": "obstructed",
                          "obstruction_class": [F.format(c) for c in res.class_coordinates]})
            raise Failure(f"obstructed at order {D.order + 1}",
                          {"orders": steps, "terms": _terms(D, R)})
        D = res.deformation
        steps.append({"order": D.order, "status": "extended"})
    return {"orders": steps, "terms": _terms(D, R)}


def _terms(D, R):
    return [_cochain_json(Cochain(D.algebra, R, 2, t, check=False)) for t in D.terms]


def cmd_extend_cocycle(args):
    A = _algebra(args)
    _valid(A, "extend-cocycle")
    R = _coefficients(args, A)
    f = io.load_cochain(args.cocycle, A, R)
    if f.degree != 2:
        raise InputError("the cocycle file must hold a 2-cochain")
    ext = build_extension(A, R, f)
    valid = check_n_hom_leibniz(ext.algebra)
    payload = {"cocycle": coboundary(A, R, f).is_zero(), "extension_valid": valid.holds,
               "extension": io.algebra_to_json(ext.algebra)}
    if args.compare:
        g = io.load_cochain(args.compare, A, R)
        if not (payload["cocycle"] and coboundary(A, R, g).is_zero()):
            raise Failure("both cochains must be 2-cocycles to compare extensions", payload)
        phi = extensions_isomorphic(A, R, f, g)
        F = A.field
        payload["isomorphic"] = phi is not None
        payload["isomorphism"] = None if phi is None else [[F.format(x) for x in row] for row in phi]
    if not valid.holds:
        payload["witness"] = _one_based(valid.witness)
        raise Failure("f is not a 2-cocycle, so the extension fails the defining identity", payload)
    return payload


def cmd_bracket(args):
    A = _algebra(args)
    _valid(A, "bracket")
    R = adjoint_representation(A)
    f = io.load_cochain(args.f, A, R)
    g = io.load_cochain(args.g, A, R)
    b = bracket_N(A, f, g)
    return {"grade_f": f.grade, "grade_g": g.grade, "grade": b.grade, "degree": b.degree,
            "entries": _cochain_json(b)}


def cmd_twist(args):
    A = _algebra(args)
    F = A.field
    phi = io.load_matrix(args.morphism, A.dim, F)
    rep = check_n_hom_leibniz(A)
    if not rep.holds:
        raise Failure("input is not an n-Leibniz algebra", {"witness": _one_based(rep.witness)})
    if not all(linalg.is_identity(F, t) for t in A.twists):
        raise Failure("the Yau twist needs an algebra with identity twists")
    w = morphism_violation(A, phi)
    if w is not None:
        raise Failure("the matrix is not an algebra morphism", {"witness": _one_based(w)})
    out = yau_twist(A, phi)
    return {"algebra": io.algebra_to_json(out), "valid": check_n_hom_leibniz(out).holds}


def cmd_dn(args):
    A = _algebra(args)
    try:
        G = d_n_minus_one(A)
    except UnsupportedError as exc:
        raise Failure(str(exc)) from None
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(io.dumps(io.algebra_to_json(G)))
    return {"algebra": io.algebra_to_json(G)}


def cmd_embed_check(args):
    if args.degree < 1:
        raise InputError("--degree must be at least 1")
    A = _algebra(args)
    _valid(A, "embed-check")
    sq = check_commuting_square(A, args.degree)
    payload = {"degree": args.degree, "square_commutes": sq.holds, "failed_degree": sq.failed_degree}
    if linalg.rank(A.field, A.alpha) == A.dim:
        payload["injective"] = all(check_injectivity(A, q) for q in range(1, args.degree + 1))
    else:
        payload["injective"] = None
    # both sides are computed and reported; nothing is claimed about the induced map on classes
    G = d_n_minus_one(A)
    R, V = adjoint_representation(A), adjoint_representation(G)
    payload["cohomology"] = [{"degree": q, "dim_H": cohomology(A, R, q, check=False).dim_H,
                              "dim_H_dn": cohomology(G, V, q, check=False).dim_H}
                             for q in range(1, args.degree + 1)]
    if not sq.holds or payload["injective"] is False:
        raise Failure("the embedding check failed", payload)
    return payload


COMMANDS = {
    "check": cmd_check, "cohomology": cmd_cohomology, "derivations": cmd_derivations,
    "deform": cmd_deform, "extend-cocycle": cmd_extend_cocycle, "bracket": cmd_bracket,
    "twist": cmd_twist, "dn": cmd_dn, "embed-check": cmd_embed_check,
}

INPUT_KEYS = ("algebra", "coefficients", "f1", "cocycle", "compare", "f", "g", "morphism")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", help='override the field: "Q", "Fp" or "Fp:<prime>"')
    common.add_argument("--format", choices=["json", "text"], default="json")
    common.add_argument("--no-timing", action="store_true", help="write null timing for byte-stable output")
    parser = argparse.ArgumentParser(prog="homleib", description="Cohomology and deformations of n-Hom-Leibniz algebras.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("algebra", help="algebra description file")
        return p

    add("check", "verify the defining identity and multiplicativity")
    p = add("cohomology", "dimensions of C, Z, B and H in one degree")
    p.add_argument("--degree", "-p", type=int, required=True)
    p.add_argument("--coefficients", default="adjoint", help='"adjoint" or a representation file')
    p.add_argument("--representatives", action="store_true", help="include H basis representatives")
    p = add("derivations", "basis of the derivation space")
    p.add_argument("--coefficients", default="adjoint")
    p = add("deform", "extend a first-order deformation order by order")
    p.add_argument("--order", "-s", type=int, default=DEFAULT_ORDER)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--f1", help="2-cochain file for F_1")
    g.add_argument("--f1-class", type=int, help="use the k-th H^2 basis representative (1-based)")
    p = add("extend-cocycle", "build the abelian extension of a 2-cochain")
    p.add_argument("--cocycle", required=True)
    p.add_argument("--coefficients", default="adjoint")
    p.add_argument("--compare", help="second 2-cocycle; report whether the extensions are isomorphic")
    p = add("bracket", "the graded bracket of two cochains with values in the algebra")
    p.add_argument("f")
    p.add_argument("g")
    p = add("twist", "Yau twist along an algebra morphism")
    p.add_argument("--morphism", required=True, help="JSON matrix file")
    p = add("dn", "the binary Hom-Leibniz algebra on blocks")
    p.add_argument("--output", "-o", help="also write the algebra file here")
    p = add("embed-check", "commuting square and injectivity of the block embedding")
    p.add_argument("--degree", "-p", type=int, default=2)
    return parser


def _echo(args) -> dict:
    skip = {"command", "format", "no_timing"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def _text(report: dict) -> str:
    lines = [f"{report['command']}: {report['status']}"]

    def walk(prefix, obj):
        if isinstance(obj, dict):
            for k, v in obj.items():
                walk(f"{prefix}{k}.", v)
        elif isinstance(obj, list) and any(isinstance(v, dict) for v in obj):
            for i, v in enumerate(obj):
                lines.append(f"  {prefix[:-1]}[{i}]: {json.dumps(v)}")
        else:
            lines.append(f"  {prefix[:-1]}: {obj}")

    walk("", report["payload"])
    return "\n".join(lines) + "\n"


def run(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    args = parser.parse_args(argv)
    start = time.perf_counter()
    report = {"command": args.command, "args": _echo(args), "input_digest": None}
    code = EXIT_OK
    try:
        paths = [getattr(args, k) for k in INPUT_KEYS
                 if getattr(args, k, None) not in (None, "adjoint")]
        report["input_digest"] = io.digest(paths) if all(os.path.isfile(p) for p in paths) else None
        payload = COMMANDS[args.command](args)
        status = "ok"
    except Failure as exc:
        payload, status, code = exc.payload, "failed", EXIT_FAIL
    except ParseError as exc:
        payload = {"error": exc.message, "path": exc.path, "line": exc.line, "column": exc.column}
        status, code = "error", EXIT_INPUT
    except (InputError, ZeroDivisionError) as exc:
        payload, status, code = {"error": str(exc)}, "error", EXIT_INPUT
    except PreconditionError as exc:
        payload = {"reason": str(exc), "witness": _one_based(exc.witness) if isinstance(exc.witness, tuple) else None}
        status, code = "failed", EXIT_FAIL
    except HomLeibnizError as exc:
        payload, status, code = {"error": str(exc)}, "error", EXIT_INPUT
    report["status"] = status
    report["payload"] = payload
    report["timing"] = None if args.no_timing else {"seconds": f"{time.perf_counter() - start:.4f}"}
    out.write(io.dumps(report) if args.format == "json" else _text(report))
    if code == EXIT_INPUT:
        msg = payload.get("error", "")
        if payload.get("line") is not None:
            msg += f" (line {payload['line']}, column {payload['column']})"
        print(f"homleib: error: {msg}", file=sys.stderr)
    return code


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()

"""Command line interface emitting verification certificates.

Each subcommand reruns the relevant exact computation and prints a
certificate: the inputs, the payload, and the list of invariants that were
actually checked.  Output is byte-identical across runs and thread counts.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from fractions import Fraction

from . import __version__
from ._util import default_threads
from .classify import (StabilizerScan, equivalent, j_invariant, orbit,
                       stabilizer, surfaces_coincide)
from .configuration import (DegenerateParameterError, build_points,
                            verify_collinearities)
from .monoid import (ORIGIN, XYZT, DegenerateSurfaceError, MonoidSurface,
                     build_surface, smoothness_certificate)
from .projective import GeometryError
from .scalars import (RatFun, ScalarSyntaxError, as_fraction, parse_scalar,
                      scalar_str)
from .sextuple import (AuxFrame, SextupleError, admissible_triplet,
                       aux_collinearity_check, is_convergent,
                       sextuple_projectivity, standard_sextuple)

_TOOL = "quartic-monoid"

# raised by handlers on mathematically degenerate input; becomes exit 1
_DEGENERATE = (DegenerateParameterError, DegenerateSurfaceError,
               ZeroDivisionError)


def _payload_hash(payload) -> str:
    blob = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()


def _certificate(command: str, inputs: dict, invariants: list,
                 payload: dict) -> dict:
    return {
        "schema": 1,
        "tool": _TOOL,
        "version": __version__,
        "command": command,
        "inputs": inputs,
        "invariants": [{"name": n, "passed": bool(p)} for n, p in invariants],
        "ok": all(bool(p) for _, p in invariants),
        "payload": payload,
        "payload_sha256": _payload_hash(payload),
    }


def _error_certificate(command: str, inputs: dict, ex: Exception) -> dict:
    return {
        "schema": 1,
        "tool": _TOOL,
        "version": __version__,
        "command": command,
        "inputs": inputs,
        "ok": False,
        "error": {"type": type(ex).__name__, "message": str(ex)},
    }


def _human(doc: dict) -> str:
    lines = [f"{_TOOL} {doc['command']}"]
    for k in sorted(doc["inputs"]):
        lines.append(f"  input {k} = {doc['inputs'][k]}")
    if "error" in doc:
        lines.append(f"  error [{doc['error']['type']}] "
                     f"{doc['error']['message']}")
        lines.append("result: error")
        return "\n".join(lines) + "\n"
    for inv in doc["invariants"]:
        mark = "pass" if inv["passed"] else "FAIL"
        lines.append(f"  [{mark}] {inv['name']}")
    lines.append("  payload sha256 " + doc["payload_sha256"])
    lines.append("result: " + ("ok" if doc["ok"] else "FAILED"))
    return "\n".join(lines) + "\n"


def _emit(doc: dict, args) -> None:
    if args.json:
        text = json.dumps(doc, sort_keys=True, indent=2) + "\n"
    else:
        text = _human(doc)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _scalar(text: str):
    if text == "symbolic":
        return RatFun.gen("a")
    return parse_scalar(text)


def _triple(text: str) -> tuple:
    parts = text.split(",")
    if len(parts) != 3:
        raise ValueError("triple must be i,j,k")
    return tuple(int(p) for p in parts)


def _point_strs(p) -> list:
    return [scalar_str(c) for c in p.coords]


# ---------------------------------------------------------------------------
# subcommand handlers: each returns (inputs, invariants, payload)
# ---------------------------------------------------------------------------


def _cmd_config(args):
    a = _scalar(args.a)
    inputs = {"a": scalar_str(a), "flavor": args.flavor}
    config = build_points(a, args.flavor)
    rep = verify_collinearities(config)
    invariants = [
        ("twelve points pairwise distinct", rep["distinct"]),
        ("all nineteen expected triples collinear", not rep["missing"]),
        ("no unexpected collinear triples", not rep["extra"]),
    ]
    payload = config.serialize()
    payload.update({
        "collinear_triples": [list(t) for t in rep["present"]],
        "extra_triples": [list(t) for t in rep["extra"]],
        "missing_triples": [list(t) for t in rep["missing"]],
    })
    return inputs, invariants, payload


def _monoid_invariants(surface: MonoidSurface) -> list:
    c = surface.t_cubic()
    d = surface.t_free_quartic()
    t = surface.poly.__class__.var(XYZT, "t")
    out = [
        ("defining polynomial splits as t*C + D", surface.poly == t * c + d),
        ("tangent cone C at (0:0:0:1) is a nonzero cubic",
         (not c.is_zero()) and c.degree() == 3),
        ("D is a t-free quartic", d.is_zero() or d.degree() == 4),
    ]
    if surface.config is not None:
        on = all(surface.contains_point(p) for p in surface.config.points)
        out.append(("all twelve configuration points lie on the surface", on))
    return out


def _cmd_surface(args):
    flavor = args.flavor
    if flavor is None:
        flavor = "qab" if args.b is not None else "qa"
    a = None if args.a is None else _scalar(args.a)
    b = None if args.b is None else _scalar(args.b)
    if flavor == "rohn":
        if a is not None or b is not None:
            raise UsageError("rohn takes no parameters")
    elif a is None:
        raise UsageError(f"{flavor} needs --a")
    inputs = {"flavor": flavor}
    if a is not None:
        inputs["a"] = scalar_str(a)
    if b is not None:
        inputs["b"] = scalar_str(b)
    surface = build_surface(flavor, a, b)
    invariants = _monoid_invariants(surface)
    payload = surface.serialize()
    payload["t_cubic"] = surface.t_cubic().serialize()
    payload["t_free_quartic"] = surface.t_free_quartic().serialize()
    return inputs, invariants, payload


def _cmd_lines(args):
    a = _scalar(args.a)
    inputs = {"a": scalar_str(a)}
    surface = build_surface("qa", a)
    lines = surface.all_lines()
    inc = surface.incidence()
    expected = [[1 if i in t else 0 for t in surface.config.triples]
                for i in range(12)]
    got = [[1 if x else 0 for x in row] for row in inc["matrix"]]
    invariants = [
        ("thirty-one pairwise distinct lines on the surface",
         len(lines) == 31),
        ("line through the triple point and P_i meets exactly the residual "
         "lines of triples containing i", got == expected),
    ]
    if isinstance(a, Fraction):
        rational = all(
            all(as_fraction(c) is not None for c in sl.line.a.coords)
            and all(as_fraction(c) is not None for c in sl.line.b.coords)
            for sl in lines)
        invariants.append(("all lines defined over the rationals", rational))
    payload = {
        "lines": [sl.serialize() for sl in lines],
        "incidence_matrix": got,
        "meeting_counts": {str(i): inc["counts"][i] for i in inc["counts"]},
    }
    return inputs, invariants, payload


def _cmd_smooth(args):
    if args.symbolic:
        a = RatFun.gen("a")
    elif args.a is not None:
        a = _scalar(args.a)
    else:
        raise UsageError("smooth needs --a or --symbolic")
    b = None if args.b is None else _scalar(args.b)
    flavor = "qab" if b is not None else "qa"
    inputs = {"a": scalar_str(a), "flavor": flavor}
    if b is not None:
        inputs["b"] = scalar_str(b)
    surface = build_surface(flavor, a, b)
    cert = smoothness_certificate(surface)
    invariants = [
        ("every line contributes the factor lambda^2 exactly",
         cert["gcds_ok"]),
        ("no admissible parameter makes the surface singular away from "
         "the triple point", cert["ok"]),
    ]
    payload = {
        "lines": [r.serialize() for r in cert["lines"]],
        "gcds_ok": cert["gcds_ok"],
        "singular_parameter_values": [str(v) for v in
                                      cert["singular_parameter_values"]],
        "ok": cert["ok"],
    }
    return inputs, invariants, payload


def _cmd_sextuple(args):
    a = _scalar(args.a)
    triple = _triple(args.triple)
    if not admissible_triplet(triple):
        raise UsageError(f"{triple} is not an admissible ordered triplet")
    inputs = {"a": scalar_str(a), "triple": ",".join(str(i) for i in triple)}
    surface = build_surface("qa", a)
    sx = standard_sextuple(surface, triple)
    rep = is_convergent(sx.points)
    frame = AuxFrame(sx)
    on_surface = all(surface.contains_point(p) for p in sx.points)
    invariants = [
        ("sextuple is convergent", rep.ok),
        ("apex is the triple point", rep.apex is not None
         and rep.apex == ORIGIN),
        ("all six points lie on the surface", on_surface),
        ("auxiliary apexes are collinear with the apex",
         aux_collinearity_check(sx)),
    ]
    payload = sx.serialize()
    payload["aux"] = {
        "R1": _point_strs(frame.r1),
        "R2": _point_strs(frame.r2),
        "R3": _point_strs(frame.r3),
        "A1": _point_strs(frame.a1),
        "A2": _point_strs(frame.second_apex()),
    }
    return inputs, invariants, payload


def _cmd_stab(args):
    a = _scalar(args.a)
    inputs = {"a": scalar_str(a)}
    report = stabilizer(a, threads=args.threads)
    if isinstance(report, StabilizerScan):
        group = report.group()
        locus = report.locus_union_squarefree()
        invariants = [
            ("exactly six triplets stabilize for every admissible parameter",
             len(report.always) == 6),
            ("every other stabilizing triplet is conditional",
             len(report.always) + len(report.onlocus)
             + report.never_count == 720),
            ("generic stabilizer group recognized",
             not group.label.startswith("unrecognized")),
        ]
        return inputs, invariants, report.serialize()
    invariants = [
        ("sweep set already closed under composition",
         not report.closure_added),
        ("group recognized", not report.label.startswith("unrecognized")),
    ]
    return inputs, invariants, report.serialize()


def _cmd_equiv(args):
    a = _scalar(args.a)
    b = _scalar(args.b2)
    for v in (a, b):
        if isinstance(v, RatFun) and not v.is_constant():
            raise UsageError("equiv needs concrete parameters")
    inputs = {"a": scalar_str(a), "b2": scalar_str(b)}
    res = equivalent(a, b)
    invariants = [
        ("j-invariant test and witness sweep agree",
         res["equivalent"] == (res["j_a"] == res["j_b"])),
    ]
    witness = None
    if res["witness"] is not None:
        qa = build_surface("qa", a).poly
        qb = build_surface("qa", b).poly
        carried = surfaces_coincide(res["witness"].apply_form(qa), qb)
        invariants.append(
            ("witness carries the first surface onto the second", carried))
        witness = [scalar_str(c) for c in res["witness"].flat()]
    payload = {
        "a": scalar_str(a),
        "b": scalar_str(b),
        "equivalent": res["equivalent"],
        "j_a": scalar_str(res["j_a"]),
        "j_b": scalar_str(res["j_b"]),
        "witness": witness,
    }
    return inputs, invariants, payload


def _cmd_jinv(args):
    a = _scalar(args.a)
    inputs = {"a": scalar_str(a)}
    j = j_invariant(a)
    try:
        orb = orbit(a)
    except ValueError as ex:
        raise DegenerateParameterError(str(ex)) from ex
    same = all(j_invariant(v) == j for v in orb)
    invariants = [("j agrees at every orbit member", same)]
    payload = {
        "j": scalar_str(j),
        "orbit": [scalar_str(v) for v in orb],
    }
    return inputs, invariants, payload


def _cmd_verify_all(args):
    a = _scalar(args.a)
    if isinstance(a, RatFun) and not a.is_constant():
        raise UsageError("verify-all needs a concrete parameter")
    inputs = {"a": scalar_str(a)}
    invariants = []
    payload = {}

    for flavor in ("original", "normalized"):
        rep = verify_collinearities(build_points(a, flavor))
        invariants.append(
            (f"{flavor} configuration has exactly the nineteen collinear "
             "triples", rep["ok"]))
    payload["configuration"] = "checked"

    surface = build_surface("qa", a)
    invariants += _monoid_invariants(surface)

    lines = surface.all_lines()
    invariants.append(("thirty-one pairwise distinct lines",
                       len(lines) == 31))

    cert = smoothness_certificate(surface)
    invariants.append(("surface smooth away from the triple point",
                       cert["ok"]))
    payload["singular_parameter_values"] = [
        str(v) for v in cert["singular_parameter_values"]]

    sx = standard_sextuple(surface, (11, 10, 9))
    invariants.append(("standard sextuple of (11,10,9) is convergent",
                       is_convergent(sx.points).ok))
    invariants.append(("auxiliary apexes collinear",
                       aux_collinearity_check(sx)))

    group = stabilizer(a, threads=args.threads)
    invariants.append(("stabilizer group recognized",
                       not group.label.startswith("unrecognized")))
    payload["stabilizer"] = {"order": group.order, "label": group.label}

    j = j_invariant(a)
    orb = orbit(a)
    invariants.append(("j constant on the orbit",
                       all(j_invariant(v) == j for v in orb)))
    payload["j"] = scalar_str(j)

    partner = next(v for v in orb if v != a)
    res = equivalent(a, partner)
    invariants.append(
        (f"equivalent to orbit member {scalar_str(partner)} with witness",
         res["equivalent"] and res["witness"] is not None))
    return inputs, invariants, payload


# ---------------------------------------------------------------------------
# argument plumbing
# ---------------------------------------------------------------------------


class UsageError(ValueError):
    pass


_HANDLERS = {
    "config": _cmd_config,
    "surface": _cmd_surface,
    "lines": _cmd_lines,
    "smooth": _cmd_smooth,
    "sextuple": _cmd_sextuple,
    "stab": _cmd_stab,
    "equiv": _cmd_equiv,
    "jinv": _cmd_jinv,
    "verify-all": _cmd_verify_all,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog=_TOOL,
        description="exact certificates for quartic monoid surfaces "
                    "with 31 lines")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--json", action="store_true",
                       help="emit the JSON certificate")
        p.add_argument("--out", help="write output to a file")
        p.add_argument("--threads", type=int, default=default_threads(),
                       help="worker processes (speed only, never output)")

    p = sub.add_parser("config", help="collinearity scan of the 12 points")
    p.add_argument("--a", required=True)
    p.add_argument("--flavor", choices=("original", "normalized"),
                   default="original")
    common(p)

    p = sub.add_parser("surface", help="defining polynomial and normal form")
    p.add_argument("--a")
    p.add_argument("--b")
    p.add_argument("--flavor", choices=("qab", "qa", "rohn"))
    common(p)

    p = sub.add_parser("lines", help="the 31 lines with incidence")
    p.add_argument("--a", required=True)
    common(p)

    p = sub.add_parser("smooth", help="smoothness certificate")
    p.add_argument("--a")
    p.add_argument("--b")
    p.add_argument("--symbolic", action="store_true")
    common(p)

    p = sub.add_parser("sextuple", help="standard sextuple of a triplet")
    p.add_argument("--a", required=True)
    p.add_argument("--triple", required=True)
    common(p)

    p = sub.add_parser("stab", help="PGL(4) stabilizer of the surface")
    p.add_argument("--a", required=True,
                   help="rational, eps, or symbolic")
    common(p)

    p = sub.add_parser("equiv", help="projective equivalence of two members")
    p.add_argument("--a", required=True)
    p.add_argument("--b2", required=True)
    common(p)

    p = sub.add_parser("jinv", help="j-invariant and parameter orbit")
    p.add_argument("--a", required=True)
    common(p)

    p = sub.add_parser("verify-all", help="full verification at one value")
    p.add_argument("--a", required=True)
    common(p)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    handler = _HANDLERS[args.command]
    inputs = {}
    try:
        inputs, invariants, payload = handler(args)
    except (UsageError, ScalarSyntaxError, ValueError) as ex:
        if isinstance(ex, _DEGENERATE):
            _emit(_error_certificate(args.command, inputs, ex), args)
            return 1
        parser.error(str(ex))
    except _DEGENERATE as ex:
        _emit(_error_certificate(args.command, inputs, ex), args)
        return 1
    except (GeometryError, SextupleError) as ex:
        _emit(_error_certificate(args.command, inputs, ex), args)
        return 1
    _emit(_certificate(args.command, inputs, invariants, payload), args)
    return 0


if __name__ == "__main__":
    sys.exit(main())

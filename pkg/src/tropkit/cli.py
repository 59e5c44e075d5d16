"""``tropkit`` command-line front-end.

Every command reads polytopes, fans and polynomials as inline JSON or JSON
files (polynomials may also be given in the usual text notation) and writes
one JSON document.  Exit codes: 0 ok, 1 domain error, 2 parse or usage
error, 3 resource limit.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import algebra, fan, polytope, serialize, tropical
from .errors import DomainError, ParseError, ResourceError
from .lattice import normalize_number
from .svg import svg_text

SEED_ENV = "TROPKIT_SEED"


@dataclass(frozen=True)
class RunConfig:
    seed: int
    shift_verifications: int
    enumeration_budget: int
    output: str | None
    format: str

    def shift_policy(self) -> fan.ShiftPolicy:
        return fan.ShiftPolicy(seed=self.seed, verifications=self.shift_verifications)


def _num(x):
    x = normalize_number(x)
    return x if isinstance(x, int) else str(x)


def _polynomial(text, n=None):
    if text.lstrip().startswith("{"):
        return serialize.polynomial_from_json(serialize.load_source(text))
    return tropical.parse_laurent(text, n)


def _polytopes(args, count=None):
    ps = [serialize.polytope_from_json(serialize.load_source(s)) for s in args.polytope or []]
    if count is not None and len(ps) != count:
        raise ParseError(f"expected {count} --polytope argument(s), got {len(ps)}")
    if not ps:
        raise ParseError("at least one --polytope is required")
    return ps


def _fans(args, count=None):
    fs = [serialize.weighted_fan_from_json(serialize.load_source(s)) for s in args.fan or []]
    if count is not None and len(fs) != count:
        raise ParseError(f"expected {count} --fan argument(s), got {len(fs)}")
    if not fs:
        raise ParseError("at least one --fan is required")
    return fs


def _shift(text):
    try:
        return tuple(Fraction(x) for x in text.split(","))
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"bad shift vector {text!r}") from None


# --------------------------------------------------------------------------
# commands; each returns (json document, drawable object or None)


def cmd_newton(args, cfg):
    P = tropical.newton_polytope(_polynomial(args.poly, args.n))
    return P.to_json(), P


def cmd_minkowski(args, cfg):
    ps = _polytopes(args)
    total = ps[0]
    for P in ps[1:]:
        total = polytope.minkowski_sum(total, P)
    return total.to_json(), total


def cmd_volume(args, cfg):
    (P,) = _polytopes(args, 1)
    doc = {"volume": _num(polytope.volume(P))}
    if args.oracle:
        doc["ehrhart_volume"] = _num(polytope.volume_ehrhart_oracle(P, cfg.enumeration_budget))
    return doc, None


def cmd_mixedvol(args, cfg):
    return {"mixed_volume": _num(polytope.mixed_volume(_polytopes(args)))}, None


def cmd_normalfan(args, cfg):
    (P,) = _polytopes(args, 1)
    F = polytope.normal_fan(P)
    return F.to_json(), F


def cmd_pascal_check(args, cfg):
    (P,) = _polytopes(args, 1)
    res = polytope.pascal_residual(P)
    return {"residual": [_num(x) for x in res], "ok": all(x == 0 for x in res)}, None


def cmd_balance_check(args, cfg):
    (W,) = _fans(args, 1)
    return {"balanced": fan.is_balanced(W)}, None


def cmd_tropical(args, cfg):
    T = tropical.tropical_hypersurface(_polynomial(args.poly, args.n)).weighted
    return T.to_json(), T


def cmd_bkk(args, cfg):
    n = len(args.polys)
    fs = [_polynomial(p, n) for p in args.polys]
    if args.method == "fans":
        count = tropical.bkk_via_fans(fs, cfg.shift_policy())
    else:
        count = tropical.bkk_count(fs)
    return {"count": _num(count)}, None


def cmd_trop_intersect(args, cfg):
    a, b = _fans(args, 2)
    if args.shift:
        shift = _shift(args.shift)
        pts = fan.intersection_points(a, fan.ShiftedComplex(b, shift))
        if pts is None:
            return {"transverse": False, "shift": [_num(x) for x in shift]}, None
        number = fan.intersection_number_at(a, b, shift)
        return {
            "transverse": True,
            "shift": [_num(x) for x in shift],
            "points": [[_num(x) for x in p] for _, _, p in pts],
            "number": _num(number),
        }, None
    return {"number": _num(fan.stable_intersection_number(a, b, cfg.shift_policy()))}, None


def cmd_equiv(args, cfg):
    a, b = _fans(args, 2)
    return {"equivalent": fan.weighted_equivalent(a, b)}, None


def cmd_fan_sum(args, cfg):
    fs = _fans(args)
    total = fs[0]
    for W in fs[1:]:
        total = fan.weighted_sum(total, W)
    return total.to_json(), total


def cmd_hilbert(args, cfg):
    if args.basis:
        basis = serialize.basis_from_json(serialize.load_source(args.basis))
    else:
        basis = _polytopes(args)
    P = algebra.volume_polynomial(basis)
    h = algebra.hilbert_function(P)
    return {
        "hilbert": list(h.values),
        "poincare": algebra.poincare_check(h),
        "volume_polynomial": P.to_json(),
    }, None


COMMANDS = {
    "newton": (cmd_newton, "Newton polytope of a Laurent polynomial"),
    "minkowski": (cmd_minkowski, "Minkowski sum of polytopes"),
    "volume": (cmd_volume, "exact volume of a polytope"),
    "mixedvol": (cmd_mixedvol, "mixed volume of n polytopes in R^n"),
    "normalfan": (cmd_normalfan, "normal fan of a full-dimensional polytope"),
    "pascal-check": (cmd_pascal_check, "sum of integral facet volumes times primitive normals"),
    "balance-check": (cmd_balance_check, "is a weighted fan balanced"),
    "tropical": (cmd_tropical, "tropical hypersurface of a Laurent polynomial"),
    "bkk": (cmd_bkk, "generic root count of n polynomials in n variables"),
    "trop-intersect": (cmd_trop_intersect, "intersection number of two weighted fans"),
    "equiv": (cmd_equiv, "equality of weighted fans up to refinement"),
    "fan-sum": (cmd_fan_sum, "sum of weighted fans"),
    "hilbert": (cmd_hilbert, "Hilbert function of the volume-polynomial algebra"),
}


def _positive(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _seed(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if not -(2**63) <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in 64 bits")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=_seed, default=None, help=f"shift seed (default ${SEED_ENV} or 0)")
    common.add_argument("--verify-shifts", type=_positive, default=1, metavar="K")
    common.add_argument("--budget", type=_positive, default=polytope.DEFAULT_BUDGET, metavar="N")
    common.add_argument("--format", choices=("json", "text", "svg"), default="json")
    common.add_argument("--out", metavar="PATH")
    common.add_argument("--polytope", action="append", metavar="JSON|PATH")
    common.add_argument("--fan", action="append", metavar="JSON|PATH")

    parser = argparse.ArgumentParser(prog="tropkit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", required=True)
    for name, (_, helptext) in COMMANDS.items():
        p = sub.add_parser(name, parents=[common], help=helptext, description=helptext)
        if name in ("newton", "tropical"):
            p.add_argument("poly")
            p.add_argument("--n", type=_positive, default=None, help="number of variables")
        elif name == "bkk":
            p.add_argument("polys", nargs="+")
            p.add_argument("--method", choices=("count", "fans"), default="count")
        elif name == "volume":
            p.add_argument("--oracle", action="store_true", help="also count lattice points")
        elif name == "trop-intersect":
            p.add_argument("--shift", help="explicit translation, e.g. 1,2")
        elif name == "hilbert":
            p.add_argument("--basis", metavar="JSON|PATH")
    return parser


def _text(doc, indent=""):
    lines = []
    for key in sorted(doc) if isinstance(doc, dict) else []:
        val = doc[key]
        if isinstance(val, dict):
            lines.append(f"{indent}{key}:")
            lines.extend(_text(val, indent + "  "))
        elif isinstance(val, list) and val and isinstance(val[0], dict):
            lines.append(f"{indent}{key}:")
            for item in val:
                lines.append(f"{indent}  - " + ", ".join(f"{k}={item[k]}" for k in sorted(item)))
        else:
            lines.append(f"{indent}{key}: {val}")
    return lines


def render(doc, drawable, fmt: str) -> str:
    if fmt == "json":
        return serialize.dumps(doc) + "\n"
    if fmt == "text":
        return "\n".join(_text(doc)) + "\n"
    if drawable is None:
        raise DomainError("this command has nothing to draw")
    return svg_text(drawable)


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    seed = args.seed
    try:
        if seed is None:
            seed = _seed(os.environ.get(SEED_ENV, "0"))
    except argparse.ArgumentTypeError as exc:
        print(f"tropkit: error: {SEED_ENV}: {exc}", file=stderr)
        return 2
    cfg = RunConfig(seed, args.verify_shifts, args.budget, args.out, args.format)
    handler = COMMANDS[args.command][0]
    try:
        doc, drawable = handler(args, cfg)
        text = render(doc, drawable, cfg.format)
    except ParseError as exc:
        print(f"tropkit: parse error: {exc}", file=stderr)
        return 2
    except ResourceError as exc:
        print(f"tropkit: resource limit: {exc}", file=stderr)
        return 3
    except (DomainError, RuntimeError) as exc:
        print(f"tropkit: error: {exc}", file=stderr)
        return 1
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return 0


def main(argv=None) -> int:
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())

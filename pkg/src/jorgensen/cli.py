"""Command-line entry point.

Every subcommand prints one JSON object on standard output (``verify``
prints one PASS/FAIL line per check).  Complex numbers are read as
``a+bi`` and written as ``{"re": a, "im": b}``.

Exit status: 0 on success, 1 on a numerical failure (error class name on
standard error), 2 on bad arguments.
"""

from __future__ import annotations

import argparse
import json
import re
import sys

from . import families as fam
from .errors import JorgensenError
from .markoff import (DEFAULT_GROWTH, DEFAULT_TRAPPED, SearchBudget, Slope,
                      associated_pair, diagonal_base, psi, psi_inf)
from .pleating import (LOSParams, endpoint, endpoint_pair, los_normalize, tabulated_seed,
                       write_endpoint_csv)
from .render import (DEFAULT_SLICE, GridSpec, render_limit_set, render_slice,
                     write_ppm, write_value_csv)
from .verify import run_checks

# options whose value may legitimately start with "-"
_VALUE_OPTIONS = {"--x", "--mu", "--sigma", "--seed", "--bounds", "--a", "--k",
                  "--theta", "--r"}


def parse_complex(text: str) -> complex:
    """Parse ``a+bi`` style input (``i`` or ``j``, spaces allowed)."""
    s = text.replace(" ", "").replace("I", "i").replace("J", "j").replace("i", "j")
    if not s:
        raise ValueError("empty complex number")
    # bare "j", "-j", "2+j" need an explicit coefficient for complex()
    s = re.sub(r"(^|[+-])j", r"\g<1>1j", s)
    try:
        return complex(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}") from None


def _complex_arg(text):
    try:
        return parse_complex(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _slope_arg(text):
    try:
        return Slope.parse(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a slope: {text!r}") from None


def _seed_arg(text):
    if "," in text:
        re_part, im_part = text.split(",")
        return complex(float(re_part), float(im_part))
    return _complex_arg(text)


def _bounds_arg(text):
    parts = [float(v) for v in text.split(",")]
    if len(parts) != 4:
        raise argparse.ArgumentTypeError("bounds must be re_min,re_max,im_min,im_max")
    return tuple(parts)


def _size_arg(text):
    m = re.fullmatch(r"(\d+)[xX](\d+)", text)
    if not m:
        raise argparse.ArgumentTypeError("size must look like 600x400")
    return int(m.group(1)), int(m.group(2))


def cjson(z: complex):
    return {"re": z.real, "im": z.imag}


def _emit(obj):
    print(json.dumps(obj))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="jorgensen",
                                     description="Jorgensen numbers of two-generator Kleinian groups")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("jnum-family", help="Jorgensen number of a family member")
    p.add_argument("--family", choices=["sst", "kissing", "theta", "maskit"], required=True)
    p.add_argument("--a", type=float)
    p.add_argument("--k", type=float)
    p.add_argument("--theta", type=float)
    p.add_argument("--mu", type=_complex_arg)

    p = sub.add_parser("jnum-realize", help="group with a prescribed Jorgensen number")
    p.add_argument("--r", type=float, required=True)

    p = sub.add_parser("psi", help="Markoff map of the diagonal slice at one slope")
    p.add_argument("--x", type=_complex_arg, required=True)
    p.add_argument("--slope", type=_slope_arg, required=True)

    p = sub.add_parser("psi-inf", help="upper bound for the Jorgensen number at x")
    p.add_argument("--x", type=_complex_arg, required=True)
    _add_budget(p)

    p = sub.add_parser("endpoint", help="pleating-ray endpoint by Newton iteration")
    p.add_argument("--slope", type=_slope_arg, required=True)
    p.add_argument("--seed", type=_seed_arg, help="Newton seed, 're,im' or 'a+bi'")
    p.add_argument("--csv", help="also write the endpoint as a CSV table")

    p = sub.add_parser("los", help="Li-Oichi-Sato parameters of the endpoint group")
    p.add_argument("--slope", type=_slope_arg, required=True)
    p.add_argument("--seed", type=_seed_arg)

    p = sub.add_parser("slice", help="render the diagonal-slice heat map")
    p.add_argument("--bounds", type=_bounds_arg, default=DEFAULT_SLICE)
    p.add_argument("--size", type=_size_arg, default=(600, 400))
    p.add_argument("--out", required=True)
    p.add_argument("--csv")
    p.add_argument("--workers", type=int, default=1)
    _add_budget(p)

    p = sub.add_parser("limitset", help="render the limit set of <M, N_{sigma,mu}>")
    p.add_argument("--sigma", type=_complex_arg, required=True)
    p.add_argument("--mu", type=_complex_arg, required=True)
    p.add_argument("--len", type=int, default=10, dest="length")
    p.add_argument("--bounds", type=_bounds_arg, default=(-2.0, 2.0, -1.5, 1.5))
    p.add_argument("--size", type=_size_arg, default=(800, 600))
    p.add_argument("--out", required=True)

    p = sub.add_parser("verify", help="run the golden-value checks")
    p.add_argument("--all", action="store_true", help="run every check (the default)")
    p.add_argument("--seed", type=int, default=0, help="seed for the randomized checks")
    return parser


def _add_budget(p):
    p.add_argument("--depth", type=int, default=40)
    p.add_argument("--nodes", type=int, default=20000)
    p.add_argument("--target", type=float, default=1.0)
    p.add_argument("--growth", type=float, default=DEFAULT_GROWTH)
    p.add_argument("--trapped", type=int, default=DEFAULT_TRAPPED)


def _budget(args) -> SearchBudget:
    return SearchBudget(args.depth, args.nodes, args.target)


def _glue_negative_values(argv):
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in _VALUE_OPTIONS and i + 1 < len(argv) and argv[i + 1].startswith("-") \
                and not argv[i + 1].startswith("--"):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def _cmd_jnum_family(args, parser):
    fam_name = args.family
    try:
        if fam_name == "sst":
            params = fam.SST(_need(args.a, "--a", parser))
        elif fam_name == "kissing":
            params = fam.Kissing(_need(args.k, "--k", parser))
        elif fam_name == "theta":
            params = fam.Theta(_need(args.theta, "--theta", parser))
        else:
            params = fam.Maskit(_need(args.mu, "--mu", parser))
    except fam.DomainError as exc:
        parser.error(str(exc))
    pair = params.pair()
    out = {"family": params.tag}
    out.update(_param_json(params))
    out["j"] = params.jorgensen()
    out["j_pair"] = pair.jorgensen()
    _emit(out)


def _param_json(params):
    if isinstance(params, fam.SST):
        return {"a": params.a}
    if isinstance(params, fam.Kissing):
        return {"k": params.k}
    if isinstance(params, fam.Theta):
        return {"theta": params.theta}
    return {"mu": cjson(params.mu)}


def _need(value, flag, parser):
    if value is None:
        parser.error(f"{flag} is required for this family")
    return value


def _cmd_jnum_realize(args, parser):
    try:
        params = fam.realize(args.r)
    except fam.DomainError as exc:
        parser.error(str(exc))
    out = {"family": params.tag}
    out.update(_param_json(params))
    out["j"] = params.pair().jorgensen()
    out["j_closed_form"] = params.jorgensen()
    _emit(out)


def _cmd_psi(args, parser):
    v = psi(diagonal_base(args.x), args.slope)
    _emit({"x": cjson(args.x), "slope": str(args.slope), "psi": cjson(v),
           "psi_sq_minus4": cjson(v * v - 4)})


def _cmd_psi_inf(args, parser):
    r = psi_inf(args.x, _budget(args), growth=args.growth)
    _emit({"x": cjson(args.x), "psi_inf": r.value, "argmin": str(r.argmin),
           "converged": r.converged})


def _endpoint_result(args):
    seed = args.seed if args.seed is not None else tabulated_seed(args.slope)
    return endpoint(args.slope, seed)


def _cmd_endpoint(args, parser):
    res = _endpoint_result(args)
    if args.csv:
        write_endpoint_csv([res], args.csv)
    _emit({"slope": str(res.slope), "p": res.slope.p, "q": res.slope.q, "e": cjson(res.e),
           "residual": res.residual, "iterations": res.iterations})


def _cmd_los(args, parser):
    res = _endpoint_result(args)
    pair = endpoint_pair(args.slope, res)
    los = los_normalize(pair.A, pair.B)
    _emit({"slope": str(args.slope), "e": cjson(res.e), "pair": list(associated_pair(args.slope)),
           "sigma": cjson(los.sigma), "mu": cjson(los.mu)})


def _cmd_slice(args, parser):
    grid = GridSpec(*args.bounds, *args.size)
    img, table = render_slice(grid, _budget(args), workers=args.workers,
                              growth=args.growth, trapped_limit=args.trapped)
    write_ppm(img, args.out)
    if args.csv:
        write_value_csv(table, args.csv)
    inside = sum(pv.inside for pv in table)
    _emit({"out": args.out, "width": grid.width, "height": grid.height,
           "inside": inside, "black": len(table) - inside,
           "unconverged": sum(not pv.converged for pv in table if pv.inside)})


def _cmd_limitset(args, parser):
    if args.sigma == 0:
        parser.error("--sigma must be nonzero")
    grid = GridSpec(*args.bounds, *args.size)
    img = render_limit_set(LOSParams(args.sigma, args.mu), args.length, grid)
    write_ppm(img, args.out)
    _emit({"out": args.out, "width": grid.width, "height": grid.height,
           "points_drawn": int((img.pixels[..., 0] == 0).sum())})


def _cmd_verify(args, parser):
    checks = run_checks(args.seed)
    for c in checks:
        print(f"{'PASS' if c.passed else 'FAIL'}  {c.name}  {c.detail}".rstrip())
    failed = sum(not c.passed for c in checks)
    print(f"{len(checks) - failed}/{len(checks)} checks passed")
    return 0 if failed == 0 else 1


COMMANDS = {
    "jnum-family": _cmd_jnum_family,
    "jnum-realize": _cmd_jnum_realize,
    "psi": _cmd_psi,
    "psi-inf": _cmd_psi_inf,
    "endpoint": _cmd_endpoint,
    "los": _cmd_los,
    "slice": _cmd_slice,
    "limitset": _cmd_limitset,
    "verify": _cmd_verify,
}


def run(argv=None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(_glue_negative_values(argv))
    try:
        code = COMMANDS[args.command](args, parser)
    except (JorgensenError, ValueError, ZeroDivisionError, OverflowError) as exc:
        msg = exc.args[0] if exc.args else ""
        print(f"{type(exc).__name__}: {msg}", file=sys.stderr)
        return 1
    return code or 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()

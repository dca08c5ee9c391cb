"""
plrk command line

Every subcommand reads structure files, runs the kernel and writes canonical
output. Exit codes: 0 PASS, 1 FAIL, 2 input error.
"""
import argparse
import json
import logging
from typing import Any, Callable, Dict, List, Optional, Sequence

from pydantic import ValidationError

from algebra.coeffring import Ring, VectorField, parse_fraction
from algebra.cohomology import (
    LIE,
    PRELIE,
    check_representation,
    coboundary,
    cocycle_check,
    cohomology_dims_field,
    complex_iso_H,
    induced_rep_on_C1,
    lie_coboundary,
    prelie_coboundary,
    sub_adjacent_representation,
)
from algebra.crossed import (
    check_crossed_extension,
    three_cocycle_from_extension,
    total_algebra,
    verify_crossed_module,
)
from algebra.errors import ModuleMismatchError, PLRKError, UnsupportedError, VerificationError
from algebra.extensions import build_extension, check_extension_conditions, equivalence_decide_field
from algebra.freeprelie import free_prelie_rinehart, verify_truncated
from algebra.report import Report, ReportBuilder
from algebra.rmatrix import (
    RMatrix,
    cybe_grid,
    cybe_residual,
    heisenberg,
    heisenberg_action,
    induced_poisson,
    omega1_prelie,
    residual_identity_check,
    sl2,
    sl2_action,
)
from algebra.sampling import (
    make_rng,
    random_cochain,
    random_monomial_triple,
    random_prelie_rinehart,
    random_representation,
    random_rmatrix,
)
from algebra.structures import (
    PreLieAlgebraFD,
    check_action,
    derivation_prelie,
    standard_coordinate_algebra,
    sub_adjacent,
    tensor_product_algebra,
    transformation_algebra,
    transformation_lie_rinehart,
    verify_lie_rinehart,
    verify_prelie_rinehart,
)
from algebra.twoalg import (
    crossed_to_strict,
    skeletal_to_triple,
    strict_to_crossed,
    sub_adjacent_2,
    triple_to_skeletal,
    verify_lie2,
    verify_prelie2,
)
from cli.output import emit, exit_code, print_error, print_info, render_report
from config.settings import configure_logging, resolve_seed, settings
from serialization.codec import RMatrixInput, dump_document, load_document, to_schema

logger = logging.getLogger(__name__)

INPUT_ERRORS = (PLRKError, ValidationError, json.JSONDecodeError, OSError)


def _load(path: str, *kinds: str) -> Any:
    kind, obj = load_document(path)
    if kinds and kind not in kinds:
        raise UnsupportedError(f"{path}: expected {' or '.join(kinds)}, got {kind}")
    return obj


def _split(text: str) -> List[str]:
    return [part.strip() for part in text.split(",") if part.strip()]


def _ring(args) -> Ring:
    return Ring(tuple(_split(args.vars)), getattr(args, "laurent", False))


def _field(ring: Ring, text: str) -> VectorField:
    comps = [ring.parse(part) for part in _split(text)]
    if len(comps) != ring.nvars:
        raise UnsupportedError(f"field {text!r} has {len(comps)} components for {ring.nvars} variables")
    return VectorField(ring, comps)


def _finish(report: Report, args) -> int:
    emit(render_report(report, args.json), args.output)
    return exit_code(report)


# ============= VERIFY =============
def rmatrix_report(data: RMatrixInput) -> Report:
    """Classical Yang-Baxter residual of r, then the 1-form algebra it induces"""
    builder = ReportBuilder(f"r-matrix {[str(c) for c in data.r.as_list()]}")
    builder.check("cybe", [((), cybe_residual(data.r))])
    builder.extend("omega1", verify_prelie_rinehart(omega1_prelie(data.r, data.action)))
    return builder.build()


VERIFIERS: Dict[str, Callable[[Any], Report]] = {
    "prelie_rinehart": verify_prelie_rinehart,
    "lie_rinehart": verify_lie_rinehart,
    "lie_algebra": lambda lie: lie.verify(),
    "pre_lie_algebra": lambda alg: alg.verify(),
    "action": check_action,
    "representation": check_representation,
    "cochain": cocycle_check,
    "extension": check_extension_conditions,
    "crossed_module": verify_crossed_module,
    "crossed_extension": check_crossed_extension,
    "two_algebra": verify_prelie2,
    "lie_two_algebra": verify_lie2,
    "rmatrix_input": rmatrix_report,
}


def cmd_verify(args) -> int:
    kind, obj = load_document(args.path)
    logger.info("verifying %s from %s", kind, args.path)
    return _finish(VERIFIERS[kind](obj), args)


# ============= R-MATRICES =============
def _rmatrix_input(args) -> RMatrixInput:
    if args.input:
        data = _load(args.input, "rmatrix_input")
        lie, action, r = data.lie, data.action, data.r
    else:
        lie = _load(args.lie, "lie_algebra") if args.lie else sl2()
        action = _load(args.action, "action") if args.action else sl2_action()
        r = None
    if action.algebra != lie:
        raise ModuleMismatchError("the action is not an action of the given Lie algebra")
    if args.r:
        r = RMatrix.from_list(lie, [parse_fraction(v) for v in _split(args.r)])
    if r is None:
        raise UnsupportedError("no r-matrix given; pass --r or an rmatrix_input file")
    return RMatrixInput(lie, action, r)


def cmd_rmatrix(args) -> int:
    if args.grid:
        frame = cybe_grid(range(-2, 3))
        text = frame.to_json(orient="records", indent=2) if args.json else frame.to_string(index=False)
        emit(text, args.output)
        return 0
    data = _rmatrix_input(args)
    residual = cybe_residual(data.r)
    poisson = induced_poisson(data.r, data.action)
    omega1 = omega1_prelie(data.r, data.action)
    report = rmatrix_report(data)
    names = data.action.ring.variables
    brackets = {f"{{{names[i]},{names[j]}}}": str(p) for (i, j), p in sorted(poisson.table.items())}
    if args.json:
        bundle = {
            "residual": str(residual),
            "poisson": brackets,
            "omega1": to_schema(omega1).model_dump(mode="json", exclude_none=True),
            "report": report.model_dump(mode="json"),
        }
        emit(json.dumps(bundle, indent=2, ensure_ascii=False), args.output)
    else:
        lines = [f"residual: {residual}"]
        lines += [f"{key} = {value}" for key, value in brackets.items()] or ["poisson: 0"]
        lines += [dump_document(omega1).rstrip("\n"), report.to_text()]
        emit("\n".join(lines), args.output)
    return exit_code(report)


# ============= COCHAINS =============
def cmd_delta(args) -> int:
    emit(dump_document(coboundary(_load(args.path, "cochain"))), args.output)
    return 0


def cmd_cocycle_check(args) -> int:
    return _finish(cocycle_check(_load(args.path, "cochain")), args)


def cmd_cohomology(args) -> int:
    rep = _load(args.path, "representation")
    kind = PRELIE if rep.is_prelie else LIE
    dims = cohomology_dims_field(rep.algebra, rep, args.max_degree, kind)
    start = 1 if kind == PRELIE else 0
    table = {str(start + k): d for k, d in enumerate(dims)}
    if args.json:
        emit(json.dumps({"complex": kind, "dims": table}, indent=2), args.output)
    else:
        emit("\n".join(f"H^{n} = {d}" for n, d in table.items()), args.output)
    return 0


# ============= EXTENSIONS AND CROSSED MODULES =============
def cmd_extend(args) -> int:
    x = _load(args.path, "extension")
    if args.equivalent:
        other = _load(args.equivalent, "extension")
        tau = equivalence_decide_field(x, other)
        builder = ReportBuilder("extension equivalence")
        builder.require("equivalent", tau is not None, detail="omega difference is not a coboundary")
        if tau is not None:
            builder.note("tau", str(tau))
        return _finish(builder.build(), args)
    report = check_extension_conditions(x)
    if not report.passed:
        return _finish(report, args)
    emit(dump_document(build_extension(x).total), args.output)
    return 0


def cmd_crossed(args) -> int:
    if args.action == "verify":
        kind, obj = load_document(args.path)
        if kind not in ("crossed_module", "crossed_extension"):
            raise UnsupportedError(f"{args.path}: not a crossed module or crossed extension")
        return _finish(VERIFIERS[kind](obj), args)
    if args.action == "total":
        emit(dump_document(total_algebra(_load(args.path, "crossed_module"))), args.output)
        return 0
    emit(dump_document(three_cocycle_from_extension(_load(args.path, "crossed_extension"))), args.output)
    return 0


def cmd_twoalg(args) -> int:
    if args.to_crossed:
        result = strict_to_crossed(_load(args.path, "two_algebra"))
    elif args.from_crossed:
        result = crossed_to_strict(_load(args.path, "crossed_module"))
    elif args.sub_adjacent:
        result = sub_adjacent_2(_load(args.path, "two_algebra"))
    elif args.triple:
        _, _, result = skeletal_to_triple(_load(args.path, "two_algebra"))
    else:
        m3 = _load(args.path, "cochain")
        result = triple_to_skeletal(m3.rep.algebra, m3.rep, m3)
    emit(dump_document(result), args.output)
    return 0


# ============= CONSTRUCT =============
def cmd_construct(args) -> int:
    what = args.what
    if what == "coordinate":
        result = standard_coordinate_algebra(_ring(args))
    elif what == "laurent":
        ring = Ring((args.var,), laurent=True)
        result = derivation_prelie(ring, VectorField(ring, [ring.var(0)]))
    elif what == "derivation":
        ring = _ring(args)
        result = derivation_prelie(ring, _field(ring, args.field[0] if args.field else "1"))
    elif what == "tensor":
        result = tensor_product_algebra(_load(args.left, "prelie_rinehart"), _load(args.right, "prelie_rinehart"))
    elif what == "subadjacent":
        result = sub_adjacent(_load(args.path, "prelie_rinehart"))
    elif what == "transformation":
        action = _load(args.path, "action")
        if isinstance(action.algebra, PreLieAlgebraFD):
            result = transformation_algebra(action)
        else:
            result = transformation_lie_rinehart(action)
    else:
        ring = _ring(args)
        free = free_prelie_rinehart(ring, [_field(ring, text) for text in args.field], args.max_nodes)
        report = verify_truncated(free)
        if not report.passed:
            raise VerificationError("truncated free algebra fails verification", report)
        result = free.algebra
    emit(dump_document(result), args.output)
    return 0


# ============= FUZZ =============
def fuzz_report(samples: int, seed: int) -> Report:
    """
    Randomized identities: delta^2 = 0 in both complexes, the chain map H,
    sub-adjacent verification and the Jacobi residual identity

    Args:
        samples: Number of samples per family
        seed: Seed of the single random source

    Returns:
        Report with one item per sample and family
    """
    rng = make_rng(seed)
    ring = Ring(("x1", "x2"))
    ring3 = Ring(("x1", "x2", "x3"))
    lie, action = heisenberg(), heisenberg_action(ring3)
    builder = ReportBuilder(f"fuzz ({samples} samples, seed {seed})")
    for k in range(samples):
        alg = random_prelie_rinehart(rng, ring)
        rep = random_representation(rng, alg)
        phi = random_cochain(rng, rep, PRELIE, rng.randint(1, 3))
        builder.check(f"{k}.prelie_delta_squared", [((phi.degree,), prelie_coboundary(prelie_coboundary(phi)))])
        lie_rep = sub_adjacent_representation(rep)
        w = random_cochain(rng, lie_rep, LIE, rng.randint(1, 3))
        builder.check(f"{k}.lie_d_squared", [((w.degree,), lie_coboundary(lie_coboundary(w)))])
        psi = random_cochain(rng, induced_rep_on_C1(rep), LIE, rng.randint(1, 2))
        builder.check(f"{k}.chain_map", [
            ((psi.degree,), complex_iso_H(lie_coboundary(psi)) - prelie_coboundary(complex_iso_H(psi))),
        ])
        builder.extend(f"{k}.sub_adjacent", verify_lie_rinehart(sub_adjacent(alg)))
        a, b, c = random_monomial_triple(rng, ring3)
        builder.extend(f"{k}.jacobi", residual_identity_check(random_rmatrix(rng, lie), action, a, b, c))
    return builder.build()


def cmd_fuzz(args) -> int:
    seed = resolve_seed(args.seed)
    samples = args.samples or settings.PLRK_FUZZ_SAMPLES
    print_info(f"seed {seed}, {samples} samples")
    return _finish(fuzz_report(samples, seed), args)


# ============= PARSER =============
def _common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    parser.add_argument("--output", help="write the result to this file instead of stdout")
    parser.add_argument("--log-level", default=None, help="logging level name")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog=settings.APP_NAME, description="Pre-Lie-Rinehart algebra kernel")
    parser.add_argument("--version", action="version", version=f"%(prog)s {settings.APP_VERSION}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run the verifier matching the file's kind")
    p.add_argument("path")
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("rmatrix", help="r-matrix residual, Poisson bracket and 1-form algebra")
    p.add_argument("--input", help="rmatrix_input file")
    p.add_argument("--lie", help="lie_algebra file, sl(2) by default")
    p.add_argument("--action", help="action file, the standard sl(2) action by default")
    p.add_argument("--r", help="comma-separated coefficients on e_i ^ e_j, i < j")
    p.add_argument("--grid", action="store_true", help="sweep sl(2) over {-2..2}^3")
    p.set_defaults(handler=cmd_rmatrix)

    p = sub.add_parser("delta", help="coboundary of a cochain file")
    p.add_argument("path")
    p.set_defaults(handler=cmd_delta)

    p = sub.add_parser("cocycle-check", help="check that a cochain is closed")
    p.add_argument("path")
    p.set_defaults(handler=cmd_cocycle_check)

    p = sub.add_parser("cohomology", help="cohomology dimensions over the rationals")
    p.add_argument("path", help="representation file")
    p.add_argument("--max-degree", type=int, default=2)
    p.set_defaults(handler=cmd_cohomology)

    p = sub.add_parser("extend", help="build the extension of an extension file")
    p.add_argument("path")
    p.add_argument("--equivalent", help="second extension file to compare against")
    p.set_defaults(handler=cmd_extend)

    p = sub.add_parser("crossed", help="crossed modules and crossed extensions")
    p.add_argument("action", choices=("verify", "total", "cocycle3"))
    p.add_argument("path")
    p.set_defaults(handler=cmd_crossed)

    p = sub.add_parser("twoalg", help="2-algebra conversions")
    p.add_argument("path")
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--to-crossed", action="store_true", help="strict 2-algebra to crossed module")
    mode.add_argument("--from-crossed", action="store_true", help="crossed module to strict 2-algebra")
    mode.add_argument("--sub-adjacent", action="store_true", help="sub-adjacent Lie 2-algebra")
    mode.add_argument("--triple", action="store_true", help="skeletal 2-algebra to its m3 cochain")
    mode.add_argument("--from-triple", action="store_true", help="prelie 3-cochain to skeletal 2-algebra")
    p.set_defaults(handler=cmd_twoalg)

    p = sub.add_parser("construct", help="build a structure file")
    p.add_argument("what", choices=(
        "coordinate", "laurent", "derivation", "tensor", "subadjacent", "transformation", "free",
    ))
    p.add_argument("path", nargs="?", help="input file for subadjacent and transformation")
    p.add_argument("--vars", default="x1", help="comma-separated variable names")
    p.add_argument("--laurent", action="store_true")
    p.add_argument("--var", default="s", help="variable of the Laurent ring")
    p.add_argument("--field", action="append", default=[], help="comma-separated components of a vector field")
    p.add_argument("--left", help="first factor for tensor")
    p.add_argument("--right", help="second factor for tensor")
    p.add_argument("--max-nodes", type=int, default=None, help="tree truncation bound for free")
    p.set_defaults(handler=cmd_construct)

    p = sub.add_parser("fuzz", help="randomized identity checks")
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--seed", type=int, default=None, help="overridden by PLRK_SEED")
    p.set_defaults(handler=cmd_fuzz)

    for action in sub.choices.values():
        _common(action)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Run one subcommand

    Args:
        argv: Arguments without the program name; sys.argv by default

    Returns:
        0 on PASS, 1 on FAIL, 2 on input error
    """
    args = build_parser().parse_args(argv)
    configure_logging(args.log_level)
    try:
        return args.handler(args)
    except VerificationError as exc:
        print_error(str(exc))
        if exc.report is not None:
            emit(render_report(exc.report, args.json))
        return 1
    except INPUT_ERRORS as exc:
        print_error(f"{type(exc).__name__}: {exc}")
        return 2

"""Command-line front end for the GL(n) derivative calculus.

Usage:
    python run.py ap "spehcs(2,3,1/4) x chi(3,0,2*i)"
    python run.py whittaker "speh(2,1)" --lambda 2,2 --json
    python run.py verify-linalg --n 6 --seed 1

Exit statuses: 0 success (an "unknown" Whittaker verdict included),
2 malformed input, 3 input outside an operation's domain.
"""

import argparse
import logging
import random
import sys
from pathlib import Path
from typing import Any, Callable, Dict, List, Literal, NamedTuple, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, Field

from src.bigrading import (
    ad_power_identity,
    build_bigrading,
    check_condition,
    default_xi,
    stabilizer_basis,
    stabilizer_subspace,
    verify_keylemma_premises,
)
from src.catalogue import CATALOGUE, basic_catalogue
from src.config import Settings, get_settings
from src.derivatives import (
    ADDUCE_RULES,
    InfCharMultiset,
    adduce,
    derivative_monomial,
    igeq,
    infchar_transform,
    iterated_derivative,
    whittaker_dim,
)
from src.errors import DomainError, ParseError
from src.filtrations import verify_filtration_lemmas
from src.matrixlab import (
    depth_of_functional,
    jordan_matrix,
    jordan_partition,
    linalg_samples,
    parse_matrix,
    psi_lambda,
    rank_sequence,
    verify_linalg_lemma,
)
from src.parsing import TokenStream, read_complex
from src.partitions import parse_composition
from src.reps import RepExpr, associated_partition, depth, parse_expression, require_valid, speh_presentations, validate
from src.rendering import render_json, render_text, to_jsonable
from src.schemas import CommandResult

# Configure logging
logger = logging.getLogger(__name__)

Verb = Literal[
    "ap", "depth", "adduce", "derive", "whittaker", "igeq", "jordan", "psi-lambda",
    "bigrade", "verify-linalg", "verify-filtrations", "infchar",
    "validate", "speh", "ad-identity", "verify-keylemma-premises", "catalogue",
]

VERBS: Dict[str, str] = {
    "ap": "associated partition of an expression",
    "depth": "depth (largest part of the associated partition)",
    "adduce": "adduced representation, the highest derivative",
    "derive": "derivative E^k (--order) or iterated derivatives (--lambda) of a product of characters",
    "whittaker": "dimension of the degenerate Whittaker space for a composition (--lambda)",
    "igeq": "monomial attached to an expression",
    "jordan": "Jordan type of a nilpotent matrix (--matrix) or the Jordan matrix of --lambda",
    "psi-lambda": "dual matrix of the character attached to a composition (--lambda)",
    "bigrade": "bigraded basis of gl(n) and its premise check (--n, --d)",
    "verify-linalg": "check the nilpotent perturbation lemma for --n and optional --d",
    "verify-filtrations": "random-chain checks of the filtration lemmas in Q^n",
    "infchar": "infinitesimal characters after deleting --order entries",
    "validate": "parameter-range report for an expression",
    "speh": "the two degenerate principal series presenting speh(m,k)",
    "ad-identity": "check ad(X)^k(I^k) = k!(-X)^k for k = --order",
    "verify-keylemma-premises": "condition check and monomial enumerations for --n and optional --d",
    "catalogue": "basic unitary representations of size at most 8",
}

EXPRESSION_VERBS = {"ap", "depth", "adduce", "derive", "whittaker", "igeq", "validate"}
MAX_EXHAUSTIVE_N = 8


class CommandParser(argparse.ArgumentParser):
    """
    ArgumentParser that raises ParseError instead of exiting.

    With ``interactive=False`` (the HTTP surface) ``-h/--help`` is not
    registered and any attempt to exit or print usage raises as well.
    """

    def __init__(self, *args: Any, interactive: bool = True, **kwargs: Any):
        if not interactive:
            kwargs["add_help"] = False
        super().__init__(*args, **kwargs)
        self.interactive = interactive

    def error(self, message: str) -> None:
        raise ParseError(message)

    def exit(self, status: int = 0, message: Optional[str] = None) -> None:
        if self.interactive:
            super().exit(status, message)
        raise ParseError((message or "").strip() or "help and usage output are only available from the command line")

    def print_help(self, file: Any = None) -> None:
        if not self.interactive:
            raise ParseError("help and usage output are only available from the command line")
        super().print_help(file)


class Command(BaseModel):
    """A parsed and validated command line."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    verb: Verb
    args: Dict[str, Any] = Field(default_factory=dict, description="Parsed payload for the verb")
    inputs: Dict[str, Any] = Field(default_factory=dict, description="Canonical echo of the inputs")
    output_mode: Literal["text", "json"] = "text"


class Outcome(NamedTuple):
    result: Any
    text: str
    provenance: str


def build_parser(settings: Settings, interactive: bool = True) -> CommandParser:
    common = CommandParser(add_help=False, interactive=interactive)
    common.add_argument("--json", action="store_true", help="Emit one JSON object")
    common.add_argument("--field", choices=("R", "C"), default=settings.field, help="Base field")
    common.add_argument("--seed", type=int, default=settings.seed, help="Seed for randomized verifiers")
    common.add_argument("--trials", type=int, default=settings.trials, help="Random samples per verifier run")

    parser = CommandParser(prog="gln", description="Derivatives and adduced representations of GL(n)",
                           interactive=interactive)
    subparsers = parser.add_subparsers(dest="verb", required=True, metavar="VERB")
    for verb, description in VERBS.items():
        sub = subparsers.add_parser(verb, parents=[common], help=description, description=description,
                                    interactive=interactive)
        if verb in EXPRESSION_VERBS:
            sub.add_argument("expression", help="Representation expression, e.g. \"speh(2,1) x chi(1,0,0)\"")
        if verb in ("derive", "whittaker", "jordan", "psi-lambda"):
            sub.add_argument("--lambda", dest="lambda_", metavar="COMPOSITION", help="Composition such as 2,2 or 3^2 1")
        if verb in ("derive", "infchar", "ad-identity"):
            sub.add_argument("--order", type=int, help="Derivative order k")
        if verb in ("bigrade", "verify-linalg", "verify-filtrations", "verify-keylemma-premises", "psi-lambda"):
            sub.add_argument("--n", type=int, help="Matrix size or ambient dimension")
        if verb in ("bigrade", "verify-linalg", "verify-keylemma-premises"):
            sub.add_argument("--d", type=int, help="Depth")
        if verb == "bigrade":
            sub.add_argument("--variant", choices=("shifted", "unshifted"), default="shifted")
            sub.add_argument("--bracket", choices=("transposed", "literal"), default="transposed")
        if verb == "jordan":
            sub.add_argument("--matrix", metavar="PATH", help="File in the plain-text matrix format")
        if verb == "infchar":
            sub.add_argument("multiset", help="Comma-separated complex numbers, e.g. \"1/2, -1/2, i\"")
        if verb == "speh":
            sub.add_argument("m", type=int)
            sub.add_argument("k", type=int)
    return parser


def parse_multiset(text: str) -> InfCharMultiset:
    """Parse ``a, b, c`` (optionally in parentheses) into a multiset of Gaussian rationals."""
    stream = TokenStream(text)
    wrapped = stream.accept("(") is not None
    values = [read_complex(stream)]
    while stream.accept(","):
        values.append(read_complex(stream))
    if wrapped:
        stream.expect(")")
    stream.expect_end()
    return InfCharMultiset.of(values)


def _require(value: Optional[Any], flag: str, verb: str) -> Any:
    if value is None:
        raise ParseError(f"{verb} needs {flag}")
    return value


def _read_matrix_file(path: str):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ParseError(f"cannot read matrix file {path}: {e.strerror}")
    return parse_matrix(text)


def parse_command(
    argv: Sequence[str],
    settings: Optional[Settings] = None,
    interactive: bool = True,
    matrix_text: Optional[str] = None,
) -> Command:
    """
    Parse and validate a command line.

    Args:
        argv: Arguments after the program name
        settings: Defaults for --field, --seed and --trials (read from the environment if None)
        interactive: False for the HTTP surface: no --help, and --matrix may not name a file
        matrix_text: Matrix in the plain-text format, the non-file input of ``jordan``

    Returns:
        Command with parsed expressions, compositions and matrices in ``args``

    Raises:
        ParseError: Unknown verb, bad flags or malformed literals
        DomainError: Well-formed input outside the verb's domain
    """
    settings = settings or get_settings()
    namespace = build_parser(settings, interactive).parse_args(list(argv))
    verb = namespace.verb
    args: Dict[str, Any] = {}
    inputs: Dict[str, Any] = {}

    if verb in EXPRESSION_VERBS:
        expr = parse_expression(namespace.expression, namespace.field)
        if verb != "validate":
            require_valid(expr)
        args["expression"] = expr
        inputs["expression"] = str(expr)
        inputs["field"] = namespace.field

    lambda_text = getattr(namespace, "lambda_", None)
    if lambda_text is not None:
        args["lambda"] = parse_composition(lambda_text)
        inputs["lambda"] = str(args["lambda"])
    for name in ("order", "n", "d", "m", "k"):
        value = getattr(namespace, name, None)
        if value is not None:
            args[name] = value
            inputs[name] = value

    if verb == "derive" and "order" not in args and "lambda" not in args:
        raise ParseError("derive needs --order or --lambda")
    if verb == "whittaker":
        _require(lambda_text, "--lambda", verb)
    if matrix_text is not None and verb != "jordan":
        raise ParseError(f"{verb} takes no matrix")
    if verb == "jordan":
        if namespace.matrix is not None and not interactive:
            raise ParseError("--matrix reads a local file; send the matrix text instead")
        if namespace.matrix is not None and matrix_text is not None:
            raise ParseError("jordan takes either --matrix or matrix text, not both")
        if namespace.matrix is not None:
            args["matrix"] = _read_matrix_file(namespace.matrix)
        elif matrix_text is not None:
            args["matrix"] = parse_matrix(matrix_text)
        elif lambda_text is None:
            raise ParseError("jordan needs --matrix or --lambda")
        if "matrix" in args:
            inputs["matrix"] = to_jsonable(args["matrix"])
    if verb == "psi-lambda":
        _require(lambda_text, "--lambda", verb)
        args.setdefault("n", args["lambda"].n)
        inputs["n"] = args["n"]
    if verb in ("bigrade", "verify-linalg", "verify-keylemma-premises"):
        _require(namespace.n, "--n", verb)
    if verb == "bigrade":
        _require(namespace.d, "--d", verb)
        args["variant"] = inputs["variant"] = namespace.variant
        args["bracket"] = inputs["bracket"] = namespace.bracket
    if verb in ("infchar", "ad-identity"):
        _require(namespace.order, "--order", verb)
    if verb == "infchar":
        args["multiset"] = parse_multiset(namespace.multiset)
        inputs["multiset"] = str(args["multiset"])
    if verb in ("verify-linalg", "verify-filtrations"):
        args["seed"] = inputs["seed"] = namespace.seed
        args["trials"] = inputs["trials"] = namespace.trials
    if verb == "verify-filtrations":
        args.setdefault("n", MAX_EXHAUSTIVE_N)
        inputs["n"] = args["n"]
    if verb == "catalogue":
        args["field"] = inputs["field"] = namespace.field

    command = Command(verb=verb, args=args, inputs=inputs, output_mode="json" if namespace.json else "text")
    logger.debug(f"Parsed command {command.verb} with inputs {command.inputs}")
    return command


# Verb handlers

def _ap(args: Dict[str, Any]) -> Outcome:
    partition = associated_partition(args["expression"])
    return Outcome(partition, str(partition),
                   "associated partition: padded sum of the factor rectangles "
                   "(characters 1^n, Stein and Speh 2^m, Speh complementary series 4^m)")


def _depth(args: Dict[str, Any]) -> Outcome:
    value = depth(args["expression"])
    return Outcome(value, str(value), "depth: largest part of the associated partition")


def _adduce(args: Dict[str, Any]) -> Outcome:
    expr: RepExpr = args["expression"]
    result = adduce(expr)
    kinds = sorted({factor.kind for factor in expr.factors})
    rules = "; ".join(ADDUCE_RULES[kind] for kind in kinds) or "the trivial representation adduces to itself"
    return Outcome(result, str(result), f"adduced rule, factor by factor: {rules}")


def _derive(args: Dict[str, Any]) -> Outcome:
    expr: RepExpr = args["expression"]
    if "lambda" in args:
        result = iterated_derivative(expr, args["lambda"])
        return Outcome(result, str(result),
                       "iterated derivatives of a product of characters, one part at a time")
    result = derivative_monomial(expr, args["order"])
    return Outcome(result, str(result),
                   "derivative of a product of k characters: E^k restricts every character, "
                   "higher derivatives vanish")


def _whittaker(args: Dict[str, Any]) -> Outcome:
    verdict = whittaker_dim(args["expression"], args["lambda"])
    result = {"verdict": verdict.value, "reason": verdict.reason}
    return Outcome(result, verdict.value, f"degenerate Whittaker dimension: {verdict.reason}")


def _igeq(args: Dict[str, Any]) -> Outcome:
    result = igeq(args["expression"])
    return Outcome(result, str(result),
                   "attached monomial: the characters of each factor, sorted by non-ascending real part")


def _jordan(args: Dict[str, Any]) -> Outcome:
    if "matrix" not in args:
        matrix = jordan_matrix(args["lambda"])
        return Outcome(matrix, render_text(matrix), "block-diagonal upper Jordan blocks of the given sizes")
    matrix = args["matrix"]
    partition = jordan_partition(matrix)
    result = {"partition": partition, "rank_sequence": rank_sequence(matrix)}
    return Outcome(result, str(partition),
                   "Jordan type from ranks of powers: column k has rank(A^(k-1)) - rank(A^k) boxes")


def _psi_lambda(args: Dict[str, Any]) -> Outcome:
    functional = psi_lambda(args["lambda"], args["n"])
    depth_value = depth_of_functional(functional)
    result = {"dual": functional.dual, "depth": depth_value}
    return Outcome(result, f"{render_text(functional)}\ndepth {depth_value}",
                   "character of the nilradical: Z -> tr(w0 J w0 Z) with J the Jordan matrix of the composition")


def _bigrade(args: Dict[str, Any]) -> Outcome:
    basis = build_bigrading(args["n"], args["d"], args["variant"], args["bracket"])
    report = check_condition(basis)
    xi = default_xi(basis)
    result = {
        "x": list(basis.x),
        "y": list(basis.y),
        "blocks": {weight: list(elements) for weight, elements in basis.blocks.items()},
        "condition": report,
        "stabilizer": {
            "monomials": list(stabilizer_basis(basis, xi)),
            "dim": stabilizer_subspace(basis, xi).dim,
        },
    }
    return Outcome(result, render_text(result), "bigrading premises checked clause by clause on the elementary basis")


def _require_positive_size(n: int) -> None:
    if n < 1:
        raise DomainError(f"--n must be at least 1, got {n}")


def _verify_linalg(args: Dict[str, Any]) -> Outcome:
    n = args["n"]
    _require_positive_size(n)
    rng = random.Random(args["seed"])
    ds = [args["d"]] if "d" in args else list(range(1, n + 1))
    reports = [verify_linalg_lemma(n, d, linalg_samples(n, d, rng, args["trials"])) for d in ds]
    result = reports[0] if len(reports) == 1 else {"reports": reports, "passed": all(r.passed for r in reports)}
    return Outcome(result, render_text(result),
                   "nilpotent perturbation lemma: (u+v)^d vanishes only for v = 0")


def _verify_filtrations(args: Dict[str, Any]) -> Outcome:
    report = verify_filtration_lemmas(args["n"], args["trials"], args["seed"])
    return Outcome(report, render_text(report),
                   "filtration lemmas: interpolation between comparable filtrations and the kernel/cokernel shift")


def _infchar(args: Dict[str, Any]) -> Outcome:
    result = infchar_transform(args["multiset"], args["order"])
    ordered = sorted(result, key=lambda multiset: [value.sort_key() for value in multiset.elements])
    return Outcome(result, "\n".join(str(multiset) for multiset in ordered),
                   "infinitesimal character of a derivative: delete k entries and add 1/2 to the rest")


def _validate(args: Dict[str, Any]) -> Outcome:
    report = validate(args["expression"])
    return Outcome(report, render_text(report), "parameter ranges of the unitary classification")


def _speh(args: Dict[str, Any]) -> Outcome:
    quotient, submodule = speh_presentations(args["m"], args["k"])
    result = {"quotient": quotient, "submodule": submodule}
    return Outcome(result, f"quotient of {quotient}\nsubmodule of {submodule}",
                   "degenerate principal series presentations of the Speh representation")


def _ad_identity(args: Dict[str, Any]) -> Outcome:
    report = ad_power_identity(args["order"])
    return Outcome(report, render_text(report),
                   "normal ordering in the enveloping algebra of span{I, X} with [I, X] = X")


def _verify_keylemma_premises(args: Dict[str, Any]) -> Outcome:
    n = args["n"]
    _require_positive_size(n)
    ds = [args["d"]] if "d" in args else list(range(1, n + 1))
    reports = [verify_keylemma_premises(n, d) for d in ds]
    result = reports[0] if len(reports) == 1 else {"reports": reports, "passed": all(r.passed for r in reports)}
    return Outcome(result, render_text(result),
                   "combinatorial premises of the PBW reduction: weights, character, stabilizer and factor counts")


def _catalogue(args: Dict[str, Any]) -> Outcome:
    entries = CATALOGUE if args["field"] == "R" else basic_catalogue(field=args["field"])
    result = [
        {"expression": name, "ap": associated_partition(expr), "depth": depth(expr)}
        for name, expr in entries.items()
    ]
    text = "\n".join(f"{item['expression']}\t{item['ap']}\t{item['depth']}" for item in result)
    return Outcome(result, text, "basic unitary representations of size at most 8")


HANDLERS: Dict[str, Callable[[Dict[str, Any]], Outcome]] = {
    "ap": _ap,
    "depth": _depth,
    "adduce": _adduce,
    "derive": _derive,
    "whittaker": _whittaker,
    "igeq": _igeq,
    "jordan": _jordan,
    "psi-lambda": _psi_lambda,
    "bigrade": _bigrade,
    "verify-linalg": _verify_linalg,
    "verify-filtrations": _verify_filtrations,
    "infchar": _infchar,
    "validate": _validate,
    "speh": _speh,
    "ad-identity": _ad_identity,
    "verify-keylemma-premises": _verify_keylemma_premises,
    "catalogue": _catalogue,
}


def execute(command: Command) -> Tuple[CommandResult, str]:
    """
    Run a command and return the structured result with its text rendering.

    Raises:
        DomainError: Propagated from the library
    """
    logger.info(f"Running {command.verb}")
    outcome = HANDLERS[command.verb](command.args)
    result = CommandResult(
        verb=command.verb,
        input=to_jsonable(command.inputs),
        result=to_jsonable(outcome.result),
        provenance=outcome.provenance,
    )
    return result, outcome.text


def run(command: Command) -> Tuple[int, str]:
    """
    Execute a parsed command.

    Returns:
        (exit status, rendered output); on a domain error the output is the
        one-line diagnostic
    """
    try:
        result, text = execute(command)
    except DomainError as e:
        logger.error(f"{command.verb} failed: {e}")
        return 3, f"error: {e}"
    if command.output_mode == "json":
        return 0, render_json(result)
    return 0, text


def main(argv: Optional[List[str]] = None) -> int:
    """Parse, run and print; returns the exit status."""
    try:
        command = parse_command(sys.argv[1:] if argv is None else argv)
    except ParseError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except DomainError as e:
        print(f"error: {e}", file=sys.stderr)
        return 3
    status, output = run(command)
    print(output, file=sys.stdout if status == 0 else sys.stderr)
    return status

"""Command-line front end.

Exit codes::

    0  success
    2  invalid input document or arguments
    3  vector is not effective
    4  the algorithms disagree (internal bug canary)
    5  enumeration cap exceeded
    6  no dimension formula for the requested case

Only results go to stdout; diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .cones import (
    IntersectionSpace,
    is_effective,
    negative_definite_sublattice,
    sorted_subsets,
    support,
    validate_space,
)
from .decomposition import (
    AlgorithmTrace,
    decompose_direct,
    decompose_oracle,
    decompose_zariski,
    effective_representative,
    is_numerically_equivalent,
    verify_decomposition,
)
from .errors import (
    CapExceeded,
    NotEffective,
    UniquenessViolation,
    UnsupportedCase,
    ZariskiError,
)
from .exact_linalg import RationalMatrix, leading_principal_minors, parse_rational
from .geometry import (
    BlowupDivisor,
    asymptotic_ratio_report,
    dim_plane_system,
    dim_two_point_system,
    five_case_decomposition,
    format_divisor,
    positive_self_intersection,
    two_point_blowup_space,
)

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_NOT_EFFECTIVE = 3
EXIT_DISAGREEMENT = 4
EXIT_CAP = 5
EXIT_UNSUPPORTED = 6

ALGORITHMS = ("direct", "zariski", "oracle", "all")
PREDICATES = ("effective", "nef", "quasi-effective", "numerically-equivalent", "negative-definite")


class InputError(ValueError):
    pass


class Disagreement(RuntimeError):
    pass


def _rationals(items) -> tuple[Fraction, ...]:
    if not isinstance(items, list):
        raise InputError(f"expected a list of rational strings, got {items!r}")
    out = []
    for x in items:
        if not isinstance(x, str):
            raise InputError(f"rationals must be strings, got {x!r}")
        out.append(parse_rational(x))
    return tuple(out)


def _strings(v: Sequence[Fraction]) -> list[str]:
    return [str(x) for x in v]


def parse_space_document(doc) -> IntersectionSpace:
    if not isinstance(doc, dict) or "matrix" not in doc:
        raise InputError("space document must be an object with a 'matrix' field")
    rows = doc["matrix"]
    if not isinstance(rows, list):
        raise InputError("'matrix' must be a list of rows")
    matrix = RationalMatrix.from_rows([_rationals(r) for r in rows], ncols=len(rows))
    basis = doc.get("basis")
    if basis is not None and not (isinstance(basis, list) and all(isinstance(s, str) for s in basis)):
        raise InputError("'basis' must be a list of strings")
    return validate_space(matrix, basis)


def space_document(space: IntersectionSpace) -> dict:
    return {"basis": list(space.labels), "matrix": [_strings(r) for r in space.matrix.rows]}


def parse_vector_text(text: str) -> tuple[Fraction, ...]:
    return tuple(parse_rational(tok) for tok in text.split())


@dataclass(frozen=True)
class TraceEntry:
    subspace: tuple[str, ...]
    increment: tuple[Fraction, ...]
    remainder: tuple[Fraction, ...]


@dataclass(frozen=True)
class ResultDocument:
    basis: tuple[str, ...]
    matrix: tuple[tuple[Fraction, ...], ...]
    vector: tuple[Fraction, ...]
    algorithm: str
    positive: tuple[Fraction, ...]
    negative: tuple[Fraction, ...]
    negative_support: tuple[str, ...]
    verification: tuple[tuple[str, bool], ...]
    trace: tuple[TraceEntry, ...] | None = None

    def to_dict(self) -> dict:
        doc = {
            "input": {
                "space": {"basis": list(self.basis), "matrix": [_strings(r) for r in self.matrix]},
                "vector": _strings(self.vector),
                "algorithm": self.algorithm,
            },
            "positive": _strings(self.positive),
            "negative": _strings(self.negative),
            "negative_support": list(self.negative_support),
            "verification": dict(self.verification),
        }
        if self.trace is not None:
            doc["trace"] = [
                {
                    "subspace": list(t.subspace),
                    "increment": _strings(t.increment),
                    "remainder": _strings(t.remainder),
                }
                for t in self.trace
            ]
        return doc

    @classmethod
    def from_dict(cls, doc: dict) -> ResultDocument:
        try:
            inp = doc["input"]
            trace = doc.get("trace")
            return cls(
                basis=tuple(inp["space"]["basis"]),
                matrix=tuple(_rationals(r) for r in inp["space"]["matrix"]),
                vector=_rationals(inp["vector"]),
                algorithm=inp["algorithm"],
                positive=_rationals(doc["positive"]),
                negative=_rationals(doc["negative"]),
                negative_support=tuple(doc["negative_support"]),
                verification=tuple((str(k), bool(v)) for k, v in doc["verification"].items()),
                trace=None
                if trace is None
                else tuple(
                    TraceEntry(tuple(t["subspace"]), _rationals(t["increment"]), _rationals(t["remainder"]))
                    for t in trace
                ),
            )
        except (KeyError, TypeError) as exc:
            raise InputError(f"malformed result document: {exc}") from exc

    def emit(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def parse(cls, text: str) -> ResultDocument:
        return cls.from_dict(json.loads(text))


def build_result(space, v, algorithm, dec, trace: AlgorithmTrace | None = None) -> ResultDocument:
    report = verify_decomposition(space, v, dec.positive, dec.negative)
    verification = tuple(report.as_dict().items()) + (("passed", report.passed),)
    return ResultDocument(
        basis=space.labels,
        matrix=space.matrix.rows,
        vector=tuple(v),
        algorithm=algorithm,
        positive=dec.positive,
        negative=dec.negative,
        negative_support=tuple(space.labels[i] for i in sorted(support(dec.negative))),
        verification=verification,
        trace=None
        if trace is None
        else tuple(
            TraceEntry(tuple(space.labels[i] for i in sorted(s.subspace)), s.increment, s.remainder)
            for s in trace
        ),
    )


def _load_space(path: str) -> IntersectionSpace:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read space file: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"space file is not valid JSON: {exc}") from exc
    return parse_space_document(doc)


def _load_vector(args, space: IntersectionSpace) -> tuple[Fraction, ...]:
    text = args.vector
    if getattr(args, "vector_file", None) is not None:
        if text is not None:
            raise InputError("give either --vector or --vector-file, not both")
        try:
            with open(args.vector_file, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise InputError(f"cannot read vector file: {exc}") from exc
    if text is None:
        raise InputError("a vector is required (--vector or --vector-file)")
    v = parse_vector_text(text)
    if len(v) != space.dimension:
        raise InputError(f"vector has {len(v)} entries, space has dimension {space.dimension}")
    return v


def _parse_subset(text: str | None, space: IntersectionSpace) -> list[int]:
    if text is None:
        return list(range(space.dimension))
    out = []
    for tok in (t.strip() for t in text.split(",")):
        if not tok:
            continue
        if tok in space.labels:
            out.append(space.index(tok))
        elif tok.isdigit() and 1 <= int(tok) <= space.dimension:
            out.append(int(tok) - 1)
        else:
            raise InputError(f"unknown basis label {tok!r}")
    return sorted(set(out))


def cmd_decompose(args) -> int:
    space = _load_space(args.space)
    v = _load_vector(args, space)
    if not is_effective(v):
        raise NotEffective(f"vector {' '.join(_strings(v))} is not effective")
    if args.trace and args.algorithm in ("direct", "oracle"):
        raise InputError("--trace is only available with --algorithm zariski or all")
    trace = None
    if args.algorithm == "direct":
        dec = decompose_direct(space, v)
    elif args.algorithm == "oracle":
        dec = decompose_oracle(space, v)
    elif args.algorithm == "zariski":
        dec, trace = decompose_zariski(space, v)
    else:
        dec, trace = decompose_zariski(space, v)
        others = {"direct": decompose_direct(space, v), "oracle": decompose_oracle(space, v)}
        for name, other in others.items():
            if other != dec:
                raise Disagreement(
                    f"{name} gives p={_strings(other.positive)}, zariski gives p={_strings(dec.positive)}"
                )
    doc = build_result(space, v, args.algorithm, dec, trace if args.trace else None)
    print(doc.emit())
    return EXIT_OK


def _check(space, args) -> tuple[bool, str]:
    labels = space.labels
    if args.predicate == "negative-definite":
        idx = _parse_subset(args.subset, space)
        minors = leading_principal_minors(space.restrict(idx))
        names = ",".join(labels[i] for i in idx) or "{}"
        for k, m in enumerate(minors, start=1):
            if m == 0 or (m > 0) != (k % 2 == 0):
                return False, f"span of {names}: leading {k}x{k} minor is {m}"
        return True, f"span of {names} is negative definite"

    v = _load_vector(args, space)
    if args.predicate == "effective":
        bad = [i for i, x in enumerate(v) if x < 0]
        if bad:
            return False, f"witness {labels[bad[0]]} (coefficient {v[bad[0]]})"
        return True, "all coefficients are nonnegative"
    if args.predicate == "nef":
        image = space.image(v)
        bad = [i for i, x in enumerate(image) if x < 0]
        if bad:
            return False, f"witness {labels[bad[0]]} (pairing {image[bad[0]]})"
        return True, "pairing with every basis element is nonnegative"
    if args.predicate == "quasi-effective":
        y = effective_representative(space, v)
        if y is None:
            return False, "not numerically equivalent to any effective vector"
        return True, f"numerically equivalent to effective {' '.join(_strings(y))}"
    if args.other is None:
        raise InputError("numerically-equivalent needs --other")
    other = parse_vector_text(args.other)
    if len(other) != space.dimension:
        raise InputError(f"--other has {len(other)} entries, space has dimension {space.dimension}")
    if is_numerically_equivalent(space, v, other):
        return True, "identical pairings with every basis element"
    a, b = space.image(v), space.image(other)
    i = next(i for i in range(space.dimension) if a[i] != b[i])
    return False, f"witness {labels[i]} (pairings {a[i]} and {b[i]})"


def cmd_check(args) -> int:
    space = _load_space(args.space)
    value, explanation = _check(space, args)
    print("true" if value else "false")
    print(explanation)
    return EXIT_OK


def cmd_lattice(args) -> int:
    space = _load_space(args.space)
    ceiling = _parse_subset(args.ceiling, space)
    for s in sorted_subsets(negative_definite_sublattice(space, ceiling)):
        print(",".join(space.labels[i] for i in s))
    return EXIT_OK


def _int_arg(text: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise InputError(f"expected an integer, got {text!r}") from None


def cmd_geom(args) -> int:
    if args.geom == "five-case":
        d = BlowupDivisor(*(parse_rational(x) for x in (args.a, args.b, args.c)))
        dec, tag = five_case_decomposition(d)
        labels = two_point_blowup_space().labels
        print(
            f"case {tag.value}: p = {format_divisor(dec.positive, labels)}, "
            f"n = {format_divisor(dec.negative, labels)}"
        )
        return EXIT_OK
    if args.geom == "asymptotic":
        d = BlowupDivisor(_int_arg(args.a), _int_arg(args.b), _int_arg(args.c))
        n_max = _int_arg(args.n_max)
        dim_two_point_system(d, 1)  # refuses cases without a formula
        target = positive_self_intersection(d)
        dims = lambda n: dim_two_point_system(d, n)  # noqa: E731
    else:
        deg = _int_arg(args.d)
        n_max = _int_arg(args.n_max)
        target = Fraction(deg * deg)
        dims = lambda n: dim_plane_system(deg, n)  # noqa: E731
    print(f"target {target}")
    print("n\tdim\tdeviation")
    for n, dev in asymptotic_ratio_report(dims, target, n_max):
        print(f"{n}\t{dims(n)}\t{dev}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="zariski", description="Exact Zariski decomposition.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decompose", help="decompose an effective vector")
    p.add_argument("--space", required=True)
    p.add_argument("--vector")
    p.add_argument("--vector-file")
    p.add_argument("--algorithm", choices=ALGORITHMS, default="direct")
    p.add_argument("--trace", action="store_true")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("check", help="evaluate a predicate")
    p.add_argument("--space", required=True)
    p.add_argument("--vector")
    p.add_argument("--vector-file")
    p.add_argument("--predicate", choices=PREDICATES, required=True)
    p.add_argument("--other")
    p.add_argument("--subset")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("lattice", help="list negative definite special subspaces")
    p.add_argument("--space", required=True)
    p.add_argument("--ceiling")
    p.set_defaults(func=cmd_lattice)

    p = sub.add_parser("geom", help="worked geometric examples")
    g = p.add_subparsers(dest="geom", required=True)
    q = g.add_parser("five-case")
    q.add_argument("a")
    q.add_argument("b")
    q.add_argument("c")
    q = g.add_parser("asymptotic")
    q.add_argument("a")
    q.add_argument("b")
    q.add_argument("c")
    q.add_argument("n_max")
    q = g.add_parser("plane")
    q.add_argument("d")
    q.add_argument("n_max")
    p.set_defaults(func=cmd_geom)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code else EXIT_OK
    try:
        return args.func(args)
    except NotEffective as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOT_EFFECTIVE
    except (Disagreement, UniquenessViolation) as exc:
        print(f"error: algorithms disagree: {exc}", file=sys.stderr)
        return EXIT_DISAGREEMENT
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except UnsupportedCase as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except (InputError, ZariskiError, ValueError, TypeError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())

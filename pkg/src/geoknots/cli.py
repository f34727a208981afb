"""Command-line front end.

Subcommands: validate, enumerate, certify, oracle-check, plot, verify.
Exit codes are a stable contract: 0 success, 1 invalid input or failed
certification, 2 I/O failure, 3 oracle disagreement or rejected
certificate.  Set GKF_THREADS to fan the window enumeration out across
worker threads; outputs are ordered by index either way.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from . import __version__
from .cusp import CuspData, InvalidCuspError, nearest_lift_gap
from .family import FamilyIndex
from .manifold_io import (
    CuspDataWarning,
    MalformedInputError,
    parse_cusp_file,
    verify_certificate,
    write_certificate,
    write_results,
)
from .simplicity import (
    IndexResult,
    ScanInsufficientError,
    VerdictKind,
    assess,
    certify_q0,
    oracle_lattice_box,
    oracle_sampled_torus,
)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_IO = 2
EXIT_DISAGREEMENT = 3


@dataclass
class RunConfig:
    """Resolved options for one invocation."""

    command: str
    input: str
    output: str | None = None
    p_min: int = 0
    p_max: int = 0
    q_min: int = 0
    q_max: int = 0
    tol: float = 1e-9
    epsilon_range: int = 4
    scan_limit: int = 500
    samples: int = 2000
    exact: bool = False
    indices: list[FamilyIndex] = field(default_factory=list)

    def __post_init__(self) -> None:
        if self.p_min > self.p_max or self.q_min > self.q_max:
            raise ValueError("ranges must satisfy MIN <= MAX")
        if not 0.0 < self.tol < 0.1:
            raise ValueError("tol must be positive and well below one lattice unit")
        self.indices = [
            FamilyIndex(p, q)
            for p in range(self.p_min, self.p_max + 1)
            for q in range(self.q_min, self.q_max + 1)
        ]


class _Parser(argparse.ArgumentParser):
    # Flag mistakes are input errors: keep the exit-code contract.
    def error(self, message: str):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_INPUT)


def _parse_range(text: str) -> tuple[int, int]:
    try:
        lo, hi = text.split(":")
        return int(lo), int(hi)
    except ValueError as exc:
        raise ValueError(f"range must be MIN:MAX, got {text!r}") from exc


def _join_range_flags(argv: list[str]) -> list[str]:
    # Fold "--p-range -10:10" into "--p-range=-10:10" so argparse does not
    # mistake a negative lower bound for an option.
    out: list[str] = []
    expects_value = False
    for arg in argv:
        if expects_value:
            out[-1] = f"{out[-1]}={arg}"
            expects_value = False
        elif arg in ("--p-range", "--q-range"):
            out.append(arg)
            expects_value = True
        else:
            out.append(arg)
    return out


def _worker_count() -> int:
    raw = os.environ.get("GKF_THREADS", "")
    try:
        return max(1, int(raw)) if raw else 1
    except ValueError:
        return 1


def _assess_window(cusp: CuspData, config: RunConfig, epsilon: float) -> list[IndexResult]:
    def one(idx: FamilyIndex) -> IndexResult:
        return assess(cusp, idx, epsilon=epsilon, tol=config.tol, exact=config.exact)

    workers = _worker_count()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(one, config.indices))
    return [one(idx) for idx in config.indices]


def _verdict_summary(results: list[IndexResult], tol: float) -> str:
    counts = {kind: 0 for kind in VerdictKind}
    band = 0
    for result in results:
        counts[result.verdict.kind] += 1
        if result.verdict.in_warning_band(tol):
            band += 1
    parts = [f"{kind.value}={counts[kind]}" for kind in VerdictKind]
    return " ".join(parts) + f" warning_band={band}"


def _print_band_warnings(results: list[IndexResult], tol: float) -> None:
    for result in results:
        if result.verdict.in_warning_band(tol):
            p, q = result.record.index
            print(
                f"warning: index ({p},{q}) lattice residual "
                f"{result.verdict.near_residual:.3e} within 10x of tol {tol:.1e}"
            )


def cmd_validate(config: RunConfig) -> int:
    cusp = parse_cusp_file(config.input)
    epsilon = nearest_lift_gap(cusp, config.epsilon_range)
    print(f"OK {cusp.name}")
    print(f"  t_alpha = {cusp.t_alpha}  t_beta = {cusp.t_beta}")
    print(f"  offsets = ({cusp.x0}, {cusp.y0})  c = {cusp.c}")
    print(f"  b00 = {cusp.b00}")
    print(f"  epsilon(range={config.epsilon_range}) = {epsilon!r}")
    return EXIT_OK


def cmd_enumerate(config: RunConfig) -> int:
    cusp = parse_cusp_file(config.input)
    epsilon = nearest_lift_gap(cusp, config.epsilon_range)
    results = _assess_window(cusp, config, epsilon)
    write_results(results, config.output)
    print(f"wrote {len(results)} rows to {config.output}")
    print(_verdict_summary(results, config.tol))
    _print_band_warnings(results, config.tol)
    return EXIT_OK


def cmd_certify(config: RunConfig) -> int:
    cusp = parse_cusp_file(config.input)
    epsilon = nearest_lift_gap(cusp, config.epsilon_range)
    cert = certify_q0(
        cusp,
        scan_limit=config.scan_limit,
        epsilon=epsilon,
        tol=config.tol,
        epsilon_range=config.epsilon_range,
        exact=config.exact,
    )
    write_certificate(cert, config.output, exact=config.exact)
    print(f"wrote certificate to {config.output}")
    print(
        f"subfamily along {cert.used_coordinate}: delta={cert.delta!r} "
        f"P={cert.P} scan_limit={cert.scan_limit}"
    )
    return EXIT_OK


def cmd_oracle_check(config: RunConfig) -> int:
    cusp = parse_cusp_file(config.input)
    epsilon = nearest_lift_gap(cusp, config.epsilon_range)
    results = _assess_window(cusp, config, epsilon)
    lines: list[str] = []
    disagreements = 0
    in_band = 0
    for result in results:
        record = result.record
        if not record.has_crossings:
            continue
        v = result.vector
        fast = result.verdict.witness
        box = math.ceil(abs(v.x)) + math.ceil(abs(v.y))
        brute = oracle_lattice_box(v, box, config.tol)
        torus = oracle_sampled_torus(record, cusp, config.samples, config.tol)
        problems = []
        if (fast is None) != (brute is None):
            problems.append(
                f"search={'hit' if fast else 'none'} box={'hit' if brute else 'none'}"
            )
        if torus and fast is None:
            problems.append("torus=hit search=none")
        sampling_dense = config.samples >= 2.0 * math.hypot(v.x, v.y)
        if fast is not None and sampling_dense and not torus:
            problems.append("search=hit torus=none")
        if problems:
            p, q = record.index
            detail = (
                f"index ({p},{q}) v=({v.x!r},{v.y!r}) "
                f"fast={fast} box={brute} torus={torus}: " + "; ".join(problems)
            )
            if result.verdict.in_warning_band(config.tol):
                in_band += 1
                lines.append(f"in-band: {detail}")
            else:
                disagreements += 1
                lines.append(f"DISAGREEMENT: {detail}")
    lines.append(
        f"oracle check over {len(results)} indices: "
        f"{disagreements} disagreements, {in_band} within warning band"
    )
    report = "\n".join(lines) + "\n"
    print(report, end="")
    if config.output:
        with open(config.output, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(report)
    return EXIT_DISAGREEMENT if disagreements else EXIT_OK


def cmd_plot(config: RunConfig) -> int:
    from .plotting import render_window  # matplotlib import deferred

    cusp = parse_cusp_file(config.input)
    epsilon = nearest_lift_gap(cusp, config.epsilon_range)
    results = _assess_window(cusp, config, epsilon)
    render_window(cusp, results, config.output)
    drawn = sum(1 for r in results if r.record.has_crossings)
    print(f"wrote {config.output} ({drawn} segments, {len(results)} indices)")
    return EXIT_OK


def cmd_verify(config: RunConfig) -> int:
    try:
        issues = verify_certificate(config.input)
    except ScanInsufficientError as exc:
        issues = [f"recomputation failed: {exc}"]
    if issues:
        for issue in issues:
            print(f"REJECT: {issue}")
        return EXIT_DISAGREEMENT
    print("certificate accepted")
    return EXIT_OK


_COMMANDS = {
    "validate": cmd_validate,
    "enumerate": cmd_enumerate,
    "certify": cmd_certify,
    "oracle-check": cmd_oracle_check,
    "plot": cmd_plot,
    "verify": cmd_verify,
}


def _build_parser() -> _Parser:
    parser = _Parser(prog="geoknots", description=__doc__)
    parser.add_argument("--version", action="version", version=f"geoknots {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, *, out: bool, window: bool, helptext: str):
        cmd = sub.add_parser(name, help=helptext)
        cmd.add_argument("--input", required=True, help="input file path")
        if out:
            cmd.add_argument("--out", required=name != "oracle-check", help="output file path")
        if window:
            cmd.add_argument("--p-range", default="0:0", metavar="MIN:MAX")
            cmd.add_argument("--q-range", default="0:0", metavar="MIN:MAX")
        cmd.add_argument("--tol", type=float, default=1e-9)
        cmd.add_argument("--epsilon-range", type=int, default=4)
        cmd.add_argument("--scan-limit", type=int, default=500)
        cmd.add_argument("--samples", type=int, default=2000)
        cmd.add_argument("--exact", action="store_true", help="exact-rational lattice test")
        return cmd

    add("validate", out=False, window=False, helptext="parse and validate a cusp record")
    add("enumerate", out=True, window=True, helptext="verdict table over an index window")
    add("certify", out=True, window=False, helptext="certify the one-parameter subfamily")
    add("oracle-check", out=True, window=True, helptext="cross-validate the lattice test")
    add("plot", out=True, window=True, helptext="render the window as an SVG figure")
    add("verify", out=False, window=False, helptext="recheck a written certificate")
    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    p_min = p_max = q_min = q_max = 0
    if hasattr(args, "p_range"):
        p_min, p_max = _parse_range(args.p_range)
        q_min, q_max = _parse_range(args.q_range)
    return RunConfig(
        command=args.command,
        input=args.input,
        output=getattr(args, "out", None),
        p_min=p_min, p_max=p_max, q_min=q_min, q_max=q_max,
        tol=args.tol,
        epsilon_range=args.epsilon_range,
        scan_limit=args.scan_limit,
        samples=args.samples,
        exact=args.exact,
    )


def main(argv: list[str] | None = None) -> int:
    warnings.simplefilter("always", CuspDataWarning)
    parser = _build_parser()
    if argv is None:
        argv = sys.argv[1:]
    try:
        args = parser.parse_args(_join_range_flags(list(argv)))
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        config = _config_from_args(args)
        return _COMMANDS[args.command](config)
    except (MalformedInputError, InvalidCuspError, ScanInsufficientError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())

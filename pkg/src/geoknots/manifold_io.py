"""Input records, result tables, and certificates on disk.

The input is a flat JSON object carrying exactly the five geometric
quantities the construction needs.  Outputs are a CSV table (one row per
family index) and a line-based certificate that embeds its own inputs so a
verifier can recompute every listed check.  All numbers are written with 17
significant digits so parsing them back is lossless, and nothing
time-dependent is ever emitted: equal inputs give byte-equal files.
"""

from __future__ import annotations

import csv
import json
import math
import warnings
from dataclasses import dataclass

from . import __version__
from .cusp import CuspData, nearest_lift_gap
from .simplicity import (
    CertificateQ0,
    IndexCheck,
    IndexResult,
    LatticeWitness,
    SimplicityVerdict,
    VerdictKind,
    certify_q0,
)

__all__ = [
    "MalformedInputError",
    "CuspDataWarning",
    "parse_cusp_text",
    "parse_cusp_file",
    "write_results",
    "read_results",
    "write_certificate",
    "parse_certificate",
    "verify_certificate",
    "RESULT_COLUMNS",
]


class MalformedInputError(ValueError):
    """Input text that is not a syntactically valid cusp record."""


class CuspDataWarning(UserWarning):
    """Recoverable input irregularities (offsets reduced mod 1, unknown keys)."""


_REQUIRED_KEYS = ("name", "t_alpha", "t_beta", "x0", "y0", "c")


def _fmt(x: float) -> str:
    return format(x, ".17g")


def _as_complex(value: object, key: str) -> complex:
    if (
        not isinstance(value, list)
        or len(value) != 2
        or not all(isinstance(part, (int, float)) and not isinstance(part, bool) for part in value)
    ):
        raise MalformedInputError(f"field {key!r} must be a [re, im] pair of numbers")
    z = complex(float(value[0]), float(value[1]))
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise MalformedInputError(f"field {key!r} must be finite")
    return z


def _as_real(value: object, key: str) -> float:
    if not isinstance(value, (int, float)) or isinstance(value, bool):
        raise MalformedInputError(f"field {key!r} must be a number")
    x = float(value)
    if not math.isfinite(x):
        raise MalformedInputError(f"field {key!r} must be finite")
    return x


def parse_cusp_text(text: str) -> CuspData:
    """Parse and validate one cusp record.

    Raises MalformedInputError for syntax or shape problems and
    InvalidCuspError (with a reason code) for records that are well-formed
    but geometrically inadmissible.  Offsets outside [0, 1) are reduced mod
    1 with a CuspDataWarning.
    """
    def _no_constants(name: str):
        raise MalformedInputError(f"non-finite constant {name!r} not allowed")

    try:
        raw = json.loads(text, parse_constant=_no_constants)
    except json.JSONDecodeError as exc:
        raise MalformedInputError(f"not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise MalformedInputError("top level must be an object")
    missing = [k for k in _REQUIRED_KEYS if k not in raw]
    if missing:
        raise MalformedInputError(f"missing fields: {', '.join(missing)}")
    unknown = sorted(set(raw) - set(_REQUIRED_KEYS) - {"comment"})
    if unknown:
        warnings.warn(f"ignoring unknown fields: {', '.join(unknown)}", CuspDataWarning)
    name = raw["name"]
    if not isinstance(name, str) or not name or any(ch in name for ch in "\r\n"):
        raise MalformedInputError("field 'name' must be a nonempty single-line string")
    t_alpha = _as_complex(raw["t_alpha"], "t_alpha")
    t_beta = _as_complex(raw["t_beta"], "t_beta")
    c = _as_complex(raw["c"], "c")
    x0 = _as_real(raw["x0"], "x0")
    y0 = _as_real(raw["y0"], "y0")
    x0r, y0r = x0 - math.floor(x0), y0 - math.floor(y0)
    if (x0r, y0r) != (x0, y0):
        warnings.warn(
            f"offsets ({_fmt(x0)}, {_fmt(y0)}) reduced mod 1 to ({_fmt(x0r)}, {_fmt(y0r)})",
            CuspDataWarning,
        )
    return CuspData(name=name, t_alpha=t_alpha, t_beta=t_beta, x0=x0r, y0=y0r, c=c)


def parse_cusp_file(path: str) -> CuspData:
    with open(path, encoding="utf-8") as handle:
        return parse_cusp_text(handle.read())


RESULT_COLUMNS = [
    "p", "q",
    "trace_re", "trace_im",
    "length_re", "length_im",
    "radius",
    "vx", "vy",
    "verdict",
    "witness_m", "witness_n", "witness_t",
    "short_dist", "epsilon",
]


def result_row(result: IndexResult) -> dict[str, str]:
    """Flatten one assessment into CSV cells; absent quantities are empty."""
    record = result.record
    verdict = result.verdict
    row = dict.fromkeys(RESULT_COLUMNS, "")
    row["p"] = str(record.index.p)
    row["q"] = str(record.index.q)
    row["trace_re"] = _fmt(record.trace.real)
    row["trace_im"] = _fmt(record.trace.imag)
    if record.length is not None:
        row["length_re"] = _fmt(record.length.real)
        row["length_im"] = _fmt(record.length.imag)
    if record.axis is not None:
        row["radius"] = _fmt(record.axis.radius)
    if result.vector is not None:
        row["vx"] = _fmt(result.vector.x)
        row["vy"] = _fmt(result.vector.y)
    row["verdict"] = verdict.label
    if verdict.witness is not None:
        row["witness_m"] = str(verdict.witness.m)
        row["witness_n"] = str(verdict.witness.n)
        row["witness_t"] = _fmt(verdict.witness.t)
    if verdict.short_distance is not None:
        row["short_dist"] = _fmt(verdict.short_distance)
    if verdict.epsilon is not None:
        row["epsilon"] = _fmt(verdict.epsilon)
    return row


def write_results(results: list[IndexResult], path: str) -> None:
    """Write the result table, one row per index, ordered by (p, q)."""
    if not results:
        raise ValueError("result set is empty")
    ordered = sorted(results, key=lambda r: (r.record.index.p, r.record.index.q))
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.DictWriter(handle, fieldnames=RESULT_COLUMNS, lineterminator="\n")
        writer.writeheader()
        for result in ordered:
            writer.writerow(result_row(result))


def read_results(path: str) -> list[dict[str, str]]:
    """Read a result table back as raw string cells."""
    with open(path, encoding="utf-8", newline="") as handle:
        return list(csv.DictReader(handle))


_CHECK_PLACEHOLDER = "-"


def _check_line(check: IndexCheck) -> str:
    verdict = check.verdict
    cells = [
        str(check.index),
        verdict.label,
        _fmt(check.coord_c) if check.coord_c is not None else _CHECK_PLACEHOLDER,
        _fmt(check.coord_d) if check.coord_d is not None else _CHECK_PLACEHOLDER,
        _fmt(verdict.short_distance)
        if verdict.short_distance is not None
        else _CHECK_PLACEHOLDER,
    ]
    if verdict.witness is not None:
        cells += [
            str(verdict.witness.m),
            str(verdict.witness.n),
            _fmt(verdict.witness.t),
        ]
    return "check " + " ".join(cells)


def write_certificate(cert: CertificateQ0, path: str, exact: bool = False) -> None:
    """Write the certificate: inputs, derived bounds, and per-index checks."""
    cusp = cert.cusp
    lines = [
        "certificate-version = 1",
        f"tool = geoknots {__version__}",
        "claim = every scanned index with |index| > P has verdict Simple; "
        "the tail bound extends the pattern beyond the scan window",
        f"name = {cusp.name}",
        f"t_alpha = {_fmt(cusp.t_alpha.real)} {_fmt(cusp.t_alpha.imag)}",
        f"t_beta = {_fmt(cusp.t_beta.real)} {_fmt(cusp.t_beta.imag)}",
        f"x0 = {_fmt(cusp.x0)}",
        f"y0 = {_fmt(cusp.y0)}",
        f"c = {_fmt(cusp.c.real)} {_fmt(cusp.c.imag)}",
        f"used_coordinate = {cert.used_coordinate}",
        f"y0_effective = {_fmt(cert.y0_effective)}",
        f"delta = {_fmt(cert.delta)}",
        f"epsilon = {_fmt(cert.epsilon)}",
        f"epsilon_range = {cert.epsilon_range}",
        f"tol = {_fmt(cert.tol)}",
        f"exact = {str(exact).lower()}",
        f"scan_limit = {cert.scan_limit}",
        f"P = {cert.P}",
        f"checks = {len(cert.checked_indices)}",
    ]
    lines += [_check_line(check) for check in cert.checked_indices]
    lines.append(f"tail_bound_note = {cert.tail_bound_note}")
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write("\n".join(lines) + "\n")


@dataclass(frozen=True)
class ParsedCertificate:
    cusp: CuspData
    used_coordinate: str
    y0_effective: float
    delta: float
    epsilon: float
    epsilon_range: int
    tol: float
    exact: bool
    scan_limit: int
    P: int
    checks: tuple[IndexCheck, ...]
    tail_bound_note: str


def _parse_check(line: str) -> IndexCheck:
    cells = line.split()[1:]
    if len(cells) not in (5, 8):
        raise MalformedInputError(f"bad check line: {line!r}")
    index = int(cells[0])
    label = cells[1]
    try:
        kind = VerdictKind(label)
    except ValueError as exc:
        raise MalformedInputError(f"unknown verdict {label!r}") from exc
    def opt(cell: str) -> float | None:
        return None if cell == _CHECK_PLACEHOLDER else float(cell)

    witness = None
    if len(cells) == 8:
        witness = LatticeWitness(int(cells[5]), int(cells[6]), float(cells[7]))
    verdict = SimplicityVerdict(kind, witness=witness, short_distance=opt(cells[4]))
    return IndexCheck(index, verdict, opt(cells[2]), opt(cells[3]))


def parse_certificate(path: str) -> ParsedCertificate:
    """Read a certificate back into structured form."""
    fields: dict[str, str] = {}
    checks: list[IndexCheck] = []
    with open(path, encoding="utf-8") as handle:
        for line in handle:
            line = line.rstrip("\n")
            if not line:
                continue
            if line.startswith("check "):
                checks.append(_parse_check(line))
                continue
            if " = " not in line:
                raise MalformedInputError(f"unparseable certificate line: {line!r}")
            key, value = line.split(" = ", 1)
            fields[key] = value
    try:
        cusp = CuspData(
            name=fields["name"],
            t_alpha=complex(*map(float, fields["t_alpha"].split())),
            t_beta=complex(*map(float, fields["t_beta"].split())),
            x0=float(fields["x0"]),
            y0=float(fields["y0"]),
            c=complex(*map(float, fields["c"].split())),
        )
        return ParsedCertificate(
            cusp=cusp,
            used_coordinate=fields["used_coordinate"],
            y0_effective=float(fields["y0_effective"]),
            delta=float(fields["delta"]),
            epsilon=float(fields["epsilon"]),
            epsilon_range=int(fields["epsilon_range"]),
            tol=float(fields["tol"]),
            exact=fields["exact"] == "true",
            scan_limit=int(fields["scan_limit"]),
            P=int(fields["P"]),
            checks=tuple(checks),
            tail_bound_note=fields["tail_bound_note"],
        )
    except KeyError as exc:
        raise MalformedInputError(f"certificate missing field {exc}") from exc
    except ValueError as exc:
        raise MalformedInputError(f"certificate field unparseable: {exc}") from exc


def verify_certificate(path: str) -> list[str]:
    """Recompute every certificate claim; return the list of discrepancies.

    An empty list means the certificate is accepted.  The embedded inputs
    are re-run through the same pipeline and each header quantity, index
    verdict, and witness is compared against the file.
    """
    parsed = parse_certificate(path)
    issues: list[str] = []
    lift_gap = nearest_lift_gap(parsed.cusp, parsed.epsilon_range)
    if not math.isclose(lift_gap, parsed.epsilon, rel_tol=1e-12, abs_tol=1e-12):
        issues.append(
            f"epsilon: recomputed {_fmt(lift_gap)} at range {parsed.epsilon_range}, "
            f"stated {_fmt(parsed.epsilon)}"
        )
    recomputed = certify_q0(
        parsed.cusp,
        scan_limit=parsed.scan_limit,
        epsilon=parsed.epsilon,
        tol=parsed.tol,
        epsilon_range=parsed.epsilon_range,
        exact=parsed.exact,
    )
    if recomputed.used_coordinate != parsed.used_coordinate:
        issues.append(
            f"used_coordinate: recomputed {recomputed.used_coordinate}, "
            f"stated {parsed.used_coordinate}"
        )
    for label, stated, wanted in [
        ("y0_effective", parsed.y0_effective, recomputed.y0_effective),
        ("delta", parsed.delta, recomputed.delta),
    ]:
        if not math.isclose(stated, wanted, rel_tol=1e-12, abs_tol=1e-12):
            issues.append(f"{label}: recomputed {_fmt(wanted)}, stated {_fmt(stated)}")
    if recomputed.P != parsed.P:
        issues.append(f"P: recomputed {recomputed.P}, stated {parsed.P}")
    stated_by_index = {check.index: check for check in parsed.checks}
    if len(stated_by_index) != len(recomputed.checked_indices):
        issues.append(
            f"checks: {len(recomputed.checked_indices)} recomputed, "
            f"{len(parsed.checks)} stated"
        )
    for check in recomputed.checked_indices:
        stated = stated_by_index.get(check.index)
        if stated is None:
            issues.append(f"index {check.index}: missing from certificate")
            continue
        issues.extend(_compare_check(check, stated))
    for check in parsed.checks:
        if abs(check.index) > parsed.P and check.verdict.kind is not VerdictKind.SIMPLE:
            issues.append(
                f"index {check.index}: non-Simple verdict beyond stated P={parsed.P}"
            )
    return issues


def _compare_check(wanted: IndexCheck, stated: IndexCheck) -> list[str]:
    issues = []
    prefix = f"index {wanted.index}"
    if stated.verdict.kind is not wanted.verdict.kind:
        issues.append(
            f"{prefix}: verdict recomputed {wanted.verdict.label}, "
            f"stated {stated.verdict.label}"
        )
        return issues
    pairs = [
        ("coord_c", wanted.coord_c, stated.coord_c),
        ("coord_d", wanted.coord_d, stated.coord_d),
        ("short_dist", wanted.verdict.short_distance, stated.verdict.short_distance),
    ]
    wanted_w, stated_w = wanted.verdict.witness, stated.verdict.witness
    if (wanted_w is None) != (stated_w is None):
        issues.append(f"{prefix}: witness presence mismatch")
    elif wanted_w is not None:
        if (wanted_w.m, wanted_w.n) != (stated_w.m, stated_w.n):
            issues.append(
                f"{prefix}: witness recomputed ({wanted_w.m},{wanted_w.n}), "
                f"stated ({stated_w.m},{stated_w.n})"
            )
        pairs.append(("witness_t", wanted_w.t, stated_w.t))
    for label, want, got in pairs:
        if (want is None) != (got is None):
            issues.append(f"{prefix}: {label} presence mismatch")
        elif want is not None and not math.isclose(want, got, rel_tol=1e-9, abs_tol=1e-9):
            issues.append(f"{prefix}: {label} recomputed {_fmt(want)}, stated {_fmt(got)}")
    return issues

"""Render an enumeration window as a figure on the boundary plane.

Shows the tangency-lift lattice on the height-1 horosphere, the projected
long-arc segments colored by verdict, and the witness lattice point for any
nonsimple member.  Output is deterministic: a fixed hash salt and no date
metadata, so equal inputs produce byte-equal SVG files.
"""

from __future__ import annotations

import matplotlib
from matplotlib.backends.backend_svg import FigureCanvasSVG
from matplotlib.figure import Figure

from .cusp import CuspData, LiftKind, LiftLabel, lift_position
from .simplicity import IndexResult, VerdictKind

HASH_SALT = "geoknots"

VERDICT_COLORS = {
    VerdictKind.SIMPLE: "#2a9d3a",
    VerdictKind.LONG_ARC_NONSIMPLE: "#d62728",
    VerdictKind.SHORT_ARC_UNVERIFIED: "#e8a000",
}


def render_window(cusp: CuspData, results: list[IndexResult], path: str) -> None:
    """Draw lattice points and projected segments for the given results."""
    results = sorted(results, key=lambda r: (r.record.index.p, r.record.index.q))
    fig = Figure(figsize=(8.0, 6.0))
    FigureCanvasSVG(fig)
    ax = fig.add_subplot(111)
    ax.set_aspect("equal")
    ax.set_xlabel("Re")
    ax.set_ylabel("Im")
    ax.set_title(f"{cusp.name}: projected long arcs on the height-1 horosphere")

    p_values = [r.record.index.p for r in results]
    q_values = [r.record.index.q for r in results]
    p_lo, p_hi = min(p_values) - 1, max(p_values) + 1
    q_lo, q_hi = min(q_values) - 1, max(q_values) + 1
    for kind, marker, fill, gid in (
        (LiftKind.A, "o", "#404040", "lattice-a"),
        (LiftKind.B, "o", "none", "lattice-b"),
    ):
        xs, ys = [], []
        for p in range(p_lo, p_hi + 1):
            for q in range(q_lo, q_hi + 1):
                z = lift_position(LiftLabel(p, q, kind), cusp)
                xs.append(z.real)
                ys.append(z.imag)
        ax.plot(
            xs, ys, linestyle="none", marker=marker, markersize=4,
            markerfacecolor=fill, markeredgecolor="#404040", gid=gid,
        )

    for result in results:
        record = result.record
        if not record.has_crossings:
            continue
        color = VERDICT_COLORS[result.verdict.kind]
        p, q = record.index
        ax.plot(
            [record.c_pq.real, record.d_pq.real],
            [record.c_pq.imag, record.d_pq.imag],
            color=color, linewidth=1.4, gid=f"segment-p{p}-q{q}",
        )
        witness = result.verdict.witness
        if witness is not None:
            z = witness.m * cusp.t_alpha + witness.n * cusp.t_beta
            ax.plot(
                [z.real], [z.imag], linestyle="none", marker="*", markersize=12,
                markerfacecolor=color, markeredgecolor="#000000",
                gid=f"witness-p{p}-q{q}",
            )

    with matplotlib.rc_context({"svg.hashsalt": HASH_SALT}):
        fig.savefig(path, format="svg", metadata={"Date": None})

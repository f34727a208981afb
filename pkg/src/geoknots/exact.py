"""Exact-rational decision of the long-arc lattice test.

Floats are exact binary rationals, so all cusp inputs convert to Fractions
losslessly.  The crossing points themselves are irrational, but the only
facts the lattice test needs reduce to rational arithmetic: the translation
vector v is a positive real multiple of sqrt(W) for W = b^2 - 4/c^2, hence

  * (m, n) is collinear with v  iff  W * conj(tau^2) is real and positive,
    where tau = m*t_alpha + n*t_beta, and
  * the hit parameter satisfies t <= 1  iff  (|tau|^2 + 4)^2 <= |W|^2,

both decidable in Fractions.  A witness confirmed here has residual exactly
zero; the tolerance plays no role.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import NamedTuple

from .cusp import CuspData, LatticeCoords
from .family import (
    AxisTooLowError,
    EllipticDegenerateError,
    FamilyIndex,
    ParabolicDegenerateError,
)
from .simplicity import LatticeWitness


class QC(NamedTuple):
    """Complex number with exact rational components."""

    re: Fraction
    im: Fraction


def qc(z: complex) -> QC:
    return QC(Fraction(z.real), Fraction(z.imag))


def qc_add(a: QC, b: QC) -> QC:
    return QC(a.re + b.re, a.im + b.im)


def qc_sub(a: QC, b: QC) -> QC:
    return QC(a.re - b.re, a.im - b.im)


def qc_mul(a: QC, b: QC) -> QC:
    return QC(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re)


def qc_scale(s: Fraction, a: QC) -> QC:
    return QC(s * a.re, s * a.im)


def qc_conj(a: QC) -> QC:
    return QC(a.re, -a.im)


def qc_abs2(a: QC) -> Fraction:
    return a.re * a.re + a.im * a.im


def qc_div(a: QC, b: QC) -> QC:
    d = qc_abs2(b)
    num = qc_mul(a, qc_conj(b))
    return QC(num.re / d, num.im / d)


def exact_long_arc_witness(
    cusp: CuspData, idx: FamilyIndex, v: LatticeCoords
) -> LatticeWitness | None:
    """Search for a lattice witness with exact arithmetic.

    ``v`` is the float translation vector; it only supplies the candidate
    range and the sign of the direction, never the decision.  Candidates are
    scanned in increasing |m| + |n| so the reported witness is the nearest
    lattice point along the segment.
    """
    t_alpha = qc(cusp.t_alpha)
    t_beta = qc(cusp.t_beta)
    c = qc(cusp.c)
    b = qc_add(
        qc_scale(Fraction(idx.p) + Fraction(cusp.x0), t_alpha),
        qc_scale(Fraction(idx.q) + Fraction(cusp.y0), t_beta),
    )
    trace = qc_mul(c, b)
    if trace.im == 0:
        tr2 = trace.re * trace.re
        if tr2 == 4:
            raise ParabolicDegenerateError(f"exact trace {trace} at +-2")
        if tr2 < 4:
            raise EllipticDegenerateError(f"exact trace {trace} is elliptic")
    w_big = qc_sub(qc_mul(b, b), qc_div(QC(Fraction(4), Fraction(0)), qc_mul(c, c)))
    abs_w2 = qc_abs2(w_big)
    if abs_w2 <= 16:
        raise AxisTooLowError(f"exact |W| <= 4 at index {idx}")

    m_max = math.ceil(abs(v.x)) + 1
    n_max = math.ceil(abs(v.y)) + 1
    candidates = sorted(
        (
            (m, n)
            for m in range(-m_max, m_max + 1)
            for n in range(-n_max, n_max + 1)
            if (m, n) != (0, 0)
        ),
        key=lambda mn: (abs(mn[0]) + abs(mn[1]), mn),
    )
    for m, n in candidates:
        if m * v.x + n * v.y <= 0.0:
            continue  # wrong direction; the mirrored candidate covers it
        tau = qc_add(qc_scale(Fraction(m), t_alpha), qc_scale(Fraction(n), t_beta))
        aligned = qc_mul(w_big, qc_conj(qc_mul(tau, tau)))
        if aligned.im != 0 or aligned.re <= 0:
            continue
        abs_tau2 = qc_abs2(tau)
        if (abs_tau2 + 4) ** 2 > abs_w2:
            continue  # the hit lies beyond the far endpoint
        t = math.sqrt(float(abs_tau2) / (math.sqrt(float(abs_w2)) - 4.0))
        return LatticeWitness(m, n, t)
    return None

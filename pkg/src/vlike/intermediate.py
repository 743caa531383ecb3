"""Infeasibility certificate against degree-one graded modules.

A hypothetical graded module with one-dimensional homogeneous pieces and a
nondegenerate step action ``D(b1) v_i = a v_{i+1}``, ``D(-b1) v_i = a v_{i-1}``
forces the structure coefficients ``f(l, k, i)`` of the remaining generators
into two first-order difference identities, whose combination is the
three-term recurrence

    a**2 f(l,k,i+1) - (2 a**2 + k**2) f(l,k,i) + a**2 f(l,k,i-1) = 0.

Its characteristic roots are a unit ``x`` and ``1/x``; everything needed from
them is carried by the rational trace sequence ``t_l = x**l + x**(-l)`` with
``t_0 = 2``, ``t_1 = (2 a**2 + k**2)/a**2`` and ``t_(l+1) = t_1 t_l - t_(l-1)``.
The final compatibility constraint collapses to ``l**2 k**2 = C (t_l - 2)``
for one unknown constant ``C``; fixing ``C`` from ``l = 1`` leaves an exact
nonzero residue at ``l = 2``, which is the certificate.  No radicals appear
anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional

from .errors import PreconditionError
from .scalars import scalar_str


@dataclass(frozen=True)
class StepCandidate:
    """Parameters of a hypothetical degree-one module probe."""

    a: Fraction
    eps: int
    k: int

    def __post_init__(self):
        if self.a == 0:
            raise PreconditionError("a nonzero",
                                    "the step action must be nondegenerate")
        if self.eps not in (1, -1):
            raise PreconditionError("eps in {+1, -1}")
        if self.k < 1:
            raise PreconditionError("k >= 1")


def stencil_step(a: Fraction, k: int, f_prev: Fraction, f_cur: Fraction) -> Fraction:
    """Next value of the three-term recurrence in the grading index.

    Formally defined for ``k = 0`` as well (it degenerates to a second
    difference); the identity checks below exclude that case.
    """
    a = Fraction(a)
    if a == 0:
        raise PreconditionError("a nonzero")
    return ((2 * a * a + k * k) * Fraction(f_cur) - a * a * Fraction(f_prev)) / (a * a)


def check_difference_identities(a: Fraction, eps: int, k: int,
                                table: Mapping[tuple[int, int], Fraction]) -> bool:
    """Exact check of the two first-order identities on a rectangular table.

    ``table`` maps ``(l, i)`` to ``f(l, k, i)``.  Both difference identities
    are checked at every interior point, and the derived three-term stencil
    is checked wherever three consecutive ``i`` values exist; any failure is
    a False.
    """
    a = Fraction(a)
    if a == 0:
        raise PreconditionError("a nonzero")
    if eps not in (1, -1):
        raise PreconditionError("eps in {+1, -1}")
    if k == 0:
        raise PreconditionError("k nonzero",
                                "the difference identities divide by k")
    ratio = a / k
    for (l, i), value in table.items():
        up_right = table.get((l - 1, i + 1))
        up = table.get((l - 1, i))
        if up_right is not None and up is not None:
            if eps * value != ratio * (up_right - up):
                return False
        left = table.get((l, i - 1))
        if up is not None and left is not None:
            if eps * up != ratio * (value - left):
                return False
    for (l, i) in table:
        prev = table.get((l, i - 1))
        nxt = table.get((l, i + 1))
        if prev is None or nxt is None:
            continue
        if stencil_step(a, k, prev, table[(l, i)]) != nxt:
            return False
    return True


@dataclass(frozen=True)
class TraceSequence:
    """The rational power-sum sequence of the characteristic unit."""

    a: Fraction
    k: int
    values: tuple[Fraction, ...]

    def __getitem__(self, l: int) -> Fraction:
        return self.values[l]


def trace_sequence(a, k: int, lmax: int) -> TraceSequence:
    """Exact values ``t_0 .. t_lmax``; strictly increasing from the start.

    ``t_1 - 2 = k**2 / a**2 > 0`` certifies that the characteristic root has
    modulus bigger than one without ever taking a square root.
    """
    a = Fraction(a)
    if a == 0:
        raise PreconditionError("a nonzero")
    if k == 0:
        raise PreconditionError("k nonzero")
    if lmax < 2:
        raise PreconditionError("lmax >= 2")
    t0 = Fraction(2)
    t1 = (2 * a * a + k * k) / (a * a)
    values = [t0, t1]
    while len(values) <= lmax:
        values.append(t1 * values[-1] - values[-2])
    return TraceSequence(a, k, tuple(values))


@dataclass(frozen=True)
class Certificate:
    """Exact witness that the compatibility constraint fails.

    ``constant`` is the value of the single unknown fixed from ``l = 1``;
    ``failure_l`` is the smallest probe index where the constraint breaks and
    ``residue`` the exact nonzero discrepancy there.
    """

    a: Fraction
    k: int
    constant: Fraction
    failure_l: Optional[int]
    residue: Fraction
    trace: TraceSequence

    def to_json(self) -> dict:
        return {
            "a": scalar_str(self.a),
            "k": self.k,
            "C": scalar_str(self.constant),
            "failure_l": self.failure_l,
            "residue": scalar_str(self.residue),
        }


def falsify(a, k: int, lmax: int = 4) -> Certificate:
    """Produce the contradiction certificate for the given probe parameters.

    The constraint ``l**2 k**2 = C (t_l - 2)`` fixes ``C = a**2`` at ``l = 1``
    and already fails at ``l = 2`` with residue exactly ``k**4 / a**2``; the
    certificate reports the first failing index and the exact residue
    ``C (t_l - 2) - l**2 k**2`` there.
    """
    a = Fraction(a)
    trace = trace_sequence(a, k, lmax)
    constant = Fraction(k * k) / (trace[1] - 2)
    for l in range(2, lmax + 1):
        residue = constant * (trace[l] - 2) - Fraction(l * l * k * k)
        if residue != 0:
            return Certificate(a, k, constant, l, residue, trace)
    return Certificate(a, k, constant, None, Fraction(0), trace)

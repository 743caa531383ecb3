"""Weight functionals in exp-polynomial form and as recurrence-annihilated
sequences.

A functional is determined by the sequence of its values on the degree-zero
part of the algebra.  Two equivalent presentations are supported:

* closed form: a finite sum of terms ``p_j(k) * alpha_j**k`` with rational
  ``alpha_j != 0`` and polynomial coefficients, which the evaluation rules
  below divide by ``k`` on the ``D``-part;
* recurrence form: a constant-coefficient linear recurrence with nonzero
  leading and trailing coefficients annihilating the sequence
  ``f_k = k * psi(D(k*b2))``, extended to ``k = 0`` through the central value.

``char_recurrence`` converts closed form to an annihilator exactly;
``detect_recurrence`` goes the other way by exact kernel computations on a
window of the sequence and is the workhorse behind the dimension bounds of
the highest-weight engine.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

from . import linalg
from .errors import PreconditionError
from .scalars import parse_scalar, scalar_str


@dataclass(frozen=True)
class ExpPolyTerm:
    """One summand ``(b0 + b1*k + ... + bs*k**s) * alpha**k``."""

    alpha: Fraction
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if self.alpha == 0:
            raise ValueError("growth rate alpha must be nonzero")
        if not self.coeffs:
            raise ValueError("term needs at least one polynomial coefficient")
        if self.coeffs[-1] == 0:
            raise ValueError("leading polynomial coefficient must be nonzero")

    def poly_at(self, k: int) -> Fraction:
        acc = Fraction(0)
        for b in reversed(self.coeffs):
            acc = acc * k + b
        return acc


def term(alpha, coeffs) -> ExpPolyTerm:
    return ExpPolyTerm(Fraction(alpha), tuple(Fraction(c) for c in coeffs))


@dataclass(frozen=True)
class ExpPolyFunctional:
    """A weight functional in exp-polynomial closed form.

    ``basis_det`` is the determinant (+1 or -1) of the lattice basis the
    functional is written against; it only enters through the central value.
    The zero functional is represented by an empty term tuple.
    """

    terms: tuple[ExpPolyTerm, ...] = ()
    basis_det: int = 1

    def __post_init__(self):
        if self.basis_det not in (1, -1):
            raise ValueError("basis determinant must be +1 or -1")
        alphas = [t.alpha for t in self.terms]
        if len(set(alphas)) != len(alphas):
            raise ValueError("growth rates must be pairwise distinct")

    def is_zero(self) -> bool:
        return not self.terms


def functional(terms, basis_det: int = 1) -> ExpPolyFunctional:
    return ExpPolyFunctional(tuple(term(a, cs) for a, cs in terms), basis_det)


def f_value(psi: ExpPolyFunctional, k: int) -> Fraction:
    """The sequence value ``f_k = sum_j p_j(k) * alpha_j**k`` (all k)."""
    return sum((t.poly_at(k) * t.alpha ** k for t in psi.terms), Fraction(0))


def eval_psi_D(psi: ExpPolyFunctional, k: int) -> Fraction:
    """Value on ``D(k*b2)``; defined as ``f_k / k`` and rejects ``k = 0``."""
    if k == 0:
        raise PreconditionError("k nonzero", "psi(D(0)) is undefined; use eval_psi_h")
    return f_value(psi, k) / k

def eval_psi_h(psi: ExpPolyFunctional) -> tuple[Fraction, Fraction]:
    """Values on the central elements ``(h(b1), h(b2))``; the second is 0."""
    constant_sum = sum((t.coeffs[0] for t in psi.terms), Fraction(0))
    return -psi.basis_det * constant_sum, Fraction(0)


@dataclass(frozen=True)
class FSequence:
    """A two-sided sequence ``k -> f_k`` of exact rationals."""

    fn: Callable[[int], Fraction]
    label: str = ""

    def __call__(self, k: int) -> Fraction:
        return Fraction(self.fn(k))

    def values(self, ks) -> list[Fraction]:
        return [self(k) for k in ks]


def f_sequence(psi: ExpPolyFunctional) -> FSequence:
    """The sequence ``f_k``; at ``k = 0`` this equals ``-det * psi(h(b1))``."""
    return FSequence(lambda k: f_value(psi, k), label="exp-polynomial")


def flip(psi: ExpPolyFunctional) -> ExpPolyFunctional:
    """The functional of the degree-reversed module: ``f'_k = -f_(-k)``.

    Realized in closed form by ``alpha -> 1/alpha`` and ``p(k) -> -p(-k)``.
    """
    new_terms = []
    for t in psi.terms:
        coeffs = tuple(-c if i % 2 == 0 else c for i, c in enumerate(t.coeffs))
        new_terms.append(ExpPolyTerm(1 / t.alpha, coeffs))
    return ExpPolyFunctional(tuple(new_terms), psi.basis_det)


@dataclass(frozen=True)
class LinearRecurrence:
    """Coefficients ``a_0..a_n`` of ``sum_i a_i f_{k+i} = 0`` with
    ``a_0 != 0`` and ``a_n != 0``."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.coeffs) < 2:
            raise ValueError("recurrence needs order at least one")
        if self.coeffs[0] == 0 or self.coeffs[-1] == 0:
            raise ValueError("leading and trailing coefficients must be nonzero")

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def annihilates(self, f: FSequence, ks) -> bool:
        """Exact check of the recurrence at every shift ``k`` in ``ks``."""
        return all(
            sum((a * f(k + i) for i, a in enumerate(self.coeffs)), Fraction(0)) == 0
            for k in ks
        )

    def divides(self, other: "LinearRecurrence") -> bool:
        """Polynomial divisibility in the shift operator."""
        _, rem = poly_divmod(list(other.coeffs), list(self.coeffs))
        return all(r == 0 for r in rem)


def recurrence(coeffs) -> LinearRecurrence:
    return LinearRecurrence(tuple(Fraction(c) for c in coeffs))


def poly_mul(p: Sequence[Fraction], q: Sequence[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return out


def poly_divmod(num: Sequence[Fraction], den: Sequence[Fraction]):
    """Exact division with remainder in Q[x]; coefficients ascending."""
    num = [Fraction(c) for c in num]
    den = [Fraction(c) for c in den]
    while den and den[-1] == 0:
        den.pop()
    if not den:
        raise ZeroDivisionError("polynomial division by zero")
    quot = [Fraction(0)] * max(len(num) - len(den) + 1, 0)
    rem = list(num)
    for i in range(len(quot) - 1, -1, -1):
        if len(rem) < len(den) + i:
            continue
        factor = rem[len(den) + i - 1] / den[-1]
        quot[i] = factor
        if factor:
            for j, b in enumerate(den):
                rem[i + j] -= factor * b
    while rem and rem[-1] == 0:
        rem.pop()
    return quot, rem


def char_recurrence(psi: ExpPolyFunctional) -> LinearRecurrence:
    """The canonical annihilator: product over terms of ``(E - alpha)**(s+1)``.

    The zero functional is rejected: every recurrence annihilates it and no
    choice would be canonical.
    """
    if psi.is_zero():
        raise PreconditionError("nonzero functional",
                                "the zero functional has no canonical annihilator")
    poly = [Fraction(1)]
    for t in psi.terms:
        factor = [-t.alpha, Fraction(1)]
        for _ in range(len(t.coeffs)):
            poly = poly_mul(poly, factor)
    return LinearRecurrence(tuple(poly))


@dataclass(frozen=True)
class RecurrenceDetection:
    """Result of :func:`detect_recurrence`.

    ``recurrence`` is None when no annihilator of the allowed order fits the
    window; ``identically_zero`` distinguishes the degenerate sequence that
    every recurrence annihilates.
    """

    recurrence: Optional[LinearRecurrence]
    identically_zero: bool = False


def detect_recurrence(f: FSequence, max_order: int, window: range) -> RecurrenceDetection:
    """Minimal-order annihilator of ``f`` on ``window`` by exact elimination.

    Tries orders ``1..max_order``; for each, solves the shifted linear system
    with the trailing coefficient normalized to one and keeps the first
    consistent solution whose constant coefficient is nonzero.  The window
    must contain at least ``2*max_order + 1`` points so the system is
    meaningfully overdetermined.
    """
    if max_order < 1:
        raise PreconditionError("max order >= 1")
    if len(window) < 2 * max_order + 1:
        raise PreconditionError(
            "window length >= 2*max_order + 1",
            f"got {len(window)} points for max order {max_order}")
    ks = list(window)
    values = {k: f(k) for k in ks}
    if all(v == 0 for v in values.values()):
        return RecurrenceDetection(None, identically_zero=True)
    for order in range(1, max_order + 1):
        rows = []
        rhs = []
        for k in ks[: len(ks) - order]:
            rows.append([values[k + i] for i in range(order)])
            rhs.append(-values[k + order])
        sol = linalg.solve(rows, rhs)
        if sol is None:
            continue
        if sol[0] == 0:
            # The particular solution has a vanishing constant coefficient;
            # adjust by a kernel vector when one restores it.
            for v in linalg.nullspace(rows):
                if v[0] != 0:
                    sol = [a + b for a, b in zip(sol, v)]
                    break
            else:
                continue
        coeffs = tuple(sol) + (Fraction(1),)
        return RecurrenceDetection(LinearRecurrence(coeffs))
    return RecurrenceDetection(None)


def functional_to_json(psi: ExpPolyFunctional) -> dict:
    return {
        "det": psi.basis_det,
        "terms": [
            {"alpha": scalar_str(t.alpha), "coeffs": [scalar_str(c) for c in t.coeffs]}
            for t in psi.terms
        ],
    }


def functional_from_json(data: dict) -> ExpPolyFunctional:
    if not isinstance(data, dict):
        raise ValueError("functional must be a JSON object")
    det = data.get("det", 1)
    if det not in (1, -1):
        raise ValueError("functional det must be 1 or -1")
    raw_terms = data.get("terms", [])
    if not isinstance(raw_terms, list):
        raise ValueError("functional terms must be a list")
    terms = []
    for entry in raw_terms:
        alpha = parse_scalar(entry["alpha"])
        coeffs = [parse_scalar(c) for c in entry["coeffs"]]
        terms.append(ExpPolyTerm(alpha, tuple(coeffs)))
    return ExpPolyFunctional(tuple(terms), det)

"""Loop modules over the Heisenberg subalgebra spanned by the pure
``b2``-direction generators and one central element.

The subalgebra acts on Laurent monomials ``t**m`` by

    D(k*b2) . t**m = psi(D(k*b2)) * t**(m+k),      h(b2) . t**m = 0,

so a module is described entirely by the restriction ``k -> psi(D(k*b2))``.
The key structural quantity is the period ``s``: the exponents reachable from
a base exponent form a coset of ``s*Z`` where ``s`` is the gcd of the support
of the restriction.  Detection is necessarily bound-dependent, so reports
carry the bound and a stabilization flag (the period unchanged when the bound
doubles).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Callable

from .errors import PreconditionError
from .functionals import ExpPolyFunctional, eval_psi_D

PsiD = Callable[[int], Fraction]


def psi_d_of(psi: ExpPolyFunctional) -> PsiD:
    """Adapter from closed form to the raw restriction ``k -> psi(D(k*b2))``."""
    return lambda k: eval_psi_D(psi, k)


def act(psi_d: PsiD, k: int, m: int) -> tuple[Fraction, int]:
    """Action of ``D(k*b2)`` on ``t**m``: coefficient and new exponent."""
    if k == 0:
        raise PreconditionError("k nonzero", "D(0) is not a generator")
    return Fraction(psi_d(k)), m + k


def act_center(m: int) -> tuple[Fraction, int]:
    """The central element kills every monomial."""
    return Fraction(0), m


def support(psi_d: PsiD, bound: int) -> list[int]:
    """Nonzero-action steps ``k`` with ``|k| <= bound``, ascending."""
    if bound < 1:
        raise PreconditionError("bound >= 1")
    return [k for k in range(-bound, bound + 1) if k != 0 and psi_d(k) != 0]


def support_gcd(psi_d: PsiD, bound: int) -> int:
    """Gcd of the absolute support within the bound; 0 for empty support."""
    g = 0
    for k in support(psi_d, bound):
        g = gcd(g, abs(k))
    return g


def reachable_exponents(psi_d: PsiD, base: int, bound: int,
                        excursion: int = 2) -> set[int]:
    """Exponents reachable from ``base`` by repeated nonzero steps.

    Intermediate exponents may wander up to ``excursion * bound`` away from
    the base before the result is clipped to ``[base - bound, base + bound]``;
    gcd combinations need that slack.
    """
    steps = support(psi_d, bound)
    lo, hi = base - excursion * bound, base + excursion * bound
    seen = {base}
    frontier = [base]
    while frontier:
        nxt = []
        for m in frontier:
            for k in steps:
                t = m + k
                if lo <= t <= hi and t not in seen:
                    seen.add(t)
                    nxt.append(t)
        frontier = nxt
    return {m for m in seen if base - bound <= m <= base + bound}


def is_irreducible_loop(psi_d: PsiD, base: int, bound: int) -> bool:
    """True iff the reachable exponents match the full period coset.

    Within the bound, the module generated by ``t**base`` should be either
    the single monomial (empty support) or all of ``base + s*Z``; any gap is
    evidence against irreducibility at this bound.
    """
    s = support_gcd(psi_d, bound)
    reach = reachable_exponents(psi_d, base, bound)
    if s == 0:
        return reach == {base}
    expected = {m for m in range(base - bound, base + bound + 1)
                if (m - base) % s == 0}
    return reach == expected


@dataclass(frozen=True)
class HeisenbergModule:
    """A detected loop module: base exponent, period, and detection data.

    ``period == 0`` encodes the one-dimensional module on the base exponent.
    ``stabilized`` records that the period did not change when the detection
    bound was doubled.
    """

    base_exp: int
    period: int
    bound: int
    stabilized: bool
    irreducible: bool


def loop_module(psi_d: PsiD, base: int, bound: int) -> HeisenbergModule:
    if bound < 1:
        raise PreconditionError("bound >= 1")
    s = support_gcd(psi_d, bound)
    s2 = support_gcd(psi_d, 2 * bound)
    return HeisenbergModule(
        base_exp=base,
        period=s,
        bound=bound,
        stabilized=s == s2,
        irreducible=is_irreducible_loop(psi_d, base, bound),
    )

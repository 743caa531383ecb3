"""The rank-two degree lattice and the Virasoro-like algebra built on it.

``LatticeVector`` models points of the lattice spanned by the two standard
directions.  ``AlgebraElement`` is a finite formal sum of generators ``D(m)``
plus two central generators ``c1``, ``c2``, with the bracket

    [D(m), D(n)] = -det(m, n) * D(m + n) + delta(m + n, 0) * h(m),

where ``det(m, n) = m1*n2 - m2*n1``, ``h(m) = m1*c1 + m2*c2`` and the central
generators bracket to zero.  ``D(0, 0)`` is identically zero and is normalized
away at construction time.

Everything here is immutable and exact; all operations are pure functions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional

from .scalars import ZERO, coefficient_str


@dataclass(frozen=True, order=True)
class LatticeVector:
    """A lattice point ``x1*e1 + x2*e2`` with integer coordinates."""

    x1: int
    x2: int

    def __post_init__(self):
        if not isinstance(self.x1, int) or not isinstance(self.x2, int):
            raise ValueError("lattice coordinates must be integers")

    def __add__(self, other: "LatticeVector") -> "LatticeVector":
        return LatticeVector(self.x1 + other.x1, self.x2 + other.x2)

    def __sub__(self, other: "LatticeVector") -> "LatticeVector":
        return LatticeVector(self.x1 - other.x1, self.x2 - other.x2)

    def __neg__(self) -> "LatticeVector":
        return LatticeVector(-self.x1, -self.x2)

    def __rmul__(self, scale: int) -> "LatticeVector":
        return LatticeVector(scale * self.x1, scale * self.x2)

    def is_zero(self) -> bool:
        return self.x1 == 0 and self.x2 == 0


E1 = LatticeVector(1, 0)
E2 = LatticeVector(0, 1)


def vec(x1: int, x2: int) -> LatticeVector:
    return LatticeVector(x1, x2)


def det2(m: LatticeVector, n: LatticeVector) -> int:
    """Determinant ``m1*n2 - m2*n1`` of two lattice vectors."""
    return m.x1 * n.x2 - m.x2 * n.x1


def is_z_basis(b1: LatticeVector, b2: LatticeVector) -> bool:
    """True iff integer combinations of ``b1, b2`` reach the whole lattice."""
    return det2(b1, b2) in (1, -1)


@dataclass(frozen=True)
class ZBasis:
    """An ordered lattice basis with determinant +1 or -1."""

    b1: LatticeVector
    b2: LatticeVector

    def __post_init__(self):
        if not is_z_basis(self.b1, self.b2):
            raise ValueError(f"not a lattice basis: det = {det2(self.b1, self.b2)}")

    @property
    def det(self) -> int:
        return det2(self.b1, self.b2)

    def combine(self, c1: int, c2: int) -> LatticeVector:
        """The lattice vector ``c1*b1 + c2*b2``."""
        return c1 * self.b1 + c2 * self.b2

    def coordinates(self, m: LatticeVector) -> tuple[int, int]:
        """Integer coordinates of ``m`` in this basis (always exact)."""
        eps = self.det
        return eps * det2(m, self.b2), eps * det2(self.b1, m)


STANDARD_BASIS = ZBasis(E1, E2)


@dataclass(frozen=True)
class AlgebraElement:
    """Finite sum ``sum c_m D(m) + a*c1 + b*c2`` with rational coefficients.

    ``dpart`` never stores a zero coefficient and never stores the zero
    lattice vector.  Use :func:`element` or the generators :func:`d_gen` and
    :func:`h_of` to construct instances; arithmetic keeps the invariants.
    """

    dpart: tuple[tuple[LatticeVector, Fraction], ...]
    c1: Fraction
    c2: Fraction

    @property
    def dmap(self) -> dict[LatticeVector, Fraction]:
        return dict(self.dpart)

    def is_zero(self) -> bool:
        return not self.dpart and self.c1 == 0 and self.c2 == 0

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        merged = self.dmap
        for m, c in other.dpart:
            merged[m] = merged.get(m, ZERO) + c
        return element(merged, self.c1 + other.c1, self.c2 + other.c2)

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self + (-other)

    def __neg__(self) -> "AlgebraElement":
        return self * Fraction(-1)

    def __mul__(self, scale) -> "AlgebraElement":
        scale = Fraction(scale)
        if scale == 0:
            return ZERO_ELEMENT
        return AlgebraElement(
            tuple((m, scale * c) for m, c in self.dpart),
            scale * self.c1,
            scale * self.c2,
        )

    __rmul__ = __mul__

    def __str__(self) -> str:
        return render(self)


def element(dmap: Mapping[LatticeVector, Fraction] | Iterable[tuple[LatticeVector, Fraction]],
            c1=ZERO, c2=ZERO) -> AlgebraElement:
    """Normalize a coefficient map into an AlgebraElement.

    Zero coefficients and the key ``(0, 0)`` are dropped; terms are stored in
    sorted order so equal elements compare equal.
    """
    items = dmap.items() if isinstance(dmap, Mapping) else dmap
    cleaned = {}
    for m, c in items:
        c = Fraction(c)
        if c == 0 or m.is_zero():
            continue
        cleaned[m] = cleaned.get(m, ZERO) + c
    part = tuple(sorted(((m, c) for m, c in cleaned.items() if c != 0),
                        key=lambda mc: (mc[0].x1, mc[0].x2)))
    return AlgebraElement(part, Fraction(c1), Fraction(c2))


ZERO_ELEMENT = element({})
C1 = element({}, c1=Fraction(1))
C2 = element({}, c2=Fraction(1))


def d_gen(m: LatticeVector) -> AlgebraElement:
    """The generator ``D(m)``; the zero vector gives the zero element."""
    if m.is_zero():
        return ZERO_ELEMENT
    return element({m: Fraction(1)})


def h_of(m: LatticeVector) -> AlgebraElement:
    """The central element ``h(m) = m1*c1 + m2*c2``."""
    return element({}, c1=Fraction(m.x1), c2=Fraction(m.x2))


def bracket(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    """Lie bracket, extended bilinearly from the generator formula."""
    dmap: dict[LatticeVector, Fraction] = {}
    c1 = ZERO
    c2 = ZERO
    for m, cm in x.dpart:
        for n, cn in y.dpart:
            coeff = cm * cn
            det = det2(m, n)
            s = m + n
            if s.is_zero():
                c1 += coeff * m.x1
                c2 += coeff * m.x2
                continue
            if det:
                dmap[s] = dmap.get(s, ZERO) - det * coeff
    return element(dmap, c1, c2)


def bracket_in_basis(mcoords: tuple[int, int], ncoords: tuple[int, int],
                     basis: ZBasis) -> AlgebraElement:
    """Bracket of ``D(m)``, ``D(n)`` given by coordinates in ``basis``.

    Uses the coordinate form of the bracket: the structure constant picks up
    the factor ``det(b1, b2)`` and the central term is ``h`` of the actual
    lattice vector of the first argument.
    """
    m1, m2 = mcoords
    n1, n2 = ncoords
    mvec = basis.combine(m1, m2)
    nvec = basis.combine(n1, n2)
    dmap: dict[LatticeVector, Fraction] = {}
    c1 = ZERO
    c2 = ZERO
    s = mvec + nvec
    if s.is_zero():
        c1 += Fraction(mvec.x1)
        c2 += Fraction(mvec.x2)
    else:
        cdet = basis.det * (m1 * n2 - m2 * n1)
        if cdet:
            dmap[s] = Fraction(-cdet)
    return element(dmap, c1, c2)


def z_degree(x: AlgebraElement, basis: ZBasis = STANDARD_BASIS) -> Optional[int]:
    """The common ``b1``-coordinate of all terms of ``x``, or None.

    Central terms sit in degree zero.  Returns None when the element is not
    homogeneous; the zero element is rejected because every degree fits it.
    """
    if x.is_zero():
        raise ValueError("z_degree of the zero element is undefined")
    degrees = {basis.coordinates(m)[0] for m, _ in x.dpart}
    if x.c1 != 0 or x.c2 != 0:
        degrees.add(0)
    if len(degrees) == 1:
        return degrees.pop()
    return None


def render(x: AlgebraElement) -> str:
    """Canonical expression string, e.g. ``"-1*D(1,1) + 2*c1"``."""
    parts = [f"{coefficient_str(c)}*D({m.x1},{m.x2})" for m, c in x.dpart]
    if x.c1 != 0:
        parts.append(f"{coefficient_str(x.c1)}*c1")
    if x.c2 != 0:
        parts.append(f"{coefficient_str(x.c2)}*c2")
    return " + ".join(parts) if parts else "0"

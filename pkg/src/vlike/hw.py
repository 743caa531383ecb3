"""Highest-weight engine: induced modules, radical pairing, level dimensions.

All computations happen in coordinates with respect to a fixed lattice basis
``(b1, b2)`` with determinant ``eps``.  A generator is a pair ``(a, k)``
standing for ``D(a*b1 + k*b2)``; ``a < 0`` lowers, ``a > 0`` raises, ``a = 0``
is the weight direction.  The engine only needs two inputs:

* the sequence ``f_k`` with ``f_k = k * psi(D(k*b2))`` for ``k != 0`` and
  ``f_0 = -eps * psi(h(b1))``;
* the basis determinant ``eps``.

The induced module from the weight ``psi`` is spanned, at depth ``n`` below
the generating vector, by ordered products of lowering generators of total
``b1``-degree ``-n`` (canonically sorted factor tuples).  The irreducible
quotient divides out the radical of the pairing between raising and lowering
words; its level dimension is the exact rank of that pairing, computed under
a band truncation ``|k| <= band`` on the ``b2``-coordinates of the factors,
with stabilization under band growth reported alongside every dimension.

Everything is exact; rank computations use rational Gaussian elimination.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Optional

from . import linalg
from .errors import PreconditionError, TruncationOverflowError
from .functionals import (ExpPolyFunctional, FSequence, LinearRecurrence,
                          RecurrenceDetection, detect_recurrence, f_sequence,
                          f_value)

Gen = tuple[int, int]
Word = tuple[Gen, ...]
Element = dict[Word, Fraction]

DEFAULT_ANNIHILATOR_ORDER = 8


@dataclass(frozen=True)
class TruncationParams:
    """Truncation bands and the level cap for quotient computations.

    ``band`` bounds the ``b2``-coordinate of lowering factors, ``raising_band``
    the probe side (it must cover the lowering band), ``max_level`` the depth.
    The stabilization step grows a band ``M`` to ``2*M + 1``.
    """

    band: int = 2
    raising_band: int = 2
    max_level: int = 4

    def __post_init__(self):
        if self.band < 0:
            raise PreconditionError("band >= 0")
        if self.raising_band < self.band:
            raise PreconditionError("raising_band >= band")
        if self.max_level < 1:
            raise PreconditionError("max_level >= 1")

    @staticmethod
    def grow(band: int) -> int:
        return 2 * band + 1


@dataclass(frozen=True)
class DimensionReport:
    """Dimension of one homogeneous level of the irreducible quotient.

    ``level`` counts depth below the generating vector (level ``n`` is degree
    ``-n``).  ``upper_bound`` is None when no annihilator certifies a bound.
    """

    level: int
    dim: int
    band: int
    stabilized: bool
    lower_bound: int
    upper_bound: Optional[int]


@lru_cache(maxsize=None)
def lowering_words(n: int, band: int) -> tuple[Word, ...]:
    """All canonical lowering words of total degree ``-n`` within the band.

    A word is a nondecreasing tuple of factors ``(a, k)`` with ``a <= -1``
    and ``|k| <= band``; factor order is lexicographic on ``(a, k)``.
    """
    if n < 0 or band < 0:
        raise PreconditionError("level and band must be nonnegative")
    if n == 0:
        return ((),)
    out: list[Word] = []

    def extend(remaining: int, lowest: Gen, acc: list[Gen]):
        if remaining == 0:
            out.append(tuple(acc))
            return
        for a in range(-remaining, 0):
            for k in range(-band, band + 1):
                g = (a, k)
                if g < lowest:
                    continue
                acc.append(g)
                extend(remaining + a, g, acc)
                acc.pop()

    extend(n, (-n, -band), [])
    return tuple(sorted(out))


@lru_cache(maxsize=None)
def raising_words(n: int, band: int) -> tuple[Word, ...]:
    """Canonical raising words of total degree ``+n`` within the band."""
    flipped = [tuple(sorted((-a, k) for a, k in w)) for w in lowering_words(n, band)]
    return tuple(sorted(flipped))


def verma_level_span(n: int, band: int) -> list[Word]:
    """Basis words of the induced module at depth ``n`` under the band."""
    return list(lowering_words(n, band))


def word_degree(word: Word) -> int:
    return sum(a for a, _ in word)


@dataclass(frozen=True)
class GramMatrix:
    """The raising/lowering pairing at one level, rows and columns labeled."""

    level: int
    raising: tuple[Word, ...]
    lowering: tuple[Word, ...]
    entries: tuple[tuple[Fraction, ...], ...]

    def rows(self) -> list[list[Fraction]]:
        return [list(r) for r in self.entries]


class DimensionEngine:
    """Exact highest-weight quotient computations for one weight functional."""

    def __init__(self, f: Callable[[int], Fraction], eps: int = 1):
        if eps not in (1, -1):
            raise PreconditionError("basis determinant in {+1, -1}")
        self._f_raw = f
        self.eps = eps
        self._fcache: dict[int, Fraction] = {}
        self.psi_h1 = -eps * self.f(0)
        self._insert: dict[tuple[Gen, Word], Element] = {}
        self._apply: dict[tuple[Gen, Word], Element] = {}
        self._rank: dict[tuple[int, int, int], int] = {}
        self._bases: dict[tuple[int, int, int], "LevelBasis"] = {}
        self._annihilator: Optional[RecurrenceDetection] = None

    @classmethod
    def for_functional(cls, psi: ExpPolyFunctional) -> "DimensionEngine":
        return cls(lambda k: f_value(psi, k), psi.basis_det)

    def mirror(self) -> "DimensionEngine":
        """Engine of the degree-flipped module: acts on ``f'_k = -f_(-k)``."""
        f = self._f_raw
        return DimensionEngine(lambda k: -f(-k), self.eps)

    # -- weight values ----------------------------------------------------

    def f(self, k: int) -> Fraction:
        try:
            return self._fcache[k]
        except KeyError:
            v = Fraction(self._f_raw(k))
            self._fcache[k] = v
            return v

    def psi_d(self, k: int) -> Fraction:
        return self.f(k) / k

    def is_zero_weight(self, probe: int = 12) -> bool:
        return all(self.f(k) == 0 for k in range(-probe, probe + 1))

    # -- normal ordering ---------------------------------------------------

    def insert_lower(self, g: Gen, word: Word) -> Element:
        """Expand ``D(g) . (word . v0)`` in canonical words (``g`` lowering)."""
        key = (g, word)
        cached = self._insert.get(key)
        if cached is not None:
            return cached
        if not word or g <= word[0]:
            result = {(g,) + word: Fraction(1)}
            self._insert[key] = result
            return result
        x = word[0]
        rest = word[1:]
        out: Element = {}
        for w2, c2 in self.insert_lower(g, rest).items():
            w3 = (x,) + w2
            out[w3] = out.get(w3, Fraction(0)) + c2
        det = g[0] * x[1] - g[1] * x[0]
        coeff = -self.eps * det
        if coeff:
            merged = (g[0] + x[0], g[1] + x[1])
            for w3, c3 in self.insert_lower(merged, rest).items():
                out[w3] = out.get(w3, Fraction(0)) + coeff * c3
        result = {w: c for w, c in out.items() if c != 0}
        self._insert[key] = result
        return result

    def apply_raise(self, g: Gen, word: Word) -> Element:
        """Expand ``D(g) . (word . v0)`` for ``g`` of nonnegative degree."""
        key = (g, word)
        cached = self._apply.get(key)
        if cached is not None:
            return cached
        if not word:
            if g[0] > 0:
                result: Element = {}
            else:
                result = {(): self.psi_d(g[1])}
            self._apply[key] = result
            return result
        x = word[0]
        rest = word[1:]
        out: Element = {}
        for w2, c2 in self.apply_raise(g, rest).items():
            for w3, c3 in self.insert_lower(x, w2).items():
                out[w3] = out.get(w3, Fraction(0)) + c2 * c3
        s = (g[0] + x[0], g[1] + x[1])
        if s == (0, 0):
            cval = g[0] * self.psi_h1
            if cval:
                out[rest] = out.get(rest, Fraction(0)) + cval
        else:
            det = g[0] * x[1] - g[1] * x[0]
            coeff = -self.eps * det
            if coeff:
                sub = self.apply_raise(s, rest) if s[0] >= 0 else self.insert_lower(s, rest)
                for w3, c3 in sub.items():
                    out[w3] = out.get(w3, Fraction(0)) + coeff * c3
        result = {w: c for w, c in out.items() if c != 0}
        self._apply[key] = result
        return result

    def apply_generator(self, g: Gen, word: Word) -> Element:
        if g == (0, 0):
            raise PreconditionError("nonzero generator", "D(0,0) is the zero operator")
        if g[0] < 0:
            return self.insert_lower(g, word)
        return self.apply_raise(g, word)

    def apply_to_element(self, g: Gen, elem: Element) -> Element:
        out: Element = {}
        for word, c in elem.items():
            for w2, c2 in self.apply_generator(g, word).items():
                out[w2] = out.get(w2, Fraction(0)) + c * c2
        return {w: c for w, c in out.items() if c != 0}

    def operator_element(self, factors: Iterable[Gen]) -> Element:
        """Apply an operator word (leftmost factor acts last) to the vacuum."""
        state: Element = {(): Fraction(1)}
        for g in reversed(tuple(factors)):
            state = self.apply_to_element(g, state)
            if not state:
                break
        return state

    def pair(self, u: Word, w: Word) -> Fraction:
        """Vacuum coefficient of ``u . w . v0`` (the radical pairing)."""
        state: Element = {w: Fraction(1)}
        for g in reversed(u):
            state = self.apply_to_element(g, state)
            if not state:
                return Fraction(0)
        return state.get((), Fraction(0))

    def pair_element(self, u: Word, elem: Element) -> Fraction:
        return sum((c * self.pair(u, w) for w, c in elem.items()), Fraction(0))

    # -- level structure ---------------------------------------------------

    def gram(self, n: int, band: int, raising_band: int) -> GramMatrix:
        rows = raising_words(n, raising_band)
        cols = lowering_words(n, band)
        entries = tuple(tuple(self.pair(u, w) for w in cols) for u in rows)
        return GramMatrix(n, rows, cols, entries)

    def level_rank(self, n: int, band: int, raising_band: int) -> int:
        key = (n, band, raising_band)
        if key not in self._rank:
            self._rank[key] = linalg.rank(self.gram(n, band, raising_band).rows())
        return self._rank[key]

    def level_basis(self, n: int, band: int, raising_band: int) -> "LevelBasis":
        key = (n, band, raising_band)
        if key not in self._bases:
            self._bases[key] = LevelBasis(self, n, band, raising_band)
        return self._bases[key]

    def annihilator(self) -> RecurrenceDetection:
        """Cached minimal annihilator of the weight sequence, if any."""
        if self._annihilator is None:
            order = DEFAULT_ANNIHILATOR_ORDER
            window = range(-2 * order - 2, 2 * order + 3)
            self._annihilator = detect_recurrence(
                FSequence(self.f), max_order=order, window=window)
        return self._annihilator

    def first_support(self, bound: int = 12) -> Optional[int]:
        """Smallest-|k| index with ``f_k != 0``, positive preferred."""
        for a in range(1, bound + 1):
            for k in (a, -a):
                if self.f(k) != 0:
                    return k
        return None

    # -- dimension reports ---------------------------------------------------

    def witness_independent(self, n: int, k: int) -> bool:
        """Certify that the depth-``n`` staircase witnesses are independent.

        The witnesses are the ``n`` vectors built from ``j`` single-step
        lowerings composed with one deep lowering carrying ``k`` units in the
        ``b2``-direction.  Independence modulo the radical is certified by
        exhibiting raising probes whose pairing matrix has rank ``n``; probes
        start with the triangular family of pure ``b1``-direction words and
        fall back to the full canonical enumeration.
        """
        if n < 1:
            raise PreconditionError("level >= 1")
        if self.f(k) == 0 or k == 0:
            raise PreconditionError("psi(D(k*b2)) nonzero",
                                    f"witness construction needs f({k}) != 0")
        witnesses: list[Element] = []
        for j in range(n):
            elem: Element = {((-(n - j), k),): Fraction(1)}
            for _ in range(j):
                elem = self.apply_to_element((-1, 0), elem)
            witnesses.append(elem)

        def probes():
            for i in range(n):
                yield ((1, 0),) * i + ((n - i, 0),)
            band = max(abs(k), 2) + 1
            yield from raising_words(n, band)

        rows: list[list[Fraction]] = []
        for u in probes():
            rows.append([self.pair_element(u, wit) for wit in witnesses])
            if linalg.rank(rows) == n:
                return True
        return False

    def dimension_report(self, n: int, params: TruncationParams) -> DimensionReport:
        if n < 0:
            raise PreconditionError("level >= 0")
        if n > params.max_level:
            raise PreconditionError("level <= max_level",
                                    f"level {n} exceeds cap {params.max_level}")
        band, rband = params.band, params.raising_band
        dim = self.level_rank(n, band, rband)
        wide = self.level_rank(n, TruncationParams.grow(band),
                               TruncationParams.grow(rband))
        stabilized = dim == wide
        if n == 0:
            return DimensionReport(0, dim, band, stabilized, dim, dim)
        k = self.first_support()
        if k is None:
            lower = 0
        else:
            lower = n if self.witness_independent(n, k) else 0
        detection = self.annihilator()
        if detection.identically_zero:
            upper: Optional[int] = 0
        elif detection.recurrence is None:
            upper = None
        else:
            upper = (3 ** n) * detection.recurrence.order * self.level_rank(n - 1, band, rband)
        return DimensionReport(n, dim, band, stabilized, lower, upper)

    def dimension_table(self, params: TruncationParams) -> list[DimensionReport]:
        return [self.dimension_report(n, params) for n in range(params.max_level + 1)]


class LevelBasis:
    """Quotient basis data for one level: pivot words and a reducer.

    The basis consists of the pivot columns of the pairing matrix.  Reduction
    of an arbitrary element (a combination of lowering words, possibly outside
    the band) solves for coordinates against the pivot signatures and then
    verifies the solution against every probe row; failure to verify means
    the element genuinely escapes the truncated span and raises
    :class:`TruncationOverflowError`.
    """

    def __init__(self, engine: DimensionEngine, level: int, band: int, raising_band: int):
        self.engine = engine
        self.level = level
        self.band = band
        self.raising_band = raising_band
        self.words = lowering_words(level, band)
        self.probes = raising_words(level, raising_band)
        gram = engine.gram(level, band, raising_band)
        self._gram_rows = gram.rows()
        rank, pivots = linalg.rank_with_pivots(self._gram_rows)
        self.rank = rank
        self.pivot_columns = list(pivots)
        self.basis_words = [self.words[j] for j in pivots]
        if rank:
            self._sig = [[row[j] for j in pivots] for row in self._gram_rows]
            transpose = [list(col) for col in zip(*self._sig)]
            _, self._row_sel = linalg.rank_with_pivots(transpose)
            self._row_inv = linalg.inverse([self._sig[i] for i in self._row_sel])
        else:
            self._sig, self._row_sel, self._row_inv = [], [], []

    def signature(self, elem: Element) -> list[Fraction]:
        return [self.engine.pair_element(u, elem) for u in self.probes]

    def reduce(self, elem: Element) -> list[Fraction]:
        """Coordinates of ``elem`` modulo the radical in the pivot basis."""
        sig = self.signature(elem)
        if self.rank == 0:
            if any(sig):
                raise TruncationOverflowError(
                    f"element escapes the rank-0 span at level {self.level}")
            return []
        coords = linalg.matvec(self._row_inv, [sig[i] for i in self._row_sel])
        check = linalg.matvec(self._sig, coords)
        if check != sig:
            raise TruncationOverflowError(
                f"element is inconsistent with band {self.band} at level {self.level}")
        return coords

    def lift(self, coords: list[Fraction]) -> Element:
        elem: Element = {}
        for c, w in zip(coords, self.basis_words):
            if c:
                elem[w] = elem.get(w, Fraction(0)) + c
        return elem


# -- functional-level wrappers -------------------------------------------


def act_raising_word(psi: ExpPolyFunctional, u: Word, w: Word) -> Fraction:
    """Vacuum coefficient of a raising word against a lowering word."""
    if word_degree(u) != -word_degree(w):
        raise PreconditionError("degree match",
                                "raising and lowering degrees must cancel")
    return DimensionEngine.for_functional(psi).pair(u, w)


def gram_matrix(psi: ExpPolyFunctional, n: int, params: TruncationParams) -> GramMatrix:
    return DimensionEngine.for_functional(psi).gram(n, params.band, params.raising_band)


def quotient_level_dim(psi: ExpPolyFunctional, n: int,
                       params: TruncationParams) -> DimensionReport:
    return DimensionEngine.for_functional(psi).dimension_report(n, params)


def lower_bound_witness(psi: ExpPolyFunctional, n: int, k: int) -> bool:
    return DimensionEngine.for_functional(psi).witness_independent(n, k)


def annihilator_polynomial(source, max_deg: int,
                           window: Optional[range] = None
                           ) -> Optional[tuple[int, LinearRecurrence]]:
    """A polynomial whose shifts annihilate the weight sequence, if any.

    Accepts a functional or a raw sequence.  The returned pair is a shift
    offset (any offset works, zero by convention) and the polynomial given by
    its coefficient tuple; coefficients coincide with the minimal detected
    recurrence.  Returns None when no polynomial of the allowed degree exists
    (in particular for the identically zero sequence).
    """
    if max_deg < 1:
        raise PreconditionError("max degree >= 1")
    if isinstance(source, ExpPolyFunctional):
        f = f_sequence(source)
    elif isinstance(source, FSequence):
        f = source
    else:
        f = FSequence(source)
    if window is None:
        window = range(-2 * max_deg - 2, 2 * max_deg + 3)
    detection = detect_recurrence(f, max_order=max_deg, window=window)
    if detection.recurrence is None:
        return None
    return 0, detection.recurrence


def upper_bound_from_annihilator(psi: ExpPolyFunctional, level: int,
                                 poly: LinearRecurrence,
                                 params: TruncationParams) -> int:
    """Bound for the next level: cube-power degree growth times this level.

    The certified chain multiplies the annihilator degree by three per level,
    so level ``l + 1`` is bounded by ``3**(l+1) * deg * dim(level l)``.  The
    zero functional yields the zero bound at every level.
    """
    if psi.is_zero():
        return 0
    engine = DimensionEngine.for_functional(psi)
    dim_l = engine.level_rank(level, params.band, params.raising_band)
    return (3 ** (level + 1)) * poly.order * dim_l


def lowest_weight_mirror(psi: ExpPolyFunctional, n: int,
                         params: TruncationParams) -> DimensionReport:
    """Dimensions of the lowest-weight companion at depth ``n`` above."""
    return DimensionEngine.for_functional(psi).mirror().dimension_report(n, params)

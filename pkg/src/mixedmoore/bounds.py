"""Mixed Moore bounds and closed-form feasibility filters.

The level recurrence is the value of record; the closed form is evaluated
exactly in Q(sqrt(v)) and only used to cross-check it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class LevelCounts:
    """Moore tree level sizes: ``edge_ended[i]`` vertices reached by a final edge, ``arc_ended[i]`` by a final arc."""

    edge_ended: tuple[int, ...]
    arc_ended: tuple[int, ...]

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(a + b for a, b in zip(self.edge_ended, self.arc_ended))


def level_counts(r: int, z: int, k: int) -> LevelCounts:
    if r < 0 or z < 0 or k < 0:
        raise ValueError("r, z, k must be non-negative")
    a, b = [0], [0]
    if k >= 1:
        a.append(r)
        b.append(z)
    for _ in range(2, k + 1):
        ai, bi = a[-1], b[-1]
        a.append((r - 1) * ai + r * bi)
        b.append(z * (ai + bi))
    # level 0 is the root itself
    a[0], b[0] = 1, 0
    return LevelCounts(tuple(a), tuple(b))


def moore_bound(r: int, z: int, k: int) -> tuple[int, LevelCounts]:
    """Exact M(r, z, k) from the level recurrence, with the levels."""
    levels = level_counts(r, z, k)
    return sum(levels.sizes), levels


def moore_bound_k2(r: int, z: int) -> int:
    return (r + z) ** 2 + z + 1


def is_proper_parameters(r: int, z: int) -> bool:
    """False for r = 0 or z = 0 (pure digraph / pure graph bounds)."""
    return r >= 1 and z >= 1


# exact closed form ------------------------------------------------------


@dataclass(frozen=True)
class Surd:
    """``a + b*sqrt(d)`` with rational a, b and a fixed non-square d > 0."""

    a: Fraction
    b: Fraction
    d: int

    def _lift(self, other) -> Surd:
        if isinstance(other, Surd):
            if other.d != self.d:
                raise ValueError("mixing different radicands")
            return other
        return Surd(Fraction(other), Fraction(0), self.d)

    def __add__(self, other) -> Surd:
        o = self._lift(other)
        return Surd(self.a + o.a, self.b + o.b, self.d)

    __radd__ = __add__

    def __neg__(self) -> Surd:
        return Surd(-self.a, -self.b, self.d)

    def __sub__(self, other) -> Surd:
        return self + (-self._lift(other))

    def __rsub__(self, other) -> Surd:
        return self._lift(other) - self

    def __mul__(self, other) -> Surd:
        o = self._lift(other)
        return Surd(self.a * o.a + self.b * o.b * self.d, self.a * o.b + self.b * o.a, self.d)

    __rmul__ = __mul__

    def conjugate(self) -> Surd:
        return Surd(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        return self.a * self.a - self.b * self.b * self.d

    def __truediv__(self, other) -> Surd:
        o = self._lift(other)
        nrm = o.norm()
        if nrm == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt(d))")
        num = self * o.conjugate()
        return Surd(num.a / nrm, num.b / nrm, self.d)

    def __pow__(self, e: int) -> Surd:
        result = Surd(Fraction(1), Fraction(0), self.d)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def is_rational(self) -> bool:
        return self.b == 0

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * math.sqrt(self.d)


@dataclass(frozen=True)
class MooreBoundTerms:
    """Closed-form ingredients. ``u1``, ``u2``, ``A``, ``B`` are exact (Surd or Fraction)."""

    r: int
    z: int
    k: int
    discriminant: int
    u1: object
    u2: object
    A: object
    B: object
    closed_form: Fraction | None
    recurrence: int
    skipped: str | None = None

    @property
    def agrees(self) -> bool | None:
        if self.closed_form is None:
            return None
        return self.closed_form == self.recurrence


def discriminant(r: int, z: int) -> int:
    return (z + r) ** 2 + 2 * (z - r) + 1


def moore_bound_terms(r: int, z: int, k: int) -> MooreBoundTerms:
    """Evaluate the closed form exactly and compare it with the recurrence.

    When ``v`` is a perfect square (only for r = 0 or z = 0) the roots are
    rational; if one of them equals 1 the geometric sum degenerates and the
    point is recorded as skipped.
    """
    v = discriminant(r, z)
    rec, _ = moore_bound(r, z, k)
    s = math.isqrt(v)
    if s * s == v:
        sq = Fraction(s)
        u1 = (Fraction(z + r - 1) - sq) / 2
        u2 = (Fraction(z + r - 1) + sq) / 2
        A = (sq - (z + r + 1)) / (2 * sq)
        B = (sq + (z + r + 1)) / (2 * sq)
        if u1 == 1 or u2 == 1:
            return MooreBoundTerms(r, z, k, v, u1, u2, A, B, None, rec, skipped="root equal to 1")
        total = A * (u1 ** (k + 1) - 1) / (u1 - 1) + B * (u2 ** (k + 1) - 1) / (u2 - 1)
        return MooreBoundTerms(r, z, k, v, u1, u2, A, B, total, rec)
    root = Surd(Fraction(0), Fraction(1), v)
    u1 = (Surd(Fraction(z + r - 1), Fraction(0), v) - root) / 2
    u2 = (Surd(Fraction(z + r - 1), Fraction(0), v) + root) / 2
    A = (root - (z + r + 1)) / (root * 2)
    B = (root + (z + r + 1)) / (root * 2)
    total = A * ((u1 ** (k + 1)) - 1) / (u1 - 1) + B * ((u2 ** (k + 1)) - 1) / (u2 - 1)
    if not total.is_rational():
        raise ArithmeticError(f"closed form left an irrational part at {(r, z, k)}")
    return MooreBoundTerms(r, z, k, v, u1, u2, A, B, total.a, rec)


# filters ------------------------------------------------------------------


def fibonacci(i: int) -> int:
    """Fibonacci numbers indexed so that F(0) = F(1) = 1, F(2) = 2."""
    a, b = 1, 1
    for _ in range(i):
        a, b = b, a + b
    return a


def order_11k(k: int) -> tuple[int, bool]:
    """Order of a (1,1,k;-1)-graph and whether that order is even.

    An out-regular graph with undirected degree 1 has a perfect matching, so
    an odd order rules the graph out.
    """
    if k < 2:
        raise ValueError("k must be >= 2")
    order = fibonacci(k + 3) - 3
    return order, order % 2 == 0


@dataclass(frozen=True)
class SpectralVerdict:
    z: int
    n: int
    sqrt_4n_plus_9: int
    eigenvalue_sums: tuple[Fraction, Fraction, Fraction, Fraction]
    infeasible: bool


def spectral_infeasibility_defect1(z: int) -> SpectralVerdict:
    """Trace test for a non-totally-regular (2, z, 2; -1)-graph.

    With n = z^2 + 5z + 4 the adjacency spectrum is pinned down except for
    signs, and the trace must vanish; the four possible eigenvalue sums are
    returned. A zero among them would leave room for such a graph.
    """
    if z < 1:
        raise ValueError("z must be >= 1")
    n = z * z + 5 * z + 4
    root = 2 * z + 5
    if 4 * n + 9 != root * root:
        raise ArithmeticError("4n + 9 is not the expected square")
    lam1_options = (Fraction(-1 + root, 2), Fraction(-1 - root, 2))  # z + 2, -z - 3
    lam2_options = (Fraction(0), Fraction(-1))
    # the n - 2 golden-ratio eigenvalues split evenly between signs
    rest = Fraction(-(n - 2), 2)
    sums = tuple(l1 + l2 + rest for l1 in lam1_options for l2 in lam2_options)
    return SpectralVerdict(z, n, root, sums, all(s != 0 for s in sums))

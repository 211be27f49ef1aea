"""Separable metric spaces with an injective enumerated dense subset.

Three kinds ship: a finite space given by a rational distance matrix, the unit
interval and the unit cube ``[0, 1]^d``.  Points of the two continuous kinds are
dyadic rationals, so every distance comparison is exact.  For those kinds the
comparison token is the *squared* Euclidean distance; squaring preserves order
and ties, which is all the delegate recursion needs.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterator, NamedTuple, Sequence, Union

from ._rational import DEFAULT_SNAP_LEVEL, parse_number, snap

ENUMERATIONS = ("canonical", "block_swap")


class SpaceError(ValueError):
    """Invalid space configuration or a point that does not belong to a space."""


class EnumerationExhausted(IndexError):
    """A finite enumeration was asked for an index past its last point."""


@dataclass(frozen=True, slots=True)
class FiniteElement:
    id: int


@dataclass(frozen=True, slots=True)
class DyadicScalar:
    """The dyadic rational ``numerator / 2**level`` in ``[0, 1]``, canonical form."""

    numerator: int
    level: int

    def __post_init__(self):
        if self.level < 0:
            raise SpaceError("negative dyadic level")
        if self.level > 0 and self.numerator % 2 == 0:
            raise SpaceError(f"non-canonical dyadic {self.numerator}/2^{self.level}")
        if not 0 <= self.numerator <= (1 << self.level):
            raise SpaceError(f"dyadic {self.numerator}/2^{self.level} outside [0, 1]")

    @classmethod
    def of(cls, numerator: int, level: int) -> "DyadicScalar":
        """Build from a possibly non-canonical pair."""
        if numerator == 0:
            return cls(0, 0)
        tz = (numerator & -numerator).bit_length() - 1
        shift = min(tz, level)
        return cls(numerator >> shift, level - shift)

    @classmethod
    def from_fraction(cls, q: Fraction, level: int = DEFAULT_SNAP_LEVEL) -> "DyadicScalar":
        """Exact if ``q`` is dyadic, otherwise snapped to ``2**-level``."""
        den = q.denominator
        if den & (den - 1):
            q = snap(q, level)
            den = q.denominator
        return cls.of(q.numerator, den.bit_length() - 1)

    @property
    def value(self) -> Fraction:
        return Fraction(self.numerator, 1 << self.level)

    def __str__(self):
        if self.level == 0:
            return str(self.numerator)
        return f"{self.numerator}/2^{self.level}"


@dataclass(frozen=True, slots=True)
class DyadicVector:
    coords: tuple
    # (common level, numerators at that level), precomputed for the token hot path
    fixed: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        m = max((c.level for c in self.coords), default=0)
        object.__setattr__(self, "fixed", (m, tuple(c.numerator << (m - c.level) for c in self.coords)))

    def __str__(self):
        return ",".join(str(c) for c in self.coords)


Point = Union[FiniteElement, DyadicScalar, DyadicVector]


class Distance(NamedTuple):
    token: Fraction
    value: float


def sqrt_upper(q: Fraction, bits: int = 40) -> Fraction:
    """A rational ``>= sqrt(q)``; exact whenever ``q`` is a perfect square."""
    rn, rd = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd)
    scale = 1 << bits
    scaled = q * scale * scale
    root = math.isqrt(math.ceil(scaled))
    if root * root < scaled:
        root += 1
    return Fraction(root, scale)


def _block_swap(i: int, size: int | None) -> int:
    if i == 1:
        return 1
    j = i + 1 if i % 2 == 0 else i - 1
    if size is not None and j > size:
        return i
    return j


class Space:
    """Common machinery: enumeration cache, permutation, threshold tokens."""

    kind: str = ""
    size: int | None = None
    squared_tokens: bool = True

    def __init__(self, enumeration: str = "canonical", snap_level: int = DEFAULT_SNAP_LEVEL):
        if enumeration not in ENUMERATIONS:
            raise SpaceError(f"unknown enumeration {enumeration!r}")
        self.enumeration = enumeration
        self.snap_level = snap_level
        self._cache: list = []
        self._lock = threading.Lock()

    # enumeration -------------------------------------------------------
    def _canonical(self, i: int) -> Point:
        raise NotImplementedError

    def _fill(self, upto: int) -> None:
        raise NotImplementedError

    def canonical_index(self, i: int) -> int:
        """Position in the canonical order of the ``i``-th enumerated point."""
        if self.enumeration == "block_swap":
            return _block_swap(i, self.size)
        return i

    def dense_point(self, i: int) -> Point:
        if i < 1:
            raise ValueError("enumeration indices start at 1")
        if self.size is not None and i > self.size:
            raise EnumerationExhausted(f"finite enumeration has {self.size} points, asked for {i}")
        j = self.canonical_index(i)
        cache = self._cache
        if j > len(cache):
            with self._lock:
                self._fill(j)
        return cache[j - 1]

    def dense_prefix(self, n: int) -> list:
        """[r_1, ..., r_n] (truncated at the end of a finite enumeration)."""
        if self.size is not None:
            n = min(n, self.size)
        if n < 1:
            return []
        self.dense_point(n)
        if self.enumeration == "canonical":
            return self._cache[:n]
        return [self.dense_point(i) for i in range(1, n + 1)]

    def covering_prefix(self, n: int) -> int:
        """Smallest prefix length of this enumeration containing canonical points 1..n."""
        if self.enumeration == "block_swap" and n >= 2 and n % 2 == 0:
            n += 1
        if self.size is not None:
            n = min(n, self.size)
        return n

    # metric ------------------------------------------------------------
    def token(self, x: Point, y: Point) -> Fraction:
        raise NotImplementedError

    def eps_token(self, eps) -> Fraction:
        """Token threshold equivalent to ``sigma < eps``."""
        eps = Fraction(eps)
        return eps * eps if self.squared_tokens else eps

    def sigma_upper(self, tok: Fraction) -> Fraction:
        """Rational upper bound on the distance encoded by ``tok``."""
        return sqrt_upper(tok) if self.squared_tokens else Fraction(tok)

    def sigma_float(self, tok: Fraction) -> float:
        return math.sqrt(tok) if self.squared_tokens else float(tok)

    def grid_depth(self, eps) -> int:
        """Canonical depth N whose first N points form a net of covering radius < eps/2."""
        raise NotImplementedError

    # points ------------------------------------------------------------
    def check_point(self, x: Point) -> None:
        raise NotImplementedError

    def parse_point(self, text) -> Point:
        raise NotImplementedError

    def format_point(self, x: Point) -> str:
        return str(x)

    def random_point(self, rng) -> Point:
        raise NotImplementedError

    def describe(self) -> dict:
        return {"kind": self.kind, "enumeration": self.enumeration}


class FiniteSpace(Space):
    kind = "finite"
    squared_tokens = False

    def __init__(self, names: Sequence[str], matrix, **kw):
        super().__init__(**kw)
        names = [str(n) for n in names]
        n = len(names)
        if n < 1:
            raise SpaceError("finite space needs at least one point")
        if len(set(names)) != n:
            raise SpaceError("duplicate point names in finite space")
        if len(matrix) != n or any(len(row) != n for row in matrix):
            raise SpaceError(f"distance matrix must be {n}x{n}")
        d = [[parse_number(v, self.snap_level) for v in row] for row in matrix]
        for i in range(n):
            if d[i][i] != 0:
                raise SpaceError(f"nonzero diagonal at {names[i]}")
            for j in range(i + 1, n):
                if d[i][j] != d[j][i]:
                    raise SpaceError(f"asymmetric distance between {names[i]} and {names[j]}")
                if d[i][j] <= 0:
                    raise SpaceError(f"nonpositive distance between {names[i]} and {names[j]}")
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    if d[i][k] > d[i][j] + d[j][k]:
                        raise SpaceError(
                            f"triangle inequality violated: d({names[i]},{names[k]}) > "
                            f"d({names[i]},{names[j]}) + d({names[j]},{names[k]})")
        self.names = names
        self.matrix = d
        self.size = n
        self._index = {name: i for i, name in enumerate(names)}
        self._cache = [FiniteElement(i) for i in range(n)]

    def _fill(self, upto):
        pass

    def token(self, x, y):
        return self.matrix[x.id][y.id]

    def grid_depth(self, eps):
        return self.size

    def check_point(self, x):
        if not isinstance(x, FiniteElement) or not 0 <= x.id < self.size:
            raise SpaceError(f"{x!r} is not a point of this finite space")

    def parse_point(self, text):
        if isinstance(text, FiniteElement):
            self.check_point(text)
            return text
        try:
            return FiniteElement(self._index[str(text).strip()])
        except KeyError:
            raise SpaceError(f"no point named {text!r}") from None

    def format_point(self, x):
        return self.names[x.id]

    def random_point(self, rng):
        return FiniteElement(rng.randrange(self.size))

    def describe(self):
        return {**super().describe(), "points": list(self.names)}


class IntervalSpace(Space):
    """``[0, 1]``: r_1 = 0, r_2 = 1, then odd j/2^k by level k and increasing j."""

    kind = "interval"

    def _canonical(self, i):
        if i == 1:
            return DyadicScalar(0, 0)
        if i == 2:
            return DyadicScalar(1, 0)
        k = (i - 2).bit_length()
        j = 2 * ((i - 2) - (1 << (k - 1))) + 1
        return DyadicScalar(j, k)

    def _fill(self, upto):
        cache = self._cache
        for i in range(len(cache) + 1, upto + 1):
            cache.append(self._canonical(i))

    def token(self, x, y):
        a, k = x.numerator, x.level
        b, l = y.numerator, y.level
        if k >= l:
            d, m = a - (b << (k - l)), k
        else:
            d, m = (a << (l - k)) - b, l
        return Fraction(d * d, 1 << (2 * m))

    def grid_depth(self, eps):
        # the level-k grid (2^k + 1 points) has covering radius 2^-(k+1)
        k = _grid_level(Fraction(eps), 1)
        return (1 << k) + 1

    def check_point(self, x):
        if not isinstance(x, DyadicScalar):
            raise SpaceError(f"{x!r} is not a point of the interval")

    def parse_point(self, text):
        if isinstance(text, DyadicScalar):
            return text
        q = parse_number(text, self.snap_level)
        if not 0 <= q <= 1:
            raise SpaceError(f"{text!r} lies outside [0, 1]")
        return DyadicScalar.from_fraction(q, self.snap_level)

    def random_point(self, rng):
        return DyadicScalar.of(rng.randrange((1 << self.snap_level) + 1), self.snap_level)


class EuclidSpace(Space):
    """The unit cube ``[0, 1]^d`` enumerated breadth-first by dyadic level."""

    kind = "euclid"

    def __init__(self, dim: int, **kw):
        super().__init__(**kw)
        if dim < 1:
            raise SpaceError("euclid space needs dim >= 1")
        self.dim = dim
        self._gen = _euclid_order(dim)

    def _fill(self, upto):
        cache = self._cache
        while len(cache) < upto:
            cache.append(next(self._gen))

    def token(self, x, y):
        (k, xs), (l, ys) = x.fixed, y.fixed
        if len(xs) != len(ys):
            raise SpaceError("dimension mismatch")
        if k < l:
            (k, xs), (l, ys) = (l, ys), (k, xs)
        sh = k - l
        total = 0
        for a, b in zip(xs, ys):
            d = a - (b << sh)
            total += d * d
        return Fraction(total, 1 << (2 * k))

    def grid_depth(self, eps):
        k = _grid_level(Fraction(eps), self.dim)
        return ((1 << k) + 1) ** self.dim

    def check_point(self, x):
        if not isinstance(x, DyadicVector) or len(x.coords) != self.dim:
            raise SpaceError(f"{x!r} is not a point of [0,1]^{self.dim}")

    def parse_point(self, text):
        if isinstance(text, DyadicVector):
            self.check_point(text)
            return text
        parts = text.strip().strip("()[]").split(",") if isinstance(text, str) else list(text)
        if len(parts) != self.dim:
            raise SpaceError(f"expected {self.dim} coordinates, got {len(parts)}")
        coords = []
        for p in parts:
            q = parse_number(p.strip() if isinstance(p, str) else p, self.snap_level)
            if not 0 <= q <= 1:
                raise SpaceError(f"coordinate {p!r} lies outside [0, 1]")
            coords.append(DyadicScalar.from_fraction(q, self.snap_level))
        return DyadicVector(tuple(coords))

    def random_point(self, rng):
        top = (1 << self.snap_level) + 1
        return DyadicVector(tuple(DyadicScalar.of(rng.randrange(top), self.snap_level)
                                  for _ in range(self.dim)))

    def describe(self):
        return {**super().describe(), "dim": self.dim}


def _grid_level(eps: Fraction, dim: int) -> int:
    # smallest k with sqrt(dim) * 2^-k < eps: two points sharing a nearest grid
    # point are then closer than eps
    k = 0
    while dim >= eps * eps * (1 << (2 * k)):
        k += 1
    return k


def _euclid_order(dim: int) -> Iterator[DyadicVector]:
    for nums in product((0, 1), repeat=dim):
        yield DyadicVector(tuple(DyadicScalar(n, 0) for n in nums))
    k = 1
    while True:
        for nums in product(range((1 << k) + 1), repeat=dim):
            if any(n & 1 for n in nums):
                yield DyadicVector(tuple(DyadicScalar.of(n, k) for n in nums))
        k += 1


def make_space(config) -> Space:
    """Build a space from a config mapping (the JSON SpaceConfig document).

    ``{"kind": "finite", "points": [...], "distances": [[...]]}``,
    ``{"kind": "interval"}`` or ``{"kind": "euclid", "dim": 2}``; optional keys
    ``enumeration`` (``canonical`` | ``block_swap``) and ``snap_level``.
    """
    if isinstance(config, str):
        config = {"kind": config}
    kind = config.get("kind")
    kw = {"enumeration": config.get("enumeration", "canonical"),
          "snap_level": int(config.get("snap_level", DEFAULT_SNAP_LEVEL))}
    if kind == "finite":
        if "points" not in config or "distances" not in config:
            raise SpaceError("finite space needs 'points' and 'distances'")
        return FiniteSpace(config["points"], config["distances"], **kw)
    if kind == "interval":
        return IntervalSpace(**kw)
    if kind == "euclid":
        return EuclidSpace(int(config.get("dim", 2)), **kw)
    raise SpaceError(f"unknown space kind {kind!r}")


def distance(s: Space, x: Point, y: Point) -> Distance:
    """Exact comparison token for sigma(x, y) plus a float for display."""
    tok = s.token(x, y)
    return Distance(tok, s.sigma_float(tok))


def dense_point(s: Space, i: int) -> Point:
    return s.dense_point(i)


def sample_points(s: Space, rng, count: int) -> list:
    """Random points mixing enumerated points, midpoints between them (exact ties)
    and fine-grid points."""
    if s.size is not None:
        return [s.random_point(rng) for _ in range(count)]
    out = []
    for _ in range(count):
        u = rng.random()
        if u < 0.2:
            out.append(s.dense_point(rng.randrange(1, 65)))
        elif u < 0.35:
            a = s.dense_point(rng.randrange(1, 65))
            b = s.dense_point(rng.randrange(1, 65))
            out.append(_midpoint(a, b))
        else:
            out.append(s.random_point(rng))
    return out


def _midpoint(a: Point, b: Point) -> Point:
    if isinstance(a, DyadicScalar):
        return DyadicScalar.from_fraction((a.value + b.value) / 2)
    return DyadicVector(tuple(DyadicScalar.from_fraction((p.value + q.value) / 2)
                              for p, q in zip(a.coords, b.coords)))



__all__ = [
    "ENUMERATIONS", "Distance", "DyadicScalar", "DyadicVector", "EnumerationExhausted",
    "EuclidSpace", "FiniteElement", "FiniteSpace", "IntervalSpace", "Point", "Space",
    "SpaceError", "dense_point", "distance", "make_space",
    "sample_points", "sqrt_upper",
]

"""Delegate functions f_n over a dense enumeration.

f_1(x) = r_1, and f_n(x) keeps f_{n-1}(x) unless r_n is *strictly* closer to x.
Delegates are carried as enumeration indices: the enumeration is injective, so
index equality is point equality.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction

from .base_space import Point, Space

DEFAULT_IMAX = 1 << 16


def default_imax() -> int:
    env = os.environ.get("SCOREMETRIC_BUDGET_IMAX")
    return int(env) if env else DEFAULT_IMAX


class PreconditionError(ValueError):
    pass


class BudgetExhausted(RuntimeError):
    """A bounded search for an enumeration index ran past its budget."""


class DelegateStream:
    """Lazily extended indices of f_1(x), f_2(x), ... for one point.

    Once the current delegate is at distance 0 (x itself was enumerated) or a
    finite enumeration runs out, no later candidate can win and the stream
    freezes.
    """

    __slots__ = ("space", "x", "_indices", "_best", "frozen")

    def __init__(self, space: Space, x: Point):
        self.space = space
        self.x = x
        self._indices = [1]
        self._best = space.token(x, space.dense_point(1))
        self.frozen = self._best == 0 or space.size == 1

    @property
    def best_token(self) -> Fraction:
        """Token of the latest computed delegate."""
        return self._best

    def extend(self, n: int) -> None:
        idx = self._indices
        if self.frozen or len(idx) >= n:
            return
        space, x = self.space, self.x
        token, dense = space.token, space.dense_point
        size = space.size
        best = self._best
        cur = idx[-1]
        k = len(idx)
        while k < n:
            k += 1
            if size is not None and k > size:
                self.frozen = True
                break
            t = token(x, dense(k))
            if t < best:
                best, cur = t, k
            idx.append(cur)
            if best == 0:
                self.frozen = True
                break
        self._best = best

    def __getitem__(self, n: int) -> int:
        if n < 1:
            raise IndexError("delegates are indexed from 1")
        self.extend(n)
        idx = self._indices
        return idx[n - 1] if n <= len(idx) else idx[-1]

    def prefix(self, n: int) -> tuple:
        self.extend(n)
        idx = self._indices
        if n <= len(idx):
            return tuple(idx[:n])
        return tuple(idx) + (idx[-1],) * (n - len(idx))

    def computed(self) -> int:
        """Depth through which indices are stored explicitly."""
        return len(self._indices)


@dataclass(frozen=True)
class DelegateSignature:
    point: Point
    indices: tuple

    @property
    def N(self) -> int:
        return len(self.indices)

    def __str__(self):
        return ",".join(map(str, self.indices))


def parse_signature(text: str) -> tuple:
    return tuple(int(p) for p in text.split(","))


def delegate_index(s: Space, x: Point, n: int) -> int:
    return DelegateStream(s, x)[n]


def signature(s: Space, x: Point, N: int) -> DelegateSignature:
    if N < 1:
        raise ValueError("signature length must be >= 1")
    return DelegateSignature(x, DelegateStream(s, x).prefix(N))


def brute_nearest_prefix(s: Space, x: Point, n: int) -> int:
    """Smallest i <= n minimising sigma(x, r_i), by direct scan."""
    if n < 1:
        raise ValueError("n must be >= 1")
    pts = s.dense_prefix(n)
    token = s.token
    best_i, best_t = 1, token(x, pts[0])
    for i in range(2, len(pts) + 1):
        t = token(x, pts[i - 1])
        if t < best_t:
            best_i, best_t = i, t
    return best_i


def first_close_index(s: Space, x: Point, threshold: Fraction, imax: int) -> int | None:
    """Smallest i <= imax with token(x, r_i) < threshold."""
    limit = imax if s.size is None else min(imax, s.size)
    for i in range(1, limit + 1):
        if s.token(x, s.dense_point(i)) < threshold:
            return i
    return None


def separation_index(s: Space, x: Point, y: Point, eps, imax: int | None = None) -> int:
    """Depth N past which the delegates of x and y never coincide.

    Requires sigma(x, y) >= eps.  N = max(m, n) with r_m, r_n the first
    enumerated points within eps/2 of x and y respectively.
    """
    eps = Fraction(eps)
    if eps <= 0:
        raise PreconditionError("eps must be positive")
    if s.token(x, y) < s.eps_token(eps):
        raise PreconditionError("separation_index needs sigma(x, y) >= eps")
    imax = default_imax() if imax is None else imax
    half = s.eps_token(eps / 2)
    m = first_close_index(s, x, half, imax)
    n = first_close_index(s, y, half, imax)
    if m is None or n is None:
        raise BudgetExhausted(f"no enumerated point within eps/2 among the first {imax}")
    return max(m, n)


def first_disagreement(sx: DelegateStream, sy: DelegateStream, after: int, imax: int) -> int | None:
    """Smallest n in (after, imax] with f_n(x) != f_n(y), or None."""
    n = after + 1
    while n <= imax:
        if sx[n] != sy[n]:
            return n
        if sx.frozen and sy.frozen and n >= max(sx.computed(), sy.computed()):
            return None
        n += 1
    return None


def agreement_depth(s: Space, eps) -> int:
    """Depth N at which f_N(x) = f_N(y) forces sigma(x, y) < eps, for every x, y.

    Valid for the shipped (totally bounded) kinds: the prefix contains a full
    dyadic grid fine enough that sharing a nearest grid point pins both points
    within eps of each other.
    """
    return s.covering_prefix(s.grid_depth(eps))


def pair_separation_depth(s: Space, x: Point, y: Point, imax: int) -> int | None:
    """separation_index at eps = the largest power of two not exceeding sigma(x, y).

    None when x = y or when the depth lies beyond ``imax``.
    """
    tok = s.token(x, y)
    if tok == 0:
        return None
    eps = Fraction(1)
    while s.eps_token(eps) > tok:
        eps /= 2
    try:
        return separation_index(s, x, y, eps, imax)
    except BudgetExhausted:
        return None

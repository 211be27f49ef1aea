"""The scoring metric rho(x, y) = sum_i tau_{a_i}(f_i(x), f_i(y)).

Delegates may disagree arbitrarily late, so rho is exposed as a certified
interval [S_N, S_N + T(N)] where S_N is the truncated score and T(N) the weight
tail bound.  Finite spaces stabilise (every point is its own delegate once the
enumeration is exhausted), which makes rho exact there for geometric weights.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from ._rational import fmt_q, q_field
from .base_space import FiniteSpace, Point, Space, sample_points
from .delegates import DelegateStream, default_imax, first_disagreement, pair_separation_depth
from .reports import CheckResult, Report
from .weights import WeightSequence

DEFAULT_TOL = Fraction(1, 1 << 20)
DEFAULT_NMAX = 1 << 12
START_DEPTH = 16

_ZERO = Fraction(0)


def tau(a: Fraction, i_x: int, i_y: int) -> Fraction:
    """Trivial metric with value ``a`` on distinct delegate indices."""
    return a if i_x != i_y else _ZERO


@dataclass(frozen=True)
class RhoInterval:
    lower: Fraction
    upper: Fraction
    depth: int
    converged: bool

    @property
    def width(self) -> Fraction:
        return self.upper - self.lower

    @property
    def exact(self) -> bool:
        return self.lower == self.upper

    def __contains__(self, v) -> bool:
        return self.lower <= v <= self.upper

    def to_dict(self) -> dict:
        return {**q_field("lower", self.lower), **q_field("upper", self.upper),
                "depth": self.depth, "converged": self.converged}


class PairScore:
    """Running truncated score S_N for one pair of delegate streams.

    Remembers S at every depth it finished an extension on, so repeated interval
    queries along the doubling schedule cost nothing after the first.
    """

    def __init__(self, w: WeightSequence, sx: DelegateStream, sy: DelegateStream):
        self.w, self.sx, self.sy = w, sx, sy
        self.depth = 0
        self.score = _ZERO
        self._at = {0: _ZERO}

    def _direct(self, n: int) -> Fraction:
        sx, sy, w = self.sx, self.sy, self.w
        return sum((w.value(i) for i in range(1, n + 1) if sx[i] != sy[i]), _ZERO)

    def score_at(self, n: int, ceiling: Fraction | None = None) -> tuple[int, Fraction]:
        """Advance to depth ``n`` (or stop early once S >= ceiling); return (depth, S)."""
        if n in self._at:
            return n, self._at[n]
        if n < self.depth:
            s = self._direct(n)
            self._at[n] = s
            return n, s
        sx, sy, w = self.sx, self.sy, self.w
        d, s = self.depth, self.score
        if sx is sy:
            d = n
        while d < n:
            if ceiling is not None and s >= ceiling:
                break
            if sx.frozen and sy.frozen and d >= max(sx.computed(), sy.computed()):
                if sx[d + 1] == sy[d + 1]:
                    d = n
                    break
                if w.exact_tails:
                    s += w.tail_upper(d) - w.tail_upper(n)
                    d = n
                    break
            d += 1
            if sx[d] != sy[d]:
                s += w.value(d)
        self.depth, self.score = d, s
        self._at[d] = s
        return d, s

    def interval(self, tol: Fraction = DEFAULT_TOL, n_max: int = DEFAULT_NMAX,
                 ceiling: Fraction | None = None) -> RhoInterval:
        """Doubling schedule 16, 32, ... until the tail is within ``tol`` or ``n_max``.

        With ``ceiling`` set the caller only asks whether ``upper < ceiling``;
        evaluation stops as soon as the answer is certainly no.
        """
        w = self.w
        n = min(START_DEPTH, n_max)
        if ceiling is not None and w.tail_upper(n_max) >= ceiling:
            n_max = n
        while True:
            d, s = self.score_at(n, ceiling)
            tail = w.tail_upper(d)
            if d < n or tail <= tol or n >= n_max:
                return RhoInterval(s, s + tail, d, tail <= tol)
            n = min(2 * n, n_max)


def _pair(s: Space, w: WeightSequence, x: Point, y: Point) -> PairScore:
    sx = DelegateStream(s, x)
    sy = sx if x == y else DelegateStream(s, y)
    return PairScore(w, sx, sy)


def partial_score(s: Space, w: WeightSequence, x: Point, y: Point, N: int) -> Fraction:
    """S_N(x, y), the score truncated after N terms."""
    if N < 1:
        raise ValueError("depth must be >= 1")
    sx, sy = DelegateStream(s, x), DelegateStream(s, y)
    return sum((tau(w.value(i), sx[i], sy[i]) for i in range(1, N + 1)), _ZERO)


def rho_interval(s: Space, w: WeightSequence, x: Point, y: Point,
                 tol=DEFAULT_TOL, n_max: int = DEFAULT_NMAX) -> RhoInterval:
    tol = Fraction(tol)
    if tol <= 0:
        raise ValueError("tol must be positive")
    return _pair(s, w, x, y).interval(tol, n_max)


def rho_exact_finite(s: Space, w: WeightSequence, x: Point, y: Point) -> RhoInterval:
    """Exact rho on a finite space, returned as a degenerate interval.

    Past depth n = |X| every delegate is the point itself, so distinct points
    disagree at every later term and rho = S_n + T(n).  Geometric tails are
    exact; for p_series the tail is only bracketed and the interval is not
    degenerate.
    """
    if not isinstance(s, FiniteSpace):
        raise TypeError("rho_exact_finite needs a finite space")
    n0 = s.size
    _, score = _pair(s, w, x, y).score_at(n0)
    if x == y:
        return RhoInterval(score, score, n0, True)
    lo, hi = score + w.tail_lower(n0), score + w.tail_upper(n0)
    return RhoInterval(lo, hi, n0, lo == hi)


def axiom_suite(s: Space, w: WeightSequence, sample_count: int = 1000, seed: int = 0,
                depth: int = 64, imax: int | None = None) -> Report:
    """Check the metric axioms for S_N on random triples.

    Positivity of distinct points is a bounded search for a disagreeing delegate
    (up to ``imax``).  A pair whose guaranteed separation depth lies beyond the
    budget and shows no disagreement is reported as unresolved; below the budget
    a missing disagreement is a violation.
    """
    imax = default_imax() if imax is None else imax
    rng = random.Random(seed)
    pts = sample_points(s, rng, 3 * sample_count)
    a = [w.value(i) for i in range(1, depth + 1)]

    identity = CheckResult("identity", depth)
    positivity = CheckResult("positivity", depth)
    symmetry = CheckResult("symmetry", depth)
    term = CheckResult("triangle_term", depth)
    triangle = CheckResult("triangle", depth)

    def score(p, q):
        return sum((tau(a[i], p[i], q[i]) for i in range(depth)), _ZERO)

    for t in range(sample_count):
        x, y, z = pts[3 * t:3 * t + 3]
        streams = [DelegateStream(s, p) for p in (x, y, z)]
        sig = [st.prefix(depth) for st in streams]
        fx, fy, fz = sig
        wit = {"x": s.format_point(x), "y": s.format_point(y), "z": s.format_point(z)}

        identity.trials += 1
        again = DelegateStream(s, x).prefix(depth)
        if score(fx, again) != 0:
            identity.violate(**wit)

        for (p, q, sp, sq) in ((x, y, 0, 1), (y, z, 1, 2), (x, z, 0, 2)):
            if p == q:
                continue
            positivity.trials += 1
            if score(sig[sp], sig[sq]) > 0:
                continue
            n = first_disagreement(streams[sp], streams[sq], depth, imax)
            if n is not None:
                continue
            pw = {"x": s.format_point(p), "y": s.format_point(q)}
            if pair_separation_depth(s, p, q, imax) is None:
                positivity.unresolved += 1
                positivity.info.setdefault("not_separated_within_budget", []).append(pw)
            else:
                positivity.violate(**pw)

        symmetry.trials += 1
        sxy, syx = score(fx, fy), score(fy, fx)
        syz, sxz = score(fy, fz), score(fx, fz)
        if sxy != syx or syz != score(fz, fy):
            symmetry.violate(**wit)

        term.trials += 1
        for i in range(depth):
            if tau(a[i], fx[i], fy[i]) + tau(a[i], fy[i], fz[i]) < tau(a[i], fx[i], fz[i]):
                term.violate(**wit, i=i + 1)
                break

        triangle.trials += 1
        if sxy + syz < sxz:
            triangle.violate(**wit, rho_xy=fmt_q(sxy), rho_yz=fmt_q(syz), rho_xz=fmt_q(sxz))

    header = {"space": s.describe(), "weights": w.to_dict(), "seed": seed,
              "rng": "random.Random", "samples": sample_count, "N": depth, "imax": imax}
    return Report("axiom_suite", header, [identity, positivity, symmetry, term, triangle])

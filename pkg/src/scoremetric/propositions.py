"""Finite-scale checks of the delegate properties on sampled points."""

from __future__ import annotations

import random
from fractions import Fraction

from .base_space import Space, sample_points
from .delegates import (DelegateStream, PreconditionError, default_imax, first_disagreement,
                        pair_separation_depth, separation_index)
from .reports import CheckResult, Report


def _tokens(s: Space, x, n: int):
    """Tokens to r_1..r_n and to f_1(x)..f_n(x), 1-based lists."""
    st = DelegateStream(s, x)
    limit = n if s.size is None else min(n, s.size)
    to_r = [None] + [s.token(x, s.dense_point(i)) for i in range(1, limit + 1)]
    to_r += [None] * (n - limit)
    to_f = [None] + [s.token(x, s.dense_point(st[i])) for i in range(1, n + 1)]
    return to_r, to_f


def check_min_identity(s: Space, points, depth: int = 64) -> CheckResult:
    """token(x, f_n(x)) == min(token(x, f_{n-1}(x)), token(x, r_n)) exactly."""
    res = CheckResult("min_identity", depth)
    for x in points:
        to_r, to_f = _tokens(s, x, depth)
        res.trials += 1
        if to_f[1] != to_r[1]:
            res.violate(x=s.format_point(x), n=1)
            continue
        for n in range(2, depth + 1):
            expect = to_f[n - 1] if to_r[n] is None else min(to_f[n - 1], to_r[n])
            if to_f[n] != expect:
                res.violate(x=s.format_point(x), n=n)
                break
    return res


def check_monotone(s: Space, points, depth: int = 64) -> CheckResult:
    """For all 1 <= b <= a <= depth: token(x, f_a(x)) <= token(x, r_b)."""
    res = CheckResult("monotone", depth)
    for x in points:
        to_r, to_f = _tokens(s, x, depth)
        res.trials += 1
        # the inequality for every b <= a is the inequality against the running minimum
        run_min, arg = None, 0
        for a in range(1, depth + 1):
            if to_r[a] is not None and (run_min is None or to_r[a] < run_min):
                run_min, arg = to_r[a], a
            if to_f[a] > run_min:
                res.violate(x=s.format_point(x), a=a, b=arg)
                break
    return res


def check_delegate_convergence(s: Space, points, exps=range(1, 9), imax: int | None = None,
                               window: int = 256) -> CheckResult:
    """sigma(x, f_n(x)) drops below each eps = 2^-k and stays there.

    Levels whose covering grid does not fit in ``imax`` enumerated points are
    skipped and listed in the result info.
    """
    imax = default_imax() if imax is None else imax
    exps = list(exps)
    reachable = [k for k in exps if s.covering_prefix(s.grid_depth(Fraction(2, 1 << k))) <= imax]
    res = CheckResult("delegate_convergence",
                      info={"eps": [f"2^-{k}" for k in reachable],
                            "skipped_beyond_budget": [f"2^-{k}" for k in exps if k not in reachable]})
    for x in points:
        st = DelegateStream(s, x)
        pending = list(reachable)
        hit = {}
        tok, prev = None, None
        last = imax
        for n in range(1, imax + 1):
            i = st[n]
            if i != prev:
                tok, prev = s.token(x, s.dense_point(i)), i
            for k in [k for k in pending if tok < s.eps_token(Fraction(1, 1 << k))]:
                hit[k] = n
                pending.remove(k)
            for k, n0 in hit.items():
                if n <= n0 + window and tok >= s.eps_token(Fraction(1, 1 << k)):
                    res.violate(x=s.format_point(x), eps=f"2^-{k}", n=n, reason="rose above eps")
            if not pending:
                last = max(hit.values()) + window
            if n >= last or (st.frozen and n >= st.computed() and not pending):
                break
        res.trials += len(reachable)
        for k in pending:
            res.violate(x=s.format_point(x), eps=f"2^-{k}", reason="never below eps")
    return res


def check_disagreement(s: Space, pairs, N: int = 32, imax: int | None = None) -> CheckResult:
    """Distinct points have delegates that disagree somewhere in (N, imax].

    The first disagreement after N witnesses every smaller N as well.  A pair too
    close for its separation depth to fit in the budget is unresolved.
    """
    imax = default_imax() if imax is None else imax
    res = CheckResult("late_disagreement", N)
    for x, y in pairs:
        if x == y:
            continue
        res.trials += 1
        n = first_disagreement(DelegateStream(s, x), DelegateStream(s, y), N, imax)
        if n is not None:
            continue
        w = {"x": s.format_point(x), "y": s.format_point(y)}
        if pair_separation_depth(s, x, y, imax) is None:
            res.unresolved += 1
            res.info.setdefault("not_separated_within_budget", []).append(w)
        else:
            res.violate(**w)
    return res


def check_separation(s: Space, pairs, eps, window: int = 64, imax: int | None = None) -> CheckResult:
    """separation_index output N has f_j(x) != f_j(y) for every j in [N, N + window]."""
    eps = Fraction(eps)
    res = CheckResult("separation", info={"eps": str(eps), "window": window})
    for x, y in pairs:
        try:
            N = separation_index(s, x, y, eps, imax)
        except PreconditionError:
            continue
        res.trials += 1
        sx, sy = DelegateStream(s, x), DelegateStream(s, y)
        for j in range(N, N + window + 1):
            if sx[j] == sy[j]:
                res.violate(x=s.format_point(x), y=s.format_point(y), N=N, j=j)
                break
    return res


def separated_pairs(s: Space, rng, count: int, eps) -> list:
    """``count`` random pairs with sigma(x, y) >= eps."""
    thr = s.eps_token(eps)
    out = []
    for _ in range(100 * count):
        x, y = s.random_point(rng), s.random_point(rng)
        if s.token(x, y) >= thr:
            out.append((x, y))
            if len(out) == count:
                break
    return out


def proposition_suite(s: Space, sample_count: int = 200, seed: int = 0, depth: int = 64,
                      imax: int | None = None, sep_eps=Fraction(1, 8)) -> Report:
    """Min identity, monotonicity, delegate convergence, late disagreement, separation."""
    imax = default_imax() if imax is None else imax
    rng = random.Random(seed)
    pts = sample_points(s, rng, sample_count)
    pairs = list(zip(pts[::2], pts[1::2]))
    results = [
        check_min_identity(s, pts, depth),
        check_monotone(s, pts, depth),
        check_delegate_convergence(s, pts[:max(1, sample_count // 4)], imax=imax),
        check_disagreement(s, pairs, 32, imax),
    ]
    results.append(check_separation(s, separated_pairs(s, rng, 100, sep_eps), sep_eps, imax=imax))
    header = {"space": s.describe(), "seed": seed, "rng": "random.Random",
              "samples": sample_count, "N": depth, "imax": imax}
    return Report("propositions", header, results)

"""
Exact scores on a three point space
===================================

In a finite space every point becomes its own delegate once the enumeration
runs out, so the score series has a closed form tail.
"""

from scoremetric import make_space, make_weights, rho_exact_finite, rho_interval

s = make_space({"kind": "finite", "points": ["a", "b", "c"],
                "distances": [[0, 1, 2], [1, 0, 1], [2, 1, 0]]})
w = make_weights()  # a_n = 2^-n

for u, v in ("ab", "bc", "ac"):
    x, y = s.parse_point(u), s.parse_point(v)
    exact = rho_exact_finite(s, w, x, y)
    iv = rho_interval(s, w, x, y)
    print(f"rho({u},{v}) = {exact.lower}   certified [{iv.lower}, {iv.upper}] at depth {iv.depth}")

# p-series tails are only bracketed, so the same call returns a proper interval
ps = make_weights({"kind": "p_series", "p": 2})
print(rho_exact_finite(s, ps, s.parse_point("a"), s.parse_point("b")))

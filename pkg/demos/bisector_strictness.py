"""
A sequence that converges in sigma but not in rho
=================================================

x_m = 1/2 + 2^-m tends to 1/2, but every x_m takes r_2 = 1 as its second
delegate while 1/2 keeps r_1 = 0.  The score never drops below a_2.
"""

from scoremetric import make_space, make_weights, rho_interval
from scoremetric.convergence_lab import bisector_right, theorem_check

s = make_space("interval")
w = make_weights()
half = s.parse_point("1/2")

for m, x in enumerate(bisector_right(s, 10).points(s), 1):
    iv = rho_interval(s, w, x, half)
    print(f"m={m:2d}  sigma={float(x.value - half.value):.6f}  rho in [{float(iv.lower):.6f}, {float(iv.upper):.6f}]")

# the rho-to-sigma check treats this sequence as not rho-convergent, hence vacuous
r = theorem_check(s, w, bisector_right(s))
print(r.info["rho_convergent_at_test_scale"], r.info.get("note"))

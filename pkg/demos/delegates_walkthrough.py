"""
Delegates on the unit interval
==============================

Each point x gets a delegate f_n(x): the nearest of the first n enumerated
dyadic points, keeping the earlier one on ties.
"""

from scoremetric import brute_nearest_prefix, make_space, signature

s = make_space("interval")

# the enumeration: 0, 1, then the odd multiples of 2^-k level by level
print([str(s.dense_point(i)) for i in range(1, 10)])

x = s.parse_point("0.3")
sig = signature(s, x, 9)
print("signature of 0.3:", sig)

# the recursion agrees with a direct scan of the prefix
print(all(sig.indices[n - 1] == brute_nearest_prefix(s, x, n) for n in range(1, 10)))

# 1/2 is equidistant from r_1 = 0 and r_2 = 1, so f_2 stays at r_1
print("signature of 1/2:", signature(s, s.parse_point("1/2"), 5))

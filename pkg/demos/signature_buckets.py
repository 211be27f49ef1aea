"""
Bucketing points by signature prefix
====================================

Points that share their first L delegates score at most T(L) apart and lie
within twice the bucket radius of each other.
"""

import random

from scoremetric import bucket_bounds, build_index, make_space, make_weights, query

s = make_space({"kind": "euclid", "dim": 2})
w = make_weights()
rng = random.Random(0)
pts = [s.random_point(rng) for _ in range(200)]

for L in (2, 5, 8):
    idx = build_index(s, w, pts, L)
    sizes = sorted((len(b.members) for b in idx.buckets.values()), reverse=True)
    print(f"L={L}: {len(idx.buckets)} buckets, largest {sizes[:5]}")

idx = build_index(s, w, pts, 5)
sig = max(idx.buckets, key=lambda k: len(idx.buckets[k].members))
rho_up, sigma_up = bucket_bounds(idx, sig)
print("bucket", sig, "rho <=", rho_up, "sigma <=", float(sigma_up))

hit = query(idx, s.parse_point("1/3,1/3"))
print("query (1/3, 1/3):", hit.signature, len(hit.members), "members")

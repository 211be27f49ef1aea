"""Bucket a point set by length-L delegate signatures.

Two points in one bucket share f_1..f_L, so their score vanishes on the first
L terms and rho(x, y) <= T(L).  They also share the delegate r_j = f_L, which
bounds sigma(x, y) by the triangle through r_j.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from ._rational import fmt_q, parse_rational, q_field
from .base_space import Point, Space
from .delegates import DelegateStream, parse_signature
from .weights import WeightSequence


@dataclass
class Bucket:
    signature: tuple
    members: list = field(default_factory=list)
    radius_token: Fraction = Fraction(0)

    @property
    def delegate(self) -> int:
        return self.signature[-1]


@dataclass
class SignatureIndex:
    space: Space
    weights: WeightSequence
    L: int
    buckets: dict = field(default_factory=dict)

    def sigma_radius(self, sig: tuple) -> Fraction:
        """Exact (or rational upper bound on an irrational) bucket radius."""
        return self.space.sigma_upper(self.buckets[sig].radius_token)

    def __len__(self):
        return sum(len(b.members) for b in self.buckets.values())

    def dump(self) -> str:
        """JSON lines, one bucket per line, ordered by signature."""
        lines = []
        for sig in sorted(self.buckets):
            b = self.buckets[sig]
            lines.append(json.dumps({
                "sig": ",".join(map(str, sig)), "members": b.members,
                "sigma_radius": fmt_q(self.sigma_radius(sig)),
                "sigma_radius_sq" if self.space.squared_tokens else "sigma_radius_exact":
                    fmt_q(b.radius_token),
            }, sort_keys=True))
        return "\n".join(lines) + ("\n" if lines else "")


@dataclass(frozen=True)
class QueryResult:
    signature: tuple
    members: list
    rho_upper: Fraction
    sigma_upper: Fraction

    def to_dict(self) -> dict:
        return {"sig": ",".join(map(str, self.signature)), "members": self.members,
                **q_field("rho_upper", self.rho_upper), **q_field("sigma_upper", self.sigma_upper)}


def build_index(s: Space, w: WeightSequence, points, L: int) -> SignatureIndex:
    if L < 1:
        raise ValueError("prefix length L must be >= 1")
    idx = SignatureIndex(s, w, L)
    for pid, x in enumerate(points):
        sig = DelegateStream(s, x).prefix(L)
        b = idx.buckets.get(sig)
        if b is None:
            b = idx.buckets[sig] = Bucket(sig)
        b.members.append(pid)
        t = s.token(x, s.dense_point(sig[-1]))
        if t > b.radius_token:
            b.radius_token = t
    return idx


def query(idx: SignatureIndex, x: Point) -> QueryResult:
    s = idx.space
    sig = DelegateStream(s, x).prefix(idx.L)
    rho_up = idx.weights.tail_upper(idx.L)
    b = idx.buckets.get(sig)
    if b is None:
        return QueryResult(sig, [], rho_up, Fraction(0))
    to_delegate = s.sigma_upper(s.token(x, s.dense_point(sig[-1])))
    return QueryResult(sig, list(b.members), rho_up, to_delegate + idx.sigma_radius(sig))


def bucket_bounds(idx: SignatureIndex, sig) -> tuple[Fraction, Fraction]:
    """(rho upper, sigma upper) for any two members of the bucket."""
    sig = tuple(sig)
    if sig not in idx.buckets:
        raise KeyError(f"unknown signature {','.join(map(str, sig))}")
    return idx.weights.tail_upper(idx.L), 2 * idx.sigma_radius(sig)


def load_index(text: str, s: Space, w: WeightSequence, L: int | None = None) -> SignatureIndex:
    """Rebuild an index from its JSON-lines dump."""
    buckets = {}
    for line in text.splitlines():
        if not line.strip():
            continue
        rec = json.loads(line)
        sig = parse_signature(rec["sig"])
        tok_key = "sigma_radius_sq" if s.squared_tokens else "sigma_radius_exact"
        if tok_key in rec:
            tok = parse_rational(rec[tok_key])
        else:
            r = parse_rational(rec["sigma_radius"])
            tok = r * r if s.squared_tokens else r
        buckets[sig] = Bucket(sig, list(rec["members"]), tok)
    lengths = {len(sig) for sig in buckets}
    if L is None:
        if len(lengths) != 1:
            raise ValueError("cannot infer L from the dump")
        L = lengths.pop()
    elif lengths and lengths != {L}:
        raise ValueError(f"dump signatures do not have length {L}")
    return SignatureIndex(s, w, L, buckets)

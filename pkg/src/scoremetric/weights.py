"""Nonincreasing positive summable weight sequences with certified tails."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from ._rational import fmt_q, parse_rational


class WeightError(ValueError):
    pass


@dataclass(frozen=True)
class WeightSequence:
    """``geometric``: a_n = c q^(n-1).  ``p_series``: a_n = c / n^p with integer p >= 2.

    All values and tail bounds are exact rationals.
    """

    kind: str
    c: Fraction
    q: Fraction = Fraction(0)
    p: int = 0

    def __post_init__(self):
        if self.c <= 0:
            raise WeightError("weight scale c must be positive")
        if self.kind == "geometric":
            if not 0 < self.q < 1:
                raise WeightError("geometric weights need 0 < q < 1")
        elif self.kind == "p_series":
            if self.p <= 1:
                raise WeightError("p_series weights need p > 1")
        else:
            raise WeightError(f"unknown weight kind {self.kind!r}")

    def value(self, n: int) -> Fraction:
        if n < 1:
            raise ValueError("weights are indexed from 1")
        return _value(self, n)

    def tail_upper(self, n: int) -> Fraction:
        """Upper bound on sum_{i > n} a_i (exact for geometric weights)."""
        if n < 0:
            raise ValueError("tail index must be >= 0")
        if self.kind == "geometric":
            return self.c * self.q ** n / (1 - self.q)
        if n == 0:
            return self.c * (1 + Fraction(1, self.p - 1))
        return self.c / ((self.p - 1) * Fraction(n) ** (self.p - 1))

    def tail_lower(self, n: int) -> Fraction:
        """Lower bound on the same tail (integral comparison for p_series)."""
        if self.kind == "geometric":
            return self.tail_upper(n)
        return self.c / ((self.p - 1) * Fraction(n + 1) ** (self.p - 1))

    @property
    def exact_tails(self) -> bool:
        return self.kind == "geometric"

    def to_dict(self) -> dict:
        if self.kind == "geometric":
            return {"kind": "geometric", "c": fmt_q(self.c), "q": fmt_q(self.q)}
        return {"kind": "p_series", "p": self.p, "c": fmt_q(self.c)}


@lru_cache(maxsize=4096)
def _value(w: WeightSequence, n: int) -> Fraction:
    if w.kind == "geometric":
        return w.c * w.q ** (n - 1)
    return w.c / Fraction(n) ** w.p


def make_weights(spec=None) -> WeightSequence:
    """Build from a JSON-style spec; ``None`` gives the default a_n = 2^-n."""
    if spec is None:
        spec = {"kind": "geometric"}
    if isinstance(spec, WeightSequence):
        return spec
    if isinstance(spec, str):
        spec = {"kind": spec}
    kind = spec.get("kind", "geometric")
    try:
        if kind == "geometric":
            return WeightSequence("geometric", parse_rational(spec.get("c", "1/2")),
                                  q=parse_rational(spec.get("q", "1/2")))
        if kind == "p_series":
            p = parse_rational(spec.get("p", 2))
            if p.denominator != 1:
                raise WeightError("p_series exponent must be an integer to keep weights rational")
            return WeightSequence("p_series", parse_rational(spec.get("c", 1)), p=int(p))
    except ValueError as exc:
        raise WeightError(str(exc)) from exc
    raise WeightError(f"unknown weight kind {kind!r}")


def weight_value(w: WeightSequence, n: int) -> Fraction:
    return w.value(n)


def tail_upper(w: WeightSequence, n: int) -> Fraction:
    return w.tail_upper(n)

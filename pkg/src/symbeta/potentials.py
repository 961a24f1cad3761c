"""Potential functions on the shift space.

A potential is evaluated on (enough leading digits of) a point of the
shift.  Supported kinds:

- ``zero``:        A = 0
- ``digit_table``: A(x) = c[x(1)], one value per first digit
- ``block_table``: A(x) = table[x(1..k)], one value per admissible k-word
- ``geometric``:   A(x) = c * sum_{j<=kmax} theta^(j-1) x(j), 0 < theta < 1/2

Each kind carries a Holder exponent alpha (with respect to the shift
metric d = 2^(1-n)) and a Holder constant bounding the variation over
depth-n cylinders by holder_const * 2^(-alpha*(n-1)).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .sequences import Word


@dataclass(frozen=True)
class PotentialSpec:
    kind: str
    digit_values: tuple[float, ...] = ()
    block_k: int = 0
    block_values: Mapping[Word, float] | None = None
    geo_c: float = 0.0
    geo_theta: float = 0.25
    geo_kmax: int = 12
    alpha: float = field(default=1.0)
    holder_const: float = field(default=0.0)

    # -- constructors --------------------------------------------------

    @staticmethod
    def zero() -> "PotentialSpec":
        return PotentialSpec(kind="zero", alpha=1.0, holder_const=0.0)

    @staticmethod
    def digit_table(values: Sequence[float], alpha: float = 1.0) -> "PotentialSpec":
        vals = tuple(float(v) for v in values)
        spread = max(vals) - min(vals) if vals else 0.0
        return PotentialSpec(kind="digit_table", digit_values=vals,
                             alpha=alpha, holder_const=spread)

    @staticmethod
    def block_table(k: int, table: Mapping[Sequence[int], float],
                    alpha: float = 1.0) -> "PotentialSpec":
        tbl = {tuple(w): float(v) for w, v in table.items()}
        if any(len(w) != k for w in tbl):
            raise ValueError(f"block_table keys must have length {k}")
        vals = list(tbl.values())
        spread = (max(vals) - min(vals)) if vals else 0.0
        # variation can persist down to depth k: scale so that
        # spread <= C * 2^(-alpha (k-1)) holds
        const = spread * 2.0 ** (alpha * (k - 1))
        return PotentialSpec(kind="block_table", block_k=k, block_values=tbl,
                             alpha=alpha, holder_const=const)

    @staticmethod
    def geometric(c: float, theta: float = 0.25, kmax: int = 12,
                  m_hint: int = 4) -> "PotentialSpec":
        if not (0.0 < theta < 0.5):
            raise ValueError("theta must lie in (0, 1/2)")
        alpha = -math.log2(theta)
        const = abs(c) * m_hint * theta / (1.0 - theta)
        return PotentialSpec(kind="geometric", geo_c=float(c), geo_theta=float(theta),
                             geo_kmax=int(kmax), alpha=alpha, holder_const=const)

    # -- evaluation ----------------------------------------------------

    @property
    def needed_digits(self) -> int:
        """How many leading digits of a point the evaluation reads."""
        if self.kind == "zero":
            return 0
        if self.kind == "digit_table":
            return 1
        if self.kind == "block_table":
            return self.block_k
        return self.geo_kmax

    def value(self, digits: Sequence[int]) -> float:
        """Evaluate at a point given by its leading digits (1-based order)."""
        if self.kind == "zero":
            return 0.0
        if self.kind == "digit_table":
            return self.digit_values[digits[0]]
        if self.kind == "block_table":
            key = tuple(digits[:self.block_k])
            if self.block_values is None or key not in self.block_values:
                raise KeyError(f"block_table has no value for {key}")
            return self.block_values[key]
        c, theta, kmax = self.geo_c, self.geo_theta, self.geo_kmax
        acc = 0.0
        w = 1.0
        for j in range(min(kmax, len(digits))):
            acc += w * digits[j]
            w *= theta
        return c * acc

    def sup_norm_bound(self, m: int) -> float:
        """Upper bound on |A| over the shift."""
        if self.kind == "zero":
            return 0.0
        if self.kind == "digit_table":
            return max(abs(v) for v in self.digit_values)
        if self.kind == "block_table":
            return max(abs(v) for v in self.block_values.values())
        return abs(self.geo_c) * m / (1.0 - self.geo_theta)

    def is_reflection_symmetric(self, m: int) -> bool:
        if self.kind == "zero":
            return True
        if self.kind == "digit_table":
            return all(abs(self.digit_values[a] - self.digit_values[m - a]) < 1e-15
                       for a in range(m + 1))
        return False

    def describe(self) -> str:
        if self.kind == "zero":
            return "zero"
        if self.kind == "digit_table":
            return "digit_table:" + ",".join(repr(v) for v in self.digit_values)
        if self.kind == "block_table":
            items = sorted(self.block_values.items())
            body = ",".join("".join(map(str, w)) + "=" + repr(v) for w, v in items)
            return f"block_table:{self.block_k}:{body}"
        return (f"geometric:c={self.geo_c!r},theta={self.geo_theta!r},"
                f"kmax={self.geo_kmax}")


def parse_potential(text: str) -> PotentialSpec:
    """Parse the CLI potential string format (inverse of ``describe``)."""
    text = text.strip()
    if text == "zero" or text == "":
        return PotentialSpec.zero()
    head, _, rest = text.partition(":")
    if head == "digit_table":
        values = [float(v) for v in rest.split(",") if v != ""]
        if not values:
            raise ValueError("digit_table needs at least one value")
        return PotentialSpec.digit_table(values)
    if head == "block_table":
        kpart, _, body = rest.partition(":")
        k = int(kpart)
        table = {}
        for item in body.split(","):
            if not item:
                continue
            w, _, v = item.partition("=")
            table[tuple(int(ch) for ch in w)] = float(v)
        return PotentialSpec.block_table(k, table)
    if head == "geometric":
        kv = dict(item.split("=", 1) for item in rest.split(",") if item)
        return PotentialSpec.geometric(
            c=float(kv.get("c", "1.0")),
            theta=float(kv.get("theta", "0.25")),
            kmax=int(kv.get("kmax", "12")),
        )
    raise ValueError(f"unknown potential kind {head!r}")


def estimate_holder_variation(spec: PotentialSpec, words_by_depth, point_of) -> list[tuple[int, float]]:
    """Measured max variation of A over cylinders of each depth.

    ``words_by_depth`` maps n to an iterable of same-prefix word groups;
    ``point_of`` maps a word to the digit string A is evaluated on.  Used
    by tests to verify the Holder bound holder_const * 2^(-alpha (n-1)).
    """
    out = []
    for n, groups in words_by_depth.items():
        worst = 0.0
        for group in groups:
            vals = [spec.value(point_of(w)) for w in group]
            if len(vals) > 1:
                worst = max(worst, max(vals) - min(vals))
        out.append((n, worst))
    return out

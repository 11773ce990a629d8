"""Lipschitz functions vanishing at the base point.

A function is a full value vector, one entry per point.  Where an
operation only looks at ``M \\ A`` the entries inside A are ignored.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .metric import MetricSpace, members, to_mask
from .rational import fmt, to_fraction


class PreconditionError(ValueError):
    """An input violates a documented precondition; ``witness`` names it."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


@dataclass(frozen=True)
class LipFunction:
    values: tuple

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))

    def __len__(self):
        return len(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def __add__(self, other):
        return LipFunction(a + b for a, b in zip(self.values, _vals(other)))

    def __sub__(self, other):
        return LipFunction(a - b for a, b in zip(self.values, _vals(other)))

    def __neg__(self):
        return LipFunction(-a for a in self.values)

    def __mul__(self, c):
        return LipFunction(c * a for a in self.values)

    __rmul__ = __mul__

    def __truediv__(self, c):
        return LipFunction(a / c for a in self.values)

    @classmethod
    def zeros(cls, space: MetricSpace) -> "LipFunction":
        return cls([Fraction(0)] * space.n)

    @classmethod
    def from_labels(cls, space: MetricSpace, values: dict) -> "LipFunction":
        out = [Fraction(0)] * space.n
        for label, v in values.items():
            out[space.index(label)] = to_fraction(v)
        f = cls(out)
        check_function(space, f)
        return f

    def to_json(self, space: MetricSpace) -> dict:
        return {"values": {space.labels[i]: fmt(v) for i, v in enumerate(self.values)}}

    @classmethod
    def from_json(cls, space: MetricSpace, doc: dict) -> "LipFunction":
        try:
            vals = doc["values"]
        except (KeyError, TypeError) as exc:
            raise ValueError("function document needs a 'values' object") from exc
        return cls.from_labels(space, vals)


def _vals(f):
    return f.values if isinstance(f, LipFunction) else tuple(f)


def check_function(space: MetricSpace, f) -> tuple:
    vals = _vals(f)
    if len(vals) != space.n:
        raise ValueError(f"function has {len(vals)} values, space has {space.n} points")
    if vals[space.base] != 0:
        raise ValueError(f"function must vanish at the base point {space.labels[space.base]}")
    return vals


def lip_norm(space: MetricSpace, f) -> Fraction:
    """Best Lipschitz constant, scanning every ordered pair."""
    vals = check_function(space, f)
    d = space.dist
    best = 0
    for i in range(space.n):
        for j in range(space.n):
            if i != j:
                q = abs(vals[i] - vals[j]) / d[i][j]
                if q > best:
                    best = q
    return best if not isinstance(best, int) else Fraction(best)


def restricted_norm(space: MetricSpace, f, points: Sequence[int]):
    """Lipschitz constant of f on a subset; returns (value, maximizing pair)."""
    vals = _vals(f)
    best, arg = Fraction(0), None
    for i in points:
        for j in points:
            if i != j:
                q = abs(vals[i] - vals[j]) / space.dist[i][j]
                if q > best:
                    best, arg = q, (i, j)
    return best, arg


def de_leeuw(space: MetricSpace, f) -> dict:
    """``{(x, y): (f(x) - f(y)) / d(x, y)}`` over all of M~."""
    vals = check_function(space, f)
    return {(i, j): (vals[i] - vals[j]) / space.dist[i][j] for i, j in space.ordered_pairs()}


def eval_functional(space: MetricSpace, mu, f):
    """Pairing of a finitely supported functional with a function."""
    vals = _vals(f)
    if len(vals) != space.n:
        raise ValueError("function does not live on this space")
    total = 0
    for i, c in mu.coeffs.items():
        if not 0 <= i < space.n:
            raise ValueError(f"functional supported at unknown point {i}")
        total += c * vals[i]
    return to_fraction(total) if isinstance(total, int) else total


def fltp_inequality_gap(space, A_out, u, v, h, delta):
    """Smallest ``d(x,u) + d(y,v) - (h(y) - h(x)) - (1-delta) d(u,v)`` over x, y off A.

    This is the FLTP inequality for ``-h / (1-delta)``, which is the form
    the extension needs.  Returns (gap, minimizing (x, y)).
    """
    vals = _vals(h)
    d = space.dist
    target = (1 - delta) * d[u][v]
    best, arg = None, None
    for x in A_out:
        for y in A_out:
            gap = d[x][u] + d[y][v] - (vals[y] - vals[x]) - target
            if best is None or gap < best:
                best, arg = gap, (x, y)
    return best, arg


def extend_fltp(space: MetricSpace, A, u, v, h, delta) -> LipFunction:
    """Extend h from ``M \\ A`` to a norm-one function with a large u-v slope.

    ``f(u)`` is the inf-convolution ``min_x h(x) + d(x,u)`` over x off A; every
    other point y of A gets ``max_x f(x) - d(x,y)`` over x in ``(M \\ A) + {u}``.
    Requires the base point outside A, ``||h|| <= 1 - delta`` on ``M \\ A``
    and ``(1-delta) d(u,v) - (h(x) - h(y)) <= d(x,u) + d(y,v)`` for x, y off A.
    Then ``||f|| <= 1`` and ``f(u) - f(v) >= (1-delta) d(u,v)``.
    """
    mask = to_mask(space, A)
    u, v = space.index(u), space.index(v)
    delta = to_fraction(delta)
    vals = list(_vals(h))
    if len(vals) != space.n:
        raise ValueError("h has the wrong length")
    if u == v:
        raise PreconditionError("u and v must differ", (u, v))
    if not (mask[u] and mask[v]):
        raise PreconditionError("u and v must lie in A", (u, v))
    if mask[space.base]:
        raise PreconditionError("the base point must lie outside A", (space.base,))
    if not 0 <= delta <= 1:
        raise PreconditionError("delta must lie in [0, 1]", (delta,))
    outside = [i for i in range(space.n) if not mask[i]]
    if vals[space.base] != 0:
        raise PreconditionError("h must vanish at the base point", (space.base,))
    norm, pair = restricted_norm(space, vals, outside)
    if norm > 1 - delta:
        raise PreconditionError(f"||h|| = {fmt(norm)} on M\\A exceeds 1 - delta", pair)
    gap, pair = fltp_inequality_gap(space, outside, u, v, vals, delta)
    if gap < 0:
        raise PreconditionError("FLTP inequality fails", pair)
    d = space.dist
    f = list(vals)
    f[u] = min(vals[x] + d[x][u] for x in outside)
    source = outside + [u]
    for y in members(mask):
        if y != u:
            f[y] = max(f[x] - d[x][y] for x in source)
    return LipFunction(f)


def rs_split(space: MetricSpace, A, u, v, h_list, delta):
    """Budgets r0, s0 at u and v and a split r + s = (1-delta) d(u,v).

    r0 is half the least ``d(x,u) + d(y,u) - (h_i(x) - h_i(y))`` over x, y
    off A and all i, s0 the same at v.  Raises PreconditionError naming the
    minimizing quadruple when ``r0 + s0 < (1-delta) d(u,v)``.
    """
    mask = to_mask(space, A)
    u, v = space.index(u), space.index(v)
    delta = to_fraction(delta)
    outside = [i for i in range(space.n) if not mask[i]]
    if not outside:
        raise PreconditionError("M \\ A is empty")
    d = space.dist
    hs = [_vals(h) for h in h_list] or [(Fraction(0),) * space.n]

    def budget(p):
        best, arg = None, None
        for i, h in enumerate(hs):
            for x in outside:
                for y in outside:
                    val = d[x][p] + d[y][p] - (h[x] - h[y])
                    if best is None or val < best:
                        best, arg = val, (x, y, i)
        return best / 2, arg

    r0, (x, y, i) = budget(u)
    s0, (z, w, j) = budget(v)
    total = (1 - delta) * d[u][v]
    if r0 + s0 < total:
        raise PreconditionError(
            f"r0 + s0 = {fmt(r0 + s0)} < (1-delta) d(u,v) = {fmt(total)}",
            {"x": x, "y": y, "z": z, "w": w, "i": i, "j": j},
        )
    r = min(r0, total)
    s = total - r
    return r0, s0, r, s

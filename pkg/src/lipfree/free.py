"""Finitely supported elements of the Lipschitz-free space.

The norm is computed two independent ways: as the LP supremum of the
pairing over the Lipschitz unit ball, and as a minimum-cost transshipment
in which the base point absorbs whatever mass does not balance (its Dirac
functional is zero).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import networkx as nx

from .lipschitz import LipFunction
from .lp import LinearProgram, solve
from .metric import MetricSpace, essential_pairs
from .rational import fmt, to_fraction


@dataclass
class FreeVector:
    """``sum_x coeffs[x] delta_x`` with point indices as keys."""

    coeffs: dict = field(default_factory=dict)

    def __post_init__(self):
        self.coeffs = {int(i): to_fraction(c) for i, c in self.coeffs.items() if c}

    def __add__(self, other):
        out = dict(self.coeffs)
        for i, c in other.coeffs.items():
            out[i] = out.get(i, 0) + c
        return FreeVector(out)

    def __neg__(self):
        return FreeVector({i: -c for i, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        c = to_fraction(c)
        return FreeVector({i: c * v for i, v in self.coeffs.items()})

    __rmul__ = __mul__

    def __truediv__(self, c):
        return self * (1 / to_fraction(c))

    def on(self, space: MetricSpace) -> "FreeVector":
        """Check the support and drop the base coefficient."""
        for i in self.coeffs:
            if not 0 <= i < space.n:
                raise ValueError(f"support point {i} not in the space")
        return FreeVector({i: c for i, c in self.coeffs.items() if i != space.base})

    def is_zero(self, space: MetricSpace) -> bool:
        return not self.on(space).coeffs

    def to_json(self, space: MetricSpace) -> dict:
        return {"coeffs": {space.labels[i]: fmt(c) for i, c in sorted(self.coeffs.items())}}

    @classmethod
    def from_json(cls, space: MetricSpace, doc: dict) -> "FreeVector":
        try:
            coeffs = doc["coeffs"]
        except (KeyError, TypeError) as exc:
            raise ValueError("functional document needs a 'coeffs' object") from exc
        return cls({space.index(k): to_fraction(v) for k, v in coeffs.items()})


def delta(space: MetricSpace, x) -> FreeVector:
    return FreeVector({space.index(x): 1}).on(space)


def molecule(space: MetricSpace, x, y) -> FreeVector:
    x, y = space.index(x), space.index(y)
    if x == y:
        raise ValueError("a molecule needs two different points")
    w = 1 / space.dist[x][y]
    return FreeVector({x: w, y: -w}).on(space)


def average_molecules(space: MetricSpace, pairs) -> FreeVector:
    """Uniform average of molecules; the finite stand-in for a limit functional."""
    pairs = list(pairs)
    if not pairs:
        raise ValueError("need at least one pair")
    total = FreeVector()
    for x, y in pairs:
        total = total + molecule(space, x, y)
    return total / len(pairs)


def lipschitz_ball_lp(space: MetricSpace, n_funcs: int = 1, pairs=None) -> LinearProgram:
    """LP over ``n_funcs`` functions with one 1-Lipschitz row per pair direction.

    Variable ``k * (n-1) + pos`` is the value of function k at the pos-th
    non-base point.  Rows use the essential pairs unless ``pairs`` is given.
    """
    var = point_vars(space)
    nb = space.n - 1
    lp = LinearProgram(nb * n_funcs)
    for k in range(n_funcs):
        for p, q in pairs if pairs is not None else essential_pairs(space):
            _lip_row(lp, space, var, {k: 1}, p, q, nb)
    return lp


def point_vars(space: MetricSpace) -> dict:
    """Point index -> position among the non-base points."""
    return {p: pos for pos, p in enumerate(space.nonbase())}


def _lip_row(lp, space, var, combo, p, q, nb, bound=None):
    """Rows ``+-(F(p) - F(q)) <= d(p,q)`` for F = sum combo[k] * f_k."""
    d = bound if bound is not None else space.dist[p][q]
    for sign in (1, -1):
        coeffs = {}
        for k, c in combo.items():
            if p in var:
                coeffs[k * nb + var[p]] = coeffs.get(k * nb + var[p], 0) + sign * c
            if q in var:
                coeffs[k * nb + var[q]] = coeffs.get(k * nb + var[q], 0) - sign * c
        lp.add(coeffs, "<=", d)


def functional_coeffs(space: MetricSpace, mu: FreeVector, k: int = 0) -> dict:
    var = point_vars(space)
    nb = space.n - 1
    return {k * nb + var[i]: c for i, c in mu.on(space).coeffs.items()}


def unpack(space: MetricSpace, x, k: int = 0) -> LipFunction:
    nb = space.n - 1
    vals = [Fraction(0)] * space.n
    for pos, p in enumerate(space.nonbase()):
        vals[p] = x[k * nb + pos]
    return LipFunction(vals)


def norming_function(space: MetricSpace, mu: FreeVector, mode: str = "exact"):
    """``(||mu||, f)`` with f in the unit ball attaining the pairing."""
    mu = mu.on(space)
    lp = lipschitz_ball_lp(space)
    lp.set_objective(functional_coeffs(space, mu))
    out = solve(lp, mode=mode)
    if out.status != "optimal":
        raise RuntimeError(f"norm LP ended {out.status}; it is always feasible and bounded")
    return out.value, unpack(space, out.x)


def free_norm(space: MetricSpace, mu: FreeVector, method: str = "lp", mode: str = "exact"):
    """Kantorovich-Rubinstein norm of a finitely supported functional."""
    if method == "lp":
        return norming_function(space, mu, mode)[0]
    if method == "flow":
        return flow_norm(space, mu)
    raise ValueError(f"unknown method {method!r}")


def flow_norm(space: MetricSpace, mu: FreeVector) -> Fraction:
    """Min-cost transshipment over all ordered pairs, base absorbing the excess.

    Data are scaled to integers so the network simplex runs exactly.
    """
    mu = mu.on(space)
    if not mu.coeffs:
        return Fraction(0)
    scale_mu = math.lcm(*(c.denominator for c in mu.coeffs.values()))
    scale_d = math.lcm(*(space.dist[i][j].denominator for i, j in space.ordered_pairs()))
    g = nx.DiGraph()
    total = 0
    for p in space.points():
        supply = int(mu.coeffs.get(p, 0) * scale_mu)
        total += supply
        g.add_node(p, demand=-supply)
    g.nodes[space.base]["demand"] += total
    for i, j in space.ordered_pairs():
        g.add_edge(i, j, weight=int(space.dist[i][j] * scale_d))
    cost, _ = nx.network_simplex(g)
    return Fraction(cost, scale_mu * scale_d)


def normalize(space: MetricSpace, mu: FreeVector) -> FreeVector:
    mu = mu.on(space)
    if not mu.coeffs:
        raise ValueError("cannot normalize the zero functional")
    return mu / free_norm(space, mu)

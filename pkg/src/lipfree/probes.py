"""Slices of the Lipschitz unit ball and LP probes over them.

All optimization runs over the closed slice ``F(f) >= 1 - alpha``; an upper
bound certified there also holds on the open slice.  On a finite space
every weak* slice is a norm slice, so the two notions are not told apart.

The diameter of a slice (or of a convex combination of slices) is computed
pair by pair: ``||f - g||`` is a maximum of difference quotients, and for a
fixed pair (p, q) the best ``f - g`` splits into an independent max and min
of ``f(p) - f(q)`` over the slice.  Only essential pairs (no point
metrically between them) need to be visited.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from fractions import Fraction

from .free import (
    FreeVector,
    _lip_row,
    functional_coeffs,
    lipschitz_ball_lp,
    normalize,
    point_vars,
    unpack,
)
from .lipschitz import LipFunction, eval_functional, lip_norm
from .lp import LinearProgram, max_slack, solve
from .metric import MetricSpace, essential_pairs
from .rational import fmt, to_fraction

FINITE_NOTE = "finite space: weak* slices and norm slices coincide"


@dataclass(frozen=True)
class Slice:
    """``{f in B : F(f) > 1 - alpha}`` (``>=`` when closed), F of norm one."""

    functional: FreeVector
    alpha: Fraction
    closed: bool = False

    @classmethod
    def make(cls, space: MetricSpace, functional: FreeVector, alpha, closed: bool = False) -> "Slice":
        alpha = to_fraction(alpha)
        if alpha < 0:
            raise ValueError("alpha must be nonnegative")
        return cls(normalize(space, functional), alpha, closed)

    def contains(self, space: MetricSpace, f, closed=None) -> bool:
        closed = self.closed if closed is None else closed
        if lip_norm(space, f) > 1:
            return False
        val = eval_functional(space, self.functional, f)
        return val >= 1 - self.alpha if closed else val > 1 - self.alpha

    def to_json(self, space: MetricSpace) -> dict:
        doc = self.functional.to_json(space)
        doc.update(alpha=fmt(self.alpha), closed=self.closed)
        return doc

    @classmethod
    def from_json(cls, space: MetricSpace, doc: dict) -> "Slice":
        return cls.make(space, FreeVector.from_json(space, doc), doc["alpha"], bool(doc.get("closed", False)))


class EmptySlice(ValueError):
    pass


def _pairs(space, pairs):
    if pairs == "essential":
        return essential_pairs(space)
    if pairs == "all":
        return [(p, q) for p in range(space.n) for q in range(p + 1, space.n)]
    return list(pairs)


def _slice_lp(space: MetricSpace, S: Slice) -> LinearProgram:
    lp = lipschitz_ball_lp(space)
    lp.add(functional_coeffs(space, S.functional), ">=", 1 - S.alpha, "slice")
    return lp


def check_nonempty(space: MetricSpace, S: Slice):
    if S.closed:
        return
    if S.alpha <= 0:
        raise EmptySlice("an open slice with alpha = 0 is empty")
    lp = _slice_lp(space, S)
    res = max_slack(lp, [len(lp.constraints) - 1])
    if not res.satisfiable:
        raise EmptySlice("slice is empty")


def _direction(space, p, q):
    var = point_vars(space)
    coeffs = {}
    if p in var:
        coeffs[var[p]] = 1
    if q in var:
        coeffs[var[q]] = coeffs.get(var[q], 0) - 1
    return coeffs


class _Widths:
    """Max and min of ``f(p) - f(q)`` over one slice, cached per pair."""

    def __init__(self, space, S, mode):
        self.space = space
        self.base = _slice_lp(space, S)
        self.mode = mode
        self.cache = {}

    def __call__(self, p, q):
        key = (p, q)
        if key not in self.cache:
            direction = _direction(self.space, p, q)
            ends = []
            for sign in (1, -1):
                lp = LinearProgram(
                    self.base.num_vars,
                    {j: sign * c for j, c in direction.items()},
                    self.base.constraints,
                    self.base.bounds,
                )
                out = solve(lp, mode=self.mode)
                if out.status != "optimal":
                    raise EmptySlice(f"slice LP ended {out.status}")
                ends.append((sign * out.value, unpack(self.space, out.x)))
            (hi, f_hi), (lo, f_lo) = ends
            self.cache[key] = (hi, lo, f_hi, f_lo)
        return self.cache[key]


@dataclass
class DiameterResult:
    value: Fraction
    pair: tuple
    witnesses: list  # [(f_i, g_i)] one per slice
    table: list = field(default_factory=list)  # [(p, q, value)]
    note: str = FINITE_NOTE

    @property
    def f(self):
        return self.witnesses[0][0]

    @property
    def g(self):
        return self.witnesses[0][1]

    def to_json(self, space: MetricSpace) -> dict:
        return {
            "value": fmt(self.value),
            "pair": [space.labels[self.pair[0]], space.labels[self.pair[1]]],
            "witness": [
                {"f": f.to_json(space)["values"], "g": g.to_json(space)["values"]}
                for f, g in self.witnesses
            ],
            "mode": "exact",
            "note": self.note,
        }

    def table_csv(self, space: MetricSpace) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["p", "q", "value"])
        for p, q, v in self.table:
            w.writerow([space.labels[p], space.labels[q], fmt(v)])
        return buf.getvalue()


def combo_diameter(space: MetricSpace, slices, pairs="essential", mode="exact") -> DiameterResult:
    """Diameter of ``sum_i lambda_i S_i`` for ``slices = [(S_i, lambda_i)]``."""
    slices = [(S, to_fraction(lam)) for S, lam in slices]
    if not slices:
        raise ValueError("need at least one slice")
    if any(lam < 0 for _, lam in slices) or sum(lam for _, lam in slices) != 1:
        raise ValueError("weights must be nonnegative and sum to 1")
    for S, _ in slices:
        check_nonempty(space, S)
    widths = {}
    for S, _ in slices:
        if id(S) not in widths:
            widths[id(S)] = _Widths(space, S, mode)
    best = None
    table = []
    for p, q in _pairs(space, pairs):
        total = Fraction(0)
        for S, lam in slices:
            if lam:
                hi, lo, _, _ = widths[id(S)](p, q)
                total += lam * (hi - lo)
        value = total / space.dist[p][q]
        table.append((p, q, value))
        if best is None or value > best[0]:
            best = (value, (p, q))
    value, (p, q) = best
    wit = []
    for S, _ in slices:
        _, _, f_hi, f_lo = widths[id(S)](p, q)
        wit.append((f_hi, f_lo))
    return DiameterResult(value, (p, q), wit, table)


def slice_diameter(space: MetricSpace, S: Slice, pairs="essential", mode="exact") -> DiameterResult:
    """Diameter of one slice; witnesses f, g in S with ``||f - g||`` maximal."""
    return combo_diameter(space, [(S, 1)], pairs=pairs, mode=mode)


# --------------------------------------------------------------------------
# symmetric witnesses


@dataclass
class SSD2PResult:
    found: bool
    f_list: list = None
    g: LipFunction = None
    pair: tuple = None
    slack: Fraction = None
    table: list = field(default_factory=list)  # [(p, q, slack or None)]
    note: str = FINITE_NOTE

    def to_json(self, space: MetricSpace) -> dict:
        doc = {
            "found": self.found,
            "table": [
                {"pair": [space.labels[p], space.labels[q]], "slack": None if s is None else fmt(s)}
                for p, q, s in self.table
            ],
            "note": self.note,
        }
        if self.found:
            doc["pair"] = [space.labels[self.pair[0]], space.labels[self.pair[1]]]
            doc["slack"] = fmt(self.slack)
            doc["witness"] = {
                "f": [f.to_json(space)["values"] for f in self.f_list],
                "g": self.g.to_json(space)["values"],
            }
        return doc


def ssd2p_system(space: MetricSpace, slices, eps, p, q):
    """``f_i +- g in S_i`` and ``g(p) - g(q) >= (1-eps) d(p,q)``; returns (lp, strict rows).

    Functions are blocks 0..n-1 (the f_i) and block n (g).
    """
    n = len(slices)
    nb = space.n - 1
    var = point_vars(space)
    lp = LinearProgram(nb * (n + 1))
    strict = []
    ess = essential_pairs(space)
    for i, S in enumerate(slices):
        for sign in (1, -1):
            for a, b in ess:
                _lip_row(lp, space, var, {i: 1, n: sign}, a, b, nb)
            coeffs = dict(functional_coeffs(space, S.functional, i))
            for j, c in functional_coeffs(space, S.functional, n).items():
                coeffs[j] = coeffs.get(j, 0) + sign * c
            row = lp.add(coeffs, ">=", 1 - S.alpha, f"slice{i}{'+' if sign > 0 else '-'}")
            if not S.closed:
                strict.append(row)
    norm_row = {}
    if p in var:
        norm_row[n * nb + var[p]] = 1
    if q in var:
        norm_row[n * nb + var[q]] = norm_row.get(n * nb + var[q], 0) - 1
    lp.add(norm_row, ">=", (1 - to_fraction(eps)) * space.dist[p][q], "norming")
    return lp, strict


def ssd2p_witness(space: MetricSpace, slices, eps, pairs="essential", stop_at_first=True, mode="exact") -> SSD2PResult:
    """Search f_1..f_n, g with ``||g|| >= 1-eps`` and ``f_i +- g`` in every slice.

    The norming pair of g is enumerated; with (f, g) also (f, -g) is a
    witness, so unordered pairs suffice, and essential ones carry every norm.
    """
    eps = to_fraction(eps)
    if not slices:
        raise ValueError("need at least one slice")
    if not 0 < eps < 1:
        raise ValueError("eps must lie in (0, 1)")
    table = []
    hit = None
    n = len(slices)
    for p, q in _pairs(space, pairs):
        lp, strict = ssd2p_system(space, slices, eps, p, q)
        if strict:
            res = max_slack(lp, strict, mode=mode)
            slack, point = res.slack, res.point
            ok = res.satisfiable
        else:
            out = solve(lp, mode=mode)
            ok = out.status == "optimal"
            slack, point = (Fraction(0), out.x) if ok else (None, None)
        table.append((p, q, slack))
        if ok and hit is None:
            fs = [unpack(space, point, i) for i in range(n)]
            hit = SSD2PResult(True, fs, unpack(space, point, n), (p, q), slack)
            if stop_at_first:
                break
    if hit is None:
        return SSD2PResult(False, table=table)
    hit.table = table
    return hit


def verify_ssd2p(space: MetricSpace, slices, eps, f_list, g) -> list:
    """Direct substitution check of a symmetric witness (no LP); lists failures."""
    problems = []
    eps = to_fraction(eps)
    if lip_norm(space, g) < 1 - eps:
        problems.append("||g|| < 1 - eps")
    for i, (S, f) in enumerate(zip(slices, f_list)):
        for sign in (1, -1):
            h = f + g * sign
            if lip_norm(space, h) > 1:
                problems.append(f"||f_{i} {'+' if sign > 0 else '-'} g|| > 1")
            val = eval_functional(space, S.functional, h)
            if (S.closed and val < 1 - S.alpha) or (not S.closed and val <= 1 - S.alpha):
                problems.append(f"f_{i} {'+' if sign > 0 else '-'} g outside slice {i}")
    return problems


# --------------------------------------------------------------------------
# bound probes


class ProbeSystem:
    """Linear constraints over the point values of named unknown functions.

    Every unknown vanishes at the base point.  Expressions are dicts
    ``{(name, point): coefficient}``.
    """

    def __init__(self, space: MetricSpace, unknowns):
        self.space = space
        self.unknowns = list(unknowns)
        if len(set(self.unknowns)) != len(self.unknowns):
            raise ValueError("unknown names must be distinct")
        self.block = {name: k for k, name in enumerate(self.unknowns)}
        self.nb = space.n - 1
        self.var = point_vars(space)
        self.lp = LinearProgram(self.nb * len(self.unknowns))
        self.objective = {}
        self.rows = []  # readable description per call, for reports

    def _coeffs(self, expr) -> dict:
        out = {}
        for (name, point), c in expr.items():
            if name not in self.block:
                raise KeyError(f"undeclared unknown {name!r}")
            p = self.space.index(point)
            if p == self.space.base:
                continue
            j = self.block[name] * self.nb + self.var[p]
            out[j] = out.get(j, 0) + to_fraction(c)
        return out

    def lipschitz(self, combo: dict, pairs=None):
        """``||sum combo[name] * name|| <= 1``."""
        combo_k = {self.block[name]: to_fraction(c) for name, c in combo.items()}
        for p, q in pairs if pairs is not None else essential_pairs(self.space):
            _lip_row(self.lp, self.space, self.var, combo_k, p, q, self.nb)
        self.rows.append(("lipschitz", combo))

    def in_slice(self, combo: dict, functional: FreeVector, alpha):
        """Closed slice row ``F(sum combo[name] * name) >= 1 - alpha``."""
        expr = {}
        for name, c in combo.items():
            for i, w in functional.on(self.space).coeffs.items():
                key = (name, i)
                expr[key] = expr.get(key, 0) + to_fraction(c) * w
        self.lp.add(self._coeffs(expr), ">=", 1 - to_fraction(alpha))
        self.rows.append(("slice", combo, alpha))

    def linear(self, expr: dict, rel: str, rhs):
        self.lp.add(self._coeffs(expr), rel, rhs)
        self.rows.append(("linear", expr, rel, rhs))

    def set_objective(self, expr: dict):
        self.objective = expr

    @classmethod
    def from_json(cls, space: MetricSpace, doc: dict) -> "ProbeSystem":
        sys_ = cls(space, doc["unknowns"])
        for row in doc.get("rows", []):
            kind = row["type"]
            if kind == "lipschitz":
                sys_.lipschitz(row["combo"])
            elif kind == "slice":
                sys_.in_slice(row["combo"], FreeVector.from_json(space, row["functional"]), row["alpha"])
            elif kind == "linear":
                sys_.linear(_terms(row["terms"]), row["rel"], to_fraction(row["rhs"]))
            else:
                raise ValueError(f"unknown row type {kind!r}")
        obj = doc.get("objective", {"terms": []})
        expr = _terms(obj.get("terms", []))
        if obj.get("sense", "max") == "min":
            expr = {k: -v for k, v in expr.items()}
        sys_.set_objective(expr)
        return sys_


def _terms(items) -> dict:
    expr = {}
    for name, point, c in items:
        expr[(name, point)] = expr.get((name, point), 0) + to_fraction(c)
    return expr


@dataclass
class ProbeResult:
    status: str
    value: Fraction = None
    witness: dict = None
    outcome: object = None

    def to_json(self, space: MetricSpace) -> dict:
        doc = {"status": self.status, "mode": "exact", "note": FINITE_NOTE}
        if self.status == "optimal":
            doc["value"] = fmt(self.value)
            doc["witness"] = {k: f.to_json(space)["values"] for k, f in self.witness.items()}
        elif self.status == "infeasible":
            doc["certificate"] = [fmt(y) for y in self.outcome.farkas]
        return doc


def bound_probe(space: MetricSpace, system: ProbeSystem, mode: str = "exact") -> ProbeResult:
    """Maximize the system's objective; infeasible systems carry a Farkas certificate."""
    lp = LinearProgram(system.lp.num_vars, system._coeffs(system.objective), system.lp.constraints, system.lp.bounds)
    out = solve(lp, mode=mode)
    if out.status != "optimal":
        return ProbeResult(out.status, outcome=out)
    wit = {name: unpack(space, out.x, k) for name, k in system.block.items()}
    return ProbeResult("optimal", out.value, wit, out)

"""Exact rational linear programming.

Problems are stated as ``maximize c.x`` over rows ``a.x <= b`` / ``a.x == b``
with optional variable bounds (variables are free by default).  Internally
everything is reduced to ``max c.x s.t. G x <= h`` with x free, and the
*dual* of that, ``min h.y s.t. G^T y = c, y >= 0``, is solved by a dense
two-phase tableau simplex over exact rationals.  The tableau then has one
row per variable, which is what keeps the many-rows/few-variables programs
of this package small.  The primal point is read off the simplex
multipliers, infeasibility certificates off unbounded rays.

Pivoting uses Dantzig's rule and switches to Bland's rule as soon as a
degenerate pivot happens, until the objective moves again; a cycle would
have to consist of degenerate pivots only, all of them taken under Bland's
rule, which cannot cycle.

Large programs can be warm-started from a floating point solve (HiGHS):
the active rows it reports are solved exactly and the resulting vertex is
accepted only if it is primal and dual feasible in rational arithmetic.
Otherwise the exact simplex runs from scratch.
"""

from __future__ import annotations

import contextlib
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from gmpy2 import mpq

from .rational import to_fraction

log = logging.getLogger(__name__)

LE, EQ = "<=", "=="
FLOAT_TOL = 1e-9
# rows * variables above which exact mode tries the float-guided start first
CROSSOVER_SIZE = 40_000

ZERO = mpq(0)
ONE = mpq(1)


def _q(x) -> mpq:
    if isinstance(x, mpq):
        return x
    f = to_fraction(x)
    return mpq(f.numerator, f.denominator)


def _f(x) -> Fraction:
    return Fraction(int(x.numerator), int(x.denominator))


@dataclass
class Constraint:
    coeffs: dict
    rel: str
    rhs: Fraction
    name: str = ""


@dataclass
class LinearProgram:
    """``maximize objective . x`` subject to rows and bounds.

    Coefficients are sparse dicts ``{variable index: value}``.  A bound of
    None means unbounded on that side.
    """

    num_vars: int
    objective: dict = field(default_factory=dict)
    constraints: list = field(default_factory=list)
    bounds: list = None

    def __post_init__(self):
        if self.bounds is None:
            self.bounds = [(None, None)] * self.num_vars
        self.objective = self._clean(self.objective)
        if len(self.bounds) != self.num_vars:
            raise ValueError("one (lo, hi) bound pair per variable")
        self.bounds = [
            (None if lo is None else to_fraction(lo), None if hi is None else to_fraction(hi))
            for lo, hi in self.bounds
        ]

    def _clean(self, coeffs) -> dict:
        if not isinstance(coeffs, dict):
            coeffs = dict(enumerate(coeffs))
        out = {}
        for j, v in coeffs.items():
            if not (isinstance(j, int) and 0 <= j < self.num_vars):
                raise ValueError(f"variable index {j!r} out of range 0..{self.num_vars - 1}")
            v = to_fraction(v)
            if v:
                out[j] = v
        return out

    def add(self, coeffs, rel: str, rhs, name: str = "") -> int:
        """Append a row; ``>=`` rows are stored negated as ``<=`` rows."""
        coeffs = self._clean(coeffs)
        rhs = to_fraction(rhs)
        if rel == ">=":
            coeffs = {j: -v for j, v in coeffs.items()}
            rhs, rel = -rhs, LE
        if rel not in (LE, EQ):
            raise ValueError(f"unknown relation {rel!r}")
        self.constraints.append(Constraint(coeffs, rel, rhs, name))
        return len(self.constraints) - 1

    def set_objective(self, coeffs):
        self.objective = self._clean(coeffs)

    def copy(self) -> "LinearProgram":
        return LinearProgram(
            self.num_vars,
            dict(self.objective),
            [Constraint(dict(c.coeffs), c.rel, c.rhs, c.name) for c in self.constraints],
            list(self.bounds),
        )


@dataclass
class LPOutcome:
    """Result of :func:`solve`.

    ``duals`` has one multiplier per constraint (>= 0 for ``<=`` rows, free
    for equalities) and ``bound_duals`` one ``(lower, upper)`` pair per
    variable.  When infeasible, ``farkas`` holds multipliers of the same
    shape whose row combination reads ``0 <= negative``; when unbounded,
    ``ray`` is an improving recession direction from ``x``.
    """

    status: str
    mode: str
    value: object = None
    x: list = None
    duals: list = None
    bound_duals: list = None
    farkas: list = None
    farkas_bounds: list = None
    ray: list = None
    route: str = ""

    @property
    def optimal(self) -> bool:
        return self.status == "optimal"


class LPError(RuntimeError):
    pass


# --------------------------------------------------------------------------
# canonical form


class _Canon:
    """``G x <= h`` with x free, plus the map back to the original rows."""

    def __init__(self, lp: LinearProgram):
        self.n = lp.num_vars
        self.rows = []  # sparse dicts of mpq
        self.rhs = []
        self.origin = []  # ("row", i, sign) | ("lo", j) | ("hi", j)
        for i, con in enumerate(lp.constraints):
            a = {j: _q(v) for j, v in con.coeffs.items()}
            self._push(a, _q(con.rhs), ("row", i, 1))
            if con.rel == EQ:
                self._push({j: -v for j, v in a.items()}, -_q(con.rhs), ("row", i, -1))
        for j, (lo, hi) in enumerate(lp.bounds):
            if lo is not None:
                self._push({j: -ONE}, -_q(lo), ("lo", j))
            if hi is not None:
                self._push({j: ONE}, _q(hi), ("hi", j))
        self.c = [ZERO] * self.n
        for j, v in lp.objective.items():
            self.c[j] = _q(v)

    def _push(self, a, b, origin):
        self.rows.append(a)
        self.rhs.append(b)
        self.origin.append(origin)

    def split(self, y, lp: LinearProgram):
        """Map canonical multipliers back to (row duals, bound duals)."""
        duals = [Fraction(0)] * len(lp.constraints)
        bduals = [[Fraction(0), Fraction(0)] for _ in range(lp.num_vars)]
        for k, yk in enumerate(y):
            if not yk:
                continue
            o = self.origin[k]
            if o[0] == "row":
                duals[o[1]] += o[2] * _f(yk)
            elif o[0] == "lo":
                bduals[o[1]][0] += _f(yk)
            else:
                bduals[o[1]][1] += _f(yk)
        return duals, [tuple(b) for b in bduals]


# --------------------------------------------------------------------------
# dense tableau on the dual standard form


class _Tableau:
    """``min cost.y  s.t.  A y = b, y >= 0`` with an artificial start.

    Column layout: m structural columns followed by n artificial columns;
    each row carries its right-hand side as the last entry.
    """

    def __init__(self, cols: list, b: list, cost: list, debug: bool = False):
        n = len(b)
        m = len(cols)
        self.n, self.m = n, m
        self.flip = [(-1 if bi < 0 else 1) for bi in b]
        width = m + n + 1
        rows = [[ZERO] * width for _ in range(n)]
        for j, col in enumerate(cols):
            for i, v in col.items():
                rows[i][j] = v * self.flip[i]
        for i in range(n):
            rows[i][m + i] = ONE
            rows[i][-1] = b[i] * self.flip[i]
        self.rows = rows
        self.basis = [m + i for i in range(n)]
        self.cost = list(cost)
        self.debug = debug
        self.pivots = 0

    def _objective_row(self, cost):
        width = self.m + self.n + 1
        obj = [ZERO] * width
        for j, cj in enumerate(cost):
            obj[j] = cj
        for i, bvar in enumerate(self.basis):
            cb = cost[bvar] if bvar < len(cost) else ZERO
            if cb:
                row = self.rows[i]
                for j in range(width):
                    if row[j]:
                        obj[j] -= cb * row[j]
        return obj

    def _pivot(self, r, c, obj):
        prow = self.rows[r]
        piv = prow[c]
        if piv != ONE:
            inv = ONE / piv
            prow = [v * inv if v else v for v in prow]
            self.rows[r] = prow
        nz = [j for j, v in enumerate(prow) if v]
        for i, row in enumerate(self.rows):
            if i == r:
                continue
            f = row[c]
            if f:
                for j in nz:
                    row[j] -= f * prow[j]
        f = obj[c]
        if f:
            for j in nz:
                obj[j] -= f * prow[j]
        self.basis[r] = c
        self.pivots += 1
        if self.debug:
            log.debug("pivot row %d col %d obj %s", r, c, -obj[-1])

    def run(self, obj, allowed: int):
        """Minimize over the current objective row.

        Returns ``("optimal", None)`` or ``("unbounded", column)``; only
        columns below ``allowed`` may enter.
        """
        bland = False
        rows = self.rows
        while True:
            if bland:
                enter = next((j for j in range(allowed) if obj[j] < 0), None)
            else:
                enter, best = None, ZERO
                for j in range(allowed):
                    if obj[j] < best:
                        enter, best = j, obj[j]
            if enter is None:
                return "optimal", None
            leave, ratio = None, None
            for i, row in enumerate(rows):
                a = row[enter]
                if a > 0:
                    t = row[-1] / a
                    if (
                        leave is None
                        or t < ratio
                        or (t == ratio and self.basis[i] < self.basis[leave])
                    ):
                        leave, ratio = i, t
            if leave is None:
                return "unbounded", enter
            bland = ratio == 0
            self._pivot(leave, enter, obj)

    def multipliers(self, obj, cost_art):
        """Simplex multipliers from the artificial columns' reduced costs."""
        return [(cost_art - obj[self.m + i]) * self.flip[i] for i in range(self.n)]

    def ray(self, enter):
        y = [ZERO] * self.m
        y[enter] = ONE
        for i, bvar in enumerate(self.basis):
            if bvar < self.m:
                y[bvar] = -self.rows[i][enter]
        return y

    def primal(self):
        y = [ZERO] * self.m
        for i, bvar in enumerate(self.basis):
            if bvar < self.m:
                y[bvar] = self.rows[i][-1]
        return y

    def drive_out_artificials(self):
        for i, bvar in enumerate(self.basis):
            if bvar >= self.m:
                row = self.rows[i]
                j = next((j for j in range(self.m) if row[j]), None)
                if j is not None:
                    dummy = [ZERO] * (self.m + self.n + 1)
                    self._pivot(i, j, dummy)


def _simplex_dual_form(canon: _Canon, debug=False):
    """Solve via the dual standard form.

    Returns (status, x, y, extra) with x the primal point, y canonical row
    multipliers; extra is the Farkas vector (infeasible) or the primal
    recession direction (dual infeasible).
    """
    n, m = canon.n, len(canon.rows)
    cols = canon.rows  # column j of G^T is row j of G
    tab = _Tableau(cols, canon.c, list(canon.rhs) + [ZERO] * n, debug=debug)
    phase1_cost = [ZERO] * m + [ONE] * n
    obj = tab._objective_row(phase1_cost)
    status, _ = tab.run(obj, m)
    assert status == "optimal"
    if obj[-1] < 0:  # -obj[-1] is the phase one value
        sigma = tab.multipliers(obj, ONE)
        return "dual_infeasible", None, None, sigma
    tab.drive_out_artificials()
    cost2 = list(canon.rhs) + [ZERO] * n
    obj = tab._objective_row(cost2)
    status, enter = tab.run(obj, m)
    if status == "unbounded":
        return "infeasible", None, None, tab.ray(enter)
    x = tab.multipliers(obj, ZERO)
    y = tab.primal()
    return "optimal", x, y, None


# --------------------------------------------------------------------------
# float guidance and exact crossover


def _float_solve(lp: LinearProgram):
    import numpy as np
    from scipy.optimize import linprog
    from scipy.sparse import csr_matrix

    def mat(rows):
        data, ri, ci = [], [], []
        for r, con in enumerate(rows):
            for j, v in con.coeffs.items():
                data.append(float(v))
                ri.append(r)
                ci.append(j)
        return csr_matrix((data, (ri, ci)), shape=(len(rows), lp.num_vars)) if rows else None

    ub = [c for c in lp.constraints if c.rel == LE]
    eq = [c for c in lp.constraints if c.rel == EQ]
    c = np.zeros(lp.num_vars)
    for j, v in lp.objective.items():
        c[j] = -float(v)
    bounds = [
        (None if lo is None else float(lo), None if hi is None else float(hi)) for lo, hi in lp.bounds
    ]
    res = linprog(
        c,
        A_ub=mat(ub),
        b_ub=[float(r.rhs) for r in ub] or None,
        A_eq=mat(eq),
        b_eq=[float(r.rhs) for r in eq] or None,
        bounds=bounds,
        method="highs-ds",
    )
    return res, ub, eq


def _solve_float(lp: LinearProgram) -> LPOutcome:
    res, ub, eq = _float_solve(lp)
    if res.status == 2:
        return LPOutcome("infeasible", "float", route="highs")
    if res.status == 3:
        return LPOutcome("unbounded", "float", route="highs")
    if res.status != 0:
        log.warning("float solve failed (%s); falling back to exact", res.message)
        return solve(lp, mode="exact")
    duals = []
    iu = ie = 0
    for con in lp.constraints:
        if con.rel == LE:
            duals.append(-float(res.ineqlin.marginals[iu]))
            iu += 1
        else:
            duals.append(-float(res.eqlin.marginals[ie]))
            ie += 1
    bd = [
        (max(0.0, float(lo_m)), max(0.0, -float(hi_m)))
        for lo_m, hi_m in zip(res.lower.marginals, res.upper.marginals)
    ]
    return LPOutcome(
        "optimal", "float", value=-float(res.fun), x=[float(v) for v in res.x],
        duals=duals, bound_duals=bd, route="highs",
    )


def _sparse_solve(rows: list, rhs: list, n: int):
    """Exactly solve the square sparse system rows . x = rhs (None if singular)."""
    eqs = [(dict(r), b) for r, b in zip(rows, rhs)]
    order = []
    remaining = list(range(len(eqs)))
    for _ in range(n):
        # pick the sparsest remaining equation, then its sparsest column
        best = None
        for k in remaining:
            a = eqs[k][0]
            if a and (best is None or len(a) < len(eqs[best][0])):
                best = k
        if best is None:
            return None
        a, b = eqs[best]
        col = min(a, key=lambda j: (abs(a[j]) != 1, j))
        piv = a[col]
        remaining.remove(best)
        for k in remaining:
            ak, bk = eqs[k]
            f = ak.get(col)
            if f:
                f = f / piv
                for j, v in a.items():
                    w = ak.get(j, ZERO) - f * v
                    if w:
                        ak[j] = w
                    else:
                        ak.pop(j, None)
                eqs[k] = (ak, bk - f * b)
        order.append((best, col))
    x = [ZERO] * n
    for best, col in reversed(order):
        a, b = eqs[best]
        s = b - sum((v * x[j] for j, v in a.items() if j != col), ZERO)
        x[col] = s / a[col]
    return x


def _crossover(lp: LinearProgram, canon: _Canon):
    import numpy as np

    res, ub, eq = _float_solve(lp)
    if res.status != 0:
        return None
    n = canon.n
    xf = np.asarray(res.x, dtype=float)
    # float duals per canonical row
    mult = {}
    iu = ie = 0
    for i, con in enumerate(lp.constraints):
        if con.rel == LE:
            mult[("row", i, 1)] = -float(res.ineqlin.marginals[iu])
            iu += 1
        else:
            m_ = -float(res.eqlin.marginals[ie])
            ie += 1
            mult[("row", i, 1)] = max(m_, 0.0)
            mult[("row", i, -1)] = max(-m_, 0.0)
    for j in range(n):
        mult[("lo", j)] = max(0.0, float(res.lower.marginals[j]))
        mult[("hi", j)] = max(0.0, -float(res.upper.marginals[j]))
    scored = []
    for k, (a, b) in enumerate(zip(canon.rows, canon.rhs)):
        slack = float(b) - sum(float(v) * xf[j] for j, v in a.items())
        scale = 1.0 + abs(float(b))
        if abs(slack) <= 1e-7 * scale:
            scored.append((-mult.get(canon.origin[k], 0.0), abs(slack), k))
    scored.sort()
    chosen, basis_vecs = [], []
    for _, _, k in scored:
        v = np.zeros(n)
        for j, val in canon.rows[k].items():
            v[j] = float(val)
        w = v.copy()
        for q in basis_vecs:
            w -= (w @ q) * q
        nrm = np.linalg.norm(w)
        if nrm > 1e-9 * max(1.0, np.linalg.norm(v)):
            basis_vecs.append(w / nrm)
            chosen.append(k)
            if len(chosen) == n:
                break
    # free variables can sit inside the optimal face; pin them at their
    # rounded float values so the system becomes square
    pins = []
    for j in range(n):
        if len(chosen) + len(pins) == n:
            break
        w = np.zeros(n)
        w[j] = 1.0
        for q in basis_vecs:
            w -= (w @ q) * q
        nrm = np.linalg.norm(w)
        if nrm > 1e-9:
            basis_vecs.append(w / nrm)
            pins.append(j)
    if len(chosen) + len(pins) < n:
        return None
    rows = [canon.rows[k] for k in chosen] + [{j: ONE} for j in pins]
    rhs = [canon.rhs[k] for k in chosen] + [_q(Fraction(float(xf[j])).limit_denominator(10**6)) for j in pins]
    x = _sparse_solve(rows, rhs, n)
    if x is None:
        return None
    # B^T y_B = c
    cols = [dict() for _ in range(n)]
    for pos, k in enumerate(chosen):
        for j, v in canon.rows[k].items():
            cols[j][pos] = v
    tight = []
    for k, (a, b) in enumerate(zip(canon.rows, canon.rhs)):
        ax = sum((v * x[j] for j, v in a.items()), ZERO)
        if ax > b:
            return None
        if ax == b:
            tight.append(k)
    y = [ZERO] * len(canon.rows)
    yb = None if pins else _sparse_solve(cols, canon.c, n)
    if yb is not None and all(v >= 0 for v in yb):
        for pos, k in enumerate(chosen):
            y[k] = yb[pos]
        return x, y
    # degenerate vertex: look for multipliers on all rows tight at x
    yt = _tight_multipliers([canon.rows[k] for k in tight], canon.c)
    if yt is None:
        return None
    for pos, k in enumerate(tight):
        y[k] = yt[pos]
    return x, y


def _tight_multipliers(rows, c):
    """Some ``y >= 0`` with ``sum_k y_k rows[k] = c``, by phase one; None if none exists."""
    n, m = len(c), len(rows)
    tab = _Tableau(rows, c, [ZERO] * (m + n))
    obj = tab._objective_row([ZERO] * m + [ONE] * n)
    tab.run(obj, m)
    if obj[-1] < 0:
        return None
    return tab.primal()


# --------------------------------------------------------------------------
# public API

_recorders: list = []


@contextlib.contextmanager
def recording():
    """Collect every ``(lp, outcome)`` pair solved in exact mode."""
    log_ = []
    _recorders.append(log_)
    try:
        yield log_
    finally:
        _recorders.remove(log_)


def solve(lp: LinearProgram, mode: str = "exact", method: str = "auto", debug: bool = False) -> LPOutcome:
    """Maximize ``lp``; exact mode returns Fractions with a zero duality gap.

    ``method`` is ``"simplex"`` (pure exact tableau), ``"crossover"``
    (float-guided exact vertex, simplex if it cannot be certified) or
    ``"auto"`` (crossover for large programs only).
    """
    if mode == "float":
        return _solve_float(lp)
    if mode != "exact":
        raise ValueError(f"unknown mode {mode!r}")
    canon = _Canon(lp)
    out = None
    size = len(canon.rows) * max(canon.n, 1)
    if method == "crossover" or (method == "auto" and size > CROSSOVER_SIZE):
        try:
            got = _crossover(lp, canon)
        except ImportError:  # pragma: no cover - scipy is a declared dependency
            got = None
        if got is not None:
            x, y = got
            out = _optimal(lp, canon, x, y, "crossover")
        else:
            log.info("crossover not certified, running exact simplex")
    elif method not in ("auto", "simplex", "crossover"):
        raise ValueError(f"unknown method {method!r}")
    if out is None:
        out = _exact_simplex(lp, canon, debug)
    for r in _recorders:
        r.append((lp, out))
    return out


def _optimal(lp, canon, x, y, route):
    duals, bduals = canon.split(y, lp)
    xs = [_f(v) for v in x]
    value = sum((lp.objective.get(j, 0) * xs[j] for j in range(lp.num_vars)), Fraction(0))
    return LPOutcome("optimal", "exact", value=value, x=xs, duals=duals, bound_duals=bduals, route=route)


def _exact_simplex(lp, canon, debug):
    status, x, y, extra = _simplex_dual_form(canon, debug)
    if status == "optimal":
        return _optimal(lp, canon, x, y, "simplex")
    if status == "infeasible":
        farkas, fb = canon.split(extra, lp)
        return LPOutcome("infeasible", "exact", farkas=farkas, farkas_bounds=fb, route="simplex")
    # dual infeasible: primal is unbounded or infeasible; settle which
    zero = _Canon(lp)
    zero.c = [ZERO] * zero.n
    status2, x0, _, extra2 = _simplex_dual_form(zero, debug)
    if status2 == "infeasible":
        farkas, fb = canon.split(extra2, lp)
        return LPOutcome("infeasible", "exact", farkas=farkas, farkas_bounds=fb, route="simplex")
    return LPOutcome(
        "unbounded", "exact", x=[_f(v) for v in x0], ray=[_f(v) for v in extra], route="simplex"
    )


def _row_value(coeffs, x):
    return sum((v * x[j] for j, v in coeffs.items()), Fraction(0))


def verify_outcome(lp: LinearProgram, out: LPOutcome) -> list:
    """Independent rational check of an exact outcome; returns problems found.

    Optimal: primal feasibility, dual sign conditions, stationarity and a
    zero duality gap (complementary slackness follows).  Infeasible: the
    Farkas combination cancels every variable and has a negative right-hand
    side.  Unbounded: x is feasible and the ray is a recession direction
    that increases the objective.
    """
    problems = []
    n = lp.num_vars
    if out.status == "optimal":
        x = [to_fraction(v) for v in out.x]
        for i, con in enumerate(lp.constraints):
            lhs = _row_value(con.coeffs, x)
            if (con.rel == LE and lhs > con.rhs) or (con.rel == EQ and lhs != con.rhs):
                problems.append(f"row {i} violated")
            if con.rel == LE and out.duals[i] < 0:
                problems.append(f"row {i} has negative dual")
        for j, (lo, hi) in enumerate(lp.bounds):
            if (lo is not None and x[j] < lo) or (hi is not None and x[j] > hi):
                problems.append(f"bound {j} violated")
            blo, bhi = out.bound_duals[j]
            if blo < 0 or bhi < 0 or (lo is None and blo) or (hi is None and bhi):
                problems.append(f"bound dual {j} invalid")
        grad = [Fraction(0)] * n
        dual_obj = Fraction(0)
        for i, con in enumerate(lp.constraints):
            y = out.duals[i]
            if y:
                for j, v in con.coeffs.items():
                    grad[j] += y * v
                dual_obj += y * con.rhs
        for j, (lo, hi) in enumerate(lp.bounds):
            blo, bhi = out.bound_duals[j]
            grad[j] += bhi - blo
            if blo:
                dual_obj -= blo * lo
            if bhi:
                dual_obj += bhi * hi
        for j in range(n):
            if grad[j] != lp.objective.get(j, 0):
                problems.append(f"stationarity fails at variable {j}")
        primal_obj = _row_value(lp.objective, x)
        if primal_obj != out.value:
            problems.append("reported value differs from c.x")
        if primal_obj != dual_obj:
            problems.append(f"duality gap {primal_obj - dual_obj}")
    elif out.status == "infeasible":
        comb = [Fraction(0)] * n
        rhs = Fraction(0)
        for i, con in enumerate(lp.constraints):
            y = out.farkas[i]
            if con.rel == LE and y < 0:
                problems.append(f"farkas multiplier {i} negative")
            for j, v in con.coeffs.items():
                comb[j] += y * v
            rhs += y * con.rhs
        for j, (lo, hi) in enumerate(lp.bounds):
            blo, bhi = out.farkas_bounds[j]
            if blo < 0 or bhi < 0 or (lo is None and blo) or (hi is None and bhi):
                problems.append(f"farkas bound multiplier {j} invalid")
            comb[j] += bhi - blo
            if blo:
                rhs -= blo * lo
            if bhi:
                rhs += bhi * hi
        if any(comb):
            problems.append("farkas combination does not cancel")
        if rhs >= 0:
            problems.append("farkas right-hand side not negative")
    elif out.status == "unbounded":
        x = out.x
        d = out.ray
        for i, con in enumerate(lp.constraints):
            lhs = _row_value(con.coeffs, x)
            dd = _row_value(con.coeffs, d)
            if (con.rel == LE and (lhs > con.rhs or dd > 0)) or (
                con.rel == EQ and (lhs != con.rhs or dd != 0)
            ):
                problems.append(f"row {i} breaks the ray certificate")
        for j, (lo, hi) in enumerate(lp.bounds):
            if lo is not None and (x[j] < lo or d[j] < 0):
                problems.append(f"lower bound {j} breaks the ray")
            if hi is not None and (x[j] > hi or d[j] > 0):
                problems.append(f"upper bound {j} breaks the ray")
        if _row_value(lp.objective, d) <= 0:
            problems.append("ray does not improve the objective")
    else:
        problems.append(f"unknown status {out.status}")
    return problems


@dataclass
class SlackResult:
    slack: object
    point: list
    outcome: LPOutcome

    def __iter__(self):
        return iter((self.slack, self.point))

    @property
    def satisfiable(self) -> bool:
        return self.slack is not None and self.slack > 0


def max_slack(lp: LinearProgram, strict_rows: Sequence[int], cap=1, mode: str = "exact", method: str = "auto") -> SlackResult:
    """Largest uniform t with every strict row tightened to ``a.x <= b - t``.

    The objective of ``lp`` is ignored and t is capped at ``cap`` so the
    program stays bounded.  The strict system is satisfiable iff the
    returned slack is positive; slack is None when the non-strict rows are
    already infeasible.
    """
    strict = set(strict_rows)
    for i in strict:
        if lp.constraints[i].rel != LE:
            raise ValueError(f"strict row {i} must be an inequality")
    t = lp.num_vars
    big = LinearProgram(t + 1, {t: 1}, [], list(lp.bounds) + [(None, to_fraction(cap))])
    for i, con in enumerate(lp.constraints):
        coeffs = dict(con.coeffs)
        if i in strict:
            coeffs[t] = 1
        big.add(coeffs, con.rel, con.rhs, con.name)
    out = solve(big, mode=mode, method=method)
    if out.status != "optimal":
        return SlackResult(None, None, out)
    return SlackResult(out.value, out.x[:t], out)

"""Checks and searches for the long-trapezoid family of metric conditions.

Measures on the pair set are finitely supported nonnegative weights; the
mass of ``Gamma_A`` is the plain sum over pairs touching A.  Every check
returns the first violating tuple in lexicographic order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .lipschitz import PreconditionError, _vals, lip_norm
from .metric import MetricSpace, gen_l1_pairs, members, to_mask
from .rational import fmt, to_fraction


@dataclass
class PairWeights:
    weights: dict = field(default_factory=dict)  # (x, y) -> Fraction >= 0

    def __post_init__(self):
        clean = {}
        for (x, y), w in self.weights.items():
            w = to_fraction(w)
            if w < 0:
                raise ValueError("pair weights must be nonnegative")
            if x == y:
                raise ValueError("pairs must be off-diagonal")
            if w:
                clean[(x, y)] = clean.get((x, y), 0) + w
        self.weights = clean

    def total(self) -> Fraction:
        return sum(self.weights.values(), Fraction(0))

    def mass(self, space: MetricSpace, A) -> Fraction:
        """``mu(Gamma_A)``."""
        mask = to_mask(space, A)
        return sum((w for (x, y), w in self.weights.items() if mask[x] or mask[y]), Fraction(0))

    def to_json(self, space: MetricSpace) -> dict:
        return {
            "weights": [
                {"x": space.labels[x], "y": space.labels[y], "w": fmt(w)}
                for (x, y), w in sorted(self.weights.items())
            ]
        }

    @classmethod
    def from_json(cls, space: MetricSpace, doc: dict) -> "PairWeights":
        return cls({(space.index(e["x"]), space.index(e["y"])): e["w"] for e in doc.get("weights", [])})


@dataclass
class CheckResult:
    passed: bool
    violation: tuple = None
    reason: str = ""

    def __bool__(self):
        return self.passed

    def to_json(self, space: MetricSpace | None = None) -> dict:
        def name(v):
            return space.labels[v] if space is not None and isinstance(v, int) else v

        doc = {"passed": self.passed, "reason": self.reason}
        if self.violation is not None:
            doc["violation"] = {k: name(v) for k, v in self.violation.items()}
        return doc


def _check_eps(eps):
    eps = to_fraction(eps)
    if not 0 <= eps < 1:
        raise ValueError("eps must lie in [0, 1)")
    return eps


# --------------------------------------------------------------------------
# LTP / SLTP against a finite set


def ltp_check(space: MetricSpace, kind: str, N, eps, u, v, fast: bool = False) -> CheckResult:
    """Two-point (and for SLTP four-point) inequalities for all points of N.

    ``fast`` uses that the four-point inequality splits into independent
    (x, y) and (z, w) halves; the default scans every quadruple.
    """
    kind = kind.upper()
    if kind not in ("LTP", "SLTP"):
        raise ValueError(f"unknown kind {kind!r}")
    u, v = space.index(u), space.index(v)
    if u == v:
        raise ValueError("u and v must differ")
    eps = _check_eps(eps)
    pts = members(to_mask(space, N))
    d = space.dist
    c = 1 - eps
    duv = d[u][v]
    for x in pts:
        for y in pts:
            if c * (d[x][y] + duv) > d[x][u] + d[y][v]:
                return CheckResult(False, {"x": x, "y": y}, "LTP inequality")
    if kind == "SLTP":
        if fast:
            worst_u = max(((c * (duv + d[x][y]) - d[x][u] - d[y][u], x, y) for x in pts for y in pts), default=None)
            worst_v = max(((c * (duv + d[z][w]) - d[z][v] - d[w][v], z, w) for z in pts for w in pts), default=None)
            if worst_u and worst_u[0] + worst_v[0] > 0:
                return CheckResult(
                    False,
                    {"x": worst_u[1], "y": worst_u[2], "z": worst_v[1], "w": worst_v[2]},
                    "SLTP inequality",
                )
            return CheckResult(True)
        for x, y, z, w in itertools.product(pts, repeat=4):
            lhs = c * (2 * duv + d[x][y] + d[z][w])
            if lhs > d[x][u] + d[y][u] + d[z][v] + d[w][v]:
                return CheckResult(False, {"x": x, "y": y, "z": z, "w": w}, "SLTP inequality")
    return CheckResult(True)


def ltp_search(space: MetricSpace, kind: str, N, eps, candidates=None):
    """First ordered pair (u, v) passing ``ltp_check``, or None."""
    pairs = candidates if candidates is not None else space.ordered_pairs()
    for u, v in pairs:
        u, v = space.index(u), space.index(v)
        if u != v and ltp_check(space, kind, N, eps, u, v, fast=True):
            return (u, v)
    return None


# --------------------------------------------------------------------------
# sequential families


@dataclass
class Block:
    A: tuple  # mask
    u: int
    v: int


def seq_family_check(space: MetricSpace, family, eps, kind: str = "seq-LTP") -> CheckResult:
    """Check every block's inequalities against all points outside the block.

    Disjointness and witness membership are checked first and reported as
    precondition failures.
    """
    kind = kind.upper()
    if kind not in ("SEQ-LTP", "SEQ-SLTP"):
        raise ValueError(f"unknown kind {kind!r}")
    blocks = [Block(to_mask(space, b.A), space.index(b.u), space.index(b.v)) for b in family]
    for m, b in enumerate(blocks):
        if b.u == b.v or not (b.A[b.u] and b.A[b.v]):
            raise PreconditionError(f"block {m}: witnesses must be distinct members of A", (m,))
    for (m1, b1), (m2, b2) in itertools.combinations(enumerate(blocks), 2):
        common = [i for i in range(space.n) if b1.A[i] and b2.A[i]]
        if common:
            raise PreconditionError(f"blocks {m1} and {m2} intersect", (m1, m2, common[0]))
    inner = "SLTP" if kind == "SEQ-SLTP" else "LTP"
    for m, b in enumerate(blocks):
        outside = [not a for a in b.A]
        res = ltp_check(space, inner, outside, eps, b.u, b.v)
        if not res:
            viol = dict(res.violation)
            viol["block"] = m
            return CheckResult(False, viol, res.reason)
    return CheckResult(True)


# --------------------------------------------------------------------------
# function versions


def fltp_check(space: MetricSpace, kind: str, mu: PairWeights, eps, f_list, A, u, v, fast: bool = False) -> CheckResult:
    """``mu(Gamma_A) < eps`` plus the FLTP (and FSLTP) inequalities off A.

    The FSLTP quadruple inequality is scanned over every (x, y, z, w, i, j)
    unless ``fast`` is set, in which case its separable structure is used.
    """
    kind = kind.upper()
    if kind not in ("FLTP", "FSLTP"):
        raise ValueError(f"unknown kind {kind!r}")
    mask = to_mask(space, A)
    u, v = space.index(u), space.index(v)
    eps = to_fraction(eps)
    if u == v or not (mask[u] and mask[v]):
        raise PreconditionError("u, v must be distinct points of A", (u, v))
    if not 0 < eps < 1:
        raise PreconditionError("eps must lie in (0, 1)", (eps,))
    fs = [_vals(f) for f in f_list]
    for i, f in enumerate(fs):
        if lip_norm(space, f) > 1:
            raise PreconditionError(f"f_{i} has norm above 1", (i,))
    mass = mu.mass(space, mask)
    if mass >= eps:
        return CheckResult(False, {"mass": fmt(mass)}, "mu(Gamma_A) >= eps")
    out = [i for i in range(space.n) if not mask[i]]
    d = space.dist
    c = 1 - eps
    duv = d[u][v]
    for i, f in enumerate(fs):
        for x in out:
            for y in out:
                if c * (f[x] - f[y] + duv) > d[x][u] + d[y][v]:
                    return CheckResult(False, {"x": x, "y": y, "i": i}, "FLTP inequality")
    if kind == "FSLTP" and fs:
        if fast:
            hu = max((c * (f[x] - f[y] + duv) - d[x][u] - d[y][u], x, y, i)
                     for i, f in enumerate(fs) for x in out for y in out)
            hv = max((c * (f[z] - f[w] + duv) - d[z][v] - d[w][v], z, w, j)
                     for j, f in enumerate(fs) for z in out for w in out)
            if hu[0] + hv[0] > 0:
                return CheckResult(
                    False,
                    {"x": hu[1], "y": hu[2], "z": hv[1], "w": hv[2], "i": hu[3], "j": hv[3]},
                    "FSLTP inequality",
                )
            return CheckResult(True)
        for i, fi in enumerate(fs):
            for j, fj in enumerate(fs):
                for x, y, z, w in itertools.product(out, repeat=4):
                    lhs = c * (fi[x] - fi[y] + fj[z] - fj[w] + 2 * duv)
                    if lhs > d[x][u] + d[y][u] + d[z][v] + d[w][v]:
                        return CheckResult(
                            False, {"x": x, "y": y, "z": z, "w": w, "i": i, "j": j}, "FSLTP inequality"
                        )
    return CheckResult(True)


def _ex31_index(space: MetricSpace) -> int:
    K = len(space.labels) // 3
    expected = [f"{s}{k}" for k in range(1, K + 1) for s in "abc"]
    if list(space.labels) != expected:
        raise ValueError("space was not built by gen_example31")
    return K


@dataclass
class Ex31Choice:
    k: int
    A: tuple
    u: int
    v: int


def fltp_search_ex31(space: MetricSpace, mu: PairWeights, eps, f_list, avoid_base: bool = False):
    """First k with ``mu(Gamma_{a_k, b_k}) < eps`` and ``|f_i(a_l) - f_i(c_l)| <= 1`` for l >= k.

    Returns ``Ex31Choice`` with A = {a_k, b_k}, u = a_k, v = b_k, or None.
    With ``avoid_base`` the choice k = 1 (whose A holds the base b_1) is
    skipped, as the extension step needs the base outside A.
    """
    K = _ex31_index(space)
    eps = to_fraction(eps)
    fs = [_vals(f) for f in f_list]
    a = {k: space.index(f"a{k}") for k in range(1, K + 1)}
    b = {k: space.index(f"b{k}") for k in range(1, K + 1)}
    c = {k: space.index(f"c{k}") for k in range(1, K + 1)}
    for k in range(1, K + 1):
        if avoid_base and space.base == b[k]:
            continue
        A = to_mask(space, [a[k], b[k]])
        if mu.mass(space, A) >= eps:
            continue
        if all(abs(f[a[l]] - f[c[l]]) <= 1 for f in fs for l in range(k, K + 1)):
            return Ex31Choice(k, A, a[k], b[k])
    return None


# --------------------------------------------------------------------------
# l1 windows


class WindowExhausted(RuntimeError):
    pass


@dataclass
class WindowChoice:
    m: int
    A: tuple
    u: int
    v: int
    window: tuple  # first and last coordinate, 1-based
    r: Fraction
    R: Fraction
    windows: list  # every window tried, (first, last, mass)


def l1_norm(x) -> Fraction:
    return sum((abs(to_fraction(c)) for c in x), Fraction(0))


def l1_windows(vectors, eps, base: int = 0):
    """Greedy windows ``I_m = {K_{m-1}, ..., K_m - 1}`` (1-based, K_0 = 1).

    Each window grows until two distinct non-base points carry all but
    ``eps r / 2`` of their norm inside it; those are u_m, v_m.  A_m collects
    the points with at least ``eps r / 2`` of mass inside.  Returns
    ``(windows, r, R)`` with windows a list of ``(m, (first, last), A, u, v)``.
    """
    vecs = [tuple(to_fraction(c) for c in x) for x in vectors]
    eps = to_fraction(eps)
    if not 0 < eps < 1:
        raise ValueError("eps must lie in (0, 1)")
    if len(vecs) < 2:
        raise ValueError("need at least two points")
    if any(c for c in vecs[base]):
        raise ValueError("the base point must be the zero vector")
    dim = len(vecs[0])
    npts = len(vecs)
    dists = [l1_norm(a - b for a, b in zip(vecs[i], vecs[j])) for i in range(npts) for j in range(i + 1, npts)]
    r, R = min(dists), max(dists)
    if r == 0:
        raise ValueError("points must be distinct")
    tol = eps * r / 2
    norms = [l1_norm(x) for x in vecs]
    windows = []
    start = 1
    while start <= dim:
        found = None
        for end in range(start + 1, dim + 2):  # K_m = end
            inside = [sum((abs(x[k - 1]) for k in range(start, end)), Fraction(0)) for x in vecs]
            good = [p for p in range(npts) if p != base and inside[p] >= norms[p] - tol]
            if len(good) >= 2:
                found = (end, inside, good[0], good[1])
                break
        if found is None:
            break
        end, inside, u, v = found
        A = tuple(inside[p] >= tol for p in range(npts))
        windows.append((len(windows) + 1, (start, end - 1), A, u, v))
        start = end
    return windows, r, R


def l1_window_select(vectors, eps, mu: PairWeights, f_list=(), base: int = 0) -> WindowChoice:
    """Coordinate-window choice of (A, u, v) for a finite subset of l1.

    Returns the first of ``l1_windows`` with ``mu(Gamma_{A_m}) < eps``.
    ``f_list`` is not consulted by the choice; it is part of the signature
    so callers can hand the same tuple on to ``fltp_check``.
    """
    eps = to_fraction(eps)
    windows, r, R = l1_windows(vectors, eps, base)
    tried = []
    for m, window, A, u, v in windows:
        mass = sum((w for (x, y), w in mu.weights.items() if A[x] or A[y]), Fraction(0))
        tried.append((window[0], window[1], mass))
        if mass < eps:
            return WindowChoice(m, A, u, v, window, r, R, tried)
    dim = len(vectors[0])
    raise WindowExhausted(
        f"no window with mu(Gamma_A) < eps among {len(tried)} windows of {dim} coordinates"
    )


# --------------------------------------------------------------------------
# counting bound


@dataclass
class CountingBound:
    heavy: int
    bound: Fraction

    @property
    def holds(self) -> bool:
        return self.heavy <= self.bound


def intersection_bound(ground_size: int, family, weights, n: int, delta) -> CountingBound:
    """Count sets of weight >= delta in a family with empty n-wise intersections.

    Every element then lies in at most n-1 sets, so the weights of the sets
    sum to at most ``(n-1) mu(E)`` and at most ``(n-1) mu(E) / delta`` of them
    are heavy.
    """
    delta = to_fraction(delta)
    if delta <= 0:
        raise ValueError("delta must be positive")
    if n < 1:
        raise ValueError("n must be positive")
    weights = [to_fraction(w) for w in weights]
    if len(weights) != ground_size or any(w < 0 for w in weights):
        raise ValueError("one nonnegative weight per ground element")
    sets = [frozenset(s) for s in family]
    for s in sets:
        if any(not 0 <= e < ground_size for e in s):
            raise ValueError("set element outside the ground set")
    # an n-wise intersection is nonempty iff some element lies in n of the sets
    for e in range(ground_size):
        owners = [m for m, s in enumerate(sets) if e in s]
        if len(owners) >= n:
            raise PreconditionError(
                f"sets {owners[:n]} share element {e}", tuple(owners[:n])
            )
    total = sum(weights, Fraction(0))
    heavy = sum(1 for s in sets if sum((weights[e] for e in s), Fraction(0)) >= delta)
    bound = (n - 1) * total / delta
    if heavy > bound:
        raise AssertionError(f"{heavy} heavy sets exceed the bound {bound}")
    return CountingBound(heavy, bound)


# --------------------------------------------------------------------------
# the column claim for {e_i + e_j}


def _pair_label(i, j):
    i, j = min(i, j), max(i, j)
    return f"e{i}+e{j}"


def ex41_space(n: int) -> MetricSpace:
    return gen_l1_pairs(n, include_base=False)[0]


def ex41_column_claim(n: int, eps, A, u, v, space: MetricSpace | None = None) -> str:
    """``"pass"``, ``"fail"`` or ``"not-applicable"``.

    When (A, u, v) satisfies the LTP inequality for all x, y off A, some
    index m must have at most two n' with ``e_m + e_n'`` outside A.  The
    points are the ``e_i + e_j`` with i <= j <= n, no base vector added.
    """
    if space is None:
        space = ex41_space(n)
    mask = to_mask(space, A)
    u, v = space.index(u), space.index(v)
    if u == v or not (mask[u] and mask[v]):
        raise ValueError("u, v must be distinct points of A")
    bad = _ltp_bad(space, to_fraction(eps), u, v)
    outside = [i for i in range(space.n) if not mask[i]]
    out_set = set(outside)
    if any(bad[x] & out_set for x in outside):
        return "not-applicable"
    for m in range(1, n + 1):
        missing = 0
        for k in range(1, n + 1):
            label = _pair_label(m, k)
            try:
                p = space.index(label)
            except KeyError:
                continue
            if not mask[p]:
                missing += 1
        if missing <= 2:
            return "pass"
    return "fail"


def _ltp_bad(space, eps, u, v):
    """``bad[x]`` = points y for which the LTP inequality at (x, y) fails."""
    key = ("ltp_bad", eps, u, v)
    hit = space._cache.get(key)
    if hit is not None:
        return hit
    d = space.dist
    c = 1 - eps
    bad = [
        {y for y in range(space.n) if c * (d[x][y] + d[u][v]) > d[x][u] + d[y][v]}
        for x in range(space.n)
    ]
    space._cache[key] = bad
    return bad


def admissible_blocks(space: MetricSpace, eps, exclude=()):
    """Every (A, u, v) whose LTP inequality holds on all of ``M \\ A``.

    Points listed in ``exclude`` (typically the base) never enter A.
    Exhaustive over subsets; meant for spaces of a dozen points or so.
    """
    eps = to_fraction(eps)
    excl = {space.index(e) for e in exclude}
    pts = [p for p in range(space.n) if p not in excl]
    out = []
    for r in range(2, len(pts) + 1):
        for chosen in itertools.combinations(pts, r):
            inside = set(chosen)
            rest = [p for p in range(space.n) if p not in inside]
            rest_set = set(rest)
            for u, v in itertools.permutations(chosen, 2):
                bad = _ltp_bad(space, eps, u, v)
                if not any(bad[x] & rest_set for x in rest):
                    out.append((frozenset(chosen), u, v))
    return out


def max_disjoint_blocks(blocks) -> int:
    """Largest number of pairwise disjoint sets among admissible blocks."""
    sets = sorted({A for A, _, _ in blocks}, key=len)
    # admissibility is upward closed, so minimal sets suffice
    minimal = [s for s in sets if not any(t < s for t in sets)]
    best = 0

    def grow(start, used, count):
        nonlocal best
        best = max(best, count)
        for k in range(start, len(minimal)):
            s = minimal[k]
            if not (s & used):
                grow(k + 1, used | s, count + 1)

    grow(0, frozenset(), 0)
    return best

"""Finite pointed metric spaces with exact rational distances.

Besides validation and JSON I/O this module holds the generators for the
three example families used throughout the package and the pair sets
``M~`` (all off-diagonal ordered pairs) and ``Gamma_A`` (pairs touching A).
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .rational import fmt, to_fraction


class StructureError(ValueError):
    """Malformed input that is not a metric space at all (shape, labels)."""


@dataclass(frozen=True)
class MetricSpace:
    labels: tuple
    base: int
    dist: tuple
    _cache: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    def __post_init__(self):
        labels = tuple(str(x) for x in self.labels)
        n = len(labels)
        if n < 2:
            raise StructureError("a metric space needs at least two points")
        if len(set(labels)) != n:
            dupes = sorted({x for x in labels if labels.count(x) > 1})
            raise StructureError(f"duplicate labels: {dupes}")
        if not (isinstance(self.base, int) and 0 <= self.base < n):
            raise StructureError(f"base index {self.base!r} out of range")
        rows = tuple(tuple(to_fraction(v) for v in row) for row in self.dist)
        if len(rows) != n or any(len(row) != n for row in rows):
            raise StructureError(
                f"distance matrix must be {n}x{n}, got rows of length "
                f"{[len(r) for r in rows]}"
            )
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "dist", rows)

    @property
    def n(self) -> int:
        return len(self.labels)

    def d(self, i: int, j: int) -> Fraction:
        return self.dist[i][j]

    def index(self, label) -> int:
        if isinstance(label, int) and not isinstance(label, bool):
            if not 0 <= label < self.n:
                raise KeyError(label)
            return label
        try:
            return self._label_index()[str(label)]
        except KeyError:
            raise KeyError(f"unknown point {label!r}") from None

    def _label_index(self) -> dict:
        idx = self._cache.get("labels")
        if idx is None:
            idx = {lab: i for i, lab in enumerate(self.labels)}
            self._cache["labels"] = idx
        return idx

    def points(self) -> range:
        return range(self.n)

    def nonbase(self) -> list[int]:
        return [i for i in range(self.n) if i != self.base]

    def ordered_pairs(self) -> list[tuple[int, int]]:
        """All of ``M~`` in lexicographic order."""
        return [(i, j) for i in range(self.n) for j in range(self.n) if i != j]

    def scaled(self, c) -> "MetricSpace":
        c = to_fraction(c)
        if c <= 0:
            raise ValueError("scale factor must be positive")
        return MetricSpace(self.labels, self.base, tuple(tuple(c * v for v in row) for row in self.dist))

    def to_json(self) -> dict:
        return {
            "labels": list(self.labels),
            "base": self.labels[self.base],
            "dist": [[fmt(v) for v in row] for row in self.dist],
        }

    @classmethod
    def from_json(cls, doc: dict) -> "MetricSpace":
        try:
            labels = [str(x) for x in doc["labels"]]
            base_label = str(doc["base"])
            dist = doc["dist"]
        except (KeyError, TypeError) as exc:
            raise StructureError(f"metric space document missing field: {exc}") from exc
        if base_label not in labels:
            raise StructureError(f"base {base_label!r} is not a label")
        if not isinstance(dist, list) or not all(isinstance(r, list) for r in dist):
            raise StructureError("dist must be a list of lists")
        try:
            rows = [[to_fraction(v) for v in row] for row in dist]
        except (TypeError, ValueError) as exc:
            raise StructureError(str(exc)) from exc
        return cls(tuple(labels), labels.index(base_label), tuple(map(tuple, rows)))

    @classmethod
    def load(cls, path) -> "MetricSpace":
        with open(path) as fh:
            return cls.from_json(json.load(fh))


@dataclass(frozen=True)
class Violation:
    kind: str  # diagonal | symmetry | positivity | triangle
    points: tuple
    detail: str


@dataclass
class ValidationReport:
    violations: list

    @property
    def valid(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.valid

    def to_json(self, space: MetricSpace | None = None) -> dict:
        def name(i):
            return space.labels[i] if space is not None else i

        return {
            "valid": self.valid,
            "violations": [
                {"kind": v.kind, "points": [name(i) for i in v.points], "detail": v.detail}
                for v in self.violations
            ],
        }


def validate(space: MetricSpace) -> ValidationReport:
    """List every diagonal, symmetry, positivity and triangle violation.

    Symmetric defects are reported once per unordered pair, triangle
    defects once per (i, j, k) with i < k.
    """
    d = space.dist
    n = space.n
    out = []
    for i in range(n):
        if d[i][i] != 0:
            out.append(Violation("diagonal", (i,), f"d[{i}][{i}] = {fmt(d[i][i])}"))
    for i, j in itertools.combinations(range(n), 2):
        if d[i][j] != d[j][i]:
            out.append(Violation("symmetry", (i, j), f"{fmt(d[i][j])} != {fmt(d[j][i])}"))
        if d[i][j] <= 0 or d[j][i] <= 0:
            out.append(Violation("positivity", (i, j), f"d = {fmt(d[i][j])}"))
    for i in range(n):
        for k in range(i + 1, n):
            for j in range(n):
                if j in (i, k):
                    continue
                if d[i][k] > d[i][j] + d[j][k]:
                    out.append(
                        Violation(
                            "triangle",
                            (i, j, k),
                            f"{fmt(d[i][k])} > {fmt(d[i][j])} + {fmt(d[j][k])}",
                        )
                    )
    return ValidationReport(out)


def to_mask(space: MetricSpace, members) -> tuple:
    """Normalize a subset (bool mask, indices or labels) to a bool tuple."""
    members = list(members)
    if len(members) == space.n and all(isinstance(m, bool) for m in members):
        return tuple(members)
    if any(isinstance(m, bool) for m in members):
        raise StructureError(f"mask length {len(members)} != {space.n}")
    chosen = {space.index(m) for m in members}
    return tuple(i in chosen for i in range(space.n))


def members(mask: Sequence[bool]) -> list[int]:
    return [i for i, inside in enumerate(mask) if inside]


def gamma(space: MetricSpace, A) -> list[tuple[int, int]]:
    """Ordered pairs of ``M~`` with at least one coordinate in A."""
    mask = to_mask(space, A)
    return [(i, j) for i, j in space.ordered_pairs() if mask[i] or mask[j]]


def essential_pairs(space: MetricSpace) -> list[tuple[int, int]]:
    """Unordered pairs (i < j) with no point metrically between them.

    A function is 1-Lipschitz as soon as it is 1-Lipschitz on these pairs,
    and every Lipschitz norm is attained on one of them, so LP rows and
    norm scans may be restricted to this list.
    """
    cached = space._cache.get("essential")
    if cached is not None:
        return cached
    d = space.dist
    n = space.n
    out = []
    for i, j in itertools.combinations(range(n), 2):
        dij = d[i][j]
        if not any(d[i][z] + d[z][j] == dij for z in range(n) if z != i and z != j):
            out.append((i, j))
    space._cache["essential"] = out
    return out


def _build(labels, base_label, distance) -> MetricSpace:
    labels = list(labels)
    rows = tuple(
        tuple(Fraction(0) if a == b else Fraction(distance(a, b)) for b in labels) for a in labels
    )
    return MetricSpace(tuple(labels), labels.index(base_label), rows)


def gen_example31(K: int) -> MetricSpace:
    """Points a_k, b_k, c_k (k <= K), based at b_1.

    d(a_k, c_k) = 2, and for k < l d(a_k, b_l) = d(b_k, b_l) = d(c_k, b_l) = 2;
    every other distance between distinct points is 1.
    """
    if K < 1:
        raise ValueError("K must be at least 1")
    labels = [f"{s}{k}" for k in range(1, K + 1) for s in "abc"]

    def dist(x, y):
        (s, k), (t, l) = (x[0], int(x[1:])), (y[0], int(y[1:]))
        if {s, t} == {"a", "c"} and k == l:
            return 2
        if s == "b" and t == "b":
            return 2
        if t == "b" and k < l:
            return 2
        if s == "b" and l < k:
            return 2
        return 1

    return _build(labels, "b1", dist)


def gen_example32(K: int) -> MetricSpace:
    """Points a_1, a_2, b_k, c_k (k <= K), based at c_1.

    Distance 1 exactly for (a_1, b_odd), (a_2, b_even) and (c_k, b_l) with
    k <= l; 2 otherwise.
    """
    if K < 2:
        raise ValueError("K must be at least 2")
    labels = ["a1", "a2"] + [f"b{k}" for k in range(1, K + 1)] + [f"c{k}" for k in range(1, K + 1)]

    def near(x, y):
        s, k = x[0], int(x[1:])
        t, l = y[0], int(y[1:])
        if s == "a" and t == "b":
            return (k == 1 and l % 2 == 1) or (k == 2 and l % 2 == 0)
        if s == "c" and t == "b":
            return k <= l
        return False

    return _build(labels, "c1", lambda x, y: 1 if near(x, y) or near(y, x) else 2)


def gen_l1_pairs(n: int, include_base: bool = True, diagonal: bool = True):
    """The points e_i + e_j of l1 (i <= j <= n, or i < j without diagonal).

    Returns ``(space, vectors)`` where ``vectors[p]`` is the coordinate tuple
    of point p.  With ``include_base`` the zero vector is added and is the
    base point; otherwise the first generated point is.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    vectors, labels = [], []
    if include_base:
        vectors.append((0,) * n)
        labels.append("0")
    for i in range(1, n + 1):
        for j in range(i if diagonal else i + 1, n + 1):
            v = [0] * n
            v[i - 1] += 1
            v[j - 1] += 1
            vectors.append(tuple(v))
            labels.append(f"e{i}+e{j}")
    rows = tuple(
        tuple(Fraction(sum(abs(a - b) for a, b in zip(u, w))) for w in vectors) for u in vectors
    )
    return MetricSpace(tuple(labels), 0, rows), vectors


def from_points(vectors: Iterable[Sequence], labels=None, base: int = 0) -> MetricSpace:
    """Metric space of l1 vectors with exact coordinates."""
    vecs = [tuple(to_fraction(c) for c in v) for v in vectors]
    labels = labels or [f"p{i}" for i in range(len(vecs))]
    rows = tuple(tuple(sum(abs(a - b) for a, b in zip(u, w)) for w in vecs) for u in vecs)
    return MetricSpace(tuple(labels), base, rows)

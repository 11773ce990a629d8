import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_space, random_values, space_and_values, two_point
from lipfree.free import FreeVector, average_molecules, delta, molecule
from lipfree.lipschitz import (
    LipFunction,
    PreconditionError,
    de_leeuw,
    eval_functional,
    extend_fltp,
    lip_norm,
    rs_split,
)
from lipfree.metric import gen_example31, gen_example32, gen_l1_pairs, to_mask
from lipfree.transfer import l1_window_select, PairWeights


def brute_norm(sp, vals):
    return max(abs(vals[i] - vals[j]) / sp.d(i, j) for i in range(sp.n) for j in range(sp.n) if i != j)


def ex32_f(sp):
    K = (sp.n - 2) // 2
    vals = {"a1": 1, "a2": -1}
    for k in range(1, K + 1):
        vals[f"b{k}"] = 1 if k % 2 else -1
    return LipFunction.from_labels(sp, vals)


def test_example32_norming_function():
    sp = gen_example32(8)
    f = ex32_f(sp)
    assert lip_norm(sp, f) == 1
    G = (molecule(sp, "a1", "a2") + average_molecules(sp, [(f"b{2*n-1}", f"b{2*n}") for n in range(1, 5)])) / 2
    assert eval_functional(sp, G, f) == 1


def test_zero_function():
    sp = gen_example31(2)
    f = LipFunction.zeros(sp)
    assert lip_norm(sp, f) == 0
    assert set(de_leeuw(sp, f).values()) == {0}


def test_two_point_de_leeuw():
    sp = two_point(3)
    f = LipFunction([0, 3])
    assert sorted(de_leeuw(sp, f).values()) == [-1, 1]


def test_errors():
    sp = two_point()
    with pytest.raises(ValueError):
        lip_norm(sp, [0, 1, 2])
    with pytest.raises(ValueError):
        lip_norm(sp, [1, 1])


@given(space_and_values())
@settings(max_examples=80, deadline=None)
def test_isometry_and_brute_force(data):
    sp, vals = data
    table = de_leeuw(sp, vals)
    assert max(abs(v) for v in table.values()) == lip_norm(sp, vals) == brute_norm(sp, vals)
    for (i, j), v in table.items():
        assert table[(j, i)] == -v


@given(space_and_values(), st.fractions(-5, 5), st.integers(0, 2**16))
@settings(max_examples=60, deadline=None)
def test_homogeneity_triangle_and_scaling(data, c, seed):
    sp, vals = data
    f = LipFunction(vals)
    g = LipFunction(random_values(random.Random(seed), sp))
    assert lip_norm(sp, f * c) == abs(c) * lip_norm(sp, f)
    assert lip_norm(sp, f + g) <= lip_norm(sp, f) + lip_norm(sp, g)
    if c > 0:
        assert lip_norm(sp.scaled(c), f) == lip_norm(sp, f) / c


def test_eval_functional_examples():
    sp = gen_example31(2)
    x, y = sp.index("a1"), sp.index("c2")
    vals = [Fraction(0)] * sp.n
    vals[x] = sp.d(x, y)
    assert eval_functional(sp, molecule(sp, x, y), vals) == 1
    f = random_values(random.Random(1), sp)
    assert eval_functional(sp, delta(sp, "a2"), f) == f[sp.index("a2")]


def test_eval_functional_is_bilinear():
    rng = random.Random(5)
    sp = random_space(rng, 4, 6)
    f, g = LipFunction(random_values(rng, sp)), LipFunction(random_values(rng, sp))
    mu = FreeVector({i: rng.randint(-3, 3) for i in range(sp.n)})
    nu = FreeVector({i: rng.randint(-3, 3) for i in range(sp.n)})
    assert eval_functional(sp, mu + nu, f) == eval_functional(sp, mu, f) + eval_functional(sp, nu, f)
    assert eval_functional(sp, mu, f + g * 2) == eval_functional(sp, mu, f) + 2 * eval_functional(sp, mu, g)


def test_extend_fltp_example31():
    sp = gen_example31(4)
    A = ["a2", "b2"]
    f = extend_fltp(sp, A, "a2", "b2", LipFunction.zeros(sp), Fraction(1, 2))
    u = sp.index("a2")
    assert f[u] == min(sp.d(x, u) for x in range(sp.n) if sp.labels[x] not in A) == 1
    assert lip_norm(sp, f) <= 1
    assert f[u] - f[sp.index("b2")] >= Fraction(1, 2) * sp.d(u, sp.index("b2"))


def test_extend_fltp_delta_one():
    sp = gen_example31(3)
    f = extend_fltp(sp, ["a2", "c3"], "a2", "c3", LipFunction.zeros(sp), 1)
    assert lip_norm(sp, f) <= 1 and f[sp.index("a2")] - f[sp.index("c3")] >= 0


def test_extend_fltp_preconditions():
    sp = gen_example31(3)
    with pytest.raises(PreconditionError):
        extend_fltp(sp, ["a1", "b1"], "a1", "b1", LipFunction.zeros(sp), Fraction(1, 2))  # base in A
    with pytest.raises(PreconditionError):
        extend_fltp(sp, ["a2"], "a2", "a2", LipFunction.zeros(sp), Fraction(1, 2))
    h = LipFunction.from_labels(sp, {"a1": 1})
    with pytest.raises(PreconditionError) as err:
        extend_fltp(sp, ["a2", "b2"], "a2", "b2", h, Fraction(1, 2))  # ||h|| = 1 > 1/2
    assert err.value.witness is not None


def brute_fltp_gap_ok(sp, A, u, v, h, delta):
    out = [i for i in range(sp.n) if not A[i]]
    return all((1 - delta) * sp.d(u, v) - (h[x] - h[y]) <= sp.d(x, u) + sp.d(y, v) for x in out for y in out)


@pytest.mark.parametrize("seed", range(60))
def test_extend_fltp_random(seed):
    rng = random.Random(seed)
    sp = random_space(rng, 3, 6, base=0)
    delta = Fraction(rng.randint(1, 9), 10)
    A = to_mask(sp, rng.sample(range(1, sp.n), rng.randint(2, sp.n - 1)))
    u, v = rng.sample([i for i in range(sp.n) if A[i]], 2)
    h = LipFunction(random_values(rng, sp))
    nrm = lip_norm(sp, h)
    if nrm:
        h = h * ((1 - delta) / nrm) * Fraction(rng.randint(1, 4), 4)
    if not brute_fltp_gap_ok(sp, A, u, v, h, delta):
        with pytest.raises(PreconditionError):
            extend_fltp(sp, A, u, v, h, delta)
        return
    f = extend_fltp(sp, A, u, v, h, delta)
    assert brute_norm(sp, f.values) <= 1
    assert all(f[i] == h[i] for i in range(sp.n) if not A[i])
    assert f[u] - f[v] >= (1 - delta) * sp.d(u, v)


def brute_budget(sp, out, p, hs):
    return min(
        (sp.d(x, p) + sp.d(y, p) - (h[x] - h[y])) / 2 for h in hs for x in out for y in out
    )


def test_rs_split_zero_functions():
    sp = gen_example31(3)
    A = ["a2", "b2"]
    r0, s0, r, s = rs_split(sp, A, "a2", "b2", [LipFunction.zeros(sp)], Fraction(1, 10))
    out = [i for i in range(sp.n) if sp.labels[i] not in A]
    u = sp.index("a2")
    assert r0 == min((sp.d(x, u) + sp.d(y, u)) / 2 for x in out for y in out) > 0
    assert r + s == Fraction(9, 10) * sp.d(u, sp.index("b2"))
    assert 0 <= r <= r0 and 0 <= s <= s0


def test_rs_split_on_window_selection():
    sp, vecs = gen_l1_pairs(4)
    eps = Fraction(1, 10)
    ch = l1_window_select(vecs, eps, PairWeights())
    rng = random.Random(2)
    hs = []
    for _ in range(3):
        h = LipFunction(random_values(rng, sp))
        hs.append(h * ((1 - eps) / lip_norm(sp, h)))
    r0, s0, r, s = rs_split(sp, ch.A, ch.u, ch.v, hs, eps)
    out = [i for i in range(sp.n) if not ch.A[i]]
    assert r0 == brute_budget(sp, out, ch.u, hs) and s0 == brute_budget(sp, out, ch.v, hs)
    assert r0 + s0 >= (1 - eps) * sp.d(ch.u, ch.v)


def test_rs_split_single_capped_distance():
    sp = gen_example31(3)
    u = sp.index("c2")
    h = LipFunction([min(sp.d(i, u), Fraction(1, 2)) - min(sp.d(sp.base, u), Fraction(1, 2)) for i in range(sp.n)])
    A = ["c2", "a3"]
    r0, s0, _, _ = rs_split(sp, A, "c2", "a3", [h], Fraction(1, 2))
    out = [i for i in range(sp.n) if sp.labels[i] not in A]
    assert r0 == brute_budget(sp, out, u, [h])


def test_rs_split_reports_quadruple():
    sp = gen_example31(2)
    a1 = sp.index("a1")
    h = LipFunction([sp.d(i, a1) - sp.d(sp.base, a1) for i in range(sp.n)])
    with pytest.raises(PreconditionError) as err:
        rs_split(sp, ["a2", "c2"], "a2", "c2", [h], 0)
    w = err.value.witness
    assert set(w) == {"x", "y", "z", "w", "i", "j"}
    d = sp.d
    r0 = (d(w["x"], sp.index("a2")) + d(w["y"], sp.index("a2")) - h[w["x"]] + h[w["y"]]) / 2
    s0 = (d(w["z"], sp.index("c2")) + d(w["w"], sp.index("c2")) - h[w["z"]] + h[w["w"]]) / 2
    assert r0 + s0 < d(sp.index("a2"), sp.index("c2"))

import random
from fractions import Fraction

import numpy as np
import pytest
from scipy.optimize import linprog

from conftest import random_space, two_point
from lipfree.free import FreeVector, delta, molecule
from lipfree.lipschitz import LipFunction, eval_functional, lip_norm
from lipfree.metric import MetricSpace, gen_example31
from lipfree.probes import (
    EmptySlice,
    ProbeSystem,
    Slice,
    bound_probe,
    check_nonempty,
    combo_diameter,
    slice_diameter,
    ssd2p_witness,
    verify_ssd2p,
)


def diameter_oracle(sp, S):
    """Float joint LP over (f, g): max of (f-g)(p) - (f-g)(q) over every ordered pair."""
    n = sp.n
    best = 0.0
    for p in range(n):
        for q in range(n):
            if p == q:
                continue
            rows, rhs = [], []
            for a in range(n):
                for b in range(n):
                    if a == b:
                        continue
                    for off in (0, n):
                        r = np.zeros(2 * n)
                        r[off + a], r[off + b] = 1, -1
                        rows.append(r)
                        rhs.append(float(sp.d(a, b)))
            for off in (0, n):
                r = np.zeros(2 * n)
                for i, w in S.functional.coeffs.items():
                    r[off + i] = -float(w)
                rows.append(r)
                rhs.append(-float(1 - S.alpha))
            c = np.zeros(2 * n)
            c[p], c[q], c[n + p], c[n + q] = -1, 1, 1, -1
            bounds = [(0, 0) if i % n == sp.base else (None, None) for i in range(2 * n)]
            res = linprog(c, A_ub=np.array(rows), b_ub=rhs, bounds=bounds, method="highs")
            assert res.status == 0
            best = max(best, -res.fun / float(sp.d(p, q)))
    return best


def test_two_point_slice_width_is_alpha():
    sp = two_point()
    for a in (Fraction(1, 10), Fraction(1, 3), Fraction(1)):
        res = slice_diameter(sp, Slice.make(sp, delta(sp, "x"), a))
        assert res.value == a
        assert lip_norm(sp, res.f - res.g) == a


def test_alpha_two_gives_whole_ball():
    sp = gen_example31(2)
    S = Slice.make(sp, molecule(sp, "a1", "c2"), 2)
    assert slice_diameter(sp, S).value == 2


def test_monotone_in_alpha():
    sp = gen_example31(2)
    F = molecule(sp, "a2", "c2")
    vals = [slice_diameter(sp, Slice.make(sp, F, Fraction(k, 10))).value for k in range(1, 11)]
    assert vals == sorted(vals)


def test_combo_of_copies_is_slice_diameter():
    sp = gen_example31(2)
    S = Slice.make(sp, molecule(sp, "a1", "b2"), Fraction(1, 5))
    assert combo_diameter(sp, [(S, Fraction(1, 3)), (S, Fraction(2, 3))]).value == slice_diameter(sp, S).value


def test_witnesses_lie_in_slice():
    sp = gen_example31(2)
    S = Slice.make(sp, molecule(sp, "a2", "c1"), Fraction(1, 4), closed=True)
    res = slice_diameter(sp, S)
    assert S.contains(sp, res.f) and S.contains(sp, res.g)
    assert lip_norm(sp, res.f - res.g) == res.value


@pytest.mark.parametrize("seed", range(12))
def test_diameter_against_joint_oracle(seed):
    rng = random.Random(seed)
    sp = random_space(rng, 2, 5)
    i, j = rng.sample(range(sp.n), 2)
    S = Slice.make(sp, molecule(sp, i, j), Fraction(rng.randint(1, 10), 10), closed=True)
    exact = slice_diameter(sp, S)
    assert abs(float(exact.value) - diameter_oracle(sp, S)) <= 1e-7
    assert slice_diameter(sp, S, pairs="all").value == exact.value


def test_combo_weights_validated():
    sp = two_point()
    S = Slice.make(sp, delta(sp, "x"), Fraction(1, 2))
    with pytest.raises(ValueError):
        combo_diameter(sp, [(S, Fraction(1, 2))])
    with pytest.raises(ValueError):
        combo_diameter(sp, [])


def test_empty_open_slice():
    sp = two_point()
    with pytest.raises(EmptySlice):
        check_nonempty(sp, Slice.make(sp, delta(sp, "x"), 0))
    check_nonempty(sp, Slice.make(sp, delta(sp, "x"), 0, closed=True))


def test_ssd2p_two_point_infeasible():
    sp = two_point()
    S = Slice.make(sp, molecule(sp, "x", "0"), Fraction(1, 4))
    res = ssd2p_witness(sp, [S], Fraction(1, 4))
    assert not res.found
    assert all(s is None or s <= 0 for _, _, s in res.table)


def far_point_space():
    d = ((0, 1, 10), (1, 0, 10), (10, 10, 0))
    return MetricSpace(("0", "x", "z"), 0, d)


def test_ssd2p_far_point_witness():
    sp = far_point_space()
    S = Slice.make(sp, molecule(sp, "x", "0"), Fraction(1, 4))
    eps = Fraction(1, 4)
    res = ssd2p_witness(sp, [S], eps)
    assert res.found and res.slack > 0
    assert verify_ssd2p(sp, [S], eps, res.f_list, res.g) == []
    assert set(res.pair) & {sp.index("z")}
    full = ssd2p_witness(sp, [S], eps, stop_at_first=False)
    assert len(full.table) >= len(res.table)


def test_ssd2p_symmetric_in_g():
    sp = far_point_space()
    S = Slice.make(sp, molecule(sp, "x", "0"), Fraction(1, 4))
    res = ssd2p_witness(sp, [S], Fraction(1, 4))
    assert verify_ssd2p(sp, [S], Fraction(1, 4), res.f_list, res.g * -1) == []


def test_ssd2p_eps_range():
    sp = two_point()
    S = Slice.make(sp, delta(sp, "x"), Fraction(1, 2))
    with pytest.raises(ValueError):
        ssd2p_witness(sp, [S], 0)
    with pytest.raises(ValueError):
        ssd2p_witness(sp, [], Fraction(1, 2))


def test_verify_ssd2p_reports_failures():
    sp = two_point()
    S = Slice.make(sp, delta(sp, "x"), Fraction(1, 4))
    probs = verify_ssd2p(sp, [S], Fraction(1, 4), [LipFunction([0, 1])], LipFunction([0, 1]))
    assert any("outside" in p or "> 1" in p for p in probs)


def test_bound_probe_simple():
    sp = two_point()
    system = ProbeSystem(sp, ["f"])
    system.lipschitz({"f": 1})
    system.in_slice({"f": 1}, delta(sp, "x"), Fraction(1, 4))
    system.set_objective({("f", "x"): -1})
    res = bound_probe(sp, system)
    assert res.status == "optimal" and res.value == Fraction(-3, 4)


def test_bound_probe_infeasible_has_certificate():
    sp = two_point()
    system = ProbeSystem(sp, ["f"])
    system.lipschitz({"f": 1})
    system.linear({("f", "x"): 1}, ">=", 2)
    res = bound_probe(sp, system)
    assert res.status == "infeasible"
    assert res.to_json(sp)["certificate"]


def test_probe_json():
    sp = gen_example31(1)
    doc = {
        "unknowns": ["f", "g"],
        "rows": [
            {"type": "lipschitz", "combo": {"f": 1}},
            {"type": "lipschitz", "combo": {"f": 1, "g": 1}},
            {"type": "lipschitz", "combo": {"f": 1, "g": -1}},
            {"type": "slice", "combo": {"f": 1}, "functional": {"coeffs": {"a1": 1}}, "alpha": "1/2"},
        ],
        "objective": {"sense": "max", "terms": [["g", "c1", 1]]},
    }
    res = bound_probe(sp, ProbeSystem.from_json(sp, doc))
    f, g = res.witness["f"], res.witness["g"]
    assert lip_norm(sp, f + g) <= 1 and lip_norm(sp, f - g) <= 1
    assert res.value == g[sp.index("c1")]
    with pytest.raises(KeyError):
        ProbeSystem.from_json(sp, {"unknowns": ["f"], "rows": [{"type": "lipschitz", "combo": {"h": 1}}]})
    with pytest.raises(ValueError):
        ProbeSystem(sp, ["f", "f"])

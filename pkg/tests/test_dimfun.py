import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rankone.characters import effective_character, isotropy_of, sphere_dims
from rankone.dimfun import (
    SuperClassFunction,
    align,
    chain_length,
    closure_condition,
    closure_violations,
    from_json_list,
    is_monotone,
    is_strictly_monotone,
    level_components,
    levels,
    m_G,
    q_period_multiple,
    verify_alignment,
)
from rankone.errors import MaximalNotUnique, RankTooLarge
from rankone.isotropy import Family, rank_one_family
from rankone.permgroup import Perm, builtin


def orbit_count_function(G, restrict=None):
    """dim V^H for the permutation module on the points: the number of H-orbits."""
    vals = {}
    for c in G.lattice:
        if restrict is not None and c.index not in restrict:
            continue
        H = c.representative
        seen, orbits = set(), 0
        for x in range(G.degree):
            if x in seen:
                continue
            orbits += 1
            for h in H.members.tolist():
                seen.add(G.element(h)(x))
        vals[c.index] = orbits
    return SuperClassFunction.from_values(G, vals)


# -- monotonicity --------------------------------------------------------------------------

def test_constant_is_monotone_not_strict():
    G = builtin("A6")
    fam = rank_one_family(G, 2)
    n = SuperClassFunction(G, fam, {i: 5 for i in fam.indices})
    assert is_monotone(n) and not is_strictly_monotone(n)


@pytest.mark.parametrize("name", ["S4", "A5", "D8", "Wr3"])
def test_linear_dimension_function_monotone(name):
    n = orbit_count_function(builtin(name))
    assert is_monotone(n)


@settings(max_examples=20, deadline=None)
@given(st.sampled_from([("A6", 2), ("A6", 3), ("A7", 3), ("S5", 2), ("C4xC4", 2)]))
def test_character_sphere_dims_monotone(case):
    G = builtin(case[0])
    rep = effective_character(G, case[1])
    n = SuperClassFunction(G, isotropy_of(G, rep), {i: v for i, v in sphere_dims(rep).items() if v >= 0})
    assert is_monotone(n)


def test_increasing_value_not_monotone():
    G = builtin("C4")
    n = SuperClassFunction.from_values(G, {"1": 1, "C2": 3, "C4": 0})
    assert not is_monotone(n) and not is_strictly_monotone(n)


def test_family_members_need_values():
    G = builtin("C4")
    with pytest.raises(ValueError):
        SuperClassFunction(G, Family(G, [0, 1]), {0: 3})


def test_json_roundtrip():
    G = builtin("A6")
    n = SuperClassFunction.from_values(G, {"1": 23, "C2": 7, "C4": 7})
    assert from_json_list(G, n.to_list()) == n


# -- closure --------------------------------------------------------------------------------

def test_closure_cyclic_chain():
    G = builtin("C8")
    n = SuperClassFunction.from_values(G, {"1": 7, "C2": 5, "C4": 3, "C8": 1})
    assert is_strictly_monotone(n) and closure_condition(n)


@pytest.mark.parametrize("name", ["S4", "A5", "D8", "Wr3", "A6"])
def test_closure_linear_dimension_function(name):
    G = builtin(name)
    assert closure_condition(orbit_count_function(G))


def test_closure_counterexample():
    G = builtin("C2xC2")
    n = SuperClassFunction.from_values(G, {"1": 3, "C2a": 3, "C2b": 3, "C2c": 1, "C2xC2": 1})
    assert not closure_condition(n)
    v = closure_violations(n)
    assert v and v[0]["join"] == "C2xC2"


# -- levels -----------------------------------------------------------------------------------

def test_levels_and_components():
    G = builtin("C4")
    n = SuperClassFunction.from_values(G, {"1": 5, "C2": 3, "C4": 1})
    assert levels(n) == [5, 3, 1]
    (top, members), = level_components(n, 1)
    assert top.label == "C2" and [c.label for c in members] == ["C2"]


def test_incomparable_classes_split():
    G = builtin("S3")
    n = SuperClassFunction.from_values(G, {"1": 5, "C2": 3, "C3": 3})
    comps = level_components(n, 1)
    assert sorted(c.label for c, _ in comps) == ["C2", "C3"]


def test_two_maxima_raise():
    G = builtin("C2xC2")
    n = SuperClassFunction.from_values(G, {"1": 3, "C2a": 3, "C2b": 3})
    with pytest.raises(MaximalNotUnique):
        level_components(n, 0)


def test_a7_type_b_level():
    G = builtin("A7")
    rep = effective_character(G, 3)
    iso = isotropy_of(G, rep)
    n = SuperClassFunction(G, iso, {i: v for i, v in sphere_dims(rep).items() if v >= 0})
    B = G.lattice.class_of(G.subgroup([G.index(Perm.parse("(1 2 3)(4 5 6)", 7))]))
    (top, members), = level_components(n, 1)
    assert top.index == B.index and [c.index for c in members] == [B.index]


def test_chain_length_readings():
    G = builtin("A6")
    fam = rank_one_family(G, 2)
    assert chain_length(fam) == 2
    assert chain_length(fam, "objects") == 3


# -- periods ----------------------------------------------------------------------------------

def test_q_period_multiples():
    assert q_period_multiple(builtin("C4"), 3) == 2
    for q in (2, 3, 5, 7):
        assert q_period_multiple(builtin(f"C{q}"), q) == 2
    # cohomology of S3 at 3 has period 4
    assert q_period_multiple(builtin("S3"), 3) == 4
    # generalized quaternion: true period 4; the bound lcm(4, 2 |N/C|) = 8 is a multiple
    assert q_period_multiple(builtin("Q8"), 2) == 8
    with pytest.raises(RankTooLarge):
        q_period_multiple(builtin("D8"), 2)


def test_m_g_values():
    assert m_G(builtin("C5")) == 2
    # A6 has cyclic Sylow 5 with N/C of order 2
    assert m_G(builtin("A6")) == 4
    # S5: N/C is C2 at q = 3 and C4 at q = 5
    assert m_G(builtin("S5")) == 8


# -- alignment ---------------------------------------------------------------------------------

@pytest.mark.parametrize("top", [0, 1, 2, 3, 5])
def test_align_single_prime(top):
    G = builtin("C5")
    n = SuperClassFunction.from_values(G, {"1": top})
    plan, nbar = align(G, {5: n}, mg=1)
    k = max(1, math.ceil(4 / (top + 1)))
    assert plan.multipliers == {5: k}
    assert nbar.at(0) == k * (top + 1) - 1


def test_join_scaling_circle():
    G = builtin("C5")
    n = SuperClassFunction.from_values(G, {"1": 1})
    assert n.scaled(2).at(0) == 3


def _per_prime(G):
    out = {}
    for p in (2, 3):
        rep = effective_character(G, p)
        out[p] = SuperClassFunction(G, isotropy_of(G, rep),
                                    {i: v for i, v in sphere_dims(rep).items() if v >= 0})
    return out


def _longest_chain(G, idx):
    M = G.lattice.subconjugacy
    best = {}
    for j in sorted(idx, key=lambda i: G.lattice[i].order):
        best[j] = max([best[i] + 1 for i in best if i != j and M[i, j]], default=0)
    return max(best.values())


def test_align_a6_matches_bruteforce_search():
    G = builtin("A6")
    per = _per_prime(G)
    plan, nbar = align(G, per)
    a = {p: n.at(0) + 1 for p, n in per.items()}
    mg = m_G(G)
    idx = set().union(*(n.values for n in per.values()))
    ell = _longest_chain(G, idx)
    found = None
    for k2 in range(1, 10**4 + 1):
        M = k2 * a[2]
        if M % a[3] or M % mg:
            continue
        k3 = M // a[3]
        vals = {0: M - 1}
        for p, k in ((2, k2), (3, k3)):
            for i, v in per[p].values.items():
                if i:
                    vals[i] = k * (v + 1) - 1
        if min(vals.values()) < 3:
            continue
        ok = True
        for i, v in vals.items():
            if i == 0:
                continue
            c = G.lattice[i]
            p = 2 if c.order % 2 == 0 else 3
            for q in (2, 3, 5):
                if q != p and c.weyl_order % q == 0 and (v + 1) % q_period_multiple(c.weyl_group, q):
                    ok = False
        distinct = sorted(set(vals.values()))
        if any(b - x < ell for x, b in zip(distinct, distinct[1:])):
            ok = False
        if ok:
            found = (k2, k3, vals)
            break
    assert found is not None
    assert plan.multipliers == {2: found[0], 3: found[1]}
    assert {i: nbar.at(i) for i in found[2]} == found[2]
    assert verify_alignment(G, nbar, plan, per).passed


def test_verify_alignment_detects_tampering():
    G = builtin("A6")
    per = _per_prime(G)
    plan, nbar = align(G, per)
    bad = SuperClassFunction(G, nbar.family, {**nbar.values, 0: nbar.at(0) + 1})
    rep = verify_alignment(G, bad, plan, per)
    assert not rep.passed
    assert {f["check"] for f in rep.failures} >= {"top", "topPeriod"}

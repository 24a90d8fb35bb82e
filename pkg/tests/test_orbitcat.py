import json

import numpy as np
import pytest

from orbit_corpus import corpus, involution_reflection, sympy_homology
from rankone.dimfun import SuperClassFunction, is_monotone
from rankone.errors import BoundaryNotSquareZero, FamilyNotClosed, InvalidComplex
from rankone.isotropy import Family, rank_one_family
from rankone.orbitcat import (
    Cell,
    OCComplex,
    add_contractible_pair,
    build_orbit_category,
    check_algrep,
    complex_from_json,
    complex_to_json,
    dim_functions,
    is_homology_sphere,
    is_oriented,
    is_tight,
    load_complex,
    point,
    reflection_circle,
    restriction_image,
    rotation_circle,
)
from rankone.orbitcat.chain import column_intersection, same_lattice
from rankone.orbitcat.snf import elementary_divisors
from rankone.permgroup import builtin

CORPUS = corpus()


def fixed_coset_count(G, H, K):
    """|(G/K)^H| by listing cosets."""
    cosets = {frozenset(G.mul(x, k) for k in K.members.tolist()) for x in range(G.order)}
    return sum(
        1 for C in cosets
        if all({G.mul(h, x) for x in C} == C for h in H.members.tolist())
    )


def subgroups_containing(G, H):
    out = []
    for c in G.lattice:
        for bits, K in zip(c.conjugate_bits, c.conjugates()):
            if H.bits & bits == H.bits:
                out.append(K)
    return out


# -- orbit category ----------------------------------------------------------------------

def test_free_family_is_the_group():
    G = builtin("S3")
    oc = build_orbit_category(G, Family(G, [0]))
    mor = oc.morphisms(0, 0)
    assert sorted(mor.tolist()) == list(range(G.order))
    for g in range(G.order):
        for h in range(G.order):
            assert oc.compose(g, h, 0) == G.mul(g, h)


def test_c2_morphism_counts():
    G = builtin("C2")
    oc = build_orbit_category(G, Family(G, [0, 1]))
    assert oc.size(0, 1) == 1
    assert oc.size(1, 0) == 0
    assert oc.size(1, 1) == 1 and oc.size(0, 0) == 2


def test_a6_rank_one_family_counts():
    G = builtin("A6")
    oc = build_orbit_category(G, rank_one_family(G, 2))
    counts = oc.to_dict()["morphismCounts"]
    assert counts == {
        "1->1": 360, "1->C2": 180, "1->C4": 90,
        "C2->C2": 4, "C2->C4": 2, "C4->C4": 2,
    }


@pytest.mark.parametrize("name", ["S4", "D8", "A5"])
def test_morphism_counts_match_coset_oracle(name):
    G = builtin(name)
    oc = build_orbit_category(G, Family(G, [c.index for c in G.lattice]))
    for a in G.lattice:
        for b in G.lattice:
            assert oc.size(a, b) == fixed_coset_count(G, a.representative, b.representative)


def test_composition_associative_and_factors():
    G = builtin("S4")
    oc = build_orbit_category(G, Family(G, [c.index for c in G.lattice]))
    comp = oc.composition
    objs = [c.index for c in G.lattice]
    for a in objs:
        for b in objs:
            for c in objs:
                for d in objs:
                    if (a, b, c) not in comp or (b, c, d) not in comp:
                        continue
                    for f in oc.morphisms(a, b).tolist():
                        for g in oc.morphisms(b, c).tolist():
                            for h in oc.morphisms(c, d).tolist():
                                left = oc.compose(oc.compose(f, g, c), h, d)
                                right = oc.compose(f, oc.compose(g, h, d), d)
                                assert left == right
    # every map G/H -> G/K is an inclusion into a conjugate followed by an isomorphism
    L = G.lattice
    for a in L:
        for b in L:
            H = a.representative
            for g in oc.morphisms(a, b).tolist():
                assert H <= b.representative.conjugate(G.inv[g]) or H <= b.representative.conjugate(g)


def test_family_must_be_closed():
    G = builtin("A6")
    keep = [c.index for c in rank_one_family(G, 2) if c.label != "C2"]
    fam = Family(G, keep, check=False)
    with pytest.raises(FamilyNotClosed):
        build_orbit_category(G, fam)


# -- evaluation and homology on small examples ---------------------------------------------

def test_reflection_circle_evaluations():
    G = builtin("C2")
    C = reflection_circle(G, 1)
    top = C.evaluate(G.whole)
    assert (top.rank(0), top.rank(1)) == (2, 0)
    bottom = C.evaluate(G.trivial)
    assert (bottom.rank(0), bottom.rank(1)) == (2, 2)
    H = C.homology()
    top_h = H.at(1)
    assert top_h[0].rank == 1 and all(h.is_zero for d, h in top_h.items() if d != 0)
    low = H.at(0)
    assert low[1].rank == 1 and low[1].actions == [[[-1]]]
    assert all(h.is_zero for d, h in low.items() if d != 1)
    D, HD = dim_functions(C)
    assert D == HD
    assert D.as_label_dict() == {"1": 1, "C2": 0}
    assert is_homology_sphere(C, HD) and check_algrep(C, HD).passed
    assert not is_oriented(C)


def test_rotation_circle_oriented_sphere():
    for name in ("C2", "C3", "C5"):
        G = builtin(name)
        C = rotation_circle(G)
        D, HD = dim_functions(C)
        assert is_homology_sphere(C, HD) and is_oriented(C)
        E = C.evaluate(G.trivial)
        assert E.rank(0) == E.rank(1) == G.order
        assert C.evaluate(G.whole).is_zero


def test_point_is_not_a_zero_sphere():
    G = builtin("S3")
    C = point(G)
    for c in G.lattice:
        E = C.evaluate(c.representative)
        assert E.rank(0) == 1
    zero = SuperClassFunction.from_values(G, {c.index: 0 for c in G.lattice})
    assert not is_homology_sphere(C, zero)


def test_free_orbit_evaluates_to_regular_module():
    G = builtin("S3")
    C = OCComplex(G, {0: [Cell(G.trivial, [])]})
    assert C.evaluate(G.trivial).rank(0) == 6
    for c in G.lattice[1:]:
        assert C.evaluate(c.representative).is_zero


def test_zero_complex():
    G = builtin("C3")
    C = OCComplex(G, {}, augmented=False)
    assert C.homology().to_dict()["classes"] == {}
    D, HD = dim_functions(C)
    assert all(D.at(c) == HD.at(c) == -1 for c in G.lattice)


def test_padding_breaks_tightness_not_homology():
    G = builtin("C2")
    C = reflection_circle(G, 1)
    P = add_contractible_pair(C, 1, 0)
    assert is_tight(C) and not is_tight(P)
    assert P.homology(actions=False).to_dict() == C.homology(actions=False).to_dict()
    D, HD = dim_functions(P)
    assert D.at(0) == 2 and HD.at(0) == 1


def test_closure_failure_reported():
    G = builtin("C2xC2")
    C = point(G)
    L = G.lattice
    nbar = SuperClassFunction.from_values(G, {
        "1": 0, "C2a": 0, "C2b": 0, "C2c": -1, "C2xC2": -1,
    })
    rep = check_algrep(C, nbar)
    checks = {f["check"] for f in rep.failures}
    assert checks == {"closure"}
    assert L.by_label("C2xC2") is not None


def test_restriction_iso_failure():
    # reflection circle with the wrong level: C(C2) is an S^0, C(1) an S^1
    G = builtin("C2")
    C = reflection_circle(G, 1)
    nbar = SuperClassFunction.from_values(G, {"1": 1, "C2": 1})
    rep = check_algrep(C, nbar)
    assert {f["check"] for f in rep.failures} == {"restrictionIso"}


def test_invalid_stabilizer_rejected():
    G = builtin("C2")
    with pytest.raises(InvalidComplex):
        OCComplex(G, {0: [Cell(G.trivial, [])], 1: [Cell(G.whole, [(0, 1, 0)])]})


def test_non_square_zero_rejected():
    G = builtin("C2")
    with pytest.raises(BoundaryNotSquareZero):
        OCComplex(G, {
            0: [Cell(G.whole, [])],
            1: [Cell(G.whole, [])],
            2: [Cell(G.whole, [(0, 1, 0)])],
            3: [Cell(G.whole, [(0, 1, 0)])],
        }, augmented=False)


# -- JSON ----------------------------------------------------------------------------------

@pytest.mark.parametrize("name", sorted(CORPUS))
def test_json_roundtrip(name):
    C = CORPUS[name]
    _, HD = dim_functions(C)
    obj = json.loads(json.dumps(complex_to_json(C, HD)))
    B, nbar = complex_from_json(obj)
    assert nbar == HD.as_label_dict(include_outside=True)
    for c in C.group.lattice:
        assert B.evaluate(c.representative).chain.bd == C.evaluate(c.representative).chain.bd


def test_bundled_examples(tmp_path):
    from importlib.resources import files

    base = files("rankone") / "data" / "complexes"
    C, nbar = load_complex(str(base / "reflection_circle.json"))
    assert nbar == {"1": 1, "C2": 0}
    assert not is_oriented(C)
    C, _ = load_complex(str(base / "rotation_circle.json"))
    assert is_oriented(C)
    with pytest.raises(InvalidComplex):
        load_complex(str(base / "corrupted_boundary.json"))


# -- properties over the corpus ---------------------------------------------------------------

@pytest.mark.parametrize("name", sorted(CORPUS))
def test_square_zero_everywhere(name):
    C = CORPUS[name]
    for c in C.group.lattice:
        E = C.evaluate(c.representative)
        E.chain.check_square_zero()
        E.reduced.check_square_zero()


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_homology_matches_sympy(name):
    C = CORPUS[name]
    for c in C.group.lattice:
        E = C.evaluate(c.representative)
        for ch in (E.chain, E.reduced):
            ours = {d: (h.rank, sorted(h.torsion)) for d, h in ch.homology().items() if not h.is_zero}
            assert ours == sympy_homology(ch)
            euler = sum((-1) ** d * h[0] for d, h in ours.items())
            assert euler == ch.euler()


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_dim_monotone(name):
    D, HD = dim_functions(CORPUS[name])
    assert is_monotone(D)
    assert is_monotone(HD)


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_tight_sphere_is_algebraic_representation(name):
    C = CORPUS[name]
    D, HD = dim_functions(C)
    if is_tight(C) and is_homology_sphere(C, D):
        assert check_algrep(C, D).passed


def test_corpus_has_tight_spheres():
    tight = [n for n, C in CORPUS.items() if is_tight(C) and is_homology_sphere(C, dim_functions(C)[0])]
    assert len(tight) >= 8


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_restriction_injective_with_free_cokernel(name):
    C = CORPUS[name]
    G = C.group
    L = G.lattice
    M = L.subconjugacy
    for a in L:
        for b in L:
            if not M[a.index, b.index]:
                continue
            EH, EK = C.evaluate(a.representative), C.evaluate(b.representative)
            from rankone.orbitcat.complex import morphisms
            for g in morphisms(G, a.representative, b.representative).tolist():
                for d, F in EH.map_from(EK, g).items():
                    if d < 0 or not EK.rank(d):
                        continue
                    divs = elementary_divisors(F, EH.rank(d), EK.rank(d))
                    assert divs == [1] * EK.rank(d)


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_image_intersection_is_join_image(name):
    C = CORPUS[name]
    G = C.group
    for c in G.lattice:
        H = c.representative
        over = subgroups_containing(G, H)
        for K in over:
            for Lg in over:
                J = G.join_subgroups(K, Lg)
                IK, IL, IJ = (restriction_image(C, H, X) for X in (K, Lg, J))
                assert (IK & IL) == IJ
                for d in IK.evaluation.basis:
                    m = IK.evaluation.rank(d)
                    meet = column_intersection(IK.inclusion(d), IL.inclusion(d), m)
                    assert same_lattice(meet, IJ.inclusion(d), m)


def test_restriction_image_identity():
    G = builtin("C2")
    C = reflection_circle(G, 1)
    img = restriction_image(C, G.trivial, G.trivial)
    E = C.evaluate(G.trivial)
    assert all(img.rank(d) == E.rank(d) for d in E.basis)


def test_v4_linear_sphere_levels():
    D, _ = dim_functions(CORPUS["V4 reflection*reflection"])
    assert D.as_label_dict() == {"1": 3, "C2a": 2, "C2b": 2, "C2c": 1, "C2xC2": 1}


def test_involution_reflection_generalizes():
    G = builtin("C2")
    A = involution_reflection(G, G.trivial)
    B = reflection_circle(G, 1)
    assert dim_functions(A)[0] == dim_functions(B)[0]
    assert np.array_equal(A.action(1, 1), B.action(1, 1))

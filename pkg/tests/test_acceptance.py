"""Acceptance criteria, one test per criterion.

Each criterion records a PASS/FAIL line with its wall time; the lines are
printed in the pytest terminal summary and when the file is run directly
with ``python3 tests/test_acceptance.py``.
"""
import itertools
import math
import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from orbit_corpus import corpus, sympy_homology  # noqa: E402
from rankone.characters import (  # noqa: E402
    augmented_perm_character,
    double_coset_criterion,
    p_effective,
    rank_one_subgroups,
)
from rankone.goldens import facts_a6, facts_a7  # noqa: E402
from rankone.isotropy import check_theorem_A, involves_qd, rank_profile  # noqa: E402
from rankone.orbitcat import (  # noqa: E402
    check_algrep,
    dim_functions,
    extension_functor,
    is_homology_sphere,
    is_tight,
    level_quotient,
    periodic_resolution,
    restriction_image,
)
from rankone.orbitcat.chain import column_intersection, same_lattice  # noqa: E402
from rankone.orbitcat.complex import morphisms  # noqa: E402
from rankone.orbitcat.snf import elementary_divisors  # noqa: E402
from rankone.permgroup import builtin  # noqa: E402
from rankone.pipeline import run_check  # noqa: E402

RESULTS = {}


def record(number, bound, fn):
    t0 = time.perf_counter()
    try:
        fn()
        ok, why = True, ""
    except Exception as exc:
        msg = str(exc).splitlines()[0] if str(exc) else ""
        ok, why = False, f"{type(exc).__name__}: {msg}" if msg else type(exc).__name__
    elapsed = time.perf_counter() - t0
    if ok and bound is not None and elapsed >= bound:
        ok, why = False, f"took {elapsed:.1f} s, bound {bound} s"
    RESULTS[number] = (ok, elapsed, bound, why)
    return ok, why


def line(number):
    ok, elapsed, bound, why = RESULTS[number]
    limit = f" (< {bound} s)" if bound else ""
    tail = f": {why}" if why else ""
    return f"criterion {number}: {'PASS' if ok else 'FAIL'} in {elapsed:.2f} s{limit}{tail}"


# -- 1. A6 golden table ----------------------------------------------------------------

A6_EXPECTED = {
    "sylow2": "D8",
    "H2": ["1", "C2", "C4"],
    "normalizerC2": {"order": 8, "isSylow": True, "rank3Weyl": 0},
    "normalizerC4": {"order": 8, "isSylow": True, "rank3Weyl": 0},
    "order3Classes": {"count": 2, "byGenerator": {
        "(1 2 3)": {"weylOrder": 6, "rank2Weyl": 1},
        "(1 2 3)(4 5 6)": {"weylOrder": 6, "rank2Weyl": 1},
    }},
    "check": "PASS",
}


def criterion_1():
    got = facts_a6()
    for key, want in A6_EXPECTED.items():
        assert got[key] == want, f"A6 {key}: expected {want!r}, got {got[key]!r}"
    report, ok = run_check(builtin("A6"))
    assert ok and report["verdict"] == "PASS", "check A6 did not pass"


# -- 2. A7 golden table -----------------------------------------------------------------

A7_EXPECTED = {
    "sylow3": "C3xC3",
    "sylow2OfNormalizerC3A": "D8",
    "weylC3A": {"order": 24, "rank2": 2},
    "normalizerC3B": {"order": 18, "structure": "C3^2:C2", "rank2Weyl": 1},
    "normalizerC2": {"order": 24, "rank3Weyl": 1},
    "normalizerC4": {"structure": "D8", "rank3Weyl": 0},
}


def criterion_2():
    got = facts_a7()
    for key, want in A7_EXPECTED.items():
        assert got[key] == want, f"A7 {key}: expected {want!r}, got {got[key]!r}"
    t = got["theoremAAndTypeB"]
    assert t["failsAt"] == ["C3a"] and t["generatorOfFailingClass"] == "(1 2 3)", f"A7 failure set {t['failsAt']}"
    assert t["kernelsAreDoubleThreeCycles"] and t["respectsFusion"] and t["effective"]
    assert t["isotropy"] == ["1", "C3b"], f"A7 isotropy {t['isotropy']}"
    G = builtin("A7")
    rep = check_theorem_A(G)
    bad = sorted({r["class"] for r in rep.data["conditionTable"] if not r["passed"]})
    assert bad == ["C3a"], f"theorem A fails at {bad}"


# -- 3. Qd obstruction and the theorem B route ---------------------------------------------

def criterion_3():
    w = involves_qd(builtin("Qd3"), 3)
    assert w is not None and w["K"] == "1", "Qd(3) not self-involved at K = 1"
    report, ok = run_check(builtin("Qd3"), primes=[3])
    assert not ok and report["qd"]["3"]["involved"]
    for name in ("A6", "A7"):
        assert involves_qd(builtin(name), 3) is None, f"{name} reports Qd(3)"
    S5 = builtin("S5")
    assert rank_profile(S5).prime_set == [2]
    rep = check_theorem_A(S5)
    assert rep.passed and rep.data["theoremB"] == {"applicable": True, "prime": 2}


# -- 4. double-coset criterion against the direct computation ----------------------------------

def _fixed_dim_by_orbits(G, Q, Ks):
    total = 0
    for K in Ks:
        cosets = {frozenset(G.mul(x, k) for k in K.members.tolist()) for x in Q.members.tolist()}
        seen, orbits = set(), 0
        for C in cosets:
            if C in seen:
                continue
            orbits += 1
            for e in Q.members.tolist():
                seen.add(frozenset(G.mul(e, x) for x in C))
        total += orbits - 1
    return total


def criterion_4():
    for p in (2, 3, 5):
        G = builtin(f"Wr{p}")
        Qs = [c.representative for c in G.lattice
              if c.order == p * p and c.representative.is_abelian
              and all(int(o) in (1, p) for o in G.element_orders[c.representative.members])]
        assert Qs, f"no elementary abelian subgroup of order {p * p} in Wr{p}"
        for Q in Qs:
            Ks = rank_one_subgroups(Q, p)
            assert len(Ks) == p + 1
            for r in range(1, len(Ks) + 1):
                for fam in itertools.combinations(Ks, r):
                    chi = sum((augmented_perm_character(Q, K) for K in fam[1:]),
                              augmented_perm_character(Q, fam[0]))
                    direct = p_effective(G, Q, chi, p)
                    assert double_coset_criterion(Q, list(fam), p) == direct, f"p = {p}: verdicts differ"
                    assert direct == (_fixed_dim_by_orbits(G, Q, fam) == 0), f"p = {p}: orbit oracle differs"


# -- 5. orbit-category property suite -----------------------------------------------------

def _over(G, H):
    out = []
    for c in G.lattice:
        for bits, K in zip(c.conjugate_bits, c.conjugates()):
            if H.bits & bits == H.bits:
                out.append(K)
    return out


def criterion_5():
    complexes = corpus()
    assert len(complexes) >= 10
    tight_spheres = 0
    for name, C in complexes.items():
        G = C.group
        L = G.lattice
        M = L.subconjugacy
        ev = {c.index: C.evaluate(c.representative) for c in L}
        D = dim_functions(C)[0]
        for E in ev.values():
            E.chain.check_square_zero()
            E.reduced.check_square_zero()
            for ch in (E.chain, E.reduced):
                ours = {d: (h.rank, sorted(h.torsion)) for d, h in ch.homology().items() if not h.is_zero}
                assert ours == sympy_homology(ch), f"{name}: homology differs from the oracle"
        for a in L:
            for b in L:
                if not M[a.index, b.index]:
                    continue
                EH, EK = ev[a.index], ev[b.index]
                for g in morphisms(G, a.representative, b.representative).tolist():
                    for d, F in EH.map_from(EK, g).items():
                        if d >= 0 and EK.rank(d):
                            divs = elementary_divisors(F, EH.rank(d), EK.rank(d))
                            assert divs == [1] * EK.rank(d), f"{name}: restriction not split injective"
                assert D.at(b) <= D.at(a), f"{name}: Dim not monotone"
        for c in L:
            H = c.representative
            over = _over(G, H)
            for K, Lg in itertools.combinations_with_replacement(over, 2):
                IK, IL = restriction_image(C, H, K), restriction_image(C, H, Lg)
                IJ = restriction_image(C, H, G.join_subgroups(K, Lg))
                for d in IK.evaluation.basis:
                    m = IK.evaluation.rank(d)
                    meet = column_intersection(IK.inclusion(d), IL.inclusion(d), m)
                    assert same_lattice(meet, IJ.inclusion(d), m), f"{name}: image intersection"
        if is_tight(C) and is_homology_sphere(C, D):
            tight_spheres += 1
            assert check_algrep(C, D).passed, f"{name}: tight sphere is not an algebraic representation"
    assert tight_spheres >= 8


# -- 6. extension functor level pattern ----------------------------------------------------

def criterion_6():
    G = builtin("Wr3")
    K = G.lattice.by_label("C3a")
    for n in (1, 3):
        E = extension_functor(periodic_resolution(K.weyl_group, n), K.representative, G)
        below = [c for c in G.lattice if c.order < K.order]
        Q = level_quotient(E, below)
        level = [c for c in G.lattice if c.order == K.order and not E.evaluate(c.representative).is_zero]
        assert [c.index for c in level] == [K.index]
        for c in G.lattice:
            H = {d: (h.rank, list(h.torsion)) for d, h in Q[c.index].homology().items() if not h.is_zero}
            want = {0: (1, []), n: (1, [])} if c.index == K.index else {}
            assert H == want, f"n = {n}, class {c.label}: {H}"


# -- 7. alignment soundness, checked from scratch ------------------------------------------------

def _closure(G, elems):
    S = set(elems) | {0}
    frontier = list(S)
    while frontier:
        x = frontier.pop()
        for y in list(S):
            for z in (G.mul(x, y), G.mul(y, x)):
                if z not in S:
                    S.add(z)
                    frontier.append(z)
    return frozenset(S)


def _conjugates(G, S):
    return {frozenset(G.conj(g, x) for x in S) for g in range(G.order)}


def _prime_factors(n):
    return [q for q in range(2, n + 1) if n % q == 0 and all(q % r for r in range(2, q))]


def _period_multiple(G, N, H, q):
    """2 |N_W(Q)/C_W(Q)| for W = N/H with cyclic Sylow q-subgroup Q, found by brute force."""
    cosets = {frozenset(G.mul(n, h) for h in H) for n in N}
    cosets = sorted(cosets, key=min)
    idx = {x: i for i, C in enumerate(cosets) for x in C}
    rep = [min(C) for C in cosets]
    mul = lambda a, b: idx[G.mul(rep[a], rep[b])]
    e = idx[0]
    order_w = len(cosets)
    qpart = q ** max(k for k in range(order_w.bit_length()) if order_w % q ** k == 0)
    if qpart == 1:
        return 2

    def order(a):
        k, x = 1, a
        while x != e:
            x, k = mul(x, a), k + 1
        return k

    gen = next((a for a in range(order_w) if order(a) == qpart), None)
    assert gen is not None, "Sylow subgroup of the Weyl group is not cyclic"
    Q, x = {e}, gen
    while x != e:
        Q.add(x)
        x = mul(x, gen)
    inv = {a: next(b for b in range(order_w) if mul(a, b) == e) for a in range(order_w)}
    norm = [w for w in range(order_w) if {mul(mul(w, y), inv[w]) for y in Q} == Q]
    cent = [w for w in range(order_w) if all(mul(w, y) == mul(y, w) for y in Q)]
    return 2 * len(norm) // len(cent)


def criterion_7():
    G = builtin("A6")
    report, ok = run_check(G)
    assert ok
    nbar = report["alignment"]["nbar"]
    L = G.lattice
    # every actual subgroup in the family, with its value
    value = {}
    primes = {}
    for label, v in nbar.items():
        c = L.by_label(label)
        S = frozenset(c.representative.members.tolist())
        primes[label] = _prime_factors(len(S))
        for T in _conjugates(G, S):
            value[T] = (label, v)
    subs = list(value)
    # monotone
    for A in subs:
        for B in subs:
            if A <= B:
                assert value[B][1] <= value[A][1], f"not monotone at {value[A][0]} <= {value[B][0]}"
    # closure: H <= K, L at one level forces <K, L> into that level
    for H in subs:
        v = value[H][1]
        over = [K for K in subs if H <= K and value[K][1] == v]
        for K1, K2 in itertools.combinations(over, 2):
            J = _closure(G, K1 | K2)
            assert J in value and value[J][1] == v, f"closure fails over {value[H][0]}"
    # lower bound and top period
    assert min(nbar.values()) >= 3
    mg = 1
    for q in _prime_factors(G.order):
        qelems = [x for x in range(G.order) if G.element_orders[x] == q]
        # rank two at q: two commuting elements of order q generating different subgroups
        rank_two = any(
            G.mul(a, b) == G.mul(b, a) and b not in _closure(G, [a])
            for a in qelems for b in qelems
        )
        if not rank_two:
            whole = frozenset(range(G.order))
            mg = math.lcm(mg, _period_multiple(G, whole, frozenset([0]), q))
    assert mg == 4, f"m_G = {mg}"
    assert (nbar["1"] + 1) % mg == 0
    # per-class periods of the Weyl groups at primes other than the class prime
    for label, v in nbar.items():
        if label == "1":
            continue
        H = frozenset(L.by_label(label).representative.members.tolist())
        N = [g for g in range(G.order) if frozenset(G.conj(g, x) for x in H) == H]
        p = primes[label][0]
        for q in _prime_factors(len(N) // len(H)):
            if q != p:
                per = _period_multiple(G, N, H, q)
                assert (v + 1) % per == 0, f"{label}: {v + 1} not divisible by {per} at q = {q}"
    # gaps at least the longest chain of family subgroups (counted in maps)
    longest = {}
    for S in sorted(subs, key=len):
        longest[S] = max((longest[T] + 1 for T in longest if T < S), default=0)
    ell = max(longest.values())
    vals = sorted(set(nbar.values()))
    assert all(b - a >= ell for a, b in zip(vals, vals[1:])), f"gaps {vals} below chain length {ell}"


CRITERIA = {
    1: (60, criterion_1),
    2: (300, criterion_2),
    3: (60, criterion_3),
    4: (None, criterion_4),
    5: (60, criterion_5),
    6: (None, criterion_6),
    7: (None, criterion_7),
}


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number):
    bound, fn = CRITERIA[number]
    ok, why = record(number, bound, fn)
    print(line(number))
    assert ok, why


if __name__ == "__main__":
    failed = 0
    for number in sorted(CRITERIA):
        bound, fn = CRITERIA[number]
        ok, _ = record(number, bound, fn)
        failed += not ok
        print(line(number))
    sys.exit(1 if failed else 0)

"""Dimension functions on subgroup classes and the alignment of per-prime data.

A :class:`SuperClassFunction` assigns an integer to every conjugacy class of
subgroups, with ``-1`` outside its family.  :func:`align` scales per-prime
sphere dimension functions by joins so that they share one top dimension
and satisfy the period, size and gap side conditions; :func:`verify_alignment`
rechecks the result without reusing the solver's arithmetic.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd, lcm

import numpy as np

from .errors import Infeasible, MaximalNotUnique, RankTooLarge
from .isotropy import Family, p_rank
from .permgroup.group import Group, centralizer, normalizer, prime_factors, sylow
from .report import ConditionReport


class SuperClassFunction:
    """Integer function on subgroup classes of ``group``; ``-1`` outside ``family``.

    Parameters
    ----------
    group : Group
    family : Family
    values : dict
        Class index (or label) to value, for the members of ``family``.
    """

    def __init__(self, group, family, values):
        self.group = group
        self.family = family
        L = group.lattice
        vals = {}
        for k, v in values.items():
            idx = L.by_label(k).index if isinstance(k, str) else int(k)
            vals[idx] = int(v)
        self.values = {}
        for i in family.indices:
            v = vals.get(i, -1)
            if v < 0:
                raise ValueError(f"family member {L[i].label} needs a value >= 0")
            self.values[i] = v

    @classmethod
    def from_values(cls, group, values):
        """Family = classes with a nonnegative value."""
        L = group.lattice
        norm = {}
        for k, v in values.items():
            idx = L.by_label(k).index if isinstance(k, str) else int(k)
            norm[idx] = int(v)
        fam = Family(group, [i for i, v in norm.items() if v >= 0], check=False)
        return cls(group, fam, {i: v for i, v in norm.items() if v >= 0})

    def at(self, c) -> int:
        i = c.index if hasattr(c, "index") else int(c)
        return self.values.get(i, -1)

    __getitem__ = at

    def scaled(self, k):
        """Join of ``k`` copies: ``n -> k (n + 1) - 1`` on the family."""
        return SuperClassFunction(
            self.group, self.family, {i: k * (v + 1) - 1 for i, v in self.values.items()}
        )

    def to_list(self):
        return [
            {"classLabel": c.label, "order": c.order, "value": self.at(c)}
            for c in self.group.lattice
        ]

    to_dict = to_list

    def as_label_dict(self, include_outside=False):
        return {
            c.label: self.at(c)
            for c in self.group.lattice
            if include_outside or c.index in self.values
        }

    def __eq__(self, other):
        return (
            isinstance(other, SuperClassFunction)
            and other.group is self.group
            and all(self.at(c) == other.at(c) for c in self.group.lattice)
        )

    def __repr__(self):
        return f"SuperClassFunction({self.as_label_dict()})"


def from_json_list(group, items) -> SuperClassFunction:
    """Inverse of :meth:`SuperClassFunction.to_list` (entries with value -1 may be omitted)."""
    return SuperClassFunction.from_values(group, {d["classLabel"]: d["value"] for d in items})


# -- predicates ------------------------------------------------------------------

def is_monotone(n: SuperClassFunction) -> bool:
    """``n(K) <= n(H)`` whenever ``(H) <= (K)``, over all classes."""
    M = n.group.lattice.subconjugacy
    vals = np.array([n.at(c) for c in n.group.lattice])
    i, j = np.nonzero(M)
    return bool((vals[j] <= vals[i]).all())


def is_strictly_monotone(n: SuperClassFunction) -> bool:
    """``n(K) < n(H)`` whenever ``(H) < (K)`` and ``n(H) > -1``."""
    M = n.group.lattice.subconjugacy
    vals = np.array([n.at(c) for c in n.group.lattice])
    i, j = np.nonzero(M)
    sel = (i != j) & (vals[i] > -1)
    return bool((vals[j][sel] < vals[i][sel]).all())


def closure_violations(n: SuperClassFunction, limit=None):
    """Triples ``H <= K, L`` at one level whose join leaves the level."""
    G = n.group
    L = G.lattice
    out = []
    seen = set()
    levels = {}
    for i, v in n.values.items():
        levels.setdefault(v, []).append(i)
    for v, idx in levels.items():
        same = [L[i] for i in idx]
        for ch in same:
            H = ch.representative
            # all actual subgroups at this level that contain H
            over = []
            for ck in same:
                if ck.order % ch.order:
                    continue
                for b, Kg in zip(ck.conjugate_bits, ck.conjugates()):
                    if H.bits & b == H.bits:
                        over.append(Kg)
            for a in range(len(over)):
                for b in range(a + 1, len(over)):
                    K1, K2 = over[a], over[b]
                    if K1 <= K2 or K2 <= K1:
                        continue
                    Mj = G.join_subgroups(K1, K2)
                    cm = L.class_of(Mj)
                    key = (ch.index, L.class_of(K1).index, L.class_of(K2).index, cm.index)
                    if n.at(cm) != v and key not in seen:
                        seen.add(key)
                        out.append({
                            "H": ch.label, "K": L.class_of(K1).label,
                            "L": L.class_of(K2).label, "join": cm.label,
                            "level": v, "joinValue": n.at(cm),
                        })
                        if limit and len(out) >= limit:
                            return out
    return out


def closure_condition(n: SuperClassFunction) -> bool:
    """For ``H <= K, L`` at one common level, ``<K, L>`` is at that level too."""
    return not closure_violations(n, limit=1)


def closure_report(n: SuperClassFunction, limit=5) -> ConditionReport:
    rep = ConditionReport("closure")
    viol = closure_violations(n, limit=limit)
    rep.record("closure", not viol, witnesses=viol)
    return rep


def levels(n: SuperClassFunction):
    """Distinct values on the family, in decreasing order."""
    return sorted(set(n.values.values()), reverse=True)


def level_components(n: SuperClassFunction, i, *, restrict_to=None):
    """Split the ``i``-th level set (0-based, decreasing values) into poset components.

    Returns a list of ``(maximal_class, member_classes)``.

    Raises
    ------
    MaximalNotUnique
        If a component has more than one maximal class.
    """
    G = n.group
    L = G.lattice
    M = L.subconjugacy
    value = levels(n)[i]
    idx = sorted(k for k, v in n.values.items() if v == value)
    if restrict_to is not None:
        idx = [k for k in idx if k in restrict_to]
    parent = {k: k for k in idx}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a in idx:
        for b in idx:
            if M[a, b]:
                ra, rb = find(a), find(b)
                if ra != rb:
                    parent[max(ra, rb)] = min(ra, rb)
    comps = {}
    for k in idx:
        comps.setdefault(find(k), []).append(k)
    out = []
    for members in comps.values():
        maxima = [a for a in members if not any(M[a, b] and a != b for b in members)]
        if len(maxima) != 1:
            raise MaximalNotUnique(
                f"level {value}: maximal classes {[L[a].label for a in maxima]}"
            )
        out.append((L[maxima[0]], [L[a] for a in members]))
    out.sort(key=lambda t: t[0].index)
    return out


# -- periods -------------------------------------------------------------------------

def q_period_multiple(W, q) -> int:
    """An even multiple of the ``q``-period of ``W`` (``rk_q(W) <= 1`` required).

    Trivial Sylow: 2.  Cyclic Sylow ``Q``: ``2 |N_W(Q) / C_W(Q)|``.
    Generalized quaternion: ``lcm(4, 2 |N_W(Q) / C_W(Q)|)``.
    """
    Wsub = W.whole if isinstance(W, Group) else W
    if Wsub.order % q:
        return 2
    if p_rank(Wsub, q) >= 2:
        raise RankTooLarge(f"rk_{q} >= 2")
    Q = sylow(Wsub, q)
    aut = normalizer(Wsub, Q).order // centralizer(Wsub, Q).order
    if Q.is_cyclic:
        return 2 * aut
    return lcm(4, 2 * aut)


def m_G(G: Group) -> int:
    """lcm of the period multiples over primes ``q`` with ``rk_q(G) = 1``."""
    out = 1
    for q in prime_factors(G.order):
        if p_rank(G, q) == 1:
            out = lcm(out, q_period_multiple(G, q))
    return out


def weyl_period(G: Group, c, p) -> int:
    """lcm over primes ``q != p`` dividing ``|W_G(H)|`` of the period multiples."""
    if c.order == 1:
        return m_G(G)
    W = c.weyl_group
    out = 1
    for q in prime_factors(W.order):
        if q == p:
            continue
        try:
            out = lcm(out, q_period_multiple(W, q))
        except RankTooLarge as exc:
            raise Infeasible(f"rk_{q}(W_G({c.label})) >= 2") from exc
    return out


def chain_length(family: Family, reading="maps") -> int:
    """Longest strict chain ``(H_0) < ... < (H_m)`` of classes in ``family``.

    ``reading="maps"`` counts the ``m`` steps, ``"objects"`` counts ``m + 1`` classes.
    """
    G = family.group
    M = G.lattice.subconjugacy
    idx = sorted(family.indices, key=lambda i: G.lattice[i].order)
    longest = {}
    for j in idx:
        best = 0
        for i in idx:
            if i != j and M[i, j] and i in longest:
                best = max(best, longest[i] + 1)
        longest[j] = best
    steps = max(longest.values(), default=0)
    return steps + 1 if reading == "objects" else steps


# -- alignment ------------------------------------------------------------------------

@dataclass
class AlignmentPlan:
    multipliers: dict
    N: int
    m_G: int
    t: int = 1
    base: int = 1
    chain_length: int = 0
    periods: dict = field(default_factory=dict)

    def to_dict(self):
        return {
            "multipliers": {str(p): k for p, k in sorted(self.multipliers.items())},
            "N": self.N,
            "mG": self.m_G,
            "t": self.t,
            "base": self.base,
            "chainLength": self.chain_length,
            "periods": dict(self.periods),
        }


def align(G: Group, per_prime: dict, *, min_dim=3, chain_reading="maps", mg=None):
    """Scale per-prime sphere dimension functions to a common top dimension.

    Parameters
    ----------
    per_prime : dict
        Prime to :class:`SuperClassFunction` of one copy of the representation.
    min_dim : int
        Lower bound for every value on the family.
    chain_reading : {"maps", "objects"}
        How the chain length bounding the gaps is counted.

    Returns
    -------
    (AlignmentPlan, SuperClassFunction)
    """
    L = G.lattice
    mg = m_G(G) if mg is None else mg
    a = {p: n.at(0) + 1 for p, n in per_prime.items()}
    if any(v <= 0 for v in a.values()):
        raise Infeasible("each representation must have positive degree")
    base = lcm(mg, *a.values())

    coeff = {0: base}  # class index -> (n + 1) per unit of t
    owner = {0: None}
    for p, n in sorted(per_prime.items()):
        for i, v in n.values.items():
            if i == 0:
                continue
            coeff[i] = (base // a[p]) * (v + 1)
            owner[i] = p
    family = Family(G, coeff.keys(), check=False)
    ell = chain_length(family, chain_reading)

    periods = {}
    step = 1
    for i, c in coeff.items():
        per = mg if i == 0 else weyl_period(G, L[i], owner[i])
        periods[L[i].label] = per
        step = lcm(step, per // gcd(per, c))
    lower = max(1, -(-(min_dim + 1) // min(coeff.values())))
    vals = sorted(set(coeff.values()))
    diffs = [b - x for x, b in zip(vals, vals[1:])]
    if diffs and ell:
        lower = max(lower, -(-ell // min(diffs)))
    t = -(-lower // step) * step

    plan = AlignmentPlan(
        multipliers={p: t * base // a[p] for p in per_prime},
        N=t * base - 1, m_G=mg, t=t, base=base, chain_length=ell, periods=periods,
    )
    nbar = SuperClassFunction(G, family, {i: t * c - 1 for i, c in coeff.items()})
    return plan, nbar


def verify_alignment(G, nbar: SuperClassFunction, plan: AlignmentPlan, per_prime=None,
                     *, min_dim=3, chain_reading="maps", include_closure=True) -> ConditionReport:
    """Recheck every side condition on an aligned dimension function.

    Chain lengths are recomputed by exhaustive chain enumeration and the
    period multiples directly from the Weyl groups.  With
    ``include_closure=False`` the level-closure test is left to
    :func:`closure_report`.
    """
    rep = ConditionReport("alignment")
    L = G.lattice
    fam = list(nbar.family)
    rep.record("monotone", is_monotone(nbar))
    if include_closure:
        viol = closure_violations(nbar, limit=5)
        rep.record("closure", not viol, witnesses=viol)
    for c in fam:
        rep.record("minDim", nbar.at(c) >= min_dim, **{"class": c.label, "value": nbar.at(c)})
    top = nbar.at(0)
    rep.record("top", top == plan.N, value=top, N=plan.N)
    mg = m_G(G)
    rep.record("topPeriod", (top + 1) % mg == 0, mG=mg, value=top)
    for c in fam:
        if c.order == 1:
            continue
        p = prime_factors(c.order)[0]
        W = c.weyl_group
        for q in prime_factors(W.order):
            if q == p:
                continue
            per = q_period_multiple(W, q)
            rep.record(
                "period", (nbar.at(c) + 1) % per == 0,
                **{"class": c.label, "q": q, "period": per, "value": nbar.at(c)},
            )
    ell = _longest_chain_bruteforce(L, [c.index for c in fam])
    if chain_reading == "objects":
        ell += 1
    values = sorted({nbar.at(c) for c in fam})
    gap = min((b - x for x, b in zip(values, values[1:])), default=None)
    rep.record("gaps", gap is None or gap >= ell, minGap=gap, chainLength=ell)
    if per_prime:
        for p, n in per_prime.items():
            k = plan.multipliers[p]
            for i, v in n.values.items():
                rep.record(
                    "joinScaling", nbar.at(i) + 1 == k * (v + 1),
                    prime=p, **{"class": L[i].label},
                )
    return rep


def _longest_chain_bruteforce(L, idx):
    M = L.subconjugacy
    idx = list(idx)

    def longest_from(i, seen):
        best = 0
        for j in idx:
            if j != i and j not in seen and M[i, j]:
                best = max(best, 1 + longest_from(j, seen | {j}))
        return best

    return max((longest_from(i, {i}) for i in idx), default=0)


__all__ = [
    "AlignmentPlan", "SuperClassFunction", "align", "chain_length", "closure_condition",
    "closure_report",
    "closure_violations", "from_json_list", "is_monotone", "is_strictly_monotone",
    "level_components", "levels", "m_G", "q_period_multiple", "verify_alignment",
    "weyl_period",
]

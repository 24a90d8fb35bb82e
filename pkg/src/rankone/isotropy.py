"""Ranks, rank-one families and the hypothesis checks for rank-one isotropy.

The central entry point is :func:`check_theorem_A`, which assembles the
rank profile, the ``Qd(p)`` involvement search and the normalizer-quotient
rank table into one :class:`~rankone.report.ConditionReport`.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import FamilyNotClosed
from .permgroup.builtins import qd
from .permgroup.group import (
    Group,
    Subgroup,
    is_prime,
    p_elements,
    prime_factors,
    quotient,
    sylow,
)
from .permgroup.iso import find_isomorphic_subgroup
from .report import ConditionReport


def _as_subgroup(H):
    return H.whole if isinstance(H, Group) else H


def _log(n, p):
    k = 0
    while n > 1:
        n //= p
        k += 1
    return k


# -- ranks ---------------------------------------------------------------------

def p_rank(H, p) -> int:
    """Largest ``k`` with ``(Z/p)^k`` inside ``H``.

    The search runs over elementary abelian subgroups of a Sylow subgroup,
    growing each one by commuting elements of order ``p``.
    """
    H = _as_subgroup(H)
    if H.order % p:
        return 0
    S = sylow(H, p)
    G = S.parent
    T = G.table
    cands = p_elements(S, p)
    cands = cands[G.element_orders[cands] == p]
    if len(cands) == 0:
        return 0
    # cyclic or generalized quaternion Sylow subgroups have a unique subgroup of order p
    if len(cands) == p - 1:
        return 1
    best = 1
    seen = set()
    stack = [G.trivial]
    while stack:
        E = stack.pop()
        rank = _log(E.order, p)
        best = max(best, rank)
        gens = list(E.gens)
        ok = ~E.mask[cands]
        for g in gens:
            ok &= T[cands, g] == T[g, cands]
        for x in cands[ok].tolist():
            F = G.join(E, x)
            if F.bits not in seen:
                seen.add(F.bits)
                stack.append(F)
    return best


@dataclass
class RankProfile:
    per_prime: dict
    prime_set: list = field(default_factory=list)

    @property
    def rank(self):
        return max(self.per_prime.values(), default=0)

    def to_dict(self):
        return {
            "perPrime": {str(p): r for p, r in sorted(self.per_prime.items())},
            "primeSetSG": list(self.prime_set),
            "rank": self.rank,
        }


def rank_profile(G) -> RankProfile:
    G = _as_subgroup(G)
    per = {p: p_rank(G, p) for p in prime_factors(G.order)}
    return RankProfile(per, sorted(p for p, r in per.items() if r == 2))


# -- families -------------------------------------------------------------------

class Family:
    """A set of subgroup classes of ``group`` closed under subconjugacy.

    Parameters
    ----------
    group : Group
    indices : iterable of int
        Class indices in ``group.lattice``.
    check : bool
        Raise :class:`FamilyNotClosed` unless closed under subgroups.
    """

    def __init__(self, group, indices, *, check=True, name=None):
        self.group = group
        self.indices = frozenset(int(i) for i in indices)
        self.name = name
        if check:
            missing = self.missing_subgroups()
            if missing:
                labels = [group.lattice[i].label for i in sorted(missing)]
                raise FamilyNotClosed(f"family misses subgroup classes {labels}")

    @classmethod
    def generated_by(cls, group, indices, name=None):
        """Smallest family containing the given classes."""
        M = group.lattice.subconjugacy
        idx = set()
        for j in indices:
            idx |= set(np.flatnonzero(M[:, j]).tolist())
        return cls(group, idx, name=name)

    def missing_subgroups(self):
        M = self.group.lattice.subconjugacy
        out = set()
        for j in self.indices:
            out |= set(np.flatnonzero(M[:, j]).tolist()) - self.indices
        return out

    def __contains__(self, c):
        i = c.index if hasattr(c, "index") else int(c)
        return i in self.indices

    def __iter__(self):
        L = self.group.lattice
        return (L[i] for i in sorted(self.indices))

    def __len__(self):
        return len(self.indices)

    def __eq__(self, other):
        return isinstance(other, Family) and other.group is self.group and other.indices == self.indices

    def __hash__(self):
        return hash(self.indices)

    @property
    def labels(self):
        return [c.label for c in self]

    def union(self, other):
        return Family(self.group, self.indices | other.indices, check=False)

    def maximal(self):
        """Classes not strictly subconjugate to another member."""
        M = self.group.lattice.subconjugacy
        out = []
        for i in sorted(self.indices):
            if not any(M[i, j] and i != j for j in self.indices):
                out.append(self.group.lattice[i])
        return out

    def to_dict(self):
        return [{"label": c.label, "order": c.order} for c in self]

    def __repr__(self):
        return f"Family({self.labels})"


def rank_one_family(G: Group, p) -> Family:
    """Classes of ``p``-subgroups of ``p``-rank at most one, trivial class included."""
    idx = [
        c.index
        for c in G.lattice
        if c.is_p_subgroup(p) and p_rank(c.representative, p) <= 1
    ]
    return Family(G, idx, name=f"H_{p}")


# -- Qd(p) ----------------------------------------------------------------------

def involves_qd(G: Group, p):
    """Look for ``K`` of order prime to ``p`` with ``Qd(p)`` inside ``N_G(K)/K``.

    Returns a witness dictionary or ``None``.
    """
    if p == 2 or not is_prime(p):
        raise ValueError("p must be an odd prime")
    target_order = p**3 * (p * p - 1)
    if G.order % target_order:
        return None
    target = None
    for c in G.lattice:
        if c.order % p == 0 or c.weyl_order % target_order:
            continue
        if target is None:
            target = qd(p)
        W = c.weyl_group
        found = find_isomorphic_subgroup(W, target)
        if found is not None:
            return {
                "K": c.label,
                "KOrder": c.order,
                "weylOrder": W.order,
                "imageOrder": found.order,
                "imageGenerators": [str(g) for g in found.as_group().generators],
            }
    return None


# -- condition tables --------------------------------------------------------------

def weyl_rank_table(G: Group, family: Family, p, primes=None):
    """``rk_q(N_G(H)/H)`` for ``1 != H`` in ``family`` and primes ``q != p``."""
    primes = prime_factors(G.order) if primes is None else primes
    rows = []
    for c in family:
        if c.order == 1:
            continue
        W = c.weyl_group
        for q in primes:
            if q == p:
                continue
            r = p_rank(W, q) if W.order % q == 0 else 0
            rows.append({
                "prime": p, "class": c.label, "order": c.order,
                "q": q, "weylOrder": W.order, "rank": r, "passed": r <= 1,
            })
    return rows


def check_theorem_A(G: Group) -> ConditionReport:
    """Verify rank two, no ``Qd(p)`` involvement, and the normalizer-quotient rank condition."""
    rep = ConditionReport("theoremA")
    prof = rank_profile(G)
    rep.data["rankProfile"] = prof.to_dict()
    for p, r in sorted(prof.per_prime.items()):
        rep.record("rank<=2", r <= 2, prime=p, rank=r)

    qd_data = {}
    for p in prof.prime_set:
        if p == 2:
            continue
        w = involves_qd(G, p)
        qd_data[str(p)] = w
        rep.record("noQdInvolvement", w is None, prime=p, witness=w)
    rep.data["qd"] = qd_data

    families = {}
    table = []
    for p in prof.prime_set:
        fam = rank_one_family(G, p)
        families[str(p)] = fam.labels
        rows = weyl_rank_table(G, fam, p)
        table += rows
        for row in rows:
            if not row["passed"]:
                rep.record("weylRank<=1", False, **row)
    rep.data["families"] = families
    rep.data["conditionTable"] = table
    rep.data["conditionII"] = all(r["passed"] for r in table)

    # Corollary route: one prime of rank two and every other Sylow of rank one
    others = [q for q, r in prof.per_prime.items() if q not in prof.prime_set]
    route = len(prof.prime_set) == 1 and all(prof.per_prime[q] <= 1 for q in others)
    rep.data["theoremB"] = {
        "applicable": route,
        "prime": prof.prime_set[0] if route else None,
    }
    return rep


def _dim_at(dims, c):
    if dims is None:
        return 0
    if hasattr(dims, "at"):
        return dims.at(c)
    if c.label in dims:
        return dims[c.label]
    return dims.get(c.index, -1)


def check_necessary(G: Group, iso: Family, dims=None) -> ConditionReport:
    """Smith-theory necessary conditions for a candidate isotropy family.

    (i) every maximal ``p``-subgroup ``H`` of ``iso`` has ``rk_p(N_G(H)/H) <= 1``;
    (ii) every ``1 != H`` in ``iso`` with ``dims[H] >= 0`` has ``rk_q(N_G(H)/H) <= 1``
    for ``q != p``.  Also ``rk_p(G) <= 2`` for all ``p``.
    """
    missing = iso.missing_subgroups()
    if missing:
        raise FamilyNotClosed("isotropy family is not subgroup-closed")
    rep = ConditionReport("necessary")
    primes = prime_factors(G.order)
    for p in primes:
        r = p_rank(G, p)
        rep.record("rank<=2", r <= 2, prime=p, rank=r)
    members = list(iso)
    for c in members:
        if len(prime_factors(c.order)) > 1:
            raise ValueError(f"{c.label} does not have prime-power order")
    M = G.lattice.subconjugacy
    for p in primes:
        psubs = [c for c in members if c.is_p_subgroup(p)]
        for c in psubs:
            bigger = [d for d in psubs if d.index != c.index and M[c.index, d.index]]
            if bigger:
                continue
            r = p_rank(c.weyl_group, p)
            rep.record("maximalWeylRank<=1", r <= 1, prime=p, **{"class": c.label, "rank": r})
    for c in members:
        if c.order == 1 or _dim_at(dims, c) < 0:
            continue
        p = prime_factors(c.order)[0]
        W = c.weyl_group
        for q in primes:
            if q == p or W.order % q:
                continue
            r = p_rank(W, q)
            rep.record("weylRank<=1", r <= 1, prime=p, q=q, **{"class": c.label, "rank": r})
    return rep


def weyl_group(c) -> Group:
    return quotient(c.normalizer, c.representative)


__all__ = [
    "Family", "RankProfile", "check_necessary", "check_theorem_A", "involves_qd",
    "p_rank", "rank_one_family", "rank_profile", "weyl_rank_table",
]

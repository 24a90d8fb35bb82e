"""Integer class functions on Sylow subgroups and effective characters.

Characters live on a subgroup ``Q`` of an ambient group ``G`` and are stored
as one integer per element of ``Q``.  Permutation characters of ``Q/K``,
fusion tests against ``G``, effectiveness on rank-two elementary abelian
subgroups and the induced isotropy families are provided here.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field

import numpy as np

from .errors import FusionViolation, NonIntegralInnerProduct, NotASubgroup, ParseError, RankMismatch
from .isotropy import Family, p_rank
from .permgroup.group import Group, Subgroup, p_elements, prime_factors, sylow


def _sub(H):
    return H.whole if isinstance(H, Group) else H


class ClassFunction:
    """Integer-valued function on the elements of ``domain``.

    Parameters
    ----------
    domain : Subgroup
    values : array of int
        ``values[i]`` is the value at ``domain.members[i]``.
    """

    def __init__(self, domain, values):
        self.domain = _sub(domain)
        self.values = np.asarray(values, dtype=np.int64)
        if self.values.shape != (self.domain.order,):
            raise ValueError("one value per element of the domain is required")

    @classmethod
    def constant(cls, domain, c=1):
        domain = _sub(domain)
        return cls(domain, np.full(domain.order, c))

    def value(self, x):
        m = self.domain.members
        i = int(np.searchsorted(m, x))
        if i >= len(m) or m[i] != x:
            raise NotASubgroup(f"element {x} outside the domain")
        return int(self.values[i])

    def values_at(self, xs):
        return self.values[np.searchsorted(self.domain.members, np.asarray(xs))]

    @property
    def degree(self):
        return int(self.values[0])

    def __add__(self, other):
        return ClassFunction(self.domain, self.values + other.values)

    def __sub__(self, other):
        return ClassFunction(self.domain, self.values - other.values)

    def __mul__(self, k):
        return ClassFunction(self.domain, self.values * int(k))

    __rmul__ = __mul__

    def __eq__(self, other):
        return (
            isinstance(other, ClassFunction)
            and other.domain == self.domain
            and np.array_equal(other.values, self.values)
        )

    def restrict(self, H):
        H = _sub(H)
        if not H <= self.domain:
            raise NotASubgroup("restriction to a non-subgroup")
        return ClassFunction(H, self.values_at(H.members))

    def to_dict(self):
        G = self.domain.parent
        return {str(G.element(x)): int(v) for x, v in zip(self.domain.members, self.values)}


def perm_character(Q, K) -> ClassFunction:
    """Permutation character of ``Q`` on the cosets ``Q/K``."""
    Q, K = _sub(Q), _sub(K)
    if not K <= Q:
        raise NotASubgroup("K must be a subgroup of Q")
    G = Q.parent
    T, inv = G.table, G.inv
    xs = Q.members
    kmask = K.mask
    # chi(q) = #{x in Q : x^-1 q x in K} / |K|
    conj = T[T[inv[xs][:, None], xs[None, :]], xs[:, None]]  # [x, q] -> x^-1 q x
    counts = kmask[conj].sum(axis=0)
    return ClassFunction(Q, counts // K.order)


def augmented_perm_character(Q, K) -> ClassFunction:
    """``I(Q/K)``: the permutation character minus the trivial one."""
    chi = perm_character(Q, K)
    return chi - ClassFunction.constant(chi.domain)


def fixed_dim(chi: ClassFunction, H) -> int:
    """Dimension of the ``H``-fixed subspace, ``<Res_H chi, 1>``."""
    H = _sub(H)
    total = int(chi.values_at(H.members).sum())
    q, r = divmod(total, H.order)
    if r:
        raise NonIntegralInnerProduct(f"<chi, 1>_H = {total}/{H.order}")
    return q


def respects_fusion(G: Group, P, chi: ClassFunction) -> bool:
    """True when ``chi`` is constant on every ``G``-class meeting ``P``."""
    P = _sub(P)
    labels = G.class_labels[P.members]
    vals = chi.values_at(P.members)
    seen = {}
    for l, v in zip(labels.tolist(), vals.tolist()):
        if seen.setdefault(l, v) != v:
            return False
    return True


def rank_two_elementary(P, p):
    """All elementary abelian subgroups of order ``p^2`` inside ``P`` (not up to conjugacy)."""
    P = _sub(P)
    G = P.parent
    T = G.table
    xs = p_elements(P, p)
    xs = xs[G.element_orders[xs] == p]
    out = {}
    for a in xs.tolist():
        A = G.subgroup([a])
        comm = xs[(T[xs, a] == T[a, xs]) & ~A.mask[xs]]
        for b in comm.tolist():
            E = G.join(A, b)
            out.setdefault(E.bits, E)
    return [out[k] for k in sorted(out, key=lambda b: tuple(out[b].members.tolist()))]


def p_effective(G: Group, P, chi: ClassFunction, p) -> bool:
    """No trivial summand on any rank-two elementary abelian subgroup of ``P``.

    Raises
    ------
    RankMismatch
        If ``rk_p(G) != 2``.
    """
    if p_rank(G, p) != 2:
        raise RankMismatch(f"rk_{p}(G) = {p_rank(G, p)}, expected 2")
    return all(fixed_dim(chi, E) == 0 for E in rank_two_elementary(P, p))


def double_coset_count(Q, E, K) -> int:
    """Number of double cosets ``E \\ Q / K``."""
    Q, E, K = _sub(Q), _sub(E), _sub(K)
    T = Q.parent.table
    xs = Q.members
    left = T[np.ix_(E.members, xs)]  # e * x
    keys = T[left[:, :, None], K.members[None, None, :]].reshape(len(E.members), len(xs), -1)
    keys = keys.transpose(1, 0, 2).reshape(len(xs), -1).min(axis=1)
    return len(np.unique(keys))


def double_coset_criterion(Q, Ks, p) -> bool:
    """Every rank-two elementary abelian ``E`` has one ``E \\ Q / K_i`` double coset for each ``i``."""
    Es = rank_two_elementary(Q, p)
    return all(double_coset_count(Q, E, K) == 1 for E in Es for K in Ks)


# -- representations and isotropy ------------------------------------------------------

@dataclass
class SylowRepresentation:
    """A character of a Sylow ``p``-subgroup, or a fixed-dimension table supplied externally.

    Exactly one of ``character`` and ``fixed_dims`` is set; ``fixed_dims`` maps
    class indices of the ambient lattice to complex fixed-point dimensions.
    """

    p: int
    sylow: Subgroup
    character: ClassFunction | None = None
    multiplicity: int = 1
    fixed_dims: dict | None = None
    construction: dict = field(default_factory=dict)

    @property
    def degree(self):
        if self.character is not None:
            return self.character.degree * self.multiplicity
        return self.fixed_dims[0] * self.multiplicity

    def dim_at(self, c) -> int:
        """Complex dimension of the fixed subspace of the class ``c`` (a ``p``-subgroup)."""
        if self.fixed_dims is not None:
            return self.fixed_dims.get(c.index, 0) * self.multiplicity
        L = conjugate_inside(c, self.sylow)
        return fixed_dim(self.character, L) * self.multiplicity

    def fixed_dim_table(self):
        G = self.sylow.parent
        return {c.label: self.dim_at(c) for c in G.lattice if c.is_p_subgroup(self.p)}

    def to_dict(self):
        out = {
            "p": self.p,
            "degree": self.degree,
            "multiplicity": self.multiplicity,
            "fixedDims": self.fixed_dim_table(),
            "construction": self.construction,
        }
        if self.character is not None:
            Q = self.sylow
            labels = Q.parent.class_labels[Q.members]
            per_class = {}
            for l, v in zip(labels.tolist(), self.character.values.tolist()):
                per_class.setdefault(str(Q.parent.element(l)), v)
            out["valuesByGClass"] = per_class
        return out


def conjugate_inside(c, P) -> Subgroup:
    """A conjugate of class ``c``'s representative contained in ``P``."""
    for H in c.conjugates():
        if H <= P:
            return H
    raise NotASubgroup(f"{c.label} has no conjugate inside the given subgroup")


def isotropy_of(G: Group, rep: SylowRepresentation) -> Family:
    """Classes of ``p``-subgroups with a nonzero fixed subspace.

    Raises
    ------
    FusionViolation
        If the character does not respect fusion in ``G``.
    """
    if rep.character is not None and not respects_fusion(G, rep.sylow, rep.character):
        raise FusionViolation("character is not constant on G-classes meeting the Sylow subgroup")
    idx = [c.index for c in G.lattice if c.is_p_subgroup(rep.p) and rep.dim_at(c) > 0]
    return Family(G, idx, name=f"J_{rep.p}")


def isotropy_admissible(G: Group, family: Family, p) -> bool:
    """The normalizer-quotient rank condition on ``family``: ``rk_q(N(H)/H) <= 1`` for ``q != p``."""
    primes = prime_factors(G.order)
    for c in family:
        if c.order == 1:
            continue
        W = c.weyl_group
        for q in primes:
            if q != p and W.order % q == 0 and p_rank(W, q) > 1:
                return False
    return True


def sphere_dims(rep: SylowRepresentation, family=None):
    """Sphere dimension ``2 d - 1`` per class (``-1`` for an empty fixed set)."""
    G = rep.sylow.parent
    out = {}
    for c in G.lattice:
        if not c.is_p_subgroup(rep.p):
            continue
        d = rep.dim_at(c)
        out[c.index] = 2 * d - 1 if d > 0 else -1
    return out


# -- construction ---------------------------------------------------------------------

def rank_one_subgroups(P, p):
    """Subgroups of ``P`` of ``p``-rank one, sorted by members."""
    P = _sub(P)
    G = P.parent
    found = {}
    for c in G.lattice:
        if c.order == 1 or not c.is_p_subgroup(p) or P.order % c.order:
            continue
        if p_rank(c.representative, p) > 1:
            continue
        for H in c.conjugates():
            if H <= P:
                found.setdefault(H.bits, H)
    return sorted(found.values(), key=lambda H: (H.order, tuple(H.members.tolist())))


def _search_order(orbits):
    """Nonempty unions of orbits ordered by size, then by the sorted class ids."""
    ids = sorted(orbits)
    combos = []
    for r in range(1, len(ids) + 1):
        for chosen in itertools.combinations(ids, r):
            size = sum(len(orbits[i]) for i in chosen)
            combos.append((size, chosen))
    combos.sort()
    return [c for _, c in combos]


def build_effective_character(G: Group, p, *, prefer_admissible=True):
    """Search ``sum I(Q/K_i)`` over ``G``-conjugacy-closed families of rank-one ``K_i``.

    Families are tried in order of size, then class ids; the first one that
    respects fusion and is ``p``-effective is returned.  With
    ``prefer_admissible`` a family whose isotropy also satisfies the
    normalizer-quotient rank condition wins over earlier ones.

    Returns ``None`` when no family works (for instance ``Q = C_{p^2} x C_{p^2}``).
    """
    if p_rank(G, p) != 2:
        raise RankMismatch(f"rk_{p}(G) != 2")
    P = sylow(G, p)
    Ks = rank_one_subgroups(P, p)
    Es = rank_two_elementary(P, p)
    # a family containing a non-effective summand can never be effective
    good = [K for K in Ks if all(double_coset_count(P, E, K) == 1 for E in Es)]
    orbits = {}
    for K in good:
        orbits.setdefault(G.lattice.class_of(K).index, []).append(K)
    chars = {cid: [augmented_perm_character(P, K) for K in orbits[cid]] for cid in orbits}
    first = None
    for chosen in _search_order(orbits):
        chi = ClassFunction(P, sum(sum(ch.values for ch in chars[c]) for c in chosen))
        if not respects_fusion(G, P, chi) or not p_effective(G, P, chi, p):
            continue
        kernels = [K for c in chosen for K in orbits[c]]
        rep = SylowRepresentation(
            p, P, chi,
            construction={
                "type": "augmentedPermutation",
                "kernelClasses": [G.lattice[c].label for c in chosen],
                "kernels": [[str(g) for g in K.as_group().generators] for K in kernels],
                "elementaryAbelianSylow": _is_elementary_abelian(P, p),
            },
        )
        if not prefer_admissible:
            return rep
        if first is None:
            first = rep
        if isotropy_admissible(G, isotropy_of(G, rep), p):
            return rep
    return first


def _is_elementary_abelian(P, p):
    G = P.parent
    return bool(P.is_abelian and (G.element_orders[P.members] <= p).all())


def rational_effective_character(G: Group, p, *, prefer_admissible=True, max_terms=6):
    """Smallest nonnegative combination of rational irreducible characters of a Sylow subgroup
    that respects fusion and is ``p``-effective.

    Each rational character is a sum over a Galois orbit of irreducibles of
    the Sylow subgroup.  Only individually effective ones can appear, so
    the search is over their combinations with at most ``max_terms`` summands,
    ordered by degree.
    """
    from ._chartable import rational_characters

    if p_rank(G, p) != 2:
        raise RankMismatch(f"rk_{p}(G) != 2")
    P = sylow(G, p)
    PG = P.as_group()
    reps, cls, rats = rational_characters(PG)
    Es = rank_two_elementary(P, p)
    cands = []
    for vals in rats:
        chi = ClassFunction(P, vals[cls])
        if chi.degree > 0 and all(fixed_dim(chi, E) == 0 for E in Es):
            cands.append(chi)
    options = []
    for total in range(1, max_terms + 1):
        for combo in itertools.combinations_with_replacement(range(len(cands)), total):
            vals = sum(cands[i].values for i in combo)
            options.append((int(vals[0]), combo, vals))
    options.sort(key=lambda t: (t[0], t[1]))
    first = None
    for deg, combo, vals in options:
        chi = ClassFunction(P, vals)
        if not respects_fusion(G, P, chi):
            continue
        mult = [combo.count(i) for i in range(len(cands))]
        rep = SylowRepresentation(
            p, P, chi,
            construction={
                "type": "rationalCombination",
                "components": [
                    {"degree": cands[i].degree, "multiplicity": m}
                    for i, m in enumerate(mult) if m
                ],
            },
        )
        if not prefer_admissible:
            return rep
        if first is None:
            first = rep
        if isotropy_admissible(G, isotropy_of(G, rep), p):
            return rep
    return first


def effective_character(G: Group, p, *, prefer_admissible=True):
    """Permutation-module construction first, rational search as a fallback."""
    rep = build_effective_character(G, p, prefer_admissible=prefer_admissible)
    if rep is None:
        rep = rational_effective_character(G, p, prefer_admissible=prefer_admissible)
    return rep


# -- external fixed-dimension tables ------------------------------------------------------

def load_fixed_dim_table(G: Group, data) -> SylowRepresentation:
    """Build a representation from ``{classLabel: fixedDim}``.

    The prime is inferred from the nontrivial labels; classes of
    ``p``-subgroups that are not listed get dimension ``0``.
    """
    if isinstance(data, (str, bytes)):
        data = json.loads(data)
    if not isinstance(data, dict) or not data:
        raise ParseError("character file must be a nonempty JSON object")
    L = G.lattice
    dims = {}
    primes = set()
    for label, value in data.items():
        try:
            c = L.by_label(label)
        except KeyError as exc:
            raise ParseError(f"unknown subgroup class label {label!r}") from exc
        if not isinstance(value, int) or value < 0:
            raise ParseError(f"fixed dimension for {label!r} must be a nonnegative integer")
        pf = prime_factors(c.order)
        if len(pf) > 1:
            raise ParseError(f"{label!r} is not a p-subgroup")
        primes |= set(pf)
        dims[c.index] = value
    if len(primes) != 1:
        raise ParseError("cannot infer a single prime from the labels")
    if 0 not in dims:
        raise ParseError("the table must give the dimension at the trivial subgroup '1'")
    p = primes.pop()
    return SylowRepresentation(
        p, sylow(G, p), fixed_dims=dims,
        construction={"type": "fixedDimensionTable"},
    )


__all__ = [
    "ClassFunction", "SylowRepresentation", "augmented_perm_character",
    "build_effective_character", "conjugate_inside", "double_coset_count",
    "double_coset_criterion", "effective_character", "fixed_dim", "isotropy_admissible",
    "isotropy_of", "load_fixed_dim_table", "p_effective", "perm_character",
    "rank_one_subgroups", "rank_two_elementary", "rational_effective_character",
    "respects_fusion", "sphere_dims",
]

"""Restriction images, the splitting and extension functors, and pushouts.

Every construction here stays inside the cellular model: images of
restriction maps are spanned by fixed points, so sums and intersections of
images are coordinate subcomplexes.  The column-space helpers in
:mod:`.chain` give an independent check of that description.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import InvalidComplex, NotInjective, NotSubconjugate
from ..permgroup.group import Group, Subgroup, normalizer
from .chain import Chain
from .complex import Cell, Evaluation, OCComplex, morphisms


# -- restriction images ---------------------------------------------------------------

@dataclass
class Subcomplex:
    """Coordinate subcomplex of an evaluation ``C(H)``.

    ``keep[d]`` lists positions in ``evaluation.basis[d]``.
    """

    evaluation: Evaluation
    keep: dict

    @property
    def chain(self) -> Chain:
        return self.evaluation.chain.restrict(self.keep)

    @property
    def reduced(self) -> Chain:
        ch = self.chain
        if not self.evaluation.complex.augmented:
            return ch
        dims = dict(ch.dims)
        dims[-1] = 1
        bd = dict(ch.bd)
        if ch.dim(0):
            bd[0] = [[1] * ch.dim(0)]
        return Chain(dims, bd)

    def rank(self, d):
        return len(self.keep.get(d, []))

    def inclusion(self, d):
        """``dim C(H)_d x rank`` 0/1 matrix of the inclusion."""
        n = self.evaluation.rank(d)
        cols = self.keep.get(d, [])
        return [[int(i == j) for j in cols] for i in range(n)]

    def homology(self, prime=None, reduced=False):
        return (self.reduced if reduced else self.chain).homology(prime)

    def __and__(self, other):
        return Subcomplex(self.evaluation, {
            d: sorted(set(self.keep.get(d, [])) & set(other.keep.get(d, [])))
            for d in self.evaluation.basis
        })

    def __add__(self, other):
        return Subcomplex(self.evaluation, {
            d: sorted(set(self.keep.get(d, [])) | set(other.keep.get(d, [])))
            for d in self.evaluation.basis
        })

    def __eq__(self, other):
        return all(
            sorted(self.keep.get(d, [])) == sorted(other.keep.get(d, []))
            for d in self.evaluation.basis
        )


def _containing_conjugate(G, H: Subgroup, K):
    """A conjugate of ``K`` (subgroup or class) that contains ``H``."""
    L = G.lattice
    if isinstance(K, Subgroup):
        if H <= K:
            return K
        K = L.class_of(K)
    elif isinstance(K, Group):
        return K.whole
    for b, Kg in zip(K.conjugate_bits, K.conjugates()):
        if H.bits & b == H.bits:
            return Kg
    raise NotSubconjugate(f"{L.class_of(H).label} is not subconjugate to {K.label}")


def _sub(G, H):
    if hasattr(H, "representative"):
        return H.representative
    if isinstance(H, Group):
        return H.whole
    return H


def restriction_image(C: OCComplex, H, K) -> Subcomplex:
    """Image of ``C(K) -> C(H)`` for ``H <= K``: the ``K``-fixed points inside ``C(H)``.

    ``K`` is replaced by a conjugate containing ``H`` when necessary.

    Raises
    ------
    NotSubconjugate
    """
    G = C.group
    Hs = _sub(G, H)
    Ks = _containing_conjugate(G, Hs, K)
    E = C.evaluate(Hs)
    keep = {}
    for d, b in E.basis.items():
        fixed = set(C.fixed_points(d, Ks).tolist())
        keep[d] = [i for i, p in enumerate(b.tolist()) if p in fixed]
    return Subcomplex(E, keep)


def image_sum(C: OCComplex, H, Ks) -> Subcomplex:
    E = C.evaluate(_sub(C.group, H))
    out = Subcomplex(E, {d: [] for d in E.basis})
    for K in Ks:
        out = out + restriction_image(C, H, K)
    return out


def image_sum_homology(C: OCComplex, H, Ks, prime=None, reduced=False):
    """Homology of the sum of the images of ``C(K) -> C(H)`` over ``Ks``."""
    return image_sum(C, H, Ks).homology(prime, reduced=reduced)


def morphism_matrix(C: OCComplex, H, K, g, d):
    """Matrix of ``C(K)_d -> C(H)_d``, ``x -> g.x``, for a morphism ``G/H -> G/K``."""
    G = C.group
    EH, EK = C.evaluate(_sub(G, H)), C.evaluate(_sub(G, K))
    return EH.map_from(EK, g).get(d, [])


# -- splitting ---------------------------------------------------------------------------

@dataclass
class Splitting:
    """``0 -> C^{>H}(H) -> C(H) -> S_H C -> 0`` on coordinates."""

    evaluation: Evaluation
    higher: Subcomplex
    quotient_keep: dict

    @property
    def quotient(self) -> Chain:
        return self.evaluation.chain.restrict(self.quotient_keep)

    def ranks(self):
        E = self.evaluation
        return {
            d: (self.higher.rank(d), E.rank(d), len(self.quotient_keep.get(d, [])))
            for d in E.basis
        }


def splitting(C: OCComplex, H) -> Splitting:
    """Points of ``C(H)`` with stabilizer strictly larger than ``H`` span ``C^{>H}(H)``;
    the rest (stabilizer exactly ``H``) span the splitting functor ``S_H C``."""
    G = C.group
    Hs = _sub(G, H)
    E = C.evaluate(Hs)
    higher, rest = {}, {}
    for d, b in E.basis.items():
        hi, lo = [], []
        off = C._offsets[d][0]
        for i, p in enumerate(b.tolist()):
            cell = int(np.searchsorted(off, p, side="right")) - 1
            (hi if C.cells[d][cell].stabilizer.order > Hs.order else lo).append(i)
        higher[d], rest[d] = hi, lo
    sub = Subcomplex(E, higher)
    if not E.chain.is_subcomplex(higher):
        raise InvalidComplex("higher-isotropy points do not span a subcomplex")
    return Splitting(E, sub, rest)


# -- extension functor -------------------------------------------------------------------

@dataclass
class GroupRingComplex:
    """Chain complex of free modules over ``Z[W]``.

    ``ranks[d]`` is the number of free generators in degree ``d``;
    ``differentials[d][(i, j)]`` is a dict ``{w: coefficient}`` giving the
    ``Z[W]``-coefficient of generator ``i`` (degree ``d-1``) in the boundary
    of generator ``j`` (degree ``d``), so ``d e_j = sum_i a_ij e_i``.
    """

    group: Group
    ranks: dict
    differentials: dict

    def regular(self) -> Chain:
        """Underlying complex of free abelian groups (basis ``w e_j``)."""
        W = self.group
        T = W.table
        dims = {d: r * W.order for d, r in self.ranks.items()}
        bd = {}
        for d, entries in self.differentials.items():
            if not dims.get(d) or not dims.get(d - 1):
                continue
            M = [[0] * dims[d] for _ in range(dims[d - 1])]
            for (i, j), coeffs in entries.items():
                for x in range(W.order):
                    for w, c in coeffs.items():
                        M[i * W.order + int(T[x, w])][j * W.order + x] += c
            bd[d] = M
        return Chain(dims, bd)


def periodic_resolution(W: Group, n: int, generator=None) -> GroupRingComplex:
    """``0 -> Z -> P_n -> ... -> P_0 -> Z -> 0`` for cyclic ``W`` with ``n`` odd.

    ``P_d = Z[W]`` with differentials alternating ``t - 1`` and the norm.
    Homology is ``Z`` in degrees ``0`` and ``n``.
    """
    if n < 1 or n % 2 == 0:
        raise ValueError("cyclic groups have period 2, so n must be odd")
    if generator is None:
        hits = np.flatnonzero(W.element_orders == W.order)
        if not len(hits):
            raise ValueError("periodic resolutions are only built for cyclic groups")
        generator = int(hits[0])
    diffs = {}
    for d in range(1, n + 1):
        if d % 2:
            coeff = {generator: 1}
            coeff[0] = coeff.get(0, 0) - 1
            coeff = {w: c for w, c in coeff.items() if c}
        else:
            coeff = {w: 1 for w in range(W.order)}
        diffs[d] = {(0, 0): coeff}
    return GroupRingComplex(W, {d: 1 for d in range(n + 1)}, diffs)


def extension_functor(P: GroupRingComplex, K, G: Group | None = None,
                      augmented=False) -> OCComplex:
    """``E_K(P)(H) = P (x)_{Z[W]} Z[(G/K)^H]`` with ``W = N_G(K)/K``.

    ``P.group`` must be the Weyl group of ``K`` built by
    :func:`~rankone.permgroup.group.quotient` (it carries the coset map).
    Each free generator becomes a cell of type ``G/K`` and a coefficient
    ``w`` becomes the morphism ``G/K -> G/K`` given by a lift of ``w``.
    """
    W = P.group
    qmap = W.origin
    if qmap is None or not hasattr(qmap, "reps"):
        raise ValueError("P must live over a Weyl group N_G(K)/K")
    Ks = qmap.kernel
    G = Ks.parent if G is None else G
    reps = qmap.reps
    cells = {}
    for d, r in P.ranks.items():
        row = []
        for j in range(r):
            terms = []
            for (i, jj), coeffs in P.differentials.get(d, {}).items():
                if jj != j:
                    continue
                for w, c in coeffs.items():
                    terms.append((i, c, int(reps[w])))
            row.append(Cell(Ks, terms))
        cells[d] = row
    return OCComplex(G, cells, augmented=augmented, name="extension")


def tensor_trivial_rank(G: Group, K, H) -> int:
    """Rank of ``Z (x)_{Z[W]} Z[(G/K)^H]``: the number of ``N_G(K)``-orbits on ``(G/K)^H``."""
    Ks = _sub(G, K)
    Hs = _sub(G, H)
    fixed = morphisms(G, Hs, Ks).tolist()
    if not fixed:
        return 0
    N = normalizer(G, Ks).members
    # W acts on the right by xK.n = xnK; an orbit is determined by the coset xN
    return len({int(G.table[x, N].min()) for x in fixed})


# -- pushout ------------------------------------------------------------------------------

@dataclass
class CellMap:
    """Degree-preserving equivariant map: ``images[d][j]`` lists ``(target, coefficient, g)``."""

    source: OCComplex
    target: OCComplex
    images: dict

    def point_matrix(self, d):
        """Sparse columns on points, one per point of the source."""
        S, T_ = self.source, self.target
        T = S.group.table
        cols = [dict() for _ in range(S.npoints(d))]
        for j, (c, o) in enumerate(zip(S.cells.get(d, []), S._offsets.get(d, ([], 0))[0])):
            _, reps = S._orbit(c.stabilizer)
            for t, k, g in self.images.get(d, {}).get(j, []):
                tc = T_.cells[d][t]
                cid, _ = T_._orbit(tc.stabilizer)
                to = T_._offsets[d][0][t]
                for a, q in enumerate((to + cid[T[reps, g]]).tolist()):
                    cols[o + a][q] = cols[o + a].get(q, 0) + k
        return cols

    def check_chain_map(self):
        S, T_ = self.source, self.target
        for d in S.degrees:
            if d - 1 not in S.cells and d - 1 not in T_.cells:
                continue
            f_d = self.point_matrix(d)
            f_dm = self.point_matrix(d - 1) if d - 1 in S.cells else []
            bS = S.boundary_columns(d)
            bT = T_.boundary_columns(d) if d in T_.cells else []
            for p in range(S.npoints(d)):
                lhs = {}
                for q, v in bS[p].items():  # f(d x)
                    for r, w in f_dm[q].items():
                        lhs[r] = lhs.get(r, 0) + v * w
                rhs = {}
                for q, v in f_d[p].items():  # d(f x)
                    for r, w in bT[q].items():
                        rhs[r] = rhs.get(r, 0) + v * w
                keys = set(lhs) | set(rhs)
                if any(lhs.get(k, 0) != rhs.get(k, 0) for k in keys):
                    raise InvalidComplex(f"not a chain map in degree {d}")


def pushout(f: CellMap, inclusion: dict, B: OCComplex) -> OCComplex:
    """Pushout of ``C <-f- A -> B`` along a cellular inclusion ``A -> B``.

    Parameters
    ----------
    f : CellMap
        Chain map ``A -> C``.
    inclusion : dict
        Degree to a list sending cell ``j`` of ``A`` to a cell index of ``B``
        with the same stabilizer; boundaries must agree.
    B : OCComplex

    Returns
    -------
    OCComplex
        ``C`` plus the cells of ``B`` outside ``A``; boundary terms landing in
        ``A`` are rerouted through ``f``.

    Raises
    ------
    NotInjective
        If the inclusion repeats a cell or changes a stabilizer.
    """
    A, C = f.source, f.target
    G = C.group
    f.check_chain_map()
    for d in A.degrees:
        idx = inclusion.get(d, [])
        if len(idx) != len(A.cells[d]) or len(set(idx)) != len(idx):
            raise NotInjective(f"degree {d}: cells of A must map to distinct cells of B")
        for j, t in enumerate(idx):
            if B.cells[d][t].stabilizer != A.cells[d][j].stabilizer:
                raise NotInjective(f"degree {d}: cell {j} changes its stabilizer")
            want = sorted((inclusion[d - 1][tt], k, g) for tt, k, g in A.cells[d][j].boundary)
            if sorted(B.cells[d][t].boundary) != want:
                raise NotInjective(f"degree {d}: cell {j} is not a subcomplex cell of B")
    T = G.table
    cells = {d: list(cs) for d, cs in C.cells.items()}
    newpos = {}
    for d in B.degrees:
        inA = set(inclusion.get(d, []))
        for t in range(len(B.cells[d])):
            if t not in inA:
                newpos[(d, t)] = len(cells.setdefault(d, []))
                cells[d].append(None)
    back = {d: {t: j for j, t in enumerate(inclusion.get(d, []))} for d in B.degrees}
    for d in B.degrees:
        for t, cell in enumerate(B.cells[d]):
            if (d, t) not in newpos:
                continue
            terms = []
            for tt, k, g in cell.boundary:
                if tt in back.get(d - 1, {}):
                    for u, kk, h in f.images.get(d - 1, {}).get(back[d - 1][tt], []):
                        terms.append((u, k * kk, int(T[g, h])))
                else:
                    terms.append((newpos[(d - 1, tt)], k, g))
            cells[d][newpos[(d, t)]] = Cell(cell.stabilizer, terms)
    return OCComplex(G, cells, augmented=C.augmented)


def level_quotient(E: OCComplex, drop_classes) -> dict:
    """Evaluations of ``E / N`` where ``N`` is ``E`` restricted to ``drop_classes``.

    Returns class index to the evaluated chain complex (zero on dropped classes).
    """
    G = E.group
    drop = {c.index if hasattr(c, "index") else int(c) for c in drop_classes}
    out = {}
    for c in G.lattice:
        out[c.index] = Chain({}) if c.index in drop else E.evaluate(c.representative).chain
    return out


__all__ = [
    "CellMap", "GroupRingComplex", "Splitting", "Subcomplex", "extension_functor",
    "image_sum", "image_sum_homology", "level_quotient", "morphism_matrix",
    "periodic_resolution", "pushout", "restriction_image", "splitting",
    "tensor_trivial_rank",
]

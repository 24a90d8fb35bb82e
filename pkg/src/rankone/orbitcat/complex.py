"""Free chain complexes over the orbit category, modelled on cellular G-sets.

Degree ``d`` of an :class:`OCComplex` is a list of cells; a cell with
stabilizer ``K`` generates a free summand ``Z[G/K]`` and contributes the
points ``xK`` of the G-set ``G/K``.  The boundary of a cell is a list of
terms ``(target, coefficient, g)`` meaning ``coefficient * g.target``;
equivariance extends it to every point.  Evaluating at ``H`` keeps the
``H``-fixed points, which is the free-module formula ``Z[X](H) = Z[X^H]``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from ..dimfun import SuperClassFunction, closure_violations, is_monotone
from ..errors import BoundaryNotSquareZero, InvalidComplex
from ..isotropy import Family
from ..permgroup.group import Group, Subgroup, normalizer
from ..report import ConditionReport
from .category import cosets, fixed_cosets
from .chain import Chain, HomologyGroup, is_quasi_isomorphism


@dataclass
class Cell:
    """A free generator with stabilizer ``stabilizer`` and its boundary terms."""

    stabilizer: Subgroup
    boundary: list = field(default_factory=list)  # (target cell, coefficient, group element)

    def __post_init__(self):
        self.boundary = [(int(t), int(c), int(g)) for t, c, g in self.boundary if c]


def _class_key(G, c):
    return c.index if hasattr(c, "index") else int(c)


class OCComplex:
    """Finite free chain complex over the orbit category of ``group``.

    Parameters
    ----------
    group : Group
    cells : dict
        Degree to list of :class:`Cell`.
    augmented : bool
        Whether ``C_0`` carries the augmentation sending each point to ``1``.
    family : Family, optional
        Defaults to the classes below some stabilizer.

    Raises
    ------
    InvalidComplex
        If a boundary term does not respect stabilizers.
    BoundaryNotSquareZero
        If ``d o d != 0`` or the augmentation does not kill boundaries.
    """

    def __init__(self, group: Group, cells, *, augmented=True, family=None, name=None,
                 validate=True):
        self.group = group
        self.cells = {int(d): list(cs) for d, cs in cells.items() if cs}
        self.augmented = augmented
        self.name = name
        self._orbits = {}
        self._offsets = {}
        for d in self.degrees:
            off, o = [], 0
            for c in self.cells[d]:
                off.append(o)
                o += len(self._orbit(c.stabilizer)[1])
            self._offsets[d] = (off, o)
        if family is None:
            L = group.lattice
            stabs = {L.class_of(c.stabilizer).index for cs in self.cells.values() for c in cs}
            family = Family.generated_by(group, stabs) if stabs else Family(group, [0])
        self.family = family
        if validate:
            self.validate()

    # -- G-set bookkeeping ----------------------------------------------------------

    @property
    def degrees(self):
        return sorted(self.cells)

    def _orbit(self, K):
        key = K.bits
        if key not in self._orbits:
            self._orbits[key] = cosets(self.group, K)
        return self._orbits[key]

    def npoints(self, d):
        return self._offsets[d][1] if d in self._offsets else 0

    def rank_at(self, d, H):
        return len(self.fixed_points(d, H))

    def cell_of_point(self, d, p):
        off = self._offsets[d][0]
        i = int(np.searchsorted(off, p, side="right")) - 1
        return i, p - off[i]

    def point_stabilizer(self, d, p):
        i, c = self.cell_of_point(d, p)
        K = self.cells[d][i].stabilizer
        x = int(self._orbit(K)[1][c])
        return K.conjugate(x)

    def action(self, d, g):
        """Permutation of the points of degree ``d`` induced by the element ``g``."""
        T = self.group.table
        out = np.empty(self.npoints(d), dtype=np.int64)
        for c, o in zip(self.cells[d], self._offsets[d][0]):
            coset_id, reps = self._orbit(c.stabilizer)
            out[o:o + len(reps)] = o + coset_id[T[g, reps]]
        return out

    def fixed_points(self, d, H):
        if d not in self.cells:
            return np.zeros(0, dtype=np.int64)
        H = H.representative if hasattr(H, "representative") else H
        parts = []
        for c, o in zip(self.cells[d], self._offsets[d][0]):
            parts.append(o + fixed_cosets(self.group, H, c.stabilizer, self._orbit(c.stabilizer)))
        return np.concatenate(parts) if parts else np.zeros(0, dtype=np.int64)

    def boundary_columns(self, d):
        """Sparse boundary on points: one ``{target point: coefficient}`` per point of degree ``d``."""
        return self._columns[d] if d in self._columns else []

    @cached_property
    def _columns(self):
        T = self.group.table
        out = {}
        for d in self.degrees:
            cols = [dict() for _ in range(self.npoints(d))]
            if d - 1 in self.cells:
                for c, o in zip(self.cells[d], self._offsets[d][0]):
                    _, reps = self._orbit(c.stabilizer)
                    for t, coef, g in c.boundary:
                        tc = self.cells[d - 1][t]
                        cid, _ = self._orbit(tc.stabilizer)
                        to = self._offsets[d - 1][0][t]
                        targets = to + cid[T[reps, g]]
                        for j, q in enumerate(targets.tolist()):
                            col = cols[o + j]
                            col[q] = col.get(q, 0) + coef
                for col in cols:
                    for q in [q for q, v in col.items() if v == 0]:
                        del col[q]
            out[d] = cols
        return out

    def validate(self):
        T = self.group.table
        for d in self.degrees:
            for i, c in enumerate(self.cells[d]):
                for t, coef, g in c.boundary:
                    if d - 1 not in self.cells or not 0 <= t < len(self.cells[d - 1]):
                        raise InvalidComplex(f"cell {i} in degree {d}: no target cell {t}")
                    tK = self.cells[d - 1][t].stabilizer
                    cid, _ = self._orbit(tK)
                    ref = cid[g]
                    for k in c.stabilizer.gens:
                        if cid[T[k, g]] != ref:
                            raise InvalidComplex(
                                f"cell {i} in degree {d}: term {g} is not fixed by the stabilizer"
                            )
        cols = self._columns
        for d in self.degrees:
            if d - 1 not in cols:
                continue
            prev = cols[d - 1]
            for c, o in zip(self.cells[d], self._offsets[d][0]):
                acc = {}
                for q, v in cols[d][o].items():
                    for r, w in prev[q].items():
                        acc[r] = acc.get(r, 0) + v * w
                if any(acc.values()):
                    raise BoundaryNotSquareZero(f"d o d != 0 on a cell of degree {d}")
        if self.augmented and 1 in cols and 0 in cols:
            for c, o in zip(self.cells[1], self._offsets[1][0]):
                if sum(cols[1][o].values()):
                    raise BoundaryNotSquareZero("augmentation does not vanish on boundaries")

    # -- evaluation -------------------------------------------------------------------

    def evaluate(self, H) -> "Evaluation":
        """Chain complex of ``H``-fixed points, with the basis recorded."""
        H = _subgroup(self.group, H)
        basis = {d: self.fixed_points(d, H) for d in self.degrees}
        basis = {d: b for d, b in basis.items() if len(b)}
        return Evaluation(self, H, basis)

    def classes(self):
        return list(self.group.lattice)

    def homology(self, prime=None, *, actions=True, classes=None) -> "HomologyTable":
        """Reduced homology (when augmented) at every subgroup class."""
        rows = {}
        for c in classes or self.classes():
            E = self.evaluate(c.representative)
            rows[c.index] = E.homology(prime=prime, actions=actions)
        return HomologyTable(self.group, rows, prime)

    def with_cells(self, extra, *, augmented=None):
        """Copy with additional cells appended per degree."""
        cells = {d: list(cs) for d, cs in self.cells.items()}
        for d, cs in extra.items():
            cells.setdefault(d, []).extend(cs)
        aug = self.augmented if augmented is None else augmented
        return OCComplex(self.group, cells, augmented=aug)

    def to_dict(self):
        L = self.group.lattice
        return {
            "augmented": self.augmented,
            "cells": [
                [
                    {
                        "stabilizerClassLabel": L.class_of(c.stabilizer).label,
                        "stabilizerGenerators": [str(self.group.element(g)) for g in c.stabilizer.gens],
                        "boundary": [
                            {"targetCellIndex": t, "coefficient": k,
                             "morphismCosetRep": str(self.group.element(g))}
                            for t, k, g in c.boundary
                        ],
                    }
                    for c in self.cells.get(d, [])
                ]
                for d in range(0, (max(self.degrees) + 1) if self.cells else 0)
            ],
        }


def _subgroup(G, H):
    if hasattr(H, "representative"):
        return H.representative
    if isinstance(H, Group):
        return H.whole
    return H


class Evaluation:
    """``C(H)`` as a based chain complex of free abelian groups.

    ``basis[d]`` lists the global point indices of the ``H``-fixed points.
    """

    def __init__(self, complex_: OCComplex, H: Subgroup, basis):
        self.complex = complex_
        self.H = H
        self.basis = basis
        self._pos = {d: {int(p): i for i, p in enumerate(b)} for d, b in basis.items()}

    @property
    def is_zero(self):
        return not self.basis

    def rank(self, d):
        return len(self.basis.get(d, ()))

    def position(self, d, point):
        return self._pos[d][int(point)]

    @cached_property
    def chain(self) -> Chain:
        C = self.complex
        dims = {d: len(b) for d, b in self.basis.items()}
        bd = {}
        for d, b in self.basis.items():
            if d - 1 not in self.basis:
                continue
            cols = C.boundary_columns(d)
            pos = self._pos[d - 1]
            M = [[0] * len(b) for _ in range(len(self.basis[d - 1]))]
            for j, p in enumerate(b.tolist()):
                for q, v in cols[p].items():
                    M[pos[q]][j] = v
            bd[d] = M
        return Chain(dims, bd)

    @cached_property
    def reduced(self) -> Chain:
        """The augmented complex ``... -> C_0 -> Z`` (``Z`` in degree -1)."""
        if not self.complex.augmented:
            return self.chain
        dims = dict(self.chain.dims)
        dims[-1] = 1
        bd = dict(self.chain.bd)
        if self.rank(0):
            bd[0] = [[1] * self.rank(0)]
        return Chain(dims, bd)

    @property
    def dim(self):
        """Top degree with a nonzero module, ``-1`` if there is none."""
        return max(self.basis) if self.basis else -1

    def weyl_generators(self):
        G = self.complex.group
        return list(normalizer(G, self.H).gens)

    def action(self, g):
        """Permutations (local positions) of ``x -> g.x`` for ``g`` normalizing ``H``."""
        out = {}
        for d, b in self.basis.items():
            img = self.complex.action(d, g)[b]
            pos = self._pos[d]
            out[d] = [pos[int(q)] for q in img]
        if self.complex.augmented:
            out[-1] = [0]
        return out

    def map_from(self, other: "Evaluation", g):
        """Matrices of ``other -> self``, ``x -> g.x``, for a morphism ``G/H -> G/K`` given by ``g``."""
        out = {}
        for d, b in other.basis.items():
            img = self.complex.action(d, g)[b]
            M = [[0] * len(b) for _ in range(self.rank(d))]
            pos = self._pos.get(d, {})
            for j, q in enumerate(img.tolist()):
                if q not in pos:
                    raise ValueError("element does not define a morphism between these objects")
                M[pos[q]][j] = 1
            out[d] = M
        if self.complex.augmented:
            out[-1] = [[1]]
        return out

    def homology(self, prime=None, actions=False, reduced=True):
        ch = self.reduced if reduced else self.chain
        acts = None
        if actions:
            acts = [self.action(g) for g in self.weyl_generators()]
        return ch.homology(prime=prime, actions=acts)

    @property
    def homological_dim(self):
        """Top degree with nonzero unreduced homology, ``-1`` if none."""
        H = self.chain.homology()
        ds = [d for d, h in H.items() if not h.is_zero]
        return max(ds) if ds else -1


@dataclass
class HomologyTable:
    group: Group
    rows: dict  # class index -> {degree: HomologyGroup}
    prime: int | None = None

    def at(self, c):
        return self.rows[_class_key(self.group, c)]

    def to_dict(self):
        L = self.group.lattice
        out = {}
        for i, row in sorted(self.rows.items()):
            nz = {str(d): h.to_dict() for d, h in sorted(row.items()) if not h.is_zero}
            if nz:
                out[L[i].label] = nz
        return {"prime": self.prime, "classes": out}


# -- dimension functions and predicates ------------------------------------------------

def dim_functions(C: OCComplex):
    """``(Dim, HomDim)`` as super class functions; ``-1`` where the evaluation vanishes."""
    dims, hdims = {}, {}
    for c in C.classes():
        E = C.evaluate(c.representative)
        dims[c.index] = E.dim
        hdims[c.index] = E.homological_dim
    return (
        SuperClassFunction.from_values(C.group, dims),
        SuperClassFunction.from_values(C.group, hdims),
    )


def is_tight(C: OCComplex) -> bool:
    D, HD = dim_functions(C)
    return all(D.at(c) == HD.at(c) for c in C.classes())


def sphere_report(C: OCComplex, nbar: SuperClassFunction, prime=None) -> ConditionReport:
    """Per class: reduced homology of ``C(H)`` is that of an ``nbar(H)``-sphere."""
    if not C.augmented:
        raise ValueError("homology spheres are defined for augmented complexes")
    rep = ConditionReport("homologySphere")
    for c in C.classes():
        E = C.evaluate(c.representative)
        n = nbar.at(c)
        ok = E.reduced.reduced_is_sphere(n, prime)
        detail = {"class": c.label, "n": n}
        if not ok:
            detail["homology"] = {
                str(d): h.to_dict() for d, h in E.homology(prime).items() if not h.is_zero
            }
        rep.record("sphere", ok, **detail)
    return rep


def is_homology_sphere(C: OCComplex, nbar: SuperClassFunction, prime=None) -> bool:
    return sphere_report(C, nbar, prime).passed


def orientation_report(C: OCComplex, prime=None) -> ConditionReport:
    """Normalizer generators act trivially on the free part of reduced homology at every class."""
    rep = ConditionReport("oriented")
    for c in C.classes():
        E = C.evaluate(c.representative)
        if E.is_zero:
            continue
        H = E.homology(prime=prime, actions=True)
        ok = True
        for d, h in sorted(H.items()):
            for g, A in zip(E.weyl_generators(), h.actions):
                if any(A[i][j] != int(i == j) for i in range(len(A)) for j in range(len(A))):
                    ok = False
                    rep.record("trivialAction", False, **{
                        "class": c.label, "degree": d,
                        "element": str(C.group.element(g)), "matrix": A,
                    })
        if ok:
            rep.record("trivialAction", True, **{"class": c.label})
    return rep


def is_oriented(C: OCComplex, prime=None) -> bool:
    return orientation_report(C, prime).passed


def morphisms(G, H: Subgroup, K: Subgroup):
    """Least coset representatives ``g`` of the maps ``G/H -> G/K`` (``H^g <= K``)."""
    data = cosets(G, K)
    return data[1][fixed_cosets(G, H, K, data)]


def check_algrep(C: OCComplex, nbar: SuperClassFunction, prime=None) -> ConditionReport:
    """Monotonicity, homology isomorphisms between equal levels, and level closure.

    The second condition is tested on every morphism ``G/H -> G/K`` between
    distinct classes ``(H) < (K)`` with ``nbar(H) = nbar(K) >= 0``.
    """
    G = C.group
    L = G.lattice
    rep = ConditionReport("algrep")
    M = L.subconjugacy
    bad = [
        {"H": L[i].label, "K": L[j].label, "nH": nbar.at(i), "nK": nbar.at(j)}
        for i, j in zip(*np.nonzero(M))
        if nbar.at(int(j)) > nbar.at(int(i))
    ]
    rep.record("monotone", is_monotone(nbar), witnesses=bad[:5])

    evals = {}

    def ev(c):
        if c.index not in evals:
            evals[c.index] = C.evaluate(c.representative)
        return evals[c.index]

    iso_ok = True
    witnesses = []
    for ch in L:
        for ck in L:
            if ch.index == ck.index or not M[ch.index, ck.index]:
                continue
            v = nbar.at(ch)
            if v < 0 or nbar.at(ck) != v:
                continue
            EH, EK = ev(ch), ev(ck)
            for g in morphisms(G, ch.representative, ck.representative).tolist():
                f = EH.map_from(EK, g)
                if not is_quasi_isomorphism(f, EK.reduced, EH.reduced, prime):
                    iso_ok = False
                    witnesses.append({
                        "H": ch.label, "K": ck.label, "morphism": str(G.element(g)),
                    })
                    break
    rep.record("restrictionIso", iso_ok, witnesses=witnesses[:5])
    viol = closure_violations(nbar, limit=5)
    rep.record("closure", not viol, witnesses=viol)
    return rep


__all__ = [
    "Cell", "Evaluation", "HomologyGroup", "HomologyTable", "OCComplex", "check_algrep",
    "dim_functions", "is_homology_sphere", "is_oriented", "is_tight", "morphisms",
    "orientation_report", "sphere_report",
]

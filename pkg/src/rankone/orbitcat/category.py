"""The orbit category of a group relative to a family of subgroup classes."""
from __future__ import annotations

from functools import cached_property

import numpy as np

from ..isotropy import Family


def cosets(G, K):
    """``(coset_id, reps)``: the left coset ``xK`` of each element and one representative per coset.

    Representatives are the least element index in their coset, so the
    numbering is canonical.
    """
    keys = G.table[:, K.members].min(axis=1)
    reps, coset_id = np.unique(keys, return_inverse=True)
    return coset_id.astype(np.int64), reps.astype(np.int64)


def fixed_cosets(G, H, K, coset_data=None):
    """Positions of the cosets ``xK`` fixed by ``H`` (those with ``H^x <= K``)."""
    coset_id, reps = coset_data if coset_data is not None else cosets(G, K)
    ok = np.ones(len(reps), dtype=bool)
    target = np.arange(len(reps))
    for h in H.gens:
        ok &= coset_id[G.table[h, reps]] == target
    return np.flatnonzero(ok)


class OrbitCategory:
    """Objects ``G/H`` for class representatives ``H`` of ``family``.

    A morphism ``G/H -> G/K`` is stored as the least element of the coset
    ``gK`` it sends ``H`` to; ``H^g <= K`` holds for every such ``g``.
    """

    def __init__(self, G, family: Family):
        self.group = G
        self.family = family
        self.objects = list(family)
        self._cosets = {c.index: cosets(G, c.representative) for c in self.objects}

    def morphisms(self, src, dst):
        """Sorted coset representatives ``g`` of the maps ``G/src -> G/dst``."""
        H = self._obj(src).representative
        c = self._obj(dst)
        data = self._cosets[c.index]
        return data[1][fixed_cosets(self.group, H, c.representative, data)]

    def _obj(self, c):
        i = c.index if hasattr(c, "index") else int(c)
        if i not in self._cosets:
            raise KeyError(f"class {i} is not an object of this orbit category")
        return self.group.lattice[i]

    def compose(self, g, h, dst):
        """Composite of ``G/A -gA'-> G/B`` followed by ``G/B -hB'-> G/dst``: ``ghC``."""
        coset_id, reps = self._cosets[self._obj(dst).index]
        return int(reps[coset_id[self.group.table[g, h]]])

    @cached_property
    def morphism_sets(self):
        return {
            (a.index, b.index): self.morphisms(a, b)
            for a in self.objects for b in self.objects
        }

    @cached_property
    def composition(self):
        """``(A, B, C) -> {(f, g): g o f}`` over all composable pairs."""
        out = {}
        for a in self.objects:
            for b in self.objects:
                fs = self.morphism_sets[(a.index, b.index)]
                if not len(fs):
                    continue
                for c in self.objects:
                    gs = self.morphism_sets[(b.index, c.index)]
                    if not len(gs):
                        continue
                    out[(a.index, b.index, c.index)] = {
                        (int(f), int(g)): self.compose(int(f), int(g), c)
                        for f in fs for g in gs
                    }
        return out

    def size(self, src, dst):
        return len(self.morphisms(src, dst))

    def to_dict(self):
        L = self.group.lattice
        return {
            "objects": [c.label for c in self.objects],
            "morphismCounts": {
                f"{L[a].label}->{L[b].label}": len(m)
                for (a, b), m in self.morphism_sets.items() if len(m)
            },
        }


def build_orbit_category(G, family: Family) -> OrbitCategory:
    """Materialize all morphism sets and the composition table.

    ``Family`` validates subgroup closure when it is constructed.
    """
    if family.missing_subgroups():
        from ..errors import FamilyNotClosed

        raise FamilyNotClosed("family is not closed under subgroups")
    oc = OrbitCategory(G, family)
    oc.composition
    return oc


__all__ = ["OrbitCategory", "build_orbit_category", "cosets", "fixed_cosets"]

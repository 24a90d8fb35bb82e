"""Constructors for orbit-category complexes: cell data, G-sets, joins and small examples."""
from __future__ import annotations

import numpy as np

from ..errors import InvalidComplex
from ..permgroup.group import Group
from .complex import Cell, OCComplex


def from_gcw(G: Group, cells, *, augmented=True, family=None, name=None) -> OCComplex:
    """Complex from per-degree cell lists.

    Each cell is ``(stabilizer, boundary)`` where ``stabilizer`` is a
    :class:`Subgroup`, a subgroup class or a class label and ``boundary`` is
    a list of ``(target_index, coefficient, element)``; ``element`` may be an
    element index or a :class:`Perm`.
    """
    L = G.lattice
    out = {}
    for d, cs in enumerate(cells) if isinstance(cells, list) else cells.items():
        row = []
        for stab, bnd in cs:
            if isinstance(stab, str):
                stab = L.by_label(stab).representative
            elif hasattr(stab, "representative"):
                stab = stab.representative
            terms = []
            for t, k, g in bnd:
                terms.append((t, k, g if isinstance(g, (int, np.integer)) else G.index(g)))
            row.append(Cell(stab, terms))
        out[int(d)] = row
    return OCComplex(G, out, augmented=augmented, family=family, name=name)


def from_gset(G: Group, actions, boundaries, *, augmented=True, name=None) -> OCComplex:
    """Decompose a cellular G-set into orbits.

    Parameters
    ----------
    actions : dict
        Degree to an integer array of shape ``(|G|, npoints)`` with the image
        of each point under each element.
    boundaries : dict
        Degree to a list (one per point) of ``{target point: coefficient}``.
    """
    cells = {}
    where = {}  # (degree, point) -> (cell index, element g with g.rep = point)
    for d in sorted(actions):
        A = np.asarray(actions[d])
        n = A.shape[1]
        seen = np.full(n, -1)
        row = []
        for p in range(n):
            if seen[p] >= 0:
                continue
            orbit = A[:, p]
            stab = np.flatnonzero(orbit == p)
            K = G.subgroup_from_mask(np.isin(np.arange(G.order), stab))
            for g in range(G.order):
                q = int(orbit[g])
                if seen[q] < 0:
                    seen[q] = len(row)
                    where[(d, q)] = (len(row), g)
            row.append([K, p])
        cells[d] = row
    out = {}
    for d, row in cells.items():
        built = []
        for K, p in row:
            terms = []
            for q, v in boundaries.get(d, [{}] * (p + 1))[p].items():
                if v:
                    t, g = where[(d - 1, int(q))]
                    terms.append((t, int(v), g))
            built.append(Cell(K, terms))
        out[d] = built
    return OCComplex(G, out, augmented=augmented, name=name)


def gset_data(C: OCComplex):
    """Inverse of :func:`from_gset`: full action tables and point boundaries."""
    acts = {}
    for d in C.degrees:
        acts[d] = np.array([C.action(d, g) for g in range(C.group.order)], dtype=np.int64)
    return acts, {d: C.boundary_columns(d) for d in C.degrees}


def join(X: OCComplex, Y: OCComplex, name=None) -> OCComplex:
    """Join of two augmented complexes, via reduced chains ``C(X * Y) = C(X) (x) C(Y)[1]``.

    Points of ``X * Y`` are points of ``X``, points of ``Y`` and pairs ``(x, y)``
    in degree ``|x| + |y| + 1`` with the diagonal action.
    """
    if X.group is not Y.group:
        raise ValueError("join needs complexes over the same group")
    if not (X.augmented and Y.augmented):
        raise InvalidComplex("join needs augmented complexes")
    G = X.group
    ax, bx = gset_data(X)
    ay, by = gset_data(Y)
    # reduced cells: degree -1 holds the single empty cell
    def reduced(acts, bnds):
        A = {d: a for d, a in acts.items()}
        A[-1] = np.zeros((G.order, 1), dtype=np.int64)
        B = {d: list(b) for d, b in bnds.items()}
        if 0 in A:
            B[0] = [{0: 1} for _ in range(A[0].shape[1])]
        return A, B

    ax, bx = reduced(ax, bx)
    ay, by = reduced(ay, by)
    index = {}
    acts = {}
    keys = {}
    for dx in ax:
        for dy in ay:
            if dx == -1 and dy == -1:
                continue
            n = dx + dy + 1
            for i in range(ax[dx].shape[1]):
                for j in range(ay[dy].shape[1]):
                    lst = keys.setdefault(n, [])
                    index[(dx, i, dy, j)] = (n, len(lst))
                    lst.append((dx, i, dy, j))
    for n, lst in keys.items():
        A = np.empty((G.order, len(lst)), dtype=np.int64)
        for k, (dx, i, dy, j) in enumerate(lst):
            gi = ax[dx][:, i]
            gj = ay[dy][:, j]
            for g in range(G.order):
                A[g, k] = index[(dx, int(gi[g]), dy, int(gj[g]))][1]
        acts[n] = A
    bnds = {}
    for n, lst in keys.items():
        cols = []
        for dx, i, dy, j in lst:
            col = {}
            # d(x*y) = (-1)^(|y|+1) dx*y + x*dy keeps every augmentation coefficient +1
            sign = 1 if dy % 2 else -1
            if dx >= 0:
                for q, v in bx[dx][i].items():
                    if dx - 1 == -1 and dy == -1:
                        continue
                    key = index[(dx - 1, q, dy, j)][1]
                    col[key] = col.get(key, 0) + sign * v
            if dy >= 0:
                for q, v in by[dy][j].items():
                    if dx == -1 and dy - 1 == -1:
                        continue
                    key = index[(dx, i, dy - 1, q)][1]
                    col[key] = col.get(key, 0) + v
            cols.append(col)
        bnds[n] = cols
    return from_gset(G, acts, bnds, name=name)


# -- small examples ------------------------------------------------------------------

def point(G: Group) -> OCComplex:
    """A point with trivial action."""
    return OCComplex(G, {0: [Cell(G.whole, [])]}, name="point")


def reflection_circle(G: Group, s) -> OCComplex:
    """Circle with ``s`` (an involution generating ``G``) acting by reflection.

    Two fixed vertices ``v0, v1`` and one free edge orbit with ``d e = v1 - v0``.
    """
    if G.order != 2:
        raise ValueError("reflection circle needs a group of order 2")
    return OCComplex(G, {
        0: [Cell(G.whole, []), Cell(G.whole, [])],
        1: [Cell(G.trivial, [(1, 1, 0), (0, -1, 0)])],
    }, name="reflection circle")


def rotation_circle(G: Group, g=None) -> OCComplex:
    """Free rotation action of a cyclic group: ``d e = g.v - v``."""
    if g is None:
        g = next(x for x in range(G.order) if G.element_orders[x] == G.order)
    return OCComplex(G, {
        0: [Cell(G.trivial, [])],
        1: [Cell(G.trivial, [(0, 1, g), (0, -1, 0)])],
    }, name="rotation circle")


def add_contractible_pair(C: OCComplex, d, target, *, stabilizer=None, element=0,
                          coefficient=1) -> OCComplex:
    """Append cells ``a`` (degree ``d``) and ``b`` (degree ``d + 1``) with ``d b = a - c.g.target``.

    ``d a = c.g.(d target)``, so the new pair is acyclic and homology is unchanged.
    """
    G = C.group
    tgt = C.cells[d][target]
    K = tgt.stabilizer if stabilizer is None else stabilizer
    a_terms = [(t, coefficient * k, int(G.table[element, g])) for t, k, g in tgt.boundary]
    a = Cell(K, a_terms)
    a_index = len(C.cells.get(d, []))
    b = Cell(K, [(a_index, 1, 0), (target, -coefficient, element)])
    return C.with_cells({d: [a], d + 1: [b]})


def random_free_complex(G: Group, rng, base=None, steps=3) -> OCComplex:
    """``base`` (default: a point) with random contractible pairs attached.

    New cells are free or copy the stabilizer of the cell they shadow.
    """
    C = point(G) if base is None else base
    for _ in range(steps):
        d = int(rng.choice(C.degrees))
        t = int(rng.integers(len(C.cells[d])))
        if rng.random() < 0.5:
            C = add_contractible_pair(C, d, t)
        else:
            g = int(rng.integers(G.order))
            c = 1 if d == 0 else int(rng.choice([1, -1, 2]))
            C = add_contractible_pair(C, d, t, stabilizer=G.trivial, element=g, coefficient=c)
    return C


__all__ = [
    "add_contractible_pair", "from_gcw", "from_gset", "gset_data", "join", "point",
    "random_free_complex", "reflection_circle", "rotation_circle",
]

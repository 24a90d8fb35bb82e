"""Isomorphism testing by backtracking over generator images."""
from __future__ import annotations

from collections import Counter

import numpy as np

from .. import kernels
from .group import Group


def _class_sizes(G: Group):
    labels = G.class_labels
    counts = Counter(labels.tolist())
    return np.array([counts[l] for l in labels.tolist()], dtype=np.int64)


def invariants(G: Group):
    """Cheap isomorphism invariants: order, element-order and class statistics."""
    orders = G.element_orders.tolist()
    sizes = _class_sizes(G).tolist()
    return (
        G.order,
        tuple(sorted(Counter(orders).items())),
        tuple(sorted(Counter(zip(orders, sizes)).items())),
    )


def _generates(G, gens):
    members = np.zeros(1, dtype=np.int32)
    used = []
    for g in gens:
        new = kernels.dimino_extend(G.table, members, used, g)
        if len(new) != len(members):
            members = new
            used.append(g)
    return len(members) == G.order


def small_generating_set(G: Group, max_pairs=20000):
    """Two generators when a quick search finds them, else a greedy set."""
    if G.order == 1:
        return []
    if G.whole.is_cyclic:
        return [int(np.flatnonzero(G.element_orders == G.order)[0])]
    orders = G.element_orders
    reps = sorted(set(G.class_labels.tolist()), key=lambda x: (-orders[x], x))
    others = sorted(range(1, G.order), key=lambda y: (-orders[y], y))
    tried = 0
    for x in reps:
        if x == 0:
            continue
        cyc = kernels.dimino_extend(G.table, np.zeros(1, dtype=np.int32), [], x)
        for y in others:
            tried += 1
            if tried > max_pairs:
                return list(G.whole.gens)
            members = kernels.dimino_extend(G.table, cyc, [x], y)
            if len(members) == G.order:
                return [x, y]
    return list(G.whole.gens)


def find_isomorphism(A: Group, B: Group):
    """Return an index map ``phi`` with ``phi[a]`` the image of element ``a``, or ``None``."""
    if invariants(A) != invariants(B):
        return None
    if A.order == 1:
        return np.zeros(1, dtype=np.int64)
    gens = small_generating_set(A)
    a_orders, b_orders = A.element_orders, B.element_orders
    a_cs, b_cs = _class_sizes(A), _class_sizes(B)
    b_class_reps = set(B.class_labels.tolist())

    candidates = []
    for k, g in enumerate(gens):
        ok = (b_orders == a_orders[g]) & (b_cs == a_cs[g])
        cand = np.flatnonzero(ok)
        if k == 0:
            # up to inner automorphisms of B the first image is a class representative
            cand = np.array([c for c in cand if c in b_class_reps], dtype=np.int64)
        candidates.append(cand.tolist())

    TA, TB = A.table, B.table
    images = [0] * len(gens)

    def extend(k):
        if k == len(gens):
            return _check_map(TA, TB, gens, images)
        for c in candidates[k]:
            # the product of the first generators must keep its order
            if k >= 1:
                pa = TA[gens[k - 1], gens[k]]
                pb = TB[images[k - 1], c]
                if a_orders[pa] != b_orders[pb]:
                    continue
            images[k] = c
            phi = extend(k + 1)
            if phi is not None:
                return phi
        return None

    return extend(0)


def _check_map(TA, TB, gens, images):
    n = TA.shape[0]
    phi = np.full(n, -1, dtype=np.int64)
    phi[0] = 0
    queue = [0]
    i = 0
    while i < len(queue):
        a = queue[i]
        i += 1
        for s, t in zip(gens, images):
            x = int(TA[a, s])
            y = int(TB[phi[a], t])
            if phi[x] < 0:
                phi[x] = y
                queue.append(x)
            elif phi[x] != y:
                return None
    if (phi < 0).any():
        return None
    if len(np.unique(phi)) != n:
        return None
    return phi


def isomorphic(A: Group, B: Group) -> bool:
    return find_isomorphism(A, B) is not None


def find_isomorphic_subgroup(W: Group, target: Group):
    """A subgroup of ``W`` isomorphic to ``target``, or ``None``."""
    if W.order % target.order:
        return None
    if W.order == target.order:
        return W.whole if isomorphic(W, target) else None
    inv_t = invariants(target)
    for c in W.lattice.classes_of_order(target.order):
        H = c.representative.as_group()
        if invariants(H) == inv_t and isomorphic(H, target):
            return c.representative
    return None

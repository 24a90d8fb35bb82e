"""Pure numpy versions of the group kernels.

Every function here has a compiled twin in ``_kernels.pyx`` with the same
signature and the same output (including element order).
"""
import numpy as np


def dimino_extend(table, members, gens, g):
    """Members of ``<H, g>`` where ``H = <gens>`` has element list ``members``.

    ``table[a, b]`` is the index of ``a * b``.  The result lists ``members``
    first, followed by whole right cosets ``H * r`` in discovery order.
    """
    members = np.asarray(members, dtype=np.int32)
    n = table.shape[0]
    mask = np.zeros(n, dtype=bool)
    mask[members] = True
    if mask[g]:
        return members.copy()
    allgens = [int(s) for s in gens] + [int(g)]
    blocks = [members]
    reps = [int(g)]
    coset = table[members, g]
    mask[coset] = True
    blocks.append(coset)
    i = 0
    while i < len(reps):
        r = reps[i]
        for s in allgens:
            x = int(table[r, s])
            if not mask[x]:
                reps.append(x)
                coset = table[members, x]
                mask[coset] = True
                blocks.append(coset)
        i += 1
    return np.concatenate(blocks).astype(np.int32)


def normalizing_mask(table, inv, member_mask, gens):
    """Boolean mask of elements ``x`` with ``x h x^-1`` in H for each ``h`` in ``gens``."""
    n = table.shape[0]
    xs = np.arange(n)
    ok = np.ones(n, dtype=bool)
    for h in gens:
        conj = table[table[xs, h], inv]
        ok &= member_mask[conj]
    return ok


def conjugation_labels(table, inv, gens):
    """Label elements by conjugacy class; the label is the least index in the class."""
    n = table.shape[0]
    parent = np.arange(n)

    def find(a):
        root = a
        while parent[root] != root:
            root = parent[root]
        while parent[a] != root:
            parent[a], a = root, parent[a]
        return root

    xs = np.arange(n)
    for s in gens:
        images = table[table[s, xs], inv[s]]
        for a, b in zip(xs.tolist(), images.tolist()):
            ra, rb = find(a), find(b)
            if ra != rb:
                if ra < rb:
                    parent[rb] = ra
                else:
                    parent[ra] = rb
    return np.array([find(a) for a in range(n)], dtype=np.int64)

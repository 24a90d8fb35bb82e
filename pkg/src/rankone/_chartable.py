"""Numerical character tables of small groups by simultaneous diagonalization.

Class-multiplication matrices share the central characters as eigenvectors;
a random combination of them separates all irreducibles.  Results are only
used after rounding rational (Galois-orbit) sums to integers, and every
rounding is checked.
"""
from __future__ import annotations

import numpy as np

from .permgroup.group import Group


def class_data(G: Group):
    labels = G.class_labels
    reps = sorted(set(labels.tolist()))
    pos = {r: i for i, r in enumerate(reps)}
    cls = np.array([pos[l] for l in labels.tolist()], dtype=np.int64)
    sizes = np.bincount(cls, minlength=len(reps))
    return np.array(reps, dtype=np.int64), cls, sizes


def irreducible_characters(G: Group, seed=0):
    """Rows are irreducible characters, columns are classes (ordered by representative)."""
    reps, cls, sizes = class_data(G)
    r = len(reps)
    T, inv = G.table, G.inv
    members = [np.flatnonzero(cls == i) for i in range(r)]
    # M[i][j, k] = #{x in C_i : x^-1 z_k in C_j}
    M = np.zeros((r, r, r))
    for i in range(r):
        xs = members[i]
        for k in range(r):
            ys = cls[T[inv[xs], reps[k]]]
            M[i, :, k] = np.bincount(ys, minlength=r)
    rng = np.random.default_rng(seed)
    A = np.tensordot(rng.standard_normal(r), M, axes=1)
    _, vecs = np.linalg.eig(A)
    chars = []
    for v in vecs.T:
        w = v / v[0]
        deg = np.sqrt(G.order / np.sum(np.abs(w) ** 2 / sizes).real)
        chars.append(w * deg / sizes)
    chars = np.array(chars)
    return reps, cls, sizes, chars[np.argsort(np.round(chars[:, 0].real, 6), kind="stable")]


def rational_characters(G: Group, tol=1e-6):
    """Sums over Galois orbits of irreducibles, as integer arrays over classes.

    Returns ``(reps, cls, chars)`` where ``chars[i][k]`` is the value on class ``k``.
    """
    reps, cls, sizes, irr = irreducible_characters(G)
    exp = int(np.lcm.reduce(G.element_orders))
    from math import gcd

    # power maps on classes for every exponent coprime to the group exponent
    power_maps = []
    for a in range(1, exp + 1):
        if gcd(a, exp) == 1:
            power_maps.append(np.array([cls[G.power(int(x), a)] for x in reps]))
    remaining = list(range(len(irr)))
    out = []
    while remaining:
        i = remaining[0]
        orbit = {i}
        for pm in power_maps:
            img = irr[i][pm]
            for j in remaining:
                if np.allclose(irr[j], img, atol=1e-6):
                    orbit.add(j)
                    break
        total = sum(irr[j] for j in orbit)
        rounded = np.round(total.real).astype(np.int64)
        if np.abs(total - rounded).max() > tol:
            raise ArithmeticError("Galois-orbit sum is not integral")
        out.append(rounded)
        remaining = [j for j in remaining if j not in orbit]
    out.sort(key=lambda v: (v[0], tuple((-v).tolist())))
    return reps, cls, out

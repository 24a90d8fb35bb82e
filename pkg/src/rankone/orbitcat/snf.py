"""Smith normal form over the integers with unimodular transforms.

Matrices are lists of lists of Python ints, so entries never overflow.
"""
from __future__ import annotations

from dataclasses import dataclass, field


def to_rows(A, nrows=None, ncols=None):
    """Copy ``A`` (nested sequence or ndarray) into a list of int lists."""
    rows = [[int(x) for x in r] for r in (A.tolist() if hasattr(A, "tolist") else A)]
    if nrows is not None and not rows:
        rows = [[0] * (ncols or 0) for _ in range(nrows)]
    return rows


def identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A, B):
    if not A or not B:
        n = len(A)
        m = len(B[0]) if B else 0
        return [[0] * m for _ in range(n)]
    Bt = list(zip(*B))
    return [[sum(a * b for a, b in zip(r, c) if a) for c in Bt] for r in A]


@dataclass
class SNF:
    """``U @ A @ V == D`` with ``D`` diagonal; ``Uinv``/``Vinv`` are the inverses."""

    diag: list
    U: list = field(repr=False)
    V: list = field(repr=False)
    Uinv: list = field(repr=False)
    Vinv: list = field(repr=False)
    shape: tuple = (0, 0)

    @property
    def rank(self):
        return sum(1 for d in self.diag if d)

    @property
    def torsion(self):
        return [d for d in self.diag if d > 1]


def smith(A, nrows=None, ncols=None, *, transforms=True) -> SNF:
    """Smith normal form of an integer matrix.

    Parameters
    ----------
    A : nested sequence of int
        ``nrows`` x ``ncols``; pass the shape explicitly when ``A`` is empty.
    transforms : bool
        Track ``U``, ``V`` and their inverses.

    Returns
    -------
    SNF
        Nonzero diagonal entries are positive and each divides the next.
    """
    M = to_rows(A)
    m = len(M) if nrows is None else nrows
    n = (len(M[0]) if M else 0) if ncols is None else ncols
    if not M:
        M = [[0] * n for _ in range(m)]
    U = identity(m) if transforms else None
    Uinv = identity(m) if transforms else None
    V = identity(n) if transforms else None
    Vinv = identity(n) if transforms else None

    # elementary operations, mirrored on the transforms
    def row_add(i, j, c):  # row_i += c row_j
        if not c:
            return
        Mi, Mj = M[i], M[j]
        for k in range(n):
            if Mj[k]:
                Mi[k] += c * Mj[k]
        if transforms:
            Ui, Uj = U[i], U[j]
            for k in range(m):
                if Uj[k]:
                    Ui[k] += c * Uj[k]
            for r in Uinv:  # col_j -= c col_i
                if r[i]:
                    r[j] -= c * r[i]

    def col_add(i, j, c):  # col_i += c col_j
        if not c:
            return
        for r in M:
            if r[j]:
                r[i] += c * r[j]
        if transforms:
            for r in V:
                if r[j]:
                    r[i] += c * r[j]
            Vi, Vj = Vinv[i], Vinv[j]  # row_j -= c row_i
            for k in range(n):
                if Vi[k]:
                    Vj[k] -= c * Vi[k]

    def row_swap(i, j):
        if i == j:
            return
        M[i], M[j] = M[j], M[i]
        if transforms:
            U[i], U[j] = U[j], U[i]
            for r in Uinv:
                r[i], r[j] = r[j], r[i]

    def col_swap(i, j):
        if i == j:
            return
        for r in M:
            r[i], r[j] = r[j], r[i]
        if transforms:
            for r in V:
                r[i], r[j] = r[j], r[i]
            Vinv[i], Vinv[j] = Vinv[j], Vinv[i]

    def row_neg(i):
        M[i] = [-x for x in M[i]]
        if transforms:
            U[i] = [-x for x in U[i]]
            for r in Uinv:
                r[i] = -r[i]

    t = 0
    while t < min(m, n):
        # pivot: smallest nonzero |entry| in the remaining block
        best = None
        for i in range(t, m):
            Mi = M[i]
            for j in range(t, n):
                v = Mi[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        row_swap(t, i)
        col_swap(t, j)
        while True:
            done = True
            p = M[t][t]
            for i in range(t + 1, m):
                if M[i][t]:
                    q = M[i][t] // p
                    row_add(i, t, -q)
                    if M[i][t]:
                        done = False
            for j in range(t + 1, n):
                if M[t][j]:
                    q = M[t][j] // p
                    col_add(j, t, -q)
                    if M[t][j]:
                        done = False
            if done:
                # divisibility of the remaining block
                bad = None
                for i in range(t + 1, m):
                    for j in range(t + 1, n):
                        if M[i][j] % p:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is None:
                    break
                row_add(t, bad, 1)
                continue
            # move the smallest remainder into the pivot position
            best = None
            for i in range(t, m):
                v = M[i][t]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, t)
            for j in range(t, n):
                v = M[t][j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), t, j)
            _, i, j = best
            row_swap(t, i)
            col_swap(t, j)
        if M[t][t] < 0:
            row_neg(t)
        t += 1
    diag = [M[i][i] for i in range(min(m, n))]
    return SNF(diag, U, V, Uinv, Vinv, (m, n))


def elementary_divisors(A, nrows=None, ncols=None):
    """Nonzero invariant factors of ``A``."""
    return [d for d in smith(A, nrows, ncols, transforms=False).diag if d]


def rank(A, nrows=None, ncols=None):
    return len(elementary_divisors(A, nrows, ncols))


def p_part(d, p):
    out = 1
    while d % p == 0:
        d //= p
        out *= p
    return out


def localize_torsion(torsion, p):
    """Keep the ``p``-primary part of each torsion coefficient."""
    if p is None:
        return list(torsion)
    return [q for q in (p_part(d, p) for d in torsion) if q > 1]


__all__ = ["SNF", "elementary_divisors", "localize_torsion", "matmul", "rank", "smith"]

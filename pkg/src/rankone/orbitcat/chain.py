"""Finite based chain complexes of free abelian groups.

``bd[d]`` is the matrix of ``C_d -> C_{d-1}`` with rows indexed by the basis
of ``C_{d-1}``.  Homology comes from Smith normal forms; the action of a
chain automorphism on the free part of homology is read off by lifting a
cycle basis.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import BoundaryNotSquareZero
from .snf import localize_torsion, matmul, smith


def zeros(m, n):
    return [[0] * n for _ in range(m)]


@dataclass
class HomologyGroup:
    """``Z^rank`` plus cyclic torsion, optionally with action matrices on the free part."""

    rank: int
    torsion: list = field(default_factory=list)
    actions: list = field(default_factory=list)

    @property
    def is_zero(self):
        return self.rank == 0 and not self.torsion

    def to_dict(self):
        out = {"rank": self.rank, "torsion": list(self.torsion)}
        if self.actions:
            out["actions"] = [[list(r) for r in A] for A in self.actions]
        return out


class Chain:
    """Bounded chain complex of finitely generated free abelian groups.

    Parameters
    ----------
    dims : dict
        Degree to rank.
    bd : dict
        Degree ``d`` to the ``dims[d-1] x dims[d]`` integer matrix of the
        differential; absent degrees are zero maps.
    """

    def __init__(self, dims, bd=None):
        self.dims = {int(d): int(n) for d, n in dims.items() if n}
        self.bd = {}
        for d, M in (bd or {}).items():
            if self.dim(d) and self.dim(d - 1):
                rows = [[int(x) for x in r] for r in M]
                if len(rows) != self.dim(d - 1) or any(len(r) != self.dim(d) for r in rows):
                    raise ValueError(f"differential in degree {d} has the wrong shape")
                self.bd[int(d)] = rows

    def dim(self, d):
        return self.dims.get(d, 0)

    @property
    def degrees(self):
        return sorted(self.dims)

    @property
    def top(self):
        """Largest degree with a nonzero module, ``None`` for the zero complex."""
        return max(self.dims) if self.dims else None

    def matrix(self, d):
        M = self.bd.get(d)
        return M if M is not None else zeros(self.dim(d - 1), self.dim(d))

    def is_zero(self):
        return not self.dims

    def check_square_zero(self):
        for d in self.degrees:
            if self.dim(d - 2) == 0 or d not in self.bd or d - 1 not in self.bd:
                continue
            P = matmul(self.bd[d - 1], self.bd[d])
            if any(any(r) for r in P):
                raise BoundaryNotSquareZero(f"d o d != 0 in degree {d}")

    def euler(self):
        return sum((-1) ** d * n for d, n in self.dims.items())

    # -- homology -------------------------------------------------------------

    def homology(self, prime=None, actions=None):
        """Homology in every degree of the complex.

        Parameters
        ----------
        prime : int, optional
            Keep only ``prime``-primary torsion (homology with local coefficients).
        actions : list, optional
            Chain automorphisms, each a dict ``degree -> permutation`` (list of
            target positions) or ``degree -> matrix``; their matrices on the
            free part of homology are stored per degree.

        Returns
        -------
        dict
            Degree to :class:`HomologyGroup` (degrees with zero modules omitted).
        """
        want = bool(actions)
        snf = {}
        for d in self.degrees:
            if self.dim(d - 1):
                snf[d] = smith(self.matrix(d), self.dim(d - 1), self.dim(d), transforms=want)
        out = {}
        for d in self.degrees:
            n = self.dim(d)
            r_out = snf[d].rank if d in snf else 0
            S_in = snf.get(d + 1)
            r_in = S_in.rank if S_in else 0
            tors = localize_torsion(S_in.torsion if S_in else [], prime)
            H = HomologyGroup(n - r_out - r_in, tors)
            if want and H.rank:
                H.actions = self._free_actions(d, snf.get(d), actions)
            out[d] = H
        return out

    def _free_actions(self, d, S_out, actions):
        n = self.dim(d)
        if S_out is None:
            r, Vinv = 0, [[int(i == j) for j in range(n)] for i in range(n)]
            V = Vinv
        else:
            r, Vinv, V = S_out.rank, S_out.Vinv, S_out.V
        k = n - r
        # boundaries in kernel coordinates
        B = self.matrix(d + 1) if self.dim(d + 1) else zeros(n, 0)
        VB = matmul(Vinv, B) if B and B[0] else zeros(n, 0)
        X = [row for row in VB[r:]]
        ncols = len(B[0]) if B and B[0] else 0
        S2 = smith(X, k, ncols)
        r2 = S2.rank
        free = list(range(r2, k))
        # cycle representatives of the free generators
        Z = [row[r:] for row in V]  # n x k
        gens = []
        for j in free:
            col = [S2.Uinv[i][j] for i in range(k)]
            gens.append([sum(Z[a][b] * col[b] for b in range(k) if col[b]) for a in range(n)])
        mats = []
        for act in actions:
            A = act.get(d)
            M = []
            for c in gens:
                if A is None:
                    img = list(c)
                elif A and isinstance(A[0], list):
                    img = [sum(A[a][b] * c[b] for b in range(n) if c[b]) for a in range(n)]
                else:
                    img = [0] * n
                    for b, v in enumerate(c):
                        if v:
                            img[A[b]] += v
                y = [sum(Vinv[a][b] * img[b] for b in range(n) if img[b]) for a in range(r, n)]
                z = [sum(S2.U[a][b] * y[b] for b in range(k) if y[b]) for a in range(k)]
                M.append([z[j] for j in free])
            # columns were appended; transpose into a matrix acting on column vectors
            mats.append([list(row) for row in zip(*M)] if M else [])
        return mats

    def reduced_is_sphere(self, n, prime=None):
        """Homology is ``Z`` in degree ``n`` and zero elsewhere (``prime``-locally if given)."""
        H = self.homology(prime)
        for d, h in H.items():
            want = 1 if d == n else 0
            if h.rank != want or h.torsion:
                return False
        return n in H and H[n].rank == 1

    # -- coordinate sub- and quotient complexes ---------------------------------

    def restrict(self, keep):
        """Sub- or quotient complex on the coordinates ``keep[d]`` (lists of positions)."""
        dims = {d: len(keep.get(d, [])) for d in self.degrees}
        bd = {}
        for d in self.degrees:
            if d in self.bd and dims.get(d) and dims.get(d - 1):
                M = self.bd[d]
                bd[d] = [[M[i][j] for j in keep[d]] for i in keep[d - 1]]
        return Chain(dims, bd)

    def is_subcomplex(self, keep):
        """Whether the coordinate span ``keep`` is closed under the differential."""
        for d in self.degrees:
            if d not in self.bd:
                continue
            rows = set(keep.get(d - 1, []))
            M = self.bd[d]
            for j in keep.get(d, []):
                for i in range(self.dim(d - 1)):
                    if M[i][j] and i not in rows:
                        return False
        return True


def cone(f, A: Chain, B: Chain) -> Chain:
    """Mapping cone of ``f: A -> B`` (``f[d]`` is a ``dim B_d x dim A_d`` matrix).

    ``Cone_d = A_{d-1} + B_d`` with ``d(a, b) = (-da, f(a) + db)``.
    """
    degs = set(A.degrees) | set(B.degrees)
    lo = min(degs, default=0)
    hi = max(degs, default=-1) + 1
    dims = {d: A.dim(d - 1) + B.dim(d) for d in range(lo, hi + 1)}
    bd = {}
    for d in range(lo, hi + 1):
        m, n = dims.get(d - 1, 0), dims[d]
        if not m or not n:
            continue
        a_in, b_in = A.dim(d - 1), B.dim(d)
        a_out = A.dim(d - 2)
        M = zeros(m, n)
        if a_in and a_out:
            dA = A.matrix(d - 1)
            for i in range(a_out):
                for j in range(a_in):
                    M[i][j] = -dA[i][j]
        if a_in and B.dim(d - 1):
            F = f.get(d - 1)
            if F is not None:
                for i in range(B.dim(d - 1)):
                    for j in range(a_in):
                        M[a_out + i][j] = F[i][j]
        if b_in and B.dim(d - 1):
            dB = B.matrix(d)
            for i in range(B.dim(d - 1)):
                for j in range(b_in):
                    M[a_out + i][a_in + j] = dB[i][j]
        bd[d] = M
    return Chain(dims, bd)


def is_quasi_isomorphism(f, A: Chain, B: Chain, prime=None) -> bool:
    """``f`` induces an isomorphism on homology (``prime``-locally if given)."""
    return all(h.is_zero for h in cone(f, A, B).homology(prime).values())


# -- column-space arithmetic --------------------------------------------------------

def column_rank(A, m, n):
    return smith(A, m, n, transforms=False).rank if m and n else 0


def in_column_lattice(A, m, n, v) -> bool:
    """Whether the integer vector ``v`` lies in the integer column span of ``A``."""
    if not any(v):
        return True
    if not n:
        return False
    S = smith(A, m, n)
    w = [sum(S.U[i][k] * v[k] for k in range(m) if v[k]) for i in range(m)]
    for i in range(m):
        d = S.diag[i] if i < len(S.diag) else 0
        if d == 0:
            if w[i]:
                return False
        elif w[i] % d:
            return False
    return True


def column_intersection(A, B, m):
    """Integer basis (columns) of ``colspan(A) & colspan(B)`` inside ``Z^m``."""
    na = len(A[0]) if A and A[0] else 0
    nb = len(B[0]) if B and B[0] else 0
    if not na or not nb:
        return zeros(m, 0)
    AB = [list(A[i]) + [-x for x in B[i]] for i in range(m)]
    S = smith(AB, m, na + nb)
    ker = [[S.V[i][j] for j in range(S.rank, na + nb)] for i in range(na + nb)]
    top = ker[:na]
    img = matmul(A, top)
    # drop dependent columns with a final reduction
    k = len(img[0]) if img and img[0] else 0
    if not k:
        return zeros(m, 0)
    S2 = smith(img, m, k)
    r = S2.rank
    Vr = [row[:r] for row in S2.V]
    return matmul(img, Vr)


def same_lattice(A, B, m) -> bool:
    """Whether two column spans in ``Z^m`` coincide."""
    na = len(A[0]) if A and A[0] else 0
    nb = len(B[0]) if B and B[0] else 0
    for j in range(na):
        if not in_column_lattice(B, m, nb, [A[i][j] for i in range(m)]):
            return False
    for j in range(nb):
        if not in_column_lattice(A, m, na, [B[i][j] for i in range(m)]):
            return False
    return True


__all__ = [
    "Chain", "HomologyGroup", "column_intersection", "column_rank", "cone",
    "in_column_lattice", "is_quasi_isomorphism", "same_lattice",
]

"""Finite permutation groups with fully enumerated elements.

A :class:`Group` stores its elements as rows of an integer array together
with a lazily built multiplication table; a :class:`Subgroup` is a set of
element indices of its parent, kept both as a sorted index array and as a
Python ``int`` bitset for hashing and subset tests.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import gcd

import numpy as np

from .. import kernels
from ..errors import DegreeMismatch, NotASubgroup, NotNormal, OrderBoundExceeded
from .perm import Perm

DEFAULT_ORDER_BOUND = 10**7
#: largest order for which a full multiplication table is materialized
TABLE_LIMIT = 6000


def _row_dtype(degree):
    if degree <= 256:
        return np.uint8
    if degree <= 65536:
        return np.uint16
    return np.int32


def _void_view(rows):
    rows = np.ascontiguousarray(rows)
    return rows.view(np.dtype((np.void, rows.dtype.itemsize * rows.shape[1]))).ravel()


def bits_from_indices(indices, n):
    mask = np.zeros(n, dtype=bool)
    mask[np.asarray(indices, dtype=np.int64)] = True
    return bits_from_mask(mask)


def bits_from_mask(mask):
    return int.from_bytes(np.packbits(mask, bitorder="little").tobytes(), "little")


def prime_factors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def p_part(n, p):
    q = 1
    while n % p == 0:
        n //= p
        q *= p
    return q


def is_prime(n):
    return n >= 2 and prime_factors(n) == [n]


@dataclass(frozen=True)
class QuotientMap:
    """Bookkeeping that ties a quotient group ``N/K`` to its parent."""

    source: "Subgroup"
    kernel: "Subgroup"
    coset_of: np.ndarray  # parent index -> quotient index, -1 outside N
    reps: np.ndarray  # quotient index -> a parent representative

    def image(self, parent_indices):
        return self.coset_of[np.asarray(parent_indices)]

    def preimage(self, sub: "Subgroup") -> "Subgroup":
        """Full preimage in the parent of a subgroup of the quotient."""
        parent = self.source.parent
        keep = np.isin(self.coset_of, sub.members) & (self.coset_of >= 0)
        return parent.subgroup_from_mask(keep)


class Group:
    """A finite permutation group.

    Parameters
    ----------
    perms : ndarray, shape (n, degree)
        Element images; row 0 must be the identity.
    gen_indices : sequence of int
        Indices of the generators among the rows.
    table : ndarray, optional
        Precomputed multiplication table.
    """

    def __init__(self, perms, gen_indices, *, table=None, name=None, origin=None):
        self._perms = perms
        self.degree = int(perms.shape[1])
        self.order = int(perms.shape[0])
        self.gen_indices = tuple(int(i) for i in gen_indices)
        self.name = name
        self.origin = origin
        if table is not None:
            self.__dict__["table"] = np.ascontiguousarray(table, dtype=np.int32)

    def __repr__(self):
        label = self.name or "Group"
        return f"<{label} order={self.order} degree={self.degree}>"

    def __len__(self):
        return self.order

    # -- elements -----------------------------------------------------------
    @property
    def generators(self):
        return [self.element(i) for i in self.gen_indices]

    def element(self, i) -> Perm:
        return Perm(self._perms[int(i)].tolist())

    @property
    def perm_rows(self):
        return self._perms

    @cached_property
    def _sorted_keys(self):
        keys = _void_view(self._perms)
        order = np.argsort(keys, kind="stable")
        return keys[order], order

    def index(self, perm) -> int:
        """Element index of ``perm`` (a :class:`Perm` or image sequence)."""
        images = perm.images if isinstance(perm, Perm) else tuple(perm)
        if len(images) != self.degree:
            raise DegreeMismatch(f"expected degree {self.degree}")
        row = np.array([images], dtype=self._perms.dtype)
        idx = self._lookup(row)[0]
        if idx < 0:
            raise NotASubgroup(f"{perm} is not an element of {self!r}")
        return int(idx)

    def _lookup(self, rows):
        skeys, order = self._sorted_keys
        keys = _void_view(rows.astype(self._perms.dtype, copy=False))
        pos = np.searchsorted(skeys, keys)
        pos = np.minimum(pos, len(skeys) - 1)
        found = skeys[pos] == keys
        return np.where(found, order[pos], -1)

    @cached_property
    def table(self):
        """``table[a, b]`` is the index of ``a * b``."""
        if self.order > TABLE_LIMIT:
            raise OrderBoundExceeded(
                f"order {self.order} exceeds table limit {TABLE_LIMIT}"
            )
        n = self.order
        P = self._perms
        # right multiplication by each generator: (x * s)[i] = x[s[i]]
        right = {s: self._lookup(P[:, P[s].astype(np.intp)]) for s in self.gen_indices}
        out = np.empty((n, n), dtype=np.int32)
        out[:, 0] = np.arange(n)
        done = np.zeros(n, dtype=bool)
        done[0] = True
        queue = [0]
        i = 0
        # column b * s is column b pushed through right multiplication by s
        while i < len(queue):
            b = queue[i]
            i += 1
            for s in self.gen_indices:
                c = int(right[s][b])
                if not done[c]:
                    done[c] = True
                    out[:, c] = right[s][out[:, b]]
                    queue.append(c)
        if not done.all():
            raise ValueError("generators do not generate the element list")
        return out

    @cached_property
    def inv(self):
        return np.ascontiguousarray(np.argmax(self.table == 0, axis=1).astype(np.int32))

    def mul(self, a, b):
        return int(self.table[a, b])

    def conj(self, g, x):
        """Index of ``g x g^-1``."""
        return int(self.table[self.table[g, x], self.inv[g]])

    @cached_property
    def element_orders(self):
        n = self.order
        orders = np.zeros(n, dtype=np.int64)
        cur = np.arange(n)
        k = 1
        while (orders == 0).any():
            hit = (cur == 0) & (orders == 0)
            orders[hit] = k
            cur = self.table[cur, np.arange(n)]
            k += 1
        return orders

    def power(self, x, k):
        r = 0
        base = int(x)
        while k:
            if k & 1:
                r = int(self.table[r, base])
            base = int(self.table[base, base])
            k >>= 1
        return r

    @cached_property
    def class_labels(self):
        """Conjugacy-class label per element (least index in the class)."""
        return kernels.conjugation_labels(self.table, self.inv, list(self.gen_indices))

    @cached_property
    def conjugacy_classes(self):
        labels = self.class_labels
        reps = sorted(set(labels.tolist()))
        return [np.flatnonzero(labels == r) for r in reps]

    # -- subgroups ----------------------------------------------------------
    @cached_property
    def whole(self) -> "Subgroup":
        return Subgroup(self, np.arange(self.order, dtype=np.int32), self.gen_indices)

    @cached_property
    def trivial(self) -> "Subgroup":
        return Subgroup(self, np.zeros(1, dtype=np.int32), ())

    def subgroup(self, gens) -> "Subgroup":
        """Subgroup generated by element indices (or :class:`Perm` values)."""
        idx = [self.index(g) if isinstance(g, Perm) else int(g) for g in gens]
        members = np.zeros(1, dtype=np.int32)
        used = []
        for g in idx:
            if g == 0:
                continue
            new = kernels.dimino_extend(self.table, members, used, g)
            if len(new) != len(members):
                used.append(g)
                members = new
        return Subgroup(self, members, used)

    def subgroup_from_mask(self, mask) -> "Subgroup":
        return Subgroup(self, np.flatnonzero(mask).astype(np.int32), None)

    def join(self, H: "Subgroup", g: int) -> "Subgroup":
        """``<H, g>`` computed by extending ``H`` with one generator."""
        if H.contains(g):
            return H
        members = kernels.dimino_extend(self.table, H.members_raw, list(H.gens), int(g))
        return Subgroup(self, members, tuple(H.gens) + (int(g),))

    def join_subgroups(self, H: "Subgroup", K: "Subgroup") -> "Subgroup":
        M = H
        for g in K.gens:
            M = self.join(M, g)
        return M

    @cached_property
    def lattice(self):
        from .lattice import SubgroupLattice

        return SubgroupLattice(self)


class Subgroup:
    """A subgroup of ``parent`` stored as a set of element indices."""

    __slots__ = ("parent", "members_raw", "members", "bits", "_gens", "__dict__")

    def __init__(self, parent: Group, members, gens):
        self.parent = parent
        raw = np.asarray(members, dtype=np.int32)
        self.members_raw = raw
        self.members = np.sort(raw)
        self.bits = bits_from_indices(self.members, parent.order)
        self._gens = None if gens is None else tuple(int(g) for g in gens)

    @property
    def order(self):
        return len(self.members)

    def __len__(self):
        return len(self.members)

    def __repr__(self):
        return f"<Subgroup order={self.order} of {self.parent!r}>"

    def __eq__(self, other):
        return (
            isinstance(other, Subgroup)
            and other.parent is self.parent
            and other.bits == self.bits
        )

    def __hash__(self):
        return hash(self.bits)

    def __le__(self, other):
        return self.bits & other.bits == self.bits

    def __lt__(self, other):
        return self <= other and self.bits != other.bits

    def contains(self, x):
        return (self.bits >> int(x)) & 1 == 1

    @cached_property
    def mask(self):
        m = np.zeros(self.parent.order, dtype=bool)
        m[self.members] = True
        return m

    @property
    def gens(self):
        if self._gens is None:
            self._gens = self._greedy_generators()
        return self._gens

    def _greedy_generators(self):
        G = self.parent
        if self.order == 1:
            return ()
        orders = G.element_orders[self.members]
        ranked = self.members[np.lexsort((self.members, -orders))]
        members = np.zeros(1, dtype=np.int32)
        mask = np.zeros(G.order, dtype=bool)
        mask[0] = True
        used = []
        for g in ranked.tolist():
            if mask[g]:
                continue
            members = kernels.dimino_extend(G.table, members, used, g)
            used.append(g)
            mask[members] = True
            if len(members) == self.order:
                break
        return tuple(used)

    def elements(self):
        return [self.parent.element(i) for i in self.members]

    def conjugate(self, g) -> "Subgroup":
        """``g H g^-1``."""
        G = self.parent
        img = G.table[G.table[g, self.members], G.inv[g]]
        gens = [G.conj(g, h) for h in self.gens]
        return Subgroup(G, img, gens)

    def is_normal_in(self, other: "Subgroup") -> bool:
        if not self <= other:
            return False
        G = self.parent
        mask = self.mask
        for n in other.gens:
            if not mask[G.table[G.table[n, self.members], G.inv[n]]].all():
                return False
        return True

    @cached_property
    def is_abelian(self):
        G = self.parent
        gs = list(self.gens)
        return all(G.table[a, b] == G.table[b, a] for a in gs for b in gs)

    @cached_property
    def is_cyclic(self):
        return int(self.parent.element_orders[self.members].max()) == self.order

    @cached_property
    def exponent(self):
        from math import lcm

        return lcm(*(int(o) for o in set(self.parent.element_orders[self.members].tolist())))

    def as_group(self, name=None) -> Group:
        """This subgroup as a standalone :class:`Group` (same degree).

        Element ``i`` of the result is ``self.members[i]`` of the parent.
        """
        G = self.parent
        pos = np.full(G.order, -1, dtype=np.int64)
        pos[self.members] = np.arange(self.order)
        sub_table = pos[G.table[np.ix_(self.members, self.members)]]
        gens = [int(pos[g]) for g in self.gens]
        return Group(
            G.perm_rows[self.members],
            gens,
            table=sub_table,
            name=name,
            origin=("subgroup", self),
        )


# -- construction ------------------------------------------------------------

def closure(degree, gens, *, bound=DEFAULT_ORDER_BOUND, name=None) -> Group:
    """Enumerate the group generated by ``gens`` (a sequence of :class:`Perm`).

    Raises
    ------
    DegreeMismatch
        If a generator has the wrong degree.
    OrderBoundExceeded
        If the group has more than ``bound`` elements.
    """
    gens = list(gens)
    for g in gens:
        if g.degree != degree:
            raise DegreeMismatch(f"generator {g} has degree {g.degree}, expected {degree}")
    dtype = _row_dtype(degree)
    gen_rows = np.array([g.images for g in gens], dtype=np.int64).reshape(len(gens), degree)
    identity = np.arange(degree, dtype=dtype)
    seen = {identity.tobytes(): 0}
    rows = [identity]
    frontier = identity[None, :]
    while len(frontier):
        fresh = []
        for s in gen_rows:
            prod = frontier[:, s]  # x * s
            for r in prod:
                key = r.tobytes()
                if key not in seen:
                    seen[key] = len(rows)
                    rows.append(r)
                    fresh.append(r)
                    if len(rows) > bound:
                        raise OrderBoundExceeded(f"group order exceeds bound {bound}")
        frontier = np.array(fresh, dtype=dtype).reshape(-1, degree)
    perms = np.array(rows, dtype=dtype)
    gen_idx = [seen[np.asarray(g.images, dtype=dtype).tobytes()] for g in gens]
    gen_idx = [i for i in dict.fromkeys(gen_idx) if i != 0]
    return Group(perms, gen_idx, name=name)


def _as_subgroup(X) -> Subgroup:
    return X.whole if isinstance(X, Group) else X


def normalizer(G, H) -> Subgroup:
    """``N_G(H)``; ``G`` may be a group or a subgroup containing ``H``."""
    M = _as_subgroup(G)
    H = _as_subgroup(H)
    if H.parent is not M.parent or not H <= M:
        raise NotASubgroup("H must be a subgroup of G")
    P = M.parent
    if H.order == 1 or H == M:
        return M
    ok = kernels.normalizing_mask(P.table, P.inv, H.mask, list(H.gens))
    return P.subgroup_from_mask(ok & M.mask)


def centralizer(G, H) -> Subgroup:
    M = _as_subgroup(G)
    H = _as_subgroup(H)
    P = M.parent
    xs = M.members
    ok = np.ones(len(xs), dtype=bool)
    for h in H.gens:
        ok &= P.table[xs, h] == P.table[h, xs]
    return P.subgroup_from_mask(np.isin(np.arange(P.order), xs[ok]))


def quotient(N, K) -> Group:
    """``N/K`` as the regular permutation action on the cosets of ``K``.

    The returned group carries a :class:`QuotientMap` in ``origin``.
    """
    N = _as_subgroup(N)
    K = _as_subgroup(K)
    if K.parent is not N.parent or not K <= N:
        raise NotASubgroup("K must be a subgroup of N")
    if not K.is_normal_in(N):
        raise NotNormal("K is not normal in N")
    P = N.parent
    coset_of = np.full(P.order, -1, dtype=np.int64)
    if K.order == 1:
        W = N.as_group()
        coset_of[N.members] = np.arange(N.order)
        W.origin = QuotientMap(N, K, coset_of, N.members.astype(np.int64))
        return W
    keys = P.table[np.ix_(N.members, K.members)].min(axis=1)
    uniq, inverse = np.unique(keys, return_inverse=True)
    coset_of[N.members] = inverse
    reps = uniq.astype(np.int64)
    m = len(reps)
    wtable = coset_of[P.table[np.ix_(reps, reps)]].astype(np.int32)
    gens = sorted({int(coset_of[g]) for g in N.gens} - {0})
    perms = wtable.astype(_row_dtype(m))
    W = Group(perms, gens, table=wtable, origin=QuotientMap(N, K, coset_of, reps))
    return W


def sylow(G, p) -> Subgroup:
    """A Sylow ``p``-subgroup, grown one ``p``-element at a time inside normalizers."""
    M = _as_subgroup(G)
    P = M.parent
    target = p_part(M.order, p)
    S = P.trivial
    orders = P.element_orders
    while S.order < target:
        N = normalizer(M, S)
        cand = N.members[~S.mask[N.members]]
        cand = cand[_is_p_power(orders[cand], p)]
        if len(cand) == 0:  # pragma: no cover - excluded by Sylow's theorem
            raise RuntimeError("Sylow growth stalled")
        S = P.join(S, int(cand[0]))
    return S


def _is_p_power(values, p):
    v = np.asarray(values).copy()
    while True:
        div = (v % p == 0) & (v > 1)
        if not div.any():
            break
        v[div] //= p
    return v == 1


def p_elements(H, p):
    H = _as_subgroup(H)
    orders = H.parent.element_orders[H.members]
    return H.members[_is_p_power(orders, p) & (orders > 1)]


def coprime(a, b):
    return gcd(a, b) == 1

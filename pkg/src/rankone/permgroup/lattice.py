"""Conjugacy classes of subgroups by cyclic extension.

Every subgroup is reached from the trivial one by repeatedly adjoining
elements of prime-power order.  Starting from class representatives only,
each step joins a representative ``H`` with one cyclic subgroup of
prime-power order from each ``N_G(H)``-orbit, and new results are
deduplicated against the full conjugacy orbit of every known class.
"""
from __future__ import annotations

from functools import cached_property

import numpy as np

from .. import kernels
from .group import Subgroup, bits_from_indices, normalizer, prime_factors
from .names import structure_name


class SubgroupClass:
    """One conjugacy class of subgroups.

    Attributes
    ----------
    index : int
        Position in the lattice ordering.
    representative : Subgroup
        Canonical member (lexicographically least sorted element list).
    class_size : int
        Number of conjugates.
    label : str
        Structural name with a letter suffix when several classes share it.
    """

    def __init__(self, lattice, index, representative, conjugates):
        self.lattice = lattice
        self.index = index
        self.representative = representative
        self._conjugates = conjugates  # list of (bits, members)
        self.class_size = len(conjugates)
        self.label = ""

    @property
    def order(self):
        return self.representative.order

    def __repr__(self):
        return f"<SubgroupClass {self.label} order={self.order} size={self.class_size}>"

    @property
    def conjugate_bits(self):
        return [b for b, _ in self._conjugates]

    def conjugates(self):
        G = self.representative.parent
        return [Subgroup(G, m, None) for _, m in self._conjugates]

    @cached_property
    def normalizer(self) -> Subgroup:
        return normalizer(self.representative.parent, self.representative)

    @cached_property
    def weyl_order(self):
        return self.normalizer.order // self.order

    @cached_property
    def weyl_group(self):
        from .group import quotient

        return quotient(self.normalizer, self.representative)

    def is_p_subgroup(self, p):
        n = self.order
        while n % p == 0:
            n //= p
        return n == 1


class SubgroupLattice:
    """All conjugacy classes of subgroups of ``G``, in deterministic order.

    Classes are sorted by ``(order, canonical member tuple)``.
    """

    def __init__(self, G):
        self.group = G
        self._cyclic_gens, self._cyc_id = self._prime_power_cyclics()
        self.classes = self._enumerate()
        self._by_bits = {}
        for c in self.classes:
            for b in c.conjugate_bits:
                self._by_bits[b] = c.index
        _assign_labels(self.classes)

    def __len__(self):
        return len(self.classes)

    def __iter__(self):
        return iter(self.classes)

    def __getitem__(self, i):
        return self.classes[i]

    # -- enumeration ----------------------------------------------------------
    def _prime_power_cyclics(self):
        G = self.group
        orders = G.element_orders
        n = G.order
        cyc_id = np.full(n, -1, dtype=np.int64)
        gens = []
        for x in range(1, n):
            o = int(orders[x])
            if cyc_id[x] >= 0 or len(prime_factors(o)) != 1:
                continue
            cid = len(gens)
            gens.append(x)
            # generators of <x> are the powers x^k with k coprime to o
            y = x
            for k in range(1, o):
                if np.gcd(k, o) == 1:
                    cyc_id[y] = cid
                y = int(G.table[y, x])
        return np.array(gens, dtype=np.int64), cyc_id

    def _orbit(self, H: Subgroup):
        """All conjugates of ``H`` as ``(bits, sorted members)`` pairs."""
        G = self.group
        seen = {H.bits: H.members}
        queue = [H.members]
        i = 0
        while i < len(queue):
            m = queue[i]
            i += 1
            for g in G.gen_indices:
                img = np.sort(G.table[G.table[g, m], G.inv[g]])
                b = bits_from_indices(img, G.order)
                if b not in seen:
                    seen[b] = img
                    queue.append(img)
        return list(seen.items())

    def _enumerate(self):
        G = self.group
        table, inv = G.table, G.inv
        cyc_gens = self._cyclic_gens
        cyc_id = self._cyc_id
        found = {}  # conjugate bits -> provisional id
        records = []  # (representative Subgroup, conjugates)

        def register(H):
            conj = self._orbit(H)
            rid = len(records)
            for b, _ in conj:
                found[b] = rid
            records.append((H, conj))

        register(G.trivial)
        k = 0
        while k < len(records):
            H, _ = records[k]
            k += 1
            if H.order == G.order:
                continue
            # reduce the prime-power cyclic subgroups modulo N_G(H)-conjugation
            N = normalizer(G, H)
            labels = _orbit_labels(table, inv, cyc_gens, cyc_id, N.gens)
            done = set()
            for cid in range(len(cyc_gens)):
                rep = labels[cid]
                if rep in done:
                    continue
                done.add(rep)
                x = int(cyc_gens[rep])
                if H.contains(x):
                    continue
                members = kernels.dimino_extend(table, H.members_raw, list(H.gens), x)
                b = bits_from_indices(members, G.order)
                if b in found:
                    continue
                register(Subgroup(G, members, tuple(H.gens) + (x,)))

        canon = []
        for H, conj in records:
            best = min(conj, key=lambda bm: tuple(bm[1].tolist()))
            canon.append((H.order, tuple(best[1].tolist()), H, best, conj))
        canon.sort(key=lambda t: (t[0], t[1]))
        classes = []
        for i, (_, _, H, best, conj) in enumerate(canon):
            if best[0] == H.bits:
                rep = H
            else:
                rep = Subgroup(G, best[1], None)
            conj_sorted = sorted(conj, key=lambda bm: tuple(bm[1].tolist()))
            classes.append(SubgroupClass(self, i, rep, conj_sorted))
        return classes

    # -- queries ----------------------------------------------------------------
    def class_of(self, H: Subgroup) -> SubgroupClass:
        return self.classes[self._by_bits[H.bits]]

    def by_label(self, label) -> SubgroupClass:
        for c in self.classes:
            if c.label == label:
                return c
        raise KeyError(label)

    @cached_property
    def subconjugacy(self):
        """``M[i, j]`` is True when class ``i`` is subconjugate to class ``j``."""
        n = len(self.classes)
        M = np.zeros((n, n), dtype=bool)
        for j, cj in enumerate(self.classes):
            bj = cj.representative.bits
            for i, ci in enumerate(self.classes):
                if cj.order % ci.order:
                    continue
                M[i, j] = any(b & bj == b for b in ci.conjugate_bits)
        return M

    def subconjugate(self, i, j):
        return bool(self.subconjugacy[i, j])

    def classes_of_order(self, n):
        return [c for c in self.classes if c.order == n]

    def p_subgroup_classes(self, p):
        return [c for c in self.classes if c.is_p_subgroup(p)]

    def total_subgroups(self):
        return sum(c.class_size for c in self.classes)


def _orbit_labels(table, inv, cyc_gens, cyc_id, ngens):
    """Union-find labels of the conjugation action of ``<ngens>`` on cyclic ids."""
    m = len(cyc_gens)
    parent = list(range(m))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for n in ngens:
        images = cyc_id[table[table[n, cyc_gens], inv[n]]]
        for a, b in enumerate(images.tolist()):
            ra, rb = find(a), find(b)
            if ra != rb:
                if ra < rb:
                    parent[rb] = ra
                else:
                    parent[ra] = rb
    return [find(a) for a in range(m)]


def _assign_labels(classes):
    names = [structure_name(c.representative) for c in classes]
    counts = {}
    for n in names:
        counts[n] = counts.get(n, 0) + 1
    seen = {}
    for c, n in zip(classes, names):
        if counts[n] == 1:
            c.label = n
        else:
            k = seen.get(n, 0)
            seen[n] = k + 1
            c.label = n + _suffix(k)


def _suffix(k):
    s = ""
    k += 1
    while k:
        k, r = divmod(k - 1, 26)
        s = chr(ord("a") + r) + s
    return s

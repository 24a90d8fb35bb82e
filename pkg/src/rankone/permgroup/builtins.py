"""Named example groups with their orders checked on construction."""
from __future__ import annotations

import re
from math import factorial

from ..errors import UnknownBuiltin
from .group import Group, closure, is_prime
from .perm import Perm


def _check(G: Group, expected: int, name: str) -> Group:
    if G.order != expected:  # pragma: no cover - guards construction bugs
        raise AssertionError(f"builtin {name}: order {G.order}, expected {expected}")
    G.name = name
    return G


def symmetric(n):
    gens = []
    if n >= 2:
        gens.append(Perm.from_cycles(n, [[0, 1]]))
    if n >= 3:
        gens.append(Perm.from_cycles(n, [list(range(n))]))
    return _check(closure(n, gens), factorial(n), f"S{n}")


def alternating(n):
    gens = []
    if n >= 3:
        gens.append(Perm.from_cycles(n, [[0, 1, 2]]))
    if n >= 4:
        long = list(range(n)) if n % 2 else list(range(1, n))
        gens.append(Perm.from_cycles(n, [long]))
    return _check(closure(n, gens), max(1, factorial(n) // 2), f"A{n}")


def cyclic(n):
    gens = [Perm.from_cycles(n, [list(range(n))])] if n > 1 else []
    return _check(closure(max(n, 1), gens), n, f"C{n}")


def dihedral(order):
    """Dihedral group of the given order acting on ``order // 2`` points."""
    if order % 2 or order < 4:
        raise UnknownBuiltin(f"D{order}")
    n = order // 2
    rot = Perm([(i + 1) % n for i in range(n)])
    ref = Perm([(-i) % n for i in range(n)])
    if n == 2:  # Klein four-group needs a faithful action on 4 points
        G = closure(4, [Perm.from_cycles(4, [[0, 1]]), Perm.from_cycles(4, [[2, 3]])])
        return _check(G, 4, "D4")
    return _check(closure(n, [rot, ref]), order, f"D{order}")


def quaternion():
    """Regular representation of ``Q8`` on its own elements."""
    # elements (sign, unit) with unit in 1, i, j, k; index = 4 * (sign < 0) + unit
    mult = {
        (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
        (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
        (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
        (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
    }

    def left(unit):
        images = []
        for x in range(8):
            sx, ux = (-1 if x >= 4 else 1), x % 4
            s, u = mult[(unit, ux)]
            s *= sx
            images.append(u + (4 if s < 0 else 0))
        return Perm(images)

    return _check(closure(8, [left(1), left(2)]), 8, "Q8")


def qd(p):
    """``(Z/p)^2 x| SL_2(p)`` acting on ``F_p^2``; the point ``(x, y)`` is ``x + p*y``."""
    if not is_prime(p):
        raise UnknownBuiltin(f"Qd{p}")

    def affine(a, b, c, d, tx=0, ty=0):
        images = []
        for pt in range(p * p):
            x, y = pt % p, pt // p
            nx, ny = (a * x + b * y + tx) % p, (c * x + d * y + ty) % p
            images.append(nx + p * ny)
        return Perm(images)

    gens = [affine(1, 1, 0, 1), affine(1, 0, 1, 1), affine(1, 0, 0, 1, tx=1)]
    return _check(closure(p * p, gens), p**3 * (p * p - 1), f"Qd{p}")


def heisenberg(p):
    """Extraspecial group of order ``p^3`` and exponent ``p`` (``D8`` when ``p = 2``).

    Acts on ``F_p^2`` by ``(x, y) -> (x + a, y + b*x + c)``.
    """
    if not is_prime(p):
        raise UnknownBuiltin(f"He{p}")

    def m(a, b, c):
        return Perm([((x + a) % p) + p * ((y + b * x + c) % p)
                     for pt in range(p * p) for x, y in [(pt % p, pt // p)]])

    return _check(closure(p * p, [m(1, 0, 0), m(0, 1, 0), m(0, 0, 1)]), p**3, f"He{p}")


def wreath(p):
    """``C_p wr C_2`` on ``2p`` points."""
    n = 2 * p
    a = Perm.from_cycles(n, [list(range(p))])
    swap = Perm.from_cycles(n, [[i, i + p] for i in range(p)])
    return _check(closure(n, [a, swap]), 2 * p * p, f"C{p}wrC2")


def direct_product(groups, name=None):
    """External direct product acting on the disjoint union of the point sets."""
    degree = sum(G.degree for G in groups)
    gens = []
    offset = 0
    for G in groups:
        for g in G.generators:
            images = list(range(degree))
            for i, j in enumerate(g.images):
                images[offset + i] = offset + j
            gens.append(Perm(images))
        offset += G.degree
    order = 1
    for G in groups:
        order *= G.order
    label = name or "x".join(G.name or "?" for G in groups)
    return _check(closure(degree, gens), order, label)


_SIMPLE = [
    (re.compile(r"^S(\d+)$"), lambda n: symmetric(int(n))),
    (re.compile(r"^A(\d+)$"), lambda n: alternating(int(n))),
    (re.compile(r"^C(\d+)$"), lambda n: cyclic(int(n))),
    (re.compile(r"^D(\d+)$"), lambda n: dihedral(int(n))),
    (re.compile(r"^Q8$"), lambda: quaternion()),
    (re.compile(r"^Qd(\d+)$"), lambda p: qd(int(p))),
    (re.compile(r"^He(\d+)$"), lambda p: heisenberg(int(p))),
    (re.compile(r"^C(\d+)wrC2$"), lambda p: wreath(int(p))),
    (re.compile(r"^Wr(\d+)$"), lambda p: wreath(int(p))),
]

BUILTIN_PATTERNS = ["Sn", "An", "Cn", "D2n", "Q8", "Qd<p>", "He<p>", "C<p>wrC2", "AxB"]


def _normalize(name):
    return re.sub(r"[\s_()]", "", name)


def builtin(name: str) -> Group:
    """Construct a named group, e.g. ``"A6"``, ``"Qd(3)"``, ``"D8"``, ``"C3xC3"``.

    Raises
    ------
    UnknownBuiltin
        If the name is not recognised.
    """
    key = _normalize(name)
    if "x" in key and "wr" not in key:
        parts = key.split("x")
        if all(parts):
            return direct_product([builtin(p) for p in parts], name=key)
    for pat, make in _SIMPLE:
        m = pat.match(key)
        if m:
            try:
                return make(*m.groups())
            except UnknownBuiltin:
                raise
            except (ValueError, OverflowError) as exc:
                raise UnknownBuiltin(name) from exc
    raise UnknownBuiltin(name)

"""Short structural names for small subgroups, used only as labels."""
from __future__ import annotations

from collections import Counter

from .group import prime_factors

# (order, sorted element-order histogram) -> name, for common nonabelian groups
_NONABELIAN = {
    (6, ((1, 1), (2, 3), (3, 2))): "S3",
    (8, ((1, 1), (2, 5), (4, 2))): "D8",
    (8, ((1, 1), (2, 1), (4, 6))): "Q8",
    (10, ((1, 1), (2, 5), (5, 4))): "D10",
    (12, ((1, 1), (2, 3), (3, 8))): "A4",
    (12, ((1, 1), (2, 7), (3, 2), (6, 2))): "D12",
    (12, ((1, 1), (2, 1), (3, 2), (4, 6), (6, 2))): "Dic12",
    (14, ((1, 1), (2, 7), (7, 6))): "D14",
    (16, ((1, 1), (2, 9), (4, 2), (8, 4))): "D16",
    (18, ((1, 1), (2, 9), (3, 8))): "C3^2:C2",
    (18, ((1, 1), (2, 3), (3, 8), (6, 6))): "C3xS3",
    (20, ((1, 1), (2, 5), (4, 10), (5, 4))): "C5:C4",
    (21, ((1, 1), (3, 14), (7, 6))): "C7:C3",
    (24, ((1, 1), (2, 9), (3, 8), (4, 6))): "S4",
    (24, ((1, 1), (2, 1), (3, 8), (4, 6), (6, 8))): "SL(2,3)",
    (27, ((1, 1), (3, 26))): "He3",
    (27, ((1, 1), (3, 8), (9, 18))): "C9:C3",
    (36, ((1, 1), (2, 9), (3, 8), (4, 18))): "C3^2:C4",
    (36, ((1, 1), (2, 15), (3, 8), (6, 12))): "S3xS3",
    (60, ((1, 1), (2, 15), (3, 20), (5, 24))): "A5",
    (120, ((1, 1), (2, 25), (3, 20), (4, 30), (5, 24), (6, 20))): "S5",
    (168, ((1, 1), (2, 21), (3, 56), (4, 42), (7, 48))): "PSL(3,2)",
    (360, ((1, 1), (2, 45), (3, 80), (4, 90), (5, 144))): "A6",
}


def abelian_invariants(H):
    """Invariant-factor-like decomposition as a sorted list of prime powers."""
    G = H.parent
    orders = G.element_orders[H.members].tolist()
    out = []
    for p in prime_factors(H.order):
        # count elements of order dividing p^k for increasing k
        k = 0
        prev = 0
        exps = []
        counts = []
        while True:
            c = sum(1 for o in orders if (p**k) % o == 0)
            counts.append(c)
            if c == prev:
                break
            prev = c
            k += 1
        # counts[k] = p^(sum_i min(k, e_i)); number of factors with e_i >= k
        logs = []
        for c in counts:
            e, v = 0, c
            while v > 1:
                v //= p
                e += 1
            logs.append(e)
        ge = [logs[k] - logs[k - 1] for k in range(1, len(logs))]
        ge.append(0)
        for k in range(1, len(ge)):
            exact = ge[k - 1] - ge[k]
            exps += [k] * exact
        out += [p**e for e in exps]
    return sorted(out)


def structure_name(H) -> str:
    if H.order == 1:
        return "1"
    if H.is_cyclic:
        return f"C{H.order}"
    if H.is_abelian:
        return "x".join(f"C{q}" for q in abelian_invariants(H))
    G = H.parent
    hist = Counter(G.element_orders[H.members].tolist())
    key = (H.order, tuple(sorted(hist.items())))
    name = _NONABELIAN.get(key)
    return name if name is not None else f"G{H.order}"

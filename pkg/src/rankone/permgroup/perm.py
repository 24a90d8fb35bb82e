"""Permutations on ``{0, ..., degree-1}`` and cycle-notation I/O."""
from __future__ import annotations

import re
from math import lcm

from ..errors import DegreeMismatch, ParseError

_CYCLE_RE = re.compile(r"\(([^()]*)\)")


class Perm:
    """An immutable permutation stored by its image list.

    Products compose right to left: ``(a * b)(i) == a(b(i))``.
    """

    __slots__ = ("images", "_hash")

    def __init__(self, images):
        images = tuple(int(i) for i in images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a permutation: {images}")
        self.images = images
        self._hash = hash(images)

    @classmethod
    def identity(cls, degree):
        return cls(range(degree))

    @classmethod
    def from_cycles(cls, degree, cycles):
        """Build from 0-based cycles; cycles are composed right to left."""
        result = cls.identity(degree)
        for cyc in reversed(list(cycles)):
            img = list(range(degree))
            for k, a in enumerate(cyc):
                if not 0 <= a < degree:
                    raise DegreeMismatch(f"point {a} outside degree {degree}")
                img[a] = cyc[(k + 1) % len(cyc)]
            if len(set(cyc)) != len(cyc):
                raise ParseError(f"repeated point in cycle {cyc}")
            result = cls(img) * result
        return result

    @classmethod
    def parse(cls, text, degree):
        """Parse 1-based cycle notation such as ``"(1 2 3)(4 5)"``."""
        stripped = text.strip()
        if stripped in ("", "()", "1", "id"):
            return cls.identity(degree)
        leftover = _CYCLE_RE.sub("", stripped)
        if leftover.strip():
            raise ParseError(f"cannot parse permutation {text!r}")
        cycles = []
        for body in _CYCLE_RE.findall(stripped):
            tokens = [t for t in re.split(r"[\s,]+", body.strip()) if t]
            if not tokens:
                continue
            try:
                points = [int(t) - 1 for t in tokens]
            except ValueError as exc:
                raise ParseError(f"bad point in {text!r}") from exc
            if min(points) < 0 or max(points) >= degree:
                raise DegreeMismatch(f"{text!r} has a point outside 1..{degree}")
            cycles.append(points)
        return cls.from_cycles(degree, cycles)

    @property
    def degree(self):
        return len(self.images)

    def __call__(self, i):
        return self.images[i]

    def __mul__(self, other):
        if other.degree != self.degree:
            raise DegreeMismatch("degrees differ")
        a = self.images
        return Perm(a[j] for j in other.images)

    def inverse(self):
        inv = [0] * self.degree
        for i, j in enumerate(self.images):
            inv[j] = i
        return Perm(inv)

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        result = Perm.identity(self.degree)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def is_identity(self):
        return all(i == j for i, j in enumerate(self.images))

    def cycles(self):
        seen = set()
        out = []
        for i in range(self.degree):
            if i in seen or self.images[i] == i:
                continue
            cyc = [i]
            seen.add(i)
            j = self.images[i]
            while j != i:
                cyc.append(j)
                seen.add(j)
                j = self.images[j]
            out.append(cyc)
        return out

    def order(self):
        return lcm(*(len(c) for c in self.cycles())) if not self.is_identity() else 1

    def __eq__(self, other):
        return isinstance(other, Perm) and self.images == other.images

    def __hash__(self):
        return self._hash

    def __str__(self):
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(str(a + 1) for a in c) + ")" for c in cyc)

    def __repr__(self):
        return f"Perm({str(self)!r}, degree={self.degree})"

"""Text format for permutation groups.

The first non-comment line is the degree; every further line is one
generator in 1-based cycle notation such as ``(1 2 3)(4 5 6)``.  Text after
``#`` is ignored.
"""
from __future__ import annotations

from ..errors import ParseError
from .group import DEFAULT_ORDER_BOUND, closure
from .perm import Perm


def parse_group_text(text, *, bound=DEFAULT_ORDER_BOUND, name=None):
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines:
        raise ParseError("empty group description")
    try:
        degree = int(lines[0])
    except ValueError as exc:
        raise ParseError(f"first line must be the degree, got {lines[0]!r}") from exc
    if degree < 1:
        raise ParseError("degree must be positive")
    gens = [Perm.parse(line, degree) for line in lines[1:]]
    return closure(degree, gens, bound=bound, name=name)


def read_group(path, **kw):
    with open(path, encoding="utf-8") as fh:
        return parse_group_text(fh.read(), **kw)


def format_group(G) -> str:
    rows = [str(G.degree)]
    rows += [str(g) for g in G.generators]
    return "\n".join(rows) + "\n"


def group_from_json(spec, **kw):
    """Group from ``{"builtin": name}``, ``{"text": ...}`` or ``{"degree": n, "generators": [...]}``.

    A bare string is read as a builtin name.
    """
    from .builtins import builtin

    if isinstance(spec, str):
        return builtin(spec)
    if not isinstance(spec, dict):
        raise ParseError("group must be a name or an object")
    if "builtin" in spec:
        return builtin(spec["builtin"])
    if "text" in spec:
        return parse_group_text(spec["text"], **kw)
    try:
        degree = int(spec["degree"])
        gens = [Perm.parse(g, degree) for g in spec.get("generators", [])]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad group description: {exc}") from exc
    return closure(degree, gens, **kw)


def group_to_json(G):
    return {"degree": G.degree, "generators": [str(g) for g in G.generators]}

"""JSON format for cellular chain complexes over the orbit category.

.. code-block:: json

    {
      "group": {"builtin": "C2"},
      "augmented": true,
      "cells": [
        [{"stabilizerClassLabel": "C2", "boundary": []}],
        [{"stabilizerClassLabel": "1",
          "boundary": [{"targetCellIndex": 0, "coefficient": 1, "morphismCosetRep": "()"}]}]
      ],
      "nbar": {"1": 1, "C2": 0}
    }

``cells[d]`` lists the cells of degree ``d``.  A cell may pin its stabilizer
with ``stabilizerGenerators`` (cycle strings); otherwise the class
representative is used.  ``morphismCosetRep`` is a group element in cycle
notation: the term means ``coefficient * g.target``.
"""
from __future__ import annotations

import json

from ..errors import ParseError
from ..permgroup.io import group_from_json, group_to_json
from ..permgroup.perm import Perm
from .complex import Cell, OCComplex


def complex_from_json(obj, group=None):
    """Return ``(complex, nbar_dict_or_None)``.

    Raises
    ------
    ParseError
        On malformed structure.
    InvalidComplex
        If the data does not define a chain complex.
    """
    if not isinstance(obj, dict) or "cells" not in obj:
        raise ParseError("complex file needs a 'cells' list")
    G = group if group is not None else group_from_json(obj.get("group"))
    L = G.lattice
    cells = {}
    try:
        for d, row in enumerate(obj["cells"]):
            out = []
            for spec in row:
                if "stabilizerGenerators" in spec:
                    gens = [G.index(Perm.parse(s, G.degree)) for s in spec["stabilizerGenerators"]]
                    K = G.subgroup(gens)
                else:
                    K = L.by_label(spec["stabilizerClassLabel"]).representative
                terms = []
                for t in spec.get("boundary", []):
                    g = G.index(Perm.parse(t.get("morphismCosetRep", "()"), G.degree))
                    terms.append((int(t["targetCellIndex"]), int(t["coefficient"]), g))
                out.append(Cell(K, terms))
            cells[d] = out
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(f"bad cell description: {exc}") from exc
    C = OCComplex(G, cells, augmented=bool(obj.get("augmented", True)), name=obj.get("name"))
    return C, obj.get("nbar")


def load_complex(path, group=None):
    try:
        with open(path, encoding="utf-8") as fh:
            obj = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc}") from exc
    return complex_from_json(obj, group)


def complex_to_json(C: OCComplex, nbar=None):
    out = {"group": group_to_json(C.group)}
    if C.name:
        out["name"] = C.name
    out.update(C.to_dict())
    if nbar is not None:
        out["nbar"] = nbar.as_label_dict(include_outside=True) if hasattr(nbar, "as_label_dict") else nbar
    return out


__all__ = ["complex_from_json", "complex_to_json", "load_complex"]

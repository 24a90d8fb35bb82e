"""Recompute the structural facts for A6 and A7 and compare them with a stored table."""
from __future__ import annotations

import json
from importlib import resources

from .characters import build_effective_character, isotropy_of, p_effective, respects_fusion
from .isotropy import check_theorem_A, p_rank, rank_one_family
from .permgroup.builtins import builtin
from .permgroup.group import sylow
from .permgroup.names import structure_name
from .pipeline import run_check


def _weyl_rank(c, q):
    return p_rank(c.weyl_group, q)


def _by_generator(G, text):
    """Class of the cyclic subgroup generated by the element written in cycle notation."""
    from .permgroup.perm import Perm

    g = G.index(Perm.parse(text, G.degree))
    return G.lattice.class_of(G.subgroup([g]))


def facts_a6():
    G = builtin("A6")
    L = G.lattice
    P = sylow(G, 2)
    c2 = L.by_label("C2")
    c4 = L.by_label("C4")
    threes = [c for c in L if c.order == 3]
    report, ok = run_check(G)
    return {
        "sylow2": structure_name(P),
        "H2": rank_one_family(G, 2).labels,
        "normalizerC2": {
            "order": c2.normalizer.order,
            "isSylow": c2.normalizer.order == P.order,
            "rank3Weyl": _weyl_rank(c2, 3),
        },
        "normalizerC4": {
            "order": c4.normalizer.order,
            "isSylow": c4.normalizer.order == P.order,
            "rank3Weyl": _weyl_rank(c4, 3),
        },
        "order3Classes": {
            "count": len(threes),
            "byGenerator": {
                gen: {"weylOrder": c.weyl_order, "rank2Weyl": _weyl_rank(c, 2)}
                for gen, c in ((t, _by_generator(G, t)) for t in ("(1 2 3)", "(1 2 3)(4 5 6)"))
            },
        },
        "check": report["verdict"],
    }


def facts_a7():
    G = builtin("A7")
    ca = _by_generator(G, "(1 2 3)")
    cb = _by_generator(G, "(1 2 3)(4 5 6)")
    L = G.lattice
    c2 = L.by_label("C2")
    c4 = L.by_label("C4")
    th = check_theorem_A(G)
    failing = sorted({r["class"] for r in th.data["conditionTable"] if not r["passed"]})
    rep = build_effective_character(G, 3)
    kernels = rep.construction.get("kernels", []) if rep else []
    return {
        "sylow3": structure_name(sylow(G, 3)),
        "sylow2OfNormalizerC3A": structure_name(sylow(ca.normalizer, 2)),
        "weylC3A": {"order": ca.weyl_order, "rank2": _weyl_rank(ca, 2)},
        "normalizerC3B": {
            "order": cb.normalizer.order,
            "structure": structure_name(cb.normalizer),
            "rank2Weyl": _weyl_rank(cb, 2),
        },
        "normalizerC2": {"order": c2.normalizer.order, "rank3Weyl": _weyl_rank(c2, 3)},
        "normalizerC4": {"structure": structure_name(c4.normalizer), "rank3Weyl": _weyl_rank(c4, 3)},
        "theoremAAndTypeB": {
            "failsAt": failing,
            "generatorOfFailingClass": "(1 2 3)" if failing == [ca.label] else None,
            "kernelClasses": rep.construction["kernelClasses"] if rep else None,
            "kernelsAreDoubleThreeCycles": bool(kernels) and all(
                _by_generator(G, k[0]).index == cb.index for k in kernels),
            "respectsFusion": bool(rep and respects_fusion(G, rep.sylow, rep.character)),
            "effective": bool(rep and p_effective(G, rep.sylow, rep.character, 3)),
            "isotropy": isotropy_of(G, rep).labels if rep else None,
        },
    }


COMPUTE = {"A6": facts_a6, "A7": facts_a7}


def load_goldens(path=None):
    if path is None:
        text = resources.files("rankone").joinpath("data/goldens.json").read_text(encoding="utf-8")
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    return json.loads(text)


def compare(goldens, groups=None):
    """Return ``(report, all_match)``; the report lists every fact with expected and actual values."""
    out = {}
    ok = True
    for name in groups or sorted(goldens):
        if name not in COMPUTE:
            out[name] = {"error": "no recomputation available"}
            ok = False
            continue
        actual = COMPUTE[name]()
        rows = []
        for key in sorted(set(goldens[name]) | set(actual)):
            exp = goldens[name].get(key)
            act = actual.get(key)
            rows.append({"fact": key, "match": exp == act, "expected": exp, "actual": act})
            ok &= exp == act
        out[name] = {"facts": len(rows), "matched": sum(r["match"] for r in rows), "rows": rows}
    return out, ok


__all__ = ["COMPUTE", "compare", "facts_a6", "facts_a7", "load_goldens"]

"""End-to-end verification of a group: ranks, obstructions, characters and dimensions.

:func:`run_check` returns a JSON-ready report whose ``verdict`` is ``PASS``
when

* every Sylow subgroup has rank at most two,
* no ``Qd(p)`` is ``p'``-involved for an odd prime ``p`` of rank two,
* either the normalizer-quotient rank condition holds for every rank-one
  ``p``-subgroup, or an explicit character route was requested and the
  isotropy of the chosen characters satisfies it,
* a character was found for every rank-two prime, and
* the aligned dimension function passes every side condition.

The level-closure test on the aligned function is reported separately under
``closure`` and does not enter the verdict.
"""
from __future__ import annotations

from . import __version__
from .characters import (
    effective_character,
    isotropy_admissible,
    isotropy_of,
    load_fixed_dim_table,
    p_effective,
    respects_fusion,
    sphere_dims,
)
from .dimfun import SuperClassFunction, align, closure_report, m_G, verify_alignment
from .errors import Infeasible, RankMismatch
from .isotropy import check_theorem_A, involves_qd, weyl_rank_table
from .permgroup.io import group_to_json
from .report import jsonable


def group_metadata(G):
    meta = {"order": G.order, "degree": G.degree, **group_to_json(G)}
    if G.name:
        meta["name"] = G.name
    return meta


def representation_summary(G, rep, p):
    iso = isotropy_of(G, rep)
    out = rep.to_dict()
    out["isotropy"] = iso.labels
    if rep.character is not None:
        out["respectsFusion"] = respects_fusion(G, rep.sylow, rep.character)
        out["effective"] = p_effective(G, rep.sylow, rep.character, p)
    out["isotropyRankCondition"] = isotropy_admissible(G, iso, p)
    out["isotropyRankTable"] = weyl_rank_table(G, iso, p)
    return out, iso


def choose_representation(G, p, *, character_tables=None):
    """External table for ``p`` if supplied, else the automatic search."""
    for table in character_tables or []:
        if table.p == p:
            return table
    return effective_character(G, p, prefer_admissible=True)


def run_check(G, *, primes=None, character_files=(), auto_type_b=False, min_dim=3,
              chain_reading="maps"):
    """Run the full pipeline on ``G``.

    Parameters
    ----------
    primes : list of int, optional
        Restrict the ``Qd`` search to these primes (all odd rank-two primes otherwise).
    character_files : sequence of dict
        ``{classLabel: fixedDim}`` tables, one per prime.
    auto_type_b : bool
        Request the character route even without external tables.

    Returns
    -------
    (dict, bool)
        The report and the overall verdict.
    """
    report = {"version": __version__, "group": group_metadata(G)}
    thA = check_theorem_A(G)
    prof = thA.data["rankProfile"]
    report["rankProfile"] = prof
    rank_ok = prof["rank"] <= 2
    S = prof["primeSetSG"]

    qd = {}
    qd_primes = sorted(set(S) | set(primes or [])) if primes else S
    for p in qd_primes:
        if p == 2:
            continue
        w = involves_qd(G, p)
        qd[str(p)] = {"involved": w is not None, "witness": w}
    report["qd"] = qd
    qd_ok = not any(v["involved"] for v in qd.values())
    report["conditionTable"] = thA.data["conditionTable"]
    cond_ii = bool(thA.data["conditionII"])
    report["theoremA"] = {
        "passed": rank_ok and qd_ok and cond_ii,
        "failures": sorted({r["class"] for r in thA.data["conditionTable"] if not r["passed"]}),
    }
    report["theoremB"] = thA.data["theoremB"]
    route = auto_type_b or bool(character_files)
    report["route"] = "characters" if route else "theoremA"

    verdict = rank_ok and qd_ok
    reasons = []
    if not rank_ok:
        reasons.append("rank exceeds two")
    if not qd_ok:
        reasons.append("Qd(p) is p'-involved")

    tables = [load_fixed_dim_table(G, t) for t in character_files]
    chars, per_prime, maintech = {}, {}, True
    if verdict:
        for p in S:
            try:
                rep = choose_representation(G, p, character_tables=tables)
            except RankMismatch:
                rep = None
            if rep is None:
                chars[str(p)] = None
                reasons.append(f"no effective character for p = {p}")
                verdict = False
                continue
            summary, iso = representation_summary(G, rep, p)
            chars[str(p)] = summary
            maintech &= summary["isotropyRankCondition"]
            dims = {i: v for i, v in sphere_dims(rep).items() if v >= 0}
            per_prime[p] = SuperClassFunction(G, iso, dims)
    report["characters"] = chars
    if verdict and not cond_ii:
        if route and maintech:
            report["route"] = "characters"
        else:
            verdict = False
            reasons.append("normalizer-quotient rank condition fails"
                           + ("" if route else " and no character route was requested"))
    if verdict:
        try:
            plan, nbar = align(G, per_prime, min_dim=min_dim, chain_reading=chain_reading)
        except Infeasible as exc:
            verdict = False
            reasons.append(f"alignment infeasible: {exc}")
            plan = nbar = None
        if plan is not None:
            side = verify_alignment(G, nbar, plan, per_prime, min_dim=min_dim,
                                    chain_reading=chain_reading, include_closure=False)
            report["alignment"] = {
                "plan": plan.to_dict(),
                "nbar": nbar.as_label_dict(),
                "sideConditions": side.to_dict(),
            }
            report["closure"] = closure_report(nbar).to_dict()
            if not side.passed:
                verdict = False
                reasons.append("alignment side conditions fail")
    report["mG"] = m_G(G)
    report["verdict"] = "PASS" if verdict else "FAIL"
    report["reasons"] = reasons
    return jsonable(report), verdict


def summary_lines(report):
    """Short human-readable digest for standard error."""
    g = report["group"]
    lines = [f"group: {g.get('name', '?')} order {g['order']}"]
    lines.append(f"ranks: {report['rankProfile']['perPrime']}  S_G = {report['rankProfile']['primeSetSG']}")
    for p, q in report.get("qd", {}).items():
        lines.append(f"Qd({p}) involved: {q['involved']}")
    ta = report["theoremA"]
    lines.append("normalizer-quotient condition: "
                 + ("holds" if not ta["failures"] else f"fails at {', '.join(ta['failures'])}"))
    for p, c in report.get("characters", {}).items():
        if c:
            lines.append(f"p = {p}: character of degree {c['degree']}, isotropy {c['isotropy']}")
    if "alignment" in report:
        lines.append(f"nbar: {report['alignment']['nbar']}")
        if not report["closure"]["passed"]:
            lines.append("note: level closure fails for the aligned dimension function")
    lines.append(f"verdict: {report['verdict']}" + (f" ({'; '.join(report['reasons'])})" if report["reasons"] else ""))
    return lines


__all__ = ["group_metadata", "run_check", "summary_lines"]

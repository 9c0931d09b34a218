"""Run reports: JSON documents, text rendering and certificate replay.

A report splits a pipeline result into the ``verdict`` (status, value,
hypotheses) and the ``certificate`` (everything ``symsig verify`` needs to
replay it). Timing lives outside both so verdicts compare byte-for-byte.
"""

import json
import random
from math import comb

from gmpy2 import mpq

from . import __version__
from .differentials import (
    POSITIVE,
    freerank_positive_syzygy,
    jacobian,
    omega_presentation,
    replay_column_certificate,
    replay_syzygy_certificate,
    sym_power_presentation,
)
from .errors import InputError
from .groebner import Ideal, buchberger, lift
from .invariants import MolienData, cumulative_ratio, molien_coefficient
from .io import group_from_document
from .poly import ring_from_description

SCHEMA_VERSION = 1
CERTIFICATE_KEYS = {
    "hypersurface": ("jacobian", "freerank_omega", "freerank_sym"),
    "ci-freerank": ("jacobian", "freerank_omega", "freerank_sym"),
    "quotient": ("molien", "convergence"),
}


def split_result(result):
    """``(verdict, certificate)`` from a pipeline ``to_dict()``."""
    keys = CERTIFICATE_KEYS.get(result.get("kind"), ())
    verdict = {k: v for k, v in result.items() if k not in keys}
    certificate = {k: result[k] for k in keys if k in result}
    return verdict, certificate


def make_report(command, inputs, result, wall_time, seed=None):
    verdict, certificate = split_result(result)
    return {
        "schema_version": SCHEMA_VERSION,
        "tool": "symsig",
        "version": __version__,
        "command": command,
        "inputs": inputs,
        "seed": seed,
        "wall_time_s": round(wall_time, 6),
        "verdict": verdict,
        "certificate": certificate,
        "warnings": list(verdict.get("warnings", [])),
    }


def canonical_json(obj):
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def stable_view(report):
    """The report without run-dependent fields, for reproducibility checks."""
    return {k: v for k, v in report.items() if k not in ("wall_time_s", "inputs", "command")}


# --------------------------------------------------------------------------
# text rendering


def _render_checks(verdict):
    lines = []
    for c in verdict.get("checks", []):
        lines.append(f"  [{c['status']}] {c['name']}: {c['detail']}")
    return lines


def render_text(report):
    v, cert = report["verdict"], report["certificate"]
    kind = v.get("kind")
    lines = [f"symsig {report['version']} :: {kind}"]
    if kind in ("hypersurface", "ci-freerank"):
        lines.append("generators: " + ", ".join(v["generators"]))
        lines.append(f"status: {v['status']}")
        lines.append(f"signature: {v['signature'] if v['signature'] is not None else '-'}")
        lines.append(f"reason: {v['reason']}")
        lines.append("checks:")
        lines += _render_checks(v)
        omega = cert.get("freerank_omega")
        if omega:
            cols = omega["column_test"]["columns"]
            flags = "".join("+" if c["member"] else "-" for c in cols)
            lines.append(f"freerank Omega: {omega['verdict']} (column memberships {flags})")
            for s in cert.get("freerank_sym", []):
                lines.append(f"freerank Sym^{s['q']}: {s['verdict']}")
    elif kind == "quotient":
        g = v["group"]
        lines.append(f"group: n = {g['n']}, |G| = {g['order']}")
        lines.append(f"status: {v['status']}")
        lines.append(f"signature: {v['signature'] if v['signature'] is not None else '-'}")
        lines.append(f"reason: {v['reason']}")
        lines.append("checks:")
        lines += _render_checks(v)
        if v.get("witness"):
            lines.append(f"witness: {v['witness']}")
        mol = cert.get("molien")
        if mol:
            lines.append(f"Molien series: {mol['rational_function']}")
            lines.append("  a_q: " + " ".join(map(str, mol["coefficients"][:16])) + " ...")
            lines.append("convergence (N, ratio, error):")
            for row in cert.get("convergence", []):
                lines.append(f"  {row['N']:>5}  {row['ratio_float']:.6f}  {row['error']:.2e}")
        lines.append(f"note: {v['note']}")
    elif kind == "groebner":
        lines.append(f"order: {v['order']}; {len(v['basis'])} elements; S-pair check: {v['verified']}")
        lines += [f"  {g}" for g in v["basis"]]
    elif kind == "nf":
        lines.append(f"normal form: {v['remainder']}")
        lines.append(f"member: {v['member']}")
    elif kind == "dim":
        lines.append(f"dimension: {v['dimension']}")
    elif kind == "hilbert":
        lines.append(f"Hilbert series: {v['series']}")
        lines.append("coefficients: " + " ".join(map(str, v["coefficients"])))
    elif kind == "verify":
        for c in v["checks"]:
            lines.append(f"  [{'ok' if c['ok'] else 'FAIL'}] {c['name']}: {c['detail']}")
        lines.append(f"result: {'verified' if v['ok'] else 'FAILED'}")
    for w in report.get("warnings", []):
        lines.append(f"warning: {w}")
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------
# verification


def _check(out, name, ok, detail=""):
    out.append({"name": name, "ok": bool(ok), "detail": detail})


def _verify_freerank(v, cert, out):
    ring = ring_from_description(v["ring"])
    ideal = Ideal(ring, [ring(g) for g in v["generators"]])
    J = jacobian(ideal)
    _check(out, "jacobian", J.as_strings() == cert["jacobian"], "recomputed from the generators")
    omega = cert["freerank_omega"]
    for entry in omega["column_test"]["columns"]:
        j = entry["column"]
        if entry["member"]:
            ok = replay_column_certificate(J, entry)
            _check(out, f"column {j}", ok, "cofactor identity replayed in P^s")
        else:
            others = [J.column(k) for k in range(J.n) if k != j]
            member = lift(J.column(j), others, ideal)[0]
            _check(out, f"column {j}", not member, "non-membership recomputed")
    syz = omega["syzygy_test"]
    P = omega_presentation(ideal)
    if omega["verdict"] == POSITIVE and "syzygy" in syz:
        _check(out, "omega syzygy", replay_syzygy_certificate(P, syz), "scalar-entry syzygy replayed in R")
    else:
        again = freerank_positive_syzygy(P)
        _check(out, "omega syzygy", again.verdict == omega["verdict"], "syzygy test recomputed")
    members = any(e["member"] for e in omega["column_test"]["columns"])
    _check(out, "omega verdict", members == (omega["verdict"] == POSITIVE), "column results match the verdict")
    for s in cert.get("freerank_sym", []):
        Pq = sym_power_presentation(ideal, s["q"])
        if s["verdict"] == POSITIVE:
            ok = replay_syzygy_certificate(Pq, s["certificate"])
        else:
            ok = freerank_positive_syzygy(Pq).verdict == s["verdict"]
        _check(out, f"Sym^{s['q']}", ok, f"freerank {s['verdict']}")
    if v["signature"] is not None and v["status"] != "regular":
        _check(out, "signature", v["signature"] == "0" and omega["verdict"] != POSITIVE,
               "signature 0 requires freerank Omega = 0")


def _verify_quotient(v, cert, out, seed):
    g = v["group"]
    doc = {"n": g["n"], "generators": g["generators"]}
    if g.get("cyclotomic_order") is not None:
        doc["cyclotomic_order"] = g["cyclotomic_order"]
    G = group_from_document(doc, "<report>")
    _check(out, "group order", G.order == g["order"], f"|G| = {G.order}")
    if v["signature"] is not None:
        _check(out, "signature", mpq(v["signature"]) == mpq(1, G.order), f"1/|G| = 1/{G.order}")
    mol = cert.get("molien")
    if not mol:
        return
    coeffs = mol["coefficients"]
    N = len(coeffs) - 1
    rng = random.Random(seed)
    for q in sorted(rng.sample(range(N + 1), min(3, N + 1))):
        a = molien_coefficient(G, q)
        _check(out, f"a_{q}", a == coeffs[q], f"re-averaged over {G.order} elements: {a}")
    num = [mpq(c) for c in mol["numerator"]]
    den = [mpq(c) for c in mol["denominator"]]
    top = min(N, 20)
    lhs = [sum(den[i] * coeffs[k - i] for i in range(len(den)) if i <= k) for k in range(top + 1)]
    rhs = [num[k] if k < len(num) else 0 for k in range(top + 1)]
    _check(out, "rational form", lhs == rhs, f"denominator * series = numerator through degree {top}")
    data = MolienData(num, den, coeffs, [comb(G.n - 1 + q, G.n - 1) for q in range(N + 1)])
    for row in cert.get("convergence", []):
        r = cumulative_ratio(data, row["N"])
        _check(out, f"ratio N={row['N']}", str(r) == row["ratio"], row["ratio"])


def _verify_groebner(v, out):
    ring = ring_from_description(v["ring"])
    ideal = Ideal(ring, [ring(g) for g in v["generators"]])
    basis = Ideal(ring, [ring(g) for g in v["basis"]])
    gb = buchberger(basis, order=v["order"])
    _check(out, "basis is a Groebner basis", gb.verify() and len(gb) == len(basis.gens), "S-pairs re-reduced")
    _check(out, "generators reduce to zero", all(gb.reduces_to_zero(f) for f in ideal.gens), "")
    back = buchberger(ideal, order=v["order"])
    _check(out, "basis elements lie in the ideal", all(back.reduces_to_zero(f) for f in basis.gens), "")


def _verify_nf(v, out):
    ring = ring_from_description(v["ring"])
    f = ring(v["polynomial"])
    acc = ring(v["remainder"])
    for c, g in zip(v["cofactors"], v["basis"]):
        acc = acc + ring(c) * ring(g)
    _check(out, "cofactor identity", acc == f, "f = sum c_i g_i + r")


def verify_report(report, seed=0):
    """Replay every certificate in ``report``; returns a verification verdict."""
    if report.get("schema_version") != SCHEMA_VERSION:
        raise InputError(f"unsupported report schema {report.get('schema_version')!r}")
    v, cert = report["verdict"], report.get("certificate", {})
    kind = v.get("kind")
    out = []
    if kind in ("hypersurface", "ci-freerank"):
        if v["status"] == "regular":
            ring = ring_from_description(v["ring"])
            _check(out, "linear", ring(v["generators"][0]).total_degree() == 1, "deg f = 1")
        else:
            _verify_freerank(v, cert, out)
    elif kind == "quotient":
        _verify_quotient(v, cert, out, seed)
    elif kind == "groebner":
        _verify_groebner(v, out)
    elif kind == "nf":
        _verify_nf(v, out)
    else:
        raise InputError(f"no certificate to verify for report kind {kind!r}")
    return {"kind": "verify", "target": kind, "ok": all(c["ok"] for c in out), "checks": out}

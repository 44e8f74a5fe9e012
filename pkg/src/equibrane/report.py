"""Report payloads, the verification suite, canonical JSON and text summaries."""

from __future__ import annotations

import json
from importlib import resources
from typing import Callable, Sequence

from . import classifier, dims
from .differentials import (
    PSI,
    RHO,
    TAU,
    QuadDifferential,
    expected_genus3_pullback,
    genus3_covering_map,
    invariant_subspace,
    pullback_qd,
    quad_basis,
    verify_covering_map,
)
from .exact import F2Subspace, Poly, format_point, format_rational, parse_point
from .surfaces import HyperellipticModel
from .towers import (
    FREE_NAMES,
    GENUS3_DIAGRAM,
    TowerDiagram,
    build_free_tower,
    build_genus3_tower,
    bundle_degree_check,
    check_commutativity,
    verify_rh_consistency,
)
from .two_torsion import (
    EvenSubsetClass,
    classifying_class,
    fixed_subspaces,
    homology_of_node,
    kernel_of_pullback,
    model_agreement,
    product_kernel_EM,
    pullback_map,
    translation,
    verify_twist_relation,
)

SCHEMA_VERSION = "1.0.0"
COMMANDS = ("classify", "dims", "tower", "fibre-report", "invariants", "verify")

STANDARD_Z = ("1", "-1", "2", "-2", "3", "-3")
# extra rational samples for the genericity checks
EXTRA_Z = (("2", "5", "-1", "7", "1/3", "4"), ("-3", "1/2", "9", "2", "-5", "6"))
SYMMETRIC_SAMPLES = (("1", "2", "3", "5"), ("1/2", "1", "4", "7"), ("2", "3", "5/3", "11"))
FREE_DIAGRAM = tuple(FREE_NAMES)
INVOLUTIONS = {"psi": PSI, "rho": RHO, "tau": TAU}


def parse_points(values: Sequence, field: str = "z") -> tuple:
    pts = tuple(parse_point(v) for v in values)
    if len(set(pts)) != len(pts):
        raise ValueError("branch points must be distinct")
    return pts


def _pts(values) -> list[str]:
    return [format_point(v) for v in values]


def envelope(command: str, parameters: dict, results: dict) -> dict:
    return {"schema_version": SCHEMA_VERSION, "command": command,
            "parameters": parameters, "results": results}


def _no_floats(obj, path="$"):
    if isinstance(obj, float):
        raise TypeError(f"float in report at {path}")
    if isinstance(obj, dict):
        for k, v in obj.items():
            _no_floats(v, f"{path}.{k}")
    elif isinstance(obj, (list, tuple)):
        for i, v in enumerate(obj):
            _no_floats(v, f"{path}[{i}]")


def dumps(report: dict) -> str:
    """Canonical serialisation: sorted keys, two-space indent, trailing newline."""
    _no_floats(report)
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=True) + "\n"


def load_schema() -> dict:
    return json.loads(resources.files("equibrane").joinpath("report.schema.json").read_text())


# ---------------------------------------------------------------------------
# payloads


def classify_payload(genus_max: int, jobs: int = 1, include_rejected: bool = False) -> dict:
    certs = classifier.classify_all(genus_max, jobs)
    admitted = [c for c in certs if c.admitted]
    out = {
        "genus_max": genus_max,
        "admitted": [c.to_json() for c in admitted],
        "klein": classifier.klein_classification(max(genus_max, 3)).to_json(),
    }
    if include_rejected:
        out["rejected"] = [c.to_json() for c in certs if not c.admitted]
    return out


def dims_payload(genera: Sequence[int], pairs: Sequence[tuple[int, int]]) -> dict:
    return {
        "closed": [{"g": g, "dim_flat": dims.dim_flat(g), "brane_target_dim": dims.brane_target_dim(g)}
                   for g in genera],
        "punctured": [dict(gamma=gm, n=n, **dims.dim_flat_punctured(gm, n).to_json()) for gm, n in pairs],
    }


def tower_payload(t: TowerDiagram, diagram: Sequence[str]) -> dict:
    rh = verify_rh_consistency(t)
    comm_ok, compared = check_commutativity(t)
    out = t.to_json()
    out["diagram"] = list(diagram)
    out["rh_consistency"] = {"ok": rh.ok, "edges": [e.to_json() for e in rh.edges],
                             "failing": rh.failing()}
    out["commutativity"] = {"ok": comm_ok, "path_pairs": compared}
    out["homology_ranks"] = {n.name: homology_of_node(t, n.name).rank for n in t.nodes} if rh.ok else {}
    return out


def genus3_payload(zs: Sequence) -> dict:
    return tower_payload(build_genus3_tower(zs), GENUS3_DIAGRAM)


def free_payload(gamma: int, cover_class: str | None = None) -> dict:
    t = build_free_tower(gamma, cover_class) if cover_class else build_free_tower(gamma)
    return tower_payload(t, FREE_DIAGRAM)


def _kernel_json(t, upper, lower) -> dict:
    return kernel_of_pullback(t, upper, lower).to_json()


def fibre_payload(zs: Sequence, gamma: int = 2) -> dict:
    free = build_free_tower(gamma)
    t = build_genus3_tower(zs)
    g = t.genera()
    fg = free.genera()
    em = product_kernel_EM(t)
    tr_e, tr_m = translation(t, "E"), translation(t, "M")
    z1, z2 = _pts(zs[:2])
    named = {
        "(L(z1-z2)_E, 0)": em.element(tr_e.to_character(EvenSubsetClass.of(tr_e.branch, {z1, z2})), 0),
        "(0, L(0-inf)_M)": em.element(0, tr_m.to_character(EvenSubsetClass.of(tr_m.branch, {"0", "inf"}))),
    }
    p2 = classifying_class(free, "S", "S_tau")
    return {
        "free_tower": {
            "gamma": gamma,
            "genera": fg,
            "prym_dims": {"S/Sigma": fg["S"] - fg["Sigma"], "S_tau/Sigma_tau": fg["S_tau"] - fg["Sigma_tau"]},
            "kernel_S_tau_to_S": _kernel_json(free, "S", "S_tau"),
            "classifying_class_P2": format(p2, "b"),
            "kernel_is_span_of_P2": kernel_of_pullback(free, "S", "S_tau").kernel.basis == (p2,),
        },
        "genus3_tower": {
            "z": _pts(zs),
            "genera": {k: g[k] for k in GENUS3_DIAGRAM},
            "dimension_ledger": {
                "g(S)-g(Sigma)": g["S"] - g["Sigma"],
                "g(S_tau)-g(Sigma_tau)": g["S_tau"] - g["Sigma_tau"],
                "g(S_anti)-g(Sigma_tau)": g["S_anti"] - g["Sigma_tau"],
                "g(Sigma_Klein)": g["Sigma_Klein"],
                "g(E)+g(M)": g["E"] + g["M"],
                "brane_target_dim(3)": dims.brane_target_dim(3),
            },
            "kernel_Sigma_Klein_to_S": _kernel_json(t, "S", "Sigma_Klein"),
            "image_rank_Sigma_Klein_to_S": pullback_map(t, "S", "Sigma_Klein").matrix.rank(),
            "kernel_Sigma_tau_to_Sigma": _kernel_json(t, "Sigma", "Sigma_tau"),
            "product_kernel_EM": dict(em.to_json(), named_members={
                k: {"literal": v in em.literal, "modulo_l0": v in em.modulo_l0} for k, v in named.items()}),
            "fixed_subspaces_S": fixed_subspaces(t, "S", ["sigma", "tau", "psi"]),
            "bundle_degree": {"cover_degree": 4, "base_degree": -1, "claimed_square": -8,
                              "ok": bundle_degree_check(4, -1, -8)},
        },
    }


def _qd_labels(qs) -> list[str]:
    return [q.label() for q in qs]


def invariants_payload(branch: Sequence, involution_sets: Sequence[Sequence[str]], zs: Sequence) -> dict:
    model = HyperellipticModel(branch)
    out = {
        "model": model.to_json(),
        "basis": _qd_labels(quad_basis(model)),
        "invariant_subspaces": [
            {"involutions": list(names),
             "basis": [[format_rational(c) for c in q.coordinates()]
                       for q in invariant_subspace([INVOLUTIONS[n] for n in names], model)],
             "display": _qd_labels(invariant_subspace([INVOLUTIONS[n] for n in names], model))}
            for names in involution_sets],
    }
    m = genus3_covering_map(zs)
    check = verify_covering_map(m)
    pulled = pullback_qd(m, QuadDifferential(m.target, Poly([0, 1])))
    out["covering_map"] = dict(m.to_json(), verified=check.ok)
    out["pullback_of_z"] = {"a": pulled.a.to_string("w"),
                            "matches_closed_form": pulled.a == expected_genus3_pullback(zs)}
    return out


# ---------------------------------------------------------------------------
# verification suite


def _check(cid: str, name: str, fn: Callable[[], tuple[bool, dict]]) -> dict:
    try:
        ok, details = fn()
    except Exception as exc:  # a crash is a failed check, reported by name
        ok, details = False, {"error": f"{type(exc).__name__}: {exc}"}
    return {"id": cid, "name": name, "ok": bool(ok), "details": details}


def check_dimensions() -> tuple[bool, dict]:
    closed = all(dims.dim_flat(g) == 6 * g - 6 for g in range(2, 11))
    in_range = [(gm, n) for gm in range(0, 12) for n in range(0, 30) if dims.formula_applies(gm, n)][:200]
    values = all(dims.dim_flat_punctured(gm, n).value == 6 * gm - 6 + 2 * n for gm, n in in_range)
    flagged = sorted((gm, n) for gm in range(0, 12) for n in range(0, 30)
                     if dims.dim_flat_punctured(gm, n).exceptional)
    expected = sorted([(0, n) for n in range(4)] + [(1, 0)])
    return closed and values and len(in_range) == 200 and flagged == expected, {
        "in_range_pairs": len(in_range), "exceptional": [list(p) for p in flagged]}


def check_prime_survey() -> tuple[bool, dict]:
    primes = [3, 5, 7, 11, 13, 17, 19]
    found = {str(p): len(classifier.prime_obstruction_survey(p, 10, 40)) for p in primes}
    return all(v == 0 for v in found.values()), {"survivors": found}


def check_z4() -> tuple[bool, dict]:
    certs = classifier.z4_exclusion(10, 20, 20)
    keys = [(c.candidate.gamma, c.candidate.n1, c.candidate.n2) for c in certs]
    ok = keys == [(0, 2, 1)] and not certs[0].admitted and certs[0].candidate.g == 1
    return ok, {"survivors": [c.to_json() for c in certs]}


def check_classification(jobs: int = 1) -> tuple[bool, dict]:
    certs = classifier.classify(7, jobs)
    case1 = sorted(c.candidate.g for c in certs if c.case == "I")
    case2 = [c for c in certs if c.case == "II"]
    ok = case1 == [3, 5, 7] and len(case2) == 1
    if ok:
        k = case2[0]
        ok = (k.candidate.g == 3 and {k.candidate.n_psi, k.candidate.n_rho} == {8, 4}
              and k.candidate.gamma == 0 and "diag(1,-1)" in (k.monodromy_note or ""))
    return ok, {"case_I_genera": case1, "case_II": [c.to_json()["candidate"] for c in case2]}


EXPECTED_GENERA = {"S": 9, "Sigma": 3, "S_tau": 5, "S_psi": 5, "S_anti": 5,
                   "Sigma_Klein": 3, "Sigma_tau": 2, "E": 1, "M": 2}


def check_genus_ledger(zs) -> tuple[bool, dict]:
    t = build_genus3_tower(zs)
    g = {k: t.genera()[k] for k in GENUS3_DIAGRAM}
    rh = verify_rh_consistency(t)
    labels = _pts(zs)
    loci = {"E": list(t.node("E").branch_locus), "M": list(t.node("M").branch_locus),
            "Sigma_Klein": list(t.node("Sigma_Klein").branch_locus)}
    ok = (g == EXPECTED_GENERA and rh.ok
          and set(loci["E"]) == {"0", "inf", labels[0], labels[1]}
          and set(loci["M"]) == {"0", "inf", *labels[2:]}
          and len(loci["Sigma_Klein"]) == 8)
    return ok, {"genera": g, "branch_loci": loci, "edges_checked": len(rh.edges), "failing": rh.failing()}


def _symmetric_model(half: Sequence[str]) -> HyperellipticModel:
    return HyperellipticModel([p for h in half for p in (h, "-" + h)])


def check_invariant_differentials() -> tuple[bool, dict]:
    ok = True
    rows = []
    for half in SYMMETRIC_SAMPLES:
        model = _symmetric_model(half)
        basis = quad_basis(model)
        tau = [q.coordinates() for q in invariant_subspace([TAU], model)]
        joint = [q.coordinates() for q in invariant_subspace([PSI, RHO], model)]
        expected = [[1 if i == k else 0 for i in range(6)] for k in (0, 2, 4)]
        good = len(basis) == 6 and tau == expected and joint == tau
        ok = ok and good
        rows.append({"branch": _pts(model.branch_points), "tau_dim": len(tau), "ok": good})
    return ok, {"samples": rows}


def check_covering_map(zs) -> tuple[bool, dict]:
    ok = True
    rows = []
    for sample in (tuple(zs),) + EXTRA_Z:
        m = genus3_covering_map(sample)
        ver = verify_covering_map(m)
        pulled = pullback_qd(m, QuadDifferential(m.target, Poly([0, 1])))
        good = ver.ok and pulled.a == expected_genus3_pullback(sample)
        ok = ok and good
        rows.append({"z": _pts(parse_points(sample)), "verified": ver.ok, "pullback_matches": good})
    return ok, {"samples": rows}


def check_free_kernel() -> tuple[bool, dict]:
    t = build_free_tower(2)
    k = kernel_of_pullback(t, "S", "S_tau")
    p2 = classifying_class(t, "S", "S_tau")
    ok = k.kernel.basis == (p2,)
    return ok, {"kernel_dim": k.dim, "classifying_class": format(p2, "b")}


def check_klein_kernels(zs) -> tuple[bool, dict]:
    t = build_genus3_tower(zs)
    k = kernel_of_pullback(t, "S", "Sigma_Klein")
    tr = translation(t, "Sigma_Klein")
    labels = _pts(zs)
    expected = [EvenSubsetClass.of(tr.branch, {"0", "inf"}), EvenSubsetClass.of(tr.branch, labels[:2])]
    want = F2Subspace(k.kernel.n, [tr.to_character(c) for c in expected])
    em = product_kernel_EM(t)
    tr_e, tr_m = translation(t, "E"), translation(t, "M")
    a = em.element(tr_e.to_character(EvenSubsetClass.of(tr_e.branch, labels[:2])), 0)
    b = em.element(0, tr_m.to_character(EvenSubsetClass.of(tr_m.branch, {"0", "inf"})))
    ok = k.kernel == want and em.modulo_l0.dim == 2 and a in em.modulo_l0 and b in em.modulo_l0
    return ok, {"klein_kernel": k.generator_labels(), "em_dim_modulo_l0": em.modulo_l0.dim,
                "em_dim_literal": em.literal.dim}


def check_twist(zs) -> tuple[bool, dict]:
    t = build_genus3_tower(zs)
    w = verify_twist_relation(t, "rho")
    return w.ok, w.to_json()


def check_model_agreement(zs) -> tuple[bool, dict]:
    cases = 0
    bad = []
    for sample in (tuple(zs),) + EXTRA_Z:
        rep = model_agreement(build_genus3_tower(sample))
        cases += rep.cases
        bad += [list(m) for m in rep.mismatches]
    free = model_agreement(build_free_tower(2))
    cases += free.cases
    return not bad and cases >= 300, {"cases": cases, "mismatches": bad}


def verify_payload(zs, jobs: int = 1) -> dict:
    checks = [
        _check("1", "dimension formulas", check_dimensions),
        _check("2", "prime-order obstruction survey", check_prime_survey),
        _check("3", "Z4 exclusion", check_z4),
        _check("4", "classification up to genus 7", lambda: check_classification(jobs)),
        _check("5", "genus ledger of the genus-3 tower", lambda: check_genus_ledger(zs)),
        _check("6", "invariant quadratic differentials", check_invariant_differentials),
        _check("7", "covering map identity and pullback", lambda: check_covering_map(zs)),
        _check("8", "free tower kernel", check_free_kernel),
        _check("9", "Klein quotient and E x M kernels", lambda: check_klein_kernels(zs)),
        _check("10", "twist relation over Sigma_rho", lambda: check_twist(zs)),
        _check("11", "even-subset / character model agreement", lambda: check_model_agreement(zs)),
    ]
    return {"z": _pts(zs), "checks": checks,
            "passed": sum(c["ok"] for c in checks),
            "failed": [c["name"] for c in checks if not c["ok"]]}


# ---------------------------------------------------------------------------
# text summary


def _table(headers: Sequence[str], rows: Sequence[Sequence]) -> list[str]:
    cells = [list(map(str, headers))] + [[str(x) for x in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(headers))]
    fmt = "  ".join("{:<%d}" % w for w in widths)
    lines = [fmt.format(*cells[0]), fmt.format(*["-" * w for w in widths])]
    return [ln.rstrip() for ln in lines + [fmt.format(*r) for r in cells[1:]]]


def render_summary(report: dict) -> str:
    cmd = report["command"]
    res = report["results"]
    lines = [f"{cmd} (schema {report['schema_version']})"]
    if cmd == "classify":
        if not res["admitted"]:
            lines.append("no admissible actions")
        else:
            rows = [(c["case"], c["candidate"]["kind"], c["candidate"]["g"], c["candidate"]["gamma"],
                     c["candidate"]["n"], f"{c['lhs']} = {c['rhs']}") for c in res["admitted"]]
            lines += _table(["case", "group", "g", "gamma", "n", "halving"], rows)
    elif cmd == "dims":
        lines += _table(["g", "dim", "brane"], [(r["g"], r["dim_flat"], r["brane_target_dim"])
                                                for r in res["closed"]])
        lines += _table(["gamma", "n", "dim"], [
            (r["gamma"], r["n"], "0 or 2" if r["exceptional"] else r["value"]) for r in res["punctured"]])
    elif cmd == "tower":
        by_name = {n["name"]: n for n in res["nodes"]}
        lines += _table(["node", "genus", "branch points"],
                        [(nm, by_name[nm]["genus"], len(by_name[nm]["branch_locus"])) for nm in res["diagram"]])
        lines.append(f"Riemann-Hurwitz: {'ok' if res['rh_consistency']['ok'] else 'FAILED'} "
                     f"on {len(res['rh_consistency']['edges'])} edges")
    elif cmd == "fibre-report":
        g3 = res["genus3_tower"]
        lines += _table(["node", "genus"], sorted(g3["genera"].items(), key=lambda kv: -kv[1]))
        lines.append("Klein quotient kernel: " + ", ".join(g3["kernel_Sigma_Klein_to_S"]["generators"]))
        lines.append("free tower kernel dim: " + str(res["free_tower"]["kernel_S_tau_to_S"]["dim"]))
        lines.append("E x M kernel dim (mod l0): " + str(g3["product_kernel_EM"]["modulo_l0"]["dim"]))
    elif cmd == "invariants":
        for sub in res["invariant_subspaces"]:
            lines.append(f"{'+'.join(sub['involutions']) or 'none'}: " + "; ".join(sub["display"]))
        lines.append(f"covering map verified: {res['covering_map']['verified']}")
    elif cmd == "verify":
        lines += _table(["id", "check", "result"],
                        [(c["id"], c["name"], "pass" if c["ok"] else "FAIL") for c in res["checks"]])
    return "\n".join(lines) + "\n"

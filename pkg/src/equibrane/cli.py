"""Command line: ``equibrane <command> [options]``.

Exit codes: 0 success, 1 a verification check failed, 2 bad configuration.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import report
from .exact import parse_point


class ConfigError(ValueError):
    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


def _csv(text) -> list[str]:
    if isinstance(text, (list, tuple)):
        return [str(x) for x in text]
    return [s.strip() for s in str(text).split(",") if s.strip()]


def _z(values, field="--z") -> tuple:
    vals = _csv(values)
    try:
        pts = tuple(parse_point(v) for v in vals)
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(field, f"cannot parse branch point ({exc})") from None
    if len(set(pts)) != len(pts):
        raise ConfigError(field, "branch points must be distinct")
    return tuple(vals)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON file with option values (flags override it)")
    common.add_argument("--output", "-o", help="write the report here instead of stdout")
    common.add_argument("--format", choices=["json", "summary"], default=None)
    common.add_argument("--jobs", type=int, default=None, help="worker processes for the classifier")

    p = argparse.ArgumentParser(prog="equibrane", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", parents=[common], help="classify admissible group actions")
    c.add_argument("--genus-max", type=int)
    c.add_argument("--include-rejected", action="store_true", default=None)

    d = sub.add_parser("dims", parents=[common], help="moduli dimensions")
    d.add_argument("--genus", help="comma-separated closed genera")
    d.add_argument("--gamma", help="comma-separated quotient genera")
    d.add_argument("--punctures", help="comma-separated puncture counts")

    t = sub.add_parser("tower", parents=[common], help="build a cover tower")
    t.add_argument("--preset", choices=["genus3", "free"])
    t.add_argument("--z", help="six branch points z1..z6 (genus3 preset)")
    t.add_argument("--gamma", type=int, help="base genus (free preset)")
    t.add_argument("--cover-class", help="0/1 handle string a1 b1 a2 b2 ... (free preset)")

    f = sub.add_parser("fibre-report", parents=[common], help="two-torsion kernels and dimension ledger")
    f.add_argument("--z")
    f.add_argument("--gamma", type=int)

    i = sub.add_parser("invariants", parents=[common], help="invariant quadratic differentials")
    i.add_argument("--branch", help="eight branch points, symmetric under z -> -z")
    i.add_argument("--involutions", help="semicolon-separated sets, e.g. 'tau;psi,rho'")
    i.add_argument("--z", help="six points for the covering-map check")

    v = sub.add_parser("verify", parents=[common], help="run every acceptance check")
    v.add_argument("--all", action="store_true", default=None)
    v.add_argument("--z")
    return p


DEFAULTS = {
    "genus_max": 7, "include_rejected": False, "genus": "2,3,4,5", "gamma": None, "punctures": None,
    "preset": "genus3", "z": ",".join(report.STANDARD_Z), "cover_class": None,
    "branch": "1,-1,2,-2,3,-3,5,-5", "involutions": "psi;rho;tau;psi,rho", "all": True,
    "format": "json", "jobs": 1,
}


def resolve(args: argparse.Namespace) -> dict:
    """Flags over config file over defaults."""
    cfg: dict = {}
    if args.config:
        try:
            cfg = json.loads(Path(args.config).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError("--config", str(exc)) from None
        if not isinstance(cfg, dict):
            raise ConfigError("--config", "top level must be an object")
        cfg = {k.replace("-", "_"): v for k, v in cfg.items()}
    out = dict(DEFAULTS)
    out.update(cfg)
    for k, v in vars(args).items():
        if v is not None and k != "config":
            out[k] = v
    if int(out["jobs"]) < 1:
        raise ConfigError("--jobs", "must be a positive integer")
    out["jobs"] = int(out["jobs"])
    return out


def _ints(text, field) -> list[int]:
    try:
        return [int(x) for x in _csv(text)]
    except ValueError:
        raise ConfigError(field, "expected comma-separated integers") from None


def run(argv=None) -> tuple[dict, int]:
    args = build_parser().parse_args(argv)
    cfg = resolve(args)
    cmd = args.command
    code = 0
    if cmd == "classify":
        gmax = int(cfg["genus_max"])
        if gmax < 2:
            raise ConfigError("--genus-max", "must be at least 2")
        params = {"genus_max": gmax, "include_rejected": bool(cfg["include_rejected"])}
        results = report.classify_payload(gmax, cfg["jobs"], params["include_rejected"])
    elif cmd == "dims":
        genera = _ints(cfg["genus"], "--genus")
        if any(g < 2 for g in genera):
            raise ConfigError("--genus", "genus bounds must be at least 2")
        gammas = _ints(cfg["gamma"], "--gamma") if cfg["gamma"] is not None else list(range(0, 4))
        ns = _ints(cfg["punctures"], "--punctures") if cfg["punctures"] is not None else list(range(0, 7))
        if any(x < 0 for x in gammas + ns):
            raise ConfigError("--gamma/--punctures", "must be non-negative")
        pairs = [(gm, n) for gm in gammas for n in ns]
        params = {"genus": genera, "gamma": gammas, "punctures": ns}
        results = report.dims_payload(genera, pairs)
    elif cmd == "tower":
        if cfg["preset"] == "genus3":
            zs = _z(cfg["z"])
            if len(zs) != 6:
                raise ConfigError("--z", "need exactly six branch points")
            params = {"preset": "genus3", "z": list(zs)}
            try:
                results = report.genus3_payload(zs)
            except ValueError as exc:
                raise ConfigError("--z", str(exc)) from None
        else:
            gamma = int(cfg["gamma"] if cfg["gamma"] is not None else 2)
            if gamma < 2:
                raise ConfigError("--gamma", "base genus must be at least 2")
            params = {"preset": "free", "gamma": gamma, "cover_class": cfg["cover_class"]}
            try:
                results = report.free_payload(gamma, cfg["cover_class"])
            except ValueError as exc:
                raise ConfigError("--cover-class", str(exc)) from None
    elif cmd == "fibre-report":
        zs = _z(cfg["z"])
        gamma = int(cfg["gamma"] if cfg["gamma"] is not None else 2)
        params = {"z": list(zs), "gamma": gamma}
        try:
            results = report.fibre_payload(zs, gamma)
        except ValueError as exc:
            raise ConfigError("--z", str(exc)) from None
    elif cmd == "invariants":
        branch = _z(cfg["branch"], "--branch")
        zs = _z(cfg["z"])
        sets = [[s.strip() for s in grp.split(",") if s.strip()] for grp in str(cfg["involutions"]).split(";")]
        for grp in sets:
            for name in grp:
                if name not in report.INVOLUTIONS:
                    raise ConfigError("--involutions", f"unknown involution {name!r}")
        params = {"branch": list(branch), "involutions": sets, "z": list(zs)}
        try:
            results = report.invariants_payload(branch, sets, zs)
        except ValueError as exc:
            raise ConfigError("--branch", str(exc)) from None
    else:  # verify
        zs = _z(cfg["z"])
        try:
            report.build_genus3_tower(zs)
        except ValueError as exc:
            raise ConfigError("--z", str(exc)) from None
        params = {"z": list(zs), "all": bool(cfg["all"])}
        results = report.verify_payload(zs, cfg["jobs"])
        code = 0 if not results["failed"] else 1
    rep = report.envelope(cmd, params, results)
    return {"report": rep, "format": cfg["format"], "output": cfg.get("output")}, code


def main(argv=None) -> int:
    try:
        out, code = run(argv)
    except ConfigError as exc:
        print(f"equibrane: error: {exc}", file=sys.stderr)
        return 2
    rep = out["report"]
    text = report.render_summary(rep) if out["format"] == "summary" else report.dumps(rep)
    if out["output"]:
        Path(out["output"]).write_text(text)
    else:
        sys.stdout.write(text)
    if code:
        failed = ", ".join(rep["results"]["failed"])
        print(f"equibrane: verification failed: {failed}", file=sys.stderr)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

"""Command-line interface: build base codes, enumerate lifts, estimate
distances, and render parameter tables.

Outputs are deterministic: records are JSON with sorted keys, file names
encode (family, ell, index, group, kernel class), and nothing timestamped
is written, so rerunning a command reproduces its output byte for byte.

Exit codes: 0 when every invariant holds, 2 when a parameter bound or
code invariant fails, 1 for usage errors.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from . import csscode, distance, gf2, groups, localcodes, transfer
from .covering import enumerate_galois_covers
from .complexes import to_text
from .families import FamilyBuild, build_BS, build_L
from .localcodes import Poly

__all__ = ["RunConfig", "main", "cmd_build", "cmd_lift_enum", "cmd_distance", "cmd_table"]

_EXACT_KERNEL_LIMIT = 22


@dataclass
class RunConfig:
    command: str
    family: str = "L"
    ell: int = 0
    poly: tuple[int, ...] = ()
    reduced_generators: bool = False
    max_index: int = 30
    groups_dir: str | None = None
    iters: int = 2000
    seed: int = 0
    out: str = "."
    code: str | None = None
    side: str = "both"
    records: str | None = None


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(1)


def _build_from_config(cfg: RunConfig) -> FamilyBuild:
    poly = Poly.from_exponents(cfg.ell, cfg.poly)
    if cfg.family == "L":
        return build_L(cfg.ell, poly, cfg.reduced_generators)
    return build_BS(cfg.ell, poly)


def _distance_reports(code: csscode.CssCode, iters: int, seed: int) -> dict:
    out = {}
    for side in ("X", "Z"):
        kdim = code.n - (code.rank_z() if side == "X" else code.rank_x())
        if code.k == 0 or kdim <= _EXACT_KERNEL_LIMIT:
            rep = distance.exact_distance(code, side)
        else:
            rep = distance.randomized_distance(code, side, iters, seed)
        out[side] = rep
    return out


def _record_for_code(
    build: FamilyBuild,
    code: csscode.CssCode,
    reports: dict,
    *,
    lift_index: int,
    deck_group: str,
    hom,
    kernel_class: int,
    transfer_checks,
    matrices: dict,
) -> dict:
    spec = build.spec
    return {
        "family": spec.family,
        "ell": spec.ell,
        "poly": list(spec.poly.exponents()),
        "reduced_generators": spec.reduced_generators,
        "lift_index": lift_index,
        "deck_group": deck_group,
        "hom": list(hom) if hom is not None else None,
        "kernel_class": kernel_class,
        "n": code.n,
        "k": code.k,
        "valid": True,
        "weight_profile": csscode.weight_profile(code),
        "distance": {side: rep.to_json() for side, rep in reports.items()},
        "transfer_checks": transfer_checks,
        "matrices": matrices,
    }


def _write_record(path: Path, record: dict) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(record, indent=2, sort_keys=True) + "\n")


def _export_matrices(code: csscode.CssCode, out: Path, stem: str) -> dict:
    mdir = out / "matrices"
    mdir.mkdir(parents=True, exist_ok=True)
    refs = {}
    for tag, m in (("hx", code.hx), ("hz", code.hz)):
        gf2.write_mtx(m, mdir / f"{stem}_{tag}.mtx")
        gf2.write_alist(m, mdir / f"{stem}_{tag}.alist")
        refs[f"{tag}_mtx"] = f"matrices/{stem}_{tag}.mtx"
        refs[f"{tag}_alist"] = f"matrices/{stem}_{tag}.alist"
    return refs


def cmd_build(cfg: RunConfig) -> int:
    build = _build_from_config(cfg)
    out = Path(cfg.out)
    out.mkdir(parents=True, exist_ok=True)
    code = csscode.assemble(build.complex, build.assignment)
    reports = _distance_reports(code, cfg.iters, cfg.seed)
    stem = f"{cfg.family}_{cfg.ell}_base"
    (out / f"{stem}_complex.txt").write_text(to_text(build.complex))
    refs = _export_matrices(code, out, stem)
    refs["complex"] = f"{stem}_complex.txt"
    record = _record_for_code(
        build,
        code,
        reports,
        lift_index=1,
        deck_group="1",
        hom=None,
        kernel_class=0,
        transfer_checks=None,
        matrices=refs,
    )
    _write_record(out / f"{stem}.json", record)
    print(f"[[{code.n},{code.k}]] written to {out / (stem + '.json')}")
    return 0


def _load_groups(cfg: RunConfig) -> list[groups.GroupTable]:
    if cfg.groups_dir is not None:
        gdir = Path(cfg.groups_dir)
        paths = sorted(gdir.glob("*.grp")) if gdir.is_dir() else []
        tables = [groups.read_group_file(p) for p in paths]
    else:
        root = resources.files("qtanner") / "catalog"
        tables = []
        for entry in sorted(root.iterdir(), key=lambda e: e.name):
            if entry.name.endswith(".grp"):
                with resources.as_file(entry) as p:
                    tables.append(groups.read_group_file(p))
    tables = [g for g in tables if g.order <= cfg.max_index]
    tables.sort(key=lambda g: (g.order, g.name))
    return tables


def _record_invariants(
    base_code: csscode.CssCode, code: csscode.CssCode, cm
) -> list[str]:
    """Cross-checks every emitted lift record must pass."""
    problems = []
    base_prof = csscode.weight_profile(base_code)
    prof = csscode.weight_profile(code)
    for key in ("w_x", "w_z", "W"):
        if prof[key] != base_prof[key]:
            problems.append(f"weight profile {key} changed: {prof[key]} vs {base_prof[key]}")
    if cm.group is not None:
        for gamma in range(cm.group.order):
            if not csscode.verify_deck_automorphism(code, cm, gamma):
                problems.append(f"deck element {gamma} does not preserve the checks")
                break
    return problems


def cmd_lift_enum(cfg: RunConfig) -> int:
    build = _build_from_config(cfg)
    out = Path(cfg.out)
    out.mkdir(parents=True, exist_ok=True)
    base_code = csscode.assemble(build.complex, build.assignment)
    base_reports = _distance_reports(base_code, cfg.iters, cfg.seed)
    violations = 0

    stem = f"{cfg.family}_{cfg.ell}_idx001_1_k0"
    refs = _export_matrices(base_code, out, stem)
    record = _record_for_code(
        build,
        base_code,
        base_reports,
        lift_index=1,
        deck_group="1",
        hom=None,
        kernel_class=0,
        transfer_checks=None,
        matrices=refs,
    )
    _write_record(out / "records" / f"{stem}.json", record)
    index = [f"records/{stem}.json"]

    for g in _load_groups(cfg):
        covers = enumerate_galois_covers(build.complex, build.presentation, g)
        for kidx, cm in enumerate(covers):
            stem = f"{cfg.family}_{cfg.ell}_idx{g.order:03d}_{g.name}_k{kidx}"
            try:
                code = csscode.lift_code(cm, build.assignment)
            except csscode.OrthogonalityError as exc:
                record = {
                    "family": cfg.family,
                    "ell": cfg.ell,
                    "poly": list(build.spec.poly.exponents()),
                    "lift_index": g.order,
                    "deck_group": g.name,
                    "hom": list(cm.hom),
                    "kernel_class": kidx,
                    "valid": False,
                    "error": str(exc),
                }
                _write_record(out / "records" / f"{stem}.json", record)
                index.append(f"records/{stem}.json")
                violations += 1
                continue
            problems = _record_invariants(base_code, code, cm)
            reports = _distance_reports(code, cfg.iters, cfg.seed)
            checks = {}
            for side in ("X", "Z"):
                checks[side] = transfer.verify_parameter_bounds(
                    base_code, code, cm, base_reports[side]
                )
                if not checks[side]["ok"]:
                    violations += 1
            if problems:
                violations += 1
            refs = _export_matrices(code, out, stem)
            record = _record_for_code(
                build,
                code,
                reports,
                lift_index=g.order,
                deck_group=g.name,
                hom=cm.hom,
                kernel_class=kidx,
                transfer_checks=checks,
                matrices=refs,
            )
            record["invariant_problems"] = problems
            _write_record(out / "records" / f"{stem}.json", record)
            index.append(f"records/{stem}.json")

    summary = {
        "family": cfg.family,
        "ell": cfg.ell,
        "poly": list(build.spec.poly.exponents()),
        "max_index": cfg.max_index,
        "iters": cfg.iters,
        "seed": cfg.seed,
        "records": index,
        "violations": violations,
    }
    _write_record(out / "summary.json", summary)
    print(f"{len(index)} records written to {out}; violations: {violations}")
    return 2 if violations else 0


def _load_code(record_path: Path) -> tuple[dict, csscode.CssCode]:
    record = json.loads(record_path.read_text())
    base = record_path.parent
    hx_ref = record["matrices"]["hx_mtx"]
    hz_ref = record["matrices"]["hz_mtx"]
    root = base if (base / hx_ref).exists() else base.parent
    hx = gf2.read_mtx(root / hx_ref)
    hz = gf2.read_mtx(root / hz_ref)
    code = csscode.CssCode(
        hx.ncols,
        csscode.TannerCheckSet(0, hx, tuple((i,) for i in range(hx.nrows))),
        csscode.TannerCheckSet(1, hz, tuple((i,) for i in range(hz.nrows))),
    )
    return record, code


def cmd_distance(cfg: RunConfig) -> int:
    record, code = _load_code(Path(cfg.code))
    sides = ("X", "Z") if cfg.side == "both" else (cfg.side,)
    out = {}
    for side in sides:
        kdim = code.n - (code.rank_z() if side == "X" else code.rank_x())
        if code.k == 0 or kdim <= _EXACT_KERNEL_LIMIT:
            rep = distance.exact_distance(code, side)
        else:
            rep = distance.randomized_distance(code, side, cfg.iters, cfg.seed)
        out[side] = rep.to_json()
    print(json.dumps(out, indent=2, sort_keys=True))
    return 0


def _load_reference() -> dict:
    path = resources.files("qtanner") / "data" / "known_parameters.json"
    with resources.as_file(path) as p:
        return json.loads(Path(p).read_text())


def _ratio_str(d: float, n: int) -> str:
    if math.isinf(d):
        return "inf"
    return f"{d * d / n:.3g}"


def cmd_table(cfg: RunConfig) -> int:
    rdir = Path(cfg.records)
    records = []
    for p in sorted(rdir.rglob("*.json")):
        rec = json.loads(p.read_text())
        if isinstance(rec, dict) and rec.get("valid") and "distance" in rec:
            records.append(rec)
    if not records:
        print("ell | W | index | deck group | [[n,k,d]] | d^2/n | exact")
        return 0
    reference = _load_reference()
    grouped: dict[tuple, list[dict]] = {}
    for rec in records:
        key = (rec["family"], rec["ell"], rec["lift_index"])
        grouped.setdefault(key, []).append(rec)

    def dist_of(rec) -> tuple[float, bool]:
        vals = []
        exact = True
        for side in ("X", "Z"):
            dd = rec["distance"][side]
            vals.append(math.inf if dd["value"] == "inf" else int(dd["value"]))
            exact = exact and dd["exhaustive"]
        return min(vals), exact

    lines = ["ell | W | index | deck group | [[n,k,d]] | d^2/n | exact"]
    footnotes = []
    for key in sorted(grouped):
        family, ell, idx = key
        rows = grouped[key]
        scored = []
        for rec in rows:
            d, exact = dist_of(rec)
            scored.append((d, exact, rec))
        best_d = max(s[0] for s in scored)
        chosen = [s for s in scored if s[0] == best_d]
        names = sorted({s[2]["deck_group"] for s in chosen})
        rec = chosen[0][2]
        exact = all(s[1] for s in chosen)
        d_str = "inf" if math.isinf(best_d) else str(int(best_d))
        params = f"[[{rec['n']},{rec['k']},{d_str}]]"
        ratio = _ratio_str(best_d, rec["n"])
        mark = ""
        ref = reference.get(f"{family}:{ell}:{idx}")
        if ref is not None:
            ref_params = f"[[{ref['n']},{ref['k']},{ref['d']}]]"
            if ref_params != params or str(ref["ratio"]) != ratio:
                mark = " *"
                footnotes.append(
                    f"* {family}({ell}) index {idx}: reference values "
                    f"{ref_params} with d^2/n = {ref['ratio']}"
                )
        lines.append(
            f"{ell} | {rec['weight_profile']['W']} | {idx} | {', '.join(names)} | "
            f"{params} | {ratio} | {'yes' if exact else 'no'}{mark}"
        )
    lines.extend(footnotes)
    print("\n".join(lines))
    return 0


def _add_family_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--family", choices=("L", "BS"), required=True)
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--poly", required=True, help="comma-separated exponent list, e.g. 0,5")
    p.add_argument("--reduced-generators", action="store_true")


def build_parser() -> _Parser:
    parser = _Parser(prog="qtanner")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="assemble a base code and export it")
    _add_family_flags(p)
    p.add_argument("--out", default=".")
    p.add_argument("--iters", type=int, default=2000)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("lift-enum", help="enumerate Galois lifts over a group catalog")
    _add_family_flags(p)
    p.add_argument("--max-index", type=int, default=30)
    p.add_argument("--groups", default=None, help="directory of .grp files")
    p.add_argument("--iters", type=int, default=2000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=".")

    p = sub.add_parser("distance", help="estimate distances for a stored record")
    p.add_argument("--code", required=True, help="path to a code record JSON")
    p.add_argument("--side", choices=("X", "Z", "both"), default="both")
    p.add_argument("--iters", type=int, default=2000)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("table", help="render a parameter table from records")
    p.add_argument("--records", required=True)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = RunConfig(
        command=args.command,
        family=getattr(args, "family", "L"),
        ell=getattr(args, "ell", 0),
        poly=tuple(
            int(tok) for tok in getattr(args, "poly", "").split(",") if tok != ""
        ),
        reduced_generators=getattr(args, "reduced_generators", False),
        max_index=getattr(args, "max_index", 30),
        groups_dir=getattr(args, "groups", None),
        iters=getattr(args, "iters", 2000),
        seed=getattr(args, "seed", 0),
        out=getattr(args, "out", "."),
        code=getattr(args, "code", None),
        side=getattr(args, "side", "both"),
        records=getattr(args, "records", None),
    )
    try:
        if cfg.command == "build":
            return cmd_build(cfg)
        if cfg.command == "lift-enum":
            return cmd_lift_enum(cfg)
        if cfg.command == "distance":
            return cmd_distance(cfg)
        if cfg.command == "table":
            return cmd_table(cfg)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 1


if __name__ == "__main__":
    sys.exit(main())

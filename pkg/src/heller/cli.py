"""Command-line driver: reproduction runs and thin wrappers over the library.

Exit codes: 0 success, 1 expected-result mismatch, 2 user error, 3 internal
invariant violation.  Reports are deterministic for fixed inputs and seed.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from . import fp_linalg as fl
from .adjoint import (
    AdjointContext, compare_unit_description, find_left_adjoint, hom_dim_matrix,
    omega_s_idempotency, omega_twisted_matrix, right_adjoint_obstruction, stable_counts,
    verify_paper_epsilons,
)
from .algebra import BUILTIN_PARAMS, AlgebraError, BasedAlgebra, algebra_from_json, builtin_algebra
from .catalog import FIXTURE_NAMES, Catalog, data_checksums, fixtures, get_catalog
from .krull_schmidt import UnknownSummand, decompose, end_algebra, identify, locality_certificate
from .modules import Module, ModuleError, is_isomorphic, module_from_json, random_module
from .projectives import LemmaFalsified, syzygy
from .stable import is_projective, stable_hom

EXIT_OK, EXIT_MISMATCH, EXIT_USER, EXIT_INTERNAL = 0, 1, 2, 3
REPORT_SCHEMA = "heller.report/1"


class UserError(Exception):
    """Bad input; reported with exit code 2."""


@dataclass
class RunConfig:
    algebra: str = "A"
    prime: int = 2
    seed: int = 0
    jobs: int = 1
    max_eps_dim: int = 6
    format: str = "pretty"
    emit_certificate: str | None = None

    def validate(self) -> "RunConfig":
        try:
            fl.check_prime(self.prime)
        except ValueError as exc:
            raise UserError(f"--prime: {exc}") from None
        if self.jobs < 1:
            raise UserError("--jobs must be >= 1")
        if self.max_eps_dim < 0:
            raise UserError("--max-eps-dim must be >= 0")
        return self

    def public(self) -> dict:
        # jobs does not change results, so it stays out of the report
        d = asdict(self)
        d.pop("jobs")
        d.pop("format")
        return d


def fmt_counts(counts: dict[str, int]) -> str:
    if not counts:
        return "0"
    return " ⊕ ".join(lab if c == 1 else f"{c}·{lab}" for lab, c in counts.items())


def _sorted_counts(counts: dict[str, int], labels: list[str]) -> dict[str, int]:
    order = {lab: i for i, lab in enumerate(labels)}
    return {k: int(counts[k]) for k in sorted(counts, key=lambda k: order.get(k, len(order))) if counts[k]}


# ------------------------------------------------------------------ loading


def load_algebra(cfg: RunConfig) -> tuple[BasedAlgebra, Catalog | None]:
    """Builtin name, or a JSON algebra file.  A JSON triangle algebra whose
    parameters match a builtin one reuses that catalog."""
    if cfg.algebra in BUILTIN_PARAMS:
        return builtin_algebra(cfg.algebra, cfg.prime), get_catalog(cfg.algebra, cfg.prime)
    path = Path(cfg.algebra)
    if not path.is_file():
        raise UserError(f"--algebra: {cfg.algebra!r} is neither a builtin ({', '.join(sorted(BUILTIN_PARAMS))})"
                        " nor a readable file")
    try:
        alg = algebra_from_json(path.read_text())
    except json.JSONDecodeError as exc:
        raise UserError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    except AlgebraError as exc:
        raise UserError(f"{path}: {exc}") from None
    if alg.p != cfg.prime:
        raise UserError(f"{path}: algebra is over F_{alg.p} but --prime is {cfg.prime}")
    for name, params in BUILTIN_PARAMS.items():
        if alg.params == params:
            ref = builtin_algebra(name, cfg.prime)
            if np.array_equal(ref.mul, alg.mul) and ref.basis == alg.basis:
                return ref, get_catalog(name, cfg.prime)
    return alg, None


def load_module(spec: str, alg: BasedAlgebra, cat: Catalog | None) -> Module:
    if cat is not None:
        if spec in cat.labels or spec in cat.aliases:
            return cat[spec]
        proj = {f"P{i + 1}": q for i, q in enumerate(cat.projectives)}
        if spec in proj:
            return proj[spec]
    path = Path(spec)
    if not path.is_file():
        known = f"; labels: {', '.join(cat.labels)}" if cat is not None else ""
        raise UserError(f"--module: {spec!r} is not a catalog label or a readable file{known}")
    try:
        return module_from_json(path.read_text(), algebra=alg)
    except json.JSONDecodeError as exc:
        raise UserError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    except (ModuleError, KeyError, ValueError) as exc:
        raise UserError(f"{path}: {exc}") from None


def need_catalog(cat: Catalog | None, what: str) -> Catalog:
    if cat is None:
        raise UserError(f"{what} needs a catalog of indecomposables; only the builtin algebras "
                        f"({', '.join(sorted(BUILTIN_PARAMS))}) have one")
    return cat


def _summands(m: Module, alg: BasedAlgebra, cat: Catalog | None, seed: int) -> dict[str, int]:
    if cat is not None:
        return _sorted_counts(identify(m, cat.with_projectives(), seed), cat.labels + ["P1", "P2"])
    out: dict[str, int] = {}
    for piece, mult in decompose(m, seed).summands:
        key = f"dim{piece.dim_vector}"
        out[key] = out.get(key, 0) + mult
    return out


# ------------------------------------------------------------- reproduction


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""
    diff: list[str] = field(default_factory=list)


def _catalog_checks(cat: Catalog, seed: int) -> list[Check]:
    not_local = [lab for lab, m in cat.items() if locality_certificate(end_algebra(m)) is None]
    projective = [lab for lab, m in cat.items() if is_projective(m)]
    pairs = []
    mods = cat.items()
    for a in range(len(mods)):
        for b in range(a + 1, len(mods)):
            (la, ma), (lb, mb) = mods[a], mods[b]
            if ma.dim_vector == mb.dim_vector and is_isomorphic(ma, mb, seed) is not None:
                pairs.append(f"{la} ≅ {lb}")
    proj_bad = [f"P{i + 1}" for i, q in enumerate(cat.projectives) if not is_projective(q)]
    return [
        Check("catalog indecomposable", not not_local, f"{len(cat)} objects, local endomorphism rings",
              [f"{lab}: no locality certificate" for lab in not_local]),
        Check("catalog nonprojective", not projective, "no catalog object is projective",
              [f"{lab} is projective" for lab in projective]),
        Check("catalog pairwise distinct", not pairs, "no two catalog objects are isomorphic", pairs),
        Check("projectives", not proj_bad, "P1, P2 projective", proj_bad),
    ]


def _table_check(name: str, computed: dict[str, dict[str, int]], expected: dict[str, dict[str, int]],
                 labels: list[str]) -> Check:
    diff = []
    for lab in labels:
        if lab not in expected:
            continue
        got = computed.get(lab)
        want = _sorted_counts(expected[lab], labels)
        if got != want:
            diff.append(f"{lab}: computed {fmt_counts(got) if got is not None else 'none'}, expected {fmt_counts(want)}")
    return Check(name, not diff, f"{sum(1 for lab in labels if lab in expected)} rows compared", diff)


def verify_paper(cfg: RunConfig) -> tuple[list[Check], dict]:
    """Full reproduction for one builtin algebra; returns checks and data."""
    name, p, seed = cfg.algebra, cfg.prime, cfg.seed
    if name not in BUILTIN_PARAMS:
        raise UserError("verify-paper runs on a builtin algebra name")
    cat = get_catalog(name, p)
    ctx = AdjointContext(cat)
    fx = fixtures(name) if name in FIXTURE_NAMES else None
    checks = _catalog_checks(cat, seed)
    data: dict = {"labels": list(cat.labels)}

    cert = find_left_adjoint(cat, cfg.max_eps_dim, seed, cfg.jobs, context=ctx)
    checks.append(Check("left adjoint", cert.ok, f"S found for {len(cert.entries)}/{len(cat)} objects",
                        [f"{lab}: {len(rej)} candidates rejected" for lab, rej in cert.failures.items()]))
    if cfg.emit_certificate:
        Path(cfg.emit_certificate).write_text(json.dumps(cert.to_json(), indent=1, sort_keys=True) + "\n")
    s_table = {lab: _sorted_counts(cert.s_counts(lab), cat.labels) for lab in cert.entries}
    os_table = {lab: _sorted_counts(stable_counts(e.presentation.omega, cat, seed), cat.labels)
                for lab, e in cert.entries.items()}
    data["S"], data["omega_S"] = s_table, os_table
    if fx is not None and fx.S:
        checks.append(_table_check("S table", s_table, fx.S, cat.labels))
    if fx is not None and fx.omega_S and not fx.extra.get("idempotent_fails"):
        checks.append(_table_check("ΩS table", os_table, fx.omega_S, cat.labels))
    if fx is not None and fx.epsilon:
        res = verify_paper_epsilons(cat, fx, ctx, seed)
        bad = [f"{r.label}: map_errors={r.map_errors} target={r.target_matches} bijective={r.bijective}"
               for r in res if not r.ok]
        checks.append(Check("ε fixtures", not bad, f"{len(res)} transcribed maps verified", bad))

    if cert.ok:
        rows = omega_s_idempotency(cert, seed)
        data["idempotency"] = {r.label: {"omega_S": r.omega_s, "omega_S2": r.omega_s2} for r in rows}
        bad = [f"{r.label}: (ΩS) = {fmt_counts(r.omega_s)}, (ΩS)² = {fmt_counts(r.omega_s2)}"
               for r in rows if not r.idempotent]
        expected_fail = set(fx.extra.get("idempotent_fails", [])) if fx is not None else set()
        if expected_fail:
            for lab in sorted(fx.omega_S, key=cat.labels.index):
                want = _sorted_counts(fx.omega_S[lab], cat.labels)
                got = os_table.get(lab, {})
                checks.append(Check(f"(ΩS){lab}", got == want,
                                    f"computed {fmt_counts(got)}, expected {fmt_counts(want)}",
                                    [] if got == want else [f"{lab}: computed {fmt_counts(got)}, "
                                                            f"expected {fmt_counts(want)}"]))
            got_fail = {r.label for r in rows if not r.idempotent}
            checks.append(Check("ΩS idempotency", got_fail == expected_fail,
                                f"non-idempotent at {sorted(got_fail) or 'none'}, expected {sorted(expected_fail)}",
                                bad))
        else:
            checks.append(Check("ΩS idempotency", not bad, f"(ΩS)² ≅ ΩS on {len(rows)} objects", bad))

    if name in ("A", "B") and cert.ok:
        res = [compare_unit_description(cert, m, lab, seed) for lab, m in cat.with_projectives()]
        bad = [f"{r.label}: stably_isomorphic={r.stably_isomorphic} unit_zero={r.unit_zero} "
               f"described_zero={r.described_zero}" for r in res if not r.agree]
        checks.append(Check("unit descriptions", not bad, f"{sum(r.agree for r in res)}/{len(res)} agree", bad))

    if name == "C3":
        rep = right_adjoint_obstruction(cat, ctx)
        data["H"], data["H_prime"] = rep.H.to_json(), rep.H_prime.to_json()
        data["right_adjoint"] = "FEASIBLE" if rep.feasible else "INFEASIBLE"
        if fx is not None and fx.prime == p:
            same = np.array_equal(rep.H.entries, fx.H) and np.array_equal(rep.H_prime.entries, fx.H_prime)
            checks.append(Check("H, H′ matrices", same, "entrywise comparison", [] if same else ["matrices differ"]))
        col = fx.extra.get("obstruction_column") if fx is not None else None
        traced = [t.column + 1 for t in rep.result.traces]
        checks.append(Check("right adjoint", not rep.feasible,
                            f"{data['right_adjoint']}; infeasible columns {traced}",
                            [] if (not rep.feasible and (col is None or col in traced)) else
                            [f"column {col} not among infeasible columns {traced}"]))
        data["trace"] = rep.trace(cat.labels)
    return checks, data


# ------------------------------------------------------------------- output


def _header(cfg: RunConfig, command: str) -> dict:
    return {"schema": REPORT_SCHEMA, "tool": "heller", "version": __version__, "command": command,
            "config": cfg.public(), "data_checksums": data_checksums()}


def _emit(report: dict, cfg: RunConfig, pretty_lines: list[str], csv_rows: list[list] | None = None) -> str:
    if cfg.format == "json":
        return json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
    if cfg.format == "csv":
        if csv_rows is None:
            raise UserError("--format csv is only available for matrix output")
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(csv_rows)
        return buf.getvalue()
    return "\n".join(pretty_lines) + "\n"


def cmd_verify_paper(cfg: RunConfig, args) -> tuple[int, str]:
    checks, data = verify_paper(cfg)
    ok = all(c.ok for c in checks)
    report = _header(cfg, "verify-paper") | {"ok": ok, "checks": [asdict(c) for c in checks], "data": data}
    lines = [f"heller {__version__}: verify-paper {cfg.algebra} over F_{cfg.prime} (seed {cfg.seed})"]
    for c in checks:
        lines.append(f"{'PASS' if c.ok else 'FAIL'}  {c.name}: {c.detail}")
        lines.extend(f"      {d}" for d in c.diff)
    if "right_adjoint" in data:
        lines.append(f"right adjoint: {data['right_adjoint']}")
        lines.append(data["trace"])
    lines.append("all expected results reproduced" if ok else "MISMATCH against expected results")
    return (EXIT_OK if ok else EXIT_MISMATCH), _emit(report, cfg, lines)


def cmd_omega(cfg: RunConfig, args) -> tuple[int, str]:
    alg, cat = load_algebra(cfg)
    m = _input_module(args, alg, cat, cfg)
    pres = syzygy(m)
    errors = pres.check()
    if errors:
        raise LemmaFalsified("; ".join(errors))
    om = pres.omega
    summ = _summands(om, alg, cat, cfg.seed) if om.dim else {}
    report = _header(cfg, "omega") | {"module": m.name, "dim": m.dim, "omega_dim": om.dim,
                                      "omega_dim_vector": list(om.dim_vector),
                                      "cover_tops": [int(t) for t in pres.tops], "omega_summands": summ}
    lines = [f"Ω({m.name or 'M'}) = {fmt_counts(summ)}  (dim {om.dim}, cover tops {list(pres.tops)})"]
    return EXIT_OK, _emit(report, cfg, lines)


def cmd_sthom(cfg: RunConfig, args) -> tuple[int, str]:
    alg, cat = load_algebra(cfg)
    if args.matrix:
        cat = need_catalog(cat, "sthom --matrix")
        ctx = AdjointContext(cat)
        mat = hom_dim_matrix(cat, ctx) if args.twist == "none" else omega_twisted_matrix(cat, args.twist, ctx)
        report = _header(cfg, "sthom") | {"twist": args.twist, "matrix": mat.to_json()}
        width = max(len(lab) for lab in mat.labels)
        lines = [" " * width + " " + " ".join(f"{lab:>{width}}" for lab in mat.labels)]
        for lab, row in zip(mat.labels, mat.entries):
            lines.append(f"{lab:>{width}} " + " ".join(f"{int(x):>{width}}" for x in row))
        rows = [[""] + list(mat.labels)] + [[lab] + [int(x) for x in row] for lab, row in zip(mat.labels, mat.entries)]
        return EXIT_OK, _emit(report, cfg, lines, rows)
    if not args.module or not args.target:
        raise UserError("sthom needs --matrix, or both --module and --target")
    m = load_module(args.module, alg, cat)
    n = load_module(args.target, alg, cat)
    sh = stable_hom(m, n)
    report = _header(cfg, "sthom") | {"source": args.module, "target": args.target, "hom_dim": sh.total.dim,
                                      "projective_factoring_dim": sh.proj_dim, "stable_dim": sh.dim}
    lines = [f"dim Hom = {sh.total.dim}, projective-factoring = {sh.proj_dim}, stable = {sh.dim}"]
    return EXIT_OK, _emit(report, cfg, lines, [["hom_dim", "projective_factoring_dim", "stable_dim"],
                                               [sh.total.dim, sh.proj_dim, sh.dim]])


def _input_module(args, alg: BasedAlgebra, cat: Catalog | None, cfg: RunConfig) -> Module:
    if args.random:
        if args.module:
            raise UserError("give either --module or --random, not both")
        return random_module(alg, cfg.seed, args.max_dim)
    if not args.module:
        raise UserError("give --module LABEL|PATH or --random")
    return load_module(args.module, alg, cat)


def cmd_decompose(cfg: RunConfig, args) -> tuple[int, str]:
    alg, cat = load_algebra(cfg)
    m = _input_module(args, alg, cat, cfg)
    summ = _summands(m, alg, cat, cfg.seed)
    report = _header(cfg, "decompose") | {"module": m.name, "dim": m.dim, "dim_vector": list(m.dim_vector),
                                          "summands": summ}
    lines = [f"{m.name or 'M'} (dim {m.dim}) = {fmt_counts(summ)}"]
    return EXIT_OK, _emit(report, cfg, lines)


def cmd_left_adjoint(cfg: RunConfig, args) -> tuple[int, str]:
    _, cat = load_algebra(cfg)
    cat = need_catalog(cat, "left-adjoint")
    cert = find_left_adjoint(cat, cfg.max_eps_dim, cfg.seed, cfg.jobs)
    if cfg.emit_certificate:
        Path(cfg.emit_certificate).write_text(json.dumps(cert.to_json(), indent=1, sort_keys=True) + "\n")
    table = {}
    for lab in cat.labels:
        if lab in cert.entries:
            e = cert.entries[lab]
            table[lab] = {"S": cert.s_counts(lab),
                          "omega_S": _sorted_counts(stable_counts(e.presentation.omega, cat, cfg.seed), cat.labels)}
    report = _header(cfg, "left-adjoint") | {"ok": cert.ok, "table": table,
                                             "failures": sorted(cert.failures)}
    lines = [f"{'label':<5} {'S':<24} ΩS"]
    for lab in cat.labels:
        if lab in table:
            lines.append(f"{lab:<5} {fmt_counts(table[lab]['S']):<24} {fmt_counts(table[lab]['omega_S'])}")
        else:
            lines.append(f"{lab:<5} no left adjoint value found")
    return (EXIT_OK if cert.ok else EXIT_MISMATCH), _emit(report, cfg, lines)


def cmd_right_adjoint(cfg: RunConfig, args) -> tuple[int, str]:
    _, cat = load_algebra(cfg)
    cat = need_catalog(cat, "right-adjoint")
    rep = right_adjoint_obstruction(cat)
    verdict = "FEASIBLE" if rep.feasible else "INFEASIBLE"
    report = _header(cfg, "right-adjoint") | {
        "H": rep.H.to_json(), "H_prime": rep.H_prime.to_json(), "right_adjoint": verdict,
        "infeasible_columns": [t.column + 1 for t in rep.result.traces], "trace": rep.trace(cat.labels)}
    lines = [f"right adjoint: {verdict}"]
    if not rep.feasible:
        lines.append(rep.trace(cat.labels))
    else:
        lines.append("H U = H′ has a nonnegative solution; this does not prove a right adjoint exists")
    return EXIT_OK, _emit(report, cfg, lines)


COMMANDS = {
    "verify-paper": cmd_verify_paper,
    "omega": cmd_omega,
    "sthom": cmd_sthom,
    "decompose": cmd_decompose,
    "left-adjoint": cmd_left_adjoint,
    "right-adjoint": cmd_right_adjoint,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--algebra", default="A", help="builtin name (A, B, C1..C8) or algebra JSON path")
    common.add_argument("--prime", type=int, default=2)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--max-eps-dim", type=int, default=6)
    common.add_argument("--format", choices=("json", "csv", "pretty"), default="pretty")
    common.add_argument("--emit-certificate", metavar="PATH")
    common.add_argument("--module", help="catalog label (X1, P2, Y4, ...) or module JSON path")
    common.add_argument("--random", action="store_true", help="use a random module (seeded by --seed)")
    common.add_argument("--max-dim", type=int, default=12)

    parser = argparse.ArgumentParser(prog="heller", description="Stable module computations for triangle algebras.")
    parser.add_argument("--version", action="version", version=f"heller {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("verify-paper", parents=[common], help="reproduce every expected result for an algebra")
    sub.add_parser("omega", parents=[common], help="syzygy of a module, identified in the catalog")
    sp = sub.add_parser("sthom", parents=[common], help="stable Hom dimensions")
    sp.add_argument("--target", help="second module for a single dimension")
    sp.add_argument("--matrix", action="store_true", help="the catalog matrix of stable Hom dimensions")
    sp.add_argument("--twist", choices=("none", "left", "right"), default="none",
                    help="left: dim stHom(X_r, ΩX_k); right: dim stHom(ΩX_r, X_k)")
    sub.add_parser("decompose", parents=[common], help="Krull-Schmidt decomposition into catalog labels")
    sub.add_parser("left-adjoint", parents=[common], help="search the left adjoint of Ω on the catalog")
    sub.add_parser("right-adjoint", parents=[common], help="nonnegative-integer obstruction to a right adjoint")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USER if exc.code else EXIT_OK
    cfg = RunConfig(args.algebra, args.prime, args.seed, args.jobs, args.max_eps_dim, args.format,
                    args.emit_certificate)
    try:
        cfg.validate()
        code, text = COMMANDS[args.command](cfg, args)
    except (UserError, UnknownSummand) as exc:
        print(f"heller: error: {exc}", file=sys.stderr)
        return EXIT_USER
    except (LemmaFalsified, AssertionError) as exc:
        print(f"heller: internal invariant violated: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())

"""
Command-line interface: ``horizon {catalog,decompose,verify,gate,vqe}``.

Exit codes: 0 success, 2 verification failure, 3 input error, 4 runtime error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .algebra import _joint_kernel, is_ad_invariant
from .errors import HorizonError, NotSubalgebra, ParamLengthMismatch, UnknownSpace
from .gates import (
    gate_catalog,
    gate_unitary,
    kak_circuit_unitary,
    kak_gate_spec,
    r3,
    vatan_coefficients,
)
from .linalg import DEFAULT_TOL, expm_skew, logm_unitary
from .pauli import pauli_matrix
from .serialize import SCHEMA_VERSION, decomposition_to_json, load_generators
from .spaces import custom_space, homogeneous_space, space_ids

EXIT_OK, EXIT_VERIFY, EXIT_INPUT, EXIT_RUNTIME = 0, 2, 3, 4


class InputError(Exception):
    pass


def _floats(text: str | None) -> np.ndarray | None:
    if text is None:
        return None
    try:
        return np.array([float(t) for t in text.replace(";", ",").split(",") if t.strip()])
    except ValueError as exc:
        raise InputError(f"cannot parse numbers from {text!r}") from exc


def _emit(args, doc: dict, text: str, name: str):
    if getattr(args, "out_dir", None):
        out = Path(args.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        (out / f"{name}.json").write_text(json.dumps(doc, indent=2, default=float) + "\n")
    print(json.dumps(doc, indent=2, default=float) if args.json else text)


def _config_echo(args) -> dict:
    skip = {"func", "json"}
    return {k: v for k, v in vars(args).items() if k not in skip}


# ------------------------------------------------------------------- catalog

def cmd_catalog(args) -> int:
    rows = []
    for sid in space_ids():
        sp = homogeneous_space(sid)
        gate = gate_catalog(sid)
        rows.append({
            "space_id": sid,
            "title": sp.spec.title,
            "aliases": list(sp.spec.aliases),
            "dims": list(sp.decomposition.dims),
            "symmetric": sp.spec.symmetric,
            "gate_kind": gate.kind,
            "param_count": gate.param_count,
        })
    text = "\n".join(
        f"{r['space_id']:<28}{r['title']:<24}dims={tuple(r['dims'])!s:<16}params={r['param_count']:<4}"
        f"{'symmetric' if r['symmetric'] else ''}"
        for r in rows
    )
    _emit(args, {"schema_version": SCHEMA_VERSION, "config": _config_echo(args), "spaces": rows}, text, "catalog")
    return EXIT_OK


# ----------------------------------------------------------------- decompose

def _resolve_space(args):
    if args.g_file or args.k_file:
        if not (args.g_file and args.k_file):
            raise InputError("--g-file and --k-file go together")
        try:
            g_mats = load_generators(args.g_file)
            k_mats = load_generators(args.k_file)
        except (OSError, ValueError, KeyError, TypeError) as exc:
            raise InputError(f"cannot read generator files: {exc}") from exc
        return custom_space(g_mats, k_mats)
    sid = args.space_pos or args.space
    if not sid:
        raise InputError("give a space id or --g-file/--k-file")
    return homogeneous_space(sid)


def cmd_decompose(args) -> int:
    space = _resolve_space(args)
    dec = space.decomposition
    doc = decomposition_to_json(dec, include_bases=args.bases)
    doc["space_id"] = space.space_id
    doc["config"] = _config_echo(args)
    lines = [f"{space.spec.title}: dim g = {dec.ambient.dim}, dims (r, gk_o, z_k, k_o) = {dec.dims}"]
    for name in ("r", "gk_o", "z_k", "k_o"):
        labels = getattr(dec, name).labels()
        lines.append(f"  {name:<5}[{len(labels)}] " + ", ".join(labels))
    lines.append("  residuals: " + ", ".join(f"{k}={v:.2e}" for k, v in dec.residuals.items()))
    _emit(args, doc, "\n".join(lines), "decompose")
    return EXIT_OK


# -------------------------------------------------------------------- verify

def verify_space(space_id: str, seed: int = 0, tol: float = 1e-8) -> dict:
    """Closure, Ad-invariance, symmetric-space and Cartan checks for one catalog space."""
    space = homogeneous_space(space_id)
    rng = np.random.default_rng(seed)
    rep = space.symmetric_report()
    checks = {}
    checks["kk_in_k"] = {"residual": rep.kk_residual, "pass": rep.kk_residual < tol}
    checks["km_in_m"] = {"residual": rep.km_residual, "pass": rep.km_residual < tol}
    if space.spec.symmetric:
        checks["mm_in_k"] = {"residual": rep.mm_residual, "pass": rep.mm_residual < tol}
    else:
        checks["mm_in_k"] = {"residual": rep.mm_residual, "pass": None,
                             "status": "not applicable (homogeneous, not symmetric)"}
    worst = 0.0
    for _ in range(3):
        if space.k.dim:
            ksample = expm_skew(space.k.ambient.combine(rng.normal(size=space.k.dim) @ space.k.coords))
        else:
            ksample = np.eye(space.g.ambient_dim)
        worst = max(worst, is_ad_invariant(ksample, space.m)[1])
    checks["ad_invariance"] = {"residual": worst, "pass": worst < tol}
    if space.spec.symmetric and space.m.dim:
        h = space.cartan_subalgebra()
        hm = h.matrices()
        abel = max((np.linalg.norm(a @ b - b @ a) for a in hm for b in hm), default=0.0)
        centralizer = _joint_kernel(space.m.matrices(), hm, DEFAULT_TOL).shape[0]
        checks["cartan"] = {
            "dim_h": h.dim,
            "labels": h.labels(),
            "abelian_residual": float(abel),
            "centralizer_in_m": int(centralizer),
            "pass": bool(abel < tol and centralizer == h.dim),
        }
    gate = gate_catalog(space.space_id)
    if gate.kind in ("horizontal", "stabilizer"):
        # small angles keep logm on the principal branch
        theta = rng.normal(size=gate.param_count) * 0.2
        res = float(space.m.residual(logm_unitary(gate_unitary(gate, theta))))
        checks["gate_in_exp_m"] = {"residual": res, "pass": res < tol}
    ok = all(c["pass"] is not False for c in checks.values())
    return {"space_id": space.space_id, "symmetric": space.spec.symmetric, "checks": checks, "pass": ok}


def cmd_verify(args) -> int:
    sid = args.space_pos or args.space
    if not sid:
        raise InputError("give a space id")
    report = verify_space(sid, seed=args.seed or 0)
    report["schema_version"] = SCHEMA_VERSION
    report["config"] = _config_echo(args)
    lines = [f"verify {report['space_id']}: {'PASS' if report['pass'] else 'FAIL'}"]
    for name, c in report["checks"].items():
        status = c.get("status") or ("pass" if c["pass"] else "FAIL")
        extra = f" residual={c['residual']:.2e}" if "residual" in c else ""
        if name == "cartan":
            extra = f" dim h={c['dim_h']} ({', '.join(c['labels'])})"
        lines.append(f"  {name:<15}{status}{extra}")
    _emit(args, report, "\n".join(lines), "verify")
    return EXIT_OK if report["pass"] else EXIT_VERIFY


# ---------------------------------------------------------------------- gate

def _fmt_matrix(U) -> str:
    rows = []
    for row in np.asarray(U):
        rows.append("  " + "  ".join(f"{z.real:+.4f}{z.imag:+.4f}j" for z in row))
    return "\n".join(rows)


def _phase_distance(A, B) -> float:
    z = np.vdot(B.ravel(), A.ravel())
    return float(np.abs(A - B * (z / abs(z) if abs(z) > 0 else 1)).max())


def cmd_gate(args) -> int:
    sid = args.space_pos or args.space
    if not sid:
        raise InputError("give a space id")
    rng = np.random.default_rng(args.random if args.random is not None else args.seed)
    doc = {"schema_version": SCHEMA_VERSION, "config": _config_echo(args)}
    if args.kak:
        space = homogeneous_space(sid)
        alpha, phi = _floats(args.alpha), _floats(args.phi)
        if space.space_id == "su4/su2xsu2":
            alpha = rng.normal(size=6) if alpha is None else alpha
            phi = rng.normal(size=3) if phi is None else phi
            if alpha.size != 6 or phi.size != 3:
                raise ParamLengthMismatch("the two-qubit circuit takes 6 alpha and 3 phi values")
            U = kak_circuit_unitary(alpha[:3], alpha[3:], phi)
            K = np.kron(r3(*alpha[:3]), r3(*alpha[3:]))
            c = vatan_coefficients(phi)
            ref = K.conj().T @ expm_skew(1j * sum(ci * pauli_matrix(w) for ci, w in zip(c, ("XX", "YY", "ZZ")))) @ K
            doc["kak_equality_error"] = _phase_distance(U, ref)
            doc["h_coefficients"] = c.tolist()
            param_count = 9
        else:
            spec = kak_gate_spec(space.space_id)
            nk = len(spec.extra["k_generators"])
            alpha = rng.normal(size=nk) if alpha is None else alpha
            phi = rng.normal(size=spec.param_count - nk) if phi is None else phi
            U = gate_unitary(spec, np.concatenate([alpha, phi]))
            param_count = spec.param_count
        doc.update(kind="kak", space_id=space.space_id, alpha=alpha.tolist(), phi=phi.tolist())
    else:
        spec = gate_catalog(sid, args.kind)
        theta = _floats(args.theta)
        if theta is None:
            theta = rng.normal(size=spec.param_count) * 0.5
        U = gate_unitary(spec, theta)
        space = homogeneous_space(spec.space_id)
        param_count = spec.param_count
        doc.update(spec.to_json(theta))
    res = float(space.m.residual(logm_unitary(U))) if space.m.dim else 0.0
    doc.update(param_count=param_count, m_residual=res, unitary=[np.real(U).tolist(), np.imag(U).tolist()])
    text = [f"{space.spec.title} gate, {param_count} parameters", _fmt_matrix(U), f"logm residual outside m: {res:.3e}"]
    ok = True
    if "kak_equality_error" in doc:
        ok = doc["kak_equality_error"] < 1e-9
        text.append(f"circuit vs K^dag exp(h) K (up to phase): {doc['kak_equality_error']:.3e} {'pass' if ok else 'FAIL'}")
    _emit(args, doc, "\n".join(text), "gate")
    return EXIT_OK if ok else EXIT_VERIFY


# ----------------------------------------------------------------------- vqe

_VQE_FLAGS = {
    "nq": "n_qubits",
    "depth": "depth",
    "space": "gate",
    "boundary": "boundary",
    "hamiltonian": "hamiltonian",
    "init": "initial_state",
    "compare": "compare_gate",
}
_OPT_FLAGS = {"optimizer": "algorithm", "lr": "learning_rate", "iters": "max_iters", "seed": "seed"}


def _vqe_config(args):
    from .vqe import ExperimentConfig

    base = {}
    if args.config:
        with open(args.config) as fh:
            base = json.load(fh)
        if not isinstance(base, dict):
            raise ValueError("config file must hold a JSON object")
        # a previous record.json can be reused as a config
        base = dict(base.get("config", base))
    for flag, key in _VQE_FLAGS.items():
        val = getattr(args, flag, None)
        if val is not None:
            base[key] = val
    opt = dict(base.get("optimizer", {}))
    for flag, key in _OPT_FLAGS.items():
        val = getattr(args, flag, None)
        if val is not None:
            opt[key] = val
    base["optimizer"] = opt
    if args.seed is not None and base.get("hamiltonian_seed") is None:
        base["hamiltonian_seed"] = args.seed
    if args.track_spin:
        base["track_spin"] = True
    return ExperimentConfig.from_dict(base)


def _write_run(out: Path, rec, label: str, plot: bool):
    from .plot import trajectory_svg

    out.mkdir(parents=True, exist_ok=True)
    (out / "record.json").write_text(json.dumps(rec.to_json(), indent=2) + "\n")
    (out / "trajectory.csv").write_text(rec.to_csv())
    if plot:
        (out / "plot.svg").write_text(trajectory_svg({label: rec}))


def cmd_vqe(args) -> int:
    from .plot import trajectory_svg
    from .vqe import ExperimentConfig, RunRecord, compare_experiment, run_experiment, run_many

    cfg = _vqe_config(args)
    out = Path(args.out_dir or "vqe_out")
    if args.sweep:
        seeds = [int(s) for s in args.sweep.split(",") if s.strip()]
        cfgs = []
        for s in seeds:
            d = cfg.to_dict()
            d["optimizer"] = {**d["optimizer"], "seed": s}
            d["hamiltonian_seed"] = s
            cfgs.append(ExperimentConfig.from_dict(d))
        docs = run_many(cfgs, workers=args.workers)
        summary = []
        for s, doc in zip(seeds, docs):
            rec = RunRecord(**{k: doc[k] for k in RunRecord.__dataclass_fields__})
            _write_run(out / f"seed_{s}", rec, cfg.gate, not args.no_plot)
            summary.append({"seed": s, "final_delta_e": doc["final_delta_e"], "final_energy": doc["final_energy"]})
        doc = {"schema_version": SCHEMA_VERSION, "config": cfg.to_dict(), "runs": summary}
        (out / "sweep.json").write_text(json.dumps(doc, indent=2) + "\n")
        print(json.dumps(doc, indent=2) if args.json else "\n".join(f"seed {r['seed']}: final dE = {r['final_delta_e']:.3e}" for r in summary))
        return EXIT_OK
    if cfg.compare_gate:
        comp = compare_experiment(cfg, cfg.gate, cfg.compare_gate)
        _write_run(out / "a", comp.run_a, cfg.gate, False)
        _write_run(out / "b", comp.run_b, cfg.compare_gate, False)
        doc = comp.to_json()
        doc["config"] = cfg.to_dict()
        (out / "comparison.json").write_text(json.dumps(doc, indent=2) + "\n")
        if not args.no_plot:
            (out / "plot.svg").write_text(trajectory_svg({cfg.gate: comp.run_a, cfg.compare_gate: comp.run_b}))
        text = (f"Ebar {cfg.gate} = {comp.ebar_a:.4e}, Ebar {cfg.compare_gate} = {comp.ebar_b:.4e}, "
                f"delta Ebar final = {comp.delta_ebar_final:+.4e}")
        summary = {k: doc[k] for k in ("gate_a", "gate_b", "ebar_a", "ebar_b", "delta_ebar_final")}
        print(json.dumps(summary, indent=2) if args.json else text)
        return EXIT_OK
    rec = run_experiment(cfg)
    _write_run(out, rec, cfg.gate, not args.no_plot)
    text = (f"{cfg.gate} on {cfg.hamiltonian} (n={cfg.n_qubits}, L={cfg.depth}): "
            f"{len(rec.energy)} iterations, final dE = {rec.final_delta_e:.3e} ({rec.stop_reason})")
    print(json.dumps({"final_delta_e": rec.final_delta_e, "iterations": len(rec.energy), "out_dir": str(out)}) if args.json else text)
    return EXIT_OK


# ---------------------------------------------------------------------- main

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="horizon", description="Horizontal gates from Lie algebra decompositions.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, space=True):
        sp.add_argument("--json", action="store_true", help="print JSON instead of text")
        sp.add_argument("--out-dir", help="also write the JSON report here")
        sp.add_argument("--seed", type=int)
        if space:
            sp.add_argument("space_pos", nargs="?", metavar="SPACE")
            sp.add_argument("--space")

    sp = sub.add_parser("catalog", help="list the known spaces")
    common(sp, space=False)
    sp.set_defaults(func=cmd_catalog)

    sp = sub.add_parser("decompose", help="r + gk_o + z(k) + k_o decomposition")
    common(sp)
    sp.add_argument("--g-file")
    sp.add_argument("--k-file")
    sp.add_argument("--bases", action="store_true", help="include dense bases in the JSON")
    sp.set_defaults(func=cmd_decompose)

    sp = sub.add_parser("verify", help="check the algebraic invariants of a space")
    common(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("gate", help="evaluate a gate")
    common(sp)
    sp.add_argument("--theta")
    sp.add_argument("--random", type=int, metavar="SEED")
    sp.add_argument("--kind")
    sp.add_argument("--kak", action="store_true")
    sp.add_argument("--alpha")
    sp.add_argument("--phi")
    sp.set_defaults(func=cmd_gate)

    sp = sub.add_parser("vqe", help="run a variational optimization")
    sp.add_argument("config", nargs="?", help="JSON experiment config")
    sp.add_argument("--config", dest="config_flag")
    sp.add_argument("--json", action="store_true")
    sp.add_argument("--out-dir")
    sp.add_argument("--seed", type=int)
    sp.add_argument("--space", help="gate id for the bricklayer blocks")
    sp.add_argument("--compare", help="second gate id for a paired run")
    sp.add_argument("--hamiltonian", choices=("heisenberg_uniform", "heisenberg_random", "gue", "goe"))
    sp.add_argument("--init")
    sp.add_argument("--boundary", choices=("open", "periodic"))
    sp.add_argument("--nq", type=int)
    sp.add_argument("--depth", type=int)
    sp.add_argument("--optimizer", choices=("adam", "gradient_descent"))
    sp.add_argument("--lr", type=float)
    sp.add_argument("--iters", type=int)
    sp.add_argument("--track-spin", action="store_true")
    sp.add_argument("--sweep", help="comma-separated seeds, run in parallel")
    sp.add_argument("--workers", type=int)
    sp.add_argument("--no-plot", action="store_true")
    sp.set_defaults(func=cmd_vqe)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code not in (0, None) else EXIT_OK
    if args.command == "vqe":
        args.config = args.config or args.config_flag
    try:
        return args.func(args)
    except NotSubalgebra as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except (InputError, UnknownSpace, ParamLengthMismatch) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except Exception as exc:  # noqa: BLE001
        if args.command != "vqe" and isinstance(exc, (HorizonError, ValueError, OSError, json.JSONDecodeError)):
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_INPUT
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())

"""Command-line entry point.

Subcommands: csd, qsp {eval, synth, complete}, qsvt {encode, verify},
cheb {series, degree}, approx, lowerbound, suite.  All matrix/polynomial
I/O uses the JSON formats from qsvtkit.serialize; sweeps emit CSV.

Exit codes: 0 success, 2 validation/usage errors, 3 tolerance violations.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys

import numpy as np

from . import acceptance, bounded, chebyshev, csd, degree_bounds, qsp, qsvt, serialize
from .config import DEFAULT_CONFIG, Config, load_config, with_overrides
from .errors import QsvtkitError, ValidationError

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_TOLERANCE = 3


def _read_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError as exc:
        raise ValidationError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path}:{exc.lineno}:{exc.colno}: malformed JSON: {exc.msg}") from exc


def _maybe_inline_json(text: str):
    """Accept either a file path or literal JSON (starts with [ or {)."""
    stripped = text.strip()
    if stripped.startswith("[") or stripped.startswith("{"):
        try:
            return json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"inline JSON: {exc.msg} at col {exc.colno}") from exc
    return _read_json(text)


def _write_artifact(path: str | None, obj) -> None:
    text = serialize.dumps(obj)
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _config_from_args(args) -> Config:
    cfg = load_config(args.config) if getattr(args, "config", None) else DEFAULT_CONFIG
    if getattr(args, "seed", None) is not None:
        cfg = with_overrides(cfg, seed=args.seed)
    return cfg


def _cmd_csd(args) -> int:
    cfg = _config_from_args(args)
    u = serialize.matrix_from_json(_maybe_inline_json(args.input))
    dec = csd.cs_decompose(u, args.r1, args.c1, cfg.tolerances)
    payload = serialize.csd_to_json(dec)
    payload["reconstruction_residual"] = dec.reconstruction_residual(u)
    _write_artifact(args.out, payload)
    if payload["reconstruction_residual"] > cfg.tolerances.residual_tol:
        print(
            f"residual {payload['reconstruction_residual']:.3e} exceeds "
            f"{cfg.tolerances.residual_tol:.3e}",
            file=sys.stderr,
        )
        return EXIT_TOLERANCE
    return EXIT_OK


def _cmd_qsp_eval(args) -> int:
    phi = serialize.phases_from_json(_maybe_inline_json(args.phi))
    m = qsp.qsp_eval(phi, args.x)
    _write_artifact(args.out, serialize.matrix_to_json(m))
    return EXIT_OK


def _load_pair(args) -> qsp.QspPair:
    p = serialize.polynomial_from_json(_maybe_inline_json(args.p))
    if args.q:
        q = serialize.polynomial_from_json(_maybe_inline_json(args.q))
    else:
        q = qsp.ComplexPolynomial(np.zeros(0, dtype=complex))
    return qsp.QspPair(p, q)


def _cmd_qsp_synth(args) -> int:
    pair = _load_pair(args)
    phi = qsp.synthesize_phases(pair)
    _write_artifact(args.out, serialize.phases_to_json(phi))
    return EXIT_OK


def _cmd_qsp_complete(args) -> int:
    p = serialize.polynomial_from_json(_maybe_inline_json(args.p))
    q_coeffs = np.zeros(0)
    if args.q:
        q_coeffs = serialize.polynomial_from_json(_maybe_inline_json(args.q)).coeffs.real
    pair = qsp.complete_real(p.coeffs.real, q_coeffs)
    _write_artifact(args.out, serialize.pair_to_json(pair))
    return EXIT_OK


def _cmd_qsvt_encode(args) -> int:
    cfg = _config_from_args(args)
    a = serialize.matrix_from_json(_maybe_inline_json(args.input))
    be = qsvt.block_encode(a, cfg.tolerances)
    payload = {
        "u": serialize.matrix_to_json(be.u),
        "r": a.shape[0],
        "c": a.shape[1],
    }
    _write_artifact(args.out, payload)
    return EXIT_OK


def _cmd_qsvt_verify(args) -> int:
    cfg = _config_from_args(args)
    u = serialize.matrix_from_json(_maybe_inline_json(args.encoding))
    phi = serialize.phases_from_json(_maybe_inline_json(args.phi))
    dim = u.shape[0]
    if not (0 <= args.r1 <= dim and 0 <= args.c1 <= dim):
        raise ValidationError("r1/c1 out of range")
    be = qsvt.BlockEncoding(u, np.eye(dim, args.r1, dtype=complex), np.eye(dim, args.c1, dtype=complex))
    report = qsvt.verify_qsvt(be, phi, cfg.tolerances)
    _write_artifact(
        args.out,
        {
            "residual": report.residual,
            "parity": report.parity,
            "degree": report.degree,
            "unitarity_defect": report.unitarity_defect,
        },
    )
    return EXIT_OK


def _cmd_cheb_series(args) -> int:
    cfg = _config_from_args(args)
    fn = _named_function(args.fn, args.t)
    if args.method == "interpolant":
        series = chebyshev.series_from_interpolant(fn, args.degree)
    else:
        series = chebyshev.series_from_quadrature(fn, args.degree, cfg.quadrature_factor)
    _write_artifact(args.out, serialize.polynomial_to_json(series, basis="chebyshev"))
    return EXIT_OK


def _cmd_cheb_degree(args) -> int:
    if args.fn != "exp":
        raise ValidationError("degree formulas are implemented for --fn exp")
    n = chebyshev.exp_truncation_degree(args.t, args.eps)
    _write_artifact(args.out, {"fn": args.fn, "t": args.t, "eps": args.eps, "degree": n})
    return EXIT_OK


def _named_function(name: str, t: float):
    if name == "exp":
        return lambda x: np.exp(t * np.asarray(x, dtype=float))
    if name == "cos":
        return lambda x: np.cos(t * np.asarray(x, dtype=float))
    if name == "sin":
        return lambda x: np.sin(t * np.asarray(x, dtype=float))
    if name == "abs":
        return lambda x: np.abs(np.asarray(x, dtype=float))
    raise ValidationError(f"unknown function {name!r}")


def _parse_params(text: str | None) -> dict:
    out = {}
    if not text:
        return out
    for part in text.split(","):
        if not part.strip():
            continue
        if "=" not in part:
            raise ValidationError(f"expected key=value in --params, got {part!r}")
        key, value = part.split("=", 1)
        out[key.strip()] = float(value)
    return out


def _build_certificate(target: str, eps: float, params: dict, cfg: Config):
    if target == "exp":
        return bounded.approx_exp_bounded(params.get("beta", 10.0), eps, cfg)
    if target == "arcsin":
        return bounded.approx_arcsin(params.get("delta", 0.1), eps, cfg)
    if target == "trig-arcsin":
        even, odd = bounded.approx_trig_arcsin(params.get("t", 1.0), eps, cfg)
        return even if params.get("kind", 0.0) == 0.0 else odd
    if target == "neg-power":
        parity = "odd" if params.get("odd", 1.0) else "even"
        return bounded.approx_neg_power(
            params.get("c", 1.0), params.get("delta", 0.1), eps, parity, cfg
        )
    if target == "sign":
        return bounded.approx_sign(params.get("delta", 0.1), eps, cfg)
    raise ValidationError(f"unknown target {target!r}")


def _formula_kwargs(target: str, eps: float, params: dict) -> dict:
    kw = {"eps": eps}
    if target == "exp":
        kw["beta"] = params.get("beta", 10.0)
    elif target in ("arcsin", "sign"):
        kw["delta"] = params.get("delta", 0.1)
    elif target == "neg-power":
        kw["delta"] = params.get("delta", 0.1)
        kw["c"] = params.get("c", 1.0)
    return kw


def emit_sweep(target: str, sweep_key: str, sweep_values, eps: float, base_params: dict,
               out_path: str, config: Config | None = None) -> list[dict]:
    """Run a certificate per sweep value and write the CSV table.

    Columns: the swept parameter, formula_degree, achieved_degree, and the
    three measured sup-norms.  Returns the row dicts.
    """
    cfg = config or DEFAULT_CONFIG
    rows = []
    for value in sweep_values:
        params = dict(base_params)
        eps_val = eps
        if sweep_key == "eps":
            eps_val = value
        else:
            params[sweep_key] = value
        cert = _build_certificate(target, eps_val, params, cfg)
        formula = bounded.formula_degree(target, **_formula_kwargs(target, eps_val, params))
        rows.append(
            {
                sweep_key: value,
                "formula_degree": formula,
                "achieved_degree": cert.degree,
                "sup_inner": cert.sup_inner,
                "sup_bounded": cert.sup_bounded,
                "sup_outer": cert.sup_outer,
            }
        )
    fieldnames = [sweep_key, "formula_degree", "achieved_degree", "sup_inner", "sup_bounded", "sup_outer"]
    with open(out_path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.DictWriter(fh, fieldnames=fieldnames)
        writer.writeheader()
        for row in rows:
            writer.writerow(row)
    return rows


def _cmd_approx(args) -> int:
    cfg = _config_from_args(args)
    params = _parse_params(args.params)
    if args.sweep:
        if "=" not in args.sweep:
            raise ValidationError("--sweep expects key=v1,v2,...")
        key, values_text = args.sweep.split("=", 1)
        values = [float(v) for v in values_text.split(",") if v.strip()]
        if not args.csv:
            raise ValidationError("--sweep requires --csv PATH")
        emit_sweep(args.target, key.strip(), values, args.eps, params, args.csv, cfg)
        return EXIT_OK
    cert = _build_certificate(args.target, args.eps, params, cfg)
    _write_artifact(args.out, serialize.certificate_to_json(cert))
    return EXIT_OK if cert.passes() else EXIT_TOLERANCE


def _cmd_lowerbound(args) -> int:
    if args.kind != "exp-separation":
        raise ValidationError(f"unknown lower bound {args.kind!r}")
    report = degree_bounds.exp_separation(args.beta, args.delta)
    _write_artifact(
        args.out,
        {"bound": report.bound, "witness": list(report.witness), "params": report.params},
    )
    return EXIT_OK


def _cmd_suite(args) -> int:
    cfg = _config_from_args(args)
    results = acceptance.run_all(quick=args.quick, config=cfg)
    failed = [r for r in results if not r.passed]
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        print(f"[{status}] {r.name} ({r.elapsed:.1f}s): {r.detail}")
    if failed:
        return EXIT_TOLERANCE
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qsvtkit",
        description="Cosine-Sine decompositions, QSP phase synthesis, QSVT "
        "verification, and certified bounded Chebyshev approximations.",
    )
    parser.add_argument("--config", help="path to a key = value config file")
    parser.add_argument("--seed", type=int, help="override the configured seed")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("csd", help="cosine-sine decomposition of a partitioned unitary")
    p.add_argument("--input", required=True, help="matrix JSON (file or inline)")
    p.add_argument("--r1", type=int, required=True)
    p.add_argument("--c1", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_csd)

    p = sub.add_parser("qsp", help="quantum signal processing")
    qsp_sub = p.add_subparsers(dest="subcommand", required=True)
    pe = qsp_sub.add_parser("eval", help="evaluate the 2x2 circuit at a point")
    pe.add_argument("--phi", required=True, help="phases JSON (file or inline)")
    pe.add_argument("--x", type=float, required=True)
    pe.add_argument("--out")
    pe.set_defaults(func=_cmd_qsp_eval)
    ps = qsp_sub.add_parser("synth", help="synthesize phase factors from a pair")
    ps.add_argument("--p", required=True, help="polynomial JSON")
    ps.add_argument("--q", help="polynomial JSON (default: zero)")
    ps.add_argument("--out")
    ps.set_defaults(func=_cmd_qsp_synth)
    pc = qsp_sub.add_parser("complete", help="complete real polynomials to an achievable pair")
    pc.add_argument("--p", required=True)
    pc.add_argument("--q")
    pc.add_argument("--out")
    pc.set_defaults(func=_cmd_qsp_complete)

    p = sub.add_parser("qsvt", help="block encodings and the lifting theorem")
    qsvt_sub = p.add_subparsers(dest="subcommand", required=True)
    pe = qsvt_sub.add_parser("encode", help="unitary dilation of a contraction")
    pe.add_argument("--input", required=True)
    pe.add_argument("--out")
    pe.set_defaults(func=_cmd_qsvt_encode)
    pv = qsvt_sub.add_parser("verify", help="verify the singular value transformation")
    pv.add_argument("--encoding", required=True, help="unitary matrix JSON")
    pv.add_argument("--r1", type=int, required=True)
    pv.add_argument("--c1", type=int, required=True)
    pv.add_argument("--phi", required=True)
    pv.add_argument("--out")
    pv.set_defaults(func=_cmd_qsvt_verify)

    p = sub.add_parser("cheb", help="Chebyshev series and truncation degrees")
    cheb_sub = p.add_subparsers(dest="subcommand", required=True)
    pseries = cheb_sub.add_parser("series", help="build a series for a named function")
    pseries = series
    pseries.add_argument("--fn", required=True, choices=["exp", "cos", "sin", "abs"])
    pseries.add_argument("--t", type=float, default=1.0)
    pseries.add_argument("--degree", type=int, required=True)
    pseries.add_argument("--method", choices=["interpolant", "quadrature"], default="quadrature")
    pseries.add_argument("--out")
    pseries.set_defaults(func=_cmd_cheb_series)
    pdeg = cheb_sub.add_parser("degree", help="truncation degree formulas")
    pdeg.add_argument("--fn", required=True, choices=["exp"])
    pdeg.add_argument("--t", type=float, required=True)
    pdeg.add_argument("--eps", type=float, required=True)
    pdeg.add_argument("--out")
    pdeg.set_defaults(func=_cmd_cheb_degree)

    p = sub.add_parser("approx", help="bounded polynomial approximation certificates")
    p.add_argument(
        "--target",
        required=True,
        choices=["exp", "arcsin", "trig-arcsin", "neg-power", "sign"],
    )
    p.add_argument("--params", help="comma-separated key=value list (beta, delta, c, t, ...)")
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--sweep", help="key=v1,v2,... sweep one parameter (writes CSV)")
    p.add_argument("--csv", help="CSV output path for sweeps")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_approx)

    p = sub.add_parser("lowerbound", help="degree lower bounds")
    p.add_argument("kind", choices=["exp-separation"])
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--delta", type=float, required=True)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_lowerbound)

    p = sub.add_parser("suite", help="run the acceptance suite")
    p.add_argument("--quick", action="store_true", help="reduced instance counts")
    p.set_defaults(func=_cmd_suite)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_VALIDATION if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except QsvtkitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_TOLERANCE


if __name__ == "__main__":
    sys.exit(main())

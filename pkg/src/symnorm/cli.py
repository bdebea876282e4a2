"""Command-line front end.

Exit codes: 0 when the checked claim is verified, 1 when it is violated (the
report carries the margins), 2 for usage or input errors.  Reports go to
stdout as JSON (keys in a fixed order, floats printed with 17 significant
digits) or as aligned text with ``--format text``.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import sys
from typing import Optional

import numpy as np

from . import matrixfile
from .blocks import BlockMatrix, Mode, check_loewner_facts, lemma_decompose, reconstruction_error
from .counterexamples import (
    FamilySpec,
    build_family,
    det_commuting_blocks,
    example_Ny,
    example_T,
    quadratic_eigs,
    search_psd_violations,
    verify_violation,
)
from .errors import BlocksDoNotCommute, HypothesisNotMet, SymNormError
from .inequalities import check_main_inequality, factor_two_bound, hermitio_reduce
from .norms import ky_fan_profile
from .numkernel import adjoint, det, eigvalsh, frob, is_psd

EXIT_OK, EXIT_VIOLATED, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# ---------------------------------------------------------------- output


def _fmt_float(x: float) -> str:
    if not math.isfinite(x):
        raise ValueError(f"non-finite number {x!r} in report")
    return format(x, ".17g")


def _is_scalar(v) -> bool:
    return not isinstance(v, (list, tuple, dict, np.ndarray))


def _is_flat(v) -> bool:
    # scalars and short scalar lists (e.g. [re, im]) stay on one line
    if isinstance(v, (complex, np.complexfloating)):
        return True
    if isinstance(v, (list, tuple)):
        return len(v) <= 2 and all(_is_scalar(x) for x in v)
    return _is_scalar(v)


def to_json(obj, indent: int = 0) -> str:
    """Deterministic JSON: dict order preserved, floats as ``%.17g``."""
    pad = "  " * (indent + 1)
    end = "  " * indent
    if obj is None:
        return "null"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _fmt_float(float(obj))
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return to_json([float(obj.real), float(obj.imag)], indent)
    if isinstance(obj, np.ndarray):
        return to_json(obj.tolist(), indent)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        if all(_is_scalar(v) for v in obj.values()):
            return "{" + ", ".join(f"{json.dumps(str(k))}: {to_json(v)}" for k, v in obj.items()) + "}"
        items = [f"{pad}{json.dumps(str(k))}: {to_json(v, indent + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(_is_flat(v) for v in obj):
            return "[" + ", ".join(to_json(v, indent + 1) for v in obj) + "]"
        return "[\n" + ",\n".join(pad + to_json(v, indent + 1) for v in obj) + "\n" + end + "]"
    raise TypeError(f"cannot encode {type(obj).__name__}")


def _text_value(v) -> str:
    if isinstance(v, (float, np.floating)):
        return _fmt_float(float(v))
    if isinstance(v, (list, tuple, np.ndarray)):
        return "[" + ", ".join(_text_value(x) for x in v) + "]"
    if isinstance(v, (complex, np.complexfloating)):
        return f"{_fmt_float(v.real)}{'+' if v.imag >= 0 else '-'}{_fmt_float(abs(v.imag))}i"
    if v is None:
        return "-"
    return str(v)


def to_text(report: dict) -> str:
    lines = []
    width = max(len(k) for k in report)
    for key, value in report.items():
        if key == "margin_table" and value:
            lines.append(f"{key}:")
            cols = list(value[0])
            cells = [[_text_value(row[c]) for c in cols] for row in value]
            widths = [max(len(c), *(len(r[i]) for r in cells)) for i, c in enumerate(cols)]
            lines.append("  " + "  ".join(c.rjust(w) for c, w in zip(cols, widths)))
            for r in cells:
                lines.append("  " + "  ".join(x.rjust(w) for x, w in zip(r, widths)))
        elif isinstance(value, dict):
            lines.append(f"{key}:")
            sub = max((len(k) for k in value), default=0)
            for k, v in value.items():
                lines.append(f"  {k.ljust(sub)}  {_text_value(v)}")
        elif isinstance(value, list) and value and all(isinstance(v, dict) for v in value):
            lines.append(f"{key}:")
            for i, item in enumerate(value):
                lines.append(f"  [{i}]")
                sub = max(len(k) for k in item)
                for k, v in item.items():
                    shown = "(block matrix, see JSON output)" if isinstance(v, dict) else _text_value(v)
                    lines.append(f"    {k.ljust(sub)}  {shown}")
        else:
            lines.append(f"{key.ljust(width)}  {_text_value(value)}")
    return "\n".join(lines)


def cmatrix(m) -> list:
    return matrixfile.encode_matrix(m)


def margin_table(lower: np.ndarray, upper: np.ndarray, names=("norm_M", "norm_sum")) -> list:
    return [
        {"k": k + 1, names[0]: float(lo), names[1]: float(up), "margin": float(up - lo)}
        for k, (lo, up) in enumerate(zip(lower, upper))
    ]


# ----------------------------------------------------------------- input


def _load(path: str):
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError:
        raise UsageError(f"{path}: not UTF-8 text") from None
    return matrixfile.loads(text), "sha256:" + hashlib.sha256(raw).hexdigest()


def _load_block(path: str) -> tuple[BlockMatrix, str]:
    m, digest = _load(path)
    if not isinstance(m, BlockMatrix):
        m = BlockMatrix.from_full(m)
    return m, digest


def _digest_of(m) -> str:
    return "sha256:" + hashlib.sha256(matrixfile.dumps(m).encode()).hexdigest()


def _floats(text: str, name: str) -> list[float]:
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"--{name}: expected comma-separated numbers, got {text!r}") from None


def _complexes(text: str, name: str) -> list[complex]:
    try:
        return [complex(t.strip().replace("i", "j")) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"--{name}: expected comma-separated numbers, got {text!r}") from None


# -------------------------------------------------------------- commands


def _inequality_payload(m: BlockMatrix, rtol: float) -> tuple[dict, bool]:
    rep = check_main_inequality(m, rtol=rtol)
    psd = is_psd(m.full)
    payload = {
        "hypothesis": rep.hypothesis.value,
        "shift": rep.shift,
        "psd": psd.ok,
        "min_eigenvalue": psd.min_eigenvalue,
        "holds": rep.holds,
        "first_violation": rep.first_violation,
        "abs_tolerance": rep.tol,
        "eigenvalues_M": eigvalsh(m.full),
        "singular_values_M": rep.profile_m.sigma,
        "singular_values_sum": rep.profile_sum.sigma,
        "margin_table": margin_table(rep.profile_m.cumsum, rep.profile_sum.cumsum),
    }
    return payload, rep.holds


def cmd_check(args) -> tuple[dict, int]:
    m, digest = _load_block(args.input)
    payload, ok = _inequality_payload(m, args.tol)
    return {"input_digest": digest, "claim": "||M|| <= ||A+B|| for all symmetric norms",
            **payload}, EXIT_OK if ok else EXIT_VIOLATED


def cmd_decompose(args) -> tuple[dict, int]:
    m, digest = _load_block(args.input)
    d = lemma_decompose(m, Mode(args.mode))
    err = reconstruction_error(m, d)
    bound = args.tol * max(1.0, frob(m.full))
    eye = np.eye(2 * m.n)
    ok = err <= bound
    return {
        "input_digest": digest,
        "claim": "M = U (top (+) 0) U* + V (0 (+) bottom) V*",
        "mode": d.mode.value,
        "reconstruction_error": err,
        "error_bound": bound,
        "unitarity_error_U": frob(adjoint(d.U) @ d.U - eye),
        "unitarity_error_V": frob(adjoint(d.V) @ d.V - eye),
        "verified": ok,
        "top": cmatrix(d.top),
        "bottom": cmatrix(d.bottom),
        "U": cmatrix(d.U),
        "V": cmatrix(d.V),
    }, EXIT_OK if ok else EXIT_VIOLATED


def _profile_payload(m: np.ndarray, pad_to: int, full: bool) -> dict:
    p = ky_fan_profile(m, pad_to)
    out = {"spectral": p.spectral, "frobenius": p.frobenius, "trace": p.trace}
    if full:
        out["sigma"] = p.sigma
        out["cumsum"] = p.cumsum
    return out


def cmd_norms(args) -> tuple[dict, int]:
    m, digest = _load(args.input)
    report = {"input_digest": digest}
    if isinstance(m, BlockMatrix):
        size = 2 * m.n
        report["M"] = _profile_payload(m.full, size, args.kyfan)
        report["A_plus_B"] = _profile_payload(m.diag_sum, size, args.kyfan)
    else:
        report["M"] = _profile_payload(m, max(m.shape), args.kyfan)
    return report, EXIT_OK


def cmd_facts(args) -> tuple[dict, int]:
    m, digest = _load_block(args.input)
    f = check_loewner_facts(m, args.tol)
    psd = is_psd(m.full)
    return {
        "input_digest": digest,
        "claim": "A+B >= -/+ 2 Im(X) and A+B >= -/+ 2 Re(X)",
        "psd": psd.ok,
        "min_eigenvalue": psd.min_eigenvalue,
        "all_hold": f.all_hold,
        "facts": {
            "A+B+2Im(X) >= 0": f.sum_plus_2im,
            "A+B-2Im(X) >= 0": f.sum_minus_2im,
            "A+B+2Re(X) >= 0": f.sum_plus_2re,
            "A+B-2Re(X) >= 0": f.sum_minus_2re,
        },
        "min_eigenvalues": f.min_eigenvalues,
    }, EXIT_OK if f.all_hold else EXIT_VIOLATED


def cmd_reduce(args) -> tuple[dict, int]:
    m, digest = _load_block(args.input)
    cert = hermitio_reduce(m)
    report = {"input_digest": digest,
              "claim": "M is unitarily congruent to a block matrix with Hermitian X"}
    if cert is None:
        report["certificate"] = None
        report["reason"] = "neither X* A = A X* nor X B = B X"
        return report, EXIT_VIOLATED
    report["certificate"] = {
        "side": cert.side,
        "congruence_error": cert.congruence_error(m),
        "reduced_X_hermitian_defect": frob(cert.reduced.X - adjoint(cert.reduced.X)),
        "W": cmatrix(cert.W),
        "reduced_X": cmatrix(cert.reduced.X),
    }
    return report, EXIT_OK


def cmd_bound2(args) -> tuple[dict, int]:
    m, digest = _load_block(args.input)
    r = factor_two_bound(m, rtol=args.tol)
    pm = ky_fan_profile(m.full)
    doubled = pm.cumsum + r.margins
    ok = r.holds and (r.strict or not r.halves_pd)
    return {
        "input_digest": digest,
        "claim": "||M|| <= 2 ||A+B||, strict when (A+B)/2 +/- Im(X) is positive definite",
        "holds": r.holds,
        "halves_positive_definite": r.halves_pd,
        "strict": r.strict,
        "min_margin": r.min_margin,
        "min_eigenvalues_halves": list(r.min_eigenvalues),
        "abs_tolerance": r.tol,
        "margin_table": margin_table(pm.cumsum, doubled, ("norm_M", "twice_norm_sum")),
    }, EXIT_OK if ok else EXIT_VIOLATED


def _family_payload(spec: FamilySpec) -> dict:
    roots = quadratic_eigs(spec)
    return {
        "a": spec.a,
        "b": spec.b,
        "D_diagonal": [complex(z) for z in np.diagonal(spec.D)],
        "d": spec.d,
        "sum_ok": [bool(v) for v in spec.sum_ok],
        "prod_ok": [bool(v) for v in spec.prod_ok],
        "root_pairs": [list(p) for p in roots.pairs],
        "eigenvalues": roots.eigenvalues(),
    }


def cmd_gen_family(args) -> tuple[dict, int]:
    a = _floats(args.a, "a")
    b = _floats(args.b, "b")
    d = _complexes(args.d, "d")
    spec = FamilySpec(a, b, np.diag(d))
    n_mat = build_family(spec)
    if args.output:
        matrixfile.write_matrix_file(args.output, n_mat)
    report = {"input_digest": _digest_of(n_mat), **_family_payload(spec)}
    if not args.verify:
        report["matrix"] = matrixfile.to_obj(n_mat)
        return report, EXIT_OK
    report["claim"] = "neither N nor -N is PSD and ||N||_k > ||A+B||_k for every k"
    try:
        v = verify_violation(spec)
    except HypothesisNotMet as e:
        report["confirmed"] = False
        report["reason"] = str(e)
        return report, EXIT_VIOLATED
    report["confirmed"] = v.confirmed
    report["N_psd"] = v.n_psd
    report["minus_N_psd"] = v.minus_n_psd
    report["margin_table"] = [
        {"k": row["k"], "norm_N": row["norm_M"], "norm_sum": row["norm_sum"],
         "excess": -row["margin"]}
        for row in margin_table(v.dominance.lower.cumsum, v.dominance.upper.cumsum)
    ]
    return report, EXIT_OK if v.confirmed else EXIT_VIOLATED


def cmd_examples(args) -> tuple[dict, int]:
    if args.name == "T":
        m = example_T()
    else:
        if args.y is None:
            raise UsageError("--name Ny needs --y")
        m = example_Ny(args.y)
    if args.output:
        matrixfile.write_matrix_file(args.output, m)
    report = {"input_digest": _digest_of(m), "name": args.name}
    if args.name == "Ny":
        report["y"] = float(args.y)
    report["matrix"] = matrixfile.to_obj(m)
    report["eigenvalues"] = eigvalsh(m.full)
    if not args.check:
        return report, EXIT_OK
    payload, ok = _inequality_payload(m, args.tol)
    report["claim"] = "||M|| <= ||A+B|| for all symmetric norms"
    report.update(payload)
    report["frobenius_sq_M"] = float(np.sum(np.abs(m.full) ** 2))
    report["frobenius_sq_sum"] = float(np.sum(np.abs(m.diag_sum) ** 2))
    return report, EXIT_OK if ok else EXIT_VIOLATED


def cmd_search(args) -> tuple[dict, int]:
    if args.trials < 0 or args.dim < 1:
        raise UsageError("--trials must be >= 0 and --dim >= 1")
    hits = search_psd_violations(args.dim, args.trials, args.seed)
    return {
        "input_digest": None,
        "dim": args.dim,
        "trials": args.trials,
        "seed": args.seed,
        "sampler": "M = G* G, G complex Gaussian, Philox stream keyed by (seed, trial)",
        "hit_count": len(hits),
        "hits": [
            {"trial": h.trial, "first_violation": h.first_violation, "min_margin": h.min_margin,
             "matrix": matrixfile.to_obj(h.matrix)}
            for h in hits
        ],
    }, EXIT_OK


def cmd_det_shortcut(args) -> tuple[dict, int]:
    m, digest = _load(args.input)
    full = m.full if isinstance(m, BlockMatrix) else m
    report = {"input_digest": digest, "claim": "det(M) = det(AD - CB) when AC = CA",
              "det_direct": det(full)}
    try:
        short = det_commuting_blocks(full)
    except BlocksDoNotCommute as e:
        report["det_shortcut"] = None
        report["reason"] = str(e)
        return report, EXIT_VIOLATED
    direct = report["det_direct"]
    diff = abs(short - direct)
    rel = diff / max(abs(direct), np.finfo(float).tiny)
    # absolute floor at rounding level of the Hadamard bound, for singular M
    hadamard = float(np.prod(np.linalg.norm(full, axis=0)))
    ok = diff <= max(args.tol * abs(direct), 1e3 * np.finfo(float).eps * hadamard)
    report["det_shortcut"] = short
    report["relative_difference"] = float(rel)
    report["verified"] = bool(ok)
    return report, EXIT_OK if ok else EXIT_VIOLATED


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="symnorm", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=1e-8, help="relative tolerance (default 1e-8)")
    common.add_argument("--format", choices=("json", "text"), default="json")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_, needs_input=True):
        sp = sub.add_parser(name, parents=[common], help=help_)
        if needs_input:
            sp.add_argument("--input", required=True, help="matrix file (JSON)")
        sp.set_defaults(func=fn)
        return sp

    add("check", cmd_check, "||M|| <= ||A+B|| via Ky Fan dominance")
    add("decompose", cmd_decompose, "unitaries realising the half-part decomposition").add_argument(
        "--mode", choices=("re", "im"), default="im")
    add("norms", cmd_norms, "spectral, Frobenius and trace norms").add_argument(
        "--kyfan", action="store_true", help="print the full Ky Fan profile")
    add("facts", cmd_facts, "Loewner bounds A+B >= -/+ 2 Im(X), -/+ 2 Re(X)")
    add("reduce", cmd_reduce, "congruence to Hermitian off-diagonal block (commuting blocks)")
    add("bound2", cmd_bound2, "||M|| <= 2||A+B||")
    sp = add("gen-family", cmd_gen_family, "diagonal counterexample family", needs_input=False)
    sp.add_argument("--a", required=True, help="comma-separated diagonal of A (>= 0)")
    sp.add_argument("--b", required=True, help="comma-separated diagonal of B (< 0)")
    sp.add_argument("--d", required=True, help="comma-separated diagonal of D (complex allowed)")
    sp.add_argument("--verify", action="store_true")
    sp.add_argument("--output", help="also write N as a block matrix file")
    sp = add("examples", cmd_examples, "built-in example matrices", needs_input=False)
    sp.add_argument("--name", choices=("T", "Ny"), required=True)
    sp.add_argument("--y", type=float)
    sp.add_argument("--check", action="store_true")
    sp.add_argument("--output", help="also write the matrix as a block matrix file")
    sp = add("search", cmd_search, "random search for PSD violators", needs_input=False)
    sp.add_argument("--dim", type=int, default=2, help="block size n")
    sp.add_argument("--trials", type=int, default=1000)
    sp.add_argument("--seed", type=int, default=0)
    add("det-shortcut", cmd_det_shortcut, "det(M) = det(AD - CB) for commuting A, C")
    return p


_VALUE_FLAGS = {"--a", "--b", "--d", "--y"}


def _glue_values(argv: list[str]) -> list[str]:
    # "--b -0.5,-1" would otherwise be read by argparse as a new option
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if tok in _VALUE_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def main(argv: Optional[list[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_glue_values(argv))
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    try:
        body, code = args.func(args)
    except (UsageError, SymNormError, ValueError) as e:
        print(f"symnorm {args.command}: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    report = {"command": ["symnorm", *argv], "tolerance": args.tol,
              "verdict": "verified" if code == EXIT_OK else "violated", **body}
    out = to_text(report) if args.format == "text" else to_json(report)
    sys.stdout.write(out + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())

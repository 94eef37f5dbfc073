"""Command-line front end: channel and noise specs in, JSON or CSV out.

Exit status is 0 on success, 1 on a domain error (a :class:`RobustEntError`)
and 2 on a usage error.  Diagnostics go to stderr.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.optimize import brentq

from .channels import DiagonalChannel, as_ptm, classify, ptm_from_kraus
from .dynamics import (
    DEPOLARIZING,
    GAD,
    INF_TEMP_AD,
    NoiseFamily,
    gad_reduced_lambda,
    gad_robust_state,
    gad_tau_bell,
    gad_tau_tilde,
    interpolation_path,
    lifetime_of_state,
    negativity_trace,
    pair_ea_lifetime,
)
from .errors import NotCompletelyPositiveError, RobustEntError
from .oracle import ea_sampled_verdict
from .qubit import PSI_PLUS, validate_pure
from .sinkhorn import decompose
from .unital import is_ea_pair

DIGITS = 12
FAMILY_NAMES = {"gad": GAD, "inftemp-ad": INF_TEMP_AD, "depolarizing": DEPOLARIZING}


class UsageError(Exception):
    pass


def fmt(x: float) -> str:
    """Fixed 12 significant digits; ``-0`` is printed as ``0``."""
    return format(float(x) + 0.0, f".{DIGITS}g")


def rounded(x: float) -> float:
    return float(fmt(x))


def complex_pairs(a) -> list:
    a = np.asarray(a, dtype=complex)
    return [[rounded(z.real), rounded(z.imag)] for z in a.ravel()]


def parse_complex(rows, shape) -> np.ndarray:
    try:
        out = np.array([complex(re, im) for re, im in rows], dtype=complex)
        return out.reshape(shape)
    except (TypeError, ValueError) as exc:
        raise UsageError(f"expected [re, im] pairs for shape {shape}") from exc


def channel_from_json(spec: dict) -> np.ndarray:
    """PTM from ``{"lambda": [...], "t": [...]}`` or ``{"kraus": [...]}``."""
    keys = {"lambda", "kraus"} & set(spec)
    if len(keys) != 1:
        raise UsageError('channel JSON needs exactly one of "lambda" or "kraus"')
    if "kraus" in spec:
        kraus = [parse_complex(k, (2, 2)) for k in spec["kraus"]]
        return ptm_from_kraus(kraus)
    lam = tuple(float(v) for v in spec["lambda"])
    t = tuple(float(v) for v in spec.get("t", (0.0, 0.0, 0.0)))
    if len(lam) != 3 or len(t) != 3:
        raise UsageError('"lambda" and "t" need three entries each')
    c = DiagonalChannel(lam, t)
    if not classify(c).completely_positive:
        raise NotCompletelyPositiveError(f"lambda={lam}, t={t} is not completely positive")
    return as_ptm(c.ptm())


def load_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc


def reduction_json(m) -> dict:
    r = decompose(m)
    return {
        "A": complex_pairs(r.a_op),
        "B": complex_pairs(r.b_op),
        "lambda_tilde": [rounded(v) for v in r.lambda_tilde],
        "residual": rounded(r.residual),
    }


def ea_check_json(left, right, n: int, seed: int) -> dict:
    lt = decompose(left).lambda_tilde
    rt = decompose(right).lambda_tilde
    verdict = is_ea_pair(DiagonalChannel(lt, (0.0,) * 3), DiagonalChannel(rt, (0.0,) * 3))
    sampled = ea_sampled_verdict(left, right, n, seed)
    return {
        "annihilating": verdict.annihilating,
        "max_value": rounded(verdict.max_value),
        "argmax": {"perm": list(verdict.argmax.perm), "signs": list(verdict.argmax.signs)},
        "lambda_tilde": [[rounded(v) for v in lt], [rounded(v) for v in rt]],
        "sampled": {
            "ea_consistent": sampled.ea_consistent,
            "min_eigenvalue": rounded(sampled.min_eigenvalue),
            "samples": n,
        },
    }


@dataclass(frozen=True)
class RunConfig:
    left: NoiseFamily
    right: NoiseFamily
    tmax: float
    steps: int
    state: str
    t0: float | None
    seed: int

    @property
    def symmetric_gad(self) -> bool:
        return self.left.kind == GAD and self.left == self.right


def family_from_args(kind: str, gamma: float, w: float) -> NoiseFamily:
    return NoiseFamily(FAMILY_NAMES[kind], gamma, w if FAMILY_NAMES[kind] == GAD else 0.5)


def config_from_args(args) -> RunConfig:
    if args.tmax <= 0:
        raise UsageError("--tmax must be positive")
    if args.steps < 2:
        raise UsageError("--steps must be at least 2")
    left = family_from_args(args.family, args.gamma, args.w)
    right = family_from_args(
        args.family2 or args.family,
        args.gamma if args.gamma2 is None else args.gamma2,
        args.w if args.w2 is None else args.w2,
    )
    return RunConfig(left, right, args.tmax, args.steps, args.state, args.t0, args.seed)


def robust_state(cfg: RunConfig) -> np.ndarray:
    if cfg.symmetric_gad:
        return gad_robust_state(cfg.left)
    return pair_ea_lifetime(cfg.left, cfg.right, cfg.tmax).state_used


def select_state(cfg: RunConfig, selector: str) -> np.ndarray:
    if selector == "bell":
        return PSI_PLUS.copy()
    if selector == "robust":
        return robust_state(cfg)
    if selector == "interp":
        if cfg.t0 is None:
            raise UsageError("--state interp needs --t0")
        right = None if cfg.symmetric_gad else cfg.right
        return interpolation_path(cfg.left, right, cfg.tmax)[1](cfg.t0)
    spec = load_json(selector)
    return validate_pure(parse_complex(spec.get("state", []), (4,)), tol=1e-10)


def state_json(psi, **extra) -> dict:
    return {"state": complex_pairs(psi), **{k: rounded(v) for k, v in extra.items()}}


def trace_csv(cfg: RunConfig, selectors: list[str]) -> str:
    """Negativity of each selected input over ``steps + 1`` grid times.

    The ``interp-envelope`` column at time ``t`` uses the interpolated input
    prepared for ``t0 = min(t, tau~)``.
    """
    ts = np.linspace(0.0, cfg.tmax, cfg.steps + 1)
    cols = []
    for sel in selectors:
        if sel == "interp-envelope":
            right = None if cfg.symmetric_gad else cfg.right
            tau, path = interpolation_path(cfg.left, right, cfg.tmax)
            cols.append(
                np.array(
                    [negativity_trace(cfg.left, cfg.right, path(min(t, tau)), [t])[0] for t in ts]
                )
            )
        else:
            cols.append(negativity_trace(cfg.left, cfg.right, select_state(cfg, sel), ts))
    lines = [",".join(["t", *selectors])]
    for k, t in enumerate(ts):
        lines.append(",".join([fmt(t), *(fmt(c[k]) for c in cols)]))
    return "\n".join(lines) + "\n"


def _root(fn: Callable[[float], float], hi: float) -> float:
    return float(brentq(fn, 1e-9, hi, xtol=1e-14, rtol=1e-15))


def examples_json() -> dict:
    """Closed forms next to pipeline values for the four worked examples."""
    out = {}
    g, gp = 1.0, 1.0
    ad, ad2 = NoiseFamily.inf_temp_ad(g), NoiseFamily.inf_temp_ad(gp)
    out["example1"] = {
        "closed_form": np.log(np.sqrt(2) + 1) / (g + gp),
        "numeric": pair_ea_lifetime(ad, ad2, 3.0).tau,
    }
    dep = NoiseFamily.depolarizing(gp)
    out["example2"] = {
        "equation_root": _root(lambda t: (1 + np.exp(-g * t)) ** 2 - 1 - np.exp(gp * t), 5.0),
        "approximation": 3 * np.log(3) / (4 * g + 3 * gp),
        "numeric": pair_ea_lifetime(ad, dep, 3.0).tau,
    }
    gad = NoiseFamily.gad(1.0, 0.01)
    out["example3"] = {
        "tau_tilde_closed_form": gad_tau_tilde(gad),
        "tau_tilde_numeric": lifetime_of_state(gad, gad, gad_robust_state(gad), 4.0).tau,
        "tau_bell_closed_form": gad_tau_bell(gad),
        "tau_bell_numeric": lifetime_of_state(gad, gad, PSI_PLUS, 4.0).tau,
    }
    out["example4"] = {
        "equation_root": _root(
            lambda t: (1 + gad_reduced_lambda(gad, t)) ** 2 - 1 - np.exp(gp * t), 5.0
        ),
        "numeric": pair_ea_lifetime(gad, dep, 3.0).tau,
    }
    return {k: {kk: rounded(vv) for kk, vv in v.items()} for k, v in out.items()}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="robustent", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def add_out(sp):
        sp.add_argument("--out", help="write the result here instead of stdout")

    def add_family(sp):
        sp.add_argument("--family", choices=sorted(FAMILY_NAMES), default="gad")
        sp.add_argument("--gamma", type=float, default=1.0)
        sp.add_argument("--w", type=float, default=0.5)
        sp.add_argument("--family2", choices=sorted(FAMILY_NAMES))
        sp.add_argument("--gamma2", type=float)
        sp.add_argument("--w2", type=float)
        sp.add_argument("--tmax", type=float, default=4.0)
        sp.add_argument("--steps", type=int, default=1000)
        sp.add_argument("--t0", type=float)
        sp.add_argument("--seed", type=int, default=0)
        add_out(sp)

    sp = sub.add_parser("decompose", help="Sinkhorn reduction of a channel JSON")
    sp.add_argument("channel")
    add_out(sp)

    sp = sub.add_parser("ea-check", help="entanglement-annihilation verdict for two channels")
    sp.add_argument("left")
    sp.add_argument("right")
    sp.add_argument("--samples", type=int, default=2000)
    sp.add_argument("--seed", type=int, default=0)
    add_out(sp)

    sp = sub.add_parser("lifetime", help="entanglement lifetime of an input state")
    add_family(sp)
    sp.add_argument("--state", default="bell", help="bell, robust, interp or a state JSON path")

    sp = sub.add_parser("robust-state", help="ultimately robust input state")
    add_family(sp)
    sp.set_defaults(state="robust")

    sp = sub.add_parser("trace", help="negativity over time as CSV")
    add_family(sp)
    sp.add_argument("--state", default="bell,robust,interp-envelope", help="comma-separated selectors")

    sp = sub.add_parser("examples", help="closed-form vs numeric values of the worked examples")
    add_out(sp)
    return p


def run(args) -> str:
    if args.command == "decompose":
        return json.dumps(reduction_json(channel_from_json(load_json(args.channel))))
    if args.command == "ea-check":
        left = channel_from_json(load_json(args.left))
        right = channel_from_json(load_json(args.right))
        return json.dumps(ea_check_json(left, right, args.samples, args.seed))
    if args.command == "examples":
        return json.dumps(examples_json(), indent=2)
    cfg = config_from_args(args)
    if args.command == "lifetime":
        psi = select_state(cfg, cfg.state)
        rep = lifetime_of_state(cfg.left, cfg.right, psi, cfg.tmax, cfg.steps)
        return json.dumps({"tau": rounded(rep.tau), "method": rep.method, **state_json(psi)})
    if args.command == "robust-state":
        if cfg.symmetric_gad:
            return json.dumps(state_json(gad_robust_state(cfg.left), tau=gad_tau_tilde(cfg.left)))
        rep = pair_ea_lifetime(cfg.left, cfg.right, cfg.tmax)
        return json.dumps(state_json(rep.state_used, tau=rep.tau))
    selectors = [s for s in cfg.state.split(",") if s]
    if not selectors:
        raise UsageError("no states selected")
    return trace_csv(cfg, selectors)


def dispatch(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        text = run(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except RobustEntError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    if not text.endswith("\n"):
        text += "\n"
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def main() -> None:
    sys.exit(dispatch())


if __name__ == "__main__":
    main()

"""
Command-line front end.

Usage:
    zdwalk stationary --dim 2 --coin grover --normalize
    zdwalk stationary --dim 2 --coin watabe --p 0.5 --emit state
    zdwalk verify --dim 3 --coin grover --steps 5 --mode exact
    zdwalk verify --state psi.json --coin grover --dim 2
    zdwalk evolve --state delta.json --coin grover --dim 2 --steps 10

Data goes to stdout as JSON (sorted keys, lattice points in lexicographic
order); diagnostics go to stderr. Exit codes: 0 success, 1 verification
failed, 2 usage or I/O error.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from fractions import Fraction

import numpy as np

from zdwalk.coin import Coin, CoinError
from zdwalk.evolution import evolve, evolve_trace, fixed_point_residual_squared
from zdwalk.laurent import eigen_residuals, symbolic_fixed_point_check
from zdwalk.lattice import FiniteState, WeightSequence, measure_of, squared_norm, total_mass
from zdwalk.scalar import EXACT, FLOAT, BackendError, format_fraction, real_to_json
from zdwalk.stationary import closed_form, coin_for, inverse_fourier, stationary_measure, superpose

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


class UsageError(Exception):
    pass


def _dump(obj) -> None:
    json.dump(obj, sys.stdout, sort_keys=True, indent=2)
    sys.stdout.write("\n")


def _load_json(path: str):
    with open(path) as fh:
        return json.load(fh)


def _default_mode(args, state: FiniteState | None = None) -> str:
    if args.mode:
        return args.mode
    if state is not None:
        return state.backend
    return EXACT if args.coin == "grover" else FLOAT


def _parse_p(text, mode):
    if text is None:
        return None
    if mode == EXACT:
        return Fraction(text)
    return float(Fraction(text))


def _build_coin(args, mode: str) -> Coin:
    if args.coin == "custom":
        if not args.coin_file:
            raise UsageError("--coin custom requires --coin-file")
        obj = _load_json(args.coin_file)
        c = Coin.from_json(obj, backend=mode)
        if args.dim is not None and c.d != args.dim:
            raise UsageError(f"coin file has d={c.d} but --dim is {args.dim}")
        return c
    if args.dim is None:
        raise UsageError("--dim is required")
    if args.dim < 1:
        raise UsageError(f"--dim must be >= 1, got {args.dim}")
    return coin_for(args.coin, args.dim, mode, _parse_p(args.p, mode))


def _weights(args, d: int, mode: str) -> WeightSequence:
    if args.weights:
        w = WeightSequence.from_json(_load_json(args.weights), backend=mode)
        if w.d != d:
            raise UsageError(f"weights file has d={w.d} but the walk has d={d}")
        return w
    return WeightSequence(d, {(0,) * d: 1}, mode)


def _atom(coin: Coin):
    v = closed_form(coin)
    if v is None:
        raise UsageError("no closed-form stationary amplitude for a custom coin")
    return inverse_fourier(v)


def _load_state(path: str, mode: str | None) -> FiniteState:
    s = FiniteState.from_json(_load_json(path))
    if mode is None or mode == s.backend:
        return s
    if mode == FLOAT:
        return s.to_float()
    raise UsageError("cannot run a float state in exact mode")


def _coin_summary(c: Coin) -> dict:
    out = {"kind": c.kind, "d": c.d}
    if c.p is not None:
        out["p"] = format_fraction(c.p) if isinstance(c.p, Fraction) else c.p
    return out


def _mass_json(m):
    return format_fraction(m) if isinstance(m, Fraction) else float(m)


# --- commands --------------------------------------------------------------


def cmd_stationary(args) -> int:
    mode = _default_mode(args)
    coin = _build_coin(args, mode)
    atom = _atom(coin)
    w = _weights(args, coin.d, mode)
    state = superpose(atom, w)
    out = {"command": "stationary", "d": coin.d, "mode": mode, "coin": _coin_summary(coin)}
    raw = measure_of(state)
    out["total_mass"] = real_to_json(total_mass(raw))
    measure = stationary_measure(atom, w, normalize=args.normalize) if args.normalize else raw
    out["normalized"] = bool(args.normalize)
    if args.emit in ("measure", "both"):
        out["measure"] = measure.to_json()
    if args.emit in ("state", "both"):
        out["state"] = state.to_json()
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            wr = csv.writer(fh)
            wr.writerow([f"x{i + 1}" for i in range(coin.d)] + ["value"])
            for x, val in measure.items():
                wr.writerow(list(x) + [real_to_json(val)])
    _dump(out)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.state:
        state = _load_state(args.state, args.mode)
        mode = state.backend
        if args.dim is None:
            args.dim = state.d
    else:
        mode = _default_mode(args)
        state = None
    coin = _build_coin(args, mode)
    if state is None:
        state = superpose(_atom(coin), _weights(args, coin.d, mode))
    if state.d != coin.d:
        raise UsageError(f"state has d={state.d} but the coin has d={coin.d}")

    passed = True
    scale = max(1.0, math.sqrt(squared_norm(state)))
    residuals = []
    current = state
    for n in range(1, args.steps + 1):
        current = evolve(current, coin, 1)
        diff = current - state
        r2 = squared_norm(diff)
        entry = {"n": n, "residual": math.sqrt(r2)}
        if mode == EXACT:
            entry["residual_squared"] = format_fraction(r2)
            ok = r2 == 0
        else:
            ok = entry["residual"] <= args.tol * scale
        passed &= ok
        residuals.append(entry)

    report = {
        "command": "verify",
        "d": coin.d,
        "mode": mode,
        "coin": _coin_summary(coin),
        "support_size": len(state),
        "residuals": residuals,
        "one_step_residual_squared": _mass_json(fixed_point_residual_squared(state, coin)),
        "symbolic_check": None,
        "eigen_residual_max": None,
        "ksamples": args.ksamples,
        "seed": args.seed,
        "tol": args.tol,
    }
    v = closed_form(coin)
    if v is not None:
        if mode == EXACT:
            report["symbolic_check"] = symbolic_fixed_point_check(coin, v)
            passed &= report["symbolic_check"]
        if args.ksamples > 0:
            rng = np.random.default_rng(args.seed)
            ks = rng.uniform(-np.pi, np.pi, size=(args.ksamples, coin.d))
            worst = float(eigen_residuals(coin, v, ks).max())
            report["eigen_residual_max"] = worst
            passed &= worst <= args.tol
    report["passed"] = bool(passed)
    _dump(report)
    if not passed:
        print("verification failed", file=sys.stderr)
    return EXIT_OK if passed else EXIT_FAILED


def cmd_evolve(args) -> int:
    if not args.state:
        raise UsageError("evolve requires --state")
    state = _load_state(args.state, args.mode)
    if args.dim is not None and args.dim != state.d:
        raise UsageError(f"state has d={state.d} but --dim is {args.dim}")
    args.dim = state.d
    coin = _build_coin(args, state.backend)
    final, masses = evolve_trace(state, coin, args.steps)
    _dump({
        "command": "evolve",
        "d": state.d,
        "mode": state.backend,
        "coin": _coin_summary(coin),
        "steps": args.steps,
        "mass": [_mass_json(m) for m in masses],
        "state": final.to_json(),
    })
    return EXIT_OK


# --- parser ----------------------------------------------------------------


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--dim", type=int, help="lattice dimension d")
    p.add_argument("--coin", choices=["grover", "watabe", "custom"], default="grover")
    p.add_argument("--p", help="watabe parameter in (0,1); accepts '1/4' or 0.25")
    p.add_argument("--coin-file", help="JSON coin for --coin custom")
    p.add_argument("--mode", choices=[EXACT, FLOAT],
                   help="numeric backend (default: exact for grover, float otherwise)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zdwalk",
        description="Stationary amplitudes and measures of coined quantum walks on Z^d.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    st = sub.add_parser("stationary", help="build a stationary amplitude and its measure")
    _add_common(st)
    st.add_argument("--weights", help="JSON weight sequence (default: weight 1 at the origin)")
    st.add_argument("--normalize", action="store_true", help="divide the measure by its total mass")
    st.add_argument("--emit", choices=["state", "measure", "both"], default="measure")
    st.add_argument("--csv", help="also write the measure as CSV to this path")
    st.set_defaults(func=cmd_stationary)

    ve = sub.add_parser("verify", help="check stationarity of a state and the eigenfunction")
    _add_common(ve)
    ve.add_argument("--state", help="JSON state (default: built-in stationary amplitude)")
    ve.add_argument("--weights", help="JSON weight sequence for the built-in amplitude")
    ve.add_argument("--steps", type=int, default=1)
    ve.add_argument("--ksamples", type=int, default=100)
    ve.add_argument("--tol", type=float, default=1e-12)
    ve.add_argument("--seed", type=int, default=0)
    ve.set_defaults(func=cmd_verify)

    ev = sub.add_parser("evolve", help="evolve a state and report the mass per step")
    _add_common(ev)
    ev.add_argument("--state", help="JSON state to evolve")
    ev.add_argument("--steps", type=int, default=1)
    ev.set_defaults(func=cmd_evolve)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if getattr(args, "steps", 0) < 0:
        print("error: --steps must be nonnegative", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except (UsageError, CoinError, BackendError, ValueError, KeyError, TypeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

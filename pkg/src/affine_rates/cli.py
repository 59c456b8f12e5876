"""
Command-line front end.

    affine-rates bond      --model JSON --r 0.03 --maturity 5
    affine-rates option    --model JSON --r 0 --strike 0.8 --expiry 3 --maturity 5
    affine-rates curve     --model JSON --r 0.03 --tenors 0.5,1,2,5,10
    affine-rates figure1   --out figure1.csv
    affine-rates figure2   --out figure2.csv
    affine-rates validate  --budget quick
    affine-rates pde-dump  --model JSON --r 0.03 --maturity 5 --out surface.csv
    affine-rates mc        --model JSON --r 0.03 --maturity 5 --paths 100000

Exit codes: 0 success, 1 validation failure, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import csv
import logging
import sys
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, Union

import numpy as np

from affine_rates_core.models import (
    AffineParams,
    MarketState,
    MertonParams,
    OptionSpec,
    VasicekParams,
)
from affine_rates_core.repo import load_params
from affine_rates_core.validation import require_valid

from .closed_form.bonds import bond_price_closed
from .closed_form.options import call_price, put_price
from .engine.pricing import bond_price, spot_rate, yield_curve
from .figures import FigureSpec, write_figure1_csv, write_figure2_csv
from .oracles.mc import MCConfig, mc_bond_price, mc_option_price
from .oracles.pde import PDEGrid, solve_fk, write_surface_csv
from .services.validation_service import OracleValidationService

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VALIDATION_FAILED = 1
EXIT_USAGE = 2


def _float_list(text: str) -> List[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from exc


def _common() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--model", help="model parameters: JSON file path or inline JSON")
    common.add_argument("--out", type=Path, help="output path")
    common.add_argument(
        "--v-formula",
        choices=["derived", "printed"],
        default="derived",
        help="Vasicek forward volatility: integral-derived (default) or the printed variant",
    )
    common.add_argument("-v", "--verbose", action="count", default=0, help="-v info, -vv debug")
    return common


def _seed_arg(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--seed", type=int, default=42, help="random seed (default 42)")


def _state_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--t", type=float, default=0.0, help="valuation time (years)")
    parser.add_argument("--r", type=float, default=0.0, help="current short rate")


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(
        prog="affine-rates",
        description="Bond and bond-option prices in one-factor affine short-rate models.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bond", parents=[common], help="zero-coupon bond price and spot rate")
    _state_args(p)
    p.add_argument("--maturity", "-T", type=float, required=True, help="bond maturity T")

    p = sub.add_parser("option", parents=[common], help="European call and put on a bond")
    _state_args(p)
    p.add_argument("--strike", "-K", type=float, required=True)
    p.add_argument("--expiry", type=float, required=True, help="option expiry T")
    p.add_argument("--maturity", "-S", type=float, required=True, help="bond maturity S")

    p = sub.add_parser("curve", parents=[common], help="yield curve as CSV (T,yield)")
    _state_args(p)
    p.add_argument("--tenors", type=_float_list, default=[0.5, 1.0, 2.0, 5.0, 10.0])

    for name, text in (("figure1", "call prices C_M, C_V"), ("figure2", "ln C_V - ln C_M")):
        p = sub.add_parser(name, parents=[common], help=f"figure data as CSV: {text}")
        p.add_argument("--theta-grid", type=_float_list)
        p.add_argument("--T-grid", dest="T_grid", type=_float_list)

    p = sub.add_parser("validate", parents=[common], help="run the oracle cross-checks")
    p.add_argument("--budget", choices=["quick", "full"], default="quick")
    _seed_arg(p)

    p = sub.add_parser("pde-dump", parents=[common], help="bond PDE value surface as CSV")
    _state_args(p)
    p.add_argument("--maturity", "-T", type=float, required=True)
    p.add_argument("--n-r", type=int, default=201)
    p.add_argument("--n-t", type=int, default=200)
    p.add_argument("--time-stride", type=int, default=1)
    p.add_argument("--rate-stride", type=int, default=1)

    p = sub.add_parser(
        "mc", parents=[common], help="Monte Carlo bond or option estimate with its std error"
    )
    _state_args(p)
    _seed_arg(p)
    p.add_argument("--maturity", "-T", type=float, required=True, help="bond maturity")
    p.add_argument("--strike", "-K", type=float, help="price an option with this strike")
    p.add_argument("--expiry", type=float, help="option expiry (required with --strike)")
    p.add_argument("--kind", choices=["call", "put"], default="call")
    p.add_argument("--paths", type=int, default=100_000)
    p.add_argument("--steps", type=int, default=500, help="Euler steps")
    p.add_argument("--scheme", choices=["exact", "euler"], default="exact")
    p.add_argument("--no-antithetic", dest="antithetic", action="store_false")
    return parser


def _configure_logging(verbosity: int) -> None:
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity >= 2:
        level = logging.DEBUG
    logging.basicConfig(
        level=level,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
        force=True,
    )
    logging.captureWarnings(True)


def _model(args: argparse.Namespace) -> Union[MertonParams, VasicekParams, AffineParams]:
    if not args.model:
        raise ValueError("--model is required for this command")
    return load_params(args.model)


def _state(args: argparse.Namespace) -> MarketState:
    return MarketState(t=args.t, r=args.r)


def cmd_bond(args: argparse.Namespace) -> int:
    params, state = _model(args), _state(args)
    require_valid(params, state)
    tenor = args.maturity - state.t
    if tenor < 0:
        raise ValueError(f"maturity T={args.maturity} precedes valuation time t={state.t}")
    if tenor == 0:
        print("price=1.0, yield undefined at zero tenor")
        return EXIT_OK
    est = bond_price(params, state, args.maturity)
    if est.uncertainty:
        logger.info("engine price uncertainty %.2e", est.uncertainty)
    print(f"price={est.value:.10g}, yield={spot_rate(est.value, tenor):.10g}")
    return EXIT_OK


def cmd_option(args: argparse.Namespace) -> int:
    params, state = _model(args), _state(args)
    spec = OptionSpec(strike=args.strike, expiry=args.expiry, bond_maturity=args.maturity)
    if args.v_formula == "printed":
        print(
            "WARNING: printed Vasicek v(t,T,S) in use; it disagrees with the forward "
            "volatility integral and is for figure comparison only",
            file=sys.stderr,
        )
    call = call_price(params, state, spec, v_formula=args.v_formula)
    put = put_price(params, state, spec, v_formula=args.v_formula)
    bond_S = bond_price_closed(params, state, spec.bond_maturity)
    bond_T = bond_price_closed(params, state, spec.expiry)
    residual = abs(call - put - (bond_S - spec.strike * bond_T))
    print(f"call={call:.10g}, put={put:.10g}, parity_residual={residual:.3e}")
    return EXIT_OK


def _write_or_print(rows: List[List[str]], out: Optional[Path]) -> None:
    if out is None:
        csv.writer(sys.stdout, lineterminator="\n").writerows(rows)
        return
    out.parent.mkdir(parents=True, exist_ok=True)
    with out.open("w", encoding="utf-8", newline="") as f:
        csv.writer(f, lineterminator="\n").writerows(rows)


def cmd_curve(args: argparse.Namespace) -> int:
    params, state = _model(args), _state(args)
    curve = yield_curve(params, state, args.tenors)
    rows = [["T", "yield"]] + [[f"{T:.10g}", f"{y:.10g}"] for T, y in curve]
    _write_or_print(rows, args.out)
    return EXIT_OK


def _figure_spec(args: argparse.Namespace) -> FigureSpec:
    overrides: Dict[str, List[float]] = {}
    if args.theta_grid:
        overrides["theta_grid"] = args.theta_grid
    if args.T_grid:
        overrides["T_grid"] = args.T_grid
    return FigureSpec(**overrides)


def cmd_figure1(args: argparse.Namespace) -> int:
    out = args.out or Path("figure1.csv")
    rows = write_figure1_csv(_figure_spec(args), out, v_formula=args.v_formula)
    logger.info("wrote %d rows to %s", rows, out)
    return EXIT_OK


def cmd_figure2(args: argparse.Namespace) -> int:
    out = args.out or Path("figure2.csv")
    empty = write_figure2_csv(_figure_spec(args), out, v_formula=args.v_formula)
    if empty:
        print(f"note: {empty} cells left empty (a price was not positive)", file=sys.stderr)
    return EXIT_OK


def cmd_validate(args: argparse.Namespace) -> int:
    service = OracleValidationService(
        budget=args.budget, seed=args.seed, v_formula=args.v_formula
    )
    results = service.run()
    print(service.format_report(results))
    return EXIT_OK if service.ok(results) else EXIT_VALIDATION_FAILED


def cmd_pde_dump(args: argparse.Namespace) -> int:
    params, state = _model(args), _state(args)
    require_valid(params, state)
    grid = PDEGrid(n_r=args.n_r, n_t=args.n_t)
    surface = solve_fk(
        params, lambda r: np.ones_like(r), state.t, args.maturity, grid, r0=state.r
    )
    out = args.out or Path("surface.csv")
    rows = write_surface_csv(
        surface, out, time_stride=args.time_stride, rate_stride=args.rate_stride
    )
    logger.info("wrote %d surface rows to %s", rows, out)
    return EXIT_OK


def cmd_mc(args: argparse.Namespace) -> int:
    params, state = _model(args), _state(args)
    config = MCConfig(
        paths=args.paths,
        steps=args.steps,
        seed=args.seed,
        scheme=args.scheme,
        antithetic=args.antithetic,
    )
    if args.strike is None:
        result = mc_bond_price(params, state, args.maturity, config)
    else:
        if args.expiry is None:
            raise ValueError("--expiry is required with --strike")
        spec = OptionSpec(
            kind=args.kind, strike=args.strike, expiry=args.expiry, bond_maturity=args.maturity
        )
        result = mc_option_price(params, state, spec, config)
    print(
        f"estimate={result.estimate:.10g}, std_error={result.std_error:.3e}, "
        f"paths={result.paths_used}"
    )
    return EXIT_OK


COMMANDS: Dict[str, Callable[[argparse.Namespace], int]] = {
    "bond": cmd_bond,
    "option": cmd_option,
    "curve": cmd_curve,
    "figure1": cmd_figure1,
    "figure2": cmd_figure2,
    "validate": cmd_validate,
    "pde-dump": cmd_pde_dump,
    "mc": cmd_mc,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    _configure_logging(args.verbose)
    try:
        return COMMANDS[args.command](args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except RuntimeError as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_VALIDATION_FAILED


if __name__ == "__main__":
    sys.exit(main())

"""Command-line entry point: one subcommand per scenario plus 'check'"""
#%%
# Import modules and libraries needed within code.
import argparse
import sys

from loguru import logger

from cli.checks import run_checks
from cli.config import Scenario, parse_config, parse_config_file
from cli.scenarios import run_scenario
from nonstatic.errors import ConfigError, NonstaticError, OutputUnwritable
from utils.logging_setup import configure_logging
from utils.output import OutputConfig, write_json


#%%
#
EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_COMPUTATION = 3
EXIT_CHECKS_FAILED = 4

# Flag destination -> (config section, key).
OVERRIDES = {
    "omega": ("mode", "omega")
    , "c1": ("mode", "c1")
    , "c2": ("mode", "c2")
    , "c3": ("mode", "c3")
    , "sign": ("mode", "sign")
    , "t0": ("mode", "t0")
    , "phi": ("mode", "phi")
    , "n": ("fock", "n")
    , "m": ("fock", "m")
    , "theta": ("field", "theta")
    , "alpha0": ("field", "alpha0")
    , "k": ("field", "k")
    , "volume": ("field", "volume")
    , "hbar": ("consts", "hbar")
    , "epsilon": ("consts", "epsilon")
    , "beta_n": ("fock", "beta_n")
    , "beta_m": ("fock", "beta_m")
    , "gamma_d0": ("fock", "gamma_d0")
    , "gamma_g0": ("fock", "gamma_g0")
    , "omega_ii": ("interference", "omega_ii")
    , "sign_ii": ("interference", "sign_ii")
    , "t_min": ("grid", "t_min")
    , "t_max": ("grid", "t_max")
    , "t_steps": ("grid", "t_steps")
    , "x_min": ("grid", "x_min")
    , "x_max": ("grid", "x_max")
    , "x_steps": ("grid", "x_steps")
    , "q_min": ("grid", "q_min")
    , "q_max": ("grid", "q_max")
    , "q_steps": ("grid", "q_steps")
    , "out": ("output", "prefix")
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description="Datasets and checks for nonstatic light waves in a static medium.")
    subparsers = parser.add_subparsers(dest="scenario", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON scenario document; flags override its values.")
    common.add_argument("--out", help="Output path prefix (default output/run).")
    common.add_argument("--threads", type=int, default=1, help="Worker threads; never changes output bytes.")
    common.add_argument("--verbose", action="store_true", help="Log at DEBUG level.")

    for scenario in Scenario:
        sub = subparsers.add_parser(scenario.value, parents=[common])
        if scenario == Scenario.CHECK:
            sub.add_argument("--level", choices=["fast", "full"], default=None)
            continue
        for flag in ("omega", "c1", "c2", "c3", "t0", "phi", "theta", "alpha0", "k", "volume", "hbar", "epsilon", "gamma-d0", "gamma-g0", "t-min", "t-max", "x-min", "x-max", "q-min", "q-max"):
            sub.add_argument(f"--{flag}", type=float)
        for flag in ("n", "m", "t-steps", "x-steps", "q-steps"):
            sub.add_argument(f"--{flag}", type=int)
        for flag in ("beta-n", "beta-m"):
            sub.add_argument(f"--{flag}", type=float, nargs=2, metavar=("RE", "IM"))
        sub.add_argument("--sign", choices=["+", "-"])
        if scenario == Scenario.INTERFERENCE:
            sub.add_argument("--omega-ii", type=float)
            sub.add_argument("--sign-ii", choices=["+", "-"])
    return parser


def collect_overrides(args: argparse.Namespace) -> dict:
    """Nested override mapping from the flags that were given."""
    overrides: dict = {"scenario": args.scenario}
    for dest, (section, key) in OVERRIDES.items():
        value = getattr(args, dest, None)
        if value is not None:
            overrides.setdefault(section, {})[key] = value
    if getattr(args, "level", None) is not None:
        overrides.setdefault("output", {})["level"] = args.level
    return overrides


def main(argv: list[str] | None = None) -> int:
    """
    Purpose:
        Parse flags, run the scenario or the check suite, and map errors to exit codes.
    Returns:
        0 on success, 2 for configuration errors, 3 for computation or output errors,
        4 when any check fails.
    """
    args = build_parser().parse_args(argv)
    configure_logging(args.verbose)
    overrides = collect_overrides(args)

    try:
        config = parse_config_file(args.config, overrides) if args.config else parse_config("", overrides)
    except ConfigError as e:
        logger.error(f"Configuration error: {e}")
        return EXIT_CONFIG

    try:
        outputs = OutputConfig(config.output.prefix)
        outputs.ensure_directories()
        configure_logging(args.verbose, outputs.get_log_path())
        if config.scenario == Scenario.CHECK:
            report = run_checks(config.output.level)
            write_json(report, outputs.get_report_path())
            return EXIT_OK if report["passed"] else EXIT_CHECKS_FAILED
        run_scenario(config, threads=args.threads)
    except (OutputUnwritable, NonstaticError) as e:
        logger.error(f"{type(e).__name__}: {e}")
        return EXIT_COMPUTATION
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

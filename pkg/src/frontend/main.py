"""
Command-line entry point for the Ising-anyon simulator
"""
import argparse
import json
import logging
import sys
from pathlib import Path
from typing import List, Optional

# Add src directory to path
src_path = Path(__file__).parent.parent
sys.path.insert(0, str(src_path))

from backend.reporting.report_generator import FORMATS, ReportGenerator
from backend.services.configuration_manager import ConfigurationManager
from backend.simulation.simulation_engine import ORBIT_STATES, AnalysisResult, SimulationEngine
from backend.protocols.verification import PROTOCOL_GROUPS

logger = logging.getLogger(__name__)

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR")

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_CHECK_FAILED = 2

# Summary key printed on its own for analyses without a table
HEADLINE_VALUES = {
    "threshold_a8": "delta8",
    "threshold_a4": "delta4",
    "orbit": "orbit_size",
}


class CommandParser(argparse.ArgumentParser):
    """ArgumentParser whose usage errors exit with status 1"""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _global_options() -> argparse.ArgumentParser:
    # SUPPRESS keeps a flag given before the subcommand from being reset after it
    options = argparse.ArgumentParser(add_help=False)
    options.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="Random seed")
    options.add_argument("--threads", type=int, default=argparse.SUPPRESS, help="Monte Carlo worker count")
    options.add_argument("--out", default=argparse.SUPPRESS, help="Write output to this file instead of stdout")
    options.add_argument("--format", choices=FORMATS, default=argparse.SUPPRESS, help="Output format")
    options.add_argument("--config", default=argparse.SUPPRESS, help="JSON configuration file")
    options.add_argument("--log-level", choices=LOG_LEVELS, type=str.upper, default=argparse.SUPPRESS)
    options.add_argument("--show-config", action="store_true", default=argparse.SUPPRESS,
                         help="Print the merged configuration as JSON and exit")
    return options


def build_parser() -> argparse.ArgumentParser:
    options = _global_options()
    parser = CommandParser(prog="anyon-sim", parents=[options],
                           description="Ising-anyon topological quantum computation simulator")
    commands = parser.add_subparsers(dest="command", metavar="COMMAND")

    flow_a8 = commands.add_parser("flow-a8", parents=[options], help="|a8> full-round flow curve")
    flow_a8.add_argument("--eps-min", type=float, default=0.0)
    flow_a8.add_argument("--eps-max", type=float, default=0.38)
    flow_a8.add_argument("--steps", type=int, default=100)

    commands.add_parser("threshold-a8", parents=[options], help="Fixed point of the |a8> flow")

    mc_a8 = commands.add_parser("mc-a8", parents=[options], help="Monte Carlo of the |a8> inventory")
    mc_a8.add_argument("--eps0", type=float, required=True)
    mc_a8.add_argument("--k", type=int, required=True)
    mc_a8.add_argument("--n0", type=int, nargs="+", required=True)
    mc_a8.add_argument("--trials", type=int, default=None)

    flow_a4 = commands.add_parser("flow-a4", parents=[options], help="|a4> distillation flow")
    flow_a4.add_argument("--eps", type=float, nargs="+", required=True)
    mode = flow_a4.add_mutually_exclusive_group()
    mode.add_argument("--ec", dest="error_correction", action="store_true", default=None,
                      help="Absorb stabilizer outcomes into a Pauli frame")
    mode.add_argument("--no-ec", dest="error_correction", action="store_false",
                      help="Accept only the trivial syndrome")

    commands.add_parser("threshold-a4", parents=[options], help="Fixed point of the |a4> flow")

    verify = commands.add_parser("protocols-verify", parents=[options], help="Check every protocol branch")
    verify.add_argument("--protocol", default="all", choices=sorted(PROTOCOL_GROUPS))
    verify.add_argument("--report", default=None, help="Write the per-branch JSON report here")

    cost = commands.add_parser("cost", parents=[options], help="Operation cost of the non-topological gates")
    cost.add_argument("--N", type=float, required=True, help="Circuit size; target gate error is 1/N")
    cost.add_argument("--eps0-a4", type=float, default=0.01)
    cost.add_argument("--eps0-a8", type=float, default=0.1)

    orbit = commands.add_parser("orbit", parents=[options], help="Size of a braid-group orbit")
    orbit.add_argument("--state", choices=ORBIT_STATES, required=True)

    simulate = commands.add_parser("simulate", parents=[options], help="Run a JSON braid circuit")
    simulate.add_argument("--circuit", required=True)

    return parser


def load_configuration(args: argparse.Namespace) -> ConfigurationManager:
    """Defaults < config file < ANYON_ environment < flags"""
    manager = ConfigurationManager(getattr(args, "config", None))
    overrides = (("seed", "service", "seed"),
                 ("threads", "service", "threads"),
                 ("format", "service", "output_format"),
                 ("log_level", "system", "log_level"))
    for flag, section, key in overrides:
        if hasattr(args, flag):
            manager.set_config(section, key, getattr(args, flag))
    return manager


def configure_logging(level: str) -> None:
    logging.basicConfig(level=getattr(logging, level.upper(), logging.INFO), format=LOG_FORMAT)


def setup_analysis(engine: SimulationEngine, args: argparse.Namespace) -> None:
    """Translate a parsed subcommand into an analysis configuration"""
    command = args.command
    if command == "flow-a8":
        engine.setup_flow_a8(args.eps_min, args.eps_max, args.steps)
    elif command == "threshold-a8":
        engine.setup_threshold_a8()
    elif command == "mc-a8":
        engine.setup_mc_a8(args.eps0, args.k, args.n0, args.trials)
    elif command == "flow-a4":
        engine.setup_flow_a4(args.eps, args.error_correction)
    elif command == "threshold-a4":
        engine.setup_threshold_a4()
    elif command == "protocols-verify":
        engine.setup_protocol_verification(args.protocol)
    elif command == "cost":
        engine.setup_cost(args.N, args.eps0_a4, args.eps0_a8)
    elif command == "orbit":
        engine.setup_orbit(args.state)
    elif command == "simulate":
        engine.setup_simulation(args.circuit)
    else:
        raise ValueError(f"Unknown command: {command}")


def render_result(result: AnalysisResult, fmt: str, parameters: dict) -> str:
    generator = ReportGenerator(result.analysis_type, parameters)
    if fmt == "json":
        if result.document is not None:
            return generator.render_document({"summary": result.summary, **result.document})
        if result.table is None:
            return generator.render_document({"summary": result.summary})
        return generator.render_table(result.table, fmt)
    if result.table is not None:
        return generator.render_table(result.table, fmt)
    headline = HEADLINE_VALUES.get(result.analysis_type)
    if headline is not None:
        return f"{result.summary[headline]}\n"
    return generator.render_table([result.summary], fmt)


def main(argv: Optional[List[str]] = None) -> int:
    """Parse arguments, run one analysis and return the process exit code"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE

    try:
        manager = load_configuration(args)
    except (ValueError, KeyError) as e:
        print(f"anyon-sim: error: {e}", file=sys.stderr)
        return EXIT_USAGE

    configure_logging(manager.get("system", "log_level"))

    if getattr(args, "show_config", False):
        print(json.dumps(manager.get_all_config(), indent=2, sort_keys=True))
        return EXIT_OK
    if args.command is None:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE

    engine = SimulationEngine(manager)
    try:
        setup_analysis(engine, args)
    except ValueError as e:
        print(f"anyon-sim: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    result = engine.run()

    if result.status == "check_failed":
        print(f"anyon-sim: self-check failed: {result.error_message}", file=sys.stderr)
        return EXIT_CHECK_FAILED
    if result.status != "completed":
        print(f"anyon-sim: error: {result.error_message}", file=sys.stderr)
        return EXIT_USAGE

    fmt = manager.get("service", "output_format")
    generator = ReportGenerator(result.analysis_type, engine.config.parameters)
    logger.info("\n" + generator.build_summary(result.summary))
    try:
        text = render_result(result, fmt, engine.config.parameters)
        out = getattr(args, "out", None)
        if out is None:
            sys.stdout.write(text)
        else:
            generator.write(text, out)
        report = getattr(args, "report", None)
        if report is not None and result.document is not None:
            generator.write(generator.render_document({"summary": result.summary, **result.document}), report)
    except (OSError, ValueError) as e:
        print(f"anyon-sim: error: could not write output: {e}", file=sys.stderr)
        return EXIT_USAGE

    if not result.check_passed:
        logger.error(f"{result.analysis_type}: numerical check failed")
        return EXIT_CHECK_FAILED
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

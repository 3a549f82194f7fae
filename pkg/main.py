#!/usr/bin/env python3
"""
Main Application Entry Point

Command-line interface for random-feature variance benchmarks, kernel
regression classification, attention benchmarks and synthetic data.
"""

import argparse
import sys
from pathlib import Path
from typing import List, Optional

from src.config.patterns import get_patterns
from src.config.settings import get_settings
from src.core.exceptions import RFKError
from src.core.logging_config import configure_from_settings, get_logger, setup_logging
from src.core.results import Result
from src.core.rng import RngState
from src.kernel_ops.attention import AttentionMode
from src.mechanisms.params import MechanismKind
from src.processors.dataset_loader import load_labeled_csv, load_mechanism_json
from src.processors.regime_generator import Regime, RegimeKind, generate_regime
from src.result_emitter import OutputFormat, emit_results
from src.services.attention_service import AttentionBenchmarkService
from src.services.classification_service import ClassificationService
from src.services.variance_service import VarianceBenchmarkService

settings = get_settings()
configure_from_settings(settings)
logger = get_logger(__name__)

ALL_MECHANISMS = ','.join(kind.value for kind in MechanismKind)
ALL_MODES = ','.join(mode.value for mode in AttentionMode)


def _list(text: str) -> List[str]:
    return get_patterns().split_list(text)


def _int_list(text: str) -> List[int]:
    try:
        return [int(item) for item in _list(text)]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a list of integers, got {text!r}")


def _float_list(text: str) -> List[float]:
    try:
        return [float(item) for item in _list(text)]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a list of numbers, got {text!r}")


def _output_path(args, name: str) -> Path:
    if args.out:
        return Path(args.out)
    return Path(settings.output_dir) / f"{name}.{args.format}"


def _emit(result: Result, args, name: str) -> int:
    """Write a successful result, or report the failure; returns the exit code."""
    if result.is_failure():
        logger.error(result.get_error())
        return result.exit_code
    path = emit_results(result.get_value(), args.format, _output_path(args, name), args.include_timing)
    print(path)
    return 0


def _regime_from_args(args) -> Regime:
    return Regime(kind=RegimeKind(args.regime), sigma=args.sigma, d=args.d, L=args.l, path=args.path)


def run_variance(args) -> int:
    """Variance benchmark over one regime."""
    regime = _regime_from_args(args)
    result = VarianceBenchmarkService().run(
        [regime], _list(args.mechanisms), repeats=args.repeats, seed=args.seed
    )
    return _emit(result, args, 'variance')


def run_classify(args) -> int:
    """Kernel-regression classification of a test CSV."""
    train = load_labeled_csv(args.train)
    test = load_labeled_csv(args.test, n_classes=train.n_classes)
    if args.mechanism_json:
        mechanism = load_mechanism_json(args.mechanism_json, dim=train.dim)
    else:
        mechanism = None if args.mechanism.lower() == 'exact' else args.mechanism
    result = ClassificationService().run(
        train, test, mechanism, M=args.m, seed=args.seed, sigmas=args.sigmas, seeds=args.seeds
    )
    return _emit(result, args, 'classify')


def run_attention(args) -> int:
    """Attention approximation error table."""
    result = AttentionBenchmarkService().run(
        args.l, args.d, _list(args.modes), args.ms, args.seeds, seed=args.seed
    )
    return _emit(result, args, 'attention')


def run_gen_data(args) -> int:
    """Write the two sets of a regime as CSV rows tagged x / y."""
    X, Y = generate_regime(RngState(args.seed), _regime_from_args(args))
    records = []
    for tag, rows in (('x', X), ('y', Y)):
        for row in rows:
            record = {'set': tag}
            record.update({f"c{index}": float(value) for index, value in enumerate(row)})
            records.append(record)
    path = emit_results(records, args.format, _output_path(args, 'data'))
    print(path)
    return 0


def _add_common(parser: argparse.ArgumentParser, default_format: str = 'json') -> None:
    parser.add_argument('--seed', type=int, default=settings.default_seed,
                        help=f'Random seed (default: {settings.default_seed})')
    parser.add_argument('--out', type=str, default=None,
                        help=f'Output file (default: {settings.output_dir}/<command>.<format>)')
    parser.add_argument('--format', choices=[f.value for f in OutputFormat], default=default_format,
                        help=f'Output format (default: {default_format})')


def _add_regime(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--regime', choices=[k.value for k in RegimeKind], default='normal',
                        help='Input distribution (default: normal)')
    parser.add_argument('--sigma', type=float, default=1.0, help='Scale (default: 1.0)')
    parser.add_argument('--d', type=int, default=64, help='Dimension (default: 64)')
    parser.add_argument('--l', type=int, default=1024, help='Set size (default: 1024)')
    parser.add_argument('--path', type=str, default=None, help='Numeric CSV for the csv regime')


def build_parser() -> argparse.ArgumentParser:
    """Build the argument parser with all subcommands."""
    parser = argparse.ArgumentParser(
        description='Random-feature estimators of Gaussian and softmax kernels'
    )
    parser.add_argument('--log-level', type=str, default=None,
                        help=f'Logging level (default: {settings.log_level})')
    parser.add_argument('--include-timing', action='store_true', default=settings.include_timing,
                        help='Emit wall-time fields (output then differs between runs)')
    commands = parser.add_subparsers(dest='command', required=True)

    variance = commands.add_parser('variance', help='Analytic variance benchmark')
    _add_regime(variance)
    variance.add_argument('--mechanisms', type=str, default=ALL_MECHANISMS,
                          help=f'Comma-separated mechanisms (default: {ALL_MECHANISMS})')
    variance.add_argument('--repeats', type=int, default=5, help='Set redraws (default: 5)')
    _add_common(variance)
    variance.set_defaults(handler=run_variance)

    classify = commands.add_parser('classify', help='Kernel-regression classifier')
    classify.add_argument('--train', type=str, required=True, help='Training CSV (last column = label)')
    classify.add_argument('--test', type=str, required=True, help='Test CSV (last column = label)')
    classify.add_argument('--mechanism', type=str, default='oprf', help="Mechanism name or 'exact'")
    classify.add_argument('--mechanism-json', type=str, default=None,
                          help='JSON mechanism object (kind, A_re, A_im, s, lambda, p); overrides --mechanism')
    classify.add_argument('--m', type=int, default=128, help='Real-number feature budget (default: 128)')
    classify.add_argument('--sigmas', type=_float_list, default=None, help='Comma-separated sigma grid')
    classify.add_argument('--seeds', type=int, default=None,
                          help=f'Feature seeds per evaluation (default: {settings.classify_seeds})')
    _add_common(classify)
    classify.set_defaults(handler=run_classify)

    attention = commands.add_parser('attention-bench', help='FAVOR++ attention error benchmark')
    attention.add_argument('--l', type=int, default=64, help='Sequence length (default: 64)')
    attention.add_argument('--d', type=int, default=8, help='Head dimension (default: 8)')
    attention.add_argument('--modes', type=str, default=ALL_MODES, help=f'Modes (default: {ALL_MODES})')
    attention.add_argument('--ms', type=_int_list, default=[16, 64, 256, 1024],
                           help='Feature counts (default: 16,64,256,1024)')
    attention.add_argument('--seeds', type=int, default=20, help='Projection seeds (default: 20)')
    _add_common(attention)
    attention.set_defaults(handler=run_attention)

    gen_data = commands.add_parser('gen-data', help='Write a synthetic regime as CSV')
    _add_regime(gen_data)
    _add_common(gen_data, default_format='csv')
    gen_data.set_defaults(handler=run_gen_data)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point for the application."""
    args = build_parser().parse_args(argv)
    if not settings.validate():
        logger.error("Invalid configuration: check the RFK_* environment variables")
        return 2
    if args.log_level:
        setup_logging(level=args.log_level, format_string=settings.log_format, log_file=settings.log_file)

    try:
        return args.handler(args)
    except RFKError as e:
        logger.error(f"{type(e).__name__}: {e}")
        return e.exit_code
    except KeyboardInterrupt:
        logger.info("Interrupted by user")
        return 1
    except Exception as e:
        logger.error(f"Fatal error: {e}", exc_info=True)
        return 1


if __name__ == '__main__':
    sys.exit(main())

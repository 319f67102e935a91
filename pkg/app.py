import json
import logging
import sys

import click
import yaml

from src import __version__
from src.errors import (
    ConfigValidationError,
    FitError,
    InvalidChainSpecError,
    MomentumError,
    OracleCapError,
    VerificationError,
)
from src.export.csv_exporter import export_to_csv
from src.export.plot_script import write_plot_script
from src.processing.commands import COMMANDS, cmd_verify, plot_script_for
from src.processing.presets import figure_presets
from src.processing.run_config import FLAG_NAMES, PROGRAM, RunConfig
from src.utils.config import get_config
from src.utils.logger import setup_logging

logger = logging.getLogger(__name__)

ENV_PREFIX = 'KITAEV'
EXIT_VALIDATION = 1
EXIT_VERIFICATION = 2
EXIT_IO = 3

VALIDATION_ERRORS = (InvalidChainSpecError, MomentumError, OracleCapError, FitError)


class KitaevCLI(click.Group):
    """Maps library errors to the documented exit codes."""

    def main(self, args=None, prog_name=None, **extra):
        extra.pop('standalone_mode', None)
        extra.setdefault('auto_envvar_prefix', ENV_PREFIX)
        try:
            rv = super().main(args=args, prog_name=prog_name or PROGRAM, standalone_mode=False, **extra)
        except ConfigValidationError as e:
            for problem in e.problems:
                click.echo(f"error: {problem}", err=True)
            sys.exit(EXIT_VALIDATION)
        except VerificationError as e:
            click.echo(f"verification failed: {e}", err=True)
            sys.exit(EXIT_VERIFICATION)
        except VALIDATION_ERRORS as e:
            click.echo(f"error: {e}", err=True)
            sys.exit(EXIT_VALIDATION)
        except click.ClickException as e:
            e.show()
            sys.exit(EXIT_VALIDATION)
        except click.Abort:
            click.echo("Aborted!", err=True)
            sys.exit(EXIT_VALIDATION)
        except OSError as e:
            click.echo(f"I/O error: {e}", err=True)
            sys.exit(EXIT_IO)
        sys.exit(rv if isinstance(rv, int) else 0)


def _setting(key: str, default):
    return lambda: get_config().get(key, default)


def _normalize_keys(mapping: dict) -> dict:
    """Accept both field names (n_sites) and flag names (n, k-range) in config files."""
    by_flag = {flag.lstrip('-').replace('-', '_'): name for name, flag in FLAG_NAMES.items()}
    return {by_flag.get(str(key).replace('-', '_'), str(key).replace('-', '_')): value for key, value in mapping.items()}


def _load_config_file(path: str) -> dict:
    with open(path, 'r', encoding='utf-8') as f:
        data = yaml.safe_load(f) or {}
    if not isinstance(data, dict):
        raise click.BadParameter("config file must be a flat 'key: value' mapping", param_hint='--config')
    return _normalize_keys(data)


def chain_options(func):
    """Model, state and output flags shared by the computing subcommands."""
    options = [
        click.option('--n', 'n_sites', type=int, default=_setting('model.n_sites', 32), show_default='model.n_sites',
                     help='Number of spins (multiple of 4, at least 8).'),
        click.option('--jx', 'j_x', type=float, default=_setting('model.j_x', 1.0), show_default='model.j_x',
                     help='x-bond coupling, the energy unit.'),
        click.option('--r', 'r', type=float, default=_setting('model.r', 1.0), show_default='model.r',
                     help='Anisotropy j_y / j_x.'),
        click.option('--hf', 'h_f', type=float, default=_setting('model.h_f', 1.0), show_default='model.h_f',
                     help='Field of the forward evolution.'),
        click.option('--hb', 'h_b', type=float, default=_setting('model.h_b', -1.0), show_default='model.h_b',
                     help='Field of the backward evolution.'),
        click.option('--state', default='vacuum', show_default=True,
                     help='vacuum, magnon:<m-index-or-momentum> or uniform.'),
        click.option('--out', type=click.Path(dir_okay=False), default=None,
                     help='CSV output path (stdout when omitted).'),
        click.option('--plot-script', 'plot_script', type=click.Path(dir_okay=False), default=None,
                     help='Also write a gnuplot script for the CSV.'),
        click.option('--workers', type=int, default=None,
                     help='Worker threads (0 = all cores; default from processing.max_workers).'),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def time_options(func):
    func = click.option('--dt', type=float, default=_setting('time_grid.dt', 0.01), show_default='time_grid.dt',
                        help='Time step.')(func)
    func = click.option('--tmax', 't_max', type=float, default=_setting('time_grid.t_max', 10.0),
                        show_default='time_grid.t_max', help='Last time of the grid (units of 1/j_x).')(func)
    return func


def window_option(func):
    return click.option('--window', type=int, default=None, help='Sliding-average window in samples.')(func)


def _run(subcommand: str, params: dict):
    config = RunConfig(subcommand=subcommand, **params).validate()
    logger.info(f"{subcommand} started: {config.command_line()}")
    try:
        table = COMMANDS[subcommand](config)
        if config.out:
            export_to_csv(table, config.out)
        else:
            click.echo(export_to_csv(table), nl=False)
        if config.plot_script:
            data_file = config.out or '-'
            write_plot_script(plot_script_for(config, table, data_file, config.plot_script), config.plot_script)
    except OSError as e:
        logger.error(f"Writing results failed: {e}")
        raise
    logger.info(f"{subcommand} finished: {len(table.rows)} rows")


@click.group(cls=KitaevCLI)
@click.option('--config', 'config_file', type=click.Path(exists=True, dir_okay=False), default=None,
              help='Flat YAML file of flag defaults (flags still win).')
@click.option('--preset', default=None, help='Pre-fill flags from a figure preset (see `figures`).')
@click.option('--verbose', '-v', is_flag=True, help='Debug logging.')
@click.version_option(__version__, prog_name=PROGRAM)
@click.pass_context
def cli(ctx, config_file, preset, verbose):
    """Loschmidt echo and magnon momentum distributions of the Kitaev spin chain."""
    setup_logging('DEBUG' if verbose else None)
    defaults = {}
    if preset is not None:
        presets = figure_presets()
        if preset not in presets:
            raise click.BadParameter(f"unknown preset {preset!r}; run `{PROGRAM} figures`", param_hint='--preset')
        if ctx.invoked_subcommand != presets[preset].subcommand:
            raise click.UsageError(f"preset {preset} belongs to `{presets[preset].subcommand}`")
        defaults.update(presets[preset].params)
    if config_file is not None:
        defaults.update(_load_config_file(config_file))
    if defaults and ctx.invoked_subcommand:
        ctx.default_map = {ctx.invoked_subcommand: defaults}


@cli.command()
@chain_options
@time_options
@window_option
@click.option('--average', is_flag=True, help='Record the time average (default horizon rule) in the header.')
@click.option('--sizes', default=None, help='With --average: comma-separated sizes, one average per size.')
def echo(**params):
    """L(t) on a time grid."""
    _run('echo', params)


@cli.command()
@chain_options
@time_options
@window_option
@click.option('--time', type=float, default=None, help='Fixed time for a k scan.')
@click.option('--k-range', 'k_range', default=None, help="kmin:kmax (pi forms allowed) or 'all'.")
@click.option('--k', default=None, help='Fixed momentum for a time scan, e.g. pi/32.')
def momdist(**params):
    """P(k) at a fixed time, or P(t) at a fixed k."""
    _run('momdist', params)


@cli.command()
@chain_options
@click.option('--hf-range', 'hf_range', default=None, help='Forward fields start:stop:step.')
@click.option('--time', type=float, default=1.2, show_default=True)
@click.option('--sizes', default=None, help='Comma-separated chain sizes (default: --n).')
def sweep(**params):
    """L at a fixed time against the forward field."""
    _run('sweep', params)


@cli.command()
@chain_options
@window_option
@click.option('--tau', type=float, default=_setting('kicks.tau', 0.2617993877991494), show_default='kicks.tau',
              help='Kick period.')
@click.option('--kicks', 'n_kicks', type=int, default=_setting('kicks.n_kicks', 200), show_default='kicks.n_kicks',
              help='Number of kicks.')
def kicked(**params):
    """Stroboscopic L(n tau) under a delta-kicked field."""
    _run('kicked', params)


@cli.command()
@chain_options
@click.option('--sizes', default='20,40,60,80,100', show_default=True)
@click.option('--time', type=float, default=1.2, show_default=True)
@click.option('--synthetic', is_flag=True, hidden=True)
def scaling(**params):
    """Peak momentum probability of the uniform state against N, with a power-law fit."""
    params['state'] = 'uniform'
    _run('scaling', params)


@cli.command()
@click.option('--n', 'n_sites', type=int, default=8, show_default=True)
@click.option('--r', 'r', type=float, default=1.0, show_default=True, help='Extra anisotropy next to 0.5 and 1.')
@click.option('--hf', 'h_f', type=float, default=1.0, show_default=True)
@click.option('--hb', 'h_b', type=float, default=-1.0, show_default=True)
@click.option('--tmax', 't_max', type=float, default=_setting('oracle.t_max', 5.0), show_default='oracle.t_max')
@click.option('--dt', type=float, default=_setting('oracle.dt', 0.1), show_default='oracle.dt')
@click.option('--workers', type=int, default=None)
@click.option('--corrupt', is_flag=True, hidden=True)
def verify(**params):
    """Compare the quartet engine with exact diagonalization; exit 2 on any deviation."""
    config = RunConfig(subcommand='verify', **params).validate()
    report = cmd_verify(config)
    click.echo(json.dumps(report.as_dict(), indent=2, sort_keys=True))
    if not report.passed:
        raise VerificationError(f"deviation above {report.tolerance:g} in {', '.join(report.failures)}", report.as_dict())


@cli.command()
def figures():
    """List the figure presets and the commands they run."""
    for name, preset in figure_presets().items():
        command = RunConfig(subcommand=preset.subcommand, **preset.params).command_line()
        click.echo(f"{name:6}  {preset.caption}")
        click.echo(f"        {command}")


def main():
    cli()


if __name__ == '__main__':
    main()

#!/usr/bin/env python3
# -*- coding: utf-8 -*-
# setupcfg.py

"""
    Set up varord: command line, configuration file(s) and logger.

    Settings are read, lowest priority first, from:
    - /path/to/package/cfg/config_default.yaml
    - ~/.config/varord/config.yaml
    - the file given with --config (YAML or JSON)
    - command line arguments

    After main() the checked settings are available as module variables.
"""

# ----------------------------------------------
# import from standard lib
import argparse
import atexit
import importlib.util
import logging
import logging.config
import os
import sys
from pathlib import Path
from time import localtime, strftime

# import from other lib
import confuse  # Initialize config with your app
import errorhandler
import yaml

# import from my project
import varord
import varord.models as models
from varord.dataset import SPLIT_MODES, GeneratorConfig
from varord.errors import ConfigError, VarordError

# --- module's variable ------------------------
# public
global varordPath, logPath, log_filename, extraParam, generatorCfg, splitCfg, experimentCfg, studyCfg
# private
global _config, _cfg_path, _logcfg, _warning_handler, _error_handler, _fatal_handler

varordPath = None
logPath = None
log_filename = None
extraParam = None
generatorCfg = None
splitCfg = None
experimentCfg = None
studyCfg = None

_config = None
_cfg_path = None
_logcfg = None

COMMANDS = (
    "featurize",
    "label",
    "augment",
    "split",
    "generate",
    "rank",
    "train",
    "evaluate",
    "experiment",
    "repro-bias-study",
)


def _search_file(cfg_, filename_):
    """search file in several directory

    look for file 'filename_' in:
    - local directory or given path
    - user    config directory
    - package directory
    - package config directory

    :param cfg_:
    :param filename_: name of the file search
    :return: absolute path to filename_
    """
    if Path(filename_).is_file():
        # local directory
        return Path(filename_).absolute()
    elif Path(Path(cfg_.config_dir()) / filename_).is_file():
        # user config directory
        # ~/.config/<package> directory
        return Path(Path(cfg_.config_dir()) / filename_)
    elif Path(varordPath / filename_).is_file():
        # ~/path/to/package/ directory
        return Path(varordPath / filename_)
    elif Path(_cfg_path / filename_).is_file():
        # package config directory
        # ~/path/to/package/cfg directory
        return Path(_cfg_path / filename_)
    else:
        logging.error(
            f"can not find file -{filename_}-; " f"Check arguments/configuration file(s)"
        )
        raise ConfigError(f"Can not find file -{filename_}-")


def _section(cfg_, name_):
    """merged content of one configuration section"""
    try:
        return dict(cfg_[name_].flatten())
    except confuse.NotFoundError:
        return {}
    except confuse.ConfigError as exc:
        raise ConfigError(f"Invalid configuration section {name_}: {exc}") from exc


def _chk_config_extra(cfg_):
    """ """
    global extraParam

    try:
        extraParam = cfg_["extra"]["parameters"].get(str)
    except confuse.NotFoundError:
        logging.error("Can not find extra parameters; Check arguments/configuration file(s)")
        raise ConfigError("Missing setting extra.parameters") from None
    except confuse.ConfigError as exc:
        logging.error("Invalid parameters yaml filename; Check arguments/configuration file(s)")
        raise ConfigError(f"Invalid setting extra.parameters: {exc}") from None

    # check config file exist
    extraParam = _search_file(cfg_, extraParam)


def _chk_config_generator(cfg_):
    """ """
    global generatorCfg

    generatorCfg = GeneratorConfig.from_dict(_section(cfg_, "generator"))


def _chk_config_split(cfg_):
    """ """
    global splitCfg

    _ = {"test_fraction": 0.2, "mode": "random"}
    _.update(_section(cfg_, "split"))
    try:
        _["test_fraction"] = float(_["test_fraction"])
    except (TypeError, ValueError):
        raise ConfigError(f"Invalid split.test_fraction -{_['test_fraction']}-") from None
    if _["mode"] not in SPLIT_MODES:
        raise ConfigError(f"Invalid split.mode -{_['mode']}-, must be one of {SPLIT_MODES}")
    splitCfg = _


def _chk_config_experiment(cfg_):
    """ """
    global experimentCfg

    _ = _section(cfg_, "experiment")
    families = _.get("families") or list(models.families())
    if isinstance(families, str):
        families = [f.strip() for f in families.split(",") if f.strip()]
    for family in families:
        models.get_family(family)
    _["families"] = list(families)
    for key in ("seed", "folds"):
        try:
            _[key] = int(_[key])
        except (KeyError, TypeError, ValueError):
            raise ConfigError(f"Invalid experiment.{key} -{_.get(key)}-") from None
    experimentCfg = _


def _chk_config_study(cfg_):
    """ """
    global studyCfg

    studyCfg = _section(cfg_, "study")


def _chk_config(cfg_):
    """check configuration file(s) and store settings"""
    try:
        _chk_config_extra(cfg_)
        _chk_config_generator(cfg_)
        _chk_config_split(cfg_)
        _chk_config_experiment(cfg_)
        _chk_config_study(cfg_)
    except Exception:
        logging.exception(
            f"Something goes wrong when checking configuration file(s) "
            f"{cfg_.user_config_path()} and/or {cfg_.default_config_path}."
        )
        raise  # Throw exception again so calling code knows it happened


def _find_package_path(name):
    """Returns the path to the package containing the named module or
    None if the path could not be identified (e.g., if
    ``name == "__main__"``).
    """
    if name == "__main__":
        return None
    spec = importlib.util.find_spec(name)
    if spec is None or spec.origin is None:
        return None

    return os.path.dirname(os.path.abspath(spec.origin))


def _logger_header():
    """ """
    # add header to log file
    logging.info("-------------------")
    logging.info(f"package                  : {varord.__name__}")
    logging.info(f"version                  : {varord.__version__}")
    logging.info(f'start time               : {strftime("%Y-%m-%d %H:%M:%S", localtime())}')
    logging.info("-------------------")


def _logger_footer():
    """ """
    # add footer to log file
    logging.info("-------------------")
    logging.info(f"Warning     have occurred: {_warning_handler.fired}")
    logging.info(f"Error       have occurred: {_error_handler.fired}")
    logging.info(f"Fatal error have occurred: {_fatal_handler.fired}")
    logging.info(f'end time                 : {strftime("%Y-%m-%d %H:%M:%S", localtime())}')
    logging.info("-------------------")


def _setup_logger(config_):
    """set up logger

    set up logging parameters from command line arguments
    otherwise from configuration file(s)
    otherwise from logging configuration file: /path/to/package/cfg/logging.yaml
    """
    global logPath, log_filename, _cfg_path, _logcfg, _warning_handler, _error_handler, _fatal_handler

    _cfg_path = Path(_find_package_path(varord.__pkg_cfg__))
    if not _cfg_path.is_dir():
        logging.error("Can not find configuration path")
        raise FileNotFoundError(_cfg_path)

    _logcfg = _search_file(config_, "logging.yaml")
    try:
        with open(_logcfg, "rt") as file:
            cfg_log = yaml.safe_load(file.read())

        # overwrite default with config or parser value
        _log_level = config_["log"]["level"].get()
        if _log_level is not None:
            level = str(_log_level).upper()
            if level not in ("DEBUG", "INFO", "WARNING", "WARN", "ERROR", "CRITICAL"):
                raise ConfigError(f"Invalid log level -{_log_level}-")
            cfg_log["handlers"]["console"]["level"] = level

        # if verbose activated, print output on console
        _log_verbose = config_["log"]["verbose"].get()
        if not _log_verbose:
            # disable log on console
            cfg_log["handlers"].pop("console")
            cfg_log["root"]["handlers"].remove("console")

        # rename log file with config or parser value
        _log_filename = config_["log"]["filename"].get()
        if _log_filename is not None:
            cfg_log["handlers"]["file"]["filename"] = str(_log_filename)

        _paths_log = config_["paths"]["log"].get()
        if _paths_log is not None:
            logPath = Path(str(_paths_log))
        else:
            # ~/.config/<package>/log directory
            logPath = Path(config_.config_dir()) / "log"

        if not logPath.is_dir():
            logPath.mkdir(parents=True, exist_ok=True)
            logging.debug(f"log path {logPath} did not exist before.")

        filename = Path(cfg_log["handlers"]["file"]["filename"]).name
        cfg_log["handlers"]["file"]["filename"] = str(logPath / filename)

        logging.config.dictConfig(cfg_log)
        # redirect warnings issued by the warnings module to the logging system.
        logging.captureWarnings(True)
        # Track if message gets logged with severity of error or greater
        _warning_handler = errorhandler.ErrorHandler(logging.WARNING)
        _error_handler = errorhandler.ErrorHandler(logging.ERROR)
        _fatal_handler = errorhandler.ErrorHandler(logging.CRITICAL)

        # keep log filename and path name
        log_filename = Path(cfg_log["handlers"]["file"]["filename"]).resolve()

    except Exception:
        logging.exception("Error loading logging configuration file.")
        raise  # Throw exception again so calling code knows it happened

    _logger_header()
    atexit.register(_logger_footer)


def _add_io(parser_, *names_):
    """add path arguments to a sub-command"""
    helps = {
        "in": ("input", "input dataset (.jsonl or .csv)"),
        "out": ("output", "output file"),
    }
    for name in names_:
        dest, help_ = helps[name]
        parser_.add_argument(f"--{name}", type=str, required=True, help=help_, dest=dest)


def _build_parser():
    """ """
    # define parser
    parser = argparse.ArgumentParser(
        prog="varord",
        description="learn CAD variable orderings from labelled polynomial systems",
    )

    # optional arguments
    parser.add_argument(
        "-v",
        "--verbose",
        action="store_true",
        default=None,
        help="print status messages to stdout",
        dest="log.verbose",
    )
    parser.add_argument(
        "--log_level",
        type=str,
        choices=["debug", "info", "warning", "error", "critical"],
        help="stdout logger level",
        dest="log.level",
    )
    parser.add_argument("--log_filename", type=str, help="logger filename", dest="log.filename")
    parser.add_argument(
        "--log_path",
        type=str,
        help="logger path, where log will be stored",
        dest="paths.log",
    )
    parser.add_argument(
        "--config",
        type=str,
        help="configuration file (YAML or JSON), overwrite user and default ones",
        dest="config",
    )
    parser.add_argument(
        "--param",
        type=str,
        help="parameters configuration file (hyperparameter grids)",
        dest="extra.parameters",
    )
    parser.add_argument("--seed", type=int, help="master seed", dest="experiment.seed")
    #
    parser.add_argument(
        "--arguments",
        action="store_true",
        help="print arguments value (from config file and/or inline argument) and exit",
        dest="arguments",
    )
    parser.add_argument(
        "--families",
        action="store_true",
        help="print list of model families and exit",
        dest="list_families",
    )
    parser.add_argument(
        "--version",
        action="store_true",
        help="print release version and exit",
        dest="version",
    )

    sub = parser.add_subparsers(dest="command", metavar="command")

    _ = sub.add_parser("featurize", help="compute the features of each record")
    _add_io(_, "in", "out")

    _ = sub.add_parser("label", help="label records from oracle costs or timings")
    _add_io(_, "in", "out")
    group = _.add_mutually_exclusive_group(required=True)
    group.add_argument("--oracle", choices=["sotd"], help="projection cost oracle", dest="oracle")
    group.add_argument("--timings", type=str, help="timings CSV: id,t0..t5", dest="timings")

    _ = sub.add_parser("augment", help="add every variable permutation of each root")
    _add_io(_, "in", "out")

    _ = sub.add_parser("split", help="split a dataset into train and test files")
    _add_io(_, "in")
    _.add_argument("--train", type=str, required=True, help="train output file", dest="train")
    _.add_argument("--test", type=str, required=True, help="test output file", dest="test")
    _.add_argument("--test_fraction", type=float, help="share of test records", dest="split.test_fraction")
    _.add_argument("--mode", choices=list(SPLIT_MODES), help="split mode", dest="split.mode")

    _ = sub.add_parser("generate", help="generate labelled synthetic roots")
    _add_io(_, "out")
    _.add_argument("--n_systems", type=int, help="number of roots", dest="generator.n_systems")

    _ = sub.add_parser("rank", help="projection cost of every variable ordering")
    _add_io(_, "in", "out")

    _ = sub.add_parser("train", help="grid search, train and save one model")
    _add_io(_, "in", "out")
    _.add_argument("--family", type=str, required=True, help="model family", dest="family")
    _.add_argument("--grid", choices=["full", "quick"], help="grid used", dest="experiment.grids")

    _ = sub.add_parser("evaluate", help="accuracy and confusion matrix of a saved model")
    _add_io(_, "in")
    _.add_argument("--model", type=str, required=True, help="model file", dest="model")
    _.add_argument("--out", type=str, help="result JSON file", dest="output")

    _ = sub.add_parser("experiment", help="cross-dataset evaluation of every family")
    _.add_argument("--a", type=str, required=True, help="first dataset", dest="dataset_a")
    _.add_argument("--b", type=str, required=True, help="second dataset", dest="dataset_b")
    _.add_argument("--out", type=str, required=True, help="report directory", dest="output")
    _.add_argument("--grid", choices=["full", "quick"], help="grid used", dest="experiment.grids")

    _ = sub.add_parser("repro-bias-study", help="synthetic biased versus balanced study")
    _.add_argument("--out", type=str, required=True, help="study directory", dest="output")
    _.add_argument("--n_roots", type=int, help="number of synthetic roots", dest="study.n_roots")
    _.add_argument("--grid", choices=["full", "quick"], help="grid used", dest="study.grids")

    return parser


def _parse(argv_=None):
    """set up parameter from command line arguments"""
    parser = _build_parser()

    # parse arguments
    args = parser.parse_args(argv_)

    if args.command is None and not (args.version or args.arguments or args.list_families):
        parser.error(f"a command is required, one of {', '.join(COMMANDS)}")

    return args


def _setup_cfg():
    """set up from configuration file(s)

    read parameters from
    ~/.config/varord/config.yaml
    otherwise from
    /path/to/package/cfg/config_default.yaml
    """
    # set up configuration file
    try:
        # Read configuration file
        config_ = confuse.LazyConfig("varord", modname=varord.__pkg_cfg__)

        # set up default configuration file path
        pkg_path = Path(config_._package_path)
        config_.default_config_path = pkg_path / confuse.DEFAULT_FILENAME

        return config_

    except Exception:
        logging.exception("Something goes wrong when loading config file.")
        raise  # Throw exception again so calling code knows it happened


def _setup_path():
    """set up some useful path"""
    global varordPath

    varordPath = Path(_find_package_path(__package__))
    if not varordPath.is_dir():
        logging.error("Can not find package path")
        raise FileNotFoundError(varordPath)


def _default_logger():
    """creates default logger, before any setting up

    this default logger should only be used in case of any exception raised during setting up
    """
    logging.basicConfig(
        level=logging.INFO,
        style="{",
        format="{asctime} | {levelname:8} | {name} | {message}",
    )
    # redirect warnings issued by the warnings module to the logging system.
    logging.captureWarnings(True)


def _arguments(cfg_):
    """settings in use, as (name, value) lines"""
    return [
        ("config.pkg", cfg_.default_config_path),
        ("config.user", cfg_.user_config_path()),
        ("config.logging", _logcfg),
        ("paths.log", logPath),
        ("log.filename", log_filename),
        ("log.verbose", cfg_["log"]["verbose"].get()),
        ("log.level", cfg_["log"]["level"].get()),
        ("extra.parameters", extraParam),
        ("generator", generatorCfg.to_dict()),
        ("split", splitCfg),
        ("experiment", experimentCfg),
        ("study", studyCfg),
    ]


def _show_arguments(cfg_, print_=False):
    """ """
    for name, value in _arguments(cfg_):
        logging.debug(f"{name:<20}: {value}")

    if print_:
        for name, value in _arguments(cfg_):
            print(f"{name:<20}: {value}")
        sys.exit(0)


def _show_families():
    """ """
    print("model families:")
    for family in models.families(include_baseline=True):
        print(f"    {family}")
    sys.exit(0)


def _show_version():
    """ """
    # print release version
    print(f"package: {varord.__name__}")
    print(f"version: {varord.__version__}")
    sys.exit(0)


def main(argv_=None):
    """set up varord

    set up config file(s)
    set up logger

    :param argv_: command line arguments, sys.argv[1:] if None
    :return: parsed arguments
    """
    global _config

    # init default
    _default_logger()

    # setup package path
    _setup_path()

    # read configuration file(s)
    _config = _setup_cfg()

    # read command line arguments
    args = _parse(argv_)

    if args.version:
        _show_version()

    if args.list_families:
        _show_families()

    if args.config is not None:
        try:
            _config.set_file(args.config)
        except confuse.ConfigError as exc:
            raise ConfigError(f"Invalid configuration file -{args.config}-: {exc}") from exc

    # overwrite configuration file parameter with parser arguments
    _config.set_args(args, dots=True)

    # read logging configuration file
    _setup_logger(_config)

    # check configuration file
    try:
        _chk_config(_config)
    except VarordError:
        raise
    except confuse.ConfigError as exc:
        raise ConfigError(str(exc)) from exc

    # print parameters use from config file and/or inline command
    _show_arguments(_config, args.arguments)

    return args


if __name__ == "__main__":
    main()

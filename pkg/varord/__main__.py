#!/usr/bin/env python3
# -*- coding: utf-8 -*-
# __main__.py

# ----------------------------------------------
# import from standard lib
import logging
import sys

# import from other lib
# import from my project
import varord.models as models
import varord.parameters as parameters
import varord.pipeline as pipeline
import varord.setupcfg as setupcfg
import varord.timing as timing
from varord.dataset import SplitSpec
from varord.errors import VarordError

# exit codes
EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_INVALID = 2


# ----------------------------------------------
def _grids():
    """hyperparameter grids of the parameters file"""
    return parameters.main()["grids"]


def _family_grid(family_, grid_name_):
    grids = _grids()
    if grid_name_ not in grids:
        raise VarordError(f"Invalid grid -{grid_name_}-, must be one of {sorted(grids)}")
    if family_ in grids[grid_name_]:
        return grids[grid_name_][family_]
    return [models.make_hyperparams(family_)]


def _run(args):
    """run the sub-command"""
    seed = setupcfg.experimentCfg["seed"]
    command = args.command

    if command == "featurize":
        pipeline.cmd_featurize(args.input, args.output)
    elif command == "label":
        pipeline.cmd_label(args.input, args.output, oracle=args.oracle, timings_path=args.timings)
    elif command == "augment":
        pipeline.cmd_augment(args.input, args.output)
    elif command == "split":
        spec = SplitSpec(setupcfg.splitCfg["test_fraction"], seed, setupcfg.splitCfg["mode"])
        pipeline.cmd_split(args.input, args.train, args.test, spec)
    elif command == "generate":
        pipeline.cmd_generate(args.output, setupcfg.generatorCfg, seed)
    elif command == "rank":
        pipeline.cmd_rank(args.input, args.output)
    elif command == "train":
        models.get_family(args.family)
        grid = _family_grid(args.family, setupcfg.experimentCfg.get("grids", "full"))
        pipeline.cmd_train(
            args.input,
            args.output,
            args.family,
            grid,
            folds=setupcfg.experimentCfg["folds"],
            seed=seed,
            exclude_ties=bool(setupcfg.experimentCfg.get("exclude_ties", False)),
        )
    elif command == "evaluate":
        result = pipeline.cmd_evaluate(args.model, args.input, args.output)
        print(f"accuracy: {result['accuracy']:.4f} ({result['n']} records)")
    elif command == "experiment":
        settings = pipeline.ExperimentSettings.from_config(
            setupcfg.experimentCfg, setupcfg.splitCfg, _grids()
        )
        pipeline.cmd_experiment(args.dataset_a, args.dataset_b, args.output, settings)
    elif command == "repro-bias-study":
        study = setupcfg.studyCfg
        experiment = dict(
            setupcfg.experimentCfg,
            grids=study.get("grids", "quick"),
            folds=study.get("folds", setupcfg.experimentCfg["folds"]),
        )
        settings = pipeline.ExperimentSettings.from_config(experiment, setupcfg.splitCfg, _grids())
        bias = study.get("bias") or {}
        pipeline.cmd_repro_bias_study(
            args.output,
            seed,
            settings,
            setupcfg.generatorCfg,
            n_roots=study.get("n_roots", 600),
            target=bias.get("target"),
            size=bias.get("size", 1500),
            modes=study.get("modes"),
            exclude_seen=study.get("exclude_seen", True),
        )


def main(argv_=None):
    """run varord

    :param argv_: command line arguments, sys.argv[1:] if None
    :return: exit code, 0 on success, 2 on invalid input, 1 otherwise
    """
    try:
        # set up logger, paths, ...
        args = setupcfg.main(argv_)
    except SystemExit as exc:
        # --version, --arguments, --families or argparse usage error
        return exc.code if isinstance(exc.code, int) else EXIT_INVALID
    except VarordError as exc:
        print(f"varord: error: {exc}", file=sys.stderr)
        return EXIT_INVALID

    _logger = logging.getLogger(__name__)
    timing.start(args.command)

    try:
        _run(args)
    except VarordError as exc:
        _logger.error(f"{args.command} failed: {exc}")
        print(f"varord {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except Exception:
        _logger.exception(f"Something goes wrong when running {args.command}")
        return EXIT_FAILURE

    return EXIT_OK


def run():
    """console script entry point"""
    sys.exit(main())


if __name__ == "__main__":
    run()

# Copyright (c) 2026 The summ authors
# Distributed under the MIT license, see LICENSE.md
#------------------------------------------------------------------------------
#
# cli.py
# Command line entry point.  Subcommands:
#   learn     influencing set and parameters for one target
#   eval      split, grid search and test log likelihood per label
#   generate  sample a dataset from a generative spec
#   recover   influencing set recovery F1 over dataset sizes
#   graph     influence graph over every label, as DOT and JSON
#
# Exit codes: 0 ok, 1 SummError, 2 usage error.  Errors are printed to
# stderr as one JSON object {"error": kind, "message": text}.
#

import argparse
import json
import logging
import os
import sys
from dataclasses import dataclass, replace
from typing import Dict, Optional, Tuple, Union

from . import params
from .database import ResultsDatabase
from .datasetIO import (loadDataset, loadAlphabet, saveDataset, writeJson, writeFileAtomic,
                        FORMATS, FORMAT_CSV)
from .errors import SummError
from .evaluation import (SplitSpec, HyperGrid, evaluateDataset, markovChainSweep,
                         markovChainSpec, comparisonTable)
from .graphing import learnGraph, exportDot, exportJson, gammaSweep, graphConfig
from .search import (SearchConfig, learnModel, fitModel, targetFor, STARTS, START_EMPTY,
                     START_NEG_INF)
from .synthGen import GenerativeSpec, builtinB1Spec, generate, RecoveryExperiment

logger = logging.getLogger(__name__)

UNBOUNDED = ('none', 'inf', 'unbounded')
BUILTINS = {'b1': builtinB1Spec}


class UsageError(Exception):
    pass


class ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def parseList(text):
    return [t.strip() for t in text.split(',') if t.strip()]


def parseLookback(text):
    text = text.strip()
    if text.lower() in UNBOUNDED:
        return None
    try:
        return int(text)
    except ValueError:
        raise UsageError('look-back must be an integer or "none", got "%s"' % text)


def parseKappa(text):
    """ "3", "none" or per-label "B:3,C:none" """
    if ':' not in text:
        return parseLookback(text)
    kappa = dict()
    for item in parseList(text):
        label, _, value = item.rpartition(':')
        if not label:
            raise UsageError('per-label look-back needs LABEL:VALUE, got "%s"' % item)
        kappa[label] = parseLookback(value)
    return kappa


def parseFloats(text, name):
    try:
        return [float(t) for t in parseList(text)]
    except ValueError:
        raise UsageError('%s must be comma separated numbers, got "%s"' % (name, text))


def parseInts(text, name):
    try:
        return [int(t) for t in parseList(text)]
    except ValueError:
        raise UsageError('%s must be comma separated integers, got "%s"' % (name, text))


@dataclass
class RunConfig:
    command: str
    model: str = params.MODEL_BSUMM
    target: Optional[Tuple[str, ...]] = None
    kappa: Union[None, int, Dict[str, int]] = params.b1Lookback
    alpha: float = params.b1Alpha
    gamma: float = params.b1Gamma
    seed: int = 0
    split: Tuple[float, float, float] = params.splitFractions
    pool: Optional[Tuple[str, ...]] = None
    allowSelfLoop: bool = False
    repeatSweeps: bool = False
    start: Optional[str] = None
    out: str = '.'

    @classmethod
    def fromArgs(cls, args):
        config = cls(args.command)
        for name, attr in (('model', 'model'), ('seed', 'seed'), ('out', 'out'),
                           ('allow_self_loop', 'allowSelfLoop'),
                           ('repeat_sweeps', 'repeatSweeps'), ('start', 'start')):
            if getattr(args, name, None) is not None:
                setattr(config, attr, getattr(args, name))
        if getattr(args, 'target', None):
            config.target = tuple(parseList(args.target))
        if getattr(args, 'pool', None):
            config.pool = tuple(parseList(args.pool))
        if getattr(args, 'split', None):
            config.split = tuple(parseFloats(args.split, '--split'))
        return config

    def searchConfig(self, **overrides):
        config = SearchConfig(model=self.model, kappa=self.kappa, alpha=self.alpha,
                              gamma=self.gamma, pool=self.pool,
                              excludeTargets=not self.allowSelfLoop,
                              repeatSweeps=self.repeatSweeps,
                              start=self.start or START_EMPTY)
        return replace(config, **overrides)

    def outPath(self, name):
        return os.path.join(self.out, name)


def addDatasetArgs(parser):
    parser.add_argument('data', help='dataset file (.csv with seq_id,label or .jsonl)')
    parser.add_argument('--format', choices=FORMATS, help='dataset format, sniffed when omitted')
    parser.add_argument('--alphabet', help='file with one label per line')


def addSearchArgs(parser, selfLoop=True):
    parser.add_argument('--model', choices=params.MODEL_KINDS, default=params.MODEL_BSUMM)
    parser.add_argument('--kappa', help='look-back: integer, "none", or LABEL:K,... for bsumm')
    parser.add_argument('--alpha', help='Dirichlet prior strength')
    parser.add_argument('--gamma', help='BIC penalty weight')
    parser.add_argument('--pool', help='comma separated candidate influencers')
    if selfLoop:
        parser.add_argument('--allow-self-loop', action='store_true',
                            help='let target labels influence themselves')
    parser.add_argument('--repeat-sweeps', action='store_true',
                        help='repeat forward and backward sweeps until nothing changes')
    parser.add_argument('--start', choices=STARTS,
                        help='forward sweep starts from the empty set\'s score or from -inf '
                             '(default: empty, neg-inf for recover)')


def addSpecArgs(parser):
    group = parser.add_mutually_exclusive_group()
    group.add_argument('--builtin', choices=sorted(BUILTINS), help='built-in generative spec')
    group.add_argument('--spec', help='generative spec JSON file')


def buildParser():
    parser = ArgumentParser(prog='summ', description='Summary Markov models for event sequences')
    parser.add_argument('-v', '--verbose', action='count', default=0,
                        help='-v for progress, -vv for debugging output')
    sub = parser.add_subparsers(dest='command', metavar='COMMAND')

    learn = sub.add_parser('learn', help='learn the influencing set of a target')
    addDatasetArgs(learn)
    addSearchArgs(learn)
    learn.add_argument('--target', required=True, help='target label(s), comma separated')
    learn.add_argument('--order', type=int, default=1, help='chain order for --model mc')
    learn.add_argument('--exhaustive', action='store_true', help='score every subset of the pool')
    learn.add_argument('--out', default='.')
    learn.add_argument('--db', help='also record the search trace in this sqlite file')

    ev = sub.add_parser('eval', help='train/dev/test evaluation')
    addDatasetArgs(ev)
    addSearchArgs(ev)
    ev.add_argument('--grid', action='store_true',
                    help='default grids for alpha, kappa and gamma not given explicitly')
    ev.add_argument('--target', help='labels of interest, comma separated (default: all)')
    ev.add_argument('--order', type=int, default=1, help='chain order for --model mc')
    ev.add_argument('--mc-sweep', help='comma separated chain orders to compare, e.g. 0,1,2,3')
    ev.add_argument('--split', help='train,dev,test fractions (default 0.7,0.15,0.15)')
    ev.add_argument('--seed', type=int, default=0)
    ev.add_argument('--name', help='dataset name used in the report')
    ev.add_argument('--out', default='.')

    gen = sub.add_parser('generate', help='sample a synthetic dataset')
    addSpecArgs(gen)
    gen.add_argument('--k', type=int, help='number of sequences')
    gen.add_argument('--length', type=int, help='sequence length')
    gen.add_argument('--seed', type=int, default=0)
    gen.add_argument('--format', choices=FORMATS, default='jsonl')
    gen.add_argument('--out', default='.')

    rec = sub.add_parser('recover', help='influencing set recovery experiment')
    addSpecArgs(rec)
    addSearchArgs(rec, selfLoop=False)
    rec.add_argument('--data', help='score recovery on this dataset instead of sampling')
    rec.add_argument('--target', default=params.b1Target)
    rec.add_argument('--k-values', help='comma separated dataset sizes')
    rec.add_argument('--runs', type=int, default=params.b1Runs)
    rec.add_argument('--seed', type=int, default=0)
    rec.add_argument('--out', default='.')
    rec.add_argument('--db', help='also record every run in this sqlite file')

    graph = sub.add_parser('graph', help='influence graph over all labels')
    addDatasetArgs(graph)
    addSearchArgs(graph)
    graph.add_argument('--target', help='only learn parents of these labels')
    graph.add_argument('--gamma-sweep', help='comma separated gammas for a stability report')
    graph.add_argument('--out', default='.')
    graph.add_argument('--db', help='also record the search traces in this sqlite file')
    return parser


def setupLogging(verbosity):
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity >= 2:
        level = logging.DEBUG
    logging.basicConfig(level=level, stream=sys.stderr,
                        format='%(levelname)s %(name)s: %(message)s')
    logging.getLogger().setLevel(level)


def applySearchValues(config, args, alpha, kappa, gamma):
    config.alpha = alpha if args.alpha is None else parseFloats(args.alpha, '--alpha')[0]
    config.kappa = kappa if args.kappa is None else parseKappa(args.kappa)
    config.gamma = gamma if args.gamma is None else parseFloats(args.gamma, '--gamma')[0]


def readDataset(args):
    alphabet = loadAlphabet(args.alphabet) if args.alphabet else None
    return loadDataset(args.data, args.format, alphabet)


def openDatabase(path):
    return ResultsDatabase(path) if path else None


def cmdLearn(args, config):
    applySearchValues(config, args, params.b1Alpha, params.b1Lookback, params.b1Gamma)
    dataset = readDataset(args)
    if config.model == params.MODEL_MC:
        spec = markovChainSpec(dataset.alphabet, args.order)
        model = fitModel(dataset, targetFor(dataset, config.target), spec,
                         config.alpha, config.gamma, '%d-MC' % args.order)
    else:
        model = learnModel(dataset, config.target, config.searchConfig(),
                           exhaustive=args.exhaustive)
    writeJson(config.outPath(params.modelFileName), model.toJson(includeTrace=True))
    writeFileAtomic(config.outPath(params.traceFileName),
                    ''.join(json.dumps(r.toJson(), sort_keys=True) + '\n' for r in model.trace))
    db = openDatabase(args.db)
    if db is not None:
        db.commitTrace(model.target.labels, model.trace)
        db.close()
    print('Influencers of %s: {%s}' % (','.join(model.target.labels),
                                       ','.join(model.influencers)))
    return 0


def evalGrid(args):
    def pick(value, parse, defaults, single):
        if value is not None:
            return tuple(parse(value))
        return tuple(defaults) if args.grid else (single,)
    alphas = pick(args.alpha, lambda t: parseFloats(t, '--alpha'), params.alphaGrid,
                  params.b1Alpha)
    kappas = pick(args.kappa, lambda t: [parseLookback(v) for v in parseList(t)],
                  params.kappaGrid, params.b1Lookback)
    gammas = pick(args.gamma, lambda t: parseFloats(t, '--gamma'), params.gammaGrid,
                  params.b1Gamma)
    return HyperGrid(alphas, kappas, gammas)


def cmdEval(args, config):
    dataset = readDataset(args)
    split = SplitSpec(config.split, config.seed)
    grid = evalGrid(args)
    name = args.name or os.path.splitext(os.path.basename(args.data))[0]
    labels = list(config.target) if config.target else None
    if args.mc_sweep:
        reports = markovChainSweep(dataset, parseInts(args.mc_sweep, '--mc-sweep'), split,
                                   grid.alphas, labels, name=name)
    else:
        reports = [evaluateDataset(dataset, config.model, split, grid, labels, args.order,
                                   config.pool, not config.allowSelfLoop, name=name,
                                   start=config.start or START_EMPTY)]
    text = ''.join(r.formatTable() + '\n' for r in reports)
    if len(reports) > 1:
        text += comparisonTable(reports)
    writeJson(config.outPath(params.evalJsonFileName),
              {'schema_version': params.SCHEMA_VERSION,
               'reports': [r.toJson() for r in reports]})
    writeFileAtomic(config.outPath(params.evalTableFileName), text)
    sys.stdout.write(text)
    return 0


def loadSpec(args):
    if args.spec:
        return GenerativeSpec.load(args.spec)
    return BUILTINS[args.builtin or 'b1']()


def cmdGenerate(args, config):
    spec = loadSpec(args)
    dataset = generate(spec, count=args.k, length=args.length, seed=config.seed)
    name = params.datasetFileName
    if args.format == FORMAT_CSV:
        name = os.path.splitext(name)[0] + '.csv'
    path = config.outPath(name)
    saveDataset(dataset, path, args.format)
    print('Wrote %d sequences to %s' % (dataset.numSequences(), path))
    return 0


def cmdRecover(args, config):
    applySearchValues(config, args, params.b1Alpha, params.b1Lookback, params.b1Gamma)
    spec = loadSpec(args)
    # the recovery protocol searches the full pool, target labels included
    search = config.searchConfig(excludeTargets=False, start=config.start or START_NEG_INF)
    kValues = parseInts(args.k_values, '--k-values') if args.k_values else None
    experiment = RecoveryExperiment(spec, kValues, args.runs, search, args.target,
                                    seed=config.seed)
    db = openDatabase(args.db)
    records = []
    experiment.callbackRun = records.append
    if args.data:
        report = experiment.runOnDataset(loadDataset(args.data))
    else:
        report = experiment.run()
    if db is not None:
        db.commitRecovery(records)
        db.close()
    writeJson(config.outPath(params.recoveryFileName), report)
    for entry in report['results']:
        print('K=%d mean F1 %.2f (+- %.2f)' % (entry['k'], entry['mean_f1'], entry['stderr']))
    return 0


def cmdGraph(args, config):
    applySearchValues(config, args, params.graphAlpha, params.graphKappa, params.graphGamma)
    dataset = readDataset(args)
    search = graphConfig(model=config.model, kappa=config.kappa, alpha=config.alpha,
                         gamma=config.gamma, pool=config.pool,
                         excludeTargets=not config.allowSelfLoop,
                         repeatSweeps=config.repeatSweeps, start=config.start or START_EMPTY)
    targets = list(config.target) if config.target else None
    graph = learnGraph(dataset, search, targets)
    doc = exportJson(graph)
    if args.gamma_sweep:
        doc['gamma_sweep'] = gammaSweep(dataset, parseFloats(args.gamma_sweep, '--gamma-sweep'),
                                        search, targets)
    writeFileAtomic(config.outPath(params.graphDotFileName), exportDot(graph))
    writeJson(config.outPath(params.graphJsonFileName), doc)
    db = openDatabase(args.db)
    if db is not None:
        for label in dataset.alphabet:
            if label in graph.models:
                db.commitTrace((label,), graph.models[label].trace)
        db.close()
    for failure in sorted(graph.failures.items()):
        logger.warning('No parents learned for %s (%s)', *failure)
    print('%d nodes, %d edges' % (graph.graph.number_of_nodes(), graph.graph.number_of_edges()))
    return 0


COMMANDS = {'learn': cmdLearn, 'eval': cmdEval, 'generate': cmdGenerate,
            'recover': cmdRecover, 'graph': cmdGraph}


def reportError(kind, message):
    sys.stderr.write(json.dumps({'error': kind, 'message': message}, sort_keys=True) + '\n')


def main(argv=None):
    parser = buildParser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError('a subcommand is required: %s' % ', '.join(sorted(COMMANDS)))
        setupLogging(args.verbose)
        config = RunConfig.fromArgs(args)
        return COMMANDS[args.command](args, config)
    except UsageError as e:
        reportError('usage', str(e))
        return 2
    except SummError as e:
        logger.debug('Command failed', exc_info=True)
        reportError(e.kind(), str(e))
        return 1
    except OSError as e:
        reportError('io', str(e))
        return 1


if __name__ == '__main__':
    sys.exit(main())

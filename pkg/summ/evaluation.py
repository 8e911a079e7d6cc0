# Copyright (c) 2026 The summ authors
# Distributed under the MIT license, see LICENSE.md
#------------------------------------------------------------------------------
#
# evaluation.py
# Train/dev/test protocol: sequence-level splits, removal of labels not
# present in every split, hyper-parameter selection on dev, refit on
# train + dev and test log likelihood per label of interest.  The k-th
# order Markov chain baseline runs through the same estimation code with a
# k-gram summary over the whole alphabet.
#

import logging
import math
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np
import pandas as pd

from . import params
from .errors import InputError, DataError, ConfigurationError, SizingError, SummError
from .eventSequence import EventDataset
from .randomStreams import makeRng, STREAM_SPLIT
from .search import SearchConfig, influencerSearch, fitModel, targetFor, START_EMPTY
from .summaryBase import SummarySpec, KGRAM, checkLookback
from .summaryKinds import createSummary
from .estimation import checkAlpha
from .workers import parallelMap

logger = logging.getLogger(__name__)

MODEL_NAMES = {params.MODEL_BSUMM: 'BSuMM', params.MODEL_OSUMM: 'OSuMM'}


@dataclass(frozen=True)
class SplitSpec:
    fractions: Tuple[float, float, float] = params.splitFractions
    seed: int = 0

    def validate(self):
        if len(self.fractions) != 3:
            raise ConfigurationError('Split needs three fractions, got %r' % (self.fractions,))
        if any(not (f > 0) for f in self.fractions):
            raise ConfigurationError('Split fractions must be positive, got %r' % (self.fractions,))
        if abs(sum(self.fractions) - 1.0) > 1e-9:
            raise ConfigurationError('Split fractions must sum to 1, got %r' % (self.fractions,))


@dataclass(frozen=True)
class HyperGrid:
    alphas: Tuple[float, ...] = tuple(params.alphaGrid)
    kappas: Tuple[Optional[int], ...] = tuple(params.kappaGrid)
    gammas: Tuple[float, ...] = tuple(params.gammaGrid)

    def validate(self):
        if not self.alphas or not self.kappas or not self.gammas:
            raise ConfigurationError('Every hyper-parameter grid needs at least one value')
        try:
            for alpha in self.alphas:
                checkAlpha(alpha)
            for kappa in self.kappas:
                checkLookback(kappa)
        except InputError as e:
            raise ConfigurationError(str(e))
        for gamma in self.gammas:
            if not (gamma > 0):
                raise ConfigurationError('Penalty weight gamma must be positive, got %r' % (gamma,))

    def points(self):
        """ Grid points ordered so that the first maximum wins ties by
        smaller kappa, then smaller gamma, then smaller alpha """
        kappas = sorted(self.kappas, key=lambda k: math.inf if k is None else k)
        for kappa in kappas:
            for gamma in sorted(self.gammas):
                for alpha in sorted(self.alphas):
                    yield alpha, kappa, gamma


@dataclass
class Split:
    train: EventDataset
    dev: EventDataset
    test: EventDataset
    alphabet: object

    def __iter__(self):
        return iter((self.train, self.dev, self.test, self.alphabet))


def splitSizes(numSequences, fractions):
    numTrain = int(math.floor(numSequences * fractions[0] + 1e-9))
    numDev = int(math.floor(numSequences * fractions[1] + 1e-9))
    return numTrain, numDev, numSequences - numTrain - numDev


def splitDataset(dataset, spec=None):
    spec = SplitSpec() if spec is None else spec
    spec.validate()
    numSequences = dataset.numSequences()
    if numSequences < 3:
        raise InputError('Splitting needs at least 3 sequences, got %d' % numSequences)
    sizes = splitSizes(numSequences, spec.fractions)
    if min(sizes) == 0:
        raise ConfigurationError('Split of %d sequences gives sizes %s' % (numSequences, sizes))

    perm = makeRng(spec.seed, STREAM_SPLIT).permutation(numSequences)
    cuts = np.cumsum(sizes)[:-1]
    parts = [dataset.subset(sorted(int(k) for k in chunk)) for chunk in np.split(perm, cuts)]

    present = None
    for part in parts:
        seen = set(l for s in part for l in s)
        present = seen if present is None else present & seen
    dropped = [l for l in dataset.alphabet if l not in present]
    if not present:
        raise ConfigurationError('No label occurs in all three splits')
    if dropped:
        logger.info('Removing %d label(s) missing from some split: %s',
                    len(dropped), ','.join(dropped))
    parts = [part.restrictLabels(present) for part in parts]
    for name, part in zip(('train', 'dev', 'test'), parts):
        if part.numSequences() == 0:
            raise ConfigurationError('The %s split is empty after label removal' % name)
    return Split(parts[0], parts[1], parts[2], parts[0].alphabet)


@dataclass
class GridResult:
    alpha: float
    kappa: Optional[int]
    gamma: float
    devLogLikelihood: float
    model: object
    tried: List[dict] = field(default_factory=list)


def gridSearch(train, dev, target, grid=None, model=params.MODEL_BSUMM, pool=None,
               excludeTargets=False, start=START_EMPTY):
    grid = HyperGrid() if grid is None else grid
    grid.validate()
    best = None
    tried = []
    for alpha, kappa, gamma in grid.points():
        config = SearchConfig(model=model, kappa=kappa, alpha=alpha, gamma=gamma,
                              pool=pool, excludeTargets=excludeTargets, start=start)
        try:
            learned = influencerSearch(train, target, config)
            devLL = learned.logLikelihood(dev)
        except SummError as e:
            raise e.__class__('At grid point alpha=%r kappa=%r gamma=%r: %s' %
                              (alpha, kappa, gamma, e)) from e
        tried.append({'alpha': alpha, 'kappa': kappa, 'gamma': gamma,
                      'dev_log_likelihood': devLL,
                      'influencers': list(learned.influencers)})
        if best is None or devLL > best.devLogLikelihood:
            best = GridResult(alpha, kappa, gamma, devLL, learned)
    best.tried = tried
    return best


def asModelAlphabet(model, dataset):
    alphabet = model.summary.alphabet
    if dataset.alphabet == alphabet:
        return dataset
    for seq in dataset:
        for label in seq:
            if label not in alphabet:
                raise DataError('Test label "%s" is outside the model alphabet' % label)
    return EventDataset(dataset.sequences, alphabet, dataset.ids)


def testLogLoss(model, test):
    """ Log likelihood of the test positions, reported as a negative number """
    return model.logLikelihood(asModelAlphabet(model, test))


@dataclass
class EvalEntry:
    target: Tuple[str, ...]
    model: str
    testLogLikelihood: float
    numTestEvents: int
    alpha: float
    kappa: Optional[int]
    gamma: Optional[float]
    influencers: Tuple[str, ...]
    devLogLikelihood: float

    def toJson(self):
        return {'target': list(self.target), 'model': self.model,
                'test_log_likelihood': self.testLogLikelihood,
                'num_test_events': self.numTestEvents,
                'alpha': self.alpha, 'kappa': self.kappa, 'gamma': self.gamma,
                'influencers': list(self.influencers),
                'dev_log_likelihood': self.devLogLikelihood}


def markovChainSpec(alphabet, order):
    spec = SummarySpec.build(KGRAM, alphabet, alphabet.labels, order)
    size = createSummary(spec, alphabet).domainSize()
    if size > params.enumerationCap:
        raise SizingError('A %d-th order chain over %d labels has %d summary states '
                          '(cap %d); use a smaller order' %
                          (order, len(alphabet), size, params.enumerationCap), size)
    return spec


def markovChainBaseline(train, dev, test, target, order, alphas=None):
    if order is None or order < 0:
        raise InputError('Markov chain order must be >= 0, got %r' % (order,))
    alphas = params.alphaGrid if alphas is None else alphas
    if not alphas:
        raise ConfigurationError('Markov chain baseline needs at least one alpha')
    target = targetFor(train, target)
    spec = markovChainSpec(train.alphabet, order)
    best = None
    for alpha in sorted(alphas):
        fitted = fitModel(train, target, spec, alpha, 1.0)
        devLL = fitted.logLikelihood(dev)
        if best is None or devLL > best[1]:
            best = (alpha, devLL)
    alpha, devLL = best
    final = fitModel(train.concat(dev), target, spec, alpha, 1.0)
    return EvalEntry(target.labels, '%d-MC' % order, testLogLoss(final, test),
                     test.numEvents(), alpha, order, None, tuple(spec.labels), devLL)


def summEntry(split, label, model, grid, pool, excludeTargets, start=START_EMPTY):
    target = targetFor(split.train, label)
    chosen = gridSearch(split.train, split.dev, target, grid, model, pool, excludeTargets,
                        start)
    config = SearchConfig(model=model, kappa=chosen.kappa, alpha=chosen.alpha,
                          gamma=chosen.gamma, pool=pool, excludeTargets=excludeTargets,
                          start=start)
    final = influencerSearch(split.train.concat(split.dev), target, config)
    return EvalEntry(target.labels, MODEL_NAMES[model], testLogLoss(final, split.test),
                     split.test.numEvents(), chosen.alpha, chosen.kappa, chosen.gamma,
                     final.influencers, chosen.devLogLikelihood)


class EvalReport:
    def __init__(self, model, entries, metadata=None):
        self.model = model
        self.entries = list(entries)
        self.metadata = dict(metadata or {})

    def __repr__(self):
        return 'EvalReport(%s, %d labels, avg %g)' % (self.model, len(self.entries),
               self.macroAverage())

    def macroAverage(self):
        if not self.entries:
            return float('nan')
        return float(np.mean([e.testLogLikelihood for e in self.entries]))

    def toJson(self):
        return {'schema_version': params.SCHEMA_VERSION, 'model': self.model,
                'entries': [e.toJson() for e in self.entries],
                'macro_average': self.macroAverage(),
                'metadata': self.metadata}

    def formatTable(self):
        rows = []
        for e in self.entries:
            rows.append({'label': ','.join(e.target), 'model': e.model,
                         'alpha': '%g' % e.alpha,
                         'kappa': '-' if e.kappa is None else str(e.kappa),
                         'gamma': '-' if e.gamma is None else '%g' % e.gamma,
                         'influencers': '{%s}' % ','.join(e.influencers)
                                        if e.model in MODEL_NAMES.values() else '(all)',
                         'test LL': '%.4f' % e.testLogLikelihood})
        rows.append({'label': 'average', 'model': self.model, 'alpha': '', 'kappa': '',
                     'gamma': '', 'influencers': '',
                     'test LL': '%.4f' % self.macroAverage()})
        return pd.DataFrame(rows).to_string(index=False) + '\n'


def comparisonTable(reports):
    """ Models as rows, datasets as columns, macro-averaged test log likelihood """
    rows = [{'model': r.model, 'dataset': r.metadata.get('dataset', ''),
             'value': r.macroAverage()} for r in reports]
    frame = pd.DataFrame(rows)
    table = frame.pivot_table(index='model', columns='dataset', values='value',
                              aggfunc='first', sort=False)
    table = table.apply(lambda col: col.map(lambda v: '%.4f' % v))
    return table.to_string() + '\n'


def evaluateDataset(dataset, model=params.MODEL_BSUMM, split=None, grid=None,
                    labelsOfInterest=None, order=1, pool=None, excludeTargets=False,
                    threads=None, name='dataset', start=START_EMPTY):
    splitSpec = SplitSpec() if split is None else split
    parts = splitDataset(dataset, splitSpec)
    retained = parts.alphabet
    if labelsOfInterest:
        missing = [l for l in labelsOfInterest if l not in retained]
        if missing:
            logger.warning('Labels of interest removed by the split: %s', ','.join(missing))
        labels = [l for l in retained if l in set(labelsOfInterest)]
        if not labels:
            raise ConfigurationError('None of the labels of interest survive the split')
    else:
        labels = list(retained.labels)
    if pool is not None:
        pool = tuple(l for l in pool if l in retained)

    if model == params.MODEL_MC:
        alphas = params.alphaGrid if grid is None else grid.alphas

        def job(label):
            return markovChainBaseline(parts.train, parts.dev, parts.test, label, order, alphas)
        modelName = '%d-MC' % order
    elif model in MODEL_NAMES:
        def job(label):
            return summEntry(parts, label, model, grid, pool, excludeTargets, start)
        modelName = MODEL_NAMES[model]
    else:
        raise InputError('Unknown model "%s"' % (model,))

    entries = parallelMap(job, labels, threads)
    metadata = {'dataset': name, 'split_fractions': list(splitSpec.fractions),
                'seed': splitSpec.seed,
                'retained_alphabet': list(retained.labels),
                'sizes': [parts.train.numSequences(), parts.dev.numSequences(),
                          parts.test.numSequences()],
                'refit': 'train+dev',
                'mc_target': 'binary target fitted directly with a k-gram summary'}
    return EvalReport(modelName, entries, metadata)


def markovChainSweep(dataset, orders=None, split=None, alphas=None, labelsOfInterest=None,
                     threads=None, name='dataset'):
    """ One k-MC report per order; orders whose chain is too large are skipped """
    orders = params.mcOrders if orders is None else orders
    grid = HyperGrid(alphas=tuple(params.alphaGrid if alphas is None else alphas))
    reports = []
    for order in orders:
        try:
            reports.append(evaluateDataset(dataset, params.MODEL_MC, split, grid,
                                           labelsOfInterest, order, threads=threads, name=name))
        except SizingError as e:
            logger.warning('Skipping %d-MC: %s', order, e)
    return reports

# Copyright (c) 2026 The summ authors
# Distributed under the MIT license, see LICENSE.md
#------------------------------------------------------------------------------
#
# synthGen.py
# Sampling event sequences from binary summary dynamics, and the influencing
# set recovery experiment run on those samples.
#
# The next label is drawn from a categorical distribution over the whole
# alphabet chosen by the joint presence configuration of the conditioning
# labels, each inside its own look-back window.
#

import itertools
import json
import logging
import math

import numpy as np

from . import params
from .errors import InputError
from .eventSequence import Alphabet, EventDataset, TargetVariable
from .estimation import countStatistics
from .randomStreams import makeRng, STREAM_GENERATE, STREAM_RECOVERY
from .search import SearchConfig, influencerSearch, setF1, START_NEG_INF
from .summaryBase import SummarySpec, BINARY
from .summaryKinds import createSummary
from .workers import parallelMap

logger = logging.getLogger(__name__)


class GenerativeSpec:
    def __init__(self, alphabet, conditioning, table, parents=None,
                 length=params.b1Length, count=1000, seed=0):
        if not isinstance(alphabet, Alphabet):
            alphabet = Alphabet(alphabet)
        self.alphabet = alphabet
        # (label, lookback) pairs in alphabet order
        order = dict((l, i) for i, l in enumerate(alphabet.labels))
        for label, _ in conditioning:
            alphabet.getId(label)
        self.conditioning = tuple(sorted(((l, k) for l, k in conditioning),
                                         key=lambda c: order[c[0]]))
        self.table = dict((tuple(int(b) for b in config), np.asarray(row, dtype=np.float64))
                          for config, row in table.items())
        self.parents = dict((l, tuple(alphabet.canonical(p)))
                            for l, p in (parents or {}).items())
        self.length = length
        self.count = count
        self.seed = seed
        self.validate()

        labels = [l for l, _ in self.conditioning]
        lookbacks = dict(self.conditioning)
        self.summary = createSummary(SummarySpec.build(BINARY, alphabet, labels, lookbacks),
                                     alphabet)
        self.cdfs = dict()
        for config, row in self.table.items():
            cdf = np.cumsum(row)
            cdf[-1] = 1.0
            self.cdfs[config] = cdf

    def __repr__(self):
        return 'GenerativeSpec(%s | %s)' % (','.join(self.alphabet.labels),
               ','.join('%s:%s' % c for c in self.conditioning))

    def validate(self):
        width = len(self.conditioning)
        if self.length < 1 or self.count < 1:
            raise InputError('Sequence length and count must be >= 1')
        for config in itertools.product((0, 1), repeat=width):
            if config not in self.table:
                raise InputError('No distribution for configuration %s' % (config,))
            row = self.table[config]
            if row.shape != (len(self.alphabet),):
                raise InputError('Configuration %s needs %d probabilities' %
                                 (config, len(self.alphabet)))
            if np.any(row < 0) or np.any(row > 1):
                raise InputError('Configuration %s has probabilities outside [0,1]' % (config,))
            if abs(row.sum() - 1.0) > params.probabilityTolerance:
                raise InputError('Configuration %s sums to %r, not 1' % (config, float(row.sum())))
        conditioned = set(l for l, _ in self.conditioning)
        for label, parents in self.parents.items():
            self.alphabet.getId(label)
            if not set(parents) <= conditioned:
                raise InputError('Parents of %s must be conditioning labels' % label)

    def configurationOf(self, sequence):
        """ Presence configuration for the position after sequence """
        return self.summary.summarize(sequence, len(sequence) + 1)

    @classmethod
    def fromJson(cls, doc):
        labels = doc['alphabet']
        conditioning = [(c['label'], c['lookback']) for c in doc['conditioning']]
        names = [l for l, _ in conditioning]
        table = dict()
        for entry in doc['distributions']:
            given = entry['given']
            config = tuple(int(given[l]) for l in names)
            table[config] = [entry['probabilities'].get(l, 0.0) for l in labels]
        return cls(labels, conditioning, _reorder(table, names, labels),
                   doc.get('parents'), doc.get('length', params.b1Length),
                   doc.get('count', 1000), doc.get('seed', 0))

    @classmethod
    def load(cls, path):
        with open(path, 'r', encoding='utf-8') as f:
            try:
                return cls.fromJson(json.load(f))
            except (KeyError, TypeError, ValueError) as e:
                if isinstance(e, InputError):
                    raise
                raise InputError('Malformed generative spec %s: %r' % (path, e)) from e

    def toJson(self):
        names = [l for l, _ in self.conditioning]
        distributions = []
        for config in sorted(self.table):
            row = self.table[config]
            distributions.append({'given': dict(zip(names, config)),
                                  'probabilities': dict((l, float(p)) for l, p in
                                                        zip(self.alphabet.labels, row))})
        return {'alphabet': list(self.alphabet.labels),
                'conditioning': [{'label': l, 'lookback': k} for l, k in self.conditioning],
                'distributions': distributions,
                'parents': dict((l, list(p)) for l, p in self.parents.items()),
                'length': self.length, 'count': self.count, 'seed': self.seed}


def _reorder(table, names, labels):
    """ Configurations keyed in file order, re-keyed to alphabet order """
    order = sorted(range(len(names)), key=lambda j: labels.index(names[j]))
    return dict((tuple(config[j] for j in order), row) for config, row in table.items())


def builtinB1Spec():
    """
    Five labels A..E.  A and B depend on whether B and C occurred in the
    last 3 positions; C, D and E occur with fixed probabilities.
    """
    fixed = [0.3, 0.2, 0.1]
    table = {(0, 0): [0.3, 0.1] + fixed,
             (0, 1): [0.1, 0.3] + fixed,
             (1, 0): [0.35, 0.05] + fixed,
             (1, 1): [0.2, 0.2] + fixed}
    lookback = params.b1Lookback
    return GenerativeSpec(params.b1Alphabet, [('B', lookback), ('C', lookback)], table,
                          parents={'A': params.b1Parents, 'B': params.b1Parents,
                                   'C': [], 'D': [], 'E': []},
                          length=params.b1Length, count=1000, seed=0)


def generate(spec, count=None, length=None, seed=None, rng=None):
    count = spec.count if count is None else count
    length = spec.length if length is None else length
    if rng is None:
        rng = makeRng(spec.seed if seed is None else seed, STREAM_GENERATE)
    labels = spec.alphabet.labels
    last = len(labels) - 1
    sequences = []
    for k in range(count):
        draws = rng.random(length)
        seq = []
        for i in range(length):
            cdf = spec.cdfs[spec.configurationOf(seq)]
            j = int(np.searchsorted(cdf, draws[i], side='right'))
            seq.append(labels[min(j, last)])
        sequences.append(seq)
    return EventDataset(sequences, spec.alphabet)


def empiricalConditionals(dataset, spec, label):
    """
    For every configuration of the conditioning labels, the number of
    positions with that configuration and how many of them carry label.
    """
    target = TargetVariable(dataset.alphabet, [label])
    stats = countStatistics(dataset, target, spec.summary)
    column = target.stateIndex(label)
    result = dict()
    for config in itertools.product((0, 1), repeat=len(spec.conditioning)):
        result[config] = (stats.count(column, config), stats.marginal(config))
    return result


class RecoveryExperiment:
    """
    Generates datasets of increasing size, learns the influencing set of
    the target on each and scores it against the true parents by F1.
    Without a config the search starts its forward sweep from -inf.
    """
    def __init__(self, spec=None, kValues=None, runs=params.b1Runs, config=None,
                 target=params.b1Target, truth=None, seed=0, threads=None):
        if runs < 1:
            raise InputError('Recovery experiment needs runs >= 1')
        self.spec = builtinB1Spec() if spec is None else spec
        self.kValues = list(params.b1KValues if kValues is None else kValues)
        self.runs = runs
        self.config = SearchConfig(start=START_NEG_INF) if config is None else config
        self.target = target
        if truth is None:
            truth = self.spec.parents.get(target, ())
        self.truth = tuple(truth)
        self.seed = seed
        self.threads = threads

        # If not None, called with each finished run's record
        self.callbackRun = None

    def runOne(self, job):
        k, run = job
        rng = makeRng(self.seed + run, STREAM_RECOVERY, k)
        dataset = generate(self.spec, count=k, rng=rng)
        model = influencerSearch(dataset, self.target, self.config)
        f1 = setF1(model.influencers, self.truth)
        return {'k': k, 'run': run, 'influencers': list(model.influencers),
                'f1': f1, 'score': model.report.score}

    def makeReport(self, records, kValues):
        results = []
        for k in kValues:
            mine = [r for r in records if r['k'] == k]
            f1s = np.array([r['f1'] for r in mine])
            stderr = float(f1s.std(ddof=1) / math.sqrt(len(f1s))) if len(f1s) > 1 else 0.0
            results.append({'k': k, 'mean_f1': float(f1s.mean()), 'stderr': stderr,
                            'f1': [float(f) for f in f1s],
                            'influencers': [r['influencers'] for r in mine]})
            logger.info('K=%d mean F1 %.3f +- %.3f', k, f1s.mean(), stderr)
        if self.callbackRun:
            for r in records:
                self.callbackRun(r)
        return {'schema_version': params.SCHEMA_VERSION,
                'target': self.target, 'truth': list(self.truth),
                'config': self.config.toJson(), 'seed': self.seed,
                'runs': len(records) // max(1, len(kValues)), 'length': self.spec.length,
                'results': results}

    def run(self):
        jobs = [(k, run) for k in self.kValues for run in range(self.runs)]
        return self.makeReport(parallelMap(self.runOne, jobs, self.threads), self.kValues)

    def runOnDataset(self, dataset):
        """ Recovery scored on an existing dataset, reported as one run at K = its size """
        model = influencerSearch(dataset, self.target, self.config)
        k = dataset.numSequences()
        record = {'k': k, 'run': 0, 'influencers': list(model.influencers),
                  'f1': setF1(model.influencers, self.truth), 'score': model.report.score}
        return self.makeReport([record], [k])


def table1Experiment(kValues=None, runs=params.b1Runs, config=None, seed=0, spec=None,
                     threads=None):
    return RecoveryExperiment(spec, kValues, runs, config, seed=seed, threads=threads).run()

# Copyright (c) 2026 The summ authors
# Distributed under the MIT license, see LICENSE.md
#------------------------------------------------------------------------------
#
# search.py
# Score-based search for the influencing set of a target label set: one
# forward sweep adding labels, one backward sweep removing them, each
# accepting a change only on strict score improvement.  A brute-force
# subset search is provided to check the greedy result on small pools.
#

import itertools
import logging
import math
from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple, Union

from . import params
from .errors import InputError, SizingError
from .estimation import computeScore, checkAlpha, predictiveLogLikelihood
from .eventSequence import TargetVariable
from .summaryBase import SummarySpec, BINARY, ORDINAL, KGRAM, KEEP_LAST, checkLookback
from .summaryKinds import createSummary

logger = logging.getLogger(__name__)

SUMMARY_KIND = {params.MODEL_BSUMM: BINARY,
                params.MODEL_OSUMM: ORDINAL,
                params.MODEL_MC: KGRAM}
MODEL_OF_KIND = dict((kind, model) for model, kind in SUMMARY_KIND.items())

# Where the forward sweep starts.  START_EMPTY scores the empty set first
# and only adds labels that beat it; START_NEG_INF starts from a score of
# -inf, so the first candidate of the forward sweep is always taken.
START_EMPTY   = 'empty'
START_NEG_INF = 'neg-inf'
STARTS = (START_EMPTY, START_NEG_INF)


@dataclass(frozen=True)
class SearchConfig:
    model: str = params.MODEL_BSUMM
    kappa: Union[None, int, Dict[str, int]] = params.b1Lookback
    alpha: float = params.b1Alpha
    gamma: float = params.b1Gamma
    pool: Optional[Tuple[str, ...]] = None
    excludeTargets: bool = False
    masking: str = KEEP_LAST
    repeatSweeps: bool = False
    start: str = START_EMPTY

    def validate(self):
        if self.model not in (params.MODEL_BSUMM, params.MODEL_OSUMM):
            raise InputError('Influencer search needs model bsumm or osumm, got "%s"' % self.model)
        if self.start not in STARTS:
            raise InputError('Search start must be one of %s, got "%s"' %
                             (', '.join(STARTS), self.start))
        if isinstance(self.kappa, dict):
            if self.model != params.MODEL_BSUMM:
                raise InputError('Per-label look-backs are only defined for bsumm')
            for lookback in self.kappa.values():
                checkLookback(lookback)
        else:
            checkLookback(self.kappa)
        checkAlpha(self.alpha)
        if not (self.gamma > 0):
            raise InputError('Penalty weight gamma must be positive, got %r' % (self.gamma,))

    def toJson(self):
        kappa = dict(self.kappa) if isinstance(self.kappa, dict) else self.kappa
        return {'model': self.model, 'kappa': kappa, 'alpha': self.alpha,
                'gamma': self.gamma,
                'pool': None if self.pool is None else list(self.pool),
                'exclude_targets': self.excludeTargets, 'masking': self.masking,
                'repeat_sweeps': self.repeatSweeps, 'start': self.start}


@dataclass(frozen=True)
class TraceRecord:
    sweep: str
    candidate: Optional[str]
    influencers: Tuple[str, ...]
    score: float
    accepted: bool

    def toJson(self):
        return {'sweep': self.sweep, 'candidate': self.candidate,
                'influencers': list(self.influencers), 'score': self.score,
                'accepted': self.accepted}


@dataclass
class SummModel:
    target: TargetVariable
    influencers: Tuple[str, ...]
    summary: object
    params: object
    report: object
    model: str
    trace: list = field(default_factory=list)
    settings: dict = field(default_factory=dict)

    def __repr__(self):
        return 'SummModel(%s <- {%s}, score=%g)' % (','.join(self.target.labels),
               ','.join(self.influencers), self.report.score)

    def logLikelihood(self, dataset):
        return predictiveLogLikelihood(dataset, self.target, self.summary, self.params)

    def toJson(self, includeTrace=False):
        doc = {'schema_version': params.SCHEMA_VERSION,
               'model': self.model,
               'target': list(self.target.labels),
               'target_states': list(self.target.states),
               'influencers': list(self.influencers),
               'summary': self.summary.spec.toJson(),
               'score': self.report.toJson(),
               'parameters': self.params.toJson(self.summary),
               'settings': self.settings}
        if includeTrace:
            doc['trace'] = [rec.toJson() for rec in self.trace]
        return doc


def targetFor(dataset, target):
    if isinstance(target, TargetVariable):
        return target
    if isinstance(target, str):
        target = [target]
    return TargetVariable(dataset.alphabet, target)


class InfluencerSearch:
    def __init__(self, dataset, target, config):
        if dataset.numEvents() == 0:
            raise InputError('Influencer search needs a non-empty dataset')
        config.validate()
        self.dataset = dataset
        self.target = targetFor(dataset, target)
        self.config = config
        self.summaryKind = SUMMARY_KIND[config.model]

        pool = dataset.alphabet.labels if config.pool is None else config.pool
        pool = dataset.alphabet.canonical(pool)
        if config.excludeTargets:
            pool = tuple(l for l in pool if l not in self.target.labels)
        self.pool = pool

        self.cache = dict()
        self.trace = []
        self.numScored = 0

        # If not None, called with every TraceRecord as the search runs
        self.callbackTrace = None

    def buildSummary(self, labels):
        spec = SummarySpec.build(self.summaryKind, self.dataset.alphabet, labels,
                                 self.config.kappa, self.config.masking)
        return createSummary(spec, self.dataset.alphabet)

    def scoreSet(self, labels, candidate=None):
        key = frozenset(labels)
        if key in self.cache:
            return self.cache[key]
        try:
            summary = self.buildSummary(labels)
            stats, estimates, report = computeScore(self.dataset, self.target, summary,
                                                    self.config.alpha, self.config.gamma)
        except SizingError as e:
            raise SizingError('While scoring candidate %s for {%s}: %s' %
                              (candidate, ','.join(labels), e), e.magnitude)
        self.numScored += 1
        result = (summary, estimates, report)
        self.cache[key] = result
        return result

    def record(self, sweep, candidate, labels, score, accepted):
        rec = TraceRecord(sweep, candidate, tuple(labels), score, accepted)
        self.trace.append(rec)
        if self.callbackTrace:
            self.callbackTrace(rec)

    def canonical(self, labels):
        return self.dataset.alphabet.canonical(labels)

    def run(self):
        influencers = ()
        if self.config.start == START_NEG_INF:
            bestScore = -math.inf
        else:
            bestScore = self.scoreSet(influencers)[2].score
            self.record('empty', None, influencers, bestScore, True)

        sweeps = 0
        while True:
            changed = False
            for label in [l for l in self.pool if l not in influencers]:
                candidate = self.canonical(influencers + (label,))
                score = self.scoreSet(candidate, label)[2].score
                accepted = score > bestScore
                self.record('forward', label, candidate, score, accepted)
                if accepted:
                    bestScore = score
                    influencers = candidate
                    changed = True

            for label in list(influencers):
                candidate = tuple(l for l in influencers if l != label)
                score = self.scoreSet(candidate, label)[2].score
                accepted = score > bestScore
                self.record('backward', label, candidate, score, accepted)
                if accepted:
                    bestScore = score
                    influencers = candidate
                    changed = True

            sweeps += 1
            if not self.config.repeatSweeps or not changed:
                break

        logger.info('Influencers of %s: {%s} after %d sweep(s), %d scorings',
                    ','.join(self.target.labels), ','.join(influencers), sweeps, self.numScored)
        return self.makeModel(influencers)

    def runExhaustive(self, maxPoolSize=None):
        if maxPoolSize is None:
            maxPoolSize = params.exhaustivePoolCap
        if len(self.pool) > maxPoolSize:
            raise SizingError('Candidate pool has %d labels, exhaustive search allows %d' %
                              (len(self.pool), maxPoolSize), len(self.pool))
        best = None
        bestScore = None
        # smaller sets first, canonical order within a size; strict > keeps the first
        for size in range(len(self.pool) + 1):
            for subset in itertools.combinations(self.pool, size):
                score = self.scoreSet(subset)[2].score
                accepted = bestScore is None or score > bestScore
                self.record('exhaustive', None, subset, score, accepted)
                if accepted:
                    best = subset
                    bestScore = score
        return self.makeModel(best)

    def makeModel(self, influencers):
        summary, estimates, report = self.scoreSet(influencers)
        return SummModel(self.target, tuple(influencers), summary, estimates, report,
                         self.config.model, list(self.trace), self.config.toJson())


def influencerSearch(dataset, target, config):
    return InfluencerSearch(dataset, target, config).run()


def exhaustiveSearch(dataset, target, config, maxPoolSize=None):
    return InfluencerSearch(dataset, target, config).runExhaustive(maxPoolSize)


def learnModel(dataset, target, config, exhaustive=False, callbackTrace=None):
    search = InfluencerSearch(dataset, target, config)
    search.callbackTrace = callbackTrace
    if exhaustive:
        return search.runExhaustive()
    return search.run()


def fitModel(dataset, target, spec, alpha, gamma, model=None):
    """ Estimate a model whose influencing set is fixed, no search """
    if dataset.numEvents() == 0:
        raise InputError('Cannot fit a model on an empty dataset')
    target = targetFor(dataset, target)
    summary = createSummary(spec, dataset.alphabet)
    _, estimates, report = computeScore(dataset, target, summary, alpha, gamma)
    if model is None:
        model = MODEL_OF_KIND[spec.kind]
    settings = {'model': model, 'alpha': alpha, 'gamma': gamma,
                'kappa': summary.spec.toJson()['lookback']}
    return SummModel(target, tuple(spec.labels), summary, estimates, report, model,
                     [], settings)


def setF1(estimated, truth):
    estimated = set(estimated)
    truth = set(truth)
    if not estimated and not truth:
        return 1.0
    hits = len(estimated & truth)
    if hits == 0:
        return 0.0
    precision = hits / float(len(estimated))
    recall = hits / float(len(truth))
    return 2.0 * precision * recall / (precision + recall)

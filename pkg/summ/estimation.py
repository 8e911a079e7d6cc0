# Copyright (c) 2026 The summ authors
# Distributed under the MIT license, see LICENSE.md
#------------------------------------------------------------------------------
#
# estimation.py
# Summary statistics N(x;s), Dirichlet-smoothed estimates, log likelihood
# and the BIC score.  Counting has a vectorized path (countStatistics) and
# a position-by-position path (countStatisticsNaive) that must agree.
#

import logging
import math
from dataclasses import dataclass

import numpy as np

from .errors import InputError, ConsistencyError
from .summaryBase import SummarySpec
from .summaryKinds import createSummary

logger = logging.getLogger(__name__)


def asSummary(summary, alphabet):
    if isinstance(summary, SummarySpec):
        return createSummary(summary, alphabet)
    return summary


def checkAlphabet(dataset, summary):
    if dataset.alphabet != summary.alphabet:
        raise InputError('Dataset alphabet %r does not match summary alphabet %r' %
                         (dataset.alphabet, summary.alphabet))


class SummaryStatistics:
    """
    counts[r, x] = N(x; states[r]).  Only summary states that occur are
    stored; every other state of the domain has N(x; s) = 0.
    """
    def __init__(self, targetStates, states, counts):
        self.targetStates = tuple(targetStates)
        self.states = list(states)
        self.counts = np.asarray(counts, dtype=np.int64).reshape(len(self.states),
                                                                  len(self.targetStates))
        self.stateIndex = dict((s, r) for r, s in enumerate(self.states))
        self.marginals = self.counts.sum(axis=1)

    def __repr__(self):
        return 'SummaryStatistics(%d states, %d positions)' % (len(self.states), self.total())

    def total(self):
        return int(self.counts.sum())

    def _stateColumn(self, x):
        if isinstance(x, (int, np.integer)):
            return int(x)
        return self.targetStates.index(x)

    def count(self, x, state):
        r = self.stateIndex.get(state)
        if r is None:
            return 0
        return int(self.counts[r, self._stateColumn(x)])

    def marginal(self, state):
        r = self.stateIndex.get(state)
        return 0 if r is None else int(self.marginals[r])

    def asDict(self):
        return dict((s, tuple(int(c) for c in self.counts[r]))
                    for r, s in enumerate(self.states))

    def merge(self, other):
        """ Count-wise sum, so datasets can be counted in shards """
        if other.targetStates != self.targetStates:
            raise InputError('Cannot merge statistics over different target states')
        merged = self.asDict()
        for state, row in other.asDict().items():
            if state in merged:
                merged[state] = tuple(a + b for a, b in zip(merged[state], row))
            else:
                merged[state] = row
        states = list(merged.keys())
        return SummaryStatistics(self.targetStates, states, [merged[s] for s in states])


class ParameterTable:
    """
    theta[r, x] estimates P(x | states[r]).  States never counted get the
    prior estimate alpha / (|states| * alpha) = 1 / |states|.
    """
    def __init__(self, targetStates, states, theta, alpha):
        self.targetStates = tuple(targetStates)
        self.states = list(states)
        self.theta = np.asarray(theta, dtype=np.float64).reshape(len(self.states),
                                                                  len(self.targetStates))
        self.alpha = alpha
        self.stateIndex = dict((s, r) for r, s in enumerate(self.states))
        self.priorRow = np.full(len(self.targetStates), 1.0 / len(self.targetStates))

    def __repr__(self):
        return 'ParameterTable(%d states, alpha=%g)' % (len(self.states), self.alpha)

    def row(self, state):
        r = self.stateIndex.get(state)
        return self.priorRow if r is None else self.theta[r]

    def probability(self, x, state):
        if not isinstance(x, (int, np.integer)):
            x = self.targetStates.index(x)
        return float(self.row(state)[x])

    def rowsFor(self, states):
        if len(states) == 0:
            return np.zeros((0, len(self.targetStates)))
        return np.vstack([self.row(s) for s in states])

    def toJson(self, summary, domain=None):
        """ One entry per summary state, observed states unless a domain is given """
        states = self.states if domain is None else domain
        entries = []
        for state in states:
            row = self.row(state)
            entries.append({'state': summary.formatState(state),
                            'probabilities': dict((x, float(p)) for x, p in
                                                  zip(self.targetStates, row))})
        entries.sort(key=lambda e: e['state'])
        return {'alpha': self.alpha, 'default': float(self.priorRow[0]),
                'states': entries}


@dataclass(frozen=True)
class ScoreReport:
    logLikelihood: float
    numParameters: int
    gamma: float
    numEvents: int
    score: float

    def toJson(self):
        return {'log_likelihood': self.logLikelihood,
                'num_parameters': self.numParameters,
                'gamma': self.gamma, 'num_events': self.numEvents,
                'score': self.score}


def countStatistics(dataset, target, summary):
    summary = asSummary(summary, dataset.alphabet)
    checkAlphabet(dataset, summary)
    encoded = dataset.encoded()
    codes, states = summary.stateCodes(encoded)
    numStates = target.numStates()
    xs = target.stateMap[encoded.labels]
    flat = np.bincount(codes * numStates + xs, minlength=len(states) * numStates)
    return SummaryStatistics(target.states, states, flat.reshape(len(states), numStates))


def countStatisticsNaive(dataset, target, summary):
    summary = asSummary(summary, dataset.alphabet)
    checkAlphabet(dataset, summary)
    counts = dict()
    for sequence in dataset:
        for i, label in enumerate(sequence, 1):
            state = summary.summarize(sequence, i)
            if state not in counts:
                counts[state] = [0] * target.numStates()
            counts[state][target.stateIndex(label)] += 1
    states = list(counts.keys())
    return SummaryStatistics(target.states, states, [counts[s] for s in states])


def checkAlpha(alpha):
    if not (alpha > 0) or math.isinf(alpha):
        raise InputError('Prior strength alpha must be a positive number, got %r' % (alpha,))


def estimateParameters(stats, alpha):
    checkAlpha(alpha)
    numStates = len(stats.targetStates)
    theta = (alpha + stats.counts) / (numStates * alpha + stats.marginals[:, None])
    return ParameterTable(stats.targetStates, stats.states, theta, alpha)


def logLikelihood(stats, params):
    """ Sum over counted cells of N(x;s) log theta(x|s), natural log """
    if len(stats.states) == 0:
        return 0.0
    if params.states == stats.states:
        theta = params.theta
    else:
        rows = []
        for r, state in enumerate(stats.states):
            pr = params.stateIndex.get(state)
            if pr is None:
                if stats.marginals[r] > 0:
                    raise ConsistencyError('No parameters for counted summary state %r' % (state,))
                rows.append(params.priorRow)
            else:
                rows.append(params.theta[pr])
        theta = np.vstack(rows)
    mask = stats.counts > 0
    return float(np.sum(stats.counts[mask] * np.log(theta[mask])))


def numFreeParameters(target, summary):
    return (target.numStates() - 1) * summary.domainSize()


def bicScore(stats, params, summary, target, gamma, numEvents):
    if not (gamma > 0):
        raise InputError('Penalty weight gamma must be positive, got %r' % (gamma,))
    if numEvents < 1:
        raise InputError('BIC needs at least one event, got N=%r' % (numEvents,))
    ll = logLikelihood(stats, params)
    numParams = numFreeParameters(target, summary)
    score = ll - gamma * float(numParams) * math.log(numEvents) / 2.0
    return ScoreReport(ll, numParams, gamma, numEvents, score)


def computeScore(dataset, target, summary, alpha, gamma):
    """ Statistics, estimates and score for one influencing set """
    summary = asSummary(summary, dataset.alphabet)
    stats = countStatistics(dataset, target, summary)
    params = estimateParameters(stats, alpha)
    report = bicScore(stats, params, summary, target, gamma, dataset.numEvents())
    return stats, params, report


def naiveLogLikelihood(dataset, target, summary, params):
    """ Position-by-position sum of log theta(state(l_i) | s_i) """
    summary = asSummary(summary, dataset.alphabet)
    total = 0.0
    for sequence in dataset:
        for i, label in enumerate(sequence, 1):
            state = summary.summarize(sequence, i)
            total += math.log(params.probability(target.stateIndex(label), state))
    return total


def predictiveLogLikelihood(dataset, target, summary, params):
    """ Log likelihood of any dataset under fitted parameters """
    summary = asSummary(summary, dataset.alphabet)
    checkAlphabet(dataset, summary)
    encoded = dataset.encoded()
    if len(encoded) == 0:
        return 0.0
    codes, states = summary.stateCodes(encoded)
    rows = params.rowsFor(states)
    xs = target.stateMap[encoded.labels]
    return float(np.sum(np.log(rows[codes, xs])))

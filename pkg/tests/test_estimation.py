import math

import numpy as np
from nose.tools import *

from summ.errors import InputError, ConsistencyError
from summ.eventSequence import Alphabet, EventDataset, TargetVariable
from summ.estimation import (countStatistics, countStatisticsNaive, estimateParameters,
                             logLikelihood, bicScore, computeScore, naiveLogLikelihood,
                             predictiveLogLikelihood, numFreeParameters)
from summ.summaryBase import BINARY, ORDINAL, KGRAM
from summ.summaryKinds import buildSummary

LABELS = ['A', 'B', 'C', 'D']


def random_case(rng):
    """ Dataset with M <= 4 and N <= 50, a random target and summary """
    numLabels = int(rng.integers(1, 5))
    alphabet = Alphabet(LABELS[:numLabels])
    sequences = []
    budget = 50
    for k in range(int(rng.integers(1, 6))):
        length = int(rng.integers(1, min(10, budget) + 1))
        budget -= length
        sequences.append([alphabet.labels[j] for j in rng.integers(0, numLabels, length)])
        if budget <= 0:
            break
    dataset = EventDataset(sequences, alphabet)

    numTarget = int(rng.integers(1, numLabels + 1))
    target = TargetVariable(alphabet, rng.choice(alphabet.labels, numTarget, replace=False))

    kind = (BINARY, ORDINAL, KGRAM)[int(rng.integers(0, 3))]
    lookback = (None, 1, 2, 3)[int(rng.integers(0, 4))]
    if kind == KGRAM:
        summary = buildSummary(KGRAM, alphabet, alphabet.labels, int(rng.integers(0, 3)))
    else:
        size = int(rng.integers(0, numLabels + 1))
        labels = rng.choice(alphabet.labels, size, replace=False)
        summary = buildSummary(kind, alphabet, labels, lookback)
    return dataset, target, summary


def check_normalized(params):
    np.testing.assert_allclose(params.theta.sum(axis=1), 1.0, atol=1e-12)
    assert_true(np.all(params.theta > 0))
    assert_true(np.all(params.theta < 1) or params.theta.shape[1] == 1)


def test_hand_computed_score():
    """
    [A,B,A,B], target A, presence of B in the last position, alpha=1
    """
    dataset = EventDataset([['A', 'B', 'A', 'B']])
    target = TargetVariable(dataset.alphabet, ['A'])
    summary = buildSummary(BINARY, dataset.alphabet, ['B'], 1)
    stats, params, report = computeScore(dataset, target, summary, 1.0, 1.0)

    assert_equal(stats.asDict(), {(0,): (1, 2), (1,): (1, 0)})
    assert_almost_equal(params.probability('A', (0,)), 0.4)
    assert_almost_equal(params.probability('A', (1,)), 2.0 / 3.0)
    ll = math.log(0.4) + 2 * math.log(0.6) + math.log(2.0 / 3.0)
    assert_almost_equal(report.logLikelihood, ll)
    assert_equal(report.numParameters, 2)
    assert_almost_equal(report.score, ll - math.log(4))


def test_fast_counts_match_naive():
    rng = np.random.default_rng(3)
    for trial in range(100):
        dataset, target, summary = random_case(rng)
        fast = countStatistics(dataset, target, summary)
        naive = countStatisticsNaive(dataset, target, summary)
        assert_equal(fast.asDict(), naive.asDict())
        assert_equal(fast.total(), dataset.numEvents())


def test_likelihood_oracle():
    """
    Log likelihood from summary statistics equals the position by
    position sum of log probabilities
    """
    rng = np.random.default_rng(5)
    for trial in range(100):
        dataset, target, summary = random_case(rng)
        alpha = float(rng.choice([0.1, 1.0, 5.0]))
        stats = countStatistics(dataset, target, summary)
        params = estimateParameters(stats, alpha)
        check_normalized(params)
        fromStats = logLikelihood(stats, params)
        np.testing.assert_allclose(fromStats, naiveLogLikelihood(dataset, target, summary, params),
                                   rtol=0, atol=1e-9)
        np.testing.assert_allclose(fromStats,
                                   predictiveLogLikelihood(dataset, target, summary, params),
                                   rtol=0, atol=1e-9)


def test_parameter_count():
    alphabet = Alphabet(LABELS)
    target = TargetVariable(alphabet, ['A'])
    assert_equal(numFreeParameters(target, buildSummary(BINARY, alphabet, ['B', 'C'], 3)), 4)
    assert_equal(numFreeParameters(target, buildSummary(ORDINAL, alphabet, ['B', 'C'], 3)), 5)
    both = TargetVariable(alphabet, ['A', 'B'])
    assert_equal(numFreeParameters(both, buildSummary(BINARY, alphabet, ['C'], 3)), 4)


def test_unseen_state_is_finite():
    """
    A test position whose summary state never occurred in training gets
    the uniform estimate
    """
    alphabet = Alphabet(['A', 'B', 'C'])
    train = EventDataset([['A', 'A', 'B'], ['B', 'A']], alphabet)
    test = EventDataset([['C', 'A', 'C']], alphabet)
    target = TargetVariable(alphabet, ['A'])
    summary = buildSummary(BINARY, alphabet, ['C'], 1)
    _, params, _ = computeScore(train, target, summary, 0.1, 1.0)
    assert_false((1,) in params.stateIndex)
    ll = predictiveLogLikelihood(test, target, summary, params)
    assert_true(np.isfinite(ll))
    expected = 2 * math.log(params.probability('<other>', (0,))) + math.log(0.5)
    assert_almost_equal(ll, expected)


def test_merge_matches_concat():
    alphabet = Alphabet(['A', 'B', 'C'])
    first = EventDataset([['A', 'B', 'C', 'A']], alphabet)
    second = EventDataset([['C', 'C', 'B'], ['A']], alphabet)
    target = TargetVariable(alphabet, ['B'])
    summary = buildSummary(ORDINAL, alphabet, ['A', 'C'], 2)
    merged = countStatistics(first, target, summary).merge(countStatistics(second, target, summary))
    assert_equal(merged.asDict(), countStatistics(first.concat(second), target, summary).asDict())


def test_bad_hyperparameters():
    dataset = EventDataset([['A', 'B']])
    target = TargetVariable(dataset.alphabet, ['A'])
    summary = buildSummary(BINARY, dataset.alphabet, ['B'], 1)
    stats = countStatistics(dataset, target, summary)
    assert_raises(InputError, estimateParameters, stats, 0.0)
    assert_raises(InputError, estimateParameters, stats, -1.0)
    params = estimateParameters(stats, 1.0)
    assert_raises(InputError, bicScore, stats, params, summary, target, 0.0, 2)
    assert_raises(InputError, bicScore, stats, params, summary, target, 1.0, 0)


def test_missing_parameters_detected():
    alphabet = Alphabet(['A', 'B'])
    target = TargetVariable(alphabet, ['A'])
    summary = buildSummary(BINARY, alphabet, ['B'], 1)
    small = countStatistics(EventDataset([['A', 'A']], alphabet), target, summary)
    large = countStatistics(EventDataset([['B', 'A']], alphabet), target, summary)
    params = estimateParameters(small, 1.0)
    assert_raises(ConsistencyError, logLikelihood, large, params)


def test_label_that_never_occurs_only_costs_parameters():
    """
    Adding a label that never occurs to a binary summary keeps the log
    likelihood and strictly lowers the score
    """
    alphabet = Alphabet(['A', 'B', 'C', 'E'])
    dataset = EventDataset([['A', 'B', 'A', 'C', 'B', 'A'], ['C', 'A', 'B', 'B']], alphabet)
    target = TargetVariable(alphabet, ['A'])
    for lookback in (None, 1, 3):
        _, _, base = computeScore(dataset, target,
                                  buildSummary(BINARY, alphabet, ['B'], lookback), 0.5, 1.0)
        _, _, wider = computeScore(dataset, target,
                                   buildSummary(BINARY, alphabet, ['B', 'E'], lookback), 0.5, 1.0)
        assert_almost_equal(wider.logLikelihood, base.logLikelihood)
        assert_true(wider.score < base.score)


def test_small_alpha_gives_empirical_frequencies():
    rng = np.random.default_rng(11)
    for trial in range(20):
        dataset, target, summary = random_case(rng)
        stats = countStatistics(dataset, target, summary)
        params = estimateParameters(stats, 1e-9)
        empirical = stats.counts / stats.marginals[:, None].astype(np.float64)
        np.testing.assert_allclose(params.theta, empirical, atol=1e-6)

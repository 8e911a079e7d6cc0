import numpy as np
from nose.tools import *

from summ.errors import InputError, SizingError
from summ.eventSequence import Alphabet, EventDataset
from summ.summaryBase import SummarySpec, BINARY, ORDINAL, KGRAM
from summ.summaryKinds import buildSummary, createSummary, keepLast, BOUNDARY

LABELS = ['A', 'B', 'C', 'D', 'E']


def random_dataset(rng, numLabels=4, maxSequences=6, maxLength=12):
    alphabet = Alphabet(LABELS[:numLabels])
    sequences = []
    for k in range(rng.integers(1, maxSequences + 1)):
        length = rng.integers(1, maxLength + 1)
        sequences.append([alphabet.labels[j] for j in rng.integers(0, numLabels, length)])
    return EventDataset(sequences, alphabet)


def compare_paths(dataset, summary):
    """
    The vectorized state codes must decode to what summarize() returns
    position by position
    """
    codes, states = summary.stateCodes(dataset.encoded())
    t = 0
    for sequence in dataset:
        for i in range(1, len(sequence) + 1):
            assert_equal(states[codes[t]], summary.summarize(sequence, i))
            t += 1
    assert_equal(t, len(codes))


def test_domain_sizes():
    """
    2^|U| presence vectors, sum of u!/(u-i)! order instantiations
    """
    alphabet = Alphabet(LABELS)
    assert_equal(buildSummary(BINARY, alphabet, ['A', 'B', 'C'], 3).domainSize(), 8)
    assert_equal(buildSummary(ORDINAL, alphabet, ['A', 'B', 'C'], 3).domainSize(), 16)
    assert_equal(buildSummary(KGRAM, alphabet, LABELS, 2).domainSize(), 36)
    assert_equal(buildSummary(BINARY, alphabet, [], 3).domainSize(), 1)
    assert_equal(buildSummary(ORDINAL, alphabet, [], 3).domainSize(), 1)


def test_domain_enumeration_matches_size():
    alphabet = Alphabet(LABELS)
    for size in range(len(LABELS) + 1):
        for kind in (BINARY, ORDINAL):
            summary = buildSummary(kind, alphabet, LABELS[:size], 2)
            domain = summary.enumerateDomain()
            assert_equal(len(domain), summary.domainSize())
            assert_equal(len(set(domain)), len(domain))
    for order in range(3):
        summary = buildSummary(KGRAM, alphabet, LABELS, order)
        assert_equal(len(summary.enumerateDomain()), summary.domainSize())


def test_domain_too_large():
    alphabet = Alphabet(['L%03d' % i for i in range(200)])
    summary = buildSummary(ORDINAL, alphabet, alphabet.labels, None)
    assert_raises(SizingError, summary.domainSize)
    small = buildSummary(BINARY, Alphabet(LABELS), LABELS, 1)
    assert_raises(SizingError, small.enumerateDomain, 10)


def test_binary_summary():
    alphabet = Alphabet(['A', 'B', 'C'])
    summary = buildSummary(BINARY, alphabet, ['C', 'B'], None)
    assert_equal(summary.summarize(['A', 'A', 'C', 'B'], 4), (0, 1))
    assert_equal(summary.summarize(['A', 'A', 'C', 'B'], 5), (1, 1))
    assert_equal(summary.summarize(['A', 'A', 'C', 'B'], 1), (0, 0))

    perLabel = buildSummary(BINARY, alphabet, ['B', 'C'], {'B': 1, 'C': 3})
    assert_equal(perLabel.summarize(['B', 'C', 'A'], 4), (0, 1))
    assert_equal(perLabel.formatState((1, 0)), 'B,C\u0304')
    assert_raises(InputError, buildSummary, BINARY, alphabet, ['B', 'C'], {'B': 1})


def test_ordinal_summary():
    """
    Keep-last masking orders influencers by their final occurrence
    """
    alphabet = Alphabet(['A', 'B', 'C'])
    summary = buildSummary(ORDINAL, alphabet, ['A', 'B'], None)
    assert_equal(summary.summarize(['A', 'B', 'A', 'C'], 4), ('B', 'A'))
    assert_equal(summary.summarize(['A', 'B', 'A', 'C'], 3), ('A', 'B'))
    assert_equal(summary.summarize(['C'], 2), ())
    windowed = buildSummary(ORDINAL, alphabet, ['A', 'B'], 2)
    assert_equal(windowed.summarize(['B', 'A', 'C', 'A'], 5), ('A',))
    assert_equal(windowed.formatState(('B', 'A')), '[B,A]')
    assert_equal(keepLast([(1, 'A'), (2, 'B'), (3, 'A')]), [(2, 'B'), (3, 'A')])


def test_kgram_summary():
    alphabet = Alphabet(['A', 'B'])
    summary = buildSummary(KGRAM, alphabet, alphabet.labels, 2)
    assert_equal(summary.summarize(['A', 'B', 'B'], 1), (BOUNDARY, BOUNDARY))
    assert_equal(summary.summarize(['A', 'B', 'B'], 2), (BOUNDARY, 'A'))
    assert_equal(summary.summarize(['A', 'B', 'B'], 4), ('B', 'B'))
    assert_equal(summary.formatState((BOUNDARY, 'A')), '(⊥|A)')
    assert_equal(buildSummary(KGRAM, alphabet, alphabet.labels, 0).summarize(['A'], 2), ())
    assert_raises(InputError, createSummary, SummarySpec(KGRAM, ('A',), 1), alphabet)
    assert_raises(InputError, createSummary, SummarySpec(KGRAM, ('A', 'B'), None), alphabet)


def test_vectorized_matches_summarize():
    """
    Compare the numpy signature path against summarize() on random data,
    for every kind and several look-backs
    """
    rng = np.random.default_rng(11)
    for trial in range(40):
        dataset = random_dataset(rng)
        alphabet = dataset.alphabet
        size = rng.integers(0, len(alphabet) + 1)
        labels = list(rng.choice(alphabet.labels, size=size, replace=False))
        for lookback in (None, 1, 2, 3):
            compare_paths(dataset, buildSummary(BINARY, alphabet, labels, lookback))
            compare_paths(dataset, buildSummary(ORDINAL, alphabet, labels, lookback))
        perLabel = dict((l, int(rng.integers(1, 4))) for l in labels)
        compare_paths(dataset, buildSummary(BINARY, alphabet, labels, perLabel))
        for order in range(3):
            compare_paths(dataset, buildSummary(KGRAM, alphabet, alphabet.labels, order))


def test_spec_json():
    alphabet = Alphabet(LABELS)
    spec = SummarySpec.build(BINARY, alphabet, ['C', 'A'], {'A': 2, 'C': None})
    assert_equal(spec.toJson(), {'kind': 'binary', 'labels': ['A', 'C'],
                                 'lookback': [2, None], 'masking': None})


def test_state_ignores_labels_outside_the_set():
    """
    Relabeling events outside U, or moving them around, never changes the
    summary state
    """
    rng = np.random.default_rng(5)
    alphabet = Alphabet(LABELS)
    inside = ['A', 'B']
    outside = ['C', 'D', 'E']
    for trial in range(30):
        sequence = [LABELS[j] for j in rng.integers(0, len(LABELS), 15)]
        relabeled = [l if l in inside else outside[int(rng.integers(0, 3))] for l in sequence]
        for kind in (BINARY, ORDINAL):
            for lookback in (None, 1, 4):
                summary = buildSummary(kind, alphabet, inside, lookback)
                for i in range(1, len(sequence) + 2):
                    assert_equal(summary.summarize(relabeled, i), summary.summarize(sequence, i))


def test_binary_state_ignores_order_inside_window():
    rng = np.random.default_rng(6)
    alphabet = Alphabet(LABELS[:4])
    for trial in range(30):
        sequence = [alphabet.labels[j] for j in rng.integers(0, 4, 12)]
        labels = list(rng.choice(alphabet.labels, size=int(rng.integers(1, 4)), replace=False))
        for lookback in (None, 2, 5):
            summary = buildSummary(BINARY, alphabet, labels, lookback)
            for i in range(1, len(sequence) + 2):
                lo = 0 if lookback is None else max(0, i - 1 - lookback)
                shuffled = list(sequence)
                shuffled[lo:i - 1] = rng.permutation(sequence[lo:i - 1]).tolist()
                assert_equal(summary.summarize(shuffled, i), summary.summarize(sequence, i))


def test_keep_last_is_idempotent():
    rng = np.random.default_rng(7)
    for trial in range(50):
        events = [(j, LABELS[int(k)]) for j, k in enumerate(rng.integers(0, 5, 10), 1)]
        once = keepLast(events)
        assert_equal(keepLast(once), once)
        assert_equal(len(set(l for _, l in once)), len(once))

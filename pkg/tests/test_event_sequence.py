import numpy as np
from nose.tools import *

from summ.errors import InputError, DataError
from summ.eventSequence import (Alphabet, EventDataset, TargetVariable, HistoryWindow,
                                restrictHistory, OTHER)

EXAMPLE = ['A', 'A', 'C', 'B']


def test_restrict_history_example():
    """
    History of the last position of [A,A,C,B] restricted to {A,B}
    """
    window = restrictHistory(EXAMPLE, 4, {'A', 'B'})
    assert_equal(window, [(1, 'A'), (2, 'A')])
    assert_equal(window.labels(), ['A', 'A'])


def test_restrict_history_lookback():
    assert_equal(restrictHistory(EXAMPLE, 4, {'A', 'B'}, 1), [])
    assert_equal(restrictHistory(EXAMPLE, 4, {'C'}, 1), [(3, 'C')])
    assert_equal(restrictHistory(EXAMPLE, 4, {'A', 'C'}, 2), [(2, 'A'), (3, 'C')])
    # a look-back longer than the prefix is the whole prefix
    assert_equal(restrictHistory(EXAMPLE, 3, {'A'}, 10), [(1, 'A'), (2, 'A')])


def test_restrict_history_edges():
    assert_equal(len(restrictHistory(EXAMPLE, 1, {'A', 'B', 'C'})), 0)
    assert_equal(restrictHistory(EXAMPLE, 5, {'B'}), [(4, 'B')])
    assert_equal(restrictHistory(EXAMPLE, 4, set()), [])
    assert_raises(InputError, restrictHistory, EXAMPLE, 0, {'A'})
    assert_raises(InputError, restrictHistory, EXAMPLE, 6, {'A'})
    assert_raises(InputError, restrictHistory, EXAMPLE, 2, {'A'}, 0)


def test_history_window_restrict():
    window = HistoryWindow(4, [(1, 'A'), (2, 'A'), (3, 'C')])
    assert_equal(window.restrict({'C'}), [(3, 'C')])
    assert_equal(window.restrict({'C'}).position, 4)


def random_sequences(seed, count=30, length=12):
    rng = np.random.default_rng(seed)
    labels = ['A', 'B', 'C', 'D']
    for trial in range(count):
        sequence = [labels[j] for j in rng.integers(0, 4, length)]
        first = set(rng.choice(labels, size=int(rng.integers(0, 5)), replace=False))
        second = set(rng.choice(labels, size=int(rng.integers(0, 5)), replace=False))
        yield sequence, first, second


def test_restrict_history_grows_with_lookback():
    for sequence, labelSet, _ in random_sequences(8):
        for i in range(1, len(sequence) + 2):
            previous = set()
            for lookback in list(range(1, len(sequence) + 2)) + [None]:
                window = set(restrictHistory(sequence, i, labelSet, lookback))
                assert_true(previous <= window, (sequence, i, lookback))
                previous = window
            assert_equal(previous, set(restrictHistory(sequence, i, labelSet, i)))


def test_restrict_history_composes():
    for sequence, first, second in random_sequences(9):
        for i in range(1, len(sequence) + 2):
            for lookback in (None, 1, 3):
                nested = restrictHistory(sequence, i, first, lookback).restrict(second)
                assert_equal(nested, restrictHistory(sequence, i, first & second, lookback))


def test_alphabet():
    alphabet = Alphabet.fromLabels(['C', 'A', 'B', 'A'])
    assert_equal(alphabet.labels, ('A', 'B', 'C'))
    assert_equal(alphabet.getId('C'), 2)
    assert_equal(alphabet.canonical(['C', 'A']), ('A', 'C'))
    assert_true('B' in alphabet)
    assert_raises(InputError, alphabet.getId, 'Z')
    assert_raises(InputError, Alphabet, ['A', 'A'])
    assert_raises(InputError, Alphabet, ['A', ''])
    assert_raises(InputError, Alphabet, [])


def test_target_variable():
    alphabet = Alphabet(['A', 'B', 'C'])
    target = TargetVariable(alphabet, ['A'])
    assert_equal(target.states, ('A', OTHER))
    assert_equal(target.stateOf('A'), 'A')
    assert_equal(target.stateOf('C'), OTHER)
    assert_true(target.hasOther())

    full = TargetVariable(alphabet, ['C', 'B', 'A'])
    assert_equal(full.states, ('A', 'B', 'C'))
    assert_false(full.hasOther())
    assert_equal(full.numStates(), 3)

    assert_raises(InputError, TargetVariable, alphabet, [])
    assert_raises(InputError, TargetVariable, alphabet, ['Z'])


def test_dataset_labels_checked():
    alphabet = Alphabet(['A', 'B'])
    assert_raises(DataError, EventDataset, [['A', 'C']], alphabet)
    dataset = EventDataset([['A', 'B'], ['B']], alphabet)
    assert_equal(dataset.numSequences(), 2)
    assert_equal(dataset.numEvents(), 3)
    assert_equal(dataset.labelCounts(), {'A': 1, 'B': 2})


def test_encoded():
    dataset = EventDataset([['A', 'B', 'A'], ['B', 'B']])
    encoded = dataset.encoded()
    np.testing.assert_array_equal(encoded.labels, [0, 1, 0, 1, 1])
    np.testing.assert_array_equal(encoded.positions, [1, 2, 3, 1, 2])
    np.testing.assert_array_equal(encoded.seqStart, [0, 0, 0, 3, 3])
    np.testing.assert_array_equal(encoded.offsets, [0, 3, 5])


def test_restrict_labels():
    dataset = EventDataset([['A', 'Z', 'B'], ['Z'], ['B']], ids=['x', 'y', 'z'])
    kept = dataset.restrictLabels({'A', 'B'})
    assert_equal(kept.alphabet.labels, ('A', 'B'))
    assert_equal(kept.sequences, (('A', 'B'), ('B',)))
    assert_equal(kept.ids, ('x', 'z'))


def test_concat():
    alphabet = Alphabet(['A', 'B'])
    first = EventDataset([['A']], alphabet, ['a'])
    second = EventDataset([['B', 'A']], alphabet, ['b'])
    both = first.concat(second)
    assert_equal(both.sequences, (('A',), ('B', 'A')))
    assert_equal(both.ids, ('a', 'b'))
    assert_raises(InputError, first.concat, EventDataset([['B']]))

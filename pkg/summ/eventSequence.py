# Copyright (c) 2026 The summ authors
# Distributed under the MIT license, see LICENSE.md
#------------------------------------------------------------------------------
#
# eventSequence.py
# Alphabets, event datasets and restricted histories.
# Positions inside a sequence are 1-based and carry no timestamps.  Labels
# are opaque strings; internally they are interned to dense integer ids in
# canonical alphabet order and all counting keys on those ids.
#

import numpy as np

from .errors import InputError, DataError

# Name of the state collapsing every label outside the target set
OTHER = '<other>'


class Alphabet:
    def __init__(self, labels):
        self.labels = tuple(labels)
        if len(self.labels) == 0:
            raise InputError('An alphabet needs at least one label')
        self.ids = dict()
        for i, label in enumerate(self.labels):
            if not isinstance(label, str) or label == '':
                raise InputError('Labels must be non-empty strings, got %r' % (label,))
            if label in self.ids:
                raise InputError('Duplicate label "%s" in alphabet' % label)
            self.ids[label] = i

    @classmethod
    def fromLabels(cls, labels):
        """ Canonical (sorted) alphabet over the distinct labels given """
        return cls(sorted(set(labels)))

    def __repr__(self):
        return 'Alphabet(%s)' % ','.join(self.labels)

    def __len__(self):
        return len(self.labels)

    def __iter__(self):
        return iter(self.labels)

    def __contains__(self, label):
        return label in self.ids

    def __eq__(self, other):
        return isinstance(other, Alphabet) and self.labels == other.labels

    def __hash__(self):
        return hash(self.labels)

    def getId(self, label):
        try:
            return self.ids[label]
        except KeyError:
            raise InputError('Label "%s" is not in the alphabet' % (label,))

    def canonical(self, labels):
        """ The given labels as a tuple in alphabet order """
        wanted = set(labels)
        for label in wanted:
            self.getId(label)
        return tuple(l for l in self.labels if l in wanted)

    def restrict(self, keep):
        return Alphabet([l for l in self.labels if l in keep])


class EncodedDataset:
    """
    Flat integer view of a dataset.  Index t runs over all events of all
    sequences back to back; seqStart[t] is the flat index of the first
    event of t's sequence, so the history of t is [seqStart[t], t).
    """
    def __init__(self, sequences, alphabet):
        lengths = np.array([len(s) for s in sequences], dtype=np.int64)
        self.offsets = np.concatenate([[0], np.cumsum(lengths)]).astype(np.int64)
        numEvents = int(self.offsets[-1])
        self.labels = np.fromiter((alphabet.ids[l] for s in sequences for l in s),
                                  dtype=np.int64, count=numEvents)
        self.seqStart = np.repeat(self.offsets[:-1], lengths)
        self.positions = np.arange(numEvents, dtype=np.int64) - self.seqStart + 1
        for arr in (self.offsets, self.labels, self.seqStart, self.positions):
            arr.setflags(write=False)

    def __len__(self):
        return len(self.labels)


class EventDataset:
    def __init__(self, sequences, alphabet=None, ids=None):
        self.sequences = tuple(tuple(s) for s in sequences)
        if alphabet is None:
            alphabet = Alphabet.fromLabels(l for s in self.sequences for l in s)
        self.alphabet = alphabet
        if ids is None:
            ids = ['s%d' % (k + 1) for k in range(len(self.sequences))]
        self.ids = tuple(ids)
        if len(self.ids) != len(self.sequences):
            raise InputError('Expected %d sequence ids, got %d' %
                             (len(self.sequences), len(self.ids)))
        for k, seq in enumerate(self.sequences):
            for i, label in enumerate(seq):
                if label not in alphabet:
                    raise DataError('Sequence "%s" position %d has label "%s" '
                                    'outside the alphabet' % (self.ids[k], i + 1, label))
        self._encoded = None

    def __repr__(self):
        return 'EventDataset(K=%d, N=%d, M=%d)' % (self.numSequences(),
               self.numEvents(), len(self.alphabet))

    def __len__(self):
        return len(self.sequences)

    def __iter__(self):
        return iter(self.sequences)

    def __eq__(self, other):
        return isinstance(other, EventDataset) and \
               self.alphabet == other.alphabet and \
               self.sequences == other.sequences and self.ids == other.ids

    def numSequences(self):
        return len(self.sequences)

    def numEvents(self):
        return sum(len(s) for s in self.sequences)

    def encoded(self):
        if self._encoded is None:
            self._encoded = EncodedDataset(self.sequences, self.alphabet)
        return self._encoded

    def labelCounts(self):
        counts = dict((l, 0) for l in self.alphabet)
        for seq in self.sequences:
            for label in seq:
                counts[label] += 1
        return counts

    def subset(self, indices):
        return EventDataset([self.sequences[k] for k in indices], self.alphabet,
                            [self.ids[k] for k in indices])

    def restrictLabels(self, keep):
        """
        Delete the events of labels outside keep, preserving the order of
        the rest, and drop sequences left empty.
        """
        alphabet = self.alphabet.restrict(set(keep))
        sequences = []
        ids = []
        for seqId, seq in zip(self.ids, self.sequences):
            kept = [l for l in seq if l in alphabet]
            if kept:
                sequences.append(kept)
                ids.append(seqId)
        return EventDataset(sequences, alphabet, ids)

    def concat(self, other):
        if self.alphabet != other.alphabet:
            raise InputError('Cannot concatenate datasets over different alphabets')
        return EventDataset(self.sequences + other.sequences, self.alphabet,
                            self.ids + other.ids)


class HistoryWindow:
    def __init__(self, position, events):
        self.position = position
        self.events = tuple(events)

    def __repr__(self):
        return 'HistoryWindow(i=%d, %s)' % (self.position, list(self.events))

    def __len__(self):
        return len(self.events)

    def __iter__(self):
        return iter(self.events)

    def __eq__(self, other):
        if isinstance(other, HistoryWindow):
            return self.events == other.events
        return self.events == tuple(other)

    def labels(self):
        return [l for _, l in self.events]

    def restrict(self, labelSet):
        return HistoryWindow(self.position, [(j, l) for j, l in self.events if l in labelSet])


def restrictHistory(sequence, i, labelSet, lookback=None):
    """
    Events at positions j with max(1, i - lookback) <= j <= i - 1 whose
    labels are in labelSet.  lookback=None means the whole prefix.
    """
    if i < 1 or i > len(sequence) + 1:
        raise InputError('Position %d outside 1..%d' % (i, len(sequence) + 1))
    if lookback is not None and lookback < 1:
        raise InputError('Look-back must be >= 1 or unbounded, got %r' % (lookback,))
    lo = 1 if lookback is None else max(1, i - lookback)
    events = [(j, sequence[j - 1]) for j in range(lo, i) if sequence[j - 1] in labelSet]
    return HistoryWindow(i, events)


class TargetVariable:
    """
    Categorical variable over a label set X: one state per label of X in
    alphabet order, plus OTHER when X is a proper subset of the alphabet.
    """
    def __init__(self, alphabet, labels):
        labels = set(labels)
        if len(labels) == 0:
            raise InputError('Target label set is empty')
        self.alphabet = alphabet
        self.labels = alphabet.canonical(labels)
        self.states = list(self.labels)
        if len(self.labels) < len(alphabet):
            self.states.append(OTHER)
        self.states = tuple(self.states)
        self.stateIds = dict((s, i) for i, s in enumerate(self.states))

        # stateMap[labelId] is the state index of that label
        otherIndex = len(self.labels)
        self.stateMap = np.array([self.stateIds.get(l, otherIndex) for l in alphabet],
                                 dtype=np.int64)
        self.stateMap.setflags(write=False)

    def __repr__(self):
        return 'TargetVariable(%s)' % ','.join(self.labels)

    def __eq__(self, other):
        return isinstance(other, TargetVariable) and self.alphabet == other.alphabet \
               and self.labels == other.labels

    def numStates(self):
        return len(self.states)

    def hasOther(self):
        return OTHER in self.stateIds

    def stateOf(self, label):
        labelId = self.alphabet.getId(label)
        return self.states[self.stateMap[labelId]]

    def stateIndex(self, label):
        return int(self.stateMap[self.alphabet.getId(label)])

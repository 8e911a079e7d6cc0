# Copyright (c) 2026 The summ authors
# Distributed under the MIT license, see LICENSE.md
#------------------------------------------------------------------------------
#
# summaryKinds.py
# The three summaries: presence bits (BSuMM), masked order of occurrence
# (OSuMM) and the last k labels (k-th order Markov chain).
#

import itertools
from math import factorial

import numpy as np

from .errors import InputError
from .eventSequence import restrictHistory
from .summaryBase import (SummaryBase, SummarySpec, BINARY, ORDINAL, KGRAM,
                          KEEP_LAST, checkLookback, windowStarts)

# Boundary symbol for k-gram slots before the start of a sequence
BOUNDARY = None
BOUNDARY_TEXT = '⊥'
ABSENT_MARK = '\u0304'


def keepLast(events):
    """ Retain each label's final occurrence, in ascending position order """
    last = dict()
    for position, label in events:
        last[label] = position
    return sorted(((p, l) for l, p in last.items()))


MASKINGS = {KEEP_LAST: keepLast}


class BinarySummary(SummaryBase):
    def __init__(self, spec, alphabet):
        SummaryBase.__init__(self, spec, alphabet)
        if len(spec.lookback) != len(spec.labels):
            raise InputError('Binary summary needs one look-back per label')
        for lookback in spec.lookback:
            checkLookback(lookback)
        self.lookbacks = spec.lookback

    def summarize(self, sequence, i):
        bits = []
        for label, lookback in zip(self.labels, self.lookbacks):
            window = restrictHistory(sequence, i, (label,), lookback)
            bits.append(1 if len(window) > 0 else 0)
        return tuple(bits)

    def rawDomainSize(self):
        return 2 ** len(self.labels)

    def iterDomain(self):
        return itertools.product((0, 1), repeat=len(self.labels))

    def signatures(self, encoded):
        numEvents = len(encoded)
        sig = np.zeros((numEvents, len(self.labels)), dtype=np.int8)
        t = np.arange(numEvents, dtype=np.int64)
        for j, (labelId, lookback) in enumerate(zip(self.labelIds, self.lookbacks)):
            # occurrences of the label in [lo, t) via prefix sums
            seen = np.concatenate([[0], np.cumsum(encoded.labels == labelId)])
            lo = windowStarts(encoded, lookback)
            sig[:, j] = (seen[t] - seen[lo]) > 0
        return sig

    def decode(self, row):
        return tuple(int(b) for b in row)

    def formatState(self, state):
        return ','.join(label if bit else label + ABSENT_MARK
                        for label, bit in zip(self.labels, state))


class OrdinalSummary(SummaryBase):
    def __init__(self, spec, alphabet):
        SummaryBase.__init__(self, spec, alphabet)
        checkLookback(spec.lookback)
        if spec.masking not in MASKINGS:
            raise InputError('Unknown masking rule "%s"' % (spec.masking,))
        self.lookback = spec.lookback
        self.mask = MASKINGS[spec.masking]
        self.labelSet = frozenset(self.labels)

    def summarize(self, sequence, i):
        window = restrictHistory(sequence, i, self.labelSet, self.lookback)
        return tuple(label for _, label in self.mask(window.events))

    def rawDomainSize(self):
        u = len(self.labels)
        return sum(factorial(u) // factorial(i) for i in range(u + 1))

    def iterDomain(self):
        for size in range(len(self.labels) + 1):
            for order in itertools.permutations(self.labels, size):
                yield order

    def signatures(self, encoded):
        numEvents = len(encoded)
        width = len(self.labels)
        if width == 0 or numEvents == 0:
            return np.zeros((numEvents, width), dtype=np.int64)
        t = np.arange(numEvents, dtype=np.int64)
        lo = windowStarts(encoded, self.lookback)
        # key[t, j] = flat index of label j's last occurrence inside the
        # window, or numEvents when it does not occur there
        key = np.full((numEvents, width), numEvents, dtype=np.int64)
        for j, labelId in enumerate(self.labelIds):
            seenAt = np.where(encoded.labels == labelId, t, -1)
            lastIncl = np.maximum.accumulate(seenAt)
            lastBefore = np.concatenate([[-1], lastIncl[:-1]])
            valid = lastBefore >= lo
            key[valid, j] = lastBefore[valid]
        order = np.argsort(key, axis=1, kind='stable')
        sortedKey = np.take_along_axis(key, order, axis=1)
        order[sortedKey == numEvents] = -1
        return order

    def decode(self, row):
        return tuple(self.labels[j] for j in row if j >= 0)

    def formatState(self, state):
        return '[%s]' % ','.join(state)


class KGramSummary(SummaryBase):
    def __init__(self, spec, alphabet):
        SummaryBase.__init__(self, spec, alphabet)
        if tuple(spec.labels) != tuple(alphabet.labels):
            raise InputError('A k-gram summary conditions on the full alphabet')
        if spec.lookback is None:
            raise InputError('A k-gram summary needs a bounded order k')
        checkLookback(spec.lookback, allowZero=True)
        self.order = spec.lookback

    def summarize(self, sequence, i):
        if i < 1 or i > len(sequence) + 1:
            raise InputError('Position %d outside 1..%d' % (i, len(sequence) + 1))
        return tuple(sequence[j - 1] if j >= 1 else BOUNDARY
                     for j in range(i - self.order, i))

    def rawDomainSize(self):
        return (len(self.alphabet) + 1) ** self.order

    def iterDomain(self):
        return itertools.product((BOUNDARY,) + tuple(self.alphabet.labels), repeat=self.order)

    def signatures(self, encoded):
        numEvents = len(encoded)
        sig = np.full((numEvents, self.order), -1, dtype=np.int64)
        t = np.arange(numEvents, dtype=np.int64)
        for col, back in enumerate(range(self.order, 0, -1)):
            j = t - back
            valid = j >= encoded.seqStart
            sig[valid, col] = encoded.labels[j[valid]]
        return sig

    def decode(self, row):
        return tuple(self.alphabet.labels[v] if v >= 0 else BOUNDARY for v in row)

    def formatState(self, state):
        return '(%s)' % '|'.join(BOUNDARY_TEXT if l is BOUNDARY else l for l in state)


SUMMARY_CLASSES = {BINARY: BinarySummary, ORDINAL: OrdinalSummary, KGRAM: KGramSummary}


def createSummary(spec, alphabet):
    try:
        factory = SUMMARY_CLASSES[spec.kind]
    except KeyError:
        raise InputError('Unknown summary kind "%s"' % (spec.kind,))
    return factory(spec, alphabet)


def buildSummary(kind, alphabet, labels, kappa, masking=KEEP_LAST):
    return createSummary(SummarySpec.build(kind, alphabet, labels, kappa, masking), alphabet)

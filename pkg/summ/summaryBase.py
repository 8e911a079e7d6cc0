# Copyright (c) 2026 The summ authors
# Distributed under the MIT license, see LICENSE.md
#------------------------------------------------------------------------------
#
# summaryBase.py
# A summary maps the restricted history at a position to a discrete summary
# state.  Each kind has two code paths: summarize() works one position at a
# time on plain label lists, signatures() works on a whole EncodedDataset
# with numpy and returns one integer row per position.  Rows decode to the
# same hashable states summarize() returns.
#

from dataclasses import dataclass
from typing import Optional, Tuple, Union

import numpy as np

from . import params
from .errors import InputError, SizingError

BINARY  = 'binary'
ORDINAL = 'ordinal'
KGRAM   = 'kgram'
KINDS = (BINARY, ORDINAL, KGRAM)

KEEP_LAST = 'keep-last'

# Domain sizes whose bit length exceeds this cannot be turned into a float
# penalty term.
MAX_DOMAIN_BITS = 1000


@dataclass(frozen=True)
class SummarySpec:
    kind: str
    labels: Tuple[str, ...]
    # BINARY: one look-back per label (None = unbounded).
    # ORDINAL: a single look-back or None.  KGRAM: the order k.
    lookback: Union[Optional[int], Tuple[Optional[int], ...]]
    masking: Optional[str] = None

    @classmethod
    def build(cls, kind, alphabet, labels, kappa, masking=KEEP_LAST):
        """
        kappa is an int, None (unbounded) or, for BINARY only, a dict of
        per-label look-backs.
        """
        labels = alphabet.canonical(labels)
        if kind == BINARY:
            if isinstance(kappa, dict):
                missing = [l for l in labels if l not in kappa]
                if missing:
                    raise InputError('No look-back given for %s' % ','.join(missing))
                lookback = tuple(kappa[l] for l in labels)
            else:
                lookback = tuple(kappa for _ in labels)
            return cls(BINARY, labels, lookback, None)
        if isinstance(kappa, dict):
            raise InputError('Per-label look-backs are only defined for binary summaries')
        if kind == ORDINAL:
            return cls(ORDINAL, labels, kappa, masking)
        if kind == KGRAM:
            return cls(KGRAM, tuple(alphabet.labels), kappa, None)
        raise InputError('Unknown summary kind "%s"' % (kind,))

    def toJson(self):
        lookback = list(self.lookback) if isinstance(self.lookback, tuple) else self.lookback
        return {'kind': self.kind, 'labels': list(self.labels),
                'lookback': lookback, 'masking': self.masking}


def checkLookback(lookback, allowZero=False):
    if lookback is None:
        return
    low = 0 if allowZero else 1
    if isinstance(lookback, bool) or not isinstance(lookback, (int, np.integer)) or lookback < low:
        raise InputError('Look-back must be an integer >= %d or unbounded, got %r' %
                         (low, lookback))


def windowStarts(encoded, lookback):
    """ Flat index of the first position inside each position's window """
    if lookback is None:
        return encoded.seqStart
    t = np.arange(len(encoded), dtype=np.int64)
    return np.maximum(encoded.seqStart, t - lookback)


class SummaryBase:
    def __init__(self, spec, alphabet):
        self.spec = spec
        self.alphabet = alphabet
        self.labels = spec.labels
        for label in self.labels:
            alphabet.getId(label)
        self.labelIds = np.array([alphabet.ids[l] for l in self.labels], dtype=np.int64)

    def __repr__(self):
        return '%s(%s)' % (self.__class__.__name__, ','.join(self.labels))

    def summarize(self, sequence, i):
        raise RuntimeError('This method should be overridden by a derived class')

    def rawDomainSize(self):
        raise RuntimeError('This method should be overridden by a derived class')

    def iterDomain(self):
        raise RuntimeError('This method should be overridden by a derived class')

    def signatures(self, encoded):
        raise RuntimeError('This method should be overridden by a derived class')

    def decode(self, row):
        raise RuntimeError('This method should be overridden by a derived class')

    def formatState(self, state):
        raise RuntimeError('This method should be overridden by a derived class')

    def domainSize(self):
        size = self.rawDomainSize()
        if size.bit_length() > MAX_DOMAIN_BITS:
            raise SizingError('Summary domain over %d labels has ~2^%d states' %
                              (len(self.labels), size.bit_length()), size.bit_length())
        return size

    def enumerateDomain(self, cap=None):
        if cap is None:
            cap = params.enumerationCap
        size = self.domainSize()
        if size > cap:
            raise SizingError('Summary domain has %d states, cap is %d' % (size, cap), size)
        return list(self.iterDomain())

    def stateCodes(self, encoded):
        """
        Returns (codes, states): codes[t] indexes states for every flat
        position t.  states lists only the summary states that occur.
        """
        numEvents = len(encoded)
        sig = self.signatures(encoded)
        if numEvents == 0:
            return np.zeros(0, dtype=np.int64), []
        if sig.shape[1] == 0:
            return np.zeros(numEvents, dtype=np.int64), [self.decode(sig[0])]
        uniq, inverse = np.unique(sig, axis=0, return_inverse=True)
        states = [self.decode(row) for row in uniq]
        return inverse.reshape(-1).astype(np.int64), states

#
# randomStreams.py
# Every random draw comes from a numpy Philox4x64 counter-based generator
# seeded through a SeedSequence built from (seed, stream name, indices).
# Philox output depends only on (key, counter), so datasets can be
# reproduced bit-exactly from (seed, K, L) by any Philox4x64-10
# implementation that follows numpy's SeedSequence key derivation.
#

import zlib

import numpy as np

STREAM_GENERATE = 'generate'
STREAM_SPLIT    = 'split'
STREAM_RECOVERY = 'recovery'


def streamId(name):
    return zlib.crc32(name.encode('utf-8'))


def makeRng(seed, stream, *indices):
    seq = np.random.SeedSequence(int(seed), spawn_key=(streamId(stream),) + tuple(int(i) for i in indices))
    return np.random.Generator(np.random.Philox(seq))

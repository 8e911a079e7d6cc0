import os

SRCDIR = os.path.dirname(__file__)

SCHEMA_VERSION = '1.0'

# Environment variable capping worker threads for per-label and per-run work.
THREADS_ENV = 'SUMM_THREADS'

#  Summary kinds.  BSUMM and OSUMM are searched, MC is the k-gram
#  baseline with the full alphabet as influencing set.
MODEL_BSUMM = 'bsumm'
MODEL_OSUMM = 'osumm'
MODEL_MC    = 'mc'
MODEL_KINDS = [MODEL_BSUMM, MODEL_OSUMM, MODEL_MC]

# Largest summary domain we are willing to enumerate.  Scoring never needs
# the enumeration (|P| uses the closed-form size), only reports do.
enumerationCap = 1 << 20

# Largest candidate pool for the brute-force subset search (2^6 = 64 scorings)
exhaustivePoolCap = 6

# Tolerance used when checking that probabilities sum to one
probabilityTolerance = 1e-9

# Synthetic ground truth scenario: 5 labels, A and B depend on whether
# B and C were seen in the last 3 positions.
b1Alphabet     = ['A', 'B', 'C', 'D', 'E']
b1Lookback     = 3
b1Length       = 10
b1Parents      = ['B', 'C']
b1Target       = 'A'
b1Alpha        = 0.1
b1Gamma        = 1.0
b1KValues      = [10, 50, 100, 500, 1000]
b1Runs         = 10

# Evaluation defaults: train/dev/test fractions and hyper-parameter grids
splitFractions = (0.70, 0.15, 0.15)
alphaGrid      = [0.1, 1.0, 5.0, 10.0]
kappaGrid      = [1, 5, 10]
gammaGrid      = [0.1, 0.5, 1.0]
mcOrders       = [0, 1, 2, 3]

# Defaults for learning one graph over every label of a small corpus.
# A lower gamma is needed to find influencing sets in small datasets.
graphAlpha     = 0.1
graphKappa     = 10
graphGamma     = 0.3

# Output file names written under --out
modelFileName     = 'model.json'
traceFileName     = 'trace.jsonl'
evalJsonFileName  = 'eval_report.json'
evalTableFileName = 'eval_report.txt'
recoveryFileName  = 'recovery.json'
graphDotFileName  = 'graph.dot'
graphJsonFileName = 'graph.json'
datasetFileName   = 'dataset.jsonl'
# Written next to every saved dataset, one alphabet label per line
alphabetSuffix    = '.alphabet'


def threadCount():
    """ Worker count from SUMM_THREADS, 1 when unset or invalid """
    value = os.environ.get(THREADS_ENV, '')
    try:
        count = int(value)
    except ValueError:
        return 1
    return max(1, count)

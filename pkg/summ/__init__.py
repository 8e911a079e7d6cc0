from .eventSequence import Alphabet, EventDataset, TargetVariable, restrictHistory
from .search import SearchConfig, influencerSearch, exhaustiveSearch, learnModel, setF1
from .datasetIO import loadDataset, saveDataset

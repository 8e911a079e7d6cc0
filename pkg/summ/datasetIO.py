#
# datasetIO.py
# Reading and writing event datasets.  Two formats:
#   csv   - header "seq_id,label", one event per row, the rows of one
#           sequence contiguous and in position order
#   jsonl - one {"id": ..., "events": [...]} object per line
# Every write goes to a temporary file next to the target, then replaces it.
# A saved dataset carries its alphabet in a sidecar file "<path>.alphabet",
# so labels that never occur survive a save and load.
#

import io
import json
import logging
import os
import re
import tempfile

import pandas as pd

from . import params
from .errors import DataError, ParseError, InputError
from .eventSequence import Alphabet, EventDataset

logger = logging.getLogger(__name__)

FORMAT_CSV   = 'csv'
FORMAT_JSONL = 'jsonl'
FORMATS = (FORMAT_CSV, FORMAT_JSONL)
CSV_COLUMNS = ['seq_id', 'label']


def writeFileAtomic(path, text):
    directory = os.path.dirname(os.path.abspath(path))
    if not os.path.exists(directory):
        os.makedirs(directory)
    fd, tmpPath = tempfile.mkstemp(prefix='.tmp-', dir=directory)
    try:
        with os.fdopen(fd, 'w', encoding='utf-8', newline='') as f:
            f.write(text)
            f.flush()
            os.fsync(f.fileno())
        os.replace(tmpPath, path)
    except BaseException:
        if os.path.exists(tmpPath):
            os.remove(tmpPath)
        raise


def dumpJson(obj):
    return json.dumps(obj, indent=2, sort_keys=True) + '\n'


def writeJson(path, obj):
    writeFileAtomic(path, dumpJson(obj))


def sniffFormat(path):
    ext = os.path.splitext(path)[1].lower()
    if ext == '.csv':
        return FORMAT_CSV
    if ext in ('.jsonl', '.ndjson', '.json'):
        return FORMAT_JSONL
    with open(path, 'r', encoding='utf-8') as f:
        for line in f:
            if line.strip():
                return FORMAT_JSONL if line.lstrip().startswith('{') else FORMAT_CSV
    raise DataError('Dataset file %s is empty' % path)


def loadAlphabet(path):
    with open(path, 'r', encoding='utf-8') as f:
        labels = [line.strip() for line in f if line.strip()]
    if not labels:
        raise DataError('Alphabet file %s is empty' % path)
    return Alphabet.fromLabels(labels)


def alphabetPath(path):
    return path + params.alphabetSuffix


def saveAlphabet(alphabet, path):
    writeFileAtomic(path, ''.join(label + '\n' for label in alphabet))


def _loadSidecarAlphabet(path):
    # file order is the alphabet order
    with open(path, 'r', encoding='utf-8') as f:
        labels = [line.strip() for line in f if line.strip()]
    if not labels:
        raise DataError('Alphabet file %s is empty' % path)
    try:
        return Alphabet(labels)
    except InputError as e:
        raise DataError('%s: %s' % (path, e)) from e


def _cell(value):
    return value if isinstance(value, str) else ''


def _parserLine(error):
    match = re.search(r'line (\d+)', str(error))
    return int(match.group(1)) if match else None


def _readCsv(path):
    try:
        frame = pd.read_csv(path, dtype=str, keep_default_na=False, skip_blank_lines=False)
    except pd.errors.EmptyDataError:
        raise DataError('Dataset file %s is empty' % path)
    except pd.errors.ParserError as e:
        raise ParseError('%s: %s' % (path, e), _parserLine(e)) from e
    if list(frame.columns) != CSV_COLUMNS:
        raise ParseError('expected header %s, got %s' % (','.join(CSV_COLUMNS),
                         ','.join(str(c) for c in frame.columns)), 1)
    ids = []
    sequences = []
    finished = set()
    # blank lines stay in the frame so that row k is physical line k + 2
    for line, (seqId, label) in enumerate(zip(frame['seq_id'], frame['label']), 2):
        seqId, label = _cell(seqId), _cell(label)
        if seqId == '' and label == '':
            continue
        if seqId == '':
            raise ParseError('empty seq_id', line)
        if label == '':
            raise ParseError('empty label', line)
        if not ids or ids[-1] != seqId:
            if seqId in finished:
                raise ParseError('rows of sequence "%s" are not contiguous' % seqId, line)
            if ids:
                finished.add(ids[-1])
            ids.append(seqId)
            sequences.append([])
        sequences[-1].append(label)
    return ids, sequences


def _readJsonl(path):
    ids = []
    sequences = []
    with open(path, 'r', encoding='utf-8') as f:
        for line, text in enumerate(f, 1):
            if not text.strip():
                continue
            try:
                obj = json.loads(text)
            except ValueError as e:
                raise ParseError('invalid JSON (%s)' % e, line)
            if not isinstance(obj, dict) or 'id' not in obj or 'events' not in obj:
                raise ParseError('expected an object with "id" and "events"', line)
            events = obj['events']
            if not isinstance(events, list) or \
               any(not isinstance(l, str) or l == '' for l in events):
                raise ParseError('"events" must be a list of non-empty strings', line)
            ids.append(str(obj['id']))
            sequences.append(events)
    return ids, sequences


def loadDataset(path, format=None, alphabet=None):
    if not os.path.exists(path):
        raise DataError('Could not find dataset file: %s' % path)
    if format is None:
        format = sniffFormat(path)
    if format not in FORMATS:
        raise InputError('Unknown dataset format "%s"' % (format,))
    logger.info('Loading %s (%s)', path, format)
    if format == FORMAT_CSV:
        ids, sequences = _readCsv(path)
    else:
        ids, sequences = _readJsonl(path)
    if not sequences:
        raise DataError('Dataset file %s has no sequences' % path)
    if alphabet is None and os.path.exists(alphabetPath(path)):
        alphabet = _loadSidecarAlphabet(alphabetPath(path))
    if alphabet is None:
        alphabet = Alphabet.fromLabels(l for s in sequences for l in s)
    dataset = EventDataset(sequences, alphabet, ids)
    logger.info('Loaded %d sequences, %d events, %d labels', dataset.numSequences(),
                dataset.numEvents(), len(alphabet))
    return dataset


def formatDataset(dataset, format=FORMAT_JSONL):
    if format == FORMAT_JSONL:
        return ''.join(json.dumps({'id': seqId, 'events': list(seq)}) + '\n'
                       for seqId, seq in zip(dataset.ids, dataset.sequences))
    if format == FORMAT_CSV:
        rows = [(seqId, label) for seqId, seq in zip(dataset.ids, dataset.sequences)
                for label in seq]
        buf = io.StringIO()
        pd.DataFrame(rows, columns=CSV_COLUMNS).to_csv(buf, index=False, lineterminator='\n')
        return buf.getvalue()
    raise InputError('Unknown dataset format "%s"' % (format,))


def saveDataset(dataset, path, format=None):
    if format is None:
        format = FORMAT_CSV if path.lower().endswith('.csv') else FORMAT_JSONL
    writeFileAtomic(path, formatDataset(dataset, format))
    saveAlphabet(dataset.alphabet, alphabetPath(path))

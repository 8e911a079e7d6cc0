# Copyright (c) 2026 The summ authors
# Distributed under the MIT license, see LICENSE.md
#------------------------------------------------------------------------------
#
# graphing.py
# Learns an influencing set for every label and joins them into a directed
# graph whose edges point from influencer to influenced label.
#

import logging
from dataclasses import replace

import networkx as nx

from . import params
from .errors import SummError
from .search import SearchConfig, learnModel
from .summaryBase import BINARY, ORDINAL
from .workers import parallelMap

logger = logging.getLogger(__name__)


def graphConfig(**overrides):
    config = SearchConfig(model=params.MODEL_BSUMM, kappa=params.graphKappa,
                          alpha=params.graphAlpha, gamma=params.graphGamma)
    return replace(config, **overrides)


def effectRatio(model, parent):
    """
    theta(x | only parent present) / theta(x | no influencer present), the
    direction of an influence.  Only reported for at most two influencers.
    """
    influencers = model.influencers
    if len(influencers) > 2 or parent not in influencers:
        return None
    kind = model.summary.spec.kind
    if kind == BINARY:
        alone = tuple(1 if l == parent else 0 for l in influencers)
        none = tuple(0 for _ in influencers)
    elif kind == ORDINAL:
        alone = (parent,)
        none = ()
    else:
        return None
    x = model.target.states.index(model.target.labels[0])
    return model.params.probability(x, alone) / model.params.probability(x, none)


class InfluenceGraph:
    def __init__(self, alphabet):
        self.alphabet = alphabet
        self.graph = nx.DiGraph()
        for label in alphabet:
            self.graph.add_node(label)
        self.models = dict()
        self.failures = dict()

    def __repr__(self):
        return 'InfluenceGraph(%d nodes, %d edges)' % (self.graph.number_of_nodes(),
               self.graph.number_of_edges())

    def addModel(self, label, model):
        self.models[label] = model
        self.graph.nodes[label].update(model.settings)
        for parent in model.influencers:
            self.graph.add_edge(parent, label, effect=effectRatio(model, parent))

    def parents(self, label):
        return self.alphabet.canonical(self.graph.predecessors(label))

    def edges(self):
        """ (source, target) pairs, grouped by target in alphabet order """
        order = self.alphabet.ids
        return sorted(self.graph.edges(), key=lambda e: (order[e[1]], order[e[0]]))

    def hasEdge(self, source, target):
        return self.graph.has_edge(source, target)


def learnGraph(dataset, config=None, targets=None, threads=None):
    config = graphConfig() if config is None else config
    labels = list(dataset.alphabet.labels) if targets is None else \
             list(dataset.alphabet.canonical(targets))

    def job(label):
        try:
            return label, learnModel(dataset, label, config), None
        except SummError as e:
            logger.warning('Could not learn influencers of %s: %s', label, e)
            return label, None, '%s: %s' % (e.kind(), e)

    graph = InfluenceGraph(dataset.alphabet)
    for label, model, failure in parallelMap(job, labels, threads):
        if model is None:
            graph.failures[label] = failure
        else:
            graph.addModel(label, model)
    return graph


def quote(text):
    return '"%s"' % text.replace('\\', '\\\\').replace('"', '\\"')


def exportDot(graph, name='influence'):
    lines = ['digraph %s {' % name]
    for label in graph.alphabet:
        lines.append('  %s;' % quote(label))
    for source, target in graph.edges():
        lines.append('  %s -> %s;' % (quote(source), quote(target)))
    lines.append('}')
    return '\n'.join(lines) + '\n'


def exportJson(graph):
    nodes = []
    for label in graph.alphabet:
        entry = {'label': label, 'parents': list(graph.parents(label))}
        model = graph.models.get(label)
        if model is not None:
            entry['settings'] = model.settings
            entry['score'] = model.report.toJson()
            entry['parameters'] = model.params.toJson(model.summary)
        if label in graph.failures:
            entry['failure'] = graph.failures[label]
        nodes.append(entry)
    edges = [{'source': s, 'target': t, 'effect': graph.graph.edges[s, t]['effect']}
             for s, t in graph.edges()]
    return {'schema_version': params.SCHEMA_VERSION, 'nodes': nodes, 'edges': edges}


def gammaSweep(dataset, gammas, config=None, targets=None, threads=None):
    """
    Learns one graph per penalty weight and lists edges present at a higher
    gamma but missing at a lower one.  Informative only: fewer edges at
    higher gamma is expected, not guaranteed.
    """
    config = graphConfig() if config is None else config
    gammas = sorted(gammas, reverse=True)
    edgeSets = []
    for gamma in gammas:
        graph = learnGraph(dataset, replace(config, gamma=gamma), targets, threads)
        edgeSets.append(set(graph.edges()))
    violations = []
    for higher, lower, gammaHigh, gammaLow in zip(edgeSets, edgeSets[1:], gammas, gammas[1:]):
        for source, target in sorted(higher - lower):
            violations.append({'source': source, 'target': target,
                               'present_at': gammaHigh, 'missing_at': gammaLow})
    return {'gammas': gammas,
            'edges': [sorted([list(e) for e in edges]) for edges in edgeSets],
            'violations': violations, 'monotone': not violations}

# Licensed under the Apache License, Version 2.0 (the "License"); you may
# not use this file except in compliance with the License. You may obtain
# a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
# WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
# License for the specific language governing permissions and limitations
# under the License.

"""Optimal spanning arborescences on top of networkx's Edmonds solver.

Weights are made exact and nudged by a per-edge rank bonus too small to
change the optimum, so equal-weight inputs always give the edge set that
holds the earliest (source, target) edges. A virtual root with weighted
edges to every node turns forests into arborescences.
"""

import fractions

import networkx as nx
from oslo_log import log as logging

from bayesnet_fourier.common import constants
from bayesnet_fourier.common import exceptions

LOG = logging.getLogger(__name__)


class Arborescence(object):
    """Parent map of a spanning arborescence.

    ``parents[v]`` is the parent of v, or VIRTUAL_ROOT for roots.
    """

    def __init__(self, parents, weight, edge_weights=None):
        self.parents = dict(parents)
        self.weight = weight
        self.edge_weights = dict(edge_weights or {})

    @property
    def nodes(self):
        return sorted(self.parents)

    @property
    def roots(self):
        return sorted(v for v, p in self.parents.items()
                      if p == constants.VIRTUAL_ROOT)

    def edges(self):
        """(parent, child) pairs, virtual root excluded."""
        return sorted((p, v) for v, p in self.parents.items()
                      if p != constants.VIRTUAL_ROOT)

    def parent_lists(self, n=None):
        n = len(self.parents) if n is None else n
        return [[] if self.parents.get(v, constants.VIRTUAL_ROOT) ==
                constants.VIRTUAL_ROOT else [self.parents[v]]
                for v in range(n)]

    def undirected_edges(self):
        return sorted(tuple(sorted(e)) for e in self.edges())

    def __repr__(self):
        return '<Arborescence roots=%s edges=%s weight=%g>' % (
            self.roots, self.edges(), self.weight)


def _edge_items(weights):
    if isinstance(weights, nx.DiGraph):
        return [((u, v), data.get('weight', 1.0))
                for u, v, data in weights.edges(data=True)]
    return list(weights.items())


def _tie_broken_graph(nodes, raw, mode):
    """DiGraph whose exact weights are raw plus a rank bonus.

    Edge r in (source, target) order gets 2^(E - r) units of a step that
    keeps every bonus sum below the smallest gap between distinct totals,
    so the optimum is unchanged and ties favour the earliest edges.
    """
    exact = [(u, v, fractions.Fraction(w)) for u, v, w in raw]
    unit = max([w.denominator for _, _, w in exact] + [1])
    count = len(exact)
    step = fractions.Fraction(1, unit << (count + 1))
    sign = 1 if mode == constants.MAXIMUM else -1
    graph = nx.DiGraph()
    graph.add_nodes_from(nodes)
    for rank, (u, v, w) in enumerate(sorted(exact, key=lambda e: e[:2])):
        graph.add_edge(u, v, weight=w + sign * step * (1 << (count - rank)))
    return graph


def edmonds_arborescence(nodes, weights, mode=constants.MAXIMUM, root=None,
                         root_weights=None):
    """Optimal spanning arborescence of a weighted directed graph.

    :param nodes: iterable of node labels (ints, none equal to VIRTUAL_ROOT).
    :param weights: {(source, target): weight} or a networkx DiGraph with
                    ``weight`` edge attributes.
    :param mode: MAXIMUM or MINIMUM total weight.
    :param root: fixed root node; edges into it are ignored.
    :param root_weights: {node: weight} for edges from a virtual root, which
                         may then have any number of children. Takes
                         precedence over ``root``.
    With neither, the best root is chosen along with the edges.
    """
    if mode not in (constants.MAXIMUM, constants.MINIMUM):
        raise exceptions.InvalidInput(
            error_message='unknown arborescence mode %r' % (mode,))
    nodes = sorted(nodes)
    raw = [(u, v, float(w)) for (u, v), w in _edge_items(weights)
           if u != v]
    if root_weights is not None:
        root = constants.VIRTUAL_ROOT
        raw.extend((constants.VIRTUAL_ROOT, v, float(root_weights[v]))
                   for v in nodes)
        nodes = [constants.VIRTUAL_ROOT] + nodes
    if root is not None:
        raw = [e for e in raw if e[1] != root]

    graph = _tie_broken_graph(nodes, raw, mode)
    solve = (nx.maximum_spanning_arborescence if mode == constants.MAXIMUM
             else nx.minimum_spanning_arborescence)
    try:
        chosen = solve(graph)
    except nx.NetworkXException as e:
        raise exceptions.InvalidStructure(
            reason='no node reaches all others: %s' % e)

    lookup = dict(((u, v), w) for u, v, w in raw)
    parents = dict((v, constants.VIRTUAL_ROOT) for v in nodes
                   if v != constants.VIRTUAL_ROOT)
    edge_weights = {}
    for u, v in chosen.edges():
        parents[v] = u
        edge_weights[(u, v)] = lookup[(u, v)]
    tree = Arborescence(parents, sum(edge_weights.values()), edge_weights)
    LOG.debug('Optimal %(mode)s arborescence: %(tree)r',
              {'mode': mode, 'tree': tree})
    return tree

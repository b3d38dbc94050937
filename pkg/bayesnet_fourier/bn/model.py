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

"""Bayesian networks over binary variables.

A cpt row index encodes the parent assignment as an integer in which the
first listed parent is the most significant bit: for parents (j, k) the row
of (x_j, x_k) is 2 * x_j + x_k.
"""

import networkx as nx
import numpy as np
from oslo_log import log as logging
from scipy import special

from bayesnet_fourier.common import constants
from bayesnet_fourier.common import exceptions
from bayesnet_fourier.common import utils

LOG = logging.getLogger(__name__)


def _frozen(values):
    arr = np.array(values, dtype=np.float64)
    arr.setflags(write=False)
    return arr


class BayesNet(object):
    """Immutable DAG over n binary variables with one cpt per node.

    ``cpt[v][row]`` is P(X_v = 1 | parent assignment ``row``).
    """

    def __init__(self, parents, cpt, name=None):
        self.n = len(parents)
        if self.n < 1:
            raise exceptions.InvalidStructure(
                reason='a network needs at least one variable')
        if len(cpt) != self.n:
            raise exceptions.ShapeMismatch(
                expected='%d cpt tables' % self.n, actual=len(cpt))
        self.parents = tuple(tuple(int(p) for p in ps) for ps in parents)
        self.name = name
        self._graph = self._build_graph()
        self.order = tuple(nx.lexicographical_topological_sort(self._graph))
        self.position = {v: k for k, v in enumerate(self.order)}
        tables = []
        for v, rows in enumerate(cpt):
            rows = _frozen(rows)
            expected = 1 << len(self.parents[v])
            if rows.ndim != 1 or rows.shape[0] != expected:
                raise exceptions.ShapeMismatch(
                    expected='%d cpt rows for node %d' % (expected, v),
                    actual=rows.shape)
            for row, value in enumerate(rows):
                # NaN fails both comparisons as well
                if not (0.0 < value < 1.0):
                    raise exceptions.InvalidProbability(node=v, row=row,
                                                        value=float(value))
            tables.append(rows)
        self.cpt = tuple(tables)
        self.sigma = tuple(_frozen(np.sqrt(t * (1.0 - t))) for t in tables)

    def _build_graph(self):
        graph = nx.DiGraph()
        graph.add_nodes_from(range(self.n))
        for v, ps in enumerate(self.parents):
            if len(set(ps)) != len(ps):
                raise exceptions.InvalidStructure(
                    reason='node %d lists a parent twice' % v)
            for p in ps:
                if not 0 <= p < self.n or p == v:
                    raise exceptions.InvalidStructure(
                        reason='node %d has invalid parent %d' % (v, p))
                graph.add_edge(p, v)
        if not nx.is_directed_acyclic_graph(graph):
            raise exceptions.InvalidStructure(
                reason='parent graph has a cycle')
        return graph

    @property
    def graph(self):
        return self._graph.copy()

    @property
    def edges(self):
        return sorted(self._graph.edges())

    def __repr__(self):
        return '<BayesNet name=%s n=%d edges=%d>' % (self.name, self.n,
                                                   len(self.edges))

    def __eq__(self, other):
        if not isinstance(other, BayesNet):
            return NotImplemented
        return (self.parents == other.parents and
                all(np.array_equal(a, b)
                    for a, b in zip(self.cpt, other.cpt)))

    def __ne__(self, other):
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    __hash__ = None

    def rows(self, v, X):
        """Row index of node v for each assignment in X (shape (m, n))."""
        X = np.asarray(X)
        row = np.zeros(X.shape[0], dtype=np.int64)
        for p in self.parents[v]:
            row = (row << 1) | X[:, p].astype(np.int64)
        return row

    def conditional_means(self, X):
        """mu_{v, x_pa(v)} for every assignment and node, shape (m, n)."""
        X = np.asarray(X)
        out = np.empty(X.shape, dtype=np.float64)
        for v in range(self.n):
            out[:, v] = self.cpt[v][self.rows(v, X)]
        return out

    def conditional_stds(self, X):
        X = np.asarray(X)
        out = np.empty(X.shape, dtype=np.float64)
        for v in range(self.n):
            out[:, v] = self.sigma[v][self.rows(v, X)]
        return out

    def probabilities(self, X=None, limit=None):
        """Joint probabilities of the assignments X (default: whole cube)."""
        if X is None:
            utils.check_enumerable(self.n, limit)
            X = utils.cube(self.n)
        X = _as_assignments(self, X)
        mu = self.conditional_means(X)
        factors = np.where(X == 1, mu, 1.0 - mu)
        return np.prod(factors, axis=1)

    def relabel(self, permutation):
        """Copy of the net where old variable v becomes permutation[v].

        Parent lists keep their order so cpt rows carry over unchanged.
        """
        permutation = [int(p) for p in permutation]
        if sorted(permutation) != list(range(self.n)):
            raise exceptions.InvalidInput(
                error_message='%r is not a permutation' % (permutation,))
        parents = [None] * self.n
        cpt = [None] * self.n
        for v in range(self.n):
            parents[permutation[v]] = [permutation[p] for p in self.parents[v]]
            cpt[permutation[v]] = self.cpt[v]
        return BayesNet(parents, cpt, name=self.name)

    def with_cpt(self, v, row, value):
        """Copy of the net with a single cpt entry replaced."""
        cpt = [np.array(t) for t in self.cpt]
        cpt[v][row] = value
        return BayesNet(self.parents, cpt, name=self.name)


class BoundednessReport(object):

    def __init__(self, c_star, alpha_mu, alpha_sigma, structure):
        self.c_star = c_star
        self.alpha_mu = alpha_mu
        self.alpha_sigma = alpha_sigma
        self.structure = structure

    @property
    def alpha(self):
        """Smallest alpha for which the net is alpha-difference-bounded."""
        return max(self.alpha_mu, self.alpha_sigma)

    def is_c_bounded(self, c):
        return self.c_star >= c

    def is_difference_bounded(self, alpha):
        return self.alpha <= alpha

    def to_dict(self):
        return {'c_star': self.c_star, 'alpha_mu': self.alpha_mu,
                'alpha_sigma': self.alpha_sigma, 'structure': self.structure}

    def __repr__(self):
        return ('<BoundednessReport c*=%g alpha_mu=%g alpha_sigma=%g %s>' %
                (self.c_star, self.alpha_mu, self.alpha_sigma,
                 self.structure))


def classify(net):
    """One of product, chain, tree, forest, general."""
    graph = net._graph
    indegrees = [len(ps) for ps in net.parents]
    if graph.number_of_edges() == 0:
        return constants.PRODUCT
    if max(indegrees) > 1:
        return constants.GENERAL
    roots = [v for v in range(net.n) if indegrees[v] == 0]
    if len(roots) > 1:
        return constants.FOREST
    outdegrees = [graph.out_degree(v) for v in range(net.n)]
    if max(outdegrees) <= 1:
        return constants.CHAIN
    return constants.TREE


def validate(net):
    """Exact boundedness and difference parameters of a net."""
    c_star = 0.5
    alpha_mu = 0.0
    alpha_sigma = 0.0
    for v in range(net.n):
        table = net.cpt[v]
        c_star = min(c_star, float(np.min(np.minimum(table, 1.0 - table))))
        alpha_mu = max(alpha_mu, float(np.ptp(table)))
        alpha_sigma = max(alpha_sigma, float(np.ptp(net.sigma[v])))
    structure = constants.PRODUCT if net.n == 1 else classify(net)
    report = BoundednessReport(c_star, alpha_mu, alpha_sigma, structure)
    LOG.debug('Validated %(net)r: %(report)r', {'net': net, 'report': report})
    return report


def _as_assignments(net, X):
    X = np.asarray(X)
    if X.ndim == 1:
        X = X[None, :]
    if X.ndim != 2 or X.shape[1] != net.n:
        raise exceptions.ShapeMismatch(
            expected='assignments of length %d' % net.n, actual=X.shape)
    if np.any((X != 0) & (X != 1)):
        raise exceptions.InvalidInput(error_message='assignments must be 0/1')
    return X.astype(np.uint8)


def joint_prob(net, x):
    """P(X = x) as the product of the cpt factors."""
    return float(net.probabilities(_as_assignments(net, x))[0])


def _fill(net, X, start, rng):
    """Sample order positions start..n-1 of X in place."""
    m = X.shape[0]
    for v in net.order[start:]:
        p = net.cpt[v][net.rows(v, X)]
        X[:, v] = rng.random(m) < p
    return X


def ancestral_sample(net, rng, count):
    """Draw ``count`` assignments visiting variables in topological order."""
    if count < 1:
        raise exceptions.InvalidInput(error_message='count must be >= 1')
    rng = utils.make_rng(rng)
    X = np.zeros((count, net.n), dtype=np.uint8)
    return _fill(net, X, 0, rng)


def _prefix_array(net, u):
    if isinstance(u, dict):
        k = len(u)
        if set(u) != set(net.order[:k]):
            raise exceptions.ContractViolation(
                operation='sample_suffix',
                requirement='conditioning on a prefix of the topological '
                            'order %s' % (net.order[:k],))
        bits = [u[v] for v in net.order[:k]]
    else:
        bits = list(u)
        k = len(bits)
        if k > net.n:
            raise exceptions.ShapeMismatch(
                expected='at most %d prefix bits' % net.n, actual=k)
    x = np.zeros(net.n, dtype=np.uint8)
    for pos, bit in enumerate(bits):
        if bit not in (0, 1):
            raise exceptions.InvalidInput(error_message='bits must be 0/1')
        x[net.order[pos]] = bit
    return x, k


def sample_suffix(net, u, rng, count):
    """Complete a prefix assignment by sampling the remaining variables.

    :param u: either a dict {variable: bit} whose keys are the first k
              variables of ``net.order``, or a sequence of k bits given in
              order-position order.
    :returns: (count, n) array; the prefix is copied into every row.
    """
    if count < 1:
        raise exceptions.InvalidInput(error_message='count must be >= 1')
    x, k = _prefix_array(net, u)
    rng = utils.make_rng(rng)
    X = np.tile(x, (count, 1))
    return _fill(net, X, k, rng)


def complete_prefixes(net, X, k, rng):
    """Batched sample_suffix: every row of X carries its own prefix.

    Only the first k order positions of X are read.
    """
    X = np.array(X, dtype=np.uint8, copy=True)
    return _fill(net, X, k, utils.make_rng(rng))


def pairwise_marginals(net, limit=None):
    """Exact 2x2 joint tables, shape (n, n, 2, 2), by enumeration.

    Entry [i, j, a, b] is P(X_i = a, X_j = b); the diagonal holds the
    marginals on its a == b cells.
    """
    utils.check_enumerable(net.n, limit)
    X = utils.cube(net.n)
    p = net.probabilities(X)
    tables = np.zeros((net.n, net.n, 2, 2))
    for a in (0, 1):
        Xa = (X == a).astype(np.float64) * p[:, None]
        for b in (0, 1):
            tables[:, :, a, b] = Xa.T @ (X == b).astype(np.float64)
    return tables


def kl_between(p_net, q_net, limit=None):
    """d_KL(P || Q) in nats between two nets over the same variables."""
    if p_net.n != q_net.n:
        raise exceptions.ShapeMismatch(expected=p_net.n, actual=q_net.n)
    utils.check_enumerable(p_net.n, limit)
    X = utils.cube(p_net.n)
    return float(np.sum(special.rel_entr(p_net.probabilities(X),
                                         q_net.probabilities(X))))

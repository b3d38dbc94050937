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

"""Chow-Liu style learners for (difference-bounded) tree networks.

Edge (j, i) always means j is the parent and i the child; conditionals
are P(X_i = 1 | X_j = b) for b in {0, 1}.
"""

import functools
import math

import numpy as np
from oslo_log import log as logging
from scipy import optimize
from scipy.sparse import csgraph

from bayesnet_fourier.bn import model
from bayesnet_fourier.common import constants
from bayesnet_fourier.common import exceptions
from bayesnet_fourier.trees import arborescence
from bayesnet_fourier.trees import information

LOG = logging.getLogger(__name__)


class PairwiseStats(object):
    """2x2 joint counts for every ordered pair of variables.

    ``counts[i, j, a, b]`` counts samples with X_i = a and X_j = b; the
    diagonal blocks carry the single-variable counts. Counts may be
    fractional, which is how exact distributions are represented.
    """

    def __init__(self, counts, m):
        counts = np.asarray(counts, dtype=np.float64)
        if counts.ndim != 4 or counts.shape[2:] != (2, 2) or \
                counts.shape[0] != counts.shape[1]:
            raise exceptions.ShapeMismatch(expected='(n, n, 2, 2) counts',
                                           actual=counts.shape)
        if not np.allclose(counts, counts.transpose(1, 0, 3, 2)):
            raise exceptions.InvalidInput(
                error_message='pairwise counts are not transpose-symmetric')
        if m <= 0:
            raise exceptions.InvalidInput(
                error_message='at least one sample is required')
        self.counts = counts
        self.m = m

    @classmethod
    def from_samples(cls, X):
        X = np.asarray(X)
        if X.ndim != 2 or X.shape[0] == 0:
            raise exceptions.ShapeMismatch(expected='a non-empty (m, n) '
                                                    'sample', actual=X.shape)
        if np.any((X != 0) & (X != 1)):
            raise exceptions.InvalidInput(error_message='samples must be 0/1')
        n = X.shape[1]
        counts = np.zeros((n, n, 2, 2))
        for a in (0, 1):
            Xa = (X == a).astype(np.float64)
            for b in (0, 1):
                counts[:, :, a, b] = Xa.T @ (X == b).astype(np.float64)
        return cls(counts, X.shape[0])

    @classmethod
    def from_shards(cls, shards):
        """Merge of per-shard statistics, in shard order."""
        return functools.reduce(lambda a, b: a.merge(b),
                                [cls.from_samples(s) for s in shards])

    @classmethod
    def from_net(cls, net, m=1.0, limit=None):
        """Exact statistics of a net, scaled to a nominal sample size."""
        return cls(model.pairwise_marginals(net, limit) * m, m)

    def merge(self, other):
        if other.n != self.n:
            raise exceptions.ShapeMismatch(expected=self.n, actual=other.n)
        return PairwiseStats(self.counts + other.counts, self.m + other.m)

    @property
    def n(self):
        return self.counts.shape[0]

    def joint(self, i, j):
        return self.counts[i, j] / self.m

    def marginal(self, i):
        """P(X_i = 1)."""
        return self.counts[i, i, 1, 1] / self.m

    def parent_counts(self, j):
        return np.array([self.counts[j, j, 0, 0], self.counts[j, j, 1, 1]])

    def conditional(self, i, j, smoothing=True):
        """[P(X_i=1 | X_j=0), P(X_i=1 | X_j=1)].

        Smoothed estimates are (k + 1) / (m_b + 2). Unsmoothed estimates
        fall back to the marginal of X_i for an unobserved parent value.
        """
        k = self.counts[i, j, 1, :]
        trials = self.parent_counts(j)
        if smoothing:
            return (k + 1.0) / (trials + 2.0)
        with np.errstate(invalid='ignore', divide='ignore'):
            q = k / trials
        return np.where(trials > 0, q, self.marginal(i))

    def root_probability(self, i, smoothing=True):
        k = self.counts[i, i, 1, 1]
        if smoothing:
            return (k + 1.0) / (self.m + 2.0)
        return k / self.m

    def mutual_information(self):
        n = self.n
        mi = np.zeros((n, n))
        for i in range(n):
            for j in range(i + 1, n):
                mi[i, j] = mi[j, i] = information.mutual_information(
                    self.joint(i, j))
        return mi

    def __repr__(self):
        return '<PairwiseStats n=%d m=%g>' % (self.n, self.m)


def load_samples_csv(path):
    """0/1 rows, one column per variable; a header line is skipped."""
    with open(path) as f:
        first = f.readline()
    tokens = [t.strip() for t in first.split(',')]
    header = not all(t in ('0', '1') for t in tokens)
    try:
        X = np.loadtxt(path, delimiter=',', dtype=np.int64,
                       skiprows=1 if header else 0, ndmin=2)
    except ValueError as e:
        raise exceptions.InvalidInput(
            error_message='cannot parse samples in %s: %s' % (path, e))
    if np.any((X != 0) & (X != 1)):
        raise exceptions.InvalidInput(
            error_message='samples in %s must be 0/1' % path)
    return X.astype(np.uint8)


def _clip_open(q):
    # exact statistics may hold deterministic conditionals
    return float(np.clip(q, 1e-12, 1.0 - 1e-12))


def fit_net(stats, tree, smoothing=True, name=None):
    """Tree net on ``tree``'s edges with cpts estimated from stats."""
    parents = tree.parent_lists(stats.n)
    cpt = []
    for i, ps in enumerate(parents):
        if ps:
            q = stats.conditional(i, ps[0], smoothing)
            cpt.append([_clip_open(q[0]), _clip_open(q[1])])
        else:
            cpt.append([_clip_open(stats.root_probability(i, smoothing))])
    return model.BayesNet(parents, cpt, name=name)


def _single(stats, smoothing, name):
    tree = arborescence.Arborescence({0: constants.VIRTUAL_ROOT}, 0.0)
    return tree, fit_net(stats, tree, smoothing, name)


def chow_liu_baseline(stats, smoothing=True, root=0):
    """Maximum spanning tree on mutual information, oriented from root."""
    if stats.n == 1:
        return _single(stats, smoothing, 'chow_liu')
    mi = stats.mutual_information()
    # shifted so that zero-information pairs remain edges of the graph
    spanning = csgraph.minimum_spanning_tree(np.triu(-(mi + 1.0), k=1))
    _, preds = csgraph.breadth_first_order(spanning, root, directed=False,
                                           return_predecessors=True)
    parents = {}
    edge_weights = {}
    for v in range(stats.n):
        if v == root:
            parents[v] = constants.VIRTUAL_ROOT
        else:
            parents[v] = int(preds[v])
            edge_weights[(parents[v], v)] = mi[v, parents[v]]
    tree = arborescence.Arborescence(parents, sum(edge_weights.values()),
                                     edge_weights)
    LOG.info('Chow-Liu tree %r', tree)
    return tree, fit_net(stats, tree, smoothing, 'chow_liu')


def _sigma(q):
    return np.sqrt(q * (1.0 - q))


def is_difference_bounded(q, bound):
    """|mu(1) - mu(0)| and |sigma(1) - sigma(0)| both within bound."""
    q = np.asarray(q)
    return (abs(q[1] - q[0]) <= bound and
            abs(_sigma(q[1]) - _sigma(q[0])) <= bound)


def realizable_min_count(c, n, delta):
    """(8 / c^2) ln(16 n / delta) samples per parent value."""
    return 8.0 / c ** 2 * math.log(16.0 * n / delta)


def chow_liu_diff_restricted(stats, c, delta):
    """Directed Chow-Liu keeping only (0.5 - c/2)-difference bounded edges.

    Filtered edges get weight 0, the maximum arborescence hangs off a
    virtual root with zero-weight root edges, and zero-weight edges are
    dropped, so the result is a forest.
    """
    if not 0.0 < c < 0.5:
        raise exceptions.InvalidInput(
            error_message='c must lie in (0, 0.5), got %r' % (c,))
    n = stats.n
    if n == 1:
        return _single(stats, True, 'diff_restricted')
    bound = 0.5 - c / 2.0
    mi = stats.mutual_information()
    weights = {}
    filtered = 0
    for j in range(n):
        for i in range(n):
            if i == j:
                continue
            q = stats.conditional(i, j, smoothing=True)
            ok = (is_difference_bounded(q, bound) and
                  np.all(q >= c / 2.0) and np.all(q <= 1.0 - c / 2.0))
            weights[(j, i)] = mi[i, j] if ok else 0.0
            filtered += not ok
    spanning = arborescence.edmonds_arborescence(
        range(n), weights, constants.MAXIMUM,
        root_weights=dict((v, 0.0) for v in range(n)))
    parents = {}
    edge_weights = {}
    for v, p in spanning.parents.items():
        if p != constants.VIRTUAL_ROOT and weights[(p, v)] > 0.0:
            parents[v] = p
            edge_weights[(p, v)] = weights[(p, v)]
        else:
            parents[v] = constants.VIRTUAL_ROOT
    forest = arborescence.Arborescence(parents, sum(edge_weights.values()),
                                       edge_weights)
    if not edge_weights:
        LOG.warning('All edges filtered; returning a product distribution')
    needed = realizable_min_count(c, n, delta)
    for p, _ in forest.edges():
        if min(stats.parent_counts(p)) < needed:
            LOG.warning('Parent %(p)d has fewer than %(need).0f samples per '
                        'value', {'p': p, 'need': needed})
    LOG.info('Difference-restricted forest %(f)r (%(k)d directed edges '
             'filtered)', {'f': forest, 'k': filtered})
    return forest, fit_net(stats, forest, True, 'diff_restricted')


class EdgeFit(object):

    def __init__(self, q0, q1, cost, kl, active):
        self.q0 = q0
        self.q1 = q1
        self.cost = cost
        self.kl = kl
        self.active = active

    def __repr__(self):
        return '<EdgeFit q=(%g, %g) cost=%g active=%s>' % (
            self.q0, self.q1, self.cost, self.active)


def _check_constraints(c, alpha):
    if not 0.0 < c < 0.5 or alpha < 0.0 or alpha > 1.0 - 2.0 * c + 1e-12:
        raise exceptions.ContractViolation(
            operation='lp_edge_cost',
            requirement='0 < c < 0.5 and 0 <= alpha <= 1 - 2c')


def _kl_derivative(p, q):
    """d/dq d_KL(Bernoulli(p) || Bernoulli(q))."""
    return (q - p) / (q * (1.0 - q))


def _edge_inputs(stats, i, j):
    w = stats.parent_counts(j) / stats.m
    p = stats.conditional(i, j, smoothing=False)
    return w, p


def lp_edge_cost(stats, i, j, c, alpha):
    """Best c-bounded, alpha-difference-bounded conditional of i given j.

    Minimizes sum_b P(X_j=b) d_KL(P_{i|j=b} || Q_{i|j=b}) - I(P_ij). The
    objective is separable and convex: the box projection of the empirical
    conditionals is optimal unless it breaks the difference constraint, in
    which case the optimum lies on q1 = q0 +- alpha and is found by
    bisection on the derivative.
    """
    _check_constraints(c, alpha)
    w, p = _edge_inputs(stats, i, j)
    q = np.clip(p, c, 1.0 - c)
    active = [name for name, hit in (('box_q0', q[0] != p[0]),
                                     ('box_q1', q[1] != p[1])) if hit]
    if abs(q[1] - q[0]) > alpha:
        s = 1.0 if q[1] > q[0] else -1.0
        lo = max(c, c - s * alpha)
        hi = min(1.0 - c, 1.0 - c - s * alpha)

        def slope(q0):
            return (w[0] * _kl_derivative(p[0], q0) +
                    w[1] * _kl_derivative(p[1], q0 + s * alpha))

        if slope(lo) >= 0.0:
            q0 = lo
        elif slope(hi) <= 0.0:
            q0 = hi
        else:
            q0 = optimize.bisect(slope, lo, hi,
                                 xtol=constants.BISECTION_TOLERANCE)
        q = np.array([q0, q0 + s * alpha])
        active = ['difference'] + [name for name, hit in (
            ('box_q0', q[0] in (c, 1.0 - c)),
            ('box_q1', q[1] in (c, 1.0 - c))) if hit]
    kl = float(np.dot(w, information.bernoulli_kl(p, q)))
    cost = kl - information.mutual_information(stats.joint(i, j))
    return EdgeFit(float(q[0]), float(q[1]), cost, kl, active)


def root_fit(stats, i, c):
    """(q, d_KL(P_i || Bernoulli(q))) for the closest c-bounded q."""
    p = stats.root_probability(i, smoothing=False)
    q = float(np.clip(p, c, 1.0 - c))
    return q, float(information.bernoulli_kl(p, q))


def lp_chow_liu(stats, c, alpha):
    """Minimum arborescence on l_P edge costs with virtual-root costs.

    Each node may hang off the virtual root at the cost of fitting its
    marginal alone, and ties go to the virtual root, so the result is a
    forest whenever some node gains nothing from a parent. The net is
    assembled from the fitted conditionals: it is c-bounded and its
    conditional means differ by at most alpha. Only the means are
    constrained; the standard deviations follow when c >= (2 - sqrt 2) / 4,
    where sqrt(q (1 - q)) is 1-Lipschitz.
    """
    _check_constraints(c, alpha)
    n = stats.n
    fits = {}
    for j in range(n):
        for i in range(n):
            if i != j:
                fits[(j, i)] = lp_edge_cost(stats, i, j, c, alpha)
    roots = dict((i, root_fit(stats, i, c)) for i in range(n))
    tree = arborescence.edmonds_arborescence(
        range(n), dict((e, fit.cost) for e, fit in fits.items()),
        constants.MINIMUM,
        root_weights=dict((i, r[1]) for i, r in roots.items()))
    parents = tree.parent_lists(n)
    cpt = []
    for i, ps in enumerate(parents):
        if ps:
            fit = fits[(ps[0], i)]
            LOG.debug('Edge %(p)d->%(i)d: %(fit)r',
                      {'p': ps[0], 'i': i, 'fit': fit})
            cpt.append([fit.q0, fit.q1])
        else:
            cpt.append([roots[i][0]])
    LOG.info('l_P tree %r', tree)
    return tree, model.BayesNet(parents, cpt, name='lp_chow_liu')

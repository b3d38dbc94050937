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

"""Named network families and seeded random generators."""

import numpy as np
from oslo_log import log as logging

from bayesnet_fourier.bn import model
from bayesnet_fourier.common import exceptions
from bayesnet_fourier.common import utils

LOG = logging.getLogger(__name__)


def make_product(mus, name='product'):
    """Independent variables with P(X_i = 1) = mus[i]."""
    mus = list(mus)
    if not mus:
        raise exceptions.InvalidInput(
            error_message='a product network needs at least one variable')
    for i, mu in enumerate(mus):
        utils.check_open_unit(mu, 'mu[%d]' % i)
    return model.BayesNet([[] for _ in mus], [[mu] for mu in mus], name=name)


def make_chain(mus, name='chain'):
    """Chain 0 -> 1 -> ... -> n-1.

    :param mus: list of (mu_{i,0}, mu_{i,1}) pairs; the root uses its
                mu_{0,0} only, as if its parent were fixed to 0.
    """
    mus = [tuple(pair) for pair in mus]
    if not mus:
        raise exceptions.InvalidInput(
            error_message='a chain needs at least one variable')
    for i, pair in enumerate(mus):
        if len(pair) != 2:
            raise exceptions.ShapeMismatch(expected='(mu0, mu1) pairs',
                                           actual=pair)
        for b, mu in enumerate(pair):
            utils.check_open_unit(mu, 'mu[%d][%d]' % (i, b))
    parents = [[]] + [[i - 1] for i in range(1, len(mus))]
    cpt = [[mus[0][0]]] + [list(pair) for pair in mus[1:]]
    return model.BayesNet(parents, cpt, name=name)


def make_constant_chain(n, mu0, mu1, name='chain'):
    return make_chain([(mu0, mu1)] * n, name=name)


def gstar_layout(n, m):
    """Variable indices of the anti-tree construction.

    Returns (ys, vs): ys[k][j] is Y_{k+1, j+1} (chain k, position j; the
    last position of each chain is the leaf X_{k+1}) and vs[j] is V_{j+1}.
    """
    ys = [[k * m + j for j in range(m)] for k in range(n)]
    vs = [n * m + j for j in range(n - 1)]
    return ys, vs


def make_gstar(n, m, alpha, D, mu0, mu1, name='gstar'):
    """Binary anti-tree fed by n chains of length m.

    V_1 is the sink; V_j has parents taken from heap positions 2j and
    2j + 1, where heap position h < n is V_h and h >= n is the leaf
    X_{h - n + 1} ending chain h - n + 1. Two-parent rows are
    (alpha + D, alpha, alpha, alpha + D), i.e. V is likely to be 1 when its
    parents agree. Chains start at mu0 and follow rows (mu0, mu1).
    """
    if n < 2:
        raise exceptions.InvalidInput(error_message='G* needs n >= 2')
    if m < 1:
        raise exceptions.InvalidInput(error_message='G* needs m >= 1')
    for label, value in (('alpha', alpha), ('alpha + D', alpha + D),
                         ('mu0', mu0), ('mu1', mu1)):
        utils.check_open_unit(value, label)
    if D <= 0:
        raise exceptions.InvalidInput(error_message='D must be positive')
    ys, vs = gstar_layout(n, m)
    total = n * m + n - 1
    parents = [None] * total
    cpt = [None] * total
    for chain in ys:
        parents[chain[0]] = []
        cpt[chain[0]] = [mu0]
        for prev, node in zip(chain, chain[1:]):
            parents[node] = [prev]
            cpt[node] = [mu0, mu1]

    def heap_node(h):
        return vs[h - 1] if h < n else ys[h - n][-1]

    for j in range(1, n):
        parents[vs[j - 1]] = [heap_node(2 * j), heap_node(2 * j + 1)]
        cpt[vs[j - 1]] = [alpha + D, alpha, alpha, alpha + D]
    net = model.BayesNet(parents, cpt, name=name)
    LOG.debug('Built G* with n=%(n)d, m=%(m)d: %(nodes)d nodes',
              {'n': n, 'm': m, 'nodes': total})
    return net


def _bounded_pair(rng, c, alpha):
    """Random (mu0, mu1) in [c, 1-c] differing by at most alpha in mu and
    in sigma."""
    while True:
        mu0 = rng.uniform(c, 1.0 - c)
        lo = max(c, mu0 - alpha)
        hi = min(1.0 - c, mu0 + alpha)
        mu1 = rng.uniform(lo, hi)
        s0 = np.sqrt(mu0 * (1.0 - mu0))
        s1 = np.sqrt(mu1 * (1.0 - mu1))
        if abs(s0 - s1) <= alpha:
            return mu0, mu1


def _check_ranges(c, alpha):
    if not 0.0 < c <= 0.5:
        raise exceptions.InvalidInput(error_message='c must lie in (0, 0.5]')
    if alpha < 0:
        raise exceptions.InvalidInput(error_message='alpha must be >= 0')


def random_product(n, rng, c=0.05):
    _check_ranges(c, 0.0)
    rng = utils.make_rng(rng)
    return make_product(rng.uniform(c, 1.0 - c, size=n),
                        name='random-product')


def random_chain(n, rng, c=0.05, alpha=0.4):
    """Random chain that is c-bounded and alpha-difference-bounded."""
    _check_ranges(c, alpha)
    rng = utils.make_rng(rng)
    return make_chain([_bounded_pair(rng, c, alpha) for _ in range(n)],
                      name='random-chain')


def _random_parent_forest(n, rng, roots):
    """Parent lists of a random forest with the given number of roots."""
    perm = rng.permutation(n)
    parents = [[] for _ in range(n)]
    for pos in range(roots, n):
        parents[int(perm[pos])] = [int(perm[rng.integers(0, pos)])]
    return parents


def _tree_like(parents, rng, c, alpha, name):
    cpt = []
    for ps in parents:
        mu0, mu1 = _bounded_pair(rng, c, alpha)
        cpt.append([mu0, mu1] if ps else [mu0])
    return model.BayesNet(parents, cpt, name=name)


def random_tree(n, rng, c=0.05, alpha=0.4):
    """Random rooted tree with random labels."""
    _check_ranges(c, alpha)
    rng = utils.make_rng(rng)
    return _tree_like(_random_parent_forest(n, rng, 1), rng, c, alpha,
                      'random-tree')


def random_forest(n, rng, c=0.05, alpha=0.4, roots=2):
    _check_ranges(c, alpha)
    if not 1 <= roots <= n:
        raise exceptions.InvalidInput(
            error_message='roots must lie in [1, n]')
    rng = utils.make_rng(rng)
    return _tree_like(_random_parent_forest(n, rng, roots), rng, c, alpha,
                      'random-forest')


def random_dag(n, rng, max_parents=3, c=0.05):
    """Random DAG whose nodes have up to ``max_parents`` earlier parents."""
    _check_ranges(c, 0.0)
    rng = utils.make_rng(rng)
    perm = [int(v) for v in rng.permutation(n)]
    parents = [[] for _ in range(n)]
    cpt = [None] * n
    for pos, v in enumerate(perm):
        k = int(rng.integers(0, min(pos, max_parents) + 1))
        chosen = rng.choice(pos, size=k, replace=False) if k else []
        parents[v] = [perm[int(i)] for i in chosen]
        cpt[v] = rng.uniform(c, 1.0 - c, size=1 << k)
    return model.BayesNet(parents, cpt, name='random-dag')


def make_kjunta(n, junta, rng, c=0.05):
    """Net whose non-junta variables are independent given the junta.

    Junta variables form a random DAG among themselves; every other
    variable has exactly the junta as its parents.
    """
    junta = sorted(int(v) for v in junta)
    if len(set(junta)) != len(junta) or any(not 0 <= v < n for v in junta):
        raise exceptions.InvalidInput(
            error_message='junta must be distinct indices below n')
    _check_ranges(c, 0.0)
    rng = utils.make_rng(rng)
    parents = [None] * n
    cpt = [None] * n
    for pos, v in enumerate(junta):
        k = int(rng.integers(0, pos + 1))
        chosen = sorted(rng.choice(pos, size=k, replace=False)) if k else []
        parents[v] = [junta[int(i)] for i in chosen]
        cpt[v] = rng.uniform(c, 1.0 - c, size=1 << k)
    rest = [v for v in range(n) if v not in junta]
    for v in rest:
        parents[v] = list(junta)
        cpt[v] = rng.uniform(c, 1.0 - c, size=1 << len(junta))
    return model.BayesNet(parents, cpt, name='kjunta')

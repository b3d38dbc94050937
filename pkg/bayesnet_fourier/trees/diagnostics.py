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

"""Exact quantities for judging learned trees against a known net."""

import math

import numpy as np
from oslo_log import log as logging

from bayesnet_fourier.bn import model
from bayesnet_fourier.trees import chow_liu
from bayesnet_fourier.trees import information

LOG = logging.getLogger(__name__)


def tree_weight(stats, tree):
    """wt(T): sum of the pairwise mutual information over tree edges."""
    return float(sum(information.mutual_information(stats.joint(p, v))
                     for p, v in tree.edges()))


def total_correlation(net, limit=None):
    """J_P = sum_i H(P_i) - H(P)."""
    p = net.probabilities(limit=limit)
    stats = chow_liu.PairwiseStats.from_net(net, limit=limit)
    marginals = sum(information.binary_entropy(stats.marginal(i))
                    for i in range(net.n))
    return marginals - information.entropy(p)


def project_onto_tree(net, tree, limit=None):
    """P_T: the tree net carrying the exact conditionals of P."""
    stats = chow_liu.PairwiseStats.from_net(net, limit=limit)
    return chow_liu.fit_net(stats, tree, smoothing=False, name='projection')


def decomposition_cost(net, tree, q_net, limit=None):
    """f(P_T, Q_T), so that d_KL(P || Q_T) = J_P + f(P_T, Q_T).

    Edges contribute sum_b P_j(b) d_KL(P_{i|j=b} || Q_{i|j=b}) - I(P_ij);
    roots contribute d_KL(P_i || Q_i). ``q_net`` must have tree's edges.
    """
    stats = chow_liu.PairwiseStats.from_net(net, limit=limit)
    total = 0.0
    for i, ps in enumerate(tree.parent_lists(net.n)):
        q = np.asarray(q_net.cpt[i])
        if ps:
            j = ps[0]
            w = stats.parent_counts(j) / stats.m
            p = stats.conditional(i, j, smoothing=False)
            total += float(np.dot(w, information.bernoulli_kl(p, q)))
            total -= information.mutual_information(stats.joint(i, j))
        else:
            total += float(information.bernoulli_kl(stats.marginal(i), q[0]))
    return total


def best_tree(net, limit=None):
    """T* = argmax wt_P(T) for the exact distribution of net."""
    stats = chow_liu.PairwiseStats.from_net(net, limit=limit)
    tree, _ = chow_liu.chow_liu_baseline(stats, smoothing=False)
    return tree


def high_level_conditions(p_net, tree_hat, p_hat_plus, epsilon,
                          reference_tree=None, limit=None):
    """Measure C1 and C2 for a learned tree and check their consequence.

    C1: wt_P(T^) >= wt_P(T*) - eps/2.
    C2: d_KL(P || P^+) <= d_KL(P || P_T^) + eps/2.
    If both hold then d_KL(P || P^+) <= d_KL(P || P_T*) + eps must too;
    ``implication_holds`` records exactly that implication.
    """
    stats = chow_liu.PairwiseStats.from_net(p_net, limit=limit)
    reference_tree = reference_tree or best_tree(p_net, limit)
    wt_hat = tree_weight(stats, tree_hat)
    wt_star = tree_weight(stats, reference_tree)
    kl_learned = model.kl_between(p_net, p_hat_plus, limit)
    kl_projection = model.kl_between(
        p_net, project_onto_tree(p_net, tree_hat, limit), limit)
    kl_star = model.kl_between(
        p_net, project_onto_tree(p_net, reference_tree, limit), limit)
    c1 = wt_hat >= wt_star - epsilon / 2.0
    c2 = kl_learned <= kl_projection + epsilon / 2.0
    conclusion = kl_learned <= kl_star + epsilon
    result = {'c1': bool(c1), 'c2': bool(c2),
              'conclusion': bool(conclusion),
              'implication_holds': bool(not (c1 and c2) or conclusion),
              'kl_learned': kl_learned, 'kl_projection': kl_projection,
              'kl_best_tree': kl_star, 'weight_learned': wt_hat,
              'weight_best': wt_star}
    LOG.debug('High-level conditions: %s', result)
    return result


def mutual_information_deviation(stats, net, limit=None):
    """max over pairs of |I(P^_ij) - I(P_ij)|."""
    exact = chow_liu.PairwiseStats.from_net(net, limit=limit)
    return float(np.max(np.abs(stats.mutual_information() -
                               exact.mutual_information())))


def recommended_sample_size(n, epsilon, delta):
    """(n^2 / eps^2) log(n / delta) log^2((n / eps) log(n / delta)).

    The asymptotic form with every constant set to 1; a starting point for
    choosing M, not a guarantee.
    """
    inner = math.log(n / delta)
    return int(math.ceil(n * n / epsilon ** 2 * inner *
                         math.log((n / epsilon) * inner) ** 2))

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

"""Upper bounds on the spectral norm of d-literal conjunctions."""

import functools

from oslo_log import log as logging

from bayesnet_fourier.bn import model
from bayesnet_fourier.common import constants
from bayesnet_fourier.common import exceptions
from bayesnet_fourier.spectral import conjunction

LOG = logging.getLogger(__name__)

CHAIN_BOUND = 'chain'
REFINED_CHAIN_BOUND = 'refined_chain'
TREE_BOUND = 'tree'
FOREST_BOUND = 'forest'
KJUNTA_BOUND = 'kjunta'
PRODUCT_BOUND = 'product'

BOUND_KINDS = (CHAIN_BOUND, REFINED_CHAIN_BOUND, TREE_BOUND, FOREST_BOUND,
               KJUNTA_BOUND, PRODUCT_BOUND)

_CHAIN_STRUCTURES = (constants.PRODUCT, constants.CHAIN)
_TREE_STRUCTURES = (constants.PRODUCT, constants.CHAIN, constants.TREE,
                    constants.FOREST)


class Bound(object):
    """A bound value together with the predicate that licenses it.

    ``value`` is None when the predicate fails.
    """

    def __init__(self, name, value, condition, reason=None):
        self.name = name
        self.value = value
        self.condition = condition
        self.reason = reason

    @property
    def applicable(self):
        return self.value is not None

    def __repr__(self):
        if self.applicable:
            return '<Bound %s=%g (%s)>' % (self.name, self.value,
                                           self.condition)
        return '<Bound %s inapplicable: %s>' % (self.name, self.reason)


class BoundSet(object):

    def __init__(self, d, bounds, expectation_range):
        self.d = d
        self.bounds = dict((b.name, b) for b in bounds)
        self.expectation_range = expectation_range

    def __getitem__(self, name):
        return self.bounds[name]

    def applicable(self):
        return dict((name, b.value) for name, b in self.bounds.items()
                    if b.applicable)

    def best(self):
        values = list(self.applicable().values())
        return min(values) if values else None


def chain_bound(c, d_mu, d_sigma, d):
    s = d_mu + d_sigma
    if s >= 1.0:
        return None
    return ((2.0 - s) * (1.0 - c) / (1.0 - s)) ** d


def refined_chain_bound(d_mu, d_sigma, d):
    s = d_mu + d_sigma
    if s >= 1.0:
        return None
    return ((1.5 - s) / (1.0 - s)) ** d


def tree_bound(alpha, d):
    if 2.0 * alpha >= 1.0:
        return None
    return ((2.0 - 2.0 * alpha) / (1.0 - 2.0 * alpha)) ** (2 * d)


def kjunta_bound(k, d):
    return 2.0 ** ((k + d) / 2.0)


def product_bound(d):
    return constants.PRODUCT_NORM_BASE ** d


def l1_bounds(source, d):
    """Every bound on L1 of a d-literal conjunction licensed by ``source``.

    :param source: a BoundednessReport (structure-gated), a BayesNet
                   (validated first) or a dict with any of ``c``, ``d_mu``,
                   ``d_sigma``, ``alpha``, ``k`` and ``product`` (no
                   structure gating).
    """
    if isinstance(source, model.BayesNet):
        source = model.validate(source)
    if isinstance(source, model.BoundednessReport):
        structure = source.structure
        c = source.c_star
        d_mu, d_sigma = source.alpha_mu, source.alpha_sigma
        alpha = source.alpha
        k = None
        is_product = structure == constants.PRODUCT
    elif isinstance(source, dict):
        structure = None
        c = source.get('c')
        d_mu = source.get('d_mu', source.get('alpha'))
        d_sigma = source.get('d_sigma', source.get('alpha'))
        alpha = source.get('alpha')
        if alpha is None and d_mu is not None and d_sigma is not None:
            alpha = max(d_mu, d_sigma)
        k = source.get('k')
        is_product = bool(source.get('product'))
    else:
        raise exceptions.InvalidInput(
            error_message='cannot derive bounds from %r' % (source,))

    def gated(name, allowed, compute, condition):
        if structure is not None and structure not in allowed:
            return Bound(name, None, condition,
                         'structure %s not covered' % structure)
        try:
            value = compute()
        except TypeError:
            return Bound(name, None, condition, 'missing parameters')
        if value is None:
            return Bound(name, None, condition, 'condition %s violated'
                         % condition)
        return Bound(name, value, condition)

    bounds = [
        gated(CHAIN_BOUND, _CHAIN_STRUCTURES,
              lambda: chain_bound(c, d_mu, d_sigma, d), 'D_mu + D_sigma < 1'),
        gated(REFINED_CHAIN_BOUND, _CHAIN_STRUCTURES,
              lambda: refined_chain_bound(d_mu, d_sigma, d),
              'D_mu + D_sigma < 1'),
        gated(TREE_BOUND, _TREE_STRUCTURES[:-1],
              lambda: tree_bound(alpha, d), '2 alpha < 1'),
        gated(FOREST_BOUND, _TREE_STRUCTURES,
              lambda: tree_bound(alpha, d), '2 alpha < 1'),
    ]
    if k is None:
        bounds.append(Bound(KJUNTA_BOUND, None, 'junta size k given',
                            'no junta size'))
    else:
        bounds.append(Bound(KJUNTA_BOUND, kjunta_bound(k, d),
                            'junta size k given'))
    if is_product:
        bounds.append(Bound(PRODUCT_BOUND, product_bound(d),
                            'product distribution'))
    else:
        bounds.append(Bound(PRODUCT_BOUND, None, 'product distribution',
                            'not a product distribution'))
    expectation = (conjunction.expectation_range(c, d)
                   if c is not None else None)
    result = BoundSet(d, bounds, expectation)
    for b in bounds:
        if not b.applicable:
            LOG.debug('Bound %(name)s inapplicable: %(reason)s',
                      {'name': b.name, 'reason': b.reason})
    return result


class L1OfD(object):
    """Callable d -> L1(d) for one bound family."""

    def __init__(self, kind, func):
        self.kind = kind
        self._func = func

    def __call__(self, d):
        return self._func(d)

    def __repr__(self):
        return '<L1OfD %s>' % self.kind


def l1_of_d(kind, c=None, alpha=None, d_mu=None, d_sigma=None, k=None):
    """The function d -> L1(d) for a named bound family.

    Raises InvalidInput when the family's condition fails, since a learner
    cannot run without a finite bound.
    """
    d_mu = alpha if d_mu is None else d_mu
    d_sigma = alpha if d_sigma is None else d_sigma
    if kind == PRODUCT_BOUND:
        func = product_bound
    elif kind == CHAIN_BOUND:
        func = functools.partial(chain_bound, c, d_mu, d_sigma)
    elif kind == REFINED_CHAIN_BOUND:
        func = functools.partial(refined_chain_bound, d_mu, d_sigma)
    elif kind in (TREE_BOUND, FOREST_BOUND):
        func = functools.partial(tree_bound, alpha)
    elif kind == KJUNTA_BOUND:
        if k is None:
            raise exceptions.InvalidInput(
                error_message='the k-junta bound needs the junta size')
        func = functools.partial(kjunta_bound, k)
    else:
        raise exceptions.InvalidInput(
            error_message='unknown L1 bound family %r' % (kind,))
    try:
        at_one = func(1)
    except TypeError:
        raise exceptions.InvalidInput(
            error_message='bound family %s is missing parameters' % kind)
    if at_one is None:
        raise exceptions.InvalidInput(
            error_message='bound family %s does not apply to these '
                          'parameters' % kind)
    return L1OfD(kind, func)

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

"""Kushilevitz-Mansour heavy coefficient search over a network basis.

The recursion fixes the membership of the LAST k variables of the
network's topological order (the suffix pattern alpha) and prunes on

    G_alpha = sum_beta f_{beta alpha}^2 = E_U[g_alpha(U)^2],

where U ranges over the first n - k order positions. Conditioning on a
prefix of the order only needs forward sampling, so G_alpha is estimated
as the mean of f(uY1) phi(uY1) f(uY2) phi(uY2) with two independent
completions Y1, Y2 of each sampled prefix u.

A suffix pattern is an int whose bit j stands for order position
n - k + j; extending the pattern prepends position n - k - 1 as the new
bit 0.
"""

import abc
import math

import numpy as np
from oslo_log import log as logging
from oslo_utils import timeutils
import six

from bayesnet_fourier.bn import model
from bayesnet_fourier.common import constants
from bayesnet_fourier.common import exceptions
from bayesnet_fourier.common import utils
from bayesnet_fourier.spectral import basis

LOG = logging.getLogger(__name__)


class KmParams(object):

    def __init__(self, theta, gamma, delta):
        for name, value in (('theta', theta), ('gamma', gamma)):
            if not 0.0 < value <= 1.0:
                raise exceptions.InvalidInput(
                    error_message='%s must lie in (0, 1], got %r' %
                    (name, value))
        utils.check_open_unit(delta, 'delta')
        self.theta = float(theta)
        self.gamma = float(gamma)
        self.delta = float(delta)

    def to_dict(self):
        return {'theta': self.theta, 'gamma': self.gamma,
                'delta': self.delta}

    def __repr__(self):
        return '<KmParams theta=%g gamma=%g delta=%g>' % (
            self.theta, self.gamma, self.delta)


class EstimatorBudget(object):

    def __init__(self, m1, m2, delta_prime):
        self.m1 = m1
        self.m2 = m2
        self.delta_prime = delta_prime

    def to_dict(self):
        return {'m1': self.m1, 'm2': self.m2,
                'delta_prime': self.delta_prime}

    def __repr__(self):
        return '<EstimatorBudget m1=%d m2=%d delta_prime=%g>' % (
            self.m1, self.m2, self.delta_prime)


def _ceil(x):
    # absorb float noise such as 51200.000000000004
    return int(math.ceil(x * (1.0 - 1e-12)))


def sample_budget(params, n, max_budget=constants.MAX_SAMPLE_BUDGET):
    """Chebyshev sample counts with a uniform union-bound split of delta.

    delta' = delta / (4n/theta^2 + 4/theta^2), m1 = ceil(20 / (delta'
    theta^4)), m2 = ceil(1 / (delta' gamma^2)).
    """
    theta2 = params.theta ** 2
    estimates = 4.0 * n / theta2 + 4.0 / theta2
    delta_prime = params.delta / estimates
    m1 = _ceil(20.0 / (delta_prime * theta2 * theta2))
    m2 = _ceil(1.0 / (delta_prime * params.gamma ** 2))
    if m1 > max_budget or m2 > max_budget:
        LOG.error('Sample budget m1=%(m1)d m2=%(m2)d over %(limit)d for '
                  '%(params)r', {'m1': m1, 'm2': m2, 'limit': max_budget,
                                 'params': params})
        raise exceptions.SampleBudgetExceeded(m1=m1, m2=m2, limit=max_budget)
    return EstimatorBudget(m1, m2, delta_prime)


class KmStats(object):

    def __init__(self):
        self.g_alpha_evaluations = 0
        self.coefficient_estimates = 0
        self.queries = 0
        self.samples = 0
        self.wall_time = 0.0

    def to_dict(self):
        return dict(self.__dict__)

    def __repr__(self):
        return '<KmStats %s>' % ', '.join(
            '%s=%s' % kv for kv in sorted(self.__dict__.items()))


class KmOutput(object):

    def __init__(self, sets, coeffs, stats, mode, params, budget=None):
        self.sets = sets
        self.coeffs = coeffs
        self.stats = stats
        self.mode = mode
        self.params = params
        self.budget = budget

    def to_dict(self):
        doc = {'mode': self.mode, 'params': self.params.to_dict(),
               'coefficients': [[idx, value] for idx, value in
                                self.coeffs.to_records()],
               'stats': self.stats.to_dict()}
        if self.budget is not None:
            doc['budget'] = self.budget.to_dict()
        return doc


class _CountingFunction(object):

    def __init__(self, f, stats):
        self._f = basis.as_function(f)
        self._stats = stats

    def evaluate_many(self, X):
        self._stats.queries += X.shape[0]
        return self._f.evaluate_many(X)


@six.add_metaclass(abc.ABCMeta)
class CoefficientOracle(object):
    """Source of G_alpha values and coefficients for the recursion."""

    def __init__(self, net, f, stats):
        self.net = net
        self.f = f
        self.stats = stats
        self.n = net.n
        self.order = net.order

    def variable_mask(self, alpha, k):
        mask = 0
        for j in range(k):
            if alpha >> j & 1:
                mask |= 1 << self.order[self.n - k + j]
        return mask

    @abc.abstractproperty
    def gate(self):
        """Recurse while G_alpha >= gate."""

    @abc.abstractmethod
    def g_alpha(self, alpha, k):
        """Value of G_alpha for a k-bit suffix pattern."""

    @abc.abstractmethod
    def coefficient(self, mask):
        """Value of f_S for a full variable mask."""


class SampledOracle(CoefficientOracle):

    def __init__(self, net, f, stats, params, budget, rng):
        super(SampledOracle, self).__init__(
            net, _CountingFunction(f, stats), stats)
        self.params = params
        self.budget = budget
        self.rng = utils.make_rng(rng)

    @property
    def gate(self):
        return self.params.theta ** 2 / 2.0

    def z3(self, alpha, k, count):
        """count draws of f(uY1) phi(uY1) f(uY2) phi(uY2)."""
        start = self.n - k
        U = model.ancestral_sample(self.net, self.rng, count)
        Y1 = model.complete_prefixes(self.net, U, start, self.rng)
        Y2 = model.complete_prefixes(self.net, U, start, self.rng)
        mask = self.variable_mask(alpha, k)
        left = self.f.evaluate_many(Y1) * basis.basis_values(self.net, mask,
                                                              Y1)
        right = self.f.evaluate_many(Y2) * basis.basis_values(self.net, mask,
                                                               Y2)
        self.stats.samples += 3 * count
        return left * right

    def g_alpha(self, alpha, k):
        self.stats.g_alpha_evaluations += 1
        return float(np.mean(self.z3(alpha, k, self.budget.m1)))

    def coefficient(self, mask):
        self.stats.coefficient_estimates += 1
        X = model.ancestral_sample(self.net, self.rng, self.budget.m2)
        self.stats.samples += self.budget.m2
        values = self.f.evaluate_many(X) * basis.basis_values(self.net, mask,
                                                               X)
        return float(np.mean(values))


class ExactOracle(CoefficientOracle):
    """Exact expectations from the enumerated spectrum."""

    def __init__(self, net, f, stats, params, limit=None):
        super(ExactOracle, self).__init__(net, f, stats)
        self.params = params
        self.dense = basis.spectrum_vector(net, f, limit)
        squares = np.zeros_like(self.dense)
        order_index = np.zeros(1 << self.n, dtype=np.int64)
        for pos, v in enumerate(self.order):
            order_index |= ((np.arange(1 << self.n) >> v) & 1) << pos
        squares[order_index] = self.dense ** 2
        self._levels = [squares.reshape(1 << k, -1).sum(axis=1)
                        for k in range(self.n + 1)]

    @property
    def gate(self):
        return self.params.theta ** 2

    def g_alpha(self, alpha, k):
        self.stats.g_alpha_evaluations += 1
        return float(self._levels[k][alpha])

    def coefficient(self, mask):
        self.stats.coefficient_estimates += 1
        return float(self.dense[mask])


def _alpha_from_bits(bits):
    alpha = 0
    for j, bit in enumerate(bits):
        if bit not in (0, 1):
            raise exceptions.InvalidInput(error_message='bits must be 0/1')
        alpha |= bit << j
    return alpha


def estimate_g_alpha_sq(net, oracle, alpha, budget, rng,
                        mode=constants.MODE_SAMPLED, limit=None):
    """G_alpha for a suffix pattern given as bits of the last k positions.

    ``alpha[0]`` is order position n - k. In exact mode the value is
    sum_beta f_{beta alpha}^2; otherwise the mean of m1 estimator draws.
    """
    alpha = list(alpha)
    params = KmParams(1.0, 1.0, 0.5)
    stats = KmStats()
    if mode == constants.MODE_EXACT:
        source = ExactOracle(net, oracle, stats, params, limit)
    else:
        source = SampledOracle(net, oracle, stats, params, budget, rng)
    return source.g_alpha(_alpha_from_bits(alpha), len(alpha))


def z3_samples(net, oracle, alpha, count, rng):
    """Raw estimator draws, for checking the variance premise."""
    alpha = list(alpha)
    stats = KmStats()
    source = SampledOracle(net, oracle, stats, KmParams(1.0, 1.0, 0.5),
                           None, rng)
    return source.z3(_alpha_from_bits(alpha), len(alpha), count)


def g_evaluation_cap(params, n):
    return int(constants.KM_G_EVALUATION_SLACK * constants.KM_LIST_FACTOR *
               n / params.theta ** 2) + 1


def km_run(net, oracle, params, mode=constants.MODE_SAMPLED, rng=None,
           limit=None, max_budget=constants.MAX_SAMPLE_BUDGET):
    """Find the coefficients of f with |f_S| >= theta.

    Sampled mode recurses while the estimated G_alpha >= theta^2 / 2 and
    re-estimates each surviving coefficient from m2 fresh samples. Exact
    mode recurses while G_alpha >= theta^2 and reports exact coefficients,
    returning exactly {S : |f_S| >= theta}.
    """
    stats = KmStats()
    watch = timeutils.StopWatch()
    watch.start()
    budget = None
    if mode == constants.MODE_EXACT:
        source = ExactOracle(net, oracle, stats, params, limit)
    elif mode == constants.MODE_SAMPLED:
        budget = sample_budget(params, net.n, max_budget)
        LOG.info('KM on %(net)r with %(params)r, %(budget)r',
                 {'net': net, 'params': params, 'budget': budget})
        source = SampledOracle(net, oracle, stats, params, budget, rng)
    else:
        raise exceptions.InvalidInput(
            error_message='unknown KM mode %r' % (mode,))

    n = net.n
    cap = g_evaluation_cap(params, n)
    coeffs = basis.SparseSpectrum(n)
    sets = []
    stack = [(0, 0)]
    while stack:
        alpha, k = stack.pop()
        if stats.g_alpha_evaluations >= cap:
            LOG.error('KM exceeded %(cap)d G_alpha evaluations on %(net)r',
                      {'cap': cap, 'net': net})
            raise exceptions.CapacityExceeded(
                what='G_alpha evaluation count', value=cap + 1, limit=cap)
        value = source.g_alpha(alpha, k)
        if value < source.gate:
            continue
        if k == n:
            mask = source.variable_mask(alpha, k)
            sets.append(mask)
            coeffs[mask] = source.coefficient(mask)
            continue
        LOG.debug('KM keeps suffix %(alpha)s of length %(k)d, G=%(g)g',
                  {'alpha': alpha, 'k': k, 'g': value})
        # pushed in reverse so that bit 0 is explored first
        stack.append(((alpha << 1) | 1, k + 1))
        stack.append((alpha << 1, k + 1))
    watch.stop()
    stats.wall_time = watch.elapsed()
    LOG.debug('KM finished: %(sets)d sets, %(stats)r',
              {'sets': len(sets), 'stats': stats})
    return KmOutput(sorted(sets), coeffs, stats, mode, params, budget)


def eval_sparse(poly, net, x):
    """sum_S poly_S phi_S(x); x may be one assignment or a batch."""
    x = np.asarray(x)
    values = basis.evaluate_spectrum(net, poly, x)
    return float(values[0]) if x.ndim == 1 else values

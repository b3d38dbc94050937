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

"""DNF learners driven by the network-basis KM search.

Range conventions: KM and the PTF construction work on +-1 targets; the
disjoint-DNF learner fits the 0/1 target in square loss and converts its
polynomial to the +-1 scale (2h - 1) before taking signs.
"""

import math

import numpy as np
from oslo_log import log as logging

from bayesnet_fourier.bn import model
from bayesnet_fourier.common import constants
from bayesnet_fourier.common import exceptions
from bayesnet_fourier.common import utils
from bayesnet_fourier.learning import formulas
from bayesnet_fourier.learning import km
from bayesnet_fourier.spectral import basis

LOG = logging.getLogger(__name__)


class LearnParams(object):

    def __init__(self, epsilon, delta, s, c, l1_of_d):
        utils.check_open_unit(epsilon, 'epsilon')
        utils.check_open_unit(delta, 'delta')
        if int(s) < 1:
            raise exceptions.InvalidInput(
                error_message='term count s must be >= 1, got %r' % (s,))
        utils.check_open_unit(c, 'c')
        self.epsilon = float(epsilon)
        self.delta = float(delta)
        self.s = int(s)
        self.c = float(c)
        self.l1_of_d = l1_of_d

    def to_dict(self):
        return {'epsilon': self.epsilon, 'delta': self.delta, 's': self.s,
                'c': self.c, 'l1_of_d': repr(self.l1_of_d)}

    def __repr__(self):
        return '<LearnParams eps=%g delta=%g s=%d c=%g %r>' % (
            self.epsilon, self.delta, self.s, self.c, self.l1_of_d)


def truncation_length(epsilon, s, c):
    """ceil(log_{1-c}(epsilon / 4s)): longer terms carry mass <= eps/4."""
    d = math.log(epsilon / (4.0 * s)) / math.log(1.0 - c)
    return max(int(math.ceil(d - 1e-9)), 0)


def _l1_at(params, d):
    value = params.l1_of_d(d)
    if value is None:
        raise exceptions.InvalidInput(
            error_message='%r gives no bound at d=%d' % (params.l1_of_d, d))
    return float(value)


def disjoint_parameters(params):
    """d, L1 = s L1(d), T = 4 L1^2 / eps, theta = eps / 2L1 and
    gamma = eps^3 / 16 L1^2."""
    eps = params.epsilon
    d = truncation_length(eps, params.s, params.c)
    l1 = params.s * _l1_at(params, d)
    return {'d': d, 'l1': l1, 'T': 4.0 * l1 * l1 / eps,
            'theta': eps / (2.0 * l1),
            'gamma': eps ** 3 / (16.0 * l1 * l1)}


def dnf_parameters(params):
    """eps' = eps / 6, d at eps', L1 = 2 s L1(d) + 1, gamma* = eps' / L1."""
    eps_prime = params.epsilon / 6.0
    d = truncation_length(eps_prime, params.s, params.c)
    l1 = 2.0 * params.s * _l1_at(params, d) + 1.0
    return {'epsilon_prime': eps_prime, 'd': d, 'l1': l1,
            'gamma_star': eps_prime / l1}


class SignHypothesis(object):
    """sign of a sparse network-basis polynomial, optionally clamped.

    ``raw`` is the polynomial itself, or P1 of it when ``clamp`` is unit;
    the hypothesis value is sign(raw) with sign(0) = -1.
    """

    range = constants.RANGE_PM1

    def __init__(self, net, spectrum, clamp=constants.CLAMP_NONE,
                 report=None):
        if clamp not in (constants.CLAMP_NONE, constants.CLAMP_UNIT):
            raise exceptions.InvalidInput(
                error_message='unknown clamp %r' % (clamp,))
        self.net = net
        self.spectrum = spectrum
        self.clamp = clamp
        self.report = report or {}

    def raw(self, X):
        values = basis.evaluate_spectrum(self.net, self.spectrum, X)
        if self.clamp == constants.CLAMP_UNIT:
            values = utils.clamp_unit(values)
        return values

    def evaluate_many(self, X):
        return utils.sign(self.raw(X)).astype(np.float64)

    def __call__(self, x):
        return float(self.evaluate_many(np.asarray(x)[None, :])[0])

    def to_dict(self):
        return {'n': self.spectrum.n, 'clamp': self.clamp,
                'coefficients': [[idx, value] for idx, value in
                                 self.spectrum.to_records()]}

    @classmethod
    def from_dict(cls, net, doc):
        spectrum = basis.SparseSpectrum.from_records(
            doc['n'], doc['coefficients'])
        return cls(net, spectrum, doc.get('clamp', constants.CLAMP_NONE))

    def __repr__(self):
        return '<SignHypothesis terms=%d clamp=%s>' % (len(self.spectrum),
                                                       self.clamp)


def target_oracle(f, range):
    """Oracle for f in the requested range, converting tagged functions."""
    if isinstance(f, (formulas.DnfFormula, formulas.DecisionTree)):
        return formulas.mq_adapter(f, range)
    f = basis.as_function(f)
    if f.range in (None, range):
        return f
    if range == constants.RANGE_PM1:
        return basis.BooleanFunction(lambda X: 2.0 * f.evaluate_many(X) - 1.0,
                                     range=range, vectorized=True,
                                     name=f.name)
    return basis.BooleanFunction(lambda X: (f.evaluate_many(X) + 1.0) / 2.0,
                                 range=range, vectorized=True, name=f.name)


def learn_disjoint_dnf(net, f, params, rng=None, mode=constants.MODE_SAMPLED,
                       limit=None, max_budget=constants.MAX_SAMPLE_BUDGET):
    """Learn a disjoint DNF (or decision tree) from membership queries."""
    flow = disjoint_parameters(params)
    LOG.info('Disjoint DNF learner on %(net)r: %(flow)s',
             {'net': net, 'flow': flow})
    km_params = km.KmParams(min(flow['theta'], 1.0),
                            min(flow['gamma'], 1.0), params.delta)
    output = km.km_run(net, target_oracle(f, constants.RANGE_01), km_params,
                       mode, rng, limit, max_budget)
    spectrum = basis.SparseSpectrum(net.n)
    for mask, value in output.coeffs.items():
        spectrum[mask] = 2.0 * value
    spectrum[0] = spectrum[0] - 1.0
    report = dict(flow, sets=len(output.sets), km=output.stats.to_dict())
    return SignHypothesis(net, spectrum, constants.CLAMP_NONE, report)


def _clamped_polynomial(net, g_prime):
    return basis.BooleanFunction(
        lambda X: utils.clamp_unit(basis.evaluate_spectrum(net, g_prime, X)),
        range=constants.RANGE_PM1, vectorized=True, name='P1[g]')


def iteration_cap(gamma_star):
    return int(math.ceil(constants.PTF_ITERATION_FACTOR / gamma_star ** 2))


def ptf_construct(net, f, gamma_star, delta, rng=None,
                  mode=constants.MODE_SAMPLED, limit=None,
                  max_budget=constants.MAX_SAMPLE_BUDGET):
    """Clamped sparse polynomial g whose coefficients track those of f.

    Every round runs KM on g = P1[g'] and moves g' by +-gamma* on each set
    where the estimates of f and g differ by more than 3 gamma* / 2.
    Raises PtfIterationCapReached after ceil(4 / gamma*^2) updates.
    """
    rng = utils.make_rng(rng)
    f = target_oracle(f, constants.RANGE_PM1)
    cap = iteration_cap(gamma_star)
    f_tilde = km.km_run(net, f, km.KmParams(gamma_star, gamma_star,
                                            delta / 2.0),
                        mode, rng, limit, max_budget).coeffs
    LOG.debug('PTF phase 1 kept %d sets', len(f_tilde))
    half = gamma_star / 2.0
    round_params = km.KmParams(half, half, delta / (2.0 * cap))
    violation = constants.PTF_VIOLATION_FACTOR * gamma_star
    g_prime = basis.SparseSpectrum(net.n)
    trace = []
    updates = 0
    while True:
        g = _clamped_polynomial(net, g_prime)
        g_tilde = km.km_run(net, g, round_params, mode, rng, limit,
                            max_budget).coeffs
        violators = [(S, f_tilde[S], g_tilde[S])
                     for S in sorted(set(f_tilde.sets) | set(g_tilde.sets))
                     if abs(f_tilde[S] - g_tilde[S]) > violation]
        if not violators:
            break
        trace.append(violators)
        if updates + len(violators) > cap:
            LOG.error('PTF construction hit its cap of %(cap)d updates; '
                      'last violators %(v)s', {'cap': cap, 'v': violators})
            raise exceptions.PtfIterationCapReached(updates=updates, cap=cap,
                                                    trace=trace)
        for S, fv, gv in violators:
            g_prime[S] = g_prime[S] + (gamma_star if fv > gv
                                       else -gamma_star)
        updates += len(violators)
        LOG.debug('PTF round %(r)d moved %(k)d coefficients',
                  {'r': len(trace), 'k': len(violators)})

    support_limit = 1.0 / (2.0 * gamma_star ** 2)
    if len(g_prime) > support_limit:
        LOG.error('PTF support %(s)d over %(limit)g',
                  {'s': len(g_prime), 'limit': support_limit})
        raise exceptions.ContractViolation(
            operation='ptf_construct',
            requirement='a support of at most %g sets' % support_limit)
    report = {'gamma_star': gamma_star, 'rounds': len(trace) + 1,
              'updates': updates, 'support': len(g_prime),
              'phase1_sets': len(f_tilde), 'iteration_cap': cap}
    if mode == constants.MODE_EXACT:
        linf = coefficient_distance(net, f, g_prime, limit)
        report['linf'] = linf
        report['linf_within_bound'] = (
            linf <= constants.PTF_LINF_FACTOR * gamma_star)
        if not report['linf_within_bound']:
            LOG.warning('PTF coefficient distance %(d)g exceeds %(b)g',
                        {'d': linf,
                         'b': constants.PTF_LINF_FACTOR * gamma_star})
    return SignHypothesis(net, g_prime, constants.CLAMP_UNIT, report)


def coefficient_distance(net, f, g_prime, limit=None):
    """max_S |f_S - g_S| with g = P1[g'], by enumeration."""
    f_dense = basis.spectrum_vector(net, f, limit)
    g_dense = basis.spectrum_vector(net, _clamped_polynomial(net, g_prime),
                                    limit)
    return float(np.max(np.abs(f_dense - g_dense)))


def learn_dnf(net, f, params, rng=None, mode=constants.MODE_SAMPLED,
              limit=None, max_budget=constants.MAX_SAMPLE_BUDGET):
    """Learn a general DNF through the PTF construction."""
    flow = dnf_parameters(params)
    LOG.info('DNF learner on %(net)r: %(flow)s', {'net': net, 'flow': flow})
    hypothesis = ptf_construct(net, f, flow['gamma_star'], params.delta, rng,
                               mode, limit, max_budget)
    hypothesis.report.update(flow)
    return hypothesis


def _sign_values(f, X):
    return target_oracle(f, constants.RANGE_PM1).evaluate_many(X)


def estimate_error(net, f, h, samples, rng):
    """Disagreement frequency of h and f on ``samples`` draws."""
    X = model.ancestral_sample(net, utils.make_rng(rng), samples)
    hv = basis.as_function(h).evaluate_many(X)
    return float(np.mean(utils.sign(_sign_values(f, X)) != utils.sign(hv)))


def exact_error(net, f, h, limit=None):
    """P_D(h != f), by enumeration."""
    X, p, _ = basis.enumerate_cube(net, None, limit)
    hv = basis.as_function(h).evaluate_many(X)
    return float(np.dot(p, utils.sign(_sign_values(f, X)) != utils.sign(hv)))

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

"""Sparse square-norm approximations checked on concrete instances.

Two facts are verified by enumeration:

* a function h with spectral norm L1 has a truncation g, keeping the
  coefficients of magnitude at least eps / (4 L1), with at most 4 L1^2 / eps
  terms and E[(g - h)^2] <= eps / 4;
* if some T-sparse g has E[(f - g)^2] <= eps then keeping the coefficients
  of f above sqrt(eps / T), exact (h1) or gamma-accurate (h2), or keeping a
  superset of at most 4T/eps sets with gamma-accurate values (h3), costs at
  most 2 eps, 3 eps and 3 eps respectively, with gamma = eps^2 / (4T).

All square errors are computed by Parseval from dense spectra.
"""

import math

import numpy as np
from oslo_log import log as logging

from bayesnet_fourier.common import constants
from bayesnet_fourier.common import utils
from bayesnet_fourier.spectral import basis

LOG = logging.getLogger(__name__)

_SLACK = 1e-12


class ApproximationReport(object):

    def __init__(self, **fields):
        self.__dict__.update(fields)

    def to_dict(self):
        return dict(self.__dict__)

    def __repr__(self):
        return '<ApproximationReport %s>' % ', '.join(
            '%s=%s' % kv for kv in sorted(self.__dict__.items()))


def truncate(spectrum, threshold):
    """Keep coefficients with magnitude >= threshold."""
    return basis.SparseSpectrum(
        spectrum.n, {m: v for m, v in spectrum.items()
                     if abs(v) >= threshold})


def _square_error(f_dense, approx):
    diff = np.array(f_dense, copy=True)
    for mask, value in approx.items():
        diff[mask] -= value
    return float(np.dot(diff, diff))


def _sign_error(net, f, approx, limit):
    """P(f != sign(h)) and E[(f - h)^2] on the +-1 scale."""
    X, p, values = basis.enumerate_cube(net, f, limit)
    h = basis.evaluate_spectrum(net, approx, X)
    if basis.as_function(f).range == constants.RANGE_01:
        values = 2.0 * values - 1.0
        h = 2.0 * h - 1.0
    mistakes = float(np.dot(p, utils.sign(h) != values))
    return mistakes, float(np.dot(p, (values - h) ** 2))


def sparse_square_approx(net, f, h_spectrum, T, epsilon, estimates=None,
                         limit=None):
    """Build g, h1, h2 and h3 for f and check both error chains.

    :param h_spectrum: SparseSpectrum of the low-norm approximation h.
    :param T: sparsity of the square-norm premise; ``None`` uses the
              sparsity of the truncation g.
    :param estimates: optional SparseSpectrum of coefficient estimates;
                      by default each true coefficient is shifted by gamma.
    :returns: ApproximationReport with the errors, sizes and a boolean per
              chain that is True whenever the chain's premise holds and its
              conclusions hold too.
    """
    f_dense = basis.spectrum_vector(net, f, limit)
    l1 = h_spectrum.l1_norm()

    # truncation of h
    g = truncate(h_spectrum, epsilon / (4.0 * l1)) if l1 else h_spectrum
    g_bound = 4.0 * l1 * l1 / epsilon
    g_h_error = float(sum(v * v for m, v in h_spectrum.items()
                          if m not in g))
    f_h_error = _square_error(f_dense, h_spectrum)
    f_g_error = _square_error(f_dense, g)
    l1_premise = f_h_error <= epsilon / 4.0 + _SLACK
    l1_chain = (not l1_premise) or (
        len(g) <= g_bound + _SLACK and g.l1_norm() <= l1 + _SLACK and
        g_h_error <= epsilon / 4.0 + _SLACK and
        f_g_error <= epsilon + _SLACK)

    # heavy coefficients of f
    T = max(len(g), 1) if T is None else T
    threshold = math.sqrt(epsilon / T)
    gamma = epsilon ** 2 / (4.0 * T)
    f_spec = basis.SparseSpectrum.from_dense(f_dense)
    S = truncate(f_spec, threshold)
    S_star = truncate(f_spec, threshold / 2.0)
    if estimates is None:
        estimates = basis.SparseSpectrum(
            net.n, {m: v + gamma for m, v in S_star.items()})
    h1 = S
    h2 = estimates.restricted(S.sets)
    h3 = estimates.restricted(S_star.sets)
    h1_error = _square_error(f_dense, h1)
    h2_error = _square_error(f_dense, h2)
    h3_error = _square_error(f_dense, h3)
    sign_error, h3_pm_error = _sign_error(net, f, h3, limit)
    max_estimate_error = max(
        [abs(estimates[m] - f_dense[m]) for m in S_star.sets] or [0.0])

    sparse_premise = (f_g_error <= epsilon + _SLACK and len(g) <= T and
                      max_estimate_error <= gamma + _SLACK)
    sparse_chain = (not sparse_premise) or (
        h1_error <= 2 * epsilon + _SLACK and
        h2_error <= 3 * epsilon + _SLACK and
        h3_error <= 3 * epsilon + _SLACK and
        len(S_star) <= 4.0 * T / epsilon + _SLACK and
        sign_error <= h3_pm_error + _SLACK)

    report = ApproximationReport(
        epsilon=epsilon, l1=l1, g_sparsity=len(g), g_sparsity_bound=g_bound,
        g_h_error=g_h_error, f_h_error=f_h_error, f_g_error=f_g_error,
        l1_premise=l1_premise, l1_chain_holds=l1_chain,
        T=T, threshold=threshold, gamma=gamma, heavy_sets=len(S),
        candidate_sets=len(S_star), h1_error=h1_error, h2_error=h2_error,
        h3_error=h3_error, sign_error=sign_error,
        sparse_premise=sparse_premise, sparse_chain_holds=sparse_chain)
    LOG.debug('Square-norm approximation: %r', report)
    return report

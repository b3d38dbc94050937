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

"""Closed-form spectra of conjunctions under chains and products.

A chain is handled through its path positions 1..n (position i holds the
variable ``order[i - 1]``). Position 0 is a virtual independent root: the
real root's two rows coincide, so its D term is zero and conditioning on
position 0 never matters.

Per position i and parent value b, A_i(b) is one of

=====================  =============
position in            A_i(b)
=====================  =============
T1 only                mu_{i,b}
T0 only                1 - mu_{i,b}
S and T1               sigma_{i,b}
S and T0               -sigma_{i,b}
S only                 sigma_{i,b}
neither                mu_{i,b}
=====================  =============

and D_i = A_i(1) - A_i(0). A coefficient is a product of one A' term and
D' terms per segment between consecutive literals.
"""

import numpy as np
from oslo_log import log as logging

from bayesnet_fourier.bn import model
from bayesnet_fourier.common import constants
from bayesnet_fourier.common import exceptions
from bayesnet_fourier.common import utils

LOG = logging.getLogger(__name__)

MU = 'mu'
NOT_MU = 'not_mu'
SIGMA = 'sigma'
NEG_SIGMA = 'neg_sigma'


class Conjunction(object):
    """AND of positive literals ``t1`` and negated literals ``t0``.

    Both are bitmasks over 0-based variables.
    """

    range = constants.RANGE_01

    def __init__(self, t1=0, t0=0):
        self.t1 = int(t1)
        self.t0 = int(t0)
        if self.t1 & self.t0:
            raise exceptions.InvalidInput(
                error_message='variables %s appear with both signs' %
                utils.indices_from_mask(self.t1 & self.t0))

    @classmethod
    def from_indices(cls, positive=(), negative=()):
        return cls(utils.mask_from_indices(positive),
                   utils.mask_from_indices(negative))

    @classmethod
    def from_literals(cls, literals):
        """Signed 1-based literals, e.g. [3, -7] is x_2 AND NOT x_6."""
        positive, negative = [], []
        for lit in literals:
            lit = int(lit)
            if lit == 0:
                raise exceptions.InvalidInput(
                    error_message='literal 0 is not allowed')
            (positive if lit > 0 else negative).append(abs(lit) - 1)
        return cls.from_indices(positive, negative)

    def to_literals(self):
        lits = ([v + 1 for v in utils.indices_from_mask(self.t1)] +
                [-(v + 1) for v in utils.indices_from_mask(self.t0)])
        return sorted(lits, key=abs)

    @property
    def mask(self):
        return self.t1 | self.t0

    @property
    def d(self):
        return utils.popcount(self.mask)

    def evaluate_many(self, X):
        X = np.asarray(X)
        if X.ndim == 1:
            X = X[None, :]
        out = np.ones(X.shape[0], dtype=bool)
        for v in utils.indices_from_mask(self.t1):
            out &= X[:, v] == 1
        for v in utils.indices_from_mask(self.t0):
            out &= X[:, v] == 0
        return out.astype(np.float64)

    def __call__(self, x):
        return float(self.evaluate_many(x)[0])

    def conflicts_with(self, other):
        """True if some variable appears with opposite signs."""
        return bool((self.t1 & other.t0) | (self.t0 & other.t1))

    def __eq__(self, other):
        return (isinstance(other, Conjunction) and
                (self.t1, self.t0) == (other.t1, other.t0))

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return hash((self.t1, self.t0))

    def __repr__(self):
        return '<Conjunction %s>' % (' '.join('%+d' % lit for lit in
                                              self.to_literals()) or 'true')


class ChainParameters(object):
    """mu and sigma tables of a chain indexed by path position.

    Row 0 is the virtual root; the real root's single cpt entry is used for
    both parent values.
    """

    def __init__(self, net):
        if net.n > 1 and model.classify(net) != constants.CHAIN:
            raise exceptions.ContractViolation(
                operation='chain closed form',
                requirement='a chain-structured network')
        self.n = net.n
        self.order = net.order
        mu = np.full((net.n + 1, 2), 0.5)
        for pos, v in enumerate(net.order, 1):
            table = net.cpt[v]
            mu[pos] = (table[0], table[-1])
        self.mu = mu
        self.sigma = np.sqrt(mu * (1.0 - mu))

    def position(self, v):
        return self.order.index(v) + 1

    def positions(self, mask):
        return sorted(self.position(v) for v in utils.indices_from_mask(mask))


class RecursiveTerms(object):
    """A_i(b), D_i and the A' / D' segment aggregates for one type vector.

    :param params: ChainParameters
    :param types: sequence of length n + 1 (index 0 unused) holding MU,
                  NOT_MU, SIGMA or NEG_SIGMA per position.
    """

    def __init__(self, params, types):
        self.n = params.n
        a = np.zeros((self.n + 1, 2))
        for i in range(1, self.n + 1):
            t = types[i]
            if t == MU:
                a[i] = params.mu[i]
            elif t == NOT_MU:
                a[i] = 1.0 - params.mu[i]
            elif t == SIGMA:
                a[i] = params.sigma[i]
            elif t == NEG_SIGMA:
                a[i] = -params.sigma[i]
            else:
                raise exceptions.InvalidInput(
                    error_message='unknown A type %r' % (t,))
        self.a0 = a[:, 0]
        self.a1 = a[:, 1]
        self.d = self.a1 - self.a0

    def dprime(self, r, a):
        """prod_{l=r..a} D_l, 1 when r > a."""
        if r > a:
            return 1.0
        return float(np.prod(self.d[r:a + 1]))

    def aprime0(self, r, a):
        """sum_{l=r..a} D'(l + 1, a) A_l(0)."""
        total = 0.0
        tail = 1.0
        for ell in range(a, r - 1, -1):
            total += tail * self.a0[ell]
            tail *= self.d[ell]
        return total

    def aprime1(self, r, a):
        return self.aprime0(r, a) + self.dprime(r, a)

    def aprime(self, r, a, y):
        return self.aprime1(r, a) if y else self.aprime0(r, a)


def _types_for(params, f, S):
    types = [None] * (params.n + 1)
    for pos, v in enumerate(params.order, 1):
        bit = 1 << v
        in_s = bool(S & bit)
        if f.t1 & bit:
            types[pos] = SIGMA if in_s else MU
        elif f.t0 & bit:
            types[pos] = NEG_SIGMA if in_s else NOT_MU
        else:
            types[pos] = SIGMA if in_s else MU
    return types


def _literal_positions(params, f):
    ts = params.positions(f.mask)
    ys = [1 if f.t1 & (1 << params.order[t - 1]) else 0 for t in ts]
    return ts, ys


def chain_coefficient(chain, f, S):
    """Fourier coefficient of the conjunction f at S under a chain."""
    params = chain if isinstance(chain, ChainParameters) else \
        ChainParameters(chain)
    S = int(S)
    if f.d == 0:
        return 1.0 if S == 0 else 0.0
    ts, ys = _literal_positions(params, f)
    s_pos = params.positions(S)
    if s_pos and s_pos[-1] > ts[-1]:
        return 0.0
    terms = RecursiveTerms(params, _types_for(params, f, S))
    s_set = set(s_pos)
    value = 1.0
    prev_t, prev_y = 0, 0
    for t, y in zip(ts, ys):
        h = next((k for k in range(prev_t + 1, t) if k in s_set), t)
        value *= terms.dprime(h + 1, t) * terms.aprime(prev_t + 1, h, prev_y)
        prev_t, prev_y = t, y
    return value


def chain_spectrum(chain, f):
    """Dense closed-form spectrum over all 2^n subsets."""
    params = ChainParameters(chain)
    return np.array([chain_coefficient(params, f, S)
                     for S in range(1 << params.n)])


def _end_types(params, f, t):
    v = params.order[t - 1]
    if f.t1 & (1 << v):
        return MU, SIGMA
    return NOT_MU, NEG_SIGMA


def chain_spectral_norm_exact(chain, f):
    """sum_S |f_S| as a product of per-segment sums.

    Within a segment (r..t] the first S position k < t fixes an A' term with
    a sigma end, and every later position independently contributes either
    its mu-type or sigma-type D; with no S position before t only the end
    type of t varies. Products of segment terms are exact, so absolute
    values distribute over them.
    """
    params = ChainParameters(chain)
    if f.d == 0:
        return 1.0
    ts, ys = _literal_positions(params, f)
    total = 1.0
    prev_t, prev_y = 0, 0
    for t, y in zip(ts, ys):
        r = prev_t + 1
        mu_end, sigma_end = _end_types(params, f, t)
        base = [MU] * (params.n + 1)
        base[t] = mu_end
        mu_terms = RecursiveTerms(params, base)
        sig = list(base)
        sig[t] = sigma_end
        sigma_terms = RecursiveTerms(params, sig)
        segment = (abs(mu_terms.aprime(r, t, prev_y)) +
                   abs(sigma_terms.aprime(r, t, prev_y)))
        # |D_mu| + |D_sigma| per position, sigma type for intermediates
        all_sigma = RecursiveTerms(params, [SIGMA] * (params.n + 1))
        spread = np.abs(mu_terms.d) + np.abs(all_sigma.d)
        spread[t] = abs(mu_terms.d[t]) + abs(sigma_terms.d[t])
        for k in range(r, t):
            head = list(base)
            head[k] = SIGMA
            head_terms = RecursiveTerms(params, head)
            segment += (abs(head_terms.aprime(r, k, prev_y)) *
                        float(np.prod(spread[k + 1:t + 1])))
        total *= segment
        prev_t, prev_y = t, y
    return total


def _product_mus(mus):
    if isinstance(mus, model.BayesNet):
        if any(mus.parents):
            raise exceptions.ContractViolation(
                operation='product_spectral_norm',
                requirement='a product network')
        return [float(t[0]) for t in mus.cpt]
    return [float(m) for m in mus]


def product_spectral_norm(mus, f):
    """prod_{T1} (mu + sigma) * prod_{T0} ((1 - mu) + sigma)."""
    mus = _product_mus(mus)
    value = 1.0
    for v in utils.indices_from_mask(f.t1):
        value *= mus[v] + np.sqrt(mus[v] * (1.0 - mus[v]))
    for v in utils.indices_from_mask(f.t0):
        value *= (1.0 - mus[v]) + np.sqrt(mus[v] * (1.0 - mus[v]))
    return float(value)


def chain_sum_coefficients(chain, f):
    """sum_S f_S (no absolute values) for f the positive tail literal.

    Equals sum_k (mu_{k,0} + sigma_{k,0}) prod_{l > k} (D_{l,mu} + D_{l,sigma})
    with signed differences.
    """
    params = ChainParameters(chain)
    tail = params.order[-1]
    if f.t0 or f.t1 != 1 << tail:
        raise exceptions.ContractViolation(
            operation='chain_sum_coefficients',
            requirement='the single positive literal of the last chain '
                        'variable')
    mu, sigma = params.mu, params.sigma
    growth = (mu[:, 1] - mu[:, 0]) + (sigma[:, 1] - sigma[:, 0])
    total = 0.0
    for k in range(1, params.n + 1):
        total += ((mu[k, 0] + sigma[k, 0]) *
                  float(np.prod(growth[k + 1:params.n + 1])))
    return total


def expectation_range(c, d):
    """[c^d, (1 - c)^d], the range of E[f] for a d-literal conjunction."""
    return c ** d, (1.0 - c) ** d

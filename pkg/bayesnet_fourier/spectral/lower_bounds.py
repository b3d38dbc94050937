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

"""Constructions whose conjunctions have large spectral norm.

* unbounded chain: every node shares the rows (c, 0.5 + c + alpha), making
  D_mu + D_sigma exceed 1.2; the sets containing the root and not the
  target already sum to sigma_0 D_mu (D_mu + D_sigma)^n.
* bounded chain: rows (0.07, 0.56) keep D_mu + D_sigma near 0.731, yet the
  tail literal's non-empty coefficients sum to more than 1.07147.
* anti-tree G*: the sink of a binary anti-tree fed by bounded chains has
  spectral norm at least (2D)^(n-1) times the bounded-chain sum to the n.
"""

import numpy as np
from oslo_log import log as logging

from bayesnet_fourier.bn import constructors
from bayesnet_fourier.common import constants
from bayesnet_fourier.common import utils
from bayesnet_fourier.spectral import basis
from bayesnet_fourier.spectral import conjunction

LOG = logging.getLogger(__name__)


class Certificate(object):

    def __init__(self, construction, n, computed, threshold):
        self.construction = construction
        self.n = n
        self.computed = computed
        self.threshold = threshold

    @property
    def passed(self):
        return self.computed >= self.threshold

    def to_dict(self):
        return {'construction': self.construction, 'n': self.n,
                'computed': self.computed, 'threshold': self.threshold,
                'pass': self.passed}

    def __repr__(self):
        return '<Certificate %s n=%d %g >= %g: %s>' % (
            self.construction, self.n, self.computed, self.threshold,
            self.passed)


def _differences(mu0, mu1):
    s0 = np.sqrt(mu0 * (1.0 - mu0))
    s1 = np.sqrt(mu1 * (1.0 - mu1))
    return abs(mu1 - mu0), abs(s1 - s0), s0


def unbounded_chain_rows(c=constants.UNBOUNDED_CHAIN_C,
                         alpha=constants.UNBOUNDED_CHAIN_ALPHA):
    return c, 0.5 + c + alpha


def unbounded_chain_growth(c=constants.UNBOUNDED_CHAIN_C,
                           alpha=constants.UNBOUNDED_CHAIN_ALPHA):
    """D_mu + D_sigma of the shared rows."""
    d_mu, d_sigma, _ = _differences(*unbounded_chain_rows(c, alpha))
    return d_mu + d_sigma


def unbounded_chain_value(n, c=constants.UNBOUNDED_CHAIN_C,
                          alpha=constants.UNBOUNDED_CHAIN_ALPHA):
    """sigma_0 D_mu (D_mu + D_sigma)^n for the chain X_0 .. X_{n+1}."""
    d_mu, d_sigma, sigma0 = _differences(*unbounded_chain_rows(c, alpha))
    return sigma0 * d_mu * (d_mu + d_sigma) ** n


def unbounded_chain_partial_sum(n, c=constants.UNBOUNDED_CHAIN_C,
                                alpha=constants.UNBOUNDED_CHAIN_ALPHA):
    """Enumerated sum of |f_S| over S containing X_0 and not X_{n+1}."""
    mu0, mu1 = unbounded_chain_rows(c, alpha)
    net = constructors.make_constant_chain(n + 2, mu0, mu1)
    target = n + 1
    dense = basis.spectrum_vector(
        net, conjunction.Conjunction.from_indices([target]))
    masks = np.arange(dense.shape[0])
    keep = ((masks & 1) != 0) & ((masks & (1 << target)) == 0)
    return float(np.sum(np.abs(dense[keep])))


def tail_nonempty_sum(n, mu0=constants.BOUNDED_CHAIN_MU0,
                      mu1=constants.BOUNDED_CHAIN_MU1):
    """sum_{S != empty} |f_S| for the tail literal of a constant chain."""
    net = constructors.make_constant_chain(n, mu0, mu1)
    f = conjunction.Conjunction.from_indices([net.order[-1]])
    total = conjunction.chain_spectral_norm_exact(net, f)
    return total - abs(conjunction.chain_coefficient(net, f, 0))


def gstar_value(n, m=constants.BOUNDED_CHAIN_LENGTH, D=constants.GSTAR_D,
                mu0=constants.BOUNDED_CHAIN_MU0,
                mu1=constants.BOUNDED_CHAIN_MU1):
    """(2D)^(n-1) times the bounded-chain non-empty sum to the n."""
    return (2.0 * D) ** (n - 1) * tail_nonempty_sum(m, mu0, mu1) ** n


def gstar_factorization(n=2, m=2, alpha=constants.GSTAR_ALPHA,
                        D=constants.GSTAR_D, mu0=constants.BOUNDED_CHAIN_MU0,
                        mu1=constants.BOUNDED_CHAIN_MU1):
    """(enumerated, factorized) sums for a G* small enough to enumerate.

    The enumerated side sums |f_S| for f the sink over the sets that meet
    every Y chain and avoid all V nodes.
    """
    net = constructors.make_gstar(n, m, alpha, D, mu0, mu1)
    ys, vs = constructors.gstar_layout(n, m)
    f = conjunction.Conjunction.from_indices([vs[0]])
    dense = basis.spectrum_vector(net, f)
    chain_masks = [utils.mask_from_indices(chain) for chain in ys]
    v_mask = utils.mask_from_indices(vs)
    enumerated = 0.0
    for S in range(dense.shape[0]):
        if S & v_mask:
            continue
        if all(S & cm for cm in chain_masks):
            enumerated += abs(dense[S])
    factorized = gstar_value(n, m, D, mu0, mu1)
    LOG.debug('G* factorization n=%(n)d m=%(m)d: %(e).12g vs %(f).12g',
              {'n': n, 'm': m, 'e': enumerated, 'f': factorized})
    return enumerated, factorized


def lower_bound_certificates(unbounded_n=constants.BOUNDED_CHAIN_LENGTH,
                             bounded_n=constants.BOUNDED_CHAIN_LENGTH,
                             gstar_n=constants.GSTAR_N):
    """The three certificate rows."""
    d_mu, _, sigma0 = _differences(*unbounded_chain_rows())
    rows = [
        Certificate('unbounded_chain', unbounded_n,
                    unbounded_chain_value(unbounded_n),
                    sigma0 * d_mu *
                    constants.UNBOUNDED_CHAIN_GROWTH ** unbounded_n),
        Certificate('bounded_chain', bounded_n,
                    tail_nonempty_sum(bounded_n),
                    constants.BOUNDED_CHAIN_TAIL_SUM),
        Certificate('gstar', gstar_n, gstar_value(gstar_n),
                    constants.GSTAR_GROWTH ** gstar_n),
    ]
    for row in rows:
        LOG.info('Certificate %r', row)
    return rows

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

"""Entropy, divergences and mutual information of discrete distributions.

Everything is computed in nats. Pass ``base=2`` to report bits; no other
conversion happens anywhere in the package.
"""

import math

import numpy as np
from scipy import special

from bayesnet_fourier.common import exceptions


def _scale(value, base):
    return value if base is None else value / math.log(base)


def _distribution(p, name='distribution'):
    p = np.asarray(p, dtype=np.float64)
    if np.any(p < 0) or not np.isclose(p.sum(), 1.0, atol=1e-9):
        raise exceptions.InvalidInput(
            error_message='%s must be nonnegative and sum to 1' % name)
    return p


def entropy(p, base=None):
    return _scale(float(np.sum(special.entr(_distribution(p)))), base)


def binary_entropy(p, base=None):
    return entropy([p, 1.0 - p], base)


def kl_divergence(p, q, base=None):
    """d_KL(p || q); +inf when q puts zero mass where p does not."""
    p = _distribution(p, 'p')
    q = _distribution(q, 'q')
    if p.shape != q.shape:
        raise exceptions.ShapeMismatch(expected=p.shape, actual=q.shape)
    return _scale(float(np.sum(special.rel_entr(p, q))), base)


def bernoulli_kl(p, q):
    """d_KL(Bernoulli(p) || Bernoulli(q)) in nats, elementwise."""
    return special.rel_entr(p, q) + special.rel_entr(1.0 - p, 1.0 - q)


def tv_distance(p, q):
    p = _distribution(p, 'p')
    q = _distribution(q, 'q')
    return 0.5 * float(np.sum(np.abs(p - q)))


def mutual_information(joint, base=None):
    """I of a 2-d joint table: sum P(x,y) log P(x,y) / (P(x) P(y))."""
    joint = _distribution(joint, 'joint')
    if joint.ndim != 2:
        raise exceptions.ShapeMismatch(expected='a 2-d joint table',
                                       actual=joint.shape)
    product = np.outer(joint.sum(axis=1), joint.sum(axis=0))
    value = float(np.sum(special.rel_entr(joint, product)))
    return _scale(max(value, 0.0), base)


def pinsker_bound(kl):
    """Upper bound sqrt(kl / 2) on the total variation distance."""
    return math.sqrt(0.5 * kl)

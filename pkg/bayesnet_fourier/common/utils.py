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

"""Utilities and helper functions."""

import numpy as np

from bayesnet_fourier.common import constants
from bayesnet_fourier.common import exceptions


def make_rng(seed=None):
    """Return a numpy Generator for an int seed, Generator or SeedSequence."""
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def spawn_rngs(seed, count):
    """Derive ``count`` independent streams from a master seed.

    Stream i only depends on (seed, i), so work split across processes
    reproduces the sequential result.
    """
    if isinstance(seed, np.random.Generator):
        return seed.spawn(count)
    return [np.random.default_rng(s)
            for s in np.random.SeedSequence(seed).spawn(count)]


def spawn_seeds(seed, count):
    """Like spawn_rngs but returns picklable integer seeds."""
    children = np.random.SeedSequence(seed).spawn(count)
    return [int(c.generate_state(1, dtype=np.uint32)[0]) for c in children]


def mask_from_indices(indices):
    mask = 0
    for i in indices:
        if i < 0:
            raise exceptions.InvalidInput(
                error_message='negative variable index %s' % i)
        mask |= 1 << int(i)
    return mask


def indices_from_mask(mask):
    out = []
    v = 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return out


def popcount(mask):
    return bin(mask).count('1')


def cube(n):
    """All 2^n assignments as a (2^n, n) uint8 array.

    Row r holds the bits of r, variable v being bit v.
    """
    rows = np.arange(1 << n, dtype=np.int64)
    return ((rows[:, None] >> np.arange(n)) & 1).astype(np.uint8)


def check_enumerable(n, limit=None):
    limit = constants.ENUMERATION_LIMIT if limit is None else limit
    if n > limit:
        raise exceptions.EnumerationLimitExceeded(n=n, limit=limit)


def sign(values):
    """Sign with sign(0) = -1."""
    return np.where(np.asarray(values) > 0, 1, -1)


def clamp_unit(values):
    """P1(z) = sign(z) * min(1, |z|)."""
    return np.clip(values, -1.0, 1.0)


def check_open_unit(value, name):
    if not 0.0 < value < 1.0:
        raise exceptions.InvalidInput(
            error_message='%s must lie in (0, 1), got %r' % (name, value))

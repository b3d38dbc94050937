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

"""Fourier basis induced by a Bayesian network.

phi_v(x) = (x_v - mu_{v,x_pa(v)}) / sigma_{v,x_pa(v)} and
phi_S = prod_{v in S} phi_v. Subsets are int bitmasks, bit v for
variable v. The basis is orthonormal under the network's distribution, so
every coefficient is an expectation: f_S = E[f(X) phi_S(X)].
"""

import numpy as np
from oslo_log import log as logging
from scipy import linalg

from bayesnet_fourier.common import constants
from bayesnet_fourier.common import exceptions
from bayesnet_fourier.common import utils

LOG = logging.getLogger(__name__)


class BooleanFunction(object):
    """A function on {0,1}^n with an optional range tag.

    ``func`` takes a single assignment (1-d array) unless ``vectorized`` is
    set, in which case it takes an (m, n) array and returns m values.
    Range tags are informational; nothing here converts between them.
    """

    def __init__(self, func, range=None, vectorized=False, name=None):
        if range is not None and range not in constants.RANGES:
            raise exceptions.InvalidInput(
                error_message='unknown range tag %r' % (range,))
        self._func = func
        self.range = range
        self.vectorized = vectorized
        self.name = name or getattr(func, '__name__', 'f')

    def evaluate_many(self, X):
        X = np.asarray(X)
        if self.vectorized:
            return np.asarray(self._func(X), dtype=np.float64)
        return np.array([self._func(x) for x in X], dtype=np.float64)

    def __call__(self, x):
        return float(self.evaluate_many(np.asarray(x)[None, :])[0])

    def __repr__(self):
        return '<BooleanFunction %s range=%s>' % (self.name, self.range)


def as_function(f, range=None):
    """Wrap callables and objects with ``evaluate_many`` uniformly."""
    if isinstance(f, BooleanFunction):
        return f
    if hasattr(f, 'evaluate_many'):
        return BooleanFunction(f.evaluate_many,
                               range=range or getattr(f, 'range', None),
                               vectorized=True, name=repr(f))
    if callable(f):
        return BooleanFunction(f, range=range)
    raise exceptions.InvalidInput(
        error_message='%r is not a function of assignments' % (f,))


class SparseSpectrum(object):
    """Finite map from subsets to non-zero coefficients."""

    def __init__(self, n, entries=None):
        self.n = n
        self._entries = {}
        for mask, value in (entries or {}).items():
            self[mask] = value

    def __setitem__(self, mask, value):
        mask = int(mask)
        if mask < 0 or mask >> self.n:
            raise exceptions.InvalidInput(
                error_message='subset %s outside %d variables' %
                (utils.indices_from_mask(mask), self.n))
        value = float(value)
        if value == 0.0:
            self._entries.pop(mask, None)
        else:
            self._entries[mask] = value

    def __getitem__(self, mask):
        return self._entries.get(int(mask), 0.0)

    get = __getitem__

    def __contains__(self, mask):
        return int(mask) in self._entries

    def __len__(self):
        return len(self._entries)

    def __iter__(self):
        return iter(sorted(self._entries))

    def items(self):
        return [(mask, self._entries[mask]) for mask in sorted(self._entries)]

    @property
    def sets(self):
        return sorted(self._entries)

    def l1_norm(self):
        return float(sum(abs(v) for v in self._entries.values()))

    def l2_norm_sq(self):
        return float(sum(v * v for v in self._entries.values()))

    def copy(self):
        return SparseSpectrum(self.n, dict(self._entries))

    def restricted(self, masks):
        return SparseSpectrum(self.n, {m: self[m] for m in masks})

    def to_dense(self):
        dense = np.zeros(1 << self.n)
        for mask, value in self._entries.items():
            dense[mask] = value
        return dense

    def to_records(self):
        """[(sorted index list, coefficient)] ordered by mask."""
        return [(utils.indices_from_mask(mask), value)
                for mask, value in self.items()]

    @classmethod
    def from_records(cls, n, records):
        return cls(n, {utils.mask_from_indices(idx): value
                       for idx, value in records})

    @classmethod
    def from_dense(cls, dense, drop=constants.COEFFICIENT_DROP):
        dense = np.asarray(dense)
        n = int(dense.shape[0]).bit_length() - 1
        keep = np.nonzero(np.abs(dense) >= drop)[0]
        return cls(n, {int(m): float(dense[m]) for m in keep})

    def __repr__(self):
        return '<SparseSpectrum n=%d entries=%d L1=%g>' % (
            self.n, len(self), self.l1_norm())


def inner_product(a, b):
    """sum_S a_S b_S, which equals E[a(X) b(X)] by Plancherel."""
    return float(sum(value * b[mask] for mask, value in a.items()))


def basis_matrix(net, X):
    """phi_v(x) for every row of X and variable v, shape (m, n)."""
    X = np.asarray(X)
    mu = net.conditional_means(X)
    sigma = net.conditional_stds(X)
    return (X - mu) / sigma


def basis_values(net, mask, X):
    """phi_S over the rows of X."""
    phi = basis_matrix(net, X)
    idx = utils.indices_from_mask(mask)
    if not idx:
        return np.ones(phi.shape[0])
    return np.prod(phi[:, idx], axis=1)


def basis_eval(net, S, x):
    """phi_S(x) for a single assignment; phi_empty is 1."""
    x = np.asarray(x, dtype=np.uint8)
    if x.shape != (net.n,):
        raise exceptions.ShapeMismatch(
            expected='assignment of length %d' % net.n, actual=x.shape)
    return float(basis_values(net, S, x[None, :])[0])


def evaluate_spectrum(net, spectrum, X):
    """sum_S coefficient_S phi_S(x) over the rows of X."""
    X = np.asarray(X)
    if X.ndim == 1:
        X = X[None, :]
    phi = basis_matrix(net, X)
    out = np.zeros(X.shape[0])
    for mask, value in spectrum.items():
        idx = utils.indices_from_mask(mask)
        out += value * (np.prod(phi[:, idx], axis=1) if idx else 1.0)
    return out


def enumerate_cube(net, f=None, limit=None, distribution=None):
    """(X, p, values) over the whole cube.

    ``distribution`` supplies the probabilities when they must come from a
    different net than the one defining the basis.
    """
    limit = constants.ENUMERATION_LIMIT if limit is None else limit
    utils.check_enumerable(net.n, limit)
    X = utils.cube(net.n)
    p = (distribution or net).probabilities(X)
    values = None if f is None else as_function(f).evaluate_many(X)
    return X, p, values


def exact_coefficient(net, f, S, limit=None):
    """E[f(X) phi_S(X)] by enumeration."""
    X, p, values = enumerate_cube(net, f, limit)
    return float(np.sum(p * values * basis_values(net, S, X)))


def expectation(net, f, limit=None):
    X, p, values = enumerate_cube(net, f, limit)
    return float(np.dot(p, values))


def _to_tensor(column, n):
    # row index r has variable v at bit v; axis v of the result is x_v
    return np.transpose(column.reshape((2,) * n), tuple(range(n - 1, -1, -1)))


def spectrum_vector(net, f, limit=None):
    """All 2^n coefficients as a dense array indexed by subset mask.

    Works in O(n 2^n): variables are transformed children first, so the
    basis function of the variable being summed out only depends on axes
    that still hold assignment bits.
    """
    limit = constants.SPECTRUM_LIMIT if limit is None else limit
    X, p, values = enumerate_cube(net, f, limit)
    n = net.n
    phi = basis_matrix(net, X)
    T = _to_tensor(p * values, n)
    for v in reversed(net.order):
        phi_v = _to_tensor(phi[:, v], n)
        t0 = T.sum(axis=v, keepdims=True)
        t1 = (T * phi_v).sum(axis=v, keepdims=True)
        T = np.concatenate([t0, t1], axis=v)
    return np.transpose(T, tuple(range(n - 1, -1, -1))).reshape(-1)


def full_spectrum(net, f, limit=None):
    """SparseSpectrum of f; magnitudes below 1e-14 are dropped."""
    spectrum = SparseSpectrum.from_dense(spectrum_vector(net, f, limit))
    LOG.debug('Full spectrum of %(f)r on %(net)r: %(spec)r',
              {'f': f, 'net': net, 'spec': spectrum})
    return spectrum


def basis_columns(net, X, max_size=None):
    """Matrix of phi_S over the rows of X, one column per kept mask.

    :returns: (matrix, masks) where masks lists the subset of each column.
    """
    phi = basis_matrix(net, X)
    B = np.ones((phi.shape[0], 1))
    for v in range(net.n):
        B = np.hstack([B, B * phi[:, v:v + 1]])
    masks = np.arange(1 << net.n)
    if max_size is not None:
        sizes = np.array([utils.popcount(int(m)) for m in masks])
        masks = masks[sizes <= max_size]
        B = B[:, masks]
    return B, [int(m) for m in masks]


def orthonormality_residual(net, max_size=None, limit=None,
                            distribution=None):
    """max_{S,T} |E[phi_S phi_T] - [S = T]| over subsets up to max_size.

    With ``distribution`` the expectation is taken under another net, which
    is how a basis built from wrong cpts is detected.
    """
    X, p, _ = enumerate_cube(net, None, limit, distribution)
    B, _ = basis_columns(net, X, max_size)
    gram = B.T @ (B * p[:, None])
    residual = float(np.max(np.abs(gram - np.eye(gram.shape[0]))))
    LOG.debug('Orthonormality residual of %(net)r: %(r)g',
              {'net': net, 'r': residual})
    return residual


def basis_magnitude_bound(report, size):
    """(1 / sigma_min)^|S| with sigma_min = sqrt(c*(1 - c))."""
    c = report.c_star
    return (1.0 / np.sqrt(c * (1.0 - c))) ** size


def spectrum_from_dict(n, doc):
    """SparseSpectrum from {"0,2": 0.5, "": 0.1}-style keys.

    Keys are comma-separated 0-based variable indices; the empty string is
    the empty set.
    """
    entries = {}
    for key, value in doc.items():
        idx = [int(tok) for tok in str(key).split(',') if tok.strip()]
        entries[utils.mask_from_indices(idx)] = value
    return SparseSpectrum(n, entries)


def classical_fourier(f, n, limit=None):
    """Dense spectrum under the uniform distribution by Walsh-Hadamard.

    Uses the same sign convention as the network basis, phi_v = 2 x_v - 1,
    so it must agree with spectrum_vector on a uniform product net.
    """
    limit = constants.SPECTRUM_LIMIT if limit is None else limit
    utils.check_enumerable(n, limit)
    values = as_function(f).evaluate_many(utils.cube(n))
    H = linalg.hadamard(1 << n, dtype=np.float64)
    sizes = np.array([utils.popcount(m) for m in range(1 << n)])
    return np.where(sizes % 2, -1.0, 1.0) * (H @ values) / float(1 << n)
